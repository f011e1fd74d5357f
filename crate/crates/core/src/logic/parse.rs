//! Text syntax for formulas.
//!
//! ```text
//! formula := 'E' var '.' formula | 'A' var '.' formula | imp
//! imp     := disj ('->' formula)?
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | atom | quantified formula
//! atom    := 'true' | 'false' | letter '(' var ')' | var '<' var
//!          | var '=' var | '(' formula ')'
//! ```
//!
//! Quantifier bodies extend as far right as possible. Letters are single
//! alphanumerics. `E(x1)` and `A(x1)` are letter atoms; the lookahead on
//! `(` tells them apart from quantifiers.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::logic::formula::{FoFormula, Formula, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Not,
    And,
    Or,
    Arrow,
    Less,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '<' => Tok::Less,
            '=' => Tok::Eq,
            '-' => {
                if chars.get(i + 1).map(|&(_, c)| c) == Some('>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    return Err(Error::parse(pos, "expected `->`"));
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].1.is_ascii_alphanumeric() || chars[i + 1].1 == '_')
                {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().map(|&(_, c)| c).collect();
                Tok::Ident(s)
            }
            other => return Err(Error::parse(pos, format!("unexpected `{other}`"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: HashMap<String, Var>,
    next_var: Var,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(p, _)| p)
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.offset(), format!("expected {what}")))
        }
    }

    /// Variables named `x<digits>` keep their number; other names get
    /// fresh ids above every numbered one.
    fn var(&mut self) -> Result<Var> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(&v) = self.vars.get(&name) {
                    return Ok(v);
                }
                let v = match name.strip_prefix('x').and_then(|d| d.parse::<Var>().ok()) {
                    Some(n) => n,
                    None => {
                        self.next_var += 1;
                        self.next_var
                    }
                };
                self.next_var = self.next_var.max(v);
                self.vars.insert(name, v);
                Ok(v)
            }
            _ => Err(Error::parse(at, "expected a variable")),
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "E" || s == "A")
            && !matches!(self.peek_at(1), Some(Tok::LParen))
    }

    fn formula(&mut self) -> Result<FoFormula> {
        if self.is_quantifier() {
            let exists = matches!(self.peek(), Some(Tok::Ident(s)) if s == "E");
            self.pos += 1;
            let x = self.var()?;
            self.expect(Tok::Dot, "`.` after quantified variable")?;
            let body = self.formula()?;
            return Ok(if exists {
                Formula::exists(x, body)
            } else {
                Formula::forall(x, body)
            });
        }
        let lhs = self.disj()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<FoFormula> {
        let mut parts = vec![self.conj()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::or(parts)
        })
    }

    fn conj(&mut self) -> Result<FoFormula> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::and(parts)
        })
    }

    fn unary(&mut self) -> Result<FoFormula> {
        if self.peek() == Some(&Tok::Not) {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        if self.is_quantifier() {
            // a quantifier in operand position takes the rest of the input
            return self.formula();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FoFormula> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Formula::tt())
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(Formula::ff())
            }
            Some(Tok::Ident(s)) if self.peek_at(1) == Some(&Tok::LParen) => {
                let mut cs = s.chars();
                let letter = match (cs.next(), cs.next()) {
                    (Some(c), None) if c.is_ascii_alphanumeric() => c,
                    _ => return Err(Error::parse(at, format!("`{s}` is not a single letter"))),
                };
                self.pos += 2;
                let x = self.var()?;
                self.expect(Tok::RParen, "`)` after letter argument")?;
                Ok(Formula::letter(letter, x))
            }
            Some(Tok::Ident(_)) => {
                let x = self.var()?;
                match self.peek() {
                    Some(Tok::Less) => {
                        self.pos += 1;
                        let y = self.var()?;
                        Ok(Formula::less(x, y))
                    }
                    Some(Tok::Eq) => {
                        self.pos += 1;
                        let y = self.var()?;
                        Ok(Formula::equal(x, y))
                    }
                    _ => Err(Error::parse(self.offset(), "expected `<` or `=`")),
                }
            }
            Some(_) => Err(Error::parse(at, "unexpected token")),
            None => Err(Error::parse(at, "unexpected end of formula")),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<FoFormula> {
    let toks = lex(text)?;
    let numbered = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) => s.strip_prefix('x')?.parse::<Var>().ok(),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars: HashMap::new(),
        next_var: numbered,
    };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(f)
}
