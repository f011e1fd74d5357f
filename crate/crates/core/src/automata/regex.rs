//! Regular expressions over single-character letters.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! union   := concat ('|' concat)*
//! concat  := postfix+
//! postfix := atom ('*' | '+')*
//! atom    := letter | '(' union ')'
//! ```
//!
//! Letters are ASCII alphanumerics.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Letter(char),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    /// Whether the empty word is denoted.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Letter(_) => false,
            Regex::Concat(xs) => xs.iter().all(Regex::nullable),
            Regex::Union(xs) => xs.iter().any(Regex::nullable),
            Regex::Star(_) => true,
            Regex::Plus(r) => r.nullable(),
        }
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Letter(c) => {
                out.insert(*c);
            }
            Regex::Concat(xs) | Regex::Union(xs) => xs.iter().for_each(|x| x.collect_letters(out)),
            Regex::Star(r) | Regex::Plus(r) => r.collect_letters(out),
        }
    }

    /// Number of letter occurrences.
    pub fn positions(&self) -> usize {
        match self {
            Regex::Letter(_) => 1,
            Regex::Concat(xs) | Regex::Union(xs) => xs.iter().map(Regex::positions).sum(),
            Regex::Star(r) | Regex::Plus(r) => r.positions(),
        }
    }

    /// Direct backtracking-free matcher by position sets. Used to
    /// cross-check automaton constructions; includes the empty word when
    /// the expression is nullable.
    pub fn matches(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.ends(&w, &BTreeSet::from([0])).contains(&w.len())
    }

    /// All end offsets reachable by matching `self` from any start offset.
    fn ends(&self, w: &[char], starts: &BTreeSet<usize>) -> BTreeSet<usize> {
        match self {
            Regex::Letter(c) => starts
                .iter()
                .filter(|&&i| w.get(i) == Some(c))
                .map(|&i| i + 1)
                .collect(),
            Regex::Concat(xs) => xs.iter().fold(starts.clone(), |acc, x| x.ends(w, &acc)),
            Regex::Union(xs) => xs.iter().flat_map(|x| x.ends(w, starts)).collect(),
            Regex::Star(r) => {
                let mut all = starts.clone();
                let mut frontier = starts.clone();
                while !frontier.is_empty() {
                    let next: BTreeSet<usize> = r
                        .ends(w, &frontier)
                        .into_iter()
                        .filter(|e| !all.contains(e))
                        .collect();
                    all.extend(&next);
                    frontier = next;
                }
                all
            }
            Regex::Plus(r) => {
                let once = r.ends(w, starts);
                Regex::Star(r.clone()).ends(w, &once)
            }
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Letter(c) => write!(f, "{c}"),
            Regex::Concat(xs) => {
                for x in xs {
                    if matches!(x, Regex::Union(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Regex::Union(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Regex::Star(r) | Regex::Plus(r) => {
                let op = if matches!(self, Regex::Star(_)) { '*' } else { '+' };
                if matches!(**r, Regex::Letter(_)) {
                    write!(f, "{r}{op}")
                } else {
                    write!(f, "({r}){op}")
                }
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.src.len())
    }

    fn union(&mut self) -> Result<Regex> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Regex::Union(branches)
        })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        match parts.len() {
            0 => Err(Error::parse(self.offset(), "expected a letter or `(`")),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = Regex::Star(Box::new(r)),
                Some('+') => r = Regex::Plus(Box::new(r)),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let at = self.offset();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                self.pos += 1;
                Ok(Regex::Letter(c))
            }
            Some(c) => Err(Error::parse(at, format!("unexpected `{c}`"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

pub fn parse_regex(text: &str) -> Result<Regex> {
    let mut p = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        src: text,
    };
    let r = p.union()?;
    if p.pos < p.chars.len() {
        return Err(Error::parse(
            p.offset(),
            format!("unexpected `{}`", p.peek().unwrap()),
        ));
    }
    Ok(r)
}
