//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit
//! code with everything that would be printed, so the binary is a thin
//! wrapper and tests can drive commands in-process.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automata::{
    complement, nfa_from_regex, pair_to_morphism_capped, syntactic_semigroup, Nfa,
};
use crate::error::{Error, Result};
use crate::gen;
use crate::logic::{eval, parse_formula, FoFormula};
use crate::morphism::RecognizingMorphism;
use crate::omega::{is_fo_definable_omega, omega_separable, OmegaJson};
use crate::saturation::{
    is_fo_separable, saturate_semigroup, SaturationConfig, SaturationResult, Variant,
};
use crate::semigroup::{parse_semigroup_text, Element, FiniteSemigroup};
use crate::subsets::ElementSet;
use crate::synthesis::{synthesize_separator_with, verify_separator, SynthesisOptions};

/// Largest formula, counted as a tree, written out by `synthesize`.
const MAX_PRINTED_NODES: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "fosep", version, about = "First-order separability of regular languages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Two regexes (one for membership and saturate).
    #[arg(long, global = true, num_args = 1..=2, value_name = "REGEX")]
    pub regex: Vec<String>,

    /// Two NFA JSON files (one for membership and saturate).
    #[arg(long, global = true, num_args = 1..=2, value_name = "FILE")]
    pub nfa: Vec<PathBuf>,

    /// Semigroup text file with a `generators` section.
    #[arg(long, global = true, value_name = "FILE")]
    pub semigroup: Option<PathBuf>,

    /// ω-semigroup JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    pub omega: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Omega)]
    pub variant: VariantArg,

    /// Longest word checked by verification.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_len: usize,

    /// Exit with 1 when the inputs are not separable.
    #[arg(long, global = true)]
    pub exit_status: bool,

    /// Print the JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Leave `elapsedMs` out of reports.
    #[arg(long, global = true)]
    pub no_timing: bool,

    /// Seed for random inputs when no input is given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Largest semigroup built from automata.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_semigroup: usize,

    /// Largest antichain kept during saturation.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub antichain_cap: usize,

    /// Deepest recursion of separator synthesis.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Omega,
    Group,
    Hclass,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two languages are FO-separable.
    Separate {
        /// Accepting elements of the first language (with --semigroup).
        #[arg(long, value_delimiter = ',')]
        accept0: Vec<Element>,
        /// Accepting elements of the second language (with --semigroup).
        #[arg(long, value_delimiter = ',')]
        accept1: Vec<Element>,
    },
    /// Build a separating sentence and verify it.
    Synthesize {
        /// Write the sentence here instead of into the report only.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_simplify: bool,
    },
    /// Check a sentence against two languages on short words.
    Verify {
        /// File holding the sentence.
        #[arg(long, conflicts_with = "formula_text")]
        formula: Option<PathBuf>,
        /// The sentence itself.
        #[arg(long)]
        formula_text: Option<String>,
    },
    /// Print the maximal sets of the saturated family.
    Saturate {
        /// Size of the random semigroup used with --seed.
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// Decide whether a language is FO-definable.
    Membership,
    /// Evaluate a sentence on a word.
    Eval {
        /// File holding the sentence.
        #[arg(long, conflicts_with = "formula_text")]
        formula: Option<PathBuf>,
        /// The sentence itself.
        #[arg(long)]
        formula_text: Option<String>,
        #[arg(long)]
        word: String,
    },
    /// Decide FO-separability of two ω-languages.
    OmegaSeparate,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: Value,
    text: String,
    /// `Some(false)` when the answer is "not separable".
    separable: Option<bool>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    // languages live in A+, so an empty word in a regex is dropped
    let warnings: String = cli
        .regex
        .iter()
        .filter(|r| matches!(crate::automata::parse_regex(r), Ok(x) if x.nullable()))
        .map(|r| format!("warning: the empty word is dropped from `{r}`\n"))
        .collect();
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            if !cli.no_timing {
                if let Value::Object(map) = &mut report.json {
                    map.insert("elapsedMs".into(), json!(start.elapsed().as_millis() as u64));
                }
            }
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.text
            };
            let code = if cli.exit_status && report.separable == Some(false) { 1 } else { 0 };
            Outcome { code, stdout, stderr: warnings }
        }
        Err(e) => {
            let code = match (&e, &cli.command) {
                (Error::NotSeparable(..), Command::Synthesize { .. }) => 1,
                _ => 2,
            };
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&error_json(&cli, &e)).expect("error serializes");
                s.push('\n');
                s
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("{warnings}error: {e}\n") }
        }
    }
}

fn error_json(cli: &Cli, e: &Error) -> Value {
    let mut v = json!({ "command": command_name(&cli.command), "error": e.to_string() });
    if let Error::NotSeparable(t0, t1) = e {
        v["witness"] = json!({ "elements": [t0, t1] });
    }
    v
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Separate { .. } => "separate",
        Command::Synthesize { .. } => "synthesize",
        Command::Verify { .. } => "verify",
        Command::Saturate { .. } => "saturate",
        Command::Membership => "membership",
        Command::Eval { .. } => "eval",
        Command::OmegaSeparate => "omega-separate",
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn sat_config(cli: &Cli) -> SaturationConfig {
    SaturationConfig {
        antichain_cap: cli.antichain_cap,
        ..SaturationConfig::default()
    }
}

/// The one or two languages named on the command line.
fn languages(cli: &Cli, wanted: usize) -> Result<Vec<Nfa>> {
    let given = cli.regex.len() + cli.nfa.len();
    if given == 0 {
        if let Some(seed) = cli.seed {
            return Ok((0..wanted as u64)
                .map(|i| gen::random_nfa(seed.wrapping_add(i), 4, &['a', 'b'], 0.3))
                .collect());
        }
    }
    if !cli.regex.is_empty() && !cli.nfa.is_empty() {
        return Err(Error::parse(0, "give either --regex or --nfa, not both"));
    }
    if given != wanted {
        return Err(Error::parse(0, format!("expected {wanted} language(s), got {given}")));
    }
    if !cli.regex.is_empty() {
        cli.regex.iter().map(|r| Ok(nfa_from_regex(r)?.0)).collect()
    } else {
        cli.nfa.iter().map(|p| Nfa::parse_json(&read(p)?)).collect()
    }
}

fn variants(v: VariantArg) -> Vec<Variant> {
    match v {
        VariantArg::Omega => vec![Variant::Omega],
        VariantArg::Group => vec![Variant::Group],
        VariantArg::Hclass => vec![Variant::Hclass],
        VariantArg::All => Variant::ALL.to_vec(),
    }
}

fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Omega => "omega",
        VariantArg::Group => "group",
        VariantArg::Hclass => "hclass",
        VariantArg::All => "all",
    }
}

/// Saturates with every requested variant; they must agree.
fn saturate_checked(s: &FiniteSemigroup, cli: &Cli) -> Result<SaturationResult> {
    let config = sat_config(cli);
    let mut first: Option<SaturationResult> = None;
    for v in variants(cli.variant) {
        let r = saturate_semigroup(s, v, &config)?;
        match &first {
            None => first = Some(r),
            Some(f) if f.family.maximal_sets() != r.family.maximal_sets() => {
                return Err(Error::Internal(format!(
                    "variants {} and {} disagree",
                    f.variant, r.variant
                )));
            }
            Some(_) => {}
        }
    }
    Ok(first.expect("at least one variant"))
}

fn lists(s: &ElementSet) -> Vec<Element> {
    s.to_vec()
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Separate { accept0, accept1 } => cmd_separate(cli, accept0, accept1),
        Command::Synthesize { out, no_simplify } => cmd_synthesize(cli, out.as_deref(), *no_simplify),
        Command::Verify { formula, formula_text } => cmd_verify(cli, formula.as_deref(), formula_text.as_deref()),
        Command::Saturate { size } => cmd_saturate(cli, *size),
        Command::Membership => cmd_membership(cli),
        Command::Eval { formula, formula_text, word } => cmd_eval(formula.as_deref(), formula_text.as_deref(), word),
        Command::OmegaSeparate => cmd_omega_separate(cli),
    }
}

/// A morphism with the two accepting sets, from automata or a semigroup.
fn separation_input(
    cli: &Cli,
    accept0: &[Element],
    accept1: &[Element],
) -> Result<(RecognizingMorphism, ElementSet, ElementSet)> {
    if let Some(path) = &cli.semigroup {
        let spec = parse_semigroup_text(&read(path)?)?;
        let gens = spec
            .generators
            .ok_or_else(|| Error::parse(0, "semigroup file needs a `generators` section"))?;
        let (alphabet, images): (Vec<char>, Vec<Element>) = gens.into_iter().unzip();
        let n = spec.semigroup.size();
        let m = RecognizingMorphism::new(spec.semigroup, alphabet, images)?;
        if let Some(&x) = accept0.iter().chain(accept1).find(|&&x| x as usize >= n) {
            return Err(Error::InvalidSemigroup(format!("accepting element {x} out of range")));
        }
        return Ok((
            m,
            ElementSet::from_elements(n, accept0.iter().copied()),
            ElementSet::from_elements(n, accept1.iter().copied()),
        ));
    }
    let langs = languages(cli, 2)?;
    let (ts, f0, f1) = pair_to_morphism_capped(&langs[0], &langs[1], cli.max_semigroup)?;
    Ok((ts.morphism, f0, f1))
}

fn cmd_separate(cli: &Cli, accept0: &[Element], accept1: &[Element]) -> Result<Report> {
    let (m, f0, f1) = separation_input(cli, accept0, accept1)?;
    if f0.is_empty() && f1.is_empty() {
        return Err(Error::EmptyInputs);
    }
    let sat = saturate_checked(m.semigroup(), cli)?;
    let verdict = crate::saturation::separability_from_family(&sat.family, &f0, &f1);
    let mut j = json!({
        "command": "separate",
        "separable": verdict.separable,
        "semigroupSize": m.semigroup().size(),
        "variant": variant_name(cli.variant),
        "rounds": sat.rounds,
        "maximalSets": sat.family.maximal_sets().len(),
    });
    let mut text = format!(
        "separable: {}\nsemigroup size: {}\n",
        verdict.separable,
        m.semigroup().size()
    );
    if let (Some((t0, t1)), Some(set)) = (verdict.witness_pair, &verdict.witness_set) {
        let (w0, w1) = (m.witness_word(t0), m.witness_word(t1));
        j["witness"] = json!({
            "elements": [t0, t1],
            "words": [w0, w1],
            "set": lists(set),
        });
        text.push_str(&format!("witness: {w0} / {w1} (elements {t0}, {t1})\n"));
    }
    Ok(Report {
        json: j,
        text,
        separable: Some(verdict.separable),
    })
}

fn cmd_synthesize(cli: &Cli, out: Option<&Path>, no_simplify: bool) -> Result<Report> {
    let langs = languages(cli, 2)?;
    let (ts, f0, f1) = pair_to_morphism_capped(&langs[0], &langs[1], cli.max_semigroup)?;
    let m = ts.morphism;
    let options = SynthesisOptions {
        simplify: !no_simplify,
        max_depth: cli.max_depth,
        variant: variants(cli.variant)[0],
        saturation: sat_config(cli),
    };
    let s = synthesize_separator_with(&m, &f0, &f1, &options)?;
    let tree_size = s.formula.tree_size();
    let formula = (tree_size <= MAX_PRINTED_NODES).then(|| s.formula.to_string());
    let check = verify_separator(&s.formula, &langs[0], &langs[1], cli.max_len)?;
    if let Some(path) = out {
        let Some(text) = &formula else {
            return Err(Error::resource("printed formula size", MAX_PRINTED_NODES as usize));
        };
        fs::write(path, format!("{text}\n"))?;
    }
    let j = json!({
        "command": "synthesize",
        "formula": formula,
        "formulaTreeSize": tree_size,
        "formulaDagSize": s.formula.dag_size(),
        "rank": s.rank,
        "bound": s.bound,
        "blockCount": s.block_count,
        "caseTrace": s.trace,
        "verified": check,
    });
    let shown = formula.unwrap_or_else(|| format!("(formula with {tree_size} nodes not printed)"));
    let text = format!(
        "{shown}\nrank: {} (bound {})\nverified up to length {}: {}\n",
        s.rank, s.bound, cli.max_len, check.passed
    );
    Ok(Report {
        json: j,
        text,
        separable: Some(true),
    })
}

fn load_sentence(formula: Option<&Path>, formula_text: Option<&str>) -> Result<FoFormula> {
    let text = match (formula, formula_text) {
        (Some(p), _) => read(p)?,
        (None, Some(t)) => t.to_string(),
        (None, None) => return Err(Error::parse(0, "give --formula or --formula-text")),
    };
    let phi = parse_formula(text.trim())?;
    if !phi.free_vars().is_empty() {
        return Err(Error::MalformedFormula("the formula has free variables".into()));
    }
    Ok(phi)
}

fn cmd_verify(cli: &Cli, formula: Option<&Path>, formula_text: Option<&str>) -> Result<Report> {
    let phi = load_sentence(formula, formula_text)?;
    let langs = languages(cli, 2)?;
    let r = verify_separator(&phi, &langs[0], &langs[1], cli.max_len)?;
    let mut j = serde_json::to_value(&r)?;
    j["command"] = json!("verify");
    let text = format!(
        "passed: {}\nwords checked: {}\nfirst-language counterexamples: {:?}\nsecond-language counterexamples: {:?}\n",
        r.passed, r.words_checked, r.l0_counterexamples, r.l1_counterexamples
    );
    Ok(Report {
        json: j,
        text,
        separable: None,
    })
}

fn cmd_saturate(cli: &Cli, size: usize) -> Result<Report> {
    let s: FiniteSemigroup = if let Some(path) = &cli.semigroup {
        parse_semigroup_text(&read(path)?)?.semigroup
    } else if cli.regex.is_empty() && cli.nfa.is_empty() {
        let seed = cli
            .seed
            .ok_or_else(|| Error::parse(0, "give --semigroup, --regex, --nfa or --seed"))?;
        gen::random_semigroup(seed, size, 4, 2)?
    } else {
        let lang = languages(cli, 1)?;
        crate::automata::transition_semigroup_capped(&lang[0], cli.max_semigroup)?
            .morphism
            .semigroup()
            .clone()
    };
    let sat = saturate_checked(&s, cli)?;
    let maximal: Vec<Vec<Element>> = sat.family.to_lists();
    let j = json!({
        "command": "saturate",
        "semigroupSize": s.size(),
        "variant": variant_name(cli.variant),
        "rounds": sat.rounds,
        "onlySingletons": sat.family.only_singletons(),
        "maximalSets": maximal,
    });
    let mut text = format!("semigroup size: {}\nmaximal sets:\n", s.size());
    for m in &maximal {
        text.push_str(&format!("  {m:?}\n"));
    }
    Ok(Report {
        json: j,
        text,
        separable: None,
    })
}

fn cmd_membership(cli: &Cli) -> Result<Report> {
    let lang = languages(cli, 1)?;
    let (m, _) = syntactic_semigroup(&lang[0])?;
    let aperiodic = m.semigroup().is_aperiodic();
    // second route: L is definable iff it is separable from its complement
    let co = complement(&lang[0])?;
    let (ts, f0, f1) = pair_to_morphism_capped(&lang[0], &co, cli.max_semigroup)?;
    let (verdict, _) = is_fo_separable(&ts.morphism, &f0, &f1, Variant::Omega, &sat_config(cli))?;
    if verdict.separable != aperiodic {
        return Err(Error::Internal(
            "aperiodicity and self-separation disagree".into(),
        ));
    }
    let j = json!({
        "command": "membership",
        "definable": aperiodic,
        "syntacticSize": m.semigroup().size(),
        "separableFromComplement": verdict.separable,
    });
    let text = format!(
        "definable: {aperiodic}\nsyntactic semigroup size: {}\n",
        m.semigroup().size()
    );
    Ok(Report {
        json: j,
        text,
        separable: None,
    })
}

fn cmd_eval(formula: Option<&Path>, formula_text: Option<&str>, word: &str) -> Result<Report> {
    let phi = load_sentence(formula, formula_text)?;
    let value = eval(&phi, word)?;
    let j = json!({
        "command": "eval",
        "formula": phi.to_string(),
        "word": word,
        "value": value,
        "rank": phi.rank(),
    });
    Ok(Report {
        json: j,
        text: format!("{value}\n"),
        // --exit-status reports truth the same way as separability
        separable: Some(value),
    })
}

fn cmd_omega_separate(cli: &Cli) -> Result<Report> {
    let path = cli
        .omega
        .as_ref()
        .ok_or_else(|| Error::parse(0, "omega-separate needs --omega FILE"))?;
    let m = OmegaJson::parse(&read(path)?)?;
    let r = omega_separable(&m, &sat_config(cli))?;
    let mut j = json!({
        "command": "omega-separate",
        "separable": r.verdict.separable,
        "finiteSize": m.algebra.finite().size(),
        "infiniteSize": m.algebra.infinite_size(),
        "definable": is_fo_definable_omega(&m.algebra, &m.accepting0),
        "finiteFamily": r.finite_family.to_lists(),
        "infiniteFamily": r.infinite_family.to_lists(),
        "rankBound": r.rank_bound,
    });
    let mut text = format!("separable: {}\n", r.verdict.separable);
    if let (Some((t0, t1)), Some(set)) = (r.verdict.witness_pair, &r.verdict.witness_set) {
        j["witness"] = json!({ "elements": [t0, t1], "set": lists(set) });
        text.push_str(&format!("witness: infinite elements {t0}, {t1}\n"));
    }
    Ok(Report {
        json: j,
        text,
        separable: Some(r.verdict.separable),
    })
}
