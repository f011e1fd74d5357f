//! Separator synthesis.
//!
//! [`build_partition`] constructs a first-order partition of `A+` whose
//! blocks have images inside `Sat(α)`. A separator is the union of the
//! blocks whose image meets the accepting set of the first language:
//! since no block image contains a pair `{t0, t1}` with `t0 ∈ F0` and
//! `t1 ∈ F1` when the languages are separable, that union contains the
//! first language and misses the second.

mod partition;

use std::fmt;

use serde::Serialize;

use crate::automata::{pair_to_morphism, words_up_to, Nfa};
use crate::error::{Error, Result};
use crate::logic::{eval, simplify, Canonicalizer, Evaluator, FoFormula};
use crate::morphism::RecognizingMorphism;
use crate::saturation::{is_fo_separable, SaturationConfig, Variant};
use crate::semigroup::FiniteSemigroup;
use crate::subsets::{ElementSet, SubsetFamily};

pub use partition::{union_of_generated, CaseRecord};
use partition::{Builder, BuilderConfig};

/// A rank bound of the form `letters · 2^exponent + offset`, kept
/// symbolic since it rarely fits in a machine word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub letters: u64,
    pub exponent: u64,
    pub offset: u64,
}

impl RankBound {
    pub fn new(letters: u64, exponent: u64) -> Self {
        RankBound {
            letters,
            exponent,
            offset: 0,
        }
    }

    pub fn plus(self, k: u64) -> Self {
        RankBound {
            offset: self.offset + k,
            ..self
        }
    }

    /// `|A| · 2^{|S|²}`.
    pub fn for_morphism(m: &RecognizingMorphism) -> Self {
        let n = m.semigroup().size() as u64;
        RankBound::new(m.alphabet().len() as u64, n * n)
    }

    /// The numeric value, if it fits in a `u64`.
    pub fn value(&self) -> Option<u64> {
        if self.exponent >= 64 {
            return if self.letters == 0 { Some(self.offset) } else { None };
        }
        self.letters
            .checked_mul(1u64 << self.exponent)?
            .checked_add(self.offset)
    }

    pub fn admits(&self, rank: usize) -> bool {
        match self.value() {
            Some(v) => rank as u64 <= v,
            None => true,
        }
    }
}

impl fmt::Display for RankBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None if self.offset == 0 => write!(f, "{}*2^{}", self.letters, self.exponent),
            None => write!(f, "{}*2^{}+{}", self.letters, self.exponent, self.offset),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PartitionBlock {
    pub formula: FoFormula,
    /// An upper bound for the union of the images of the block's words,
    /// itself a member of the saturated family.
    pub image_union: ElementSet,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct FoPartition {
    pub alphabet: Vec<char>,
    pub blocks: Vec<PartitionBlock>,
    pub trace: Vec<CaseRecord>,
}

impl FoPartition {
    /// Indices of the blocks whose formula holds on `word`.
    pub fn blocks_of(&self, word: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if eval(&b.formula, word)? {
                out.push(i);
            }
        }
        Ok(out)
    }
}

/// Partition for an arbitrary morphism into the subsets of `ambient`,
/// letter `alphabet[i]` going to `letter_images[i]`.
pub fn build_partition_for(
    ambient: &FiniteSemigroup,
    alphabet: &[char],
    letter_images: &[ElementSet],
) -> Result<FoPartition> {
    build_partition_with(ambient, alphabet, letter_images, 64)
}

fn build_partition_with(
    ambient: &FiniteSemigroup,
    alphabet: &[char],
    letter_images: &[ElementSet],
    max_depth: usize,
) -> Result<FoPartition> {
    if alphabet.len() != letter_images.len() {
        return Err(Error::AlphabetMismatch(
            "one image per letter is required".into(),
        ));
    }
    if letter_images.iter().any(|t| t.is_empty()) {
        return Err(Error::Internal("empty letter image".into()));
    }
    let mut builder = Builder::new(BuilderConfig { max_depth });
    let blocks = builder.build(ambient, letter_images)?;
    let mut names = Canonicalizer::new(1);
    Ok(FoPartition {
        alphabet: alphabet.to_vec(),
        blocks: blocks
            .into_iter()
            .map(|b| PartitionBlock {
                formula: names.canonicalize(&b.formula.map_letters(|&i| alphabet[i])),
                image_union: b.image,
                provenance: b.tag,
            })
            .collect(),
        trace: builder.trace,
    })
}

/// Partition for a morphism into a finite semigroup, seen as a morphism
/// into singleton subsets.
pub fn build_partition(m: &RecognizingMorphism) -> Result<FoPartition> {
    let n = m.semigroup().size();
    let images: Vec<ElementSet> = m
        .letter_images()
        .iter()
        .map(|&x| ElementSet::singleton(n, x))
        .collect();
    build_partition_for(m.semigroup(), m.alphabet(), &images)
}

#[derive(Clone, Debug)]
pub struct SynthesisOptions {
    pub simplify: bool,
    pub max_depth: usize,
    pub variant: Variant,
    pub saturation: SaturationConfig,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            simplify: true,
            max_depth: 64,
            variant: Variant::Omega,
            saturation: SaturationConfig::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Synthesis {
    pub formula: FoFormula,
    pub rank: usize,
    pub bound: RankBound,
    pub block_count: usize,
    pub trace: Vec<CaseRecord>,
}

pub fn synthesize_separator(
    m: &RecognizingMorphism,
    f0: &ElementSet,
    f1: &ElementSet,
) -> Result<Synthesis> {
    synthesize_separator_with(m, f0, f1, &SynthesisOptions::default())
}

pub fn synthesize_separator_with(
    m: &RecognizingMorphism,
    f0: &ElementSet,
    f1: &ElementSet,
    options: &SynthesisOptions,
) -> Result<Synthesis> {
    let (verdict, sat) = is_fo_separable(m, f0, f1, options.variant, &options.saturation)?;
    if let Some((t0, t1)) = verdict.witness_pair {
        return Err(Error::NotSeparable(t0, t1));
    }
    let bound = RankBound::for_morphism(m);
    let n = m.semigroup().size();
    let images: Vec<ElementSet> = m
        .letter_images()
        .iter()
        .map(|&x| ElementSet::singleton(n, x))
        .collect();
    let partition = build_partition_with(m.semigroup(), m.alphabet(), &images, options.max_depth)?;
    check_images(&partition, &sat.family)?;
    let chosen: Vec<FoFormula> = partition
        .blocks
        .iter()
        .filter(|b| b.image_union.intersects(f0))
        .map(|b| b.formula.clone())
        .collect();
    let raw = match chosen.len() {
        0 => FoFormula::ff(),
        1 => chosen.into_iter().next().unwrap(),
        _ => FoFormula::or(chosen),
    };
    let formula = if options.simplify {
        let s = simplify(&raw);
        if s.rank() <= raw.rank() {
            s
        } else {
            raw
        }
    } else {
        raw
    };
    let formula = Canonicalizer::new(1).canonicalize(&formula);
    let rank = formula.rank();
    if !bound.admits(rank) {
        return Err(Error::Internal(format!(
            "separator rank {rank} exceeds the bound {bound}"
        )));
    }
    Ok(Synthesis {
        formula,
        rank,
        bound,
        block_count: partition.blocks.len(),
        trace: partition.trace,
    })
}

fn check_images(partition: &FoPartition, family: &SubsetFamily) -> Result<()> {
    for b in &partition.blocks {
        if !family.contains(&b.image_union) {
            return Err(Error::Internal(format!(
                "block image {:?} is not in the saturated family",
                b.image_union.to_vec()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub passed: bool,
    pub max_len: usize,
    pub words_checked: usize,
    /// Words of the first language on which the formula fails.
    pub l0_counterexamples: Vec<String>,
    /// Words of the second language on which the formula holds.
    pub l1_counterexamples: Vec<String>,
    pub rank: usize,
    pub bound: Option<RankBound>,
    pub within_bound: Option<bool>,
}

/// Checks a candidate separator on every word up to `max_len` over the
/// union of both alphabets. The bound is computed from the transition
/// semigroup of the pair and omitted when that semigroup is too large.
pub fn verify_separator(phi: &FoFormula, l0: &Nfa, l1: &Nfa, max_len: usize) -> Result<VerifyReport> {
    let mut alphabet: Vec<char> = l0.alphabet().iter().chain(l1.alphabet()).copied().collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut report = VerifyReport {
        passed: true,
        max_len,
        words_checked: 0,
        l0_counterexamples: Vec::new(),
        l1_counterexamples: Vec::new(),
        rank: phi.rank(),
        bound: None,
        within_bound: None,
    };
    let mut evaluator = Evaluator::new(phi);
    for w in words_up_to(&alphabet, max_len) {
        report.words_checked += 1;
        let in0 = l0.accepts(&w);
        let in1 = l1.accepts(&w);
        if !in0 && !in1 {
            continue;
        }
        let letters: Vec<char> = w.chars().collect();
        let holds = evaluator.eval_word(&letters)?;
        if in0 && !holds {
            report.l0_counterexamples.push(w.clone());
        }
        if in1 && holds {
            report.l1_counterexamples.push(w);
        }
    }
    if let Ok((ts, _, _)) = pair_to_morphism(l0, l1) {
        let bound = RankBound::for_morphism(&ts.morphism);
        report.within_bound = Some(bound.admits(report.rank));
        report.bound = Some(bound);
    }
    report.passed = report.l0_counterexamples.is_empty()
        && report.l1_counterexamples.is_empty()
        && report.within_bound != Some(false);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::nfa_from_regex;

    fn pair(r0: &str, r1: &str) -> (Nfa, Nfa, RecognizingMorphism, ElementSet, ElementSet) {
        let (n0, _) = nfa_from_regex(r0).unwrap();
        let (n1, _) = nfa_from_regex(r1).unwrap();
        let (ts, f0, f1) = pair_to_morphism(&n0, &n1).unwrap();
        (n0, n1, ts.morphism, f0, f1)
    }

    #[test]
    fn first_letter_separator() {
        let (n0, n1, m, f0, f1) = pair("a(a|b)*", "b(a|b)*");
        let s = synthesize_separator(&m, &f0, &f1).unwrap();
        let r = verify_separator(&s.formula, &n0, &n1, 8).unwrap();
        assert!(r.passed, "{r:?} {}", s.formula);
        for w in words_up_to(&['a', 'b'], 8) {
            assert_eq!(eval(&s.formula, &w).unwrap(), w.starts_with('a'), "{w}");
        }
    }

    #[test]
    fn empty_first_set_gives_false() {
        let (_, _, m, _, f1) = pair("a(a|b)*", "b(a|b)*");
        let empty = ElementSet::empty(m.semigroup().size());
        let s = synthesize_separator(&m, &empty, &f1).unwrap();
        assert!(s.formula.is_false());
    }

    #[test]
    fn parity_is_not_separable() {
        let (_, _, m, f0, f1) = pair("(aa)*aa", "(aa)*a");
        assert!(matches!(
            synthesize_separator(&m, &f0, &f1),
            Err(Error::NotSeparable(..))
        ));
    }

    #[test]
    fn verify_lists_counterexamples() {
        let (n0, n1, _, _, _) = pair("a", "b");
        let r = verify_separator(&FoFormula::tt(), &n0, &n1, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.l1_counterexamples, vec!["b".to_string()]);
        assert!(r.l0_counterexamples.is_empty());
    }

    #[test]
    fn bound_value() {
        assert_eq!(RankBound::new(2, 4).value(), Some(32));
        assert_eq!(RankBound::new(2, 4).plus(1).value(), Some(33));
        assert_eq!(RankBound::new(3, 70).plus(1).to_string(), "3*2^70+1");
        assert_eq!(RankBound::new(2, 64).value(), None);
        assert!(RankBound::new(2, 100).admits(usize::MAX));
        assert!(!RankBound::new(1, 1).admits(3));
    }
}
