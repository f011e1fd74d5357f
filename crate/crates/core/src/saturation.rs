//! Saturation fixpoints over the semigroup of subsets.
//!
//! All three variants compute the same family, the aperiodic pointlike
//! sets of a morphism: the least downset-closed family that contains the
//! singletons, is closed under set product and under one extra rule.
//!
//! * `Omega`: `T ↦ T^ω ∪ T^(ω+1)`.
//! * `Group`: the union of every maximal subgroup of the family semigroup.
//! * `HClass`: the union of every H-class of the family semigroup.
//!
//! Families are handled through their maximal members only. Products and
//! the omega rule are monotone, so applying them to maximal members is
//! exact. The group and H-class rules are evaluated on the semigroup
//! generated by the current maximal members.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::logic::FoFormula;
use crate::morphism::RecognizingMorphism;
use crate::semigroup::{close, Element, FiniteSemigroup};
use crate::subsets::{set_omega_closure, set_product, ElementSet, SubsetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Omega,
    Group,
    Hclass,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Omega, Variant::Group, Variant::Hclass];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Omega => "omega",
            Variant::Group => "group",
            Variant::Hclass => "hclass",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" => Ok(Variant::Omega),
            "group" => Ok(Variant::Group),
            "hclass" => Ok(Variant::Hclass),
            other => Err(Error::parse(0, format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SaturationConfig {
    /// Maximum number of maximal sets kept at once.
    pub antichain_cap: usize,
    /// Maximum size of the family semigroup built by the group and
    /// H-class rules.
    pub family_semigroup_cap: usize,
    pub record_trace: bool,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            antichain_cap: 1 << 20,
            family_semigroup_cap: 1 << 13,
            record_trace: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Rule {
    Singleton,
    Product,
    OmegaClosure,
    GroupUnion,
    HClassUnion,
}

/// One rule application that enlarged the family.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: Rule,
    pub operands: Vec<ElementSet>,
    pub produced: ElementSet,
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub family: SubsetFamily,
    pub variant: Variant,
    pub rounds: usize,
    pub trace: Option<Vec<TraceStep>>,
}

struct Saturator<'a> {
    semigroup: &'a FiniteSemigroup,
    variant: Variant,
    config: &'a SaturationConfig,
    family: SubsetFamily,
    trace: Option<Vec<TraceStep>>,
    round: usize,
}

impl<'a> Saturator<'a> {
    fn add(&mut self, rule: Rule, operands: &[&ElementSet], set: ElementSet) -> Result<bool> {
        if self.family.contains(&set) {
            return Ok(false);
        }
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceStep {
                rule,
                operands: operands.iter().map(|&s| s.clone()).collect(),
                produced: set.clone(),
            });
        }
        self.family.insert(set);
        if self.family.len() > self.config.antichain_cap {
            return Err(Error::resource(
                format!("antichain ({} variant, round {})", self.variant, self.round),
                self.config.antichain_cap,
            ));
        }
        Ok(true)
    }

    /// Closes under products, processing only sets that are new since the
    /// previous pass against the whole current antichain. With the omega
    /// variant the omega rule is applied to each new set as well.
    fn close_products(&mut self, mut frontier: Vec<ElementSet>) -> Result<bool> {
        let mut grew = false;
        while !frontier.is_empty() {
            self.round += 1;
            let current = self.family.maximal_sets().to_vec();
            let mut added = false;
            for f in &frontier {
                if self.variant == Variant::Omega {
                    let c = set_omega_closure(self.semigroup, f);
                    added |= self.add(Rule::OmegaClosure, &[f], c)?;
                }
                for m in &current {
                    let p = set_product(self.semigroup, f, m);
                    added |= self.add(Rule::Product, &[f, m], p)?;
                    let q = set_product(self.semigroup, m, f);
                    added |= self.add(Rule::Product, &[m, f], q)?;
                }
            }
            grew |= added;
            frontier = self
                .family
                .maximal_sets()
                .iter()
                .filter(|m| current.binary_search(m).is_err())
                .cloned()
                .collect();
        }
        Ok(grew)
    }

    /// Applies the group or H-class rule once over the semigroup generated
    /// by the current maximal sets.
    fn apply_class_rule(&mut self) -> Result<Vec<ElementSet>> {
        let gens = self.family.maximal_sets().to_vec();
        let s = self.semigroup;
        let closure = close(
            &gens,
            |x, y| set_product(s, x, y),
            self.config.family_semigroup_cap,
        )
        .map_err(|e| match e {
            Error::Resource { limit, .. } => Error::resource(
                format!(
                    "family semigroup ({} variant, round {})",
                    self.variant, self.round
                ),
                limit,
            ),
            other => other,
        })?;
        let h = closure.semigroup.h_classes();
        let rule = match self.variant {
            Variant::Group => Rule::GroupUnion,
            _ => Rule::HClassUnion,
        };
        let mut before: Vec<ElementSet> = self.family.maximal_sets().to_vec();
        before.sort();
        for (class, is_group) in h.classes.iter().zip(&h.is_group) {
            if self.variant == Variant::Group && !is_group {
                continue;
            }
            if class.len() < 2 {
                continue;
            }
            let mut u = ElementSet::empty(s.size());
            for &id in class {
                u.union_with(&closure.elements[id as usize]);
            }
            let operands: Vec<&ElementSet> =
                class.iter().map(|&id| &closure.elements[id as usize]).collect();
            self.add(rule, &operands, u)?;
        }
        Ok(self
            .family
            .maximal_sets()
            .iter()
            .filter(|m| before.binary_search(m).is_err())
            .cloned()
            .collect())
    }
}

/// Saturates the singleton images of `semigroup` under the chosen rules.
pub fn saturate_semigroup(
    semigroup: &FiniteSemigroup,
    variant: Variant,
    config: &SaturationConfig,
) -> Result<SaturationResult> {
    let mut sat = Saturator {
        semigroup,
        variant,
        config,
        family: SubsetFamily::new(semigroup.size()),
        trace: config.record_trace.then(Vec::new),
        round: 0,
    };
    for x in semigroup.elements() {
        let s = ElementSet::singleton(semigroup.size(), x);
        sat.add(Rule::Singleton, &[], s)?;
    }
    let mut frontier = sat.family.maximal_sets().to_vec();
    loop {
        sat.close_products(frontier)?;
        if variant == Variant::Omega {
            break;
        }
        frontier = sat.apply_class_rule()?;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(SaturationResult {
        family: sat.family,
        variant,
        rounds: sat.round,
        trace: sat.trace,
    })
}

/// `Sat(α)` for a surjective morphism.
pub fn saturate(
    m: &RecognizingMorphism,
    variant: Variant,
    config: &SaturationConfig,
) -> Result<SaturationResult> {
    saturate_semigroup(m.semigroup(), variant, config)
}

/// Outcome of a separability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityVerdict {
    pub separable: bool,
    pub witness_pair: Option<(Element, Element)>,
    pub witness_set: Option<ElementSet>,
}

/// Looks for `t1 ∈ f1`, `t2 ∈ f2` with `{t1, t2}` in the family. The
/// lexicographically least such pair is returned.
pub fn separability_from_family(
    family: &SubsetFamily,
    f1: &ElementSet,
    f2: &ElementSet,
) -> SeparabilityVerdict {
    let n = family.universe();
    for t1 in f1.iter() {
        for t2 in f2.iter() {
            let pair = ElementSet::from_elements(n, [t1, t2]);
            if let Some(m) = family.dominating(&pair) {
                return SeparabilityVerdict {
                    separable: false,
                    witness_pair: Some((t1, t2)),
                    witness_set: Some(m.clone()),
                };
            }
        }
    }
    SeparabilityVerdict {
        separable: true,
        witness_pair: None,
        witness_set: None,
    }
}

/// Decides whether the languages `α⁻¹(f1)` and `α⁻¹(f2)` can be separated
/// by a first-order sentence.
pub fn is_fo_separable(
    m: &RecognizingMorphism,
    f1: &ElementSet,
    f2: &ElementSet,
    variant: Variant,
    config: &SaturationConfig,
) -> Result<(SeparabilityVerdict, SaturationResult)> {
    let sat = saturate(m, variant, config)?;
    Ok((separability_from_family(&sat.family, f1, f2), sat))
}

/// A language is first-order definable iff its syntactic semigroup is
/// aperiodic.
pub fn is_fo_definable(nfa: &Nfa) -> Result<bool> {
    let (m, _) = crate::automata::syntactic_semigroup(nfa)?;
    Ok(m.semigroup().is_aperiodic())
}

/// Lower approximation of the imprint of a partition: the downset of the
/// images `α(K ∩ A^{≤bound})` of each block.
pub fn imprint_of_partition(
    m: &RecognizingMorphism,
    blocks: &[(FoFormula, usize)],
) -> Result<SubsetFamily> {
    let n = m.semigroup().size();
    let mut family = SubsetFamily::new(n);
    for (formula, bound) in blocks {
        let mut image = ElementSet::empty(n);
        for word in crate::automata::words_up_to(m.alphabet(), *bound) {
            if crate::logic::eval(formula, &word)? {
                image.insert(m.image_str(&word).expect("word over the alphabet"));
            }
        }
        family.insert(image);
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn sat(s: &FiniteSemigroup, v: Variant) -> SubsetFamily {
        saturate_semigroup(s, v, &SaturationConfig::default())
            .unwrap()
            .family
    }

    #[test]
    fn aperiodic_gives_singletons() {
        for v in Variant::ALL {
            let f = sat(&FiniteSemigroup::left_zero(3), v);
            assert!(f.only_singletons());
            assert_eq!(f.len(), 3);
        }
    }

    #[test]
    fn z2_gives_whole_group() {
        for v in Variant::ALL {
            assert_eq!(
                sat(&FiniteSemigroup::cyclic_group(2), v).to_lists(),
                vec![vec![0, 1]]
            );
        }
    }

    #[test]
    fn variants_agree_on_products() {
        let a = FiniteSemigroup::cyclic_group(3).product(&FiniteSemigroup::left_zero(2));
        let f = sat(&a, Variant::Omega);
        assert_eq!(f, sat(&a, Variant::Group));
        assert_eq!(f, sat(&a, Variant::Hclass));
    }

    #[test]
    fn trace_records_growth() {
        let cfg = SaturationConfig {
            record_trace: true,
            ..Default::default()
        };
        let r = saturate_semigroup(&FiniteSemigroup::cyclic_group(2), Variant::Omega, &cfg).unwrap();
        let t = r.trace.unwrap();
        assert!(t.iter().any(|s| s.rule == Rule::OmegaClosure));
    }

    #[test]
    fn antichain_cap_reported() {
        let cfg = SaturationConfig {
            antichain_cap: 1,
            ..Default::default()
        };
        let err = saturate_semigroup(&FiniteSemigroup::left_zero(3), Variant::Omega, &cfg)
            .unwrap_err();
        assert!(err.to_string().contains("omega variant"));
    }

    #[test]
    fn same_element_never_separable() {
        let z2 = FiniteSemigroup::cyclic_group(2);
        let m = RecognizingMorphism::new(z2, vec!['a'], vec![1]).unwrap();
        let t = ElementSet::singleton(2, 1);
        let (v, _) =
            is_fo_separable(&m, &t, &t, Variant::Omega, &SaturationConfig::default()).unwrap();
        assert_eq!(v.witness_pair, Some((1, 1)));
        let even = ElementSet::singleton(2, 0);
        let (v, _) =
            is_fo_separable(&m, &even, &t, Variant::Omega, &SaturationConfig::default()).unwrap();
        assert!(!v.separable);
    }

    #[test]
    fn imprint_of_trivial_partition() {
        let z2 = FiniteSemigroup::cyclic_group(2);
        let m = RecognizingMorphism::new(z2, vec!['a'], vec![1]).unwrap();
        let f = imprint_of_partition(&m, &[(parse_formula("true").unwrap(), 4)]).unwrap();
        assert_eq!(f.to_lists(), vec![vec![0, 1]]);
        let lz = FiniteSemigroup::left_zero(2);
        let m = RecognizingMorphism::new(lz, vec!['a', 'b'], vec![0, 1]).unwrap();
        let blocks = [
            (parse_formula("E x1. (a(x1) & !E x2. x2<x1)").unwrap(), 4),
            (parse_formula("E x1. (b(x1) & !E x2. x2<x1)").unwrap(), 4),
        ];
        assert!(imprint_of_partition(&m, &blocks).unwrap().only_singletons());
    }
}
