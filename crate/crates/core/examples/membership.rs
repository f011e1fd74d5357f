//! FO-definability of single languages, by aperiodicity of the syntactic
//! semigroup and by separation from the complement.
//!
//! cargo run --example membership -- '(ab)+' '(aa)*'

use fosep::automata::{complement, nfa_from_regex, pair_to_morphism, syntactic_semigroup};
use fosep::saturation::{is_fo_separable, SaturationConfig, Variant};

fn main() -> fosep::Result<()> {
    let mut regexes: Vec<String> = std::env::args().skip(1).collect();
    if regexes.is_empty() {
        regexes = ["(ab)+", "(aa)*", "a(a|b)*", "(a|b)*aa(a|b)*"].map(String::from).to_vec();
    }
    for r in &regexes {
        let (n, _) = nfa_from_regex(r)?;
        let (syn, _) = syntactic_semigroup(&n)?;
        let co = complement(&n)?;
        let (ts, f0, f1) = pair_to_morphism(&n, &co)?;
        let (v, _) = is_fo_separable(&ts.morphism, &f0, &f1, Variant::Omega, &SaturationConfig::default())?;
        println!(
            "{r:<20} syntactic size {:>3}  aperiodic {:<5}  separable from complement {}",
            syn.semigroup().size(),
            syn.semigroup().is_aperiodic(),
            v.separable
        );
    }
    Ok(())
}
