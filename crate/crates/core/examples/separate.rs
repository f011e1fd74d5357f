//! Decide FO-separability of two regular languages.
//!
//! cargo run --example separate -- '(b(aa)*b(aa)*a)+' '(b(aa)*b(aa)*a)*b(aa)*'

use fosep::automata::{nfa_from_regex, pair_to_morphism};
use fosep::saturation::{is_fo_separable, SaturationConfig, Variant};

fn main() -> fosep::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (r0, r1) = match args.as_slice() {
        [a, b] => (a.as_str(), b.as_str()),
        _ => ("(b(aa)*b(aa)*a)+", "(b(aa)*b(aa)*a)*b(aa)*"),
    };
    let (l0, _) = nfa_from_regex(r0)?;
    let (l1, _) = nfa_from_regex(r1)?;
    let (ts, f0, f1) = pair_to_morphism(&l0, &l1)?;
    let m = &ts.morphism;
    let (verdict, sat) = is_fo_separable(m, &f0, &f1, Variant::Omega, &SaturationConfig::default())?;

    println!("{r0}  vs  {r1}");
    println!("semigroup size {}, {} maximal sets after {} rounds", m.semigroup().size(), sat.family.len(), sat.rounds);
    match verdict.witness_pair {
        None => println!("separable"),
        Some((t0, t1)) => println!(
            "not separable: {} and {} have images in one saturated set",
            m.witness_word(t0),
            m.witness_word(t1)
        ),
    }
    Ok(())
}
