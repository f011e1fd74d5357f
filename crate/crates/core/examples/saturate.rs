//! Saturate a finite semigroup and compare the three closure rules.
//!
//! cargo run --example saturate

use fosep::gen;
use fosep::saturation::{saturate_semigroup, SaturationConfig, Variant};
use fosep::FiniteSemigroup;

fn show(name: &str, s: &FiniteSemigroup) -> fosep::Result<()> {
    let cfg = SaturationConfig::default();
    let results: Vec<_> = Variant::ALL
        .iter()
        .map(|&v| saturate_semigroup(s, v, &cfg))
        .collect::<fosep::Result<_>>()?;
    let agree = results.windows(2).all(|w| w[0].family.maximal_sets() == w[1].family.maximal_sets());
    println!("{name} (size {}, aperiodic {}):", s.size(), s.is_aperiodic());
    for t in results[0].family.to_lists() {
        println!("  {t:?}");
    }
    println!("  variants agree: {agree}");
    Ok(())
}

fn main() -> fosep::Result<()> {
    show("Z/2", &FiniteSemigroup::cyclic_group(2))?;
    show("Z/2 x left-zero(2)", &FiniteSemigroup::cyclic_group(2).product(&FiniteSemigroup::left_zero(2)))?;
    show("random, seed 7", &gen::random_semigroup(7, 8, 4, 2)?)?;
    Ok(())
}
