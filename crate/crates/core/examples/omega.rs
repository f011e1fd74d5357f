//! Separation of infinite-word languages given by small algebras.
//!
//! cargo run --example omega

use fosep::omega::{algebras, is_fo_definable_omega, omega_separable};
use fosep::saturation::SaturationConfig;

fn main() -> fosep::Result<()> {
    for (name, m) in algebras::all() {
        let r = omega_separable(&m, &SaturationConfig::default())?;
        println!(
            "{name:<36} separable {:<5} definable {:<5} infinite family {:?}",
            r.verdict.separable,
            is_fo_definable_omega(&m.algebra, &m.accepting0),
            r.infinite_family.to_lists()
        );
    }
    Ok(())
}
