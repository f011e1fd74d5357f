//! Partition A+ into first-order definable blocks whose images are
//! saturated sets.
//!
//! cargo run --example partition

use fosep::automata::words_up_to;
use fosep::gen;
use fosep::synthesis::build_partition;

fn main() -> fosep::Result<()> {
    let m = gen::random_morphism(3, &['a', 'b'], 3, 4)?;
    println!("semigroup of size {}", m.semigroup().size());
    let p = build_partition(&m)?;
    for (i, b) in p.blocks.iter().enumerate() {
        let sample: Vec<String> = words_up_to(&p.alphabet, 4)
            .filter(|w| p.blocks_of(w).map(|hits| hits == [i]).unwrap_or(false))
            .take(5)
            .collect();
        println!(
            "block {i}: image {:?}, rank {}, {}, e.g. {sample:?}",
            b.image_union.to_vec(),
            b.formula.rank(),
            b.provenance
        );
    }
    Ok(())
}
