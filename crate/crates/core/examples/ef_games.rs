//! Evaluate sentences and compare words up to quantifier rank.
//!
//! cargo run --example ef_games

use fosep::logic::{ef_classes, ef_equivalent, eval, parse_formula};

fn main() -> fosep::Result<()> {
    let phi = parse_formula("E x1. a(x1) & (A x2. x2<x1 -> b(x2))")?;
    println!("{phi}  (rank {})", phi.rank());
    for w in ["bba", "ab", "bbb"] {
        println!("  {w}: {}", eval(&phi, w)?);
    }

    for k in 1..=3 {
        let (u, v) = ("a".repeat(1 << k), "a".repeat((1 << k) + 1));
        println!("{u} ~{k} {v}: {}", ef_equivalent(&u, &v, k));
    }
    println!("ab ~2 ba: {}", ef_equivalent("ab", "ba", 2));

    let table = ef_classes(&['a', 'b'], 4, 2)?;
    println!("words of length <= 4 fall into {} rank-2 classes", table.classes.len());
    for class in table.classes.iter().take(6) {
        let words: Vec<&str> = class.iter().map(|&i| table.words[i].as_str()).collect();
        println!("  {words:?}");
    }
    Ok(())
}
