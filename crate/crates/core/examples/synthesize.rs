//! Build a separating first-order sentence and check it on short words.
//!
//! cargo run --example synthesize -- 'a(a|b)*' 'b(a|b)*'

use fosep::automata::{nfa_from_regex, pair_to_morphism};
use fosep::synthesis::{synthesize_separator, verify_separator};

fn main() -> fosep::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (r0, r1) = match args.as_slice() {
        [a, b] => (a.as_str(), b.as_str()),
        _ => ("a(a|b)*", "b(a|b)*"),
    };
    let (l0, _) = nfa_from_regex(r0)?;
    let (l1, _) = nfa_from_regex(r1)?;
    let (ts, f0, f1) = pair_to_morphism(&l0, &l1)?;
    let s = synthesize_separator(&ts.morphism, &f0, &f1)?;

    for step in &s.trace {
        println!(
            "{:indent$}{} on {} letters: {} blocks, rank {}",
            "",
            step.case,
            step.alphabet_size,
            step.blocks,
            step.max_rank,
            indent = 2 * step.depth
        );
    }
    if s.formula.tree_size() < 2_000 {
        println!("{}", s.formula);
    } else {
        println!("sentence with {} shared nodes", s.formula.dag_size());
    }
    println!("rank {} (bound {})", s.rank, s.bound);
    let report = verify_separator(&s.formula, &l0, &l1, 10)?;
    println!("checked {} words: {}", report.words_checked, if report.passed { "ok" } else { "FAILED" });
    Ok(())
}
