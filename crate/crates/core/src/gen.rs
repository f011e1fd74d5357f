//! Seeded random inputs for tests, examples and benchmarks.
//!
//! Every generator takes a seed and is deterministic across runs and
//! platforms (ChaCha8).

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::morphism::RecognizingMorphism;
use crate::semigroup::{close, FiniteSemigroup};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random NFA with states `0..states`, initial state `0`, each
/// transition present with probability `density` and at least one
/// accepting state.
pub fn random_nfa(seed: u64, states: usize, alphabet: &[char], density: f64) -> Nfa {
    let mut r = rng(seed);
    let mut transitions = Vec::new();
    for p in 0..states {
        for &c in alphabet {
            for q in 0..states {
                if r.random_bool(density) {
                    transitions.push((p, c, q));
                }
            }
        }
    }
    let mut accepting: Vec<usize> = (0..states).filter(|_| r.random_bool(0.4)).collect();
    if accepting.is_empty() {
        accepting.push(r.random_range(0..states));
    }
    Nfa::new(states, alphabet.iter().copied(), transitions, [0], accepting)
        .expect("generated NFA is well formed")
}

/// A random regex over `alphabet` with the given nesting depth.
pub fn random_regex(seed: u64, alphabet: &[char], depth: usize) -> String {
    fn go(r: &mut ChaCha8Rng, alphabet: &[char], depth: usize) -> String {
        if depth == 0 {
            return alphabet[r.random_range(0..alphabet.len())].to_string();
        }
        match r.random_range(0..5) {
            0 => format!("({}|{})", go(r, alphabet, depth - 1), go(r, alphabet, depth - 1)),
            1 | 2 => format!("{}{}", go(r, alphabet, depth - 1), go(r, alphabet, depth - 1)),
            3 => format!("({})*", go(r, alphabet, depth - 1)),
            _ => format!("({})+", go(r, alphabet, depth - 1)),
        }
    }
    go(&mut rng(seed), alphabet, depth)
}

/// A random transformation on `points` points.
fn random_map(r: &mut ChaCha8Rng, points: usize) -> Vec<u8> {
    (0..points).map(|_| r.random_range(0..points) as u8).collect()
}

fn compose(f: &[u8], g: &[u8]) -> Vec<u8> {
    // first f, then g
    f.iter().map(|&x| g[x as usize]).collect()
}

/// A morphism onto the transformation semigroup generated by one random
/// map of `points` points per letter. Draws are repeated until the
/// semigroup has at most `max_size` elements.
pub fn random_morphism(seed: u64, alphabet: &[char], points: usize, max_size: usize) -> Result<RecognizingMorphism> {
    let mut r = rng(seed);
    for _ in 0..10_000 {
        let gens: Vec<Vec<u8>> = alphabet.iter().map(|_| random_map(&mut r, points)).collect();
        let Ok(c) = close(&gens, |f, g| compose(f, g), max_size) else {
            continue;
        };
        return RecognizingMorphism::new(c.semigroup, alphabet.to_vec(), c.generator_ids);
    }
    Err(Error::resource("random morphism draws", 10_000))
}

/// A transformation semigroup with exactly `size` elements, generated by
/// random maps on `points` points.
pub fn random_semigroup(seed: u64, size: usize, points: usize, generators: usize) -> Result<FiniteSemigroup> {
    let mut r = rng(seed);
    for _ in 0..100_000 {
        let gens: Vec<Vec<u8>> = (0..generators).map(|_| random_map(&mut r, points)).collect();
        if let Ok(c) = close(&gens, |f, g| compose(f, g), size) {
            if c.elements.len() == size {
                return Ok(c.semigroup);
            }
        }
    }
    Err(Error::resource("random semigroup draws", 100_000))
}
