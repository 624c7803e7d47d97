//! Deterministic seeded samplers shared by the CLI and the test suites, so
//! reports reproduce bit-exactly from a (seed, count) pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::identities::{GArgs, RecursionRule};

/// Sample points for a recursion rule: w, p0, p1, p2 in [-5, 5] and
/// u, ell in [0, 4], with u >= 1 forced for the H rules.
pub fn recursion_samples(rule: RecursionRule, count: usize, seed: u64) -> Vec<(GArgs, Option<i64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fxhash(rule.name()));
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u_min = if rule.is_h_rule() { 1 } else { 0 };
        let args = GArgs::new(
            rng.gen_range(-5..=5),
            rng.gen_range(u_min..=4),
            rng.gen_range(0..=4),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
        )
        .expect("sampled args are valid");
        let k = rule.needs_k().then(|| rng.gen_range(-3..=3));
        out.push((args, k));
    }
    out
}

/// Sample points for the proof replay: ell in [1, 3], the rest small.
pub fn replay_samples(count: usize, seed: u64) -> Vec<GArgs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265706c6179);
    (0..count)
        .map(|_| {
            GArgs::new(
                rng.gen_range(-4..=4),
                rng.gen_range(0..=3),
                rng.gen_range(1..=3),
                rng.gen_range(-4..=4),
                rng.gen_range(-4..=4),
                rng.gen_range(-4..=4),
            )
            .expect("sampled args are valid")
        })
        .collect()
}

/// A random word over E1-powers, F1-powers and at most one F2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordLetter {
    E(u32),
    F(u32),
    F2,
}

/// Random words for the confluence property: bounded length and exponents,
/// exactly one F2 somewhere in the word.
pub fn confluence_words(count: usize, seed: u64) -> Vec<Vec<WordLetter>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f6e666c);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=5);
            let f2_at = rng.gen_range(0..len);
            (0..len)
                .map(|i| {
                    if i == f2_at {
                        WordLetter::F2
                    } else if rng.gen_bool(0.5) {
                        WordLetter::E(rng.gen_range(1..=3))
                    } else {
                        WordLetter::F(rng.gen_range(1..=3))
                    }
                })
                .collect()
        })
        .collect()
}

/// Per-word auxiliary seed stream (for randomized rewrite orders).
pub fn order_seeds(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f72646572);
    (0..count).map(|_| rng.gen()).collect()
}

fn fxhash(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
