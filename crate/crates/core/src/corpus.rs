//! Seeded random words and matrices for property sweeps and batch corpora.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::IntMatrix;
use crate::mcg::{planar_subsets, Letter, TwistWord};
use crate::surface::Surface;

pub use rand::SeedableRng;

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signs {
    Positive,
    Negative,
    Mixed,
}

fn exponent(rng: &mut ChaCha8Rng, signs: Signs, max: i64) -> i64 {
    let e = rng.gen_range(1..=max);
    match signs {
        Signs::Positive => e,
        Signs::Negative => -e,
        Signs::Mixed => {
            if rng.gen_bool(0.5) {
                e
            } else {
                -e
            }
        }
    }
}

/// Subset-encoded word on Σ_{0,b}, b ≥ 2.
pub fn planar_word(rng: &mut ChaCha8Rng, boundary: usize, len: usize, signs: Signs) -> TwistWord {
    let s = Surface::new(0, boundary).expect("b >= 1");
    let subsets = planar_subsets(boundary);
    let mut w = TwistWord::identity(&s);
    for _ in 0..len {
        let sub: Vec<usize> = subsets
            .choose(rng)
            .expect("b >= 2")
            .iter()
            .copied()
            .collect();
        let e = exponent(rng, signs, 3);
        w = w.planar_twist(&sub, e).expect("valid subset");
    }
    w
}

/// Nonempty subset-encoded word on a random planar surface with 2 ≤ b ≤ `max_boundary`.
pub fn random_planar_word(
    rng: &mut ChaCha8Rng,
    max_boundary: usize,
    max_len: usize,
    signs: Signs,
) -> TwistWord {
    let b = rng.gen_range(2..=max_boundary);
    let len = rng.gen_range(1..=max_len);
    planar_word(rng, b, len, signs)
}

/// Random curve classes: basis vectors, boundary sums and small combinations.
pub fn word_on(rng: &mut ChaCha8Rng, surface: &Surface, len: usize) -> TwistWord {
    let m = surface.rank();
    let mut w = TwistWord::identity(surface);
    if m == 0 {
        return w;
    }
    let subsets = planar_subsets(surface.boundary_count());
    for _ in 0..len {
        let e = exponent(rng, Signs::Mixed, 2);
        if surface.is_planar() && rng.gen_bool(0.7) {
            let sub: Vec<usize> = subsets
                .choose(rng)
                .expect("m > 0")
                .iter()
                .copied()
                .collect();
            w = w.planar_twist(&sub, e).expect("valid subset");
            continue;
        }
        let coeffs: Vec<BigInt> = loop {
            let v: Vec<i64> = (0..m)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        0
                    } else {
                        rng.gen_range(-1..=1)
                    }
                })
                .collect();
            if v.iter().any(|&x| x != 0) {
                break v.into_iter().map(BigInt::from).collect();
            }
        };
        let curve = surface.curve(coeffs).expect("length m");
        w.push(Letter { curve, exponent: e }).expect("valid letter");
    }
    w
}

/// rows × cols with entries in [−bound, bound].
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries).expect("shape")
}
