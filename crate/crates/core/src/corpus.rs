//! Built-in arrangements and the seeded random instance generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::arrangement::Arrangement;

/// Default seed for flag construction and random corpora; overridable via
/// `--seed` or the `AOMOTO_SEED` environment variable.
pub const DEFAULT_SEED: u64 = 20160711;

/// Three generic lines: x = 0, y = 0, x + y = 1.
pub fn e1() -> Arrangement {
    Arrangement::from_rows(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap()
}

/// The coordinate cross: x = 0, y = 0.
pub fn e3() -> Arrangement {
    Arrangement::from_rows(2, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap()
}

/// Two parallels and a transversal: x = 0, x = 1, y = 0.
pub fn e4() -> Arrangement {
    Arrangement::from_rows(2, &[vec![1, 0, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap()
}

/// Five lines: three concurrent at infinity (parallel verticals) crossed by
/// two generic lines; no affine triple points.
pub fn fig1() -> Arrangement {
    Arrangement::from_rows(
        2,
        &[
            vec![1, 0, 0],  // x = 0
            vec![1, 0, 1],  // x = 1
            vec![1, 0, 2],  // x = 2
            vec![1, -1, 0], // y = x
            vec![1, 1, 5],  // y = -x + 5
        ],
    )
    .unwrap()
}

pub fn builtin(name: &str) -> Option<Arrangement> {
    match name {
        "e1" => Some(e1()),
        "e3" => Some(e3()),
        "e4" => Some(e4()),
        "fig1" => Some(fig1()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: &[&str] = &["e1", "e3", "e4", "fig1"];

/// Seeded random essential arrangements with small integer coefficients,
/// dim in {2, 3} and at most `max_n` hyperplanes.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<(String, Arrangement)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let dim = rng.gen_range(2..=3usize);
        let n = rng.gen_range(dim..=max_n);
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let mut row: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
            row.push(rng.gen_range(-3..=3));
            rows.push(row);
        }
        let Ok(arr) = Arrangement::from_rows(dim, &rows) else {
            continue; // zero normal or duplicate: redraw
        };
        if !arr.is_essential() {
            continue;
        }
        out.push((format!("random-{}", out.len()), arr));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for name in BUILTIN_NAMES {
            let arr = builtin(name).unwrap();
            assert!(arr.n() >= 2);
            assert!(arr.is_essential(), "{name}");
        }
    }

    #[test]
    fn fig1_combinatorics() {
        let arr = fig1();
        let (aff, proj) = crate::arrangement::intersection_poset(&arr);
        let b = crate::arrangement::betti_euler(&arr, &aff);
        // 10 pairs minus 3 parallel pairs = 7 double points, no triples.
        assert_eq!(b.betti, vec![1, 5, 7]);
        assert_eq!(b.euler_characteristic, 3);
        // The three verticals share one point at infinity.
        let shared = proj
            .flats
            .iter()
            .find(|f| f.support == crate::arrangement::Support::with_infinity([0, 1, 2]))
            .expect("common direction of the three verticals");
        assert_eq!(shared.dim, 0);
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let a = random_corpus(42, 5, 7);
        let b = random_corpus(42, 5, 7);
        assert_eq!(a.len(), 5);
        for ((_, x), (_, y)) in a.iter().zip(&b) {
            assert_eq!(x.dim(), y.dim());
            assert_eq!(x.n(), y.n());
            for i in 0..x.n() {
                assert_eq!(x.hyperplane(i), y.hyperplane(i));
            }
        }
    }
}
