//! Intersection posets, Mobius function, Betti numbers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Arrangement, Support};
use crate::ratmat::{self, QMat, QVec};

/// A nonempty intersection of hyperplanes, affine or projective. The
/// support is closed: it lists every hyperplane containing the flat.
#[derive(Clone, Debug)]
pub struct Flat {
    pub support: Support,
    /// Affine dimension, or projective dimension for projective flats.
    pub dim: usize,
    pub at_infinity: bool,
    pub witness: FlatWitness,
}

#[derive(Clone, Debug)]
pub enum FlatWitness {
    Affine {
        point: QVec,
        dirs: Vec<QVec>,
    },
    /// Basis of the linear representative in coordinates (x_1..x_l, x_0).
    Projective {
        basis: Vec<QVec>,
    },
}

impl Flat {
    pub fn projective_basis(&self) -> &[QVec] {
        match &self.witness {
            FlatWitness::Projective { basis } => basis,
            FlatWitness::Affine { .. } => panic!("affine flat"),
        }
    }

    /// Set containment of projective flats (self inside other).
    pub fn proj_contained_in(&self, other: &Flat) -> bool {
        let ob = other.projective_basis().to_vec();
        self.projective_basis()
            .iter()
            .all(|v| ratmat::in_span(&ob, v))
    }
}

/// Affine poset with Mobius values relative to the ambient space.
#[derive(Clone, Debug)]
pub struct AffinePoset {
    pub flats: Vec<Flat>,
    pub mobius: Vec<BigInt>,
    ambient_dim: usize,
}

impl AffinePoset {
    /// Flats of the given affine dimension.
    pub fn level(&self, dim: usize) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(move |f| f.dim == dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
}

#[derive(Clone, Debug)]
pub struct ProjectivePoset {
    pub flats: Vec<Flat>,
}

impl ProjectivePoset {
    pub fn find_by_support(&self, support: &Support) -> Option<&Flat> {
        self.flats.iter().find(|f| &f.support == support)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiData {
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub bounded_chambers: usize,
}

/// Both intersection posets: the affine one (with Mobius data) and the
/// projective closure including the hyperplane at infinity.
pub fn intersection_poset(arr: &Arrangement) -> (AffinePoset, ProjectivePoset) {
    (affine_poset(arr), projective_poset(arr))
}

fn affine_poset(arr: &Arrangement) -> AffinePoset {
    let dim = arr.dim();
    let ambient = Flat {
        support: Support::default(),
        dim,
        at_infinity: false,
        witness: FlatWitness::Affine {
            point: vec![BigRational::zero(); dim],
            dirs: (0..dim)
                .map(|i| {
                    let mut e = vec![BigRational::zero(); dim];
                    e[i] = BigRational::one();
                    e
                })
                .collect(),
        },
    };

    let mut by_support: BTreeMap<Support, Flat> = BTreeMap::new();
    let mut queue = VecDeque::new();
    by_support.insert(ambient.support.clone(), ambient.clone());
    queue.push_back(ambient);

    while let Some(flat) = queue.pop_front() {
        let FlatWitness::Affine { point, dirs } = &flat.witness else {
            unreachable!()
        };
        for i in 0..arr.n() {
            if flat.support.hyperplanes.contains(&i) {
                continue;
            }
            let Some((new_point, new_dirs)) = intersect_affine(arr, point, dirs, i) else {
                continue;
            };
            let support = close_affine_support(arr, &new_point, &new_dirs);
            if by_support.contains_key(&support) {
                continue;
            }
            let new_flat = Flat {
                support: support.clone(),
                dim: new_dirs.len(),
                at_infinity: false,
                witness: FlatWitness::Affine {
                    point: new_point,
                    dirs: new_dirs,
                },
            };
            by_support.insert(support, new_flat.clone());
            queue.push_back(new_flat);
        }
    }

    let mut flats: Vec<Flat> = by_support.into_values().collect();
    // Sort by codimension, then support, so the Mobius recursion only ever
    // looks backwards.
    flats.sort_by_key(|f| (dim - f.dim, f.support.clone()));

    let mut mobius: Vec<BigInt> = vec![BigInt::zero(); flats.len()];
    for i in 0..flats.len() {
        if flats[i].support.is_empty() {
            mobius[i] = BigInt::one();
            continue;
        }
        let mut acc = BigInt::zero();
        for j in 0..flats.len() {
            if j != i && flats[j].support.is_subset(&flats[i].support) {
                acc += &mobius[j];
            }
        }
        mobius[i] = -acc;
    }

    AffinePoset {
        flats,
        mobius,
        ambient_dim: dim,
    }
}

/// Intersect an affine subspace (point + span dirs) with hyperplane i.
/// None when empty (parallel) -- containment cannot happen because the
/// support is closed.
fn intersect_affine(
    arr: &Arrangement,
    point: &QVec,
    dirs: &[QVec],
    i: usize,
) -> Option<(QVec, Vec<QVec>)> {
    let h = arr.hyperplane(i);
    let coeffs: QVec = dirs.iter().map(|d| h.eval_dir(d)).collect();
    let val = h.eval(point);
    if coeffs.iter().all(|c| c.is_zero()) {
        debug_assert!(!val.is_zero(), "closed support misses a containment");
        return None;
    }
    // Solve coeffs . t = -val in parameter space.
    let rows: QMat = vec![coeffs.clone()];
    let t0 = ratmat::solve(&rows, &[-val]).expect("one nonzero equation");
    let kernel = ratmat::nullspace(&rows);
    let mut new_point = point.clone();
    for (d, t) in dirs.iter().zip(&t0) {
        new_point = ratmat::add(&new_point, &ratmat::scale(d, t));
    }
    let new_dirs: Vec<QVec> = kernel
        .iter()
        .map(|k| {
            let mut v = vec![BigRational::zero(); point.len()];
            for (d, c) in dirs.iter().zip(k) {
                v = ratmat::add(&v, &ratmat::scale(d, c));
            }
            v
        })
        .collect();
    Some((new_point, new_dirs))
}

fn close_affine_support(arr: &Arrangement, point: &QVec, dirs: &[QVec]) -> Support {
    let idx = (0..arr.n()).filter(|&i| {
        let h = arr.hyperplane(i);
        h.eval(point).is_zero() && dirs.iter().all(|d| h.eval_dir(d).is_zero())
    });
    Support::finite(idx)
}

fn projective_poset(arr: &Arrangement) -> ProjectivePoset {
    let dim = arr.dim();
    // Functionals on (x_1..x_l, x_0): rows (a, -b), plus x_0 for infinity.
    let mut functionals: Vec<QVec> = arr.hyperplanes().iter().map(|h| h.homogeneous()).collect();
    let mut infinity = vec![BigRational::zero(); dim + 1];
    infinity[dim] = BigRational::one();
    functionals.push(infinity);
    let n_all = functionals.len();
    let infinity_index = n_all - 1;

    let ambient_basis: Vec<QVec> = (0..dim + 1)
        .map(|i| {
            let mut e = vec![BigRational::zero(); dim + 1];
            e[i] = BigRational::one();
            e
        })
        .collect();
    let ambient = proj_flat(&functionals, infinity_index, ambient_basis, arr.n());

    let mut by_support: BTreeMap<Support, Flat> = BTreeMap::new();
    let mut queue = VecDeque::new();
    by_support.insert(ambient.support.clone(), ambient.clone());
    queue.push_back(ambient);

    while let Some(flat) = queue.pop_front() {
        let basis = flat.projective_basis().to_vec();
        if basis.len() <= 1 {
            continue; // projective points have no proper subflats
        }
        for i in 0..n_all {
            let in_support = if i == infinity_index {
                flat.support.infinity
            } else {
                flat.support.hyperplanes.contains(&i)
            };
            if in_support {
                continue;
            }
            let Some(new_basis) = intersect_linear(&basis, &functionals[i]) else {
                continue;
            };
            if new_basis.is_empty() {
                continue; // empty projective intersection, excluded
            }
            let new_flat = proj_flat(&functionals, infinity_index, new_basis, arr.n());
            if by_support.contains_key(&new_flat.support) {
                continue;
            }
            by_support.insert(new_flat.support.clone(), new_flat.clone());
            queue.push_back(new_flat);
        }
    }

    let mut flats: Vec<Flat> = by_support.into_values().collect();
    flats.sort_by_key(|f| (dim - f.dim, f.support.clone()));
    ProjectivePoset { flats }
}

fn proj_flat(functionals: &[QVec], infinity_index: usize, basis: Vec<QVec>, n: usize) -> Flat {
    let vanishes = |f: &QVec| basis.iter().all(|v| ratmat::dot(f, v).is_zero());
    let hyps: BTreeSet<usize> = (0..n).filter(|&i| vanishes(&functionals[i])).collect();
    let at_infinity = vanishes(&functionals[infinity_index]);
    Flat {
        support: Support {
            hyperplanes: hyps,
            infinity: at_infinity,
        },
        dim: basis.len() - 1,
        at_infinity,
        witness: FlatWitness::Projective { basis },
    }
}

/// Basis of {v in span(basis) : f(v) = 0}; None when f vanishes on all of
/// it (no cut), Some(vec![]) when the intersection is the zero subspace.
fn intersect_linear(basis: &[QVec], f: &QVec) -> Option<Vec<QVec>> {
    let coeffs: QVec = basis.iter().map(|v| ratmat::dot(f, v)).collect();
    if coeffs.iter().all(|c| c.is_zero()) {
        return None;
    }
    let kernel = ratmat::nullspace(&vec![coeffs]);
    Some(
        kernel
            .iter()
            .map(|k| {
                let mut v = vec![BigRational::zero(); basis[0].len()];
                for (b, c) in basis.iter().zip(k) {
                    v = ratmat::add(&v, &ratmat::scale(b, c));
                }
                v
            })
            .collect(),
    )
}

/// Betti numbers b_0..b_l via |Mobius| per codimension, the Euler
/// characteristic of the complement, and the bounded chamber count |chi|.
pub fn betti_euler(arr: &Arrangement, poset: &AffinePoset) -> BettiData {
    let dim = arr.dim();
    let mut betti = vec![0usize; dim + 1];
    for (flat, mu) in poset.flats.iter().zip(&poset.mobius) {
        let codim = dim - flat.dim;
        betti[codim] += usize::try_from(mu.abs()).expect("small Mobius value");
    }
    let chi: i64 = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let b = b as i64;
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    BettiData {
        betti,
        euler_characteristic: chi,
        bounded_chambers: chi.unsigned_abs() as usize,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn e1_poset_levels() {
        let arr = corpus::e1();
        let (aff, proj) = intersection_poset(&arr);
        // Three double points.
        assert_eq!(aff.level(0).count(), 3);
        assert_eq!(aff.level(1).count(), 3);
        assert_eq!(aff.level(2).count(), 1);
        let b = betti_euler(&arr, &aff);
        assert_eq!(b.betti, vec![1, 3, 3]);
        assert_eq!(b.euler_characteristic, 1);
        // Projective closure: the three directions are distinct points at
        // infinity, plus three affine double points, plus four lines.
        let infinity_points = proj
            .flats
            .iter()
            .filter(|f| f.dim == 0 && f.at_infinity)
            .count();
        assert_eq!(infinity_points, 3);
    }

    #[test]
    fn single_hyperplane_poset() {
        let arr = Arrangement::from_rows(2, &[vec![1, 0, 0]]).unwrap();
        let (aff, _) = intersection_poset(&arr);
        assert_eq!(aff.flats.len(), 2);
    }

    #[test]
    fn e4_projective_vertex_at_infinity() {
        let arr = corpus::e4();
        let (aff, proj) = intersection_poset(&arr);
        let xv = proj
            .flats
            .iter()
            .find(|f| f.support == Support::with_infinity([0, 1]))
            .expect("X_v exists");
        assert_eq!(xv.dim, 0);
        assert!(xv.at_infinity);
        assert_eq!(xv.support.len(), 3);
        let b = betti_euler(&arr, &aff);
        assert_eq!(b.betti, vec![1, 3, 2]);
        assert_eq!(b.euler_characteristic, 0);
    }

    #[test]
    fn e3_betti() {
        let arr = corpus::e3();
        let (aff, _) = intersection_poset(&arr);
        let b = betti_euler(&arr, &aff);
        assert_eq!(b.betti, vec![1, 2, 1]);
        assert_eq!(b.euler_characteristic, 0);
    }
}
