//! Matroid connectivity of localizations and the two dense-edge algorithms.

use std::collections::BTreeSet;

use num_rational::BigRational;

use super::{enumerate_chambers, infinity_span, Arrangement, Flat, ProjectivePoset, Support};
use crate::ratmat::{self, QVec};
use crate::{Error, Result};

/// Minimal dependent subsets of a list of vectors, as index sets.
pub fn circuits(vectors: &[QVec]) -> Result<Vec<BTreeSet<usize>>> {
    let n = vectors.len();
    if n > 16 {
        return Err(Error::MatroidTooLarge(n));
    }
    let rank_of = |idx: &[usize]| -> usize {
        let rows: Vec<QVec> = idx.iter().map(|&i| vectors[i].clone()).collect();
        ratmat::rank(&rows)
    };
    let full_rank = rank_of(&(0..n).collect::<Vec<_>>());
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    // Independent sets are exactly the subsets not containing a circuit, so
    // grow independent sets and record each minimal dependency once.
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(set) = stack.pop() {
        let start = set.last().map(|&x| x + 1).unwrap_or(0);
        if set.len() > full_rank {
            continue;
        }
        for next in start..n {
            let mut cand = set.clone();
            cand.push(next);
            if rank_of(&cand) == cand.len() {
                stack.push(cand);
            } else {
                // set independent, set+next dependent: contains exactly one
                // circuit; keep it only if it is minimal.
                let is_circuit = (0..cand.len()).all(|drop| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    rank_of(&sub) == sub.len()
                });
                if is_circuit {
                    let cs: BTreeSet<usize> = cand.iter().copied().collect();
                    if !found.contains(&cs) {
                        found.push(cs);
                    }
                }
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Matroid connectivity: one equivalence class under "lie on a common
/// circuit". Single elements count as connected.
pub fn matroid_is_indecomposable(vectors: &[QVec]) -> Result<bool> {
    let n = vectors.len();
    if n <= 1 {
        return Ok(true);
    }
    let circuits = circuits(vectors)?;
    let mut class: Vec<usize> = (0..n).collect();
    fn find(class: &mut Vec<usize>, i: usize) -> usize {
        if class[i] != i {
            let root = find(class, class[i]);
            class[i] = root;
        }
        class[i]
    }
    for c in &circuits {
        let mut iter = c.iter();
        if let Some(&first) = iter.next() {
            for &other in iter {
                let (a, b) = (find(&mut class, first), find(&mut class, other));
                if a != b {
                    class[a] = b;
                }
            }
        }
    }
    let root0 = find(&mut class, 0);
    Ok((1..n).all(|i| find(&mut class, i) == root0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseWhere {
    All,
    AtInfinity,
}

/// The matroid route alone: flats whose localization is indecomposable
/// (hyperplanes count as dense).
pub fn dense_edges_matroid(
    arr: &Arrangement,
    proj: &ProjectivePoset,
    which: DenseWhere,
) -> Result<Vec<Flat>> {
    let dim = arr.dim();
    let mut dense: Vec<Flat> = Vec::new();
    for flat in &proj.flats {
        if flat.dim == dim {
            continue; // ambient space
        }
        if which == DenseWhere::AtInfinity && !flat.at_infinity {
            continue;
        }
        if is_dense(arr, flat)? {
            dense.push(flat.clone());
        }
    }
    Ok(dense)
}

/// The chamber route for dense edges at infinity: {X(C) : C unbounded}.
pub fn dense_infinity_supports_from_chambers(
    arr: &Arrangement,
    chambers: &[super::Chamber],
) -> BTreeSet<Support> {
    let mut out = BTreeSet::new();
    for chamber in chambers {
        if let Some(x) = infinity_span(arr, chamber) {
            out.insert(x.support);
        }
    }
    out
}

/// Dense edges of the projective closure: flats whose localization is
/// matroid-indecomposable (hyperplanes count as dense). For
/// `AtInfinity` the result is cross-checked against the independent
/// chamber characterization {X(C) : C unbounded}; disagreement is an
/// implementation bug and is surfaced, never resolved silently.
pub fn dense_edges(
    arr: &Arrangement,
    proj: &ProjectivePoset,
    which: DenseWhere,
) -> Result<Vec<Flat>> {
    match which {
        DenseWhere::All => dense_edges_matroid(arr, proj, which),
        DenseWhere::AtInfinity => {
            if !arr.is_essential() {
                return Err(Error::NotEssential);
            }
            dense_edges_checked(arr, proj, &enumerate_chambers(arr))
        }
    }
}

/// The cross-checked at-infinity computation with chambers supplied by the
/// caller.
pub fn dense_edges_checked(
    arr: &Arrangement,
    proj: &ProjectivePoset,
    chambers: &[super::Chamber],
) -> Result<Vec<Flat>> {
    if !arr.is_essential() {
        return Err(Error::NotEssential);
    }
    let dense = dense_edges_matroid(arr, proj, DenseWhere::AtInfinity)?;
    let from_chambers = dense_infinity_supports_from_chambers(arr, chambers);
    let from_matroid: BTreeSet<Support> = dense.iter().map(|f| f.support.clone()).collect();
    if from_matroid != from_chambers {
        return Err(Error::DenseEdgeMismatch(format!(
            "matroid route {:?} vs chamber route {:?}",
            from_matroid
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
            from_chambers
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
        )));
    }
    Ok(dense)
}

fn is_dense(arr: &Arrangement, flat: &Flat) -> Result<bool> {
    let dim = arr.dim();
    let mut vectors: Vec<QVec> = flat
        .support
        .hyperplanes
        .iter()
        .map(|&i| arr.hyperplane(i).homogeneous())
        .collect();
    if flat.support.infinity {
        let mut inf = vec![BigRational::from_integer(0.into()); dim + 1];
        inf[dim] = BigRational::from_integer(1.into());
        vectors.push(inf);
    }
    matroid_is_indecomposable(&vectors)
}
