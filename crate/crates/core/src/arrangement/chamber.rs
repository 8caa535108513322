//! Chamber enumeration by wall-crossing BFS with exact LP feasibility.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{Arrangement, Flat, FlatWitness, Support};
use crate::lp::{self, Constraint, LpOutcome, Rel};
use crate::ratmat::{self, QVec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_q(self) -> BigRational {
        match self {
            Sign::Minus => -BigRational::one(),
            Sign::Plus => BigRational::one(),
        }
    }
}

/// A realizable sign vector, one sign per hyperplane. Ordered
/// lexicographically with `-` before `+`; this order fixes every chamber
/// enumeration and matrix layout in the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn flipped(&self, indices: &BTreeSet<usize>) -> SignVector {
        SignVector(
            self.0
                .iter()
                .enumerate()
                .map(|(i, s)| if indices.contains(&i) { s.flip() } else { *s })
                .collect(),
        )
    }

    pub fn parse(text: &str) -> Result<SignVector> {
        text.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("invalid sign character `{other}`"))),
            })
            .collect::<Result<Vec<Sign>>>()
            .map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", if *s == Sign::Plus { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A chamber of the arrangement: realizable sign vector, rational interior
/// witness, and recession-cone data (generators whose linear span is the
/// span of the cone).
#[derive(Clone, Debug)]
pub struct Chamber {
    pub signs: SignVector,
    pub interior_point: QVec,
    pub recession_generators: Vec<QVec>,
    /// Linear dimension of span(recession cone); 0 means bounded.
    pub cone_span_dim: usize,
}

impl Chamber {
    pub fn is_bounded(&self) -> bool {
        self.cone_span_dim == 0
    }

    /// Projective dimension of X(C), None for bounded chambers.
    pub fn dim_x(&self) -> Option<usize> {
        if self.cone_span_dim == 0 {
            None
        } else {
            Some(self.cone_span_dim - 1)
        }
    }
}

/// Strict-feasibility rows for a sign vector: sign_i (a_i x - b_i) > 0.
fn sign_rows(arr: &Arrangement, signs: &SignVector) -> Vec<(QVec, BigRational)> {
    (0..arr.n())
        .map(|i| {
            let h = arr.hyperplane(i);
            let s = signs.get(i).as_q();
            let coeffs = ratmat::scale(&h.normal(), &s);
            (coeffs, &s * h.offset())
        })
        .collect()
}

/// Interior witness for a candidate sign vector, if realizable.
pub fn realize(arr: &Arrangement, signs: &SignVector) -> Option<QVec> {
    lp::strict_feasible_point(&sign_rows(arr, signs))
}

/// All chambers, BFS from a seed found by greedy sign selection, crossing
/// one wall at a time. Output sorted by sign vector.
pub fn enumerate_chambers(arr: &Arrangement) -> Vec<Chamber> {
    let n = arr.n();
    if n == 0 {
        return vec![Chamber {
            signs: SignVector(vec![]),
            interior_point: vec![BigRational::zero(); arr.dim()],
            recession_generators: ambient_generators(arr.dim()),
            cone_span_dim: arr.dim(),
        }];
    }

    // Greedy seed: fix signs one hyperplane at a time, keeping an open
    // region; one of the two sides is always feasible.
    let mut seed_signs = Vec::with_capacity(n);
    let mut rows: Vec<(QVec, BigRational)> = Vec::with_capacity(n);
    for i in 0..n {
        let h = arr.hyperplane(i);
        let plus_row = (h.normal(), h.offset());
        rows.push(plus_row);
        if lp::strict_feasible_point(&rows).is_some() {
            seed_signs.push(Sign::Plus);
        } else {
            let minus_row = (
                ratmat::scale(&arr.hyperplane(i).normal(), &(-BigRational::one())),
                -arr.hyperplane(i).offset(),
            );
            *rows.last_mut().unwrap() = minus_row;
            seed_signs.push(Sign::Minus);
        }
    }
    let seed = SignVector(seed_signs);
    let seed_point = lp::strict_feasible_point(&rows).expect("seed chamber is feasible");

    let mut found: BTreeMap<SignVector, QVec> = BTreeMap::new();
    let mut rejected: BTreeSet<SignVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    found.insert(seed.clone(), seed_point);
    queue.push_back(seed);
    while let Some(signs) = queue.pop_front() {
        for i in 0..n {
            let mut flipped = signs.clone();
            flipped.0[i] = flipped.0[i].flip();
            if found.contains_key(&flipped) || rejected.contains(&flipped) {
                continue;
            }
            match realize(arr, &flipped) {
                Some(witness) => {
                    found.insert(flipped.clone(), witness);
                    queue.push_back(flipped);
                }
                None => {
                    rejected.insert(flipped);
                }
            }
        }
    }

    found
        .into_iter()
        .map(|(signs, interior_point)| {
            let (generators, span_dim) = recession_cone_span(arr, &signs);
            Chamber {
                signs,
                interior_point,
                recession_generators: generators,
                cone_span_dim: span_dim,
            }
        })
        .collect()
}

fn ambient_generators(dim: usize) -> Vec<QVec> {
    let mut gens = Vec::new();
    for i in 0..dim {
        let mut e = vec![BigRational::zero(); dim];
        e[i] = BigRational::one();
        gens.push(e.clone());
        gens.push(ratmat::scale(&e, &(-BigRational::one())));
    }
    gens
}

fn recession_cone_span(arr: &Arrangement, signs: &SignVector) -> (Vec<QVec>, usize) {
    let signed: Vec<QVec> = (0..arr.n())
        .map(|i| ratmat::scale(&arr.hyperplane(i).normal(), &signs.get(i).as_q()))
        .collect();
    cone_span(&signed, arr.dim())
}

/// Generators inside the cone {v : g_i.v >= 0} whose linear span is the
/// span of the cone, plus that span's dimension. Implicit equality
/// constraints are found by one LP per row over the boxed cone.
pub fn cone_span(signed_normals: &[QVec], dim: usize) -> (Vec<QVec>, usize) {
    let n = signed_normals.len();
    if dim == 0 {
        return (vec![], 0);
    }
    let signed_normal = |i: usize| -> QVec { signed_normals[i].clone() };

    let mut cone: Vec<Constraint> = (0..n)
        .map(|i| Constraint::new(signed_normal(i), Rel::Ge, BigRational::zero()))
        .collect();
    for j in 0..dim {
        let mut e = vec![BigRational::zero(); dim];
        e[j] = BigRational::one();
        cone.push(Constraint::new(e.clone(), Rel::Le, BigRational::one()));
        cone.push(Constraint::new(e, Rel::Ge, -BigRational::one()));
    }

    let mut implicit = Vec::new();
    for i in 0..n {
        match lp::maximize(&signed_normal(i), &cone) {
            LpOutcome::Optimal { value, .. } => {
                if value.is_zero() {
                    implicit.push(i);
                }
            }
            other => unreachable!("boxed cone LP is feasible and bounded: {other:?}"),
        }
    }

    let implicit_rows: Vec<QVec> = implicit.iter().map(|&i| signed_normal(i)).collect();
    let span_dim = dim - ratmat::rank(&implicit_rows);
    if span_dim == 0 {
        return (vec![], 0);
    }

    // Relative interior point: strict on non-implicit constraints, equality
    // on implicit ones.
    let mut ri_cons = Vec::new();
    let mut objective = vec![BigRational::zero(); dim + 1];
    objective[dim] = BigRational::one();
    for i in 0..n {
        let mut coeffs = signed_normal(i);
        if implicit.contains(&i) {
            coeffs.push(BigRational::zero());
            ri_cons.push(Constraint::new(coeffs, Rel::Eq, BigRational::zero()));
        } else {
            coeffs.push(-BigRational::one());
            ri_cons.push(Constraint::new(coeffs, Rel::Ge, BigRational::zero()));
        }
    }
    for j in 0..dim {
        let mut e = vec![BigRational::zero(); dim + 1];
        e[j] = BigRational::one();
        ri_cons.push(Constraint::new(e.clone(), Rel::Le, BigRational::one()));
        for c in e.iter_mut() {
            *c = -c.clone();
        }
        ri_cons.push(Constraint::new(e, Rel::Ge, -BigRational::one()));
    }
    ri_cons.push(Constraint::new(
        objective.clone(),
        Rel::Le,
        BigRational::one(),
    ));
    let v0 = match lp::maximize(&objective, &ri_cons) {
        LpOutcome::Optimal { value, mut point } if value > BigRational::zero() => {
            point.truncate(dim);
            point
        }
        other => unreachable!("relative interior LP must succeed: {other:?}"),
    };

    // Perturb v0 along a basis of the span, scaled to stay inside the cone.
    let span_basis: Vec<QVec> = if implicit_rows.is_empty() {
        (0..dim)
            .map(|i| {
                let mut e = vec![BigRational::zero(); dim];
                e[i] = BigRational::one();
                e
            })
            .collect()
    } else {
        ratmat::nullspace(&implicit_rows)
    };
    debug_assert_eq!(span_basis.len(), span_dim);

    let mut generators = vec![v0.clone()];
    for w in &span_basis {
        let mut eps: Option<BigRational> = None;
        for i in 0..n {
            if implicit.contains(&i) {
                continue;
            }
            let coeffs = signed_normal(i);
            let along = ratmat::dot(&coeffs, w);
            if along < BigRational::zero() {
                let room = ratmat::dot(&coeffs, &v0);
                let bound = -&room / &along;
                eps = Some(match eps {
                    None => bound,
                    Some(e) => e.min(bound),
                });
            }
        }
        let step = eps
            .map(|e| e / BigRational::from_integer(2.into()))
            .unwrap_or_else(BigRational::one);
        generators.push(ratmat::add(&v0, &ratmat::scale(w, &step)));
    }
    debug_assert_eq!(ratmat::rank(&generators.to_vec()), span_dim);
    (generators, span_dim)
}

/// The projective flat spanned by the projectivized recession cone; None
/// for bounded chambers.
pub fn infinity_span(arr: &Arrangement, chamber: &Chamber) -> Option<Flat> {
    if chamber.is_bounded() {
        return None;
    }
    // Linear representative: span(cone) x {0} in coordinates (x, x_0).
    let raw: Vec<QVec> = chamber
        .recession_generators
        .iter()
        .map(|g| {
            let mut v = g.clone();
            v.push(BigRational::zero());
            v
        })
        .collect();
    let mut basis: Vec<QVec> = Vec::new();
    ratmat::extend_basis(&mut basis, &raw);
    let hyps: BTreeSet<usize> = (0..arr.n())
        .filter(|&i| {
            let h = arr.hyperplane(i);
            chamber
                .recession_generators
                .iter()
                .all(|g| h.eval_dir(g).is_zero())
        })
        .collect();
    Some(Flat {
        support: Support {
            hyperplanes: hyps,
            infinity: true,
        },
        dim: chamber.cone_span_dim - 1,
        at_infinity: true,
        witness: FlatWitness::Projective { basis },
    })
}
