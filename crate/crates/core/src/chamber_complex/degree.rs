//! The PL degree engine for k <= 2.
//!
//! deg(C, C') is the degree of the Gauss map of a vector field on F^k
//! directed to C', over the boundary of C-bar clipped to a rational box.
//! For k = 1 this reduces to endpoint signs; for k = 2 the Gauss map is
//! piecewise constant on boundary edges (hyperplane normals toward C',
//! inward box normals) joined through corner cones, and the degree is the
//! winding number of that direction cycle, counted by exact signed
//! crossings of a generic rational ray.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{Arrangement, Chamber, SignVector};
use crate::flag::{section_system, Flag, SectionHyperplane};
use crate::lp::{self, Constraint, LpOutcome, Rel};
use crate::rat;
use crate::ratmat::{self, QVec};
use crate::{Error, Result};

/// Geometry of one flag level: the sectioned hyperplanes and the clipping
/// box, an axis-aligned rational box at `box_scale` times (twice the
/// coordinate range of the level's vertex and witness points plus one).
pub struct LevelGeometry {
    pub k: usize,
    pub system: Vec<SectionHyperplane>,
    /// Per-axis half-width; the box is the product of [-L_j, L_j].
    pub half_width: Vec<BigRational>,
}

/// Constraint identifiers on the boundary of a clipped chamber section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bound {
    Hyperplane(usize),
    /// Box side: axis j, `true` for the +L_j side.
    Box(usize, bool),
}

impl LevelGeometry {
    pub fn new(
        arr: &Arrangement,
        flag: &Flag,
        k: usize,
        witnesses: &[QVec],
        box_scale: u32,
    ) -> Result<Self> {
        let system = section_system(arr, flag, k);
        for s in &system {
            if s.coeffs.iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidFlag(format!(
                    "hyperplane {} is parallel to F^{k}",
                    s.index + 1
                )));
            }
        }
        // Vertices of the section arrangement.
        let planes: Vec<crate::arrangement::Hyperplane> = system
            .iter()
            .map(|s| crate::arrangement::Hyperplane::new(s.coeffs.clone(), s.rhs.clone()))
            .collect::<Result<_>>()?;
        let section = Arrangement::new(k, planes)
            .map_err(|e| Error::InvalidFlag(format!("degenerate section: {e}")))?;
        let (aff, _) = crate::arrangement::intersection_poset(&section);
        let mut points: Vec<QVec> = aff
            .level(0)
            .map(|f| match &f.witness {
                crate::arrangement::FlatWitness::Affine { point, .. } => point.clone(),
                _ => unreachable!(),
            })
            .collect();
        points.extend(witnesses.iter().cloned());

        let mut half_width = Vec::with_capacity(k);
        for j in 0..k {
            let m = points
                .iter()
                .map(|p| p[j].abs())
                .max()
                .unwrap_or_else(BigRational::zero);
            let base = m * BigRational::from_integer(2.into()) + BigRational::one();
            half_width.push(base * BigRational::from_integer(BigInt::from(box_scale)));
        }
        Ok(LevelGeometry {
            k,
            system,
            half_width,
        })
    }

    /// All points strictly inside the box?
    pub fn strictly_contains(&self, p: &QVec) -> bool {
        p.iter().zip(&self.half_width).all(|(c, l)| c.abs() < *l)
    }
}

/// deg(C, C') for C in ch^1: endpoint signs of the clipped interval, with
/// the representative at a hyperplane endpoint pointing to C''s side and
/// inward at box ends.
pub fn degree_k1(
    geom: &LevelGeometry,
    c: &Chamber,
    c_next: &SignVector,
    perturb: bool,
) -> Result<i64> {
    let _ = perturb; // one-dimensional representatives have no freedom
    debug_assert_eq!(geom.k, 1);
    let (lo, hi) = interval_of(geom, &c.signs)?;
    let l = &geom.half_width[0];
    let (a, a_tag) = match &lo {
        Some((v, i)) if v > &-l.clone() => (v.clone(), Bound::Hyperplane(*i)),
        _ => (-l.clone(), Bound::Box(0, false)),
    };
    let (b, b_tag) = match &hi {
        Some((v, i)) if v < l => (v.clone(), Bound::Hyperplane(*i)),
        _ => (l.clone(), Bound::Box(0, true)),
    };
    if a >= b {
        return Err(Error::DegeneratePolytope(format!(
            "empty clipped interval for {}",
            c.signs
        )));
    }
    let sigma = |tag: Bound| -> i64 {
        match tag {
            Bound::Hyperplane(i) => {
                let s = &geom.system[i];
                let side = c_next.get(s.index).as_q();
                if (side * &s.coeffs[0]).is_positive() {
                    1
                } else {
                    -1
                }
            }
            Bound::Box(_, false) => 1,
            Bound::Box(_, true) => -1,
        }
    };
    Ok((sigma(b_tag) - sigma(a_tag)) / 2)
}

/// An interval endpoint: coordinate and the index of its tight
/// hyperplane; None when unbounded on that side.
type Endpoint = Option<(BigRational, usize)>;

/// The open interval of a chamber on F^1: max of lower bounds, min of
/// upper bounds, each with its unique tight hyperplane.
fn interval_of(geom: &LevelGeometry, signs: &SignVector) -> Result<(Endpoint, Endpoint)> {
    let mut lo: Endpoint = None;
    let mut hi: Endpoint = None;
    for (i, s) in geom.system.iter().enumerate() {
        let coeff = &s.coeffs[0] * signs.get(s.index).as_q();
        let rhs = &s.rhs * signs.get(s.index).as_q();
        let bound = &rhs / &coeff;
        if coeff.is_positive() {
            match &lo {
                Some((v, _)) if *v > bound => {}
                Some((v, j)) if *v == bound => {
                    return Err(Error::DegeneratePolytope(format!(
                        "hyperplanes {} and {} cross F^1 at one point",
                        j + 1,
                        i + 1
                    )));
                }
                _ => lo = Some((bound, i)),
            }
        } else {
            match &hi {
                Some((v, _)) if *v < bound => {}
                Some((v, j)) if *v == bound => {
                    return Err(Error::DegeneratePolytope(format!(
                        "hyperplanes {} and {} cross F^1 at one point",
                        j + 1,
                        i + 1
                    )));
                }
                _ => hi = Some((bound, i)),
            }
        }
    }
    Ok((lo, hi))
}

/// The clipped chamber polygon on F^2: vertices in counterclockwise order
/// (the orientation fixed by the level basis), each with its tight
/// constraint set, and the unique constraint supporting each edge.
pub struct Polygon {
    pub vertices: Vec<QVec>,
    pub tight: Vec<Vec<Bound>>,
    /// edges[i] supports the edge vertices[i] -> vertices[i+1 mod m].
    pub edges: Vec<Bound>,
}

/// Inequality rows g(y) >= 0 for the clipped chamber: chamber sides plus
/// the four box sides. The gradient of a box row is its inward normal.
fn clip_rows(geom: &LevelGeometry, signs: &SignVector) -> Vec<(Bound, QVec, BigRational)> {
    let mut rows: Vec<(Bound, QVec, BigRational)> = geom
        .system
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let q = signs.get(s.index).as_q();
            (
                Bound::Hyperplane(i),
                ratmat::scale(&s.coeffs, &q),
                &q * &s.rhs,
            )
        })
        .collect();
    for j in 0..geom.k {
        for (positive_side, sign) in [(true, -BigRational::one()), (false, BigRational::one())] {
            // +side: -y_j + L_j >= 0 with inward gradient -e_j.
            let mut coeffs = vec![BigRational::zero(); geom.k];
            coeffs[j] = sign.clone();
            rows.push((
                Bound::Box(j, positive_side),
                coeffs,
                -geom.half_width[j].clone(),
            ));
        }
    }
    rows
}

pub fn polygon_of(geom: &LevelGeometry, c: &Chamber) -> Result<Polygon> {
    debug_assert_eq!(geom.k, 2);
    let rows = clip_rows(geom, &c.signs);
    let m = rows.len();
    let mut vertices: Vec<QVec> = Vec::new();
    let mut tight: Vec<Vec<Bound>> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let a = &rows[i];
            let b = &rows[j];
            let det = &a.1[0] * &b.1[1] - &a.1[1] * &b.1[0];
            if det.is_zero() {
                continue;
            }
            let x = (&a.2 * &b.1[1] - &b.2 * &a.1[1]) / &det;
            let y = (&a.1[0] * &b.2 - &b.1[0] * &a.2) / &det;
            let v = vec![x, y];
            if vertices.contains(&v) {
                continue;
            }
            let feasible = rows
                .iter()
                .all(|(_, coeffs, rhs)| ratmat::dot(coeffs, &v) - rhs >= BigRational::zero());
            if feasible {
                let t: Vec<Bound> = rows
                    .iter()
                    .filter(|(_, coeffs, rhs)| (ratmat::dot(coeffs, &v) - rhs).is_zero())
                    .map(|(id, _, _)| *id)
                    .collect();
                vertices.push(v);
                tight.push(t);
            }
        }
    }
    if vertices.len() < 3 {
        return Err(Error::DegeneratePolytope(format!(
            "clipped section of {} has {} vertices",
            c.signs,
            vertices.len()
        )));
    }

    // Sort counterclockwise around the centroid.
    let mnum = BigRational::from_integer(BigInt::from(vertices.len() as i64));
    let centroid: QVec = (0..2)
        .map(|j| vertices.iter().map(|v| v[j].clone()).sum::<BigRational>() / &mnum)
        .collect();
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    let angle_class = |v: &QVec| -> (u8, QVec) {
        let d = ratmat::sub(v, &centroid);
        let upper = d[1].is_positive() || (d[1].is_zero() && d[0].is_positive());
        (if upper { 0 } else { 1 }, d)
    };
    order.sort_by(|&p, &q| {
        let (cp, dp) = angle_class(&vertices[p]);
        let (cq, dq) = angle_class(&vertices[q]);
        cp.cmp(&cq).then_with(|| {
            let cross = &dp[0] * &dq[1] - &dp[1] * &dq[0];
            if cross.is_positive() {
                std::cmp::Ordering::Less
            } else if cross.is_negative() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        })
    });
    let vertices: Vec<QVec> = order.iter().map(|&i| vertices[i].clone()).collect();
    let tight: Vec<Vec<Bound>> = order.iter().map(|&i| tight[i].clone()).collect();

    let m = vertices.len();
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let shared: Vec<Bound> = tight[i]
            .iter()
            .copied()
            .filter(|b| tight[(i + 1) % m].contains(b))
            .collect();
        match shared.as_slice() {
            [one] => edges.push(*one),
            other => {
                return Err(Error::DegeneratePolytope(format!(
                    "edge of {} supported by {} constraints",
                    c.signs,
                    other.len()
                )))
            }
        }
    }
    Ok(Polygon {
        vertices,
        tight,
        edges,
    })
}

/// deg(C, C') for C in ch^2: winding number of the PL Gauss map.
pub fn degree_k2(
    geom: &LevelGeometry,
    polygon: &Polygon,
    c_next: &SignVector,
    perturb: bool,
) -> Result<i64> {
    let reps = edge_representatives(geom, polygon, c_next, perturb)?;
    let corners = corner_representatives(geom, polygon, c_next)?;
    // Cycle: rep(e_0), corner(v_1), rep(e_1), ..., rep(e_{m-1}), corner(v_0).
    let m = polygon.edges.len();
    let mut cycle = Vec::with_capacity(2 * m);
    for i in 0..m {
        cycle.push(reps[i].clone());
        cycle.push(corners[(i + 1) % m].clone());
    }
    winding_number(&cycle)
}

/// Direction toward the C' side of each supporting constraint: signed
/// section normals for hyperplane edges, inward normals for box edges.
/// Perturbation adds a small tangent component, staying strictly inside
/// the correct open half-plane.
fn edge_representatives(
    geom: &LevelGeometry,
    polygon: &Polygon,
    c_next: &SignVector,
    perturb: bool,
) -> Result<Vec<QVec>> {
    polygon
        .edges
        .iter()
        .map(|bound| {
            let normal = bound_direction(geom, *bound, c_next);
            if !perturb {
                return Ok(normal);
            }
            // Rotate slightly: w = n + eps * t with |eps| small enough that
            // w.n > 0 still holds (it always does: w.n = |n|^2).
            let tangent = vec![-normal[1].clone(), normal[0].clone()];
            let eps = BigRational::new(BigInt::from(1), BigInt::from(7));
            Ok(ratmat::add(&normal, &ratmat::scale(&tangent, &eps)))
        })
        .collect()
}

/// The C'-pointing normal of a bound.
fn bound_direction(geom: &LevelGeometry, bound: Bound, c_next: &SignVector) -> QVec {
    match bound {
        Bound::Hyperplane(i) => {
            let s = &geom.system[i];
            ratmat::scale(&s.coeffs, &c_next.get(s.index).as_q())
        }
        Bound::Box(j, positive_side) => {
            let mut v = vec![BigRational::zero(); geom.k];
            v[j] = if positive_side {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            v
        }
    }
}

/// A vector strictly inside every required open half-plane at the corner:
/// the C' side of every hyperplane through the vertex and inward for every
/// box side through it. Its existence is what lets the PL Gauss map pass
/// the corner; failure is surfaced.
fn corner_representatives(
    geom: &LevelGeometry,
    polygon: &Polygon,
    c_next: &SignVector,
) -> Result<Vec<QVec>> {
    polygon
        .vertices
        .iter()
        .zip(&polygon.tight)
        .map(|(v, tight)| {
            let normals: Vec<QVec> = tight
                .iter()
                .map(|b| bound_direction(geom, *b, c_next))
                .collect();
            if normals.len() == 1 {
                return Ok(normals[0].clone());
            }
            // max t s.t. u . n >= t for all tight normals, |u_j| <= 1.
            let mut cons: Vec<Constraint> = normals
                .iter()
                .map(|nv| {
                    let mut coeffs = nv.clone();
                    coeffs.push(-BigRational::one());
                    Constraint::new(coeffs, Rel::Ge, BigRational::zero())
                })
                .collect();
            let mut objective = vec![BigRational::zero(); 3];
            objective[2] = BigRational::one();
            for j in 0..2 {
                let mut e = vec![BigRational::zero(); 3];
                e[j] = BigRational::one();
                cons.push(Constraint::new(e.clone(), Rel::Le, BigRational::one()));
                let mut f = vec![BigRational::zero(); 3];
                f[j] = -BigRational::one();
                cons.push(Constraint::new(f, Rel::Le, BigRational::one()));
            }
            cons.push(Constraint::new(
                objective.clone(),
                Rel::Le,
                BigRational::one(),
            ));
            match lp::maximize(&objective, &cons) {
                LpOutcome::Optimal { value, mut point } if value.is_positive() => {
                    point.truncate(2);
                    Ok(point)
                }
                _ => Err(Error::DegeneratePolytope(format!(
                    "no direction field exists at corner ({}, {})",
                    rat::format_rational(&v[0]),
                    rat::format_rational(&v[1])
                ))),
            }
        })
        .collect()
}

/// Winding number of a cyclic sequence of nonzero directions where each
/// consecutive pair is joined by its (well-defined) short arc: exact
/// signed crossings of a generic rational ray.
pub fn winding_number(cycle: &[QVec]) -> Result<i64> {
    let m = cycle.len();
    if cycle.iter().any(|w| ratmat::is_zero_vec(w)) {
        return Err(Error::DegeneratePolytope("zero Gauss direction".into()));
    }
    let cross = |a: &QVec, b: &QVec| -> BigRational { &a[0] * &b[1] - &a[1] * &b[0] };
    let dot = |a: &QVec, b: &QVec| -> BigRational { ratmat::dot(a, b) };

    // Deterministic generic ray search.
    let candidates: &[(i64, i64)] = &[
        (1, 0),
        (0, 1),
        (1, 1),
        (1, -1),
        (2, 1),
        (1, 2),
        (3, 1),
        (1, 3),
        (3, 2),
        (2, 3),
        (5, 1),
        (1, 5),
        (5, 2),
        (2, 5),
        (5, 3),
        (3, 5),
        (7, 1),
        (1, 7),
        (7, 2),
        (2, 7),
        (7, 3),
        (3, 7),
        (7, 4),
        (4, 7),
    ];
    let ray = candidates
        .iter()
        .map(|&(x, y)| {
            vec![
                BigRational::from_integer(x.into()),
                BigRational::from_integer(y.into()),
            ]
        })
        .find(|r| cycle.iter().all(|w| !cross(w, r).is_zero()))
        .ok_or_else(|| Error::DegeneratePolytope("no generic ray found".into()))?;

    let mut total = 0i64;
    for i in 0..m {
        let u = &cycle[i];
        let v = &cycle[(i + 1) % m];
        let s = rat::sign(&cross(u, v));
        if s == 0 {
            if dot(u, v).is_positive() {
                continue;
            }
            return Err(Error::DegeneratePolytope(
                "antipodal consecutive Gauss directions".into(),
            ));
        }
        if rat::sign(&cross(u, &ray)) == s && rat::sign(&cross(&ray, v)) == s {
            total += s as i64;
        }
    }
    Ok(total)
}

/// Degree of the pointing field toward p_0 over the clipped boundary, for
/// k in {1, 2}. p_0 must avoid all hyperplanes and the box boundary.
pub fn pointing_degree(geom: &LevelGeometry, c: &Chamber, p0: &QVec) -> Result<i64> {
    for (i, s) in geom.system.iter().enumerate() {
        let _ = i;
        if (ratmat::dot(&s.coeffs, p0) - &s.rhs).is_zero() {
            return Err(Error::PointOnHyperplane);
        }
    }
    if p0.iter().zip(&geom.half_width).any(|(c, l)| c.abs() == *l) {
        return Err(Error::PointOnHyperplane);
    }
    match geom.k {
        1 => {
            let (lo, hi) = interval_of(geom, &c.signs)?;
            let l = &geom.half_width[0];
            let a = match &lo {
                Some((v, _)) if v > &-l.clone() => v.clone(),
                _ => -l.clone(),
            };
            let b = match &hi {
                Some((v, _)) if v < l => v.clone(),
                _ => l.clone(),
            };
            if a >= b {
                return Err(Error::DegeneratePolytope("empty clipped interval".into()));
            }
            let sig = |x: &BigRational| -> i64 {
                if &p0[0] > x {
                    1
                } else {
                    -1
                }
            };
            Ok((sig(&b) - sig(&a)) / 2)
        }
        2 => {
            let polygon = polygon_of(geom, c)?;
            let cycle: Vec<QVec> = polygon
                .vertices
                .iter()
                .map(|v| ratmat::sub(p0, v))
                .collect();
            winding_number(&cycle)
        }
        other => Err(Error::DegreeUnsupported(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> QVec {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn winding_of_quarter_turns() {
        let ccw = vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[-1, 0]), qv(&[0, -1])];
        assert_eq!(winding_number(&ccw).unwrap(), 1);
        let cw = vec![qv(&[1, 0]), qv(&[0, -1]), qv(&[-1, 0]), qv(&[0, 1])];
        assert_eq!(winding_number(&cw).unwrap(), -1);
        let flat = vec![qv(&[1, 0]), qv(&[1, 1]), qv(&[1, 0]), qv(&[1, -1])];
        assert_eq!(winding_number(&flat).unwrap(), 0);
    }

    #[test]
    fn antipodal_pairs_are_rejected() {
        let bad = vec![qv(&[1, 0]), qv(&[-1, 0])];
        assert!(winding_number(&bad).is_err());
    }
}
