//! Generic flags near infinity: seeded construction, exact verification,
//! sections, and the chamber stratification they induce.

mod strata;
mod walls;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{intersection_poset, Arrangement, Hyperplane};
use crate::rat;
use crate::ratmat::{self, QMat, QVec};
use crate::{Error, Result};

pub use strata::{opposite_chamber, opposite_signs, stratify, Stratification, StratumLevel};
pub use walls::{is_inside_walls, walls_classify, WallData};

/// One subspace F^k: a rational base point and an ordered direction basis.
/// The basis order fixes the orientation used by the degree engine.
#[derive(Clone, Debug)]
pub struct FlagLevel {
    pub base: QVec,
    pub basis: Vec<QVec>,
}

/// A full flag F^0 c F^1 c ... c F^l with exact nesting.
#[derive(Clone, Debug)]
pub struct Flag {
    levels: Vec<FlagLevel>,
}

impl Flag {
    pub fn ambient_dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &FlagLevel {
        &self.levels[k]
    }

    pub fn to_json(&self) -> FlagJson {
        FlagJson {
            levels: self
                .levels
                .iter()
                .map(|l| FlagLevelJson {
                    base: l.base.iter().map(rat::format_rational).collect(),
                    basis: l
                        .basis
                        .iter()
                        .map(|v| v.iter().map(rat::format_rational).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &FlagJson) -> Result<Flag> {
        let mut levels = Vec::with_capacity(json.levels.len());
        for l in &json.levels {
            let base: Result<QVec> = l.base.iter().map(|s| rat::parse_rational(s)).collect();
            let basis: Result<Vec<QVec>> = l
                .basis
                .iter()
                .map(|v| v.iter().map(|s| rat::parse_rational(s)).collect())
                .collect();
            levels.push(FlagLevel {
                base: base?,
                basis: basis?,
            });
        }
        Ok(Flag { levels })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagLevelJson {
    pub base: Vec<String>,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagJson {
    pub levels: Vec<FlagLevelJson>,
}

/// Hyperplane i sectioned to F^k coordinates: the sign of
/// `coeffs . y - rhs` at y equals the ambient sign at the mapped point.
#[derive(Clone, Debug)]
pub struct SectionHyperplane {
    pub index: usize,
    pub coeffs: QVec,
    pub rhs: BigRational,
}

/// All hyperplanes of the arrangement expressed in F^k coordinates.
pub fn section_system(arr: &Arrangement, flag: &Flag, k: usize) -> Vec<SectionHyperplane> {
    let level = flag.level(k);
    (0..arr.n())
        .map(|i| {
            let h = arr.hyperplane(i);
            let coeffs: QVec = level.basis.iter().map(|d| h.eval_dir(d)).collect();
            let rhs = -h.eval(&level.base);
            SectionHyperplane {
                index: i,
                coeffs,
                rhs,
            }
        })
        .collect()
}

/// Map F^k coordinates to an ambient point.
pub fn section_point_to_ambient(flag: &Flag, k: usize, y: &[BigRational]) -> QVec {
    let level = flag.level(k);
    let mut p = level.base.clone();
    for (d, yi) in level.basis.iter().zip(y) {
        p = ratmat::add(&p, &ratmat::scale(d, yi));
    }
    p
}

/// The arrangement {H cap F^k} in F^k coordinates, with the restriction of
/// the flag to levels 0..=k (level k becomes the standard frame).
pub fn generic_section(arr: &Arrangement, flag: &Flag, k: usize) -> Result<(Arrangement, Flag)> {
    if k == 0 || k > arr.dim() {
        return Err(Error::InvalidFlag(format!(
            "section level {k} out of range 1..={}",
            arr.dim()
        )));
    }
    let system = section_system(arr, flag, k);
    let planes: Result<Vec<Hyperplane>> = system
        .iter()
        .map(|s| {
            if s.coeffs.iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidFlag(format!(
                    "hyperplane {} is parallel to F^{k}",
                    s.index + 1
                )));
            }
            Hyperplane::new(s.coeffs.clone(), s.rhs.clone())
        })
        .collect();
    let section = Arrangement::new(k, planes?)
        .map_err(|e| Error::InvalidFlag(format!("degenerate section: {e}")))?;

    let frame = flag.level(k);
    let frame_mat: QMat = (0..frame.base.len())
        .map(|row| frame.basis.iter().map(|d| d[row].clone()).collect())
        .collect();
    let mut levels = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let lj = flag.level(j);
        let base = ratmat::solve(&frame_mat, &ratmat::sub(&lj.base, &frame.base))
            .ok_or_else(|| Error::InvalidFlag(format!("F^{j} is not inside F^{k}")))?;
        let basis: Result<Vec<QVec>> = lj
            .basis
            .iter()
            .map(|d| {
                ratmat::solve(&frame_mat, d)
                    .ok_or_else(|| Error::InvalidFlag(format!("F^{j} is not inside F^{k}")))
            })
            .collect();
        levels.push(FlagLevel {
            base,
            basis: basis?,
        });
    }
    Ok((section, Flag { levels }))
}

/// Build a generic flag near infinity, deterministically from the seed.
/// Directions are drawn from a seeded stream; each offset is placed beyond
/// twice the bounding box of the current section's vertices plus one, which
/// forces the nearness property. The result is verified exactly.
pub fn build_flag(arr: &Arrangement, seed: u64) -> Result<Flag> {
    if !arr.is_essential() {
        return Err(Error::NotEssential);
    }
    let dim = arr.dim();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);

    'attempt: for _ in 0..64 {
        let mut levels = vec![FlagLevel {
            base: vec![BigRational::zero(); dim],
            basis: (0..dim)
                .map(|i| {
                    let mut e = vec![BigRational::zero(); dim];
                    e[i] = BigRational::one();
                    e
                })
                .collect(),
        }];
        // levels[0] is F^l; build downward and reverse at the end.
        let mut ok = true;
        for k in (1..=dim).rev() {
            let current = levels.last().unwrap().clone();
            match build_level_below(arr, &current, k, &mut rng) {
                Some(level) => levels.push(level),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue 'attempt;
        }
        levels.reverse();
        let flag = Flag { levels };
        if verify_flag(arr, &flag).ok {
            return Ok(flag);
        }
    }
    Err(Error::FlagRetryExhausted { level: 0, seed })
}

/// Choose F^{k-1} inside F^k (the last constructed level). The flag passed
/// in has levels [F^l, ..., F^k] in ambient coordinates; section data for
/// F^k is read off the `current` frame directly.
fn build_level_below(
    arr: &Arrangement,
    current: &FlagLevel,
    k: usize,
    rng: &mut ChaCha20Rng,
) -> Option<FlagLevel> {
    // Section hyperplanes of F^k in its own coordinates.
    let coeffs_of = |i: usize| -> QVec {
        let h = arr.hyperplane(i);
        current.basis.iter().map(|d| h.eval_dir(d)).collect()
    };
    let rhs_of = |i: usize| -> BigRational { -arr.hyperplane(i).eval(&current.base) };
    for i in 0..arr.n() {
        if coeffs_of(i).iter().all(|c| c.is_zero()) {
            return None; // genericity already broken higher up
        }
    }
    // Vertices of the section arrangement.
    let section = {
        let planes: Vec<Hyperplane> = (0..arr.n())
            .map(|i| Hyperplane::new(coeffs_of(i), rhs_of(i)))
            .collect::<Result<_>>()
            .ok()?;
        Arrangement::new(k, planes).ok()?
    };
    let (aff, _) = intersection_poset(&section);
    let vertices: Vec<QVec> = aff
        .level(0)
        .map(|f| match &f.witness {
            crate::arrangement::FlatWitness::Affine { point, .. } => point.clone(),
            _ => unreachable!(),
        })
        .collect();

    'draw: for _ in 0..64 {
        let u: QVec = (0..k)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9))))
            .collect();
        if u.iter().all(|c| c.is_zero()) {
            continue;
        }
        if k >= 2 {
            // F^{k-1} must be transversal to every section hyperplane.
            for i in 0..arr.n() {
                if ratmat::rank(&vec![u.clone(), coeffs_of(i)]) < 2 {
                    continue 'draw;
                }
            }
        }
        let bound = vertices
            .iter()
            .map(|v| ratmat::dot(&u, v).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        let c = bound * BigRational::from_integer(2.into()) + BigRational::one();
        let uu = ratmat::dot(&u, &u);
        let y0 = ratmat::scale(&u, &(&c / &uu));
        let dirs = ratmat::nullspace(&vec![u.clone()]);
        debug_assert_eq!(dirs.len(), k - 1);
        // Map back to ambient coordinates.
        let base = section_point_to_ambient_frame(current, &y0);
        let basis = dirs
            .iter()
            .map(|w| {
                let mut v = vec![BigRational::zero(); current.base.len()];
                for (d, wi) in current.basis.iter().zip(w) {
                    v = ratmat::add(&v, &ratmat::scale(d, wi));
                }
                v
            })
            .collect();
        return Some(FlagLevel { base, basis });
    }
    None
}

fn section_point_to_ambient_frame(frame: &FlagLevel, y: &[BigRational]) -> QVec {
    let mut p = frame.base.clone();
    for (d, yi) in frame.basis.iter().zip(y) {
        p = ratmat::add(&p, &ratmat::scale(d, yi));
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagCheckKind {
    Nesting,
    Genericity,
    Nearness,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagCheck {
    pub level: usize,
    pub kind: FlagCheckKind,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub ok: bool,
    pub checks: Vec<FlagCheck>,
}

/// Exact diagnostic verification of both flag invariant families, with the
/// violating flat or vertex pair as witness on failure.
pub fn verify_flag(arr: &Arrangement, flag: &Flag) -> FlagReport {
    let dim = arr.dim();
    let mut checks = Vec::new();

    // Shape and nesting.
    let mut shape_ok = flag.levels.len() == dim + 1;
    if shape_ok {
        for (k, level) in flag.levels.iter().enumerate() {
            if level.basis.len() != k
                || level.base.len() != dim
                || level.basis.iter().any(|d| d.len() != dim)
                || ratmat::rank(&level.basis.to_vec()) != k
            {
                shape_ok = false;
            }
        }
    }
    if !shape_ok {
        return FlagReport {
            ok: false,
            checks: vec![FlagCheck {
                level: 0,
                kind: FlagCheckKind::Nesting,
                ok: false,
                witness: Some("levels must have dims 0..=l with independent bases".into()),
            }],
        };
    }
    for k in 1..=dim {
        let inner = flag.level(k - 1);
        let outer = flag.level(k);
        let outer_mat: QMat = (0..dim)
            .map(|row| outer.basis.iter().map(|d| d[row].clone()).collect())
            .collect();
        let base_in = ratmat::solve(&outer_mat, &ratmat::sub(&inner.base, &outer.base)).is_some();
        let dirs_in = inner
            .basis
            .iter()
            .all(|d| ratmat::solve(&outer_mat, d).is_some());
        checks.push(FlagCheck {
            level: k - 1,
            kind: FlagCheckKind::Nesting,
            ok: base_in && dirs_in,
            witness: (!(base_in && dirs_in)).then(|| format!("F^{} not inside F^{k}", k - 1)),
        });
    }

    // Genericity: dim(X-bar cap F-bar^k) = dim X-bar + k - l for every flat
    // of the projective closure.
    let (_, proj) = intersection_poset(arr);
    for k in 0..=dim {
        let level = flag.level(k);
        let mut fbasis: Vec<QVec> = Vec::with_capacity(k + 1);
        let mut h = level.base.clone();
        h.push(BigRational::one());
        fbasis.push(h);
        for d in &level.basis {
            let mut v = d.clone();
            v.push(BigRational::zero());
            fbasis.push(v);
        }
        let mut witness = None;
        for flat in &proj.flats {
            let xbasis = flat.projective_basis();
            let mut stacked: QMat = xbasis.to_vec();
            stacked.extend(fbasis.iter().cloned());
            let union_rank = ratmat::rank(&stacked);
            let lin_meet = (xbasis.len() + fbasis.len()).saturating_sub(union_rank);
            let expected = (flat.dim as i64 + k as i64 - dim as i64 + 1).max(0) as usize;
            if lin_meet != expected {
                witness = Some(format!(
                    "flat {} (dim {}): dim(X cap F^{k}) + 1 = {lin_meet}, expected {expected}",
                    flat.support, flat.dim
                ));
                break;
            }
        }
        checks.push(FlagCheck {
            level: k,
            kind: FlagCheckKind::Genericity,
            ok: witness.is_none(),
            witness,
        });
    }

    // Nearness: F^{k-1} does not separate L_0(A cap F^k).
    for k in 1..=dim {
        let result = nearness_check(arr, flag, k);
        checks.push(FlagCheck {
            level: k,
            kind: FlagCheckKind::Nearness,
            ok: result.is_none(),
            witness: result,
        });
    }

    FlagReport {
        ok: checks.iter().all(|c| c.ok),
        checks,
    }
}

/// None when F^{k-1} leaves all vertices of A cap F^k strictly on one side;
/// otherwise a witness description.
fn nearness_check(arr: &Arrangement, flag: &Flag, k: usize) -> Option<String> {
    let system = section_system(arr, flag, k);
    let planes: Vec<Hyperplane> = match system
        .iter()
        .map(|s| Hyperplane::new(s.coeffs.clone(), s.rhs.clone()))
        .collect::<Result<Vec<_>>>()
    {
        Ok(p) => p,
        Err(e) => return Some(format!("degenerate section at level {k}: {e}")),
    };
    let section = match Arrangement::new(k, planes) {
        Ok(s) => s,
        Err(e) => return Some(format!("degenerate section at level {k}: {e}")),
    };
    let (aff, _) = intersection_poset(&section);
    let vertices: Vec<QVec> = aff
        .level(0)
        .map(|f| match &f.witness {
            crate::arrangement::FlatWitness::Affine { point, .. } => point.clone(),
            _ => unreachable!(),
        })
        .collect();
    if vertices.is_empty() {
        return None;
    }

    // Express F^{k-1} inside F^k as u . y = c.
    let outer = flag.level(k);
    let inner = flag.level(k - 1);
    let outer_mat: QMat = (0..arr.dim())
        .map(|row| outer.basis.iter().map(|d| d[row].clone()).collect())
        .collect();
    let Some(y0) = ratmat::solve(&outer_mat, &ratmat::sub(&inner.base, &outer.base)) else {
        return Some(format!("F^{} is not inside F^{k}", k - 1));
    };
    let dirs: Option<Vec<QVec>> = inner
        .basis
        .iter()
        .map(|d| ratmat::solve(&outer_mat, d))
        .collect();
    let Some(dirs) = dirs else {
        return Some(format!("F^{} is not inside F^{k}", k - 1));
    };
    let u = if dirs.is_empty() {
        // F^0 inside F^1: separation means vertices on both sides of the
        // point along the line, i.e. mixed signs of (v - y0).
        vec![BigRational::one()]
    } else {
        let ns = ratmat::nullspace(&dirs);
        debug_assert_eq!(ns.len(), 1);
        ns.into_iter().next().expect("corank one")
    };
    let c = ratmat::dot(&u, &y0);
    let mut seen: Option<i8> = None;
    for v in &vertices {
        let s = rat::sign(&(ratmat::dot(&u, v) - &c));
        if s == 0 {
            return Some(format!(
                "vertex {:?} lies on F^{}",
                v.iter().map(rat::format_rational).collect::<Vec<_>>(),
                k - 1
            ));
        }
        match seen {
            None => seen = Some(s),
            Some(prev) if prev != s => {
                return Some(format!(
                    "F^{} separates the vertices of the level-{k} section",
                    k - 1
                ));
            }
            _ => {}
        }
    }
    None
}
