//! The machine verification suite: every identity the library is built
//! around, run against one arrangement and reported with witnesses.

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde_json::{json, Value};

use crate::arrangement::{
    betti_euler, dense_edges_checked, dense_edges_matroid, enumerate_chambers, infinity_span,
    intersection_poset, separating_set, Arrangement, Chamber, DenseWhere, Flat,
};
use crate::chamber_complex::{
    symbolic_block_identity, ChamberCohomologyMode, ChamberComplex, Coefficients, ComplexOptions,
    LocalSystem,
};
use crate::flag::{build_flag, is_inside_walls, verify_flag, walls_classify, Flag};
use crate::linalg::complex_cohomology;
use crate::linalg::CohomologyGroup;
use crate::lp;
use crate::os::{aomoto_matrices, check_unit_hypothesis_on, OsCalculus, WeightVector};
use crate::ratmat::{self, QVec};
use crate::ring::{ring_from_descriptor, RingOps};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<Value>,
    pub duration_ms: u128,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub instance: String,
    pub dim: usize,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Canonical JSON. Timings vary run to run, so they are included only
    /// on request; the default report is byte-identical for fixed inputs
    /// and seed.
    pub fn to_json(&self, include_timings: bool) -> Value {
        json!({
            "instance": self.instance,
            "dim": self.dim,
            "n": self.n,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| {
                let mut entry = json!({
                    "name": c.name,
                    "status": c.status,
                });
                if let Some(w) = &c.witness {
                    entry["witness"] = w.clone();
                }
                if include_timings {
                    entry["duration_ms"] = json!(c.duration_ms);
                }
                entry
            }).collect::<Vec<_>>(),
        })
    }
}

/// Per-check outcome: pass, fail with witness, or skip with reason.
enum Outcome {
    Pass,
    Fail(Value),
    Skip(&'static str),
}

struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let (status, witness) = match f() {
            Ok(Outcome::Pass) => (CheckStatus::Pass, None),
            Ok(Outcome::Fail(w)) => (CheckStatus::Fail, Some(w)),
            Ok(Outcome::Skip(reason)) => (CheckStatus::Skipped, Some(json!(reason))),
            Err(e) => (CheckStatus::Fail, Some(json!(format!("error: {e}")))),
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            status,
            witness,
            duration_ms: start.elapsed().as_millis(),
        });
    }
}

/// Everything computed once per instance and shared across checks.
struct Ctx {
    arr: Arrangement,
    betti: Vec<usize>,
    chi: i64,
    calc: OsCalculus,
    chambers: Vec<Chamber>,
    flag: Option<Flag>,
    cx: Option<ChamberComplex>,
    /// Dense edges at infinity (essential arrangements only).
    dense_inf: Option<Vec<Flat>>,
    /// All dense edges of the projective closure, matroid route.
    dense_all: Vec<Flat>,
}

/// Coefficient data supplied with an instance; adds hypothesis-specific
/// checks to the suite.
#[derive(Default)]
pub struct VerifyInputs {
    pub weights: Option<WeightVector>,
    pub local: Option<LocalSystem>,
}

/// Run the whole verification suite for one arrangement. Deterministic
/// given (arrangement, seed, inputs); non-applicable checks are skipped
/// with a reason.
pub fn run_verify_suite(instance: &str, arr: &Arrangement, seed: u64) -> VerificationReport {
    run_verify_suite_with(instance, arr, seed, &VerifyInputs::default())
}

pub fn run_verify_suite_with(
    instance: &str,
    arr: &Arrangement,
    seed: u64,
    inputs: &VerifyInputs,
) -> VerificationReport {
    let mut suite = Suite { checks: Vec::new() };

    let (aff, proj) = intersection_poset(arr);
    let betti_data = betti_euler(arr, &aff);
    let essential = arr.is_essential();
    let calc = OsCalculus::new(arr);
    let chambers = enumerate_chambers(arr);
    let flag = if essential {
        build_flag(arr, seed).ok()
    } else {
        None
    };
    let cx = match (&flag, arr.dim() <= 3) {
        (Some(f), true) => ChamberComplex::new(arr, f).ok(),
        _ => None,
    };
    let dense_all = dense_edges_matroid(arr, &proj, DenseWhere::All).unwrap_or_default();
    let dense_inf = if essential {
        dense_edges_checked(arr, &proj, &chambers).ok()
    } else {
        None
    };
    let ctx = Ctx {
        arr: arr.clone(),
        betti: betti_data.betti.clone(),
        chi: betti_data.euler_characteristic,
        calc,
        chambers,
        flag,
        cx,
        dense_inf,
        dense_all,
    };

    suite.run("chamber_count_equals_betti_sum", || {
        let total: usize = ctx.betti.iter().sum();
        if ctx.chambers.len() == total {
            Ok(Outcome::Pass)
        } else {
            Ok(Outcome::Fail(json!({
                "chambers": ctx.chambers.len(),
                "betti_sum": total,
            })))
        }
    });

    suite.run("chambers_strictly_realized", || {
        let mut seen = BTreeSet::new();
        for c in &ctx.chambers {
            if !seen.insert(c.signs.to_string()) {
                return Ok(Outcome::Fail(json!({ "duplicate": c.signs.to_string() })));
            }
            if ctx.arr.signs_at(&c.interior_point) != Some(c.signs.clone()) {
                return Ok(Outcome::Fail(
                    json!({ "witness_mismatch": c.signs.to_string() }),
                ));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("nbc_counts_equal_betti", || {
        let mut counts = ctx.calc.nbc_counts();
        let mut betti = ctx.betti.clone();
        // Non-essential arrangements stop at the rank.
        while counts.len() < betti.len() && betti.last() == Some(&0) {
            betti.pop();
        }
        while counts.len() > betti.len() {
            if counts.last() == Some(&0) {
                counts.pop();
            } else {
                break;
            }
        }
        if counts == betti {
            Ok(Outcome::Pass)
        } else {
            Ok(Outcome::Fail(json!({ "nbc": counts, "betti": betti })))
        }
    });

    suite.run("dense_infinity_two_algorithms_agree", || {
        if !essential {
            return Ok(Outcome::Skip("arrangement not essential"));
        }
        // dense_edges_checked cross-checks the matroid route against the
        // chamber route and errors on mismatch.
        match &ctx.dense_inf {
            Some(_) => Ok(Outcome::Pass),
            None => dense_edges_checked(&ctx.arr, &proj, &ctx.chambers).map(|_| Outcome::Pass),
        }
    });

    suite.run("flag_generic_and_near_infinity", || {
        let Some(flag) = &ctx.flag else {
            return Ok(Outcome::Skip("arrangement not essential"));
        };
        let report = verify_flag(&ctx.arr, flag);
        if report.ok {
            Ok(Outcome::Pass)
        } else {
            let bad: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.ok)
                .map(|c| format!("{:?} level {}: {:?}", c.kind, c.level, c.witness))
                .collect();
            Ok(Outcome::Fail(json!(bad)))
        }
    });

    suite.run("stratification_counts_and_bijection", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        for (k, level) in cx.strat.levels.iter().enumerate() {
            if level.ch.len() != ctx.betti[k] {
                return Ok(Outcome::Fail(json!({
                    "level": k, "ch": level.ch.len(), "betti": ctx.betti[k],
                })));
            }
            let alternating: i64 = (0..=k)
                .map(|j| {
                    let b = ctx.betti[k - j] as i64;
                    if j % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum();
            if level.bch.len() as i64 != alternating {
                return Ok(Outcome::Fail(json!({
                    "level": k, "bch": level.bch.len(), "alternating_sum": alternating,
                })));
            }
            if level.bch.len() + level.uch.len() != level.ch.len() {
                return Ok(Outcome::Fail(json!({ "level": k, "partition": "broken" })));
            }
        }
        // iota is a bijection onto uch^{k+1}.
        for k in 0..cx.dim() {
            let level = &cx.strat.levels[k];
            let mut image: Vec<usize> = level.opposite.values().copied().collect();
            image.sort_unstable();
            let mut target = cx.strat.levels[k + 1].uch.clone();
            target.sort_unstable();
            if image != target {
                return Ok(Outcome::Fail(
                    json!({ "level": k, "iota": "not bijective" }),
                ));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("opposite_separating_sets", || {
        if !essential {
            return Ok(Outcome::Skip("arrangement not essential"));
        }
        for (i, c) in ctx.chambers.iter().enumerate() {
            if c.is_bounded() {
                continue;
            }
            let opp = crate::flag::opposite_chamber(&ctx.arr, &ctx.chambers, i)?;
            let sep = separating_set(&c.signs, &ctx.chambers[opp].signs);
            let x = infinity_span(&ctx.arr, c).expect("unbounded");
            let expected: BTreeSet<usize> = (0..ctx.arr.n())
                .filter(|j| !x.support.hyperplanes.contains(j))
                .collect();
            if sep != expected {
                return Ok(Outcome::Fail(json!({
                    "chamber": c.signs.to_string(),
                    "sep": sep.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "complement_of_localization": expected.iter().map(|j| j + 1).collect::<Vec<_>>(),
                })));
            }
            if x.dim == ctx.arr.dim() - 1 && sep.len() != ctx.arr.n() {
                return Ok(Outcome::Fail(json!({
                    "chamber": c.signs.to_string(),
                    "full_flip": "dim X = l-1 must flip every hyperplane",
                })));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("lambda_sep_is_minus_lambda_x", || {
        if !essential {
            return Ok(Outcome::Skip("arrangement not essential"));
        }
        // Set identity Sep(C, C-vee) = A minus the localization makes
        // lambda_Sep = -lambda_X for every weight vector over every ring;
        // spot-check numerically over two rings.
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x2_12);
        for descriptor in ["Q", "Z/6"] {
            let ring = ring_from_descriptor(descriptor)?;
            let w = WeightVector::new(
                ring.clone(),
                (0..ctx.arr.n())
                    .map(|_| ring.int(rng.gen_range(-5..=5)))
                    .collect(),
            )?;
            for (i, c) in ctx.chambers.iter().enumerate() {
                if c.is_bounded() {
                    continue;
                }
                let opp = crate::flag::opposite_chamber(&ctx.arr, &ctx.chambers, i)?;
                let sep = separating_set(&c.signs, &ctx.chambers[opp].signs);
                let x = infinity_span(&ctx.arr, c).expect("unbounded");
                let lhs = w.lambda_sep(&sep);
                let rhs = ring.neg(&w.lambda_flat(&x));
                if lhs != rhs {
                    return Ok(Outcome::Fail(json!({
                        "chamber": c.signs.to_string(),
                        "ring": descriptor,
                        "lambda_sep": ring.format(&lhs),
                        "minus_lambda_x": ring.format(&rhs),
                    })));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("wall_partition_and_containment", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let k = cx.dim() - 1;
        for &c in &cx.strat.levels[k].bch {
            let wd = walls_classify(&ctx.arr, cx.flag(), &cx.chambers, c)?;
            if !wd.wall1.is_disjoint(&wd.wall2)
                || wd.wall1.union(&wd.wall2).copied().collect::<BTreeSet<_>>() != wd.wall
            {
                return Ok(Outcome::Fail(
                    json!({ "chamber": cx.chambers[c].signs.to_string() }),
                ));
            }
            let opp = cx.strat.levels[k].opposite[&c];
            let sep = separating_set(&cx.chambers[c].signs, &cx.chambers[opp].signs);
            let meet: BTreeSet<usize> = sep.intersection(&wd.wall).copied().collect();
            if meet != wd.wall2 {
                return Ok(Outcome::Fail(json!({
                    "chamber": cx.chambers[c].signs.to_string(),
                    "sep_cap_wall": meet.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "wall2": wd.wall2.iter().map(|j| j + 1).collect::<Vec<_>>(),
                })));
            }
            // Being inside the first-kind walls forces X(D) inside X(C);
            // the containment assertion lives in is_inside_walls and errors
            // on breach.
            for (d, chamber) in cx.chambers.iter().enumerate() {
                if !chamber.is_bounded() {
                    is_inside_walls(&ctx.arr, &cx.chambers, d, &wd)?;
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("nabla_squared_zero", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0xded);
        for descriptor in ["Q", "Z", "Z/6", "F_5"] {
            let ring = ring_from_descriptor(descriptor)?;
            let w = WeightVector::new(
                ring.clone(),
                (0..ctx.arr.n())
                    .map(|_| ring.int(rng.gen_range(-5..=5)))
                    .collect(),
            )?;
            let ms = cx.nabla_matrices(&Coefficients::Weights(w))?;
            for (k, pair) in ms.windows(2).enumerate() {
                if !pair[1].mul(&pair[0])?.is_zero() {
                    return Ok(Outcome::Fail(json!({ "ring": descriptor, "degree": k })));
                }
            }
        }
        let ls = prime_local_system(&ctx.arr)?;
        let ms = cx.nabla_matrices(&Coefficients::Local(ls))?;
        for (k, pair) in ms.windows(2).enumerate() {
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Ok(Outcome::Fail(
                    json!({ "coefficients": "local", "degree": k }),
                ));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("chamber_cohomology_equals_aomoto", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x213);
        for descriptor in ["Q", "F_5", "Z"] {
            let ring = ring_from_descriptor(descriptor)?;
            let w = WeightVector::new(
                ring.clone(),
                (0..ctx.arr.n())
                    .map(|_| ring.int(rng.gen_range(-5..=5)))
                    .collect(),
            )?;
            let chamber = cx
                .cohomology(
                    &Coefficients::Weights(w.clone()),
                    ChamberCohomologyMode::Full,
                )?
                .groups;
            let aomoto = complex_cohomology(&aomoto_matrices(&ctx.calc, &w)?)?;
            if let Some(witness) = compare_groups(&chamber, &aomoto) {
                return Ok(Outcome::Fail(
                    json!({ "ring": descriptor, "mismatch": witness }),
                ));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("trivial_local_system_betti", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let ring = ring_from_descriptor("Q")?;
        let ls = LocalSystem::new(ring, vec![ring_from_descriptor("Q")?.one(); ctx.arr.n()])?;
        let out = cx.cohomology(&Coefficients::Local(ls), ChamberCohomologyMode::Full)?;
        let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
        if dims == ctx.betti {
            Ok(Outcome::Pass)
        } else {
            Ok(Outcome::Fail(json!({ "dims": dims, "betti": ctx.betti })))
        }
    });

    // Computed once, consumed by the two block checks below.
    let symbolic: Option<Result<Vec<crate::chamber_complex::SymbolicBlockCheck>>> =
        ctx.cx.as_ref().map(|cx| {
            (0..cx.dim())
                .map(|k| symbolic_block_identity(cx, k))
                .collect()
        });

    suite.run("restricted_blocks_triangular", || {
        let Some(checks) = &symbolic else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        for (k, check) in checks.as_ref().map_err(clone_err)?.iter().enumerate() {
            if !check.triangular {
                return Ok(Outcome::Fail(json!({ "level": k })));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("diagonal_degree_values", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let ring = ring_from_descriptor("Q")?;
        let w = WeightVector::new(ring, vec![ring_from_descriptor("Q")?.one(); ctx.arr.n()])?;
        for k in 0..cx.dim() {
            let block = cx.restricted_block(&Coefficients::Weights(w.clone()), k)?;
            for d in &block.diagonal {
                if d.deg != d.expected_deg {
                    return Ok(Outcome::Fail(json!({
                        "level": k,
                        "chamber": d.chamber,
                        "deg": d.deg,
                        "expected": d.expected_deg,
                    })));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("determinant_identity_symbolic", || {
        let Some(checks) = &symbolic else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        for (k, check) in checks.as_ref().map_err(clone_err)?.iter().enumerate() {
            if !check.matches {
                return Ok(Outcome::Fail(json!({
                    "level": k,
                    "det": check.det,
                    "product": check.product,
                })));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("certificate_route_vanishing", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x31);
        let bch_top = cx.strat.levels[cx.dim()].bch.len();
        if bch_top as i64 != ctx.chi.abs() {
            return Ok(Outcome::Fail(json!({
                "bounded_chambers": bch_top,
                "abs_euler_characteristic": ctx.chi.abs(),
            })));
        }
        for descriptor in ["Q", "F_5", "Z/6"] {
            let ring = ring_from_descriptor(descriptor)?;
            let mut chosen = None;
            for _ in 0..80 {
                let w = WeightVector::new(
                    ring.clone(),
                    (0..ctx.arr.n())
                        .map(|_| ring.int(rng.gen_range(-6..=6)))
                        .collect(),
                )?;
                let dense = ctx.dense_inf.as_deref().unwrap_or(&[]);
                if check_unit_hypothesis_on(dense, &w, 0).0 {
                    chosen = Some(w);
                    break;
                }
            }
            let Some(w) = chosen else {
                continue; // no unit weights found for this ring; fine
            };
            let cert = cx.cohomology(
                &Coefficients::Weights(w.clone()),
                ChamberCohomologyMode::Certificate,
            )?;
            for (k, g) in cert.groups.iter().enumerate() {
                let expected = if k == cx.dim() { bch_top } else { 0 };
                if g.free_rank != expected || !g.torsion.is_empty() {
                    return Ok(Outcome::Fail(json!({
                        "ring": descriptor, "degree": k, "group": g.display(),
                    })));
                }
            }
            // Cross-check with the full route when available.
            if ring.spec().is_field() {
                let full = cx
                    .cohomology(&Coefficients::Weights(w), ChamberCohomologyMode::Full)?
                    .groups;
                if let Some(witness) = compare_groups(&cert.groups, &full) {
                    return Ok(Outcome::Fail(
                        json!({ "ring": descriptor, "mismatch": witness }),
                    ));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("local_system_vanishing_at_infinity", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let ls = prime_local_system(&ctx.arr)?;
        // Distinct prime half monodromies never satisfy q_X = 1.
        let dense = ctx.dense_inf.clone().unwrap_or_default();
        for flat in &dense {
            let q = ls.q_flat(flat);
            if ls.ring().is_one(&q) {
                return Ok(Outcome::Fail(json!({
                    "flat": flat.support.to_string(),
                    "q_x": ls.ring().format(&q),
                })));
            }
        }
        let out = cx.cohomology(&Coefficients::Local(ls), ChamberCohomologyMode::Full)?;
        let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
        let mut expected = vec![0usize; cx.dim() + 1];
        expected[cx.dim()] = ctx.chi.unsigned_abs() as usize;
        if dims == expected {
            Ok(Outcome::Pass)
        } else {
            Ok(Outcome::Fail(json!({ "dims": dims, "expected": expected })))
        }
    });

    suite.run("torsion_local_system_bound", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x13);
        for p in [2u32, 3] {
            for _ in 0..2 {
                let lifts: Vec<i64> = (0..ctx.arr.n())
                    .map(|_| rng.gen_range(0..p as i64))
                    .collect();
                if let Some(witness) = torsion_dim_bound_once(&ctx.calc, cx, p, &lifts)? {
                    return Ok(Outcome::Fail(witness));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("affine_nonresonant_vanishing", || {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x12);
        let ring = ring_from_descriptor("Q")?;
        let all_dense = &ctx.dense_all;
        let mut tested = false;
        for _ in 0..40 {
            let w = WeightVector::new(
                ring.clone(),
                (0..ctx.arr.n())
                    .map(|_| ring.int(rng.gen_range(-6..=6)))
                    .collect(),
            )?;
            // Hypothesis: lambda_X nonzero on every dense edge of the
            // affine poset (the dense edges not at infinity).
            let hypothesis = all_dense
                .iter()
                .filter(|f| !f.at_infinity)
                .all(|f| !ring.is_zero(&w.lambda_flat(f)));
            if !hypothesis {
                continue;
            }
            tested = true;
            let h = complex_cohomology(&aomoto_matrices(&ctx.calc, &w)?)?;
            let dims: Vec<usize> = h.iter().map(|g| g.free_rank).collect();
            let mut expected = vec![0usize; dims.len()];
            if let Some(last) = expected.last_mut() {
                *last = ctx.chi.unsigned_abs() as usize;
            }
            if dims != expected {
                return Ok(Outcome::Fail(json!({ "dims": dims, "expected": expected })));
            }
            break;
        }
        if tested {
            Ok(Outcome::Pass)
        } else {
            Ok(Outcome::Skip(
                "no weights satisfying the dense-edge hypothesis found",
            ))
        }
    });

    suite.run("pointing_field_oracle", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x211);
        match pointing_oracle_sample(&ctx.arr, cx, &mut rng, 24) {
            Ok(()) => Ok(Outcome::Pass),
            Err(e) => Ok(Outcome::Fail(json!(format!("{e}")))),
        }
    });

    suite.run("degree_table_stability", || {
        let Some(cx) = &ctx.cx else {
            return Ok(Outcome::Skip(
                "needs an essential arrangement of dimension <= 3",
            ));
        };
        let doubled = cx.variant(ComplexOptions {
            box_scale: 2,
            perturb_representatives: false,
        })?;
        let perturbed = cx.variant(ComplexOptions {
            box_scale: 1,
            perturb_representatives: true,
        })?;
        for k in 0..cx.dim() {
            let base = cx.degree_table(k)?;
            if base != doubled.degree_table(k)? {
                return Ok(Outcome::Fail(
                    json!({ "level": k, "variant": "box_doubling" }),
                ));
            }
            if base != perturbed.degree_table(k)? {
                return Ok(Outcome::Fail(
                    json!({ "level": k, "variant": "perturbation" }),
                ));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("aomoto_truncation_by_sections", || {
        let Some(flag) = &ctx.flag else {
            return Ok(Outcome::Skip("arrangement not essential"));
        };
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x32);
        let ring = ring_from_descriptor("Q")?;
        let w = WeightVector::new(
            ring.clone(),
            (0..ctx.arr.n())
                .map(|_| ring.int(rng.gen_range(-5..=5)))
                .collect(),
        )?;
        let full_ms = aomoto_matrices(&ctx.calc, &w)?;
        for k in 1..ctx.arr.dim() {
            let (section, _) = crate::flag::generic_section(&ctx.arr, flag, k)?;
            let scalc = OsCalculus::new(&section);
            // Same NBC sets in degrees <= k.
            for j in 0..=k {
                if scalc.nbc(j) != ctx.calc.nbc(j) {
                    return Ok(Outcome::Fail(json!({
                        "section_level": k, "degree": j, "mismatch": "nbc sets",
                    })));
                }
            }
            let sms = aomoto_matrices(&scalc, &w)?;
            for j in 0..k {
                if sms[j].entry_strings() != full_ms[j].entry_strings() {
                    return Ok(Outcome::Fail(json!({
                        "section_level": k, "degree": j, "mismatch": "matrices",
                    })));
                }
            }
            // Betti numbers agree through level k.
            let (saff, _) = intersection_poset(&section);
            let sbetti = betti_euler(&section, &saff).betti;
            if sbetti[..=k] != ctx.betti[..=k] {
                return Ok(Outcome::Fail(json!({
                    "section_level": k, "betti": sbetti, "full": ctx.betti,
                })));
            }
        }
        Ok(Outcome::Pass)
    });

    if let Some(w) = &inputs.weights {
        let hypothesis = ctx
            .dense_inf
            .as_deref()
            .map(|dense| check_unit_hypothesis_on(dense, w, 0));
        suite.run("given_weights_unit_hypothesis", || {
            let Some((ok, witnesses)) = hypothesis.clone() else {
                return Ok(Outcome::Skip("arrangement not essential"));
            };
            if ok {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::Fail(json!(witnesses
                    .iter()
                    .map(|(s, v)| json!({ "support": s, "lambda_x": v }))
                    .collect::<Vec<_>>())))
            }
        });
        suite.run("given_weights_vanishing", || {
            match &hypothesis {
                None => return Ok(Outcome::Skip("arrangement not essential")),
                Some((false, _)) => return Ok(Outcome::Skip("unit hypothesis does not hold")),
                Some((true, _)) => {}
            }
            let Some(cx) = &ctx.cx else {
                return Ok(Outcome::Skip(
                    "needs an essential arrangement of dimension <= 3",
                ));
            };
            let cert = cx.cohomology(
                &Coefficients::Weights(w.clone()),
                ChamberCohomologyMode::Certificate,
            )?;
            let bch_top = cx.strat.levels[cx.dim()].bch.len();
            for (k, g) in cert.groups.iter().enumerate() {
                let expected = if k == cx.dim() { bch_top } else { 0 };
                if g.free_rank != expected || !g.torsion.is_empty() {
                    return Ok(Outcome::Fail(json!({ "degree": k, "group": g.display() })));
                }
            }
            Ok(Outcome::Pass)
        });
    }

    if let Some(ls) = &inputs.local {
        let q_check: Option<(bool, Vec<Value>)> = ctx.dense_inf.as_deref().map(|dense| {
            let mut witnesses = Vec::new();
            for flat in dense {
                let q = ls.q_flat(flat);
                if ls.ring().is_one(&q) {
                    witnesses.push(json!({
                        "support": flat.support,
                        "q_x": ls.ring().format(&q),
                    }));
                }
            }
            (witnesses.is_empty(), witnesses)
        });
        suite.run("given_monodromy_nonresonance", || {
            let Some((ok, witnesses)) = q_check.clone() else {
                return Ok(Outcome::Skip("arrangement not essential"));
            };
            if ok {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::Fail(json!(witnesses)))
            }
        });
        suite.run("given_monodromy_vanishing", || {
            match &q_check {
                None => return Ok(Outcome::Skip("arrangement not essential")),
                Some((false, _)) => return Ok(Outcome::Skip("monodromy hypothesis does not hold")),
                Some((true, _)) => {}
            }
            let Some(cx) = &ctx.cx else {
                return Ok(Outcome::Skip(
                    "needs an essential arrangement of dimension <= 3",
                ));
            };
            let out = cx.cohomology(
                &Coefficients::Local(ls.clone()),
                ChamberCohomologyMode::Full,
            )?;
            let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
            let mut expected = vec![0usize; cx.dim() + 1];
            expected[cx.dim()] = ctx.chi.unsigned_abs() as usize;
            if dims == expected {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::Fail(json!({ "dims": dims, "expected": expected })))
            }
        });
    }

    VerificationReport {
        instance: instance.to_string(),
        dim: arr.dim(),
        n: arr.n(),
        seed,
        checks: suite.checks,
    }
}

/// Half monodromies 2, 3, 5, ... (distinct primes): q_X != 1 on every
/// infinity flat of an essential arrangement.
pub fn prime_local_system(arr: &Arrangement) -> Result<LocalSystem> {
    let primes = [
        2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
    ];
    if arr.n() > primes.len() {
        return Err(Error::Internal("prime list exhausted".into()));
    }
    let ring = ring_from_descriptor("Q")?;
    let half: Vec<_> = (0..arr.n()).map(|i| ring.int(primes[i])).collect();
    LocalSystem::new(ring, half)
}

/// One torsion-bound comparison: weights over F_p against the local
/// system with q_i^{1/2} = zeta_2p^{lift}; dim H^k(local) must not exceed
/// dim_F_p H^k(Aomoto) in any degree. Returns a witness on violation.
pub fn torsion_dim_bound_once(
    calc: &OsCalculus,
    cx: &ChamberComplex,
    p: u32,
    lifts: &[i64],
) -> Result<Option<Value>> {
    let fp = ring_from_descriptor(&format!("F_{p}"))?;
    let w = WeightVector::new(fp.clone(), lifts.iter().map(|&l| fp.int(l)).collect())?;
    let aomoto = complex_cohomology(&aomoto_matrices(calc, &w)?)?;

    let cyc = crate::ring::CyclotomicField::new(2 * p);
    let ring: std::sync::Arc<dyn crate::ring::Ring> = std::sync::Arc::new(cyc);
    let half: Vec<_> = lifts
        .iter()
        .map(|&l| {
            let c = crate::ring::CyclotomicField::new(2 * p);
            c.zeta_pow(l)
        })
        .collect();
    let ls = LocalSystem::new(ring, half)?;
    let local = cx
        .cohomology(&Coefficients::Local(ls), ChamberCohomologyMode::Full)?
        .groups;

    for k in 0..local.len().max(aomoto.len()) {
        let l = local.get(k).map(|g| g.free_rank).unwrap_or(0);
        let a = aomoto.get(k).map(|g| g.free_rank).unwrap_or(0);
        if l > a {
            return Ok(Some(json!({
                "p": p,
                "lambda": lifts,
                "degree": k,
                "local_dim": l,
                "aomoto_dim": a,
            })));
        }
    }
    Ok(None)
}

/// Sample points for the pointing-field oracle: for chambers in ch^1 and
/// ch^2, inside points give (-1)^k and outside points give 0.
pub fn pointing_oracle_sample(
    arr: &Arrangement,
    cx: &ChamberComplex,
    rng: &mut ChaCha20Rng,
    count: usize,
) -> Result<()> {
    let mut done = 0usize;
    let mut ks = vec![];
    for k in 1..=cx.dim().min(2) {
        ks.push(k);
    }
    if ks.is_empty() {
        return Ok(());
    }
    let flag = cx.flag().clone();
    while done < count {
        let k = ks[rng.gen_range(0..ks.len())];
        let level = &cx.strat.levels[k];
        if level.ch.is_empty() {
            continue;
        }
        let c = level.ch[rng.gen_range(0..level.ch.len())];
        // An interior point of C cap F^k.
        let system = crate::flag::section_system(arr, &flag, k);
        let rows: Vec<(QVec, BigRational)> = system
            .iter()
            .map(|s| {
                let sign = cx.chambers[c].signs.get(s.index).as_q();
                (ratmat::scale(&s.coeffs, &sign), &sign * &s.rhs)
            })
            .collect();
        let inside = lp::strict_feasible_point(&rows)
            .ok_or_else(|| Error::Internal("stratified chamber misses its level".into()))?;
        let expected = if k % 2 == 0 { 1 } else { -1 };
        let got = cx.pointing_degree(c, &inside)?;
        if got != expected {
            return Err(Error::Internal(format!(
                "inside point of {} at level {k}: degree {got} != {expected}",
                cx.chambers[c].signs
            )));
        }
        // A point in some other chamber of the section: degree 0.
        let other = level
            .ch
            .iter()
            .chain(if k >= 1 {
                cx.strat.levels[k - 1].ch.iter()
            } else {
                [].iter()
            })
            .find(|&&d| d != c);
        if let Some(&d) = other {
            let rows: Vec<(QVec, BigRational)> = system
                .iter()
                .map(|s| {
                    let sign = cx.chambers[d].signs.get(s.index).as_q();
                    (ratmat::scale(&s.coeffs, &sign), &sign * &s.rhs)
                })
                .collect();
            if let Some(outside) = lp::strict_feasible_point(&rows) {
                let got = cx.pointing_degree(c, &outside)?;
                if got != 0 {
                    return Err(Error::Internal(format!(
                        "outside point for {} at level {k}: degree {got} != 0",
                        cx.chambers[c].signs
                    )));
                }
            }
        }
        done += 1;
    }
    Ok(())
}

fn clone_err(e: &Error) -> Error {
    Error::Internal(e.to_string())
}

fn compare_groups(a: &[CohomologyGroup], b: &[CohomologyGroup]) -> Option<String> {
    let len = a.len().max(b.len());
    for k in 0..len {
        let ga = a.get(k);
        let gb = b.get(k);
        let (fa, ta) = ga
            .map(|g| (g.free_rank, g.torsion.clone()))
            .unwrap_or((0, vec![]));
        let (fb, tb) = gb
            .map(|g| (g.free_rank, g.torsion.clone()))
            .unwrap_or((0, vec![]));
        if fa != fb || ta != tb {
            return Some(format!(
                "degree {k}: {} vs {}",
                ga.map(|g| g.display()).unwrap_or_else(|| "0".into()),
                gb.map(|g| g.display()).unwrap_or_else(|| "0".into())
            ));
        }
    }
    None
}
