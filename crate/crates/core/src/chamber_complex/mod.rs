//! The chamber cochain complexes (R[ch], nabla_omega) and (F[ch],
//! nabla_L): coboundary assembly from the degree engine, restricted-block
//! certificates, and cohomology.

mod certificate;
mod degree;

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arrangement::{
    enumerate_chambers, separating_set, Arrangement, Chamber, Flat, SignVector,
};
use crate::flag::{stratify, Flag, Stratification};
use crate::linalg::{complex_cohomology, CohomologyGroup, Matrix};
use crate::lp;
use crate::os::WeightVector;
use crate::ratmat::{self, QVec};
use crate::ring::{build_ring, parse_ring_spec, Ring, RingElement, RingOps};
use crate::{Error, Result};

pub use certificate::{
    restricted_block, symbolic_block_identity, BlockCertificate, DiagonalEntry, SymbolicBlockCheck,
};
pub use degree::{pointing_degree, winding_number, Bound, LevelGeometry, Polygon};

/// A rank-one local system presented by exact half monodromies q_i^{1/2}
/// in a field (Q, Q(zeta_n) or F_p).
#[derive(Clone)]
pub struct LocalSystem {
    ring: Arc<dyn Ring>,
    half: Vec<RingElement>,
    half_inv: Vec<RingElement>,
}

impl LocalSystem {
    pub fn new(ring: Arc<dyn Ring>, half: Vec<RingElement>) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::NotAField(ring.spec().descriptor()));
        }
        let mut half_inv = Vec::with_capacity(half.len());
        for h in &half {
            if !ring.contains(h) {
                return Err(Error::RingMismatch(ring.spec().descriptor()));
            }
            half_inv.push(ring.inverse(h).ok_or(Error::ZeroMonodromy)?);
        }
        Ok(LocalSystem {
            ring,
            half,
            half_inv,
        })
    }

    pub fn from_strings(ring_descriptor: &str, values: &[String]) -> Result<Self> {
        let ring = build_ring(&parse_ring_spec(ring_descriptor)?);
        let half: Result<Vec<RingElement>> = values.iter().map(|s| ring.parse(s)).collect();
        LocalSystem::new(ring, half?)
    }

    pub fn ring(&self) -> &Arc<dyn Ring> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.half.len()
    }

    pub fn half(&self, i: usize) -> &RingElement {
        &self.half[i]
    }

    /// q_i = (q_i^{1/2})^2.
    pub fn q(&self, i: usize) -> RingElement {
        self.ring.mul(&self.half[i], &self.half[i])
    }

    /// q_infinity^{1/2} = (prod q_i^{1/2})^{-1}.
    pub fn q_infinity_half(&self) -> RingElement {
        let prod = self.ring.product(self.half.iter());
        self.ring.inverse(&prod).expect("product of units")
    }

    /// q_X over the closed support, q_infinity included at infinity.
    pub fn q_flat(&self, flat: &Flat) -> RingElement {
        let mut acc = self
            .ring
            .product(flat.support.hyperplanes.iter().map(|&i| &self.half[i]));
        acc = self.ring.mul(&acc, &acc); // product of q_i
        if flat.support.infinity {
            let qih = self.q_infinity_half();
            let qinf = self.ring.mul(&qih, &qih);
            acc = self.ring.mul(&acc, &qinf);
        }
        acc
    }

    /// Delta(C, C') = prod q_i^{1/2} - prod q_i^{-1/2} over Sep(C, C').
    pub fn delta(&self, sep: &std::collections::BTreeSet<usize>) -> RingElement {
        let fwd = self.ring.product(sep.iter().map(|&i| &self.half[i]));
        let bwd = self.ring.product(sep.iter().map(|&i| &self.half_inv[i]));
        self.ring.sub(&fwd, &bwd)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalSystemJson {
    pub ring: String,
    pub q_sqrt: Vec<String>,
}

/// Coefficient data for the chamber complex: ring weights for
/// nabla_omega, half monodromies for nabla_L.
#[derive(Clone)]
pub enum Coefficients {
    Weights(WeightVector),
    Local(LocalSystem),
}

impl Coefficients {
    pub fn ring(&self) -> &Arc<dyn Ring> {
        match self {
            Coefficients::Weights(w) => w.ring(),
            Coefficients::Local(l) => l.ring(),
        }
    }

    /// The scalar attached to an ordered chamber pair: lambda_Sep or Delta.
    pub fn sep_value(&self, sep: &std::collections::BTreeSet<usize>) -> RingElement {
        match self {
            Coefficients::Weights(w) => w.lambda_sep(sep),
            Coefficients::Local(l) => l.delta(sep),
        }
    }

    /// The diagonal invariant of an opposite pair: -lambda_X(C) equals
    /// lambda_Sep, and the q-analogue for local systems.
    pub fn flat_value(&self, flat: &Flat) -> RingElement {
        match self {
            Coefficients::Weights(w) => w.lambda_flat(flat),
            Coefficients::Local(l) => l.q_flat(flat),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexOptions {
    /// Multiplier on the clipping box; doubling must not change degrees.
    pub box_scale: u32,
    /// Replace edge representatives by perturbed vectors strictly inside
    /// the same half-planes; degrees must not change.
    pub perturb_representatives: bool,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions {
            box_scale: 1,
            perturb_representatives: false,
        }
    }
}

/// Everything needed to evaluate the chamber complex of one (A, F) pair:
/// chambers, stratification, per-level clipping geometry, degree tables.
pub struct ChamberComplex {
    arr: Arrangement,
    flag: Flag,
    pub chambers: Vec<Chamber>,
    pub strat: Stratification,
    geoms: Vec<Option<LevelGeometry>>,
    witnesses: Vec<Vec<QVec>>,
    tables: Vec<OnceLock<Vec<Vec<i64>>>>,
    sections: Vec<OnceLock<Box<ChamberComplex>>>,
    options: ComplexOptions,
}

impl ChamberComplex {
    pub fn new(arr: &Arrangement, flag: &Flag) -> Result<Self> {
        ChamberComplex::with_options(arr, flag, ComplexOptions::default())
    }

    pub fn with_options(arr: &Arrangement, flag: &Flag, options: ComplexOptions) -> Result<Self> {
        let dim = arr.dim();
        if dim > 3 {
            return Err(Error::DegreeUnsupported(dim - 1));
        }
        let chambers = enumerate_chambers(arr);
        let strat = stratify(arr, flag, &chambers)?;
        let mut witnesses: Vec<Vec<QVec>> = vec![vec![]; dim + 1];
        let mut geoms: Vec<Option<LevelGeometry>> = (0..=dim).map(|_| None).collect();
        for k in 1..=dim.min(2) {
            witnesses[k] = section_witnesses(arr, flag, &chambers, &strat, k)?;
            geoms[k] = Some(LevelGeometry::new(
                arr,
                flag,
                k,
                &witnesses[k],
                options.box_scale,
            )?);
        }
        let tables = (0..=dim).map(|_| OnceLock::new()).collect();
        let sections = (0..=dim).map(|_| OnceLock::new()).collect();
        Ok(ChamberComplex {
            arr: arr.clone(),
            flag: flag.clone(),
            chambers,
            strat,
            geoms,
            witnesses,
            tables,
            sections,
            options,
        })
    }

    /// A copy with different degree-engine options (box scale or
    /// representative perturbation), sharing the already computed
    /// chambers, stratification and box witnesses.
    pub fn variant(&self, options: ComplexOptions) -> Result<ChamberComplex> {
        let dim = self.dim();
        let mut geoms: Vec<Option<LevelGeometry>> = (0..=dim).map(|_| None).collect();
        for k in 1..=dim.min(2) {
            geoms[k] = Some(LevelGeometry::new(
                &self.arr,
                &self.flag,
                k,
                &self.witnesses[k],
                options.box_scale,
            )?);
        }
        Ok(ChamberComplex {
            arr: self.arr.clone(),
            flag: self.flag.clone(),
            chambers: self.chambers.clone(),
            strat: self.strat.clone(),
            geoms,
            witnesses: self.witnesses.clone(),
            tables: (0..=dim).map(|_| OnceLock::new()).collect(),
            sections: (0..=dim).map(|_| OnceLock::new()).collect(),
            options,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    pub fn dim(&self) -> usize {
        self.arr.dim()
    }

    pub fn chamber_index(&self, signs: &str) -> Option<usize> {
        self.chambers
            .iter()
            .position(|c| c.signs.to_string() == signs)
    }

    fn geometry(&self, k: usize) -> Result<&LevelGeometry> {
        self.geoms
            .get(k)
            .and_then(|g| g.as_ref())
            .ok_or(Error::DegreeUnsupported(k))
    }

    /// deg(C, C') for C in ch^k, C' in ch^{k+1}, by chamber indices.
    pub fn degree(&self, c: usize, c_next: usize) -> Result<i64> {
        let k = self.strat.level_of(c);
        if self.strat.level_of(c_next) != k + 1 {
            return Err(Error::Shape(format!(
                "degree needs consecutive levels, got ch^{k} and ch^{}",
                self.strat.level_of(c_next)
            )));
        }
        let table = self.degree_table(k)?;
        let row = self.strat.levels[k]
            .ch
            .iter()
            .position(|&i| i == c)
            .unwrap();
        let col = self.strat.levels[k + 1]
            .ch
            .iter()
            .position(|&i| i == c_next)
            .unwrap();
        Ok(table[row][col])
    }

    /// The full table deg(ch^k x ch^{k+1}), indexed in stratification
    /// order on both sides.
    pub fn degree_table(&self, k: usize) -> Result<&Vec<Vec<i64>>> {
        if k >= self.dim() {
            return Err(Error::DegreeUnsupported(k));
        }
        if let Some(hit) = self.tables[k].get() {
            return Ok(hit);
        }
        let computed = self.compute_degree_table(k)?;
        let _ = self.tables[k].set(computed);
        Ok(self.tables[k].get().unwrap())
    }

    fn compute_degree_table(&self, k: usize) -> Result<Vec<Vec<i64>>> {
        let sources = &self.strat.levels[k].ch;
        let targets = &self.strat.levels[k + 1].ch;
        let mut table = vec![vec![0i64; targets.len()]; sources.len()];
        match k {
            0 => {
                // Convention: the Gauss-map definition degenerates at k = 0;
                // every coefficient is 1. Validated downstream by
                // nabla-squared = 0 and the Aomoto comparison.
                for row in table.iter_mut() {
                    for entry in row.iter_mut() {
                        *entry = 1;
                    }
                }
            }
            1 => {
                let geom = self.geometry(1)?;
                for (r, &c) in sources.iter().enumerate() {
                    for (t, &cn) in targets.iter().enumerate() {
                        table[r][t] = degree::degree_k1(
                            geom,
                            &self.chambers[c],
                            &self.chambers[cn].signs,
                            self.options.perturb_representatives,
                        )?;
                    }
                }
            }
            2 => {
                let geom = self.geometry(2)?;
                for (r, &c) in sources.iter().enumerate() {
                    let polygon = degree::polygon_of(geom, &self.chambers[c])?;
                    for (t, &cn) in targets.iter().enumerate() {
                        table[r][t] = degree::degree_k2(
                            geom,
                            &polygon,
                            &self.chambers[cn].signs,
                            self.options.perturb_representatives,
                        )?;
                    }
                }
            }
            other => return Err(Error::DegreeUnsupported(other)),
        }
        Ok(table)
    }

    /// Coboundaries of (R[ch], nabla): entry deg(C, C') * coefficient.
    pub fn nabla_matrices(&self, coeffs: &Coefficients) -> Result<Vec<Matrix>> {
        self.check_arity(coeffs)?;
        let ring = coeffs.ring().clone();
        let mut out = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let sources = &self.strat.levels[k].ch;
            let targets = &self.strat.levels[k + 1].ch;
            let table = self.degree_table(k)?;
            let mut m = Matrix::zero(ring.clone(), targets.len(), sources.len());
            for (col, &c) in sources.iter().enumerate() {
                for (row, &cn) in targets.iter().enumerate() {
                    let deg = table[col][row];
                    if deg == 0 {
                        continue;
                    }
                    let sep = separating_set(&self.chambers[c].signs, &self.chambers[cn].signs);
                    let value = ring.scale_int(&deg.into(), &coeffs.sep_value(&sep));
                    m.set(row, col, value);
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    /// Degree of the pointing field toward `p0` (in F^k coordinates) over
    /// the clipped boundary of C in ch^k; k in {1, 2}.
    pub fn pointing_degree(&self, c: usize, p0: &QVec) -> Result<i64> {
        let k = self.strat.level_of(c);
        let geom = self.geometry(k)?;
        degree::pointing_degree(geom, &self.chambers[c], p0)
    }

    fn check_arity(&self, coeffs: &Coefficients) -> Result<()> {
        let n = match coeffs {
            Coefficients::Weights(w) => w.n(),
            Coefficients::Local(l) => l.n(),
        };
        if n != self.arr.n() {
            return Err(Error::Shape(format!(
                "{n} coefficients for {} hyperplanes",
                self.arr.n()
            )));
        }
        Ok(())
    }

    /// The chamber complex of the generic section by F^level, cached;
    /// its chambers carry the same sign vectors as this one's.
    pub fn section_complex(&self, level: usize) -> Result<&ChamberComplex> {
        if level == 0 || level >= self.dim() {
            return Err(Error::InvalidFlag(format!(
                "section level {level} out of range 1..{}",
                self.dim()
            )));
        }
        let slot = &self.sections[level];
        if slot.get().is_none() {
            let (section, section_flag) =
                crate::flag::generic_section(&self.arr, &self.flag, level)?;
            let built = ChamberComplex::new(&section, &section_flag)?;
            let _ = slot.set(Box::new(built));
        }
        Ok(slot.get().unwrap())
    }

    /// The restricted block bch^k -> uch^{k+1} certificate; for
    /// k < dim - 1 it is computed in the generic section by F^{k+1},
    /// whose chambers carry the same sign vectors.
    pub fn restricted_block(&self, coeffs: &Coefficients, k: usize) -> Result<BlockCertificate> {
        certificate::restricted_block(self, coeffs, k)
    }

    pub fn cohomology(
        &self,
        coeffs: &Coefficients,
        mode: ChamberCohomologyMode,
    ) -> Result<ChamberCohomologyOutcome> {
        match mode {
            ChamberCohomologyMode::Full => {
                let matrices = self.nabla_matrices(coeffs)?;
                let groups = complex_cohomology(&matrices)?;
                Ok(ChamberCohomologyOutcome {
                    groups,
                    certificates: None,
                })
            }
            ChamberCohomologyMode::Certificate => {
                let dim = self.dim();
                let mut certificates = Vec::with_capacity(dim);
                for k in 0..dim {
                    let block = self.restricted_block(coeffs, k)?;
                    if !block.det_is_unit {
                        let witness = block
                            .diagonal
                            .iter()
                            .find(|d| !d.unit)
                            .map(|d| format!("{} at {}", d.flat_value, d.chamber))
                            .unwrap_or_else(|| block.det.clone());
                        return Err(Error::CertificateRefused { level: k, witness });
                    }
                    certificates.push(block);
                }
                let spec = coeffs.ring().spec().clone();
                let mut groups: Vec<CohomologyGroup> = (0..dim)
                    .map(|_| CohomologyGroup::free(spec.clone(), 0))
                    .collect();
                let mut top = CohomologyGroup::free(spec, self.strat.levels[dim].bch.len());
                top.vanishing_certificate = Some(serde_json::to_value(&certificates).unwrap());
                groups.push(top);
                Ok(ChamberCohomologyOutcome {
                    groups,
                    certificates: Some(certificates),
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberCohomologyMode {
    Full,
    Certificate,
}

#[derive(Clone, Debug)]
pub struct ChamberCohomologyOutcome {
    pub groups: Vec<CohomologyGroup>,
    pub certificates: Option<Vec<BlockCertificate>>,
}

/// Entry points mirroring the operation signatures: build the complex
/// behind the scenes.
pub fn nabla_omega_matrices(
    arr: &Arrangement,
    flag: &Flag,
    w: &WeightVector,
) -> Result<Vec<Matrix>> {
    ChamberComplex::new(arr, flag)?.nabla_matrices(&Coefficients::Weights(w.clone()))
}

pub fn nabla_local_matrices(
    arr: &Arrangement,
    flag: &Flag,
    ls: &LocalSystem,
) -> Result<Vec<Matrix>> {
    ChamberComplex::new(arr, flag)?.nabla_matrices(&Coefficients::Local(ls.clone()))
}

pub fn chamber_cohomology(
    arr: &Arrangement,
    flag: &Flag,
    coeffs: &Coefficients,
    mode: ChamberCohomologyMode,
) -> Result<ChamberCohomologyOutcome> {
    ChamberComplex::new(arr, flag)?.cohomology(coeffs, mode)
}

/// One interior witness of C cap F^k per chamber meeting F^k, in F^k
/// coordinates; these are folded into the clipping box so that every
/// clipped section is nonempty.
fn section_witnesses(
    arr: &Arrangement,
    flag: &Flag,
    chambers: &[Chamber],
    strat: &Stratification,
    k: usize,
) -> Result<Vec<QVec>> {
    let system = crate::flag::section_system(arr, flag, k);
    let mut out = Vec::new();
    for level in 0..=k {
        for &c in &strat.levels[level].ch {
            let rows: Vec<(QVec, BigRational)> = system
                .iter()
                .map(|s| {
                    let sign = chambers[c].signs.get(s.index).as_q();
                    (ratmat::scale(&s.coeffs, &sign), &sign * &s.rhs)
                })
                .collect();
            let witness = lp::strict_feasible_point(&rows).ok_or_else(|| {
                Error::Internal(format!(
                    "chamber {} in ch^{level} does not meet F^{k}",
                    chambers[c].signs
                ))
            })?;
            out.push(witness);
        }
    }
    Ok(out)
}

/// Convenience for tests and the CLI: deg(C, C-vee) for every chamber of
/// bch^{dim-1}, with the dim X(C) values.
pub fn top_block_degrees(cx: &ChamberComplex) -> Result<Vec<(SignVector, SignVector, usize, i64)>> {
    let k = cx.dim() - 1;
    let mut out = Vec::new();
    for &c in &cx.strat.levels[k].bch {
        let opp = cx.strat.levels[k].opposite[&c];
        let d = cx.chambers[c]
            .dim_x()
            .ok_or_else(|| Error::Internal("bounded chamber in bch^{dim-1}".into()))?;
        let deg = cx.degree(c, opp)?;
        out.push((
            cx.chambers[c].signs.clone(),
            cx.chambers[opp].signs.clone(),
            d,
            deg,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::flag::build_flag;
    use num_traits::One;

    fn e1_complex() -> ChamberComplex {
        let arr = corpus::e1();
        let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
        ChamberComplex::new(&arr, &flag).unwrap()
    }

    fn e1_handwritten_complex() -> ChamberComplex {
        let arr = corpus::e1();
        let flag = crate::flag::Flag::from_json(&crate::flag::FlagJson {
            levels: vec![
                crate::flag::FlagLevelJson {
                    base: vec!["-5".into(), "-25".into()],
                    basis: vec![],
                },
                crate::flag::FlagLevelJson {
                    base: vec!["0".into(), "-10".into()],
                    basis: vec![vec!["1".into(), "3".into()]],
                },
                crate::flag::FlagLevelJson {
                    base: vec!["0".into(), "0".into()],
                    basis: vec![vec!["1".into(), "0".into()], vec!["0".into(), "1".into()]],
                },
            ],
        })
        .unwrap();
        ChamberComplex::new(&arr, &flag).unwrap()
    }

    #[test]
    fn degree_examples_on_e1_with_the_handwritten_flag() {
        let arr = corpus::e1();
        let q = |s: &str| crate::rat::parse_rational(s).unwrap();
        let flag = crate::flag::Flag::from_json(&crate::flag::FlagJson {
            levels: vec![
                crate::flag::FlagLevelJson {
                    base: vec!["-5".into(), "-25".into()],
                    basis: vec![],
                },
                crate::flag::FlagLevelJson {
                    base: vec!["0".into(), "-10".into()],
                    basis: vec![vec!["1".into(), "3".into()]],
                },
                crate::flag::FlagLevelJson {
                    base: vec!["0".into(), "0".into()],
                    basis: vec![vec!["1".into(), "0".into()], vec!["0".into(), "1".into()]],
                },
            ],
        })
        .unwrap();
        let _ = q;
        let cx = ChamberComplex::new(&arr, &flag).unwrap();
        let idx = |s: &str| cx.chamber_index(s).unwrap();
        assert_eq!(cx.degree(idx("+--"), idx("++-")).unwrap(), -1);
        assert_eq!(cx.degree(idx("+-+"), idx("++-")).unwrap(), 1);
        // Degree-formula values on the top block.
        for (c, _opp, d, deg) in top_block_degrees(&cx).unwrap() {
            assert_eq!(deg, if (1 - d) % 2 == 0 { 1 } else { -1 }, "{c}");
        }
    }

    #[test]
    fn nabla_squared_vanishes_on_builtins() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for name in corpus::BUILTIN_NAMES {
            let arr = corpus::builtin(name).unwrap();
            let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
            let cx = ChamberComplex::new(&arr, &flag).unwrap();
            for descriptor in ["Z", "Z/6", "F_5", "Q"] {
                let ring = crate::ring::ring_from_descriptor(descriptor).unwrap();
                let lambdas: Vec<_> = (0..arr.n())
                    .map(|_| ring.int(rng.gen_range(-4..=4)))
                    .collect();
                let w = WeightVector::new(ring, lambdas).unwrap();
                let ms = cx.nabla_matrices(&Coefficients::Weights(w)).unwrap();
                for pair in ms.windows(2) {
                    assert!(
                        pair[1].mul(&pair[0]).unwrap().is_zero(),
                        "{name} {descriptor}"
                    );
                }
            }
        }
    }

    #[test]
    fn e1_nabla_entry_example() {
        // Coefficient of [+-+] in nabla[---] is lambda_1 + lambda_3; needs
        // the handwritten flag where ch^0 = {---} and +-+ sits in ch^1.
        let cx = e1_handwritten_complex();
        let w = WeightVector::from_strings("Q", &["2".into(), "5".into(), "11".into()]).unwrap();
        let ms = cx
            .nabla_matrices(&Coefficients::Weights(w.clone()))
            .unwrap();
        let src = cx.chamber_index("---").unwrap();
        let dst = cx.chamber_index("+-+").unwrap();
        let col = cx.strat.levels[0]
            .ch
            .iter()
            .position(|&i| i == src)
            .unwrap();
        let row = cx.strat.levels[1]
            .ch
            .iter()
            .position(|&i| i == dst)
            .unwrap();
        assert_eq!(w.ring().format(ms[0].get(row, col)), "13");
    }

    #[test]
    fn chamber_cohomology_matches_aomoto_on_e1() {
        let arr = corpus::e1();
        let cx = e1_complex();
        let w = WeightVector::from_strings("F_2", &["1".into(), "1".into(), "1".into()]).unwrap();
        let out = cx
            .cohomology(
                &Coefficients::Weights(w.clone()),
                ChamberCohomologyMode::Full,
            )
            .unwrap();
        let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
        assert_eq!(dims, vec![0, 0, 1]);
        let aomoto =
            crate::os::aomoto_cohomology(&arr, &w, crate::os::CohomologyMode::Full).unwrap();
        let adims: Vec<usize> = aomoto.iter().map(|g| g.free_rank).collect();
        assert_eq!(dims, adims);
    }

    #[test]
    fn local_system_basics() {
        let ls = LocalSystem::from_strings("Q", &["2".into(), "3".into(), "5".into()]).unwrap();
        let ring = ls.ring().clone();
        assert_eq!(ring.format(&ls.q(0)), "4");
        assert_eq!(ring.format(&ls.q_infinity_half()), "1/30");
        // Delta over an empty set vanishes.
        assert!(ring.is_zero(&ls.delta(&Default::default())));
        assert!(LocalSystem::from_strings("Q", &["0".into()]).is_err());
        assert!(LocalSystem::from_strings("Z", &["2".into()]).is_err());
    }

    #[test]
    fn trivial_local_system_recovers_betti_numbers() {
        let arr = corpus::e1();
        let cx = e1_complex();
        let ls = LocalSystem::from_strings("Q", &["1".into(), "1".into(), "1".into()]).unwrap();
        let out = cx
            .cohomology(&Coefficients::Local(ls), ChamberCohomologyMode::Full)
            .unwrap();
        let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
        assert_eq!(dims, vec![1, 3, 3]);
        let _ = arr;
    }

    #[test]
    fn e1_local_system_vanishing() {
        let cx = e1_complex();
        let ls = LocalSystem::from_strings("Q", &["2".into(), "3".into(), "5".into()]).unwrap();
        let out = cx
            .cohomology(&Coefficients::Local(ls), ChamberCohomologyMode::Full)
            .unwrap();
        let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
        assert_eq!(dims, vec![0, 0, 1]);
    }

    #[test]
    fn pointing_oracle_on_e1() {
        let cx = e1_complex();
        // A chamber in ch^1 and a point inside its interval on F^1.
        let k1 = &cx.strat.levels[1].ch;
        let c = k1[0];
        let geom = cx.geometry(1).unwrap();
        // Find the interval midpoint via the chamber's own constraints.
        let rows: Vec<(QVec, BigRational)> = geom
            .system
            .iter()
            .map(|s| {
                let sign = cx.chambers[c].signs.get(s.index).as_q();
                (ratmat::scale(&s.coeffs, &sign), &sign * &s.rhs)
            })
            .collect();
        let inside = lp::strict_feasible_point(&rows).unwrap();
        assert_eq!(cx.pointing_degree(c, &inside).unwrap(), -1);
        // A point far outside the box is rejected only if on the boundary;
        // beyond it the degree is 0 over the clipped boundary.
        let outside = vec![geom.half_width[0].clone() + BigRational::one()];
        assert_eq!(cx.pointing_degree(c, &outside).unwrap(), 0);
    }

    #[test]
    fn degree_stability_box_and_perturbation() {
        let arr = corpus::e1();
        let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
        let base = ChamberComplex::new(&arr, &flag).unwrap();
        let doubled = ChamberComplex::with_options(
            &arr,
            &flag,
            ComplexOptions {
                box_scale: 2,
                perturb_representatives: false,
            },
        )
        .unwrap();
        let perturbed = ChamberComplex::with_options(
            &arr,
            &flag,
            ComplexOptions {
                box_scale: 1,
                perturb_representatives: true,
            },
        )
        .unwrap();
        for k in 0..arr.dim() {
            let t0 = base.degree_table(k).unwrap();
            assert_eq!(t0, doubled.degree_table(k).unwrap(), "box doubling k={k}");
            assert_eq!(t0, perturbed.degree_table(k).unwrap(), "perturbation k={k}");
        }
    }
}
