//! The stratification ch^k / bch^k / uch^k and the opposite-chamber
//! bijection.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::{section_system, Flag};
use crate::arrangement::{cone_span, infinity_span, Arrangement, Chamber, SignVector};
use crate::lp;
use crate::ratmat::{self, QVec};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, Serialize)]
pub struct StratumLevel {
    pub ch: Vec<usize>,
    pub bch: Vec<usize>,
    pub uch: Vec<usize>,
    /// iota: index in bch^k -> chamber index inside uch^{k+1}.
    pub opposite: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratification {
    pub levels: Vec<StratumLevel>,
}

impl Stratification {
    /// The level k with C in ch^k.
    pub fn level_of(&self, chamber: usize) -> usize {
        self.levels
            .iter()
            .position(|l| l.ch.contains(&chamber))
            .expect("every chamber is stratified")
    }
}

/// Partition the chambers by the first flag level they meet, split by
/// boundedness of C cap F^k, and record the opposite-chamber bijection
/// bch^k -> uch^{k+1}.
pub fn stratify(arr: &Arrangement, flag: &Flag, chambers: &[Chamber]) -> Result<Stratification> {
    let dim = arr.dim();
    let mut levels: Vec<StratumLevel> = (0..=dim).map(|_| StratumLevel::default()).collect();

    let sections: Vec<_> = (1..=dim).map(|k| section_system(arr, flag, k)).collect();
    let point_signs = arr
        .signs_at(&flag.level(0).base)
        .ok_or_else(|| Error::InvalidFlag("F^0 lies on a hyperplane".into()))?;

    for (idx, chamber) in chambers.iter().enumerate() {
        let mut placed = false;
        for k in 0..=dim {
            let meets = if k == 0 {
                point_signs == chamber.signs
            } else {
                let rows: Vec<(QVec, BigRational)> = sections[k - 1]
                    .iter()
                    .map(|s| {
                        let sign = chamber.signs.get(s.index).as_q();
                        (ratmat::scale(&s.coeffs, &sign), &sign * &s.rhs)
                    })
                    .collect();
                lp::strict_feasible_point(&rows).is_some()
            };
            if !meets {
                continue;
            }
            levels[k].ch.push(idx);
            let bounded = if k == 0 {
                true
            } else {
                let signed: Vec<QVec> = sections[k - 1]
                    .iter()
                    .map(|s| ratmat::scale(&s.coeffs, &chamber.signs.get(s.index).as_q()))
                    .collect();
                cone_span(&signed, k).1 == 0
            };
            if bounded {
                levels[k].bch.push(idx);
            } else {
                levels[k].uch.push(idx);
            }
            placed = true;
            break;
        }
        if !placed {
            return Err(Error::Internal(format!(
                "chamber {} meets no flag level",
                chamber.signs
            )));
        }
    }

    // iota: bch^k -> uch^{k+1} via the opposite chamber.
    for k in 0..dim {
        let bch = levels[k].bch.clone();
        for idx in bch {
            let opp = opposite_chamber(arr, chambers, idx)?;
            if !levels[k + 1].uch.contains(&opp) {
                return Err(Error::Internal(format!(
                    "opposite of {} (in bch^{k}) is {} which is not in uch^{}",
                    chambers[idx].signs,
                    chambers[opp].signs,
                    k + 1
                )));
            }
            if levels[k].opposite.values().any(|&v| v == opp) {
                return Err(Error::Internal(format!(
                    "opposite map collides at {}",
                    chambers[opp].signs
                )));
            }
            levels[k].opposite.insert(idx, opp);
        }
    }
    Ok(Stratification { levels })
}

/// The sign vector of C-vee: flip exactly the hyperplanes not containing
/// X(C). Requires C unbounded.
pub fn opposite_signs(arr: &Arrangement, chamber: &Chamber) -> Result<SignVector> {
    let x = infinity_span(arr, chamber).ok_or(Error::BoundedChamber)?;
    let flip: std::collections::BTreeSet<usize> = (0..arr.n())
        .filter(|i| !x.support.hyperplanes.contains(i))
        .collect();
    Ok(chamber.signs.flipped(&flip))
}

/// Index of the opposite chamber. Realizability of the flipped sign vector
/// is asserted; its failure is an invariant breach and is surfaced.
pub fn opposite_chamber(arr: &Arrangement, chambers: &[Chamber], idx: usize) -> Result<usize> {
    let target = opposite_signs(arr, &chambers[idx])?;
    chambers
        .iter()
        .position(|c| c.signs == target)
        .ok_or_else(|| Error::UnrealizableOpposite(target.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{betti_euler, enumerate_chambers, intersection_poset, separating_set};
    use crate::corpus;
    use crate::flag::build_flag;

    fn by_sign(chambers: &[Chamber], s: &str) -> usize {
        chambers
            .iter()
            .position(|c| c.signs.to_string() == s)
            .unwrap()
    }

    #[test]
    fn e1_stratification_with_handwritten_flag() {
        let arr = corpus::e1();
        let q = |s: &str| crate::rat::parse_rational(s).unwrap();
        let flag = crate::flag::Flag {
            levels: vec![
                crate::flag::FlagLevel {
                    base: vec![q("-5"), q("-25")],
                    basis: vec![],
                },
                crate::flag::FlagLevel {
                    base: vec![q("0"), q("-10")],
                    basis: vec![vec![q("1"), q("3")]],
                },
                crate::flag::FlagLevel {
                    base: vec![q("0"), q("0")],
                    basis: vec![vec![q("1"), q("0")], vec![q("0"), q("1")]],
                },
            ],
        };
        let chambers = enumerate_chambers(&arr);
        let strat = stratify(&arr, &flag, &chambers).unwrap();
        let names = |v: &[usize]| -> Vec<String> {
            v.iter().map(|&i| chambers[i].signs.to_string()).collect()
        };
        use std::collections::BTreeSet;
        let set = |v: &[usize]| -> BTreeSet<String> {
            v.iter().map(|&i| chambers[i].signs.to_string()).collect()
        };
        assert_eq!(names(&strat.levels[0].ch), vec!["---"]);
        assert_eq!(
            set(&strat.levels[1].ch),
            BTreeSet::from_iter(["+--".into(), "+-+".into(), "+++".to_string()])
        );
        assert_eq!(
            set(&strat.levels[2].ch),
            BTreeSet::from_iter(["++-".into(), "-+-".into(), "-++".to_string()])
        );
        assert_eq!(
            set(&strat.levels[1].bch),
            BTreeSet::from_iter(["+--".into(), "+-+".to_string()])
        );
        assert_eq!(names(&strat.levels[1].uch), vec!["+++"]);
        assert_eq!(names(&strat.levels[2].bch), vec!["++-"]);
    }

    #[test]
    fn counts_follow_betti_numbers() {
        for name in corpus::BUILTIN_NAMES {
            let arr = corpus::builtin(name).unwrap();
            let chambers = enumerate_chambers(&arr);
            let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
            let strat = stratify(&arr, &flag, &chambers).unwrap();
            let (aff, _) = intersection_poset(&arr);
            let betti = betti_euler(&arr, &aff).betti;
            for (k, level) in strat.levels.iter().enumerate() {
                assert_eq!(level.ch.len(), betti[k], "{name} ch^{k}");
                let alt: i64 = (0..=k)
                    .map(|j| {
                        let b = betti[k - j] as i64;
                        if j % 2 == 0 {
                            b
                        } else {
                            -b
                        }
                    })
                    .sum();
                assert_eq!(level.bch.len() as i64, alt, "{name} bch^{k}");
                assert_eq!(level.ch.len(), level.bch.len() + level.uch.len());
            }
            // iota is a bijection bch^k -> uch^{k+1}.
            for k in 0..arr.dim() {
                assert_eq!(
                    strat.levels[k].opposite.len(),
                    strat.levels[k + 1].uch.len(),
                    "{name} level {k}"
                );
            }
        }
    }

    #[test]
    fn e1_opposites() {
        let arr = corpus::e1();
        let chambers = enumerate_chambers(&arr);
        let opp = |s: &str| {
            let i = by_sign(&chambers, s);
            let j = opposite_chamber(&arr, &chambers, i).unwrap();
            chambers[j].signs.to_string()
        };
        assert_eq!(opp("+--"), "-++");
        assert_eq!(opp("+-+"), "-+-");
        assert_eq!(opp("---"), "+++");
        // Bounded chamber has no opposite.
        let triangle = by_sign(&chambers, "++-");
        assert!(matches!(
            opposite_chamber(&arr, &chambers, triangle),
            Err(Error::BoundedChamber)
        ));
    }

    #[test]
    fn e4_opposite_flips_only_the_transversal() {
        let arr = corpus::e4();
        let chambers = enumerate_chambers(&arr);
        // Middle-top strip (+,-,+): X(C) is the shared vertical direction,
        // contained in H1 and H2 but not H3.
        let c = by_sign(&chambers, "+-+");
        let j = opposite_chamber(&arr, &chambers, c).unwrap();
        assert_eq!(chambers[j].signs.to_string(), "+--");
    }

    #[test]
    fn full_dim_span_flips_everything() {
        for name in corpus::BUILTIN_NAMES {
            let arr = corpus::builtin(name).unwrap();
            let chambers = enumerate_chambers(&arr);
            for (i, c) in chambers.iter().enumerate() {
                if c.dim_x() == Some(arr.dim() - 1) {
                    let j = opposite_chamber(&arr, &chambers, i).unwrap();
                    let sep = separating_set(&c.signs, &chambers[j].signs);
                    assert_eq!(sep.len(), arr.n(), "{name}: Sep(C, C-vee) = A");
                }
            }
        }
    }
}
