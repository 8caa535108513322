//! Boundary dimensions: one-dimensional arrangements and top-level
//! sections.

use aomoto_core::arrangement::{enumerate_chambers, intersection_poset, Arrangement};
use aomoto_core::chamber_complex::{ChamberCohomologyMode, ChamberComplex, Coefficients};
use aomoto_core::corpus;
use aomoto_core::flag::{build_flag, generic_section, verify_flag};
use aomoto_core::os::WeightVector;

#[test]
fn one_dimensional_arrangement_end_to_end() {
    // Two points on a line.
    let arr = Arrangement::from_rows(1, &[vec![1, 0], vec![1, -2]]).unwrap();
    let chambers = enumerate_chambers(&arr);
    assert_eq!(chambers.len(), 3);
    assert_eq!(chambers.iter().filter(|c| c.is_bounded()).count(), 1);
    let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
    assert!(verify_flag(&arr, &flag).ok);
    let cx = ChamberComplex::new(&arr, &flag).unwrap();
    // ch^0 has one chamber, ch^1 the other two; bch^1 is the segment.
    assert_eq!(cx.strat.levels[0].ch.len(), 1);
    assert_eq!(cx.strat.levels[1].ch.len(), 2);
    assert_eq!(cx.strat.levels[1].bch.len(), 1);
    // lambda_1 = 1, lambda_2 = -3: lambda_inf = 2 is not a unit over Z, so
    // use weights with lambda_inf = 1.
    let w = WeightVector::from_strings("Z", &["2".into(), "-3".into()]).unwrap();
    let out = cx
        .cohomology(
            &Coefficients::Weights(w.clone()),
            ChamberCohomologyMode::Certificate,
        )
        .unwrap();
    assert!(out.groups[0].is_zero());
    assert_eq!(out.groups[1].free_rank, 1);
    let full = cx
        .cohomology(&Coefficients::Weights(w), ChamberCohomologyMode::Full)
        .unwrap();
    assert_eq!(full.groups[1].free_rank, 1);
    assert!(full.groups[1].torsion.is_empty());
}

#[test]
fn single_hyperplane_line_flag() {
    // The l = 1 case from the flag examples: any F^0 off the point works.
    let arr = Arrangement::from_rows(1, &[vec![1, 0]]).unwrap();
    let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
    let report = verify_flag(&arr, &flag);
    assert!(report.ok, "{:?}", report.checks);
}

#[test]
fn section_at_top_level_is_the_arrangement_itself() {
    let arr = corpus::e1();
    let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
    let (section, section_flag) = generic_section(&arr, &flag, arr.dim()).unwrap();
    assert_eq!(section.dim(), arr.dim());
    assert_eq!(section.n(), arr.n());
    // Same combinatorics: the full flag level is the identity frame, so
    // the section is A up to the coordinate change, here literally equal.
    let (aff_a, _) = intersection_poset(&arr);
    let (aff_s, _) = intersection_poset(&section);
    let betti_a = aomoto_core::arrangement::betti_euler(&arr, &aff_a).betti;
    let betti_s = aomoto_core::arrangement::betti_euler(&section, &aff_s).betti;
    assert_eq!(betti_a, betti_s);
    assert!(verify_flag(&section, &section_flag).ok);
}
