use std::f64::consts::PI;

use khess::geometry::*;
use khess::stability_lab::*;
use khess::{Error, Execution};
use proptest::prelude::*;

mod common;
use common::agm_perimeter;

fn unit_product(k: usize, params: Vec<f64>) -> FamilySpec {
    FamilySpec::new(FamilyKind::EllipseUnitProduct, k, params.len()).unwrap().with_params(params)
}

fn linear(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64).collect()
}

fn main_family() -> Vec<SweepRecord> {
    let spec = FamilySpec::new(FamilyKind::EllipseUnitProduct, 2, 12).unwrap();
    run_sweep(&spec).unwrap().records
}

fn synthetic(eps: f64, d: f64) -> SweepRecord {
    let disk = make_disk(1.0, 256).unwrap();
    let mut r = record_for(&disk, 2, eps, "synthetic", eps).unwrap();
    r.d_k = d;
    r.D_k = d;
    r.Delta = d;
    r.delta_H = d;
    r
}

#[test]
fn family_names_parse() {
    for kind in [FamilyKind::EllipseUnitProduct, FamilyKind::EllipseArea, FamilyKind::SmoothedPolygon] {
        assert_eq!(kind.as_str().parse::<FamilyKind>().unwrap(), kind);
    }
    assert!("triangle".parse::<FamilyKind>().is_err());
    assert!(FamilySpec::new(FamilyKind::EllipseArea, 3, 4).is_err());
}

#[test]
fn family_normalizations() {
    let ab = FamilySpec::new(FamilyKind::EllipseUnitProduct, 2, 4).unwrap();
    let area_spec = FamilySpec::new(FamilyKind::EllipseArea, 1, 4).unwrap();
    let poly = FamilySpec::new(FamilyKind::SmoothedPolygon, 1, 4).unwrap();
    for &p in &ab.params {
        assert!((area(&ab.body(p).unwrap()) - PI).abs() < 1e-12);
    }
    for spec in [&area_spec, &poly] {
        for &p in &spec.params {
            assert!((area(&spec.body(p).unwrap()) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn unit_product_sweep_matches_agm_epsilon() {
    let params = linear(1.01, 1.2, 10);
    let out = run_sweep(&unit_product(2, params.clone())).unwrap();
    assert!(out.failures.is_empty());
    assert_eq!(out.records.len(), 10);
    for (r, &a) in out.records.iter().zip(&params) {
        let oracle = (agm_perimeter(a, 1.0 / a) / (2.0 * PI)).powi(4) - 1.0;
        assert!((r.eps - oracle).abs() < 1e-9 * oracle, "{} vs {oracle}", r.eps);
        assert!((r.r_in - 1.0 / a).abs() < 1e-9 && (r.R_circ - a).abs() < 1e-9);
        assert!(r.lemma_eq3_residual.is_some() && r.levelset_residual.is_some());
        assert!(r.hull_excess.unwrap() < 1e-6);
    }
    assert!(out.records.windows(2).all(|w| w[1].eps > w[0].eps));
}

#[test]
fn disk_record_has_no_deficit() {
    let out = run_sweep(&unit_product(2, vec![1.0])).unwrap();
    let r = &out.records[0];
    for v in [r.eps, r.d_k, r.D_k, r.Delta, r.delta_H] {
        assert!(v.abs() < 1e-9, "{r:?}");
    }
    assert!(r.lemma_eq3_residual.unwrap().abs() < 1e-3);
}

#[test]
fn rounder_squares_are_less_asymmetric() {
    let spec = FamilySpec::new(FamilyKind::SmoothedPolygon, 2, 6).unwrap().with_params(linear(0.5, 4.0, 6));
    let out = run_sweep(&spec).unwrap();
    assert_eq!(out.records.len(), 6);
    for w in out.records.windows(2) {
        assert!(w[1].eps < w[0].eps && w[1].d_k < w[0].d_k);
    }
    assert!(out.records.iter().all(|r| r.lemma_eq3_residual.is_none()));
}

#[test]
fn failing_bodies_are_recorded_not_fatal() {
    let out = run_sweep(&unit_product(2, vec![1.1, -1.0, 1.2])).unwrap();
    assert_eq!(out.records.len(), 2);
    assert_eq!(out.failures.len(), 1);
    assert_eq!(out.failures[0].param, -1.0);
}

#[test]
fn theorem_main_on_unit_product_ellipses() {
    let recs = main_family();
    let vs = check_theorem_main(&recs, 2).unwrap();
    assert_eq!(vs.len(), 3);
    assert!(vs.iter().all(|v| v.pass && v.monotone && v.constant_estimate.is_finite()), "{vs:?}");
    // Analytic slope of d_2 = 1 − (1/a)/R against ε = R⁴ − 1, R = P/2π, on
    // the same five records.
    let pts: Vec<(f64, f64)> = recs
        .iter()
        .take(5)
        .map(|r| {
            let big = agm_perimeter(r.param, 1.0 / r.param) / (2.0 * PI);
            ((big.powi(4) - 1.0).ln(), (1.0 - 1.0 / (r.param * big)).ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((vs[0].exponent_fitted - slope).abs() < 1e-6, "{} vs {slope}", vs[0].exponent_fitted);
    assert!((slope - 0.5).abs() < 0.01);
    let rem = check_remark_deficiency(&recs).unwrap();
    assert!(rem.pass && rem.exponent_fitted > 0.4);
    assert_eq!(rem.exponent_required, 1.0 / 15.0);
}

#[test]
fn constants_are_scale_invariant() {
    let base = main_family();
    let spec = FamilySpec::new(FamilyKind::EllipseUnitProduct, 2, 12).unwrap().with_scale(3.0);
    let scaled = run_sweep(&spec).unwrap().records;
    let a = check_theorem_main(&base, 2).unwrap();
    let b = check_theorem_main(&scaled, 2).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.constant_estimate / y.constant_estimate - 1.0).abs() < 1e-2);
    }
    for (x, y) in base.iter().zip(&scaled) {
        assert!((x.volume_ratio.unwrap() - y.volume_ratio.unwrap()).abs() < 1e-10 * x.volume_ratio.unwrap());
    }
}

#[test]
fn degenerate_fits_are_rejected() {
    let disk = run_sweep(&unit_product(2, vec![1.0, 1.0, 1.0, 1.0])).unwrap().records;
    assert!(matches!(check_theorem_main(&disk, 2), Err(Error::DegenerateFit(_))));
    let narrow: Vec<_> = (1..6).map(|i| synthetic(1e-3 * i as f64, 0.1 * i as f64)).collect();
    assert!(matches!(check_remark_deficiency(&narrow), Err(Error::DegenerateFit(_))));
    assert!(check_theorem_main(&main_family(), 3).is_err());
}

#[test]
fn stuck_deficits_fail() {
    let recs: Vec<_> = (0..6).map(|i| synthetic(10f64.powi(-i - 1), 0.2)).collect();
    let v = check_remark_deficiency(&recs).unwrap();
    assert!(!v.pass);
    assert!(v.exponent_fitted.abs() < 1e-9);
    // Deficits rising as ε falls break monotonicity as well.
    let rising: Vec<_> = (0..6).map(|i| synthetic(10f64.powi(-i - 1), 0.01 * (i + 1) as f64)).collect();
    let v = check_remark_deficiency(&rising).unwrap();
    assert!(!v.pass && !v.monotone);
}

#[test]
fn main2_exponents() {
    assert_eq!(hessian_exponent(2, 1), 0.5);
    let recs: Vec<_> = (0..6).map(|i| {
        let e = 10f64.powi(-i - 1);
        synthetic(e, e.sqrt())
    }).collect();
    let vs = check_theorem_main2(&recs, 2, 1).unwrap();
    assert_eq!(vs[1].exponent_required, 0.2);
    assert!(vs.iter().all(|v| v.pass));
    assert!((vs[0].exponent_fitted - 0.5).abs() < 1e-9);
}

#[test]
fn main2_on_smoothed_squares() {
    let spec = FamilySpec::new(FamilyKind::SmoothedPolygon, 1, 6).unwrap().with_params(log_spaced(4.0, 64.0, 6, 0.0));
    let recs = run_sweep(&spec).unwrap().records;
    assert_eq!(recs.len(), 6);
    assert!(recs.iter().all(|r| r.eps > 0.0 && r.volume_bound_gap.is_none()));
    let vs = check_theorem_main2(&recs, 2, 1).unwrap();
    assert!(vs.iter().all(|v| v.pass), "{vs:?}");
}

#[test]
fn volume_bounds() {
    let disk = make_disk(1.0, 1024).unwrap();
    let rec = record_for(&disk, 2, 0.0, "disk", 1.0).unwrap();
    let b = volume_lower_bound_gap(&rec, 2, 2).unwrap();
    assert!((b.ratio - 1.0 / PI).abs() < 1e-12);
    // λ₂(B₁) < 8 keeps the disk strictly above the bound π·4/λ.
    assert!(b.gap.unwrap() > 0.0);
    let e = make_ellipse(1.2, 1.0 / 1.2, 1024).unwrap();
    let lam = khess::radial_spectra::lambda_ball(2, 2, 1.0).unwrap();
    let eps = (perimeter(&e) / (2.0 * PI)).powi(4) - 1.0;
    let rec = record_for(&e, 2, eps, "ellipse", 1.2).unwrap();
    let gap = volume_lower_bound_gap(&rec, 2, 2).unwrap().gap.unwrap();
    let w1 = perimeter(&e) / 2.0;
    assert!((gap - (PI - 4.0 * w1 * w1 / (PI * lam * (1.0 + eps)))).abs() < 1e-12);
    assert!(gap >= 0.0);
    let k1 = volume_lower_bound_gap(&rec, 2, 1).unwrap();
    assert!(k1.gap.is_none() && (k1.ratio - 1.0).abs() < 1e-15);
    assert!(volume_lower_bound_gap(&rec, 3, 2).is_err());
}

#[test]
fn csv_contract_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    export(&[], &[], &empty, Format::Csv).unwrap();
    assert_eq!(std::fs::read_to_string(&empty).unwrap(), format!("{}\n", CSV_COLUMNS.join(",")));

    let recs = run_sweep(&unit_product(2, linear(1.01, 1.2, 10))).unwrap().records;
    let csv_path = dir.path().join("r.csv");
    export(&recs, &[], &csv_path, Format::Csv).unwrap();
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert_eq!(text.lines().next().unwrap(), "family,param,eps,d_k,D_k,Delta,delta_H,W0,W1,r_in,R_circ,R_star,lemma_eq3_residual,volume_bound_gap");
    let back = load_records(&csv_path).unwrap();
    for (a, b) in recs.iter().zip(&back) {
        assert_eq!((a.eps, a.d_k, a.D_k, a.Delta, a.delta_H, a.W1), (b.eps, b.d_k, b.D_k, b.Delta, b.delta_H, b.W1));
        assert_eq!(a.lemma_eq3_residual, b.lemma_eq3_residual);
    }
    let again = dir.path().join("again.csv");
    export(&recs, &[], &again, Format::Csv).unwrap();
    assert_eq!(std::fs::read(&again).unwrap(), std::fs::read(&csv_path).unwrap());

    let verdicts = vec![check_remark_deficiency(&recs).unwrap()];
    let json_path = dir.path().join("r.json");
    export(&recs, &verdicts, &json_path, Format::Json).unwrap();
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report.records, recs);
    assert_eq!(report.verdicts, verdicts);
    assert_eq!(load_records(&json_path).unwrap(), recs);

    let k1 = record_for(&make_disk(1.0, 256).unwrap(), 1, 0.0, "disk", 1.0).unwrap();
    let mut buf = Vec::new();
    write_csv(&[k1], &mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().lines().nth(1).unwrap().ends_with(",,"));

    let missing = dir.path().join("nope").join("x.csv");
    assert!(matches!(export(&recs, &[], &missing, Format::Csv), Err(Error::Io { .. })));
}

#[test]
fn execution_policies_agree() {
    let base = unit_product(2, linear(1.02, 1.2, 4)).with_grid(1.0 / 48.0);
    let a = run_sweep(&base.clone().with_execution(Execution::Parallel)).unwrap();
    let b = run_sweep(&base.with_execution(Execution::Sequential)).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn record_deficits_nonnegative(a in 1.0f64..1.5, rho in 0.3f64..6.0) {
        let e = make_ellipse(a, 1.0 / a, 1024).unwrap();
        let eps = (perimeter(&e) / (2.0 * PI)).powi(4) - 1.0;
        let poly = make_smoothed_polygon(&square_vertices(1.0), rho, 1024).unwrap();
        for (body, eps) in [(e, eps), (poly, 0.0)] {
            for k in [1, 2] {
                let r = record_for(&body, k, eps, "p", 0.0).unwrap();
                for v in [r.d_k, r.D_k, r.Delta, r.delta_H, r.perimeter_inner.unwrap(), r.perimeter_outer.unwrap()] {
                    prop_assert!(v >= -1e-9, "{:?}", r);
                }
            }
        }
    }
}
