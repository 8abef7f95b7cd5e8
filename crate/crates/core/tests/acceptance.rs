//! Acceptance suite. Runs every criterion, prints one line each and exits
//! nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use khess::eigensolver2d::*;
use khess::field2d::*;
use khess::geometry::*;
use khess::radial_spectra::{lambda_ball, shoot_eigen};
use khess::stability_lab::*;

mod common;
use common::{agm_perimeter, j0_first_zero};

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn radial_laplacian() -> Outcome {
    let j = j0_first_zero();
    let (p2, t2) = timed(|| shoot_eigen(2, 1, 1e-10).unwrap());
    let (p3, t3) = timed(|| shoot_eigen(3, 1, 1e-10).unwrap());
    let (e2, e3) = (rel(p2.lambda1, j * j), rel(p3.lambda1, PI * PI));
    let one = Duration::from_secs(1);
    check(
        e2 <= 1e-6 && e3 <= 1e-6 && t2 < one && t3 < one,
        format!("rel err n=2 {e2:.2e}, n=3 {e3:.2e}; {:.0?} / {:.0?}", t2, t3),
    )
}

fn scaling_law() -> Outcome {
    let mut worst = 0.0f64;
    // shoot_eigen is defined for n >= 2.
    for n in 2..=5 {
        for k in 1..=n {
            let base = lambda_ball(n, k, 1.0).map_err(|e| format!("({n},{k}): {e}"))?;
            for t in [0.5f64, 2.0, 3.0] {
                let v = t.powi(2 * k as i32) * lambda_ball(n, k, t).unwrap();
                worst = worst.max(rel(v, base));
            }
        }
    }
    check(worst <= 1e-9, format!("max rel deviation {worst:.2e} over 14 (n,k) pairs"))
}

fn ma_ball_bound() -> Outcome {
    let ((lam, up), t) = timed(|| {
        let lam = shoot_eigen(2, 2, 1e-10).unwrap().lambda1;
        (lam, ma_rayleigh_upper(&make_disk(1.0, 1024).unwrap()).unwrap().value)
    });
    check(
        lam <= 8.0 && up >= lam && up <= 1.05 * lam && t < Duration::from_secs(5),
        format!("lambda2(B1) = {lam:.9}, Rayleigh upper = {up:.9} (+{:.2e}); {t:.1?}", up / lam - 1.0),
    )
}

fn fd_convergence() -> Outcome {
    let j2 = j0_first_zero().powi(2);
    let disk = make_disk(1.0, 1024).unwrap();
    let opts = LaplaceOptions { richardson: false, ..LaplaceOptions::default() };
    let (errs, t) = timed(|| {
        [64.0, 128.0, 256.0]
            .iter()
            .map(|n| (laplace_eigen_with(&disk, 1.0 / n, &opts).unwrap().value - j2).abs())
            .collect::<Vec<_>>()
    });
    let order = (errs[0] / errs[1]).log2().min((errs[1] / errs[2]).log2());
    let last = errs[2] / j2;
    check(
        order >= 1.5 && last <= 5e-3 && t < Duration::from_secs(60),
        format!("observed order {order:.3}, rel err at h=1/256 {last:.2e}; {t:.1?}"),
    )
}

/// Ten ellipses and ten smoothed polygons.
fn fk_corpus() -> Vec<SupportBody2D> {
    let mut bodies = Vec::new();
    for i in 0..10 {
        let a = 1.05 + 0.1 * i as f64;
        let b = if i % 2 == 0 { 1.0 / a } else { 0.8 };
        bodies.push(make_ellipse(a, b, 1024).unwrap());
    }
    let shapes: [Vec<Point>; 5] = [
        square_vertices(1.0),
        vec![[0.0, 0.0], [1.0, 0.0], [0.3, 0.9]],
        (0..5).map(|i| { let t = 2.0 * PI * i as f64 / 5.0; [t.cos(), t.sin()] }).collect(),
        vec![[0.0, 0.0], [2.0, 0.0], [2.0, 0.5], [0.0, 0.5]],
        (0..6).map(|i| { let t = 2.0 * PI * i as f64 / 6.0; [0.8 * t.cos(), 0.5 * t.sin()] }).collect(),
    ];
    for (i, v) in shapes.iter().enumerate() {
        for rho in [0.25, 1.0] {
            bodies.push(make_smoothed_polygon(v, rho * (1.0 + 0.2 * i as f64), 1024).unwrap());
        }
    }
    bodies
}

fn faber_krahn(corpus: &[SupportBody2D]) -> Outcome {
    let mut min1 = f64::INFINITY;
    let mut min2 = f64::INFINITY;
    for body in corpus {
        // Spacing tied to the area radius keeps every body near 20k unknowns.
        let h = (area(body) / PI).sqrt() / 80.0;
        let e1 = laplace_eigen(body, h).map_err(|e| e.to_string())?;
        min1 = min1.min(epsilon_for(body, 1, &e1).unwrap());
        let e2 = match body.shape() {
            Shape::Ellipse { a, b } => ma_eigen_ellipse(*a, *b).unwrap(),
            _ => ma_rayleigh_upper(body).map_err(|e| e.to_string())?,
        };
        min2 = min2.min(epsilon_for(body, 2, &e2).unwrap());
    }
    check(
        min1 >= -1e-8 && min2 >= -1e-8,
        format!("{} bodies; min eps k=1 (FD) {min1:.3e}, k=2 {min2:.3e}", corpus.len()),
    )
}

fn geometry_suite(corpus: &[SupportBody2D]) -> Outcome {
    let (res, t) = timed(|| -> Result<(f64, f64, f64, f64), String> {
        let mut bodies: Vec<SupportBody2D> = corpus.to_vec();
        let disks: Vec<SupportBody2D> = [0.3, 1.0, 2.5].iter().map(|&r| make_disk(r, 512).unwrap()).collect();
        bodies.extend(disks.iter().cloned());
        bodies.push(make_ellipse(3.0, 0.4, 2048).unwrap());
        let (mut min_af, mut max_af_ball, mut worst_bon, mut worst_steiner) = (f64::INFINITY, 0.0f64, f64::INFINITY, 0.0f64);
        for body in &bodies {
            let w = quermass_2d(body);
            let d = af_deficit(&w, 0, 1).map_err(|e| e.to_string())?;
            min_af = min_af.min(d);
            let p = perimeter(body);
            worst_bon = worst_bon.min(bonnesen_gap(body).unwrap() / (p * p));
            for rho in [0.1, 1.0, 10.0] {
                let grown = body.minkowski_ball(rho).unwrap();
                let predicted = w.w[0] + 2.0 * rho * w.w[1] + PI * rho * rho;
                worst_steiner = worst_steiner.max(rel(area(&grown), predicted));
            }
        }
        for disk in &disks {
            max_af_ball = max_af_ball.max(af_deficit(&quermass_2d(disk), 0, 1).unwrap().abs());
        }
        Ok((min_af, max_af_ball, worst_bon, worst_steiner))
    });
    let (min_af, max_af_ball, worst_bon, worst_steiner) = res?;
    check(
        min_af >= -1e-10 && max_af_ball <= 1e-6 && worst_bon >= -1e-8 && worst_steiner <= 1e-8 && t < Duration::from_secs(10),
        format!(
            "min AF {min_af:.2e}, AF on balls {max_af_ball:.2e}, min Bonnesen/P^2 {worst_bon:.2e}, Steiner residual {worst_steiner:.2e}; {t:.1?}"
        ),
    )
}

struct MainSweeps {
    base: Vec<SweepRecord>,
    scaled: Vec<SweepRecord>,
}

fn theorem_main(s: &MainSweeps, elapsed: Duration) -> Outcome {
    let a = check_theorem_main(&s.base, 2).map_err(|e| e.to_string())?;
    let b = check_theorem_main(&s.scaled, 2).map_err(|e| e.to_string())?;
    let mut ok = s.base.len() == 12 && elapsed < Duration::from_secs(120);
    let mut parts = Vec::new();
    let first = &s.base[0];
    let last = &s.base[s.base.len() - 1];
    let vanish = [first.d_k / last.d_k, first.D_k / last.D_k, first.delta_H / last.delta_H];
    ok &= vanish.iter().all(|&r| r < 1e-2);
    for (x, y) in a.iter().zip(&b) {
        let drift = rel(y.constant_estimate, x.constant_estimate);
        ok &= x.pass && y.pass && x.constant_estimate.is_finite() && drift < 1e-2;
        parts.push(format!(
            "{} slope {:.3} (need {:.3}) C {:.3} t=3 drift {:.1e}",
            x.quantity,
            x.exponent_fitted,
            x.exponent_required - SLOPE_TOL,
            x.constant_estimate,
            drift
        ));
    }
    check(ok, format!("{}; {elapsed:.1?}", parts.join(", ")))
}

fn theorem_main2() -> Outcome {
    let spec = FamilySpec::new(FamilyKind::EllipseArea, 1, 10).unwrap();
    let (out, t) = timed(|| run_sweep(&spec));
    let out = out.map_err(|e| e.to_string())?;
    let vs = check_theorem_main2(&out.records, 2, 1).map_err(|e| e.to_string())?;
    let need = [0.45, 0.15, 0.15];
    let ok = out.records.len() == 10
        && vs.iter().zip(need).all(|(v, n)| v.pass && v.exponent_fitted >= n)
        && t < Duration::from_secs(600);
    let parts: Vec<String> = vs.iter().map(|v| format!("{} slope {:.3}", v.quantity, v.exponent_fitted)).collect();
    check(ok, format!("{}; {t:.1?}", parts.join(", ")))
}

fn eq3_lemma() -> Outcome {
    let h = 1.0 / 128.0;
    let disk = ma_ellipse_eigenfield(1.0, 1.0, h).unwrap();
    let tol = integral_lemma_check(&disk, 0.0).unwrap().abs();
    let a = 1.1;
    let eps = (agm_perimeter(a, 1.0 / a) / (2.0 * PI)).powi(4) - 1.0;
    let u = ma_ellipse_eigenfield(a, 1.0 / a, h).unwrap();
    let r = integral_lemma_check(&u, eps).unwrap();
    check(tol <= 1e-3 && r >= -tol, format!("disk |residual| {tol:.2e}; ellipse eps {eps:.4e} residual {r:.3e}"))
}

fn levelset_lemma() -> Outcome {
    let a = 1.05;
    let body = make_ellipse(a, 1.0 / a, 1024).unwrap();
    let est = laplace_eigen(&body, 1.0 / 128.0).map_err(|e| e.to_string())?;
    let eps = epsilon_for(&body, 1, &est).unwrap();
    let u = est.eigenfield.unwrap();
    // Grid tolerance: how far the level-set measurement misses |Ω| at t = 0.
    let tol = (superlevel_metrics(&u, 0.0).unwrap().area - area(&body)).abs();
    let limit = 0.5 * area(&body).powf(-0.5);
    let mut ok = eps > 0.0;
    let mut parts = Vec::new();
    for frac in [0.1, 0.3, 0.6] {
        let r = levelset_lemma_check(&u, eps, frac * limit, 1).unwrap();
        ok &= r >= -tol;
        parts.push(format!("delta {:.3}: {r:.3e}", frac * limit));
    }
    check(ok, format!("eps {eps:.3e}, grid tol {tol:.2e}; {}", parts.join(", ")))
}

fn polya_szego() -> Outcome {
    let h = 1.0 / 128.0;
    let disk = GridMesh::new(Arc::new(make_disk(1.0, 1024).unwrap()), h).unwrap();
    let radial = [
        GridField2D::from_fn(disk.clone(), |p| 0.5 * (p[0] * p[0] + p[1] * p[1] - 1.0)),
        GridField2D::from_fn(disk, |p| -(0.5 * PI * (p[0] * p[0] + p[1] * p[1]).sqrt()).cos()),
    ];
    let a = 1.3;
    let emesh = GridMesh::new(Arc::new(make_ellipse(a, 1.0 / a, 1024).unwrap()), h).unwrap();
    let stretched = GridField2D::from_fn(emesh, |p| 0.5 * ((p[0] / a).powi(2) + (p[1] * a).powi(2) - 1.0));
    let mut ok = true;
    let mut worst_radial = 0.0f64;
    let mut gaps = Vec::new();
    for k in [1, 2] {
        for u in &radial {
            let g = polya_szego_gap(u, k).map_err(|e| e.to_string())?;
            worst_radial = worst_radial.max(g.abs());
        }
        let g = polya_szego_gap(&stretched, k).map_err(|e| e.to_string())?;
        ok &= g >= -1e-3;
        gaps.push(g);
    }
    ok &= worst_radial <= 1e-3;
    check(ok, format!("stretched gaps k=1 {:.3e}, k=2 {:.3e}; radial max |gap| {worst_radial:.2e}", gaps[0], gaps[1]))
}

fn boundmis(s: &MainSweeps) -> Outcome {
    let poly = FamilySpec::new(FamilyKind::SmoothedPolygon, 2, 8).unwrap();
    let area_ellipses = FamilySpec::new(FamilyKind::EllipseArea, 2, 6).unwrap();
    let mut k2: Vec<SweepRecord> = s.base.clone();
    for spec in [poly, area_ellipses] {
        k2.extend(run_sweep(&spec).map_err(|e| e.to_string())?.records);
    }
    let min_gap = k2.iter().map(|r| r.volume_bound_gap.unwrap()).fold(f64::INFINITY, f64::min);
    let drift = s
        .base
        .iter()
        .zip(&s.scaled)
        .map(|(x, y)| rel(y.volume_ratio.unwrap(), x.volume_ratio.unwrap()))
        .fold(0.0, f64::max);
    check(
        min_gap >= -1e-8 && drift <= 1e-10,
        format!("{} k=2 records, min gap {min_gap:.4e}; ratio drift under t=3 {drift:.1e}", k2.len()),
    )
}

fn main() -> ExitCode {
    let corpus = fk_corpus();
    let (sweeps, main_time) = timed(|| MainSweeps {
        base: run_sweep(&FamilySpec::new(FamilyKind::EllipseUnitProduct, 2, 12).unwrap()).unwrap().records,
        scaled: run_sweep(&FamilySpec::new(FamilyKind::EllipseUnitProduct, 2, 12).unwrap().with_scale(3.0))
            .unwrap()
            .records,
    });

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("radial Laplacian vs Bessel and pi^2", Box::new(radial_laplacian)),
        ("ball scaling law", Box::new(scaling_law)),
        ("Monge-Ampere ball bound", Box::new(ma_ball_bound)),
        ("FD convergence on the disk", Box::new(fd_convergence)),
        ("Faber-Krahn on 20 bodies", Box::new(|| faber_krahn(&corpus))),
        ("geometry inequality suite", Box::new(|| geometry_suite(&corpus))),
        ("theorem main, ab = 1 ellipses", Box::new(|| theorem_main(&sweeps, main_time))),
        ("theorem main2, unit-area ellipses", Box::new(theorem_main2)),
        ("integral lemma on the affine eigenfunction", Box::new(eq3_lemma)),
        ("level-set lemma on the FD eigenfunction", Box::new(levelset_lemma)),
        ("Polya-Szego gaps", Box::new(polya_szego)),
        ("volume lower bound", Box::new(|| boundmis(&sweeps))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (outcome, t) = timed(run);
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {:>2}. {name}: {detail} ({t:.1?})", i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
