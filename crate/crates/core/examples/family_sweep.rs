//! Sweeps the ab = 1 ellipse family at k = 2 and prints the exponent checks.
//!
//! cargo run --release -p khess --example family_sweep

use khess::stability_lab::{check_remark_deficiency, check_theorem_main, run_sweep, FamilyKind, FamilySpec};

fn main() -> khess::Result<()> {
    let spec = FamilySpec::new(FamilyKind::EllipseUnitProduct, 2, 12)?;
    let out = run_sweep(&spec)?;
    println!("{:>10} {:>12} {:>12} {:>12} {:>12}", "a", "eps", "d_2", "D_2", "delta_H");
    for r in &out.records {
        println!("{:>10.5} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}", r.param, r.eps, r.d_k, r.D_k, r.delta_h_normalized());
    }
    let mut verdicts = check_theorem_main(&out.records, 2)?;
    verdicts.push(check_remark_deficiency(&out.records)?);
    for v in verdicts {
        println!(
            "{:<7} {:<8} slope {:.3} [{:.3}, {:.3}] (alpha {:.4}), C {:.4}, {}",
            v.theorem,
            v.quantity,
            v.exponent_fitted,
            v.confidence[0],
            v.confidence[1],
            v.exponent_required,
            v.constant_estimate,
            if v.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
