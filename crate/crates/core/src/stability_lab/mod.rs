//! Family sweeps, theorem exponent checks and report export.

mod export;
mod family;
mod sweep;
mod verdict;

pub use export::{export, load_records, read_csv, write_csv, write_json, Format, Report, CSV_COLUMNS};
pub use family::{log_spaced, FamilyKind, FamilySpec};
pub use sweep::{
    record_for, run_sweep, strongest_estimate, volume_lower_bound_gap, SweepFailure, SweepOutcome, SweepRecord,
    VolumeBound,
};
pub use verdict::{
    check_remark_deficiency, check_remark_deficiency_with, check_theorem_main, check_theorem_main2,
    check_theorem_main2_with, check_theorem_main_with, fit_verdict, hessian_exponent, FitOptions, TheoremVerdict,
    FIT_FLOOR, MONOTONE_BAND, SLOPE_TOL,
};
