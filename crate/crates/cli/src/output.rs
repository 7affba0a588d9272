//! CSV writers. Numeric fields use Rust's shortest round-trip decimal
//! formatting, so output is byte-stable across runs and locales.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ceilsim::engine::{MetricsRow, OptimalRow, ValidationRow};

use crate::AppError;

pub const METRICS_HEADER: &str =
    "delta_m,omega_a_deg,omega_u_deg,scenario,coverage,coverage_ci,ase_bps_hz_m2,trials,seed";
pub const OPTIMAL_HEADER: &str =
    "delta_m,scenario,best_omega_a_deg,best_omega_u_deg,peak_coverage,ase_at_peak";
pub const BLOCKAGE_HEADER: &str = "d_a_m,p_self,p_random_one,p_blocked";
pub const BLOCKAGE_VALIDATED_HEADER: &str =
    "d_a_m,p_self,p_random_one,p_blocked,p_empirical,stderr";

pub fn write_file(path: &Path, contents: &str) -> Result<(), AppError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)
            .map_err(|e| AppError::io(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, contents)
        .map_err(|e| AppError::io(format!("cannot write {}: {e}", path.display())))
}

/// One metrics row; the degree values come from the caller's grid so the CSV
/// echoes the configured numbers exactly.
pub struct MetricsCsvRow<'a> {
    pub row: &'a MetricsRow,
    pub omega_a_deg: f64,
    pub omega_u_deg: f64,
    pub seed: u64,
}

pub fn metrics_csv(rows: &[MetricsCsvRow<'_>]) -> String {
    let mut out = String::from(METRICS_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.row.delta,
            r.omega_a_deg,
            r.omega_u_deg,
            r.row.scenario,
            r.row.coverage,
            r.row.coverage_ci_halfwidth,
            r.row.ase,
            r.row.trials,
            r.seed
        );
    }
    out
}

pub fn optimal_csv(rows: &[OptimalRow], ap_deg: &[f64], ue_deg: &[f64]) -> String {
    let mut out = String::from(OPTIMAL_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.delta,
            r.scenario,
            ap_deg[r.best_omega_a_index],
            ue_deg[r.best_omega_u_index],
            r.peak_coverage,
            r.ase_at_peak
        );
    }
    out
}

pub struct BlockageCsvRow {
    pub d_a: f64,
    pub p_self: f64,
    pub p_random_one: f64,
    pub p_blocked: f64,
    /// Explicit-bodies bin paired with this grid point, when validating.
    pub empirical: Option<ValidationRow>,
}

pub fn blockage_csv(rows: &[BlockageCsvRow], validated: bool) -> String {
    let mut out =
        String::from(if validated { BLOCKAGE_VALIDATED_HEADER } else { BLOCKAGE_HEADER });
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{}",
            r.d_a, r.p_self, r.p_random_one, r.p_blocked
        );
        if validated {
            match &r.empirical {
                Some(v) => {
                    let _ = write!(out, ",{},{}", v.empirical, v.stderr);
                }
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    out
}
