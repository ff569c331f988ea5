use std::f64::consts::LN_2;
use std::time::Instant;

use arcbie_core::assembly::assemble_all;
use arcbie_core::curve::make_segment;

use super::{coefficient_identities, elapsed_row};
use crate::config::Config;
use crate::report::{Cell, Report};
use crate::CliError;

/// Laplace single-layer and hypersingular spectra on the segment, plus the
/// coefficient-map identities.
pub fn verify_laplace(cfg: &Config) -> Result<Report, CliError> {
    let start = Instant::now();
    let n = cfg.n;
    let seg = make_segment();
    let ops = assemble_all(&seg, 0.0, n, cfg.quad(n))?;
    let top = 64.min(n - 1);
    let cell = Cell::new("verify-laplace", &seg.id(), 0.0, n);
    let th = &cfg.thresholds;

    let (mut diag_s, mut diag_n, mut off_s, mut off_n) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..=top {
        let sigma = if i == 0 { 0.5 * LN_2 } else { 0.5 / i as f64 };
        diag_s = diag_s.max((ops.s.mat[(i, i)] - sigma).norm() / sigma);
        if i >= 1 {
            let half = 0.5 * i as f64;
            diag_n = diag_n.max((ops.n.mat[(i - 1, i - 1)] - half).norm() / half);
        }
        for j in 0..=top {
            if i != j {
                off_s = off_s.max(ops.s.mat[(i, j)].norm());
                if i < top && j < top {
                    off_n = off_n.max(ops.n.mat[(i, j)].norm());
                }
            }
        }
    }
    let mut report = Report {
        rows: vec![
            cell.at_most("S diagonal rel error", diag_s, th.laplace_rel),
            cell.at_most("S off-diagonal max", off_s, th.laplace_offdiag),
            cell.at_most("N diagonal rel error", diag_n, th.laplace_rel),
            cell.at_most("N off-diagonal max", off_n, th.laplace_offdiag),
            elapsed_row(&cell, start),
        ],
        ..Default::default()
    };
    report.extend(coefficient_identities(cfg));
    Ok(report)
}
