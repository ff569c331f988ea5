//! JSON run configuration.  Every field is optional; see `Config::default`.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use arcbie_core::curve::CurveSpec;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Dirichlet,
    Neumann,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preconditioner {
    None,
    /// Inverse of the `k = 0` segment operator: `diag(1/sigma_n)` or `diag(2/(n+1))`.
    LaplaceDiag,
    /// `P1 = sqrt(D1)` for Dirichlet, `P2 = D2^{-1/2}` for Neumann.
    Parametrix,
}

impl Preconditioner {
    pub fn name(self) -> &'static str {
        match self {
            Preconditioner::None => "none",
            Preconditioner::LaplaceDiag => "laplace_diag",
            Preconditioner::Parametrix => "parametrix",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub laplace_rel: f64,
    pub laplace_offdiag: f64,
    pub slope_tol: f64,
    pub r2_min: f64,
    pub commutator_rel: f64,
    pub commutator_slope_tol: f64,
    pub sqrt_rel: f64,
    pub identity: f64,
    pub iteration_ratio: f64,
    pub iteration_spread: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            laplace_rel: 1e-10,
            laplace_offdiag: 1e-11,
            slope_tol: 0.5,
            r2_min: 0.9,
            commutator_rel: 1e-8,
            commutator_slope_tol: 0.7,
            sqrt_rel: 1e-8,
            identity: 1e-12,
            iteration_ratio: 0.5,
            iteration_spread: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Curve for `solve` and `bench`.
    pub curve: CurveSpec,
    /// Curves swept by `verify-orders`.
    pub curves: Vec<CurveSpec>,
    pub k: f64,
    /// Wavenumbers swept by `verify-orders` and `bench`.
    pub ks: Vec<f64>,
    pub n: usize,
    /// Truncations swept by `bench`.
    pub ns: Vec<usize>,
    /// Quadrature grid; `4 n` when absent.
    pub m: Option<usize>,
    pub problem: Problem,
    pub preconditioner: Preconditioner,
    pub preconditioners: Vec<Preconditioner>,
    pub direction: [f64; 2],
    pub tolerance: f64,
    /// GMRES iteration cap; `n` when absent.
    pub maxit: Option<usize>,
    /// Symbol depth: exponents down to `xi^-depth` are kept.
    pub depth: i32,
    pub dump_matrices: bool,
    pub thresholds: Thresholds,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            curve: CurveSpec::Segment,
            curves: vec![CurveSpec::Segment, CurveSpec::Arc { radius: 1.0, opening: FRAC_PI_2 }],
            k: 1.0,
            ks: vec![1.0, 5.0],
            n: 512,
            ns: vec![128, 256, 512],
            m: None,
            problem: Problem::Dirichlet,
            preconditioner: Preconditioner::Parametrix,
            preconditioners: vec![
                Preconditioner::None,
                Preconditioner::LaplaceDiag,
                Preconditioner::Parametrix,
            ],
            direction: [0.6, 0.8],
            tolerance: 1e-8,
            maxit: None,
            depth: 6,
            dump_matrices: false,
            thresholds: Thresholds::default(),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, CliError> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Config::from_json(&text)
    }

    pub fn quad(&self, n: usize) -> usize {
        self.m.unwrap_or(4 * n)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n < 16 || self.ns.iter().any(|&n| n < 16) {
            return bad("truncations must be at least 16".into());
        }
        if !(self.k >= 0.0) || self.ks.iter().any(|k| !(*k >= 0.0)) {
            return bad("wavenumbers must be nonnegative".into());
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return bad(format!("tolerance {} outside (0, 1)", self.tolerance));
        }
        let d = self.direction[0].hypot(self.direction[1]);
        if (d - 1.0).abs() > 1e-12 {
            return bad(format!("direction has length {d}, expected 1"));
        }
        if self.depth < 1 {
            return bad("depth must be positive".into());
        }
        if let Some(m) = self.m {
            if m < 4 * self.n {
                return bad(format!("m = {m} below 4 n = {}", 4 * self.n));
            }
        }
        Ok(())
    }
}
