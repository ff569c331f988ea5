//! Tabular results: `report.csv` with fixed columns and `report.json`.

use std::path::Path;

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub experiment: String,
    pub curve: String,
    pub k: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub quantity: String,
    pub value: f64,
    pub threshold: Option<f64>,
    /// `None` for informational rows.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
    pub details: serde_json::Map<String, serde_json::Value>,
}

/// Row context shared by one experiment cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub experiment: String,
    pub curve: String,
    pub k: f64,
    pub n: usize,
}

impl Cell {
    pub fn new(experiment: &str, curve: &str, k: f64, n: usize) -> Cell {
        Cell { experiment: experiment.into(), curve: curve.into(), k, n }
    }

    fn row(&self, quantity: &str, value: f64, threshold: Option<f64>, pass: Option<bool>) -> Row {
        Row {
            experiment: self.experiment.clone(),
            curve: self.curve.clone(),
            k: self.k,
            n: self.n,
            quantity: quantity.into(),
            value,
            threshold,
            pass,
        }
    }

    pub fn info(&self, quantity: &str, value: f64) -> Row {
        self.row(quantity, value, None, None)
    }

    /// Passes when `value <= threshold`.
    pub fn at_most(&self, quantity: &str, value: f64, threshold: f64) -> Row {
        self.row(quantity, value, Some(threshold), Some(value <= threshold))
    }

    /// Passes when `value >= threshold`.
    pub fn at_least(&self, quantity: &str, value: f64, threshold: f64) -> Row {
        self.row(quantity, value, Some(threshold), Some(value >= threshold))
    }

    /// Passes when `|value - target| <= tol`; the threshold column holds `target`.
    pub fn near(&self, quantity: &str, value: f64, target: f64, tol: f64) -> Row {
        self.row(quantity, value, Some(target), Some((value - target).abs() <= tol))
    }

    pub fn flag(&self, quantity: &str, ok: bool) -> Row {
        self.row(quantity, if ok { 1.0 } else { 0.0 }, Some(1.0), Some(ok))
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.12e}")
}

impl Report {
    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.details.extend(other.details);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn failures(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.pass == Some(false)).collect()
    }

    pub fn find(&self, quantity: &str) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.quantity == quantity).collect()
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["experiment", "curve", "k", "N", "quantity", "value", "threshold", "pass"])?;
        for r in &self.rows {
            w.write_record([
                r.experiment.clone(),
                r.curve.clone(),
                fmt(r.k),
                r.n.to_string(),
                r.quantity.clone(),
                fmt(r.value),
                r.threshold.map(fmt).unwrap_or_default(),
                r.pass.map(|p| p.to_string()).unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.csv"), self.to_csv()?)?;
        let json = serde_json::to_string_pretty(self).map_err(|e| CliError::Config(e.to_string()))?;
        std::fs::write(dir.join("report.json"), json)?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        let total = self.rows.iter().filter(|r| r.pass.is_some()).count();
        let failed = self.failures().len();
        let mut s = format!("{} checks, {} failed\n", total, failed);
        for r in self.failures() {
            s.push_str(&format!(
                "FAIL {} {} k={} N={} {} = {} (threshold {})\n",
                r.experiment,
                r.curve,
                r.k,
                r.n,
                r.quantity,
                fmt(r.value),
                r.threshold.map(fmt).unwrap_or_default()
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout_is_fixed() {
        let c = Cell::new("e", "perturbed(r=1,a=2)", 1.0, 16);
        let r = Report { rows: vec![c.at_most("q", 0.5, 1.0), c.info("t", 2.0)], ..Default::default() };
        let text = r.to_csv().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "experiment,curve,k,N,quantity,value,threshold,pass");
        assert_eq!(lines[1], "e,\"perturbed(r=1,a=2)\",1.000000000000e0,16,q,5.000000000000e-1,1.000000000000e0,true");
        assert_eq!(lines[2], "e,\"perturbed(r=1,a=2)\",1.000000000000e0,16,t,2.000000000000e0,,");
        assert!(r.all_pass());
    }
}
