mod identities;
mod laplace;
mod orders;
mod solve;
mod symbols;

pub use identities::coefficient_identities;
pub use laplace::verify_laplace;
pub use orders::{order_cell, probe_range, sqrt_contract, two_term_action, verify_orders};
pub use solve::{bench, build_preconditioner, build_problem, solve, solve_once};
pub use symbols::{print_symbol, symbol_coefficients, theorem_orders, verify_symbols};

use arcbie_core::C64;

fn elapsed_row(cell: &crate::report::Cell, start: std::time::Instant) -> crate::report::Row {
    cell.info("runtime_s", start.elapsed().as_secs_f64())
}

fn complex_json(v: &[C64]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|c| serde_json::json!([c.re, c.im])).collect())
}
