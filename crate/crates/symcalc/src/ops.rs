//! Symbols of the hypersingular operator, the tangential operator and the
//! preconditioning identities between them.

use serde::Serialize;

use crate::coef::Coef;
use crate::kernel::{sigma_s, sigma_v};
use crate::poly::TrigPoly;
use crate::symbol::{compose, sym_sqrt, PSymbol};
use crate::Result;

/// Effective wavenumber squared, `(k L / 2)^2`.
pub fn kappa_sq() -> TrigPoly {
    TrigPoly::k().mul(&TrigPoly::l()).pow(2).scale(&Coef::frac(1, 4))
}

/// `xi^2 - (kL/2)^2 s^2`.
pub fn d_tilde() -> PSymbol {
    let mut d = PSymbol::xi().shift(1);
    d.add_at(0, &kappa_sq().mul(&TrigPoly::s().pow(2)).neg());
    d
}

/// `xi^2 sigma_S - i xi d_theta sigma_S`.
pub fn sym_n1(sigma_s: &PSymbol) -> PSymbol {
    let a = sigma_s.shift(2);
    let b = sigma_s.d_theta().shift(1).scale(&Coef::i());
    a.sub(&b)
}

/// `s (sigma_V # s)`.
pub fn sym_n2(sigma_v: &PSymbol, depth: i32) -> Result<PSymbol> {
    let s = PSymbol::constant(TrigPoly::s());
    Ok(compose(sigma_v, &s, depth)?.mul_poly(&TrigPoly::s()))
}

/// Symbol of the hypersingular operator, exponents `>= -depth`.
pub fn sym_n(depth: i32) -> Result<PSymbol> {
    let n1 = sym_n1(&sigma_s(depth + 2));
    let n2 = sym_n2(&sigma_v(depth), depth)?;
    Ok(n1.sub(&n2.mul_poly(&kappa_sq())).truncate(depth))
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    /// Highest exponent allowed (or required, for exact checks).
    pub expected_order: i32,
    /// Highest exponent with a nonzero coefficient; `None` when every kept
    /// coefficient vanishes.
    pub computed_order: Option<i32>,
    pub exact: bool,
    pub pass: bool,
    pub leading: String,
}

impl TheoremCheck {
    fn new(name: &str, sym: &PSymbol, expected: i32, exact: bool) -> TheoremCheck {
        let computed = sym.order();
        let pass = match (computed, exact) {
            (Some(o), true) => o == expected,
            (None, true) => false,
            (Some(o), false) => o <= expected,
            (None, false) => true,
        };
        let leading = computed.map_or_else(|| "0".to_string(), |o| sym.coeff(o).to_string());
        TheoremCheck {
            name: name.into(),
            expected_order: expected,
            computed_order: computed,
            exact,
            pass,
            leading,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub depth: i32,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Symbolic orders of the four preconditioning identities and of the two
/// variants that drop the `k` correction, on exponents `>= -depth`.
pub fn verify_theorems(depth: i32) -> Result<TheoremReport> {
    let quarter = PSymbol::constant(TrigPoly::frac(1, 4));
    let half = PSymbol::constant(TrigPoly::frac(1, 2));
    let dt = d_tilde();
    let xi2 = PSymbol::xi().shift(1);

    let ss = sigma_s(depth + 1);
    let ss2 = compose(&ss, &ss, depth + 2)?;
    let t1 = compose(&dt, &ss2, depth)?.sub(&quarter);
    let root = sym_sqrt(&dt, depth + 1)?;
    let t2 = compose(&root, &ss, depth)?.sub(&half);
    let sn = sym_n(depth + 1)?;
    let nn = compose(&sn, &sn, depth)?;
    let t3 = nn.sub(&dt.scale(&Coef::frac(1, 4)));
    let t4 = sn.sub(&root.scale(&Coef::frac(1, 2))).truncate(depth);
    let o1 = compose(&xi2, &ss2, depth)?.sub(&quarter);
    let o2 = nn.sub(&xi2.scale(&Coef::frac(1, 4)));

    let checks = vec![
        TheoremCheck::new("D S S - 1/4", &t1, -4, false),
        TheoremCheck::new("sqrt(D) S - 1/2", &t2, -4, false),
        TheoremCheck::new("N N - D/4", &t3, -2, false),
        TheoremCheck::new("N - sqrt(D)/2", &t4, -3, false),
        TheoremCheck::new("xi^2 S S - 1/4", &o1, -2, true),
        TheoremCheck::new("N N - xi^2/4", &o2, 0, true),
    ];
    Ok(TheoremReport { depth, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilde_root_squares_back() {
        let r = sym_sqrt(&d_tilde(), 4).unwrap();
        let sq = compose(&r, &r, 3).unwrap();
        assert_eq!(sq.sub(&d_tilde()).order(), None);
        assert_eq!(r.coeff(1), TrigPoly::int(1));
        assert!(r.coeff(0).is_zero());
    }

    #[test]
    fn hypersingular_leads_with_half_xi() {
        let n = sym_n(2).unwrap();
        assert_eq!(n.coeff(1), TrigPoly::frac(1, 2));
        assert!(n.coeff(0).is_zero());
    }
}
