//! Truncated asymptotic symbols `sum_p c_p(theta) xi^p` and their calculus.
//!
//! A symbol carries the exponent bound of everything it omits: `remainder =
//! Some(r)` means the true symbol differs from the stored terms by `O(xi^r)`;
//! `None` means the stored terms are exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coef::Coef;
use crate::poly::TrigPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PSymbol {
    pub terms: BTreeMap<i32, TrigPoly>,
    pub remainder: Option<i32>,
}

impl PSymbol {
    pub fn zero() -> PSymbol {
        PSymbol::default()
    }

    /// Exact symbol `p xi^e`.
    pub fn monomial(p: TrigPoly, e: i32) -> PSymbol {
        let mut s = PSymbol::zero();
        s.add_at(e, &p);
        s
    }

    pub fn constant(p: TrigPoly) -> PSymbol {
        PSymbol::monomial(p, 0)
    }

    /// `xi`.
    pub fn xi() -> PSymbol {
        PSymbol::monomial(TrigPoly::int(1), 1)
    }

    pub fn with_remainder(mut self, r: Option<i32>) -> PSymbol {
        self.remainder = r;
        self.trim();
        self
    }

    pub fn coeff(&self, e: i32) -> TrigPoly {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, e: i32, p: &TrigPoly) {
        if p.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_default();
        *v = v.add(p);
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Order bound: the highest stored exponent, or the remainder when nothing is stored.
    pub fn order_bound(&self) -> Option<i32> {
        match (self.order(), self.remainder) {
            (Some(o), Some(r)) => Some(o.max(r)),
            (Some(o), None) => Some(o),
            (None, r) => r,
        }
    }

    /// Removes stored terms that the remainder already covers.
    fn trim(&mut self) {
        if let Some(r) = self.remainder {
            self.terms.retain(|e, _| *e > r);
        }
    }

    fn merge_remainder(a: Option<i32>, b: Option<i32>) -> Option<i32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, o: &PSymbol) -> PSymbol {
        let mut out = self.clone();
        for (e, p) in &o.terms {
            out.add_at(*e, p);
        }
        out.remainder = PSymbol::merge_remainder(self.remainder, o.remainder);
        out.trim();
        out
    }

    pub fn neg(&self) -> PSymbol {
        self.scale(&Coef::int(-1))
    }

    pub fn sub(&self, o: &PSymbol) -> PSymbol {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Coef) -> PSymbol {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coefficient by a function of `theta` (left composition
    /// with a multiplication operator).
    pub fn mul_poly(&self, q: &TrigPoly) -> PSymbol {
        self.map(|p| p.mul(q))
    }

    /// Multiplies by `xi^e`.
    pub fn shift(&self, e: i32) -> PSymbol {
        PSymbol {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
            remainder: self.remainder.map(|r| r + e),
        }
    }

    pub fn d_theta(&self) -> PSymbol {
        self.map(|p| p.d_theta())
    }

    fn map<F: Fn(&TrigPoly) -> TrigPoly>(&self, f: F) -> PSymbol {
        let mut out = PSymbol { terms: BTreeMap::new(), remainder: self.remainder };
        for (e, p) in &self.terms {
            out.add_at(*e, &f(p));
        }
        out
    }

    /// Keeps exponents `>= -depth` and records the cut.
    pub fn truncate(&self, depth: i32) -> PSymbol {
        let cut = -depth - 1;
        let mut out = self.clone();
        if self.terms.keys().any(|e| *e <= cut) || self.remainder.is_some_and(|r| r > cut) {
            out.remainder = Some(PSymbol::merge_remainder(self.remainder, Some(cut)).unwrap());
        }
        out.trim();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_rows(&self) -> Vec<SymbolRow> {
        self.terms
            .iter()
            .rev()
            .map(|(e, p)| SymbolRow { exponent: *e, coefficient: p.to_string() })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolRow {
    pub exponent: i32,
    pub coefficient: String,
}

fn falling(p: i32, j: u32) -> i64 {
    (0..j as i64).map(|i| p as i64 - i).product()
}

/// Symbol of the composition `Op(a) Op(b)`, keeping exponents `>= -depth`:
///
/// `a # b = sum_j 1/j! d_xi^j a * (-i d_theta)^j b`.
pub fn compose(a: &PSymbol, b: &PSymbol, depth: i32) -> Result<PSymbol> {
    let cut = -depth - 1;
    let (oa, ob) = match (a.order_bound(), b.order_bound()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Ok(PSymbol::zero()),
    };
    if let Some(ra) = a.remainder {
        if ra + ob > cut {
            return Err(Error::InsufficientDepth { needed: cut - ob, have: ra });
        }
    }
    if let Some(rb) = b.remainder {
        if oa + rb > cut {
            return Err(Error::InsufficientDepth { needed: cut - oa, have: rb });
        }
    }
    let mut out = PSymbol::zero();
    let mut db = b.clone();
    let mut j: u32 = 0;
    let mut fact: i64 = 1;
    let mut truncated = false;
    loop {
        if oa + ob - (j as i32) <= cut {
            // every remaining term lies below the cut
            truncated |= !db.is_zero() && a.terms.keys().any(|&e| e < 0 || e >= j as i32);
            break;
        }
        // (-i)^j / j!
        let pref = Coef::i_pow(-(j as i64)).div(&Coef::int(fact)).expect("nonzero factorial");
        for (ea, pa) in &a.terms {
            let f = falling(*ea, j);
            if f == 0 {
                continue;
            }
            let ca = pa.scale(&(&pref * &Coef::int(f)));
            for (eb, pb) in &db.terms {
                let e = ea - j as i32 + eb;
                if e <= cut {
                    truncated = true;
                    continue;
                }
                out.add_at(e, &ca.mul(pb));
            }
        }
        j += 1;
        fact *= j as i64;
        db = db.d_theta();
        if db.is_zero() {
            break;
        }
    }
    let exact = a.remainder.is_none() && b.remainder.is_none() && !truncated;
    out.remainder = if exact { None } else { Some(cut) };
    out.trim();
    Ok(out)
}

/// Square root `tau` with `tau # tau = a` up to exponents `>= -depth`, for `a`
/// of order 2 with a constant positive rational square leading coefficient.
pub fn sym_sqrt(a: &PSymbol, depth: i32) -> Result<PSymbol> {
    if a.order() != Some(2) {
        return Err(Error::NotOrderTwo(a.order()));
    }
    let lead = a.coeff(2);
    let t1 = constant_sqrt(&lead).ok_or_else(|| Error::LeadingNotSquare(lead.to_string()))?;
    let inv = (&t1 * &Coef::int(2)).inv().expect("nonzero leading term");
    let mut tau = PSymbol::monomial(TrigPoly::constant(t1), 1);
    for e in (-depth..=0).rev() {
        if a.remainder.is_some_and(|r| r > e) {
            return Err(Error::InsufficientDepth { needed: e, have: a.remainder.unwrap() });
        }
        let sq = compose(&tau, &tau, -(e + 1))?;
        let r = a.coeff(e + 1).sub(&sq.coeff(e + 1));
        tau.add_at(e, &r.scale(&inv));
    }
    Ok(tau.with_remainder(Some(-depth - 1)))
}

fn constant_sqrt(p: &TrigPoly) -> Option<Coef> {
    use num_rational::BigRational;
    use num_traits::Signed;
    if p.len() != 1 {
        return None;
    }
    let (m, c) = p.terms.iter().next()?;
    if !m.0.is_empty() || !c.is_real() || !c.re.is_positive() {
        return None;
    }
    let (n, d) = (c.re.numer(), c.re.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) != n || &(&sd * &sd) != d {
        return None;
    }
    Some(Coef::real(BigRational::new(sn, sd)))
}

/// Pair `(a1, a2)` with `Op(sigma) T_n = a1(x, n) T_n - omega^2 a2(x, n) U_{n-1}`,
/// where `c` plays the role of `x` and `xi` of `n`.  `sigma = a1 + i s a2`.
#[derive(Clone, Debug)]
pub struct SymbolPair {
    pub a1: PSymbol,
    pub a2: PSymbol,
}

pub fn extract_pair(sigma: &PSymbol) -> Result<SymbolPair> {
    let mut a1 = PSymbol { terms: BTreeMap::new(), remainder: sigma.remainder };
    let mut a2 = a1.clone();
    for (e, p) in &sigma.terms {
        if p.contains(|v| matches!(v, crate::poly::Var::Gen(..))) {
            return Err(Error::NonSplittable(p.to_string()));
        }
        let (even, odd) = p.parity_split();
        let b = odd.div_s().ok_or_else(|| Error::NonSplittable(odd.to_string()))?;
        a1.add_at(*e, &even);
        a2.add_at(*e, &b.scale(&-Coef::i()));
    }
    Ok(SymbolPair { a1, a2 })
}

impl SymbolPair {
    pub fn rebuild(&self) -> PSymbol {
        self.a1.add(&self.a2.mul_poly(&TrigPoly::s()).scale(&Coef::i()))
    }
}

impl fmt::Display for PSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.terms.iter().rev().map(|(e, p)| format!("({p})*xi^{e}")).collect();
        match self.remainder {
            Some(r) => parts.push(format!("O(xi^{r})")),
            None if parts.is_empty() => parts.push("0".into()),
            None => {}
        }
        write!(f, "{}", parts.join(" + "))
    }
}
