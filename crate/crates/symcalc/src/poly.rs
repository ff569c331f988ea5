//! Polynomials in `s = sin(theta)`, `c = cos(theta)`, the wavenumber `k`, the
//! arc length `L`, curvature derivatives `kappa_i` (in `x = cos(theta)`) and
//! generic coefficient atoms, kept in the normal form where `s` appears at most
//! linearly (`s^2 -> 1 - c^2`).

use std::collections::BTreeMap;
use std::fmt;

use crate::coef::Coef;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S,
    C,
    K,
    L,
    /// `d^i kappa / dx^i` evaluated at `x = cos(theta)`.
    Kappa(u8),
    /// `d^d/dtheta^d` of the generic coefficient number `j`.
    Gen(u8, u8),
}

impl Var {
    fn name(self) -> String {
        match self {
            Var::S => "s".into(),
            Var::C => "c".into(),
            Var::K => "k".into(),
            Var::L => "L".into(),
            Var::Kappa(0) => "kappa".into(),
            Var::Kappa(i) => format!("kappa{}", "'".repeat(i as usize)),
            Var::Gen(j, 0) => format!("g{j}"),
            Var::Gen(j, d) => format!("g{j}_{d}"),
        }
    }
}

/// Sorted list of `(atom, exponent)` with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn degree_of(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            let pick = match (self.0.get(i), o.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(a), Some(b)) => a.0 < b.0,
                (Some(_), None) => true,
                _ => false,
            };
            if pick {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(o.0[j]);
                j += 1;
            }
        }
        Monomial(out)
    }

    /// Same monomial with the exponent of `v` replaced.
    pub fn with(&self, v: Var, e: u32) -> Monomial {
        let mut out: Vec<(Var, u32)> = self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        if e > 0 {
            out.push((v, e));
            out.sort();
        }
        Monomial(out)
    }
}

/// Values used for numeric evaluation of a [`TrigPoly`].
#[derive(Clone, Debug)]
pub struct Env {
    pub theta: f64,
    pub k: f64,
    pub l: f64,
    pub kappa: Vec<f64>,
    pub gen: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrigPoly {
    pub terms: BTreeMap<Monomial, Coef>,
}

impl TrigPoly {
    pub fn zero() -> TrigPoly {
        TrigPoly::default()
    }

    pub fn constant(c: Coef) -> TrigPoly {
        TrigPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> TrigPoly {
        TrigPoly::constant(Coef::int(n))
    }

    pub fn frac(n: i64, d: i64) -> TrigPoly {
        TrigPoly::constant(Coef::frac(n, d))
    }

    pub fn var(v: Var) -> TrigPoly {
        TrigPoly::term(Coef::one(), Monomial::var(v, 1))
    }

    pub fn s() -> TrigPoly {
        TrigPoly::var(Var::S)
    }

    pub fn c() -> TrigPoly {
        TrigPoly::var(Var::C)
    }

    pub fn k() -> TrigPoly {
        TrigPoly::var(Var::K)
    }

    pub fn l() -> TrigPoly {
        TrigPoly::var(Var::L)
    }

    pub fn kappa(i: u8) -> TrigPoly {
        TrigPoly::var(Var::Kappa(i))
    }

    /// `c * m`, normalised.
    pub fn term(c: Coef, m: Monomial) -> TrigPoly {
        let mut p = TrigPoly::zero();
        p.add_term(m, c);
        p
    }

    fn add_raw(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let sum = &*v + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds `c m`, rewriting `s^(2q+r)` as `(1 - c^2)^q s^r`.
    pub fn add_term(&mut self, m: Monomial, c: Coef) {
        let es = m.degree_of(Var::S);
        if es < 2 {
            self.add_raw(m, c);
            return;
        }
        let q = es / 2;
        let base = m.with(Var::S, es % 2);
        let ec = base.degree_of(Var::C);
        // (1 - c^2)^q = sum_i binom(q, i) (-1)^i c^(2i)
        let mut binom: i64 = 1;
        for i in 0..=q {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let coef = &c * &Coef::int(sign * binom);
            self.add_raw(base.with(Var::C, ec + 2 * i), coef);
            binom = binom * (q - i) as i64 / (i + 1) as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_raw(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TrigPoly) -> TrigPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TrigPoly {
        self.scale(&Coef::int(-1))
    }

    pub fn scale(&self, k: &Coef) -> TrigPoly {
        if k.is_zero() {
            return TrigPoly::zero();
        }
        TrigPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TrigPoly {
        let mut out = TrigPoly::int(1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Applies a derivation given by its action on single atoms.
    fn derive<F: Fn(Var) -> TrigPoly>(&self, d: F) -> TrigPoly {
        let mut out = TrigPoly::zero();
        for (m, c) in &self.terms {
            for (v, e) in &m.0 {
                let dv = d(*v);
                if dv.is_zero() {
                    continue;
                }
                let rest = TrigPoly::term(&Coef::int(*e as i64) * c, m.with(*v, e - 1));
                out = out.add(&rest.mul(&dv));
            }
        }
        out
    }

    /// `d/dtheta`, with `x = cos(theta)`.
    pub fn d_theta(&self) -> TrigPoly {
        self.derive(|v| match v {
            Var::S => TrigPoly::c(),
            Var::C => TrigPoly::s().neg(),
            Var::Kappa(i) => TrigPoly::s().neg().mul(&TrigPoly::kappa(i + 1)),
            Var::Gen(j, d) => TrigPoly::var(Var::Gen(j, d + 1)),
            _ => TrigPoly::zero(),
        })
    }

    /// `d/dx` on polynomials in the curvature atoms only.
    pub fn d_x(&self) -> TrigPoly {
        self.derive(|v| match v {
            Var::Kappa(i) => TrigPoly::kappa(i + 1),
            Var::S | Var::C | Var::Gen(..) => panic!("d_x applies to curvature polynomials only"),
            _ => TrigPoly::zero(),
        })
    }

    /// Splits into parts even and odd under `s -> -s`.
    pub fn parity_split(&self) -> (TrigPoly, TrigPoly) {
        let mut even = TrigPoly::zero();
        let mut odd = TrigPoly::zero();
        for (m, c) in &self.terms {
            if m.degree_of(Var::S) == 0 {
                even.add_raw(m.clone(), c.clone());
            } else {
                odd.add_raw(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// Drops one power of `s` from a polynomial whose terms are all linear in `s`.
    pub fn div_s(&self) -> Option<TrigPoly> {
        let mut out = TrigPoly::zero();
        for (m, c) in &self.terms {
            if m.degree_of(Var::S) != 1 {
                return None;
            }
            out.add_raw(m.with(Var::S, 0), c.clone());
        }
        Some(out)
    }

    pub fn contains(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|(v, _)| pred(*v)))
    }

    pub fn max_kappa_index(&self) -> Option<u8> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter())
            .filter_map(|(v, _)| match v {
                Var::Kappa(i) => Some(*i),
                _ => None,
            })
            .max()
    }

    pub fn eval(&self, env: &Env) -> (f64, f64) {
        let (s, c) = env.theta.sin_cos();
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, co) in &self.terms {
            let mut v = 1.0;
            for (var, e) in &m.0 {
                let base = match var {
                    Var::S => s,
                    Var::C => c,
                    Var::K => env.k,
                    Var::L => env.l,
                    Var::Kappa(i) => env.kappa.get(*i as usize).copied().unwrap_or(0.0),
                    Var::Gen(j, d) => env
                        .gen
                        .get(*j as usize)
                        .and_then(|g| g.get(*d as usize))
                        .copied()
                        .unwrap_or(0.0),
                };
                v *= base.powi(*e as i32);
            }
            let (a, b) = co.to_f64();
            re += a * v;
            im += b * v;
        }
        (re, im)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.0.is_empty() {
                    format!("{c}")
                } else if *c == Coef::one() {
                    format!("{m}")
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
