//! Exact Gaussian rationals `a + b i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coef {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coef {
    pub fn zero() -> Coef {
        Coef { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Coef {
        Coef::real(BigRational::one())
    }

    pub fn i() -> Coef {
        Coef { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn real(re: BigRational) -> Coef {
        Coef { re, im: BigRational::zero() }
    }

    pub fn int(n: i64) -> Coef {
        Coef::real(rat(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Coef {
        Coef::real(rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Coef {
        Coef { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `i^p` for any integer `p`.
    pub fn i_pow(p: i64) -> Coef {
        match p.rem_euclid(4) {
            0 => Coef::one(),
            1 => Coef::i(),
            2 => Coef::int(-1),
            _ => -Coef::i(),
        }
    }

    pub fn inv(&self) -> Option<Coef> {
        let d = &self.re * &self.re + &self.im * &self.im;
        if d.is_zero() {
            return None;
        }
        Some(Coef { re: &self.re / &d, im: -&self.im / &d })
    }

    pub fn div(&self, o: &Coef) -> Option<Coef> {
        o.inv().map(|v| self * &v)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &Coef {
    type Output = Coef;
    fn add(self, o: &Coef) -> Coef {
        Coef { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Coef {
    type Output = Coef;
    fn sub(self, o: &Coef) -> Coef {
        Coef { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Coef {
    type Output = Coef;
    fn mul(self, o: &Coef) -> Coef {
        Coef {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef { re: -self.re, im: -self.im }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                if self.im.abs().is_one() {
                    write!(f, "{}i", if self.im.is_negative() { "-" } else { "" })
                } else {
                    write!(f, "{}i", fmt_rat(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Coef { re: rat(1, 2), im: rat(1, 3) };
        let b = &a * &Coef::i();
        assert_eq!(b, Coef { re: rat(-1, 3), im: rat(1, 2) });
        let q = a.div(&a).unwrap();
        assert_eq!(q, Coef::one());
        assert_eq!(Coef::i_pow(-1), -Coef::i());
        assert_eq!(format!("{}", Coef::frac(-3, 16)), "-3/16");
        assert_eq!(format!("{}", &Coef::frac(3, 4) * &Coef::i()), "3/4i");
    }
}
