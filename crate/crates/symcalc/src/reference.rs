//! Closed-form single-layer symbol coefficients, derived by hand.

use crate::coef::Coef;
use crate::poly::TrigPoly;

fn k2l2() -> TrigPoly {
    TrigPoly::k().pow(2).mul(&TrigPoly::l().pow(2))
}

/// Coefficient of `xi^e` in the single-layer symbol, for `-5 <= e <= -1`.
pub fn sigma_s_coefficient(e: i32) -> Option<TrigPoly> {
    let s = TrigPoly::s();
    let c = TrigPoly::c();
    let p = match e {
        -1 => TrigPoly::frac(1, 2),
        -2 => TrigPoly::zero(),
        -3 => k2l2().mul(&s.pow(2)).scale(&Coef::frac(1, 16)),
        -4 => k2l2().mul(&s).mul(&c).scale(&(&Coef::frac(3, 16) * &Coef::i())),
        -5 => {
            let l4 = TrigPoly::l().pow(4);
            let a = k2l2().scale(&Coef::frac(-3, 16));
            let b = k2l2().mul(&s.pow(2)).scale(&Coef::frac(7, 16));
            let d = TrigPoly::k()
                .pow(2)
                .mul(&l4)
                .mul(&TrigPoly::kappa(0).pow(2))
                .mul(&s.pow(4))
                .scale(&Coef::frac(1, 64));
            let f = TrigPoly::k().pow(4).mul(&l4).mul(&s.pow(4)).scale(&Coef::frac(3, 256));
            a.add(&b).add(&d).add(&f)
        }
        _ => return None,
    };
    Some(p)
}

/// Alternative closed form of the `xi^-5` single-layer coefficient,
/// `k^2 L^2 (-768 kappa^2 L^2 s^4 + 112 s^2 + 3 k^2 L^2 s^4 - 48) / 128`.
/// It disagrees with [`sigma_s_coefficient`]`(-5)`; kept so reports can show both.
pub fn sigma_s_xi5_alternative() -> TrigPoly {
    let s2 = TrigPoly::s().pow(2);
    let s4 = TrigPoly::s().pow(4);
    let l2 = TrigPoly::l().pow(2);
    let inner = TrigPoly::kappa(0)
        .pow(2)
        .mul(&l2)
        .mul(&s4)
        .scale(&Coef::int(-768))
        .add(&s2.scale(&Coef::int(112)))
        .add(&TrigPoly::k().pow(2).mul(&l2).mul(&s4).scale(&Coef::int(3)))
        .add(&TrigPoly::int(-48));
    k2l2().mul(&inner).scale(&Coef::frac(1, 128))
}

/// Coefficient of `xi^e` in `xi^2 sigma_S - i xi d_theta sigma_S`, `e` in `{1, 0, -1, -2}`.
pub fn n1_coefficient(e: i32) -> Option<TrigPoly> {
    let s = TrigPoly::s();
    Some(match e {
        1 => TrigPoly::frac(1, 2),
        0 => TrigPoly::zero(),
        -1 => k2l2().mul(&s.pow(2)).scale(&Coef::frac(1, 16)),
        -2 => k2l2().mul(&s).mul(&TrigPoly::c()).scale(&(&Coef::frac(1, 16) * &Coef::i())),
        _ => return None,
    })
}

/// Leading coefficients `xi^-1`, `xi^-2` of the normal-weighted single layer.
pub fn v_coefficient(e: i32) -> Option<TrigPoly> {
    match e {
        -1 => Some(TrigPoly::frac(1, 2)),
        -2 => Some(TrigPoly::zero()),
        _ => None,
    }
}

/// Coefficients `xi^-1`, `xi^-2` of `s (sigma_V # s)`.
pub fn n2_coefficient(e: i32) -> Option<TrigPoly> {
    let s = TrigPoly::s();
    match e {
        -1 => Some(s.pow(2).scale(&Coef::frac(1, 2))),
        -2 => Some(s.mul(&TrigPoly::c()).scale(&(&Coef::frac(1, 2) * &Coef::i()))),
        _ => None,
    }
}
