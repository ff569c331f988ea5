use arcbie_symbol::poly::Var;
use arcbie_symbol::{compose, d_tilde, extract_pair, sym_sqrt, verify_theorems, Coef, PSymbol, TrigPoly};
use proptest::prelude::*;

fn gen(j: u8) -> TrigPoly {
    TrigPoly::var(Var::Gen(j, 0))
}

fn generic(j: u8, order: i32) -> PSymbol {
    PSymbol::monomial(gen(j), order).add(&PSymbol::monomial(gen(j + 1), order - 1))
}

#[test]
fn composition_is_associative() {
    let (a, b, c) = (generic(0, 1), generic(2, -1), generic(4, 2));
    let depth = 3;
    let left = compose(&compose(&a, &b, depth + 2).unwrap(), &c, depth).unwrap();
    let right = compose(&a, &compose(&b, &c, depth + 1).unwrap(), depth).unwrap();
    assert_eq!(left.sub(&right).order(), None);
}

#[test]
fn multiplication_operators_commute() {
    let f = PSymbol::constant(gen(0));
    let g = PSymbol::constant(gen(1));
    let d = compose(&f, &g, 5).unwrap().sub(&compose(&g, &f, 5).unwrap());
    assert!(d.is_zero());
    assert_eq!(d.remainder, None);
}

#[test]
fn generic_atoms_cannot_split() {
    assert!(extract_pair(&generic(0, 0)).is_err());
}

#[test]
fn sqrt_rejects_bad_leading_terms() {
    assert!(sym_sqrt(&PSymbol::monomial(TrigPoly::int(2), 2), 3).is_err());
    assert!(sym_sqrt(&PSymbol::monomial(TrigPoly::c(), 2), 3).is_err());
    assert!(sym_sqrt(&PSymbol::xi(), 3).is_err());
}

#[test]
fn theorem_orders() {
    let r = verify_theorems(4).unwrap();
    assert!(r.all_pass(), "{r:#?}");
    let orders: Vec<_> = r.checks.iter().map(|c| c.computed_order).collect();
    assert_eq!(orders, vec![Some(-4), Some(-4), Some(-2), Some(-3), Some(-2), Some(0)]);
}

fn small_poly() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..2), 1..4).prop_map(|ts| {
        ts.into_iter().fold(TrigPoly::zero(), |acc, (c, es, ec, ek)| {
            let t = TrigPoly::s().pow(es).mul(&TrigPoly::c().pow(ec)).mul(&TrigPoly::k().pow(ek));
            acc.add(&t.scale(&Coef::int(c)))
        })
    })
}

proptest! {
    #[test]
    fn pair_rebuilds_symbol(p in small_poly(), q in small_poly()) {
        let sigma = PSymbol::monomial(p, -1).add(&PSymbol::monomial(q, -3));
        let pair = extract_pair(&sigma).unwrap();
        prop_assert_eq!(pair.rebuild(), sigma);
    }

    #[test]
    fn sqrt_of_shifted_square(p in small_poly()) {
        let a = d_tilde().add(&PSymbol::constant(p));
        let r = sym_sqrt(&a, 3).unwrap();
        let sq = compose(&r, &r, 2).unwrap();
        prop_assert_eq!(sq.sub(&a).truncate(2).order(), None);
    }
}
