//! Exact arithmetic in `k[X_1..X_v]` over a prime field.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{GroundField, DEFAULT_CHARACTERISTIC};
pub use monomial::{monomial_compare, monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use poly::{PolyRing, Polynomial};

pub(crate) use poly::same_ring;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(
            GroundField::default(),
            vec!["X".into(), "Y".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring2();
        assert_eq!(&p(&r, "X+Y") * &p(&r, "X-Y"), p(&r, "X^2-Y^2"));
        let f = p(&r, "X^3+2*X*Y");
        assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn leading_term_grevlex() {
        let r = ring2();
        let f = p(&r, "Y^2+X*Y");
        let (c, m) = f.leading_term().unwrap();
        assert_eq!(c, 1);
        assert_eq!(m.exponents(), &[1, 1]);
    }

    #[test]
    fn evaluation() {
        let r = ring2();
        assert_eq!(p(&r, "X^2+Y").eval(&[2, 3]).unwrap(), 7);
        assert_eq!(p(&r, "X^2+Y+5").eval(&[0, 0]).unwrap(), 5);
        assert_eq!(Polynomial::zero(&r).eval(&[4, 9]).unwrap(), 0);
        assert!(p(&r, "X").eval(&[1]).is_err());
    }

    #[test]
    fn mixed_rings_rejected() {
        let r = ring2();
        let s = PolyRing::with_vars(GroundField::default(), 3);
        let f = Polynomial::var(&r, 0);
        let g = Polynomial::var(&s, 0);
        assert!(f.checked_add(&g).is_err());
        assert!(f.checked_mul(&g).is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
        prop::collection::vec(
            (-50i64..50, prop::collection::vec(0u32..4, nvars)),
            0..6,
        )
    }

    fn build(r: &Arc<PolyRing>, t: &[(i64, Vec<u32>)]) -> Polynomial {
        let f = r.field();
        Polynomial::from_terms(
            r,
            t.iter()
                .map(|(c, e)| (f.from_i64(*c), Monomial::from_exponents(e).unwrap()))
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            let r = PolyRing::with_vars(GroundField::default(), 3);
            let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
        }

        #[test]
        fn leading_term_multiplicative(a in arb_poly(3), b in arb_poly(3)) {
            let r = PolyRing::with_vars(GroundField::default(), 3);
            let (f, g) = (build(&r, &a), build(&r, &b));
            if let (Some((c1, m1)), Some((c2, m2))) = (f.leading_term(), g.leading_term()) {
                let (c, m) = (&f * &g).leading_term().unwrap();
                prop_assert_eq!(m, m1.mul(&m2));
                prop_assert_eq!(c, r.field().mul(c1, c2));
            }
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(3), b in arb_poly(3), pt in prop::collection::vec(0u32..32003, 3)) {
            let r = PolyRing::with_vars(GroundField::default(), 3);
            let (f, g) = (build(&r, &a), build(&r, &b));
            let k = r.field();
            prop_assert_eq!((&f * &g).eval(&pt).unwrap(), k.mul(f.eval(&pt).unwrap(), g.eval(&pt).unwrap()));
            prop_assert_eq!((&f + &g).eval(&pt).unwrap(), k.add(f.eval(&pt).unwrap(), g.eval(&pt).unwrap()));
        }

        #[test]
        fn order_is_total_and_transitive(a in prop::collection::vec(0u32..4, 3), b in prop::collection::vec(0u32..4, 3), c in prop::collection::vec(0u32..4, 3)) {
            for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
                let (x, y, z) = (Monomial::from_exponents(&a).unwrap(), Monomial::from_exponents(&b).unwrap(), Monomial::from_exponents(&c).unwrap());
                prop_assert_eq!(x.cmp_with(&y, ord), y.cmp_with(&x, ord).reverse());
                if x.cmp_with(&y, ord).is_le() && y.cmp_with(&z, ord).is_le() {
                    prop_assert!(x.cmp_with(&z, ord).is_le());
                }
                // multiplicative
                prop_assert_eq!(x.cmp_with(&y, ord), x.mul(&z).cmp_with(&y.mul(&z), ord));
            }
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly(3)) {
            let r = PolyRing::with_vars(GroundField::default(), 3);
            let f = build(&r, &a);
            prop_assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
        }
    }
}
