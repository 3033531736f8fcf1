//! Property tests for the exact-arithmetic layer: the polynomial ring
//! axioms, gcd contracts, rational function field laws, and the quadratic
//! extension's defining relations.

use fibkit_core::exactmath::{
    poly_gcd, BivarPoly, Integer, Monomial, QuadExtElem, Rational, RationalFunction,
};
use proptest::prelude::*;

/// Small random polynomials in s, t, q with bounded exponents and
/// coefficients, dense enough to exercise carries and cancellation.
fn arb_poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec(
        ((0u32..4, 0u32..4, 0u32..3), -6i64..=6),
        0..6,
    )
    .prop_map(|terms| {
        let mut p = BivarPoly::zero();
        for ((se, te, qe), c) in terms {
            let m = BivarPoly::monomial(Monomial::new(se, te, qe), Integer::from(c));
            p = p.add(&m);
        }
        p
    })
}

fn arb_nonzero_poly() -> impl Strategy<Value = BivarPoly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Tighter shape for gcd-driven properties. Pseudo-remainder sequences on
/// random dense trivariate inputs blow up quickly with degree, so the gcd
/// laws are exercised on polynomials the PRS provably keeps small; the
/// structured inputs the library feeds it stay far below even this.
fn arb_gcd_poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..=3), 0..4).prop_map(|terms| {
        let mut p = BivarPoly::zero();
        for ((se, te, qe), c) in terms {
            let m = BivarPoly::monomial(Monomial::new(se, te, qe), Integer::from(c));
            p = p.add(&m);
        }
        p
    })
}

fn arb_gcd_nonzero() -> impl Strategy<Value = BivarPoly> {
    arb_gcd_poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn distributive_law(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_poly(), b in arb_poly()) {
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn one_and_zero_behave(a in arb_poly()) {
        prop_assert_eq!(a.mul(&BivarPoly::one()), a.clone());
        prop_assert!(a.mul(&BivarPoly::zero()).is_zero());
        prop_assert_eq!(a.add(&BivarPoly::zero()), a);
    }

    #[test]
    fn product_then_exact_division_roundtrips(a in arb_poly(), b in arb_nonzero_poly()) {
        let q = a.mul(&b).div_exact(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn gcd_divides_both_arguments(a in arb_gcd_nonzero(), b in arb_gcd_nonzero()) {
        let g = poly_gcd(&a, &b);
        prop_assert!(!g.is_zero());
        prop_assert!(a.div_exact(&g).is_ok());
        prop_assert!(b.div_exact(&g).is_ok());
    }

    #[test]
    fn gcd_absorbs_a_common_factor(a in arb_gcd_nonzero(), b in arb_gcd_nonzero(), f in arb_gcd_nonzero()) {
        // gcd(fa, fb) must be divisible by f
        let g = poly_gcd(&a.mul(&f), &b.mul(&f));
        prop_assert!(g.div_exact(&f).is_ok());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), sv in -5i64..=5, tv in -5i64..=5, qv in -3i64..=3) {
        let s = Rational::from_integer(Integer::from(sv));
        let t = Rational::from_integer(Integer::from(tv));
        let q = Rational::from_integer(Integer::from(qv));
        let ev = |p: &BivarPoly| p.eval(&s, &t, Some(&q)).unwrap();
        prop_assert_eq!(ev(&a.mul(&b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&a.add(&b)), ev(&a) + ev(&b));
    }

    #[test]
    fn rational_functions_form_a_field(a in arb_gcd_nonzero(), b in arb_gcd_nonzero(), c in arb_gcd_nonzero()) {
        let x = RationalFunction::new(a, b.clone()).unwrap();
        let y = RationalFunction::new(b, c).unwrap();
        // additive and multiplicative inverses
        prop_assert!(x.sub(&x).is_zero());
        prop_assert!(x.div(&x).unwrap().is_one());
        // field distributivity
        let lhs = x.mul(&y.add(&RationalFunction::one()));
        let rhs = x.mul(&y).add(&x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadext_roots_multiply_to_minus_t(e in 1u64..=8) {
        // X Y = -t and X + Y = s, so powers of both roots symmetrize back
        // into the base ring
        let x = QuadExtElem::x();
        let y = QuadExtElem::y();
        let product = x.mul(&y);
        let minus_t = QuadExtElem::from_poly(BivarPoly::var_t().neg());
        prop_assert_eq!(product, minus_t.clone());
        prop_assert_eq!(x.pow(e).mul(&y.pow(e)), minus_t.pow(e));
    }
}

#[test]
fn substitution_composes_with_evaluation() {
    // substituting polynomials for variables then evaluating agrees with
    // evaluating the substituted values first
    let p = BivarPoly::var_s()
        .mul(&BivarPoly::var_s())
        .add(&BivarPoly::var_t().mul_scalar(&Integer::from(3)));
    let s_to = BivarPoly::var_s().add(&BivarPoly::var_t());
    let t_to = BivarPoly::var_s().mul(&BivarPoly::var_t());
    let q_to = BivarPoly::var_q();
    let composed = p.substitute(&s_to, &t_to, &q_to);

    let sv = Rational::from_integer(Integer::from(2));
    let tv = Rational::from_integer(Integer::from(-3));
    let qv = Rational::from_integer(Integer::from(1));
    let inner_s = s_to.eval(&sv, &tv, Some(&qv)).unwrap();
    let inner_t = t_to.eval(&sv, &tv, Some(&qv)).unwrap();
    assert_eq!(
        composed.eval(&sv, &tv, Some(&qv)).unwrap(),
        p.eval(&inner_s, &inner_t, Some(&qv)).unwrap()
    );
}
