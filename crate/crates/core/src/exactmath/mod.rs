//! Exact arithmetic building blocks: big integers, big rationals, sparse
//! polynomials in Z[s, t, q], reduced rational functions, and the quadratic
//! extension containing the roots X and Y of z^2 - s z - t.
//!
//! Integers and rationals are the num-bigint and num-rational types, which
//! already guarantee the invariants we rely on (canonical zero, lowest
//! terms, positive denominators). The polynomial layers are built here
//! because their contracts (graded-lex canonical order, exact division with
//! divisibility detection, gcd-reduced quotients) are the substance of the
//! crate rather than generic plumbing.

pub mod gcd;
pub mod poly;
pub mod quadext;
pub mod ratfunc;

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub use gcd::{normalize_sign, poly_gcd};
pub use poly::{BivarPoly, Degree, Monomial, PolyError, Var};
pub use quadext::{disc_poly, QuadExtElem};
pub use ratfunc::{RatFuncError, RationalFunction};

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed, Zero};

    // The backing crates own these invariants; the assertions pin the
    // behavior this crate depends on so a dependency swap would be caught.

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let r = Rational::new(Integer::from(6), Integer::from(-8));
        assert_eq!(r.numer(), &Integer::from(-3));
        assert_eq!(r.denom(), &Integer::from(4));
        assert!(r.denom().is_positive());
    }

    #[test]
    fn integer_zero_is_canonical() {
        let z = Integer::from(5) - Integer::from(5);
        assert!(z.is_zero());
        assert_eq!(z, Integer::zero());
        assert_eq!(Integer::zero().to_string(), "0");
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let third = Rational::new(Integer::one(), Integer::from(3));
        let sum = &third + &third + &third;
        assert!(sum.is_one());
    }
}
