//! Rational functions over Z[s, t, q], kept in lowest terms.
//!
//! Canonical form: numerator and denominator share no polynomial factor
//! (their gcd is 1), the denominator is nonzero, its graded-lex leading
//! coefficient is positive, and zero is represented as 0/1. With that
//! normalization structural equality is semantic equality, so the type
//! derives PartialEq.

use std::fmt;

use num_traits::Signed;

use super::gcd::poly_gcd;
use super::poly::{BivarPoly, PolyError, Var};
use super::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Quotient of two polynomials in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: BivarPoly,
    den: BivarPoly,
}

impl RationalFunction {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Result<Self, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    /// Reduce to lowest terms and fix the denominator's sign.
    fn canonical(num: BivarPoly, den: BivarPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction { num, den: BivarPoly::one() };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        RationalFunction { num: p, den: BivarPoly::one() }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(BivarPoly::from_i64(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(BivarPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BivarPoly::one())
    }

    pub fn num(&self) -> &BivarPoly {
        &self.num
    }

    pub fn den(&self) -> &BivarPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// A rational function is a polynomial exactly when its reduced
    /// denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&BivarPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn uses(&self, var: Var) -> bool {
        self.num.uses(var) || self.den.uses(var)
    }

    // -----------------------------------------------------------------
    // Field operations
    // -----------------------------------------------------------------

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::canonical(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::canonical(num, den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Cross-cancel before multiplying; with canonical inputs the result
        // needs no further gcd, only the sign fix.
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let num = self
            .num
            .div_exact(&g1)
            .expect("gcd divides")
            .mul(&other.num.div_exact(&g2).expect("gcd divides"));
        let den = self
            .den
            .div_exact(&g2)
            .expect("gcd divides")
            .mul(&other.den.div_exact(&g1).expect("gcd divides"));
        if num.is_zero() {
            return Self::zero();
        }
        let mut out = RationalFunction { num, den };
        if out.den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            out.num = out.num.neg();
            out.den = out.den.neg();
        }
        debug_assert!(poly_gcd(&out.num, &out.den).is_one());
        out
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn recip(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalFunction { num, den })
    }

    pub fn mul_poly(&self, p: &BivarPoly) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, e: i64) -> Result<Self, RatFuncError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mag = e.unsigned_abs() as u32;
        // Coprime numerator and denominator stay coprime under powers, and
        // the positive leading sign survives multiplication, so raw powers
        // are already canonical.
        Ok(RationalFunction {
            num: base.num.pow(mag),
            den: base.den.pow(mag),
        })
    }

    /// Evaluate at a rational point; poles are reported, not panicked on.
    pub fn eval(
        &self,
        s0: &Rational,
        t0: &Rational,
        q0: Option<&Rational>,
    ) -> Result<Rational, RatFuncError> {
        let dv = self.den.eval(s0, t0, q0)?;
        if dv == Rational::new(0.into(), 1.into()) {
            return Err(RatFuncError::PoleAtPoint);
        }
        let nv = self.num.eval(s0, t0, q0)?;
        Ok(nv / dv)
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }

    pub fn json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.json_terms(),
            "den": self.den.json_terms(),
        })
    }
}

impl From<BivarPoly> for RationalFunction {
    fn from(p: BivarPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s() -> BivarPoly {
        BivarPoly::var_s()
    }

    fn t() -> BivarPoly {
        BivarPoly::var_t()
    }

    fn rf(num: BivarPoly, den: BivarPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (s^2 - t^2) / (s + t) = s - t
        let r = rf(s().pow(2).sub(&t().pow(2)), s().add(&t()));
        assert!(r.is_polynomial());
        assert_eq!(r.as_poly().unwrap(), &s().sub(&t()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(s(), BivarPoly::zero()),
            Err(RatFuncError::ZeroDenominator)
        );
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let r = rf(s(), t().neg());
        assert_eq!(r.den(), &t());
        assert_eq!(r.num(), &s().neg());
        // equality after sign shuffle
        assert_eq!(r, rf(s().neg(), t()));
    }

    #[test]
    fn zero_is_canonical() {
        let z = rf(BivarPoly::zero(), s().mul(&t()));
        assert!(z.is_zero());
        assert_eq!(z, RationalFunction::zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn field_arithmetic() {
        let half_s = rf(s(), BivarPoly::from_i64(2));
        let sum = half_s.add(&half_s);
        assert_eq!(sum, RationalFunction::from_poly(s()));

        // 1/s + 1/t = (s + t)/(s t)
        let a = rf(BivarPoly::one(), s());
        let b = rf(BivarPoly::one(), t());
        let c = a.add(&b);
        assert_eq!(c, rf(s().add(&t()), s().mul(&t())));

        // (s/t) * (t/s) = 1
        let u = rf(s(), t());
        let v = rf(t(), s());
        assert!(u.mul(&v).is_one());

        // division and reciprocal
        assert_eq!(u.div(&u).unwrap(), RationalFunction::one());
        assert_eq!(
            RationalFunction::zero().recip(),
            Err(RatFuncError::DivisionByZero)
        );
    }

    #[test]
    fn negative_powers() {
        let mt = RationalFunction::from_poly(t().neg());
        let p = mt.pow(-2).unwrap();
        assert_eq!(p, rf(BivarPoly::one(), t().pow(2)));
        let p3 = mt.pow(-3).unwrap();
        assert_eq!(p3, rf(BivarPoly::from_i64(-1), t().pow(3)));
        assert_eq!(
            RationalFunction::zero().pow(-1),
            Err(RatFuncError::DivisionByZero)
        );
    }

    #[test]
    fn eval_with_pole_detection() {
        let r = rf(BivarPoly::one(), s().sub(&t()));
        let one = Rational::from(BigInt::from(1));
        let two = Rational::from(BigInt::from(2));
        assert_eq!(r.eval(&two, &one, None).unwrap(), one);
        assert_eq!(r.eval(&one, &one, None), Err(RatFuncError::PoleAtPoint));
    }

    #[test]
    fn rendering() {
        let r = rf(s().pow(2).add(&t().mul_scalar(&BigInt::from(2))), s());
        assert_eq!(r.to_text(), "(s^2 + 2*t)/(s)");
        assert_eq!(
            RationalFunction::from_poly(s()).to_text(),
            "s"
        );
    }
}
