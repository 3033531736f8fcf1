//! The quadratic extension Q(s, t, q)[Delta] with Delta^2 = s^2 + 4t.
//!
//! Elements are stored as a + b*Delta with rational-function components.
//! The two roots of z^2 - s z - t live here:
//!
//! ```text
//! X = (s + Delta)/2,   Y = (s - Delta)/2,
//! ```
//!
//! so X + Y = s, X*Y = -t, and X - Y = Delta. Since s^2 + 4t is not a
//! square in Q(s, t, q), the extension is a field and an element is
//! invertible exactly when it is nonzero.

use std::fmt;

use super::poly::BivarPoly;
use super::ratfunc::{RatFuncError, RationalFunction};

/// The discriminant polynomial s^2 + 4t that Delta squares to.
pub fn disc_poly() -> BivarPoly {
    BivarPoly::var_s()
        .pow(2)
        .add(&BivarPoly::var_t().mul_scalar(&4.into()))
}

/// Element a + b*Delta of the quadratic extension.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExtElem {
    a: RationalFunction,
    b: RationalFunction,
}

impl QuadExtElem {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Self {
        QuadExtElem { a, b }
    }

    pub fn from_ratfunc(a: RationalFunction) -> Self {
        QuadExtElem { a, b: RationalFunction::zero() }
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        Self::from_ratfunc(RationalFunction::from_poly(p))
    }

    pub fn zero() -> Self {
        Self::from_ratfunc(RationalFunction::zero())
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RationalFunction::one())
    }

    /// X = (s + Delta)/2, the distinguished root of z^2 - s z - t.
    pub fn x() -> Self {
        let half = RationalFunction::new(BivarPoly::one(), BivarPoly::from_i64(2))
            .expect("2 is nonzero");
        QuadExtElem {
            a: half.mul_poly(&BivarPoly::var_s()),
            b: half,
        }
    }

    /// Y = (s - Delta)/2, the conjugate root.
    pub fn y() -> Self {
        Self::x().conj()
    }

    /// Delta itself.
    pub fn delta() -> Self {
        QuadExtElem {
            a: RationalFunction::zero(),
            b: RationalFunction::one(),
        }
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in the base field (no Delta part).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadExtElem {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadExtElem {
            a: self.a.sub(&other.a),
            b: self.b.sub(&other.b),
        }
    }

    pub fn neg(&self) -> Self {
        QuadExtElem { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // (a1 + b1 D)(a2 + b2 D) = a1 a2 + b1 b2 D^2 + (a1 b2 + b1 a2) D
        let disc = RationalFunction::from_poly(disc_poly());
        let a = self
            .a
            .mul(&other.a)
            .add(&self.b.mul(&other.b).mul(&disc));
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        QuadExtElem { a, b }
    }

    pub fn mul_ratfunc(&self, c: &RationalFunction) -> Self {
        QuadExtElem { a: self.a.mul(c), b: self.b.mul(c) }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Galois conjugate a - b*Delta.
    pub fn conj(&self) -> Self {
        QuadExtElem { a: self.a.clone(), b: self.b.neg() }
    }

    /// Field norm a^2 - b^2 (s^2 + 4t), an element of the base field.
    pub fn norm(&self) -> RationalFunction {
        let disc = RationalFunction::from_poly(disc_poly());
        self.a
            .mul(&self.a)
            .sub(&self.b.mul(&self.b).mul(&disc))
    }

    pub fn inverse(&self) -> Result<Self, RatFuncError> {
        // 1/(a + bD) = conj / norm; the norm vanishes only at zero because
        // the discriminant is not a square in the base field.
        let n = self.norm();
        if n.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(self.conj().mul_ratfunc(&n.recip()?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn to_text(&self) -> String {
        format!("({}) + ({})*Delta", self.a.to_text(), self.b.to_text())
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExtElem({})", self.to_text())
    }
}
