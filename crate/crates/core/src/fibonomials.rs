//! Binomial coefficients built from the {n} and <n> families.
//!
//! The Fibonomial coefficient is {n choose k} = {n}!/({k}!{n-k}!) where
//! {n}! = {1}{2}...{n}. It is always a polynomial in s and t, even though
//! neither factorial quotient step is obviously exact. Lucanomials (built
//! from <n> the same way) and q-Fibonomials are generally *not* polynomials;
//! the computation therefore runs a ladder of exact divisions and falls back
//! to a reduced rational function when a division fails, reporting the
//! surviving denominator as a witness of non-polynomiality.


use crate::exactmath::{BivarPoly, Integer, PolyError, RatFuncError, RationalFunction};
use crate::sequences::{fib_poly, fib_q_poly, lucas_poly, SeqKind, SeqParams};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FibError {
    #[error("a denominator factor vanishes at the given parameters")]
    DegenerateParameters,
    #[error("the two Catalan formulas disagree at n = {0}, which signals an arithmetic bug")]
    CatalanRouteMismatch(u32),
}

/// Outcome of a generalized binomial computation: the exact value as a
/// reduced rational function, plus the reduced denominator when that value
/// failed to be a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialResult {
    pub value: RationalFunction,
    /// The denominator left after full reduction; `None` when the value is
    /// a polynomial.
    pub witness: Option<BivarPoly>,
}

impl BinomialResult {
    fn from_ratfunc(value: RationalFunction) -> Self {
        let witness = if value.is_polynomial() {
            None
        } else {
            Some(value.den().clone())
        };
        BinomialResult { value, witness }
    }

    fn from_poly(p: BivarPoly) -> Self {
        BinomialResult {
            value: RationalFunction::from_poly(p),
            witness: None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.witness.is_none()
    }

    pub fn as_poly(&self) -> Option<BivarPoly> {
        self.value.as_poly().cloned()
    }
}

/// Generalized binomial over any sequence: prod_{i=1..k} gen(n-k+i)/gen(i),
/// attempted as a ladder of exact divisions. Every intermediate ladder value
/// is itself a binomial coefficient of the same family, so for the
/// Fibonacci family the ladder never leaves the polynomial ring. Families
/// without that guarantee fall back to one reduced rational function.
fn binomial_over(
    n: u32,
    k: i64,
    gen: impl Fn(u32) -> BivarPoly,
) -> Result<BinomialResult, FibError> {
    if k < 0 || k > n as i64 {
        return Ok(BinomialResult::from_poly(BivarPoly::zero()));
    }
    let k = k as u32;
    let mut ladder = Ok(BivarPoly::one());
    for i in 1..=k {
        ladder = match ladder {
            Ok(r) => r.mul(&gen(n - k + i)).div_exact(&gen(i)),
            Err(e) => Err(e),
        };
        if ladder.is_err() {
            break;
        }
    }
    match ladder {
        Ok(p) => Ok(BinomialResult::from_poly(p)),
        Err(PolyError::DivisionByZero) => Err(FibError::DegenerateParameters),
        Err(_) => {
            let mut num = BivarPoly::one();
            let mut den = BivarPoly::one();
            for i in 1..=k {
                num = num.mul(&gen(n - k + i));
                den = den.mul(&gen(i));
            }
            match RationalFunction::new(num, den) {
                Ok(rf) => Ok(BinomialResult::from_ratfunc(rf)),
                Err(RatFuncError::ZeroDenominator) => Err(FibError::DegenerateParameters),
                Err(_) => unreachable!("construction only reports zero denominators"),
            }
        }
    }
}

/// The fibotorial {n}! = {1}{2}...{n}, or its Lucas analogue <1><2>...<n>.
/// The empty product is 1.
pub fn factorial(n: u32, kind: SeqKind, params: &SeqParams) -> BivarPoly {
    let mut acc = BivarPoly::one();
    for i in 1..=n {
        let f = match kind {
            SeqKind::Fib => fib_poly(i as i64, params).expect("nonnegative index"),
            SeqKind::Lucas => lucas_poly(i, params),
        };
        acc = acc.mul(&f);
    }
    acc
}

/// The Fibonomial coefficient {n choose k}. Out-of-range k gives 0. For the
/// plain family the result is always a polynomial; the witness field exists
/// for uniformity with the other families.
pub fn fibonomial(n: u32, k: i64, params: &SeqParams) -> Result<BinomialResult, FibError> {
    binomial_over(n, k, |i| {
        fib_poly(i as i64, params).expect("nonnegative index")
    })
}

/// The Lucanomial coefficient <n choose k> = <n>!/(<k>!<n-k>!), which is
/// usually not a polynomial (already <2 choose 1> = (s^2+2t)/s).
pub fn lucanomial(n: u32, k: i64, params: &SeqParams) -> Result<BinomialResult, FibError> {
    binomial_over(n, k, |i| lucas_poly(i, params))
}

/// The q-Fibonomial coefficient built from {i}(q). Polynomiality can fail
/// here too; {6 choose 3}(q) is the smallest symbolic counterexample.
pub fn fibonomial_q(n: u32, k: i64, params: &SeqParams) -> Result<BinomialResult, FibError> {
    binomial_over(n, k, |i| fib_q_poly(i, params))
}

/// {-n choose k} at t = -1, where negative indices stay polynomial:
/// {-n choose k}_{s,-1} = (-1)^k {n+k-1 choose k}_{s,-1}. Requires n >= 1;
/// the parameter t in `params` is overridden to -1.
pub fn fibonomial_neg(n: u32, k: i64, params: &SeqParams) -> Result<BivarPoly, FibError> {
    assert!(n >= 1, "fibonomial_neg wants a positive n (the index is -n)");
    let p = SeqParams {
        s: params.s.clone(),
        t: Some(Integer::from(-1)),
        q: None,
    };
    if k < 0 {
        return Ok(BivarPoly::zero());
    }
    let base = fibonomial(n + k as u32 - 1, k, &p)?;
    let poly = base
        .as_poly()
        .expect("Fibonomials at t = -1 are polynomials");
    Ok(if k % 2 == 0 { poly } else { poly.neg() })
}

/// The Fibonacci analogue of the Catalan number,
/// C_n = {2n choose n}/{n+1}, computed without that division as
///
/// ```text
/// C_n = {2n-1 choose n-1} + t {2n-1 choose n-2}
/// ```
///
/// which stays inside the polynomial ring and also survives parameter
/// choices where some {i} with i <= n-1 vanishes. Whenever the quotient
/// route applies, the two are required to agree.
pub fn catalan(n: u32, params: &SeqParams) -> Result<BivarPoly, FibError> {
    if n <= 1 {
        return Ok(BivarPoly::one());
    }
    let b1 = fibonomial(2 * n - 1, n as i64 - 1, params)?;
    let b2 = fibonomial(2 * n - 1, n as i64 - 2, params)?;
    let t = params.t_poly();
    let value = b1.value.add(&b2.value.mul_poly(&t));
    let poly = value.as_poly().cloned().ok_or(FibError::DegenerateParameters)?;
    if let Ok(central) = fibonomial(2 * n, n as i64, params) {
        if let (Some(c), Ok(d)) = (central.as_poly(), fib_poly(n as i64 + 1, params)) {
            if let Ok(q) = c.div_exact(&d) {
                if q != poly {
                    return Err(FibError::CatalanRouteMismatch(n));
                }
            }
        }
    }
    Ok(poly)
}

/// The Gaussian binomial [n choose k]_q as a polynomial in q alone, via the
/// Pascal recursion [n k] = [n-1 k-1] + q^k [n-1 k]. This is deliberately
/// independent of the Fibonomial machinery so the two can check each other
/// through the specialization s = q+1, t = -q.
pub fn gaussian_binomial(n: u32, k: i64) -> BivarPoly {
    if k < 0 || k > n as i64 {
        return BivarPoly::zero();
    }
    let k = k as usize;
    let n = n as usize;
    let q = BivarPoly::var_q();
    // row r of the triangle, entries 0..=min(r, k)
    let mut row = vec![BivarPoly::one()];
    for r in 1..=n {
        let top = r.min(k);
        let mut next = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let left = if j == 0 { BivarPoly::zero() } else { row[j - 1].clone() };
            let up = if j < row.len() {
                q.pow(j as u32).mul(&row[j])
            } else {
                BivarPoly::zero()
            };
            next.push(left.add(&up));
        }
        row = next;
    }
    row[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use num_traits::One;

    fn sym() -> SeqParams {
        SeqParams::symbolic()
    }

    fn poly_of(r: &BinomialResult) -> BivarPoly {
        r.as_poly().expect("expected a polynomial result")
    }

    #[test]
    fn edge_cases_and_symmetry() {
        for n in 0..10u32 {
            assert!(poly_of(&fibonomial(n, 0, &sym()).unwrap()).is_one());
            assert!(poly_of(&fibonomial(n, n as i64, &sym()).unwrap()).is_one());
            assert!(poly_of(&fibonomial(n, -1, &sym()).unwrap()).is_zero());
            assert!(poly_of(&fibonomial(n, n as i64 + 1, &sym()).unwrap()).is_zero());
            for k in 0..=n as i64 {
                assert_eq!(
                    fibonomial(n, k, &sym()).unwrap().value,
                    fibonomial(n, n as i64 - k, &sym()).unwrap().value,
                    "symmetry fails at ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn four_choose_two_factors() {
        // {4 choose 2} = (s^2 + t)(s^2 + 2t)
        let b = poly_of(&fibonomial(4, 2, &sym()).unwrap());
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        let expected = s
            .pow(2)
            .add(&t)
            .mul(&s.pow(2).add(&t.mul_scalar(&2.into())));
        assert_eq!(b, expected);
    }

    #[test]
    fn matches_factorial_quotient() {
        for n in 0..=9u32 {
            for k in 0..=n {
                let via_ladder = poly_of(&fibonomial(n, k as i64, &sym()).unwrap());
                let num = factorial(n, SeqKind::Fib, &sym());
                let den = factorial(k, SeqKind::Fib, &sym())
                    .mul(&factorial(n - k, SeqKind::Fib, &sym()));
                assert_eq!(via_ladder.mul(&den), num, "quotient fails at ({n}, {k})");
            }
        }
    }

    #[test]
    fn factorial_small_values() {
        assert!(factorial(0, SeqKind::Fib, &sym()).is_one());
        // {3}! = 1 * s * (s^2 + t) = s^3 + st
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        assert_eq!(
            factorial(3, SeqKind::Fib, &sym()),
            s.pow(3).add(&s.mul(&t))
        );
        // {6}! at s = t = 1 is 1*1*2*3*5*8 = 240
        let p = SeqParams::with_st(1, 1);
        assert_eq!(
            factorial(6, SeqKind::Fib, &p).as_constant().unwrap(),
            Integer::from(240)
        );
        // <3>! = s(s^2+2t)(s^3+3st)
        let expected = s.mul(&s.pow(2).add(&t.mul_scalar(&2.into())))
            .mul(&s.pow(3).add(&s.mul(&t).mul_scalar(&3.into())));
        assert_eq!(factorial(3, SeqKind::Lucas, &sym()), expected);
    }

    #[test]
    fn gaussian_specialization_oracle() {
        // {n}_{q+1, -q} = [n]_q, so the whole Fibonomial triangle must
        // collapse onto the Gaussian one under s -> q+1, t -> -q.
        let q = BivarPoly::var_q();
        let s_image = q.add(&BivarPoly::one());
        let t_image = q.neg();
        for n in 0..=10u32 {
            for k in 0..=n as i64 {
                let fib_side = poly_of(&fibonomial(n, k, &sym()).unwrap()).substitute(
                    &s_image,
                    &t_image,
                    &BivarPoly::var_q(),
                );
                assert_eq!(
                    fib_side,
                    gaussian_binomial(n, k),
                    "specialization fails at ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn gaussian_small_values() {
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let g = gaussian_binomial(4, 2);
        let q = BivarPoly::var_q();
        let expected = BivarPoly::one()
            .add(&q)
            .add(&q.pow(2).mul_scalar(&2.into()))
            .add(&q.pow(3))
            .add(&q.pow(4));
        assert_eq!(g, expected);
    }

    #[test]
    fn fibonomial_integers_at_unit_params() {
        // s = t = 1 turns {n choose k} into the classical Fibonomial
        // integer triangle; row 6 is 1, 8, 40, 60, 40, 8, 1.
        let p = SeqParams::with_st(1, 1);
        let row: Vec<Integer> = (0..=6)
            .map(|k| {
                poly_of(&fibonomial(6, k, &p).unwrap())
                    .as_constant()
                    .unwrap()
            })
            .collect();
        let expected: Vec<Integer> = [1, 8, 40, 60, 40, 8, 1]
            .iter()
            .map(|&v| Integer::from(v))
            .collect();
        assert_eq!(row, expected);
    }

    #[test]
    fn lucanomial_two_one_witness() {
        // <2 choose 1> = (s^2 + 2t)/s
        let b = lucanomial(2, 1, &sym()).unwrap();
        assert!(!b.is_polynomial());
        assert_eq!(b.witness, Some(BivarPoly::var_s()));
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        let expected =
            RationalFunction::new(s.pow(2).add(&t.mul_scalar(&2.into())), s.clone()).unwrap();
        assert_eq!(b.value, expected);
        // and it already fails integrality at s = 3, t = 1: the value 11/3
        let v = b
            .value
            .eval(&Rational::from_integer(3.into()), &Rational::from_integer(1.into()), None)
            .unwrap();
        assert_eq!(v, Rational::new(11.into(), 3.into()));
    }

    #[test]
    fn lucanomial_four_two_witness() {
        // <4 choose 2> = (s^2+3t)(s^4+4s^2t+2t^2)/(s^2+2t), reduced
        let b = lucanomial(4, 2, &sym()).unwrap();
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        let den = s.pow(2).add(&t.mul_scalar(&2.into()));
        assert_eq!(b.witness, Some(den.clone()));
        let num = s.pow(2).add(&t.mul_scalar(&3.into())).mul(
            &s.pow(4)
                .add(&s.pow(2).mul(&t).mul_scalar(&4.into()))
                .add(&t.pow(2).mul_scalar(&2.into())),
        );
        assert_eq!(b.value, RationalFunction::new(num, den).unwrap());
    }

    #[test]
    fn q_fibonomial_six_three_is_not_polynomial() {
        let b = fibonomial_q(6, 3, &sym()).unwrap();
        assert!(!b.is_polynomial());
        let w = b.witness.unwrap();
        assert!(!w.is_one());
        // smaller q-Fibonomials in the same column collapse fine at q = 1
        let q1 = SeqParams {
            s: None,
            t: None,
            q: Some(Integer::one()),
        };
        for n in 0..=8u32 {
            for k in 0..=n as i64 {
                assert_eq!(
                    fibonomial_q(n, k, &q1).unwrap().value,
                    fibonomial(n, k, &sym()).unwrap().value,
                    "q = 1 collapse fails at ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn negative_upper_index_matches_falling_product() {
        // oracle: {-n choose k} = {-n}{-n-1}...{-n-k+1}/{k}! with the
        // negative-index polynomials at t = -1
        let p = SeqParams {
            s: None,
            t: Some(Integer::from(-1)),
            q: None,
        };
        for n in 1..=6u32 {
            for k in 0..=6i64 {
                let direct = fibonomial_neg(n, k, &sym()).unwrap();
                let mut num = BivarPoly::one();
                for j in 0..k {
                    num = num.mul(&fib_poly(-(n as i64) - j, &p).unwrap());
                }
                let den = factorial(k as u32, SeqKind::Fib, &p);
                let oracle = RationalFunction::new(num, den).unwrap();
                assert_eq!(
                    RationalFunction::from_poly(direct),
                    oracle,
                    "mismatch at (-{n} choose {k})"
                );
            }
        }
        // the two displayed base cases: {-1 choose 1} = -1, and
        // {-2 choose 2} = fibonomial(3,2) at t = -1, which is s^2 - 1
        assert_eq!(
            fibonomial_neg(1, 1, &sym()).unwrap(),
            BivarPoly::from_i64(-1)
        );
        let s = BivarPoly::var_s();
        assert_eq!(
            fibonomial_neg(2, 2, &sym()).unwrap(),
            s.pow(2).sub(&BivarPoly::one())
        );
    }

    #[test]
    fn catalan_small_and_ordinary() {
        // the quotient route is asserted internally; recheck it here anyway
        for n in 0..=8u32 {
            let c = catalan(n, &sym()).unwrap();
            let central = poly_of(&fibonomial(2 * n, n as i64, &sym()).unwrap());
            let d = fib_poly(n as i64 + 1, &sym()).unwrap();
            assert_eq!(central.div_exact(&d).unwrap(), c);
        }
        // C_2 = s^2 + 2t
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        assert_eq!(
            catalan(2, &sym()).unwrap(),
            s.pow(2).add(&t.mul_scalar(&2.into()))
        );
        // s = 2, t = -1 makes {n} = n, so C_n is the ordinary Catalan number
        let p = SeqParams::with_st(2, -1);
        let expected = [1i64, 1, 2, 5, 14, 42, 132, 429];
        for (n, &e) in expected.iter().enumerate() {
            let c = catalan(n as u32, &p).unwrap();
            assert_eq!(
                c.as_constant().unwrap(),
                Integer::from(e),
                "ordinary Catalan fails at n = {n}"
            );
        }
        // and at s = t = 1: C_2 = 3, C_3 = {6 choose 3}/{4} = 60/3 = 20
        let unit = SeqParams::with_st(1, 1);
        assert_eq!(
            catalan(2, &unit).unwrap().as_constant().unwrap(),
            Integer::from(3)
        );
        assert_eq!(
            catalan(3, &unit).unwrap().as_constant().unwrap(),
            Integer::from(20)
        );
    }

    #[test]
    fn catalan_survives_degenerate_parameters() {
        // at s = 1, t = -1 the sequence {n} is periodic with zeros, so the
        // factorial quotient is 0/0, but the two-term route still works
        let p = SeqParams::with_st(1, -1);
        // C_2 = {3} + t = 0 - 1 and C_3 = {5 choose 2} + t{5 choose 1} = 1 + 1
        assert_eq!(
            catalan(2, &p).unwrap().as_constant().unwrap(),
            Integer::from(-1)
        );
        assert_eq!(
            catalan(3, &p).unwrap().as_constant().unwrap(),
            Integer::from(2)
        );
    }
}
