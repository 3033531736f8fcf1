//! Certified partial sums of reciprocal series over the {n} family.
//!
//! Everything here is exact rational arithmetic. A result is only emitted
//! together with an enclosure: a partial sum plus a proven bound on the
//! remainder, so floor computations are certified rather than sampled.
//! Where the underlying closed form is a conjecture (negative t), the
//! certificate still carries a rigorously certified floor, and the closed
//! form is reported without being asserted.

use num_traits::{One, Signed, Zero};

use crate::exactmath::{BivarPoly, Integer, Rational, RationalFunction};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("outside the proven regime: {0}")]
    OutsideProvenRegime(String),
    #[error("series diverges: {0}")]
    Diverges(String),
    #[error("could not certify the floor within {terms} terms")]
    CertificationFailed { terms: u64 },
    #[error("bad input: {0}")]
    BadInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TailRegime {
    /// s >= t >= 1, where the floor formula is a theorem.
    Proven,
    /// t <= -1 with s > |t| and (s,t) != (2,-1); the floor itself is still
    /// certified numerically, the closed form is conjectural.
    ConjecturedNegativeT,
}

/// A certified value of floor(1 / sum_{k >= n} 1/{rk}^power) together with
/// the enclosure that proves it and the closed-form prediction.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TailCertificate {
    pub s: i64,
    pub t: i64,
    pub r: u32,
    pub n: u64,
    pub power: u32,
    pub regime: TailRegime,
    /// Index of the last term included in the partial sum.
    pub terms_used: u64,
    #[serde(serialize_with = "ser_rational")]
    pub partial_sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub remainder_bound: Rational,
    /// Certified floor of the reciprocal tail sum.
    #[serde(serialize_with = "ser_integer")]
    pub floor: Integer,
    /// Closed-form value; equals floor in the proven regime, and is
    /// reported for comparison in the conjectured regime.
    #[serde(serialize_with = "ser_integer")]
    pub predicted: Integer,
    pub prediction_proven: bool,
}

const TERM_CAP: u64 = 10_000;

/// Big rationals serialize as "p/q" strings so no precision is lost in JSON.
fn ser_rational<S: serde::Serializer>(x: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
}

/// Big integers serialize as decimal strings; they routinely exceed what a
/// JSON number can carry.
fn ser_integer<S: serde::Serializer>(x: &Integer, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&x.to_string())
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(Integer::from(x))
}

fn rat_pow(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Walks the recurrence keeping a (prev, cur) window, so sequential access
/// to {m}, {m+1}, ... costs one step each instead of a fresh recurrence.
#[derive(Clone)]
struct FibWalker {
    s: Integer,
    t: Integer,
    prev: Integer,
    cur: Integer,
    index: u64,
}

impl FibWalker {
    fn start(s: i64, t: i64) -> Self {
        FibWalker {
            s: Integer::from(s),
            t: Integer::from(t),
            prev: Integer::zero(),
            cur: Integer::one(),
            index: 1,
        }
    }

    /// Advance to {index + 1}.
    fn step(&mut self) {
        let next = &self.s * &self.cur + &self.t * &self.prev;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.index += 1;
    }

    fn advance_to(&mut self, target: u64) -> &Integer {
        debug_assert!(target >= self.index);
        while self.index < target {
            self.step();
        }
        &self.cur
    }
}

fn delta_even(m: u64) -> i64 {
    i64::from(m % 2 == 0)
}

/// floor(1 / sum_{k >= n} 1/{rk}^power) with a certified enclosure.
///
/// For s >= t >= 1 the closed form is proven:
///   power 1: {rn} - {r(n-1)} - [r(n-1) even]
///   power 2 (t = 1): {rn}^2 - {r(n-1)}^2 - [r(n-1) even]
/// For t < 0 with s > |t| (excluding (2,-1), where the series diverges)
/// the analogous first-power formula {rn} - {r(n-1)} - 1 is conjectural;
/// the certified floor is returned alongside it without assertion.
pub fn tail_floor(
    s: i64,
    t: i64,
    r: u32,
    n: u64,
    power: u32,
) -> Result<TailCertificate, SeriesError> {
    if r == 0 || n == 0 {
        return Err(SeriesError::BadInput(format!(
            "need r >= 1 and n >= 1, got r = {r}, n = {n}"
        )));
    }
    if power != 1 && power != 2 {
        return Err(SeriesError::BadInput(format!(
            "only first and second powers are supported, got {power}"
        )));
    }
    let regime = if s >= t && t >= 1 {
        if power == 2 && t != 1 {
            return Err(SeriesError::OutsideProvenRegime(format!(
                "the squared-reciprocal floor is only established at t = 1, got t = {t}"
            )));
        }
        TailRegime::Proven
    } else if t <= -1 && s > -t {
        if (s, t) == (2, -1) {
            return Err(SeriesError::Diverges(
                "at (2,-1) the terms are 1/(rk), a harmonic tail".into(),
            ));
        }
        if power != 1 {
            return Err(SeriesError::OutsideProvenRegime(
                "only the first power is tracked for negative t".into(),
            ));
        }
        TailRegime::ConjecturedNegativeT
    } else {
        return Err(SeriesError::OutsideProvenRegime(format!(
            "no floor statement covers (s, t) = ({s}, {t})"
        )));
    };

    // geometric decay ratio for the remainder bound
    let ratio = match regime {
        TailRegime::Proven => {
            // {m+2} >= (s+t){m} >= 2{m}, so terms two apart shrink by 2^r
            // (or 4^r for squares); the tail splits into two such chains
            let base = Integer::from(2).pow(r * power);
            Rational::new(base.clone(), base - Integer::one())
        }
        TailRegime::ConjecturedNegativeT => {
            // find rational c > 1 with c^2 <= s c - |t|, giving {k+1} >= c{k}
            let mut lo = rat(1);
            let mut hi = rat(s);
            let fits = |c: &Rational| {
                c * c <= rat(s) * c - rat(-t)
            };
            for _ in 0..60 {
                let mid = (lo.clone() + hi.clone()) / rat(2);
                if fits(&mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            debug_assert!(fits(&lo) && lo > Rational::one());
            let cr = rat_pow(&lo, r);
            cr.clone() / (cr - Rational::one())
        }
    };

    let mut walker = FibWalker::start(s, t);
    let mut sum = Rational::zero();
    let mut k = n;
    walker.advance_to(r as u64 * n);
    let add_term = |w: &mut FibWalker, k: u64| -> Result<Rational, SeriesError> {
        let v = w.advance_to(r as u64 * k).clone();
        if !v.is_positive() {
            return Err(SeriesError::OutsideProvenRegime(format!(
                "{{{}}} is not positive, the series is not a positive tail",
                r as u64 * k
            )));
        }
        Ok(Rational::new(Integer::one(), v.pow(power)))
    };
    sum += add_term(&mut walker, k)?;

    loop {
        // grow the partial sum in blocks, then try to certify the floor
        for _ in 0..8 {
            k += 1;
            sum += add_term(&mut walker, k)?;
        }
        if k > TERM_CAP {
            return Err(SeriesError::CertificationFailed { terms: k });
        }
        // remainder after the last included index k
        let mut look = walker.clone();
        let f1 = look.advance_to(r as u64 * (k + 1)).clone();
        let head = match regime {
            TailRegime::Proven => {
                let f2 = look.advance_to(r as u64 * (k + 2)).clone();
                Rational::new(Integer::one(), f1.pow(power))
                    + Rational::new(Integer::one(), f2.pow(power))
            }
            TailRegime::ConjecturedNegativeT => Rational::new(Integer::one(), f1),
        };
        let remainder = head * ratio.clone();
        let lo_floor = (Rational::one() / (sum.clone() + remainder.clone())).floor();
        let hi_floor = (Rational::one() / sum.clone()).floor();
        if lo_floor == hi_floor {
            let mut pred_walker = FibWalker::start(s, t);
            let frn1 = if n == 1 {
                Integer::zero()
            } else {
                pred_walker.advance_to(r as u64 * (n - 1)).clone()
            };
            let frn = pred_walker.advance_to(r as u64 * n).clone();
            let predicted = match regime {
                TailRegime::Proven => {
                    let delta = Integer::from(delta_even(r as u64 * (n - 1)));
                    if power == 1 {
                        frn - frn1 - delta
                    } else {
                        frn.pow(2) - frn1.pow(2) - delta
                    }
                }
                TailRegime::ConjecturedNegativeT => frn - frn1 - Integer::one(),
            };
            return Ok(TailCertificate {
                s,
                t,
                r,
                n,
                power,
                regime,
                terms_used: k,
                partial_sum: sum,
                remainder_bound: remainder,
                floor: lo_floor.to_integer(),
                predicted,
                prediction_proven: regime == TailRegime::Proven,
            });
        }
    }
}

// ---------------------------------------------------------------------------
// The weighted sum with value 1/(t(s+t-1))
// ---------------------------------------------------------------------------

/// sum_{n >= 1} {n} / (s+t)^(n+1), which closes to 1/(t(s+t-1)), checked
/// two independent ways.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CertifiedSum {
    pub s: i64,
    pub t: i64,
    #[serde(serialize_with = "ser_rational")]
    pub closed_value: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub partial_sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub remainder_bound: Rational,
    pub terms_used: u64,
    /// Text of the rational-function identity established symbolically.
    pub symbolic_witness: String,
}

/// Certify sum_{n >= 1} {n}/(s+t)^(n+1) = 1/(t(s+t-1)) for s, t >= 1.
///
/// The identity is first proved symbolically: substituting z = 1/(s+t)
/// into z^2/(1 - sz - tz^2) as rational functions gives exactly
/// 1/(t(s+t-1)). Convergence at that point holds since X < s+t whenever
/// s + t > 1. A numeric enclosure then confirms the value independently,
/// with the tail controlled by an exact bound on the growth ratio.
pub fn certified_sum_nice1(s: i64, t: i64) -> Result<CertifiedSum, SeriesError> {
    if s < 1 || t < 1 {
        return Err(SeriesError::OutsideProvenRegime(format!(
            "the closed sum needs s, t >= 1, got ({s}, {t})"
        )));
    }
    // symbolic witness in the fraction field of Z[s, t]
    let sp = RationalFunction::from_poly(BivarPoly::var_s());
    let tp = RationalFunction::from_poly(BivarPoly::var_t());
    let z = RationalFunction::new(BivarPoly::one(), BivarPoly::var_s().add(&BivarPoly::var_t()))
        .expect("s + t is not the zero polynomial");
    let denom = RationalFunction::one()
        .sub(&sp.mul(&z))
        .sub(&tp.mul(&z).mul(&z));
    let lhs = z
        .mul(&z)
        .div(&denom)
        .expect("1 - sz - tz^2 does not vanish identically");
    let st1 = BivarPoly::var_s().add(&BivarPoly::var_t()).sub(&BivarPoly::one());
    let rhs = RationalFunction::new(BivarPoly::one(), BivarPoly::var_t().mul(&st1))
        .expect("t(s+t-1) is not the zero polynomial");
    if lhs != rhs {
        return Err(SeriesError::CertificationFailed { terms: 0 });
    }
    let witness = format!("z^2/(1 - s z - t z^2) at z = 1/(s+t) equals {}", rhs.to_text());

    let closed = Rational::new(Integer::one(), Integer::from(t) * Integer::from(s + t - 1));

    let base = rat(s + t);
    let k_terms: u64 = 48;
    let mut walker = FibWalker::start(s, t);
    let mut partial = Rational::zero();
    let mut power = base.clone() * base.clone(); // (s+t)^(n+1) at n = 1
    for nn in 1..=k_terms {
        let f = walker.advance_to(nn).clone();
        partial += Rational::from_integer(f) / power.clone();
        power *= base.clone();
    }
    // Growth bound past K: the ratio map r -> s + t/r oscillates around its
    // fixed point and contracts, so sup_{n >= K} {n+1}/{n} is reached at one
    // of the first two ratios. Both are exact rationals, and each is below
    // s + t because {K+1} > {K} holds strictly by K = 48.
    let f_k = Rational::from_integer(walker.advance_to(k_terms).clone());
    let f_k1 = Rational::from_integer(walker.advance_to(k_terms + 1).clone());
    let f_k2 = Rational::from_integer(walker.advance_to(k_terms + 2).clone());
    let rho = (f_k1.clone() / f_k.clone()).max(f_k2 / f_k1);
    debug_assert!(rho < base);
    // remainder <= {K} rho / ((s+t)^(K+1) (s+t-rho))
    let pow_k1 = rat_pow(&base, k_terms as u32 + 1);
    let remainder = f_k * rho.clone() / (pow_k1 * (base - rho));

    let gap = closed.clone() - partial.clone();
    if gap < Rational::zero() || gap > remainder {
        return Err(SeriesError::CertificationFailed { terms: k_terms });
    }
    Ok(CertifiedSum {
        s,
        t,
        closed_value: closed,
        partial_sum: partial,
        remainder_bound: remainder,
        terms_used: k_terms,
        symbolic_witness: witness,
    })
}

// ---------------------------------------------------------------------------
// Generating function evaluation at a rational point
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, serde::Serialize)]
pub struct SeriesEval {
    pub s: i64,
    pub t: i64,
    #[serde(serialize_with = "ser_rational")]
    pub z: Rational,
    /// Exact value z/(1 - sz - tz^2) of the full series.
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub partial_sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub remainder_bound: Rational,
    pub terms_used: u64,
}

/// Evaluate sum_n {n} z^n at a rational z inside the disk of convergence,
/// returning the exact value together with a partial sum and a certified
/// remainder bound that encloses it.
///
/// The convergence requirement |z| < 1/max(|X|, |Y|) is decided exactly:
/// for discriminant s^2+4t >= 0 it reads s^2+4t < (2/|z| - |s|)^2 with a
/// positive right side, and for negative discriminant it reads z^2(-t) < 1.
pub fn genfun_specialize(
    terms: u64,
    s: i64,
    t: i64,
    z: &Rational,
) -> Result<SeriesEval, SeriesError> {
    if terms == 0 {
        return Err(SeriesError::BadInput("need at least one term".into()));
    }
    if z.is_zero() {
        return Ok(SeriesEval {
            s,
            t,
            z: z.clone(),
            value: Rational::zero(),
            partial_sum: Rational::zero(),
            remainder_bound: Rational::zero(),
            terms_used: terms,
        });
    }
    let abs_z = z.abs();
    let disc = Integer::from(s) * Integer::from(s) + Integer::from(4) * Integer::from(t);
    let inside = if disc >= Integer::zero() {
        let margin = rat(2) / abs_z.clone() - rat(s.abs());
        margin > Rational::zero()
            && Rational::from_integer(disc.clone()) < margin.clone() * margin
    } else {
        abs_z.clone() * abs_z.clone() * rat(-t) < Rational::one()
    };
    if !inside {
        return Err(SeriesError::OutsideProvenRegime(format!(
            "|z| = {abs_z} is not inside the disk of convergence"
        )));
    }

    // rational upper bound m_hat >= max(|X|, |Y|), tightened by bisection
    // against the exact predicate, so m_hat |z| < 1 whenever the point is
    // strictly inside the disk
    let dominates = |m: &Rational| -> bool {
        if disc >= Integer::zero() {
            let two_m = rat(2) * m.clone() - rat(s.abs());
            two_m >= Rational::zero()
                && two_m.clone() * two_m >= Rational::from_integer(disc.clone())
        } else {
            m.clone() * m.clone() >= rat(-t)
        }
    };
    let mut lo = Rational::zero();
    let mut hi = rat(s.abs() + t.abs() + 1);
    debug_assert!(dominates(&hi));
    for _ in 0..80 {
        let mid = (lo.clone() + hi.clone()) / rat(2);
        if dominates(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let m_hat = hi;
    let rho = m_hat.clone() * abs_z.clone();
    if rho >= Rational::one() {
        return Err(SeriesError::OutsideProvenRegime(
            "the margin to the disk boundary is too small to certify a tail bound".into(),
        ));
    }

    // exact value of the full series
    let denom = Rational::one() - rat(s) * z.clone() - rat(t) * z.clone() * z.clone();
    if denom.is_zero() {
        return Err(SeriesError::BadInput("z is a pole of the generating function".into()));
    }
    let value = z.clone() / denom;

    let mut walker = FibWalker::start(s, t);
    let mut partial = Rational::zero();
    let mut zp = z.clone();
    for nn in 1..=terms {
        let f = walker.advance_to(nn).clone();
        partial += Rational::from_integer(f) * zp.clone();
        zp *= z.clone();
    }

    // |{n}| <= n max(|X|,|Y|)^(n-1), so the tail is bounded by
    // (1/m_hat) sum_{n > K} n rho^n with the standard closed form
    let k = terms;
    let rho_k1 = rat_pow(&rho, k as u32 + 1);
    let one_minus = Rational::one() - rho.clone();
    let series_tail = rho_k1
        * (rat(k as i64 + 1) - rat(k as i64) * rho.clone())
        / (one_minus.clone() * one_minus);
    let remainder = series_tail / m_hat;

    let gap = (value.clone() - partial.clone()).abs();
    if gap > remainder {
        return Err(SeriesError::CertificationFailed { terms });
    }
    Ok(SeriesEval {
        s,
        t,
        z: z.clone(),
        value,
        partial_sum: partial,
        remainder_bound: remainder,
        terms_used: terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::fib_int;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(Integer::from(n), Integer::from(d))
    }

    #[test]
    fn documented_floor_examples() {
        let c = tail_floor(1, 1, 1, 1, 1).unwrap();
        assert_eq!(c.floor, Integer::from(0));
        assert_eq!(c.predicted, Integer::from(0));
        assert!(c.prediction_proven);

        let c = tail_floor(2, 1, 1, 2, 1).unwrap();
        assert_eq!(c.floor, Integer::from(1));
        assert_eq!(c.predicted, Integer::from(1));

        let c = tail_floor(1, 1, 1, 2, 2).unwrap();
        assert_eq!(c.floor, Integer::from(0));
        assert_eq!(c.predicted, Integer::from(0));
    }

    #[test]
    fn proven_regime_grid_matches_prediction() {
        for s in 1..=3i64 {
            for t in 1..=s {
                for r in 1..=2u32 {
                    for n in 1..=5u64 {
                        let c = tail_floor(s, t, r, n, 1).unwrap();
                        assert_eq!(
                            c.floor, c.predicted,
                            "(s,t,r,n) = ({s},{t},{r},{n})"
                        );
                        assert!(c.remainder_bound.is_positive());
                    }
                }
            }
        }
        // squared reciprocals at t = 1
        for s in 1..=3i64 {
            for n in 1..=5u64 {
                let c = tail_floor(s, 1, 1, n, 2).unwrap();
                assert_eq!(c.floor, c.predicted, "(s,n) = ({s},{n})");
            }
        }
    }

    #[test]
    fn second_power_matches_product_form_at_t1() {
        // {n}^2 - {n-1}^2 = s{n}{n-1} - (-1)^n at t = 1, so the floor can
        // be written either way; check the equivalence along r = 1
        for s in 1..=4i64 {
            let f = |k: u64| fib_int(k, &Integer::from(s), &Integer::from(1));
            for n in 2..=12u64 {
                let direct = f(n).pow(2) - f(n - 1).pow(2);
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let product = Integer::from(s) * f(n) * f(n - 1) - Integer::from(sign);
                assert_eq!(direct, product, "s = {s}, n = {n}");
            }
        }
    }

    #[test]
    fn negative_t_floor_is_certified_and_prediction_reported() {
        // {n} at (3,-2) is 2^n - 1
        let c = tail_floor(3, -2, 1, 3, 1).unwrap();
        assert_eq!(c.regime, TailRegime::ConjecturedNegativeT);
        assert!(!c.prediction_proven);
        assert_eq!(c.floor, Integer::from(3));
        assert_eq!(c.predicted, Integer::from(3));

        for (s, t) in [(3i64, -1i64), (4, -2), (5, -3), (3, -2)] {
            for n in 1..=6u64 {
                let c = tail_floor(s, t, 1, n, 1).unwrap();
                assert_eq!(
                    c.floor, c.predicted,
                    "conjectured formula mismatched at (s,t,n) = ({s},{t},{n})"
                );
            }
        }
    }

    #[test]
    fn rejected_parameter_regions() {
        assert!(matches!(
            tail_floor(2, -1, 1, 2, 1),
            Err(SeriesError::Diverges(_))
        ));
        assert!(matches!(
            tail_floor(1, 2, 1, 2, 1),
            Err(SeriesError::OutsideProvenRegime(_))
        ));
        assert!(matches!(
            tail_floor(2, 2, 1, 2, 2),
            Err(SeriesError::OutsideProvenRegime(_))
        ));
        assert!(matches!(
            tail_floor(1, 1, 1, 2, 3),
            Err(SeriesError::BadInput(_))
        ));
        assert!(matches!(
            tail_floor(1, 1, 0, 2, 1),
            Err(SeriesError::BadInput(_))
        ));
        assert!(matches!(
            tail_floor(3, -2, 1, 2, 2),
            Err(SeriesError::OutsideProvenRegime(_))
        ));
    }

    #[test]
    fn remainder_bound_shrinks_with_more_terms() {
        let a = genfun_specialize(10, 1, 1, &q(1, 2)).unwrap();
        let b = genfun_specialize(25, 1, 1, &q(1, 2)).unwrap();
        assert!(b.remainder_bound < a.remainder_bound);
        assert!((a.value.clone() - a.partial_sum.clone()).abs() <= a.remainder_bound);
    }

    #[test]
    fn weighted_sum_closes_to_one_over_t_spt_minus_one() {
        let c = certified_sum_nice1(1, 1).unwrap();
        assert_eq!(c.closed_value, Rational::one());
        assert!(c.partial_sum < Rational::one());
        assert!(c.partial_sum.clone() + c.remainder_bound.clone() >= Rational::one());
        assert!(c.symbolic_witness.contains("z^2"));

        let c = certified_sum_nice1(2, 3).unwrap();
        assert_eq!(c.closed_value, q(1, 12));

        assert!(certified_sum_nice1(0, 1).is_err());
        assert!(certified_sum_nice1(3, -1).is_err());
    }

    #[test]
    fn generating_function_point_values() {
        // Fibonacci at z = 1/2 sums to 2
        let e = genfun_specialize(40, 1, 1, &q(1, 2)).unwrap();
        assert_eq!(e.value, rat(2));
        // {n} = n at (2,-1), z = 1/3: sum n/3^n = 3/4
        let e = genfun_specialize(40, 2, -1, &q(1, 3)).unwrap();
        assert_eq!(e.value, q(3, 4));
        // zero point is trivial
        let e = genfun_specialize(5, 7, -3, &Rational::zero()).unwrap();
        assert!(e.value.is_zero());
    }

    #[test]
    fn convergence_precondition_is_exact() {
        // golden ratio bound: 1/X = 0.618..., so z = 2/3 is outside
        assert!(matches!(
            genfun_specialize(10, 1, 1, &q(2, 3)),
            Err(SeriesError::OutsideProvenRegime(_))
        ));
        // and z = 3/5 < 0.618 is inside
        assert!(genfun_specialize(10, 1, 1, &q(3, 5)).is_ok());
        // complex roots: |X|^2 = -t, here 2, so need z^2 < 1/2
        assert!(genfun_specialize(10, 1, -2, &q(7, 10)).is_ok());
        assert!(genfun_specialize(10, 1, -2, &q(8, 10)).is_err());
    }
}
