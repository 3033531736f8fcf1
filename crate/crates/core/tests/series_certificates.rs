//! Grid checks of the certified reciprocal-tail floors, the closed weighted
//! sum, and generating function enclosures, including the equivalence of
//! the two published shapes of the squared-reciprocal floor.

use fibkit_core::exactmath::{Integer, Rational};
use fibkit_core::sequences::fib_int;
use fibkit_core::series::{
    certified_sum_nice1, genfun_specialize, tail_floor, SeriesError, TailRegime,
};
use num_traits::{One, Signed};

#[test]
fn first_power_floors_match_the_closed_form_on_a_grid() {
    for s in 1..=5i64 {
        for t in 1..=s {
            for r in 1..=3u32 {
                for n in 1..=8u64 {
                    let c = tail_floor(s, t, r, n, 1).unwrap();
                    assert_eq!(c.regime, TailRegime::Proven);
                    assert_eq!(c.floor, c.predicted, "(s,t,r,n) = ({s},{t},{r},{n})");
                    // the enclosure must actually contain the reciprocal
                    let total = c.partial_sum.clone() + c.remainder_bound.clone();
                    let recip_lo = (Rational::one() / total).floor();
                    assert_eq!(recip_lo.to_integer(), c.floor);
                }
            }
        }
    }
}

#[test]
fn second_power_floors_at_unit_t() {
    for s in 1..=5i64 {
        for r in 1..=2u32 {
            for n in 1..=8u64 {
                let c = tail_floor(s, 1, r, n, 2).unwrap();
                assert_eq!(c.floor, c.predicted, "(s,r,n) = ({s},{r},{n})");
            }
        }
    }
}

#[test]
fn squared_floor_equals_the_product_shape() {
    // the closed form {n}^2 - {n-1}^2 - [n-1 even] can also be written
    // s{n}{n-1} - (-1)^n - [n-1 even] when t = 1; both must match the
    // certified floor along r = 1
    for s in 1..=4i64 {
        let sb = Integer::from(s);
        let one = Integer::from(1);
        let f = |k: u64| fib_int(k, &sb, &one);
        for n in 2..=30u64 {
            let c = tail_floor(s, 1, 1, n, 2).unwrap();
            let sign = if n % 2 == 0 { 1i64 } else { -1 };
            let delta = Integer::from(i64::from((n - 1) % 2 == 0));
            let product_shape = &sb * f(n) * f(n - 1) - Integer::from(sign) - delta;
            assert_eq!(c.floor, product_shape, "s = {s}, n = {n}");
        }
    }
}

#[test]
fn negative_t_certificates_report_without_asserting() {
    for (s, t) in [(3i64, -1i64), (3, -2), (4, -3), (5, -2)] {
        for n in 1..=6u64 {
            let c = tail_floor(s, t, 1, n, 1).unwrap();
            assert_eq!(c.regime, TailRegime::ConjecturedNegativeT);
            assert!(!c.prediction_proven);
            // the floor itself carries a rigorous enclosure either way
            assert!(c.remainder_bound.is_positive());
            assert_eq!(c.floor, c.predicted, "(s,t,n) = ({s},{t},{n})");
        }
    }
}

#[test]
fn divergent_and_unproven_regions_error_out() {
    assert!(matches!(
        tail_floor(2, -1, 1, 1, 1),
        Err(SeriesError::Diverges(_))
    ));
    assert!(matches!(
        tail_floor(1, 3, 1, 1, 1),
        Err(SeriesError::OutsideProvenRegime(_))
    ));
    assert!(matches!(
        tail_floor(1, -1, 1, 1, 1),
        Err(SeriesError::OutsideProvenRegime(_))
    ));
    assert!(matches!(
        tail_floor(3, 2, 1, 1, 2),
        Err(SeriesError::OutsideProvenRegime(_))
    ));
}

#[test]
fn weighted_sum_certificates_on_a_grid() {
    for s in 1..=4i64 {
        for t in 1..=4i64 {
            let c = certified_sum_nice1(s, t).unwrap();
            let expected = Rational::new(Integer::one(), Integer::from(t) * Integer::from(s + t - 1));
            assert_eq!(c.closed_value, expected, "(s,t) = ({s},{t})");
            let gap = c.closed_value.clone() - c.partial_sum.clone();
            assert!(!gap.is_negative() && gap <= c.remainder_bound);
        }
    }
}

#[test]
fn generating_function_enclosures_tighten_monotonically() {
    let z = Rational::new(Integer::from(2), Integer::from(5));
    let mut last = None;
    for terms in [5u64, 10, 20, 40] {
        let e = genfun_specialize(terms, 1, 1, &z).unwrap();
        let gap = (e.value.clone() - e.partial_sum.clone()).abs();
        assert!(gap <= e.remainder_bound);
        if let Some(prev) = last {
            assert!(e.remainder_bound < prev);
        }
        last = Some(e.remainder_bound);
    }
}

#[test]
fn generating_function_values_at_reference_points() {
    let half = Rational::new(Integer::from(1), Integer::from(2));
    let third = Rational::new(Integer::from(1), Integer::from(3));
    assert_eq!(
        genfun_specialize(30, 1, 1, &half).unwrap().value,
        Rational::from_integer(Integer::from(2))
    );
    assert_eq!(
        genfun_specialize(30, 2, -1, &third).unwrap().value,
        Rational::new(Integer::from(3), Integer::from(4))
    );
    // negated argument flips the series but stays inside the disk
    let e = genfun_specialize(30, 1, 1, &(-half)).unwrap();
    assert_eq!(
        e.value,
        Rational::new(Integer::from(-2), Integer::from(5))
    );
}

#[test]
fn enclosure_certifies_against_a_plain_float_sum() {
    // sanity anchor: a double-precision estimate of the Fibonacci
    // reciprocal tail lies inside the exact enclosure
    let c = tail_floor(1, 1, 1, 4, 1).unwrap();
    let mut float_sum = 0f64;
    let (mut a, mut b) = (1f64, 1f64); // F_1, F_2
    for k in 1..60u64 {
        if k >= 4 {
            float_sum += 1.0 / a;
        }
        let next = a + b;
        a = b;
        b = next;
    }
    let lo = rational_to_f64(&c.partial_sum);
    let hi = rational_to_f64(&(c.partial_sum.clone() + c.remainder_bound.clone()));
    assert!(lo <= float_sum + 1e-9 && float_sum <= hi + 1e-9);
}

fn rational_to_f64(x: &Rational) -> f64 {
    let scaled = (x * Rational::from_integer(Integer::from(1u64 << 53))).floor();
    let digits = scaled.to_integer().to_string();
    digits.parse::<f64>().unwrap() / (1u64 << 53) as f64
}
