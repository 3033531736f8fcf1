//! End-to-end runs of the identity registry plus cross-checks that tie
//! independent rows to each other and to plain integer arithmetic.

use fibkit_core::exactmath::{Integer, Rational};
use fibkit_core::fibonomials::fibonomial;
use fibkit_core::identities::{registry, run_all, run_identity, Mode, Ranges};
use fibkit_core::sequences::SeqParams;
use num_integer::binomial;

const RANGES: Ranges = Ranges { n: 8, m: 6, k: 6, r: 3 };

#[test]
fn every_registered_identity_passes() {
    let verdicts = run_all(&RANGES);
    assert_eq!(verdicts.len(), registry().len());
    for v in &verdicts {
        assert!(
            v.passed(),
            "{} failed: {:?}",
            v.id,
            v.counterexample
        );
        assert!(v.cases > 0, "{} ran no cases", v.id);
    }
}

#[test]
fn registry_ids_are_stable_and_unique() {
    let ids: Vec<&str> = registry().iter().map(|spec| spec.id).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len(), "duplicate ids");
    for required in [
        "addition",
        "binet",
        "gcd",
        "euler-cassini",
        "row-sums",
        "binomial-thm",
        "log-concavity",
    ] {
        assert!(ids.contains(&required), "missing {required}");
    }
}

#[test]
fn each_mode_passes_on_its_own() {
    // running a row restricted to one supported mode must agree with the
    // full run, with no mode silently skipped
    for spec in registry() {
        for &mode in spec.modes {
            let v = run_identity(spec.id, &RANGES, Some(mode)).unwrap();
            assert!(v.passed(), "{} in {mode:?}", spec.id);
            assert!(v.cases > 0, "{} ran no cases in {mode:?}", spec.id);
            assert_eq!(v.modes, vec![mode]);
        }
    }
}

#[test]
fn truncated_series_rows_declare_their_order() {
    for spec in registry() {
        let v = run_identity(spec.id, &RANGES, None).unwrap();
        if spec.id == "neg-binomial-thm" {
            assert!(v.truncation_order.is_some());
        }
    }
}

#[test]
fn row_sums_recover_integer_binomial_rows() {
    // at (s, t) = (2, -1) the coefficients are ordinary binomials, so the
    // row sum must be 2^n and the alternating sum must vanish
    let params = SeqParams::with_st(2, -1);
    for n in 0..=10u32 {
        let mut plain = Integer::from(0);
        let mut alternating = Integer::from(0);
        for k in 0..=n as i64 {
            let c = fibonomial(n, k, &params)
                .unwrap()
                .as_poly()
                .unwrap()
                .as_constant()
                .unwrap();
            assert_eq!(c, binomial(Integer::from(n), Integer::from(k)));
            if k % 2 == 0 {
                alternating += &c;
            } else {
                alternating -= &c;
            }
            plain += c;
        }
        assert_eq!(plain, Integer::from(2).pow(n));
        let expected = if n == 0 { 1 } else { 0 };
        assert_eq!(alternating, Integer::from(expected), "n = {n}");
    }
}

#[test]
fn quadratic_extension_and_specialization_agree_on_shared_rows() {
    // rows that support both verification styles must pass in each, and
    // the symbolic run must cover at least as many cases as either
    for spec in registry() {
        let has = |m: Mode| spec.modes.contains(&m);
        if has(Mode::QuadExt) && has(Mode::Specialized) {
            let q = run_identity(spec.id, &RANGES, Some(Mode::QuadExt)).unwrap();
            let s = run_identity(spec.id, &RANGES, Some(Mode::Specialized)).unwrap();
            assert!(q.passed() && s.passed(), "{}", spec.id);
        }
    }
}

#[test]
fn catalan_route_fibonacci_point_values() {
    // an independent rational-arithmetic route to the same numbers used by
    // the registry's two-term row: direct quotient of binomials
    let params = SeqParams::with_st(1, 1);
    let fib = [0i64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];
    for n in 2..=6u32 {
        let central = fibonomial(2 * n, n as i64, &params)
            .unwrap()
            .as_poly()
            .unwrap()
            .as_constant()
            .unwrap();
        let quotient = Rational::new(central, Integer::from(fib[n as usize + 1]));
        let catalan = fibkit_core::fibonomials::catalan(n, &params)
            .unwrap()
            .as_constant()
            .unwrap();
        assert_eq!(quotient, Rational::from_integer(catalan), "n = {n}");
    }
}
