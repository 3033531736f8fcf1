//! Wide-grid agreement between the closed-form valuations and brute-force
//! computation, plus the digit-counting identities tied to ordinary
//! binomial coefficients and factorials.

use fibkit_core::exactmath::Integer;
use fibkit_core::valuations::{
    carries, legendre, nu, nu_catalan_brute_sweep, nu_catalan_closed, nu_d_special,
    nu_fib_brute, nu_fib_closed, nu_fib_prefix, nu_fibotorial_closed, zeta2, Valuation,
};
use num_integer::binomial;

#[test]
fn fibonacci_entry_valuations_across_all_parities() {
    for s in -6i64..=6 {
        for t in -6i64..=6 {
            for n in 0..=96u64 {
                let r = nu_fib_closed(s, t, n).unwrap();
                assert!(
                    r.agrees(),
                    "(s,t,n) = ({s},{t},{n}): closed {:?} vs brute {:?} [{}]",
                    r.value,
                    r.brute,
                    r.branch
                );
            }
        }
    }
}

#[test]
fn factorial_valuations_across_all_parities() {
    for s in -5i64..=5 {
        for t in -5i64..=5 {
            for n in 0..=72u64 {
                let r = nu_fibotorial_closed(s, t, n).unwrap();
                assert!(
                    r.agrees(),
                    "(s,t,n) = ({s},{t},{n}): {:?} vs {:?} [{}]",
                    r.value,
                    r.brute,
                    r.branch
                );
            }
        }
    }
}

#[test]
fn special_point_valuations_match_brute_force() {
    for d in 2..=10u64 {
        for n in 0..=96u64 {
            let r = nu_d_special(d, n).unwrap();
            assert!(r.agrees(), "(d,n) = ({d},{n})");
        }
    }
}

#[test]
fn catalan_valuations_on_odd_and_mixed_parity_grids() {
    let mut pairs = Vec::new();
    for s in -5i64..=5 {
        for t in -5i64..=5 {
            if s.rem_euclid(2) == 1 || t.rem_euclid(2) == 1 {
                pairs.push((s, t));
            }
        }
    }
    for (s, t) in pairs {
        let brute = nu_catalan_brute_sweep(s, t, 64).unwrap();
        for n in 0..=64u32 {
            let r = nu_catalan_closed(s, t, n).unwrap();
            assert_eq!(
                r.value, brute[n as usize],
                "(s,t,n) = ({s},{t},{n}) [{}]",
                r.branch
            );
        }
    }
}

#[test]
fn ordinary_catalan_row_follows_the_digit_count() {
    // nu_2(C_n) = zeta_2(n+1) - 1 in the classical case
    let (s, t) = (2i64, -1i64);
    let brute = nu_catalan_brute_sweep(s, t, 200).unwrap();
    for n in 0..=200u32 {
        assert_eq!(
            brute[n as usize],
            Valuation::Finite(zeta2(n as u64 + 1) - 1),
            "n = {n}"
        );
    }
}

#[test]
fn carry_counting_matches_binomial_valuations() {
    for p in [2u64, 3, 5, 7] {
        for m in 0..=60u64 {
            for n in 0..=60u64 {
                let c = carries(m, n, p).unwrap();
                let b = binomial(Integer::from(m + n), Integer::from(m));
                let v = nu(p, &b).unwrap();
                assert_eq!(v, Valuation::Finite(c), "p = {p}, m = {m}, n = {n}");
            }
        }
    }
}

#[test]
fn legendre_matches_running_factorial_valuations() {
    for p in [2u64, 3, 5] {
        let mut factorial_val = 0u64;
        for n in 1..=400u64 {
            let this = match nu(p, &Integer::from(n)).unwrap() {
                Valuation::Finite(v) => v,
                Valuation::Infinity => unreachable!("n >= 1"),
            };
            factorial_val += this;
            assert_eq!(legendre(n, p).unwrap(), factorial_val, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn prefix_sweep_is_consistent_with_single_shots() {
    for (d, s, t) in [(2u64, 1i64, 1i64), (3, 3, -1), (5, 2, 3), (9, 3, -1)] {
        let prefix = nu_fib_prefix(d, s, t, 200).unwrap();
        for n in (0..=200u64).step_by(17) {
            assert_eq!(
                prefix[n as usize],
                nu_fib_brute(d, s, t, n).unwrap(),
                "(d,s,t,n) = ({d},{s},{t},{n})"
            );
        }
    }
}

#[test]
fn degenerate_pairs_settle_to_infinity_where_entries_vanish() {
    // at (1, -1) the sequence cycles 0, 1, 1, 0, -1, -1 and vanishes at
    // every index divisible by 3
    let prefix = nu_fib_prefix(2, 1, -1, 60).unwrap();
    for n in 0..=60u64 {
        if n % 3 == 0 {
            assert_eq!(prefix[n as usize], Valuation::Infinity, "n = {n}");
        } else {
            assert_eq!(prefix[n as usize], Valuation::Finite(0), "n = {n}");
        }
    }
}
