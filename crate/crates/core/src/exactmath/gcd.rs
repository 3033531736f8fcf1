//! Polynomial gcd in Z[s, t, q] by primitive pseudo-remainder sequences.
//!
//! The classical recursive scheme: view both polynomials as univariate in a
//! main variable with coefficients in the subring generated by the remaining
//! variables, split off the content (the gcd of those coefficients, computed
//! recursively), and run a Euclidean remainder sequence on the primitive
//! parts using pseudo-division so that no coefficient ever needs a fraction.
//! Keeping every remainder primitive tames coefficient growth, which is all
//! the sophistication the small polynomials in this crate call for.

use num_integer::Integer as _;
use num_traits::Signed;

use super::poly::{BivarPoly, Degree, Var};
use super::Integer;

/// Gcd of two polynomials, normalized so the leading coefficient under
/// graded lex is positive. gcd(0, 0) = 0 by convention.
pub fn poly_gcd(a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    // Constants reduce to an integer gcd with the other side's content.
    if let Some(ca) = a.as_constant() {
        return BivarPoly::constant(ca.gcd(&b.content()));
    }
    if let Some(cb) = b.as_constant() {
        return BivarPoly::constant(cb.gcd(&a.content()));
    }
    if a == b {
        return normalize_sign(a.clone());
    }

    let var = main_var(a, b);
    let (ca, pa) = split_content(a, var);
    let (cb, pb) = split_content(b, var);
    let cont = poly_gcd(&ca, &cb);

    // Primitive PRS on the primitive parts.
    let (mut f, mut g) = if deg(a, var) >= deg(b, var) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        let (_, rp) = split_content(&r, var);
        f = g;
        g = rp;
    }
    normalize_sign(cont.mul(&g))
}

/// Flip the sign so the graded-lex leading coefficient is positive.
pub fn normalize_sign(p: BivarPoly) -> BivarPoly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// First variable (in the order s, t, q) appearing in either polynomial.
/// Only called when at least one input is non-constant.
fn main_var(a: &BivarPoly, b: &BivarPoly) -> Var {
    for var in Var::ALL {
        if a.uses(var) || b.uses(var) {
            return var;
        }
    }
    unreachable!("main_var called on two constants");
}

fn deg(p: &BivarPoly, var: Var) -> u32 {
    match p.degree_in(var) {
        Degree::MinusInfinity => 0,
        Degree::Finite(d) => d,
    }
}

/// Split p (nonzero) into (content, primitive part) with respect to var:
/// content is the recursive gcd of the var-coefficients, and the primitive
/// part is p with each coefficient exactly divided by it.
fn split_content(p: &BivarPoly, var: Var) -> (BivarPoly, BivarPoly) {
    let coeffs = p.coeffs_in(var);
    let mut cont = BivarPoly::zero();
    for c in &coeffs {
        cont = poly_gcd(&cont, c);
        if cont.is_one() {
            return (BivarPoly::one(), p.clone());
        }
    }
    let primitive: Vec<BivarPoly> = coeffs
        .iter()
        .map(|c| {
            c.div_exact(&cont)
                .expect("content divides every coefficient")
        })
        .collect();
    (cont, BivarPoly::from_coeffs(var, &primitive))
}

/// Pseudo-remainder of f by g in the variable var: the remainder of
/// lc(g)^(deg f - deg g + 1) * f divided by g, computed without fractions.
/// Requires g nonzero and deg_var(f) >= deg_var(g).
fn prem(f: &BivarPoly, g: &BivarPoly, var: Var) -> BivarPoly {
    let mut r = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let dg = gc.len() - 1;
    let lcg = &gc[dg];
    let df = r.len() - 1;
    debug_assert!(df >= dg);

    // Each pass multiplies the remainder by lc(g) and cancels its leading
    // term; e tracks how many multiplications remain to reach the exact
    // pseudo-remainder normalization.
    let mut e = df - dg + 1;
    while !r.is_empty() && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcg);
        }
        for (i, gi) in gc.iter().enumerate() {
            let idx = dr - dg + i;
            r[idx] = r[idx].sub(&gi.mul(&lcr));
        }
        debug_assert!(r[dr].is_zero());
        while matches!(r.last(), Some(c) if c.is_zero()) {
            r.pop();
        }
        e -= 1;
    }
    let mut rem = BivarPoly::from_coeffs(var, &r);
    for _ in 0..e {
        rem = rem.mul(lcg);
    }
    rem
}

/// Integer gcd helper reused across the crate: nonnegative, gcd(0, 0) = 0.
pub fn int_gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
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

    #[test]
    fn gcd_of_integer_constants() {
        let a = BivarPoly::from_i64(12);
        let b = BivarPoly::from_i64(18);
        assert_eq!(poly_gcd(&a, &b), BivarPoly::from_i64(6));
        assert_eq!(poly_gcd(&a, &BivarPoly::zero()), a);
        assert!(poly_gcd(&BivarPoly::zero(), &BivarPoly::zero()).is_zero());
    }

    #[test]
    fn gcd_pulls_out_common_factor() {
        // gcd(s^2 - t^2-ish products) with a shared factor (s + t)
        let f = s().add(&t());
        let a = f.mul(&s().sub(&t()));
        let b = f.mul(&s().pow(2).add(&BivarPoly::one()));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, f);
    }

    #[test]
    fn gcd_of_coprime_polys_is_constant() {
        let g = poly_gcd(&s().add(&BivarPoly::one()), &t().add(&BivarPoly::from_i64(2)));
        assert!(g.is_one());
    }

    #[test]
    fn gcd_handles_integer_content() {
        // gcd(2s + 2t, 4s^2 - 4t^2) = 2(s + t)
        let a = s().add(&t()).mul_scalar(&BigInt::from(2));
        let b = s()
            .pow(2)
            .sub(&t().pow(2))
            .mul_scalar(&BigInt::from(4));
        let expected = s().add(&t()).mul_scalar(&BigInt::from(2));
        assert_eq!(poly_gcd(&a, &b), expected);
    }

    #[test]
    fn gcd_sign_is_normalized() {
        let a = s().neg().sub(&t());
        let g = poly_gcd(&a, &a);
        assert_eq!(g, s().add(&t()));
    }

    #[test]
    fn gcd_in_three_variables() {
        // common factor touches all of s, t, q
        let f = s().mul(&t()).add(&BivarPoly::var_q());
        let a = f.mul(&s().add(&BivarPoly::var_q()));
        let b = f.mul(&t().pow(2).add(&BivarPoly::one()));
        assert_eq!(poly_gcd(&a, &b), f);
    }
}
