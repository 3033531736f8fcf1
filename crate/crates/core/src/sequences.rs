//! The generalized Fibonacci and Lucas polynomial families.
//!
//! Both satisfy p(n) = s*p(n-1) + t*p(n-2):
//!
//! ```text
//! {0} = 0, {1} = 1:   {2} = s, {3} = s^2 + t, {4} = s^3 + 2st, ...
//! <0> = 2, <1> = s:   <2> = s^2 + 2t, <3> = s^3 + 3st, ...
//! ```
//!
//! plus the q-analogue {n}(q) with {n}(q) = s*{n-1}(q) + t q^(n-2) {n-2}(q),
//! closed-form expansions, and weighted tiling models: {n+1} is the total
//! weight of linear tilings of n cells by monominoes (weight s) and dominoes
//! (weight t), and <n> is the same over circular tilings where a domino may
//! wrap from the last cell to cell 0.
//!
//! Negative indices extend the recursion backwards: {-n} = -{n}/(-t)^n,
//! which is again a polynomial exactly when t is specialized to 1 or -1.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::exactmath::{BivarPoly, Integer, Monomial};

/// Hard cap for exhaustive tiling enumeration; the count grows like the
/// Lucas numbers, so 24 keeps the largest run around 10^5 tilings.
pub const TILING_CAP: u32 = 24;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("negative index needs t specialized to 1 or -1 to stay polynomial; use the rational-function form otherwise")]
    NegativeIndexNeedsUnitT,
    #[error("tiling enumeration capped at n = {cap}, got n = {n}")]
    TilingTooLarge { n: u32, cap: u32 },
}

/// Specialization state for the parameters s, t, q: `None` keeps the
/// variable symbolic, `Some(c)` pins it to the integer c.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeqParams {
    pub s: Option<Integer>,
    pub t: Option<Integer>,
    pub q: Option<Integer>,
}

impl SeqParams {
    pub fn symbolic() -> Self {
        SeqParams::default()
    }

    pub fn with_st(s: i64, t: i64) -> Self {
        SeqParams {
            s: Some(Integer::from(s)),
            t: Some(Integer::from(t)),
            q: None,
        }
    }

    pub fn is_fully_symbolic(&self) -> bool {
        self.s.is_none() && self.t.is_none() && self.q.is_none()
    }

    pub fn s_poly(&self) -> BivarPoly {
        match &self.s {
            None => BivarPoly::var_s(),
            Some(c) => BivarPoly::constant(c.clone()),
        }
    }

    pub fn t_poly(&self) -> BivarPoly {
        match &self.t {
            None => BivarPoly::var_t(),
            Some(c) => BivarPoly::constant(c.clone()),
        }
    }

    pub fn q_poly(&self) -> BivarPoly {
        match &self.q {
            None => BivarPoly::var_q(),
            Some(c) => BivarPoly::constant(c.clone()),
        }
    }
}

// ---------------------------------------------------------------------------
// Memoized symbolic tables
// ---------------------------------------------------------------------------

// The fully symbolic polynomials are requested constantly by the binomial
// and identity layers, so they are memoized process-wide. Specialized
// parameters recompute iteratively; integer sweeps should use fib_int and
// friends, which run a plain integer recurrence instead of polynomials.

static FIB_TABLE: OnceLock<Mutex<Vec<BivarPoly>>> = OnceLock::new();
static LUCAS_TABLE: OnceLock<Mutex<Vec<BivarPoly>>> = OnceLock::new();
// Tables of {n}_{s, q^j t}(q), keyed by the shift j; j = 0 is {n}(q).
static FIB_Q_TABLES: OnceLock<Mutex<HashMap<u32, Vec<BivarPoly>>>> = OnceLock::new();

fn extend_table(table: &mut Vec<BivarPoly>, n: u32, step: impl Fn(u32, &BivarPoly, &BivarPoly) -> BivarPoly) {
    while table.len() <= n as usize {
        let k = table.len() as u32;
        let next = step(k, &table[k as usize - 1], &table[k as usize - 2]);
        table.push(next);
    }
}

fn fib_step<'a>(
    s: &'a BivarPoly,
    t: &'a BivarPoly,
) -> impl Fn(u32, &BivarPoly, &BivarPoly) -> BivarPoly + 'a {
    move |_k, p1, p2| s.mul(p1).add(&t.mul(p2))
}

fn symbolic_family(
    cell: &'static OnceLock<Mutex<Vec<BivarPoly>>>,
    seeds: [BivarPoly; 2],
    n: u32,
) -> BivarPoly {
    let lock = cell.get_or_init(|| Mutex::new(seeds.to_vec()));
    let mut table = lock.lock().expect("sequence memo poisoned");
    let s = BivarPoly::var_s();
    let t = BivarPoly::var_t();
    extend_table(&mut table, n, fib_step(&s, &t));
    table[n as usize].clone()
}

// ---------------------------------------------------------------------------
// The polynomial families
// ---------------------------------------------------------------------------

/// The generalized Fibonacci polynomial {n} under the given specialization.
/// Negative n uses {-n} = -{n}/(-t)^n and therefore requires t = 1 or
/// t = -1 to remain a polynomial.
pub fn fib_poly(n: i64, params: &SeqParams) -> Result<BivarPoly, SeqError> {
    if n >= 0 {
        return Ok(fib_poly_nonneg(n as u32, params));
    }
    let m = (-n) as u32;
    let t = params.t.as_ref().ok_or(SeqError::NegativeIndexNeedsUnitT)?;
    let fm = fib_poly_nonneg(m, params);
    if *t == Integer::from(-1) {
        // (-t)^m = 1
        Ok(fm.neg())
    } else if *t == Integer::from(1) {
        // (-t)^m = (-1)^m
        if m % 2 == 0 {
            Ok(fm.neg())
        } else {
            Ok(fm)
        }
    } else {
        Err(SeqError::NegativeIndexNeedsUnitT)
    }
}

fn fib_poly_nonneg(n: u32, params: &SeqParams) -> BivarPoly {
    if params.s.is_none() && params.t.is_none() {
        return symbolic_family(&FIB_TABLE, [BivarPoly::zero(), BivarPoly::one()], n);
    }
    let s = params.s_poly();
    let t = params.t_poly();
    let mut table = vec![BivarPoly::zero(), BivarPoly::one()];
    extend_table(&mut table, n, fib_step(&s, &t));
    table[n as usize].clone()
}

/// The generalized Lucas polynomial <n> under the given specialization.
pub fn lucas_poly(n: u32, params: &SeqParams) -> BivarPoly {
    if params.s.is_none() && params.t.is_none() {
        return symbolic_family(
            &LUCAS_TABLE,
            [BivarPoly::from_i64(2), BivarPoly::var_s()],
            n,
        );
    }
    let s = params.s_poly();
    let t = params.t_poly();
    let mut table = vec![BivarPoly::from_i64(2), s.clone()];
    extend_table(&mut table, n, fib_step(&s, &t));
    table[n as usize].clone()
}

/// The q-analogue {n}(q), satisfying {n}(q) = s {n-1}(q) + t q^(n-2) {n-2}(q).
pub fn fib_q_poly(n: u32, params: &SeqParams) -> BivarPoly {
    if params.is_fully_symbolic() {
        return fib_q_shifted(n, 0);
    }
    let s = params.s_poly();
    let t = params.t_poly();
    let q = params.q_poly();
    let mut table = vec![BivarPoly::zero(), BivarPoly::one()];
    extend_table(&mut table, n, |k, p1, p2| {
        s.mul(p1).add(&t.mul(&q.pow(k - 2)).mul(p2))
    });
    table[n as usize].clone()
}

/// Fully symbolic {n}_{s, q^j t}(q): the q-Fibonacci polynomial with the
/// parameter t replaced by q^j t. The shift enters the recursion as
/// {n} = s {n-1} + t q^(j + n - 2) {n-2}. Shift 0 is plain {n}(q).
pub fn fib_q_shifted(n: u32, j: u32) -> BivarPoly {
    let lock = FIB_Q_TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut tables = lock.lock().expect("q-sequence memo poisoned");
    let table = tables
        .entry(j)
        .or_insert_with(|| vec![BivarPoly::zero(), BivarPoly::one()]);
    let s = BivarPoly::var_s();
    let tq = BivarPoly::var_t();
    let q = BivarPoly::var_q();
    extend_table(table, n, |k, p1, p2| {
        s.mul(p1).add(&tq.mul(&q.pow(j + k - 2)).mul(p2))
    });
    table[n as usize].clone()
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqKind {
    Fib,
    Lucas,
}

/// Monomial expansion of {n} or <n> computed directly from binomial
/// coefficients rather than the recursion:
///
/// ```text
/// {n} = sum_k C(n-k-1, k) s^(n-2k-1) t^k
/// <n> = sum_k n/(n-k) C(n-k, k) s^(n-2k) t^k
/// ```
///
/// Returned as (coefficient, s_exponent, t_exponent) triples in canonical
/// order (descending s exponent). The Lucas coefficient n/(n-k) C(n-k, k)
/// is computed as C(n-k, k) + C(n-k-1, k-1), which is the same integer.
pub fn closed_form_terms(n: u32, kind: SeqKind) -> Vec<(Integer, u32, u32)> {
    let n = n as u64;
    let mut terms = Vec::new();
    match kind {
        SeqKind::Fib => {
            if n == 0 {
                return terms;
            }
            for k in 0..=((n - 1) / 2) {
                let c = binomial(Integer::from(n - k - 1), Integer::from(k));
                terms.push((c, (n - 2 * k - 1) as u32, k as u32));
            }
        }
        SeqKind::Lucas => {
            if n == 0 {
                terms.push((Integer::from(2), 0, 0));
                return terms;
            }
            for k in 0..=(n / 2) {
                let mut c = binomial(Integer::from(n - k), Integer::from(k));
                if k > 0 {
                    c += binomial(Integer::from(n - k - 1), Integer::from(k - 1));
                }
                terms.push((c, (n - 2 * k) as u32, k as u32));
            }
        }
    }
    terms
}

/// Assemble the closed-form terms into a polynomial.
pub fn closed_form_poly(n: u32, kind: SeqKind) -> BivarPoly {
    let mut acc = BivarPoly::zero();
    for (c, se, te) in closed_form_terms(n, kind) {
        acc = acc.add(&BivarPoly::monomial(Monomial::new(se, te, 0), c));
    }
    acc
}

// ---------------------------------------------------------------------------
// Integer fast paths
// ---------------------------------------------------------------------------

/// {n} at integer parameters via the plain integer recurrence.
pub fn fib_int(n: u64, s: &Integer, t: &Integer) -> Integer {
    let (mut a, mut b) = (Integer::zero(), Integer::one());
    for _ in 0..n {
        let next = s * &b + t * &a;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// <n> at integer parameters.
pub fn lucas_int(n: u64, s: &Integer, t: &Integer) -> Integer {
    let (mut a, mut b) = (Integer::from(2), s.clone());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let next = s * &b + t * &a;
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// Infinite iterator over {0}, {1}, {2}, ... at integer parameters.
pub fn fib_int_seq(s: Integer, t: Integer) -> impl Iterator<Item = Integer> {
    let mut a = Integer::zero();
    let mut b = Integer::one();
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(a.clone());
        }
        let next = &s * &b + &t * &a;
        a = std::mem::replace(&mut b, next);
        Some(a.clone())
    })
}

// ---------------------------------------------------------------------------
// Tilings
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TilingKind {
    Linear,
    Circular,
}

/// One tiling of n cells by monominoes and dominoes. Dominoes are recorded
/// by their starting cell; in a circular tiling the domino starting at cell
/// n-1 wraps to cell 0, and starting cells run over 0..n so the two ways a
/// domino can cover both cells of a 2-cycle stay distinct. Monominoes fill
/// every cell no domino covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub kind: TilingKind,
    pub n: u32,
    pub dominoes: Vec<u32>,
}

impl Tiling {
    pub fn monomino_count(&self) -> u32 {
        self.n - 2 * self.dominoes.len() as u32
    }

    /// Weight s^(monominoes) * t^(dominoes). The empty circular tiling
    /// carries weight 2 by convention, matching <0> = 2.
    pub fn weight(&self) -> BivarPoly {
        if self.kind == TilingKind::Circular && self.n == 0 {
            return BivarPoly::from_i64(2);
        }
        BivarPoly::monomial(
            Monomial::new(self.monomino_count(), self.dominoes.len() as u32, 0),
            Integer::one(),
        )
    }
}

/// Visit every tiling, passing the sorted domino start positions.
fn visit_tilings(n: u32, kind: TilingKind, f: &mut impl FnMut(&[u32])) {
    // Backtracking over domino start positions in increasing order, with a
    // bitmask of covered cells. Positions run to n-1 for linear tilings
    // (covering i, i+1) and to n for circular ones (cell n-1 wraps to 0).
    let position_count = match kind {
        TilingKind::Linear => n.saturating_sub(1),
        TilingKind::Circular => {
            if n >= 2 {
                n
            } else {
                0
            }
        }
    };
    let mut chosen: Vec<u32> = Vec::new();
    fn rec(
        pos: u32,
        position_count: u32,
        n: u32,
        covered: u32,
        chosen: &mut Vec<u32>,
        f: &mut impl FnMut(&[u32]),
    ) {
        if pos == position_count {
            f(chosen);
            return;
        }
        // skip this position
        rec(pos + 1, position_count, n, covered, chosen, f);
        // or place a domino here when both cells are free
        let a = pos;
        let b = (pos + 1) % n;
        let mask = (1u32 << a) | (1u32 << b);
        if covered & mask == 0 {
            chosen.push(pos);
            rec(pos + 1, position_count, n, covered | mask, chosen, f);
            chosen.pop();
        }
    }
    if n == 0 {
        f(&[]);
        return;
    }
    rec(0, position_count, n, 0, &mut chosen, f);
}

/// All tilings of n cells, materialized. Capped like tiling_sum.
pub fn enumerate_tilings(n: u32, kind: TilingKind) -> Result<Vec<Tiling>, SeqError> {
    if n > TILING_CAP {
        return Err(SeqError::TilingTooLarge { n, cap: TILING_CAP });
    }
    let mut out = Vec::new();
    visit_tilings(n, kind, &mut |dominoes| {
        out.push(Tiling {
            kind,
            n,
            dominoes: dominoes.to_vec(),
        });
    });
    Ok(out)
}

/// Total weight of all tilings of n cells: equals {n+1} for linear tilings
/// and <n> for circular ones. This is the combinatorial ground truth the
/// polynomial recursions are tested against.
pub fn tiling_sum(n: u32, kind: TilingKind) -> Result<BivarPoly, SeqError> {
    if n > TILING_CAP {
        return Err(SeqError::TilingTooLarge { n, cap: TILING_CAP });
    }
    if kind == TilingKind::Circular && n == 0 {
        return Ok(BivarPoly::from_i64(2));
    }
    // Sum s^(n-2d) t^d over tilings without materializing them.
    let mut acc = BivarPoly::zero();
    visit_tilings(n, kind, &mut |dominoes| {
        let d = dominoes.len() as u32;
        acc = acc.add(&BivarPoly::monomial(
            Monomial::new(n - 2 * d, d, 0),
            Integer::one(),
        ));
    });
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> SeqParams {
        SeqParams::symbolic()
    }

    fn fib(n: i64) -> BivarPoly {
        fib_poly(n, &sym()).unwrap()
    }

    #[test]
    fn fib_small_values() {
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        assert!(fib(0).is_zero());
        assert!(fib(1).is_one());
        assert_eq!(fib(2), s);
        assert_eq!(fib(3), s.pow(2).add(&t));
        assert_eq!(fib(4), s.pow(3).add(&s.mul(&t).mul_scalar(&2.into())));
    }

    #[test]
    fn lucas_small_values() {
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        assert_eq!(lucas_poly(0, &sym()), BivarPoly::from_i64(2));
        assert_eq!(lucas_poly(1, &sym()), s);
        assert_eq!(lucas_poly(2, &sym()), s.pow(2).add(&t.mul_scalar(&2.into())));
        assert_eq!(
            lucas_poly(3, &sym()),
            s.pow(3).add(&s.mul(&t).mul_scalar(&3.into()))
        );
    }

    #[test]
    fn recursion_holds_symbolically() {
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        for n in 2..60 {
            let expected = s.mul(&fib(n - 1)).add(&t.mul(&fib(n - 2)));
            assert_eq!(fib(n), expected, "recursion fails at n = {n}");
        }
    }

    #[test]
    fn negative_indices_at_unit_t() {
        // t = -1: {-n} = -{n}
        let p = SeqParams {
            s: None,
            t: Some(Integer::from(-1)),
            q: None,
        };
        for n in 1..10 {
            let pos = fib_poly(n, &p).unwrap();
            let neg = fib_poly(-n, &p).unwrap();
            assert_eq!(neg, pos.neg());
        }
        // t = 1: {-n} = (-1)^(n+1) {n}
        let p1 = SeqParams {
            s: None,
            t: Some(Integer::from(1)),
            q: None,
        };
        for n in 1..10 {
            let pos = fib_poly(n, &p1).unwrap();
            let neg = fib_poly(-n, &p1).unwrap();
            let expected = if n % 2 == 0 { pos.neg() } else { pos };
            assert_eq!(neg, expected);
        }
        // symbolic t refuses
        assert_eq!(fib_poly(-1, &sym()), Err(SeqError::NegativeIndexNeedsUnitT));
    }

    #[test]
    fn negative_index_satisfies_backward_recursion() {
        // {k-2} = ({k} - s{k-1})/t checked as {k} = s{k-1} + t{k-2}
        // across the negative range, t = -1.
        let p = SeqParams {
            s: None,
            t: Some(Integer::from(-1)),
            q: None,
        };
        let s = BivarPoly::var_s();
        let t = BivarPoly::constant(Integer::from(-1));
        for k in -8i64..2 {
            let lhs = fib_poly(k, &p).unwrap();
            let rhs = s
                .mul(&fib_poly(k - 1, &p).unwrap())
                .add(&t.mul(&fib_poly(k - 2, &p).unwrap()));
            assert_eq!(lhs, rhs, "backward recursion fails at k = {k}");
        }
    }

    #[test]
    fn q_analogue_small_values_and_collapse() {
        let s = BivarPoly::var_s();
        let t = BivarPoly::var_t();
        let q = BivarPoly::var_q();
        assert_eq!(fib_q_poly(2, &sym()), s);
        assert_eq!(fib_q_poly(3, &sym()), s.pow(2).add(&t.mul(&q)));
        // q = 1 collapses to the plain family
        let q1 = SeqParams {
            s: None,
            t: None,
            q: Some(Integer::one()),
        };
        for n in 0..14 {
            assert_eq!(fib_q_poly(n, &q1), fib(n as i64));
        }
    }

    #[test]
    fn q_shift_specializes_correctly() {
        // {n}_{s, q^j t}(q) at j = 0 is {n}(q)
        for n in 0..10 {
            assert_eq!(fib_q_shifted(n, 0), fib_q_poly(n, &sym()));
        }
        // and substituting t -> q^j t in {n}(q) matches the shifted table
        let t_shift = BivarPoly::var_t().mul(&BivarPoly::var_q().pow(2));
        for n in 0..10 {
            let via_subst = fib_q_poly(n, &sym()).substitute(
                &BivarPoly::var_s(),
                &t_shift,
                &BivarPoly::var_q(),
            );
            assert_eq!(fib_q_shifted(n, 2), via_subst, "shift mismatch at n = {n}");
        }
    }

    #[test]
    fn closed_forms_match_recursion() {
        for n in 0..40 {
            assert_eq!(closed_form_poly(n, SeqKind::Fib), fib(n as i64), "fib n = {n}");
            assert_eq!(
                closed_form_poly(n, SeqKind::Lucas),
                lucas_poly(n, &sym()),
                "lucas n = {n}"
            );
        }
    }

    #[test]
    fn closed_form_terms_shape() {
        // {4} = s^3 + 2 s t
        let terms = closed_form_terms(4, SeqKind::Fib);
        assert_eq!(
            terms,
            vec![(Integer::from(1), 3, 0), (Integer::from(2), 1, 1)]
        );
        // <5> = s^5 + 5 s^3 t + 5 s t^2
        let terms = closed_form_terms(5, SeqKind::Lucas);
        assert_eq!(
            terms,
            vec![
                (Integer::from(1), 5, 0),
                (Integer::from(5), 3, 1),
                (Integer::from(5), 1, 2)
            ]
        );
    }

    #[test]
    fn integer_fast_path_matches_polynomials() {
        let one = Integer::one();
        for n in 0..30u64 {
            let poly_val = fib(n as i64).eval_int(&one, &one, None).unwrap();
            assert_eq!(fib_int(n, &one, &one), poly_val);
            let lucas_val = lucas_poly(n as u32, &sym())
                .eval_int(&one, &one, None)
                .unwrap();
            assert_eq!(lucas_int(n, &one, &one), lucas_val);
        }
        // classic checks: F_10 = 55, L_10 = 123
        assert_eq!(fib_int(10, &one, &one), Integer::from(55));
        assert_eq!(lucas_int(10, &one, &one), Integer::from(123));
    }

    #[test]
    fn int_seq_iterator_agrees() {
        let s = Integer::from(2);
        let t = Integer::from(3);
        let seq: Vec<Integer> = fib_int_seq(s.clone(), t.clone()).take(12).collect();
        for (n, v) in seq.iter().enumerate() {
            assert_eq!(*v, fib_int(n as u64, &s, &t));
        }
    }

    #[test]
    fn linear_tilings_of_three_cells() {
        let tilings = enumerate_tilings(3, TilingKind::Linear).unwrap();
        // mmm, dm, md
        assert_eq!(tilings.len(), 3);
        let sum = tiling_sum(3, TilingKind::Linear).unwrap();
        assert_eq!(sum, fib(4));
    }

    #[test]
    fn circular_tilings_of_small_cycles() {
        // n = 1: a single monomino; no domino fits
        let tilings = enumerate_tilings(1, TilingKind::Circular).unwrap();
        assert_eq!(tilings.len(), 1);
        // n = 2: two monominoes plus two distinct dominoes
        let tilings = enumerate_tilings(2, TilingKind::Circular).unwrap();
        assert_eq!(tilings.len(), 3);
        assert_eq!(
            tiling_sum(2, TilingKind::Circular).unwrap(),
            lucas_poly(2, &sym())
        );
        // n = 3: mmm plus three single-domino tilings
        let tilings = enumerate_tilings(3, TilingKind::Circular).unwrap();
        assert_eq!(tilings.len(), 4);
    }

    #[test]
    fn empty_tilings() {
        assert!(tiling_sum(0, TilingKind::Linear).unwrap().is_one());
        assert_eq!(
            tiling_sum(0, TilingKind::Circular).unwrap(),
            BivarPoly::from_i64(2)
        );
    }

    #[test]
    fn tiling_cap_enforced() {
        assert_eq!(
            tiling_sum(25, TilingKind::Linear),
            Err(SeqError::TilingTooLarge { n: 25, cap: 24 })
        );
    }

    #[test]
    fn specialized_params_constant_polys() {
        let p = SeqParams::with_st(1, 1);
        let f10 = fib_poly(10, &p).unwrap();
        assert_eq!(f10.as_constant().unwrap(), Integer::from(55));
        // partial specialization: s pinned, t symbolic
        let partial = SeqParams {
            s: Some(Integer::from(3)),
            t: None,
            q: None,
        };
        let f3 = fib_poly(3, &partial).unwrap();
        assert_eq!(
            f3,
            BivarPoly::from_i64(9).add(&BivarPoly::var_t())
        );
    }
}
