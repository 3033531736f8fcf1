//! A registry of verifiable identities for the {n}, <n> families and their
//! binomial coefficients.
//!
//! Three verification modes are used, by decreasing strength:
//!
//! * symbolic: both sides are built in Z[s,t,q] (or its fraction field) and
//!   compared exactly;
//! * quadext: both sides live in the quadratic extension Q(s,t)[Delta] with
//!   Delta^2 = s^2+4t, where X = (s+Delta)/2 and Y = (s-Delta)/2 are exact
//!   field elements, so X,Y-identities are still proved, not sampled;
//! * specialized: both sides are evaluated at integer points (s,t) chosen so
//!   the discriminant is a perfect square, making X and Y rational. The
//!   point grid is sized against the degree of the identity (25 points on a
//!   5 x 5 grid of (s, k) values, with t = (k^2-s^2)/4 injective in k^2),
//!   so a full pass on a grid exceeding the degree bound in each direction
//!   is a proof; where an identity's degree outgrows the grid, a quadext
//!   pass provides the rigor and the grid serves as an independent check.

use num_integer::Integer as IntegerTrait;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{
    BivarPoly, Integer, Monomial, QuadExtElem, Rational, RationalFunction, Var,
};
use crate::exactmath::poly_gcd;
use crate::fibonomials::{catalan, fibonomial, gaussian_binomial};
use crate::sequences::{
    fib_int, fib_poly, fib_q_shifted, lucas_int, lucas_poly, SeqParams,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("no identity named `{0}` in the registry")]
    UnknownId(String),
    #[error("identity `{id}` does not support mode {mode:?}")]
    UnsupportedMode { id: String, mode: Mode },
    #[error("{0}")]
    BadInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Mode {
    Symbolic,
    QuadExt,
    Specialized,
}

/// Index bounds for a verification sweep. Each identity interprets the
/// fields it needs (an identity in n alone ignores m, k, r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Ranges {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub r: u32,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges { n: 10, m: 10, k: 10, r: 10 }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Counterexample {
    /// Which parameters produced the mismatch, in re-checkable form.
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Verdict {
    pub id: &'static str,
    pub ranges: Ranges,
    pub modes: Vec<Mode>,
    pub cases: u64,
    /// Power-series identities are compared up to this order.
    pub truncation_order: Option<u32>,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub struct IdentitySpec {
    pub id: &'static str,
    /// The statement being verified, in the text notation used throughout
    /// this crate ({n} Fibonacci, <n> Lucas, B(n,k) Fibonomial).
    pub statement: &'static str,
    pub modes: &'static [Mode],
    run: fn(&Ranges, Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>),
}

// ---------------------------------------------------------------------------
// Case accounting
// ---------------------------------------------------------------------------

struct Checker {
    cases: u64,
    counterexample: Option<Counterexample>,
}

impl Checker {
    fn new() -> Self {
        Checker { cases: 0, counterexample: None }
    }

    fn done(&self) -> bool {
        self.counterexample.is_some()
    }

    fn record(&mut self, ok: bool, loc: impl FnOnce() -> (String, String, String)) {
        if self.done() {
            return;
        }
        self.cases += 1;
        if !ok {
            let (location, lhs, rhs) = loc();
            self.counterexample = Some(Counterexample { location, lhs, rhs });
        }
    }

    fn poly(&mut self, loc: impl FnOnce() -> String, lhs: &BivarPoly, rhs: &BivarPoly) {
        self.record(lhs == rhs, || (loc(), lhs.to_text(), rhs.to_text()));
    }

    fn ratfunc(
        &mut self,
        loc: impl FnOnce() -> String,
        lhs: &RationalFunction,
        rhs: &RationalFunction,
    ) {
        self.record(lhs == rhs, || (loc(), lhs.to_text(), rhs.to_text()));
    }

    fn quad(&mut self, loc: impl FnOnce() -> String, lhs: &QuadExtElem, rhs: &QuadExtElem) {
        self.record(lhs == rhs, || (loc(), lhs.to_text(), rhs.to_text()));
    }

    fn rational(&mut self, loc: impl FnOnce() -> String, lhs: &Rational, rhs: &Rational) {
        self.record(lhs == rhs, || (loc(), lhs.to_string(), rhs.to_string()));
    }
}

fn wants(filter: Option<Mode>, mode: Mode) -> bool {
    filter.map_or(true, |m| m == mode)
}

// ---------------------------------------------------------------------------
// Shared building blocks
// ---------------------------------------------------------------------------

fn sym() -> SeqParams {
    SeqParams::symbolic()
}

fn fib(n: i64) -> BivarPoly {
    fib_poly(n, &sym()).expect("symbolic nonnegative index")
}

fn lucas(n: u32) -> BivarPoly {
    lucas_poly(n, &sym())
}

fn binom_poly(n: u32, k: i64) -> BivarPoly {
    fibonomial(n, k, &sym())
        .expect("symbolic parameters never degenerate")
        .as_poly()
        .expect("Fibonomials are polynomials")
}

fn lift(p: &BivarPoly) -> QuadExtElem {
    QuadExtElem::from_poly(p.clone())
}

fn neg_t_pow(e: u32) -> BivarPoly {
    BivarPoly::var_t().neg().pow(e)
}

/// An integer point where the discriminant s^2+4t is a perfect square k^2,
/// so X = (s+k)/2 and Y = (s-k)/2 are rational (here integer) numbers.
struct SpecPoint {
    s: Integer,
    t: Integer,
    x: Rational,
    y: Rational,
}

impl SpecPoint {
    fn s_rat(&self) -> Rational {
        Rational::from_integer(self.s.clone())
    }

    fn t_rat(&self) -> Rational {
        Rational::from_integer(self.t.clone())
    }
}

/// 25 points (s, k) with s and k odd and k > s, giving t = (k^2-s^2)/4 > 0.
/// Five distinct values in each coordinate; t is injective in k for fixed
/// s, so a polynomial identity that vanishes on the whole grid and has
/// degree below 5 in s and below 5 in t is identically zero. Higher-degree
/// identities use this grid as a cross-check of their quadext proof.
fn square_disc_points() -> Vec<SpecPoint> {
    let mut pts = Vec::new();
    for s in [1i64, 3, 5, 7, 9] {
        for dk in [2i64, 4, 6, 8, 10] {
            let k = s + dk;
            let t = (k * k - s * s) / 4;
            pts.push(SpecPoint {
                s: Integer::from(s),
                t: Integer::from(t),
                x: Rational::from_integer(Integer::from((s + k) / 2)),
                y: Rational::from_integer(Integer::from((s - k) / 2)),
            });
        }
    }
    pts
}

fn fib_rat(n: u64, pt: &SpecPoint) -> Rational {
    Rational::from_integer(fib_int(n, &pt.s, &pt.t))
}

fn binom_rat(n: u32, k: i64, pt: &SpecPoint) -> Rational {
    binom_poly(n, k)
        .eval(&pt.s_rat(), &pt.t_rat(), None)
        .expect("no q variable here")
}

fn rat_pow(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Gaussian binomial coefficient list: entry j is the coefficient of q^j.
fn gaussian_coeffs(n: u32, k: i64) -> Vec<Integer> {
    gaussian_binomial(n, k)
        .coeffs_in(Var::Q)
        .into_iter()
        .map(|c| c.as_constant().expect("Gaussian binomials live in Z[q]"))
        .collect()
}

// ---------------------------------------------------------------------------
// Registry rows
// ---------------------------------------------------------------------------

fn run_addition(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let t = BivarPoly::var_t();
    for m in 1..=r.m as i64 {
        for n in 0..=r.n as i64 {
            if c.done() {
                break;
            }
            let lhs = fib(m + n);
            let rhs = fib(m)
                .mul(&fib(n + 1))
                .add(&t.mul(&fib(m - 1)).mul(&fib(n)));
            c.poly(|| format!("m={m}, n={n}"), &lhs, &rhs);
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_lucas_bridge(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let t = BivarPoly::var_t();
    for n in 1..=r.n as i64 {
        let lhs = lucas(n as u32);
        let rhs = fib(n + 1).add(&t.mul(&fib(n - 1)));
        c.poly(|| format!("<n> = {{n+1}} + t{{n-1}} at n={n}"), &lhs, &rhs);
    }
    for m in 0..=r.m as i64 {
        for n in 0..=r.n as i64 {
            if c.done() {
                break;
            }
            let lhs = fib(m + n).mul_scalar(&Integer::from(2));
            let rhs = lucas(m as u32)
                .mul(&fib(n))
                .add(&fib(m).mul(&lucas(n as u32)));
            c.poly(|| format!("2{{m+n}} at m={m}, n={n}"), &lhs, &rhs);
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_binet(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let x = QuadExtElem::x();
    let y = QuadExtElem::y();
    let delta = QuadExtElem::delta();
    let mut xp = QuadExtElem::one();
    let mut yp = QuadExtElem::one();
    for n in 0..=r.n {
        let diff = xp.sub(&yp);
        let sum = xp.add(&yp);
        c.quad(
            || format!("Delta*{{n}} = X^n - Y^n at n={n}"),
            &delta.mul(&lift(&fib(n as i64))),
            &diff,
        );
        c.quad(|| format!("<n> = X^n + Y^n at n={n}"), &lift(&lucas(n)), &sum);
        if c.done() {
            break;
        }
        xp = xp.mul(&x);
        yp = yp.mul(&y);
    }
    (c.cases, None, c.counterexample)
}

fn run_q_bridge(r: &Ranges, f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    if wants(f, Mode::QuadExt) {
        let x = QuadExtElem::x();
        let y = QuadExtElem::y();
        for n in 1..=r.n {
            if c.done() {
                break;
            }
            // Y^(n-1) [n]_{X/Y} expands to the geometric sum over X^j Y^(n-1-j)
            let mut rhs = QuadExtElem::zero();
            for j in 0..n {
                rhs = rhs.add(&x.pow(j as u64).mul(&y.pow((n - 1 - j) as u64)));
            }
            c.quad(|| format!("n={n}"), &lift(&fib(n as i64)), &rhs);
        }
    }
    if wants(f, Mode::Specialized) {
        for pt in square_disc_points() {
            for n in 1..=r.n {
                if c.done() {
                    break;
                }
                let mut rhs = Rational::zero();
                for j in 0..n {
                    rhs += rat_pow(&pt.x, j) * rat_pow(&pt.y, n - 1 - j);
                }
                let lhs = fib_rat(n as u64, &pt);
                c.rational(|| format!("n={n} at s={}, t={}", pt.s, pt.t), &lhs, &rhs);
            }
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_gau_bridge(r: &Ranges, f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    if wants(f, Mode::QuadExt) {
        let x = QuadExtElem::x();
        let y = QuadExtElem::y();
        for n in 0..=r.n {
            for k in 0..=n as i64 {
                if c.done() {
                    break;
                }
                let cap = k as u32 * (n - k as u32);
                let coeffs = gaussian_coeffs(n, k);
                let mut rhs = QuadExtElem::zero();
                for (j, cj) in coeffs.iter().enumerate() {
                    let term = x
                        .pow(j as u64)
                        .mul(&y.pow((cap as usize - j) as u64))
                        .mul(&QuadExtElem::from_poly(BivarPoly::constant(cj.clone())));
                    rhs = rhs.add(&term);
                }
                c.quad(|| format!("n={n}, k={k}"), &lift(&binom_poly(n, k)), &rhs);
            }
        }
    }
    if wants(f, Mode::Specialized) {
        for pt in square_disc_points() {
            for n in 0..=r.n.min(8) {
                for k in 0..=n as i64 {
                    if c.done() {
                        break;
                    }
                    let cap = k as u32 * (n - k as u32);
                    let mut rhs = Rational::zero();
                    for (j, cj) in gaussian_coeffs(n, k).iter().enumerate() {
                        rhs += Rational::from_integer(cj.clone())
                            * rat_pow(&pt.x, j as u32)
                            * rat_pow(&pt.y, cap - j as u32);
                    }
                    let lhs = binom_rat(n, k, &pt);
                    c.rational(
                        || format!("n={n}, k={k} at s={}, t={}", pt.s, pt.t),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_gcd(r: &Ranges, f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    if wants(f, Mode::Symbolic) {
        for m in 1..=r.m {
            for n in 1..=r.n {
                if c.done() {
                    break;
                }
                let g = poly_gcd(&fib(m as i64), &fib(n as i64));
                let expected = fib(m.gcd(&n) as i64);
                c.poly(|| format!("gcd at m={m}, n={n}"), &g, &expected);
                // divisibility both ways: {m} | {n} exactly when m | n
                let divides = fib(n as i64).div_exact(&fib(m as i64)).is_ok();
                c.record(divides == (n % m == 0), || {
                    (
                        format!("divisibility at m={m}, n={n}"),
                        format!("{{m}}|{{n}}: {divides}"),
                        format!("m|n: {}", n % m == 0),
                    )
                });
            }
        }
    }
    if wants(f, Mode::Specialized) {
        // strong divisibility at integer points needs gcd(s,t) = 1
        let pts = [(1i64, 1i64), (2, 1), (3, 2), (2, 3), (5, 3), (4, 1), (2, -1), (3, -2)];
        for (s0, t0) in pts {
            let s = Integer::from(s0);
            let t = Integer::from(t0);
            for m in 1..=r.m as u64 {
                for n in 1..=r.n as u64 {
                    if c.done() {
                        break;
                    }
                    let g = fib_int(m, &s, &t).gcd(&fib_int(n, &s, &t));
                    let expected = fib_int(m.gcd(&n), &s, &t).abs();
                    c.record(g == expected, || {
                        (
                            format!("integer gcd at s={s0}, t={t0}, m={m}, n={n}"),
                            g.to_string(),
                            expected.to_string(),
                        )
                    });
                }
            }
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_rr2(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let x = QuadExtElem::x();
    let y = QuadExtElem::y();
    for m in 1..=r.m {
        for n in 1..=r.n {
            if c.done() {
                break;
            }
            let lhs = lift(&binom_poly(m + n, m as i64));
            let rhs = y
                .pow(n as u64)
                .mul(&lift(&binom_poly(n + m - 1, m as i64 - 1)))
                .add(&x.pow(m as u64).mul(&lift(&binom_poly(m + n - 1, m as i64))));
            c.quad(|| format!("m={m}, n={n}"), &lhs, &rhs);
        }
    }
    (c.cases, None, c.counterexample)
}

/// Coefficient list (in z) of prod_{j=0}^{n-1} (1 + e * X^(n-1-j) Y^j z)
/// where e is +1 or -1, in the quadratic extension.
fn xy_product_coeffs(n: u32, negate: bool) -> Vec<QuadExtElem> {
    let x = QuadExtElem::x();
    let y = QuadExtElem::y();
    let mut coeffs = vec![QuadExtElem::one()];
    for j in 0..n {
        let mut g = x.pow((n - 1 - j) as u64).mul(&y.pow(j as u64));
        if negate {
            g = g.neg();
        }
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        next.push(coeffs[0].clone());
        for i in 1..=coeffs.len() {
            let mut v = g.mul(&coeffs[i - 1]);
            if i < coeffs.len() {
                v = v.add(&coeffs[i]);
            }
            next.push(v);
        }
        coeffs = next;
    }
    coeffs
}

fn xy_product_coeffs_rat(n: u32, negate: bool, pt: &SpecPoint) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for j in 0..n {
        let mut g = rat_pow(&pt.x, n - 1 - j) * rat_pow(&pt.y, j);
        if negate {
            g = -g;
        }
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        next.push(coeffs[0].clone());
        for i in 1..=coeffs.len() {
            let mut v = g.clone() * coeffs[i - 1].clone();
            if i < coeffs.len() {
                v += coeffs[i].clone();
            }
            next.push(v);
        }
        coeffs = next;
    }
    coeffs
}

fn binom_half(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

fn run_binomial_thm(r: &Ranges, f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let nmax = r.n.min(10);
    if wants(f, Mode::QuadExt) {
        for n in 1..=nmax {
            let coeffs = xy_product_coeffs(n, false);
            for (k, actual) in coeffs.iter().enumerate() {
                if c.done() {
                    break;
                }
                let expected =
                    lift(&neg_t_pow(binom_half(k as u32)).mul(&binom_poly(n, k as i64)));
                c.quad(|| format!("n={n}, z^{k}"), actual, &expected);
            }
        }
    }
    if wants(f, Mode::Specialized) {
        for pt in square_disc_points() {
            for n in 1..=nmax.min(8) {
                let coeffs = xy_product_coeffs_rat(n, false, &pt);
                for (k, actual) in coeffs.iter().enumerate() {
                    if c.done() {
                        break;
                    }
                    let neg_t = -pt.t_rat();
                    let expected =
                        rat_pow(&neg_t, binom_half(k as u32)) * binom_rat(n, k as i64, &pt);
                    c.rational(
                        || format!("n={n}, z^{k} at s={}, t={}", pt.s, pt.t),
                        actual,
                        &expected,
                    );
                }
            }
        }
    }
    (c.cases, None, c.counterexample)
}

const SERIES_TRUNCATION: u32 = 16;

fn run_neg_binomial_thm(
    r: &Ranges,
    f: Option<Mode>,
) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let kk = SERIES_TRUNCATION as usize;
    let nmax = r.n.min(5);
    if wants(f, Mode::QuadExt) {
        for n in 1..=nmax {
            // series inverse of prod (1 - X^(n-1-j) Y^j z) up to z^K
            let p = xy_product_coeffs(n, true);
            let mut inv: Vec<QuadExtElem> = vec![QuadExtElem::one()];
            for m in 1..=kk {
                let mut acc = QuadExtElem::zero();
                for i in 1..=m.min(n as usize) {
                    acc = acc.add(&p[i].mul(&inv[m - i]));
                }
                inv.push(acc.neg());
            }
            for (m, actual) in inv.iter().enumerate() {
                if c.done() {
                    break;
                }
                // at m = 0 this is B(n-1, 0) = 1, the constant term
                let expected = lift(&binom_poly(n + m as u32 - 1, m as i64));
                c.quad(|| format!("n={n}, z^{m}"), actual, &expected);
            }
        }
    }
    if wants(f, Mode::Specialized) {
        for pt in square_disc_points() {
            for n in 1..=nmax {
                let p = xy_product_coeffs_rat(n, true, &pt);
                let mut inv: Vec<Rational> = vec![Rational::one()];
                for m in 1..=kk {
                    let mut acc = Rational::zero();
                    for i in 1..=m.min(n as usize) {
                        acc += p[i].clone() * inv[m - i].clone();
                    }
                    inv.push(-acc);
                }
                for (m, actual) in inv.iter().enumerate().skip(1) {
                    if c.done() {
                        break;
                    }
                    let expected = binom_rat(n + m as u32 - 1, m as i64, &pt);
                    c.rational(
                        || format!("n={n}, z^{m} at s={}, t={}", pt.s, pt.t),
                        actual,
                        &expected,
                    );
                }
            }
        }
    }
    (c.cases, Some(SERIES_TRUNCATION), c.counterexample)
}

fn run_neg_index(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let s = RationalFunction::from_poly(BivarPoly::var_s());
    let t = RationalFunction::from_poly(BivarPoly::var_t());
    // walk the recursion backwards: g(k) = (g(k+2) - s g(k+1)) / t
    let mut g_hi = RationalFunction::one(); // g(1)
    let mut g_lo = RationalFunction::zero(); // g(0)
    for n in 1..=r.n {
        let next = g_hi
            .sub(&s.mul(&g_lo))
            .div(&t)
            .expect("t is not the zero polynomial");
        g_hi = g_lo;
        g_lo = next; // now g_lo = g(-n)
        let sign = if n % 2 == 0 { -1 } else { 1 };
        let expected = RationalFunction::new(
            fib(n as i64).mul_scalar(&Integer::from(sign)),
            BivarPoly::var_t().pow(n),
        )
        .expect("t^n is nonzero");
        c.ratfunc(|| format!("n={n}"), &g_lo, &expected);
        if c.done() {
            break;
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_row_sums(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let p = SeqParams {
        s: None,
        t: Some(Integer::from(-1)),
        q: None,
    };
    for n in 1..=r.n {
        if c.done() {
            break;
        }
        let mut plain = BivarPoly::zero();
        let mut alternating = BivarPoly::zero();
        for k in 0..=n as i64 {
            let b = fibonomial(n, k, &p)
                .expect("t = -1 with symbolic s stays nondegenerate")
                .as_poly()
                .expect("polynomial at t = -1");
            plain = plain.add(&b);
            alternating = if k % 2 == 0 {
                alternating.add(&b)
            } else {
                alternating.sub(&b)
            };
        }
        let mut prod_plus = BivarPoly::one();
        let mut prod_minus = BivarPoly::one();
        let two = BivarPoly::from_i64(2);
        for i in 1..=n / 2 {
            let l = lucas_poly(n - 2 * i + 1, &p);
            prod_plus = prod_plus.mul(&two.add(&l));
            prod_minus = prod_minus.mul(&two.sub(&l));
        }
        if n % 2 == 1 {
            prod_plus = prod_plus.mul_scalar(&Integer::from(2));
            prod_minus = BivarPoly::zero();
        }
        c.poly(|| format!("row sum at n={n}"), &plain, &prod_plus);
        c.poly(|| format!("alternating row sum at n={n}"), &alternating, &prod_minus);
    }
    (c.cases, None, c.counterexample)
}

fn run_chu_vandermonde(
    r: &Ranges,
    f: Option<Mode>,
) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let mmax = r.m.min(5);
    let nmax = r.n.min(5);
    let kmax = r.k.min(10);
    if wants(f, Mode::QuadExt) {
        let x = QuadExtElem::x();
        let y = QuadExtElem::y();
        let neg_t = RationalFunction::from_poly(BivarPoly::var_t().neg());
        for m in 1..=mmax {
            for n in 1..=nmax {
                for k in 0..=kmax.min(m + n) as i64 {
                    if c.done() {
                        break;
                    }
                    let mut rhs = QuadExtElem::zero();
                    for i in 0..=k {
                        let exp = i * (i - k); // always <= 0
                        let scale = neg_t.pow(exp).expect("-t is invertible");
                        let term = x
                            .pow((m as i64 * i) as u64)
                            .mul(&y.pow((n as i64 * (k - i)) as u64))
                            .mul(&lift(&binom_poly(m, k - i)))
                            .mul(&lift(&binom_poly(n, i)))
                            .mul_ratfunc(&scale);
                        rhs = rhs.add(&term);
                    }
                    let lhs = lift(&binom_poly(m + n, k));
                    c.quad(|| format!("m={m}, n={n}, k={k}"), &lhs, &rhs);
                }
            }
        }
    }
    if wants(f, Mode::Specialized) {
        for pt in square_disc_points() {
            for m in 1..=mmax.min(4) {
                for n in 1..=nmax.min(4) {
                    for k in 0..=kmax.min(m + n).min(6) as i64 {
                        if c.done() {
                            break;
                        }
                        let neg_t = -pt.t_rat();
                        let mut rhs = Rational::zero();
                        for i in 0..=k {
                            let down = (i * (k - i)) as u32;
                            // (-t)^(i(i-k)) moved to the other side stays exact:
                            // divide by (-t)^(i(k-i)), t > 0 on this grid
                            let term = rat_pow(&pt.x, (m as i64 * i) as u32)
                                * rat_pow(&pt.y, (n as i64 * (k - i)) as u32)
                                * binom_rat(m, k - i, &pt)
                                * binom_rat(n, i, &pt)
                                / rat_pow(&neg_t, down);
                            rhs += term;
                        }
                        let lhs = binom_rat(m + n, k, &pt);
                        c.rational(
                            || format!("m={m}, n={n}, k={k} at s={}, t={}", pt.s, pt.t),
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_euler_cassini(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let q = BivarPoly::var_q();
    for n in 1..=r.n {
        for m in 1..=r.m.min(6) {
            if c.done() {
                break;
            }
            let lhs = fib_q_shifted(n, 0)
                .mul(&fib_q_shifted(n + m - 1, 1))
                .sub(&fib_q_shifted(n - 1, 1).mul(&fib_q_shifted(n + m, 0)));
            let rhs = neg_t_pow(n - 1)
                .mul(&q.pow(binom_half(n)))
                .mul(&fib_q_shifted(m, n));
            c.poly(|| format!("n={n}, m={m}"), &lhs, &rhs);
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_gec(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let rr = r.r.min(4) as i64;
    let mm = r.m.min(6) as i64;
    let nn = r.n.min(6) as i64;
    for rad in 1..=rr {
        for m in 1..=mm {
            for n in 1..=nn {
                if c.done() {
                    break;
                }
                let lhs = fib(rad * n)
                    .mul(&fib(rad * (n + m - 1)))
                    .sub(&fib(rad * (n - 1)).mul(&fib(rad * (n + m))));
                let rhs = neg_t_pow((rad * (n - 1)) as u32)
                    .mul(&fib(rad))
                    .mul(&fib(rad * m));
                c.poly(|| format!("r={rad}, m={m}, n={n}"), &lhs, &rhs);
            }
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_ekhad_catalan(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let t = BivarPoly::var_t();
    for n in 0..=r.n {
        if c.done() {
            break;
        }
        let cat = catalan(n, &sym()).expect("symbolic Catalan");
        // quotient route, which is the definition
        let quotient = binom_poly(2 * n, n as i64)
            .div_exact(&fib(n as i64 + 1))
            .expect("{n+1} divides the central Fibonomial");
        c.poly(|| format!("C vs quotient at n={n}"), &cat, &quotient);
        if n >= 2 {
            let two_term = binom_poly(2 * n - 1, n as i64 - 1)
                .add(&t.mul(&binom_poly(2 * n - 1, n as i64 - 2)));
            c.poly(|| format!("C vs two-term at n={n}"), &cat, &two_term);
        }
        // coefficients are nonnegative integers
        let nonneg = cat.terms_desc().all(|(_, coeff)| !coeff.is_negative());
        c.record(nonneg, || {
            (format!("nonnegative coefficients at n={n}"), cat.to_text(), "all coefficients >= 0".into())
        });
    }
    (c.cases, None, c.counterexample)
}

fn run_binomial_transform(
    r: &Ranges,
    _f: Option<Mode>,
) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let s = BivarPoly::var_s();
    let t = BivarPoly::var_t();
    let q = BivarPoly::var_q();
    let s_image = s.add(&BivarPoly::from_i64(2));
    let t_image = t.sub(&s).sub(&BivarPoly::one());
    for n in 0..=r.n {
        if c.done() {
            break;
        }
        let mut lhs = BivarPoly::zero();
        for k in 0..=n {
            let choose = num_integer::binomial(Integer::from(n), Integer::from(k));
            lhs = lhs.add(&fib(k as i64).mul_scalar(&choose));
        }
        let rhs = fib(n as i64).substitute(&s_image, &t_image, &q);
        c.poly(|| format!("n={n}"), &lhs, &rhs);
    }
    // Fibonacci corollary: sum_k C(n,k) F_k = F_2n
    let one = Integer::one();
    for n in 0..=(2 * r.n as u64).min(40) {
        if c.done() {
            break;
        }
        let mut lhs = Integer::zero();
        for k in 0..=n {
            lhs += num_integer::binomial(Integer::from(n), Integer::from(k))
                * fib_int(k, &one, &one);
        }
        let rhs = fib_int(2 * n, &one, &one);
        c.record(lhs == rhs, || {
            (format!("Fibonacci case at n={n}"), lhs.to_string(), rhs.to_string())
        });
    }
    (c.cases, None, c.counterexample)
}

fn run_scaling(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let s2 = BivarPoly::var_s().mul_scalar(&Integer::from(2));
    let t4 = BivarPoly::var_t().mul_scalar(&Integer::from(4));
    let q = BivarPoly::var_q();
    for n in 1..=r.n {
        if c.done() {
            break;
        }
        let lhs = fib(n as i64).substitute(&s2, &t4, &q);
        let rhs = fib(n as i64).mul_scalar(&Integer::from(2).pow(n - 1));
        c.poly(|| format!("n={n}"), &lhs, &rhs);
    }
    (c.cases, None, c.counterexample)
}

fn run_t1_square(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let p = SeqParams {
        s: None,
        t: Some(Integer::one()),
        q: None,
    };
    let s = BivarPoly::var_s();
    for n in 1..=r.n as i64 {
        if c.done() {
            break;
        }
        let fname = |k: i64| fib_poly(k, &p).expect("nonnegative");
        let sign = BivarPoly::from_i64(if n % 2 == 0 { 1 } else { -1 });
        let lhs = fname(n)
            .mul(&fname(n))
            .sub(&fname(n - 1).mul(&fname(n - 1)))
            .add(&sign);
        let rhs = s.mul(&fname(n)).mul(&fname(n - 1));
        c.poly(|| format!("n={n}"), &lhs, &rhs);
    }
    (c.cases, None, c.counterexample)
}

fn run_double_index(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let s = BivarPoly::var_s();
    let t = BivarPoly::var_t();
    for n in 1..=r.n as i64 {
        if c.done() {
            break;
        }
        let lhs = fib(2 * n);
        let rhs = fib(n).mul(
            &s.mul(&fib(n))
                .add(&t.mul(&fib(n - 1)).mul_scalar(&Integer::from(2))),
        );
        c.poly(|| format!("n={n}"), &lhs, &rhs);
    }
    (c.cases, None, c.counterexample)
}

fn run_one_var_bridge(r: &Ranges, _f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    let t1 = SeqParams {
        s: None,
        t: Some(Integer::one()),
        q: None,
    };
    for k in 1..=r.k.min(8) as i64 {
        let pk = SeqParams {
            s: None,
            t: Some(Integer::from(k * k)),
            q: None,
        };
        for n in 1..=r.n {
            if c.done() {
                break;
            }
            let lhs = fib_poly(n as i64, &pk).expect("nonnegative");
            // k^(n-1) F_n(s/k) where F_n(s) = {n}_{s,1}: each s^i picks up
            // the factor k^(n-1-i), an integer since deg F_n = n-1
            let f = fib_poly(n as i64, &t1).expect("nonnegative");
            let mut rhs = BivarPoly::zero();
            for (mono, coeff) in f.terms_desc() {
                let scale = Integer::from(k).pow(n - 1 - mono.s_exp);
                rhs = rhs.add(&BivarPoly::monomial(
                    Monomial::new(mono.s_exp, 0, 0),
                    coeff.clone() * scale,
                ));
            }
            c.poly(|| format!("k={k}, n={n}"), &lhs, &rhs);
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_log_concavity(r: &Ranges, f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    if wants(f, Mode::Symbolic) {
        for n in 1..=r.n as i64 {
            if c.done() {
                break;
            }
            let lhs = fib(n).mul(&fib(n)).sub(&fib(n - 1).mul(&fib(n + 1)));
            let rhs = neg_t_pow(n as u32 - 1);
            c.poly(|| format!("n={n}"), &lhs, &rhs);
        }
    }
    if wants(f, Mode::Specialized) {
        for s0 in 1..=5i64 {
            for t0 in -5..=0i64 {
                let s = Integer::from(s0);
                let t = Integer::from(t0);
                for n in 1..=r.n as u64 {
                    if c.done() {
                        break;
                    }
                    let gap = fib_int(n, &s, &t).pow(2)
                        - fib_int(n - 1, &s, &t) * fib_int(n + 1, &s, &t);
                    c.record(!gap.is_negative(), || {
                        (
                            format!("s={s0}, t={t0}, n={n}"),
                            gap.to_string(),
                            ">= 0".into(),
                        )
                    });
                }
            }
        }
    }
    (c.cases, None, c.counterexample)
}

fn run_specials(r: &Ranges, f: Option<Mode>) -> (u64, Option<u32>, Option<Counterexample>) {
    let mut c = Checker::new();
    if wants(f, Mode::Specialized) {
        let s = Integer::from(2);
        let t = Integer::from(-1);
        let sweep = (r.n as u64).max(500);
        for n in 0..=sweep {
            if c.done() {
                break;
            }
            c.record(fib_int(n, &s, &t) == Integer::from(n), || {
                (
                    format!("{{n}} at (2,-1), n={n}"),
                    fib_int(n, &s, &t).to_string(),
                    n.to_string(),
                )
            });
            c.record(lucas_int(n, &s, &t) == Integer::from(2), || {
                (
                    format!("<n> at (2,-1), n={n}"),
                    lucas_int(n, &s, &t).to_string(),
                    "2".into(),
                )
            });
        }
    }
    if wants(f, Mode::Symbolic) {
        // {n} at s = q+1, t = -q is the standard q-analogue [n]_q
        let q = BivarPoly::var_q();
        let s_image = q.add(&BivarPoly::one());
        let t_image = q.neg();
        for n in 0..=r.n {
            if c.done() {
                break;
            }
            let lhs = fib(n as i64).substitute(&s_image, &t_image, &q);
            let rhs = gaussian_binomial(n, 1);
            c.poly(|| format!("[n]_q at n={n}"), &lhs, &rhs);
        }
    }
    (c.cases, None, c.counterexample)
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

use Mode::{QuadExt, Specialized, Symbolic};

pub const REGISTRY: &[IdentitySpec] = &[
    IdentitySpec {
        id: "addition",
        statement: "{m+n} = {m}{n+1} + t{m-1}{n}",
        modes: &[Symbolic],
        run: run_addition,
    },
    IdentitySpec {
        id: "lucas-bridge",
        statement: "<n> = {n+1} + t{n-1}  and  2{m+n} = <m>{n} + {m}<n>",
        modes: &[Symbolic],
        run: run_lucas_bridge,
    },
    IdentitySpec {
        id: "binet",
        statement: "Delta*{n} = X^n - Y^n  and  <n> = X^n + Y^n",
        modes: &[QuadExt],
        run: run_binet,
    },
    IdentitySpec {
        id: "q-bridge",
        statement: "{n} = Y^(n-1) [n]_{X/Y}",
        modes: &[QuadExt, Specialized],
        run: run_q_bridge,
    },
    IdentitySpec {
        id: "gau-bridge",
        statement: "B(n,k) = Y^(k(n-k)) [n choose k]_{X/Y}",
        modes: &[QuadExt, Specialized],
        run: run_gau_bridge,
    },
    IdentitySpec {
        id: "gcd",
        statement: "gcd({m},{n}) = {gcd(m,n)}  and  m|n iff {m}|{n}",
        modes: &[Symbolic, Specialized],
        run: run_gcd,
    },
    IdentitySpec {
        id: "rr2",
        statement: "B(m+n,m) = Y^n B(n+m-1,m-1) + X^m B(m+n-1,m)",
        modes: &[QuadExt],
        run: run_rr2,
    },
    IdentitySpec {
        id: "binomial-thm",
        statement: "prod_j (1 + X^(n-1-j) Y^j z) = sum_k (-t)^C(k,2) B(n,k) z^k",
        modes: &[QuadExt, Specialized],
        run: run_binomial_thm,
    },
    IdentitySpec {
        id: "neg-binomial-thm",
        statement: "1/prod_j (1 - X^(n-1-j) Y^j z) = sum_k B(n+k-1,k) z^k (truncated)",
        modes: &[QuadExt, Specialized],
        run: run_neg_binomial_thm,
    },
    IdentitySpec {
        id: "neg-index",
        statement: "{-n} = -{n}/(-t)^n",
        modes: &[Symbolic],
        run: run_neg_index,
    },
    IdentitySpec {
        id: "row-sums",
        statement: "sum_k B(n,k) and its alternating version factor over <n-2i+1> at t=-1",
        modes: &[Symbolic],
        run: run_row_sums,
    },
    IdentitySpec {
        id: "chu-vandermonde",
        statement: "B(m+n,k) = sum_i (-t)^(i(i-k)) X^(mi) Y^(n(k-i)) B(m,k-i) B(n,i)",
        modes: &[QuadExt, Specialized],
        run: run_chu_vandermonde,
    },
    IdentitySpec {
        id: "euler-cassini",
        statement: "{n}(q){n+m-1}_[qt](q) - {n-1}_[qt](q){n+m}(q) = (-t)^(n-1) q^C(n,2) {m}_[q^n t](q)",
        modes: &[Symbolic],
        run: run_euler_cassini,
    },
    IdentitySpec {
        id: "gEC",
        statement: "{rn}{r(n+m-1)} - {r(n-1)}{r(n+m)} = (-t)^(r(n-1)) {r}{rm}",
        modes: &[Symbolic],
        run: run_gec,
    },
    IdentitySpec {
        id: "ekhad-catalan",
        statement: "C_n = B(2n-1,n-1) + t B(2n-1,n-2) = B(2n,n)/{n+1}",
        modes: &[Symbolic],
        run: run_ekhad_catalan,
    },
    IdentitySpec {
        id: "binomial-transform",
        statement: "sum_k C(n,k){k}_{s,t} = {n}_{s+2,t-s-1}; corollary sum_k C(n,k)F_k = F_2n",
        modes: &[Symbolic],
        run: run_binomial_transform,
    },
    IdentitySpec {
        id: "scaling",
        statement: "{n}_{2s,4t} = 2^(n-1) {n}_{s,t}",
        modes: &[Symbolic],
        run: run_scaling,
    },
    IdentitySpec {
        id: "t1-square",
        statement: "{n}^2 - {n-1}^2 + (-1)^n = s{n}{n-1} at t=1",
        modes: &[Symbolic],
        run: run_t1_square,
    },
    IdentitySpec {
        id: "double-index",
        statement: "{2n} = {n}(s{n} + 2t{n-1})",
        modes: &[Symbolic],
        run: run_double_index,
    },
    IdentitySpec {
        id: "one-var-bridge",
        statement: "{n}_{s,k^2} = k^(n-1) F_n(s/k) with F_n the t=1 polynomial",
        modes: &[Specialized],
        run: run_one_var_bridge,
    },
    IdentitySpec {
        id: "log-concavity",
        statement: "{n}^2 - {n-1}{n+1} = (-t)^(n-1), nonnegative for t <= 0",
        modes: &[Symbolic, Specialized],
        run: run_log_concavity,
    },
    IdentitySpec {
        id: "specials",
        statement: "{n}_{2,-1} = n; <n>_{2,-1} = 2; {n}_{q+1,-q} = [n]_q",
        modes: &[Symbolic, Specialized],
        run: run_specials,
    },
];

pub fn registry() -> &'static [IdentitySpec] {
    REGISTRY
}

pub fn run_identity(
    id: &str,
    ranges: &Ranges,
    mode_override: Option<Mode>,
) -> Result<Verdict, IdentityError> {
    let spec = REGISTRY
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| IdentityError::UnknownId(id.to_string()))?;
    if let Some(m) = mode_override {
        if !spec.modes.contains(&m) {
            return Err(IdentityError::UnsupportedMode {
                id: id.to_string(),
                mode: m,
            });
        }
    }
    let (cases, truncation_order, counterexample) = (spec.run)(ranges, mode_override);
    Ok(Verdict {
        id: spec.id,
        ranges: *ranges,
        modes: mode_override.map_or_else(|| spec.modes.to_vec(), |m| vec![m]),
        cases,
        truncation_order,
        counterexample,
    })
}

/// Run every registry row; results come back in registry (id) order.
pub fn run_all(ranges: &Ranges) -> Vec<Verdict> {
    REGISTRY
        .iter()
        .map(|s| run_identity(s.id, ranges, None).expect("registry ids are valid"))
        .collect()
}

// ---------------------------------------------------------------------------
// Tridiagonal determinant for the q-recursion
// ---------------------------------------------------------------------------

/// Determinant by cofactor expansion along the last column. Exponential in
/// general but the matrices used here are tridiagonal, so at most two
/// entries per column are nonzero and the recursion stays narrow.
fn det_cofactor(m: &[Vec<BivarPoly>]) -> BivarPoly {
    let size = m.len();
    if size == 1 {
        return m[0][0].clone();
    }
    let last = size - 1;
    let mut acc = BivarPoly::zero();
    for r in 0..size {
        if m[r][last].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BivarPoly>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[..last].to_vec())
            .collect();
        let mut term = m[r][last].mul(&det_cofactor(&minor));
        if (r + last) % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

/// {n}(q) as the determinant of the (n-1) x (n-1) tridiagonal matrix with
/// diagonal s, superdiagonal -1, and subdiagonal entries q^i t. On the way
/// out, the m = 1 condensation identity
///
/// ```text
/// {n}(q) {n}_[qt](q) - {n-1}_[qt](q) {n+1}(q) = (-t)^(n-1) q^C(n,2)
/// ```
///
/// is checked symbolically for the same n.
pub fn dodgson_det(n: u32, params: &SeqParams) -> Result<BivarPoly, IdentityError> {
    if n < 2 {
        return Err(IdentityError::BadInput(format!(
            "the tridiagonal construction needs n >= 2, got {n}"
        )));
    }
    let size = (n - 1) as usize;
    let s = params.s_poly();
    let t = params.t_poly();
    let q = params.q_poly();
    let mut m = vec![vec![BivarPoly::zero(); size]; size];
    for i in 0..size {
        m[i][i] = s.clone();
        if i + 1 < size {
            m[i][i + 1] = BivarPoly::from_i64(-1);
        }
        if i >= 1 {
            m[i][i - 1] = q.pow(i as u32).mul(&t);
        }
    }
    let det = det_cofactor(&m);

    let lhs = fib_q_shifted(n, 0)
        .mul(&fib_q_shifted(n, 1))
        .sub(&fib_q_shifted(n - 1, 1).mul(&fib_q_shifted(n + 1, 0)));
    let rhs = neg_t_pow(n - 1).mul(&BivarPoly::var_q().pow(binom_half(n)));
    assert_eq!(lhs, rhs, "condensation identity failed at n = {n}");

    Ok(det)
}

// ---------------------------------------------------------------------------
// Primality via Fibonomial divisibility
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Prime,
    Composite { witness: u32 },
}

/// p >= 2 is prime exactly when {p} divides the symbolic Fibonomial B(p,k)
/// for every 0 < k < p. Composite outputs carry the first failing k.
pub fn primality_test(p: u32) -> Result<Primality, IdentityError> {
    if p < 2 {
        return Err(IdentityError::BadInput(format!(
            "primality needs p >= 2, got {p}"
        )));
    }
    let fp = fib(p as i64);
    // walk the row incrementally: B(p,k) = B(p,k-1) * {p-k+1} / {k}
    let mut row = BivarPoly::one();
    for k in 1..p {
        row = row
            .mul(&fib((p - k + 1) as i64))
            .div_exact(&fib(k as i64))
            .expect("Fibonomials are polynomials");
        if row.div_exact(&fp).is_err() {
            return Ok(Primality::Composite { witness: k });
        }
    }
    Ok(Primality::Prime)
}
