//! Sparse polynomials in Z[s, t, q].
//!
//! Every polynomial in this crate lives in the three-variable ring Z[s, t, q]
//! even when it only mentions one or two of the variables. Terms are kept in
//! a BTreeMap ordered by graded lexicographic order with s > t > q, so the
//! map's largest key is the leading monomial and iteration in reverse yields
//! the canonical display order (highest total degree first).
//!
//! Coefficients are arbitrary-precision integers and zero coefficients are
//! never stored, so structural equality coincides with ring equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Integer, Rational};

/// Exponent triple for a single monomial s^s_exp * t^t_exp * q^q_exp.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub s_exp: u32,
    pub t_exp: u32,
    pub q_exp: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { s_exp: 0, t_exp: 0, q_exp: 0 };

    pub fn new(s_exp: u32, t_exp: u32, q_exp: u32) -> Self {
        Monomial { s_exp, t_exp, q_exp }
    }

    pub fn total_degree(&self) -> u32 {
        self.s_exp + self.t_exp + self.q_exp
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.s_exp + other.s_exp,
            self.t_exp + other.t_exp,
            self.q_exp + other.q_exp,
        )
    }

    /// Componentwise divisibility of exponent vectors.
    fn divides(&self, other: &Monomial) -> bool {
        self.s_exp <= other.s_exp && self.t_exp <= other.t_exp && self.q_exp <= other.q_exp
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.s_exp - other.s_exp,
            self.t_exp - other.t_exp,
            self.q_exp - other.q_exp,
        )
    }

    fn exp(&self, var: Var) -> u32 {
        match var {
            Var::S => self.s_exp,
            Var::T => self.t_exp,
            Var::Q => self.q_exp,
        }
    }

    fn with_exp(&self, var: Var, e: u32) -> Monomial {
        let mut m = *self;
        match var {
            Var::S => m.s_exp = e,
            Var::T => m.t_exp = e,
            Var::Q => m.q_exp = e,
        }
        m
    }
}

/// Graded lexicographic order with s > t > q: compare total degree first,
/// then exponents of s, then t, then q.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.s_exp.cmp(&other.s_exp))
            .then(self.t_exp.cmp(&other.t_exp))
            .then(self.q_exp.cmp(&other.q_exp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One of the three ring variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    S,
    T,
    Q,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::S, Var::T, Var::Q];

    fn name(&self) -> &'static str {
        match self {
            Var::S => "s",
            Var::T => "t",
            Var::Q => "q",
        }
    }
}

/// Total degree of a polynomial. The zero polynomial has no terms, so its
/// degree is a distinguished minus-infinity value that compares below every
/// finite degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::MinusInfinity, Degree::MinusInfinity) => Ordering::Equal,
            (Degree::MinusInfinity, _) => Ordering::Less,
            (_, Degree::MinusInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: exact polynomial division leaves a remainder")]
    NotDivisible,
    #[error("polynomial mentions q but no value for q was supplied")]
    MissingQ,
}

/// Sparse multivariate polynomial over Z with variables s, t, q.
///
/// The name reflects the dominant use: almost every value in the crate is a
/// bivariate polynomial in s and t, with q joining for the q-analogues.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, Integer>,
}

impl BivarPoly {
    // -----------------------------------------------------------------
    // Constructors
    // -----------------------------------------------------------------

    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        BivarPoly::constant(BigInt::one())
    }

    pub fn constant(c: Integer) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        BivarPoly { terms }
    }

    pub fn from_i64(c: i64) -> Self {
        BivarPoly::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        let m = match v {
            Var::S => Monomial::new(1, 0, 0),
            Var::T => Monomial::new(0, 1, 0),
            Var::Q => Monomial::new(0, 0, 1),
        };
        BivarPoly::monomial(m, BigInt::one())
    }

    pub fn var_s() -> Self {
        BivarPoly::var(Var::S)
    }

    pub fn var_t() -> Self {
        BivarPoly::var(Var::T)
    }

    pub fn var_q() -> Self {
        BivarPoly::var(Var::Q)
    }

    pub fn monomial(m: Monomial, c: Integer) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BivarPoly { terms }
    }

    // -----------------------------------------------------------------
    // Basic queries
    // -----------------------------------------------------------------

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Integer> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn degree(&self) -> Degree {
        match self.terms.last_key_value() {
            None => Degree::MinusInfinity,
            Some((m, _)) => Degree::Finite(m.total_degree()),
        }
    }

    pub fn degree_in(&self, var: Var) -> Degree {
        match self.terms.keys().map(|m| m.exp(var)).max() {
            None => Degree::MinusInfinity,
            Some(d) => Degree::Finite(d),
        }
    }

    pub fn uses(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (the canonical display order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Integer)> {
        self.terms.iter().rev()
    }

    /// Leading term under graded lex, or None for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Integer)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, m: &Monomial) -> Integer {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Gcd of all coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> Integer {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    // -----------------------------------------------------------------
    // Ring operations
    // -----------------------------------------------------------------

    fn add_term(&mut self, m: Monomial, c: &Integer) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &(-c));
        }
        out
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Integer) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Integer) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BivarPoly {
        // Square and multiply; exponents here are small, so no refinement.
        let mut result = BivarPoly::one();
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

    /// Exact division: Some quotient quo with self = quo * divisor, or
    /// NotDivisible. Runs multivariate long division by the leading term
    /// under graded lex; when the division is exact this yields the unique
    /// quotient, and any failure (monomial or coefficient non-divisibility,
    /// or a nonzero final remainder) proves inexactness because leading
    /// terms are multiplicative over an integral domain.
    pub fn div_exact(&self, divisor: &BivarPoly) -> Result<BivarPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = divisor.leading().expect("nonzero divisor has a leading term");
        let mut rem = self.clone();
        let mut quo = BivarPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(PolyError::NotDivisible);
            }
            let (qc, rr) = rc.div_rem(dc);
            if !rr.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let qm = rm.div(dm);
            quo.add_term(qm, &qc);
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc));
        }
        Ok(quo)
    }

    /// Divide every coefficient by c exactly. Panics if any coefficient is
    /// not divisible; callers only pass divisors of the content.
    pub fn div_scalar_exact(&self, c: &Integer) -> BivarPoly {
        assert!(!c.is_zero(), "scalar division by zero");
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| {
                    let (q, r) = k.div_rem(c);
                    assert!(r.is_zero(), "coefficient not divisible by claimed content");
                    (*m, q)
                })
                .collect(),
        }
    }

    // -----------------------------------------------------------------
    // Evaluation and substitution
    // -----------------------------------------------------------------

    /// Evaluate at rational s0, t0 and optional q0. Supplying no q0 for a
    /// polynomial that mentions q is an error rather than a silent default.
    pub fn eval(
        &self,
        s0: &Rational,
        t0: &Rational,
        q0: Option<&Rational>,
    ) -> Result<Rational, PolyError> {
        if self.uses(Var::Q) && q0.is_none() {
            return Err(PolyError::MissingQ);
        }
        let one = Rational::one();
        let q0 = q0.unwrap_or(&one);
        // Cache powers per variable; exponent patterns repeat heavily.
        let s_pows = power_table(s0, self.max_exp(Var::S));
        let t_pows = power_table(t0, self.max_exp(Var::T));
        let q_pows = power_table(q0, self.max_exp(Var::Q));
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = Rational::from(c.clone());
            term *= &s_pows[m.s_exp as usize];
            term *= &t_pows[m.t_exp as usize];
            term *= &q_pows[m.q_exp as usize];
            acc += term;
        }
        Ok(acc)
    }

    /// Integer-point convenience wrapper around eval.
    pub fn eval_int(
        &self,
        s0: &Integer,
        t0: &Integer,
        q0: Option<&Integer>,
    ) -> Result<Integer, PolyError> {
        let sr = Rational::from(s0.clone());
        let tr = Rational::from(t0.clone());
        let qr = q0.map(|q| Rational::from(q.clone()));
        let v = self.eval(&sr, &tr, qr.as_ref())?;
        debug_assert!(v.is_integer());
        Ok(v.to_integer())
    }

    fn max_exp(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Simultaneous substitution s -> s_to, t -> t_to, q -> q_to.
    pub fn substitute(
        &self,
        s_to: &BivarPoly,
        t_to: &BivarPoly,
        q_to: &BivarPoly,
    ) -> BivarPoly {
        let s_pows = poly_power_table(s_to, self.max_exp(Var::S));
        let t_pows = poly_power_table(t_to, self.max_exp(Var::T));
        let q_pows = poly_power_table(q_to, self.max_exp(Var::Q));
        let mut acc = BivarPoly::zero();
        for (m, c) in &self.terms {
            let term = s_pows[m.s_exp as usize]
                .mul(&t_pows[m.t_exp as usize])
                .mul(&q_pows[m.q_exp as usize])
                .mul_scalar(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute only s and t, leaving q alone.
    pub fn substitute_st(&self, s_to: &BivarPoly, t_to: &BivarPoly) -> BivarPoly {
        self.substitute(s_to, t_to, &BivarPoly::var_q())
    }

    // -----------------------------------------------------------------
    // Univariate views (used by the gcd machinery)
    // -----------------------------------------------------------------

    /// Coefficients of powers of var, each a polynomial in the remaining
    /// variables. Index i holds the coefficient of var^i; the vector is
    /// empty exactly for the zero polynomial.
    pub fn coeffs_in(&self, var: Var) -> Vec<BivarPoly> {
        let deg = match self.degree_in(var) {
            Degree::MinusInfinity => return Vec::new(),
            Degree::Finite(d) => d,
        };
        let mut coeffs = vec![BivarPoly::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var);
            coeffs[e as usize].add_term(m.with_exp(var, 0), c);
        }
        coeffs
    }

    /// Rebuild a polynomial from coefficients of powers of var.
    pub fn from_coeffs(var: Var, coeffs: &[BivarPoly]) -> BivarPoly {
        let mut acc = BivarPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                debug_assert_eq!(m.exp(var), 0);
                acc.add_term(m.with_exp(var, i as u32), k);
            }
        }
        acc
    }

    // -----------------------------------------------------------------
    // Rendering
    // -----------------------------------------------------------------

    /// Plain-text canonical form, e.g. "s^4 + 3*s^2*t + t^2".
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    /// LaTeX-flavored form matching the notational conventions used in the
    /// docs, e.g. "s^{4} + 3s^{2}t + t^{2}".
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let vars = render_vars(m, latex);
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&vars);
            } else if latex {
                out.push_str(&format!("{}{}", mag, vars));
            } else {
                out.push_str(&format!("{}*{}", mag, vars));
            }
        }
        out
    }

    /// Canonical JSON form: a list of term objects in descending graded-lex
    /// order, coefficients as decimal strings to stay exact past f64 range.
    pub fn json_terms(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_desc()
            .map(|(m, c)| {
                serde_json::json!({
                    "s": m.s_exp,
                    "t": m.t_exp,
                    "q": m.q_exp,
                    "c": c.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

fn render_vars(m: &Monomial, latex: bool) -> String {
    let mut parts = Vec::new();
    for var in Var::ALL {
        let e = m.exp(var);
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(var.name().to_string());
        } else if latex {
            parts.push(format!("{}^{{{}}}", var.name(), e));
        } else {
            parts.push(format!("{}^{}", var.name(), e));
        }
    }
    parts.join(if latex { "" } else { "*" })
}

fn power_table(base: &Rational, max: u32) -> Vec<Rational> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(Rational::one());
    for _ in 0..max {
        let next = pows.last().unwrap() * base;
        pows.push(next);
    }
    pows
}

fn poly_power_table(base: &BivarPoly, max: u32) -> Vec<BivarPoly> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(BivarPoly::one());
    for _ in 0..max {
        let next = pows.last().unwrap().mul(base);
        pows.push(next);
    }
    pows
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({})", self.to_text())
    }
}

// Operator sugar on references; ownership-taking variants delegate.
impl std::ops::Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::neg(self)
    }
}
