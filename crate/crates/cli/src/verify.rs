//! The acceptance suite behind `verify-all`: twelve numbered criteria, each
//! a self-contained check with an independently computed expectation. A
//! criterion reports how many cases it ran and which ones disagreed; a
//! panic inside one criterion is caught and reported as its failure rather
//! than taking down the rest of the run.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{One, Zero};
use rayon::prelude::*;

use fibkit_core::exactmath::BivarPoly;
use fibkit_core::fibonomials::{fibonomial, fibonomial_q, lucanomial};
use fibkit_core::identities::{dodgson_det, registry, run_all, Ranges};
use fibkit_core::sequences::{
    fib_poly, fib_q_poly, fib_q_shifted, lucas_poly, tiling_sum, SeqParams, TilingKind,
};
use fibkit_core::series::{certified_sum_nice1, tail_floor, TailRegime};
use fibkit_core::valuations::{
    carries, conjecture_matches, legendre, nu, nu_catalan_closed_sweep, nu_d_special,
    nu_fib_closed, nu_fibotorial_closed, zeta2, ConjectureCandidate, Valuation,
};
use fibkit_core::{Integer, Rational};

use crate::args::{
    BinomArgs, CatalanArgs, Cmd, ConjectureArgs, IdentityArgs, Resolved, SeqArgs, SeqKindArg,
    TableArgs, TailsArgs, TailsOp,
};
use crate::commands;
use crate::config;
use crate::output::Format;

pub struct VerifyCfg {
    /// FIBKIT_MAX_N, when set; shrinks every sweep bound to the cap.
    pub cap: Option<u64>,
}

pub struct CriterionReport {
    pub index: u32,
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

/// Case counter with a bounded failure log, so a badly broken criterion
/// still produces a readable report.
struct Outcome {
    cases: u64,
    failed: u64,
    failures: Vec<String>,
}

const FAILURE_LOG_CAP: usize = 5;

impl Outcome {
    fn new() -> Self {
        Outcome { cases: 0, failed: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < FAILURE_LOG_CAP {
                self.failures.push(msg());
            }
        }
    }

    fn absorb(&mut self, other: Outcome) {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < FAILURE_LOG_CAP {
                self.failures.push(f);
            }
        }
    }

    fn detail(&self) -> String {
        if self.failed == 0 {
            return String::new();
        }
        let mut d = self.failures.join("; ");
        let shown = self.failures.len() as u64;
        if self.failed > shown {
            d.push_str(&format!("; and {} more", self.failed - shown));
        }
        d
    }
}

pub fn run_all_criteria(cfg: &VerifyCfg) -> Vec<CriterionReport> {
    (1..=12).map(|i| run_criterion(i, cfg)).collect()
}

pub fn run_criterion(index: u32, cfg: &VerifyCfg) -> CriterionReport {
    let (name, run): (&'static str, fn(&VerifyCfg) -> Outcome) = match index {
        1 => ("printed polynomial landmarks", c01_landmarks),
        2 => ("tiling sums match both families", c02_tilings),
        3 => ("identity registry sweeps", c03_identities),
        4 => ("tridiagonal determinant route", c04_determinant),
        5 => ("entry and factorial valuation formulas", c05_entry_valuations),
        6 => ("special-point valuations", c06_special_points),
        7 => ("catalan valuation theorems", c07_catalan),
        8 => ("carry counts and factorial valuations", c08_carries),
        9 => ("profile conjecture table", c09_table),
        10 => ("certified tail floors", c10_tails),
        11 => ("non-polynomial witnesses", c11_witnesses),
        12 => ("deterministic reporting", c12_determinism),
        other => {
            return CriterionReport {
                index: other,
                name: "unknown criterion",
                passed: false,
                cases: 0,
                detail: format!("no criterion numbered {other}"),
            }
        }
    };
    match catch_unwind(AssertUnwindSafe(|| run(cfg))) {
        Ok(outcome) => CriterionReport {
            index,
            name,
            passed: outcome.failed == 0,
            cases: outcome.cases,
            detail: outcome.detail(),
        },
        Err(panic) => CriterionReport {
            index,
            name,
            passed: false,
            cases: 0,
            detail: format!("panicked: {}", panic_message(&panic)),
        },
    }
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".into()
    }
}

fn eff(cfg: &VerifyCfg, mandated: u64) -> u64 {
    config::capped(mandated, cfg.cap)
}

// ---------------------------------------------------------------------------
// 1. The low-index polynomials print with these exact bytes.
// ---------------------------------------------------------------------------

fn c01_landmarks(_cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let sym = SeqParams::symbolic();
    let fib_expected = [
        "0",
        "1",
        "s",
        "s^2 + t",
        "s^3 + 2*s*t",
        "s^4 + 3*s^2*t + t^2",
    ];
    for (n, want) in fib_expected.iter().enumerate() {
        let got = fib_poly(n as i64, &sym).expect("nonnegative index").to_text();
        o.check(got == *want, || format!("{{{n}}} printed `{got}`, want `{want}`"));
    }
    let lucas_expected = [
        "2",
        "s",
        "s^2 + 2*t",
        "s^3 + 3*s*t",
        "s^4 + 4*s^2*t + 2*t^2",
        "s^5 + 5*s^3*t + 5*s*t^2",
    ];
    for (n, want) in lucas_expected.iter().enumerate() {
        let got = lucas_poly(n as u32, &sym).to_text();
        o.check(got == *want, || format!("<{n}> printed `{got}`, want `{want}`"));
    }
    o
}

// ---------------------------------------------------------------------------
// 2. Weighted tiling enumeration reproduces both polynomial families.
// ---------------------------------------------------------------------------

fn c02_tilings(cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let sym = SeqParams::symbolic();
    let top = eff(cfg, 24) as u32;
    for n in 0..=top {
        let sum = tiling_sum(n, TilingKind::Linear).expect("within the tiling cap");
        let want = fib_poly(n as i64 + 1, &sym).expect("nonnegative index");
        o.check(sum == want, || format!("linear tilings of length {n} miss {{{}}}", n + 1));
    }
    for n in 1..=top {
        let sum = tiling_sum(n, TilingKind::Circular).expect("within the tiling cap");
        let want = lucas_poly(n, &sym);
        o.check(sum == want, || format!("circular tilings of length {n} miss <{n}>"));
    }
    o
}

// ---------------------------------------------------------------------------
// 3. Every registry row passes its default verification sweep.
// ---------------------------------------------------------------------------

fn c03_identities(cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let bound = eff(cfg, 10) as u32;
    let ranges = Ranges { n: bound, m: bound, k: bound, r: bound };
    let verdicts = run_all(&ranges);
    o.check(verdicts.len() == registry().len(), || {
        format!("ran {} rows, registry has {}", verdicts.len(), registry().len())
    });
    for v in &verdicts {
        o.check(v.passed(), || {
            let c = v.counterexample.as_ref().expect("failed verdicts carry one");
            format!("{} failed at {}: {} != {}", v.id, c.location, c.lhs, c.rhs)
        });
    }
    o
}

// ---------------------------------------------------------------------------
// 4. The tridiagonal determinant equals {n}(q), and the one-column
//    condensation identity holds exactly.
// ---------------------------------------------------------------------------

fn c04_determinant(cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let sym = SeqParams::symbolic();
    let top = eff(cfg, 12).max(2) as u32;
    for n in 2..=top {
        let det = dodgson_det(n, &sym).expect("symbolic parameters are fine");
        let want = fib_q_poly(n, &sym);
        o.check(det == want, || format!("determinant at n = {n} is not {{{n}}}(q)"));

        // {n}(q) {n}_[qt](q) - {n-1}_[qt](q) {n+1}(q) = (-t)^(n-1) q^(n choose 2)
        let lhs = fib_q_shifted(n, 0)
            .mul(&fib_q_shifted(n, 1))
            .sub(&fib_q_shifted(n - 1, 1).mul(&fib_q_shifted(n + 1, 0)));
        let rhs = BivarPoly::var_t()
            .neg()
            .pow(n - 1)
            .mul(&BivarPoly::var_q().pow(n * (n - 1) / 2));
        o.check(lhs == rhs, || format!("condensation identity fails at n = {n}"));
    }
    o
}

// ---------------------------------------------------------------------------
// 5. Closed-form nu_2 of entries and factorials agrees with brute force
//    over the full parameter grid.
// ---------------------------------------------------------------------------

fn c05_entry_valuations(cfg: &VerifyCfg) -> Outcome {
    let top = eff(cfg, 512);
    let pairs: Vec<(i64, i64)> = (-9..=9)
        .flat_map(|s| (-9..=9).map(move |t| (s, t)))
        .collect();
    let per_pair: Vec<Outcome> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let mut o = Outcome::new();
            for n in 0..=top {
                let entry = nu_fib_closed(s, t, n).expect("d = 2 is valid");
                o.check(entry.agrees(), || {
                    format!(
                        "nu_2 {{{n}}} at ({s},{t}): closed {} vs brute {}",
                        entry.value,
                        entry.brute.expect("closed form carries the brute value")
                    )
                });
                let fact = nu_fibotorial_closed(s, t, n).expect("d = 2 is valid");
                o.check(fact.agrees(), || {
                    format!(
                        "nu_2 {{{n}}}! at ({s},{t}): closed {} vs brute {}",
                        fact.value,
                        fact.brute.expect("closed form carries the brute value")
                    )
                });
            }
            o
        })
        .collect();
    let mut o = Outcome::new();
    for p in per_pair {
        o.absorb(p);
    }
    o
}

// ---------------------------------------------------------------------------
// 6. The special-point formula nu_d({n}_{d,-1}) = [2|n] nu_d(d n/2).
// ---------------------------------------------------------------------------

fn c06_special_points(cfg: &VerifyCfg) -> Outcome {
    let top = eff(cfg, 512);
    let per_d: Vec<Outcome> = (2u64..=10)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&d| {
            let mut o = Outcome::new();
            for n in 0..=top {
                let r = nu_d_special(d, n).expect("d >= 2");
                o.check(r.agrees(), || {
                    format!(
                        "nu_{d} special point at n = {n}: closed {} vs brute {}",
                        r.value,
                        r.brute.expect("special point carries the brute value")
                    )
                });
            }
            o
        })
        .collect();
    let mut o = Outcome::new();
    for p in per_d {
        o.absorb(p);
    }
    o
}

// ---------------------------------------------------------------------------
// 7. Catalan valuation theorems: the parity-split closed forms on both
//    parameter grids, plus the ordinary Catalan numbers as a spot check
//    of the d = 2 digit formula.
// ---------------------------------------------------------------------------

fn c07_catalan(cfg: &VerifyCfg) -> Outcome {
    let top = u32::try_from(eff(cfg, 512)).expect("cap fits in u32 here");
    let odd: Vec<i64> = [-7, -5, -3, -1, 1, 3, 5, 7].into();
    let even: Vec<i64> = [-8, -6, -4, -2, 2, 4, 6, 8].into();

    let mut grid: Vec<(i64, i64)> = Vec::new();
    for &s in &odd {
        for &t in &odd {
            grid.push((s, t));
        }
    }
    for &s in &odd {
        for &t in &even {
            grid.push((s, t));
        }
    }
    for &s in &even {
        for &t in &odd {
            grid.push((s, t));
        }
    }

    let per_pair: Vec<Outcome> = grid
        .par_iter()
        .map(|&(s, t)| {
            let mut o = Outcome::new();
            let sweep = nu_catalan_closed_sweep(s, t, top).expect("covered parities");
            for (n, r) in sweep.iter().enumerate() {
                o.check(r.agrees(), || {
                    format!(
                        "nu_2 C_{n} at ({s},{t}): closed {} vs brute {}",
                        r.value,
                        r.brute.expect("sweep carries the brute value")
                    )
                });
            }
            o
        })
        .collect();
    let mut o = Outcome::new();
    for p in per_pair {
        o.absorb(p);
    }

    // ordinary Catalan numbers: nu_2(C_n) = zeta2(n+1) - 1
    let top_ord = eff(cfg, 4096);
    let mut c = Integer::one();
    for n in 0..=top_ord {
        let got = nu(2, &c).expect("Catalan numbers are positive");
        let want = Valuation::Finite(zeta2(n + 1) - 1);
        o.check(got == want, || {
            format!("nu_2 of ordinary C_{n}: digit formula {want}, direct {got}")
        });
        // C_{n+1} = C_n * 2(2n+1)/(n+2), always an exact division
        let next = c * Integer::from(2 * (2 * n + 1));
        let div = Integer::from(n + 2);
        assert!((&next % &div).is_zero(), "Catalan recurrence division must be exact");
        c = next / div;
    }
    o
}

// ---------------------------------------------------------------------------
// 8. Kummer and Legendre: carries count nu_p of binomials, digit sums
//    count nu_p of factorials.
// ---------------------------------------------------------------------------

fn c08_carries(cfg: &VerifyCfg) -> Outcome {
    let primes = [2u64, 3, 5, 7];
    let top = eff(cfg, 300);
    let per_prime: Vec<Outcome> = primes
        .par_iter()
        .map(|&p| {
            let mut o = Outcome::new();
            // Pascal row by row; row[k] = C(total, k) exactly.
            let mut row: Vec<Integer> = vec![Integer::one()];
            for total in 0..=top {
                for k in 0..=total {
                    let want = nu(p, &row[k as usize]).expect("binomials are positive");
                    let got = Valuation::Finite(
                        carries(k, total - k, p).expect("p is prime"),
                    );
                    o.check(got == want, || {
                        format!("carries({k}, {}, {p}) = {got}, nu_{p} C({total},{k}) = {want}", total - k)
                    });
                }
                let mut next = Vec::with_capacity(row.len() + 1);
                next.push(Integer::one());
                for w in row.windows(2) {
                    next.push(&w[0] + &w[1]);
                }
                next.push(Integer::one());
                row = next;
            }
            o
        })
        .collect();
    let mut o = Outcome::new();
    for p in per_prime {
        o.absorb(p);
    }

    let top_fact = eff(cfg, 2000);
    for &p in &primes {
        let mut direct = 0u64;
        for n in 1..=top_fact {
            let mut m = n;
            while m % p == 0 {
                direct += 1;
                m /= p;
            }
            let closed = legendre(n, p).expect("p is prime");
            o.check(closed == direct, || {
                format!("legendre({n}, {p}) = {closed}, direct sum = {direct}")
            });
        }
    }
    o
}

// ---------------------------------------------------------------------------
// 9. The 16-cell (s*, d*) table reproduces the frozen reference entries,
//    as equivalence classes of normalizations.
// ---------------------------------------------------------------------------

/// Reference normalizations for each (s, d) cell. Where the search finds a
/// smaller equivalent normalization first, the reference is still accepted
/// because membership is checked against the full profile.
const TABLE_REFERENCE: [((u64, u64), (u64, u64)); 16] = [
    ((2, 3), (1, 1)),
    ((2, 5), (1, 1)),
    ((2, 7), (1, 1)),
    ((2, 9), (1, 1)),
    ((3, 3), (3, 2)),
    ((3, 5), (1, 1)),
    ((3, 7), (7, 4)),
    ((3, 9), (9, 6)),
    ((4, 3), (1, 1)),
    ((4, 5), (5, 3)),
    ((4, 7), (7, 4)),
    ((4, 9), (1, 1)),
    ((5, 3), (1, 1)),
    ((5, 5), (5, 2)),
    ((5, 7), (1, 1)),
    ((5, 9), (1, 1)),
];

fn c09_table(cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let n_max = eff(cfg, 5000);
    let cells = match commands::table_cells(n_max) {
        Ok(c) => c,
        Err(e) => {
            o.check(false, || format!("table computation refused: {e:?}"));
            return o;
        }
    };
    for (cell, ((s, d), (s_star, d_star))) in cells.iter().zip(TABLE_REFERENCE) {
        o.check(cell.s == s && cell.d == d, || {
            format!("cell order drifted: got ({}, {}), want ({s}, {d})", cell.s, cell.d)
        });
        o.check(cell.candidate.is_some(), || {
            format!("search found no candidate for (s, d) = ({s}, {d})")
        });
        let reference = ConjectureCandidate { s_star, d_star };
        let matches = conjecture_matches(s, d, n_max, reference).expect("valid d");
        o.check(matches, || {
            format!("reference ({s_star}, {d_star}) does not match the profile at ({s}, {d})")
        });
    }
    o
}

// ---------------------------------------------------------------------------
// 10. Tail floors: closed form proven on the grid, enclosure pins every
//     floor, and the weighted sum closes to 1 at (1, 1).
// ---------------------------------------------------------------------------

fn floor_of(x: &Rational) -> Integer {
    x.floor().to_integer()
}

fn c10_tails(cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let top_n = eff(cfg, 10);

    let check_cert = |s: i64, t: i64, r: u32, n: u64, power: u32, o: &mut Outcome| {
        let cert = match tail_floor(s, t, r, n, power) {
            Ok(c) => c,
            Err(e) => {
                o.check(false, || {
                    format!("tail ({s},{t}) r={r} n={n} power={power} refused: {e}")
                });
                return;
            }
        };
        o.check(cert.regime == TailRegime::Proven && cert.prediction_proven, || {
            format!("tail ({s},{t}) r={r} n={n} power={power} not in the proven regime")
        });
        o.check(cert.floor == cert.predicted, || {
            format!(
                "tail ({s},{t}) r={r} n={n} power={power}: floor {} vs predicted {}",
                cert.floor, cert.predicted
            )
        });
        // The enclosure [S, S + R] must pin the floor of the reciprocal.
        let hi = Rational::one() / cert.partial_sum.clone();
        let lo = Rational::one() / (cert.partial_sum.clone() + cert.remainder_bound.clone());
        let pinned = floor_of(&lo) == floor_of(&hi) && floor_of(&lo) == cert.floor;
        o.check(pinned, || {
            format!("tail ({s},{t}) r={r} n={n} power={power}: enclosure does not pin the floor")
        });
    };

    for s in 1..=5i64 {
        for t in 1..=s {
            for r in 1..=3u32 {
                for n in 1..=top_n {
                    check_cert(s, t, r, n, 1, &mut o);
                }
            }
        }
    }
    for s in 1..=5i64 {
        for r in 1..=3u32 {
            for n in 1..=top_n {
                check_cert(s, 1, r, n, 2, &mut o);
            }
        }
    }

    match certified_sum_nice1(1, 1) {
        Ok(sum) => {
            o.check(sum.closed_value == Rational::one(), || {
                format!("weighted sum at (1,1) closed to {}", sum.closed_value)
            });
            o.check(!sum.symbolic_witness.is_empty(), || {
                "weighted sum carries no symbolic witness".into()
            });
            let lo = sum.partial_sum.clone();
            let hi = sum.partial_sum + sum.remainder_bound;
            o.check(lo <= Rational::one() && Rational::one() <= hi, || {
                "weighted sum enclosure misses 1".into()
            });
        }
        Err(e) => o.check(false, || format!("weighted sum at (1,1) refused: {e}")),
    }
    o
}

// ---------------------------------------------------------------------------
// 11. Non-polynomial binomials are detected exactly, with the reduced
//     denominator as the witness.
// ---------------------------------------------------------------------------

fn c11_witnesses(_cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    let sym = SeqParams::symbolic();

    let luc = lucanomial(4, 2, &sym).expect("symbolic parameters are fine");
    o.check(!luc.is_polynomial(), || "<4 choose 2> reported polynomial".into());
    let witness_text = luc.witness.as_ref().map(|w| w.to_text());
    o.check(witness_text.as_deref() == Some("s^2 + 2*t"), || {
        format!("<4 choose 2> witness is {witness_text:?}, want s^2 + 2*t")
    });
    o.check(
        luc.witness.as_ref() == Some(&lucas_poly(2, &sym)),
        || "<4 choose 2> witness is not the Lucas polynomial <2>".into(),
    );

    let luc31 = lucanomial(3, 1, &sym).expect("symbolic parameters are fine");
    o.check(luc31.is_polynomial(), || "<3 choose 1> should be the polynomial <3>".into());

    let q63 = fibonomial_q(6, 3, &sym).expect("symbolic parameters are fine");
    o.check(!q63.is_polynomial(), || "{6 choose 3}(q) reported polynomial".into());
    o.check(q63.witness.is_some(), || "{6 choose 3}(q) carries no witness".into());

    let fib63 = fibonomial(6, 3, &sym).expect("symbolic parameters are fine");
    o.check(fib63.is_polynomial(), || "{6 choose 3} must be a polynomial".into());
    o
}

// ---------------------------------------------------------------------------
// 12. Rendering is deterministic: a fixed bundle of commands produces
//     byte-identical output when re-rendered.
// ---------------------------------------------------------------------------

fn determinism_bundle() -> Vec<Resolved> {
    let resolved = |format: Format, latex: bool, cmd: Cmd| Resolved {
        format,
        latex,
        cap: None,
        jobs: None,
        cmd,
    };
    vec![
        resolved(
            Format::Json,
            false,
            Cmd::Seq(SeqArgs {
                kind: SeqKindArg::Fib,
                n: Some(4),
                upto: None,
                s: None,
                t: None,
                q: None,
            }),
        ),
        resolved(
            Format::Text,
            true,
            Cmd::Seq(SeqArgs {
                kind: SeqKindArg::Lucas,
                n: None,
                upto: Some(8),
                s: None,
                t: None,
                q: None,
            }),
        ),
        resolved(
            Format::Json,
            false,
            Cmd::Binom(BinomArgs {
                n: 4,
                k: 2,
                lucas: true,
                fib_q: false,
                gaussian: false,
                s: None,
                t: None,
            }),
        ),
        resolved(
            Format::Csv,
            false,
            Cmd::Catalan(CatalanArgs { n: None, upto: Some(6), s: None, t: None }),
        ),
        resolved(
            Format::Json,
            false,
            Cmd::Valuation(crate::args::ValuationArgs {
                kind: crate::args::ValKind::Fib,
                s: Some(3),
                t: Some(5),
                n: None,
                upto: Some(64),
                d: None,
                p: None,
                m: None,
                x: None,
            }),
        ),
        resolved(
            Format::Json,
            false,
            Cmd::Conjecture(ConjectureArgs {
                s: 3,
                d: 3,
                max_n: Some(500),
                s_star: None,
                d_star: None,
            }),
        ),
        resolved(
            Format::Text,
            false,
            Cmd::Identity(IdentityArgs {
                id: Some("euler-cassini".into()),
                list: false,
                mode: None,
                ranges: Some("n=6,m=4,k=4,r=2".into()),
            }),
        ),
        resolved(
            Format::Json,
            false,
            Cmd::Tails(TailsArgs {
                op: TailsOp::Floor { s: 2, t: 1, r: 1, n: 5, power: 1 },
            }),
        ),
        resolved(
            Format::Json,
            false,
            Cmd::Tails(TailsArgs { op: TailsOp::Sum { s: 2, t: 3 } }),
        ),
        resolved(
            Format::Csv,
            false,
            Cmd::Tails(TailsArgs {
                op: TailsOp::Eval { s: 1, t: 1, z: "1/2".into(), terms: 32 },
            }),
        ),
        resolved(
            Format::Csv,
            false,
            Cmd::Table(TableArgs { paper_3: true, max_n: Some(500) }),
        ),
    ]
}

fn c12_determinism(_cfg: &VerifyCfg) -> Outcome {
    let mut o = Outcome::new();
    for (i, spec) in determinism_bundle().iter().enumerate() {
        let first = commands::render(spec);
        let second = commands::render(spec);
        match (first, second) {
            (Ok(a), Ok(b)) => {
                o.check(a.stdout == b.stdout && a.failed == b.failed, || {
                    format!("bundle entry {i} rendered differently on the second pass")
                });
                // JSON entries must also stay parseable.
                if matches!(spec.format, Format::Json) {
                    let parsed: Result<serde_json::Value, _> = serde_json::from_str(&a.stdout);
                    o.check(parsed.is_ok(), || {
                        format!("bundle entry {i} emitted unparseable JSON")
                    });
                    // Round-tripping through the sorted-map printer is a
                    // fixed point, which pins key order.
                    if let Ok(v) = parsed {
                        let reprinted = format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
                        o.check(reprinted == a.stdout, || {
                            format!("bundle entry {i} is not in canonical key order")
                        });
                    }
                }
            }
            (a, b) => {
                o.check(a.is_ok() && b.is_ok(), || {
                    format!("bundle entry {i} refused to render")
                });
            }
        }
    }
    o
}
