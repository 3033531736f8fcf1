//! Turn one resolved command into the exact bytes it prints. Everything
//! funnels through here so the acceptance suite can re-render commands
//! in-process and compare outputs byte for byte.

use serde_json::{Map, Value};

use fibkit_core::exactmath::BivarPoly;
use fibkit_core::fibonomials::{
    catalan, fibonomial, fibonomial_neg, fibonomial_q, gaussian_binomial, lucanomial,
};
use fibkit_core::identities::{registry, run_identity, Ranges, Verdict};
use fibkit_core::sequences::{fib_poly, fib_q_poly, lucas_poly, SeqParams};
use fibkit_core::series::{certified_sum_nice1, genfun_specialize, tail_floor, TailRegime};
use fibkit_core::valuations::{
    carries, conjecture_matches, conjecture_search, legendre, nu, nu_catalan_closed,
    nu_catalan_closed_sweep, nu_d_special, nu_fib_brute, nu_fib_closed, nu_fib_prefix,
    nu_fibotorial_closed, ConjectureCandidate, ConjectureReport, Valuation, ValuationResult,
};
use fibkit_core::{Integer, Rational};

use crate::args::{
    BinomArgs, CatalanArgs, Cmd, ConjectureArgs, IdentityArgs, Resolved, SeqArgs, SeqKindArg,
    TableArgs, TailsArgs, TailsOp, ValKind, ValuationArgs, VerifyAllArgs,
};
use crate::config;
use crate::output::{self, Format};
use crate::verify;
use crate::CliError;

/// Finished stdout plus whether the run's verdict was a failure (exit 1).
pub struct Rendered {
    pub stdout: String,
    pub failed: bool,
}

impl Rendered {
    fn ok(stdout: String) -> Self {
        Rendered { stdout, failed: false }
    }
}

pub fn render(r: &Resolved) -> Result<Rendered, CliError> {
    match &r.cmd {
        Cmd::Seq(a) => seq(r, a),
        Cmd::Binom(a) => binom(r, a),
        Cmd::Catalan(a) => catalan_cmd(r, a),
        Cmd::Valuation(a) => valuation(r, a),
        Cmd::Conjecture(a) => conjecture(r, a),
        Cmd::Identity(a) => identity(r, a),
        Cmd::Tails(a) => tails(r, a),
        Cmd::Table(a) => table(r, a),
        Cmd::VerifyAll(a) => verify_all(r, a),
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn series_err(e: fibkit_core::series::SeriesError) -> CliError {
    use fibkit_core::series::SeriesError::*;
    match e {
        BadInput(_) | Diverges(_) => CliError::Usage(e.to_string()),
        OutsideProvenRegime(_) | CertificationFailed { .. } => CliError::Failed(e.to_string()),
    }
}

fn seq_params(s: Option<i64>, t: Option<i64>, q: Option<i64>) -> SeqParams {
    SeqParams {
        s: s.map(Integer::from),
        t: t.map(Integer::from),
        q: q.map(Integer::from),
    }
}

/// A JSON scalar flattened for a CSV cell: strings bare, null empty.
fn value_to_csv(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn json_object(command: &str, fields: &[(&str, Value)]) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    for (k, v) in fields {
        map.insert((*k).to_string(), v.clone());
    }
    Value::Object(map)
}

/// Shared shape for commands that print one record: text is the bare value,
/// JSON is the full field set, CSV is a header line plus one row.
fn single_output(
    ctx: &Resolved,
    command: &str,
    fields: &[(&str, Value)],
    text: String,
) -> Rendered {
    match ctx.format {
        Format::Text => Rendered::ok(text),
        Format::Json => Rendered::ok(output::json_doc(&json_object(command, fields))),
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let row: Vec<String> = fields.iter().map(|(_, v)| value_to_csv(v)).collect();
            Rendered::ok(output::csv_table(&header, &[row]))
        }
    }
}

fn kv_text(pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(v);
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// seq and catalan: one polynomial or a 0..=N sweep
// ---------------------------------------------------------------------------

struct PolyRow {
    n: i64,
    poly: BivarPoly,
}

/// Render a polynomial-producing command in both single and sweep forms.
/// `label` decorates sweep lines in text mode, e.g. "{3}" or "C(3)".
fn poly_output(
    ctx: &Resolved,
    command: &str,
    scalar_fields: &[(&str, Value)],
    rows: Vec<PolyRow>,
    single: bool,
    label: impl Fn(i64) -> String,
) -> Rendered {
    if single {
        let row = &rows[0];
        let mut fields = vec![("n", Value::from(row.n))];
        fields.extend(scalar_fields.iter().cloned());
        fields.push(("value", Value::String(row.poly.to_text())));
        if ctx.latex {
            fields.push(("latex", Value::String(row.poly.to_latex())));
        }
        fields.push(("terms", row.poly.json_terms()));
        let text = format!("{}\n", output::poly_str(&row.poly, ctx.latex));
        return single_output(ctx, command, &fields, text);
    }
    let upto = rows.last().map_or(0, |r| r.n);
    match ctx.format {
        Format::Text => {
            let mut out = String::new();
            for row in &rows {
                out.push_str(&format!(
                    "{} = {}\n",
                    label(row.n),
                    output::poly_str(&row.poly, ctx.latex)
                ));
            }
            Rendered::ok(out)
        }
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    m.insert("n".into(), Value::from(row.n));
                    m.insert("value".into(), Value::String(row.poly.to_text()));
                    if ctx.latex {
                        m.insert("latex".into(), Value::String(row.poly.to_latex()));
                    }
                    m.insert("terms".into(), row.poly.json_terms());
                    Value::Object(m)
                })
                .collect();
            let mut fields = vec![("upto", Value::from(upto))];
            fields.extend(scalar_fields.iter().cloned());
            fields.push(("values", Value::Array(values)));
            Rendered::ok(output::json_doc(&json_object(command, &fields)))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|row| vec![row.n.to_string(), output::poly_str(&row.poly, ctx.latex)])
                .collect();
            Rendered::ok(output::csv_table(&["n", "value"], &rows))
        }
    }
}

fn seq(ctx: &Resolved, a: &SeqArgs) -> Result<Rendered, CliError> {
    let params = seq_params(a.s, a.t, a.q);
    let kind_str = match a.kind {
        SeqKindArg::Fib => "fib",
        SeqKindArg::Lucas => "lucas",
        SeqKindArg::FibQ => "fib-q",
    };
    let poly_at = |n: i64| -> Result<BivarPoly, CliError> {
        match a.kind {
            SeqKindArg::Fib => fib_poly(n, &params).map_err(usage),
            SeqKindArg::Lucas => Ok(lucas_poly(n as u32, &params)),
            SeqKindArg::FibQ => Ok(fib_q_poly(n as u32, &params)),
        }
    };
    let label = |n: i64| match a.kind {
        SeqKindArg::Fib => format!("{{{n}}}"),
        SeqKindArg::Lucas => format!("<{n}>"),
        SeqKindArg::FibQ => format!("{{{n}}}(q)"),
    };

    let (rows, single) = match a.n {
        Some(n) => (vec![PolyRow { n, poly: poly_at(n)? }], true),
        None => {
            let upto = a.upto.expect("clap group guarantees n or upto");
            let mut rows = Vec::with_capacity(upto as usize + 1);
            for n in 0..=upto as i64 {
                rows.push(PolyRow { n, poly: poly_at(n)? });
            }
            (rows, false)
        }
    };
    let scalar = [
        ("kind", Value::String(kind_str.into())),
        ("s", output::opt_i64(a.s)),
        ("t", output::opt_i64(a.t)),
        ("q", output::opt_i64(a.q)),
    ];
    Ok(poly_output(ctx, "seq", &scalar, rows, single, label))
}

fn catalan_cmd(ctx: &Resolved, a: &CatalanArgs) -> Result<Rendered, CliError> {
    let params = seq_params(a.s, a.t, None);
    let (rows, single) = match a.n {
        Some(n) => (
            vec![PolyRow {
                n: n as i64,
                poly: catalan(n, &params).map_err(usage)?,
            }],
            true,
        ),
        None => {
            let upto = a.upto.expect("clap group guarantees n or upto");
            let mut rows = Vec::with_capacity(upto as usize + 1);
            for n in 0..=upto {
                rows.push(PolyRow {
                    n: n as i64,
                    poly: catalan(n, &params).map_err(usage)?,
                });
            }
            (rows, false)
        }
    };
    let scalar = [("s", output::opt_i64(a.s)), ("t", output::opt_i64(a.t))];
    Ok(poly_output(ctx, "catalan", &scalar, rows, single, |n| {
        format!("C({n})")
    }))
}

// ---------------------------------------------------------------------------
// binom
// ---------------------------------------------------------------------------

fn binom(ctx: &Resolved, a: &BinomArgs) -> Result<Rendered, CliError> {
    let params = seq_params(a.s, a.t, None);
    let variant = if a.gaussian {
        "gaussian"
    } else if a.fib_q {
        "fib-q"
    } else if a.lucas {
        "lucas"
    } else {
        "fib"
    };

    // Polynomial results carry no witness; rational-function results may.
    let (value_text, value_latex, poly, witness): (
        String,
        String,
        Option<BivarPoly>,
        Option<BivarPoly>,
    ) = if a.gaussian {
        let p = gaussian_binomial(a.n as u32, a.k);
        (p.to_text(), p.to_latex(), Some(p), None)
    } else if a.n < 0 {
        let p = fibonomial_neg(a.n.unsigned_abs() as u32, a.k, &params).map_err(usage)?;
        (p.to_text(), p.to_latex(), Some(p), None)
    } else {
        let n = a.n as u32;
        let result = if a.fib_q {
            fibonomial_q(n, a.k, &params)
        } else if a.lucas {
            lucanomial(n, a.k, &params)
        } else {
            fibonomial(n, a.k, &params)
        }
        .map_err(usage)?;
        (
            result.value.to_text(),
            result.value.to_latex(),
            result.as_poly(),
            result.witness.clone(),
        )
    };

    let mut fields = vec![
        ("variant", Value::String(variant.into())),
        ("n", Value::from(a.n)),
        ("k", Value::from(a.k)),
        ("s", output::opt_i64(a.s)),
        ("t", output::opt_i64(a.t)),
        ("polynomial", Value::Bool(witness.is_none())),
        ("value", Value::String(value_text.clone())),
        (
            "witness",
            match &witness {
                Some(w) => Value::String(w.to_text()),
                None => Value::Null,
            },
        ),
        (
            "terms",
            match &poly {
                Some(p) => p.json_terms(),
                None => Value::Null,
            },
        ),
    ];
    if ctx.latex {
        fields.push(("latex", Value::String(value_latex.clone())));
    }

    let shown = if ctx.latex { &value_latex } else { &value_text };
    let mut text = format!("{shown}\n");
    if let Some(w) = &witness {
        text.push_str(&format!(
            "not a polynomial; reduced denominator: {}\n",
            output::poly_str(w, ctx.latex)
        ));
    }
    Ok(single_output(ctx, "binom", &fields, text))
}

// ---------------------------------------------------------------------------
// valuation
// ---------------------------------------------------------------------------

struct ValRow {
    n: u64,
    value: Valuation,
    branch: Option<String>,
    brute: Option<Valuation>,
}

impl ValRow {
    fn plain(n: u64, value: Valuation) -> Self {
        ValRow { n, value, branch: None, brute: None }
    }

    fn from_result(n: u64, r: ValuationResult) -> Self {
        ValRow { n, value: r.value, branch: Some(r.branch), brute: r.brute }
    }

    fn fields(&self) -> Vec<(&'static str, Value)> {
        let mut fields = vec![(
            "value",
            serde_json::to_value(self.value).expect("valuations serialize"),
        )];
        if let Some(b) = &self.branch {
            fields.push(("branch", Value::String(b.clone())));
        }
        if let Some(b) = self.brute {
            fields.push(("brute", serde_json::to_value(b).expect("valuations serialize")));
            fields.push(("agrees", Value::Bool(b == self.value)));
        }
        fields
    }
}

fn valuation(ctx: &Resolved, a: &ValuationArgs) -> Result<Rendered, CliError> {
    let kind_str = match a.kind {
        ValKind::Fib => "fib",
        ValKind::Fibotorial => "fibotorial",
        ValKind::Catalan => "catalan",
        ValKind::Special => "special",
        ValKind::Int => "int",
        ValKind::Carries => "carries",
        ValKind::Legendre => "legendre",
    };

    // The scalar kinds return immediately; the sequence kinds fall through
    // to the shared single/sweep renderer below.
    match a.kind {
        ValKind::Int => {
            let d = a.d.unwrap_or(2);
            let raw = a.x.as_ref().expect("validated");
            let x: Integer = raw
                .parse()
                .map_err(|_| CliError::Usage(format!("--x `{raw}` is not an integer")))?;
            let v = nu(d, &x).map_err(usage)?;
            let fields = vec![
                ("kind", Value::String(kind_str.into())),
                ("d", Value::from(d)),
                ("x", Value::String(x.to_string())),
                ("value", serde_json::to_value(v).expect("valuations serialize")),
            ];
            return Ok(single_output(ctx, "valuation", &fields, format!("{v}\n")));
        }
        ValKind::Carries => {
            let (p, m, n) = (a.p.unwrap(), a.m.unwrap(), a.n.unwrap());
            let c = carries(m, n, p).map_err(usage)?;
            let fields = vec![
                ("kind", Value::String(kind_str.into())),
                ("p", Value::from(p)),
                ("m", Value::from(m)),
                ("n", Value::from(n)),
                ("value", Value::from(c)),
            ];
            return Ok(single_output(ctx, "valuation", &fields, format!("{c}\n")));
        }
        ValKind::Legendre => {
            let (p, n) = (a.p.unwrap(), a.n.unwrap());
            let v = legendre(n, p).map_err(usage)?;
            let fields = vec![
                ("kind", Value::String(kind_str.into())),
                ("p", Value::from(p)),
                ("n", Value::from(n)),
                ("value", Value::from(v)),
            ];
            return Ok(single_output(ctx, "valuation", &fields, format!("{v}\n")));
        }
        _ => {}
    }

    let d = a.d.unwrap_or(2);
    let mut scalar: Vec<(&'static str, Value)> = vec![
        ("kind", Value::String(kind_str.into())),
        ("d", Value::from(d)),
    ];
    if a.kind != ValKind::Special {
        scalar.push(("s", output::opt_i64(a.s)));
        scalar.push(("t", output::opt_i64(a.t)));
    }

    let rows: Vec<ValRow> = match (a.kind, a.upto) {
        (ValKind::Fib, None) => {
            let (s, t, n) = (a.s.unwrap(), a.t.unwrap(), a.n.unwrap());
            if d == 2 {
                vec![ValRow::from_result(n, nu_fib_closed(s, t, n).map_err(usage)?)]
            } else {
                vec![ValRow::plain(n, nu_fib_brute(d, s, t, n).map_err(usage)?)]
            }
        }
        (ValKind::Fib, Some(upto)) => {
            let (s, t) = (a.s.unwrap(), a.t.unwrap());
            if d == 2 {
                let mut rows = Vec::with_capacity(upto as usize + 1);
                for n in 0..=upto {
                    rows.push(ValRow::from_result(n, nu_fib_closed(s, t, n).map_err(usage)?));
                }
                rows
            } else {
                nu_fib_prefix(d, s, t, upto)
                    .map_err(usage)?
                    .into_iter()
                    .enumerate()
                    .map(|(n, v)| ValRow::plain(n as u64, v))
                    .collect()
            }
        }
        (ValKind::Fibotorial, None) => {
            let (s, t, n) = (a.s.unwrap(), a.t.unwrap(), a.n.unwrap());
            vec![ValRow::from_result(n, nu_fibotorial_closed(s, t, n).map_err(usage)?)]
        }
        (ValKind::Fibotorial, Some(upto)) => {
            let (s, t) = (a.s.unwrap(), a.t.unwrap());
            let mut rows = Vec::with_capacity(upto as usize + 1);
            for n in 0..=upto {
                rows.push(ValRow::from_result(
                    n,
                    nu_fibotorial_closed(s, t, n).map_err(usage)?,
                ));
            }
            rows
        }
        (ValKind::Catalan, None) => {
            let (s, t, n) = (a.s.unwrap(), a.t.unwrap(), a.n.unwrap());
            let n32 = u32::try_from(n)
                .map_err(|_| CliError::Usage("catalan indices must fit in 32 bits".into()))?;
            vec![ValRow::from_result(n, nu_catalan_closed(s, t, n32).map_err(usage)?)]
        }
        (ValKind::Catalan, Some(upto)) => {
            let (s, t) = (a.s.unwrap(), a.t.unwrap());
            let cap32 = u32::try_from(upto)
                .map_err(|_| CliError::Usage("catalan indices must fit in 32 bits".into()))?;
            nu_catalan_closed_sweep(s, t, cap32)
                .map_err(usage)?
                .into_iter()
                .enumerate()
                .map(|(n, r)| ValRow::from_result(n as u64, r))
                .collect()
        }
        (ValKind::Special, None) => {
            let n = a.n.unwrap();
            vec![ValRow::from_result(n, nu_d_special(d, n).map_err(usage)?)]
        }
        (ValKind::Special, Some(upto)) => {
            let mut rows = Vec::with_capacity(upto as usize + 1);
            for n in 0..=upto {
                rows.push(ValRow::from_result(n, nu_d_special(d, n).map_err(usage)?));
            }
            rows
        }
        _ => unreachable!("scalar kinds returned above"),
    };

    if a.upto.is_none() {
        let row = &rows[0];
        let mut fields = scalar;
        fields.push(("n", Value::from(row.n)));
        fields.extend(row.fields());
        let text = format!("{}\n", row.value);
        return Ok(single_output(ctx, "valuation", &fields, text));
    }

    let upto = a.upto.unwrap();
    match ctx.format {
        Format::Text => {
            let mut out = String::new();
            for row in &rows {
                out.push_str(&format!("{} {}\n", row.n, row.value));
            }
            Ok(Rendered::ok(out))
        }
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    m.insert("n".into(), Value::from(row.n));
                    for (k, v) in row.fields() {
                        m.insert(k.into(), v);
                    }
                    Value::Object(m)
                })
                .collect();
            let mut fields = scalar;
            fields.push(("upto", Value::from(upto)));
            fields.push(("values", Value::Array(values)));
            Ok(Rendered::ok(output::json_doc(&json_object("valuation", &fields))))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|row| vec![row.n.to_string(), row.value.to_string()])
                .collect();
            Ok(Rendered::ok(output::csv_table(&["n", "value"], &rows)))
        }
    }
}

// ---------------------------------------------------------------------------
// conjecture and table
// ---------------------------------------------------------------------------

fn candidate_str(c: &ConjectureCandidate) -> String {
    format!("s* = {}, d* = {}", c.s_star, c.d_star)
}

fn conjecture(ctx: &Resolved, a: &ConjectureArgs) -> Result<Rendered, CliError> {
    let n_max = a.max_n.unwrap_or_else(|| config::capped(5000, ctx.cap));

    if let (Some(s_star), Some(d_star)) = (a.s_star, a.d_star) {
        let cand = ConjectureCandidate { s_star, d_star };
        let matches = conjecture_matches(a.s, a.d, n_max, cand).map_err(usage)?;
        let fields = vec![
            ("mode", Value::String("check".into())),
            ("s", Value::from(a.s)),
            ("d", Value::from(a.d)),
            ("n_scanned", Value::from(n_max)),
            ("candidate", serde_json::to_value(cand).expect("candidates serialize")),
            ("matches", Value::Bool(matches)),
        ];
        let text = format!(
            "s = {}, d = {}, scanned n <= {}\ncandidate: {}\nmatches: {}\n",
            a.s,
            a.d,
            n_max,
            candidate_str(&cand),
            matches
        );
        let mut rendered = single_output(ctx, "conjecture", &fields, text);
        rendered.failed = !matches;
        return Ok(rendered);
    }

    let report = conjecture_search(a.s, a.d, n_max).map_err(usage)?;
    let found = report.candidate.is_some();
    let mut fields = vec![("mode", Value::String("search".into()))];
    let report_value = serde_json::to_value(&report).expect("reports serialize");
    let obj = report_value.as_object().expect("reports are objects");
    let mut sorted: Vec<(&str, Value)> =
        obj.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    fields.append(&mut sorted);

    let alternatives = if report.alternatives.is_empty() {
        "none".to_string()
    } else {
        report
            .alternatives
            .iter()
            .map(candidate_str)
            .collect::<Vec<_>>()
            .join("; ")
    };
    let text = format!(
        "s = {}, d = {}, scanned n <= {}\ncandidate: {}\nalternatives: {}\nnote: {}\n",
        report.s,
        report.d,
        report.n_scanned,
        report
            .candidate
            .as_ref()
            .map_or_else(|| "none".to_string(), candidate_str),
        alternatives,
        report.note
    );
    let mut rendered = single_output(ctx, "conjecture", &fields, text);
    rendered.failed = !found;
    Ok(rendered)
}

pub const TABLE_ROWS_S: [u64; 4] = [2, 3, 4, 5];
pub const TABLE_COLS_D: [u64; 4] = [3, 5, 7, 9];

/// The sixteen searches behind `table --paper-3`, in row-major order.
pub fn table_cells(n_max: u64) -> Result<Vec<ConjectureReport>, CliError> {
    use rayon::prelude::*;
    let pairs: Vec<(u64, u64)> = TABLE_ROWS_S
        .iter()
        .flat_map(|&s| TABLE_COLS_D.iter().map(move |&d| (s, d)))
        .collect();
    pairs
        .par_iter()
        .map(|&(s, d)| conjecture_search(s, d, n_max).map_err(usage))
        .collect()
}

fn table(ctx: &Resolved, a: &TableArgs) -> Result<Rendered, CliError> {
    let n_max = a.max_n.unwrap_or_else(|| config::capped(5000, ctx.cap));
    let cells = table_cells(n_max)?;

    match ctx.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = cells
                .iter()
                .map(|c| {
                    let (s_star, d_star) = match &c.candidate {
                        Some(cand) => (cand.s_star.to_string(), cand.d_star.to_string()),
                        None => (String::new(), String::new()),
                    };
                    let alts = c
                        .alternatives
                        .iter()
                        .map(|alt| format!("{}/{}", alt.s_star, alt.d_star))
                        .collect::<Vec<_>>()
                        .join(";");
                    vec![c.s.to_string(), c.d.to_string(), s_star, d_star, alts]
                })
                .collect();
            Ok(Rendered::ok(output::csv_table(
                &["s", "d", "s_star", "d_star", "alternatives"],
                &rows,
            )))
        }
        Format::Json => {
            let fields = vec![
                ("grid", Value::String("paper-3".into())),
                ("max_n", Value::from(n_max)),
                (
                    "cells",
                    Value::Array(
                        cells
                            .iter()
                            .map(|c| serde_json::to_value(c).expect("reports serialize"))
                            .collect(),
                    ),
                ),
            ];
            Ok(Rendered::ok(output::json_doc(&json_object("table", &fields))))
        }
        Format::Text => {
            let mut out = String::new();
            for c in &cells {
                let cand = c
                    .candidate
                    .as_ref()
                    .map_or_else(|| "none".to_string(), candidate_str);
                out.push_str(&format!("s = {}, d = {}: {}\n", c.s, c.d, cand));
            }
            Ok(Rendered::ok(out))
        }
    }
}

// ---------------------------------------------------------------------------
// identity
// ---------------------------------------------------------------------------

fn identity(ctx: &Resolved, a: &IdentityArgs) -> Result<Rendered, CliError> {
    if a.list {
        let specs = registry();
        return Ok(match ctx.format {
            Format::Text => {
                let mut out = String::new();
                for s in specs {
                    out.push_str(&format!("{:<22} {}\n", s.id, s.statement));
                }
                Rendered::ok(out)
            }
            Format::Json => {
                let list: Vec<Value> = specs
                    .iter()
                    .map(|s| {
                        let mut m = Map::new();
                        m.insert("id".into(), Value::String(s.id.into()));
                        m.insert("statement".into(), Value::String(s.statement.into()));
                        m.insert(
                            "modes".into(),
                            serde_json::to_value(s.modes).expect("modes serialize"),
                        );
                        Value::Object(m)
                    })
                    .collect();
                let fields = vec![("list", Value::Array(list))];
                Rendered::ok(output::json_doc(&json_object("identity", &fields)))
            }
            Format::Csv => {
                let rows: Vec<Vec<String>> = specs
                    .iter()
                    .map(|s| {
                        let modes = s
                            .modes
                            .iter()
                            .map(|m| format!("{m:?}"))
                            .collect::<Vec<_>>()
                            .join(";");
                        vec![s.id.to_string(), s.statement.to_string(), modes]
                    })
                    .collect();
                Rendered::ok(output::csv_table(&["id", "statement", "modes"], &rows))
            }
        });
    }

    let ranges = match &a.ranges {
        Some(spec) => crate::args::parse_ranges(spec)?,
        None => Ranges::default(),
    };
    let mode = a.mode.map(|m| m.to_mode());

    let verdicts: Vec<Verdict> = match &a.id {
        Some(id) => vec![run_identity(id, &ranges, mode).map_err(usage)?],
        None => match mode {
            None => fibkit_core::identities::run_all(&ranges),
            Some(m) => {
                let mut out = Vec::new();
                for spec in registry() {
                    if spec.modes.contains(&m) {
                        out.push(run_identity(spec.id, &ranges, mode).map_err(usage)?);
                    }
                }
                out
            }
        },
    };

    let n_pass = verdicts.iter().filter(|v| v.passed()).count();
    let n_fail = verdicts.len() - n_pass;
    let failed = n_fail > 0;

    let rendered = match ctx.format {
        Format::Text => {
            let mut out = String::new();
            for v in &verdicts {
                match &v.counterexample {
                    None => out.push_str(&format!("{:<22} pass  cases={}\n", v.id, v.cases)),
                    Some(c) => out.push_str(&format!(
                        "{:<22} FAIL  cases={}  at {}: {} != {}\n",
                        v.id, v.cases, c.location, c.lhs, c.rhs
                    )),
                }
            }
            out.push_str(&format!("{n_pass} passed, {n_fail} failed\n"));
            Rendered { stdout: out, failed }
        }
        Format::Json => {
            let fields = vec![
                ("ranges", serde_json::to_value(ranges).expect("ranges serialize")),
                (
                    "mode",
                    mode.map_or(Value::Null, |m| {
                        serde_json::to_value(m).expect("modes serialize")
                    }),
                ),
                (
                    "verdicts",
                    Value::Array(
                        verdicts
                            .iter()
                            .map(|v| serde_json::to_value(v).expect("verdicts serialize"))
                            .collect(),
                    ),
                ),
                ("passed", Value::Bool(!failed)),
            ];
            Rendered {
                stdout: output::json_doc(&json_object("identity", &fields)),
                failed,
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = verdicts
                .iter()
                .map(|v| {
                    let ce = v.counterexample.as_ref().map_or(String::new(), |c| {
                        format!("at {}: {} != {}", c.location, c.lhs, c.rhs)
                    });
                    vec![
                        v.id.to_string(),
                        v.passed().to_string(),
                        v.cases.to_string(),
                        ce,
                    ]
                })
                .collect();
            Rendered {
                stdout: output::csv_table(&["id", "passed", "cases", "counterexample"], &rows),
                failed,
            }
        }
    };
    Ok(rendered)
}

// ---------------------------------------------------------------------------
// tails
// ---------------------------------------------------------------------------

fn merge_report(command: &str, op: &str, report: Value) -> Value {
    let mut map = match report {
        Value::Object(m) => m,
        _ => unreachable!("reports serialize to objects"),
    };
    map.insert("command".into(), Value::String(command.into()));
    map.insert("op".into(), Value::String(op.into()));
    Value::Object(map)
}

fn tails(ctx: &Resolved, a: &TailsArgs) -> Result<Rendered, CliError> {
    match &a.op {
        TailsOp::Floor { s, t, r, n, power } => {
            let cert = tail_floor(*s, *t, *r, *n, *power).map_err(series_err)?;
            let regime = match cert.regime {
                TailRegime::Proven => "proven",
                TailRegime::ConjecturedNegativeT => "conjectured (t < 0)",
            };
            let text = kv_text(&[
                ("s", cert.s.to_string()),
                ("t", cert.t.to_string()),
                ("r", cert.r.to_string()),
                ("n", cert.n.to_string()),
                ("power", cert.power.to_string()),
                ("regime", regime.to_string()),
                ("terms used", cert.terms_used.to_string()),
                ("partial sum", output::rational_str(&cert.partial_sum)),
                ("remainder bound", output::rational_str(&cert.remainder_bound)),
                ("floor", cert.floor.to_string()),
                ("predicted", cert.predicted.to_string()),
                ("prediction proven", cert.prediction_proven.to_string()),
            ]);
            let json = merge_report(
                "tails",
                "floor",
                serde_json::to_value(&cert).expect("certificates serialize"),
            );
            tails_render(ctx, text, json)
        }
        TailsOp::Sum { s, t } => {
            let sum = certified_sum_nice1(*s, *t).map_err(series_err)?;
            let text = kv_text(&[
                ("s", sum.s.to_string()),
                ("t", sum.t.to_string()),
                ("closed value", output::rational_str(&sum.closed_value)),
                ("partial sum", output::rational_str(&sum.partial_sum)),
                ("remainder bound", output::rational_str(&sum.remainder_bound)),
                ("terms used", sum.terms_used.to_string()),
                ("witness", sum.symbolic_witness.clone()),
            ]);
            let json = merge_report(
                "tails",
                "sum",
                serde_json::to_value(&sum).expect("certificates serialize"),
            );
            tails_render(ctx, text, json)
        }
        TailsOp::Eval { s, t, z, terms } => {
            let z: Rational = z
                .parse()
                .map_err(|_| CliError::Usage(format!("--z `{z}` is not a rational p/q")))?;
            let eval = genfun_specialize(*terms, *s, *t, &z).map_err(series_err)?;
            let text = kv_text(&[
                ("s", eval.s.to_string()),
                ("t", eval.t.to_string()),
                ("z", output::rational_str(&eval.z)),
                ("value", output::rational_str(&eval.value)),
                ("partial sum", output::rational_str(&eval.partial_sum)),
                ("remainder bound", output::rational_str(&eval.remainder_bound)),
                ("terms used", eval.terms_used.to_string()),
            ]);
            let json = merge_report(
                "tails",
                "eval",
                serde_json::to_value(&eval).expect("evaluations serialize"),
            );
            tails_render(ctx, text, json)
        }
    }
}

fn tails_render(ctx: &Resolved, text: String, json: Value) -> Result<Rendered, CliError> {
    Ok(match ctx.format {
        Format::Text => Rendered::ok(text),
        Format::Json => Rendered::ok(output::json_doc(&json)),
        Format::Csv => {
            let obj = json.as_object().expect("tails reports are objects");
            let fields: Vec<(&str, Value)> = obj
                .iter()
                .filter(|(k, _)| *k != "command")
                .map(|(k, v)| (k.as_str(), v.clone()))
                .collect();
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let row: Vec<String> = fields.iter().map(|(_, v)| value_to_csv(v)).collect();
            Rendered::ok(output::csv_table(&header, &[row]))
        }
    })
}

// ---------------------------------------------------------------------------
// verify-all
// ---------------------------------------------------------------------------

fn verify_all(ctx: &Resolved, a: &VerifyAllArgs) -> Result<Rendered, CliError> {
    let cfg = verify::VerifyCfg { cap: ctx.cap };
    let reports = match a.criterion {
        Some(i) => vec![verify::run_criterion(i, &cfg)],
        None => verify::run_all_criteria(&cfg),
    };
    let n_pass = reports.iter().filter(|r| r.passed).count();
    let n_fail = reports.len() - n_pass;
    let failed = n_fail > 0;

    let rendered = match ctx.format {
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let status = if r.passed { "pass" } else { "FAIL" };
                out.push_str(&format!(
                    "criterion {:>2} {status} {} (cases={})\n",
                    r.index, r.name, r.cases
                ));
                if !r.passed && !r.detail.is_empty() {
                    out.push_str(&format!("             {}\n", r.detail));
                }
            }
            out.push_str(&format!("{n_pass} passed, {n_fail} failed\n"));
            Rendered { stdout: out, failed }
        }
        Format::Json => {
            let criteria: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    m.insert("index".into(), Value::from(r.index));
                    m.insert("name".into(), Value::String(r.name.into()));
                    m.insert("passed".into(), Value::Bool(r.passed));
                    m.insert("cases".into(), Value::from(r.cases));
                    m.insert("detail".into(), Value::String(r.detail.clone()));
                    Value::Object(m)
                })
                .collect();
            let fields = vec![
                ("criteria", Value::Array(criteria)),
                ("passed", Value::Bool(!failed)),
            ];
            Rendered {
                stdout: output::json_doc(&json_object("verify-all", &fields)),
                failed,
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.name.to_string(),
                        r.passed.to_string(),
                        r.cases.to_string(),
                        r.detail.clone(),
                    ]
                })
                .collect();
            Rendered {
                stdout: output::csv_table(&["index", "name", "passed", "cases", "detail"], &rows),
                failed,
            }
        }
    };
    Ok(rendered)
}
