//! Text, JSON, LaTeX, DOT and CSV renderers.
//!
//! Every renderer is a pure function from library data to an output `String`,
//! which keeps the binary byte-deterministic for identical inputs. JSON is
//! emitted through `serde_json` with sorted object keys.

use std::fmt::Write as _;

use semihilb::motivic::ZetaSeries;
use semihilb::oracle::VerifyReport;
use semihilb::strata::GenSeries;
use semihilb::tree::SemimoduleTree;
use semihilb::{HomflyPolynomial, LPolynomial, NumericalSemigroup};
use serde_json::{json, Value};

pub fn fmt_generators(gens: &[u64]) -> String {
    let inner: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("<{}>", inner.join(","))
}

fn fmt_set(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Formats one `poly * sym^power` product, e.g. `L^2 q^3` or `(1 + L)s^2`.
/// The coefficient polynomial is parenthesised unless it is a single
/// positive monomial, and a factor `1` is dropped next to a power of `sym`.
fn fmt_poly_times_power(poly: &LPolynomial, sym: &str, power: usize) -> Option<String> {
    if poly.is_zero() {
        return None;
    }
    let positive_monomials = poly.coeffs().iter().filter(|&&c| c > 0).count();
    let negatives = poly.coeffs().iter().any(|&c| c < 0);
    let inner = poly.to_string();
    let coeff = if positive_monomials == 1 && !negatives {
        inner
    } else {
        format!("({inner})")
    };
    let sym_part = match power {
        0 => String::new(),
        1 => sym.to_string(),
        k => format!("{sym}^{k}"),
    };
    Some(match (coeff.as_str(), sym_part.as_str()) {
        (c, "") => c.to_string(),
        ("1", s) => s.to_string(),
        (c, s) => format!("{c}{s}"),
    })
}

/// Renders `Σ_j polys[j] sym^j`, skipping zero coefficients.
fn fmt_poly_series(polys: &[LPolynomial], sym: &str) -> String {
    let terms: Vec<String> = polys
        .iter()
        .enumerate()
        .filter_map(|(j, p)| fmt_poly_times_power(p, sym, j))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn latex_lpoly(poly: &LPolynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, &c) in poly.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.unsigned_abs();
        let lefschetz = match k {
            0 => String::new(),
            1 => "\\mathbb{L}".to_string(),
            _ => format!("\\mathbb{{L}}^{{{k}}}"),
        };
        if mag != 1 || k == 0 {
            let _ = write!(out, "{mag}");
        }
        out.push_str(&lefschetz);
    }
    out
}

/// LaTeX analogue of [`fmt_poly_times_power`]; `sym` is already LaTeX
/// (e.g. `q` or `(1-a^{2})`), and exponents are braced.
fn latex_poly_times_power(poly: &LPolynomial, sym: &str, power: usize) -> Option<String> {
    if poly.is_zero() {
        return None;
    }
    let positive_monomials = poly.coeffs().iter().filter(|&&c| c > 0).count();
    let negatives = poly.coeffs().iter().any(|&c| c < 0);
    let inner = latex_lpoly(poly);
    let coeff = if positive_monomials == 1 && !negatives {
        inner
    } else {
        format!("\\left({inner}\\right)")
    };
    let sym_part = match power {
        0 => String::new(),
        1 => sym.to_string(),
        k => format!("{sym}^{{{k}}}"),
    };
    Some(match (coeff.as_str(), sym_part.as_str()) {
        (c, "") => c.to_string(),
        ("1", s) => s.to_string(),
        (c, s) => format!("{c}{s}"),
    })
}

fn latex_poly_series(polys: &[LPolynomial], sym: &str) -> String {
    let terms: Vec<String> = polys
        .iter()
        .enumerate()
        .filter_map(|(j, p)| latex_poly_times_power(p, sym, j))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn lpoly_json(poly: &LPolynomial) -> Value {
    let terms: Vec<Value> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| json!({ "L_power": k, "coeff": c }))
        .collect();
    Value::Array(terms)
}

fn to_pretty(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    out.push('\n');
    out
}

// --- zeta ---------------------------------------------------------------

pub fn zeta_text(semigroup: &NumericalSemigroup, lmax: u64, series: &ZetaSeries) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Gamma = {}  (delta = {}, conductor = {})",
        fmt_generators(semigroup.generators()),
        semigroup.delta(),
        semigroup.conductor()
    );
    for (level, class) in series.coefficients.iter().enumerate() {
        let _ = writeln!(out, "[C^[{level}]] = {class}");
    }
    match (&series.stabilization_level, &series.numerator) {
        (Some(level), Some(numerator)) => {
            let _ = writeln!(out, "stabilizes at colength {level}");
            let _ = writeln!(out, "Z(q) = ({}) / (1 - q)", fmt_poly_series(numerator, "q"));
        }
        _ => {
            let _ = writeln!(out, "no stabilization detected within colength {lmax}");
        }
    }
    out
}

pub fn zeta_json(series: &ZetaSeries) -> String {
    let coeffs: Vec<Value> = series.coefficients.iter().map(lpoly_json).collect();
    let numerator: Value = match &series.numerator {
        Some(polys) => Value::Array(polys.iter().map(lpoly_json).collect()),
        None => Value::Null,
    };
    to_pretty(&json!({
        "coeffs": coeffs,
        "numerator": numerator,
        "stabilization_level": series.stabilization_level,
    }))
}

pub fn zeta_latex(semigroup: &NumericalSemigroup, lmax: u64, series: &ZetaSeries) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% Gamma = {}", fmt_generators(semigroup.generators()));
    let _ = writeln!(out, "\\begin{{aligned}}");
    let mut lines: Vec<String> = series
        .coefficients
        .iter()
        .enumerate()
        .map(|(level, class)| format!("[C^{{[{level}]}}] &= {}", latex_lpoly(class)))
        .collect();
    match (&series.stabilization_level, &series.numerator) {
        (Some(_), Some(numerator)) => {
            lines.push(format!(
                "Z(q) &= \\frac{{{}}}{{1 - q}}",
                latex_poly_series(numerator, "q")
            ));
        }
        _ => {
            lines.push(format!(
                "&\\text{{no stabilization detected within colength {lmax}}}"
            ));
        }
    }
    let _ = writeln!(out, "{}", lines.join(" \\\\\n"));
    let _ = writeln!(out, "\\end{{aligned}}");
    out
}

// --- tree ---------------------------------------------------------------

pub fn tree_text(tree: &SemimoduleTree) -> String {
    let mut out = String::new();
    for (depth, level) in tree.levels().iter().enumerate() {
        let colength = depth + 1;
        let noun = if level.len() == 1 { "module" } else { "modules" };
        let _ = writeln!(out, "colength {colength} ({} {noun}):", level.len());
        for (i, module) in level.iter().enumerate() {
            let _ = write!(out, "  [{i}] {module} gaps {}", fmt_set(module.gap_set()));
            if depth > 0 {
                let parent = tree.parents()[depth][i];
                let deleted = tree.deleted_indices()[depth][i];
                let _ = write!(out, "  parent [{parent}] by d_{deleted}");
            }
            out.push('\n');
        }
    }
    if tree.levels().is_empty() {
        out.push_str("empty tree\n");
    }
    out
}

pub fn tree_json(tree: &SemimoduleTree) -> String {
    let levels: Vec<Value> = tree
        .levels()
        .iter()
        .map(|level| {
            Value::Array(
                level
                    .iter()
                    .map(|m| json!({ "gaps": m.gap_set(), "gens": m.min_generators() }))
                    .collect(),
            )
        })
        .collect();
    let edges: Vec<Value> = tree
        .parents()
        .iter()
        .skip(1)
        .map(|parents| json!(parents))
        .collect();
    to_pretty(&json!({ "edges": edges, "levels": levels }))
}

pub fn tree_dot(tree: &SemimoduleTree) -> String {
    let mut out = String::from("digraph semimodule_tree {\n  rankdir=TB;\n");
    for (depth, level) in tree.levels().iter().enumerate() {
        for (i, module) in level.iter().enumerate() {
            let _ = writeln!(out, "  n{depth}_{i} [label=\"{module}\"];");
        }
    }
    for (depth, parents) in tree.parents().iter().enumerate().skip(1) {
        for (i, &parent) in parents.iter().enumerate() {
            let deleted = tree.deleted_indices()[depth][i];
            let _ = writeln!(
                out,
                "  n{}_{parent} -> n{depth}_{i} [label=\"d_{deleted}\"];",
                depth - 1
            );
        }
    }
    out.push_str("}\n");
    out
}

// --- genzeta ------------------------------------------------------------

fn homfly_text(h: &HomflyPolynomial) -> String {
    h.to_string()
}

fn homfly_latex(h: &HomflyPolynomial) -> String {
    let mut out = String::new();
    for (&(a_exp, q_exp), &coeff) in h.terms() {
        if coeff == 0 {
            continue;
        }
        if out.is_empty() {
            if coeff < 0 {
                out.push('-');
            }
        } else if coeff < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = coeff.unsigned_abs();
        if mag != 1 || (a_exp == 0 && q_exp == 0) {
            let _ = write!(out, "{mag}");
        }
        if a_exp != 0 {
            let _ = write!(out, "a^{{{a_exp}}}");
        }
        if q_exp != 0 {
            let _ = write!(out, "q^{{{q_exp}}}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn homfly_json(h: &HomflyPolynomial) -> Value {
    let terms: Vec<Value> = h
        .terms()
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|(&(a_exp, q_exp), &c)| json!({ "a_power": a_exp, "coeff": c, "q_power": q_exp }))
        .collect();
    Value::Array(terms)
}

pub fn genzeta_text(
    semigroup: &NumericalSemigroup,
    series: &GenSeries,
    homfly: Option<&HomflyPolynomial>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Gamma = {}  (s = 1 - a^2, offset {})",
        fmt_generators(semigroup.generators()),
        series.exponent_offset
    );
    for (level, row) in series.rows.iter().enumerate() {
        let _ = writeln!(out, "[C^[{level}]]_m = {}", fmt_poly_series(row, "s"));
    }
    if let Some(h) = homfly {
        let _ = writeln!(out, "HOMFLY P = {}", homfly_text(h));
    }
    out
}

pub fn genzeta_json(series: &GenSeries, homfly: Option<&HomflyPolynomial>) -> String {
    let rows: Vec<Value> = series
        .rows
        .iter()
        .map(|row| Value::Array(row.iter().map(lpoly_json).collect()))
        .collect();
    let homfly_value = match homfly {
        Some(h) => homfly_json(h),
        None => Value::Null,
    };
    to_pretty(&json!({
        "exponent_offset": series.exponent_offset,
        "homfly": homfly_value,
        "rows": rows,
    }))
}

pub fn genzeta_latex(
    semigroup: &NumericalSemigroup,
    series: &GenSeries,
    homfly: Option<&HomflyPolynomial>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "% Gamma = {}, coefficient rows in (1-a^2)",
        fmt_generators(semigroup.generators())
    );
    let _ = writeln!(out, "\\begin{{aligned}}");
    let mut lines: Vec<String> = series
        .rows
        .iter()
        .enumerate()
        .map(|(level, row)| {
            format!(
                "[C^{{[{level}]}}]_m &= {}",
                latex_poly_series(row, "(1-a^{2})")
            )
        })
        .collect();
    if let Some(h) = homfly {
        lines.push(format!("P &= {}", homfly_latex(h)));
    }
    let _ = writeln!(out, "{}", lines.join(" \\\\\n"));
    let _ = writeln!(out, "\\end{{aligned}}");
    out
}

// --- verify -------------------------------------------------------------

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for row in &report.rows {
        let _ = write!(
            out,
            "l={} {}",
            row.level,
            match &row.gaps {
                Some(gaps) => format!("gaps {}", fmt_set(gaps)),
                None => "level".to_string(),
            }
        );
        if let Some(m) = row.m {
            let _ = write!(out, " m={m}");
        }
        let _ = writeln!(
            out,
            " q={} symbolic={} count={} {}",
            row.field,
            row.symbolic,
            row.count,
            if row.matches { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(out, "rows: {}, mismatches: {}", report.rows.len(), report.mismatches());
    out
}

pub fn verify_json(report: &VerifyReport) -> String {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "count": row.count as i64,
                "gaps": row.gaps,
                "level": row.level,
                "m": row.m,
                "match": row.matches,
                "q": row.field,
                "semigroup": row.semigroup,
                "symbolic": row.symbolic as i64,
            })
        })
        .collect();
    to_pretty(&json!({ "mismatches": report.mismatches(), "rows": rows }))
}

pub fn verify_csv(report: &VerifyReport) -> String {
    let mut out = String::from("semigroup,level,gaps,m,q,symbolic,count,match\n");
    for row in &report.rows {
        let semigroup: Vec<String> = row.semigroup.iter().map(|g| g.to_string()).collect();
        let gaps = match &row.gaps {
            Some(gaps) => gaps
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            None => String::new(),
        };
        let m = row.m.map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            semigroup.join(" "),
            row.level,
            gaps,
            m,
            row.field,
            row.symbolic,
            row.count,
            row.matches
        );
    }
    out
}
