//! Serialisation of bases, suite reports and dimension tables.

use monogenic::{BasisSet, SuiteReport};
use serde_json::{json, Value};

use crate::config::Session;

fn meta(session: &Session, extra: &[(&str, Value)]) -> Value {
    let mut m = json!({
        "group": session.family.to_string(),
        "d": session.dim(),
        "kappa": session.kappa_strings(),
        "eps": session.eps.value(),
    });
    for (k, v) in extra {
        m[*k] = v.clone();
    }
    m
}

pub fn basis_json(session: &Session, basis: &BasisSet) -> String {
    let elements: Vec<Value> = basis
        .elements
        .iter()
        .map(|e| {
            json!({
                "label": e.label.exps(),
                "spinor_index": e.spinor,
                "components": e.poly.to_json(),
            })
        })
        .collect();
    let doc = json!({
        "meta": meta(session, &[("degree", json!(basis.degree)), ("kind", json!(basis.kind.to_string()))]),
        "elements": elements,
        "certificates": {
            "rank": basis.certificate.rank,
            "expected": basis.certificate.expected,
            "kernel": basis.certificate.kernel,
        },
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data");
    out.push('\n');
    out
}

fn exps_text(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// One row per nonzero coefficient.
pub fn basis_csv(basis: &BasisSet) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "spinor_index", "component", "exponents", "coefficient"]).expect("in-memory write");
    for e in &basis.elements {
        let label = exps_text(e.label.exps());
        for (c, p) in e.poly.components().iter().enumerate() {
            for (m, coef) in p.terms() {
                w.write_record([
                    label.as_str(),
                    &e.spinor.to_string(),
                    &c.to_string(),
                    &exps_text(m.exps()),
                    &coef.to_string(),
                ])
                .expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 input")
}

pub fn basis_latex(session: &Session, basis: &BasisSet) -> String {
    let mut out = format!(
        "% {} basis of M_{}: group {}, kappa = ({}), eps = {}, rank {} of {}\n",
        basis.kind,
        basis.degree,
        session.family,
        session.kappa_strings().join(", "),
        session.eps,
        basis.certificate.rank,
        basis.certificate.expected,
    );
    out.push_str("\\begin{tabular}{lll}\n\\hline\n$\\mathbf{j}$ & $s$ & element \\\\\n\\hline\n");
    for e in &basis.elements {
        let label: Vec<String> = e.label.exps().iter().map(u32::to_string).collect();
        out.push_str(&format!(
            "$({})$ & $s_{{{}}}$ & ${}$ \\\\\n",
            label.join(","),
            e.spinor + 1,
            e.poly.to_latex()
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

pub fn report_text(report: &SuiteReport) -> String {
    format!("{report}\n")
}

pub fn report_json(session: &Session, report: &SuiteReport, max_degree: usize) -> String {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let doc = json!({
        "meta": meta(session, &[("max_degree", json!(max_degree))]),
        "suite": report.suite,
        "passed": report.passed(),
        "checks": checks,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data");
    out.push('\n');
    out
}

/// `(n, formula, certified rank)` rows.
pub type DimRow = (usize, usize, usize);

pub fn dims_text(rows: &[DimRow]) -> String {
    let mut out = format!("{:>3}  {:>6}  {:>6}\n", "n", "dim", "rank");
    for (n, dim, rank) in rows {
        out.push_str(&format!("{n:>3}  {dim:>6}  {rank:>6}\n"));
    }
    out
}

pub fn dims_csv(rows: &[DimRow]) -> String {
    let mut out = String::from("n,dim,rank\n");
    for (n, dim, rank) in rows {
        out.push_str(&format!("{n},{dim},{rank}\n"));
    }
    out
}

pub fn dims_json(session: &Session, rows: &[DimRow]) -> String {
    let rows: Vec<Value> = rows.iter().map(|(n, d, r)| json!({"n": n, "dim": d, "rank": r})).collect();
    let mut out = serde_json::to_string_pretty(&json!({"meta": meta(session, &[]), "rows": rows})).expect("plain data");
    out.push('\n');
    out
}

pub fn dims_latex(rows: &[DimRow]) -> String {
    let mut out = String::from("\\begin{tabular}{rrr}\n\\hline\n$n$ & $\\dim \\mathcal{M}_n$ & rank \\\\\n\\hline\n");
    for (n, dim, rank) in rows {
        out.push_str(&format!("{n} & {dim} & {rank} \\\\\n"));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
