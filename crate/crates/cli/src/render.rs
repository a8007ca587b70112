//! Deterministic CSV/JSON rendering of reports and sweeps.

use std::fmt::Write as _;

use qpd_core::analysis::{Sweep, SweepRecord, ThresholdReport};
use qpd_core::{Equilibrium, EquilibriumReport};
use serde::Serialize;

pub const SWEEP_HEADER: &str =
    "gamma,delta,eta,ne_count,best_profile,best_type,payoff_A,payoff_B,c_AB,c_QB,c_QA,all_ne";
pub const INTERP_HEADER: &str = "t,gamma,delta,eta,ne_count,best_type,payoff_A,payoff_B";

/// `x` with 12 significant digits, trailing zeros dropped, exponent form only
/// for very large or small magnitudes. Locale-independent.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn profile_pair(e: &Equilibrium) -> String {
    format!("{}|{}", e.profile.alice, e.profile.bob)
}

fn all_ne(report: &EquilibriumReport) -> String {
    report
        .equilibria
        .iter()
        .map(|e| {
            format!(
                "{}|{}|{}|{}",
                profile_pair(e),
                e.kind,
                sig12(e.payoffs.alice),
                sig12(e.payoffs.bob)
            )
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// One line per equilibrium, `alice,bob,type,payoff_A,payoff_B`, or `NONE`.
pub fn ne_text(report: &EquilibriumReport) -> String {
    if report.is_empty() {
        return "NONE\n".into();
    }
    let mut out = String::new();
    for e in &report.equilibria {
        writeln!(
            out,
            "{},{},{},{},{}",
            e.profile.alice,
            e.profile.bob,
            e.kind,
            sig12(e.payoffs.alice),
            sig12(e.payoffs.bob)
        )
        .unwrap();
    }
    out
}

pub fn ne_json(report: &EquilibriumReport) -> String {
    #[derive(Serialize)]
    struct Row {
        alice: String,
        bob: String,
        kind: String,
        payoff_a: f64,
        payoff_b: f64,
    }
    let rows: Vec<Row> = report
        .equilibria
        .iter()
        .map(|e| Row {
            alice: e.profile.alice.to_string(),
            bob: e.profile.bob.to_string(),
            kind: e.kind.to_string(),
            payoff_a: e.payoffs.alice,
            payoff_b: e.payoffs.bob,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
}

fn best_fields(record: &SweepRecord) -> (String, String, String, String) {
    match record.report.best() {
        Some(b) => (
            profile_pair(b),
            b.kind.to_string(),
            sig12(b.payoffs.alice),
            sig12(b.payoffs.bob),
        ),
        None => Default::default(),
    }
}

pub fn sweep_csv(sweep: &Sweep) -> String {
    let mut out = String::with_capacity(sweep.records.len() * 96);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in &sweep.records {
        let (profile, kind, pa, pb) = best_fields(r);
        let c = &r.concurrences;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            sig12(r.params.gamma),
            sig12(r.params.delta),
            sig12(r.params.eta),
            r.ne_count(),
            profile,
            kind,
            pa,
            pb,
            sig12(c.ab),
            sig12(c.qb),
            sig12(c.qa),
            all_ne(&r.report)
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct EquilibriumJson {
    alice: String,
    bob: String,
    kind: String,
    payoff_a: f64,
    payoff_b: f64,
}

#[derive(Serialize)]
struct SweepRowJson {
    gamma: f64,
    delta: f64,
    eta: f64,
    ne_count: usize,
    best: Option<usize>,
    c_ab: f64,
    c_qb: f64,
    c_qa: f64,
    equilibria: Vec<EquilibriumJson>,
}

fn sweep_row_json(r: &SweepRecord) -> SweepRowJson {
    SweepRowJson {
        gamma: r.params.gamma,
        delta: r.params.delta,
        eta: r.params.eta,
        ne_count: r.ne_count(),
        best: r.report.best,
        c_ab: r.concurrences.ab,
        c_qb: r.concurrences.qb,
        c_qa: r.concurrences.qa,
        equilibria: r
            .report
            .equilibria
            .iter()
            .map(|e| EquilibriumJson {
                alice: e.profile.alice.to_string(),
                bob: e.profile.bob.to_string(),
                kind: e.kind.to_string(),
                payoff_a: e.payoffs.alice,
                payoff_b: e.payoffs.bob,
            })
            .collect(),
    }
}

pub fn sweep_json(sweep: &Sweep) -> String {
    let rows: Vec<SweepRowJson> = sweep.records.iter().map(sweep_row_json).collect();
    serde_json::to_string(&rows).expect("serializable") + "\n"
}

pub fn interp_csv(rows: &[(f64, SweepRecord)]) -> String {
    let mut out = String::from(INTERP_HEADER);
    out.push('\n');
    for (t, r) in rows {
        let (_, kind, pa, pb) = best_fields(r);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            sig12(*t),
            sig12(r.params.gamma),
            sig12(r.params.delta),
            sig12(r.params.eta),
            r.ne_count(),
            kind,
            pa,
            pb
        )
        .unwrap();
    }
    out
}

pub fn interp_json(rows: &[(f64, SweepRecord)]) -> String {
    #[derive(Serialize)]
    struct Row {
        t: f64,
        #[serde(flatten)]
        record: SweepRowJson,
    }
    let rows: Vec<Row> = rows
        .iter()
        .map(|(t, r)| Row {
            t: *t,
            record: sweep_row_json(r),
        })
        .collect();
    serde_json::to_string(&rows).expect("serializable") + "\n"
}

/// Quotes a CSV field when it contains a separator, quote or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn thresholds_csv(report: &ThresholdReport) -> String {
    let mut out = String::from("claim,reference,computed\n");
    for r in report.rows() {
        writeln!(
            out,
            "{},{},{}",
            csv_field(r.claim),
            csv_field(&r.reference),
            csv_field(&r.computed)
        )
        .unwrap();
    }
    out
}

pub fn thresholds_json(report: &ThresholdReport) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        report: &'a ThresholdReport,
        rows: Vec<qpd_core::analysis::thresholds::ReportRow>,
    }
    serde_json::to_string_pretty(&Out {
        report,
        rows: report.rows(),
    })
    .expect("serializable")
        + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(11.0), "11");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(std::f64::consts::FRAC_PI_2), "1.57079632679");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(-2.25), "-2.25");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(1e-7), "1e-7");
        assert_eq!(sig12(1.5e-20), "1.5e-20");
        assert_eq!(sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(sig12(6.000000000000001), "6");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a, b"), "\"a, b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn header_column_count() {
        assert_eq!(SWEEP_HEADER.split(',').count(), 12);
        assert_eq!(INTERP_HEADER.split(',').count(), 8);
    }
}
