//! Text, CSV and JSON rendering of reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use ghwlab_core::verify::{InstanceReport, InstanceSummary, PeriodsReport, SweepReport};
use ghwlab_core::{FieldCtx, HierarchyReport, Instance, LinearCode, Rational};
use serde_json::{json, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A finished command: one report in every format.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// Header row first.
    pub csv: Vec<Vec<String>>,
    pub passed: bool,
}

pub fn format(o: &Outcome, f: Format) -> Result<String, String> {
    match f {
        Format::Json => serde_json::to_string_pretty(&o.json)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Text => Ok(o.text.clone()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &o.csv {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

fn rat(v: &Rational) -> String {
    if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn instance_label(i: &Instance) -> String {
    let mut s = format!("p={} m={} N={} family={}", i.p, i.m, i.n, i.family);
    if let Some(k) = i.skew {
        let _ = write!(s, " skew={k}");
    }
    s
}

fn summary_line(s: &InstanceSummary) -> String {
    let mut out = format!(
        "p={} m={} q={} N={} n1={} N1={} N2={} n2={}",
        s.p, s.m, s.q, s.n, s.n1, s.reduced_index, s.joint_index, s.n2
    );
    if let Some(f) = s.family {
        let _ = write!(out, " family={f}");
    }
    if let Some(k) = s.skew {
        let _ = write!(out, " skew={k}");
    }
    if !s.order_ok {
        out.push_str(" (ord_n1(p) != m)");
    }
    out
}

pub fn key_values(v: &Value) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
    if let Value::Object(map) = v {
        for (k, val) in map {
            rows.push(vec![k.clone(), val.to_string()]);
        }
    }
    rows
}

pub fn field_text(ctx: &FieldCtx) -> String {
    format!(
        "F_{} = F_{}[x]/({:?})\nmodulus (low degree first): {:?}\nalpha: {:?} (index {})\n",
        ctx.q(),
        ctx.p(),
        ctx.modulus(),
        ctx.modulus(),
        ctx.coeffs(ctx.alpha()),
        ctx.alpha().index()
    )
}

pub fn periods_text(s: &InstanceSummary, reports: &[PeriodsReport]) -> String {
    let mut out = summary_line(s) + "\n";
    for r in reports {
        let _ = writeln!(out, "\nperiods of order {}:", r.order);
        for e in &r.entries {
            let _ = writeln!(
                out,
                "  eta_{:<3} = {:>8}   counts {:?}",
                e.index,
                e.value
                    .as_ref()
                    .map_or_else(|| "irrational".to_string(), rat),
                e.counts
            );
        }
        let _ = writeln!(out, "  sum = -1: {}", r.sum_is_minus_one);
        let _ = writeln!(out, "  modulus bound holds: {}", r.bound_holds);
        if let Some(poly) = &r.polynomial {
            let _ = writeln!(out, "  period polynomial (low degree first): {poly:?}");
        }
        match (&r.prediction, &r.prediction_check) {
            (Some(p), Some(c)) => {
                let vals: Vec<String> = p.values.iter().map(rat).collect();
                let _ = writeln!(out, "  closed form: {}", p.labels.join("; "));
                let _ = writeln!(
                    out,
                    "  predicted {{{}}}, match: {}",
                    vals.join(", "),
                    c.passed()
                );
            }
            _ => out.push_str("  no closed form applies\n"),
        }
        for f in &r.failures {
            let _ = writeln!(out, "  FAIL {f}");
        }
    }
    out
}

pub fn periods_csv(reports: &[PeriodsReport]) -> Vec<Vec<String>> {
    let mut rows = vec![["order", "index", "value_num", "value_den", "counts"]
        .map(String::from)
        .to_vec()];
    for r in reports {
        for e in &r.entries {
            let (num, den) = e.value.map_or((String::new(), String::new()), |v| {
                (v.numer().to_string(), v.denom().to_string())
            });
            let counts: Vec<String> = e.counts.iter().map(u64::to_string).collect();
            rows.push(vec![
                r.order.to_string(),
                e.index.to_string(),
                num,
                den,
                counts.join(" "),
            ]);
        }
    }
    rows
}

pub fn code_text(inst: &Instance, code: &LinearCode, dist: &BTreeMap<u64, u64>) -> String {
    let mut out = format!(
        "{}\n[{}, {}] code over F_{}\n",
        instance_label(inst),
        code.n,
        code.k,
        code.ctx().p()
    );
    out.push_str("weight distribution:\n");
    for (w, c) in dist {
        let _ = writeln!(out, "  {w:>6}: {c}");
    }
    out
}

pub fn distribution_csv(dist: &BTreeMap<u64, u64>) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["weight".to_string(), "count".to_string()]];
    rows.extend(dist.iter().map(|(w, c)| vec![w.to_string(), c.to_string()]));
    rows
}

pub fn hierarchy_failures(rep: &HierarchyReport) -> Vec<String> {
    let mut out = rep.discrepancies.clone();
    for r in &rep.records {
        out.extend(r.discrepancies.iter().map(|d| format!("r={}: {d}", r.r)));
    }
    out
}

pub fn hierarchy_summary(rep: &HierarchyReport) -> Value {
    json!({
        "n": rep.n,
        "k": rep.k,
        "over_budget": rep.over_budget,
        "truncated_at": rep.truncated_at,
        "corollaries": rep.corollaries,
        "max_period_exact": rep.max_period_exact.map(|v| json!({"num": v.numer().to_string(), "den": v.denom().to_string()})),
        "max_period_match": rep.max_period_match,
    })
}

pub fn hierarchy_text(s: &InstanceSummary, rep: &HierarchyReport) -> String {
    let mut out = summary_line(s) + "\n";
    let _ = writeln!(out, "[{}, {}] code", rep.n, rep.k);
    for c in &rep.corollaries {
        let _ = writeln!(out, "corollary {} (r <= {})", c.label, c.r_max);
    }
    let _ = writeln!(
        out,
        "{:>3} {:>8} {:>8}  {:>5} {:>5} {:>7} {:>8}  {:<6} closed form",
        "r", "brute", "closed", "lo", "hi", "plotkin", "griesmer", "status"
    );
    for r in &rep.records {
        let b = r.bounds;
        let closed = r.d_closed.as_ref();
        let _ = writeln!(
            out,
            "{:>3} {:>8} {:>8}  {:>5} {:>5} {:>7} {:>8}  {:<6} {}",
            r.r,
            opt(r.d_brute),
            opt(closed.map(|c| c.value)),
            opt(b.map(|b| b.singleton_lo)),
            opt(b.map(|b| b.singleton_hi)),
            opt(b.map(|b| b.plotkin)),
            opt(b.map(|b| b.griesmer)),
            if r.passed() { "ok" } else { "FAIL" },
            closed.map_or(String::new(), |c| c.labels.join("; "))
        );
    }
    if !rep.over_budget.is_empty() {
        let _ = writeln!(out, "brute force over budget at r = {:?}", rep.over_budget);
    }
    for f in hierarchy_failures(rep) {
        let _ = writeln!(out, "FAIL {f}");
    }
    let _ = writeln!(
        out,
        "verdict: {}",
        if rep.passed() { "pass" } else { "FAIL" }
    );
    out
}

pub fn hierarchy_csv(rep: &HierarchyReport) -> Vec<Vec<String>> {
    let mut rows = vec![[
        "r",
        "d_brute",
        "d_closed",
        "corollary",
        "singleton_lo",
        "singleton_hi",
        "plotkin",
        "griesmer",
        "passed",
    ]
    .map(String::from)
    .to_vec()];
    for r in &rep.records {
        let b = r.bounds;
        rows.push(vec![
            r.r.to_string(),
            r.d_brute.map_or(String::new(), |v| v.to_string()),
            r.d_closed
                .as_ref()
                .map_or(String::new(), |c| c.value.to_string()),
            r.d_closed
                .as_ref()
                .map_or(String::new(), |c| c.labels.join("; ")),
            b.map_or(String::new(), |b| b.singleton_lo.to_string()),
            b.map_or(String::new(), |b| b.singleton_hi.to_string()),
            b.map_or(String::new(), |b| b.plotkin.to_string()),
            b.map_or(String::new(), |b| b.griesmer.to_string()),
            r.passed().to_string(),
        ]);
    }
    rows
}

pub fn verify_text(rep: &InstanceReport) -> String {
    let mut out = periods_text(&rep.instance, &rep.periods);
    out.push('\n');
    for c in &rep.checks {
        let _ = writeln!(
            out,
            "{:<6} {} {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    out.push('\n');
    out.push_str(&hierarchy_text(&rep.instance, &rep.hierarchy));
    out
}

pub fn sweep_text(rep: &SweepReport) -> String {
    let mut out = format!(
        "sweep q <= {}: {} instances, {} passed, {} failed, {} records over budget\n",
        rep.q_max, rep.instances, rep.passed, rep.failed, rep.over_budget_records
    );
    for (fam, (ok, bad)) in &rep.by_family {
        let _ = writeln!(out, "  family {fam}: {ok} passed, {bad} failed");
    }
    for e in rep.entries.iter().filter(|e| !e.passed) {
        let _ = writeln!(
            out,
            "FAIL {}: {}",
            instance_label(&e.instance),
            e.failures.join("; ")
        );
    }
    out
}

pub fn sweep_csv(rep: &SweepReport) -> Vec<Vec<String>> {
    let mut rows = vec![[
        "p",
        "m",
        "N",
        "family",
        "skew",
        "passed",
        "d",
        "over_budget",
    ]
    .map(String::from)
    .to_vec()];
    for e in &rep.entries {
        let i = &e.instance;
        let d: Vec<String> = e.d.iter().map(|v| opt(*v)).collect();
        let ob: Vec<String> = e.over_budget.iter().map(u32::to_string).collect();
        rows.push(vec![
            i.p.to_string(),
            i.m.to_string(),
            i.n.to_string(),
            i.family.to_string(),
            i.skew.map_or(String::new(), |s| s.to_string()),
            e.passed.to_string(),
            d.join(" "),
            ob.join(" "),
        ]);
    }
    rows
}
