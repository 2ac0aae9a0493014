//! Table, CSV and JSON renderings of each command's result.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use quadperiod::cfrac::{minus_steps_csv, plus_steps_csv, slow_steps_csv, CFStepMinus, CFStepPlus, SlowRun};
use quadperiod::modsums::{AStarResult, Representation, SumResult, ZagierList, VALUE_DIGITS};
use quadperiod::periods::{CocycleReport, IdentityAudit, PeriodPoly};
use quadperiod::qforms::ClassDump;
use quadperiod::verify::SuiteReport;
use quadperiod::{BigRational, IntPoly, QForm};

pub struct Payload {
    pub json: Value,
    pub table: String,
    pub csv: String,
    /// A verification inside the command failed; exit with status 2.
    pub failed: bool,
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

fn payload(json: Value, table: String, csv: String) -> Payload {
    Payload {
        json,
        table,
        csv,
        failed: false,
    }
}

/// The CSV dumps double as tables, with aligned columns.
fn align(csv: &str) -> String {
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(j, c)| format!("{c:>w$}", w = widths[j])).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

pub fn plus(steps: &[CFStepPlus], digits: usize) -> Payload {
    let csv = plus_steps_csv(steps, digits);
    payload(to_json(&steps), align(&csv), csv)
}

pub fn minus(steps: &[CFStepMinus], digits: usize) -> Payload {
    let csv = minus_steps_csv(steps, digits);
    payload(to_json(&steps), align(&csv), csv)
}

pub fn slow(run: &SlowRun, digits: usize) -> Payload {
    let csv = slow_steps_csv(&run.steps, digits);
    let mut table = align(&csv);
    let _ = writeln!(table, "end: {}", to_json(&run.end));
    payload(to_json(run), table, csv)
}

pub fn forms(d: i64, forms: &[QForm]) -> Payload {
    let mut csv = String::from("a,b,c\n");
    let mut table = format!("{} forms of discriminant {d}\n", forms.len());
    for q in forms {
        let _ = writeln!(csv, "{},{},{}", q.a, q.b, q.c);
        let _ = writeln!(table, "{q}");
    }
    payload(json!({ "D": d, "forms": to_json(&forms) }), table, csv)
}

pub fn classes(dump: &ClassDump) -> Payload {
    let mut csv = String::from("class,cycle,position,a,b,c\n");
    let mut table = format!("{} classes of discriminant {}\n", dump.classes.len(), dump.d);
    for (i, c) in dump.classes.iter().enumerate() {
        let cycles = [
            ("simple", &c.simple_cycle),
            ("reduced", &c.reduced_cycle),
            ("sigma-simple", &c.sigma_simple_cycle),
            ("sigma-reduced", &c.sigma_reduced_cycle),
        ];
        for (name, cycle) in cycles {
            if cycle.is_empty() {
                continue;
            }
            let forms: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            let _ = writeln!(table, "class {i} {name:>13}: {}", forms.join(" "));
            for (j, q) in cycle.iter().enumerate() {
                let _ = writeln!(csv, "{i},{name},{j},{},{},{}", q.a, q.b, q.c);
            }
        }
    }
    payload(to_json(dump), table, csv)
}

fn sum_line(label: &str, res: &SumResult) -> String {
    format!(
        "{label} = {} +- {:.3e}  ({:?}, {} terms, depth {}{})",
        res.value_string(),
        res.bound_f64(),
        res.status,
        res.terms,
        res.depth,
        if res.certified { "" } else { ", bound not certified" }
    )
}

pub fn sum(d: i64, k: u32, x: &str, rep: Representation, res: &SumResult) -> Payload {
    let rep_name = to_json(&rep).as_str().unwrap_or_default().to_string();
    let mut table = sum_line(&format!("A_{k},{d}({x}) [{rep_name}]"), res) + "\n";
    let mut csv = String::from("D,k,x,representation,value,bound,status,terms,depth,certified\n");
    let _ = writeln!(
        csv,
        "{d},{k},{x},{rep_name},{},{:e},{},{},{},{}",
        res.value_string(),
        res.bound_f64(),
        to_json(&res.status).as_str().unwrap_or_default(),
        res.terms,
        res.depth,
        res.certified
    );
    if !res.ledger.is_empty() {
        csv.push_str("\nstep,shift,form,image,r,s,t,u,value,cond_infinity,cond_x,included,closing\n");
        let _ = writeln!(table, "\nstep  shift  form  image  value  included");
        for row in &res.ledger {
            let form = row.form.as_ref().map(ToString::to_string).unwrap_or_default();
            let image = row.image.as_ref().map(ToString::to_string).unwrap_or_default();
            let g = &row.matrix;
            let _ = writeln!(
                csv,
                "{},{},{form},{image},{},{},{},{},{},{},{},{},{}",
                row.step,
                row.shift,
                g.r,
                g.s,
                g.t,
                g.u,
                row.value.to_decimal(VALUE_DIGITS),
                row.cond_infinity,
                row.cond_x,
                row.included,
                row.closing
            );
            let _ = writeln!(
                table,
                "{:>4}  {:>5}  {form}  {image}  {}  {}",
                row.step,
                row.shift,
                row.value.to_decimal(12),
                row.included
            );
        }
    }
    payload(to_json(res), table, csv)
}

pub fn star(res: &AStarResult) -> Payload {
    let table = format!(
        "{}\n{}\nP_k,B = {}\n",
        sum_line("A*  (conditioned)", &res.conditioned),
        sum_line("P^G1 (unconditioned)", &res.unconditioned),
        res.polynomial
    );
    let mut csv = String::from("sum,value,bound,status\n");
    for (name, r) in [("conditioned", &res.conditioned), ("unconditioned", &res.unconditioned)] {
        let _ = writeln!(
            csv,
            "{name},{},{:e},{}",
            r.value_string(),
            r.bound_f64(),
            to_json(&r.status).as_str().unwrap_or_default()
        );
    }
    payload(to_json(res), table, csv)
}

pub fn lists(lists: &[ZagierList], all: bool) -> Payload {
    let mut csv = String::from("form,value,list,step,included,closing,value_full\n");
    let mut table = String::new();
    for (i, l) in lists.iter().enumerate() {
        let _ = writeln!(table, "list {} (from simple form {})", i + 1, l.simple);
        let _ = writeln!(table, "{:>4}  {:<28}  value", "step", "Q");
        for row in l.rows.iter().filter(|r| all || r.included) {
            let v = row.value.to_decimal(VALUE_DIGITS);
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{v}",
                row.form,
                fmt_value(&row.value),
                i + 1,
                row.step,
                row.included,
                row.closing
            );
            let mark = if row.included { "" } else { "  (excluded)" };
            let _ = writeln!(table, "{:>4}  {:<28}  {}{mark}", row.step, row.form.to_string(), fmt_value(&row.value));
        }
        let _ = writeln!(table, "sum {}  ({:?})\n", l.sum.to_decimal(10), l.status);
    }
    let total = lists.iter().fold(quadperiod::Real::zero(), |a, l| a.add(&l.sum));
    let _ = writeln!(table, "total {}", total.to_decimal(10));
    payload(json!({ "lists": to_json(&lists), "total": total.to_decimal(VALUE_DIGITS) }), table, csv)
}

/// Six decimals, or three significant digits below 1e-6.
fn fmt_value(v: &quadperiod::Real) -> String {
    let f = v.to_f64();
    if f != 0.0 && f.abs() < 1e-6 {
        format!("{f:.2e}")
    } else {
        v.to_decimal(6)
    }
}

fn poly_csv(out: &mut String, name: &str, p: &IntPoly) {
    for (j, c) in p.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{name},{j},{c}");
    }
}

pub fn periods(
    p: &PeriodPoly,
    cocycle: &CocycleReport,
    even: &IntPoly,
    odd: &IntPoly,
    constant: Option<&BigRational>,
    audit: Option<&IdentityAudit>,
) -> Payload {
    let mut table = format!(
        "P = {}\nweight {}, scope {}, D = {}\n",
        p.poly, p.weight, p.scope, p.discriminant
    );
    let _ = writeln!(
        table,
        "cocycle: {}\n  P|(1+S)     = {}\n  P|(1+U+U^2) = {}",
        if cocycle.pass { "pass" } else { "FAIL" },
        cocycle.residual_s,
        cocycle.residual_u
    );
    let _ = writeln!(table, "even part {even}, odd part {odd}");
    if let Some(c) = constant {
        let _ = writeln!(table, "constant value of the sums: {c}");
    }
    let mut csv = String::from("polynomial,degree,coefficient\n");
    poly_csv(&mut csv, "P", &p.poly);
    poly_csv(&mut csv, "residual_s", &cocycle.residual_s);
    poly_csv(&mut csv, "residual_u", &cocycle.residual_u);
    let mut failed = false;
    if let Some(a) = audit {
        failed = !a.passed();
        let _ = writeln!(table, "\nidentity        x                       residual   pass");
        csv.push_str("\nidentity,x,lhs,rhs,residual,pass\n");
        for c in &a.checks {
            let id = to_json(&c.identity).as_str().unwrap_or_default().to_string();
            let _ = writeln!(table, "{id:<14}  {:<22}  {:.2e}  {}", c.x, c.residual, c.pass);
            let _ = writeln!(csv, "{id},{},{},{},{:e},{}", c.x, c.lhs, c.rhs, c.residual, c.pass);
        }
    }
    let json = json!({
        "period": to_json(p),
        "cocycle": to_json(cocycle),
        "even": to_json(even),
        "odd": to_json(odd),
        "constant": constant.map(|c| c.to_string()),
        "audit": audit.map(to_json),
    });
    Payload {
        json,
        table,
        csv,
        failed,
    }
}

pub fn verify(reports: &[SuiteReport]) -> Payload {
    let mut table = String::new();
    let mut csv = String::from("suite,pass,checks,failed\n");
    for r in reports {
        let _ = writeln!(table, "{}", r.summary_line());
        for f in &r.failures {
            let _ = writeln!(table, "    {f}");
        }
        let _ = writeln!(csv, "{},{},{},{}", r.suite, r.pass, r.checks, r.failed);
    }
    Payload {
        json: to_json(&reports),
        table,
        csv,
        failed: reports.iter().any(|r| !r.pass),
    }
}
