use std::fmt::Write;

use super::{CFStepMinus, CFStepPlus, SlowStep};

const HEADER: &str = "i,digit,x_i,r,s,t,u,p,q,delta";

fn row(out: &mut String, cols: &[String]) {
    let _ = writeln!(out, "{}", cols.join(","));
}

/// CSV dump of a regular expansion; `digits` decimal places for reals.
pub fn plus_steps_csv(steps: &[CFStepPlus], digits: usize) -> String {
    let mut out = format!("{HEADER}\n");
    for s in steps {
        let g = &s.gamma;
        row(
            &mut out,
            &[
                s.index.to_string(),
                s.digit.to_string(),
                s.state.to_decimal(digits),
                g.r.to_string(),
                g.s.to_string(),
                g.t.to_string(),
                g.u.to_string(),
                s.p.to_string(),
                s.q.to_string(),
                s.delta.to_decimal(digits),
            ],
        );
    }
    out
}

pub fn minus_steps_csv(steps: &[CFStepMinus], digits: usize) -> String {
    let mut out = format!("{HEADER}\n");
    for s in steps {
        let g = &s.gamma;
        row(
            &mut out,
            &[
                s.index.to_string(),
                s.digit.to_string(),
                s.state.to_decimal(digits),
                g.r.to_string(),
                g.s.to_string(),
                g.t.to_string(),
                g.u.to_string(),
                s.p.to_string(),
                s.q.to_string(),
                s.delta.to_decimal(digits),
            ],
        );
    }
    out
}

/// CSV dump of a three-branch run. The digit column carries the branch tag.
pub fn slow_steps_csv(steps: &[SlowStep], digits: usize) -> String {
    let mut out = String::from("i,branch,x_i,r,s,t,u,block,shift\n");
    for s in steps {
        let g = &s.matrix;
        let (b, k) = match &s.block {
            Some(p) => (p.block.to_string(), p.shift.to_string()),
            None => (String::new(), String::new()),
        };
        row(
            &mut out,
            &[
                s.index.to_string(),
                s.branch.as_str().to_string(),
                s.state.to_decimal(digits),
                g.r.to_string(),
                g.s.to_string(),
                g.t.to_string(),
                g.u.to_string(),
                b,
                k,
            ],
        );
    }
    out
}
