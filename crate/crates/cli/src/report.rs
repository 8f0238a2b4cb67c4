//! Plain-text report of a point evaluation.

use std::fmt::Write as _;

use crate::params::{Evaluation, Param, ParamSet, Scheme, WitnessChoice};

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

pub fn render(scheme: Scheme, params: &ParamSet, evals: &[Evaluation]) -> String {
    let mut out = String::new();
    let _ = write!(out, "scheme {}", scheme.name());
    for &p in scheme.required() {
        if let Some(v) = params.get(p) {
            let _ = write!(
                out,
                " {}={v}",
                if p == Param::Nbar { "nbar" } else { p.name() }
            );
        }
    }
    out.push('\n');
    if let Some(p_nd) = evals.first().and_then(|e| e.p_nd) {
        let _ = writeln!(out, "p_nd {}", num(p_nd));
    }
    for e in evals {
        let _ = write!(out, "m={} {}=", e.m, e.witness.name());
        match e.value {
            Some(v) => out.push_str(&num(v)),
            None => out.push_str("undefined"),
        }
        if let Some(d) = &e.detail {
            let _ = write!(
                out,
                " numerator={} denominator={}",
                num(d.numerator),
                num(d.denominator)
            );
            if let (WitnessChoice::Q1, Some(phi)) = (e.witness, d.phase) {
                let _ = write!(out, " phase={}", num(phi));
            }
        }
        if let Some(note) = &e.note {
            let _ = write!(out, " ({note})");
        }
        out.push('\n');
    }
    out
}
