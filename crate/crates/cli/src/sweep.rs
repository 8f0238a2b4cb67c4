//! Grid sweeps written as CSV.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use photon_add_core::numeric::sign_with_band;
use rayon::prelude::*;

use crate::error::CliError;
use crate::params::{check_orders, evaluate, Param, ParamSet, Scheme, WitnessChoice};

pub const CSV_HEADER: &str = "axis1,axis2,m,witness,value,p_nd,defined,sign";

/// Values with `|v|` below this get sign 0.
pub const SIGN_BAND: f64 = 1e-12;

/// Grid points per axis are capped to keep runaway specs from exhausting memory.
const MAX_AXIS_POINTS: usize = 1_000_000;

/// `name=start:stop:step`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Axis {
    /// `start + k·step` up to `stop`. Rounding slack of `1e-9·step` lets
    /// `stop` itself in, and a point that close to `stop` is snapped to it.
    pub fn values(&self) -> Vec<f64> {
        let span = (self.stop - self.start) / self.step;
        let n = (span + 1e-9).floor() as usize;
        let mut v: Vec<f64> = (0..=n).map(|k| self.start + k as f64 * self.step).collect();
        if let Some(last) = v.last_mut() {
            if (*last - self.stop).abs() <= 1e-9 * self.step {
                *last = self.stop;
            }
        }
        v
    }

    fn validate(&self, scheme: Scheme) -> Result<(), CliError> {
        let name = self.param.name();
        if !self.param.is_axis() {
            return Err(CliError::invalid(format!(
                "{name} cannot be swept; use nbar_inv"
            )));
        }
        if !scheme.accepts(self.param) {
            return Err(CliError::invalid(format!(
                "{name} is not a parameter of {}",
                scheme.name()
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(CliError::invalid(format!(
                "axis {name}: step must be positive"
            )));
        }
        if !(self.stop >= self.start) {
            return Err(CliError::invalid(format!(
                "axis {name}: stop is below start"
            )));
        }
        if (self.stop - self.start) / self.step > MAX_AXIS_POINTS as f64 {
            return Err(CliError::invalid(format!(
                "axis {name}: more than {MAX_AXIS_POINTS} points"
            )));
        }
        self.param.check(scheme, self.start)?;
        self.param.check(scheme, self.stop)
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::invalid(format!("axis `{s}` is not name=start:stop:step"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<f64> = range
            .split(':')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(bad());
        };
        Ok(Self {
            param: name.trim().parse()?,
            start,
            stop,
            step,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scheme: Scheme,
    pub witness: WitnessChoice,
    pub orders: Vec<u32>,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub fixed: ParamSet,
    pub output: PathBuf,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        self.scheme.check_witness(self.witness)?;
        check_orders(&self.orders)?;
        self.axis1.validate(self.scheme)?;
        if let Some(a2) = &self.axis2 {
            a2.validate(self.scheme)?;
            if same_slot(a2.param, self.axis1.param) {
                return Err(CliError::invalid("both axes sweep the same parameter"));
            }
        }
        self.fixed.check_for(self.scheme)?;
        let swept = |p: Param| {
            same_slot(p, self.axis1.param) || self.axis2.is_some_and(|a| same_slot(p, a.param))
        };
        for &p in self.scheme.required() {
            if !swept(p) && self.fixed.get(p).is_none() {
                return Err(CliError::invalid(format!(
                    "{} needs a value for {p} (flag, config or axis)",
                    self.scheme.name()
                )));
            }
        }
        Ok(())
    }

    /// All rows in row-major order: axis1 outermost, then axis2, then
    /// order. Points are evaluated on the rayon pool; the result order does
    /// not depend on scheduling.
    pub fn rows(&self) -> Result<Vec<GridRow>, CliError> {
        self.validate()?;
        let a1 = self.axis1.values();
        let a2 = self
            .axis2
            .map(|a| a.values().into_iter().map(Some).collect())
            .unwrap_or(vec![None]);
        let points: Vec<(f64, Option<f64>)> = a1
            .iter()
            .flat_map(|&x| a2.iter().map(move |&y| (x, y)))
            .collect();
        let blocks = points
            .par_iter()
            .map(|&(x, y)| self.point_rows(x, y))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(blocks.into_iter().flatten().collect())
    }

    fn point_rows(&self, x: f64, y: Option<f64>) -> Result<Vec<GridRow>, CliError> {
        let mut params = self.fixed;
        params.set(self.axis1.param, x);
        if let (Some(axis), Some(y)) = (self.axis2, y) {
            params.set(axis.param, y);
        }
        let evals = evaluate(self.scheme, self.witness, &params, &self.orders)?;
        Ok(evals
            .into_iter()
            .map(|e| GridRow {
                axis1: x,
                axis2: y.unwrap_or(f64::NAN),
                m: e.m,
                witness: self.witness,
                value: e.value.unwrap_or(f64::NAN),
                p_nd: e.p_nd.unwrap_or(f64::NAN),
                defined: e.value.is_some(),
                sign: e.value.map_or(0, |v| sign_with_band(v, SIGN_BAND)),
            })
            .collect())
    }

    pub fn run(&self) -> Result<usize, CliError> {
        let rows = self.rows()?;
        write_csv(&rows, &self.output)?;
        Ok(rows.len())
    }
}

fn same_slot(a: Param, b: Param) -> bool {
    let slot = |p| if p == Param::NbarInv { Param::Nbar } else { p };
    slot(a) == slot(b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub axis1: f64,
    /// NaN when the sweep has one axis.
    pub axis2: f64,
    pub m: u32,
    pub witness: WitnessChoice,
    /// NaN when undefined.
    pub value: f64,
    /// NaN for schemes without heralding.
    pub p_nd: f64,
    pub defined: bool,
    pub sign: i8,
}

/// 17 significant digits, `nan` for NaN.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else {
        format!("{x:.16e}")
    }
}

impl GridRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            format_float(self.axis1),
            format_float(self.axis2),
            self.m,
            self.witness.name(),
            format_float(self.value),
            format_float(self.p_nd),
            u8::from(self.defined),
            self.sign
        )
    }
}

pub fn render_csv(rows: &[GridRow]) -> String {
    let mut out = String::with_capacity(96 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.to_csv());
    }
    out
}

pub fn write_csv(rows: &[GridRow], path: &Path) -> Result<(), CliError> {
    std::fs::write(path, render_csv(rows)).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
