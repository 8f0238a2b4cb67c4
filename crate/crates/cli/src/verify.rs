//! Closed-form versus truncated-Fock cross-checks, run as named suites.

use std::fmt::Write as _;

use photon_add_core::analytic::{
    sacs_moment_a, sacs_moment_nm, sats_moment_nm, InputState, SacsParams, SatsParams,
};
use photon_add_core::bs_scheme::{
    bs_moment_a, bs_moment_nm, bs_pnd_coherent, bs_thermal_dm, BsParams,
};
use photon_add_core::fock::{
    antinormal_from_normal, antinormal_moment_direct, moment_set, normal_moment, FockVector,
    TruncationPolicy,
};
use photon_add_core::ndpa::{ndpa_moment_set, ndpa_q2, NdpaParams};
use photon_add_core::numeric::rel_diff;
use photon_add_core::oracle::{ndpa_state, photon_added, BsPipeline};
use photon_add_core::witness::{q1_opt, q2};
use photon_add_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::CliError;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 20_100_503;
pub const RANDOM_STATES: usize = 500;

/// One comparison: a label naming the parameter tuple and its error.
#[derive(Debug, Clone, PartialEq)]
struct Check {
    label: String,
    error: f64,
}

impl Check {
    /// Relative difference between two values.
    fn rel(label: String, got: f64, want: f64) -> Self {
        Self {
            label,
            error: rel_diff(got, want),
        }
    }

    /// A quantity that should be zero.
    fn zero(label: String, got: f64) -> Self {
        Self {
            label,
            error: got.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub max_error: f64,
    /// Labels and errors of checks above tolerance.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str, checks: Vec<Check>, tolerance: f64) -> Self {
        let max_error = checks.iter().map(|c| c.error).fold(0.0, f64::max);
        let failures = checks
            .iter()
            .filter(|c| !(c.error <= tolerance))
            .map(|c| format!("{}: error {:.3e}", c.label, c.error))
            .collect();
        Self {
            name,
            checks: checks.len(),
            max_error,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify tolerance={:e} seed={}",
            self.tolerance, self.seed
        );
        for s in &self.suites {
            let _ = writeln!(
                out,
                "suite {:<20} checks={:<6} max_error={:.3e} {}",
                s.name,
                s.checks,
                s.max_error,
                if s.passed() { "ok" } else { "FAIL" }
            );
            for f in &s.failures {
                let _ = writeln!(out, "  failed {f}");
            }
        }
        let _ = writeln!(
            out,
            "result {} ({} failed checks)",
            if self.failures() == 0 { "ok" } else { "FAIL" },
            self.failures()
        );
        out
    }
}

/// Runs every suite. Relative errors are compared with `tolerance`; so are
/// absolute deviations of quantities that must vanish.
type Suite = fn(u64) -> Result<Vec<Check>, CliError>;

pub fn run(tolerance: f64, seed: u64) -> Result<VerifyReport, CliError> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(CliError::invalid(format!(
            "tolerance = {tolerance} must be positive"
        )));
    }
    let suites: Vec<(&'static str, Suite)> = vec![
        ("sacs-moments", |_| sacs_moments()),
        ("sats-moments", |_| sats_moments()),
        ("bs-coherent", |_| bs_coherent()),
        ("bs-thermal", |_| bs_thermal()),
        ("ndpa-moments", |_| ndpa_moments()),
        ("ndpa-q2-invariance", |_| ndpa_invariance()),
        ("random-states", random_states),
    ];
    let suites = suites
        .into_iter()
        .map(|(name, f)| Ok(SuiteReport::new(name, f(seed)?, tolerance)))
        .collect::<Result<_, CliError>>()?;
    Ok(VerifyReport {
        tolerance,
        seed,
        suites,
    })
}

fn flatten(blocks: Vec<Vec<Check>>) -> Vec<Check> {
    blocks.into_iter().flatten().collect()
}

fn sacs_moments() -> Result<Vec<Check>, CliError> {
    let blocks = (1..=60)
        .into_par_iter()
        .map(|k| {
            let alpha = 0.1 * k as f64;
            let p = SacsParams::new(alpha)?;
            let rho = photon_added(InputState::Coherent { alpha })?;
            let mut out = Vec::new();
            for m in 1..=5 {
                let a = normal_moment(&rho, 0, m)?.re;
                let n = normal_moment(&rho, m, m)?.re;
                out.push(Check::rel(
                    format!("<a^m> alpha={alpha} m={m}"),
                    a,
                    sacs_moment_a(&p, m),
                ));
                out.push(Check::rel(
                    format!("<n_m> alpha={alpha} m={m}"),
                    n,
                    sacs_moment_nm(&p, m),
                ));
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(flatten(blocks))
}

const SATS_GRID: [f64; 11] = [0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0];

fn sats_moments() -> Result<Vec<Check>, CliError> {
    let blocks = SATS_GRID
        .par_iter()
        .map(|&nbar| {
            let p = SatsParams::new(nbar)?;
            let rho = photon_added(InputState::Thermal { nbar })?;
            let mut out = Vec::new();
            for m in 1..=5 {
                let n = normal_moment(&rho, m, m)?.re;
                out.push(Check::rel(
                    format!("<n_m> nbar={nbar} m={m}"),
                    n,
                    sats_moment_nm(&p, m),
                ));
                let a = normal_moment(&rho, 0, m)?.norm();
                out.push(Check::zero(format!("|<a^m>| nbar={nbar} m={m}"), a));
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(flatten(blocks))
}

const BS_REFLECTANCES: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const BS_ETAS: [f64; 3] = [0.3, 0.6, 1.0];
const BS_SOURCES: [f64; 3] = [0.3, 0.7, 1.0];

fn bs_grid(inputs: &[InputState]) -> Result<Vec<BsParams>, CliError> {
    let mut out = Vec::new();
    for &input in inputs {
        for r in BS_REFLECTANCES {
            for eta in BS_ETAS {
                for ps in BS_SOURCES {
                    out.push(BsParams::new(input, r, eta, ps)?);
                }
            }
        }
    }
    Ok(out)
}

fn tuple(p: &BsParams) -> String {
    let input = match p.input() {
        InputState::Coherent { alpha } => format!("alpha={alpha}"),
        InputState::Thermal { nbar } => format!("nbar={nbar}"),
    };
    format!(
        "{input} R={} eta={} ps={}",
        p.reflectance(),
        p.eta(),
        p.p_s()
    )
}

fn bs_coherent() -> Result<Vec<Check>, CliError> {
    let inputs: Vec<InputState> = [0.3, 1.0, 2.0, 3.0, 4.0]
        .iter()
        .map(|&alpha| InputState::Coherent { alpha })
        .collect();
    let grid = bs_grid(&inputs)?;
    let pipe = BsPipeline::for_params(&grid[grid.len() - 1])?;
    let blocks = grid
        .par_iter()
        .map(|p| {
            let (rho, p_nd) = pipe.run(p)?;
            let t = tuple(p);
            let mut out = vec![Check::rel(format!("P_ND {t}"), p_nd, bs_pnd_coherent(p)?)];
            for m in 1..=4 {
                let a = normal_moment(&rho, 0, m)?.re;
                let n = normal_moment(&rho, m, m)?.re;
                out.push(Check::rel(
                    format!("<a^m> {t} m={m}"),
                    a,
                    bs_moment_a(p, m)?,
                ));
                out.push(Check::rel(
                    format!("<n_m> {t} m={m}"),
                    n,
                    bs_moment_nm(p, m)?,
                ));
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(flatten(blocks))
}

fn bs_thermal() -> Result<Vec<Check>, CliError> {
    let inputs: Vec<InputState> = [0.2, 0.5, 1.0, 2.0]
        .iter()
        .map(|&nbar| InputState::Thermal { nbar })
        .collect();
    let grid = bs_grid(&inputs)?;
    let pipe = BsPipeline::for_params(&grid[grid.len() - 1])?;
    let blocks = grid
        .par_iter()
        .map(|p| {
            let (rho, p_nd) = pipe.run(p)?;
            let t = tuple(p);
            let d0 = bs_thermal_dm(p, 0)?;
            let mut out = vec![Check::rel(format!("D_0 {t}"), p_nd, d0)];
            for m in 1..=4 {
                let n = normal_moment(&rho, m, m)?.re;
                out.push(Check::rel(
                    format!("D_m/D_0 {t} m={m}"),
                    n,
                    bs_thermal_dm(p, m)? / d0,
                ));
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(flatten(blocks))
}

const NDPA_ETAS: [f64; 4] = [0.1, 0.3, 0.62, 1.0];
const NDPA_INPUTS: [InputState; 5] = [
    InputState::Coherent { alpha: 0.7 },
    InputState::Coherent { alpha: 2.0 },
    InputState::Coherent { alpha: 3.5 },
    InputState::Thermal { nbar: 0.3 },
    InputState::Thermal { nbar: 1.2 },
];

fn ndpa_moments() -> Result<Vec<Check>, CliError> {
    let cases: Vec<(InputState, f64)> = NDPA_INPUTS
        .iter()
        .flat_map(|&i| NDPA_ETAS.iter().map(move |&e| (i, e)))
        .collect();
    let blocks = cases
        .par_iter()
        .map(|&(input, eta)| {
            let p = NdpaParams::new(input, eta)?;
            let rho = ndpa_state(&p)?;
            let mut out = Vec::new();
            for m in 1..=5 {
                let oracle = moment_set(&rho, m)?;
                let closed = ndpa_moment_set(&p, m)?;
                let t = format!("{input:?} eta={eta} m={m}");
                if closed.a_m.re != 0.0 {
                    out.push(Check::rel(
                        format!("<a^m> {t}"),
                        oracle.a_m.re,
                        closed.a_m.re,
                    ));
                } else {
                    out.push(Check::zero(format!("|<a^m>| {t}"), oracle.a_m.norm()));
                }
                out.push(Check::rel(format!("<n_m> {t}"), oracle.n_m, closed.n_m));
                out.push(Check::rel(format!("<n_2m> {t}"), oracle.n_2m, closed.n_2m));
                out.push(Check::rel(
                    format!("<a^m a+^m> {t}"),
                    oracle.anti_m,
                    closed.anti_m,
                ));
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(flatten(blocks))
}

fn ndpa_invariance() -> Result<Vec<Check>, CliError> {
    let inputs = [
        InputState::Coherent { alpha: 1.3 },
        InputState::Thermal { nbar: 0.5 },
    ];
    let mut out = Vec::new();
    for input in inputs {
        let states = NDPA_ETAS
            .iter()
            .map(|&eta| Ok(ndpa_state(&NdpaParams::new(input, eta)?)?))
            .collect::<Result<Vec<_>, CliError>>()?;
        for m in 1..=5 {
            let reference = ndpa_q2(&NdpaParams::new(input, 1.0)?, m)?.value()?;
            for (k, &eta) in NDPA_ETAS.iter().enumerate() {
                let analytic = ndpa_q2(&NdpaParams::new(input, eta)?, m)?.value()?;
                let oracle = q2(&moment_set(&states[k], m)?).value()?;
                let t = format!("{input:?} eta={eta} m={m}");
                out.push(Check::zero(
                    format!("closed-form Q2 drift {t}"),
                    analytic - reference,
                ));
                out.push(Check::zero(
                    format!("oracle Q2 drift {t}"),
                    oracle - reference,
                ));
            }
        }
    }
    Ok(out)
}

/// Complex Gaussian amplitudes, dimension 2 to 16.
fn random_state(rng: &mut ChaCha8Rng) -> Result<FockVector, CliError> {
    let dim = rng.random_range(2..=16);
    let amps = (0..dim)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    Ok(FockVector::from_unnormalized(
        amps,
        TruncationPolicy::new(dim, 1e-12)?,
    )?)
}

fn random_states(seed: u64) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = (0..RANDOM_STATES)
        .map(|_| random_state(&mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let blocks = states
        .par_iter()
        .enumerate()
        .map(|(k, psi)| {
            let rho = psi.to_density();
            let mut out = Vec::new();
            let normal: Vec<f64> = (0..=4)
                .map(|p| Ok(normal_moment(&rho, p, p)?.re))
                .collect::<Result<_, CliError>>()?;
            for m in 1..=4 {
                let t = format!("state {k} (dim {}) m={m}", psi.dim());
                let ms = moment_set(&rho, m)?;
                if let Some(v) = q1_opt(&ms).value {
                    out.push(Check::zero(format!("Q1 below -1 {t}"), (-1.0 - v).max(0.0)));
                }
                if let Some(v) = q2(&ms).value {
                    out.push(Check::zero(format!("Q2 below -1 {t}"), (-1.0 - v).max(0.0)));
                }
                let direct = antinormal_moment_direct(&rho, m)?;
                let reordered = antinormal_from_normal(&normal, m)?;
                out.push(Check::rel(format!("reordering {t}"), reordered, direct));
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(flatten(blocks))
}
