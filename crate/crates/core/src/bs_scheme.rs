//! Closed forms for the beam-splitter heralding scheme.
//!
//! The classical input and a single-photon source
//! `ρ_single = p_S|1⟩⟨1| + (1 − p_S)|0⟩⟨0|` meet on a beam splitter of
//! reflectance `R = sin²θ`. The output state of mode 1 is kept when an
//! on/off detector of efficiency `η` on mode 2 does not click.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::analytic::{check_order, InputState};
use crate::error::{check_range, Error, Result};
use crate::fock::{antinormal_from_normal, coherent_state, FockDensity, TruncationPolicy};
use crate::linalg::CMatrix;
use crate::numeric::factorial;
use crate::witness::{self, MomentSet, WitnessResult};

/// Heralding probabilities below this are treated as an impossible event.
const MIN_PROBABILITY: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsParams {
    input: InputState,
    reflectance: f64,
    eta: f64,
    p_s: f64,
}

impl BsParams {
    pub fn new(input: InputState, reflectance: f64, eta: f64, p_s: f64) -> Result<Self> {
        match input {
            InputState::Coherent { alpha } => check_range("alpha", alpha, 0.0, f64::MAX)?,
            InputState::Thermal { nbar } => {
                if !(nbar > 0.0 && nbar.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "nbar",
                        value: nbar,
                        reason: "must be positive",
                    });
                }
            }
        }
        check_range("reflectance", reflectance, 0.0, 1.0)?;
        check_range("eta", eta, 0.0, 1.0)?;
        check_range("p_s", p_s, 0.0, 1.0)?;
        Ok(Self {
            input,
            reflectance,
            eta,
            p_s,
        })
    }

    pub fn coherent(alpha: f64, reflectance: f64, eta: f64, p_s: f64) -> Result<Self> {
        Self::new(InputState::coherent(alpha)?, reflectance, eta, p_s)
    }

    pub fn thermal(nbar: f64, reflectance: f64, eta: f64, p_s: f64) -> Result<Self> {
        Self::new(InputState::thermal(nbar)?, reflectance, eta, p_s)
    }

    pub fn input(&self) -> InputState {
        self.input
    }

    pub fn reflectance(&self) -> f64 {
        self.reflectance
    }

    pub fn transmittance(&self) -> f64 {
        1.0 - self.reflectance
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn p_s(&self) -> f64 {
        self.p_s
    }

    /// Mixing angle with `R = sin²θ`.
    pub fn theta(&self) -> f64 {
        self.reflectance.sqrt().asin()
    }

    fn alpha(&self) -> Result<f64> {
        match self.input {
            InputState::Coherent { alpha } => Ok(alpha),
            InputState::Thermal { .. } => Err(Error::DomainError("coherent input required")),
        }
    }

    fn nbar(&self) -> Result<f64> {
        match self.input {
            InputState::Thermal { nbar } => Ok(nbar),
            InputState::Coherent { .. } => Err(Error::DomainError("thermal input required")),
        }
    }
}

/// Coefficients of the conditional state
/// `ρ_c = (1/N)[s a†|β⟩⟨β|a + f|β⟩⟨β| + c|β⟩⟨β|a + c a†|β⟩⟨β|]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsCoeffs {
    pub s: f64,
    pub f: f64,
    pub c: f64,
    pub norm_n: f64,
    /// Transmitted amplitude `β = α√T`.
    pub beta_amp: f64,
}

pub fn bs_coeffs(p: &BsParams) -> Result<BsCoeffs> {
    let alpha = p.alpha()?;
    let (r, t, eta, ps) = (p.reflectance, p.transmittance(), p.eta, p.p_s);
    let a2 = alpha * alpha;
    let beta = alpha * t.sqrt();
    Ok(BsCoeffs {
        s: r * ps,
        f: ps * (1.0 - eta) * t * (1.0 + (1.0 - eta) * r * a2) + (1.0 - ps),
        c: -r * ps * (1.0 - eta) * beta,
        norm_n: ps * (1.0 - t * eta + r * t * eta * eta * a2) + 1.0 - ps,
        beta_amp: beta,
    })
}

/// `P_ND = N e^{−Rηα²}`
pub fn bs_pnd_coherent(p: &BsParams) -> Result<f64> {
    let alpha = p.alpha()?;
    let k = bs_coeffs(p)?;
    Ok(k.norm_n * (-p.reflectance * p.eta * alpha * alpha).exp())
}

fn usable_coeffs(p: &BsParams) -> Result<BsCoeffs> {
    let k = bs_coeffs(p)?;
    if k.norm_n < MIN_PROBABILITY {
        return Err(Error::ZeroProbability(bs_pnd_coherent(p)?));
    }
    Ok(k)
}

/// `⟨aᵐ⟩ = (1/N)[sβᵐ(β² + m + 1) + fβᵐ + cβᵐ⁻¹(2β² + m)]`; one at `m = 0`.
pub fn bs_moment_a(p: &BsParams, m: u32) -> Result<f64> {
    let k = usable_coeffs(p)?;
    if m == 0 {
        return Ok(1.0);
    }
    let b = k.beta_amp;
    let mf = m as f64;
    let bm = b.powi(m as i32);
    Ok(
        (k.s * bm * (b * b + mf + 1.0)
            + k.f * bm
            + k.c * b.powi(m as i32 - 1) * (2.0 * b * b + mf))
            / k.norm_n,
    )
}

/// `⟨a†ᵐaᵐ⟩ = (1/N)[sβ²ᵐ⁻²((β² + m)² + β²) + fβ²ᵐ + 2cβ²ᵐ⁻¹(β² + m)]`;
/// one at `m = 0`.
pub fn bs_moment_nm(p: &BsParams, m: u32) -> Result<f64> {
    let k = usable_coeffs(p)?;
    if m == 0 {
        return Ok(1.0);
    }
    let b = k.beta_amp;
    let mf = m as f64;
    let e = 2 * m as i32;
    let b2 = b * b;
    Ok((k.s * b.powi(e - 2) * ((b2 + mf) * (b2 + mf) + b2)
        + k.f * b.powi(e)
        + 2.0 * k.c * b.powi(e - 1) * (b2 + mf))
        / k.norm_n)
}

/// Moment set of the conditional state for a coherent input.
pub fn bs_moment_set(p: &BsParams, m: u32) -> Result<MomentSet> {
    check_order(m)?;
    let ladder = (0..=m)
        .map(|k| bs_moment_nm(p, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSet::real(
        m,
        bs_moment_a(p, m)?,
        bs_moment_a(p, 2 * m)?,
        ladder[m as usize],
        bs_moment_nm(p, 2 * m)?,
        antinormal_from_normal(&ladder, m)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsCoherentWitness {
    pub m: u32,
    pub q1: WitnessResult,
    pub q2: WitnessResult,
    pub p_nd: f64,
}

/// Phase-optimized Q₁ᵐ, Q₂ᵐ and `P_ND` for each requested order.
pub fn bs_witnesses_coherent(p: &BsParams, orders: &[u32]) -> Result<Vec<BsCoherentWitness>> {
    let p_nd = bs_pnd_coherent(p)?;
    orders
        .iter()
        .map(|&m| {
            let ms = bs_moment_set(p, m)?;
            Ok(BsCoherentWitness {
                m,
                q1: witness::q1_opt(&ms),
                q2: witness::q2(&ms),
                p_nd,
            })
        })
        .collect()
}

/// Unnormalized coincidence rate `D_m` of the thermal-input scheme, with
/// `⟨a†ᵐaᵐ⟩ = D_m/D₀` and `P_ND = D₀`:
///
/// `D_m = m! T^{m−1} n̄⁻¹ / g^{m+2} · [T g(1 − ηp_S T + 2mηp_S R)
///        + m p_S R g² + (m+1)η² p_S R T²]`, `g = n̄⁻¹ + ηR`.
///
/// The `T^{−1}` prefactor of `D₀` is singular at `R = 1`; use
/// [`bs_thermal_pnd`] there.
pub fn bs_thermal_dm(p: &BsParams, m: u32) -> Result<f64> {
    let nbar = p.nbar()?;
    let (r, t, eta, ps) = (p.reflectance, p.transmittance(), p.eta, p.p_s);
    if m == 0 && t == 0.0 {
        return Err(Error::DegenerateGeometry(
            "D_0 has a T^-1 prefactor at R = 1",
        ));
    }
    let x = 1.0 / nbar;
    let g = x + eta * r;
    let mf = m as f64;
    let bracket = t * g * (1.0 - eta * ps * t + 2.0 * mf * eta * ps * r)
        + mf * ps * r * g * g
        + (mf + 1.0) * eta * eta * ps * r * t * t;
    Ok(factorial(m) * t.powi(m as i32 - 1) * x / g.powi(m as i32 + 2) * bracket)
}

/// `P_ND = D₀ = n̄⁻¹/g² · [g(1 − ηp_S T) + η²p_S R T]`, the form of `D₀`
/// with the `T` factors cancelled, valid for every `R`.
pub fn bs_thermal_pnd(p: &BsParams) -> Result<f64> {
    let nbar = p.nbar()?;
    let (r, t, eta, ps) = (p.reflectance, p.transmittance(), p.eta, p.p_s);
    let x = 1.0 / nbar;
    let g = x + eta * r;
    Ok(x / (g * g) * (g * (1.0 - eta * ps * t) + eta * eta * ps * r * t))
}

/// Moment set of the conditional state for a thermal input; the odd
/// moments vanish by phase symmetry.
pub fn bs_thermal_moment_set(p: &BsParams, m: u32) -> Result<MomentSet> {
    check_order(m)?;
    let d0 = bs_thermal_pnd(p)?;
    if d0 < MIN_PROBABILITY {
        return Err(Error::ZeroProbability(d0));
    }
    let mut ladder = vec![1.0];
    for k in 1..=m {
        ladder.push(bs_thermal_dm(p, k)? / d0);
    }
    Ok(MomentSet::real(
        m,
        0.0,
        0.0,
        ladder[m as usize],
        bs_thermal_dm(p, 2 * m)? / d0,
        antinormal_from_normal(&ladder, m)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsThermalWitness {
    pub m: u32,
    pub q2: WitnessResult,
    pub p_nd: f64,
}

/// Q₂ᵐ and `P_ND` for each requested order. The state is phase symmetric,
/// so Q₁ᵐ is not offered.
pub fn bs_witnesses_thermal(p: &BsParams, orders: &[u32]) -> Result<Vec<BsThermalWitness>> {
    let p_nd = bs_thermal_pnd(p)?;
    orders
        .iter()
        .map(|&m| {
            Ok(BsThermalWitness {
                m,
                q2: witness::q2(&bs_thermal_moment_set(p, m)?),
                p_nd,
            })
        })
        .collect()
}

/// Builds the conditional state of a coherent input from its closed-form
/// coefficients, together with `P_ND`.
pub fn bs_conditional_density(
    p: &BsParams,
    policy: TruncationPolicy,
) -> Result<(FockDensity, f64)> {
    let k = usable_coeffs(p)?;
    let p_nd = bs_pnd_coherent(p)?;
    let psi = coherent_state(Complex64::new(k.beta_amp, 0.0), policy)?;
    let psi = psi.amplitudes();
    let n = psi.len();
    // a†|β⟩ loses the top level's amplitude
    let lost = psi[n - 1].norm_sqr() * n as f64;
    policy.check_tail(lost / (1.0 + k.beta_amp * k.beta_amp))?;
    let mut phi = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n - 1 {
        phi[j + 1] = psi[j] * ((j + 1) as f64).sqrt();
    }
    let mut rho = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            rho[(i, j)] = (phi[i] * phi[j].conj() * k.s
                + psi[i] * psi[j].conj() * k.f
                + (psi[i] * phi[j].conj() + phi[i] * psi[j].conj()) * k.c)
                / k.norm_n;
        }
    }
    Ok((FockDensity::from_unnormalized(rho, policy)?, p_nd))
}
