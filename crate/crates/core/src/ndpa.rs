//! NDPA photon addition, modeled as ideal `a†` followed by a pure-loss
//! channel of overall efficiency `η`.
//!
//! Loss maps `aᵐ → η^{m/2}aᵐ` inside normally ordered moments, so every
//! normal moment picks up a power of `η`. Q₂ᵐ is a ratio in which those
//! powers cancel exactly. Q₁ᵐ keeps its sign region but its denominator
//! involves `⟨aᵐa†ᵐ⟩`, a mix of all powers `η⁰..ηᵐ`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::analytic::{
    check_order, sacs_moment_a, sacs_moment_nm, sats_moment_nm, InputState, SacsParams, SatsParams,
};
use crate::error::{Error, Result};
use crate::fock::antinormal_from_normal;
use crate::witness::{self, MomentSet, WitnessResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NdpaParams {
    input: InputState,
    eta: f64,
}

impl NdpaParams {
    pub fn new(input: InputState, eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "must lie in (0, 1]",
            });
        }
        match input {
            InputState::Coherent { alpha } => SacsParams::new(alpha).map(|_| ())?,
            InputState::Thermal { nbar } => SatsParams::new(nbar).map(|_| ())?,
        }
        Ok(Self { input, eta })
    }

    pub fn coherent(alpha: f64, eta: f64) -> Result<Self> {
        Self::new(InputState::coherent(alpha)?, eta)
    }

    pub fn thermal(nbar: f64, eta: f64) -> Result<Self> {
        Self::new(InputState::thermal(nbar)?, eta)
    }

    pub fn input(&self) -> InputState {
        self.input
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// Moments after loss, given the ideal moment set and the ideal normal
/// moments `⟨a†ᵖaᵖ⟩` for `p = 0..=m` (entry `m` must equal `ideal.n_m`).
///
/// `⟨aᵐa†ᵐ⟩` is rebuilt from the scaled normal moments rather than scaled.
pub fn ndpa_moments(ideal: &MomentSet, normal_ladder: &[f64], eta: f64) -> Result<MomentSet> {
    let m = ideal.m;
    if normal_ladder.len() <= m as usize {
        return Err(Error::MissingMoment(normal_ladder.len() as u32));
    }
    let top = normal_ladder[m as usize];
    if (top - ideal.n_m).abs() > 1e-12 * top.abs().max(1.0) {
        return Err(Error::InvalidState(
            "normal moment ladder disagrees with the moment set",
        ));
    }
    let scaled: Vec<f64> = normal_ladder[..=m as usize]
        .iter()
        .enumerate()
        .map(|(p, n)| eta.powi(p as i32) * n)
        .collect();
    let em = eta.powi(m as i32);
    Ok(MomentSet {
        m,
        a_m: ideal.a_m * eta.powf(m as f64 / 2.0),
        a2m: ideal.a2m * em,
        n_m: ideal.n_m * em,
        n_2m: ideal.n_2m * em * em,
        anti_m: antinormal_from_normal(&scaled, m)?,
    })
}

fn ideal_ladder(input: InputState, m: u32) -> Result<(MomentSet, Vec<f64>)> {
    let (ladder, a_m, a2m, n_2m): (Vec<f64>, f64, f64, f64) = match input {
        InputState::Coherent { alpha } => {
            let p = SacsParams::new(alpha)?;
            (
                (0..=m).map(|k| sacs_moment_nm(&p, k)).collect(),
                sacs_moment_a(&p, m),
                sacs_moment_a(&p, 2 * m),
                sacs_moment_nm(&p, 2 * m),
            )
        }
        InputState::Thermal { nbar } => {
            let p = SatsParams::new(nbar)?;
            (
                (0..=m).map(|k| sats_moment_nm(&p, k)).collect(),
                0.0,
                0.0,
                sats_moment_nm(&p, 2 * m),
            )
        }
    };
    let ms = MomentSet {
        m,
        a_m: Complex64::new(a_m, 0.0),
        a2m: Complex64::new(a2m, 0.0),
        n_m: ladder[m as usize],
        n_2m,
        anti_m: antinormal_from_normal(&ladder, m)?,
    };
    Ok((ms, ladder))
}

/// Closed-form moment set of the lossy photon-added state.
pub fn ndpa_moment_set(p: &NdpaParams, m: u32) -> Result<MomentSet> {
    check_order(m)?;
    let (ideal, ladder) = ideal_ladder(p.input, m)?;
    ndpa_moments(&ideal, &ladder, p.eta)
}

/// Phase-optimized Q₁ᵐ of the lossy SACS.
pub fn ndpa_q1(p: &NdpaParams, m: u32) -> Result<WitnessResult> {
    if !matches!(p.input, InputState::Coherent { .. }) {
        return Err(Error::DomainError(
            "Q1 is identically zero for phase-symmetric states",
        ));
    }
    Ok(witness::q1_opt(&ndpa_moment_set(p, m)?))
}

/// Q₂ᵐ of the lossy state, equal to the lossless value.
pub fn ndpa_q2(p: &NdpaParams, m: u32) -> Result<WitnessResult> {
    if let InputState::Coherent { alpha } = p.input {
        if alpha == 0.0 && m >= 2 {
            return Err(Error::DomainError("Q2 of |1> is undefined for m >= 2"));
        }
    }
    Ok(witness::q2(&ndpa_moment_set(p, m)?))
}
