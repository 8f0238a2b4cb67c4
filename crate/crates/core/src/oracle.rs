//! Brute-force preparation of every state the closed forms describe,
//! built only from the truncated Fock-space primitives in [`crate::fock`].
//!
//! Nothing here uses a closed-form moment; the functions are the
//! independent reference the closed forms are checked against.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::analytic::InputState;
use crate::bs_scheme::BsParams;
use crate::error::Result;
use crate::fock::{
    coherent_state, loss_channel, photon_add, thermal_state, BeamSplitter, FockDensity, FockVector,
    TruncationPolicy, TwoModeDims, TwoModeMixture,
};
use crate::ndpa::NdpaParams;

/// Levels added above the adaptive truncation so that one added photon
/// and one source photon never reach the edge of the basis.
const HEADROOM: usize = 2;

fn input_policy(input: InputState) -> Result<TruncationPolicy> {
    let base = match input {
        InputState::Coherent { alpha } => TruncationPolicy::for_coherent(alpha)?,
        InputState::Thermal { nbar } => TruncationPolicy::for_thermal(nbar)?,
    };
    Ok(base.with_headroom(HEADROOM))
}

/// The classical input as a density matrix in its adaptive basis.
pub fn input_density(input: InputState) -> Result<FockDensity> {
    let policy = input_policy(input)?;
    match input {
        InputState::Coherent { alpha } => {
            Ok(coherent_state(Complex64::new(alpha, 0.0), policy)?.to_density())
        }
        InputState::Thermal { nbar } => thermal_state(nbar, policy),
    }
}

/// Ideal photon-added state `a†ρa / Tr[a†ρa]`.
pub fn photon_added(input: InputState) -> Result<FockDensity> {
    photon_add(&input_density(input)?)
}

/// Photon addition followed by loss of transmissivity `η`.
pub fn ndpa_state(p: &NdpaParams) -> Result<FockDensity> {
    loss_channel(&photon_added(p.input())?, p.eta())
}

/// Beam-splitter heralding pipeline: input ⊗ source, the unitary at
/// `θ = arcsin√R`, then the no-click projection on mode 2.
///
/// The unitary's sector spectra are cached, so one pipeline can be reused
/// across a parameter grid whose inputs fit its basis.
#[derive(Debug, Clone)]
pub struct BsPipeline {
    bs: BeamSplitter,
}

impl BsPipeline {
    /// Pipeline with `mode_dim` levels in each mode.
    pub fn new(mode_dim: usize) -> Result<Self> {
        Ok(Self {
            bs: BeamSplitter::new(TwoModeDims::new(mode_dim, mode_dim)?),
        })
    }

    /// Pipeline sized for the adaptive truncation of `p`'s input.
    pub fn for_params(p: &BsParams) -> Result<Self> {
        Self::new(input_policy(p.input())?.max_dim())
    }

    pub fn mode_dim(&self) -> usize {
        self.bs.dims().n1
    }

    /// Conditional state of mode 1 and the no-click probability. Inputs
    /// needing more levels than the pipeline has fail with
    /// `TruncationOverflow`.
    pub fn run(&self, p: &BsParams) -> Result<(FockDensity, f64)> {
        let policy = input_policy(p.input())?.with_dim(self.mode_dim())?;
        let mode1: Vec<(f64, FockVector)> = match p.input() {
            InputState::Coherent { alpha } => {
                let v = coherent_state(Complex64::new(alpha, 0.0), policy)?;
                Vec::from([(1.0, v)])
            }
            InputState::Thermal { nbar } => thermal_state(nbar, policy)?
                .populations()
                .into_iter()
                .enumerate()
                .map(|(n, w)| Ok((w.clamp(0.0, 1.0), FockVector::number(n, policy)?)))
                .collect::<Result<_>>()?,
        };
        let source = [
            (p.p_s(), FockVector::number(1, policy)?),
            (1.0 - p.p_s(), FockVector::vacuum(policy)),
        ];
        TwoModeMixture::product(&mode1, &source)?
            .beam_splitter(&self.bs, p.theta())
            .condition_no_click(p.eta())
    }
}

/// One-shot form of [`BsPipeline::run`].
pub fn bs_state(p: &BsParams) -> Result<(FockDensity, f64)> {
    BsPipeline::for_params(p)?.run(p)
}
