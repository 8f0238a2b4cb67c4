//! Closed-form moments and witnesses of the pure single-photon-added
//! coherent state (SACS) `a†|α⟩/√(1+α²)` and thermal state (SATS)
//! `a†ρ_th a / Tr[a†ρ_th a]`.
//!
//! SATS expressions are written in `x = e^β = 1 + 1/n̄`, where `β` is the
//! inverse temperature of `ρ_th ∝ e^{−β a†a}`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{check_range, Error, Result};
use crate::fock::antinormal_from_normal;
use crate::numeric::{factorial, factorial_u128};
use crate::witness::{self, MomentSet, WitnessResult};
use crate::MAX_ORDER;

/// Classical input state fed to a photon-addition scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputState {
    /// Coherent state with real amplitude `α ≥ 0`.
    Coherent { alpha: f64 },
    /// Thermal state with mean photon number `n̄ > 0`.
    Thermal { nbar: f64 },
}

impl InputState {
    pub fn coherent(alpha: f64) -> Result<Self> {
        check_range("alpha", alpha, 0.0, f64::MAX)?;
        Ok(Self::Coherent { alpha })
    }

    pub fn thermal(nbar: f64) -> Result<Self> {
        if !(nbar > 0.0 && nbar.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "nbar",
                value: nbar,
                reason: "must be positive",
            });
        }
        Ok(Self::Thermal { nbar })
    }
}

pub(crate) fn check_order(m: u32) -> Result<()> {
    if m == 0 || m > MAX_ORDER {
        Err(Error::InvalidParameter {
            name: "order",
            value: m as f64,
            reason: "orders run from 1 to 8",
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SacsParams {
    alpha: f64,
}

impl SacsParams {
    pub fn new(alpha: f64) -> Result<Self> {
        check_range("alpha", alpha, 0.0, f64::MAX)?;
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `⟨aᵐ⟩ = αᵐ(m + 1 + α²)/(1 + α²)`
pub fn sacs_moment_a(p: &SacsParams, m: u32) -> f64 {
    let a2 = p.alpha * p.alpha;
    p.alpha.powi(m as i32) * (m as f64 + 1.0 + a2) / (1.0 + a2)
}

/// `⟨a†ᵐaᵐ⟩ = (α^{2m+2} + (2m+1)α^{2m} + m²α^{2m−2})/(1 + α²)`; one at `m = 0`.
pub fn sacs_moment_nm(p: &SacsParams, m: u32) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let a = p.alpha;
    let mf = m as f64;
    let k = 2 * m as i32;
    (a.powi(k + 2) + (2.0 * mf + 1.0) * a.powi(k) + mf * mf * a.powi(k - 2)) / (1.0 + a * a)
}

/// Moment set of order `m` from the closed forms, with `⟨aᵐa†ᵐ⟩` from the
/// normal-ordering identity.
pub fn sacs_moment_set(p: &SacsParams, m: u32) -> Result<MomentSet> {
    check_order(m)?;
    let ladder: Vec<f64> = (0..=m).map(|k| sacs_moment_nm(p, k)).collect();
    Ok(MomentSet::real(
        m,
        sacs_moment_a(p, m),
        sacs_moment_a(p, 2 * m),
        ladder[m as usize],
        sacs_moment_nm(p, 2 * m),
        antinormal_from_normal(&ladder, m)?,
    ))
}

/// `−|ζ| + ⟨a†ᵐaᵐ⟩ − |⟨aᵐ⟩|² = −m²α^{2m−2}(α² − 1)/(1 + α²)²`.
///
/// This is half of the Q₁ᵐ numerator; the witness itself is
/// `2 · sacs_q1_combination / ⟨[aᵐ, a†ᵐ]⟩`.
pub fn sacs_q1_combination(p: &SacsParams, m: u32) -> f64 {
    let a2 = p.alpha * p.alpha;
    let mf = m as f64;
    -mf * mf * p.alpha.powi(2 * m as i32 - 2) * (a2 - 1.0) / ((1.0 + a2) * (1.0 + a2))
}

/// Phase-optimized Q₁ᵐ of the SACS.
pub fn sacs_q1(p: &SacsParams, m: u32) -> Result<WitnessResult> {
    Ok(witness::q1_opt(&sacs_moment_set(p, m)?))
}

/// `Q₂ᵐ = α²(1+α²)(α⁴ + (4m+1)α² + 4m²)/(α⁴ + (2m+1)α² + m²)² − 1`.
///
/// At `α = 0` the state is `|1⟩`: the formula gives −1 for `m = 1` and the
/// witness is a 0/0 form for `m ≥ 2`.
pub fn sacs_q2(p: &SacsParams, m: u32) -> Result<f64> {
    check_order(m)?;
    if p.alpha == 0.0 && m >= 2 {
        return Err(Error::DomainError("Q2 of |1> is undefined for m >= 2"));
    }
    if p.alpha == 0.0 {
        return Ok(-1.0);
    }
    let a2 = p.alpha * p.alpha;
    let mf = m as f64;
    let num = a2 * (1.0 + a2) * (a2 * a2 + (4.0 * mf + 1.0) * a2 + 4.0 * mf * mf);
    let den = a2 * a2 + (2.0 * mf + 1.0) * a2 + mf * mf;
    Ok(num / (den * den) - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatsParams {
    nbar: f64,
}

impl SatsParams {
    pub fn new(nbar: f64) -> Result<Self> {
        if !(nbar > 0.0 && nbar.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "nbar",
                value: nbar,
                reason: "must be positive",
            });
        }
        Ok(Self { nbar })
    }

    /// Parameters with `x = e^β = 1 + 1/n̄`, which must exceed one.
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x > 1.0 && x.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "x",
                value: x,
                reason: "must exceed one",
            });
        }
        Self::new(1.0 / (x - 1.0))
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// `x = e^β = 1 + 1/n̄`
    pub fn x(&self) -> f64 {
        1.0 + 1.0 / self.nbar
    }

    /// Inverse temperature `β = ln(1 + 1/n̄)` of the seed thermal state.
    pub fn beta_thermal(&self) -> f64 {
        (1.0 / self.nbar).ln_1p()
    }
}

/// `⟨a†ᵐaᵐ⟩ = m! n̄ᵐ (1 + m x)`; one at `m = 0`.
pub fn sats_moment_nm(p: &SatsParams, m: u32) -> f64 {
    if m == 0 {
        return 1.0;
    }
    factorial(m) * p.nbar.powi(m as i32) * (1.0 + m as f64 * p.x())
}

/// Moment set of order `m`. The SATS is phase symmetric, so `⟨aᵐ⟩` and
/// `⟨a²ᵐ⟩` vanish.
pub fn sats_moment_set(p: &SatsParams, m: u32) -> Result<MomentSet> {
    check_order(m)?;
    let ladder: Vec<f64> = (0..=m).map(|k| sats_moment_nm(p, k)).collect();
    Ok(MomentSet::real(
        m,
        0.0,
        0.0,
        ladder[m as usize],
        sats_moment_nm(p, 2 * m),
        antinormal_from_normal(&ladder, m)?,
    ))
}

/// `Q₂ᵐ = ((2m)!/(m!)²)(2mx + 1)/(mx + 1)² − 1` as a function of
/// `x = 1 + 1/n̄` directly.
pub fn sats_q2_at_x(x: f64, m: u32) -> Result<f64> {
    check_order(m)?;
    let mf = m as f64;
    let ratio = factorial(2 * m) / (factorial(m) * factorial(m));
    let s = mf * x + 1.0;
    Ok(ratio * (2.0 * mf * x + 1.0) / (s * s) - 1.0)
}

pub fn sats_q2(p: &SatsParams, m: u32) -> Result<f64> {
    sats_q2_at_x(p.x(), m)
}

/// Boundary of SATS coincidence nonclassicality at order `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatsThreshold {
    pub m: u32,
    /// `Q₂ᵐ < 0` exactly when `x > C_m`.
    pub c_m: f64,
    /// Equivalent bound on the seed mean photon number: `n̄ < 1/(C_m − 1)`.
    pub nbar_max: f64,
}

/// `C_m = ((2m)! − (m!)² + √((2m)!((2m)! − (m!)²))) / (m (m!)²)`
pub fn sats_threshold(m: u32) -> Result<SatsThreshold> {
    check_order(m)?;
    let f2m = factorial_u128(2 * m);
    let fm2 = factorial_u128(m) * factorial_u128(m);
    let diff = f2m - fm2;
    let root = (f2m as f64).sqrt() * (diff as f64).sqrt();
    let c_m = (diff as f64 + root) / (m as f64 * fm2 as f64);
    Ok(SatsThreshold {
        m,
        c_m,
        nbar_max: 1.0 / (c_m - 1.0),
    })
}
