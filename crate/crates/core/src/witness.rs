//! Nonclassicality witnesses built from normally ordered moments.
//!
//! * Q₁ᵐ(φ): normally ordered variance of `aᵐe^{-iφ} + a†ᵐe^{iφ}`, scaled
//!   by the commutator `⟨[aᵐ, a†ᵐ]⟩ = ⟨aᵐa†ᵐ⟩ − ⟨a†ᵐaᵐ⟩`. Negative values
//!   (never below −1) are higher-order amplitude squeezing.
//! * Q₂ᵐ = ⟨a†²ᵐa²ᵐ⟩/⟨a†ᵐaᵐ⟩² − 1: negative values are sub-Poissonian
//!   `m`-photon coincidence statistics; `m = 1` is the Mandel Q parameter
//!   divided by the mean photon number.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Denominators below this make a witness undefined.
pub const DEFINED_THRESHOLD: f64 = 1e-14;

/// The moments of order `m` a witness evaluation needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub m: u32,
    /// `⟨aᵐ⟩`
    pub a_m: Complex64,
    /// `⟨a²ᵐ⟩`
    pub a2m: Complex64,
    /// `⟨a†ᵐaᵐ⟩`
    pub n_m: f64,
    /// `⟨a†²ᵐa²ᵐ⟩`
    pub n_2m: f64,
    /// `⟨aᵐa†ᵐ⟩`
    pub anti_m: f64,
}

impl MomentSet {
    /// Moment set of a state with real amplitudes.
    pub fn real(m: u32, a_m: f64, a2m: f64, n_m: f64, n_2m: f64, anti_m: f64) -> Self {
        Self {
            m,
            a_m: Complex64::new(a_m, 0.0),
            a2m: Complex64::new(a2m, 0.0),
            n_m,
            n_2m,
            anti_m,
        }
    }

    /// `⟨[aᵐ, a†ᵐ]⟩`, nonnegative for any physical state.
    pub fn commutator(&self) -> f64 {
        self.anti_m - self.n_m
    }

    /// Checks the sign constraints every physical state satisfies, with
    /// slack `tol` for rounding.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.m == 0 {
            return Err(Error::DomainError("witness order must be at least one"));
        }
        if self.n_m < -tol || self.n_2m < -tol || self.anti_m < -tol {
            return Err(Error::InvalidState("negative factorial moment"));
        }
        if self.commutator() < -tol {
            return Err(Error::InvalidState(
                "anti-normal moment below normal moment",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Q1Phase,
    Q1Opt,
    Q2,
    MandelQ,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessResult {
    pub kind: WitnessKind,
    pub value: Option<f64>,
    pub numerator: f64,
    pub denominator: f64,
    /// The angle used (`Q1Phase`) or the minimizing angle (`Q1Opt`).
    pub phase: Option<f64>,
}

impl WitnessResult {
    fn new(kind: WitnessKind, numerator: f64, denominator: f64, phase: Option<f64>) -> Self {
        let value = (denominator >= DEFINED_THRESHOLD).then(|| numerator / denominator);
        Self {
            kind,
            value,
            numerator,
            denominator,
            phase,
        }
    }

    pub fn defined(&self) -> bool {
        self.value.is_some()
    }

    /// The witness value, or [`Error::UndefinedWitness`].
    pub fn value(&self) -> Result<f64> {
        self.value.ok_or(Error::UndefinedWitness(self.denominator))
    }
}

/// `ζ = ⟨a†²ᵐ⟩ − ⟨a†ᵐ⟩²`
pub fn zeta(ms: &MomentSet) -> Complex64 {
    ms.a2m.conj() - ms.a_m.conj() * ms.a_m.conj()
}

/// `⟨:(Δ(aᵐe^{-iφ} + a†ᵐe^{iφ}))²:⟩ = ζe^{2iφ} + ζ*e^{-2iφ} + 2⟨a†ᵐaᵐ⟩ − 2|⟨aᵐ⟩|²`
fn q1_numerator(ms: &MomentSet, phi: f64) -> f64 {
    let z = zeta(ms);
    2.0 * (z * Complex64::from_polar(1.0, 2.0 * phi)).re + 2.0 * ms.n_m - 2.0 * ms.a_m.norm_sqr()
}

/// Q₁ᵐ(φ) at a given quadrature phase.
pub fn q1_phase(ms: &MomentSet, phi: f64) -> WitnessResult {
    WitnessResult::new(
        WitnessKind::Q1Phase,
        q1_numerator(ms, phi),
        ms.commutator(),
        Some(phi),
    )
}

/// Q₁ᵐ minimized over the phase:
/// `(−2|ζ| + 2⟨a†ᵐaᵐ⟩ − 2|⟨aᵐ⟩|²) / ⟨[aᵐ, a†ᵐ]⟩`.
///
/// The minimizing angle `φ* = (π − arg ζ)/2`, reduced to `[0, π)`, is
/// reported in `phase`.
pub fn q1_opt(ms: &MomentSet) -> WitnessResult {
    let z = zeta(ms);
    let numerator = -2.0 * z.norm() + 2.0 * ms.n_m - 2.0 * ms.a_m.norm_sqr();
    let mut phase = ((PI - z.arg()) / 2.0) % PI;
    if phase < 0.0 {
        phase += PI;
    }
    WitnessResult::new(WitnessKind::Q1Opt, numerator, ms.commutator(), Some(phase))
}

/// Q₂ᵐ = ⟨a†²ᵐa²ᵐ⟩/⟨a†ᵐaᵐ⟩² − 1, reported with numerator
/// `⟨a†²ᵐa²ᵐ⟩ − ⟨a†ᵐaᵐ⟩²` and denominator `⟨a†ᵐaᵐ⟩²`. Undefined when
/// `⟨a†ᵐaᵐ⟩` itself is below threshold.
pub fn q2(ms: &MomentSet) -> WitnessResult {
    let numerator = ms.n_2m - ms.n_m * ms.n_m;
    let denominator = ms.n_m * ms.n_m;
    let value = (ms.n_m >= DEFINED_THRESHOLD).then(|| ms.n_2m / denominator - 1.0);
    WitnessResult {
        kind: WitnessKind::Q2,
        value,
        numerator,
        denominator,
        phase: None,
    }
}

/// Mandel `Q = ⟨a†a⟩ Q₂¹`.
pub fn mandel_q(ms: &MomentSet) -> Result<f64> {
    if ms.m != 1 {
        return Err(Error::DomainError("Mandel Q needs first-order moments"));
    }
    Ok(ms.n_m * q2(ms).value()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coherent(alpha: f64, m: u32) -> MomentSet {
        let am = alpha.powi(m as i32);
        let anti = crate::fock::antinormal_from_normal(
            &(0..=m)
                .map(|p| alpha.powi(2 * p as i32))
                .collect::<alloc::vec::Vec<_>>(),
            m,
        )
        .unwrap();
        MomentSet::real(m, am, am * am, am * am, am.powi(4), anti)
    }

    #[test]
    fn coherent_states_are_classical() {
        for m in 1..=3 {
            let ms = coherent(1.7, m);
            assert!(zeta(&ms).norm() < 1e-12);
            for k in 0..8 {
                let v = q1_phase(&ms, k as f64 * 0.4).value().unwrap();
                assert!(v.abs() < 1e-12);
            }
            assert!(q2(&ms).value().unwrap().abs() < 1e-12);
        }
        assert!(mandel_q(&coherent(0.9, 1)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn vacuum_q1_is_zero() {
        let ms = MomentSet::real(1, 0.0, 0.0, 0.0, 0.0, 1.0);
        let r = q1_opt(&ms);
        assert_eq!(r.value().unwrap(), 0.0);
        assert_eq!(r.denominator, 1.0);
        // ⟨a†a⟩ = 0 leaves Q₂ undefined
        assert!(!q2(&ms).defined());
        assert!(matches!(q2(&ms).value(), Err(Error::UndefinedWitness(_))));
    }

    #[test]
    fn single_photon() {
        let ms = MomentSet::real(1, 0.0, 0.0, 1.0, 0.0, 2.0);
        assert_eq!(q2(&ms).value().unwrap(), -1.0);
        assert_eq!(mandel_q(&ms).unwrap(), -1.0);
    }

    #[test]
    fn thermal_first_order() {
        // ⟨a†a⟩ = n̄, ⟨a†²a²⟩ = 2n̄²
        let nbar = 1.0;
        let ms = MomentSet::real(1, 0.0, 0.0, nbar, 2.0 * nbar * nbar, nbar + 1.0);
        assert_eq!(q2(&ms).value().unwrap(), 1.0);
        assert_eq!(mandel_q(&ms).unwrap(), 1.0);
        assert!(mandel_q(&MomentSet { m: 2, ..ms }).is_err());
    }

    #[test]
    fn undefined_q1_when_commutator_vanishes() {
        let ms = MomentSet::real(1, 0.0, 0.0, 1.0, 0.0, 1.0);
        assert!(!q1_opt(&ms).defined());
    }

    #[test]
    fn optimal_phase_attains_minimum() {
        let ms = MomentSet {
            m: 2,
            a_m: Complex64::new(0.3, -1.1),
            a2m: Complex64::new(-0.4, 0.9),
            n_m: 2.5,
            n_2m: 9.0,
            anti_m: 7.0,
        };
        let opt = q1_opt(&ms);
        let at_phase = q1_phase(&ms, opt.phase.unwrap());
        assert!((opt.value().unwrap() - at_phase.value().unwrap()).abs() < 1e-12);
    }
}
