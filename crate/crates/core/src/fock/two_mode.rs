use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::beam_splitter::BeamSplitter;
use super::policy::TruncationPolicy;
use super::state::{FockDensity, FockVector};
use crate::error::{check_range, Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};

/// Largest joint dimension `N₁·N₂` of a dense [`TwoModeDensity`].
pub const DENSE_JOINT_CAP: usize = 4096;

/// Largest per-mode dimension of a [`TwoModeMixture`].
pub const MIXTURE_MODE_CAP: usize = 256;

/// Level counts of a two-mode basis `|n₁⟩⊗|n₂⟩`, indexed `n₁·N₂ + n₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoModeDims {
    pub n1: usize,
    pub n2: usize,
}

impl TwoModeDims {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidParameter {
                name: "max_dim",
                value: n1.min(n2) as f64,
                reason: "each mode needs at least two levels",
            });
        }
        Ok(Self { n1, n2 })
    }

    pub fn joint(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.n2 + n2
    }

    /// First `n₁` and number of basis states with `n₁ + n₂ = s`.
    pub fn sector(&self, s: usize) -> (usize, usize) {
        let lo = s.saturating_sub(self.n2 - 1);
        let hi = s.min(self.n1 - 1);
        (lo, hi + 1 - lo)
    }
}

/// Dense two-mode density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeDensity {
    dims: TwoModeDims,
    policies: (TruncationPolicy, TruncationPolicy),
    matrix: CMatrix,
}

impl TwoModeDensity {
    /// `ρ₁ ⊗ ρ₂`
    pub fn product(rho1: &FockDensity, rho2: &FockDensity) -> Result<Self> {
        let dims = TwoModeDims::new(rho1.dim(), rho2.dim())?;
        if dims.joint() > DENSE_JOINT_CAP {
            return Err(Error::DimensionCap {
                dim: dims.joint(),
                cap: DENSE_JOINT_CAP,
            });
        }
        let (a, b) = (rho1.matrix(), rho2.matrix());
        let mut matrix = CMatrix::zeros(dims.joint());
        for i1 in 0..dims.n1 {
            for j1 in 0..dims.n1 {
                let x = a[(i1, j1)];
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..dims.n2 {
                    for j2 in 0..dims.n2 {
                        matrix[(dims.index(i1, i2), dims.index(j1, j2))] = x * b[(i2, j2)];
                    }
                }
            }
        }
        Ok(Self {
            dims,
            policies: (rho1.policy(), rho2.policy()),
            matrix,
        })
    }

    pub(crate) fn from_parts(
        dims: TwoModeDims,
        policies: (TruncationPolicy, TruncationPolicy),
        matrix: CMatrix,
    ) -> Self {
        Self {
            dims,
            policies,
            matrix,
        }
    }

    pub fn dims(&self) -> TwoModeDims {
        self.dims
    }

    pub fn policies(&self) -> (TruncationPolicy, TruncationPolicy) {
        self.policies
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr₂ ρ₁₂`
    pub fn reduced_mode1(&self) -> Result<FockDensity> {
        self.weighted_trace_mode2(|_| 1.0)
            .and_then(|m| FockDensity::from_unnormalized(m, self.policies.0))
    }

    /// `Tr₁ ρ₁₂`
    pub fn reduced_mode2(&self) -> Result<FockDensity> {
        let d = self.dims;
        let mut out = CMatrix::zeros(d.n2);
        for i2 in 0..d.n2 {
            for j2 in 0..d.n2 {
                out[(i2, j2)] = (0..d.n1)
                    .map(|k| self.matrix[(d.index(k, i2), d.index(k, j2))])
                    .sum();
            }
        }
        FockDensity::from_unnormalized(out, self.policies.1)
    }

    /// `Tr₂{W₂ ρ₁₂}` for a diagonal mode-2 operator with entries `w(n₂)`.
    fn weighted_trace_mode2(&self, w: impl Fn(usize) -> f64) -> Result<CMatrix> {
        let d = self.dims;
        let weights: Vec<f64> = (0..d.n2).map(w).collect();
        let mut out = CMatrix::zeros(d.n1);
        for i1 in 0..d.n1 {
            for j1 in 0..d.n1 {
                out[(i1, j1)] = weights
                    .iter()
                    .enumerate()
                    .map(|(k, &wk)| self.matrix[(d.index(i1, k), d.index(j1, k))] * wk)
                    .sum();
            }
        }
        Ok(out)
    }

    /// Hermiticity (1e-12), unit trace (1e-10) and eigenvalue floor (-1e-10).
    pub fn validate(&self) -> Result<()> {
        if self.matrix.hermiticity_defect() > 1e-12 {
            return Err(Error::InvalidState("two-mode density is not Hermitian"));
        }
        if (self.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(
                "two-mode density trace differs from one",
            ));
        }
        let (vals, _) = hermitian_eigen(&self.matrix);
        if vals.iter().any(|&v| v < -1e-10) {
            return Err(Error::InvalidState(
                "two-mode density has a negative eigenvalue",
            ));
        }
        Ok(())
    }
}

/// First and last nonzero index; `(0, len - 1)` for a zero vector.
fn support(amplitudes: &[Complex64]) -> (usize, usize) {
    let nonzero = |a: &&Complex64| **a != Complex64::new(0.0, 0.0);
    match (
        amplitudes.iter().position(|a| nonzero(&a)),
        amplitudes.iter().rposition(|a| nonzero(&a)),
    ) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => (0, amplitudes.len() - 1),
    }
}

fn no_click_weights(n: usize, eta: f64) -> Vec<f64> {
    (0..n).map(|k| (1.0 - eta).powi(k as i32)).collect()
}

fn check_probability(p_nd: f64) -> Result<()> {
    if p_nd < 1e-15 || !p_nd.is_finite() {
        Err(Error::ZeroProbability(p_nd))
    } else {
        Ok(())
    }
}

/// Heralds on a no-click of an inefficient detector on mode 2, whose POVM
/// element is `Π⁰ = Σₙ (1-η)ⁿ |n⟩⟨n|`.
///
/// Returns the normalized mode-1 state `Tr₂{Π₂⁰ ρ₁₂} / P_ND` together with
/// `P_ND = Tr{Π₂⁰ ρ₁₂}`.
pub fn condition_no_click(rho12: &TwoModeDensity, eta: f64) -> Result<(FockDensity, f64)> {
    check_range("eta", eta, 0.0, 1.0)?;
    let weights = no_click_weights(rho12.dims.n2, eta);
    let mut out = rho12.weighted_trace_mode2(|k| weights[k])?;
    let p_nd = out.trace().re;
    check_probability(p_nd)?;
    out.scale(1.0 / p_nd);
    Ok((FockDensity::from_unnormalized(out, rho12.policies.0)?, p_nd))
}

/// Two-mode state held as a weighted ensemble of pure joint vectors.
///
/// Product inputs whose factors are diagonal mixtures (thermal light, a
/// photon/vacuum source) stay cheap in this form: the beam splitter costs
/// `O(N²)` per component instead of `O(N⁴)` for the dense matrix, which is
/// what lets the heralding pipeline run at full single-mode truncation.
#[derive(Debug, Clone)]
pub struct TwoModeMixture {
    dims: TwoModeDims,
    policies: (TruncationPolicy, TruncationPolicy),
    components: Vec<Component>,
}

#[derive(Debug, Clone)]
struct Component {
    weight: f64,
    psi: Vec<Complex64>,
    /// lowest and highest total photon number in the support
    sectors: (usize, usize),
}

impl TwoModeMixture {
    /// `(Σᵢ pᵢ|uᵢ⟩⟨uᵢ|) ⊗ (Σⱼ qⱼ|vⱼ⟩⟨vⱼ|)`; zero-weight parts are dropped.
    pub fn product(mode1: &[(f64, FockVector)], mode2: &[(f64, FockVector)]) -> Result<Self> {
        let (first1, first2) = match (mode1.first(), mode2.first()) {
            (Some(a), Some(b)) => (&a.1, &b.1),
            _ => return Err(Error::InvalidState("empty ensemble")),
        };
        let dims = TwoModeDims::new(first1.dim(), first2.dim())?;
        let cap = dims.n1.max(dims.n2);
        if cap > MIXTURE_MODE_CAP {
            return Err(Error::DimensionCap {
                dim: cap,
                cap: MIXTURE_MODE_CAP,
            });
        }
        let mut components = Vec::new();
        for (p, u) in mode1 {
            check_range("weight", *p, 0.0, 1.0)?;
            if u.dim() != dims.n1 {
                return Err(Error::DimensionMismatch {
                    expected: dims.n1,
                    got: u.dim(),
                });
            }
            for (q, v) in mode2 {
                check_range("weight", *q, 0.0, 1.0)?;
                if v.dim() != dims.n2 {
                    return Err(Error::DimensionMismatch {
                        expected: dims.n2,
                        got: v.dim(),
                    });
                }
                let w = p * q;
                if w == 0.0 {
                    continue;
                }
                let mut psi = vec![Complex64::new(0.0, 0.0); dims.joint()];
                for (i, a) in u.amplitudes().iter().enumerate() {
                    if *a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for (j, b) in v.amplitudes().iter().enumerate() {
                        psi[dims.index(i, j)] = a * b;
                    }
                }
                let (lo1, hi1) = support(u.amplitudes());
                let (lo2, hi2) = support(v.amplitudes());
                components.push(Component {
                    weight: w,
                    psi,
                    sectors: (lo1 + lo2, hi1 + hi2),
                });
            }
        }
        Ok(Self {
            dims,
            policies: (first1.policy(), first2.policy()),
            components,
        })
    }

    pub fn dims(&self) -> TwoModeDims {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Applies `B(θ)` to every component.
    pub fn beam_splitter(mut self, bs: &BeamSplitter, theta: f64) -> Self {
        assert_eq!(bs.dims(), self.dims);
        for c in &mut self.components {
            bs.apply_in_place(theta, &mut c.psi, c.sectors.0..=c.sectors.1);
        }
        self
    }

    /// Same contract as [`condition_no_click`].
    pub fn condition_no_click(&self, eta: f64) -> Result<(FockDensity, f64)> {
        check_range("eta", eta, 0.0, 1.0)?;
        let d = self.dims;
        let weights = no_click_weights(d.n2, eta);
        let mut out = CMatrix::zeros(d.n1);
        let mut support: Vec<(usize, Complex64)> = Vec::with_capacity(d.n1);
        for c in &self.components {
            let (lo, hi) = c.sectors;
            for (n2, &wk) in weights.iter().enumerate().take(hi + 1) {
                if wk == 0.0 {
                    continue;
                }
                support.clear();
                support.extend(
                    (lo.saturating_sub(n2)..d.n1.min(hi - n2 + 1))
                        .map(|n1| (n1, c.psi[d.index(n1, n2)]))
                        .filter(|(_, z)| *z != Complex64::new(0.0, 0.0)),
                );
                let scale = c.weight * wk;
                for &(i, zi) in &support {
                    for &(j, zj) in &support {
                        out[(i, j)] += zi * zj.conj() * scale;
                    }
                }
            }
        }
        let p_nd = out.trace().re;
        check_probability(p_nd)?;
        out.scale(1.0 / p_nd);
        Ok((FockDensity::from_unnormalized(out, self.policies.0)?, p_nd))
    }

    /// Dense form, subject to [`DENSE_JOINT_CAP`].
    pub fn to_density(&self) -> Result<TwoModeDensity> {
        if self.dims.joint() > DENSE_JOINT_CAP {
            return Err(Error::DimensionCap {
                dim: self.dims.joint(),
                cap: DENSE_JOINT_CAP,
            });
        }
        let mut matrix = CMatrix::zeros(self.dims.joint());
        for c in &self.components {
            matrix.add_scaled(&CMatrix::outer(&c.psi), Complex64::new(c.weight, 0.0));
        }
        Ok(TwoModeDensity {
            dims: self.dims,
            policies: self.policies,
            matrix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{beam_splitter_apply, coherent_state, normal_moment};
    use core::f64::consts::FRAC_PI_4;

    fn policy(n: usize) -> TruncationPolicy {
        TruncationPolicy::new(n, 1e-12).unwrap()
    }

    #[test]
    fn sector_bounds() {
        let d = TwoModeDims::new(4, 3).unwrap();
        assert_eq!(d.sector(0), (0, 1));
        assert_eq!(d.sector(2), (0, 3));
        assert_eq!(d.sector(3), (1, 3));
        assert_eq!(d.sector(5), (3, 1));
    }

    #[test]
    fn dense_cap_enforced() {
        let big = FockDensity::vacuum(policy(65));
        let err = TwoModeDensity::product(&big, &big).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { .. }));
    }

    #[test]
    fn identity_at_zero_angle() {
        let a = coherent_state(Complex64::new(0.8, 0.3), policy(16))
            .unwrap()
            .to_density();
        let one = FockDensity::number(1, policy(16)).unwrap();
        let rho = TwoModeDensity::product(&a, &one).unwrap();
        let out = beam_splitter_apply(&rho, 0.0).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn single_photon_halves() {
        let one = FockDensity::number(1, policy(4)).unwrap();
        let vac = FockDensity::vacuum(policy(4));
        let rho = TwoModeDensity::product(&one, &vac).unwrap();
        let out = beam_splitter_apply(&rho, FRAC_PI_4).unwrap();
        let r1 = out.reduced_mode1().unwrap();
        assert!((normal_moment(&r1, 1, 1).unwrap().re - 0.5).abs() < 1e-14);
        out.validate().unwrap();
    }

    #[test]
    fn no_click_endpoints() {
        let a = coherent_state(Complex64::new(0.5, 0.0), policy(10))
            .unwrap()
            .to_density();
        let one = FockDensity::number(1, policy(10)).unwrap();
        let rho = beam_splitter_apply(&TwoModeDensity::product(&a, &one).unwrap(), 0.6).unwrap();

        let (cond, p) = condition_no_click(&rho, 0.0).unwrap();
        assert!((p - 1.0).abs() < 1e-14);
        assert!(
            cond.matrix()
                .max_abs_diff(rho.reduced_mode1().unwrap().matrix())
                < 1e-14
        );

        let vac = FockDensity::vacuum(policy(10));
        let rho = TwoModeDensity::product(&a, &vac).unwrap();
        let (cond, p) = condition_no_click(&rho, 1.0).unwrap();
        assert!((p - 1.0).abs() < 1e-14);
        assert!(cond.matrix().max_abs_diff(a.matrix()) < 1e-14);

        assert!(condition_no_click(&rho, 1.5).is_err());
    }

    #[test]
    fn zero_probability_detected() {
        // the photon always reaches the detector
        let one = FockDensity::number(1, policy(4)).unwrap();
        let rho = TwoModeDensity::product(&FockDensity::vacuum(policy(4)), &one).unwrap();
        let (_, p) = condition_no_click(&rho, 0.5).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!(matches!(
            condition_no_click(&rho, 1.0),
            Err(Error::ZeroProbability(_))
        ));
    }

    #[test]
    fn mixture_matches_dense_route() {
        let p = policy(16);
        let alpha = coherent_state(Complex64::new(0.9, -0.2), p).unwrap();
        let src = [
            (0.7, FockVector::number(1, p).unwrap()),
            (0.3, FockVector::vacuum(p)),
        ];
        let mix = TwoModeMixture::product(&[(1.0, alpha.clone())], &src).unwrap();
        let bs = BeamSplitter::new(mix.dims());
        let theta = 0.7;
        let (c_mix, p_mix) = mix
            .clone()
            .beam_splitter(&bs, theta)
            .condition_no_click(0.6)
            .unwrap();

        let single = FockDensity::mixture(&[
            (0.7, &FockDensity::number(1, p).unwrap()),
            (0.3, &FockDensity::vacuum(p)),
        ])
        .unwrap();
        let dense = TwoModeDensity::product(&alpha.to_density(), &single).unwrap();
        let out = beam_splitter_apply(&dense, theta).unwrap();
        out.validate().unwrap();
        let (c_dense, p_dense) = condition_no_click(&out, 0.6).unwrap();
        assert!((p_mix - p_dense).abs() < 1e-13);
        assert!(c_mix.matrix().max_abs_diff(c_dense.matrix()) < 1e-13);
        assert!(
            mix.to_density()
                .unwrap()
                .matrix()
                .max_abs_diff(dense.matrix())
                < 1e-15
        );
    }
}
