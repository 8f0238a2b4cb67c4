use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::policy::TruncationPolicy;
use crate::error::{check_range, Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const EIGEN_FLOOR: f64 = -1e-10;

/// Pure single-mode state in a truncated number basis, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<Complex64>,
    policy: TruncationPolicy,
}

impl FockVector {
    /// Wraps raw amplitudes, requiring the squared norm to lie within
    /// `[1 - tail_tol, 1]` (up to rounding), then renormalizes.
    pub fn new(amplitudes: Vec<Complex64>, policy: TruncationPolicy) -> Result<Self> {
        if amplitudes.len() != policy.max_dim() {
            return Err(Error::DimensionMismatch {
                expected: policy.max_dim(),
                got: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !(norm_sqr <= 1.0 + 1e-12) {
            return Err(Error::InvalidState("squared norm exceeds one"));
        }
        policy.check_tail(1.0 - norm_sqr)?;
        Ok(Self::normalized_from(amplitudes, policy))
    }

    fn normalized_from(mut amplitudes: Vec<Complex64>, policy: TruncationPolicy) -> Self {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self { amplitudes, policy }
    }

    /// Normalizes an arbitrary nonzero vector without a tail check.
    pub fn from_unnormalized(amplitudes: Vec<Complex64>, policy: TruncationPolicy) -> Result<Self> {
        if amplitudes.len() != policy.max_dim() {
            return Err(Error::DimensionMismatch {
                expected: policy.max_dim(),
                got: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !(norm_sqr > 0.0 && norm_sqr.is_finite()) {
            return Err(Error::InvalidState("vector has zero or non-finite norm"));
        }
        Ok(Self::normalized_from(amplitudes, policy))
    }

    /// Number state `|n⟩`.
    pub fn number(n: usize, policy: TruncationPolicy) -> Result<Self> {
        if n >= policy.max_dim() {
            return Err(Error::TruncationOverflow {
                mass: 1.0,
                tol: policy.tail_tol(),
                dim: policy.max_dim(),
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); policy.max_dim()];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, policy })
    }

    pub fn vacuum(policy: TruncationPolicy) -> Self {
        Self::number(0, policy).expect("max_dim >= 2")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Normalized `a†|ψ⟩`. The top level's contribution falls outside the
    /// basis and must be within the tail tolerance.
    pub fn photon_added(&self) -> Result<Self> {
        let n = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n - 1 {
            out[k + 1] = self.amplitudes[k] * ((k + 1) as f64).sqrt();
        }
        let kept: f64 = out.iter().map(|a| a.norm_sqr()).sum();
        let lost = self.amplitudes[n - 1].norm_sqr() * n as f64;
        self.policy.check_tail(lost / (kept + lost))?;
        Self::from_unnormalized(out, self.policy)
    }

    /// `|ψ⟩⟨ψ|`
    pub fn to_density(&self) -> FockDensity {
        FockDensity {
            matrix: CMatrix::outer(&self.amplitudes),
            policy: self.policy,
        }
    }

    /// `|⟨ψ|φ⟩|²`
    pub fn overlap_sqr(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// Coherent state `|α⟩` with amplitudes `e^{-|α|²/2} αⁿ/√n!`, renormalized
/// over the basis.
pub fn coherent_state(alpha: Complex64, policy: TruncationPolicy) -> Result<FockVector> {
    check_range("|alpha|", alpha.norm(), 0.0, f64::MAX)?;
    let n = policy.max_dim();
    let lambda = alpha.norm_sqr();
    if lambda == 0.0 {
        return Ok(FockVector::vacuum(policy));
    }
    let ln_lambda = lambda.ln();
    let phase = alpha.arg();
    // ln of the Poisson weight e^{-λ} λⁿ / n!
    let mut ln_p = -lambda;
    let mut amplitudes = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            ln_p += ln_lambda - (k as f64).ln();
        }
        amplitudes.push(Complex64::from_polar((0.5 * ln_p).exp(), phase * k as f64));
    }
    let mut tail = 0.0;
    let mut k = n;
    loop {
        ln_p += ln_lambda - (k as f64).ln();
        let p = ln_p.exp();
        tail += p;
        k += 1;
        if k as f64 > lambda && p <= tail * 1e-17 {
            break;
        }
    }
    policy.check_tail(tail)?;
    Ok(FockVector::normalized_from(amplitudes, policy))
}

/// Thermal state with diagonal `n̄ⁿ/(1+n̄)ⁿ⁺¹`, renormalized over the basis.
pub fn thermal_state(nbar: f64, policy: TruncationPolicy) -> Result<FockDensity> {
    check_range("nbar", nbar, 0.0, f64::MAX)?;
    let n = policy.max_dim();
    let ratio = nbar / (1.0 + nbar);
    policy.check_tail(ratio.powi(n as i32))?;
    let mut diag = Vec::with_capacity(n);
    let mut p = 1.0 / (1.0 + nbar);
    for _ in 0..n {
        diag.push(p);
        p *= ratio;
    }
    let total: f64 = diag.iter().sum();
    for d in &mut diag {
        *d /= total;
    }
    Ok(FockDensity {
        matrix: CMatrix::from_diagonal(&diag),
        policy,
    })
}

/// Single-mode density matrix in a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    matrix: CMatrix,
    policy: TruncationPolicy,
}

impl FockDensity {
    /// Wraps a matrix after checking the Hermiticity and trace invariants.
    pub fn from_matrix(matrix: CMatrix, policy: TruncationPolicy) -> Result<Self> {
        if matrix.dim() != policy.max_dim() {
            return Err(Error::DimensionMismatch {
                expected: policy.max_dim(),
                got: matrix.dim(),
            });
        }
        let rho = Self { matrix, policy };
        rho.check_hermitian_and_trace()?;
        Ok(rho)
    }

    /// Normalizes a nonzero positive matrix to unit trace.
    pub(crate) fn from_unnormalized(mut matrix: CMatrix, policy: TruncationPolicy) -> Result<Self> {
        let tr = matrix.trace().re;
        if !(tr > 0.0 && tr.is_finite()) {
            return Err(Error::InvalidState("trace is zero or not finite"));
        }
        matrix.scale(1.0 / tr);
        Ok(Self { matrix, policy })
    }

    pub fn vacuum(policy: TruncationPolicy) -> Self {
        FockVector::vacuum(policy).to_density()
    }

    pub fn number(n: usize, policy: TruncationPolicy) -> Result<Self> {
        Ok(FockVector::number(n, policy)?.to_density())
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must be nonnegative and sum to one.
    pub fn mixture(parts: &[(f64, &FockDensity)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::InvalidState("empty mixture"))?.1;
        let mut matrix = CMatrix::zeros(first.dim());
        let mut total = 0.0;
        for &(w, rho) in parts {
            check_range("weight", w, 0.0, 1.0)?;
            if rho.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    got: rho.dim(),
                });
            }
            matrix.add_scaled(&rho.matrix, Complex64::new(w, 0.0));
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState("mixture weights do not sum to one"));
        }
        Ok(Self {
            matrix,
            policy: first.policy,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `⟨n|ρ|n⟩` for every level.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// `⟨ψ|ρ|ψ⟩`, the fidelity with a pure state.
    pub fn fidelity_with_pure(&self, psi: &FockVector) -> f64 {
        self.matrix.expectation(psi.amplitudes()).re
    }

    /// Uhlmann fidelity with another density matrix.
    pub fn fidelity(&self, other: &Self) -> f64 {
        crate::linalg::fidelity(&self.matrix, &other.matrix)
    }

    fn check_hermitian_and_trace(&self) -> Result<()> {
        if self.matrix.hermiticity_defect() > HERMITIAN_TOL {
            return Err(Error::InvalidState("density matrix is not Hermitian"));
        }
        if (self.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState("density matrix trace differs from one"));
        }
        Ok(())
    }

    /// Full validity check: Hermiticity (1e-12 element-wise), unit trace
    /// (1e-10) and eigenvalues no lower than -1e-10.
    pub fn validate(&self) -> Result<()> {
        self.check_hermitian_and_trace()?;
        let (vals, _) = hermitian_eigen(&self.matrix);
        if vals.iter().any(|&v| v < EIGEN_FLOOR) {
            return Err(Error::InvalidState(
                "density matrix has a negative eigenvalue",
            ));
        }
        Ok(())
    }
}
