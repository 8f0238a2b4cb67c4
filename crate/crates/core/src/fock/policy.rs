use num_traits::Float;

use crate::error::{check_range, Error, Result};

/// Basis size and the probability mass a state may leave outside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    max_dim: usize,
    tail_tol: f64,
}

impl TruncationPolicy {
    pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
    const MIN_ADAPTIVE_DIM: usize = 32;

    pub fn new(max_dim: usize, tail_tol: f64) -> Result<Self> {
        if max_dim < 2 {
            return Err(Error::InvalidParameter {
                name: "max_dim",
                value: max_dim as f64,
                reason: "basis needs at least two levels",
            });
        }
        if !(tail_tol.is_finite() && (0.0..1.0).contains(&tail_tol)) {
            return Err(Error::InvalidParameter {
                name: "tail_tol",
                value: tail_tol,
                reason: "must lie in [0, 1)",
            });
        }
        Ok(Self { max_dim, tail_tol })
    }

    /// `N = max(32, ⌈|α|² + 8|α| + 20⌉)`.
    pub fn for_coherent(alpha_abs: f64) -> Result<Self> {
        check_range("alpha", alpha_abs, 0.0, f64::MAX)?;
        let n = (alpha_abs * alpha_abs + 8.0 * alpha_abs + 20.0).ceil() as usize;
        Self::new(n.max(Self::MIN_ADAPTIVE_DIM), Self::DEFAULT_TAIL_TOL)
    }

    /// `N = max(32, ⌈40 (n̄ + 1)⌉)`.
    pub fn for_thermal(nbar: f64) -> Result<Self> {
        check_range("nbar", nbar, 0.0, f64::MAX)?;
        let n = (40.0 * (nbar + 1.0)).ceil() as usize;
        Self::new(n.max(Self::MIN_ADAPTIVE_DIM), Self::DEFAULT_TAIL_TOL)
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    /// Same tolerance, `extra` more levels.
    pub fn with_headroom(self, extra: usize) -> Self {
        Self {
            max_dim: self.max_dim + extra,
            ..self
        }
    }

    pub fn with_dim(self, max_dim: usize) -> Result<Self> {
        Self::new(max_dim, self.tail_tol)
    }

    pub(crate) fn check_tail(&self, mass: f64) -> Result<()> {
        if mass > self.tail_tol {
            Err(Error::TruncationOverflow {
                mass,
                tol: self.tail_tol,
                dim: self.max_dim,
            })
        } else {
            Ok(())
        }
    }
}
