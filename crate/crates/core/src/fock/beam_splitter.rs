use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_complex::Complex64;
use num_traits::Float;

use super::two_mode::{TwoModeDensity, TwoModeDims};
use crate::error::Result;
use crate::linalg::{symmetric_tridiagonal_eigen, CMatrix};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `iʲ` for an integer exponent.
fn i_pow(j: i64) -> Complex64 {
    match j.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Spectrum of the generator restricted to one total-photon-number sector.
#[derive(Debug, Clone)]
struct Sector {
    n1_min: usize,
    len: usize,
    eigenvalues: Vec<f64>,
    /// row-major `len × len`, columns are eigenvectors
    eigenvectors: Vec<f64>,
}

/// Beam-splitter unitary `B(θ) = exp[θ (a₁†a₂ − a₁a₂†)]` on a truncated
/// two-mode basis, so that `B† a₁ B = cos θ a₁ + sin θ a₂` and
/// `B† a₂ B = −sin θ a₁ + cos θ a₂`.
///
/// The generator conserves `n₁ + n₂`, so it splits into one real
/// antisymmetric tridiagonal block `G_s` per sector. With
/// `D = diag(1, i, i², …)`, `D†(iG_s)D` is real symmetric tridiagonal; its
/// eigendecomposition `V Λ Vᵀ` is computed once and gives the exact
/// exponential `exp(θG_s) = D V e^{−iθΛ} Vᵀ D†` for every angle.
#[derive(Debug, Clone)]
pub struct BeamSplitter {
    dims: TwoModeDims,
    sectors: Vec<Sector>,
}

impl BeamSplitter {
    pub fn new(dims: TwoModeDims) -> Self {
        let total_max = dims.n1 + dims.n2 - 2;
        let sectors = (0..=total_max)
            .map(|s| {
                let (n1_min, len) = dims.sector(s);
                // coupling between n₁ and n₁ + 1 within the sector
                let off: Vec<f64> = (0..len.saturating_sub(1))
                    .map(|j| {
                        let n1 = n1_min + j;
                        (((n1 + 1) * (s - n1)) as f64).sqrt()
                    })
                    .collect();
                let (eigenvalues, eigenvectors) =
                    symmetric_tridiagonal_eigen(&vec![0.0; len], &off);
                Sector {
                    n1_min,
                    len,
                    eigenvalues,
                    eigenvectors,
                }
            })
            .collect();
        Self { dims, sectors }
    }

    pub fn dims(&self) -> TwoModeDims {
        self.dims
    }

    /// Number of total-photon-number sectors, `N₁ + N₂ − 1`.
    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    /// Dense `exp(θG_s)` for sector `s`, row-major, indexed by `n₁ - n1_min`.
    fn sector_unitary(&self, s: usize, theta: f64) -> Vec<Complex64> {
        let sec = &self.sectors[s];
        let b = sec.len;
        let phases: Vec<Complex64> = sec
            .eigenvalues
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -theta * l))
            .collect();
        let mut u = vec![ZERO; b * b];
        for j in 0..b {
            for k in 0..b {
                let mut acc = ZERO;
                let (vj, vk) = (
                    &sec.eigenvectors[j * b..][..b],
                    &sec.eigenvectors[k * b..][..b],
                );
                for ((&ph, &x), &y) in phases.iter().zip(vj).zip(vk) {
                    acc += ph * (x * y);
                }
                u[j * b + k] = acc * i_pow(j as i64 - k as i64);
            }
        }
        u
    }

    /// `B(θ)|ψ⟩` for a vector in the joint basis.
    pub fn apply_vector(&self, theta: f64, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = psi.to_vec();
        self.apply_in_place(theta, &mut out, 0..=self.sectors.len() - 1);
        out
    }

    /// Overwrites `psi` with `B(θ)|ψ⟩`, touching only the sectors in
    /// `range`, which must cover the support of `psi`.
    pub(crate) fn apply_in_place(
        &self,
        theta: f64,
        psi: &mut [Complex64],
        range: RangeInclusive<usize>,
    ) {
        assert_eq!(psi.len(), self.dims.joint());
        let mut v = Vec::new();
        let mut w = Vec::new();
        for s in range {
            let sec = &self.sectors[s];
            let b = sec.len;
            let idx = |j: usize| self.dims.index(sec.n1_min + j, s - sec.n1_min - j);
            if (0..b).all(|j| psi[idx(j)] == ZERO) {
                continue;
            }
            // w = e^{−iθΛ} Vᵀ D† v
            v.clear();
            v.extend((0..b).map(|j| psi[idx(j)] * i_pow(-(j as i64))));
            w.clear();
            w.extend((0..b).map(|l| {
                let acc: Complex64 = (0..b).map(|j| v[j] * sec.eigenvectors[j * b + l]).sum();
                acc * Complex64::from_polar(1.0, -theta * sec.eigenvalues[l])
            }));
            for j in 0..b {
                let acc: Complex64 = (0..b).map(|l| w[l] * sec.eigenvectors[j * b + l]).sum();
                psi[idx(j)] = acc * i_pow(j as i64);
            }
        }
    }

    /// `B(θ) ρ B(θ)†`.
    pub fn apply_density(&self, theta: f64, rho: &TwoModeDensity) -> TwoModeDensity {
        assert_eq!(rho.dims(), self.dims);
        let unitaries: Vec<Vec<Complex64>> = (0..self.sectors.len())
            .map(|s| self.sector_unitary(s, theta))
            .collect();
        let indices: Vec<Vec<usize>> = self
            .sectors
            .iter()
            .enumerate()
            .map(|(s, sec)| {
                (0..sec.len)
                    .map(|j| self.dims.index(sec.n1_min + j, s - sec.n1_min - j))
                    .collect()
            })
            .collect();
        let src = rho.matrix();
        let mut out = CMatrix::zeros(self.dims.joint());
        for (s, is) in indices.iter().enumerate() {
            let us = &unitaries[s];
            let bs = is.len();
            for (t, it) in indices.iter().enumerate() {
                let ut = &unitaries[t];
                let bt = it.len();
                if is.iter().all(|&i| it.iter().all(|&j| src[(i, j)] == ZERO)) {
                    continue;
                }
                // tmp = U_s ρ_st
                let mut tmp = vec![ZERO; bs * bt];
                for a in 0..bs {
                    for c in 0..bs {
                        let u = us[a * bs + c];
                        if u == ZERO {
                            continue;
                        }
                        for d in 0..bt {
                            tmp[a * bt + d] += u * src[(is[c], it[d])];
                        }
                    }
                }
                // out_st = tmp U_t†
                for a in 0..bs {
                    for b in 0..bt {
                        let mut acc = ZERO;
                        for d in 0..bt {
                            acc += tmp[a * bt + d] * ut[b * bt + d].conj();
                        }
                        out[(is[a], it[b])] = acc;
                    }
                }
            }
        }
        TwoModeDensity::from_parts(self.dims, rho.policies(), out)
    }
}

/// `B(θ) ρ₁₂ B(θ)†` for a dense two-mode density matrix.
pub fn beam_splitter_apply(rho12: &TwoModeDensity, theta: f64) -> Result<TwoModeDensity> {
    Ok(BeamSplitter::new(rho12.dims()).apply_density(theta, rho12))
}
