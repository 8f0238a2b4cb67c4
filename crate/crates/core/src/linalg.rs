//! Dense complex matrices and the two eigensolvers the Fock engine needs:
//! implicit-shift QL for real symmetric tridiagonal matrices and cyclic
//! Jacobi for Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Float;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|u⟩⟨u|`
    pub fn outer(u: &[Complex64]) -> Self {
        let n = u.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            if u[i] == ZERO {
                continue;
            }
            for j in 0..n {
                m[(i, j)] = u[i] * u[j].conj();
            }
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must be a square.
    pub fn from_row_major(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data is not {n}x{n}");
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, r) in orow.iter_mut().zip(rrow) {
                    *o += a * r;
                }
            }
        }
        out
    }

    pub fn scale(&mut self, factor: f64) {
        for z in &mut self.data {
            *z *= factor;
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: Complex64) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    /// Largest element-wise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest element-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `⟨u|M|u⟩`
    pub fn expectation(&self, u: &[Complex64]) -> Complex64 {
        assert_eq!(u.len(), self.n);
        let mut acc = ZERO;
        for i in 0..self.n {
            if u[i] == ZERO {
                continue;
            }
            let row: Complex64 = self.row(i).iter().zip(u).map(|(m, v)| m * v).sum();
            acc += u[i].conj() * row;
        }
        acc
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigendecomposition of a real symmetric tridiagonal matrix.
///
/// `diag` holds the diagonal and `off[i]` couples rows `i` and `i + 1`
/// (`off.len() == diag.len() - 1`, or empty for a 1×1 matrix). Returns the
/// eigenvalues and the row-major eigenvector matrix whose column `k` is the
/// eigenvector of eigenvalue `k`.
pub fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    assert!(n == 0 || off.len() + 1 == n, "off-diagonal length mismatch");
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations < 64, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zi = z[k * n + i];
                    let zi1 = z[k * n + i + 1];
                    z[k * n + i + 1] = s * zi + c * zi1;
                    z[k * n + i] = c * zi - s * zi1;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (d, z)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues (unsorted) and a unitary whose column `k`
/// is the eigenvector of eigenvalue `k`.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.dim();
    let mut a = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return (vec![0.0; n], v);
    }
    let threshold = scale * f64::EPSILON * 0.1;

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off = f64::max(off, a[(p, q)].norm());
            }
        }
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= threshold {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // R = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q)
                let rpp = Complex64::new(c, 0.0);
                let rpq = Complex64::new(s, 0.0);
                let rqp = -phase.conj() * s;
                let rqq = phase.conj() * c;
                // A <- A R
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * rpp + akq * rqp;
                    a[(k, q)] = akp * rpq + akq * rqq;
                }
                // A <- R† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = rpp.conj() * apk + rqp.conj() * aqk;
                    a[(q, k)] = rpq.conj() * apk + rqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * rpp + vkq * rqp;
                    v[(k, q)] = vkp * rpq + vkq * rqq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| a[(i, i)].re).collect();
    (vals, v)
}

/// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²` of two density matrices.
///
/// `ρ` is factored as `U U†` over its eigenvalues above `1e-14`, and the
/// spectrum of `√ρ σ √ρ` is read off the small matrix `U† σ U`. This keeps
/// the square roots away from the numerically-zero part of the spectrum,
/// which matters when both states are close to pure.
pub fn fidelity(rho: &CMatrix, sigma: &CMatrix) -> f64 {
    assert_eq!(rho.dim(), sigma.dim());
    let n = rho.dim();
    let (vals, vecs) = hermitian_eigen(rho);
    let kept: Vec<usize> = (0..n).filter(|&k| vals[k] > 1e-14).collect();
    let r = kept.len();
    if r == 0 {
        return 0.0;
    }
    // U[:, j] = sqrt(λ_j) v_j
    let mut u = vec![ZERO; n * r];
    for (j, &k) in kept.iter().enumerate() {
        let w = vals[k].sqrt();
        for i in 0..n {
            u[i * r + j] = vecs[(i, k)] * w;
        }
    }
    // σU
    let mut su = vec![ZERO; n * r];
    for i in 0..n {
        for k in 0..n {
            let sik = sigma[(i, k)];
            if sik == ZERO {
                continue;
            }
            for j in 0..r {
                su[i * r + j] += sik * u[k * r + j];
            }
        }
    }
    let mut m = CMatrix::zeros(r);
    for a in 0..r {
        for b in 0..r {
            let mut acc = ZERO;
            for i in 0..n {
                acc += u[i * r + a].conj() * su[i * r + b];
            }
            m[(a, b)] = acc;
        }
    }
    let (mu, _) = hermitian_eigen(&m);
    let root: f64 = mu.iter().map(|&x| x.max(0.0).sqrt()).sum();
    root * root
}
