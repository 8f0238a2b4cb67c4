use num_complex::Complex64;
use num_traits::Float;

use super::state::FockDensity;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::numeric::{antinormal_coefficient, falling};
use crate::witness::MomentSet;

/// Largest `p` or `q` accepted by [`normal_moment`].
pub const MAX_MOMENT_ORDER: u32 = 12;

/// `⟨a†ᵖ aᑫ⟩ = Tr[ρ a†ᵖ aᑫ]`, traced in the number basis.
pub fn normal_moment(rho: &FockDensity, p: u32, q: u32) -> Result<Complex64> {
    if p > MAX_MOMENT_ORDER || q > MAX_MOMENT_ORDER {
        return Err(Error::OrderTooLarge {
            p,
            q,
            max: MAX_MOMENT_ORDER,
        });
    }
    let n = rho.dim();
    let m = rho.matrix();
    let (p, q) = (p as usize, q as usize);
    let mut acc = Complex64::new(0.0, 0.0);
    // a†ᵖ aᑫ |k⟩ = √(k!/(k-q)!) √((k-q+p)!/(k-q)!) |k-q+p⟩
    for k in q..n {
        let target = k - q + p;
        if target >= n {
            break;
        }
        let coef = (falling(k, q as u32) * falling(target, p as u32)).sqrt();
        acc += m[(k, target)] * coef;
    }
    Ok(acc)
}

/// `⟨aᵐa†ᵐ⟩` from the normally ordered moments `⟨a†ᵖaᵖ⟩`, `p = 0..=m`,
/// via `aᵐa†ᵐ = Σₚ (m!)²/((m-p)!(p!)²) a†ᵖaᵖ`.
pub fn antinormal_from_normal(normal: &[f64], m: u32) -> Result<f64> {
    if normal.len() <= m as usize {
        return Err(Error::MissingMoment(normal.len() as u32));
    }
    if m > 20 {
        return Err(Error::OrderTooLarge {
            p: m,
            q: m,
            max: 20,
        });
    }
    Ok((0..=m)
        .map(|p| antinormal_coefficient(m, p) * normal[p as usize])
        .sum())
}

/// `⟨aᵐa†ᵐ⟩` by explicit ladder-matrix products in a basis enlarged by `m`
/// levels, so that `a†ᵐ` is not clipped.
pub fn antinormal_moment_direct(rho: &FockDensity, m: u32) -> Result<f64> {
    if m > MAX_MOMENT_ORDER {
        return Err(Error::OrderTooLarge {
            p: m,
            q: m,
            max: MAX_MOMENT_ORDER,
        });
    }
    let n = rho.dim();
    let big = n + m as usize;
    let mut lower = CMatrix::zeros(big);
    for k in 1..big {
        lower[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let raise = lower.adjoint();
    let mut op = CMatrix::identity(big);
    for _ in 0..m {
        op = op.matmul(&lower);
    }
    for _ in 0..m {
        op = op.matmul(&raise);
    }
    // Tr[ρ X] over the original block
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += rho.matrix()[(i, j)] * op[(j, i)];
        }
    }
    Ok(acc.re)
}

/// Every moment of order `m` the witnesses need, traced from `ρ`. The
/// anti-normally ordered moment uses the direct ladder product, not the
/// reordering identity.
pub fn moment_set(rho: &FockDensity, m: u32) -> Result<MomentSet> {
    if m == 0 || 2 * m > MAX_MOMENT_ORDER {
        return Err(Error::OrderTooLarge {
            p: 2 * m,
            q: 2 * m,
            max: MAX_MOMENT_ORDER,
        });
    }
    Ok(MomentSet {
        m,
        a_m: normal_moment(rho, 0, m)?,
        a2m: normal_moment(rho, 0, 2 * m)?,
        n_m: normal_moment(rho, m, m)?.re,
        n_2m: normal_moment(rho, 2 * m, 2 * m)?.re,
        anti_m: antinormal_moment_direct(rho, m)?,
    })
}
