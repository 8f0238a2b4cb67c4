use alloc::vec;

use num_complex::Complex64;
use num_traits::Float;

use super::state::FockDensity;
use crate::error::{check_range, Result};
use crate::linalg::CMatrix;
use crate::numeric::binomial;

/// `a†ρa / Tr[a†ρa]` in the same basis.
///
/// The occupation of the top level is pushed out of the basis; its share of
/// `Tr[a†ρa]` must stay within the policy's tail tolerance.
pub fn photon_add(rho: &FockDensity) -> Result<FockDensity> {
    let n = rho.dim();
    let src = rho.matrix();
    let mut out = CMatrix::zeros(n);
    for i in 0..n - 1 {
        let si = ((i + 1) as f64).sqrt();
        for j in 0..n - 1 {
            out[(i + 1, j + 1)] = src[(i, j)] * (si * ((j + 1) as f64).sqrt());
        }
    }
    let kept = out.trace().re;
    let lost = src[(n - 1, n - 1)].re * n as f64;
    rho.policy().check_tail(lost / (kept + lost))?;
    FockDensity::from_unnormalized(out, rho.policy())
}

/// Pure-loss channel of transmissivity `eta`: the signal mode after a beam
/// splitter of transmissivity `eta` whose other input is vacuum.
///
/// Applied through its Kraus operators
/// `E_k = Σₙ √C(n,k) η^{(n-k)/2} (1-η)^{k/2} |n-k⟩⟨n|`.
pub fn loss_channel(rho: &FockDensity, eta: f64) -> Result<FockDensity> {
    check_range("eta", eta, 0.0, 1.0)?;
    let n = rho.dim();
    let src = rho.matrix();
    let sqrt_eta = eta.sqrt();
    let sqrt_loss = (1.0 - eta).sqrt();
    // weight[i * n + k] = ⟨i|E_k|i+k⟩
    let mut weight = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n - i {
            weight[i * n + k] =
                binomial(i + k, k).sqrt() * sqrt_eta.powi(i as i32) * sqrt_loss.powi(k as i32);
        }
    }
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n - i.max(j) {
                acc += src[(i + k, j + k)] * (weight[i * n + k] * weight[j * n + k]);
            }
            out[(i, j)] = acc;
        }
    }
    FockDensity::from_unnormalized(out, rho.policy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, normal_moment, thermal_state, FockVector, TruncationPolicy};

    fn policy(n: usize) -> TruncationPolicy {
        TruncationPolicy::new(n, 1e-12).unwrap()
    }

    #[test]
    fn vacuum_goes_to_single_photon() {
        let out = photon_add(&FockDensity::vacuum(policy(6))).unwrap();
        assert_eq!(out, FockDensity::number(1, policy(6)).unwrap());
    }

    #[test]
    fn photon_add_rejects_top_level_mass() {
        let top = FockDensity::number(5, policy(6)).unwrap();
        assert!(photon_add(&top).is_err());
    }

    #[test]
    fn loss_endpoints() {
        let rho = coherent_state(Complex64::new(0.7, 0.4), policy(32))
            .unwrap()
            .to_density();
        let same = loss_channel(&rho, 1.0).unwrap();
        assert!(same.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        let vac = loss_channel(&rho, 0.0).unwrap();
        assert!(
            vac.matrix()
                .max_abs_diff(FockDensity::vacuum(policy(32)).matrix())
                < 1e-15
        );
    }

    #[test]
    fn loss_scales_factorial_moments() {
        let th = thermal_state(0.5, policy(60)).unwrap();
        let sats = photon_add(&th).unwrap();
        let eta = 0.37;
        let lossy = loss_channel(&sats, eta).unwrap();
        for m in 1..=4 {
            let before = normal_moment(&sats, m, m).unwrap().re;
            let after = normal_moment(&lossy, m, m).unwrap().re;
            assert!((after - eta.powi(m as i32) * before).abs() < 1e-10 * before.max(1.0));
        }
    }

    #[test]
    fn loss_of_coherent_state_is_coherent() {
        let alpha = Complex64::new(1.2, -0.5);
        let rho = coherent_state(alpha, policy(40)).unwrap().to_density();
        let out = loss_channel(&rho, 0.64).unwrap();
        let want = coherent_state(alpha * 0.8, policy(40)).unwrap();
        assert!((out.fidelity_with_pure(&want) - 1.0).abs() < 1e-12);
        out.validate().unwrap();
    }

    #[test]
    fn single_photon_loss() {
        let one = FockVector::number(1, policy(4)).unwrap().to_density();
        let out = loss_channel(&one, 0.3).unwrap();
        let pops = out.populations();
        assert!((pops[0] - 0.7).abs() < 1e-15 && (pops[1] - 0.3).abs() < 1e-15);
    }
}
