use proptest::prelude::*;

use photon_add_core::fock::{
    antinormal_from_normal, antinormal_moment_direct, coherent_state, loss_channel, moment_set,
    normal_moment, thermal_state, BeamSplitter, FockVector, TruncationPolicy, TwoModeDims,
};
use photon_add_core::witness::{q1_opt, q1_phase, q2};
use photon_add_core::Complex64;

fn pure_state() -> impl Strategy<Value = FockVector> {
    (2usize..=16)
        .prop_flat_map(|n| prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n))
        .prop_filter("nonzero", |v| {
            v.iter().any(|(re, im)| re.abs() + im.abs() > 1e-3)
        })
        .prop_map(|v| {
            let policy = TruncationPolicy::new(v.len(), 1e-12).unwrap();
            let amps = v
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            FockVector::from_unnormalized(amps, policy).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witnesses_never_below_minus_one(psi in pure_state(), m in 1u32..=4) {
        let ms = moment_set(&psi.to_density(), m).unwrap();
        if let Some(v) = q1_opt(&ms).value {
            prop_assert!(v >= -1.0 - 1e-9, "q1 = {v}");
        }
        if let Some(v) = q2(&ms).value {
            prop_assert!(v >= -1.0 - 1e-9, "q2 = {v}");
        }
    }

    #[test]
    fn reordering_identity(psi in pure_state(), m in 1u32..=4) {
        let rho = psi.to_density();
        let normal: Vec<f64> = (0..=m).map(|p| normal_moment(&rho, p, p).unwrap().re).collect();
        let direct = antinormal_moment_direct(&rho, m).unwrap();
        let reordered = antinormal_from_normal(&normal, m).unwrap();
        prop_assert!((direct - reordered).abs() <= 1e-10 * direct.abs().max(1.0));
    }

    #[test]
    fn optimal_phase_is_minimal(psi in pure_state(), m in 1u32..=3, phi in 0.0f64..std::f64::consts::PI) {
        let ms = moment_set(&psi.to_density(), m).unwrap();
        let best = q1_opt(&ms);
        if let Some(v) = best.value {
            let at_phi = q1_phase(&ms, phi).value.unwrap();
            prop_assert!(v <= at_phi + 1e-9 * at_phi.abs().max(1.0));
            let at_best = q1_phase(&ms, best.phase.unwrap()).value.unwrap();
            prop_assert!((at_best - v).abs() <= 1e-9 * v.abs().max(1.0));
        }
    }

    #[test]
    fn beam_splitter_inverts(theta in -3.2f64..3.2, re in -1.0f64..1.0, im in -1.0f64..1.0) {
        let dims = TwoModeDims::new(10, 7).unwrap();
        let bs = BeamSplitter::new(dims);
        let psi: Vec<Complex64> = (0..dims.joint())
            .map(|k| Complex64::new(re * (k as f64).cos(), im * (0.3 * k as f64).sin()))
            .collect();
        let back = bs.apply_vector(-theta, &bs.apply_vector(theta, &psi));
        for (a, b) in psi.iter().zip(&back) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn loss_composes(eta1 in 0.0f64..=1.0, eta2 in 0.0f64..=1.0, alpha in 0.0f64..2.0) {
        let policy = TruncationPolicy::for_coherent(alpha).unwrap();
        let rho = coherent_state(Complex64::new(alpha, 0.3), policy).unwrap().photon_added().unwrap().to_density();
        let twice = loss_channel(&loss_channel(&rho, eta1).unwrap(), eta2).unwrap();
        let once = loss_channel(&rho, eta1 * eta2).unwrap();
        prop_assert!(twice.matrix().max_abs_diff(once.matrix()) < 1e-12);
    }
}

#[test]
fn classical_states_are_not_witnessed() {
    for &alpha in &[0.0, 0.5, 1.0, 2.0, 3.0] {
        let policy = TruncationPolicy::for_coherent(alpha).unwrap();
        let rho = coherent_state(Complex64::from_polar(alpha, 0.4), policy)
            .unwrap()
            .to_density();
        for m in 1..=5 {
            let ms = moment_set(&rho, m).unwrap();
            assert!(q1_opt(&ms).value.unwrap() >= -1e-12);
            if let Some(v) = q2(&ms).value {
                assert!(v.abs() < 1e-9);
            }
        }
    }
    for &nbar in &[0.1, 0.5, 1.0, 2.0] {
        let rho = thermal_state(nbar, TruncationPolicy::for_thermal(nbar).unwrap()).unwrap();
        for m in 1..=5 {
            let ms = moment_set(&rho, m).unwrap();
            assert!(q1_opt(&ms).value.unwrap() >= -1e-12);
            assert!(q2(&ms).value.unwrap() >= -1e-12);
        }
    }
}
