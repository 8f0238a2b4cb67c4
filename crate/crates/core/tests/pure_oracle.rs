use photon_add_core::analytic::{
    sacs_moment_a, sacs_moment_nm, sacs_moment_set, sacs_q2, sats_moment_nm, sats_moment_set,
    sats_q2, InputState, SacsParams, SatsParams,
};
use photon_add_core::fock::{moment_set, normal_moment};
use photon_add_core::numeric::rel_diff;
use photon_add_core::oracle::photon_added;
use photon_add_core::witness::{q1_opt, q2};

#[test]
fn sacs_moments_match_photon_added_coherent() {
    let mut worst = 0.0f64;
    for k in 1..=60 {
        let alpha = 0.1 * k as f64;
        let p = SacsParams::new(alpha).unwrap();
        let rho = photon_added(InputState::Coherent { alpha }).unwrap();
        for m in 1..=5 {
            let a = normal_moment(&rho, 0, m).unwrap().re;
            let n = normal_moment(&rho, m, m).unwrap().re;
            let ea = rel_diff(a, sacs_moment_a(&p, m));
            let en = rel_diff(n, sacs_moment_nm(&p, m));
            assert!(ea < 1e-9 && en < 1e-9, "alpha={alpha} m={m}: {ea:e} {en:e}");
            worst = worst.max(ea).max(en);
        }
    }
    println!("worst relative deviation {worst:e}");
}

#[test]
fn sacs_witnesses_match_oracle() {
    for &alpha in &[0.4, 1.0, 1.7, 3.2] {
        let p = SacsParams::new(alpha).unwrap();
        let rho = photon_added(InputState::Coherent { alpha }).unwrap();
        for m in 1..=5 {
            let oracle = moment_set(&rho, m).unwrap();
            let closed = sacs_moment_set(&p, m).unwrap();
            assert!(rel_diff(oracle.anti_m, closed.anti_m) < 1e-9);
            assert!(rel_diff(oracle.n_2m, closed.n_2m) < 1e-9);
            let q1_oracle = q1_opt(&oracle).value().unwrap();
            let q1_closed = q1_opt(&closed).value().unwrap();
            assert!((q1_oracle - q1_closed).abs() < 1e-9, "alpha={alpha} m={m}");
            let q2_oracle = q2(&oracle).value().unwrap();
            assert!((q2_oracle - sacs_q2(&p, m).unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn sats_moments_match_photon_added_thermal() {
    let mut worst = 0.0f64;
    let grid = [0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0];
    for &nbar in &grid {
        let p = SatsParams::new(nbar).unwrap();
        let rho = photon_added(InputState::Thermal { nbar }).unwrap();
        for m in 1..=5 {
            let n = normal_moment(&rho, m, m).unwrap().re;
            let e = rel_diff(n, sats_moment_nm(&p, m));
            assert!(e < 1e-9, "nbar={nbar} m={m}: {e:e}");
            worst = worst.max(e);
            // phase symmetry
            assert!(normal_moment(&rho, 0, m).unwrap().norm() < 1e-10);
        }
    }
    println!("worst relative deviation {worst:e}");
}

#[test]
fn sats_witness_matches_oracle() {
    for &nbar in &[0.2, 0.5, 1.0] {
        let p = SatsParams::new(nbar).unwrap();
        let rho = photon_added(InputState::Thermal { nbar }).unwrap();
        for m in 1..=4 {
            let oracle = moment_set(&rho, m).unwrap();
            assert!(rel_diff(oracle.anti_m, sats_moment_set(&p, m).unwrap().anti_m) < 1e-9);
            assert!((q2(&oracle).value().unwrap() - sats_q2(&p, m).unwrap()).abs() < 1e-9);
        }
    }
    // n̄ = 0.5 gives x = 3
    let half = photon_added(InputState::Thermal { nbar: 0.5 }).unwrap();
    let q = q2(&moment_set(&half, 1).unwrap()).value().unwrap();
    assert!((q + 0.125).abs() < 1e-10);
}
