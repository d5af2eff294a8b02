use proptest::prelude::*;
use rheokit_core::maxwell::{simulate, steady_state, DriveProgram, MaxwellModel};
use rheokit_core::Potential;

fn relaxation_error(dt: f64) -> f64 {
    let m = MaxwellModel::new(1.0, vec![Potential::dashpot(1.0).unwrap()]).unwrap();
    let ts = simulate(&m, &DriveProgram::constant(0.0).unwrap(), dt, 1.0, 1.0).unwrap();
    (ts.last().unwrap().sigma - (-1.0f64).exp()).abs()
}

#[test]
fn backward_euler_is_first_order() {
    let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3].iter().map(|&dt| relaxation_error(dt)).collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((order - 1.0).abs() < 0.1, "observed order {order}");
    }
    assert!(relaxation_error(1e-4) < 1e-3);
}

#[test]
fn zero_drive_stays_at_rest() {
    let m = MaxwellModel::new(2.0, vec![Potential::huber(1.0, 1.0).unwrap(), Potential::power_law(1.0, 3.0).unwrap()])
        .unwrap();
    let ts = simulate(&m, &DriveProgram::constant(0.0).unwrap(), 0.01, 1.0, 0.0).unwrap();
    assert!(ts.rows.iter().all(|r| r.e_el == 0.0 && r.sigma == 0.0));
}

#[test]
fn plastic_caps_hold_under_cyclic_drive() {
    let m = MaxwellModel::new(5.0, vec![Potential::perfect_plastic(0.8).unwrap(), Potential::huber(1.2, 3.0).unwrap()])
        .unwrap();
    let drive = DriveProgram::new(vec![(1.0, 3.0), (3.0, -3.0), (4.0, 2.0)]).unwrap();
    let ts = simulate(&m, &drive, 1e-3, 5.0, 0.0).unwrap();
    assert!(ts.max_abs_stress() <= 0.8 * (1.0 + 1e-12));
    assert!(ts.max_abs_stress() > 0.8 * (1.0 - 1e-9));
}

#[test]
fn explicit_and_implicit_agree_for_small_steps() {
    let m = MaxwellModel::new(1.0, vec![Potential::dashpot(1.0).unwrap(), Potential::power_law(2.0, 2.0).unwrap()])
        .unwrap();
    let (mut a, mut b) = (0.5, 0.5);
    for _ in 0..10_000 {
        a = m.step(a, 0.3, 1e-4).unwrap();
        b = m.step_explicit(b, 0.3, 1e-4).unwrap();
    }
    assert!((a - b).abs() < 1e-4);
}

#[test]
fn steady_states_match_rheology() {
    let models = [
        vec![Potential::dashpot(1.0).unwrap(), Potential::perfect_plastic(2.0).unwrap()],
        vec![Potential::dashpot(0.5).unwrap(), Potential::power_law(1.0, 3.0).unwrap()],
        vec![Potential::huber(1.0, 2.0).unwrap(), Potential::dashpot(4.0).unwrap()],
    ];
    for elements in models {
        let m = MaxwellModel::new(2.0, elements).unwrap();
        for eps in [0.2, 1.0, 5.0] {
            let s = steady_state(&m, eps, 0.05, 1e-10, 1_000_000).unwrap();
            let want = m.flow_expr().unwrap().stress_of_strain_rate(eps).unwrap().midpoint();
            assert!((s - want).abs() <= 1e-6 * want, "{eps}: {s} vs {want}");
        }
    }
}

proptest! {
    #[test]
    fn steps_never_create_energy(
        e in -3.0f64..3.0,
        eps in -5.0f64..5.0,
        dt in 1e-4f64..1.0,
        d in 0.1f64..10.0,
        sa in 0.1f64..3.0,
    ) {
        let m = MaxwellModel::new(1.7, vec![Potential::dashpot(d).unwrap(), Potential::huber(sa, d).unwrap()]).unwrap();
        let next = m.step(e, eps, dt).unwrap();
        let sigma = m.elastic_modulus * next;
        let lhs = sigma * (next - e) / dt;
        let rhs = sigma * eps;
        prop_assert!(lhs <= rhs + 1e-9 * (1.0 + rhs.abs()), "{} > {}", lhs, rhs);
        prop_assert!(sigma.abs() <= sa * (1.0 + 1e-12));
    }
}
