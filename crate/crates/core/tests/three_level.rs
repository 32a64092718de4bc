mod common;

use common::re;
use quasizeno::zeno::{
    effective_evolution, effective_hamiltonian, exact_stroboscopic, exact_stroboscopic_state,
    projectors_from_observable, steady_state_analysis, survival_exact, survival_product, DEFAULT_DEGENERACY_TOL,
};
use quasizeno::{ComplexMatrix, StateVector};

fn setup(lambda: f64) -> (ComplexMatrix, ComplexMatrix) {
    let r = lambda * std::f64::consts::FRAC_1_SQRT_2;
    let h = ComplexMatrix::from_fn(3, |i, j| if i.abs_diff(j) == 1 { re(r) } else { re(0.0) });
    let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 1.0]);
    let set = projectors_from_observable(&a, DEFAULT_DEGENERACY_TOL).unwrap();
    (h, set.projector(1).clone())
}

#[test]
fn million_steps_match_analytic_survival() {
    let (h, p) = setup(1.0);
    let dt = 1e-3;
    let n = 1_000_000;
    let psi0 = StateVector::basis(3, 0);
    let u = exact_stroboscopic(&h, &p, dt, n).unwrap();
    let exact = psi0.apply(&u).norm_squared();
    let analytic = (1.0 + (-(n as f64) * dt * dt).exp()) / 2.0;
    let stack = effective_hamiltonian(&h, &p, dt, 2).unwrap();
    let effective = psi0.apply(&effective_evolution(&stack, n as f64 * dt).unwrap()).norm_squared();
    assert!((exact - effective).abs() < 1e-2);
    assert!((exact - analytic).abs() < 1e-3);
    // State stepping agrees with the operator product.
    let stepped = exact_stroboscopic_state(&h, &p, &psi0, dt, n).unwrap();
    assert!((stepped.norm_squared() - exact).abs() < 1e-10);
}

#[test]
fn long_time_limit_is_dark_state() {
    let (h, p) = setup(1.0);
    let dt = 1e-2;
    let steps = 200_000;
    let psi0 = StateVector::basis(3, 0);
    assert!((survival_exact(&h, &p, &psi0, dt, steps).unwrap() - 0.5).abs() < 1e-6);
    assert!((survival_product(&h, &p, &psi0, dt, steps, 2).unwrap() - 0.5).abs() < 1e-2);
    let stack = effective_hamiltonian(&h, &p, dt, 2).unwrap();
    let ss = steady_state_analysis(&stack).unwrap();
    let end = psi0.apply(&effective_evolution(&stack, steps as f64 * dt).unwrap()).normalized().unwrap();
    assert!((end.inner(&ss.eigenvectors[0]).norm_sqr() - 1.0).abs() < 1e-3);
}

#[test]
fn higher_orders_stay_close_for_small_steps() {
    let (h, p) = setup(1.0);
    let dt = 1e-2;
    let psi0 = StateVector::basis(3, 0);
    let exact = psi0.apply(&exact_stroboscopic(&h, &p, dt, 500).unwrap());
    let mut previous = f64::INFINITY;
    for order in 1..=6 {
        let stack = effective_hamiltonian(&h, &p, dt, order).unwrap();
        let eff = psi0.apply(&effective_evolution(&stack, 5.0).unwrap());
        let err = eff.distance(&exact);
        if order >= 2 {
            assert!(err < 1e-3, "order {order}: {err}");
        }
        if order == 2 {
            assert!(err < previous);
        }
        previous = err;
    }
}
