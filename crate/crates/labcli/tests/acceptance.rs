//! Acceptance suite. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line regardless of output capture.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use quasizeno::hilbert::build_site_operators;
use quasizeno::models::{build_hamiltonian, build_observable, ModelSpec, ObservableSpec};
use quasizeno::numkernel::{hermitian_eig, propagator};
use quasizeno::zeno::{
    effective_evolution, effective_hamiltonian, exact_step, exact_stroboscopic_state, nonuniform_closed_form,
    nonuniform_effective_evolution, projectors_from_observable, quasi_zeno_hamiltonian,
    time_dependent_effective_evolution, DEFAULT_DEGENERACY_TOL,
};
use quasizeno::{ComplexMatrix, StateVector};
use qzlab::{preset, run_experiment, Mode, RunReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64()))
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

// ---------------------------------------------------------------- 1

fn spin1(lambda: f64) -> (ComplexMatrix, ComplexMatrix) {
    let spec = ModelSpec::spin1_transverse(lambda);
    let ops = build_site_operators(&spec.build_basis().unwrap()).unwrap();
    let h = build_hamiltonian(&spec, &ops).unwrap();
    let a = build_observable(&ObservableSpec::abs_sz(), &ops).unwrap();
    let set = projectors_from_observable(&a, DEFAULT_DEGENERACY_TOL).unwrap();
    let p1 = set.projector(set.index_of_eigenvalue(1.0)).clone();
    (h, p1)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut worst = [0.0f64; 4];
    for lambda in [1.0, 0.35, 2.7] {
        let (h, p1) = spin1(lambda);
        let h1 = quasi_zeno_hamiltonian(&h, &p1, 1).map_err(|e| e.to_string())?;
        let h2 = quasi_zeno_hamiltonian(&h, &p1, 2).map_err(|e| e.to_string())?;
        worst[0] = worst[0].max(h1.norm_max());

        // λ²/2 on every entry among |−1> (index 0) and |1> (index 2).
        let hand = ComplexMatrix::from_fn(3, |i, j| if i != 1 && j != 1 { re(lambda * lambda / 2.0) } else { re(0.0) });
        worst[1] = worst[1].max(h2.max_abs_diff(&hand));

        let on_p1 = ComplexMatrix::from_fn(2, |i, j| h2[(2 * i, 2 * j)]);
        let eig = hermitian_eig(&on_p1).map_err(|e| e.to_string())?.eigenvalues;
        worst[2] = worst[2].max(eig[0].abs()).max((eig[1] - lambda * lambda).abs());

        let minus = StateVector::new(vec![re(r), re(0.0), re(-r)]).unwrap();
        worst[3] = worst[3].max(minus.apply(&h).norm());
    }
    ensure(worst[0] <= 1e-14, || format!("H_Z^(1) on P1 has entry {:e}", worst[0]))?;
    ensure(worst[1] <= 1e-12, || format!("H_Z^(2) differs from the closed form by {:e}", worst[1]))?;
    ensure(worst[2] <= 1e-12, || format!("H_Z^(2) spectrum off by {:e}", worst[2]))?;
    ensure(worst[3] <= 1e-14, || format!("‖H|->‖ = {:e}", worst[3]))?;
    within(start.elapsed(), 1.0)?;
    Ok(format!("max deviations {:.1e} {:.1e} {:.1e} {:.1e}", worst[0], worst[1], worst[2], worst[3]))
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let dt = 1e-3;
    let (h, p1) = spin1(1.0);
    let stack = effective_hamiltonian(&h, &p1, dt, 2).map_err(|e| e.to_string())?;
    let psi0 = StateVector::basis(3, 0);

    // Checkpoints every τδt = 0.05 across [0, 10].
    let stride = 50_000usize;
    let checkpoints = 200usize;
    let u_eff = effective_evolution(&stack, stride as f64 * dt).map_err(|e| e.to_string())?;
    let u_exact = exact_step(&h, &p1, dt).map_err(|e| e.to_string())?;
    let mut eff = psi0.clone();
    let mut exact = psi0.clone();
    let (mut worst_closed, mut worst_routes) = (0.0f64, 0.0f64);
    for c in 0..=checkpoints {
        if c > 0 {
            eff = eff.apply(&u_eff);
            for _ in 0..stride {
                exact = exact.apply(&u_exact);
            }
        }
        let tau = (c * stride) as f64 * dt;
        let decay = (-tau * dt / 2.0).exp();
        // (e^{−τδt/2}|+> + |−>)/√2 with |±> = (|−1> ± |1>)/√2.
        let want = [re(0.5 * (decay + 1.0)), re(0.0), re(0.5 * (decay - 1.0))];
        for (a, b) in eff.amplitudes().iter().zip(want) {
            worst_closed = worst_closed.max((a - b).norm());
        }
        worst_routes = worst_routes.max(eff.distance(&exact));
    }
    ensure(worst_closed <= 1e-3, || format!("effective state off the closed form by {worst_closed:e}"))?;
    ensure(worst_routes <= 5e-3, || format!("exact and effective routes differ by {worst_routes:e}"))?;

    let long = effective_evolution(&stack, 50.0 / dt).map_err(|e| e.to_string())?;
    let survival = psi0.apply(&long).norm_squared();
    ensure((survival - 0.5).abs() <= 1e-2, || format!("long-time survival {survival}"))?;
    within(start.elapsed(), 10.0)?;
    Ok(format!("closed form {worst_closed:.1e}, routes {worst_routes:.1e}, survival {survival:.6}"))
}

// ---------------------------------------------------------------- 3

/// Independent fig4 oracle: hand-enumerated Fock states of 2 atoms on 4
/// sites, open-chain hopping with J = 1, P on N₂+N₃ = 1 and a Taylor-series
/// propagator. Returns ⟨n_i⟩ of the normalized state after every step.
fn fig4_oracle(dt: f64, steps: usize) -> Vec<[f64; 4]> {
    let mut states: Vec<[i32; 4]> = Vec::new();
    for a in 0..=2 {
        for b in 0..=2 - a {
            for c in 0..=2 - a - b {
                states.push([a, b, c, 2 - a - b - c]);
            }
        }
    }
    let dim = states.len();
    let find = |s: &[i32; 4]| states.iter().position(|t| t == s).unwrap();
    let mut h = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    for (col, s) in states.iter().enumerate() {
        for (x, y) in [(0, 1), (1, 2), (2, 3), (1, 0), (2, 1), (3, 2)] {
            if s[y] > 0 {
                let mut t = *s;
                let amp = (f64::from(t[y]) * f64::from(t[x] + 1)).sqrt();
                t[y] -= 1;
                t[x] += 1;
                h[find(&t)][col] += re(-amp);
            }
        }
    }
    // exp(−iHδt) by Taylor series; ‖Hδt‖ is far below one here.
    let mut u = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    let mut term: Vec<Vec<C64>> =
        (0..dim).map(|i| (0..dim).map(|j| re(if i == j { 1.0 } else { 0.0 })).collect()).collect();
    for k in 0..30 {
        for i in 0..dim {
            for j in 0..dim {
                u[i][j] += term[i][j];
            }
        }
        let mut next = vec![vec![C64::new(0.0, 0.0); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                for m in 0..dim {
                    next[i][j] += h[i][m] * term[m][j] * C64::new(0.0, -dt / (k + 1) as f64);
                }
            }
        }
        term = next;
    }
    let keep: Vec<bool> = states.iter().map(|s| s[1] + s[2] == 1).collect();
    let mut psi: Vec<C64> = states.iter().map(|s| re(if *s == [1, 1, 0, 0] { 1.0 } else { 0.0 })).collect();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut next = vec![C64::new(0.0, 0.0); dim];
        for i in 0..dim {
            if keep[i] {
                next[i] = (0..dim).map(|j| u[i][j] * psi[j]).sum();
            }
        }
        psi = next;
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let mut occ = [0.0; 4];
        for (s, z) in states.iter().zip(&psi) {
            for site in 0..4 {
                occ[site] += f64::from(s[site]) * z.norm_sqr() / norm;
            }
        }
        out.push(occ);
    }
    out
}

fn max_rise(report: &RunReport, mode: Mode) -> f64 {
    let s: Vec<f64> = report.rows_for(mode).map(|r| r.survival).collect();
    s.windows(2).map(|w| w[1] - w[0]).fold(f64::MIN, f64::max)
}

fn criterion_3() -> Outcome {
    let cfg = preset("fig4").ok_or("missing fig4 preset")?.config;
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let steps = cfg.steps();

    let mut qzd_dev = 0.0f64;
    for r in report.rows_for(Mode::Qzd) {
        qzd_dev = qzd_dev.max((r.values[0] - 1.0).abs()).max(r.values[3].abs());
    }
    ensure(report.rows_for(Mode::Qzd).count() == steps, || "QZD rows missing".into())?;
    ensure(qzd_dev <= 1e-12, || format!("QZD moves the outer sites by {qzd_dev:e}"))?;

    let oracle = fig4_oracle(cfg.dt, steps);
    let oracle_max = oracle.iter().map(|o| o[3]).fold(0.0, f64::max);
    ensure(oracle_max > 0.1, || format!("oracle ⟨n₄⟩ peaks at {oracle_max}"))?;
    let mut oracle_dev = 0.0f64;
    for (r, o) in report.rows_for(Mode::Exact).zip(&oracle) {
        for (a, b) in r.values.iter().zip(o) {
            oracle_dev = oracle_dev.max((a - b).abs());
        }
    }
    ensure(oracle_dev <= 1e-9, || format!("exact mode deviates from the oracle by {oracle_dev:e}"))?;

    let peak = |mode| report.rows_for(mode).map(|r| r.values[3]).fold(0.0, f64::max);
    let (exact_peak, eff_peak) = (peak(Mode::Exact), peak(Mode::Effective));
    ensure(exact_peak > 0.1 && eff_peak > 0.1, || format!("⟨n₄⟩ peaks {exact_peak} / {eff_peak}"))?;

    let rise =
        [Mode::Exact, Mode::Effective, Mode::Qzd].map(|m| max_rise(&report, m)).into_iter().fold(f64::MIN, f64::max);
    ensure(rise <= 1e-15, || format!("survival rises by {rise:e}"))?;
    Ok(format!(
        "QZD dev {qzd_dev:.1e}; ⟨n₄⟩ peak exact {exact_peak:.3} effective {eff_peak:.3} (oracle {oracle_max:.3}, dev {oracle_dev:.1e})"
    ))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    for dt in [1e-2, 5e-3] {
        let mut cfg = preset("fig4").ok_or("missing fig4 preset")?.config;
        cfg.dt = dt;
        cfg.mode = Mode::Compare;
        let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
        ensure(report.diff.len() == cfg.steps(), || "diff rows missing".into())?;
        errs.push(report.max_diff(Mode::Effective));
    }
    let ratio = errs[0] / errs[1];
    ensure((1.5..=2.5).contains(&ratio), || format!("err ratio {ratio} from {errs:?}"))?;
    within(start.elapsed(), 30.0)?;
    Ok(format!("err(1e-2) = {:.4e}, err(5e-3) = {:.4e}, ratio {ratio:.3}", errs[0], errs[1]))
}

// ---------------------------------------------------------------- 5

#[derive(Debug, Clone)]
struct Case {
    dim: usize,
    h: Vec<f64>,
    rotation: Vec<f64>,
    spectrum: Vec<i32>,
    pick: usize,
    state: Vec<f64>,
    dt: f64,
    tau: f64,
}

fn case() -> impl Strategy<Value = Case> {
    (2usize..=16).prop_flat_map(|d| {
        (
            vec(-1.0..1.0f64, 2 * d * d),
            vec(-1.0..1.0f64, 2 * d * d),
            vec(-2i32..=2, d),
            0usize..16,
            vec(-1.0..1.0f64, 2 * d),
            0.01..0.5f64,
            0.0..5.0f64,
        )
            .prop_map(move |(h, rotation, spectrum, pick, state, dt, tau)| Case {
                dim: d,
                h,
                rotation,
                spectrum,
                pick,
                state,
                dt,
                tau,
            })
    })
}

/// Hermitian matrix from 2d² uniforms, scaled to order-one norm.
fn hermitian(d: usize, raw: &[f64]) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(d, |i, j| C64::new(raw[2 * (i * d + j)], raw[2 * (i * d + j) + 1]));
    m.hermitian_part().scale_real(1.0 / (d as f64).sqrt())
}

fn naive_matmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| (0..d).map(|m| a[i][m] * b[m][j]).sum()).collect()).collect()
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..m.dim()).map(|i| m.row(i).to_vec()).collect()
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn property_case(c: &Case) -> Result<(), TestCaseError> {
    let d = c.dim;
    let err = |e: quasizeno::Error| fail(e.to_string());
    let h = hermitian(d, &c.h);
    let rot = propagator(&hermitian(d, &c.rotation), 3.0).map_err(err)?;
    let diag = ComplexMatrix::from_real_diagonal(&c.spectrum.iter().map(|&x| f64::from(x)).collect::<Vec<_>>());
    let a = &(&rot * &diag) * &rot.adjoint();
    let set = projectors_from_observable(&a, 1e-6).map_err(err)?;
    let id = ComplexMatrix::identity(d);

    let mut total = ComplexMatrix::zeros(d);
    for (i, p) in set.projectors().iter().enumerate() {
        let idem = (&(p * p) - p).norm_max();
        if idem > 1e-10 {
            return Err(fail(format!("idempotence {idem:e}")));
        }
        for q in &set.projectors()[i + 1..] {
            let overlap = (p * q).norm_max();
            if overlap > 1e-10 {
                return Err(fail(format!("orthogonality {overlap:e}")));
            }
        }
        total += p;
    }
    let completeness = total.max_abs_diff(&id);
    if completeness > 1e-10 {
        return Err(fail(format!("completeness {completeness:e}")));
    }

    let p = set.projector(c.pick % set.len());
    let q = &id - p;
    let (pr, qr, hr) = (rows(p), rows(&q), rows(&h));
    let mut naive = naive_matmul(&hr, &pr);
    for k in 1..=4 {
        let hz = quasi_zeno_hamiltonian(&h, p, k).map_err(err)?;
        let herm = hz.hermiticity_error();
        let support = hz.max_abs_diff(&(&(p * &hz) * p));
        if herm > 1e-10 || support > 1e-10 {
            return Err(fail(format!("H_Z^({k}) hermiticity {herm:e} support {support:e}")));
        }
        let oracle = naive_matmul(&pr, &naive);
        let gap = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| (hz[(i, j)] - oracle[i][j]).norm())
            .fold(0.0, f64::max);
        if gap > 1e-12 {
            return Err(fail(format!("H_Z^({k}) vs naive product {gap:e}")));
        }
        if k == 2 {
            let min = hermitian_eig(&hz.hermitian_part()).map_err(err)?.eigenvalues[0];
            if min < -1e-10 {
                return Err(fail(format!("H_Z^(2) eigenvalue {min:e}")));
            }
        }
        naive = naive_matmul(&hr, &naive_matmul(&qr, &naive));
    }

    let u1 = effective_evolution(&effective_hamiltonian(&h, p, c.dt, 1).map_err(err)?, c.tau).map_err(err)?;
    let unitarity = (&(&u1.adjoint() * &u1) - &id).norm_max();
    if unitarity > 1e-10 {
        return Err(fail(format!("K=1 unitarity {unitarity:e}")));
    }

    let amps = (0..d).map(|i| C64::new(c.state[2 * i], c.state[2 * i + 1])).collect();
    let raw = StateVector::new(amps).map_err(err)?.apply(p);
    if raw.norm() > 1e-6 {
        let step = exact_step(&h, p, c.dt).map_err(err)?;
        let mut psi = raw.normalized().map_err(err)?;
        let mut prev = psi.norm_squared();
        for n in 0..40 {
            psi = psi.apply(&step);
            let now = psi.norm_squared();
            if now > prev * (1.0 + 1e-14) {
                return Err(fail(format!("norm grew at step {n}: {prev} -> {now}")));
            }
            prev = now;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let cases = 256;
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&case(), |c| property_case(&c)).map_err(|e| e.to_string())?;
    Ok(format!("{cases} randomized cases, dim 2..=16"))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut cfg = preset("three-level").ok_or("missing three-level preset")?.config;
    cfg.mode = Mode::Trajectories;
    cfg.dt = 1e-2;
    cfg.tau = 5.0;
    cfg.n_trajectories = 10_000;
    cfg.sample_every = 500;
    cfg.seed = 20_240_601;
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let observed = report.rows.last().ok_or("no rows")?.survival;

    let (h, p1) = spin1(1.0);
    let exact = exact_stroboscopic_state(&h, &p1, &StateVector::basis(3, 0), cfg.dt, cfg.steps())
        .map_err(|e| e.to_string())?
        .norm_squared();
    let sigma = (exact * (1.0 - exact) / cfg.n_trajectories as f64).sqrt();
    let z = (observed - exact) / sigma;
    ensure(z.abs() <= 3.0, || format!("no-jump frequency {observed} vs {exact}: {z:.2} σ"))?;
    within(start.elapsed(), 60.0)?;
    Ok(format!("no-jump frequency {observed:.4} vs ‖(P₁U)^N ψ₀‖² = {exact:.4} ({z:+.2} σ)"))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let err = |e: quasizeno::Error| e.to_string();
    let cfg = preset("fig4").ok_or("missing fig4 preset")?.config;
    let sys = qzlab::System::prepare(&cfg).map_err(|e| e.to_string())?;
    let (h, p) = (&sys.hamiltonian, sys.projector());
    let norm_h = h.norm_2();

    let dt = 2e-2;
    let n = 150;
    let mut equal_gap = 0.0f64;
    let mut td_gap = 0.0f64;
    for order in 1..=4 {
        let uniform =
            effective_evolution(&effective_hamiltonian(h, p, dt, order).map_err(err)?, n as f64 * dt).map_err(err)?;
        let steps = vec![dt; n];
        let product = nonuniform_effective_evolution(h, p, &steps, order).map_err(err)?;
        let piecewise = time_dependent_effective_evolution(|_| h.clone(), p, &steps, order).map_err(err)?;
        equal_gap = equal_gap.max(uniform.max_abs_diff(&product));
        td_gap = td_gap.max(uniform.max_abs_diff(&piecewise));
    }
    ensure(equal_gap <= 1e-10, || format!("equal nonuniform steps differ by {equal_gap:e}"))?;
    ensure(td_gap <= 1e-10, || format!("constant piecewise evolution differs by {td_gap:e}"))?;

    let mut worst_ratio = 0.0f64;
    for spread in [0.0, 2e-3, 5e-3, 1e-2] {
        let steps: Vec<f64> = (0..120).map(|j| 1e-2 + spread * (((j * 7) % 5) as f64 / 4.0 - 0.5)).collect();
        let tau: f64 = steps.iter().sum();
        let max = steps.iter().cloned().fold(f64::MIN, f64::max);
        let min = steps.iter().cloned().fold(f64::MAX, f64::min);
        let product = nonuniform_effective_evolution(h, p, &steps, 2).map_err(err)?;
        let closed = nonuniform_closed_form(h, p, &steps).map_err(err)?;
        let gap = sys.subspace.compress(&(&product - &closed)).norm_2();
        let bound = 10.0 * (max - min) * norm_h.powi(3) * tau;
        ensure(gap <= bound.max(1e-12), || format!("spread {spread}: gap {gap:e} above bound {bound:e}"))?;
        if bound > 0.0 {
            worst_ratio = worst_ratio.max(gap / bound);
        }
    }
    Ok(format!("equal {equal_gap:.1e}, piecewise {td_gap:.1e}, closed form at {worst_ratio:.1e} of bound"))
}

// ---------------------------------------------------------------- 8

/// Matrix of c·Π ops on the spin-chain basis, rightmost factor applied first.
/// Basis index k holds spin s up when bit (sites−1−s) of k is clear.
fn spin_string(sites: usize, coef: f64, ops: &[(bool, usize)]) -> ComplexMatrix {
    let dim = 1usize << sites;
    let mut m = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let mut k = col;
        let mut alive = true;
        for &(raise, s) in ops.iter().rev() {
            let bit = 1 << (sites - 1 - s);
            let up = k & bit == 0;
            if raise == up {
                alive = false;
                break;
            }
            k ^= bit;
        }
        if alive {
            m[(k, col)] += re(coef);
        }
    }
    m
}

fn criterion_8() -> Outcome {
    let (sites, j) = (4, 1.0);
    let region = [1usize, 2];
    let spec = ModelSpec::xx_chain(sites, j);
    let ops = build_site_operators(&spec.build_basis().unwrap()).unwrap();
    let h = build_hamiltonian(&spec, &ops).map_err(|e| e.to_string())?;
    let a = build_observable(&ObservableSpec::region_magnetization(&region), &ops).map_err(|e| e.to_string())?;
    let set = projectors_from_observable(&a, DEFAULT_DEGENERACY_TOL).map_err(|e| e.to_string())?;

    let in_a = |s: usize| region.contains(&s);
    let mut directed = Vec::new();
    for b in 1..sites {
        directed.push((b - 1, b));
        directed.push((b, b - 1));
    }
    let dim = 1 << sites;
    let mut h1_hand = ComplexMatrix::zeros(dim);
    for &(x, y) in &directed {
        if in_a(x) == in_a(y) {
            h1_hand += &spin_string(sites, -j, &[(true, x), (false, y)]);
        }
    }
    let straddle: Vec<(usize, usize)> = directed.iter().cloned().filter(|&(x, y)| in_a(x) && !in_a(y)).collect();
    let mut h2_hand = ComplexMatrix::zeros(dim);
    for &(x, y) in &straddle {
        for &(k, l) in &straddle {
            h2_hand += &spin_string(sites, j * j, &[(true, x), (false, y), (false, k), (true, l)]);
            h2_hand += &spin_string(sites, j * j, &[(false, x), (true, y), (true, k), (false, l)]);
        }
    }
    ensure(h2_hand.norm_max() > 0.0, || "hand-coded H_Z^(2) is empty".into())?;

    let mut h1 = ComplexMatrix::zeros(dim);
    let mut h2 = ComplexMatrix::zeros(dim);
    let mut per_block = 0.0f64;
    for p in set.projectors() {
        let b1 = quasi_zeno_hamiltonian(&h, p, 1).map_err(|e| e.to_string())?;
        let b2 = quasi_zeno_hamiltonian(&h, p, 2).map_err(|e| e.to_string())?;
        per_block = per_block.max(b1.max_abs_diff(&(&(p * &h1_hand) * p))).max(b2.max_abs_diff(&(&(p * &h2_hand) * p)));
        h1 += &b1;
        h2 += &b2;
    }
    let (g1, g2) = (h1.max_abs_diff(&h1_hand), h2.max_abs_diff(&h2_hand));
    ensure(g1.max(g2).max(per_block) <= 1e-12, || format!("H_Z^(1) {g1:e}, H_Z^(2) {g2:e}, blocks {per_block:e}"))?;
    Ok(format!("H_Z^(1) {g1:.1e}, H_Z^(2) {g2:.1e} across {} subspaces", set.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("three-level analytic suite", criterion_1),
        ("three-level dynamics", criterion_2),
        ("fig4 qualitative reproduction", criterion_3),
        ("fig4 error scaling", criterion_4),
        ("randomized property suite", criterion_5),
        ("Monte-Carlo consistency", criterion_6),
        ("generalized timesteps", criterion_7),
        ("spin-chain structure", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({secs:.2} s) {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} {name}: FAIL ({secs:.2} s) {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
