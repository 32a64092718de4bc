use num_complex::Complex64 as C64;

use super::projectors::check_projector;
use super::MAX_ORDER;
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, Tolerances};

fn check_hamiltonian(h: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    if !h.is_finite() {
        return Err(Error::InvalidMatrix);
    }
    let deviation = h.hermiticity_error();
    let allowed = tol.hermiticity * h.norm_fro();
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation, allowed });
    }
    Ok(())
}

fn check_pair(h: &ComplexMatrix, p: &ComplexMatrix) -> Result<()> {
    if h.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: p.dim() });
    }
    let tol = Tolerances::default();
    check_hamiltonian(h, &tol)?;
    check_projector(p, tol.projector)
}

/// H_Z^(k) = P H ((I − P) H)^(k−1) P.
pub fn quasi_zeno_hamiltonian(h: &ComplexMatrix, p: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    check_pair(h, p)?;
    if k == 0 {
        return Err(Error::InvalidOrder { order: k, max: usize::MAX });
    }
    Ok(quasi_zeno_series(h, p, k).pop().unwrap())
}

/// H_Z^(1), ..., H_Z^(k), sharing the partial products.
fn quasi_zeno_series(h: &ComplexMatrix, p: &ComplexMatrix, k: usize) -> Vec<ComplexMatrix> {
    let q = &ComplexMatrix::identity(h.dim()) - p;
    let mut tail = h * p;
    let mut out = Vec::with_capacity(k);
    out.push(p * &tail);
    for _ in 1..k {
        tail = h * &(&q * &tail);
        out.push(p * &tail);
    }
    out
}

/// The quasi-Zeno Hamiltonians of one measurement subspace and their
/// truncated sum H_eff.
#[derive(Debug, Clone)]
pub struct QuasiZenoStack {
    projector: ComplexMatrix,
    subspace_index: Option<usize>,
    dt: f64,
    h_z: Vec<ComplexMatrix>,
    h_eff: ComplexMatrix,
}

/// H_eff = Σ_{k=1}^{K} (−iδt)^(k−1)/k! H_Z^(k).
pub fn effective_hamiltonian(h: &ComplexMatrix, p: &ComplexMatrix, dt: f64, order: usize) -> Result<QuasiZenoStack> {
    check_pair(h, p)?;
    if order == 0 || order > MAX_ORDER {
        return Err(Error::InvalidOrder { order, max: MAX_ORDER });
    }
    if !(dt >= 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("timestep must be finite and >= 0, got {dt}")));
    }
    let h_z = quasi_zeno_series(h, p, order);
    let mut h_eff = ComplexMatrix::zeros(h.dim());
    for (k, hz) in h_z.iter().enumerate() {
        h_eff += &hz.scale(term_coefficient(k + 1, dt));
    }
    Ok(QuasiZenoStack { projector: p.clone(), subspace_index: None, dt, h_z, h_eff })
}

/// (−iδt)^(k−1)/k!
pub fn term_coefficient(k: usize, dt: f64) -> C64 {
    let mut c = C64::new(1.0, 0.0);
    for j in 1..k {
        c *= C64::new(0.0, -dt) / (j + 1) as f64;
    }
    c
}

impl QuasiZenoStack {
    pub fn with_subspace_index(mut self, index: usize) -> Self {
        self.subspace_index = Some(index);
        self
    }

    pub fn subspace_index(&self) -> Option<usize> {
        self.subspace_index
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }

    pub fn order(&self) -> usize {
        self.h_z.len()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dim(&self) -> usize {
        self.h_eff.dim()
    }

    /// H_Z^(k) for 1 ≤ k ≤ order.
    pub fn h_z(&self, k: usize) -> &ComplexMatrix {
        assert!(k >= 1 && k <= self.order(), "quasi-Zeno order {k} not in stack");
        &self.h_z[k - 1]
    }

    pub fn h_eff(&self) -> &ComplexMatrix {
        &self.h_eff
    }

    /// The k-th summand of H_eff.
    pub fn term(&self, k: usize) -> ComplexMatrix {
        self.h_z(k).scale(term_coefficient(k, self.dt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::hermitian_eig;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn three_level() -> (ComplexMatrix, ComplexMatrix) {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_fn(3, |i, j| if i.abs_diff(j) == 1 { re(r) } else { re(0.0) });
        (h, ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 1.0]))
    }

    #[test]
    fn full_space_projector() {
        let (h, _) = three_level();
        let id = ComplexMatrix::identity(3);
        assert_eq!(quasi_zeno_hamiltonian(&h, &id, 1).unwrap(), h);
        assert_eq!(quasi_zeno_hamiltonian(&h, &id, 2).unwrap(), ComplexMatrix::zeros(3));
    }

    #[test]
    fn three_level_self_energy() {
        let (h, p) = three_level();
        let h1 = quasi_zeno_hamiltonian(&h, &p, 1).unwrap();
        assert!(h1.norm_max() < 1e-15);
        let h2 = quasi_zeno_hamiltonian(&h, &p, 2).unwrap();
        let want = ComplexMatrix::from_fn(3, |i, j| if i != 1 && j != 1 { re(0.5) } else { re(0.0) });
        assert!(h2.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn zero_timestep_gives_zeno_hamiltonian() {
        let h = ComplexMatrix::from_fn(4, |i, j| C64::new((i + j) as f64, i as f64 - j as f64));
        let p = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 0.0, 0.0]);
        for order in 1..=MAX_ORDER {
            let stack = effective_hamiltonian(&h, &p, 0.0, order).unwrap();
            assert_eq!(stack.h_eff(), stack.h_z(1));
        }
    }

    #[test]
    fn three_level_effective_is_damping() {
        let (h, p) = three_level();
        let dt = 1e-2;
        let stack = effective_hamiltonian(&h, &p, dt, 2).unwrap();
        let want = stack.h_z(2).scale(C64::new(0.0, -dt / 2.0));
        assert!(stack.h_eff().max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn terms_alternate_hermiticity() {
        let h = ComplexMatrix::from_fn(5, |i, j| {
            let (a, b) = (i.min(j) as f64, i.max(j) as f64);
            let im = if i < j {
                0.3 * b
            } else if i > j {
                -0.3 * b
            } else {
                0.0
            };
            C64::new(1.0 / (1.0 + a + b), im)
        });
        let p = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 1.0, 0.0, 0.0]);
        let stack = effective_hamiltonian(&h, &p, 0.1, 5).unwrap();
        for k in 1..=5 {
            let t = stack.term(k);
            let err = if k % 2 == 1 { t.hermiticity_error() } else { t.anti_hermiticity_error() };
            assert!(err < 1e-12, "term {k}: {err}");
        }
        let min = hermitian_eig(&stack.h_z(2).hermitian_part()).unwrap().eigenvalues[0];
        assert!(min > -1e-12);
    }

    #[test]
    fn coefficients() {
        assert_eq!(term_coefficient(1, 0.3), re(1.0));
        assert!((term_coefficient(2, 0.3) - C64::new(0.0, -0.15)).norm() < 1e-16);
        assert!((term_coefficient(3, 0.3) - re(-0.09 / 6.0)).norm() < 1e-16);
    }

    #[test]
    fn invalid_inputs() {
        let (h, p) = three_level();
        assert!(matches!(effective_hamiltonian(&h, &p, 0.1, 0), Err(Error::InvalidOrder { .. })));
        assert!(matches!(effective_hamiltonian(&h, &p, 0.1, 7), Err(Error::InvalidOrder { .. })));
        assert!(effective_hamiltonian(&h, &p, -0.1, 2).is_err());
        let bad = ComplexMatrix::from_real_diagonal(&[1.0, 0.5, 0.0]);
        assert!(matches!(quasi_zeno_hamiltonian(&h, &bad, 1), Err(Error::NotProjector { .. })));
        assert!(matches!(
            quasi_zeno_hamiltonian(&h, &ComplexMatrix::identity(2), 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
