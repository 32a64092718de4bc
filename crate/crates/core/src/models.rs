//! Hamiltonians and measured observables for the three model families: a
//! spin-1 in a transverse field, the XX spin chain and the Bose-Hubbard lattice.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    fock_basis, spin1_basis, spin_chain_basis, Basis, BasisKind, FockSector, Ladder, LinearConstraint, SiteOperatorSet,
};
use crate::numkernel::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// H = λ S^X on a single spin-1.
    Spin1Transverse,
    /// H = −J Σ_<ij> S⁺_i S⁻_j (+ optional fields and Z-Z coupling).
    XxChain,
    /// H = −J Σ_<ij> b†_i b_j + U Σ_i b†_i b†_i b_i b_i.
    BoseHubbard,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub j: f64,
    #[serde(default)]
    pub u: f64,
    #[serde(default = "one")]
    pub sites: usize,
    #[serde(default)]
    pub total_particles: usize,
    /// Nearest-neighbour bonds. Defaults to an open chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    /// Uniform bias (λ_x, λ_y, λ_z) on every spin of an XX chain.
    #[serde(default)]
    pub field: [f64; 3],
    /// Z-Z coupling J̃ S^z_i S^z_j on every bond of an XX chain.
    #[serde(default)]
    pub jz: f64,
    /// Restricts a Bose-Hubbard basis to one sector of a linear occupation constraint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_constraint: Option<LinearConstraint>,
}

impl ModelSpec {
    fn base(kind: ModelKind, sites: usize) -> Self {
        Self {
            kind,
            lambda: 0.0,
            j: 0.0,
            u: 0.0,
            sites,
            total_particles: 0,
            edges: None,
            field: [0.0; 3],
            jz: 0.0,
            basis_constraint: None,
        }
    }

    pub fn spin1_transverse(lambda: f64) -> Self {
        Self { lambda, ..Self::base(ModelKind::Spin1Transverse, 1) }
    }

    pub fn xx_chain(sites: usize, j: f64) -> Self {
        Self { j, ..Self::base(ModelKind::XxChain, sites) }
    }

    pub fn bose_hubbard(sites: usize, total_particles: usize, j: f64, u: f64) -> Self {
        Self { j, u, total_particles, ..Self::base(ModelKind::BoseHubbard, sites) }
    }

    pub fn validate(&self) -> Result<()> {
        let params = [self.lambda, self.j, self.u, self.jz, self.field[0], self.field[1], self.field[2]];
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("model parameters must be finite".into()));
        }
        if self.sites == 0 {
            return Err(Error::InvalidArgument("model needs at least one site".into()));
        }
        if self.kind == ModelKind::Spin1Transverse && self.sites != 1 {
            return Err(Error::Mismatch("a transverse-field spin-1 has exactly one site".into()));
        }
        for &[a, b] in self.edges.iter().flatten() {
            if a >= self.sites || b >= self.sites || a == b {
                return Err(Error::InvalidArgument(format!("edge ({a}, {b}) invalid for {} sites", self.sites)));
            }
        }
        Ok(())
    }

    pub fn geometry(&self) -> Vec<[usize; 2]> {
        match &self.edges {
            Some(e) => e.clone(),
            None => (1..self.sites).map(|i| [i - 1, i]).collect(),
        }
    }

    /// The natural basis for this model.
    pub fn build_basis(&self) -> Result<Basis> {
        self.validate()?;
        match self.kind {
            ModelKind::Spin1Transverse => Ok(spin1_basis()),
            ModelKind::XxChain => spin_chain_basis(self.sites),
            ModelKind::BoseHubbard => fock_basis(self.sites, self.total_particles, self.basis_constraint.as_ref()),
        }
    }

    fn check_basis(&self, basis: &Basis) -> Result<()> {
        let ok = match (self.kind, basis.kind()) {
            (ModelKind::Spin1Transverse, BasisKind::Spin1Single) => true,
            (ModelKind::XxChain, BasisKind::SpinHalfChain) => basis.sites() == self.sites,
            (ModelKind::BoseHubbard, BasisKind::BosonFock(sector)) => {
                basis.sites() == self.sites
                    && match sector {
                        FockSector::Fixed(n) => n == self.total_particles,
                        FockSector::AtMost(_) => true,
                    }
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "{:?} model with {} sites cannot act on a {:?} basis of {} sites",
                self.kind,
                self.sites,
                basis.kind(),
                basis.sites()
            )))
        }
    }
}

/// Assembles the model Hamiltonian on the basis carried by `ops`.
pub fn build_hamiltonian(spec: &ModelSpec, ops: &SiteOperatorSet) -> Result<ComplexMatrix> {
    spec.validate()?;
    spec.check_basis(ops.basis())?;
    let dim = ops.basis().dim();
    let mut h = ComplexMatrix::zeros(dim);
    match spec.kind {
        ModelKind::Spin1Transverse => {
            h += &ops.sx(0)?.scale_real(spec.lambda);
        }
        ModelKind::XxChain => {
            for [a, b] in spec.geometry() {
                if spec.j != 0.0 {
                    let exchange = &ops.hopping(a, b)? + &ops.hopping(b, a)?;
                    h += &exchange.scale_real(-spec.j);
                }
                if spec.jz != 0.0 {
                    h += &(ops.sz(a)? * ops.sz(b)?).scale_real(spec.jz);
                }
            }
            let [fx, fy, fz] = spec.field;
            for s in 0..spec.sites {
                if fx != 0.0 {
                    h += &ops.sx(s)?.scale_real(fx);
                }
                if fy != 0.0 {
                    h += &ops.sy(s)?.scale_real(fy);
                }
                if fz != 0.0 {
                    h += &ops.sz(s)?.scale_real(fz);
                }
            }
        }
        ModelKind::BoseHubbard => {
            if spec.j != 0.0 {
                for [a, b] in spec.geometry() {
                    let hop = &ops.hopping(a, b)? + &ops.hopping(b, a)?;
                    h += &hop.scale_real(-spec.j);
                }
            }
            if spec.u != 0.0 {
                for s in 0..spec.sites {
                    let onsite =
                        ops.operator_string(&[Ladder::Raise(s), Ladder::Raise(s), Ladder::Lower(s), Ladder::Lower(s)])?;
                    h += &onsite.scale_real(spec.u);
                }
            }
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservableKind {
    /// Σ_{i∈A} n_i
    RegionOccupation,
    /// N_A − N_C, or any signed linear combination of occupations.
    RegionOccupationDifference,
    /// Σ_{i∈A} S^z_i
    RegionMagnetization,
    /// |S^z| of a spin (or |Σ w_i S^z_i| on a chain).
    AbsSz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub sites: Vec<usize>,
    #[serde(default = "unit_weight")]
    pub weight: f64,
}

fn unit_weight() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    pub kind: ObservableKind,
    /// May be omitted for `abs-sz`, which then covers every site.
    #[serde(default)]
    pub regions: Vec<Region>,
}

impl ObservableSpec {
    pub fn region_occupation(sites: &[usize]) -> Self {
        Self { kind: ObservableKind::RegionOccupation, regions: vec![Region { sites: sites.to_vec(), weight: 1.0 }] }
    }

    /// N_A − N_C for a positively and a negatively weighted region.
    pub fn occupation_difference(plus: &[usize], minus: &[usize]) -> Self {
        Self {
            kind: ObservableKind::RegionOccupationDifference,
            regions: vec![Region { sites: plus.to_vec(), weight: 1.0 }, Region { sites: minus.to_vec(), weight: -1.0 }],
        }
    }

    pub fn region_magnetization(sites: &[usize]) -> Self {
        Self { kind: ObservableKind::RegionMagnetization, regions: vec![Region { sites: sites.to_vec(), weight: 1.0 }] }
    }

    pub fn abs_sz() -> Self {
        Self { kind: ObservableKind::AbsSz, regions: vec![Region { sites: vec![0], weight: 1.0 }] }
    }

    /// Per-site weights, summing overlapping regions.
    pub fn site_weights(&self, sites: usize) -> Result<Vec<f64>> {
        if self.regions.is_empty() && self.kind == ObservableKind::AbsSz {
            return Ok(vec![1.0; sites]);
        }
        let mut w = vec![0.0; sites];
        for region in &self.regions {
            if !region.weight.is_finite() {
                return Err(Error::InvalidArgument("observable weights must be finite".into()));
            }
            for &s in &region.sites {
                if s >= sites {
                    return Err(Error::InvalidArgument(format!("observable site {s} out of range for {sites} sites")));
                }
                w[s] += region.weight;
            }
        }
        if w.iter().all(|&x| x == 0.0) {
            return Err(Error::InvalidArgument("observable needs a nonzero weight".into()));
        }
        Ok(w)
    }

    /// Sites carrying a nonzero weight.
    pub fn measured_sites(&self, sites: usize) -> Result<Vec<usize>> {
        Ok(self.site_weights(sites)?.iter().enumerate().filter(|(_, &w)| w != 0.0).map(|(s, _)| s).collect())
    }
}

/// Builds the measured observable; the result is diagonal in the basis of `ops`.
pub fn build_observable(spec: &ObservableSpec, ops: &SiteOperatorSet) -> Result<ComplexMatrix> {
    let weights = spec.site_weights(ops.sites())?;
    let bosonic = ops.is_bosonic();
    let occupation_kind =
        matches!(spec.kind, ObservableKind::RegionOccupation | ObservableKind::RegionOccupationDifference);
    if occupation_kind != bosonic {
        return Err(Error::Mismatch(format!(
            "{:?} observable does not apply to a {:?} basis",
            spec.kind,
            ops.basis().kind()
        )));
    }
    let dim = ops.basis().dim();
    let mut a = ComplexMatrix::zeros(dim);
    for (s, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let site_op = if bosonic { ops.number(s)? } else { ops.sz(s)? };
        a += &site_op.scale_real(w);
    }
    if spec.kind == ObservableKind::AbsSz {
        for k in 0..dim {
            a[(k, k)] = C64::new(a[(k, k)].re.abs(), 0.0);
        }
    }
    Ok(a)
}
