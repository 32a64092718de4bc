//! Basis enumeration for lattice bosons and spins, and site-local operators
//! expressed as dense matrices over those bases.
//!
//! Labels are integer vectors: occupation numbers per site for bosons, `2·S^z`
//! per site (`+1` up, `−1` down) for spin-1/2 chains, and `[m]` for a single
//! spin-1. Sites are indexed from zero.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

pub const DEFAULT_SPIN_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockSector {
    /// Exactly this many particles.
    Fixed(usize),
    /// Any particle number up to and including this bound.
    AtMost(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    BosonFock(FockSector),
    SpinHalfChain,
    Spin1Single,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Vec<i32>);

impl Label {
    pub fn new(values: Vec<i32>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        write!(f, "|{}>", parts.join(","))
    }
}

/// Restricts a Fock basis to occupations with Σ_i w_i n_i = target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub weights: Vec<i64>,
    pub target: i64,
}

impl LinearConstraint {
    pub fn accepts(&self, occupations: &[i32]) -> bool {
        let value: i64 = self.weights.iter().zip(occupations).map(|(w, &n)| w * i64::from(n)).sum();
        value == self.target
    }
}

#[derive(Debug, Clone)]
pub struct Basis {
    kind: BasisKind,
    sites: usize,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.sites == other.sites && self.labels == other.labels
    }
}

impl Basis {
    fn from_labels(kind: BasisKind, sites: usize, labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyBasis);
        }
        let index: HashMap<Label, usize> = labels.iter().cloned().enumerate().map(|(k, l)| (l, k)).collect();
        if index.len() != labels.len() {
            return Err(Error::InvalidArgument("duplicate basis labels".into()));
        }
        Ok(Self { kind, sites, labels, index })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.labels[k]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn index_of_values(&self, values: &[i32]) -> Option<usize> {
        self.index.get(&Label(values.to_vec())).copied()
    }

    /// Real diagonal of Σ_i w_i x_i where x_i is the per-site label value
    /// (occupation, or S^z for spins).
    pub fn weighted_site_values(&self, weights: &[f64]) -> Vec<f64> {
        let scale = self.site_value_scale();
        self.labels.iter().map(|l| l.0.iter().zip(weights).map(|(&x, w)| w * f64::from(x) * scale).sum()).collect()
    }

    fn site_value_scale(&self) -> f64 {
        match self.kind {
            BasisKind::SpinHalfChain => 0.5,
            _ => 1.0,
        }
    }
}

pub fn generic_basis(dim: usize) -> Result<Basis> {
    let labels = (0..dim).map(|k| Label(vec![k as i32])).collect();
    Basis::from_labels(BasisKind::Generic, 1, labels)
}

/// Occupation vectors of `sites` modes holding exactly `total_particles`,
/// optionally filtered by a linear constraint, in descending lexicographic order.
pub fn fock_basis(sites: usize, total_particles: usize, constraint: Option<&LinearConstraint>) -> Result<Basis> {
    if sites == 0 {
        return Err(Error::InvalidArgument("a lattice needs at least one site".into()));
    }
    if let Some(c) = constraint {
        if c.weights.len() != sites {
            return Err(Error::DimensionMismatch { expected: sites, found: c.weights.len() });
        }
    }
    let mut labels = Vec::new();
    let mut current = vec![0i32; sites];
    enumerate_fixed(&mut current, 0, total_particles as i32, &mut labels);
    if let Some(c) = constraint {
        labels.retain(|l: &Label| c.accepts(&l.0));
    }
    Basis::from_labels(BasisKind::BosonFock(FockSector::Fixed(total_particles)), sites, labels)
}

/// All occupation vectors with at most `max_particles` in total. Ladder
/// operators are closed on this basis except at the truncation boundary.
pub fn fock_basis_truncated(sites: usize, max_particles: usize) -> Result<Basis> {
    if sites == 0 {
        return Err(Error::InvalidArgument("a lattice needs at least one site".into()));
    }
    let mut labels = Vec::new();
    let mut current = vec![0i32; sites];
    enumerate_at_most(&mut current, 0, max_particles as i32, &mut labels);
    Basis::from_labels(BasisKind::BosonFock(FockSector::AtMost(max_particles)), sites, labels)
}

fn enumerate_fixed(current: &mut Vec<i32>, site: usize, remaining: i32, out: &mut Vec<Label>) {
    if site + 1 == current.len() {
        current[site] = remaining;
        out.push(Label(current.clone()));
        return;
    }
    for n in (0..=remaining).rev() {
        current[site] = n;
        enumerate_fixed(current, site + 1, remaining - n, out);
    }
}

fn enumerate_at_most(current: &mut Vec<i32>, site: usize, budget: i32, out: &mut Vec<Label>) {
    if site == current.len() {
        out.push(Label(current.clone()));
        return;
    }
    for n in (0..=budget).rev() {
        current[site] = n;
        enumerate_at_most(current, site + 1, budget - n, out);
    }
    current[site] = 0;
}

pub fn spin_chain_basis(sites: usize) -> Result<Basis> {
    spin_chain_basis_with_cap(sites, DEFAULT_SPIN_CAP)
}

/// All 2^sites spin-1/2 configurations, all-up first.
pub fn spin_chain_basis_with_cap(sites: usize, cap: usize) -> Result<Basis> {
    if sites == 0 {
        return Err(Error::InvalidArgument("a chain needs at least one site".into()));
    }
    if sites > cap {
        return Err(Error::TooLarge { sites, cap });
    }
    let labels = (0..1usize << sites)
        .map(|k| Label((0..sites).map(|s| if (k >> (sites - 1 - s)) & 1 == 0 { 1 } else { -1 }).collect()))
        .collect();
    Basis::from_labels(BasisKind::SpinHalfChain, sites, labels)
}

/// Single spin-1 in the order |−1>, |0>, |1>.
pub fn spin1_basis() -> Basis {
    let labels = vec![Label(vec![-1]), Label(vec![0]), Label(vec![1])];
    Basis::from_labels(BasisKind::Spin1Single, 1, labels).expect("three distinct labels")
}

/// A single raising or lowering operator on one site: b†/b for bosons,
/// S⁺/S⁻ for spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise(usize),
    Lower(usize),
}

#[derive(Debug, Clone)]
enum SiteOps {
    Bosonic {
        annihilation: Option<Vec<ComplexMatrix>>,
        creation: Option<Vec<ComplexMatrix>>,
        number: Vec<ComplexMatrix>,
    },
    Spin {
        raising: Vec<ComplexMatrix>,
        lowering: Vec<ComplexMatrix>,
        sz: Vec<ComplexMatrix>,
    },
}

/// Per-site operators over one basis.
#[derive(Debug, Clone)]
pub struct SiteOperatorSet {
    basis: Basis,
    ops: SiteOps,
}

impl SiteOperatorSet {
    pub fn build(basis: &Basis) -> Result<Self> {
        build_site_operators(basis)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn sites(&self) -> usize {
        self.basis.sites
    }

    pub fn is_bosonic(&self) -> bool {
        matches!(self.ops, SiteOps::Bosonic { .. })
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.basis.sites {
            return Err(Error::InvalidArgument(format!("site {site} out of range for {} sites", self.basis.sites)));
        }
        Ok(())
    }

    pub fn number(&self, site: usize) -> Result<&ComplexMatrix> {
        self.check_site(site)?;
        match &self.ops {
            SiteOps::Bosonic { number, .. } => Ok(&number[site]),
            SiteOps::Spin { .. } => Err(Error::Unsupported("number operator on a spin basis".into())),
        }
    }

    /// b_i. Only available when the basis admits a particle-number change.
    pub fn annihilation(&self, site: usize) -> Result<&ComplexMatrix> {
        self.check_site(site)?;
        match &self.ops {
            SiteOps::Bosonic { annihilation: Some(a), .. } => Ok(&a[site]),
            SiteOps::Bosonic { annihilation: None, .. } => {
                Err(Error::Unsupported("b_i does not act within a fixed-particle-number basis".into()))
            }
            SiteOps::Spin { .. } => Err(Error::Unsupported("b_i on a spin basis".into())),
        }
    }

    pub fn creation(&self, site: usize) -> Result<&ComplexMatrix> {
        self.check_site(site)?;
        match &self.ops {
            SiteOps::Bosonic { creation: Some(c), .. } => Ok(&c[site]),
            SiteOps::Bosonic { creation: None, .. } => {
                Err(Error::Unsupported("b†_i does not act within a fixed-particle-number basis".into()))
            }
            SiteOps::Spin { .. } => Err(Error::Unsupported("b†_i on a spin basis".into())),
        }
    }

    pub fn raising(&self, site: usize) -> Result<&ComplexMatrix> {
        self.check_site(site)?;
        match &self.ops {
            SiteOps::Spin { raising, .. } => Ok(&raising[site]),
            SiteOps::Bosonic { .. } => Err(Error::Unsupported("S+ on a bosonic basis".into())),
        }
    }

    pub fn lowering(&self, site: usize) -> Result<&ComplexMatrix> {
        self.check_site(site)?;
        match &self.ops {
            SiteOps::Spin { lowering, .. } => Ok(&lowering[site]),
            SiteOps::Bosonic { .. } => Err(Error::Unsupported("S- on a bosonic basis".into())),
        }
    }

    pub fn sz(&self, site: usize) -> Result<&ComplexMatrix> {
        self.check_site(site)?;
        match &self.ops {
            SiteOps::Spin { sz, .. } => Ok(&sz[site]),
            SiteOps::Bosonic { .. } => Err(Error::Unsupported("S^z on a bosonic basis".into())),
        }
    }

    /// S^x = (S⁺ + S⁻)/2
    pub fn sx(&self, site: usize) -> Result<ComplexMatrix> {
        Ok((self.raising(site)? + self.lowering(site)?).scale_real(0.5))
    }

    /// S^y = (S⁺ − S⁻)/(2i)
    pub fn sy(&self, site: usize) -> Result<ComplexMatrix> {
        Ok((self.raising(site)? - self.lowering(site)?).scale(C64::new(0.0, -0.5)))
    }

    /// b†_i b_j (or S⁺_i S⁻_j), built label by label.
    pub fn hopping(&self, to: usize, from: usize) -> Result<ComplexMatrix> {
        self.operator_string(&[Ladder::Raise(to), Ladder::Lower(from)])
    }

    /// Matrix of a product of ladder operators written left to right as in
    /// operator notation; the rightmost factor acts first. Intermediate
    /// configurations may leave the basis, only the final one must be in it.
    pub fn operator_string(&self, factors: &[Ladder]) -> Result<ComplexMatrix> {
        for f in factors {
            let (Ladder::Raise(s) | Ladder::Lower(s)) = *f;
            self.check_site(s)?;
        }
        let basis = &self.basis;
        let mut m = ComplexMatrix::zeros(basis.dim());
        for (col, label) in basis.labels.iter().enumerate() {
            let mut values = label.0.clone();
            let mut amp = 1.0;
            for f in factors.iter().rev() {
                match apply_ladder(basis.kind, &mut values, *f) {
                    Some(a) => amp *= a,
                    None => {
                        amp = 0.0;
                        break;
                    }
                }
            }
            if amp == 0.0 {
                continue;
            }
            if let Some(row) = basis.index_of_values(&values) {
                m[(row, col)] += C64::new(amp, 0.0);
            }
        }
        Ok(m)
    }
}

/// Applies one ladder operator to a label in place, returning its amplitude,
/// or `None` when the result vanishes.
fn apply_ladder(kind: BasisKind, values: &mut [i32], op: Ladder) -> Option<f64> {
    match (kind, op) {
        (BasisKind::BosonFock(_), Ladder::Lower(s)) => {
            let n = values[s];
            if n == 0 {
                return None;
            }
            values[s] = n - 1;
            Some(f64::from(n).sqrt())
        }
        (BasisKind::BosonFock(_), Ladder::Raise(s)) => {
            let n = values[s];
            values[s] = n + 1;
            Some(f64::from(n + 1).sqrt())
        }
        (BasisKind::SpinHalfChain, Ladder::Raise(s)) => {
            if values[s] == 1 {
                return None;
            }
            values[s] = 1;
            Some(1.0)
        }
        (BasisKind::SpinHalfChain, Ladder::Lower(s)) => {
            if values[s] == -1 {
                return None;
            }
            values[s] = -1;
            Some(1.0)
        }
        (BasisKind::Spin1Single, Ladder::Raise(s)) => {
            let m = values[s];
            if m == 1 {
                return None;
            }
            values[s] = m + 1;
            Some(f64::from(2 - m * (m + 1)).sqrt())
        }
        (BasisKind::Spin1Single, Ladder::Lower(s)) => {
            let m = values[s];
            if m == -1 {
                return None;
            }
            values[s] = m - 1;
            Some(f64::from(2 - m * (m - 1)).sqrt())
        }
        (BasisKind::Generic, _) => None,
    }
}

pub fn build_site_operators(basis: &Basis) -> Result<SiteOperatorSet> {
    let single = |kind_ops: &SiteOperatorSet, op: Ladder| kind_ops.operator_string(&[op]);
    let sites = basis.sites;
    match basis.kind {
        BasisKind::Generic => Err(Error::Unsupported("site operators need a structured basis".into())),
        BasisKind::BosonFock(sector) => {
            let number = (0..sites)
                .map(|s| {
                    let diag: Vec<f64> = basis.labels.iter().map(|l| f64::from(l.0[s])).collect();
                    ComplexMatrix::from_real_diagonal(&diag)
                })
                .collect();
            let mut set = SiteOperatorSet {
                basis: basis.clone(),
                ops: SiteOps::Bosonic { annihilation: None, creation: None, number },
            };
            if let FockSector::AtMost(_) = sector {
                let a: Vec<_> = (0..sites).map(|s| single(&set, Ladder::Lower(s))).collect::<Result<_>>()?;
                let c: Vec<_> = (0..sites).map(|s| single(&set, Ladder::Raise(s))).collect::<Result<_>>()?;
                if let SiteOps::Bosonic { annihilation, creation, .. } = &mut set.ops {
                    *annihilation = Some(a);
                    *creation = Some(c);
                }
            }
            Ok(set)
        }
        BasisKind::SpinHalfChain | BasisKind::Spin1Single => {
            let scale = if basis.kind == BasisKind::SpinHalfChain { 0.5 } else { 1.0 };
            let sz = (0..sites)
                .map(|s| {
                    let diag: Vec<f64> = basis.labels.iter().map(|l| f64::from(l.0[s]) * scale).collect();
                    ComplexMatrix::from_real_diagonal(&diag)
                })
                .collect();
            let mut set = SiteOperatorSet {
                basis: basis.clone(),
                ops: SiteOps::Spin { raising: Vec::new(), lowering: Vec::new(), sz },
            };
            let r: Vec<_> = (0..sites).map(|s| single(&set, Ladder::Raise(s))).collect::<Result<_>>()?;
            let l: Vec<_> = (0..sites).map(|s| single(&set, Ladder::Lower(s))).collect::<Result<_>>()?;
            if let SiteOps::Spin { raising, lowering, .. } = &mut set.ops {
                *raising = r;
                *lowering = l;
            }
            Ok(set)
        }
    }
}
