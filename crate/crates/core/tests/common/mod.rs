//! Oracles built without the library's operator machinery.

#![allow(dead_code)]

use quasizeno::hilbert::Basis;
use quasizeno::{ComplexMatrix, C64};

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Clone, Copy)]
pub enum Op {
    /// b†_i or S⁺_i
    Up(usize),
    /// b_i or S⁻_i
    Down(usize),
}

/// Applies a product of bosonic ladder operators (rightmost first) to an
/// occupation list, returning the new list and amplitude.
fn apply_bosons(values: &[i32], ops: &[Op]) -> Option<(Vec<i32>, f64)> {
    let mut n = values.to_vec();
    let mut amp = 1.0;
    for op in ops.iter().rev() {
        match *op {
            Op::Up(s) => {
                n[s] += 1;
                amp *= f64::from(n[s]).sqrt();
            }
            Op::Down(s) => {
                if n[s] == 0 {
                    return None;
                }
                amp *= f64::from(n[s]).sqrt();
                n[s] -= 1;
            }
        }
    }
    Some((n, amp))
}

/// Applies spin-1/2 ladder operators to a label of ±1 entries.
fn apply_spins(values: &[i32], ops: &[Op]) -> Option<(Vec<i32>, f64)> {
    let mut m = values.to_vec();
    for op in ops.iter().rev() {
        match *op {
            Op::Up(s) if m[s] == -1 => m[s] = 1,
            Op::Down(s) if m[s] == 1 => m[s] = -1,
            _ => return None,
        }
    }
    Some((m, 1.0))
}

fn assemble(basis: &Basis, terms: &[(f64, Vec<Op>)], bosonic: bool) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(basis.dim());
    for (col, label) in basis.labels().iter().enumerate() {
        for (coef, ops) in terms {
            let hit = if bosonic { apply_bosons(label.values(), ops) } else { apply_spins(label.values(), ops) };
            if let Some((values, amp)) = hit {
                if let Some(row) = basis.index_of_values(&values) {
                    out[(row, col)] += re(coef * amp);
                }
            }
        }
    }
    out
}

pub fn boson_terms(basis: &Basis, terms: &[(f64, Vec<Op>)]) -> ComplexMatrix {
    assemble(basis, terms, true)
}

pub fn spin_terms(basis: &Basis, terms: &[(f64, Vec<Op>)]) -> ComplexMatrix {
    assemble(basis, terms, false)
}

/// Diagonal operator from a function of the label.
pub fn diagonal(basis: &Basis, f: impl Fn(&[i32]) -> f64) -> ComplexMatrix {
    let d: Vec<f64> = basis.labels().iter().map(|l| f(l.values())).collect();
    ComplexMatrix::from_real_diagonal(&d)
}

pub fn sandwich(p: &ComplexMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    &(p * m) * p
}

/// Deterministic xorshift stream for hand-rolled random inputs.
pub struct Stream(u64);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }

    pub fn uniform(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    pub fn hermitian(&mut self, dim: usize, scale: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = re(scale * self.uniform());
            for j in i + 1..dim {
                let z = C64::new(self.uniform(), self.uniform()) * scale;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }
}
