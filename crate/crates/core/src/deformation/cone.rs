//! The quasi-cones over `T^{1,−}`: the quadratic cone `Q` cut out by the
//! quadratic parts `h^(2)`, and the full quasi-cone cut out by the `h`.

use std::collections::BTreeMap;

use super::engine::RhoEngine;
use super::t1::T1Minus;
use super::DeformationError;
use crate::exact_poly::{Field, Monomial, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    /// Generated by the quadratic parts `h^(2)`.
    Quadratic,
    /// Generated by the full reduced equations `h`.
    Full,
}

/// Quasi-homogeneous generators in the `T^{1,−}` coordinates `t_0, …, t_r`.
#[derive(Debug, Clone)]
pub struct ConeIdeal<F: Field> {
    /// `(name, weight)` of each coordinate.
    pub variables: Vec<(String, u32)>,
    pub generators: Vec<Poly<F>>,
    pub kind: ConeKind,
}

impl<F: Field> ConeIdeal<F> {
    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.variables.iter().map(|v| v.1).collect()
    }

    /// Variables that occur in no generator.
    pub fn unused_variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.variables.len()];
        for g in &self.generators {
            for v in g.variables() {
                used[v as usize] = true;
            }
        }
        (0..used.len()).filter(|&k| !used[k]).collect()
    }
}

fn variables(t1: &T1Minus) -> Vec<(String, u32)> {
    t1.names.iter().zip(&t1.weights).map(|(c, &w)| (c.to_string(), w)).collect()
}

/// The linear solution of `ρ^(1) = 0`: free coefficients become `t_k`,
/// eliminated ones their linear expression, normalized ones are absent.
pub fn linear_solution<F: Field>(engine: &RhoEngine, t1: &T1Minus) -> Vec<Poly<F>> {
    let free_pos: BTreeMap<usize, usize> = t1.free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    (0..engine.coefficients().len())
        .map(|c| {
            if let Some(&k) = free_pos.get(&c) {
                Poly::var(k as u32)
            } else {
                let mut p = Poly::zero();
                for (f, a) in &t1.eliminated[&c] {
                    p.add_term(Monomial::var(*f as u32), F::from_rational(a).expect("denominator invertible"));
                }
                p
            }
        })
        .collect()
}

fn combine<F: Field>(row: &[crate::exact_poly::Rational], equations: &[usize], values: &[Poly<F>]) -> Poly<F> {
    let mut h = Poly::zero();
    for (y, &e) in row.iter().zip(equations) {
        if !y.is_zero() {
            h.add_scaled(&F::from_rational(y).expect("denominator invertible"), &Monomial::one(), &values[e]);
        }
    }
    h
}

/// `h^(2) = Σ y ρ^(2)` at the linear solution, over the left kernel `y` of each block.
pub fn quadratic_cone<F: Field>(engine: &RhoEngine, t1: &T1Minus) -> Result<ConeIdeal<F>, DeformationError> {
    let psi = linear_solution::<F>(engine, t1);
    let steps = engine.run(&psi, Some(2))?;
    let zero = vec![Poly::zero(); engine.equations().len()];
    let rho2 = steps.get(1).unwrap_or(&zero);
    let mut generators = Vec::new();
    for blk in &t1.blocks {
        for r in blk.rank()..blk.equations.len() {
            let h = combine(blk.transform.row(r), &blk.equations, rho2);
            if !h.is_zero() {
                generators.push(h);
            }
        }
    }
    Ok(ConeIdeal { variables: variables(t1), generators, kind: ConeKind::Quadratic })
}

/// Eliminates the pivot coefficients with their full (nonlinear) solutions
/// and returns the remaining equations `h`, which have no linear part.
///
/// Each eliminated coefficient of weight `w` is determined by the nonlinear
/// terms of the weight-`w` equations, which involve only coefficients of
/// smaller weight; iterating the substitution therefore stabilizes after at
/// most as many rounds as there are weights.
pub fn reduce_ideal<F: Field>(engine: &RhoEngine, t1: &T1Minus) -> Result<ConeIdeal<F>, DeformationError> {
    let linear = linear_solution::<F>(engine, t1);
    let mut psi = linear.clone();
    let max_rounds = t1.blocks.len() + 2;
    for _ in 0..max_rounds {
        let steps = engine.run(&psi, None)?;
        let mut nonlinear = vec![Poly::<F>::zero(); engine.equations().len()];
        for step in steps.iter().skip(1) {
            for (e, p) in step.iter().enumerate() {
                nonlinear[e].add_assign(p);
            }
        }
        let mut next = linear.clone();
        for blk in &t1.blocks {
            for (r, &j) in blk.pivots.iter().enumerate() {
                let c = blk.columns[j];
                let corr = combine(blk.transform.row(r), &blk.equations, &nonlinear);
                next[c] = linear[c].minus(&corr);
            }
        }
        if next == psi {
            let mut generators = Vec::new();
            for blk in &t1.blocks {
                for r in blk.rank()..blk.equations.len() {
                    let h = combine(blk.transform.row(r), &blk.equations, &nonlinear);
                    if !h.is_zero() {
                        generators.push(h);
                    }
                }
            }
            return Ok(ConeIdeal { variables: variables(t1), generators, kind: ConeKind::Full });
        }
        psi = next;
    }
    Err(DeformationError::SubstitutionCycle { rounds: max_rounds })
}
