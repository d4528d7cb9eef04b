//! The tangent space `T^{1,−}`: solve the linear obstruction equations
//! weight block by weight block.

use std::collections::BTreeMap;

use super::engine::RhoEngine;
use crate::canonical_ideal::CoeffId;
use crate::exact_poly::{Field, Matrix, Rational};

/// One weight block of the linear system `ρ^(1) = 0`.
#[derive(Debug, Clone)]
pub struct WeightBlock {
    pub weight: u32,
    /// Equation indices of this weight.
    pub equations: Vec<usize>,
    /// Coefficient indices of this weight, in column order.
    pub columns: Vec<usize>,
    /// Pivot column per pivot row.
    pub pivots: Vec<usize>,
    /// Row transform `M` with `M · A` in reduced echelon form; rows past the
    /// rank span the left kernel of `A`.
    pub transform: Matrix<Rational>,
    /// `A` in reduced echelon form.
    pub reduced: Matrix<Rational>,
}

impl WeightBlock {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Surviving coefficients after solving `ρ^(1) = 0`.
#[derive(Debug, Clone)]
pub struct T1Minus {
    /// Coefficient indices of the free variables `t_0, …, t_r`.
    pub free: Vec<usize>,
    pub weights: Vec<u32>,
    /// Eliminated coefficient ↦ `Σ a_f t_f` over positions in `free`.
    pub eliminated: BTreeMap<usize, Vec<(usize, Rational)>>,
    pub blocks: Vec<WeightBlock>,
    pub names: Vec<CoeffId>,
}

impl T1Minus {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// `weight ↦ dim T¹_{−weight}`.
    pub fn histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &w in &self.weights {
            *h.entry(w).or_insert(0) += 1;
        }
        h
    }
}

/// Column order inside a weight block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotPreference {
    /// Eliminate the coefficient with the largest `(s, i, n)` first.
    #[default]
    LargestFirst,
    SmallestFirst,
}

pub fn t1_minus(engine: &RhoEngine) -> T1Minus {
    t1_minus_with(engine, PivotPreference::LargestFirst)
}

pub fn t1_minus_with(engine: &RhoEngine, pref: PivotPreference) -> T1Minus {
    let coeffs = engine.coefficients();
    let rows = engine.linear_part();
    let mut eqs_by_w: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, e) in engine.equations().iter().enumerate() {
        eqs_by_w.entry(engine.equation_weight(e)).or_default().push(k);
    }
    let mut cols_by_w: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, c) in coeffs.iter().enumerate() {
        cols_by_w.entry(c.weight()).or_default().push(k);
    }
    let mut weights_all: Vec<u32> = eqs_by_w.keys().chain(cols_by_w.keys()).copied().collect();
    weights_all.sort_unstable();
    weights_all.dedup();

    let mut blocks = Vec::new();
    let mut free = Vec::new();
    let mut pivot_rows: Vec<(usize, usize, usize)> = Vec::new(); // (block, row, coefficient)
    for w in weights_all {
        let equations = eqs_by_w.remove(&w).unwrap_or_default();
        let mut columns = cols_by_w.remove(&w).unwrap_or_default();
        if pref == PivotPreference::LargestFirst {
            columns.sort_by(|a, b| coeffs[*b].cmp(&coeffs[*a]));
        }
        let pos: BTreeMap<usize, usize> = columns.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let mut a = Matrix::<Rational>::zeros(equations.len(), columns.len());
        for (i, &e) in equations.iter().enumerate() {
            for (&c, &v) in &rows[e] {
                a.set(i, pos[&c], Rational::from_i64(v));
            }
        }
        let mut aug = a.hstack(&Matrix::identity(equations.len()));
        let piv = aug.rref_limited(columns.len());
        let ncols = columns.len();
        let split = |lo: usize, hi: usize| {
            Matrix::from_rows((0..aug.rows()).map(|i| aug.row(i)[lo..hi].to_vec()).collect(), hi - lo)
        };
        let reduced = split(0, ncols);
        let transform = split(ncols, ncols + equations.len());
        for (j, &c) in columns.iter().enumerate() {
            if !piv.contains(&j) {
                free.push(c);
            }
        }
        for (r, &j) in piv.iter().enumerate() {
            pivot_rows.push((blocks.len(), r, columns[j]));
        }
        blocks.push(WeightBlock { weight: w, equations, columns, pivots: piv, transform, reduced });
    }
    free.sort_unstable();
    let free_pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut eliminated = BTreeMap::new();
    for (b, r, c) in pivot_rows {
        let blk = &blocks[b];
        let expr: Vec<(usize, Rational)> = blk
            .columns
            .iter()
            .enumerate()
            .filter(|(j, _)| !blk.pivots.contains(j) && !blk.reduced.get(r, *j).is_zero())
            .map(|(j, &f)| (free_pos[&f], blk.reduced.get(r, j).negated()))
            .collect();
        eliminated.insert(c, expr);
    }
    let weights = free.iter().map(|&c| coeffs[c].weight()).collect();
    let names = free.iter().map(|&c| coeffs[c]).collect();
    T1Minus { free, weights, eliminated, blocks, names }
}
