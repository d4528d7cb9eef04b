//! The multiplicity-six family `N_τ = <6, 6τ+2, 6τ+3, 6τ+4, 6τ+5>` of genus
//! `6τ + 1`: closed-form dimensions, the coefficient census of the affine
//! normal form, and the quadratic cone `Q ≅ V × W` packaged over the
//! artinian algebra `A = k[ε]/(ε^τ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::canonical_ideal::CanonicalIdeal;
use crate::deformation::{quadratic_cone, t1_minus, ConeIdeal, DeformationError, RhoEngine};
use crate::exact_poly::{Matrix, Monomial, Poly, Rational};
use crate::krull::{dim_certified, KrullError};
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("tau must be positive")]
    ZeroTau,
    #[error("{quantity}: generic pipeline gives {found}, closed form {expected}")]
    CrosscheckFailure { quantity: String, expected: String, found: String },
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Krull(#[from] KrullError),
}

pub fn family_semigroup(tau: u32) -> Semigroup {
    assert!(tau >= 1, "tau must be positive");
    let b = 6 * tau;
    Semigroup::new(&[6, b + 2, b + 3, b + 4, b + 5]).expect("coprime generators")
}

/// Element `Σ c_j ε^j` of `A = k[ε]/(ε^τ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinElement {
    coeffs: Vec<Rational>,
}

impl ArtinElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "A has positive dimension");
        ArtinElement { coeffs }
    }

    pub fn zero(tau: usize) -> Self {
        ArtinElement::new(vec![Rational::zero(); tau])
    }

    pub fn constant(tau: usize, c: Rational) -> Self {
        let mut a = ArtinElement::zero(tau);
        a.coeffs[0] = c;
        a
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        ArtinElement::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn tau(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Units of the local algebra are exactly the elements with `c_0 ≠ 0`.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![Rational::zero(); self.tau()];
        out[0] = inv0.clone();
        for k in 1..self.tau() {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -s * &inv0;
        }
        Some(ArtinElement::new(out))
    }
}

impl Add for &ArtinElement {
    type Output = ArtinElement;
    fn add(self, o: &ArtinElement) -> ArtinElement {
        assert_eq!(self.tau(), o.tau());
        ArtinElement::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ArtinElement {
    type Output = ArtinElement;
    fn sub(self, o: &ArtinElement) -> ArtinElement {
        assert_eq!(self.tau(), o.tau());
        ArtinElement::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ArtinElement {
    type Output = ArtinElement;
    fn neg(self) -> ArtinElement {
        ArtinElement::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

/// Convolution truncated at `ε^τ`.
impl Mul for &ArtinElement {
    type Output = ArtinElement;
    fn mul(self, o: &ArtinElement) -> ArtinElement {
        assert_eq!(self.tau(), o.tau());
        let t = self.tau();
        let mut out = vec![Rational::zero(); t];
        for (i, a) in self.coeffs.iter().enumerate().filter(|p| !p.1.is_zero()) {
            for (j, b) in o.coeffs[..t - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ArtinElement::new(out)
    }
}

impl fmt::Display for ArtinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().filter(|p| !p.1.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})e")?,
                _ => write!(f, "({c})e^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The five equations on `(ω_1, …, ω_10) ∈ A^10`, as `(sign, p, q)` for
/// `sign · ω_p ω_q` with 1-based indices.
pub const W_EQUATIONS: [[(i8, usize, usize); 3]; 5] = [
    [(1, 1, 9), (1, 5, 6), (-1, 2, 10)],
    [(1, 4, 10), (1, 3, 9), (-1, 6, 7)],
    [(1, 1, 4), (1, 2, 3), (1, 6, 8)],
    [(1, 8, 10), (1, 3, 5), (1, 1, 7)],
    [(1, 2, 7), (1, 8, 9), (-1, 4, 5)],
];

/// `η_i`: the weight of `w_{ij}` is `η_i + 6(τ − j)`.
pub const W_ETA: [i32; 10] = [1, 1, 2, 2, 3, 4, 4, -1, 6, 6];

/// Evaluates the five equations at `ω`.
pub fn w_equations(omega: &[ArtinElement; 10]) -> [ArtinElement; 5] {
    let tau = omega[0].tau();
    W_EQUATIONS.map(|eq| {
        let mut acc = ArtinElement::zero(tau);
        for (sign, p, q) in eq {
            let prod = &omega[p - 1] * &omega[q - 1];
            acc = if sign > 0 { &acc + &prod } else { &acc - &prod };
        }
        acc
    })
}

/// The scalar form of the five equations: `5τ` quadrics in the `10τ`
/// coordinates `w_{ij}`, variable `w_{ij}` having index `(i−1)τ + j`.
#[derive(Debug, Clone)]
pub struct WSystem {
    pub tau: u32,
    /// `(name, weight)` per coordinate.
    pub variables: Vec<(String, u32)>,
    pub generators: Vec<Poly<Rational>>,
}

impl WSystem {
    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.variables.iter().map(|v| v.1).collect()
    }

    pub fn var(&self, i: usize, j: usize) -> u32 {
        ((i - 1) * self.tau as usize + j) as u32
    }
}

pub fn w_weight(tau: u32, i: usize, j: usize) -> u32 {
    (W_ETA[i - 1] + 6 * (tau as i32 - j as i32)) as u32
}

pub fn w_scalar_equations(tau: u32) -> WSystem {
    assert!(tau >= 1, "tau must be positive");
    let t = tau as usize;
    let mut variables = Vec::with_capacity(10 * t);
    for i in 1..=10 {
        for j in 0..t {
            variables.push((format!("w[{i},{j}]"), w_weight(tau, i, j)));
        }
    }
    let var = |i: usize, j: usize| ((i - 1) * t + j) as u32;
    let mut generators = Vec::with_capacity(5 * t);
    for eq in W_EQUATIONS {
        for k in 0..t {
            let mut p = Poly::zero();
            for (sign, a, b) in eq {
                for j in 0..=k {
                    p.add_term(Monomial::product(&[var(a, j), var(b, k - j)]), Rational::from_integer(sign.into()));
                }
            }
            generators.push(p);
        }
    }
    WSystem { tau, variables, generators }
}

/// Closed-form dimensions for `N_τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyDims {
    pub dim_t1: u32,
    pub dim_q: u32,
    pub upper_bound: u32,
    pub deligne: u32,
}

pub fn family_dims(tau: u32) -> FamilyDims {
    FamilyDims { dim_t1: 11 * tau + 6, dim_q: 8 * tau + 6, upper_bound: 8 * tau + 5, deligne: 12 * tau + 1 }
}

/// `weight ↦ dim T¹_{−weight}` for `N_τ`.
pub fn graded_t1(tau: u32) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for i in 0..=tau {
        let w = |r: u32| r + 6 * i;
        let wide = if i == 0 { 1 } else { 2 };
        h.insert(w(1), wide);
        h.insert(w(2), wide);
        h.insert(w(3), 1);
        h.insert(w(4), 2);
        if i < tau {
            h.insert(w(5), 1);
        }
        h.insert(w(6), if i == 0 || i == tau { 2 } else { 3 });
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum PartialKind {
    G,
    F,
}

/// The partial polynomial collecting the terms `t^r`, `r ≡ j mod 6`, of `g_i` or `f_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Partial {
    pub kind: PartialKind,
    pub i: u32,
    pub j: u32,
    pub formal_degree: u32,
}

impl Partial {
    /// Exponents `r ≤ formal_degree` with `r ≡ j mod 6`, `r ≥ 1`.
    pub fn num_coefficients(&self) -> u32 {
        if self.formal_degree < self.j {
            0
        } else {
            (self.formal_degree - self.j) / 6 + 1
        }
    }
}

impl fmt::Display for Partial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            PartialKind::G => 'g',
            PartialKind::F => 'f',
        };
        write!(f, "{k}[{},{}]", self.i, self.j)
    }
}

const G_RESIDUES: [(u32, &[u32]); 5] =
    [(4, &[1, 2, 4, 5, 6]), (5, &[1, 2, 3, 5, 6]), (6, &[1, 2, 3, 4, 6]), (7, &[1, 2, 3, 4, 5]), (8, &[2, 3, 4, 5, 6])];
const F_RESIDUES: [(u32, &[u32]); 4] = [(6, &[1, 3, 4, 6]), (8, &[2, 4, 5, 6]), (9, &[1, 3, 6]), (10, &[1, 2, 4, 5, 6])];

/// Census of the affine normal form of `N_τ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyModel {
    pub tau: u32,
    pub genus: u32,
    pub partials: Vec<Partial>,
    pub v_weights: Vec<u32>,
    pub w_weights: Vec<u32>,
}

/// Coefficients `g_41, g_42, g_46` fixed by the normalization.
pub const NORMALIZED_COEFFICIENTS: usize = 3;

impl FamilyModel {
    pub fn new(tau: u32) -> Self {
        assert!(tau >= 1, "tau must be positive");
        let degree = |kind: PartialKind, i: u32, j: u32| match (kind, i, j) {
            _ if i == j || i == j + 6 => i + 12 * tau,
            (PartialKind::G, 4, 5 | 6) | (PartialKind::G, 5, 6) => j + 6 * (tau - 1),
            (PartialKind::F, 9, 1) | (PartialKind::F, 10, 1 | 2) => j + 6 * (tau + 1),
            _ => j + 6 * tau,
        };
        let mut partials = Vec::with_capacity(41);
        for (kind, table) in [(PartialKind::G, &G_RESIDUES[..]), (PartialKind::F, &F_RESIDUES[..])] {
            for &(i, js) in table {
                for &j in js {
                    partials.push(Partial { kind, i, j, formal_degree: degree(kind, i, j) });
                }
            }
        }
        let mut v_weights = vec![1, 2, 3, 4, 4, 6];
        v_weights.extend((1..=tau).map(|i| 6 * i));
        let w_weights = (1..=10).flat_map(|i| (0..tau as usize).map(move |j| w_weight(tau, i, j))).collect();
        FamilyModel { tau, genus: 6 * tau + 1, partials, v_weights, w_weights }
    }

    /// Coordinates of the affine quasi-cone: all coefficients of the partial
    /// polynomials less the normalized ones.
    pub fn num_coefficients(&self) -> usize {
        self.partials.iter().map(|p| p.num_coefficients() as usize).sum::<usize>() - NORMALIZED_COEFFICIENTS
    }

    /// `weight ↦ multiplicity` over `V × W`.
    pub fn product_weights(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &w in self.v_weights.iter().chain(&self.w_weights) {
            *h.entry(w).or_insert(0) += 1;
        }
        h
    }
}

/// Generic-pipeline values for `N_τ`, each already compared to its closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub tau: u32,
    pub dim_t1: usize,
    pub t1_weights: BTreeMap<u32, usize>,
    /// `None` when the cone was not computed.
    pub dim_q: Option<usize>,
    /// Weights of the directions the quadratic cone is constant along.
    pub constant_weights: Option<Vec<u32>>,
}

fn check<T: PartialEq + fmt::Debug>(quantity: &str, expected: T, found: T) -> Result<(), FamilyError> {
    if expected == found {
        Ok(())
    } else {
        Err(FamilyError::CrosscheckFailure {
            quantity: quantity.to_string(),
            expected: format!("{expected:?}"),
            found: format!("{found:?}"),
        })
    }
}

/// Runs the generic pipeline on `N_τ` and compares `T^{1,−}` (total and
/// graded) and, when `with_cone`, `dim Q` and the `V` factor with the
/// closed forms.
pub fn crosscheck_generic(tau: u32, with_cone: bool) -> Result<CrosscheckReport, FamilyError> {
    if tau == 0 {
        return Err(FamilyError::ZeroTau);
    }
    let sg = family_semigroup(tau);
    let engine = RhoEngine::new(CanonicalIdeal::new(&sg).map_err(DeformationError::from)?)?;
    let t1 = t1_minus(&engine);
    let dims = family_dims(tau);
    check("dim T1", dims.dim_t1 as usize, t1.dimension())?;
    check("graded T1", graded_t1(tau), t1.histogram())?;
    let model = FamilyModel::new(tau);
    check("V x W weights", model.product_weights(), t1.histogram())?;
    let mut report =
        CrosscheckReport { tau, dim_t1: t1.dimension(), t1_weights: t1.histogram(), dim_q: None, constant_weights: None };
    if with_cone {
        let q = quadratic_cone::<Rational>(&engine, &t1)?;
        let weights = q.weights();
        let dim = dim_certified(&q.generators, q.num_vars(), Some(&weights))?;
        check("dim Q", dims.dim_q as usize, dim)?;
        let constant = constant_directions(&q);
        check("V weights", model.v_weights.clone(), constant.clone())?;
        report.dim_q = Some(dim);
        report.constant_weights = Some(constant);
    }
    Ok(report)
}

/// Sorted weights of a graded basis of the directions `v` with `∂_v h = 0`
/// for every generator `h` of a cone cut out by quadratic forms.
///
/// These are the coordinates the cone does not depend on after a graded
/// linear change of coordinates, so the count does not depend on which
/// coefficients the linear solution kept.
pub fn constant_directions(q: &ConeIdeal<Rational>) -> Vec<u32> {
    let n = q.num_vars();
    let mut rows = Vec::new();
    for h in &q.generators {
        // Row i of the block holds the coefficient of t_i in each ∂h/∂t_j.
        let mut block = vec![vec![Rational::zero(); n]; n];
        for (m, c) in h.terms() {
            match *m.pairs() {
                [(a, 2)] => block[a as usize][a as usize] += c * Rational::from_integer(2.into()),
                [(a, 1), (b, 1)] => {
                    block[b as usize][a as usize] += c;
                    block[a as usize][b as usize] += c;
                }
                _ => panic!("generator is not a quadratic form"),
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    let weights = q.weights();
    let mut out: Vec<u32> = Matrix::from_rows(rows, n)
        .kernel_basis()
        .iter()
        .map(|v| weights[v.iter().position(|x| !x.is_zero()).expect("nonzero kernel vector")])
        .collect();
    out.sort_unstable();
    out
}

impl fmt::Display for FamilyDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim T1- = {}, dim Q = {}, dim M <= {}, Deligne {}",
            self.dim_t1, self.dim_q, self.upper_bound, self.deligne
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_semigroups_are_symmetric() {
        assert_eq!(family_semigroup(1).generators(), &[6, 8, 9, 10, 11]);
        assert_eq!(family_semigroup(2).generators(), &[6, 14, 15, 16, 17]);
        for tau in 1..=5 {
            let sg = family_semigroup(tau);
            assert_eq!(sg.genus() as u32, 6 * tau + 1);
            assert!(sg.is_symmetric());
            assert_eq!(sg.frobenius(), Some(12 * tau + 1));
        }
    }

    #[test]
    fn closed_forms() {
        let d = |t| {
            let d = family_dims(t);
            (d.dim_t1, d.dim_q, d.upper_bound, d.deligne)
        };
        assert_eq!(d(1), (17, 14, 13, 13));
        assert_eq!(d(2), (28, 22, 21, 25));
        assert_eq!(d(3), (39, 30, 29, 37));
    }

    #[test]
    fn census() {
        for tau in 1..=6 {
            let m = FamilyModel::new(tau);
            assert_eq!(m.partials.len(), 41);
            assert_eq!(m.num_coefficients(), (50 * tau + 43) as usize);
            assert_eq!(m.v_weights.len(), (tau + 6) as usize);
            assert_eq!(m.w_weights.len(), (10 * tau) as usize);
            assert_eq!(m.product_weights(), graded_t1(tau));
            assert_eq!(graded_t1(tau).values().sum::<usize>(), (11 * tau + 6) as usize);
            let same = m.partials.iter().filter(|p| p.formal_degree == p.j + 6 * tau).count();
            assert_eq!(same, 26);
        }
    }

    #[test]
    fn graded_t1_at_tau_one() {
        let expected: BTreeMap<u32, usize> =
            [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2), (7, 2), (8, 2), (9, 1), (10, 2), (12, 2)].into();
        assert_eq!(graded_t1(1), expected);
    }

    #[test]
    fn w_equations_are_quasi_homogeneous() {
        for tau in 1..=3 {
            let w = w_scalar_equations(tau);
            assert_eq!(w.generators.len(), 5 * tau as usize);
            assert_eq!(w.num_vars(), 10 * tau as usize);
            let weights = w.weights();
            assert!(weights.iter().all(|&x| x > 0));
            for g in &w.generators {
                let ws: Vec<u32> = g
                    .terms()
                    .map(|(m, _)| m.pairs().iter().map(|&(v, e)| weights[v as usize] * e).sum())
                    .collect();
                assert!(ws.windows(2).all(|p| p[0] == p[1]), "{ws:?}");
            }
        }
    }

    #[test]
    fn zero_vector_solves() {
        let omega: [ArtinElement; 10] = std::array::from_fn(|_| ArtinElement::zero(3));
        assert!(w_equations(&omega).iter().all(ArtinElement::is_zero));
    }

    #[test]
    fn artin_multiplication_truncates() {
        let e = ArtinElement::from_i64s(&[0, 1, 0]);
        let e2 = &e * &e;
        assert_eq!(e2, ArtinElement::from_i64s(&[0, 0, 1]));
        assert!((&e2 * &e).is_zero());
        let u = ArtinElement::from_i64s(&[2, 3, -1]);
        assert_eq!(&u * &u.inverse().unwrap(), ArtinElement::from_i64s(&[1, 0, 0]));
        assert!(e.inverse().is_none());
    }
}
