//! The obstruction polynomials `ρ_{s'i'm}`.
//!
//! For each non-pinned relation `F_{s'i'}` the syzygy of the binomials lifts to
//! `G = X_{2g−2} F_{s'i'} + Σ ε X_n F_si`, a cubic whose reduction modulo the
//! forms `F_si` lands in `Λ_3`. Reducing degree by degree in the coefficients,
//! `G^(k) = Σ ρ^(k)_m Z_m + Σ η X_m F⁰_si`, and since `F⁰ = F + Σ c X_{a_n} X_{b_n}`
//! the next residual is `G^(k+1) = Σ η X_m Σ c_sin X_{a_n} X_{b_n}`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::DeformationError;
use crate::canonical_ideal::{CanonicalIdeal, CoeffId, Cubic, SymbolicRelations};
use crate::exact_poly::{Field, GradedPoly, Monomial, Poly, Rational};
use crate::syzygies::{all_syzygies, Syzygy};

/// Label of one obstruction equation: target relation and `X`-weight `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquationId {
    /// Index into [`CanonicalIdeal::relations`].
    pub target: usize,
    pub m: u32,
}

/// Precomputed data for evaluating the obstruction equations under any
/// substitution of the coefficients.
#[derive(Debug, Clone)]
pub struct RhoEngine {
    ci: CanonicalIdeal,
    syzygies: Vec<Syzygy>,
    coeffs: Vec<CoeffId>,
    coeff_index: HashMap<CoeffId, usize>,
    /// Per relation: surviving tail terms as (coefficient index, X-indices of `X_{a_n} X_{b_n}`).
    tails: Vec<Vec<(usize, [u16; 2])>>,
    /// Cubic representations per weight: `μ ↦ [(m, relation, η)]`.
    reps: HashMap<u32, HashMap<Cubic, Vec<(u16, usize, Rational)>>>,
    equations: Vec<EquationId>,
    equation_index: HashMap<EquationId, usize>,
}

impl RhoEngine {
    pub fn new(ci: CanonicalIdeal) -> Result<Self, DeformationError> {
        let selection = ci.normalize_selection()?;
        let normalized: std::collections::BTreeSet<CoeffId> = selection.into_values().flatten().collect();
        let coeffs: Vec<CoeffId> = ci.coefficient_ids().into_iter().filter(|c| !normalized.contains(c)).collect();
        let coeff_index: HashMap<CoeffId, usize> = coeffs.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let xi = |n: u32| ci.x_index(n).unwrap();
        let mut tails = vec![Vec::new(); ci.relations().len()];
        for (k, c) in coeffs.iter().enumerate() {
            let r = ci.relation_index(c.s, c.i).unwrap();
            let (a, b) = ci.partitions().distinguished(c.n);
            tails[r].push((k, [xi(a), xi(b)]));
        }
        let top = ci.top();
        let weights: Vec<u32> = ci.semigroup().nongaps_up_to(3 * top);
        let reps = weights
            .par_iter()
            .map(|&w| ci.cubic_representations(w).map(|r| (w, r.reps)))
            .collect::<Result<HashMap<_, _>, _>>()?;
        let syzygies = all_syzygies(&ci);
        let mut equations = Vec::new();
        for z in &syzygies {
            let (s, _) = ci.relations()[z.target];
            for m in ci.semigroup().nongaps_up_to(s + top - 1) {
                if m <= 3 * top {
                    equations.push(EquationId { target: z.target, m });
                }
            }
        }
        let equation_index = equations.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Ok(RhoEngine { ci, syzygies, coeffs, coeff_index, tails, reps, equations, equation_index })
    }

    pub fn canonical(&self) -> &CanonicalIdeal {
        &self.ci
    }

    pub fn syzygies(&self) -> &[Syzygy] {
        &self.syzygies
    }

    /// Coefficients that survive normalization, ascending.
    pub fn coefficients(&self) -> &[CoeffId] {
        &self.coeffs
    }

    pub fn coefficient_index(&self, c: &CoeffId) -> Option<usize> {
        self.coeff_index.get(c).copied()
    }

    pub fn equations(&self) -> &[EquationId] {
        &self.equations
    }

    pub fn equation_index(&self, e: &EquationId) -> Option<usize> {
        self.equation_index.get(e).copied()
    }

    /// Coefficient weight `s' + 2g − 2 − m` of an equation.
    pub fn equation_weight(&self, e: &EquationId) -> u32 {
        self.ci.relations()[e.target].0 + self.ci.top() - e.m
    }

    /// The linear parts `ρ^(1)` in closed form: `−c_{s'i', m−2g+2} − Σ ε c_{si, m−n}`,
    /// as sparse rows over coefficient indices.
    pub fn linear_part(&self) -> Vec<BTreeMap<usize, i64>> {
        let top = self.ci.top();
        let mut rows = vec![BTreeMap::new(); self.equations.len()];
        for z in &self.syzygies {
            let mut add = |rel: usize, shift: u32, e: i64| {
                let (s, i) = self.ci.relations()[rel];
                for c in self.coeffs.iter().filter(|c| c.s == s && c.i == i) {
                    let eq = EquationId { target: z.target, m: c.n + shift };
                    if let Some(&k) = self.equation_index.get(&eq) {
                        *rows[k].entry(self.coeff_index[c]).or_insert(0) += e;
                    }
                }
            };
            add(z.target, top, -1);
            for t in &z.terms {
                add(t.relation, t.n, -(t.epsilon as i64));
            }
        }
        for r in &mut rows {
            r.retain(|_, v| *v != 0);
        }
        rows
    }

    /// Evaluates the obstruction equations with every coefficient `c_k`
    /// replaced by `psi[k]`. Returns `steps[k][e] = ρ^(k+1)_e`, stopping after
    /// `max_steps` rounds when given.
    pub fn run<F: Field>(&self, psi: &[Poly<F>], max_steps: Option<usize>) -> Result<Vec<Vec<Poly<F>>>, DeformationError> {
        assert_eq!(psi.len(), self.coeffs.len(), "one image per coefficient");
        let reps: HashMap<u32, HashMap<Cubic, Vec<(u16, usize, F)>>> = self
            .reps
            .iter()
            .map(|(&w, rs)| {
                let conv = rs
                    .iter()
                    .map(|(mu, terms)| {
                        let t = terms
                            .iter()
                            .map(|(m, r, eta)| (*m, *r, F::from_rational(eta).expect("denominator invertible")))
                            .collect();
                        (*mu, t)
                    })
                    .collect();
                (w, conv)
            })
            .collect();
        let per_target: Vec<(usize, Vec<BTreeMap<u32, Poly<F>>>)> = self
            .syzygies
            .par_iter()
            .map(|z| self.run_target(z, psi, &reps, max_steps).map(|steps| (z.target, steps)))
            .collect::<Result<_, _>>()?;
        let nsteps = per_target.iter().map(|p| p.1.len()).max().unwrap_or(0);
        let mut out = vec![vec![Poly::zero(); self.equations.len()]; nsteps];
        for (target, steps) in per_target {
            for (k, step) in steps.into_iter().enumerate() {
                for (m, p) in step {
                    let e = self.equation_index[&EquationId { target, m }];
                    out[k][e] = p;
                }
            }
        }
        Ok(out)
    }

    fn run_target<F: Field>(
        &self,
        z: &Syzygy,
        psi: &[Poly<F>],
        reps: &HashMap<u32, HashMap<Cubic, Vec<(u16, usize, F)>>>,
        max_steps: Option<usize>,
    ) -> Result<Vec<BTreeMap<u32, Poly<F>>>, DeformationError> {
        let ci = &self.ci;
        let nongaps = ci.nongaps();
        let top_idx = ci.x_index(ci.top()).unwrap();
        let cubic = |m: u16, p: [u16; 2]| {
            let mut c = [m, p[0], p[1]];
            c.sort_unstable();
            c
        };
        let mut g: BTreeMap<Cubic, Poly<F>> = BTreeMap::new();
        let minus_one = F::one().negated();
        let push_tail = |g: &mut BTreeMap<Cubic, Poly<F>>, m: u16, rel: usize, coeff: &Poly<F>| {
            for &(k, pair) in &self.tails[rel] {
                let entry = g.entry(cubic(m, pair)).or_insert_with(Poly::zero);
                for (mono, c) in psi[k].terms() {
                    for (mono2, c2) in coeff.terms() {
                        entry.add_term(mono.mul(mono2), c.times(c2));
                    }
                }
            }
        };
        push_tail(&mut g, top_idx, z.target, &Poly::constant(minus_one.clone()));
        for t in &z.terms {
            let m = ci.x_index(t.n).unwrap();
            push_tail(&mut g, m, t.relation, &Poly::constant(F::from_i64(-(t.epsilon as i64))));
        }
        let (s, _) = ci.relations()[z.target];
        let bound = (s + ci.top()) as usize;
        let mut steps = Vec::new();
        loop {
            g.retain(|_, p| !p.is_zero());
            if g.is_empty() || max_steps.is_some_and(|k| steps.len() >= k) {
                break;
            }
            if steps.len() > bound {
                return Err(DeformationError::NonTermination { relation: ci.relations()[z.target] });
            }
            let mut rho: BTreeMap<u32, Poly<F>> = BTreeMap::new();
            let mut eta: BTreeMap<(u16, usize), Poly<F>> = BTreeMap::new();
            for (mu, kappa) in &g {
                let w: u32 = mu.iter().map(|&k| nongaps[k as usize]).sum();
                rho.entry(w).or_insert_with(Poly::zero).add_assign(kappa);
                for (m, r, e) in &reps[&w][mu] {
                    eta.entry((*m, *r)).or_insert_with(Poly::zero).add_scaled(e, &Monomial::one(), kappa);
                }
            }
            rho.retain(|_, p| !p.is_zero());
            steps.push(rho);
            let mut next: BTreeMap<Cubic, Poly<F>> = BTreeMap::new();
            for ((m, r), coeff) in &eta {
                if !coeff.is_zero() {
                    push_tail(&mut next, *m, *r, coeff);
                }
            }
            g = next;
        }
        Ok(steps)
    }
}

/// All obstruction equations as polynomials in the surviving coefficients.
#[derive(Debug, Clone)]
pub struct RhoSystem {
    pub relations: SymbolicRelations,
    /// `(s', i', m) ↦ ρ_{s'i'm}` over the variable table of `relations`.
    pub equations: BTreeMap<(u32, usize, u32), GradedPoly>,
    /// `(s', i', m) ↦ ρ^(k)_{s'i'm}` for `k = 1, 2, …`.
    pub components: BTreeMap<(u32, usize, u32), Vec<GradedPoly>>,
    /// `(s', i', m) ↦ Z_{s'i'm}` as sorted nongaps.
    pub z_monomials: BTreeMap<(u32, usize, u32), Vec<u32>>,
}

impl RhoSystem {
    /// Weight `s' + 2g − 2 − m` carried by `ρ_{s'i'm}`.
    pub fn equation_weight(&self, key: &(u32, usize, u32)) -> u32 {
        let g = self.relations.table.num_x() as u32;
        key.0 + 2 * g - 2 - key.2
    }
}

/// Computes every `ρ_{s'i'm}` symbolically in the coefficients `c_sin`.
pub fn compute_rho(engine: &RhoEngine) -> Result<RhoSystem, DeformationError> {
    let ci = engine.canonical();
    let relations = ci.symbolic_relations()?;
    let psi: Vec<GradedPoly> = engine
        .coefficients()
        .iter()
        .map(|c| GradedPoly::var(relations.c_vars[c]))
        .collect();
    let steps = engine.run(&psi, None)?;
    let mut equations = BTreeMap::new();
    let mut components = BTreeMap::new();
    let mut z_monomials = BTreeMap::new();
    let lambda3 = ci.hermitian_basis(3);
    for (k, e) in engine.equations().iter().enumerate() {
        let (s, i) = ci.relations()[e.target];
        let key = (s, i, e.m);
        let comps: Vec<GradedPoly> = steps.iter().map(|st| st[k].clone()).collect();
        let mut total = GradedPoly::zero();
        for c in &comps {
            total.add_assign(c);
        }
        equations.insert(key, total);
        components.insert(key, comps);
        z_monomials.insert(key, lambda3.get(e.m).map(<[u32]>::to_vec).unwrap_or_default());
    }
    Ok(RhoSystem { relations, equations, components, z_monomials })
}
