//! Sparse multivariate polynomials over a [`Field`], graded through a [`VarTable`].

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::field::{Field, Rational};

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(u32, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: u32) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: u32, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var_pow(v, e));
        }
        m
    }

    /// Product of the variables in `vars` (with repetition).
    pub fn product(vars: &[u32]) -> Self {
        Self::from_pairs(vars.iter().map(|&v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.0
            .binary_search_by_key(&v, |p| p.0)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| o.exponent(v) >= e)
    }

    /// `o / self`, if `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let out = o
            .0
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - self.exponent(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial(out))
    }

    /// Splits into the part over variables accepted by `keep` and the rest.
    pub fn split(&self, keep: impl Fn(u32) -> bool) -> (Monomial, Monomial) {
        let (a, b): (SmallVec<_>, SmallVec<_>) = self.0.iter().copied().partition(|p| keep(p.0));
        (Monomial(a), Monomial(b))
    }

    /// Dense exponent vector of length `n`.
    pub fn to_dense(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &(v, e) in &self.0 {
            out[v as usize] = e;
        }
        out
    }

    pub fn from_dense(exps: &[u32]) -> Monomial {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|p| *p.1 > 0)
                .map(|(v, &e)| (v as u32, e))
                .collect(),
        )
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { format!("v{v}") } else { format!("v{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial: monomial → nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

/// Polynomial over the rationals, graded through a [`VarTable`].
pub type GradedPoly = Poly<Rational>;

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: u32) -> Self {
        Self::term(F::one(), Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(F::one(), m)
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, F)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c · m · o`
    pub fn add_scaled(&mut self, c: &F, m: &Monomial, o: &Self) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &o.terms {
            self.add_term(m.mul(om), c.times(oc));
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&F::one().negated(), &Monomial::one(), o);
        r
    }

    pub fn negated(&self) -> Self {
        self.scaled(&F::one().negated())
    }

    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.times(c))).collect(),
        }
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_scaled(c, m, o);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(F::one()), |acc, _| acc.times(self))
    }

    /// Keeps the terms whose monomial satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces each variable `v` by `image(v)` (or keeps it when `None`).
    pub fn substitute(&self, image: impl Fn(u32) -> Option<Poly<F>>) -> Self {
        let mut cache: BTreeMap<(u32, u32), Poly<F>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                let factor = cache
                    .entry((v, e))
                    .or_insert_with(|| match image(v) {
                        Some(p) => p.pow(e),
                        None => Poly::monomial(Monomial::var_pow(v, e)),
                    })
                    .clone();
                acc = acc.times(&factor);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Renames variables through `f`; distinct variables must map to distinct ones.
    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e))), c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Sorted set of variables that occur.
    pub fn variables(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.terms.keys().flat_map(|m| m.pairs().iter().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// What a variable stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Coordinate `X_n` on the canonical space.
    X { nongap: u32 },
    /// Coefficient `c_sin` of the quadratic relation with index `(s, i)`.
    C { s: u32, i: usize, n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub kind: VarKind,
    pub weight: u32,
}

/// Variables with their weights: `X_n` first, then the coefficient variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<VarInfo>,
    num_x: usize,
}

impl VarTable {
    /// Table holding `X_n` for every entry of `nongaps`, in that order.
    pub fn with_x_vars(nongaps: &[u32]) -> Self {
        VarTable {
            vars: nongaps
                .iter()
                .map(|&n| VarInfo { kind: VarKind::X { nongap: n }, weight: n })
                .collect(),
            num_x: nongaps.len(),
        }
    }

    /// Appends `c_sin` (weight `s - n`) and returns its index.
    pub fn push_c(&mut self, s: u32, i: usize, n: u32) -> u32 {
        assert!(n < s, "coefficient weight must be positive");
        self.vars.push(VarInfo { kind: VarKind::C { s, i, n }, weight: s - n });
        (self.vars.len() - 1) as u32
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn num_x(&self) -> usize {
        self.num_x
    }

    pub fn num_c(&self) -> usize {
        self.vars.len() - self.num_x
    }

    pub fn is_x(&self, v: u32) -> bool {
        (v as usize) < self.num_x
    }

    pub fn info(&self, v: u32) -> &VarInfo {
        &self.vars[v as usize]
    }

    pub fn weight(&self, v: u32) -> u32 {
        self.vars[v as usize].weight
    }

    pub fn x_index(&self, nongap: u32) -> Option<u32> {
        self.vars[..self.num_x]
            .iter()
            .position(|v| v.kind == VarKind::X { nongap })
            .map(|k| k as u32)
    }

    pub fn c_index(&self, s: u32, i: usize, n: u32) -> Option<u32> {
        self.vars[self.num_x..]
            .iter()
            .position(|v| v.kind == VarKind::C { s, i, n })
            .map(|k| (k + self.num_x) as u32)
    }

    pub fn name(&self, v: u32) -> String {
        match self.vars[v as usize].kind {
            VarKind::X { nongap } => format!("X{nongap}"),
            VarKind::C { s, i, n } => format!("c[{s},{i},{n}]"),
        }
    }

    /// `(x-degree, weight, c-degree)` of a monomial.
    pub fn grades(&self, m: &Monomial) -> (u32, u32, u32) {
        let (mut xd, mut w, mut cd) = (0, 0, 0);
        for &(v, e) in m.pairs() {
            w += self.weight(v) * e;
            if self.is_x(v) {
                xd += e;
            } else {
                cd += e;
            }
        }
        (xd, w, cd)
    }

    pub fn monomial_weight(&self, m: &Monomial) -> u32 {
        self.grades(m).1
    }

    /// Weight shared by all terms, if the polynomial is quasi-homogeneous.
    pub fn homogeneous_weight<F: Field>(&self, p: &Poly<F>) -> Option<u32> {
        let mut ws = p.terms().map(|(m, _)| self.monomial_weight(m));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn render<F: Field>(&self, p: &Poly<F>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().enumerate() {
            let mono: Vec<String> = m
                .pairs()
                .iter()
                .map(|&(v, e)| if e == 1 { self.name(v) } else { format!("{}^{e}", self.name(v)) })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (mono.is_empty(), mag == "1") {
                (true, _) => out.push_str(&mag),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{mag}*{}", mono.join("*"))),
            }
        }
        out
    }
}

/// Terms of `p` with the given x-degree, weight and c-degree.
pub fn graded_component<F: Field>(p: &Poly<F>, table: &VarTable, xdeg: u32, weight: u32, cdeg: u32) -> Poly<F> {
    p.filter(|m| table.grades(m) == (xdeg, weight, cdeg))
}

/// All graded components of `p`, keyed by `(x-degree, weight, c-degree)`.
pub fn graded_components<F: Field>(p: &Poly<F>, table: &VarTable) -> BTreeMap<(u32, u32, u32), Poly<F>> {
    let mut out: BTreeMap<_, Poly<F>> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(table.grades(m)).or_default().add_term(m.clone(), c.clone());
    }
    out
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> VarTable {
        let mut t = VarTable::with_x_vars(&[0, 6, 8, 9, 10, 11, 12]);
        t.push_c(14, 1, 12);
        t.push_c(16, 1, 13);
        t
    }

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        prop::collection::vec((prop::collection::vec(0u32..9, 0..4), -4i64..5), 0..6).prop_map(|terms| {
            let mut p = GradedPoly::zero();
            for (vars, c) in terms {
                p.add_term(Monomial::product(&vars), q(c));
            }
            p
        })
    }

    #[test]
    fn component_filter() {
        let t = table();
        let x6x8 = Monomial::product(&[1, 2]);
        let cx0x12 = Monomial::product(&[7, 0, 6]);
        let mut p = GradedPoly::monomial(x6x8.clone());
        p.add_term(cx0x12, q(1));
        assert_eq!(graded_component(&p, &t, 2, 14, 0), GradedPoly::monomial(x6x8));
        assert!(graded_component(&GradedPoly::zero(), &t, 2, 14, 0).is_zero());
        assert_eq!(t.homogeneous_weight(&p), Some(14));
        assert_eq!(t.render(&p), "X0*X12*c[14,1,12] + X6*X8");
    }

    #[test]
    fn monomial_helpers() {
        let a = Monomial::from_pairs([(3, 1), (1, 2), (3, 1)]);
        assert_eq!(a.pairs(), &[(1, 2), (3, 2)]);
        assert_eq!(a.degree(), 4);
        let b = Monomial::product(&[1, 3]);
        assert_eq!(b.quotient_of(&a), Some(b.clone()));
        assert_eq!(a.quotient_of(&b), None);
        assert_eq!(Monomial::from_dense(&a.to_dense(5)), a);
    }

    #[test]
    fn substitution() {
        // x0 -> x1 + 1 in x0^2
        let p = GradedPoly::monomial(Monomial::var_pow(0, 2));
        let img = GradedPoly::var(1).plus(&GradedPoly::constant(q(1)));
        let r = p.substitute(|v| (v == 0).then(|| img.clone()));
        assert_eq!(r, img.times(&img));
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            prop_assert_eq!(a.times(&b), b.times(&a));
            prop_assert!(a.minus(&a).is_zero());
        }

        #[test]
        fn components_reconstitute(a in arb_poly()) {
            let t = table();
            let mut sum = GradedPoly::zero();
            for comp in graded_components(&a, &t).values() {
                sum.add_assign(comp);
            }
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn products_add_grades(a in arb_poly(), b in arb_poly()) {
            let t = table();
            for (ka, pa) in graded_components(&a, &t) {
                for (kb, pb) in graded_components(&b, &t) {
                    let prod = pa.times(&pb);
                    for (m, _) in prod.terms() {
                        prop_assert_eq!(t.grades(m), (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2));
                    }
                }
            }
        }
    }
}
