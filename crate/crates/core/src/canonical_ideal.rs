//! Combinatorial skeleton of the canonical ideal: partitions of nongaps,
//! hermitian monomial bases, the binomials `F⁰_si`, the symbolic quadratic
//! forms `F_si` with coefficient variables, the normalization of those
//! coefficients, and decomposition of cubics over the binomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::exact_poly::{solve_linear, Field, GradedPoly, Matrix, Monomial, Rational, VarTable};
use crate::semigroup::{HypothesisReport, Semigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(HypothesisReport),
    #[error("polynomial is not a single graded piece of x-degree 3")]
    NotGraded,
    #[error("normalization at weight {weight}: orbit rank {rank}, expected {expected}")]
    SelectionRankMismatch { weight: u32, rank: usize, expected: usize },
    #[error("no partition of {s} with largest part {b}")]
    MissingPartition { s: u32, b: u32 },
    #[error("cubic binomial multiples of weight {weight} leave codimension {codim}, expected 1")]
    CubicSpanDeficient { weight: u32, codim: usize },
}

/// Which pair of a non-pinned partition list becomes the distinguished one.
///
/// For `s = n_i + 2g − 2` the distinguished pair is fixed; for every other
/// `s` any pair may serve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PartitionChoice {
    /// Pair with the smallest first part.
    #[default]
    SmallestFirst,
    /// Pair with the largest first part.
    LargestFirst,
}

/// Partitions `s = a + b`, `a ≤ b`, of each nongap `s ≤ 4g − 4` into two
/// nongaps `≤ 2g − 2`. Index 0 is the distinguished pair `(a_s, b_s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    entries: BTreeMap<u32, Vec<(u32, u32)>>,
}

impl PartitionTable {
    pub fn sums(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    pub fn pairs(&self, s: u32) -> &[(u32, u32)] {
        self.entries.get(&s).map_or(&[], Vec::as_slice)
    }

    /// `ν_s`: number of pairs besides the distinguished one.
    pub fn nu(&self, s: u32) -> usize {
        self.pairs(s).len().saturating_sub(1)
    }

    pub fn pair(&self, s: u32, i: usize) -> (u32, u32) {
        self.entries[&s][i]
    }

    pub fn distinguished(&self, s: u32) -> (u32, u32) {
        self.pair(s, 0)
    }

    /// Index of the pair `{a, b}` in the list for `a + b`.
    pub fn index_of(&self, a: u32, b: u32) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.pairs(a + b).iter().position(|&p| p == key)
    }

    pub fn total_pairs(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }
}

/// Lists the partitions with the default choice of distinguished pairs.
pub fn build_partitions(sg: &Semigroup) -> Result<PartitionTable, CanonicalError> {
    build_partitions_with(sg, PartitionChoice::SmallestFirst)
}

pub fn build_partitions_with(sg: &Semigroup, choice: PartitionChoice) -> Result<PartitionTable, CanonicalError> {
    let report = sg.validate_hypotheses();
    if !report.passes() {
        return Err(CanonicalError::HypothesesViolated(report));
    }
    let g = sg.genus();
    let top = 2 * g as u32 - 2;
    let x = sg.nongaps_up_to(top);
    let mut entries = BTreeMap::new();
    for s in sg.nongaps_up_to(2 * top) {
        let mut pairs: Vec<(u32, u32)> = x
            .iter()
            .filter(|&&a| 2 * a <= s && s - a <= top && sg.contains(s - a))
            .map(|&a| (a, s - a))
            .collect();
        // pinned case: s = n_i + 2g - 2 with i ≤ g - 3
        let pinned = (0..g - 2).find(|&i| x[i] + top == s);
        let first = match pinned {
            Some(i) => {
                // b_s is the largest nongap below n_i + l_{g-i-1}
                let bound = x[i] + sg.gap(g - i - 1);
                let b = *x.iter().rfind(|&&n| n < bound).unwrap();
                let k = pairs
                    .iter()
                    .position(|&(a, bb)| bb == b && a == s - b)
                    .ok_or(CanonicalError::MissingPartition { s, b })?;
                let d = pairs.remove(k);
                let k1 = pairs.iter().position(|&p| p == (x[i], top)).unwrap();
                let p1 = pairs.remove(k1);
                pairs.insert(0, p1);
                d
            }
            None => match choice {
                PartitionChoice::SmallestFirst => pairs.remove(0),
                PartitionChoice::LargestFirst => pairs.pop().unwrap(),
            },
        };
        pairs.insert(0, first);
        entries.insert(s, pairs);
    }
    Ok(PartitionTable { entries })
}

/// A hermitian `r`-monomial basis: one monomial per nongap `n ≤ r(2g − 2)`.
///
/// Monomials are stored as sorted lists of `r` nongaps (the `X`-subscripts,
/// repeated with multiplicity, `X_0` included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianBasis {
    pub r: usize,
    pub monomials: BTreeMap<u32, Vec<u32>>,
}

impl HermitianBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, weight: u32) -> Option<&[u32]> {
        self.monomials.get(&weight).map(Vec::as_slice)
    }
}

/// Identifies the coefficient `c_sin` of the relation `F_si`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffId {
    pub s: u32,
    pub i: usize,
    pub n: u32,
}

impl CoeffId {
    pub fn weight(&self) -> u32 {
        self.s - self.n
    }
}

impl std::fmt::Display for CoeffId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "c[{},{},{}]", self.s, self.i, self.n)
    }
}

/// One tail term `c_sin X_{a_n} X_{b_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailTerm {
    pub coeff: CoeffId,
    /// Distinguished pair `(a_n, b_n)`.
    pub pair: (u32, u32),
    pub normalized_zero: bool,
}

/// `F_si = X_{a_si} X_{b_si} − X_{a_s} X_{b_s} − Σ' c_sin X_{a_n} X_{b_n}`.
///
/// The coefficient of `X_{a_s} X_{b_s}` is fixed to 1 and folded into the
/// binomial part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub s: u32,
    pub i: usize,
    /// `(a_si, b_si)` and `(a_s, b_s)`.
    pub binomial: ((u32, u32), (u32, u32)),
    pub tail: Vec<TailTerm>,
}

impl QuadraticRelation {
    pub fn normalized_zero(&self) -> impl Iterator<Item = CoeffId> + '_ {
        self.tail.iter().filter(|t| t.normalized_zero).map(|t| t.coeff)
    }
}

/// A cubic monomial as sorted `X`-indices.
pub type Cubic = [u16; 3];

/// Decomposition `p = Σ η X_m F⁰_r + remainder · Z_w` of a cubic of weight `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `(X-index m, relation index r, η)`
    pub terms: Vec<(u16, usize, Rational)>,
    pub remainder: Rational,
    /// `Z_w` as sorted nongaps.
    pub remainder_monomial: Vec<u32>,
}

/// Everything about the canonical ideal of the monomial curve that the
/// deformation engine needs, for one choice of distinguished partitions.
#[derive(Debug, Clone)]
pub struct CanonicalIdeal {
    sg: Semigroup,
    g: usize,
    top: u32,
    nongaps: Vec<u32>,
    x_index: Vec<Option<u16>>,
    partitions: PartitionTable,
    relations: Vec<(u32, usize)>,
    rel_index: HashMap<(u32, usize), usize>,
}

impl CanonicalIdeal {
    pub fn new(sg: &Semigroup) -> Result<Self, CanonicalError> {
        Self::with_choice(sg, PartitionChoice::SmallestFirst)
    }

    pub fn with_choice(sg: &Semigroup, choice: PartitionChoice) -> Result<Self, CanonicalError> {
        let partitions = build_partitions_with(sg, choice)?;
        let g = sg.genus();
        let top = 2 * g as u32 - 2;
        let nongaps = sg.nongaps_up_to(top);
        let mut x_index = vec![None; top as usize + 1];
        for (k, &n) in nongaps.iter().enumerate() {
            x_index[n as usize] = Some(k as u16);
        }
        let relations: Vec<(u32, usize)> = partitions
            .sums()
            .flat_map(|s| (1..=partitions.nu(s)).map(move |i| (s, i)))
            .collect();
        let rel_index = relations.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        Ok(CanonicalIdeal { sg: sg.clone(), g, top, nongaps, x_index, partitions, relations, rel_index })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.sg
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// `2g − 2`.
    pub fn top(&self) -> u32 {
        self.top
    }

    /// Nongaps `≤ 2g − 2`; position `k` is the `X`-index of `X_{n_k}`.
    pub fn nongaps(&self) -> &[u32] {
        &self.nongaps
    }

    pub fn x_index(&self, n: u32) -> Option<u16> {
        self.x_index.get(n as usize).copied().flatten()
    }

    pub fn is_x(&self, n: i64) -> bool {
        n >= 0 && n <= self.top as i64 && self.x_index[n as usize].is_some()
    }

    pub fn partitions(&self) -> &PartitionTable {
        &self.partitions
    }

    /// Relation labels `(s, i)`, `i ≥ 1`, ordered by `s` then `i`.
    pub fn relations(&self) -> &[(u32, usize)] {
        &self.relations
    }

    pub fn relation_index(&self, s: u32, i: usize) -> Option<usize> {
        self.rel_index.get(&(s, i)).copied()
    }

    /// The relations `F_{n_i+2g−2, 1}`, `i = 0..g−3`, that cut out the curve near `P`.
    pub fn is_pinned(&self, r: usize) -> bool {
        let (s, i) = self.relations[r];
        i == 1 && s >= self.top && self.nongaps[..self.g - 2].contains(&(s - self.top))
    }

    /// `F⁰_r` as `(plus pair, minus pair)` of nongaps.
    pub fn binomial(&self, r: usize) -> ((u32, u32), (u32, u32)) {
        let (s, i) = self.relations[r];
        (self.partitions.pair(s, i), self.partitions.distinguished(s))
    }

    /// Writes `X_a X_b − X_c X_d` (equal weights) as `Σ ± F⁰_r`.
    pub fn binomial_as_relations(&self, plus: (u32, u32), minus: (u32, u32)) -> Vec<(usize, i64)> {
        let s = plus.0 + plus.1;
        debug_assert_eq!(s, minus.0 + minus.1);
        let ip = self.partitions.index_of(plus.0, plus.1).expect("plus pair is a partition");
        let im = self.partitions.index_of(minus.0, minus.1).expect("minus pair is a partition");
        let mut out = Vec::new();
        if ip == im {
            return out;
        }
        if ip > 0 {
            out.push((self.rel_index[&(s, ip)], 1));
        }
        if im > 0 {
            out.push((self.rel_index[&(s, im)], -1));
        }
        out
    }

    /// Hermitian basis `Λ_r` built from the distinguished pairs.
    pub fn hermitian_basis(&self, r: usize) -> HermitianBasis {
        assert!(r >= 1, "degree must be positive");
        let mut monomials = BTreeMap::new();
        match r {
            1 => {
                for &n in &self.nongaps {
                    monomials.insert(n, vec![n]);
                }
            }
            2 => {
                for s in self.partitions.sums() {
                    let (a, b) = self.partitions.distinguished(s);
                    monomials.insert(s, vec![a, b]);
                }
            }
            _ => {
                let rr = r as u32;
                for n in self.sg.nongaps_up_to(rr * self.top) {
                    monomials.insert(n, self.lambda_monomial(r, n));
                }
            }
        }
        HermitianBasis { r, monomials }
    }

    fn lambda_monomial(&self, r: usize, n: u32) -> Vec<u32> {
        let top = self.top;
        let mut out = if n <= top {
            vec![n]
        } else if n <= 2 * top {
            let (a, b) = self.partitions.distinguished(n);
            vec![a, b]
        } else if n == 2 * top + 1 {
            let n1 = self.sg.multiplicity();
            vec![n1, top + 2 - n1, top - 1]
        } else {
            let mut m = self.lambda_monomial(r - 1, n - top);
            m.retain(|&v| v != 0);
            m.push(top);
            m
        };
        out.retain(|&v| v != 0);
        while out.len() < r {
            out.push(0);
        }
        out.sort_unstable();
        out
    }

    /// The binomials `F⁰_si` as relations with empty tails.
    pub fn binomial_generators(&self) -> Vec<QuadraticRelation> {
        (0..self.relations.len())
            .map(|r| {
                let (s, i) = self.relations[r];
                QuadraticRelation { s, i, binomial: self.binomial(r), tail: Vec::new() }
            })
            .collect()
    }

    /// Tail coefficients `c_sin` for every relation and nongap `n < s`.
    pub fn coefficient_ids(&self) -> Vec<CoeffId> {
        self.relations
            .iter()
            .flat_map(|&(s, i)| self.sg.nongaps_up_to(s - 1).into_iter().map(move |n| CoeffId { s, i, n }))
            .collect()
    }

    /// Coefficients fixed to zero by the normalization, grouped by weight.
    ///
    /// The coordinate changes `X_v ↦ X_v + Σ d_vu X_u` act on the coefficient
    /// space; at the monomial curve their tangent directions of weight `w`
    /// span a space whose dimension is the number of nongap pairs
    /// `(m, m + w)` below `2g − 2`. Pivot coordinates of that span are set to
    /// zero, which slices every orbit transversally.
    pub fn normalize_selection(&self) -> Result<BTreeMap<u32, BTreeSet<CoeffId>>, CanonicalError> {
        let mut by_weight: BTreeMap<u32, Vec<CoeffId>> = BTreeMap::new();
        for c in self.coefficient_ids() {
            by_weight.entry(c.weight()).or_default().push(c);
        }
        let mut out = BTreeMap::new();
        for (&w, cols) in &by_weight {
            let rows = self.orbit_directions(w, cols);
            let expected = rows.len();
            let m = Matrix::from_rows(rows, cols.len());
            let mut reduced = m.clone();
            let pivots = reduced.rref();
            if pivots.len() != expected {
                return Err(CanonicalError::SelectionRankMismatch { weight: w, rank: pivots.len(), expected });
            }
            let chosen: BTreeSet<CoeffId> = pivots.into_iter().map(|k| cols[k]).collect();
            out.insert(w, chosen);
        }
        Ok(out)
    }

    /// Linearized action of `d_{v, v−w}` on the listed coefficients of weight `w`.
    pub fn orbit_directions(&self, w: u32, cols: &[CoeffId]) -> Vec<Vec<Rational>> {
        let mult = |p: (u32, u32), v: u32| (p.0 == v) as i64 + (p.1 == v) as i64;
        self.nongaps
            .iter()
            .filter(|&&v| v >= w && self.x_index(v - w).is_some())
            .map(|&v| {
                cols.iter()
                    .map(|c| {
                        let plus = self.partitions.pair(c.s, c.i);
                        let minus = self.partitions.distinguished(c.s);
                        Rational::from_i64(mult(minus, v) - mult(plus, v))
                    })
                    .collect()
            })
            .collect()
    }

    /// The normalized forms `F_si` together with their variable table
    /// (`X_n` first, then one `c` per tail coefficient).
    pub fn symbolic_relations(&self) -> Result<SymbolicRelations, CanonicalError> {
        let zero: BTreeSet<CoeffId> = self.normalize_selection()?.into_values().flatten().collect();
        let mut table = VarTable::with_x_vars(&self.nongaps);
        let mut relations = Vec::new();
        let mut c_vars = BTreeMap::new();
        for r in 0..self.relations.len() {
            let (s, i) = self.relations[r];
            let mut tail = Vec::new();
            for n in self.sg.nongaps_up_to(s - 1) {
                let coeff = CoeffId { s, i, n };
                let v = table.push_c(s, i, n);
                c_vars.insert(coeff, v);
                tail.push(TailTerm { coeff, pair: self.partitions.distinguished(n), normalized_zero: zero.contains(&coeff) });
            }
            relations.push(QuadraticRelation { s, i, binomial: self.binomial(r), tail });
        }
        Ok(SymbolicRelations { table, relations, c_vars })
    }

    /// Cubic monomials of weight `w`, as sorted `X`-indices.
    pub fn cubics_of_weight(&self, w: u32) -> Vec<Cubic> {
        let g = self.g;
        let mut out = Vec::new();
        for a in 0..g {
            for b in a..g {
                let ab = self.nongaps[a] + self.nongaps[b];
                if ab > w {
                    break;
                }
                if let Some(c) = self.x_index(w - ab) {
                    if c as usize >= b {
                        out.push([a as u16, b as u16, c]);
                    }
                }
            }
        }
        out
    }

    /// Products `X_m F⁰_r` of weight `w`, as `(m, r)`.
    pub fn cubic_generators(&self, w: u32) -> Vec<(u16, usize)> {
        let mut out = Vec::new();
        for (r, &(s, _)) in self.relations.iter().enumerate() {
            if s <= w {
                if let Some(m) = self.x_index(w - s) {
                    out.push((m, r));
                }
            }
        }
        out
    }

    /// `X_m F⁰_r` as a sparse vector over cubic monomials.
    pub fn cubic_generator_terms(&self, m: u16, r: usize) -> [(Cubic, i64); 2] {
        let (p, q) = self.binomial(r);
        let xi = |n: u32| self.x_index(n).unwrap();
        let mk = |a: u32, b: u32| {
            let mut c = [m, xi(a), xi(b)];
            c.sort_unstable();
            c
        };
        [(mk(p.0, p.1), 1), (mk(q.0, q.1), -1)]
    }

    /// Cubic-degree `Λ_3` monomial of weight `w` as sorted `X`-indices.
    pub fn z_cubic(&self, w: u32) -> Cubic {
        let m = self.lambda_monomial(3, w);
        let mut c = [self.x_index(m[0]).unwrap(), self.x_index(m[1]).unwrap(), self.x_index(m[2]).unwrap()];
        c.sort_unstable();
        c
    }

    /// For every cubic monomial `μ` of weight `w`, a decomposition
    /// `μ − Z_w = Σ η X_m F⁰_r` by exact linear algebra on the graded piece.
    pub fn cubic_representations(&self, w: u32) -> Result<CubicReps, CanonicalError> {
        let monos = self.cubics_of_weight(w);
        let gens = self.cubic_generators(w);
        let pos: HashMap<Cubic, usize> = monos.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut a = Matrix::<Rational>::zeros(monos.len(), gens.len());
        for (j, &(m, r)) in gens.iter().enumerate() {
            for (c, e) in self.cubic_generator_terms(m, r) {
                let k = pos[&c];
                let v = a.get(k, j).plus(&Rational::from_i64(e));
                a.set(k, j, v);
            }
        }
        let z = self.z_cubic(w);
        let zi = pos[&z];
        let mut b = Matrix::<Rational>::zeros(monos.len(), monos.len());
        for k in 0..monos.len() {
            if k != zi {
                b.set(k, k, Rational::one());
                b.set(zi, k, -Rational::one());
            }
        }
        let sol = solve_linear(&a, &b);
        let codim = monos.len() - sol.rank();
        if codim != 1 || sol.consistent.iter().any(|&ok| !ok) {
            return Err(CanonicalError::CubicSpanDeficient { weight: w, codim });
        }
        let mut reps = HashMap::new();
        for (k, &mu) in monos.iter().enumerate() {
            let x = sol.particular(k).unwrap();
            let terms: Vec<(u16, usize, Rational)> = x
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (gens[j].0, gens[j].1, v))
                .collect();
            reps.insert(mu, terms);
        }
        Ok(CubicReps { weight: w, z, reps })
    }

    /// Decomposes a cubic form in the `X`-variables (variable `k` of the
    /// polynomial is `X_{n_k}`) over the products `X_m F⁰_r` plus `Λ_3`.
    pub fn express_in_generators(&self, p: &GradedPoly) -> Result<Decomposition, CanonicalError> {
        let table = VarTable::with_x_vars(&self.nongaps);
        if p.terms().any(|(m, _)| m.pairs().iter().any(|&(v, _)| v as usize >= self.g)) {
            return Err(CanonicalError::NotGraded);
        }
        let mut grades = p.terms().map(|(m, _)| table.grades(m));
        let w = match grades.next() {
            None => {
                return Ok(Decomposition { terms: vec![], remainder: Rational::zero(), remainder_monomial: vec![] });
            }
            Some((3, w, 0)) => w,
            Some(_) => return Err(CanonicalError::NotGraded),
        };
        if grades.any(|gr| gr != (3, w, 0)) {
            return Err(CanonicalError::NotGraded);
        }
        let reps = self.cubic_representations(w)?;
        let mut acc: BTreeMap<(u16, usize), Rational> = BTreeMap::new();
        let mut remainder = Rational::zero();
        for (m, c) in p.terms() {
            let idx: Vec<u16> = m.pairs().iter().flat_map(|&(v, e)| std::iter::repeat_n(v as u16, e as usize)).collect();
            let mu = [idx[0], idx[1], idx[2]];
            remainder += c;
            for (xm, r, eta) in &reps.reps[&mu] {
                *acc.entry((*xm, *r)).or_insert_with(Rational::zero) += c * eta;
            }
        }
        let terms = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((m, r), v)| (m, r, v)).collect();
        let remainder_monomial = reps.z.iter().map(|&k| self.nongaps[k as usize]).collect();
        Ok(Decomposition { terms, remainder, remainder_monomial })
    }

    /// Reassembles a decomposition as a polynomial in the `X`-variables.
    pub fn reassemble(&self, d: &Decomposition) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, r, eta) in &d.terms {
            for (c, e) in self.cubic_generator_terms(*m, *r) {
                out.add_term(Monomial::product(&c.map(u32::from)), eta * Rational::from_i64(e));
            }
        }
        if !d.remainder.is_zero() {
            let z: Vec<u32> = d.remainder_monomial.iter().map(|&n| self.x_index(n).unwrap() as u32).collect();
            out.add_term(Monomial::product(&z), d.remainder.clone());
        }
        out
    }

    /// `codim I_r(C⁰)` in the space of `r`-forms, for `r = 2, 3`, computed
    /// weight by weight from the span of the binomials (times `X_m` for `r = 3`).
    pub fn ideal_codimension(&self, r: usize) -> usize {
        let mut total = 0;
        match r {
            2 => {
                // pairs of weight s modulo the binomials leave one class per s
                for s in self.partitions.sums() {
                    let pairs = self.partitions.pairs(s).len();
                    let rank = pairs - 1;
                    let mut m = Matrix::<Rational>::zeros(rank, pairs);
                    for i in 1..pairs {
                        m.set(i - 1, i, Rational::one());
                        m.set(i - 1, 0, -Rational::one());
                    }
                    total += pairs - m.rank();
                }
            }
            3 => {
                for w in self.sg.nongaps_up_to(3 * self.top) {
                    let monos = self.cubics_of_weight(w);
                    let gens = self.cubic_generators(w);
                    let pos: HashMap<Cubic, usize> = monos.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                    let mut a = Matrix::<Rational>::zeros(gens.len(), monos.len());
                    for (j, &(m, rr)) in gens.iter().enumerate() {
                        for (c, e) in self.cubic_generator_terms(m, rr) {
                            let v = a.get(j, pos[&c]).plus(&Rational::from_i64(e));
                            a.set(j, pos[&c], v);
                        }
                    }
                    total += monos.len() - a.rank();
                }
            }
            _ => panic!("codimension is implemented for r = 2, 3"),
        }
        total
    }
}

/// Representations `μ − Z_w = Σ η X_m F⁰_r` for all cubic `μ` of one weight.
#[derive(Debug, Clone)]
pub struct CubicReps {
    pub weight: u32,
    pub z: Cubic,
    pub reps: HashMap<Cubic, Vec<(u16, usize, Rational)>>,
}

/// Output of [`CanonicalIdeal::symbolic_relations`].
#[derive(Debug, Clone)]
pub struct SymbolicRelations {
    pub table: VarTable,
    pub relations: Vec<QuadraticRelation>,
    pub c_vars: BTreeMap<CoeffId, u32>,
}

impl SymbolicRelations {
    /// `F_si` as a polynomial; normalized coefficients are dropped.
    pub fn to_poly(&self, rel: &QuadraticRelation) -> GradedPoly {
        let x = |n: u32| self.table.x_index(n).unwrap();
        let quad = |p: (u32, u32)| Monomial::product(&[x(p.0), x(p.1)]);
        let mut out = GradedPoly::monomial(quad(rel.binomial.0));
        out.add_term(quad(rel.binomial.1), -Rational::one());
        for t in rel.tail.iter().filter(|t| !t.normalized_zero) {
            let m = quad(t.pair).mul(&Monomial::var(self.c_vars[&t.coeff]));
            out.add_term(m, -Rational::one());
        }
        out
    }

    pub fn num_coefficients(&self) -> usize {
        self.c_vars.len()
    }

    pub fn num_normalized(&self) -> usize {
        self.relations.iter().map(|r| r.normalized_zero().count()).sum()
    }
}

/// Partition table with the default choice; see [`build_partitions`].
pub fn hermitian_basis(sg: &Semigroup, r: usize) -> Result<HermitianBasis, CanonicalError> {
    Ok(CanonicalIdeal::new(sg)?.hermitian_basis(r))
}

pub fn binomial_generators(sg: &Semigroup) -> Result<Vec<QuadraticRelation>, CanonicalError> {
    Ok(CanonicalIdeal::new(sg)?.binomial_generators())
}

pub fn symbolic_relations(sg: &Semigroup) -> Result<SymbolicRelations, CanonicalError> {
    CanonicalIdeal::new(sg)?.symbolic_relations()
}

pub fn normalize_selection(sg: &Semigroup) -> Result<BTreeMap<u32, BTreeSet<CoeffId>>, CanonicalError> {
    CanonicalIdeal::new(sg)?.normalize_selection()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n1() -> CanonicalIdeal {
        CanonicalIdeal::new(&Semigroup::new(&[6, 8, 9, 10, 11]).unwrap()).unwrap()
    }

    #[test]
    fn partitions_of_n1() {
        let ci = n1();
        let p = ci.partitions();
        assert_eq!(p.pairs(16), &[(6, 10), (8, 8)]);
        assert_eq!(p.nu(16), 1);
        assert_eq!(p.pairs(12), &[(6, 6), (0, 12)]);
        assert_eq!(p.pairs(18), &[(8, 10), (6, 12), (9, 9)]);
        assert_eq!(p.pairs(20), &[(9, 11), (8, 12), (10, 10)]);
        assert_eq!(p.pairs(24), &[(12, 12)]);
        assert_eq!(p.total_pairs(), 28);
        assert_eq!(ci.relations().len(), 10);
        assert_eq!((0..10).filter(|&r| ci.is_pinned(r)).count(), 5);
    }

    #[test]
    fn hermitian_counts() {
        let ci = n1();
        assert_eq!(ci.hermitian_basis(1).len(), 7);
        assert_eq!(ci.hermitian_basis(2).len(), 18);
        assert_eq!(ci.hermitian_basis(3).len(), 12 * 3 + 1 - 7);
        let l3 = ci.hermitian_basis(3);
        assert_eq!(l3.get(25), Some(&[6, 8, 11][..]));
        for (w, m) in &l3.monomials {
            assert_eq!(m.iter().sum::<u32>(), *w);
            assert_eq!(m.len(), 3);
        }
    }

    #[test]
    fn normalization_counts_n1() {
        let sel = n1().normalize_selection().unwrap();
        let counts: BTreeMap<u32, usize> = sel.iter().map(|(w, s)| (*w, s.len())).filter(|p| p.1 > 0).collect();
        let expected: BTreeMap<u32, usize> =
            [(1, 4), (2, 4), (3, 3), (4, 2), (5, 1), (6, 2), (8, 1), (9, 1), (10, 1), (11, 1), (12, 1)].into();
        assert_eq!(counts, expected);
    }

    #[test]
    fn express_round_trip() {
        let ci = n1();
        // X6 X8 X11 + X9^2 X7? use weight 25 cubics
        let monos = ci.cubics_of_weight(25);
        let mut p = GradedPoly::zero();
        for (k, c) in monos.iter().enumerate() {
            p.add_term(Monomial::product(&c.map(u32::from)), Rational::from_i64(k as i64 + 1));
        }
        let d = ci.express_in_generators(&p).unwrap();
        assert_eq!(ci.reassemble(&d), p);
        assert_eq!(d.remainder, Rational::from_i64((1..=monos.len() as i64).sum()));
    }
}
