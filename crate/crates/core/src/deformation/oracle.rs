//! Independent computation of the negatively graded `T¹` of the semigroup
//! ring `k[N] = k[x_1, …, x_e] / I` from a minimal binomial presentation.
//!
//! All graded pieces of `k[N]` are one-dimensional, so everything reduces to
//! fibre graphs: the monomials of a given weight, joined by the moves
//! `x^γ (x^α − x^β)` of the generators. Syzygies of the generators in weight
//! `D` are the cycles of that graph, and a cycle constrains a homomorphism
//! `φ(f_j) = λ_j t^{deg f_j + d}` through the signed number of times it uses
//! each generator.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::Zero;

use crate::exact_poly::{Matrix, Rational};
use crate::semigroup::Semigroup;

/// A binomial `x^α − x^β` of weight `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
    pub degree: u32,
}

fn monomials_of_weight(gens: &[u32], w: u32) -> Vec<Vec<u32>> {
    fn rec(gens: &[u32], k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == gens.len() {
            if left.is_multiple_of(gens[k]) {
                cur.push(left / gens[k]);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for e in 0..=left / gens[k] {
            cur.push(e);
            rec(gens, k + 1, left - e * gens[k], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, w, &mut Vec::new(), &mut out);
    out
}

/// Edges of the fibre graph in weight `w`: `(from, to, generator)` for every
/// `x^γ f_j` of weight `w`.
fn fibre_edges(gens: &[u32], fibre: &HashMap<Vec<u32>, usize>, w: u32, binomials: &[Binomial]) -> Vec<(usize, usize, usize)> {
    let mut edges = Vec::new();
    for (j, f) in binomials.iter().enumerate() {
        if f.degree > w {
            continue;
        }
        for gamma in monomials_of_weight(gens, w - f.degree) {
            let a: Vec<u32> = gamma.iter().zip(&f.plus).map(|(x, y)| x + y).collect();
            let b: Vec<u32> = gamma.iter().zip(&f.minus).map(|(x, y)| x + y).collect();
            edges.push((fibre[&a], fibre[&b], j));
        }
    }
    edges
}

fn components(n: usize, edges: &[(usize, usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for &(a, b, _) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Minimal binomial generators of the toric ideal of `N` (in its minimal
/// generators), found weight by weight: each weight contributes one binomial
/// per extra connected component of its fibre graph.
pub fn minimal_presentation(sg: &Semigroup) -> Vec<Binomial> {
    let gens = sg.generators().to_vec();
    let f = sg.frobenius().unwrap_or(0);
    let max_gen = *gens.iter().max().unwrap();
    // Generous search range; completeness is re-checked by fibre connectivity
    // in `cycle_constraints`.
    let bound = 2 * (f + max_gen) + 2;
    let mut binomials: Vec<Binomial> = Vec::new();
    for w in 1..=bound {
        let monos = monomials_of_weight(&gens, w);
        if monos.len() < 2 {
            continue;
        }
        // Two monomials sharing a variable differ by an element of (x)·I, so
        // the new generators in weight w join the classes of this relation.
        let mut edges = Vec::new();
        for i in 0..gens.len() {
            let mut with_i = (0..monos.len()).filter(|&a| monos[a][i] > 0);
            if let Some(first) = with_i.next() {
                edges.extend(with_i.map(|b| (first, b, 0)));
            }
        }
        let comp = components(monos.len(), &edges);
        let mut reps: Vec<usize> = comp.iter().copied().filter(|&c| comp[c] == c).collect();
        reps.sort_unstable();
        reps.dedup();
        for pair in reps.windows(2) {
            binomials.push(Binomial { plus: monos[pair[1]].clone(), minus: monos[pair[0]].clone(), degree: w });
        }
    }
    binomials
}

/// Echelon basis of a row space over the rationals, grown one row at a time.
struct RowSpace {
    rows: Vec<(usize, Vec<Rational>)>,
    seen: HashSet<Vec<i64>>,
    width: usize,
}

impl RowSpace {
    fn new(width: usize) -> Self {
        RowSpace { rows: Vec::new(), seen: HashSet::new(), width }
    }

    fn full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn insert(&mut self, v: Vec<i64>) {
        let lead = v.iter().position(|&x| x != 0).expect("nonzero row");
        let key = if v[lead] < 0 { v.iter().map(|x| -x).collect() } else { v };
        if self.full() || !self.seen.insert(key.clone()) {
            return;
        }
        let mut r: Vec<Rational> = key.iter().map(|&x| Rational::from_integer(x.into())).collect();
        for (p, b) in &self.rows {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[p].recip();
            for x in r.iter_mut() {
                *x *= &inv;
            }
            // keep the basis fully reduced so each pivot column is clean
            for (_, b) in self.rows.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x -= &f * y;
                    }
                }
            }
            self.rows.push((p, r));
        }
    }
}

/// A basis of the span of the generator-usage vectors of all fibre-graph
/// cycles in weights up to `bound`.
fn cycle_constraints(gens: &[u32], binomials: &[Binomial], bound: u32) -> Vec<Vec<Rational>> {
    let k = binomials.len();
    let mut out = RowSpace::new(k);
    for w in 1..=bound {
        let monos = monomials_of_weight(gens, w);
        if monos.len() < 2 {
            continue;
        }
        let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let edges = fibre_edges(gens, &index, w, binomials);
        let comp = components(monos.len(), &edges);
        assert!(comp.iter().all(|&c| c == 0), "presentation misses a relation in weight {w}");
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); monos.len()];
        for (e, &(a, b, _)) in edges.iter().enumerate() {
            adj[a].push((b, e, 1));
            adj[b].push((a, e, -1));
        }
        // spanning forest with potentials; every non-tree edge closes a cycle
        let mut potential: Vec<Option<Vec<i64>>> = vec![None; monos.len()];
        let mut tree_edge = vec![false; edges.len()];
        for root in 0..monos.len() {
            if potential[root].is_some() {
                continue;
            }
            potential[root] = Some(vec![0; k]);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let pu = potential[u].clone().unwrap();
                for &(v, e, sign) in &adj[u] {
                    if potential[v].is_none() {
                        let mut pv = pu.clone();
                        pv[edges[e].2] += sign;
                        potential[v] = Some(pv);
                        tree_edge[e] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        for (e, &(a, b, j)) in edges.iter().enumerate() {
            if tree_edge[e] {
                continue;
            }
            let pa = potential[a].as_ref().unwrap();
            let pb = potential[b].as_ref().unwrap();
            let mut v: Vec<i64> = pa.iter().zip(pb).map(|(x, y)| x - y).collect();
            v[j] += 1;
            if v.iter().any(|&x| x != 0) {
                out.insert(v);
            }
        }
    }
    out.rows.into_iter().map(|r| r.1).collect()
}

/// `weight ↦ dim T¹_{−weight}` for the negatively graded part of `T¹_{k[N]}`.
pub fn t1_oracle(sg: &Semigroup) -> BTreeMap<u32, usize> {
    let gens = sg.generators().to_vec();
    let binomials = minimal_presentation(sg);
    let max_deg = binomials.iter().map(|b| b.degree).max().unwrap_or(0);
    let constraints = cycle_constraints(&gens, &binomials, 3 * max_deg);
    let mut out = BTreeMap::new();
    for w in 1..=max_deg {
        let allowed: Vec<usize> = (0..binomials.len())
            .filter(|&j| binomials[j].degree >= w && sg.contains(binomials[j].degree - w))
            .collect();
        if allowed.is_empty() {
            continue;
        }
        let restrict = |row: &[i64]| allowed.iter().map(|&j| row[j]).collect::<Vec<i64>>();
        let hom_rank = {
            let rows: Vec<Vec<Rational>> =
                constraints.iter().map(|r| allowed.iter().map(|&j| r[j].clone()).collect()).collect();
            if rows.is_empty() { 0 } else { Matrix::from_rows(rows, allowed.len()).rank() }
        };
        let der: Vec<Vec<i64>> = gens
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m >= w && sg.contains(m - w))
            .map(|(i, _)| {
                let row: Vec<i64> = binomials.iter().map(|b| b.plus[i] as i64 - b.minus[i] as i64).collect();
                restrict(&row)
            })
            .collect();
        let der_rank = if der.is_empty() { 0 } else { Matrix::<Rational>::from_i64(&der).rank() };
        let dim = allowed.len() - hom_rank - der_rank;
        if dim > 0 {
            out.insert(w, dim);
        }
    }
    out
}
