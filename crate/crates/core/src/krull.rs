//! Buchberger's algorithm over any [`Field`] and Krull dimension from the
//! initial ideal.

use std::cmp::Ordering;

use thiserror::Error;

use crate::exact_poly::{Field, FpA, FpB, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KrullError {
    #[error("dimension computations disagree: {first} vs {second}")]
    DimensionMismatch { first: usize, second: usize },
    #[error("a coefficient denominator vanishes modulo {prime}")]
    CoefficientOverflow { prime: u64 },
    #[error("{0} variables exceed the supported 64")]
    TooManyVariables(usize),
}

/// Graded reverse lexicographic order, optionally with positive variable weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    WeightedGrevlex(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Mono {
    e: Box<[u16]>,
    deg: u32,
    sev: u64,
}

impl Mono {
    fn new(e: Box<[u16]>, w: &[u32]) -> Self {
        let deg = e.iter().zip(w).map(|(&x, &wi)| x as u32 * wi).sum();
        let sev = e.iter().enumerate().filter(|p| *p.1 > 0).fold(0u64, |s, (i, _)| s | 1 << (i % 64));
        Mono { e, deg, sev }
    }

    fn divides(&self, o: &Mono) -> bool {
        self.sev & !o.sev == 0 && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    fn lcm(&self, o: &Mono, w: &[u32]) -> Mono {
        Mono::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| *a.max(b)).collect(), w)
    }

    fn quotient(&self, d: &Mono, w: &[u32]) -> Mono {
        Mono::new(self.e.iter().zip(d.e.iter()).map(|(a, b)| a - b).collect(), w)
    }

    fn mul(&self, o: &Mono, w: &[u32]) -> Mono {
        Mono::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| a + b).collect(), w)
    }

    fn coprime(&self, o: &Mono) -> bool {
        self.sev & o.sev == 0 || self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Weighted grevlex: larger degree wins, then the smaller exponent in
    /// the last differing variable wins.
    fn cmp(&self, o: &Mono) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..self.e.len()).rev() {
                if self.e[i] != o.e[i] {
                    return o.e[i].cmp(&self.e[i]);
                }
            }
            Ordering::Equal
        })
    }
}

/// Terms sorted by decreasing monomial.
type DPoly<F> = Vec<(Mono, F)>;

struct Ctx {
    w: Vec<u32>,
}

impl Ctx {
    fn from_poly<F: Field>(&self, p: &Poly<F>) -> DPoly<F> {
        let n = self.w.len();
        let mut out: DPoly<F> = p
            .terms()
            .map(|(m, c)| {
                let e: Box<[u16]> = m.to_dense(n).into_iter().map(|x| x as u16).collect();
                (Mono::new(e, &self.w), c.clone())
            })
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    fn to_poly<F: Field>(&self, p: &DPoly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        for (m, c) in p {
            let e: Vec<u32> = m.e.iter().map(|&x| x as u32).collect();
            out.add_term(Monomial::from_dense(&e), c.clone());
        }
        out
    }

    /// `p − c · x^m · q`
    fn sub_mul<F: Field>(&self, p: &DPoly<F>, c: &F, m: &Mono, q: &DPoly<F>) -> DPoly<F> {
        let mut out = Vec::with_capacity(p.len() + q.len());
        let mut qi = q.iter().map(|(qm, qc)| (qm.mul(m, &self.w), qc.times(c))).peekable();
        let mut pi = p.iter().peekable();
        loop {
            match (pi.peek(), qi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(pi.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = qi.next().unwrap();
                    out.push((m, c.negated()));
                }
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Greater => out.push(pi.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = qi.next().unwrap();
                        out.push((m, c.negated()));
                    }
                    Ordering::Equal => {
                        let (am, ac) = pi.next().unwrap();
                        let (_, bc) = qi.next().unwrap();
                        let v = ac.minus(&bc);
                        if !v.is_zero() {
                            out.push((am.clone(), v));
                        }
                    }
                },
            }
        }
        out
    }

    fn make_monic<F: Field>(&self, p: &mut DPoly<F>) {
        if let Some((_, c)) = p.first() {
            let inv = c.inverse();
            for t in p.iter_mut() {
                t.1 = t.1.times(&inv);
            }
        }
    }

    /// Full reduction of `p` by the monic polynomials `basis`.
    fn reduce<F: Field>(&self, mut p: DPoly<F>, basis: &[&DPoly<F>]) -> DPoly<F> {
        let mut done: DPoly<F> = Vec::new();
        while !p.is_empty() {
            let (lm, lc) = (&p[0].0, &p[0].1);
            let red = basis.iter().find(|g| g[0].0.divides(lm));
            match red {
                Some(g) => {
                    let q = lm.quotient(&g[0].0, &self.w);
                    let c = lc.clone();
                    p = self.sub_mul(&p, &c, &q, g);
                }
                None => {
                    done.push(p.remove(0));
                }
            }
        }
        done
    }
}

/// A reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub generators: Vec<Poly<F>>,
    leading: Vec<Vec<u32>>,
}

impl<F: Field> GroebnerBasis<F> {
    /// Leading exponent vectors, one per generator.
    pub fn leading_exponents(&self) -> &[Vec<u32>] {
        &self.leading
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `nvars` variables.
///
/// Pairs are processed by smallest lcm degree; the Gebauer–Möller criteria
/// discard redundant pairs.
pub fn buchberger<F: Field>(gens: &[Poly<F>], nvars: usize, order: MonomialOrder) -> GroebnerBasis<F> {
    let w = match &order {
        MonomialOrder::Grevlex => vec![1; nvars],
        MonomialOrder::WeightedGrevlex(w) => {
            assert_eq!(w.len(), nvars, "one weight per variable");
            assert!(w.iter().all(|&x| x > 0), "weights must be positive");
            w.clone()
        }
    };
    let ctx = Ctx { w };
    let mut polys: Vec<DPoly<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<DPoly<F>> = gens.iter().map(|g| ctx.from_poly(g)).filter(|g| !g.is_empty()).collect();
    input.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    for g in input {
        let basis: Vec<&DPoly<F>> = polys.iter().zip(&active).filter(|p| *p.1).map(|p| p.0).collect();
        let mut h = ctx.reduce(g, &basis);
        if h.is_empty() {
            continue;
        }
        ctx.make_monic(&mut h);
        insert(&ctx, &mut polys, &mut active, &mut pairs, h);
    }
    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].lcm.cmp(&pairs[b].lcm).then(a.cmp(&b)))
            .unwrap();
        let p = pairs.swap_remove(k);
        let (f, g) = (&polys[p.i], &polys[p.j]);
        let mf = p.lcm.quotient(&f[0].0, &ctx.w);
        let mg = p.lcm.quotient(&g[0].0, &ctx.w);
        let sf = ctx.sub_mul(&Vec::new(), &F::one().negated(), &mf, f);
        let s = ctx.sub_mul(&sf, &F::one(), &mg, g);
        let basis: Vec<&DPoly<F>> = polys.iter().zip(&active).filter(|p| *p.1).map(|p| p.0).collect();
        let mut h = ctx.reduce(s, &basis);
        if h.is_empty() {
            continue;
        }
        ctx.make_monic(&mut h);
        insert(&ctx, &mut polys, &mut active, &mut pairs, h);
    }
    // interreduce the active set
    let mut basis: Vec<DPoly<F>> = polys.into_iter().zip(active).filter(|p| p.1).map(|p| p.0).collect();
    basis.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    let mut reduced: Vec<DPoly<F>> = Vec::new();
    for k in 0..basis.len() {
        let others: Vec<&DPoly<F>> = basis.iter().enumerate().filter(|(j, _)| *j != k).map(|p| p.1).collect();
        let mut head = vec![basis[k][0].clone()];
        let tail = ctx.reduce(basis[k][1..].to_vec(), &others);
        head.extend(tail);
        reduced.push(head);
    }
    let leading = reduced.iter().map(|p| p[0].0.e.iter().map(|&x| x as u32).collect()).collect();
    GroebnerBasis { nvars, order, generators: reduced.iter().map(|p| ctx.to_poly(p)).collect(), leading }
}

fn insert<F: Field>(ctx: &Ctx, polys: &mut Vec<DPoly<F>>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: DPoly<F>) {
    let hi = polys.len();
    let lh = h[0].0.clone();
    let old: Vec<usize> = (0..polys.len()).filter(|&k| active[k]).collect();
    let mut c: Vec<Pair> = old
        .iter()
        .map(|&k| Pair { i: k, j: hi, lcm: lh.lcm(&polys[k][0].0, &ctx.w) })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = lh.coprime(&polys[p.i][0].0);
        if coprime || !c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm)) {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !lh.coprime(&polys[p.i][0].0)).collect();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(&polys[p.i][0].0, &ctx.w) != p.lcm
            && lh.lcm(&polys[p.j][0].0, &ctx.w) != p.lcm)
    });
    pairs.extend(e);
    for k in old {
        if lh.divides(&polys[k][0].0) {
            active[k] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Krull dimension of `k[x_1..x_n]/I` from the leading monomials of a
/// Gröbner basis: `n` minus the size of a smallest set of variables meeting
/// every leading monomial.
pub fn krull_dim<F: Field>(gb: &GroebnerBasis<F>) -> usize {
    krull_dim_from_leading(gb.leading_exponents(), gb.nvars)
}

pub fn krull_dim_from_leading(leading: &[Vec<u32>], nvars: usize) -> usize {
    if leading.iter().any(|e| e.iter().all(|&x| x == 0)) {
        // unit ideal; report dimension 0 of the empty quotient
        return 0;
    }
    let mut supports: Vec<u64> = leading
        .iter()
        .map(|e| e.iter().enumerate().filter(|p| *p.1 > 0).fold(0u64, |s, (i, _)| s | 1 << i))
        .collect();
    supports.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|&m| m & !s == 0) {
            minimal.push(s);
        }
    }
    nvars - min_hitting_set(&minimal, 0, nvars)
}

fn min_hitting_set(sets: &[u64], chosen: u64, best: usize) -> usize {
    let size = chosen.count_ones() as usize;
    if size >= best {
        return best;
    }
    let unhit: Vec<u64> = sets.iter().copied().filter(|&s| s & chosen == 0).collect();
    let Some(&pick) = unhit.iter().min_by_key(|s| s.count_ones()) else {
        return size;
    };
    // every remaining set needs its own variable at least while they are disjoint
    let mut lower = 0;
    let mut used = 0u64;
    for &s in &unhit {
        if s & used == 0 {
            lower += 1;
            used |= s;
        }
    }
    if size + lower >= best {
        return best;
    }
    let mut best = best;
    let mut bits = pick;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        best = best.min(min_hitting_set(sets, chosen | 1 << v, best));
    }
    best
}

/// Krull dimension of the ideal generated by `gens` in `nvars` variables.
pub fn ideal_dimension<F: Field>(gens: &[Poly<F>], nvars: usize, order: MonomialOrder) -> usize {
    krull_dim(&buchberger(gens, nvars, order))
}

fn reduce_mod<F: Field>(gens: &[Poly<Rational>]) -> Result<Vec<Poly<F>>, KrullError> {
    gens.iter()
        .map(|g| {
            let mut out = Poly::zero();
            for (m, c) in g.terms() {
                let v = F::from_rational(c).ok_or(KrullError::CoefficientOverflow { prime: F::characteristic() })?;
                out.add_term(m.clone(), v);
            }
            Ok(out)
        })
        .collect()
}

fn reversed(gens: &[Poly<Rational>], nvars: usize) -> Vec<Poly<Rational>> {
    gens.iter().map(|g| g.rename(|v| (nvars as u32 - 1) - v)).collect()
}

/// How [`dim_certified_with`] obtains its two independent dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Certification {
    /// Rationals for up to 20 variables, two primes above that.
    #[default]
    Auto,
    /// Over the rationals, in the declared and in the reversed variable order.
    Rational,
    /// Modulo `2^31 − 1` and `2^31 − 19`.
    TwoPrimes,
}

/// Krull dimension computed twice and accepted only when both agree.
///
/// Up to 20 variables: over the rationals in the declared order and in the
/// reversed order. Beyond that: modulo two primes above `2^30`.
/// `weights` selects a weighted grevlex order (useful for quasi-homogeneous
/// ideals); the reversed run reverses the weights along with the variables.
pub fn dim_certified(gens: &[Poly<Rational>], nvars: usize, weights: Option<&[u32]>) -> Result<usize, KrullError> {
    dim_certified_with(gens, nvars, weights, Certification::Auto)
}

pub fn dim_certified_with(
    gens: &[Poly<Rational>],
    nvars: usize,
    weights: Option<&[u32]>,
    how: Certification,
) -> Result<usize, KrullError> {
    if nvars > 64 {
        return Err(KrullError::TooManyVariables(nvars));
    }
    let order = |rev: bool| match weights {
        None => MonomialOrder::Grevlex,
        Some(w) => {
            let mut w = w.to_vec();
            if rev {
                w.reverse();
            }
            MonomialOrder::WeightedGrevlex(w)
        }
    };
    let rational = match how {
        Certification::Auto => nvars <= 20,
        Certification::Rational => true,
        Certification::TwoPrimes => false,
    };
    let (first, second) = if rational {
        let a = ideal_dimension(gens, nvars, order(false));
        let b = ideal_dimension(&reversed(gens, nvars), nvars, order(true));
        (a, b)
    } else {
        let a = ideal_dimension(&reduce_mod::<FpA>(gens)?, nvars, order(false));
        let b = ideal_dimension(&reduce_mod::<FpB>(gens)?, nvars, order(false));
        (a, b)
    };
    if first != second {
        return Err(KrullError::DimensionMismatch { first, second });
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn p(terms: &[(i64, &[u32])]) -> Poly<Q> {
        let mut out = Poly::zero();
        for (c, vars) in terms {
            out.add_term(Monomial::product(vars), Q::from_i64(*c));
        }
        out
    }

    #[test]
    fn trivial_ideals() {
        let gb = buchberger::<Q>(&[], 3, MonomialOrder::Grevlex);
        assert!(gb.generators.is_empty());
        assert_eq!(krull_dim(&gb), 3);
        let xy = p(&[(1, &[0, 1])]);
        let gb = buchberger(std::slice::from_ref(&xy), 2, MonomialOrder::Grevlex);
        assert_eq!(gb.generators, vec![xy]);
        assert_eq!(krull_dim(&gb), 1);
    }

    #[test]
    fn twisted_cubic() {
        // y^2 - xz, yz - xw, z^2 - yw  (x=0,y=1,z=2,w=3)
        let gens = [
            p(&[(1, &[1, 1]), (-1, &[0, 2])]),
            p(&[(1, &[1, 2]), (-1, &[0, 3])]),
            p(&[(1, &[2, 2]), (-1, &[1, 3])]),
        ];
        assert_eq!(dim_certified(&gens, 4, None), Ok(2));
        assert_eq!(dim_certified(&gens, 4, Some(&[3, 2, 1, 1])), Ok(2));
    }

    #[test]
    fn unit_ideal() {
        let gens = [p(&[(1, &[0]), (-1, &[])]), p(&[(1, &[0])])];
        let gb = buchberger(&gens, 1, MonomialOrder::Grevlex);
        assert_eq!(gb.generators.len(), 1);
        assert_eq!(krull_dim(&gb), 0);
    }

    #[test]
    fn hitting_sets() {
        // x*y, y*z, z*w in 4 vars: minimum cover {y, z} → dim 2
        assert_eq!(krull_dim_from_leading(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]], 4), 2);
        assert_eq!(krull_dim_from_leading(&[], 5), 5);
    }
}
