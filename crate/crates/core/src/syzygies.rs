//! Linear syzygies `X_{2g−2} F⁰_{s'i'} + Σ ε X_n F⁰_si = 0` with `ε ∈ {−1, 0, 1}`
//! for every binomial other than the pinned `F⁰_{n_i+2g−2, 1}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canonical_ideal::{CanonicalIdeal, Cubic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error("relation {0:?} is one of the pinned relations F_(n_i+2g-2, 1)")]
    DistinguishedRelation((u32, usize)),
}

/// One term `ε X_n F⁰_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SyzygyTerm {
    pub epsilon: i8,
    pub n: u32,
    /// Index into [`CanonicalIdeal::relations`].
    pub relation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syzygy {
    /// Index of `(s', i')`.
    pub target: usize,
    pub terms: Vec<SyzygyTerm>,
}

/// Which construction produced a syzygy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyzygyCase {
    /// `n + 1` is a gap.
    OuterGap,
    /// `q + 1` is a gap.
    InnerGap,
    /// Both `n + 1` and `q + 1` are nongaps.
    Nongaps,
}

/// Builds the syzygy attached to the relation with index `target`.
pub fn build_syzygy(ci: &CanonicalIdeal, target: usize) -> Result<Syzygy, SyzygyError> {
    Ok(build_syzygy_with_case(ci, target)?.0)
}

pub fn build_syzygy_with_case(ci: &CanonicalIdeal, target: usize) -> Result<(Syzygy, SyzygyCase), SyzygyError> {
    if ci.is_pinned(target) {
        return Err(SyzygyError::DistinguishedRelation(ci.relations()[target]));
    }
    let top = ci.top();
    let sg = ci.semigroup();
    let (plus, minus) = ci.binomial(target);
    // Orient as F = X_q X_r − X_m X_n with m < q ≤ r < n; F = sign · F⁰.
    let (inner, outer, sign) = if plus.0 < minus.0 { (minus, plus, -1) } else { (plus, minus, 1) };
    let (q, r) = inner;
    let (m, n) = outer;
    debug_assert!(m < q && q <= r && r < n && n < top);

    // Bracketed binomials as (coefficient, multiplier, plus pair, minus pair);
    // the identity reads X_top F + Σ coeff · X_mult · (plus − minus) = 0.
    let (case, brackets): (SyzygyCase, Vec<(i64, u32, (u32, u32), (u32, u32))>) = if !sg.contains(n + 1) {
        let k = top - n + r;
        (SyzygyCase::OuterGap, vec![(1, n, (m, top), (q, k)), (-1, q, (r, top), (n, k))])
    } else if !sg.contains(q + 1) {
        let k = top - q + m;
        (SyzygyCase::InnerGap, vec![(-1, q, (r, top), (n, k)), (1, n, (m, top), (q, k))])
    } else {
        (
            SyzygyCase::Nongaps,
            vec![
                (1, m, (n, top), (n + 1, top - 1)),
                (-1, top - 1, (q + 1, r), (m, n + 1)),
                (-1, r, (q, top), (q + 1, top - 1)),
            ],
        )
    };
    let mut acc: BTreeMap<(u32, usize), i64> = BTreeMap::new();
    for (coeff, mult, p, mi) in brackets {
        for (rel, e) in ci.binomial_as_relations(p, mi) {
            *acc.entry((mult, rel)).or_insert(0) += sign * coeff * e;
        }
    }
    let terms = acc
        .into_iter()
        .filter(|&(_, e)| e != 0)
        .map(|((n, relation), e)| SyzygyTerm { epsilon: e as i8, n, relation })
        .collect();
    Ok((Syzygy { target, terms }, case))
}

/// All syzygies, one per non-pinned relation, in relation order.
pub fn all_syzygies(ci: &CanonicalIdeal) -> Vec<Syzygy> {
    (0..ci.relations().len())
        .filter(|&r| !ci.is_pinned(r))
        .map(|r| build_syzygy(ci, r).expect("non-pinned relation"))
        .collect()
}

/// Expands `X_{2g−2} F⁰_{target} + Σ ε X_n F⁰_r` and tests it for zero.
pub fn verify_syzygy(ci: &CanonicalIdeal, z: &Syzygy) -> bool {
    let mut acc: BTreeMap<Cubic, i64> = BTreeMap::new();
    let top = ci.x_index(ci.top()).unwrap();
    let mut add = |m: u16, r: usize, e: i64| {
        for (c, s) in ci.cubic_generator_terms(m, r) {
            *acc.entry(c).or_insert(0) += e * s;
        }
    };
    add(top, z.target, 1);
    for t in &z.terms {
        match ci.x_index(t.n) {
            Some(m) => add(m, t.relation, t.epsilon as i64),
            None => return false,
        }
    }
    acc.values().all(|&v| v == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Semigroup;

    #[test]
    fn five_syzygies_for_genus_seven() {
        let ci = CanonicalIdeal::new(&Semigroup::new(&[6, 8, 9, 10, 11]).unwrap()).unwrap();
        let zs = all_syzygies(&ci);
        assert_eq!(zs.len(), 5);
        for z in &zs {
            assert!(verify_syzygy(&ci, z), "{z:?}");
            for t in &z.terms {
                assert!(t.epsilon.abs() == 1);
                assert!(t.n < ci.top());
                let (s, _) = ci.relations()[t.relation];
                let (s2, _) = ci.relations()[z.target];
                assert_eq!(t.n + s, ci.top() + s2);
            }
        }
    }

    #[test]
    fn flipped_sign_fails() {
        let ci = CanonicalIdeal::new(&Semigroup::new(&[6, 8, 9, 10, 11]).unwrap()).unwrap();
        let mut z = all_syzygies(&ci).remove(0);
        z.terms[0].epsilon = -z.terms[0].epsilon;
        assert!(!verify_syzygy(&ci, &z));
    }

    #[test]
    fn pinned_relations_are_rejected() {
        let ci = CanonicalIdeal::new(&Semigroup::new(&[6, 8, 9, 10, 11]).unwrap()).unwrap();
        let r = ci.relation_index(12, 1).unwrap();
        assert_eq!(build_syzygy(&ci, r), Err(SyzygyError::DistinguishedRelation((12, 1))));
    }
}
