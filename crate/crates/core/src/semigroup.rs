//! Numerical semigroups: membership, gaps, genus, symmetry, weight and the
//! λ-invariant, plus the hypothesis check used by the moduli pipeline.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("generators {0:?} are not coprime")]
    NonCoprimeGenerators(Vec<u32>),
    #[error("bound {bound} is smaller than Frobenius number + 1 = {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
}

/// A numerical semigroup `N ⊂ ℕ` with finite complement.
///
/// Membership is stored as a sieve up to `bound`; every integer above the
/// Frobenius number is a nongap, so queries beyond the sieve are answered
/// without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<u32>,
    sieve: Vec<bool>,
    gaps: Vec<u32>,
    frobenius: Option<u32>,
}

impl Semigroup {
    /// Builds the semigroup generated by `gens`, sieving up to
    /// `max(4g - 4, F + 1)` where `F` is the Frobenius number.
    pub fn new(gens: &[u32]) -> Result<Self, SemigroupError> {
        let frob = frobenius_of(gens)?;
        let genus_bound = frob.map_or(0, |f| f as usize + 1);
        // genus ≤ F + 1, so 4(F + 1) covers 4g - 4 without knowing g yet.
        let bound = (4 * genus_bound).max(genus_bound).max(1);
        let mut sg = Self::from_generators(gens, bound)?;
        let g = sg.genus();
        let wanted = (4 * g).saturating_sub(4).max(genus_bound);
        if wanted < sg.bound() {
            sg.sieve.truncate(wanted + 1);
        }
        Ok(sg)
    }

    /// Builds the semigroup generated by `gens` with nongaps enumerated up to
    /// `bound` (inclusive).
    pub fn from_generators(gens: &[u32], bound: usize) -> Result<Self, SemigroupError> {
        let frob = frobenius_of(gens)?;
        let needed = frob.map_or(0, |f| f as usize + 1);
        if bound < needed {
            return Err(SemigroupError::BoundTooSmall { bound, needed });
        }
        let sieve = sieve(gens, bound);
        let gaps: Vec<u32> = (1..=needed as u32)
            .filter(|&n| !sieve[n as usize])
            .collect();
        let mut sg = Semigroup {
            generators: Vec::new(),
            sieve,
            gaps,
            frobenius: frob,
        };
        sg.generators = sg.compute_minimal_generators();
        Ok(sg)
    }

    /// Builds a semigroup from a membership table on `0..table.len()` that is
    /// closed under addition, with every larger integer a nongap.
    fn from_membership(table: &[bool]) -> Self {
        let len = table.len() as u32;
        let gens: Vec<u32> = (1..len)
            .filter(|&n| table[n as usize])
            .chain(len..=2 * len + 1)
            .collect();
        Self::new(&gens).expect("membership tables always describe a numerical semigroup")
    }

    fn compute_minimal_generators(&self) -> Vec<u32> {
        let limit = self.conductor() + self.multiplicity().max(1);
        let mut mins = Vec::new();
        for n in 1..=limit {
            if !self.contains(n) {
                continue;
            }
            let decomposable = (1..=n / 2).any(|a| self.contains(a) && self.contains(n - a));
            if !decomposable {
                mins.push(n);
            }
        }
        mins
    }

    /// Minimal generating set, sorted.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Upper end of the stored sieve.
    pub fn bound(&self) -> usize {
        self.sieve.len() - 1
    }

    pub fn contains(&self, n: u32) -> bool {
        match self.frobenius {
            None => true,
            Some(f) if n > f => true,
            Some(_) => self.sieve[n as usize],
        }
    }

    pub fn contains_i64(&self, n: i64) -> bool {
        n >= 0 && self.contains(n as u32)
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Gap sequence `l_1 < … < l_g`.
    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// The `k`-th gap `l_k`, 1-based as in the usual notation.
    pub fn gap(&self, k: usize) -> u32 {
        self.gaps[k - 1]
    }

    pub fn frobenius(&self) -> Option<u32> {
        self.frobenius
    }

    /// Smallest integer `c` with `c + ℕ ⊂ N`.
    pub fn conductor(&self) -> u32 {
        self.frobenius.map_or(0, |f| f + 1)
    }

    /// Smallest positive nongap `n_1`.
    pub fn multiplicity(&self) -> u32 {
        (1..).find(|&n| self.contains(n)).unwrap()
    }

    /// Nongaps `n ≤ bound`, ascending.
    pub fn nongaps_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// The `i`-th nongap `n_i` (`n_0 = 0`).
    pub fn nongap(&self, i: usize) -> u32 {
        let mut seen = 0;
        let mut n = 0u32;
        loop {
            if self.contains(n) {
                if seen == i {
                    return n;
                }
                seen += 1;
            }
            n += 1;
        }
    }

    /// Number of nongaps `≤ bound`.
    pub fn count_nongaps_up_to(&self, bound: u32) -> usize {
        (0..=bound).filter(|&n| self.contains(n)).count()
    }

    /// A semigroup is symmetric when its largest gap is `2g - 1` and `l` is a
    /// gap exactly when `l_g - l` is a nongap.
    pub fn is_symmetric(&self) -> bool {
        let g = self.genus() as u32;
        match self.frobenius {
            None => false,
            Some(f) => {
                f == 2 * g - 1 && (0..=f).all(|l| self.contains(l) != self.contains(f - l))
            }
        }
    }

    /// Weierstrass weight `w(N) = Σ (l_i - i)`.
    pub fn weight(&self) -> u64 {
        self.gaps
            .iter()
            .enumerate()
            .map(|(i, &l)| u64::from(l) - (i as u64 + 1))
            .sum()
    }

    /// Number of gaps `l` such that `l + n` is a nongap for every positive
    /// nongap `n`. Testing the minimal generators suffices.
    pub fn lambda_invariant(&self) -> usize {
        self.gaps
            .iter()
            .filter(|&&l| self.generators.iter().all(|&m| self.contains(l + m)))
            .count()
    }

    /// Checks `N` symmetric, `3 < n_1 < g` and `N ≠ <4,5>`.
    pub fn validate_hypotheses(&self) -> HypothesisReport {
        let g = self.genus() as u32;
        let n1 = self.multiplicity();
        let mut violations = Vec::new();
        if !self.is_symmetric() {
            violations.push(Hypothesis::Symmetric);
        }
        if !(n1 > 3 && n1 < g) {
            violations.push(Hypothesis::MultiplicityRange);
        }
        if self.generators == [4, 5] {
            violations.push(Hypothesis::NotFourFive);
        }
        HypothesisReport {
            genus: g as usize,
            multiplicity: n1,
            violations,
        }
    }
}

fn frobenius_of(gens: &[u32]) -> Result<Option<u32>, SemigroupError> {
    if gens.is_empty() {
        return Err(SemigroupError::NoGenerators);
    }
    if gens.contains(&0) {
        return Err(SemigroupError::NonPositiveGenerator);
    }
    let d = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    if d != 1 {
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        return Err(SemigroupError::NonCoprimeGenerators(sorted));
    }
    let m = *gens.iter().min().unwrap() as usize;
    // Grow the sieve until `m` consecutive nongaps show up; beyond that run
    // every integer is a nongap.
    let mut size = 4 * m.max(8);
    loop {
        let s = sieve(gens, size);
        let mut run = 0usize;
        let mut last_gap: Option<usize> = None;
        let mut done = false;
        for (n, &member) in s.iter().enumerate() {
            if member {
                run += 1;
                if run >= m {
                    done = true;
                    break;
                }
            } else {
                run = 0;
                last_gap = Some(n);
            }
        }
        if done {
            return Ok(last_gap.map(|f| f as u32));
        }
        size *= 2;
    }
}

fn sieve(gens: &[u32], bound: usize) -> Vec<bool> {
    let mut s = vec![false; bound + 1];
    s[0] = true;
    for n in 1..=bound {
        s[n] = gens
            .iter()
            .any(|&m| (m as usize) <= n && s[n - m as usize]);
    }
    s
}

impl std::fmt::Display for Semigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(u32::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    Symmetric,
    MultiplicityRange,
    NotFourFive,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Hypothesis::Symmetric => write!(f, "N symmetric"),
            Hypothesis::MultiplicityRange => write!(f, "3 < n_1 < g"),
            Hypothesis::NotFourFive => write!(f, "N ≠ <4,5>"),
        }
    }
}

/// Outcome of [`Semigroup::validate_hypotheses`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub genus: usize,
    pub multiplicity: u32,
    pub violations: Vec<Hypothesis>,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passes() {
            return write!(f, "all hypotheses hold");
        }
        let names: Vec<String> = self.violations.iter().map(|h| h.to_string()).collect();
        write!(f, "violated: {}", names.join(", "))
    }
}

/// All symmetric semigroups of genus `g`, as sorted minimal generating sets.
///
/// For each `l = 1..g-1` exactly one of `l`, `2g-1-l` is a nongap, so there
/// are at most `2^(g-1)` candidates to test for closure.
pub fn symmetric_semigroups(g: usize) -> Vec<Semigroup> {
    if g == 0 {
        return vec![];
    }
    let f = 2 * g - 1;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (g - 1)) {
        let mut member = vec![false; f + 1];
        member[0] = true;
        for l in 1..g {
            let low_is_nongap = mask >> (l - 1) & 1 == 1;
            member[l] = low_is_nongap;
            member[f - l] = !low_is_nongap;
        }
        let closed = (1..=f).all(|a| {
            !member[a] || (a..=f - a).all(|b| !member[b] || a + b > f || member[a + b])
        });
        if closed && member[1..f].iter().filter(|&&m| !m).count() + 1 == g {
            out.push(Semigroup::from_membership(&member));
        }
    }
    out.sort_by(|a, b| a.generators().cmp(b.generators()));
    out
}
