//! End-to-end analysis of one semigroup: the classical bounds, `T^{1,−}`,
//! the quadratic cone and optionally the full quasi-cone, plus the table
//! and batch drivers built on top of it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical_ideal::{CanonicalError, CanonicalIdeal, PartitionChoice};
use crate::deformation::{quadratic_cone, reduce_ideal, t1_minus, DeformationError, RhoEngine};
use crate::exact_poly::Rational;
use crate::family::FamilyError;
use crate::krull::{dim_certified_with, Certification, KrullError};
use crate::semigroup::{HypothesisReport, Semigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{generators:?}: {report}")]
    HypothesesViolated { generators: Vec<u32>, report: HypothesisReport },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("line {line}: {source}")]
    Entry { line: usize, source: Box<PipelineError> },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Deformation(DeformationError),
    #[error(transparent)]
    Krull(#[from] KrullError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<DeformationError> for PipelineError {
    fn from(e: DeformationError) -> Self {
        match e {
            DeformationError::Canonical(CanonicalError::HypothesesViolated(report)) => {
                PipelineError::HypothesesViolated { generators: vec![], report }
            }
            e => PipelineError::Deformation(e),
        }
    }
}

impl PipelineError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Entry { source, .. } => source.exit_code(),
            PipelineError::HypothesesViolated { .. } => 2,
            PipelineError::Parse { .. } | PipelineError::InvalidArgument(_) | PipelineError::Semigroup(_) | PipelineError::Json(_) => 3,
            PipelineError::Krull(KrullError::DimensionMismatch { .. })
            | PipelineError::Family(FamilyError::CrosscheckFailure { .. })
            | PipelineError::Family(FamilyError::Krull(KrullError::DimensionMismatch { .. })) => 4,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Everything except `dim_moduli`.
    #[default]
    Quadratic,
    /// Also the dimension of the full quasi-cone. Slow.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub mode: Mode,
    pub certification: Certification,
    pub partition: PartitionChoice,
}

impl AnalyzeOptions {
    pub fn new(mode: Mode) -> Self {
        AnalyzeOptions { mode, ..Default::default() }
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub generators: Vec<u32>,
    pub genus: u32,
    pub weight: u64,
    pub lambda: u32,
    /// `3g − 2 − w`; negative for heavy semigroups.
    pub eh_lower: i64,
    /// `2g − 2 + λ`.
    pub deligne_upper: u32,
    pub dim_t1_minus: u32,
    /// `weight ↦ dim T¹_{−weight}`.
    pub t1_weights: BTreeMap<u32, usize>,
    /// `dim Q − 1`.
    pub dim_proj_Q: u32,
    /// `dim` of the projectivized full quasi-cone; full mode only.
    pub dim_moduli: Option<u32>,
    pub mode: Mode,
    pub timings_ms: BTreeMap<String, u64>,
}

impl BoundsReport {
    /// Equality of everything but the timings.
    pub fn same_values(&self, o: &BoundsReport) -> bool {
        let strip = |r: &BoundsReport| BoundsReport { timings_ms: BTreeMap::new(), ..r.clone() };
        strip(self) == strip(o)
    }

    /// `eh_lower ≤ dim_moduli ≤ dim_proj_Q ≤ deligne_upper`, skipping `dim_moduli` when absent.
    pub fn bounds_ordered(&self) -> bool {
        let q = self.dim_proj_Q as i64;
        let mid = match self.dim_moduli {
            Some(m) => self.eh_lower <= m as i64 && m as i64 <= q,
            None => self.eh_lower <= q,
        };
        mid && self.dim_proj_Q <= self.deligne_upper
    }
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Validates the input and returns the semigroup, or the violated hypotheses.
pub fn admissible_semigroup(gens: &[u32]) -> Result<Semigroup, PipelineError> {
    let sg = Semigroup::new(gens)?;
    let report = sg.validate_hypotheses();
    if !report.passes() {
        return Err(PipelineError::HypothesesViolated { generators: sg.generators().to_vec(), report });
    }
    Ok(sg)
}

pub fn analyze(gens: &[u32], opts: AnalyzeOptions) -> Result<BoundsReport, PipelineError> {
    let start = Instant::now();
    let sg = admissible_semigroup(gens)?;
    let g = sg.genus() as u32;
    let w = sg.weight();
    let lambda = sg.lambda_invariant() as u32;
    let mut timings = BTreeMap::new();

    let t = Instant::now();
    let engine = RhoEngine::new(CanonicalIdeal::with_choice(&sg, opts.partition).map_err(DeformationError::from)?)?;
    let t1 = t1_minus(&engine);
    timings.insert("t1".to_string(), ms(t));

    let t = Instant::now();
    let q = quadratic_cone::<Rational>(&engine, &t1)?;
    let dim_q = dim_certified_with(&q.generators, q.num_vars(), Some(&q.weights()), opts.certification)?;
    timings.insert("quadratic".to_string(), ms(t));

    let dim_moduli = match opts.mode {
        Mode::Quadratic => None,
        Mode::Full => {
            let t = Instant::now();
            let full = reduce_ideal::<Rational>(&engine, &t1)?;
            let d = dim_certified_with(&full.generators, full.num_vars(), Some(&full.weights()), opts.certification)?;
            timings.insert("full".to_string(), ms(t));
            Some(d.saturating_sub(1) as u32)
        }
    };
    timings.insert("total".to_string(), ms(start));

    Ok(BoundsReport {
        generators: sg.generators().to_vec(),
        genus: g,
        weight: w,
        lambda,
        eh_lower: 3 * g as i64 - 2 - w as i64,
        deligne_upper: 2 * g - 2 + lambda,
        dim_t1_minus: t1.dimension() as u32,
        t1_weights: t1.histogram(),
        dim_proj_Q: dim_q.saturating_sub(1) as u32,
        dim_moduli,
        mode: opts.mode,
        timings_ms: timings,
    })
}

/// Runs `f` on a dedicated pool of `jobs` threads, or on the global pool for `None`.
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(f),
    }
}

/// The six semigroups of the reference table, in row order.
pub const TABLE1: [&[u32]; 6] = [
    &[6, 8, 9, 10, 11],
    &[6, 8, 10, 11, 13],
    &[7, 9, 10, 11, 12, 13],
    &[6, 8, 10, 13, 15],
    &[6, 9, 10, 13, 14],
    &[6, 14, 15, 16, 17],
];

/// Quadratic-mode reports for the [`TABLE1`] semigroups, computed concurrently.
pub fn table1(opts: AnalyzeOptions) -> Result<Vec<BoundsReport>, PipelineError> {
    TABLE1.par_iter().map(|g| analyze(g, opts)).collect()
}

/// Plain-text table with one row per report.
pub fn render_table(reports: &[BoundsReport]) -> String {
    let mut out = String::new();
    let full = reports.iter().any(|r| r.dim_moduli.is_some());
    let _ = write!(out, "{:<22} {:>3} {:>4} {:>8} {:>4} {:>7}", "N", "g", "E-H", "dim P(Q)", "Del", "dim T1-");
    if full {
        let _ = write!(out, " {:>6}", "dim M");
    }
    out.push('\n');
    for r in reports {
        let gens: Vec<String> = r.generators.iter().map(u32::to_string).collect();
        let _ = write!(
            out,
            "{:<22} {:>3} {:>4} {:>8} {:>4} {:>7}",
            format!("<{}>", gens.join(",")),
            r.genus,
            r.eh_lower,
            r.dim_proj_Q,
            r.deligne_upper,
            r.dim_t1_minus
        );
        if full {
            match r.dim_moduli {
                Some(m) => {
                    let _ = write!(out, " {m:>6}");
                }
                None => {
                    let _ = write!(out, " {:>6}", "-");
                }
            }
        }
        out.push('\n');
    }
    out
}

/// One input line of a batch file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchEntry {
    /// 1-based line number.
    pub line: usize,
    pub generators: Vec<u32>,
}

/// Parses comma-separated generator lists, one per line; `#` starts a comment
/// and blank lines are ignored.
pub fn parse_batch(text: &str) -> Result<Vec<BatchEntry>, PipelineError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let generators = parse_generators(body).map_err(|message| PipelineError::Parse { line: k + 1, message })?;
        out.push(BatchEntry { line: k + 1, generators });
    }
    Ok(out)
}

/// Parses `6,8,9,10,11`.
pub fn parse_generators(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u32>().map_err(|e| format!("bad generator {t:?}: {e}"))
        })
        .collect()
}

#[derive(Debug)]
pub struct BatchOutcome {
    pub reports: Vec<BoundsReport>,
    /// Entries dropped for violating the hypotheses, with the diagnostic.
    pub skipped: Vec<(usize, String)>,
}

/// Analyzes every entry on at most `jobs` threads, keeping input order.
///
/// Without `skip_invalid` the first entry (in input order) that violates the
/// hypotheses aborts the batch.
pub fn run_batch(
    entries: &[BatchEntry],
    opts: AnalyzeOptions,
    jobs: usize,
    skip_invalid: bool,
) -> Result<BatchOutcome, PipelineError> {
    let results: Vec<Result<BoundsReport, PipelineError>> =
        with_jobs(Some(jobs), || entries.par_iter().map(|e| analyze(&e.generators, opts)).collect());
    let mut outcome = BatchOutcome { reports: Vec::new(), skipped: Vec::new() };
    for (e, r) in entries.iter().zip(results) {
        match r {
            Ok(rep) => outcome.reports.push(rep),
            Err(err @ PipelineError::HypothesesViolated { .. }) if skip_invalid => {
                outcome.skipped.push((e.line, err.to_string()));
            }
            Err(err) => return Err(PipelineError::Entry { line: e.line, source: Box::new(err) }),
        }
    }
    Ok(outcome)
}

pub fn render_json(reports: &[BoundsReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn parse_json(s: &str) -> Result<Vec<BoundsReport>, PipelineError> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let es = parse_batch("# header\n6,8,9,10,11\n\n 6, 8,10,11,13 # row two\n").unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[1], BatchEntry { line: 4, generators: vec![6, 8, 10, 11, 13] });
        assert!(parse_batch("").unwrap().is_empty());
        match parse_batch("6,8\n6,x\n") {
            Err(PipelineError::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn four_five_is_rejected() {
        let err = analyze(&[4, 5], AnalyzeOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("<4,5>"), "{err}");
    }

    #[test]
    fn non_coprime_is_an_input_error() {
        assert_eq!(analyze(&[4, 6], AnalyzeOptions::default()).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn first_table_row() {
        let r = analyze(&[6, 8, 9, 10, 11], AnalyzeOptions::default()).unwrap();
        assert_eq!((r.genus, r.eh_lower, r.deligne_upper, r.dim_t1_minus, r.dim_proj_Q), (7, 12, 13, 17, 13));
        assert_eq!(r.dim_moduli, None);
        assert!(r.bounds_ordered());
        let back = parse_json(&render_json(std::slice::from_ref(&r))).unwrap();
        assert_eq!(back, vec![r]);
    }
}
