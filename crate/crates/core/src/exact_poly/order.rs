//! The monomial order on X-monomials used for the canonical ideal.

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("exponent vectors have lengths {left} and {right}, but {weights} weights were given")]
    MismatchedTables { left: usize, right: usize, weights: usize },
}

/// Compares X-monomials given as dense exponent vectors `i_0, …, i_{g-1}`
/// over variables of the given weights `n_0 < … < n_{g-1}`.
///
/// The order is lexicographic on `(Σ i_k, Σ n_k i_k, −i_0, −i_{g−1}, …, −i_1)`.
pub fn monomial_compare(a: &[u32], b: &[u32], weights: &[u32]) -> Result<Ordering, OrderError> {
    if a.len() != weights.len() || b.len() != weights.len() {
        return Err(OrderError::MismatchedTables { left: a.len(), right: b.len(), weights: weights.len() });
    }
    Ok(order_key(a, weights).cmp(&order_key(b, weights)))
}

fn order_key(e: &[u32], weights: &[u32]) -> (u64, u64, Vec<i64>) {
    let deg = e.iter().map(|&x| x as u64).sum();
    let wt = e.iter().zip(weights).map(|(&x, &w)| x as u64 * w as u64).sum();
    let mut tail = Vec::with_capacity(e.len());
    if let Some(&first) = e.first() {
        tail.push(-(first as i64));
        tail.extend(e[1..].iter().rev().map(|&x| -(x as i64)));
    }
    (deg, wt, tail)
}
