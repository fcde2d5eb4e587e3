//! k-noncrossing RNA structures with arc-length at least 3.
//!
//! Structures are counted by inclusion-exclusion over partial matchings:
//!
//! ```text
//! S_k(n)      = sum_b (-1)^b lambda(n, b) T_k(n - 2b)
//! S_k(n, ell) = sum_b (-1)^b lambda(n, b) f_k(n - 2b, ell)
//! ```
//!
//! where the weights satisfy
//! `lambda(n,b) = lambda(n-1,b) + lambda(n-2,b-1) + lambda(n-3,b-1) + lambda(n-4,b-2)`
//! with `lambda(n,0) = 1` and `lambda(n,b) = 0` outside `0 <= 2b <= n`.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::count::Count;
use crate::counting::{binomial, partial_matching_totals, perfect_matching_counts};
use crate::error::{invalid, Result};

/// Inclusion-exclusion weights `lambda(n, b)` for `n <= max_n`.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    rows: Vec<Vec<BigUint>>,
}

fn lambda_row(prev: &[&[BigUint]; 4], n: usize) -> Vec<BigUint> {
    // prev[i] is row n-1-i, or empty when that row does not exist
    let get = |i: usize, b: isize| -> Option<&BigUint> {
        if b < 0 {
            None
        } else {
            prev[i].get(b as usize)
        }
    };
    let mut row = Vec::with_capacity(n / 2 + 1);
    row.push(BigUint::one());
    for b in 1..=(n / 2) as isize {
        let mut v = BigUint::zero();
        for term in [get(0, b), get(1, b - 1), get(2, b - 1), get(3, b - 2)]
            .into_iter()
            .flatten()
        {
            v += term;
        }
        row.push(v);
    }
    row
}

/// Streams the rows of the lambda table in order of `n`.
struct LambdaRows {
    window: VecDeque<Vec<BigUint>>,
    n: usize,
}

impl LambdaRows {
    fn new() -> Self {
        LambdaRows {
            window: VecDeque::with_capacity(4),
            n: 0,
        }
    }
}

impl Iterator for LambdaRows {
    type Item = Vec<BigUint>;

    fn next(&mut self) -> Option<Vec<BigUint>> {
        let empty: &[BigUint] = &[];
        let mut prev = [empty; 4];
        for (i, row) in self.window.iter().rev().enumerate() {
            prev[i] = row;
        }
        let row = lambda_row(&prev, self.n);
        if self.window.len() == 4 {
            self.window.pop_front();
        }
        self.window.push_back(row.clone());
        self.n += 1;
        Some(row)
    }
}

impl LambdaTable {
    pub fn build(max_n: usize) -> Self {
        LambdaTable {
            rows: LambdaRows::new().take(max_n + 1).collect(),
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `lambda(n, b)`; zero outside the support `0 <= 2b <= n`.
    pub fn get(&self, n: usize, b: i64) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        let zero = ZERO.get_or_init(BigUint::zero);
        if b < 0 {
            return zero;
        }
        self.rows
            .get(n)
            .and_then(|row| row.get(b as usize))
            .unwrap_or(zero)
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }
}

/// Single weight `lambda(n, b)`.
pub fn lambda(n: usize, b: i64) -> Count {
    if b < 0 || 2 * b as usize > n {
        return Count::zero();
    }
    let row = LambdaRows::new().nth(n).expect("infinite iterator");
    Count::from(row[b as usize].clone())
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(invalid(format!("structures need k >= 3, got {k}")));
    }
    Ok(())
}

fn into_count(v: BigInt) -> Count {
    match v.sign() {
        Sign::Minus => panic!("inclusion-exclusion produced a negative count: {v}"),
        _ => Count::from(v.magnitude().clone()),
    }
}

fn alternating_sum(weights: &[BigUint], terms: impl Fn(usize) -> BigUint) -> BigInt {
    let mut acc = BigInt::zero();
    for (b, w) in weights.iter().enumerate() {
        let t = BigInt::from_biguint(Sign::Plus, w * terms(b));
        if b % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `S_{k,3}(n)` for every `n <= n_max`.
pub fn structure_counts(k: usize, n_max: usize) -> Result<Vec<Count>> {
    check_k(k)?;
    let totals = partial_matching_totals(k, n_max)?;
    Ok(LambdaRows::new()
        .take(n_max + 1)
        .enumerate()
        .map(|(n, row)| into_count(alternating_sum(&row, |b| totals[n - 2 * b].clone())))
        .collect())
}

/// Number of k-noncrossing structures on `n` vertices with arc-length >= 3.
pub fn s_k3(k: usize, n: usize) -> Result<Count> {
    Ok(structure_counts(k, n)?.pop().expect("nonempty"))
}

/// Structures on `n` vertices with exactly `ell` isolated vertices.
pub fn s_k3_by_isolated(k: usize, n: usize, ell: usize) -> Result<Count> {
    check_k(k)?;
    if ell > n {
        return Err(invalid(format!("ell = {ell} exceeds n = {n}")));
    }
    Ok(isolated_histogram(k, n)?.swap_remove(ell))
}

/// `S_{k,3}(n, ell)` for `ell = 0..=n`.
pub fn isolated_histogram(k: usize, n: usize) -> Result<Vec<Count>> {
    check_k(k)?;
    let f = perfect_matching_counts(k, n)?;
    let table = LambdaTable::build(n);
    let row = table.row(n);
    Ok((0..=n)
        .map(|ell| {
            into_count(alternating_sum(row, |b| {
                let m = n - 2 * b;
                if ell > m {
                    BigUint::zero()
                } else {
                    binomial(m as u64, ell as u64) * &f[m - ell]
                }
            }))
        })
        .collect())
}

/// A structure count tagged with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCount {
    pub k: usize,
    pub n: usize,
    pub ell: Option<usize>,
    pub count: Count,
}

impl StructureCount {
    pub fn compute(k: usize, n: usize, ell: Option<usize>) -> Result<Self> {
        let count = match ell {
            Some(l) => s_k3_by_isolated(k, n, l)?,
            None => s_k3(k, n)?,
        };
        Ok(StructureCount { k, n, ell, count })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(4, 1), 5);
        assert_eq!(lambda(8, 4), 5);
        assert_eq!(lambda(3, 2), 0);
        assert_eq!(lambda(5, -1), 0);
        assert_eq!(lambda(0, 0), 1);
        assert_eq!(lambda(1, 1), 0);
    }

    #[test]
    fn lambda_table_closure() {
        let t = LambdaTable::build(200);
        for n in 0..=200 {
            assert_eq!(*t.get(n, 0), BigUint::one());
        }
        for n in 2..=200usize {
            assert_eq!(*t.get(n, 1), BigUint::from(2 * n - 3));
        }
        for n in 4..=200 {
            for b in 0..=(n as i64 / 2) {
                if b == 0 {
                    continue;
                }
                let rhs = t.get(n - 1, b) + t.get(n - 2, b - 1) + t.get(n - 3, b - 1) + t.get(n - 4, b - 2);
                assert_eq!(*t.get(n, b), rhs, "n = {n}, b = {b}");
            }
        }
        for b in 2..=100usize {
            let fib = t.get(2 * b - 2, b as i64 - 1) + t.get(2 * b - 4, b as i64 - 2);
            assert_eq!(*t.get(2 * b, b as i64), fib);
        }
    }

    #[test]
    fn small_structure_counts() {
        assert_eq!(s_k3(3, 0).unwrap(), 1);
        assert_eq!(s_k3(3, 3).unwrap(), 1);
        assert_eq!(s_k3(3, 4).unwrap(), 2);
        assert_eq!(s_k3(3, 5).unwrap(), 5);
        assert!(s_k3(2, 5).is_err());
    }

    #[test]
    fn isolated_examples() {
        assert_eq!(s_k3_by_isolated(3, 4, 4).unwrap(), 1);
        assert_eq!(s_k3_by_isolated(3, 4, 2).unwrap(), 1);
        assert_eq!(s_k3_by_isolated(3, 4, 3).unwrap(), 0);
        assert!(s_k3_by_isolated(3, 4, 5).is_err());
    }

    #[test]
    fn histogram_sums_to_total() {
        for k in [3, 4] {
            let totals = structure_counts(k, 40).unwrap();
            for n in 0..=40 {
                let sum = isolated_histogram(k, n)
                    .unwrap()
                    .into_iter()
                    .fold(BigUint::zero(), |a, c| a + c.into_inner());
                assert_eq!(Count::from(sum), totals[n]);
            }
        }
    }

    #[test]
    fn monotone_in_n_and_k() {
        let s3 = structure_counts(3, 41).unwrap();
        let s4 = structure_counts(4, 41).unwrap();
        let s5 = structure_counts(5, 40).unwrap();
        for n in 0..=40 {
            assert!(s3[n] <= s3[n + 1]);
            assert!(s4[n] <= s4[n + 1]);
            assert!(s3[n] <= s4[n]);
            assert!(s4[n] <= s5[n]);
        }
    }

    #[test]
    fn structure_count_json_shape() {
        let c = StructureCount::compute(3, 5, None).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"k":3,"n":5,"ell":null,"count":"5"}"#);
    }
}
