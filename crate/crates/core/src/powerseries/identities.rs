//! Formal checks of the generating-function identities behind the counts.
//!
//! Each check builds one side from exact counts and the other side from
//! series algebra, then compares coefficients up to a chosen order.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::series::{Rational, TruncatedSeries};
use crate::counting::{partial_matching_totals, perfect_matching_counts};
use crate::error::{invalid, Result};
use crate::structures::{structure_counts, LambdaTable};

/// Default order for `k = 3`.
pub const DEFAULT_ORDER_K3: usize = 30;
/// Default order for `k >= 4`.
pub const DEFAULT_ORDER: usize = 20;

pub fn default_order(k: usize) -> usize {
    if k <= 3 {
        DEFAULT_ORDER_K3
    } else {
        DEFAULT_ORDER
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// Partial matchings vs. perfect matchings under `x -> x/(1-x)`.
    Laplace,
    /// Structures vs. perfect matchings under `x -> (x-x^3)/u(x)`.
    Functional,
    /// Closed form of `phi_n(x) = sum_b lambda(n+2b, b) x^b`.
    Phi,
    /// Bessel-determinant exponential generating functions.
    Bessel,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::Laplace => "laplace",
            Identity::Functional => "functional",
            Identity::Phi => "phi",
            Identity::Bessel => "bessel",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Which comparison failed, e.g. `"[x^n]"` or `"n! [x^n] e^x det"`.
    pub what: String,
    pub index: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    /// Parameter of the identity: `k`, or `n` for [`Identity::Phi`].
    pub parameter: usize,
    pub order: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Whether the series side reduced to integer coefficients.
    pub integral: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none() && self.integral
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(
                f,
                "{} ({}): holds to order {}{}",
                self.identity,
                self.parameter,
                self.order,
                if self.integral { "" } else { " (non-integral coefficients)" }
            ),
            Some(m) => write!(
                f,
                "{} ({}): mismatch at {} n = {}: expected {}, got {}",
                self.identity, self.parameter, m.what, m.index, m.expected, m.actual
            ),
        }
    }
}

fn first_mismatch(what: &str, expected: &TruncatedSeries, actual: &TruncatedSeries) -> Option<Mismatch> {
    expected
        .coeffs()
        .iter()
        .zip(actual.coeffs())
        .position(|(a, b)| a != b)
        .map(|index| Mismatch {
            what: what.to_string(),
            index,
            expected: expected.coeff(index).to_string(),
            actual: actual.coeff(index).to_string(),
        })
}

fn from_biguints<'a>(values: impl IntoIterator<Item = &'a BigUint>, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers(values.into_iter().map(|v| BigInt::from(v.clone())), order)
}

fn ints(values: &[i64], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers(values.iter().copied(), order)
}

/// `sum_n f_k(2n, 0) y^(2n)`, truncated at `order`.
fn even_perfect_series(k: usize, order: usize) -> Result<TruncatedSeries> {
    let f = perfect_matching_counts(k, order)?;
    let coeffs = (0..=order)
        .map(|t| {
            if t % 2 == 0 {
                Rational::from_integer(BigInt::from(f[t].clone()))
            } else {
                Rational::zero()
            }
        })
        .collect();
    Ok(TruncatedSeries::new(coeffs, order))
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(invalid(format!("identities are stated for k >= 3, got {k}")));
    }
    Ok(())
}

/// `sum T_k(n) x^n = 1/(1-x) * sum f_k(2n,0) (x/(1-x))^(2n)`.
pub fn verify_laplace_identity(k: usize, order: usize) -> Result<IdentityReport> {
    check_k(k)?;
    let lhs = from_biguints(&partial_matching_totals(k, order)?, order);

    let one_minus_x = ints(&[1, -1], order);
    let inv = one_minus_x.reciprocal()?;
    let sub = ints(&[0, 1], order).mul(&inv)?;
    let rhs = inv.mul(&even_perfect_series(k, order)?.compose(&sub)?)?;

    Ok(IdentityReport {
        identity: Identity::Laplace,
        parameter: k,
        order,
        first_mismatch: first_mismatch("[x^n]", &lhs, &rhs),
        integral: rhs.is_integral(),
    })
}

/// `u(x) = 1 - x + x^2 + x^3 - x^4`.
pub(crate) fn structure_denominator(order: usize) -> TruncatedSeries {
    ints(&[1, -1, 1, 1, -1], order)
}

/// `sum S_k(n) x^n = 1/u(x) * sum f_k(2n,0) ((x - x^3)/u(x))^(2n)`.
pub fn verify_functional_equation(k: usize, order: usize) -> Result<IdentityReport> {
    check_k(k)?;
    let counts = structure_counts(k, order)?;
    let lhs = from_biguints(counts.iter().map(|c| c.value()), order);

    let inv_u = structure_denominator(order).reciprocal()?;
    let sub = ints(&[0, 1, 0, -1], order).mul(&inv_u)?;
    let rhs = inv_u.mul(&even_perfect_series(k, order)?.compose(&sub)?)?;

    Ok(IdentityReport {
        identity: Identity::Functional,
        parameter: k,
        order,
        first_mismatch: first_mismatch("[x^n]", &lhs, &rhs),
        integral: rhs.is_integral(),
    })
}

/// `sum_b lambda(n+2b, b) x^b = 1/(1-x-x^2) * ((1+x)/(1-x-x^2))^n`.
pub fn verify_phi_identity(n: usize, order: usize) -> Result<IdentityReport> {
    let table = LambdaTable::build(n + 2 * order);
    let lhs = from_biguints((0..=order).map(|b| table.get(n + 2 * b, b as i64)), order);

    let phi0 = ints(&[1, -1, -1], order).reciprocal()?;
    let ratio = ints(&[1, 1], order).mul(&phi0)?;
    let rhs = phi0.mul(&ratio.pow(n as u32))?;

    Ok(IdentityReport {
        identity: Identity::Phi,
        parameter: n,
        order,
        first_mismatch: first_mismatch("[x^b]", &lhs, &rhs),
        integral: rhs.is_integral(),
    })
}

/// Truncated `I_r(2x) = sum_j x^(2j+r) / (j! (r+j)!)`.
pub fn bessel_i(r: usize, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut j = 0;
    while 2 * j + r <= order {
        let denom = factorial(j) * factorial(r + j);
        coeffs[2 * j + r] = Rational::new(BigInt::one(), denom);
        j += 1;
    }
    TruncatedSeries::new(coeffs, order)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `det[I_{i-j}(2x) - I_{i+j}(2x)]` for `i, j = 1..k-1`.
///
/// At `x = 0` the matrix is the identity, so every leading principal minor
/// has constant term one and elimination never needs a pivot swap.
#[allow(clippy::needless_range_loop)]
pub fn bessel_determinant(k: usize, order: usize) -> Result<TruncatedSeries> {
    let dim = k - 1;
    let mut m: Vec<Vec<TruncatedSeries>> = (1..=dim)
        .map(|i| {
            (1..=dim)
                .map(|j| bessel_i(i.abs_diff(j), order).sub(&bessel_i(i + j, order)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut det = TruncatedSeries::one(order);
    for p in 0..dim {
        let pivot_inv = m[p][p].reciprocal()?;
        det = det.mul(&m[p][p])?;
        for r in p + 1..dim {
            let factor = m[r][p].mul(&pivot_inv)?;
            for c in p..dim {
                let delta = factor.mul(&m[p][c])?;
                m[r][c] = m[r][c].sub(&delta)?;
            }
        }
    }
    Ok(det)
}

/// Multiply coefficient `n` by `n!`.
fn laplace_borel(s: &TruncatedSeries) -> TruncatedSeries {
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * Rational::from_integer(factorial(n)))
        .collect();
    TruncatedSeries::new(coeffs, s.order())
}

/// `n! [x^n] det = f_k(n, 0)` and `n! [x^n] e^x det = T_k(n)`.
pub fn verify_bessel_egf(k: usize, order: usize) -> Result<IdentityReport> {
    check_k(k)?;
    let det = bessel_determinant(k, order)?;
    let perfect = laplace_borel(&det);
    let total = laplace_borel(&TruncatedSeries::exp(order).mul(&det)?);

    let f = perfect_matching_counts(k, order)?;
    let expected_perfect = from_biguints(f.iter().take(order + 1), order);
    let expected_total = from_biguints(&partial_matching_totals(k, order)?, order);

    let first = first_mismatch("n! [x^n] det", &expected_perfect, &perfect)
        .or_else(|| first_mismatch("n! [x^n] e^x det", &expected_total, &total));
    Ok(IdentityReport {
        identity: Identity::Bessel,
        parameter: k,
        order,
        first_mismatch: first,
        integral: perfect.is_integral() && total.is_integral(),
    })
}
