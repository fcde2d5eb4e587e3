//! Subexponential factor of `S_{3,3}(n)`.
//!
//! The asymptotic form is `S_{3,3}(n) ~ K' 4! / (n)_5 * rho_3^(-n)` with the
//! falling factorial `(n)_5 = n (n-1) (n-2) (n-3) (n-4)`.

use serde::{Deserialize, Serialize};

use super::growth::{compute_rho, theta_prime, u, u_prime, R3};
use crate::count::{ln_biguint, Count};
use crate::error::{invalid, Result};
use crate::structures::structure_counts;

/// Published multiplicative constant `K'`.
pub const PUBLISHED_KPRIME: f64 = 6.11170;
/// Published exponential growth base `1 / rho_3`.
pub const PUBLISHED_GROWTH: f64 = 4.54920;

fn ln_falling5(n: usize) -> f64 {
    (0..5).map(|i| ((n - i) as f64).ln()).sum()
}

/// `K' 4! / (n)_5` with the published `K'`.
pub fn subexp_factor(n: usize) -> Result<f64> {
    if n < 5 {
        return Err(invalid(format!("subexponential factor needs n >= 5, got {n}")));
    }
    Ok(PUBLISHED_KPRIME * 24.0 * (-ln_falling5(n)).exp())
}

fn check_base(base: f64) -> Result<()> {
    if base <= 1.0 || !base.is_finite() {
        return Err(invalid(format!("base must be a finite number > 1, got {base}")));
    }
    Ok(())
}

/// `value / base^n`, evaluated in log space.
pub fn scaled_count(value: &Count, n: usize, base: f64) -> f64 {
    (value.ln() - n as f64 * base.ln()).exp()
}

/// `S_{3,3}(n) / base^n` from the exact count.
pub fn exact_subexp_factor(n: usize, base: f64) -> Result<f64> {
    check_base(base)?;
    let counts = structure_counts(3, n)?;
    Ok(scaled_count(&counts[n], n, base))
}

/// One row of the exact-vs-asymptotic comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubexpRow {
    pub n: usize,
    pub count: Count,
    /// `S_{3,3}(n) / base^n`.
    pub exact: f64,
    /// `K' 4! / (n)_5`, absent for `n < 5`.
    pub asymptotic: Option<f64>,
}

/// Rows for `n = step, 2 step, ..., <= n_max`.
pub fn subexp_table(n_max: usize, step: usize, base: f64) -> Result<Vec<SubexpRow>> {
    if step == 0 || n_max < step {
        return Err(invalid(format!("need n_max >= step >= 1, got n_max = {n_max}, step = {step}")));
    }
    check_base_or_one(base)?;
    let counts = structure_counts(3, n_max)?;
    Ok((step..=n_max)
        .step_by(step)
        .map(|n| SubexpRow {
            n,
            exact: scaled_count(&counts[n], n, base),
            asymptotic: subexp_factor(n).ok(),
            count: counts[n].clone(),
        })
        .collect())
}

// the table also accepts base 1, which reproduces the raw counts
fn check_base_or_one(base: f64) -> Result<()> {
    if base == 1.0 {
        Ok(())
    } else {
        check_base(base)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KPrimeEstimate {
    pub rho: f64,
    /// `(n, K'(n))` for `5 <= n <= n_max`.
    pub sequence: Vec<(usize, f64)>,
    /// `2 K'(n_max) - K'(n_max / 2)`.
    pub richardson: f64,
}

impl KPrimeEstimate {
    pub fn at(&self, n: usize) -> Option<f64> {
        self.sequence.get(n.checked_sub(5)?).map(|&(_, v)| v)
    }

    /// Last `count` raw values.
    pub fn tail(&self, count: usize) -> &[(usize, f64)] {
        &self.sequence[self.sequence.len().saturating_sub(count)..]
    }
}

/// Normalised sequence `K'(n) = S_{3,3}(n) rho_3^n (n)_5 / 4!` and its
/// Richardson extrapolation in `1/n`.
pub fn estimate_kprime(n_max: usize) -> Result<KPrimeEstimate> {
    if n_max < 50 {
        return Err(invalid(format!("n_max must be at least 50, got {n_max}")));
    }
    let rho = compute_rho(3, R3)?.rho_k;
    let counts = structure_counts(3, n_max)?;
    let sequence: Vec<(usize, f64)> = (5..=n_max)
        .map(|n| {
            let ln = ln_biguint(counts[n].value()) + n as f64 * rho.ln() + ln_falling5(n) - 24f64.ln();
            (n, ln.exp())
        })
        .collect();
    let k_at = |n: usize| sequence[n - 5].1;
    let richardson = 2.0 * k_at(n_max) - k_at(n_max / 2);
    Ok(KPrimeEstimate {
        rho,
        sequence,
        richardson,
    })
}

/// Local data of the structure series at its dominant singularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularConstants {
    pub rho: f64,
    /// `u(rho_3)` for `u(z) = 1 - z + z^2 + z^3 - z^4`.
    pub u_at_rho: f64,
    pub u_prime_at_rho: f64,
    /// `g'(rho_3)` for `g(z) = (z - z^3) / u(z)`.
    pub g_prime_at_rho: f64,
    /// `(8 rho_3 g'(rho_3))^4 / (pi u(rho_3))`: the limit of `K'(n)`
    /// implied by `[y^n] sum f_3(2m,0) y^m ~ 4! 16^n / (pi n^5)`.
    pub limit_kprime: f64,
}

pub fn singular_constants_check() -> Result<SingularConstants> {
    let rho = compute_rho(3, R3)?.rho_k;
    let g_prime = theta_prime(rho)?;
    let u_rho = u(rho);
    Ok(SingularConstants {
        rho,
        u_at_rho: u_rho,
        u_prime_at_rho: u_prime(rho),
        g_prime_at_rho: g_prime,
        limit_kprime: (8.0 * rho * g_prime).powi(4) / (std::f64::consts::PI * u_rho),
    })
}
