//! Exponential growth: the radius `r_k` of the perfect-matching series and
//! the dominant singularity `rho_k` of the structure series, linked by
//! `theta(rho_k) = r_k`.

use serde::{Deserialize, Serialize};

use super::roots::{horner, newton_polish, solve_quartic, ComplexNumber, QuarticProblem};
use crate::count::ratio_biguint;
use crate::counting::perfect_matching_counts;
use crate::error::{invalid, Error, Result};

/// Upper end of the search interval for `rho_k`.
pub const RHO_SEARCH_MAX: f64 = 0.7;

const POLE_TOL: f64 = 1e-14;

/// `u(z) = 1 - z + z^2 + z^3 - z^4`.
pub fn u(z: f64) -> f64 {
    1.0 - z + z * z + z.powi(3) - z.powi(4)
}

/// `u'(z)`.
pub fn u_prime(z: f64) -> f64 {
    -1.0 + 2.0 * z + 3.0 * z * z - 4.0 * z.powi(3)
}

/// `theta(z) = (z - z^3) / u(z)`.
pub fn theta(z: f64) -> Result<f64> {
    let den = u(z);
    if den.abs() < POLE_TOL {
        return Err(Error::Pole(z));
    }
    Ok((z - z.powi(3)) / den)
}

/// `theta'(z)` by the quotient rule.
pub fn theta_prime(z: f64) -> Result<f64> {
    let den = u(z);
    if den.abs() < POLE_TOL {
        return Err(Error::Pole(z));
    }
    Ok(((1.0 - 3.0 * z * z) * den - (z - z.powi(3)) * u_prime(z)) / (den * den))
}

/// Radius estimate from the exact sequence `f_k(2m, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub k: usize,
    pub n_max: usize,
    /// Accelerated estimate.
    pub value: f64,
    /// Difference between the last two accelerated values.
    pub error_bound: f64,
    /// Unaccelerated `sqrt(f(2m)/f(2m+2))` at the largest `m`.
    pub raw: f64,
}

/// Estimate `r_k` from ratios `sqrt(f_k(2m,0) / f_k(2m+2,0))`, `m < n_max`,
/// with one Richardson step in `1/m`.
pub fn estimate_rk(k: usize, n_max: usize) -> Result<RadiusEstimate> {
    if n_max < 10 {
        return Err(invalid(format!("n_max must be at least 10, got {n_max}")));
    }
    let f = perfect_matching_counts(k, 2 * n_max)?;
    let ratio = |m: usize| ratio_biguint(&f[2 * m], &f[2 * m + 2]).sqrt();
    let accelerated = |m: usize| m as f64 * ratio(m) - (m - 1) as f64 * ratio(m - 1);
    let last = n_max - 1;
    let value = accelerated(last);
    Ok(RadiusEstimate {
        k,
        n_max,
        value,
        error_bound: (value - accelerated(last - 1)).abs(),
        raw: ratio(last),
    })
}

/// Coefficients (highest first) of `(z - z^3) - r u(z)`, whose roots solve
/// `theta(z) = r`.
pub fn theta_level_quartic(r: f64) -> QuarticProblem {
    QuarticProblem {
        a: r,
        b: -1.0 - r,
        c: -r,
        d: 1.0 + r,
        e: -r,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub k: usize,
    pub r_k: f64,
    pub rho_k: f64,
    /// `1 / rho_k`.
    pub growth_rate: f64,
    /// `|theta(rho_k) - r_k|`.
    pub residual: f64,
    /// Largest `|p(root)|` over the quartic roots.
    pub root_residual: f64,
    /// Roots of `theta(z) = r_k` followed by roots of `theta(z) = -r_k`.
    pub all_roots: Vec<ComplexNumber>,
}

fn is_real(z: &ComplexNumber) -> bool {
    z.im.abs() <= 1e-9 * z.re.abs().max(1.0)
}

/// Smallest sign change of `h` on `(0, RHO_SEARCH_MAX]`, bisected to
/// machine precision.
fn first_sign_change(h: impl Fn(f64) -> f64) -> Option<f64> {
    const STEPS: usize = 7000;
    let dz = RHO_SEARCH_MAX / STEPS as f64;
    let mut lo = 0.0;
    let mut h_lo = h(lo);
    for i in 1..=STEPS {
        let hi = i as f64 * dz;
        let h_hi = h(hi);
        if h_lo == 0.0 && lo > 0.0 {
            return Some(lo);
        }
        if h_lo.signum() != h_hi.signum() {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if h(mid).signum() == h(a).signum() {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        lo = hi;
        h_lo = h_hi;
    }
    None
}

/// Dominant singularity `rho_k`: the smallest positive solution of
/// `theta(z) = r_k`.
///
/// The four roots come from Ferrari's method on the cleared quartic; the
/// smallest real one in `(0, 0.7)` is cross-checked against a sign-change
/// bisection, which wins if they disagree.
pub fn compute_rho(k: usize, r_k: f64) -> Result<GrowthReport> {
    if !(r_k > 0.0 && r_k <= 0.5) {
        return Err(invalid(format!("r_k must lie in (0, 1/2], got {r_k}")));
    }
    let plus = theta_level_quartic(r_k);
    let minus = theta_level_quartic(-r_k);
    let roots_plus = solve_quartic(&plus)?;
    let roots_minus = solve_quartic(&minus)?;

    let coeffs = plus.coeffs();
    let ferrari = roots_plus
        .iter()
        .filter(|z| is_real(z) && z.re > 0.0 && z.re < RHO_SEARCH_MAX)
        .map(|z| newton_polish(&coeffs, ComplexNumber::new(z.re, 0.0)).re)
        .min_by(f64::total_cmp);
    let bisected = first_sign_change(|z| horner(&coeffs, ComplexNumber::new(z, 0.0)).re);

    let rho = match (ferrari, bisected) {
        (Some(f), Some(b)) if (f - b).abs() <= 1e-8 => f,
        (_, Some(b)) => newton_polish(&coeffs, ComplexNumber::new(b, 0.0)).re,
        (Some(f), None) => f,
        (None, None) => return Err(Error::NoRealRoot(r_k)),
    };

    let root_residual = roots_plus
        .iter()
        .map(|z| plus.eval(*z).norm())
        .chain(roots_minus.iter().map(|z| minus.eval(*z).norm()))
        .fold(0.0, f64::max);

    Ok(GrowthReport {
        k,
        r_k,
        rho_k: rho,
        growth_rate: 1.0 / rho,
        residual: (theta(rho)? - r_k).abs(),
        root_residual,
        all_roots: roots_plus.into_iter().chain(roots_minus).collect(),
    })
}

/// `r_3 = 1/4`: `f_3(2n, 0)` grows like `16^n`.
pub const R3: f64 = 0.25;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_examples() {
        assert_eq!(theta(0.0).unwrap(), 0.0);
        assert!((theta(0.21982).unwrap() - 0.25).abs() < 1e-4);
        assert_eq!(theta(1.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_agrees_with_centered_form() {
        // denominator written as -(z^2 - 1/2)^2 + z(z^2 - 1/2) - z/2 + 5/4
        for i in 0..=70 {
            let z = i as f64 / 100.0;
            let h = z * z - 0.5;
            let alt = z * (1.0 - z) * (1.0 + z) / (-(h * h) + z * h - z / 2.0 + 1.25);
            assert!((theta(z).unwrap() - alt).abs() < 1e-14);
        }
    }

    #[test]
    fn theta_pole() {
        // u has a real root between 1 and 2
        let (mut a, mut b) = (1.0, 2.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if u(m) > 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert!(matches!(theta(a), Err(Error::Pole(_))) || matches!(theta(b), Err(Error::Pole(_))));
    }

    #[test]
    fn theta_prime_matches_difference_quotient() {
        for z in [0.05, 0.2, 0.21982, 0.5] {
            let h = 1e-6;
            let fd = (theta(z + h).unwrap() - theta(z - h).unwrap()) / (2.0 * h);
            assert!((theta_prime(z).unwrap() - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn radius_for_k3() {
        let e = estimate_rk(3, 60).unwrap();
        assert!((e.value - 0.25).abs() < 0.002, "{e:?}");
        let coarse = estimate_rk(3, 10).unwrap();
        assert!((coarse.value - 0.25).abs() < 0.025, "{coarse:?}");
        assert!(estimate_rk(3, 9).is_err());
    }

    #[test]
    fn radius_for_k4() {
        let e = estimate_rk(4, 40).unwrap();
        assert!((e.value - 1.0 / 6.0).abs() < 0.005, "{e:?}");
    }

    #[test]
    fn rho_for_k3() {
        let g = compute_rho(3, R3).unwrap();
        assert!((g.rho_k - 0.21982).abs() < 1e-5);
        assert!((g.growth_rate - 4.54920).abs() < 1e-4);
        assert!(g.residual < 1e-10);
        assert_eq!(g.all_roots.len(), 8);
        let p = |z: f64| z.powi(4) - 5.0 * z.powi(3) - z * z + 5.0 * z - 1.0;
        assert!(p(g.rho_k).abs() < 1e-12);
    }

    #[test]
    fn rho_round_trips_through_theta() {
        for k in [3, 4, 7] {
            let g = compute_rho(k, theta(0.1).unwrap()).unwrap();
            assert!((g.rho_k - 0.1).abs() < 1e-10);
        }
    }

    #[test]
    fn rho_for_k4_matches_bisection() {
        let r = 1.0 / 6.0;
        let g = compute_rho(4, r).unwrap();
        // plain bisection on h(z) = (z - z^3) - r u(z) from h(0) < 0
        let h = |z: f64| (z - z.powi(3)) - r * u(z);
        let (mut a, mut b) = (0.0, 0.3);
        assert!(h(a) < 0.0 && h(b) > 0.0);
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            if h(m) < 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert!((g.rho_k - a).abs() < 1e-12);
        // nothing smaller
        for i in 1..1000 {
            assert!(h(a * i as f64 / 1000.0) < 0.0);
        }
    }

    #[test]
    fn rejects_out_of_range_radius() {
        assert!(compute_rho(3, 0.0).is_err());
        assert!(compute_rho(3, 0.6).is_err());
    }
}
