//! Closed-form cubic and quartic solvers (Cardano, Ferrari) with Newton
//! polishing.
//!
//! Everything is evaluated in complex arithmetic so that negative
//! discriminants and complex resolvent roots need no special cases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexNumber = Complex64;

const NEWTON_MAX_ITER: usize = 50;
const NEWTON_STEP_TOL: f64 = 1e-14;

/// Newton iteration on a polynomial given by coefficients, highest first.
///
/// A step is only taken if it lowers `|p(x)|`, so the polish never walks a
/// root away from where the closed form put it.
pub(crate) fn newton_polish(coeffs: &[f64], mut x: Complex64) -> Complex64 {
    let mut px = horner(coeffs, x);
    for _ in 0..NEWTON_MAX_ITER {
        let dp = horner_derivative(coeffs, x);
        if dp.norm() == 0.0 || px.norm() == 0.0 {
            break;
        }
        let step = px / dp;
        let candidate = x - step;
        let pc = horner(coeffs, candidate);
        // stop unless the step strictly improves, which also catches NaN
        if pc.norm().partial_cmp(&px.norm()) != Some(std::cmp::Ordering::Less) {
            break;
        }
        x = candidate;
        px = pc;
        if step.norm() <= NEWTON_STEP_TOL * x.norm().max(1.0) {
            break;
        }
    }
    x
}

pub(crate) fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn horner_derivative(coeffs: &[f64], x: Complex64) -> Complex64 {
    let deg = coeffs.len() - 1;
    coeffs[..deg]
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
            acc * x + c * (deg - i) as f64
        })
}

/// The three primitive-rotated cube roots of unity.
fn unity_cube_roots() -> [Complex64; 3] {
    let h = 3f64.sqrt() / 2.0;
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(-0.5, h),
        Complex64::new(-0.5, -h),
    ]
}

/// All roots of `v^3 + p v + q = 0`.
///
/// Uses `v = p/(3U) - U` with `U^3 = q/2 ± sqrt(q^2/4 + p^3/27)`, taking the
/// sign that makes `|U|` largest; `U = 0` only when `p = q = 0`, which is
/// the triple root `v = 0`.
pub fn solve_cubic_depressed(p: f64, q: f64) -> [ComplexNumber; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let disc = Complex64::new(q * q / 4.0 + p * p * p / 27.0, 0.0).sqrt();
    let half_q = Complex64::new(q / 2.0, 0.0);
    let (c1, c2) = (half_q + disc, half_q - disc);
    let w = if c1.norm() >= c2.norm() { c1 } else { c2 };
    if w.norm() == 0.0 {
        return [zero; 3];
    }
    let u0 = w.powf(1.0 / 3.0);
    let coeffs = [1.0, 0.0, p, q];
    unity_cube_roots().map(|omega| {
        let u = u0 * omega;
        newton_polish(&coeffs, p / (3.0 * u) - u)
    })
}

/// `a x^4 + b x^3 + c x^2 + d x + e = 0` with `a != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticProblem {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

/// `u^4 + alpha u^2 + beta u + gamma = 0`, where `x = u + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepressedQuartic {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub shift: f64,
}

impl DepressedQuartic {
    /// Coefficients `(P, Q)` of the depressed resolvent cubic
    /// `v^3 + P v + Q = 0`, where `y = v - 5 alpha / 6`.
    pub fn resolvent(&self) -> (f64, f64) {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        let p = -a * a / 12.0 - g;
        let q = -a * a * a / 108.0 + a * g / 3.0 - b * b / 8.0;
        (p, q)
    }

    /// Roots `y` of `2y^3 + 5 alpha y^2 + (4 alpha^2 - 2 gamma) y + (alpha^3 - alpha gamma - beta^2/4)`.
    pub fn resolvent_roots(&self) -> [ComplexNumber; 3] {
        let (p, q) = self.resolvent();
        let shift = -5.0 * self.alpha / 6.0;
        solve_cubic_depressed(p, q).map(|v| v + shift)
    }
}

impl QuarticProblem {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        if a == 0.0 {
            return Err(Error::NotQuartic);
        }
        Ok(QuarticProblem { a, b, c, d, e })
    }

    pub fn coeffs(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn eval(&self, x: ComplexNumber) -> ComplexNumber {
        horner(&self.coeffs(), x)
    }

    /// Largest coefficient magnitude, at least one.
    pub fn scale(&self) -> f64 {
        self.coeffs().iter().fold(1.0, |m: f64, c| m.max(c.abs()))
    }

    pub fn depressed(&self) -> DepressedQuartic {
        let b = self.b / self.a;
        let c = self.c / self.a;
        let d = self.d / self.a;
        let e = self.e / self.a;
        DepressedQuartic {
            alpha: -3.0 * b * b / 8.0 + c,
            beta: b * b * b / 8.0 - b * c / 2.0 + d,
            gamma: -3.0 * b.powi(4) / 256.0 + c * b * b / 16.0 - b * d / 4.0 + e,
            shift: -b / 4.0,
        }
    }
}

/// All four roots by Ferrari's method, each Newton-polished on the
/// original polynomial.
pub fn solve_quartic(q: &QuarticProblem) -> Result<[ComplexNumber; 4]> {
    if q.a == 0.0 {
        return Err(Error::NotQuartic);
    }
    let dq = q.depressed();
    let (alpha, beta, gamma) = (
        Complex64::new(dq.alpha, 0.0),
        Complex64::new(dq.beta, 0.0),
        Complex64::new(dq.gamma, 0.0),
    );

    // the resolvent factors as (alpha + 2y)(...) = beta^2/4, so for beta != 0
    // no root has alpha + 2y = 0; pick the one farthest from it
    let y = dq
        .resolvent_roots()
        .into_iter()
        .max_by(|a, b| (alpha + 2.0 * a).norm().total_cmp(&(alpha + 2.0 * b).norm()))
        .expect("three roots");
    let s = (alpha + 2.0 * y).sqrt();
    let magnitude = dq.alpha.abs().max(dq.gamma.abs().sqrt()).max(dq.beta.abs().cbrt()).max(1.0);

    let us: [Complex64; 4] = if s.norm() <= 1e-12 * magnitude {
        // beta = 0: biquadratic u^4 + alpha u^2 + gamma = 0
        let root = (alpha * alpha - 4.0 * gamma).sqrt();
        let w1 = ((-alpha + root) / 2.0).sqrt();
        let w2 = ((-alpha - root) / 2.0).sqrt();
        [w1, -w1, w2, -w2]
    } else {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (idx, sign) in [1.0, -1.0].into_iter().enumerate() {
            let t = (-(3.0 * alpha + 2.0 * y + sign * 2.0 * beta / s)).sqrt();
            out[2 * idx] = (sign * s + t) / 2.0;
            out[2 * idx + 1] = (sign * s - t) / 2.0;
        }
        out
    };

    let coeffs = q.coeffs();
    Ok(us.map(|u| newton_polish(&coeffs, u + dq.shift)))
}
