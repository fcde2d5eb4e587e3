//! Ferrari's method against an independent Newton-deflation solver.

use crossing_count::asymptotics::{solve_quartic, ComplexNumber, QuarticProblem};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn eval(c: &[ComplexNumber], x: ComplexNumber) -> ComplexNumber {
    c.iter().fold(ComplexNumber::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn derivative(c: &[ComplexNumber]) -> Vec<ComplexNumber> {
    let deg = c.len() - 1;
    c[..deg].iter().enumerate().map(|(i, &a)| a * (deg - i) as f64).collect()
}

fn newton(c: &[ComplexNumber], mut x: ComplexNumber, iters: usize) -> ComplexNumber {
    let dc = derivative(c);
    for _ in 0..iters {
        let d = eval(&dc, x);
        if d.norm() == 0.0 {
            break;
        }
        let step = eval(c, x) / d;
        x -= step;
        if step.norm() < 1e-17 * x.norm().max(1.0) {
            break;
        }
    }
    x
}

fn deflate(c: &[ComplexNumber], r: ComplexNumber) -> Vec<ComplexNumber> {
    let mut out = Vec::with_capacity(c.len() - 1);
    let mut acc = ComplexNumber::new(0.0, 0.0);
    for &a in &c[..c.len() - 1] {
        acc = acc * r + a;
        out.push(acc);
    }
    out
}

/// Roots by Newton from a complex start, deflating and polishing on the
/// original polynomial.
fn newton_roots(coeffs: [f64; 5]) -> Vec<ComplexNumber> {
    let full: Vec<ComplexNumber> = coeffs.iter().map(|&a| ComplexNumber::new(a, 0.0)).collect();
    let mut rest = full.clone();
    let mut roots = Vec::new();
    while rest.len() > 1 {
        // a single start can cycle, so keep the best of several
        let r = (0..16)
            .map(|i| {
                let start = ComplexNumber::from_polar(0.5 + 0.25 * i as f64, 0.4 + 1.7 * i as f64);
                newton(&rest, start, 500)
            })
            .min_by(|a, b| eval(&rest, *a).norm().total_cmp(&eval(&rest, *b).norm()))
            .unwrap();
        let r = newton(&full, r, 50);
        roots.push(r);
        rest = deflate(&rest, r);
    }
    roots
}

/// Smallest total distance over all pairings.
fn matching_distance(a: &[ComplexNumber], b: &[ComplexNumber]) -> f64 {
    fn rec(a: &[ComplexNumber], b: &[ComplexNumber], used: &mut [bool], i: usize) -> f64 {
        if i == a.len() {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                best = best.min((a[i] - b[j]).norm().max(rec(a, b, used, i + 1)));
                used[j] = false;
            }
        }
        best
    }
    rec(a, b, &mut vec![false; b.len()], 0)
}

fn random_instance(rng: &mut StdRng) -> (QuarticProblem, Vec<ComplexNumber>) {
    // well-separated roots: real pairs or conjugate pairs
    let mut roots = Vec::new();
    while roots.len() < 4 {
        let re = rng.gen_range(-3.0..3.0);
        if rng.gen_bool(0.5) {
            let im = rng.gen_range(0.2..2.0);
            roots.push(ComplexNumber::new(re, im));
            roots.push(ComplexNumber::new(re, -im));
        } else {
            roots.push(ComplexNumber::new(re, 0.0));
            roots.push(ComplexNumber::new(rng.gen_range(-3.0..3.0), 0.0));
        }
    }
    let ok = (0..4).all(|i| (0..i).all(|j| (roots[i] - roots[j]).norm() > 0.2));
    if !ok {
        return random_instance(rng);
    }
    let a = rng.gen_range(0.5..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut c = vec![ComplexNumber::new(a, 0.0)];
    for r in &roots {
        c.push(ComplexNumber::new(0.0, 0.0));
        for i in (1..c.len()).rev() {
            c[i] = c[i] - c[i - 1] * r;
        }
    }
    let q = QuarticProblem::new(c[0].re, c[1].re, c[2].re, c[3].re, c[4].re).unwrap();
    (q, roots)
}

#[test]
fn residual_and_vieta_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(20071);
    for _ in 0..1000 {
        let (q, planted) = random_instance(&mut rng);
        let [a, b, _, _, e] = q.coeffs();
        let roots = solve_quartic(&q).unwrap();
        let scale = q.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt().max(1.0);
        for z in &roots {
            assert!(q.eval(*z).norm() / scale <= 1e-9, "{q:?} {z}");
        }
        let sum: ComplexNumber = roots.iter().sum();
        assert!((sum - ComplexNumber::new(-b / a, 0.0)).norm() <= 1e-9, "{q:?}");
        let product: ComplexNumber = roots.iter().product();
        let expected = e / a;
        assert!((product - expected).norm() <= 1e-9 * expected.abs().max(1.0), "{q:?}");

        let oracle = newton_roots(q.coeffs());
        assert!(matching_distance(&roots, &oracle) <= 1e-7, "{q:?}\n{roots:?}\n{oracle:?}");
        assert!(matching_distance(&roots, &planted) <= 1e-7, "{q:?}");
    }
}

/// Coefficients in [-10, 10] with |A| >= 0.1.
fn random_coefficients(rng: &mut StdRng) -> QuarticProblem {
    let a = rng.gen_range(0.1..=10.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let [b, c, d, e] = [(); 4].map(|_| rng.gen_range(-10.0..=10.0));
    QuarticProblem::new(a, b, c, d, e).unwrap()
}

#[test]
fn random_coefficients_satisfy_invariants() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let q = random_coefficients(&mut rng);
        let [a, b, _, _, e] = q.coeffs();
        let scale = q.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt().max(1.0);
        let roots = solve_quartic(&q).unwrap();
        for z in &roots {
            assert!(q.eval(*z).norm() / scale <= 1e-9, "{q:?} {z}");
        }
        let sum: ComplexNumber = roots.iter().sum();
        assert!((sum - ComplexNumber::new(-b / a, 0.0)).norm() <= 1e-9, "{q:?}");
        let product: ComplexNumber = roots.iter().product();
        assert!((product - e / a).norm() <= 1e-9 * (e / a).abs().max(1.0), "{q:?}");
        let oracle = newton_roots(q.coeffs());
        assert!(matching_distance(&roots, &oracle) <= 1e-7, "{q:?}\n{roots:?}\n{oracle:?}");
    }
}
