//! Ferrari's method on a few quartics, with residuals.
//!
//! Usage: `cargo run --example quartic_roots -- [A B C D E]`

use crossing_count::asymptotics::{solve_quartic, QuarticProblem};

fn show(q: &QuarticProblem) -> crossing_count::Result<()> {
    println!("{:?}", q.coeffs());
    for z in solve_quartic(q)? {
        println!("  {:>+.10} {:>+.10}i   |p(z)| = {:.1e}", z.re, z.im, q.eval(z).norm());
    }
    Ok(())
}

fn main() -> crossing_count::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("coefficients must be numbers"))
        .collect();
    if let [a, b, c, d, e] = args[..] {
        return show(&QuarticProblem::new(a, b, c, d, e)?);
    }
    for [a, b, c, d, e] in [
        [1.0, -10.0, 35.0, -50.0, 24.0],
        [1.0, 0.0, 0.0, 0.0, 1.0],
        [1.0, -5.0, -1.0, 5.0, -1.0],
        [1.0, -4.0, 6.0, -4.0, 1.0],
    ] {
        show(&QuarticProblem::new(a, b, c, d, e)?)?;
    }
    Ok(())
}
