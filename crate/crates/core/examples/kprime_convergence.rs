//! Convergence of `K'(n) = S_{3,3}(n) rho^n (n)_5 / 4!` toward its limit.

use crossing_count::asymptotics::{estimate_kprime, singular_constants_check, PUBLISHED_KPRIME};

fn main() -> crossing_count::Result<()> {
    let e = estimate_kprime(800)?;
    for n in [50, 100, 200, 400, 800] {
        println!("K'({n:>3}) = {:.5}", e.at(n).expect("n is in range"));
    }
    println!("Richardson 2K'(800) - K'(400) = {:.5}", e.richardson);

    let s = singular_constants_check()?;
    println!("limit from the singular expansion = {:.5}", s.limit_kprime);
    println!("published value                   = {PUBLISHED_KPRIME:.5}");
    Ok(())
}
