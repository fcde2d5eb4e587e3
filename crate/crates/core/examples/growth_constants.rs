//! Radius `r_k`, dominant singularity `rho_k` and growth rate `1/rho_k`.
//!
//! For k = 3 the radius is exactly 1/4. For larger k it is estimated from
//! the exact perfect-matching counts.

use crossing_count::asymptotics::{compute_rho, estimate_rk, R3};

fn main() -> crossing_count::Result<()> {
    let g = compute_rho(3, R3)?;
    println!("k = 3: r = {:.6}  rho = {:.10}  1/rho = {:.6}", g.r_k, g.rho_k, g.growth_rate);

    for k in 4..=6 {
        let r = estimate_rk(k, 40)?;
        let g = compute_rho(k, r.value)?;
        println!(
            "k = {k}: r ~ {:.6} (±{:.1e})  rho = {:.6}  1/rho = {:.4}",
            r.value, r.error_bound, g.rho_k, g.growth_rate
        );
    }
    Ok(())
}
