//! Check the generating-function identities in exact rational arithmetic.

use crossing_count::powerseries::{
    default_order, verify_bessel_egf, verify_functional_equation, verify_laplace_identity,
    verify_phi_identity,
};

fn main() -> crossing_count::Result<()> {
    for k in [3, 4] {
        println!("{}", verify_laplace_identity(k, default_order(k))?);
        println!("{}", verify_functional_equation(k, default_order(k))?);
        println!("{}", verify_bessel_egf(k, if k == 3 { 16 } else { 12 })?);
    }
    for n in 0..=5 {
        println!("{}", verify_phi_identity(n, 15)?);
    }
    Ok(())
}
