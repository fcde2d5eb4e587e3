//! Growth constants and asymptotic approximations.

mod constants;
mod growth;
mod roots;

pub use constants::{
    estimate_kprime, exact_subexp_factor, scaled_count, singular_constants_check, subexp_factor,
    subexp_table, KPrimeEstimate, SingularConstants, SubexpRow, PUBLISHED_GROWTH, PUBLISHED_KPRIME,
};
pub use growth::{
    compute_rho, estimate_rk, theta, theta_level_quartic, theta_prime, u, u_prime, GrowthReport,
    RadiusEstimate, R3, RHO_SEARCH_MAX,
};
pub use roots::{
    solve_cubic_depressed, solve_quartic, ComplexNumber, DepressedQuartic, QuarticProblem,
};
