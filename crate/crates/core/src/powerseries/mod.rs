//! Exact truncated power series and the generating-function identities
//! they are used to verify.

mod identities;
mod series;

pub use identities::{
    bessel_determinant, bessel_i, default_order, verify_bessel_egf, verify_functional_equation,
    verify_laplace_identity, verify_phi_identity, Identity, IdentityReport, Mismatch,
    DEFAULT_ORDER, DEFAULT_ORDER_K3,
};
pub use series::{Rational, SeriesOp, TruncatedSeries};
