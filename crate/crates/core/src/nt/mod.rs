//! Finite fields, quadratic fields, integer polynomials and the search for
//! quartic S4-examples over a quadratic field.

pub mod fq;
pub mod poly;
pub mod quad;
pub mod search;

pub use fq::{factor_poly, Factorization, Fe, Fq, FqPoly, DEFAULT_SEED};
pub use poly::{
    cycle_type, discriminant, discriminant_small, int_poly, parse_int_poly, quartic_galois_over_q, resolvent_cubic,
    IntPoly, QuarticGroup,
};
pub use quad::{kronecker, square_in_quadratic, QuadField, QuadInt};
pub use search::{frobenius_sampling, search_quartic, verify_candidate, QuarticCandidate, SearchConfig};
