//! Exact finite-blocklength counts: binomials, degrees and clique numbers of
//! the source and codeword graphs, and the binomial estimates behind the
//! asymptotic bounds.

mod binom;
mod counts;
mod inequalities;

pub use binom::{binom, binom_flagged, ln_binom, log2_big, LnFactorials};
pub use counts::{
    ak_closed_form_r, ak_family_size, ak_max_family, degree_gn, degree_hn, hamming_ball,
    intersection_params, log2_degree_gn, log2_degree_hn, log2_omega_gn, log2_omega_hn, omega_gn,
    omega_hn, require_ak_hypothesis, AkMax, CombinatorialSpec, OmegaGn, EXACT_THRESHOLD,
};
pub use inequalities::{check_binomial_inequalities, BinomialInequality, InequalityReport};
