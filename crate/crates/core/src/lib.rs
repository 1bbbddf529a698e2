//! Null polynomials modulo prime powers and composite moduli.
//!
//! A polynomial with integer coefficients is null modulo `m` when it
//! vanishes at every integer modulo `m`. This crate builds the least-degree
//! monic null polynomials modulo `p^d` from a recursive family `G_{p,n}`,
//! lifts them to composite moduli via CRT, counts and enumerates all null
//! polynomials of bounded degree modulo `p^d`, and decides functional
//! equivalence through a canonical form. Independent oracles (exhaustive
//! evaluation and the Newton basis test) check every construction.

pub mod canonical;
pub mod construct;
pub mod count;
pub mod error;
pub mod modulus;
pub mod oracle;
pub mod poly;
pub mod text;

pub use canonical::{canonical_form, equivalent, reduce_degree, CanonicalForm};
pub use construct::{
    build_g, build_h, digits_of_d, g_tilde_eval, index_i, kempner_basis, kempner_basis_mod, mu,
    mu_bounded, omega0_prime_power, omega1_prime_power, DigitVector, GTower,
};
pub use count::{
    count_monic, count_monic_le, count_null_le, enumerate_null, null_basis, seq_n, seq_n2,
    seq_n_tilde, CountResult, CountValue, NullBasis, TraceStep,
};
pub use error::{Error, Result};
pub use modulus::{
    crt_combine_poly, factor, is_null_composite, is_prime, least_monic_null_composite,
    omega0_composite, omega1_composite, FactoredModulus, PrimePower,
};
pub use oracle::{
    binomial_transform, brute_least_degree, brute_least_monic_degree, equivalent_eval,
    is_null_binomial, is_null_eval, null_order, null_witness_binomial, null_witness_eval,
};
pub use poly::{divmod_monic, poly_congruent, DegreeMod, Polynomial};
pub use text::{parse_polynomial, to_csv};
