//! Exact computations with monomial ideals: regularity via multigraded Betti
//! numbers, degree complexes, symbolic powers, and integral closures of
//! powers, plus a harness that checks regularity inequalities on corpora of
//! small ideals.

pub mod betti;
pub mod degree_complex;
pub mod error;
pub mod harness;
pub mod homology;
pub mod io;
pub mod monomial;
pub mod powers;
pub mod stanley_reisner;

pub use betti::{
    betti_table, betti_table_with, regularity, regularity_with, BettiMethod, BettiOptions,
    BettiTable, Regularity,
};
pub use degree_complex::{degree_complex, reg_witness_search, RegWitness};
pub use error::{Error, Result};
pub use homology::{reduced_homology, CoefficientField};
pub use monomial::{Monomial, MonomialIdeal};
pub use powers::{integral_closure_power, is_integrally_closed, remint_s, symbolic_power};
pub use stanley_reisner::{height, link, minimal_primes, stanley_reisner, SimplicialComplex};
