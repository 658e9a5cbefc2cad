//! Exact symbolic machinery for dimension theory of chain complexes and
//! Koszul DG algebras over polynomial rings: Gröbner bases and syzygies,
//! homology presentations with Fitting-ideal support, Krull dimension of
//! complexes, anchor primes and systems of parameters, DG spectra and DG
//! localization, plus a batch job layer with a bundled verification corpus.

pub mod complex;
pub mod corpus;
pub mod dg_localize;
pub mod dg_spec;
pub mod dimension;
pub mod error;
pub mod extint;
pub mod field;
pub mod groebner;
pub mod jobs;
pub mod koszul;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod schema;
