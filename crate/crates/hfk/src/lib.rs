//! Genus-one witness surfaces in lens spaces.
//!
//! Every lens space L(p, q) carries a genus-one surface Σ_{a,b,c,u,v} whose
//! boundary knot is homologically fibered; this crate constructs such
//! surfaces, verifies the integer identity certifying them, computes the
//! associated Seifert matrices and Alexander polynomials, and evaluates the
//! hc invariant for the homology classes where it is known.
//!
//! - [`arith`]: exact number-theory kernel (gcd, Jacobi symbols, primality,
//!   modular square roots, factorization).
//! - [`primes`]: search for primes in a residue class making a prescribed
//!   quadratic expression a residue.
//! - [`quadform`]: binary quadratic forms built from modular square roots.
//! - [`witness`]: the surface parameters, the certifying identity, the
//!   constructive pipeline, and a brute-force oracle.
//! - [`seifert`]: Seifert matrices, Alexander polynomials, and the
//!   homology-cobordism / fibering criteria.
//! - [`hc`]: exact values and bounds for the hc invariant.
//! - [`record`]: lossless JSON certificate records.
//! - [`cli`]: the command-line front end.

pub mod arith;
pub mod cli;
pub mod hc;
pub mod primes;
pub mod quadform;
pub mod record;
pub mod seifert;
pub mod witness;
