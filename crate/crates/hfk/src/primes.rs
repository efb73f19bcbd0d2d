//! Search for an odd prime l ≡ m (mod n) such that n·x·(x+1) ≡ ε (mod l)
//! is solvable, together with an explicit root.

use crate::arith::{self, ArithError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Default upper bound on the prime search.
pub const DEFAULT_PRIME_BOUND: u64 = 100_000_000;

/// A prime l ≡ m (mod n) with a root of n·x·(x+1) ≡ ε (mod l).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeWitness {
    /// +1 or -1.
    pub epsilon: i32,
    /// Odd prime congruent to the query's m modulo n.
    pub l: BigInt,
    /// Root with 0 ≤ x0 < l and n·x0·(x0+1) ≡ ε (mod l).
    pub root_x0: BigInt,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimesError {
    #[error("n must be positive, got {0}")]
    NonPositiveN(BigInt),
    #[error("m = {m} and n = {n} must be coprime")]
    NotCoprime { m: BigInt, n: BigInt },
    #[error("no prime l ≡ {m} (mod 5) admits a solution for either sign")]
    NoSolutionClass { m: BigInt },
    #[error("no usable prime found at or below {bound}")]
    SearchExhausted { bound: BigInt },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// True iff l is an odd prime, l ≡ m (mod n), and n(n+4ε) is a quadratic
/// residue mod l; the last condition is equivalent to solvability of
/// n·x·(x+1) ≡ ε (mod l) because (2nx+n)² ≡ n² + 4εn (mod l).
pub fn check_prime_witness(m: &BigInt, n: &BigInt, epsilon: i32, l: &BigInt) -> bool {
    if (epsilon != 1 && epsilon != -1) || !n.is_positive() || !m.gcd(n).is_one() {
        return false;
    }
    if l.is_even() || *l < BigInt::from(3) || !arith::is_prime(l) {
        return false;
    }
    if !(l - m).mod_floor(n).is_zero() {
        return false;
    }
    let target = (n * (n + 4 * epsilon)).mod_floor(l);
    arith::jacobi(&target, l).expect("l is odd and positive") != -1
}

/// Smallest odd prime l ≡ m (mod n), l ≤ bound, passing
/// [`check_prime_witness`] for some ε; ties at the same l break toward
/// ε = +1. The root is x0 ≡ (z - n)·(2n)⁻¹ (mod l) for the smallest root z
/// of n(n+4ε) mod l.
pub fn find_prime_witness(
    m: &BigInt,
    n: &BigInt,
    bound: &BigInt,
) -> Result<PrimeWitness, PrimesError> {
    if !n.is_positive() {
        return Err(PrimesError::NonPositiveN(n.clone()));
    }
    if !m.gcd(n).is_one() {
        return Err(PrimesError::NotCoprime {
            m: m.clone(),
            n: n.clone(),
        });
    }
    if *n == BigInt::from(5) && m.mod_floor(n) == BigInt::from(2) {
        return Err(PrimesError::NoSolutionClass { m: m.clone() });
    }
    // First progression member ≥ 3.
    let k0 = (BigInt::from(3) - m).div_ceil(n);
    let mut l = m + &k0 * n;
    while l <= *bound {
        if l.is_odd() && arith::is_prime(&l) {
            for epsilon in [1i32, -1] {
                let target = (n * (n + 4 * epsilon)).mod_floor(&l);
                if arith::jacobi(&target, &l).expect("l is odd and positive") == -1 {
                    continue;
                }
                let z = arith::sqrt_mod_prime(&target, &l)?;
                let inv_2n = arith::mod_inverse(&(2 * n), &l).expect("gcd(2n, l) = 1");
                let root_x0 = ((z - n) * inv_2n).mod_floor(&l);
                let witness = PrimeWitness {
                    epsilon,
                    l: l.clone(),
                    root_x0,
                };
                debug_assert!(witness_invariants_hold(m, n, &witness));
                return Ok(witness);
            }
        }
        l += n;
    }
    Err(PrimesError::SearchExhausted {
        bound: bound.clone(),
    })
}

fn witness_invariants_hold(m: &BigInt, n: &BigInt, w: &PrimeWitness) -> bool {
    let congruent = (&w.l - m).mod_floor(n).is_zero();
    let x = &w.root_x0;
    let lhs = (n * x * (x + 1u8)).mod_floor(&w.l);
    congruent && lhs == BigInt::from(w.epsilon).mod_floor(&w.l)
}
