//! Integral binary quadratic forms f(x, y) = a·x² + b·x·y + c·y², and the
//! principal construction of a form with prescribed discriminant
//! representing a prescribed integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// f(x, y) = a·x² + b·x·y + c·y².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadFormError {
    #[error("representative must be nonzero")]
    ZeroRepresentative,
    #[error("z0² - Delta = {difference} is not divisible by 4·{n_rep}")]
    CongruenceViolated { difference: BigInt, n_rep: BigInt },
}

impl BinaryQuadraticForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Self { a, b, c }
    }

    /// b² - 4ac, computed fresh on every call.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - 4 * &self.a * &self.c
    }

    /// a·x² + b·x·y + c·y².
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }
}

/// Given z0 with z0² ≡ Delta (mod 4·n_rep), builds the form
/// f = (n_rep, z0, (z0² - Delta)/(4·n_rep)), which has discriminant Delta
/// and represents n_rep primitively at (x, y) = (1, 0).
pub fn form_from_sqrt(
    z0: &BigInt,
    n_rep: &BigInt,
    delta: &BigInt,
) -> Result<(BinaryQuadraticForm, BigInt, BigInt), QuadFormError> {
    if n_rep.is_zero() {
        return Err(QuadFormError::ZeroRepresentative);
    }
    let difference = z0 * z0 - delta;
    let four_n = 4 * n_rep;
    let (quotient, remainder) = difference.div_rem(&four_n);
    if !remainder.is_zero() {
        return Err(QuadFormError::CongruenceViolated {
            difference,
            n_rep: n_rep.clone(),
        });
    }
    let form = BinaryQuadraticForm::new(n_rep.clone(), z0.clone(), quotient);
    debug_assert_eq!(form.discriminant(), *delta);
    Ok((form, BigInt::one(), BigInt::zero()))
}
