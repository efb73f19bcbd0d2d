//! The handle number hc: exact values and bounds for the homology classes
//! handled here, with witness evidence attached whenever a genus-one
//! surface certifies the answer.

use crate::arith::{self, ArithError};
use crate::seifert::{self, ConnSumSurfaceParams};
use crate::witness::{construct_witness, LensSpace, WitnessCertificate, WitnessError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Default box for the genus-one search in [`hc_connsum`].
pub const DEFAULT_CONNSUM_BOX: u64 = 2;

/// An interval [lo, hi] for hc, with the argument that produced it and any
/// witness surface found along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcResult {
    pub lo: u64,
    pub hi: u64,
    pub reason: String,
    pub evidence: Option<HcEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HcEvidence {
    LensWitness(WitnessCertificate),
    ConnSumWitness(ConnSumSurfaceParams),
}

impl HcResult {
    pub fn exact(value: u64, reason: impl Into<String>) -> Self {
        Self {
            lo: value,
            hi: value,
            reason: reason.into(),
            evidence: None,
        }
    }

    pub fn range(lo: u64, hi: u64, reason: impl Into<String>) -> Self {
        debug_assert!(lo <= hi);
        Self {
            lo,
            hi,
            reason: reason.into(),
            evidence: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// "2" when exact, "[1, 2]" when only bounded.
    pub fn value_string(&self) -> String {
        if self.is_exact() {
            self.lo.to_string()
        } else {
            format!("[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HcError {
    #[error("rank must be at least 1")]
    BadRank,
    #[error("invariant factor {0} must be at least 2")]
    BadInvariantFactor(BigInt),
    #[error("invariant factors must form a divisibility chain: {0} does not divide {1}")]
    NotDivisibilityChain(BigInt, BigInt),
    #[error("{0} even invariant factors; the bound requires at most one")]
    HypothesisViolated(usize),
    #[error("p = {p}, q = {q}: need p ≥ 2 and gcd(p, q) = 1")]
    BadPair { p: BigInt, q: BigInt },
    #[error("cyclotomic index must be at least 1")]
    BadCyclotomicIndex,
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Whether a is a square mod m.
pub fn qr_mod(a: &BigInt, m: &BigInt) -> Result<bool, ArithError> {
    Ok(arith::sqrt_mod(a, m)?.is_some())
}

/// hc of the 3-sphere class: trivial homology needs no handles.
pub fn hc_trivial() -> HcResult {
    HcResult::exact(0, "trivial first homology is realized by S^3, where hc = 0")
}

/// hc for first homology ℤ^rank: exactly ceil(rank / 2).
pub fn hc_free_abelian(rank: u64) -> Result<HcResult, HcError> {
    if rank == 0 {
        return Err(HcError::BadRank);
    }
    let value = rank.div_ceil(2);
    Ok(HcResult::exact(
        value,
        format!("free abelian rank {rank}: hc = ceil(rank / 2) = {value}"),
    ))
}

/// hc for the class of a lens space: always exactly 1, certified by a
/// genus-one witness surface.
pub fn hc_lens(space: &LensSpace, prime_bound: &BigInt) -> Result<HcResult, HcError> {
    let cert = construct_witness(space, prime_bound)?;
    let mut result = HcResult::exact(
        1,
        format!(
            "{space} is not a homology sphere, and the genus-one surface \
             (a, b, c, u, v) = ({}, {}, {}, {}, {}) has homology-cobordism \
             complement",
            cert.params.a, cert.params.b, cert.params.c, cert.params.u, cert.params.v
        ),
    );
    result.evidence = Some(HcEvidence::LensWitness(cert));
    Ok(result)
}

/// Bounds for a rational homology sphere with the given invariant factors
/// (a divisibility chain, each ≥ 2, at most one even): ceil(s/2) ≤ hc ≤ s.
pub fn hc_qhs_bound(invariant_factors: &[BigInt]) -> Result<HcResult, HcError> {
    for f in invariant_factors {
        if *f < BigInt::from(2) {
            return Err(HcError::BadInvariantFactor(f.clone()));
        }
    }
    for pair in invariant_factors.windows(2) {
        if !pair[1].is_multiple_of(&pair[0]) {
            return Err(HcError::NotDivisibilityChain(pair[0].clone(), pair[1].clone()));
        }
    }
    let even = invariant_factors.iter().filter(|f| f.is_even()).count();
    if even > 1 {
        return Err(HcError::HypothesisViolated(even));
    }
    let s = invariant_factors.len() as u64;
    if s == 0 {
        return Ok(hc_trivial());
    }
    Ok(HcResult::range(
        s.div_ceil(2),
        s,
        format!("{s} invariant factors give ceil({s}/2) ≤ hc ≤ {s}"),
    ))
}

/// hc for a connected sum of two lens spaces: 2 when the quadratic-residue
/// obstruction applies, 1 when a genus-one witness surface exists within the
/// search box, otherwise the bound [1, 2].
pub fn hc_connsum(
    first: &LensSpace,
    second: &LensSpace,
    search_box: u64,
) -> Result<HcResult, HcError> {
    let (l1, l2) = if (first.p(), first.q()) <= (second.p(), second.q()) {
        (first, second)
    } else {
        (second, first)
    };
    let (p1, q1) = (l1.p(), l1.q());
    let (p2, q2) = (l2.p(), l2.q());
    let order = p1 * p2;

    if p2.is_multiple_of(p1) {
        let product = (q1 * q2).mod_floor(p1);
        if !qr_mod(&product, p1)? && !qr_mod(&(-&product), p1)? {
            return Ok(HcResult::exact(
                2,
                format!(
                    "{p1} divides {p2} and neither {q1}·{q2} nor -{q1}·{q2} \
                     is a square mod {p1}, so no genus-one surface works; \
                     two handles always suffice"
                ),
            ));
        }
    }

    if let Some(params) = connsum_search(l1, l2, &order, search_box) {
        let mut result = HcResult::exact(
            1,
            format!(
                "genus-one surface (a, b, c, u1, u2, v1, v2) = \
                 ({}, {}, {}, {}, {}, {}, {}) on {l1} # {l2} has \
                 homology-cobordism complement",
                params.a, params.b, params.c, params.u1, params.u2, params.v1, params.v2
            ),
        );
        result.evidence = Some(HcEvidence::ConnSumWitness(params));
        return Ok(result);
    }

    Ok(HcResult::range(
        1,
        2,
        format!(
            "no genus-one surface found within box {search_box}; \
             two handles always suffice"
        ),
    ))
}

/// Lexicographically smallest (a, b, c, u1, u2, v1, v2) in [-box, box]⁷
/// whose surface complement is a homology cobordism, or none.
fn connsum_search(
    l1: &LensSpace,
    l2: &LensSpace,
    order: &BigInt,
    search_box: u64,
) -> Option<ConnSumSurfaceParams> {
    let bb = search_box as i64;
    let range = || -bb..=bb;
    for a in range() {
        for b in range() {
            for c in range() {
                for u1 in range() {
                    for u2 in range() {
                        for v1 in range() {
                            for v2 in range() {
                                let params =
                                    ConnSumSurfaceParams::from_i64(a, b, c, u1, u2, v1, v2);
                                let matrix = seifert::seifert_matrix_connsum(l1, l2, &params);
                                if seifert::is_homology_cobordism(&matrix, order)
                                    .expect("order is positive")
                                {
                                    return Some(params);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// hc for first homology ℤ ⊕ ℤ/p: 1 when q or -q is a square mod p,
/// otherwise 2.
pub fn hc_z_plus_zp(p: &BigInt, q: &BigInt) -> Result<HcResult, HcError> {
    if *p < BigInt::from(2) || !p.gcd(q).is_one() {
        return Err(HcError::BadPair {
            p: p.clone(),
            q: q.clone(),
        });
    }
    let reduced = q.mod_floor(p);
    if qr_mod(&reduced, p)? || qr_mod(&(-&reduced), p)? {
        Ok(HcResult::exact(
            1,
            format!("{q} or -{q} is a square mod {p}, realized with one handle"),
        ))
    } else {
        Ok(HcResult::exact(
            2,
            format!("neither {q} nor -{q} is a square mod {p}; two handles needed and enough"),
        ))
    }
}

/// Whether √a lies in the n-th cyclotomic field, for a ≠ 0: the squarefree
/// part must be a product of (-1)^((ℓ-1)/2)·ℓ over odd primes ℓ dividing n,
/// times a leftover unit resolvable by the 2-power part of n.
pub fn sqrt_in_cyclotomic(a: &BigInt, n: u64) -> Result<bool, HcError> {
    if n == 0 {
        return Err(HcError::BadCyclotomicIndex);
    }
    let s = arith::squarefree_part(a)?;
    let big_n = BigInt::from(n);
    let mut negative = s.is_negative();
    let mut has_two = false;
    for (prime, _) in arith::factorize(&s)?.factors {
        if prime == BigInt::from(2) {
            has_two = true;
            continue;
        }
        if !big_n.is_multiple_of(&prime) {
            return Ok(false);
        }
        if prime.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
            negative = !negative;
        }
    }
    // Leftover unit after dividing out the guaranteed square roots:
    // 1 always works, -1 needs 4 | n, ±2 needs 8 | n.
    let v2 = n.trailing_zeros();
    Ok(match (has_two, negative) {
        (false, false) => true,
        (false, true) => v2 >= 2,
        (true, _) => v2 >= 3,
    })
}

/// All n ≤ n_max for which both √(n(n+4)) and √(n(n-4)) lie in the n-th
/// cyclotomic field — the indices where no class of primes certifies a
/// genus-one witness directly. √0 counts as a member.
pub fn lemma34_scan(n_max: u64) -> Result<Vec<u64>, HcError> {
    if n_max == 0 {
        return Err(HcError::BadCyclotomicIndex);
    }
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let mut both = true;
        for eps in [1i64, -1] {
            let value = BigInt::from(n) * (BigInt::from(n) + BigInt::from(4 * eps));
            let member = value.is_zero() || sqrt_in_cyclotomic(&value, n)?;
            if !member {
                both = false;
                break;
            }
        }
        if both {
            violations.push(n);
        }
    }
    Ok(violations)
}
