//! Exact integer kernel: extended gcd, Jacobi symbols, primality testing,
//! modular square roots, and trial-division factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::LazyLock;
use thiserror::Error;

/// Largest |n| accepted by [`factorize`] and everything built on it.
/// Factorization is trial division, so this keeps the worst case near
/// sqrt(cap) divisions.
pub const DEFAULT_FACTOR_CAP: u64 = 1_000_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("ext_gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("jacobi symbol needs an odd positive modulus, got {0}")]
    BadJacobiModulus(BigInt),
    #[error("modulus {0} is not an odd prime")]
    NotAnOddPrime(BigInt),
    #[error("{a} is not a quadratic residue mod {l}")]
    NonResidue { a: BigInt, l: BigInt },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigInt),
    #[error("|{0}| exceeds the factorization cap {1}")]
    ModulusTooLarge(BigInt, u64),
    #[error("cannot factor 0")]
    ZeroInput,
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g = gcd(a, b) > 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt), ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (BigInt::one(), BigInt::zero());
    let (mut y0, mut y1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        // Invariant: r_i = a·x_i + b·y_i.
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), r0 - &q * &r1);
        (x0, x1) = (x1.clone(), x0 - &q * &x1);
        (y0, y1) = (y1.clone(), y0 - &q * &y1);
    }
    if r0.is_negative() {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    Ok((r0, x0, y0))
}

/// Inverse of a modulo m > 0, if gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if !m.is_positive() {
        return None;
    }
    let (g, x, _) = ext_gcd(a, m).ok()?;
    if g.is_one() {
        Some(x.mod_floor(m))
    } else {
        None
    }
}

/// Jacobi symbol (a / m) for odd m ≥ 1; values in {-1, 0, 1}.
pub fn jacobi(a: &BigInt, m: &BigInt) -> Result<i32, ArithError> {
    if !m.is_positive() || m.is_even() {
        return Err(ArithError::BadJacobiModulus(m.clone()));
    }
    let mut a = a.mod_floor(m);
    let mut m = m.clone();
    let mut sign = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r = (&m % 8u8).to_u8().expect("residue mod 8 fits in u8");
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if (&a % 4u8) == BigInt::from(3) && (&m % 4u8) == BigInt::from(3) {
            sign = -sign;
        }
        a = a.mod_floor(&m);
    }
    Ok(if m.is_one() { sign } else { 0 })
}

/// Strong-probable-prime bases certifying primality for all
/// n < 3_317_044_064_679_887_385_961_981 (the first 13 primes).
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Extra fixed bases used above the deterministic range; together with
/// [`MR_BASES`] this makes 64 rounds, a probabilistic check with fixed,
/// reproducible bases.
const MR_EXTRA_BASES: [u32; 51] = [
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241,
    251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311,
];

static MR_DETERMINISTIC_LIMIT: LazyLock<BigUint> = LazyLock::new(|| {
    BigUint::parse_bytes(b"3317044064679887385961981", 10).expect("literal parses")
});

/// True iff |n| is prime. Deterministic below ~3.3e24; above that the test
/// runs 64 fixed-base Miller-Rabin rounds (probabilistic, documented).
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.magnitude().clone();
    if n < BigUint::from(2u32) {
        return false;
    }
    for p in MR_BASES.iter().chain(MR_EXTRA_BASES.iter()) {
        let p = BigUint::from(*p);
        if n == p {
            return true;
        }
        if (&n % &p).is_zero() {
            return false;
        }
    }
    // n - 1 = d · 2^s with d odd.
    let one = BigUint::one();
    let n_minus_1 = &n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 > 0");
    let d = &n_minus_1 >> s;
    let rounds: Vec<u32> = if n < *MR_DETERMINISTIC_LIMIT {
        MR_BASES.to_vec()
    } else {
        // 64 rounds total; fixed bases keep the answer reproducible.
        MR_BASES.iter().chain(MR_EXTRA_BASES.iter()).copied().collect()
    };
    'witness: for a in rounds {
        let a = BigUint::from(a) % &n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, &n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest square root of a modulo an odd prime l (Tonelli-Shanks):
/// returns z with 0 ≤ z ≤ l - z and z² ≡ a (mod l).
pub fn sqrt_mod_prime(a: &BigInt, l: &BigInt) -> Result<BigInt, ArithError> {
    if l.is_even() || *l < BigInt::from(3) || !is_prime(l) {
        return Err(ArithError::NotAnOddPrime(l.clone()));
    }
    let a = a.mod_floor(l);
    if a.is_zero() {
        return Ok(BigInt::zero());
    }
    if jacobi(&a, l).expect("l is odd and positive") == -1 {
        return Err(ArithError::NonResidue { a, l: l.clone() });
    }
    let one = BigInt::one();
    let z = if (l % 4u8) == BigInt::from(3) {
        let e = (l + &one) >> 2;
        modpow(&a, &e, l)
    } else {
        tonelli_shanks(&a, l)
    };
    let other = l - &z;
    Ok(if z <= other { z } else { other })
}

fn modpow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.mod_floor(m).modpow(exp, m)
}

/// Tonelli-Shanks for l ≡ 1 (mod 4), a a known residue.
fn tonelli_shanks(a: &BigInt, l: &BigInt) -> BigInt {
    let one = BigInt::one();
    // l - 1 = q · 2^s with q odd.
    let l_minus_1 = l - &one;
    let s = l_minus_1.trailing_zeros().expect("l > 1");
    let q = &l_minus_1 >> s;
    // Smallest quadratic nonresidue as the auxiliary base.
    let mut b = BigInt::from(2);
    while jacobi(&b, l).expect("l is odd and positive") != -1 {
        b += 1;
    }
    let mut m = s;
    let mut c = modpow(&b, &q, l);
    let mut t = modpow(a, &q, l);
    let mut r = modpow(a, &((&q + &one) >> 1), l);
    while !t.is_one() {
        // Smallest i with t^(2^i) = 1; 0 < i < m.
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(l);
            i += 1;
        }
        let gap = m - i - 1;
        let mut bsq = c.clone();
        for _ in 0..gap {
            bsq = (&bsq * &bsq).mod_floor(l);
        }
        m = i;
        c = (&bsq * &bsq).mod_floor(l);
        t = (&t * &c).mod_floor(l);
        r = (&r * &bsq).mod_floor(l);
    }
    r
}

/// Some z with z² ≡ a (mod m), if one exists. Works through factorization
/// of m, prime-power lifting (2 handled separately), and CRT recombination.
pub fn sqrt_mod(a: &BigInt, m: &BigInt) -> Result<Option<BigInt>, ArithError> {
    if *m < BigInt::from(2) {
        return Err(ArithError::ModulusTooSmall(m.clone()));
    }
    let f = factorize(m)?;
    let a = a.mod_floor(m);
    let mut root = BigInt::zero();
    let mut modulus = BigInt::one();
    for (p, e) in &f.factors {
        let pe = p.pow(*e);
        let ape = a.mod_floor(&pe);
        let r = if *p == BigInt::from(2) {
            sqrt_mod_power_of_two(&ape, *e)
        } else {
            sqrt_mod_odd_prime_power(&ape, p, *e)
        };
        match r {
            None => return Ok(None),
            Some(r) => {
                root = crt(&root, &modulus, &r, &pe);
                modulus *= pe;
            }
        }
    }
    Ok(Some(root))
}

/// Root of z² ≡ a (mod p^e) for odd prime p, 0 ≤ a < p^e.
fn sqrt_mod_odd_prime_power(a: &BigInt, p: &BigInt, e: u32) -> Option<BigInt> {
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    // a = p^k · a0 with p not dividing a0.
    let mut k = 0u32;
    let mut a0 = a.clone();
    while (&a0 % p).is_zero() {
        a0 /= p;
        k += 1;
    }
    if !k.is_multiple_of(2) {
        return None;
    }
    let f = e - k;
    let w1 = match sqrt_mod_prime(&a0, p) {
        Ok(w) => w,
        Err(_) => return None,
    };
    // Hensel lifting: doubles the precision each step (p odd, 2w invertible).
    let mut w = w1;
    let mut prec = 1u32;
    while prec < f {
        prec = (prec * 2).min(f);
        let pj = p.pow(prec);
        let two_w_inv = mod_inverse(&(2 * &w), &pj).expect("2w is a unit mod p^j");
        let delta = (&w * &w - &a0) * two_w_inv;
        w = (&w - delta).mod_floor(&pj);
    }
    Some((p.pow(k / 2) * w).mod_floor(&p.pow(e)))
}

/// Root of z² ≡ a (mod 2^e), 0 ≤ a < 2^e.
fn sqrt_mod_power_of_two(a: &BigInt, e: u32) -> Option<BigInt> {
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let k = a.trailing_zeros().expect("a > 0") as u32;
    if !k.is_multiple_of(2) {
        return None;
    }
    let a0 = a >> k;
    let f = e - k;
    let w = match f {
        1 => BigInt::one(),
        2 => {
            if (&a0 % 4u8) != BigInt::one() {
                return None;
            }
            BigInt::one()
        }
        _ => {
            if (&a0 % 8u8) != BigInt::one() {
                return None;
            }
            // Lift w² ≡ a0 from mod 2^3 to mod 2^f; at each step either w
            // or w + 2^(j-1) works because (w + 2^(j-1))² ≡ w² + 2^j w.
            let mut w = BigInt::one();
            for j in 3..f {
                let diff: BigInt = (&w * &w - &a0) >> j;
                if diff.is_odd() {
                    w += BigInt::one() << (j - 1);
                }
            }
            w
        }
    };
    Some(((BigInt::one() << (k / 2)) * w).mod_floor(&(BigInt::one() << e)))
}

/// CRT: the residue mod m1·m2 matching r1 mod m1 and r2 mod m2 (coprime).
fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    let (g, x, _) = ext_gcd(m1, m2).expect("moduli nonzero");
    debug_assert!(g.is_one(), "CRT moduli must be coprime");
    let m = m1 * m2;
    (r1 + (r2 - r1) * x * m1).mod_floor(&m)
}

/// Prime factorization with sign: n = sign · Π pᵉ, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i32,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn reconstruct(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= p.pow(*e);
        }
        n
    }
}

/// Trial-division factorization of n ≠ 0 with the default cap.
pub fn factorize(n: &BigInt) -> Result<Factorization, ArithError> {
    factorize_with_cap(n, DEFAULT_FACTOR_CAP)
}

/// Trial-division factorization of n ≠ 0 with |n| ≤ cap.
pub fn factorize_with_cap(n: &BigInt, cap: u64) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mag = n.magnitude();
    if *mag > BigUint::from(cap) {
        return Err(ArithError::ModulusTooLarge(n.clone(), cap));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = mag.to_u64().expect("within cap, fits u64");
    let mut factors = Vec::new();
    let mut push = |p: u64, e: u32| factors.push((BigInt::from(p), e));
    let mut e2 = 0u32;
    while m.is_multiple_of(2) {
        m /= 2;
        e2 += 1;
    }
    if e2 > 0 {
        push(2, e2);
    }
    let mut d = 3u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0u32;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            push(d, e);
        }
        d += 2;
    }
    if m > 1 {
        push(m, 1);
    }
    Ok(Factorization { sign, factors })
}

/// Signed squarefree part: n = squarefree_part(n) × (square), same sign as n.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt, ArithError> {
    let f = factorize(n)?;
    let mut s = BigInt::from(f.sign);
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}
