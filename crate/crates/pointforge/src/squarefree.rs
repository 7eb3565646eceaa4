//! Squarefree decomposition of integers.
//!
//! Every nonzero integer factors uniquely as `n = δ·k²` with `δ` squarefree;
//! `δ` identifies the quadratic field `Q(√n) = Q(√δ)` and is the bookkeeping
//! device the whole crate hangs its "distinct fields" claims on. The sign of
//! `n` is kept on `δ`, so `Q(√−18) = Q(√−2)`.
//!
//! Factoring is honest about its limits: trial division up to a configurable
//! bound, perfect-power splitting, then deterministic-base Miller–Rabin and
//! Pollard–Brent rho for the remaining cofactor. The result carries a
//! [`Certainty`] flag: `Verified` when every prime factor was proven prime
//! (trial range, or within the deterministic Miller–Rabin range), `Probable`
//! when a probabilistic primality call had the last word.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

use crate::{Error, Result};

/// Default trial-division bound.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Below this threshold the fixed Miller–Rabin base set is a proven
/// primality test (first twelve primes, valid up to ~3.3·10²⁴).
const DETERMINISTIC_MR_LIMIT: &str = "3317044064679887385961981";

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// How sure we are of a factorization-backed claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    /// Every prime factor was proven prime.
    Verified,
    /// At least one factor is only a probable prime (or an unsplit cofactor
    /// assumed squarefree).
    Probable,
}

impl Certainty {
    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::Verified => "verified",
            Certainty::Probable => "probable",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "verified" => Some(Certainty::Verified),
            "probable" => Some(Certainty::Probable),
            _ => None,
        }
    }

    fn and(self, other: Certainty) -> Certainty {
        if self == Certainty::Verified && other == Certainty::Verified {
            Certainty::Verified
        } else {
            Certainty::Probable
        }
    }
}

/// Result of a squarefree decomposition `n = δ·k²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreePart {
    /// The squarefree part `δ`, same sign as the input.
    pub delta: BigInt,
    /// The cofactor `k ≥ 1` with `n = δ·k²`.
    pub cofactor: BigInt,
    /// Whether the underlying factorization was fully proven.
    pub certainty: Certainty,
}

fn small_primes() -> &'static Vec<u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let bound = DEFAULT_TRIAL_BOUND as usize;
        let mut sieve = vec![true; bound + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut p = 2usize;
        while p * p <= bound {
            if sieve[p] {
                let mut q = p * p;
                while q <= bound {
                    sieve[q] = false;
                    q += p;
                }
            }
            p += 1;
        }
        (2..=bound as u64).filter(|&i| sieve[i as usize]).collect()
    })
}

fn mr_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if &b >= n {
            return true; // n is below every remaining base and survived the smaller ones
        }
        let nm1: BigInt = n - 1u32;
        let s = nm1.trailing_zeros().unwrap_or(0);
        let d = &nm1 >> s;
        let mut x = b.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        let mut witness = true;
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                witness = false;
                break;
            }
        }
        if witness {
            return false;
        }
    }
    true
}

/// Primality verdict with the certainty it carries.
fn classify_prime(n: &BigInt) -> Option<Certainty> {
    if !mr_probable_prime(n) {
        return None;
    }
    let limit: BigInt = DETERMINISTIC_MR_LIMIT.parse().unwrap();
    if *n < limit {
        Some(Certainty::Verified)
    } else {
        Some(Certainty::Probable)
    }
}

/// Pollard–Brent rho with fixed, deterministic parameters.
fn pollard_brent(n: &BigInt) -> Option<BigInt> {
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return Some(two);
    }
    for c in 1u64..=20 {
        let c = BigInt::from(c);
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let f = |v: &BigInt| (v * v + &c) % n;
        let mut iterations = 0u64;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break; // cycle without factor; try next c
            }
            d = diff.gcd(n);
            iterations += 1;
            if iterations > 2_000_000 {
                break;
            }
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Splits perfect powers: returns `(root, exponent)` with the largest
/// exponent such that `root^exponent == n`.
fn perfect_power(n: &BigInt) -> (BigInt, u32) {
    let bits = n.bits() as u32;
    for e in (2..=bits.max(2)).rev() {
        let r = n.nth_root(e);
        if num_traits::pow(r.clone(), e as usize) == *n {
            return (r, e);
        }
    }
    (n.clone(), 1)
}

/// Fully factors `n > 0` into `(prime, exponent, certainty)` triples.
///
/// A cofactor that survives all splitting attempts is returned as a single
/// "prime" with `Probable` certainty; in that case the squarefree part may
/// be wrong, which is exactly what the certainty flag signals.
pub fn factorize(n: &BigInt, trial_bound: u64) -> Vec<(BigInt, u32, Certainty)> {
    assert!(n.is_positive(), "factorize requires positive input");
    let mut factors: Vec<(BigInt, u32, Certainty)> = Vec::new();
    let mut rest = n.clone();

    for &p in small_primes() {
        if p > trial_bound {
            break;
        }
        let p = BigInt::from(p);
        if &p * &p > rest {
            break;
        }
        if (&rest % &p).is_zero() {
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            factors.push((p, e, Certainty::Verified));
        }
    }
    if rest.is_one() {
        return factors;
    }
    if rest <= BigInt::from(trial_bound) * BigInt::from(trial_bound) {
        // survived trial division below its square root, hence prime
        factors.push((rest, 1, Certainty::Verified));
        return factors;
    }

    // recursive splitting of the hard cofactor
    let mut stack = vec![(rest, 1u32)];
    while let Some((m, mult)) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(cert) = classify_prime(&m) {
            merge_factor(&mut factors, m, mult, cert);
            continue;
        }
        let (root, e) = perfect_power(&m);
        if e > 1 {
            stack.push((root, mult * e));
            continue;
        }
        match pollard_brent(&m) {
            Some(d) => {
                let q = &m / &d;
                stack.push((d, mult));
                stack.push((q, mult));
            }
            None => {
                // unsplit composite: record as-is, flagged probable
                merge_factor(&mut factors, m, mult, Certainty::Probable);
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    factors
}

fn merge_factor(factors: &mut Vec<(BigInt, u32, Certainty)>, p: BigInt, e: u32, c: Certainty) {
    if let Some(f) = factors.iter_mut().find(|f| f.0 == p) {
        f.1 += e;
        f.2 = f.2.and(c);
    } else {
        factors.push((p, e, c));
    }
}

/// The squarefree part `δ` of a nonzero integer: `n = δ·k²` with `δ`
/// squarefree and `sign(δ) = sign(n)`.
pub fn squarefree_part(n: &BigInt) -> Result<SquarefreePart> {
    squarefree_part_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// As [`squarefree_part`], with an explicit trial-division bound.
pub fn squarefree_part_with_bound(n: &BigInt, trial_bound: u64) -> Result<SquarefreePart> {
    if n.is_zero() {
        return Err(Error::ZeroSquarefree);
    }
    let mut delta = BigInt::one();
    let mut cofactor = BigInt::one();
    let mut certainty = Certainty::Verified;
    for (p, e, c) in factorize(&n.abs(), trial_bound) {
        if e % 2 == 1 {
            delta *= &p;
        }
        cofactor *= num_traits::pow(p, (e / 2) as usize);
        certainty = certainty.and(c);
    }
    if n.is_negative() {
        delta = -delta;
    }
    Ok(SquarefreePart {
        delta,
        cofactor,
        certainty,
    })
}

/// Squarefree part of a nonzero rational: `Q(√(a/b)) = Q(√(ab))`, so this is
/// `squarefree_part(num·den)`.
pub fn rational_squarefree_part(q: &BigRational) -> Result<SquarefreePart> {
    if q.is_zero() {
        return Err(Error::ZeroSquarefree);
    }
    squarefree_part(&(q.numer() * q.denom()))
}

/// Writes a nonzero rational as `w = k²·δ` and returns `(δ, k)` with `k > 0`.
pub fn split_square_part(w: &BigRational) -> Result<(BigInt, BigRational)> {
    let sf = rational_squarefree_part(w)?;
    let k2 = w / BigRational::from_integer(sf.delta.clone());
    let k = crate::rational::rat_sqrt_exact(&k2)
        .expect("w / squarefree_part(w) must be a perfect rational square");
    Ok((sf.delta, k))
}

/// Checks that `n` is squarefree (used by the certificate verifier).
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Ok(squarefree_part(n)?.delta == *n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sf(n: i64) -> BigInt {
        squarefree_part(&BigInt::from(n)).unwrap().delta
    }

    #[test]
    fn small_cases() {
        assert_eq!(sf(12), BigInt::from(3));
        assert_eq!(sf(1), BigInt::from(1));
        assert_eq!(sf(-18), BigInt::from(-2));
        assert_eq!(sf(432), BigInt::from(3));
        assert_eq!(sf(93525), BigInt::from(3741));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            squarefree_part(&BigInt::zero()).unwrap_err(),
            Error::ZeroSquarefree
        );
        assert_eq!(
            rational_squarefree_part(&rat(0, 5)).unwrap_err(),
            Error::ZeroSquarefree
        );
    }

    #[test]
    fn rational_cases() {
        assert_eq!(
            rational_squarefree_part(&rat(-357, 16)).unwrap().delta,
            BigInt::from(-357)
        );
        assert_eq!(
            rational_squarefree_part(&rat(4, 9)).unwrap().delta,
            BigInt::from(1)
        );
        assert_eq!(
            rational_squarefree_part(&rat(93525, 16)).unwrap().delta,
            BigInt::from(3741)
        );
    }

    #[test]
    fn split_square() {
        let (delta, k) = split_square_part(&rat(-357, 16)).unwrap();
        assert_eq!(delta, BigInt::from(-357));
        assert_eq!(k, rat(1, 4));
        let (delta, k) = split_square_part(&rat(432, 1)).unwrap();
        assert_eq!(delta, BigInt::from(3));
        assert_eq!(k, rat(12, 1));
    }

    #[test]
    fn large_semiprime_is_handled() {
        // 1000003 * 1000033 — both above the default trial bound
        let n: BigInt = "1000036000099".parse().unwrap();
        let out = squarefree_part(&n).unwrap();
        assert_eq!(out.delta, n);
        assert_eq!(out.certainty, Certainty::Verified);
        // its square has squarefree part 1
        let sq = &n * &n;
        let out = squarefree_part(&sq).unwrap();
        assert_eq!(out.delta, BigInt::one());
    }

    #[test]
    fn delta_invariants_on_range() {
        // n / delta is a perfect square and delta has no square factor > 1
        for n in (-300i64..300).filter(|&n| n != 0) {
            let out = squarefree_part(&BigInt::from(n)).unwrap();
            let q = BigInt::from(n) / &out.delta;
            let r = crate::rational::int_sqrt_exact(&q).expect("quotient must be a square");
            assert_eq!(&r * &r * &out.delta, BigInt::from(n));
            for d in 2i64..=17 {
                let d2 = BigInt::from(d * d);
                assert!(
                    !(&out.delta % &d2).is_zero(),
                    "delta {} divisible by {}",
                    out.delta,
                    d2
                );
            }
            assert_eq!(out.certainty, Certainty::Verified);
        }
    }
}
