//! Primality, factorization, and multiplicative-order utilities.
//!
//! Everything here is desk scale by design: input primes are validated by
//! trial division, 64-bit primality is deterministic Miller-Rabin, and larger
//! numbers get Miller-Rabin with a fixed base set. Factorization is trial
//! division followed by Brent's variant of Pollard rho under an explicit
//! iteration budget, reporting a partial result instead of guessing when the
//! budget runs out.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rng::SplitMix64;

/// Primes `<= bound`, by sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Prime test by trial division up to the square root.
///
/// This is the validation path for user-supplied primes; it is exact and
/// intentionally naive.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is exact for
/// all inputs below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-precision integers.
///
/// Below 2^64 this is the deterministic test; above, Miller-Rabin with 40
/// fixed pseudo-random bases.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64_digits().first().copied().filter(|_| n.bits() <= 64) {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let mut rng = SplitMix64::new(0x5ca1ab1e);
    'witness: for _ in 0..40 {
        // Base in [2, n-2]; n has > 64 bits so a 64-bit draw is always in range.
        let a = BigUint::from(2 + rng.next_u64() % (u64::MAX - 4));
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `q`-adic valuation of `n` (`n > 0`, `q >= 2`).
pub fn valuation(n: &BigUint, q: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let q = BigUint::from(q);
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (quo, rem) = m.div_rem(&q);
        if !rem.is_zero() {
            return v;
        }
        m = quo;
        v += 1;
    }
}

/// Multiplicative order of `a` modulo `m`, by brute-force successive
/// multiplication. Requires `gcd(a, m) = 1`; this is the oracle-grade route.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(m > 1, "modulus must exceed 1");
    let a = a % m;
    assert!(a.gcd(&m) == 1, "base must be invertible");
    let mut x = a;
    let mut ord = 1u64;
    while x != 1 {
        x = mulmod_u64(x, a, m);
        ord += 1;
        assert!(ord <= m, "order search exceeded modulus; gcd check failed?");
    }
    ord
}

/// Outcome of a bounded factorization attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// All prime factors found, sorted ascending, with multiplicities.
    Complete(Vec<(BigUint, u32)>),
    /// Budget ran out: the primes found so far and the unfactored cofactor
    /// (composite or of unknown status).
    Partial {
        found: Vec<(BigUint, u32)>,
        cofactor: BigUint,
    },
}

fn push_factor(factors: &mut Vec<(BigUint, u32)>, p: BigUint, k: u32) {
    if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += k;
    } else {
        factors.push((p, k));
    }
}

/// Brent-cycle Pollard rho on `n` (odd, composite, not a prime power check
/// is the caller's concern). Returns a nontrivial factor or `None` once the
/// iteration budget is exhausted.
pub fn pollard_rho(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Ok(small) = u64::try_from(n.clone()) {
        return pollard_rho_u64(small, budget).map(BigUint::from);
    }
    let one = BigUint::one();
    let mut rng = SplitMix64::new(0xfaceb00c);
    for _attempt in 0..8 {
        let c = BigUint::from(1 + rng.next_u64() % 1024);
        let mut x = BigUint::from(2 + rng.next_u64() % 1024);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut iters = 0u64;
        while d == one {
            if iters >= budget {
                return None;
            }
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; retry with a new constant
            }
            d = diff.gcd(n);
            iters += 1;
        }
        if d != one && &d != n {
            return Some(d);
        }
    }
    None
}

fn pollard_rho_u64(n: u64, budget: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut rng = SplitMix64::new(0xfaceb00c);
    for _attempt in 0..16 {
        let c = 1 + rng.below(n - 1);
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = rng.below(n);
        let mut y = x;
        let mut d = 1u64;
        let mut iters = 0u64;
        while d == 1 {
            if iters >= budget {
                return None;
            }
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
            iters += 1;
        }
        if d != n {
            return Some(d);
        }
    }
    None
}

/// Factor `n` by trial division up to `trial_bound`, then recursive
/// Miller-Rabin + Pollard rho under `rho_budget` iterations per split.
pub fn factorize(n: &BigUint, trial_bound: u64, rho_budget: u64) -> Factorization {
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let one = BigUint::one();
    if m <= one {
        return Factorization::Complete(found);
    }
    for d in std::iter::once(2u64).chain((3..=trial_bound).step_by(2)) {
        if BigUint::from(d).pow(2) > m {
            break;
        }
        let big_d = BigUint::from(d);
        let mut k = 0u32;
        loop {
            let (quo, rem) = m.div_rem(&big_d);
            if !rem.is_zero() {
                break;
            }
            m = quo;
            k += 1;
        }
        if k > 0 {
            push_factor(&mut found, big_d, k);
        }
        if m == one {
            break;
        }
    }
    // Recursively split what's left.
    let mut stack = Vec::new();
    if m > one {
        stack.push(m);
    }
    while let Some(c) = stack.pop() {
        if is_prime_big(&c) {
            push_factor(&mut found, c, 1);
            continue;
        }
        match pollard_rho(&c, rho_budget) {
            Some(d) => {
                let q = &c / &d;
                stack.push(d);
                stack.push(q);
            }
            None => {
                found.sort_by(|a, b| a.0.cmp(&b.0));
                return Factorization::Partial { found, cofactor: c };
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Factorization::Complete(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial() {
        let sieved = primes_up_to(200);
        let trial: Vec<u64> = (0..=200).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(sieved, trial);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_small() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), is_prime_trial(n), "disagreement at {n}");
        }
    }

    #[test]
    fn big_prime_recognized() {
        // The 98-bit prime factor of (5^49-1)/(5^7-1).
        let p: BigUint = "227376585863531112677002031251".parse().unwrap();
        assert!(is_prime_big(&p));
        assert!(!is_prime_big(&(&p * 3u32)));
    }

    #[test]
    fn valuation_basics() {
        assert_eq!(valuation(&BigUint::from(80u32), 2), 4);
        assert_eq!(valuation(&BigUint::from(81u32), 3), 4);
        assert_eq!(valuation(&BigUint::from(7u32), 2), 0);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(2, 5), 4);
        assert_eq!(multiplicative_order(19, 5), 2);
        assert_eq!(multiplicative_order(2, 3), 2);
    }

    #[test]
    fn factorize_complete() {
        let n = BigUint::from(2u32 * 3 * 3 * 5 * 7 * 11 * 13);
        match factorize(&n, 100, 10_000) {
            Factorization::Complete(fs) => {
                let expanded: Vec<(u64, u32)> = fs
                    .iter()
                    .map(|(p, k)| (u64::try_from(p.clone()).unwrap(), *k))
                    .collect();
                assert_eq!(expanded, vec![(2, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)]);
            }
            other => panic!("expected complete factorization, got {other:?}"),
        }
    }

    #[test]
    fn factorize_large_semiprime_with_rho() {
        // 1000003 * 1000033
        let n = BigUint::from(1000003u64) * BigUint::from(1000033u64);
        match factorize(&n, 1000, 1_000_000) {
            Factorization::Complete(fs) => {
                assert_eq!(fs.len(), 2);
                assert_eq!(fs[0].0, BigUint::from(1000003u64));
                assert_eq!(fs[1].0, BigUint::from(1000033u64));
            }
            other => panic!("rho should crack this, got {other:?}"),
        }
    }

    #[test]
    fn factorize_reports_partial_honestly() {
        let p: BigUint = "227376585863531112677002031251".parse().unwrap();
        let n = &p * &p;
        match factorize(&n, 100, 10) {
            Factorization::Partial { cofactor, .. } => assert_eq!(cofactor, n),
            Factorization::Complete(_) => panic!("budget of 10 cannot crack a 196-bit square"),
        }
    }
}
