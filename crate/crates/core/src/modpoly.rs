//! Dense polynomials over a prime field `F_p`, constant term first.
//!
//! Coefficients are `u64` residues with `p < 2^32`, so products fit in a
//! `u128` accumulator. Irreducibility comes in two flavors: the standard
//! `x^(p^d)` criterion for production paths, and exhaustive divisor search as
//! the desk-scale oracle.

use num_bigint::BigUint;
use num_traits::Zero;

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse in `F_p` by Fermat; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        assert!(p >= 2 && p < (1 << 32), "modulus out of supported range");
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn from_intpoly(f: &crate::intpoly::IntPoly, p: u64) -> Self {
        let pb = num_bigint::BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &pb) + &pb) % &pb;
                u64::try_from(r).expect("residue fits u64")
            })
            .collect();
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(add_mod(self.coeff(i), other.coeff(i), self.p));
        }
        Self::new(self.p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(sub_mod(self.coeff(i), other.coeff(i), self.p));
        }
        Self::new(self.p, out)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| if c == 0 { 0 } else { self.p - c }).collect(),
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        let out = acc.into_iter().map(|v| (v % self.p as u128) as u64).collect();
        Self::new(self.p, out)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be
    /// invertible (always true over a prime field for nonzero divisors).
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let d = divisor.degree();
        if self.degree() < d || self.is_zero() {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.degree() - d + 1];
        for top in (d..rem.len()).rev() {
            let c = mul_mod(rem[top], lead_inv, p);
            if c == 0 {
                continue;
            }
            quo[top - d] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[top - d + i] = sub_mod(rem[top - d + i], mul_mod(c, dc, p), p);
            }
        }
        (Self::new(p, quo), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).1
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let scale = inv_mod(r0.leading(), p);
        (r0.scale(scale), s0.scale(scale), t0.scale(scale))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// All roots in `F_p`, by exhaustive scan.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    pub fn has_root(&self) -> bool {
        (0..self.p).any(|x| self.eval(x) == 0)
    }

    /// `base^exp mod modulus` with an arbitrary-precision exponent.
    pub fn pow_mod_poly(base: &Self, exp: &BigUint, modulus: &Self) -> Self {
        let p = base.p;
        let mut acc = Self::one(p);
        let mut sq = base.rem(modulus);
        for i in 0..exp.bits() {
            if exp.bit(i) {
                acc = acc.mul(&sq).rem(modulus);
            }
            if i + 1 < exp.bits() {
                sq = sq.mul(&sq).rem(modulus);
            }
        }
        if exp.is_zero() {
            acc = Self::one(p);
        }
        acc
    }

    /// Irreducibility over `F_p` by the `x^(p^d)` fixed-point criterion.
    pub fn is_irreducible(&self) -> bool {
        let p = self.p;
        let d = self.degree();
        if self.is_zero() || d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.make_monic();
        let x = Self::x(p);
        // x^(p^d) == x mod f
        let pd = BigUint::from(p).pow(d as u32);
        if Self::pow_mod_poly(&x, &pd, &f) != x.rem(&f) {
            return false;
        }
        // For each prime r | d: gcd(x^(p^(d/r)) - x, f) == 1
        let mut m = d;
        let mut prime_divisors = Vec::new();
        let mut q = 2usize;
        while q * q <= m {
            if m % q == 0 {
                prime_divisors.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            prime_divisors.push(m);
        }
        for r in prime_divisors {
            let pe = BigUint::from(p).pow((d / r) as u32);
            let xp = Self::pow_mod_poly(&x, &pe, &f);
            let g = xp.sub(&x).gcd(&f);
            if g.degree() > 0 || g.is_zero() {
                return false;
            }
        }
        true
    }

    /// Irreducibility by exhaustive monic-divisor search. Exact, exponential,
    /// and only sensible at desk scale; the oracle counterpart of
    /// [`ModPoly::is_irreducible`].
    pub fn is_irreducible_exhaustive(&self) -> bool {
        let d = self.degree();
        if self.is_zero() || d == 0 {
            return false;
        }
        for deg in 1..=d / 2 {
            let mut div = first_monic(self.p, deg);
            loop {
                if self.rem(&div).is_zero() {
                    return false;
                }
                match next_monic(&div) {
                    Some(next) => div = next,
                    None => break,
                }
            }
        }
        true
    }

    /// Complete factorization into monic irreducibles by repeated
    /// smallest-divisor search, returned sorted by (degree, encoding).
    /// Desk scale only.
    pub fn factor_exhaustive(&self) -> Vec<(ModPoly, u32)> {
        assert!(!self.is_zero(), "cannot factor zero");
        let mut out: Vec<(ModPoly, u32)> = Vec::new();
        let mut rest = self.make_monic();
        while rest.degree() > 0 {
            let factor = smallest_monic_irreducible_divisor(&rest);
            let mut mult = 0u32;
            loop {
                let (q, r) = rest.divmod(&factor);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            out.push((factor, mult));
        }
        out
    }

    /// Lexicographic encoding of the non-leading coefficients: the integer
    /// `sum c_i p^i` over `i < degree`. The deterministic tie-break used
    /// everywhere a canonical polynomial is needed.
    pub fn encoding(&self) -> BigUint {
        let mut acc = BigUint::zero();
        let p = BigUint::from(self.p);
        for i in (0..self.degree()).rev() {
            acc = acc * &p + BigUint::from(self.coeff(i));
        }
        acc
    }
}

fn first_monic(p: u64, deg: usize) -> ModPoly {
    let mut coeffs = vec![0u64; deg + 1];
    coeffs[deg] = 1;
    ModPoly::new(p, coeffs)
}

/// Successor of a monic polynomial in encoding order within its degree, or
/// `None` after the last one.
fn next_monic(f: &ModPoly) -> Option<ModPoly> {
    let p = f.p();
    let deg = f.degree();
    let mut coeffs: Vec<u64> = (0..=deg).map(|i| f.coeff(i)).collect();
    for c in coeffs.iter_mut().take(deg) {
        *c += 1;
        if *c < p {
            return Some(ModPoly::new(p, coeffs));
        }
        *c = 0;
    }
    None
}

fn smallest_monic_irreducible_divisor(f: &ModPoly) -> ModPoly {
    let d = f.degree();
    for deg in 1..=d {
        let mut cand = first_monic(f.p(), deg);
        loop {
            if f.rem(&cand).is_zero() && cand.is_irreducible() {
                return cand;
            }
            match next_monic(&cand) {
                Some(next) => cand = next,
                None => break,
            }
        }
    }
    f.make_monic()
}

/// The canonical irreducible of degree `d` over `F_p`: the monic irreducible
/// polynomial minimizing the coefficient encoding `sum c_i p^i`. This plays
/// the role of a Conway-style deterministic choice throughout the crate.
pub fn deterministic_irreducible(p: u64, d: usize) -> ModPoly {
    assert!(d >= 1, "degree must be positive");
    let mut cand = first_monic(p, d);
    loop {
        if cand.is_irreducible() {
            return cand;
        }
        cand = next_monic(&cand).expect("an irreducible of every degree exists over F_p");
    }
}
