//! Explicit finite field models `F_(p^m) = F_p[x]/(h)`.
//!
//! The defining polynomial is always the canonical irreducible from
//! [`crate::modpoly::deterministic_irreducible`], so two runs (or two
//! machines) agree byte for byte on every element. Elements are coefficient
//! vectors in the power basis of the class of `x`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::FpMat;
use crate::modpoly::{add_mod, mul_mod, sub_mod, ModPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    modulus: ModPoly,
}

/// An element of a [`FiniteField`], as `degree` coefficients (constant first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FqElem(pub Vec<u64>);

impl FiniteField {
    /// The canonical model of `F_(p^degree)`.
    pub fn new(p: u64, degree: usize) -> Self {
        assert!(degree >= 1);
        let modulus = crate::modpoly::deterministic_irreducible(p, degree);
        Self { p, degree, modulus }
    }

    /// A model over a caller-supplied irreducible modulus.
    pub fn with_modulus(modulus: ModPoly) -> Self {
        assert!(modulus.is_monic() && modulus.degree() >= 1);
        assert!(modulus.is_irreducible(), "modulus must be irreducible");
        Self { p: modulus.p(), degree: modulus.degree(), modulus }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &ModPoly {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.degree])
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut v = vec![0; self.degree];
        v[0] = c % self.p;
        FqElem(v)
    }

    /// The class of `x` (for degree 1 this is the residue of the modulus root).
    pub fn generator(&self) -> FqElem {
        if self.degree == 1 {
            // x = -c0 in F_p[x]/(x + c0)
            let c0 = self.modulus.coeff(0);
            return self.from_u64(if c0 == 0 { 0 } else { self.p - c0 });
        }
        let mut v = vec![0; self.degree];
        v[1] = 1;
        FqElem(v)
    }

    pub fn from_poly(&self, f: &ModPoly) -> FqElem {
        assert_eq!(f.p(), self.p);
        let r = f.rem(&self.modulus);
        let mut v = vec![0; self.degree];
        for i in 0..=r.degree() {
            if !r.is_zero() {
                v[i] = r.coeff(i);
            }
        }
        FqElem(v)
    }

    pub fn to_poly(&self, a: &FqElem) -> ModPoly {
        ModPoly::new(self.p, a.0.clone())
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(a.0.iter().zip(&b.0).map(|(&x, &y)| add_mod(x, y, self.p)).collect())
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(a.0.iter().zip(&b.0).map(|(&x, &y)| sub_mod(x, y, self.p)).collect())
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let m = self.degree;
        if m == 1 {
            return FqElem(vec![mul_mod(a.0[0], b.0[0], self.p)]);
        }
        let mut acc = vec![0u128; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                acc[i + j] += x as u128 * y as u128;
            }
        }
        let mut red: Vec<u64> = acc.into_iter().map(|v| (v % self.p as u128) as u64).collect();
        // reduce by the monic modulus
        for top in (m..red.len()).rev() {
            let c = red[top];
            if c == 0 {
                continue;
            }
            red[top] = 0;
            for i in 0..m {
                let hc = self.modulus.coeff(i);
                if hc != 0 {
                    red[top - m + i] = sub_mod(red[top - m + i], mul_mod(c, hc, self.p), self.p);
                }
            }
        }
        red.truncate(m);
        FqElem(red)
    }

    pub fn scalar_mul(&self, c: u64, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = self.to_poly(a).ext_gcd(&self.modulus);
        debug_assert_eq!(g.degree(), 0);
        Some(self.from_poly(&s))
    }

    pub fn pow(&self, a: &FqElem, e: &BigUint) -> FqElem {
        let mut acc = self.one();
        let mut sq = a.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(&acc, &sq);
            }
            if i + 1 < e.bits() {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, &BigUint::from(self.p))
    }

    /// Lexicographic key: coefficients from highest power down, so ordering
    /// keys agree with the integer encoding `sum c_i p^i`.
    pub fn encoding_key(&self, a: &FqElem) -> Vec<u64> {
        a.0.iter().rev().copied().collect()
    }

    /// The canonical primitive `ell`-th root of unity: the least one in
    /// encoding order. `None` when `ell` does not divide `p^m - 1`.
    pub fn primitive_root_of_unity(&self, ell: u64) -> Option<FqElem> {
        assert!(ell >= 2);
        let order = self.order() - BigUint::one();
        let (cofactor, rem) = order.div_rem(&BigUint::from(ell));
        if !rem.is_zero() {
            return None;
        }
        // Scan elements in encoding order until one has a nontrivial ell-part.
        let mut counter = BigUint::one();
        let t = loop {
            let cand = self.decode(&counter);
            if !self.is_zero(&cand) {
                let t = self.pow(&cand, &cofactor);
                if t != self.one() {
                    break t;
                }
            }
            counter += BigUint::one();
            assert!(
                counter < self.order(),
                "no primitive root found; ell-divisibility check was wrong"
            );
        };
        // t generates the full group of ell-th roots; take the least power.
        let mut best = t.clone();
        let mut cur = t.clone();
        for _ in 2..ell {
            cur = self.mul(&cur, &t);
            if self.encoding_key(&cur) < self.encoding_key(&best) {
                best = cur.clone();
            }
        }
        Some(best)
    }

    fn decode(&self, n: &BigUint) -> FqElem {
        let p = BigUint::from(self.p);
        let mut v = Vec::with_capacity(self.degree);
        let mut m = n.clone();
        for _ in 0..self.degree {
            let (q, r) = m.div_rem(&p);
            v.push(u64::try_from(r).expect("digit fits"));
            m = q;
        }
        FqElem(v)
    }

    /// Smallest `e` (dividing the field degree) such that every given element
    /// lies in `F_(p^e)`.
    pub fn subfield_degree(&self, elems: &[FqElem]) -> usize {
        for e in 1..=self.degree {
            if self.degree % e != 0 {
                continue;
            }
            let pe = BigUint::from(self.p).pow(e as u32);
            if elems.iter().all(|a| self.pow(a, &pe) == *a) {
                return e;
            }
        }
        self.degree
    }

    /// Some element of multiplicative order exactly `ell` (`ell` prime), or
    /// `None` when `ell` does not divide `p^m - 1`. Unlike
    /// [`FiniteField::primitive_root_of_unity`] this never enumerates the
    /// `ell` roots, so it stays cheap for cryptographic-sized `ell`.
    pub fn any_root_of_unity(&self, ell: &BigUint) -> Option<FqElem> {
        let order = self.order() - BigUint::one();
        let (cofactor, rem) = order.div_rem(ell);
        if !rem.is_zero() {
            return None;
        }
        let mut counter = BigUint::one();
        loop {
            let cand = self.decode(&counter);
            if !self.is_zero(&cand) {
                let t = self.pow(&cand, &cofactor);
                if t != self.one() {
                    return Some(t);
                }
            }
            counter += BigUint::one();
            assert!(counter < self.order(), "no element of the required order");
        }
    }

    /// Matrix whose columns are the power-basis coordinates of the given
    /// elements; handy for change-of-basis solves.
    pub fn coordinate_matrix(&self, elems: &[FqElem]) -> FpMat {
        FpMat::from_fn(self.p, self.degree, elems.len(), |r, c| elems[c].0[r])
    }

    /// Minimal polynomial of `a` over `F_p`, as the product over the
    /// Frobenius orbit; always lands in `F_p[x]`.
    pub fn minimal_polynomial(&self, a: &FqElem) -> ModPoly {
        let mut orbit = vec![a.clone()];
        loop {
            let next = self.frobenius(orbit.last().unwrap());
            if next == orbit[0] {
                break;
            }
            orbit.push(next);
        }
        let poly = FqPoly::product_of_linears(self, &orbit);
        poly.into_prime_field_poly(self)
            .expect("orbit product must have prime-field coefficients")
    }
}

/// Polynomials with coefficients in a finite field extension; only what root
/// searches and orbit products need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    pub coeffs: Vec<FqElem>, // constant first, normalized
}

impl FqPoly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Lift a prime-field polynomial into the extension.
    pub fn from_mod_poly(field: &FiniteField, f: &ModPoly) -> Self {
        let coeffs = f.coeffs().iter().map(|&c| field.from_u64(c)).collect();
        Self::new(field, coeffs)
    }

    /// `prod_i (x - roots[i])`.
    pub fn product_of_linears(field: &FiniteField, roots: &[FqElem]) -> Self {
        let mut acc = Self::new(field, vec![field.one()]);
        for r in roots {
            let factor = Self::new(field, vec![field.neg(r), field.one()]);
            acc = acc.mul(field, &factor);
        }
        acc
    }

    pub fn add(&self, field: &FiniteField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            out.push(field.add(&a, &b));
        }
        Self::new(field, out)
    }

    pub fn sub(&self, field: &FiniteField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            out.push(field.sub(&a, &b));
        }
        Self::new(field, out)
    }

    pub fn mul(&self, field: &FiniteField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = field.mul(a, b);
                out[i + j] = field.add(&out[i + j], &prod);
            }
        }
        Self::new(field, out)
    }

    /// Remainder modulo a divisor with invertible leading coefficient.
    pub fn rem(&self, field: &FiniteField, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        let d = divisor.degree();
        if self.is_zero() || self.degree() < d {
            return self.clone();
        }
        let lead_inv = field.inv(divisor.coeffs.last().unwrap()).expect("unit leading coeff");
        let mut rem = self.coeffs.clone();
        for top in (d..rem.len()).rev() {
            let c = field.mul(&rem[top], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            rem[top] = field.zero();
            for (i, dc) in divisor.coeffs.iter().take(d).enumerate() {
                let sub = field.mul(&c, dc);
                rem[top - d + i] = field.sub(&rem[top - d + i], &sub);
            }
        }
        Self::new(field, rem)
    }

    pub fn gcd(&self, field: &FiniteField, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = field.inv(a.coeffs.last().unwrap()).unwrap();
        let coeffs = a.coeffs.iter().map(|c| field.mul(c, &inv)).collect();
        Self::new(field, coeffs)
    }

    pub fn pow_mod(base: &Self, field: &FiniteField, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::new(field, vec![field.one()]);
        let mut sq = base.rem(field, modulus);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(field, &sq).rem(field, modulus);
            }
            if i + 1 < e.bits() {
                sq = sq.mul(field, &sq).rem(field, modulus);
            }
        }
        acc
    }

    pub fn eval(&self, field: &FiniteField, x: &FqElem) -> FqElem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    /// Convert to a prime-field polynomial when every coefficient is scalar.
    pub fn into_prime_field_poly(&self, field: &FiniteField) -> Option<ModPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.0.iter().skip(1).any(|&x| x != 0) {
                return None;
            }
            out.push(c.0[0]);
        }
        Some(ModPoly::new(field.p(), out))
    }
}

/// One root of `f` in `field`, or `None` when it has no root there.
///
/// Exhaustive scan for tiny fields (deterministic, and the desk-scale
/// oracle); equal-degree splitting with a seeded generator otherwise.
pub fn root_in_field(f: &ModPoly, field: &FiniteField) -> Option<FqElem> {
    let lifted = FqPoly::from_mod_poly(field, f);
    root_of_fqpoly(&lifted, field)
}

pub fn root_of_fqpoly(f: &FqPoly, field: &FiniteField) -> Option<FqElem> {
    assert!(!f.is_zero());
    if f.degree() == 0 {
        return None;
    }
    if field.order() <= BigUint::from(4096u32) {
        let size = u64::try_from(field.order()).unwrap();
        let mut n = BigUint::zero();
        for _ in 0..size {
            let cand = field.decode(&n);
            if field.is_zero(&f.eval(field, &cand)) {
                return Some(cand);
            }
            n += BigUint::one();
        }
        return None;
    }
    // Keep only the part of f that splits into linear factors over the field:
    // gcd(f, x^q - x) computed as gcd(f, (x^q mod f) - x).
    let x = FqPoly::new(field, vec![field.zero(), field.one()]);
    let xq = FqPoly::pow_mod(&x, field, &field.order(), f);
    let mut g = xq.sub(field, &x).gcd(field, f);
    if g.is_zero() || g.degree() == 0 {
        return None;
    }
    // Cantor-Zassenhaus equal-degree-1 splitting, deterministic seed.
    let mut rng = crate::rng::SplitMix64::new(0x0dd5eed);
    let half = (&field.order() - BigUint::one()) >> 1;
    while g.degree() > 1 {
        // random a; split g by gcd(g, (x+a)^((q-1)/2) - 1)
        let a = {
            let mut v = vec![0u64; field.degree()];
            for c in v.iter_mut() {
                *c = rng.below(field.p());
            }
            FqElem(v)
        };
        let shifted = FqPoly::new(field, vec![a, field.one()]);
        if field.p() == 2 {
            // char 2: use the trace map sum_{i} x^(2^i) instead of a power
            let mut tr = shifted.clone().rem(field, &g);
            let mut term = shifted.rem(field, &g);
            let bits = field.order().bits() - 1;
            for _ in 1..bits {
                term = term.mul(field, &term).rem(field, &g);
                tr = tr.add(field, &term);
            }
            let cand = tr.gcd(field, &g);
            if cand.degree() > 0 && cand.degree() < g.degree() {
                g = cand;
            }
            continue;
        }
        let pw = FqPoly::pow_mod(&shifted, field, &half, &g);
        let one = FqPoly::new(field, vec![field.one()]);
        let cand = pw.sub(field, &one).gcd(field, &g);
        if cand.degree() > 0 && cand.degree() < g.degree() {
            g = cand;
        }
    }
    let lead_inv = field.inv(&g.coeffs[1]).unwrap();
    Some(field.neg(&field.mul(&g.coeffs[0], &lead_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f8_arithmetic() {
        let f8 = FiniteField::new(2, 3);
        assert_eq!(f8.modulus().coeffs(), &[1, 1, 0, 1]); // x^3 + x + 1
        let x = f8.generator();
        // x^7 = 1, x^k != 1 for k < 7
        let mut acc = f8.one();
        for k in 1..7u32 {
            acc = f8.mul(&acc, &x);
            assert_ne!(acc, f8.one(), "x^{k} should not be 1");
        }
        assert_eq!(f8.mul(&acc, &x), f8.one());
    }

    #[test]
    fn inverses() {
        let f = FiniteField::new(5, 3);
        let a = FqElem(vec![2, 3, 1]);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert_eq!(f.inv(&f.zero()), None);
    }

    #[test]
    fn primitive_roots_of_unity() {
        // F_8 has ord_7(2) = 3, so 7th roots live there.
        let f8 = FiniteField::new(2, 3);
        let z = f8.primitive_root_of_unity(7).unwrap();
        let mut acc = z.clone();
        for _ in 1..7 {
            assert_ne!(acc, f8.one());
            acc = f8.mul(&acc, &z);
        }
        assert_eq!(acc, f8.one());
        // No 5th roots in F_8.
        assert_eq!(f8.primitive_root_of_unity(5), None);
    }

    #[test]
    fn subfield_detection() {
        let f81 = FiniteField::new(3, 4);
        let scalar = f81.from_u64(2);
        assert_eq!(f81.subfield_degree(&[scalar]), 1);
        let gen = f81.generator();
        assert_eq!(f81.subfield_degree(&[gen.clone()]), 4);
        // An element of the F_9 subfield: fixed by Frobenius^2.
        let e = BigUint::from(3u32).pow(2) + BigUint::one(); // x^(9+1) has norm-like symmetry
        let sub = f81.pow(&gen, &e);
        let d = f81.subfield_degree(&[sub.clone()]);
        assert!(d == 1 || d == 2);
        assert_eq!(f81.pow(&sub, &BigUint::from(9u32)), sub);
    }

    #[test]
    fn minimal_polynomial_of_generator_is_modulus() {
        let f = FiniteField::new(3, 4);
        let mp = f.minimal_polynomial(&f.generator());
        assert_eq!(&mp, f.modulus());
    }

    #[test]
    fn root_search_small_field() {
        let f8 = FiniteField::new(2, 3);
        // x^3 + x + 1 splits in F_8; its root must satisfy the polynomial.
        let h = ModPoly::new(2, vec![1, 1, 0, 1]);
        let r = root_in_field(&h, &f8).unwrap();
        let lifted = FqPoly::from_mod_poly(&f8, &h);
        assert!(f8.is_zero(&lifted.eval(&f8, &r)));
        // x^2 + x + 1 has roots in F_4, not F_8.
        let g = ModPoly::new(2, vec![1, 1, 1]);
        assert_eq!(root_in_field(&g, &f8), None);
    }

    #[test]
    fn root_search_large_field_cz() {
        // F_(3^8) is above the exhaustive cutoff.
        let big = FiniteField::new(3, 8);
        let h = crate::modpoly::deterministic_irreducible(3, 4);
        let r = root_in_field(&h, &big).expect("degree 4 divides 8");
        let lifted = FqPoly::from_mod_poly(&big, &h);
        assert!(big.is_zero(&lifted.eval(&big, &r)));
        // Degree 5 does not divide 8: no roots.
        let h5 = crate::modpoly::deterministic_irreducible(3, 5);
        assert_eq!(root_in_field(&h5, &big), None);
    }
}
