//! Exact arithmetic in `Z[zeta_l]` for an odd prime `l`, in the real subring
//! `Z[c]` with `c = zeta + zeta^{-1}`, and in the reductions of both modulo a
//! prime `p != l`.
//!
//! Elements of `Z[zeta]` are stored reduced in the power basis
//! `1, zeta, ..., zeta^(l-2)`, so equality is coefficient equality. Elements
//! of the real subring live in the power basis of `c`, reduced modulo the
//! minimal polynomial of `c`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::finitefield::{FiniteField, FqPoly};
use crate::intpoly::IntPoly;
use crate::modpoly::ModPoly;
use crate::primes::{is_prime_trial, multiplicative_order};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("level {0} must be an odd prime greater than 2")]
    BadLevel(u64),
    #[error("prime {0} failed trial-division validation")]
    NotPrime(u64),
    #[error("ramified case p = l = {0} is not supported")]
    Ramified(u64),
    #[error("levels differ: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("element is not in the real subring")]
    NotReal,
    #[error("coefficient vector has length {got}, expected {want}")]
    BadCoeffLength { got: usize, want: usize },
    #[error("{0} exceeds the supported desk scale")]
    DeskScale(String),
}

fn validate_level(ell: u64) -> Result<(), CyclotomicError> {
    if ell <= 2 || !is_prime_trial(ell) {
        return Err(CyclotomicError::BadLevel(ell));
    }
    if ell > 100_000 {
        return Err(CyclotomicError::DeskScale(format!("level {ell}")));
    }
    Ok(())
}

/// An element of `Z[zeta_l]`, reduced in the power basis
/// `1, zeta, ..., zeta^(l-2)` modulo the `l`-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    level: u64,
    coeffs: Vec<BigInt>, // always length level - 1
}

impl CyclotomicElement {
    /// Build from coefficients of arbitrary length interpreted as powers of
    /// zeta; exponents wrap modulo `l` and the result is reduced.
    pub fn new(level: u64, raw: &[BigInt]) -> Result<Self, CyclotomicError> {
        validate_level(level)?;
        let l = level as usize;
        let mut wrapped = vec![BigInt::zero(); l];
        for (i, c) in raw.iter().enumerate() {
            wrapped[i % l] += c;
        }
        Ok(Self::from_wrapped(level, wrapped))
    }

    /// `wrapped` has length `l`, indexed by exponents `0..l`; eliminate the
    /// top coordinate with `zeta^(l-1) = -(1 + zeta + ... + zeta^(l-2))`.
    fn from_wrapped(level: u64, mut wrapped: Vec<BigInt>) -> Self {
        let top = wrapped.pop().expect("wrapped vector is nonempty");
        for c in wrapped.iter_mut() {
            *c -= &top;
        }
        Self { level, coeffs: wrapped }
    }

    pub fn zero(level: u64) -> Result<Self, CyclotomicError> {
        validate_level(level)?;
        Ok(Self { level, coeffs: vec![BigInt::zero(); level as usize - 1] })
    }

    pub fn one(level: u64) -> Result<Self, CyclotomicError> {
        Self::from_int(level, BigInt::one())
    }

    pub fn from_int(level: u64, n: BigInt) -> Result<Self, CyclotomicError> {
        let mut e = Self::zero(level)?;
        e.coeffs[0] = n;
        Ok(e)
    }

    /// `zeta^k` for any integer exponent (negative allowed).
    pub fn zeta_pow(level: u64, k: i64) -> Result<Self, CyclotomicError> {
        validate_level(level)?;
        let l = level as i64;
        let e = k.rem_euclid(l) as usize;
        let mut wrapped = vec![BigInt::zero(); level as usize];
        wrapped[e] = BigInt::one();
        Ok(Self::from_wrapped(level, wrapped))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_level(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.level != other.level {
            return Err(CyclotomicError::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_level(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { level: self.level, coeffs })
    }

    pub fn neg(&self) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_level(other)?;
        let l = self.level as usize;
        let mut wrapped = vec![BigInt::zero(); l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                wrapped[(i + j) % l] += a * b;
            }
        }
        Ok(Self::from_wrapped(self.level, wrapped))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Galois conjugation `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        let l = self.level as usize;
        let mut wrapped = vec![BigInt::zero(); l];
        for (i, c) in self.coeffs.iter().enumerate() {
            wrapped[(l - i) % l] += c;
        }
        Self::from_wrapped(self.level, wrapped)
    }

    /// Whether the element is fixed by conjugation, i.e. lies in
    /// `Z[zeta + zeta^{-1}]`.
    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Evaluate an integer polynomial at this element.
    pub fn eval_intpoly(f: &IntPoly, x: &Self) -> Result<Self, CyclotomicError> {
        let mut acc = Self::zero(x.level)?;
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(x)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl Serialize for CyclotomicElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CyclotomicElement", 2)?;
        s.serialize_field("level", &self.level)?;
        let coeffs: Vec<serde_json::Value> =
            self.coeffs.iter().map(crate::intpoly::bigint_to_json).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for CyclotomicElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            level: u64,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|v| crate::intpoly::bigint_from_json(v).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        let want = raw.level.saturating_sub(1) as usize;
        if coeffs.len() != want {
            return Err(D::Error::custom(format!(
                "coefficient vector has length {}, expected {}",
                coeffs.len(),
                want
            )));
        }
        CyclotomicElement::new(raw.level, &coeffs).map_err(D::Error::custom)
    }
}

/// Minimal polynomial over `Z` of `c = zeta_l + zeta_l^{-1}`; monic of degree
/// `(l-1)/2`.
///
/// Built from the recurrence `u_0 = 2`, `u_1 = y`, `u_i = y*u_{i-1} - u_{i-2}`
/// (so `u_i(c) = zeta^i + zeta^{-i}`) via the vanishing sum of all `l`-th
/// roots of unity: `1 + u_1(c) + ... + u_m(c) = 0`.
pub fn real_minimal_polynomial(ell: u64) -> Result<IntPoly, CyclotomicError> {
    validate_level(ell)?;
    let m = (ell as usize - 1) / 2;
    let mut u_prev = IntPoly::constant(BigInt::from(2)); // u_0
    let mut u_cur = IntPoly::x(); // u_1
    let mut acc = IntPoly::one().add(&u_cur);
    for _ in 2..=m {
        let next = IntPoly::x().mul(&u_cur).sub(&u_prev);
        acc = acc.add(&next);
        u_prev = u_cur;
        u_cur = next;
    }
    debug_assert_eq!(acc.degree(), m);
    debug_assert!(acc.is_monic());
    Ok(acc)
}

/// The Chebyshev-style basis polynomials `u_i(y)` with `u_i(c) = zeta^i +
/// zeta^{-i}` for `i >= 1` and `u_0 = 2`.
fn u_polynomials(up_to: usize) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(IntPoly::constant(BigInt::from(2)));
    if up_to >= 1 {
        out.push(IntPoly::x());
    }
    for i in 2..=up_to {
        let next = IntPoly::x().mul(&out[i - 1]).sub(&out[i - 2]);
        out.push(next);
    }
    out
}

/// An element of the real subring `Z[c]`, `c = zeta_l + zeta_l^{-1}`, in the
/// power basis `1, c, ..., c^(m-1)` with `m = (l-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealCyclotomicElement {
    level: u64,
    coeffs: Vec<BigInt>, // length m
}

impl RealCyclotomicElement {
    pub fn new(level: u64, raw: &[BigInt]) -> Result<Self, CyclotomicError> {
        validate_level(level)?;
        let g = real_minimal_polynomial(level)?;
        let reduced = IntPoly::new(raw.to_vec()).rem_monic(&g);
        let m = (level as usize - 1) / 2;
        let mut coeffs = reduced.coeffs().to_vec();
        coeffs.resize(m, BigInt::zero());
        Ok(Self { level, coeffs })
    }

    pub fn zero(level: u64) -> Result<Self, CyclotomicError> {
        Self::new(level, &[])
    }

    pub fn one(level: u64) -> Result<Self, CyclotomicError> {
        Self::new(level, &[BigInt::one()])
    }

    pub fn from_int(level: u64, n: BigInt) -> Result<Self, CyclotomicError> {
        Self::new(level, &[n])
    }

    /// The generator `c` itself.
    pub fn generator(level: u64) -> Result<Self, CyclotomicError> {
        Self::new(level, &[BigInt::zero(), BigInt::one()])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_intpoly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    fn check_level(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.level != other.level {
            return Err(CyclotomicError::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { level: self.level, coeffs })
    }

    pub fn neg(&self) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_level(other)?;
        let prod = self.as_intpoly().mul(&other.as_intpoly());
        Self::new(self.level, prod.coeffs())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Embed into `Z[zeta]` by substituting `c = zeta + zeta^{-1}`.
    pub fn embed(&self) -> CyclotomicElement {
        let c = CyclotomicElement::zeta_pow(self.level, 1)
            .and_then(|z| z.add(&CyclotomicElement::zeta_pow(self.level, -1)?))
            .expect("level already validated");
        CyclotomicElement::eval_intpoly(&self.as_intpoly(), &c).expect("level validated")
    }

    /// Project an element of `Z[zeta]` back to the real subring.
    ///
    /// Errors with [`CyclotomicError::NotReal`] when the element is not fixed
    /// by conjugation. Inverse to [`RealCyclotomicElement::embed`].
    pub fn project(x: &CyclotomicElement) -> Result<Self, CyclotomicError> {
        let l = x.level as usize;
        let m = (l - 1) / 2;
        // In the normalized basis (implicit top coefficient 0), reality is
        // the pair condition v_i = v_{l-i}; the implicit pair forces v_1 = 0.
        let v = &x.coeffs;
        if !v[1].is_zero() {
            return Err(CyclotomicError::NotReal);
        }
        for i in 2..=m {
            if v[i] != v[l - i] {
                return Err(CyclotomicError::NotReal);
            }
        }
        // x = v_0 + sum_{i=1..m} v_i * u_i(c), then reduce mod the minimal
        // polynomial of c.
        let us = u_polynomials(m);
        let mut acc = IntPoly::constant(v[0].clone());
        for (i, u) in us.iter().enumerate().take(m + 1).skip(1) {
            acc = acc.add(&u.scale(&v[i]));
        }
        let out = Self::new(x.level, acc.coeffs())?;
        debug_assert_eq!(&out.embed(), x, "projection must invert embedding");
        Ok(out)
    }

    /// Minimal polynomial of this element over `Z` (monic, degree dividing
    /// `m`), found as the lowest-degree monic integral dependency among its
    /// powers, by exact rational elimination.
    pub fn minimal_polynomial(&self) -> IntPoly {
        use num_rational::BigRational;
        let m = self.coeffs.len();
        // powers[k] = coefficient vector of self^k
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
        let mut cur = Self::one(self.level).unwrap();
        powers.push(cur.coeffs.clone());
        for _ in 0..m {
            cur = cur.mul(self).unwrap();
            powers.push(cur.coeffs.clone());
        }
        for deg in 1..=m {
            // Solve sum_{k<deg} a_k * powers[k] = -powers[deg] over Q.
            let mut mat: Vec<Vec<BigRational>> = (0..m)
                .map(|row| {
                    (0..deg)
                        .map(|k| BigRational::from_integer(powers[k][row].clone()))
                        .collect()
                })
                .collect();
            let mut rhs: Vec<BigRational> = (0..m)
                .map(|row| BigRational::from_integer(-powers[deg][row].clone()))
                .collect();
            if let Some(sol) = solve_rational(&mut mat, &mut rhs, deg) {
                if sol.iter().all(|r| r.is_integer()) {
                    let mut coeffs: Vec<BigInt> =
                        sol.into_iter().map(|r| r.to_integer()).collect();
                    coeffs.push(BigInt::one());
                    return IntPoly::new(coeffs);
                }
            }
        }
        unreachable!("every element of a rank-m ring has a monic relation of degree <= m")
    }
}

/// Gaussian elimination over Q; returns a solution of `mat * x = rhs` when
/// the system is consistent (mat is m x n, rhs length m).
fn solve_rational(
    mat: &mut [Vec<num_rational::BigRational>],
    rhs: &mut [num_rational::BigRational],
    n: usize,
) -> Option<Vec<num_rational::BigRational>> {
    use num_rational::BigRational;
    let m = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..m).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        rhs.swap(r, pr);
        let inv = mat[r][c].clone();
        for j in 0..n {
            mat[r][j] = &mat[r][j] / &inv;
        }
        rhs[r] = &rhs[r] / &inv;
        for i in 0..m {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..n {
                    let v = &mat[i][j] - &f * &mat[r][j];
                    mat[i][j] = v;
                }
                let v = &rhs[i] - &f * &rhs[r];
                rhs[i] = v;
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == m {
            break;
        }
    }
    // Consistency: rows beyond rank must have zero rhs.
    for i in r..m {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for (c, pr) in pivot_of_col.iter().enumerate() {
        if let Some(row) = pr {
            x[c] = rhs[*row].clone();
        }
    }
    Some(x)
}

/// The factorization type of the `l`-th cyclotomic polynomial modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueFieldSplitting {
    pub p: u64,
    pub ell: u64,
    /// Residue degree: the multiplicative order of `p` mod `l`.
    pub degree: usize,
    pub factor_count: usize,
    /// Monic irreducible factors of `Phi_l` mod `p`, sorted by encoding.
    pub factors: Vec<ModPoly>,
}

/// Factor `Phi_l` modulo `p` into irreducibles of equal degree
/// `ord_l(p)`, with the product and irreducibility of each factor verified.
pub fn splitting_data(p: u64, ell: u64) -> Result<ResidueFieldSplitting, CyclotomicError> {
    validate_level(ell)?;
    if !is_prime_trial(p) {
        return Err(CyclotomicError::NotPrime(p));
    }
    if p == ell {
        return Err(CyclotomicError::Ramified(p));
    }
    if ell > 4096 {
        return Err(CyclotomicError::DeskScale(format!("splitting at level {ell}")));
    }
    let d = multiplicative_order(p, ell) as usize;
    if d > 64 {
        return Err(CyclotomicError::DeskScale(format!("residue degree {d}")));
    }
    let field = FiniteField::new(p, d);
    let zeta = field
        .primitive_root_of_unity(ell)
        .expect("l divides p^ord - 1 by definition of the order");
    // Powers zeta^1 .. zeta^(l-1), then group exponents into Frobenius
    // orbits e -> p*e mod l.
    let mut zeta_pow = Vec::with_capacity(ell as usize);
    zeta_pow.push(field.one()); // zeta^0
    for i in 1..ell {
        let prev = zeta_pow[(i - 1) as usize].clone();
        zeta_pow.push(field.mul(&prev, &zeta));
    }
    let mut seen = vec![false; ell as usize];
    let mut factors = Vec::new();
    for start in 1..ell {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut e = start;
        loop {
            seen[e as usize] = true;
            orbit.push(zeta_pow[e as usize].clone());
            e = (e as u128 * p as u128 % ell as u128) as u64;
            if e == start {
                break;
            }
        }
        debug_assert_eq!(orbit.len(), d, "all orbits share the residue degree");
        let factor = FqPoly::product_of_linears(&field, &orbit)
            .into_prime_field_poly(&field)
            .expect("orbit products are Frobenius-stable");
        factors.push(factor);
    }
    factors.sort_by_key(|f| f.encoding());
    // Verify: the product is Phi_l mod p = 1 + x + ... + x^(l-1)...
    let mut prod = ModPoly::one(p);
    for f in &factors {
        prod = prod.mul(f);
    }
    let phi = ModPoly::new(p, vec![1; ell as usize]);
    assert_eq!(prod, phi, "factor product must reconstruct Phi_l mod p");
    // ...and each factor is irreducible: exhaustively when the divisor space
    // is small enough to scan, by the power criterion above that.
    let exhaustive_budget = 2_000_000f64;
    for f in &factors {
        let scan_size = (p as f64).powi((f.degree() / 2) as i32);
        let ok = if scan_size <= exhaustive_budget {
            f.is_irreducible_exhaustive()
        } else {
            f.is_irreducible()
        };
        assert!(ok, "orbit factor must be irreducible");
    }
    Ok(ResidueFieldSplitting { p, ell, degree: d, factor_count: factors.len(), factors })
}

/// The image of an element of `Z[zeta_l]` in `Z[zeta_l]/(p)`, presented via
/// the residue field components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueImage {
    pub splitting: ResidueFieldSplitting,
    /// Component `i` is the residue modulo `(p, factors[i])`.
    pub components: Vec<ModPoly>,
}

impl ResidueImage {
    fn binop(
        &self,
        other: &Self,
        f: impl Fn(&ModPoly, &ModPoly) -> ModPoly,
    ) -> Result<Self, CyclotomicError> {
        if self.splitting != other.splitting {
            return Err(CyclotomicError::LevelMismatch(self.splitting.ell, other.splitting.ell));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .zip(&self.splitting.factors)
            .map(|((a, b), m)| f(a, b).rem(m))
            .collect();
        Ok(Self { splitting: self.splitting.clone(), components })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.binop(other, |a, b| a.add(b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.binop(other, |a, b| a.mul(b))
    }

    pub fn is_one(&self) -> bool {
        self.components.iter().all(|c| *c == ModPoly::one(self.splitting.p))
    }
}

/// Reduce `x` modulo `p`: the ring homomorphism
/// `Z[zeta_l] -> Z[zeta_l]/(p) = prod_i F_p[t]/(f_i)`.
pub fn reduce_mod_p(x: &CyclotomicElement, p: u64) -> Result<ResidueImage, CyclotomicError> {
    let splitting = splitting_data(p, x.level)?;
    let as_poly = {
        let coeffs = x
            .coeffs
            .iter()
            .map(|c| {
                let pb = BigInt::from(p);
                let r = ((c % &pb) + &pb) % &pb;
                u64::try_from(r).expect("residue fits")
            })
            .collect();
        ModPoly::new(p, coeffs)
    };
    let components = splitting.factors.iter().map(|f| as_poly.rem(f)).collect();
    Ok(ResidueImage { splitting, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(level: u64) -> CyclotomicElement {
        CyclotomicElement::zeta_pow(level, 1)
            .unwrap()
            .add(&CyclotomicElement::zeta_pow(level, -1).unwrap())
            .unwrap()
    }

    #[test]
    fn real_minimal_polynomials_frozen() {
        assert_eq!(real_minimal_polynomial(3).unwrap(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(real_minimal_polynomial(5).unwrap(), IntPoly::from_i64(&[-1, 1, 1]));
        assert_eq!(real_minimal_polynomial(7).unwrap(), IntPoly::from_i64(&[-1, -2, 1, 1]));
    }

    #[test]
    fn real_minimal_polynomial_rejects_bad_levels() {
        assert!(real_minimal_polynomial(2).is_err());
        assert!(real_minimal_polynomial(9).is_err());
        assert!(real_minimal_polynomial(1).is_err());
    }

    #[test]
    fn minimal_polynomial_kills_generator_up_to_50() {
        // Oracle route: evaluate in Z[zeta] and demand exact zero.
        for ell in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let g = real_minimal_polynomial(ell).unwrap();
            assert_eq!(g.degree(), (ell as usize - 1) / 2);
            assert!(g.is_monic());
            let val = CyclotomicElement::eval_intpoly(&g, &c(ell)).unwrap();
            assert!(val.is_zero(), "g(c) != 0 at level {ell}");
        }
    }

    #[test]
    fn multiplication_wraps_and_reduces() {
        // zeta^4 * zeta^3 = zeta^7 = 1 at level 7
        let a = CyclotomicElement::zeta_pow(7, 4).unwrap();
        let b = CyclotomicElement::zeta_pow(7, 3).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CyclotomicElement::one(7).unwrap());
        // zeta^6 normalizes into the power basis
        let z6 = CyclotomicElement::zeta_pow(7, 6).unwrap();
        let direct = CyclotomicElement::new(
            7,
            &[-1, -1, -1, -1, -1, -1i64].map(BigInt::from),
        )
        .unwrap();
        assert_eq!(z6, direct);
    }

    #[test]
    fn conjugation_and_reality() {
        let z = CyclotomicElement::zeta_pow(11, 1).unwrap();
        assert!(!z.is_real());
        assert!(c(11).is_real());
        assert_eq!(z.conjugate().conjugate(), z);
    }

    #[test]
    fn real_embed_project_round_trip() {
        for ell in [5u64, 7, 11, 13] {
            let gen = RealCyclotomicElement::generator(ell).unwrap();
            let sq = gen.mul(&gen).unwrap();
            let combo = sq.scale(&BigInt::from(3)).sub(&gen).unwrap();
            for elem in [gen, sq, combo] {
                let embedded = elem.embed();
                assert!(embedded.is_real());
                let back = RealCyclotomicElement::project(&embedded).unwrap();
                assert_eq!(back, elem);
            }
        }
    }

    #[test]
    fn project_rejects_non_real() {
        let z = CyclotomicElement::zeta_pow(7, 1).unwrap();
        assert_eq!(RealCyclotomicElement::project(&z), Err(CyclotomicError::NotReal));
    }

    #[test]
    fn splitting_examples() {
        // ord_7(2) = 3: two cubic factors.
        let s = splitting_data(2, 7).unwrap();
        assert_eq!((s.degree, s.factor_count), (3, 2));
        // ord_3(2) = 2: Phi_3 stays irreducible mod 2.
        let s = splitting_data(2, 3).unwrap();
        assert_eq!((s.degree, s.factor_count), (2, 1));
        // ord_5(19) = 2: two quadratic factors.
        let s = splitting_data(19, 5).unwrap();
        assert_eq!((s.degree, s.factor_count), (2, 2));
    }

    #[test]
    fn splitting_rejects_bad_inputs() {
        assert_eq!(splitting_data(3, 2), Err(CyclotomicError::BadLevel(2)));
        assert_eq!(splitting_data(7, 7), Err(CyclotomicError::Ramified(7)));
        assert_eq!(splitting_data(4, 5), Err(CyclotomicError::NotPrime(4)));
    }

    #[test]
    fn splitting_matches_exhaustive_factorization() {
        // The desk-scale oracle: factor Phi_l mod p by exhaustive division.
        for (p, ell) in [(2u64, 7u64), (2, 5), (3, 5), (2, 3), (19, 5)] {
            let s = splitting_data(p, ell).unwrap();
            let phi = ModPoly::new(p, vec![1; ell as usize]);
            let oracle = phi.factor_exhaustive();
            let oracle_factors: Vec<ModPoly> = oracle
                .iter()
                .flat_map(|(f, k)| std::iter::repeat(f.clone()).take(*k as usize))
                .collect();
            assert_eq!(s.factors, oracle_factors);
        }
    }

    #[test]
    fn splitting_degree_matches_brute_force_order() {
        for ell in [3u64, 5, 7, 11, 13] {
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
                if p == ell {
                    continue;
                }
                let s = splitting_data(p, ell).unwrap();
                assert_eq!(s.degree as u64, multiplicative_order(p, ell));
                assert_eq!(s.degree * s.factor_count, ell as usize - 1);
            }
        }
    }

    #[test]
    fn reduction_is_ring_homomorphism() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(0xc0ffee);
        for (p, ell) in [(2u64, 5u64), (2, 7), (3, 7), (19, 5), (5, 11)] {
            for _ in 0..1000 {
                let rand_elem = |rng: &mut SplitMix64| {
                    let coeffs: Vec<BigInt> = (0..ell - 1)
                        .map(|_| BigInt::from(rng.below(2001) as i64 - 1000))
                        .collect();
                    CyclotomicElement::new(ell, &coeffs).unwrap()
                };
                let a = rand_elem(&mut rng);
                let b = rand_elem(&mut rng);
                let sum = reduce_mod_p(&a.add(&b).unwrap(), p).unwrap();
                let prod = reduce_mod_p(&a.mul(&b).unwrap(), p).unwrap();
                let ra = reduce_mod_p(&a, p).unwrap();
                let rb = reduce_mod_p(&b, p).unwrap();
                assert_eq!(sum, ra.add(&rb).unwrap());
                assert_eq!(prod, ra.mul(&rb).unwrap());
            }
        }
    }

    #[test]
    fn unit_reduces_to_all_ones() {
        let one = CyclotomicElement::one(7).unwrap();
        let img = reduce_mod_p(&one, 2).unwrap();
        assert!(img.is_one());
        assert_eq!(img.components.len(), 2);
    }

    #[test]
    fn reduce_rejects_ramified() {
        let one = CyclotomicElement::one(7).unwrap();
        assert_eq!(reduce_mod_p(&one, 7), Err(CyclotomicError::Ramified(7)));
    }

    #[test]
    fn real_element_minimal_polynomial() {
        // c itself recovers the level minimal polynomial.
        for ell in [5u64, 7, 11] {
            let gen = RealCyclotomicElement::generator(ell).unwrap();
            assert_eq!(gen.minimal_polynomial(), real_minimal_polynomial(ell).unwrap());
        }
        // An integer has a linear minimal polynomial.
        let three = RealCyclotomicElement::from_int(7, BigInt::from(3)).unwrap();
        assert_eq!(three.minimal_polynomial(), IntPoly::from_i64(&[-3, 1]));
    }

    #[test]
    fn json_round_trip() {
        let x = CyclotomicElement::new(5, &[1, -2, 0, 7i64].map(BigInt::from)).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert!(text.contains("\"level\":5"));
        let back: CyclotomicElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }
}
