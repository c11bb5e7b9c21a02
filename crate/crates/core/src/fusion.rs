//! The semisimplified tilting fusion ring of quantum sl2 at a primitive
//! `l`-th root of unity over a finite-field model of the algebraic closure
//! of `F_p`.
//!
//! Simple objects are `T(0), ..., T(l-2)`; the structure constants follow
//! the truncated Clebsch-Gordan rule
//!
//! ```text
//! N_ij^k = 1  iff  |i-j| <= k <= min(i+j, 2(l-2)-i-j)  and  k = i+j (mod 2)
//! ```
//!
//! and every built table is revalidated against associativity and the
//! quantum-dimension character rather than trusted. The even-index labels
//! close under multiplication; their ring is identified with
//! `Z[zeta_l + zeta_l^{-1}]` by an explicit unimodular change of basis.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{CyclotomicElement, RealCyclotomicElement};
use crate::finitefield::{FiniteField, FqElem};
use crate::modpoly::ModPoly;
use crate::primes::{is_prime_trial, multiplicative_order};

/// Hard cap on basis size for untrusted input; validation is O(r^5).
pub const MAX_BASIS: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("{0} failed trial-division primality validation")]
    NotPrime(u64),
    #[error("level {0} must be an odd prime greater than 2")]
    BadLevel(u64),
    #[error("p and l must be distinct, got {0}")]
    EqualPrimes(u64),
    #[error("basis size {0} exceeds the supported cap {MAX_BASIS}")]
    TooLarge(usize),
    #[error("invalid fusion data: {0}")]
    Invalid(String),
    #[error("even labels are not closed: N[{i}][{j}]^{k} = {value} with odd k")]
    ClosureViolation { i: usize, j: usize, k: usize, value: u64 },
    #[error("ring has no tilting metadata; build it with build_semisimple_fusion")]
    NoMeta,
    #[error("isomorphism certificate failed: {0}")]
    Certificate(String),
    #[error("cyclotomic arithmetic failed: {0}")]
    Cyclotomic(#[from] crate::cyclotomic::CyclotomicError),
}

/// Provenance of a ring built by this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingMeta {
    pub p: u64,
    pub ell: u64,
    /// True for the even-index subring.
    pub even: bool,
}

/// A fusion ring: finite basis, unit, dual involution, nonnegative integer
/// structure constants, and a dimension character into a finite-field model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    n: Vec<u64>, // flattened r^3, index (i*r + j)*r + k
    dual: Vec<usize>,
    field: FiniteField,
    dims: Vec<FqElem>,
    meta: Option<TiltingMeta>,
}

impl FusionRing {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dims(&self) -> &[FqElem] {
        &self.dims
    }

    pub fn meta(&self) -> Option<&TiltingMeta> {
        self.meta.as_ref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    /// The structure-constant tensor as nested vectors `N[i][j][k]`.
    pub fn tensor(&self) -> Vec<Vec<Vec<u64>>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.constant(i, j, k)).collect()).collect())
            .collect()
    }

    /// Product of two integer vectors in the K0 basis.
    pub fn multiply_classes(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let r = self.rank();
        let mut out = vec![BigInt::zero(); r];
        for i in 0..r {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if b[j].is_zero() {
                    continue;
                }
                let prod = &a[i] * &b[j];
                for k in 0..r {
                    let c = self.constant(i, j, k);
                    if c != 0 {
                        out[k] += &prod * BigInt::from(c);
                    }
                }
            }
        }
        out
    }

    /// Full validation: shape, unit law, commutativity, dual rigidity,
    /// associativity, and the dimension-character homomorphism law.
    pub fn validate(&self) -> Result<(), FusionError> {
        let r = self.rank();
        if r == 0 {
            return Err(FusionError::Invalid("empty basis".into()));
        }
        if r > MAX_BASIS {
            return Err(FusionError::TooLarge(r));
        }
        if self.n.len() != r * r * r {
            return Err(FusionError::Invalid("structure tensor has wrong size".into()));
        }
        if self.unit >= r || self.dual.len() != r || self.dims.len() != r {
            return Err(FusionError::Invalid("unit/dual/dims shape mismatch".into()));
        }
        // dual is an involution
        let mut seen = vec![false; r];
        for (i, &d) in self.dual.iter().enumerate() {
            if d >= r || self.dual[d] != i {
                return Err(FusionError::Invalid(format!("dual is not an involution at {i}")));
            }
            seen[d] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(FusionError::Invalid("dual is not a permutation".into()));
        }
        // unit law, both sides
        for j in 0..r {
            for k in 0..r {
                let want = u64::from(j == k);
                if self.constant(self.unit, j, k) != want || self.constant(j, self.unit, k) != want
                {
                    return Err(FusionError::Invalid(format!("unit law fails at ({j},{k})")));
                }
            }
        }
        // commutativity
        for i in 0..r {
            for j in 0..i {
                for k in 0..r {
                    if self.constant(i, j, k) != self.constant(j, i, k) {
                        return Err(FusionError::Invalid(format!(
                            "commutativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        // rigidity at K0 level: N_ij^unit = delta_(j, i*)
        for i in 0..r {
            for j in 0..r {
                let want = u64::from(j == self.dual[i]);
                if self.constant(i, j, self.unit) != want {
                    return Err(FusionError::Invalid(format!("dual law fails at ({i},{j})")));
                }
            }
        }
        // associativity: sum_m N_ij^m N_mk^n = sum_m N_jk^m N_im^n
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for nn in 0..r {
                        let lhs: u64 =
                            (0..r).map(|m| self.constant(i, j, m) * self.constant(m, k, nn)).sum();
                        let rhs: u64 =
                            (0..r).map(|m| self.constant(j, k, m) * self.constant(i, m, nn)).sum();
                        if lhs != rhs {
                            return Err(FusionError::Invalid(format!(
                                "associativity fails at ({i},{j},{k},{nn})"
                            )));
                        }
                    }
                }
            }
        }
        // dimension character is a ring homomorphism
        if self.dims[self.unit] != self.field.one() {
            return Err(FusionError::Invalid("unit must have dimension 1".into()));
        }
        for i in 0..r {
            for j in 0..r {
                let lhs = self.field.mul(&self.dims[i], &self.dims[j]);
                let mut rhs = self.field.zero();
                for k in 0..r {
                    let c = self.constant(i, j, k);
                    if c != 0 {
                        let term = self.field.scalar_mul(c % self.field.p(), &self.dims[k]);
                        rhs = self.field.add(&rhs, &term);
                    }
                }
                if lhs != rhs {
                    return Err(FusionError::Invalid(format!(
                        "dimension character fails at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A tilting label `T(v)` in the mixed case `(p, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingLabel {
    pub v: u64,
    pub ell: u64,
    pub p: u64,
}

impl TiltingLabel {
    /// Whether `T(v)` has nonzero categorical dimension, i.e. survives
    /// semisimplification: `0 <= v <= l-2`.
    pub fn survives(&self) -> bool {
        self.v <= self.ell - 2
    }
}

fn validate_pair(p: u64, ell: u64) -> Result<(), FusionError> {
    if ell <= 2 || ell > 4096 || !is_prime_trial(ell) {
        return Err(FusionError::BadLevel(ell));
    }
    if !is_prime_trial(p) {
        return Err(FusionError::NotPrime(p));
    }
    if p == ell {
        return Err(FusionError::EqualPrimes(p));
    }
    Ok(())
}

/// The dimension model: `F_(p^d)` with `d = ord_l(p)`, together with the
/// canonical primitive `l`-th root of unity `q` in it.
pub fn dimension_model(p: u64, ell: u64) -> Result<(FiniteField, FqElem), FusionError> {
    validate_pair(p, ell)?;
    let d = multiplicative_order(p, ell) as usize;
    let field = FiniteField::new(p, d);
    let q = field
        .primitive_root_of_unity(ell)
        .expect("l divides p^ord_l(p) - 1");
    Ok((field, q))
}

/// The quantum integer `[n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn quantum_integer(field: &FiniteField, q: &FqElem, n: u64) -> FqElem {
    let q_inv = field.inv(q).expect("roots of unity are invertible");
    let mut term = {
        // q^(n-1)
        let mut t = field.one();
        for _ in 1..n {
            t = field.mul(&t, q);
        }
        t
    };
    let mut acc = field.zero();
    let step = field.mul(&q_inv, &q_inv);
    for _ in 0..n {
        acc = field.add(&acc, &term);
        term = field.mul(&term, &step);
    }
    acc
}

/// The quantum dimension of `T(v)`: `[v+1]_q` in the dimension model.
/// Zero exactly when `l` divides `v+1`.
pub fn quantum_dimension(label: &TiltingLabel) -> Result<(FiniteField, FqElem), FusionError> {
    let (field, q) = dimension_model(label.p, label.ell)?;
    let dim = quantum_integer(&field, &q, label.v + 1);
    Ok((field, dim))
}

/// Truncated Clebsch-Gordan structure constant for simples `T(i), T(j), T(k)`
/// at level `l`.
fn truncated_cg(i: usize, j: usize, k: usize, ell: u64) -> u64 {
    let cutoff = 2 * (ell as usize - 2);
    let lo = i.abs_diff(j);
    let hi = (i + j).min(cutoff - (i + j));
    u64::from(k >= lo && k <= hi && (k % 2 == (i + j) % 2))
}

/// Build the fusion ring of the semisimplified tilting category at `(p, l)`:
/// basis `T(0..l-2)`, truncated Clebsch-Gordan constants, self-dual objects,
/// quantum dimensions in `F_(p^ord_l(p))`. The table is validated in full
/// before being returned.
pub fn build_semisimple_fusion(p: u64, ell: u64) -> Result<FusionRing, FusionError> {
    let (field, q) = dimension_model(p, ell)?;
    let r = (ell - 1) as usize;
    if r > MAX_BASIS {
        return Err(FusionError::TooLarge(r));
    }
    let labels = (0..r).map(|i| format!("T({i})")).collect();
    let mut n = vec![0u64; r * r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                n[(i * r + j) * r + k] = truncated_cg(i, j, k, ell);
            }
        }
    }
    let dims = (0..r).map(|i| quantum_integer(&field, &q, i as u64 + 1)).collect();
    let ring = FusionRing {
        labels,
        unit: 0,
        n,
        dual: (0..r).collect(),
        field,
        dims,
        meta: Some(TiltingMeta { p, ell, even: false }),
    };
    ring.validate()?;
    Ok(ring)
}

/// Restriction to the even-index labels `T(0), T(2), ..., T(l-3)`, with the
/// closure check `N_ij^k = 0` for even `i, j` and odd `k`.
pub fn even_subring(f: &FusionRing) -> Result<FusionRing, FusionError> {
    let meta = f.meta.ok_or(FusionError::NoMeta)?;
    if meta.even {
        return Err(FusionError::Invalid("ring is already the even subring".into()));
    }
    let r = f.rank();
    let even: Vec<usize> = (0..r).step_by(2).collect();
    for &i in &even {
        for &j in &even {
            for k in (1..r).step_by(2) {
                let value = f.constant(i, j, k);
                if value != 0 {
                    return Err(FusionError::ClosureViolation { i, j, k, value });
                }
            }
        }
    }
    let m = even.len();
    let mut n = vec![0u64; m * m * m];
    for (a, &i) in even.iter().enumerate() {
        for (b, &j) in even.iter().enumerate() {
            for (c, &k) in even.iter().enumerate() {
                n[(a * m + b) * m + c] = f.constant(i, j, k);
            }
        }
    }
    let ring = FusionRing {
        labels: even.iter().map(|&i| f.labels[i].clone()).collect(),
        unit: 0,
        n,
        dual: (0..m).collect(),
        field: f.field.clone(),
        dims: even.iter().map(|&i| f.dims[i].clone()).collect(),
        meta: Some(TiltingMeta { even: true, ..meta }),
    };
    ring.validate()?;
    Ok(ring)
}

/// The images `[T(2a)] -> [2a+1]_zeta` in the real cyclotomic ring, for the
/// even basis at level `l`.
pub fn tilting_k0_images(ell: u64) -> Result<Vec<RealCyclotomicElement>, FusionError> {
    let m = (ell as usize - 1) / 2;
    let mut out = Vec::with_capacity(m);
    for a in 0..m {
        // [2a+1]_zeta = zeta^(2a) + zeta^(2a-2) + ... + zeta^(-2a)
        let mut acc = CyclotomicElement::zero(ell)?;
        let top = 2 * a as i64;
        let mut e = -top;
        while e <= top {
            acc = acc.add(&CyclotomicElement::zeta_pow(ell, e)?)?;
            e += 2;
        }
        out.push(RealCyclotomicElement::project(&acc)?);
    }
    Ok(out)
}

/// Certificate that `[T(2a)] -> [2a+1]_zeta` identifies the even fusion ring
/// with `Z[zeta_l + zeta_l^{-1}]`.
#[derive(Clone, Debug, Serialize)]
pub struct K0IsomorphismCertificate {
    pub ell: u64,
    /// Power-basis coordinates (in `c = zeta + zeta^{-1}`) of each image.
    pub images: Vec<crate::intpoly::IntPoly>,
    /// Determinant of the change-of-basis matrix against `1, c, ..., c^(m-1)`;
    /// always +1 or -1 on the success path.
    pub determinant: i64,
    pub ring_homomorphism: bool,
    pub z_linearly_independent: bool,
    pub generates_ring: bool,
}

/// Verify the three-part identification of the even ring's K0 with the real
/// cyclotomic ring: (a) the map is a ring homomorphism against the structure
/// constants, (b) the images are Z-linearly independent, (c) they generate
/// the full ring (change-of-basis determinant is a unit).
pub fn k0_isomorphism_certificate(
    f_even: &FusionRing,
) -> Result<K0IsomorphismCertificate, FusionError> {
    let meta = f_even.meta.ok_or(FusionError::NoMeta)?;
    if !meta.even {
        return Err(FusionError::Invalid("certificate requires the even subring".into()));
    }
    let ell = meta.ell;
    let m = f_even.rank();
    let images = tilting_k0_images(ell)?;
    if images.len() != m {
        return Err(FusionError::Certificate(format!(
            "expected {m} images, got {}",
            images.len()
        )));
    }
    // (a) homomorphism law, exactly, in Z[c]
    if images[0] != RealCyclotomicElement::one(ell)? {
        return Err(FusionError::Certificate("unit does not map to 1".into()));
    }
    for i in 0..m {
        for j in 0..m {
            let lhs = images[i].mul(&images[j])?;
            let mut rhs = RealCyclotomicElement::zero(ell)?;
            for k in 0..m {
                let c = f_even.constant(i, j, k);
                if c != 0 {
                    rhs = rhs.add(&images[k].scale(&BigInt::from(c)))?;
                }
            }
            if lhs != rhs {
                return Err(FusionError::Certificate(format!(
                    "homomorphism law fails at ({i},{j})"
                )));
            }
        }
    }
    // (b) + (c): change-of-basis determinant against the power basis of c.
    let mat: Vec<Vec<BigInt>> =
        (0..m).map(|row| (0..m).map(|col| images[col].coeffs()[row].clone()).collect()).collect();
    let det = bigint_det(mat);
    let independent = !det.is_zero();
    let unimodular = det.abs().is_one();
    if !independent {
        return Err(FusionError::Certificate("images are Z-linearly dependent".into()));
    }
    if !unimodular {
        return Err(FusionError::Certificate(format!(
            "change-of-basis determinant {det} is not a unit"
        )));
    }
    Ok(K0IsomorphismCertificate {
        ell,
        images: images.iter().map(|e| e.as_intpoly()).collect(),
        determinant: i64::try_from(det).expect("unit determinant fits"),
        ring_homomorphism: true,
        z_linearly_independent: independent,
        generates_ring: unimodular,
    })
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn bigint_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * mat[n - 1][n - 1].clone()
}

/// Report on where the quantum dimensions live inside the model of the
/// algebraic closure.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionFieldReport {
    pub p: u64,
    pub ell: u64,
    /// Degree of the working model `F_(p^d)`, `d = ord_l(p)`.
    pub model_degree: usize,
    /// Degree of the minimal subfield containing every quantum dimension.
    pub dims_subfield_degree: usize,
    /// Smallest `n` with `l^2` dividing `p^n - 1`, for comparison.
    pub n_star: u64,
    pub dims: Vec<FqElem>,
}

/// The minimal subfield of the model containing all quantum dimensions
/// `[i+1]_q` for `0 <= i <= l-2`, reported alongside the smallest `n` with
/// `l^2 | p^n - 1`.
pub fn dimension_field(p: u64, ell: u64) -> Result<DimensionFieldReport, FusionError> {
    let (field, q) = dimension_model(p, ell)?;
    let dims: Vec<FqElem> =
        (0..ell - 1).map(|i| quantum_integer(&field, &q, i + 1)).collect();
    let sub = field.subfield_degree(&dims);
    let n_star = multiplicative_order(p % (ell * ell), ell * ell);
    Ok(DimensionFieldReport {
        p,
        ell,
        model_degree: field.degree(),
        dims_subfield_degree: sub,
        n_star,
        dims,
    })
}

// --- JSON interchange -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FieldDescriptor {
    p: u64,
    degree: usize,
    /// Modulus coefficient array, constant term first.
    modulus: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FusionRingWire {
    schema: u32,
    labels: Vec<String>,
    unit: usize,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<u64>>>,
    dual: Vec<usize>,
    dims: Vec<Vec<u64>>,
    field: FieldDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<TiltingMeta>,
}

impl Serialize for FusionRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = FusionRingWire {
            schema: 1,
            labels: self.labels.clone(),
            unit: self.unit,
            n: self.tensor(),
            dual: self.dual.clone(),
            dims: self.dims.iter().map(|d| d.0.clone()).collect(),
            field: FieldDescriptor {
                p: self.field.p(),
                degree: self.field.degree(),
                modulus: self.field.modulus().coeffs().to_vec(),
            },
            meta: self.meta,
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FusionRing {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FusionRingWire::deserialize(deserializer)?;
        if wire.schema != 1 {
            return Err(D::Error::custom(format!("unsupported schema {}", wire.schema)));
        }
        let r = wire.labels.len();
        if r == 0 || r > MAX_BASIS {
            return Err(D::Error::custom("basis size out of range"));
        }
        if wire.field.p < 2 || wire.field.p >= (1 << 20) || !is_prime_trial(wire.field.p) {
            return Err(D::Error::custom("field characteristic must be a small prime"));
        }
        if wire.field.degree == 0 || wire.field.degree > 64 {
            return Err(D::Error::custom("field degree out of range"));
        }
        let modulus = ModPoly::new(wire.field.p, wire.field.modulus);
        if modulus.degree() != wire.field.degree || !modulus.is_monic() {
            return Err(D::Error::custom("modulus does not match declared degree"));
        }
        if !modulus.is_irreducible() {
            return Err(D::Error::custom("modulus is not irreducible"));
        }
        let field = FiniteField::with_modulus(modulus);
        let mut dims = Vec::with_capacity(r);
        for d in &wire.dims {
            if d.len() != field.degree() || d.iter().any(|&c| c >= field.p()) {
                return Err(D::Error::custom("dimension vector out of range"));
            }
            dims.push(FqElem(d.clone()));
        }
        if wire.n.len() != r {
            return Err(D::Error::custom("structure tensor has wrong shape"));
        }
        let mut n = vec![0u64; r * r * r];
        for (i, plane) in wire.n.iter().enumerate() {
            if plane.len() != r {
                return Err(D::Error::custom("structure tensor has wrong shape"));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != r {
                    return Err(D::Error::custom("structure tensor has wrong shape"));
                }
                for (k, &v) in row.iter().enumerate() {
                    if v > 1 << 20 {
                        return Err(D::Error::custom("structure constant out of range"));
                    }
                    n[(i * r + j) * r + k] = v;
                }
            }
        }
        let ring = FusionRing {
            labels: wire.labels,
            unit: wire.unit,
            n,
            dual: wire.dual,
            field,
            dims,
            meta: wire.meta,
        };
        ring.validate().map_err(D::Error::custom)?;
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_dimensions_basics() {
        // v = 0 is the unit.
        for (p, ell) in [(2u64, 7u64), (3, 5), (5, 7), (2, 31)] {
            let (field, dim) = quantum_dimension(&TiltingLabel { v: 0, ell, p }).unwrap();
            assert_eq!(dim, field.one());
            // T(l-1) is killed by semisimplification.
            let (field, dim) = quantum_dimension(&TiltingLabel { v: ell - 1, ell, p }).unwrap();
            assert_eq!(dim, field.zero());
            assert!(!TiltingLabel { v: ell - 1, ell, p }.survives());
            assert!(TiltingLabel { v: ell - 2, ell, p }.survives());
        }
    }

    #[test]
    fn quantum_dimension_in_f8() {
        // (p=2, l=7, v=2): [3]_q = q^2 + 1 + q^-2 in F_8 = F_2[x]/(x^3+x+1).
        let (field, dim) = quantum_dimension(&TiltingLabel { v: 2, ell: 7, p: 2 }).unwrap();
        assert_eq!(field.modulus().coeffs(), &[1, 1, 0, 1]);
        let q = field.primitive_root_of_unity(7).unwrap();
        let q_inv = field.inv(&q).unwrap();
        let expect = field.add(
            &field.add(&field.mul(&q, &q), &field.one()),
            &field.mul(&q_inv, &q_inv),
        );
        assert_eq!(dim, expect);
        // Cross-check against the ratio form (q^3 - q^-3) / (q - q^-1).
        let q3 = field.mul(&field.mul(&q, &q), &q);
        let q3i = field.inv(&q3).unwrap();
        let num = field.sub(&q3, &q3i);
        let den = field.sub(&q, &q_inv);
        let ratio = field.mul(&num, &field.inv(&den).unwrap());
        assert_eq!(dim, ratio);
    }

    #[test]
    fn quantum_dimension_zero_iff_level_divides() {
        let (field, _) = dimension_model(3, 7).unwrap();
        let q = field.primitive_root_of_unity(7).unwrap();
        for v in 0..30u64 {
            let dim = quantum_integer(&field, &q, v + 1);
            assert_eq!(dim == field.zero(), (v + 1) % 7 == 0, "at v={v}");
        }
    }

    #[test]
    fn build_small_rings() {
        let f = build_semisimple_fusion(2, 7).unwrap();
        assert_eq!(f.rank(), 6);
        assert_eq!(f.labels()[0], "T(0)");
        // Unit law comes out of the closed form.
        for i in 0..6 {
            for k in 0..6 {
                assert_eq!(f.constant(0, i, k), u64::from(i == k));
            }
        }
        // l=7: T(1) (x) T(1) = T(0) + T(2), untruncated range.
        assert_eq!(f.constant(1, 1, 0), 1);
        assert_eq!(f.constant(1, 1, 2), 1);
        assert_eq!((0..6).map(|k| f.constant(1, 1, k)).sum::<u64>(), 2);
    }

    #[test]
    fn ell5_fusion_frozen() {
        let f = build_semisimple_fusion(3, 5).unwrap();
        // T(2) (x) T(2) = T(0) + T(2): the truncation kills T(4).
        let out: Vec<u64> = (0..4).map(|k| f.constant(2, 2, k)).collect();
        assert_eq!(out, vec![1, 0, 1, 0]);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(build_semisimple_fusion(5, 5), Err(FusionError::EqualPrimes(5)));
        assert_eq!(build_semisimple_fusion(4, 5), Err(FusionError::NotPrime(4)));
        assert_eq!(build_semisimple_fusion(3, 9), Err(FusionError::BadLevel(9)));
        assert_eq!(build_semisimple_fusion(3, 2), Err(FusionError::BadLevel(2)));
    }

    #[test]
    fn even_subrings() {
        // l=5: basis {T0, T2} with T2*T2 = T0 + T2.
        let even = even_subring(&build_semisimple_fusion(3, 5).unwrap()).unwrap();
        assert_eq!(even.labels(), &["T(0)", "T(2)"]);
        assert_eq!(even.constant(1, 1, 0), 1);
        assert_eq!(even.constant(1, 1, 1), 1);
        // l=7: basis {T0, T2, T4}.
        let even7 = even_subring(&build_semisimple_fusion(2, 7).unwrap()).unwrap();
        assert_eq!(even7.labels(), &["T(0)", "T(2)", "T(4)"]);
        // l=3: the trivial ring Z.
        let even3 = even_subring(&build_semisimple_fusion(2, 3).unwrap()).unwrap();
        assert_eq!(even3.rank(), 1);
    }

    #[test]
    fn k0_certificates_small() {
        // l=5: [T2] has minimal polynomial x^2 - x - 1.
        let even = even_subring(&build_semisimple_fusion(3, 5).unwrap()).unwrap();
        let cert = k0_isomorphism_certificate(&even).unwrap();
        assert!(cert.determinant.abs().is_one());
        let t2 = RealCyclotomicElement::new(
            5,
            cert.images[1].coeffs(),
        )
        .unwrap();
        assert_eq!(
            t2.minimal_polynomial(),
            crate::intpoly::IntPoly::from_i64(&[-1, -1, 1])
        );
        // l=3: trivial ring, certificate exists with image 1.
        let even3 = even_subring(&build_semisimple_fusion(2, 3).unwrap()).unwrap();
        let cert3 = k0_isomorphism_certificate(&even3).unwrap();
        assert_eq!(cert3.images.len(), 1);
        assert!(cert3.determinant.abs().is_one());
        // l=7: determinant of {[1], [3], [5]} against the power basis is a unit.
        let even7 = even_subring(&build_semisimple_fusion(2, 7).unwrap()).unwrap();
        let cert7 = k0_isomorphism_certificate(&even7).unwrap();
        assert!(cert7.determinant.abs().is_one());
    }

    #[test]
    fn dimension_field_reports() {
        // l=3: dims are 1 and [2]_q = -1, both in F_p.
        for p in [5u64, 7, 11] {
            let rep = dimension_field(p, 3).unwrap();
            assert_eq!(rep.dims_subfield_degree, 1);
        }
        // (2,7): the dims generate all of F_8.
        let rep = dimension_field(2, 7).unwrap();
        assert_eq!(rep.model_degree, 3);
        assert_eq!(rep.dims_subfield_degree, 3);
        assert_eq!(rep.n_star, 21); // ord_49(2)
        // (3,5): model F_81 but the dims are real, landing in F_9.
        let rep = dimension_field(3, 5).unwrap();
        assert_eq!(rep.model_degree, 4);
        assert_eq!(rep.dims_subfield_degree, 2);
    }

    #[test]
    fn validation_catches_corruption() {
        let good = build_semisimple_fusion(2, 7).unwrap();
        let mut text = serde_json::to_value(&good).unwrap();
        // Break associativity by editing one constant.
        text["N"][1][1][0] = serde_json::Value::from(2u64);
        let bad: Result<FusionRing, _> = serde_json::from_value(text);
        assert!(bad.is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = build_semisimple_fusion(3, 7).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: FusionRing = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(text.contains("\"schema\":1"));
    }

    #[test]
    fn full_grid_validation_small() {
        for ell in [3u64, 5, 7, 11, 13] {
            for p in [2u64, 3, 5, 7, 11] {
                if p == ell {
                    continue;
                }
                let f = build_semisimple_fusion(p, ell).unwrap();
                assert_eq!(f.rank() as u64, ell - 1);
                let even = even_subring(&f).unwrap();
                k0_isomorphism_certificate(&even).unwrap();
            }
        }
    }
}
