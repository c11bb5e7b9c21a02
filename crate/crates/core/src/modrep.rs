//! Finite-dimensional `F_p[C_p]`-modules as Jordan block data.
//!
//! A module is the multiset of Jordan block sizes of the generator's action;
//! block sizes lie in `1..=p` because `(sigma - 1)^p = 0`. The tensor
//! decomposition is a closed-form rule, and everything about it is
//! cross-checkable against explicit matrices: build the Kronecker product of
//! the generator actions and read off the Jordan type from ranks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{jordan_type_of_unipotent, FpMat, RowSpan};
use crate::primes::is_prime_trial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModRepError {
    #[error("{0} failed trial-division primality validation")]
    NotPrime(u64),
    #[error("block size {size} outside 1..={p}")]
    BadBlock { size: u64, p: u64 },
    #[error("characteristics differ: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("endomorphism must be a {dim}x{dim} matrix over F_{p}")]
    BadEndo { dim: usize, p: u64 },
    #[error("endomorphism does not commute with the generator action")]
    NotEquivariant,
    #[error("total dimension {0} exceeds the desk-scale cap")]
    DeskScale(u64),
}

/// A finite-dimensional `F_p[C_p]`-module: the multiset of Jordan block
/// sizes of the generator, stored descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "JordanModuleRaw", into = "JordanModuleRaw")]
pub struct JordanModule {
    p: u64,
    blocks: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct JordanModuleRaw {
    p: u64,
    blocks: Vec<u64>,
}

impl TryFrom<JordanModuleRaw> for JordanModule {
    type Error = ModRepError;
    fn try_from(raw: JordanModuleRaw) -> Result<Self, Self::Error> {
        JordanModule::new(raw.p, raw.blocks)
    }
}

impl From<JordanModule> for JordanModuleRaw {
    fn from(m: JordanModule) -> Self {
        JordanModuleRaw { p: m.p, blocks: m.blocks }
    }
}

impl JordanModule {
    pub fn new(p: u64, mut blocks: Vec<u64>) -> Result<Self, ModRepError> {
        if p < 2 || p >= (1 << 32) || !is_prime_trial(p) {
            return Err(ModRepError::NotPrime(p));
        }
        for &b in &blocks {
            if b == 0 || b > p {
                return Err(ModRepError::BadBlock { size: b, p });
            }
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        let total: u64 = blocks.iter().sum();
        if total > 4096 {
            return Err(ModRepError::DeskScale(total));
        }
        Ok(Self { p, blocks })
    }

    pub fn single(p: u64, size: u64) -> Result<Self, ModRepError> {
        Self::new(p, vec![size])
    }

    pub fn zero(p: u64) -> Result<Self, ModRepError> {
        Self::new(p, Vec::new())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn total_dimension(&self) -> u64 {
        self.blocks.iter().sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModRepError> {
        if self.p != other.p {
            return Err(ModRepError::PrimeMismatch(self.p, other.p));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        Self::new(self.p, blocks)
    }

    /// The generator's action as a unipotent matrix: one lower-bidiagonal
    /// Jordan block per summand.
    pub fn generator_matrix(&self) -> FpMat {
        let n = self.total_dimension() as usize;
        let mut m = FpMat::identity(self.p, n);
        let mut offset = 0usize;
        for &b in &self.blocks {
            for i in 1..b as usize {
                m.set(offset + i, offset + i - 1, 1);
            }
            offset += b as usize;
        }
        m
    }
}

/// Jordan type of `J_a (x) J_b` over `F_p[C_p]`, by the closed-form rule:
/// with `a <= b` and `m = min(a, p - b)`, the summands are
/// `J_(b-a+2i-1)` for `i = 1..=m` plus `a - m` copies of the projective `J_p`.
fn single_tensor_rule(a: u64, b: u64, p: u64) -> Vec<u64> {
    let (a, b) = (a.min(b), a.max(b));
    let m = a.min(p - b);
    let mut blocks: Vec<u64> = (1..=m).map(|i| b - a + 2 * i - 1).collect();
    blocks.extend(std::iter::repeat(p).take((a - m) as usize));
    blocks
}

/// Tensor product with the diagonal group action.
pub fn tensor(a: &JordanModule, b: &JordanModule) -> Result<JordanModule, ModRepError> {
    if a.p != b.p {
        return Err(ModRepError::PrimeMismatch(a.p, b.p));
    }
    let mut blocks = Vec::new();
    for &x in &a.blocks {
        for &y in &b.blocks {
            blocks.extend(single_tensor_rule(x, y, a.p));
        }
    }
    JordanModule::new(a.p, blocks)
}

/// Tensor product computed the slow honest way: Kronecker product of the
/// generator matrices, then Jordan type from the rank sequence. The oracle
/// counterpart of [`tensor`].
pub fn tensor_matrix_oracle(a: &JordanModule, b: &JordanModule) -> Result<JordanModule, ModRepError> {
    if a.p != b.p {
        return Err(ModRepError::PrimeMismatch(a.p, b.p));
    }
    let big = a.generator_matrix().kron(&b.generator_matrix());
    JordanModule::new(a.p, jordan_type_of_unipotent(&big))
}

/// A class in `K_0` of the stable module category: a residue mod `p`, the
/// total dimension with projective blocks contributing zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableK0Class {
    pub p: u64,
    pub value: u64,
}

impl StableK0Class {
    pub fn add(&self, other: &Self) -> Result<Self, ModRepError> {
        if self.p != other.p {
            return Err(ModRepError::PrimeMismatch(self.p, other.p));
        }
        Ok(Self { p: self.p, value: (self.value + other.value) % self.p })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ModRepError> {
        if self.p != other.p {
            return Err(ModRepError::PrimeMismatch(self.p, other.p));
        }
        Ok(Self { p: self.p, value: (self.value * other.value) % self.p })
    }
}

/// The stable `K_0` class: total dimension mod `p`. Blocks of size `p` are
/// projective and contribute zero.
pub fn stable_k0(m: &JordanModule) -> StableK0Class {
    StableK0Class { p: m.p, value: m.total_dimension() % m.p }
}

/// Trace of an equivariant endomorphism, reduced mod `p`. Projective
/// summands carry trace divisible by `p`, so this is the trace in the stable
/// category.
pub fn categorical_trace(m: &JordanModule, f: &FpMat) -> Result<u64, ModRepError> {
    let n = m.total_dimension() as usize;
    if f.rows() != n || f.cols() != n || f.p() != m.p {
        return Err(ModRepError::BadEndo { dim: n, p: m.p });
    }
    let sigma = m.generator_matrix();
    if sigma.mul(f) != f.mul(&sigma) {
        return Err(ModRepError::NotEquivariant);
    }
    Ok(f.trace())
}

/// Basis of the commutant `End_(F_p[C_p])(m)` inside all matrices.
pub fn commutant_basis(m: &JordanModule) -> Vec<FpMat> {
    let n = m.total_dimension() as usize;
    let sigma = m.generator_matrix();
    hom_basis(&sigma, &sigma, n, n, m.p)
}

/// Basis of equivariant maps `(source, sigma_s) -> (target, sigma_t)`, as
/// `target_dim x source_dim` matrices `A` with `sigma_t A = A sigma_s`.
fn hom_basis(sigma_s: &FpMat, sigma_t: &FpMat, s_dim: usize, t_dim: usize, p: u64) -> Vec<FpMat> {
    // Unknowns A[i][j] flattened row-major; equations sigma_t A - A sigma_s = 0.
    let vars = t_dim * s_dim;
    let mut system = FpMat::zeros(p, vars, vars);
    let mut row = 0usize;
    for i in 0..t_dim {
        for j in 0..s_dim {
            // entry (i, j) of sigma_t A - A sigma_s
            for k in 0..t_dim {
                let c = sigma_t.get(i, k);
                if c != 0 {
                    let col = k * s_dim + j;
                    system.set(row, col, (system.get(row, col) + c) % p);
                }
            }
            for k in 0..s_dim {
                let c = sigma_s.get(k, j);
                if c != 0 {
                    let col = i * s_dim + k;
                    let cur = system.get(row, col);
                    system.set(row, col, (cur + p - c % p) % p);
                }
            }
            row += 1;
        }
    }
    system
        .kernel_basis()
        .into_iter()
        .map(|v| FpMat::from_fn(p, t_dim, s_dim, |i, j| v[i * s_dim + j]))
        .collect()
}

fn flatten(f: &FpMat) -> Vec<u64> {
    let mut v = Vec::with_capacity(f.rows() * f.cols());
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            v.push(f.get(i, j));
        }
    }
    v
}

/// The subspace of `End(m)` of maps factoring through a projective module,
/// spanned by composites through `J_p`.
pub fn projective_hom_span(m: &JordanModule) -> RowSpan {
    let p = m.p;
    let n = m.total_dimension() as usize;
    let proj = JordanModule::single(p, p).expect("p is a valid block size");
    let sigma_m = m.generator_matrix();
    let sigma_p = proj.generator_matrix();
    let to_proj = hom_basis(&sigma_m, &sigma_p, n, p as usize, p);
    let from_proj = hom_basis(&sigma_p, &sigma_m, p as usize, n, p);
    let mut span = RowSpan::new(p, n * n);
    for beta in &from_proj {
        for alpha in &to_proj {
            span.insert(&flatten(&beta.mul(alpha)));
        }
    }
    span
}

/// Stable nilpotence witness: the least `k` such that `f^k` factors through
/// a projective module, found by explicit membership in the projective ideal.
/// `None` when no power up to `dim^2 + 1` does (then `f` is not nilpotent in
/// the stable category).
pub fn stably_nilpotent_power(m: &JordanModule, f: &FpMat) -> Result<Option<usize>, ModRepError> {
    let n = m.total_dimension() as usize;
    if f.rows() != n || f.cols() != n || f.p() != m.p {
        return Err(ModRepError::BadEndo { dim: n, p: m.p });
    }
    let sigma = m.generator_matrix();
    if sigma.mul(f) != f.mul(&sigma) {
        return Err(ModRepError::NotEquivariant);
    }
    let span = projective_hom_span(m);
    let bound = n * n + 1;
    let mut power = f.clone();
    for k in 1..=bound {
        if span.contains(&flatten(&power)) {
            return Ok(Some(k));
        }
        power = power.mul(f);
    }
    Ok(None)
}

/// Jordan type of the dual module (inverse-transpose action).
pub fn dual_module(m: &JordanModule) -> JordanModule {
    let n = m.total_dimension() as usize;
    let sigma = m.generator_matrix();
    // Block sizes are at most p, so (sigma - 1)^p = 0 and sigma^p = 1.
    let inv = sigma.pow(m.p - 1);
    debug_assert_eq!(sigma.mul(&inv), FpMat::identity(m.p, n));
    let dual_action = inv.transpose();
    JordanModule::new(m.p, jordan_type_of_unipotent(&dual_action)).expect("dual of valid module")
}

/// All modules of total dimension up to `max_dim` (block multisets with
/// parts in `1..=p`), for exhaustive desk-scale sweeps.
pub fn modules_up_to_dimension(p: u64, max_dim: u64) -> Vec<JordanModule> {
    fn partitions(rest: u64, max_part: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let top = rest.min(max_part);
        for part in (1..=top).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        let mut parts = Vec::new();
        partitions(dim, p.min(dim), &mut Vec::new(), &mut parts);
        for blocks in parts {
            out.push(JordanModule::new(p, blocks).expect("valid partition"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jm(p: u64, blocks: &[u64]) -> JordanModule {
        JordanModule::new(p, blocks.to_vec()).unwrap()
    }

    #[test]
    fn unit_acts_trivially() {
        for p in [3u64, 5, 7] {
            let one = jm(p, &[1]);
            for k in 1..=p {
                let jk = jm(p, &[k]);
                assert_eq!(tensor(&one, &jk).unwrap(), jk);
            }
        }
    }

    #[test]
    fn frozen_tensor_examples() {
        // These values were computed with the matrix oracle below.
        assert_eq!(tensor(&jm(3, &[2]), &jm(3, &[2])).unwrap(), jm(3, &[3, 1]));
        assert_eq!(tensor(&jm(5, &[2]), &jm(5, &[3])).unwrap(), jm(5, &[4, 2]));
    }

    #[test]
    fn rule_matches_matrix_oracle_everywhere() {
        for p in [3u64, 5, 7] {
            for a in 1..=p {
                for b in 1..=p {
                    let x = jm(p, &[a]);
                    let y = jm(p, &[b]);
                    let fast = tensor(&x, &y).unwrap();
                    let slow = tensor_matrix_oracle(&x, &y).unwrap();
                    assert_eq!(fast, slow, "mismatch at p={p}, a={a}, b={b}");
                    assert_eq!(fast.total_dimension(), a * b);
                }
            }
        }
    }

    #[test]
    fn tensor_rejects_mixed_characteristics() {
        assert_eq!(
            tensor(&jm(3, &[1]), &jm(5, &[1])),
            Err(ModRepError::PrimeMismatch(3, 5))
        );
    }

    #[test]
    fn stable_k0_values() {
        for p in [3u64, 5, 7] {
            assert_eq!(stable_k0(&jm(p, &[p])).value, 0);
            assert_eq!(stable_k0(&jm(p, &[1])).value, 1);
        }
        assert_eq!(stable_k0(&jm(5, &[2, 4])).value, 1); // 6 mod 5
    }

    #[test]
    fn stable_k0_is_multiplicative() {
        for p in [3u64, 5] {
            for a in modules_up_to_dimension(p, 4) {
                for b in modules_up_to_dimension(p, 4) {
                    let prod = tensor(&a, &b).unwrap();
                    assert_eq!(
                        stable_k0(&prod),
                        stable_k0(&a).mul(&stable_k0(&b)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let one = jm(3, &[1]);
        let id1 = FpMat::identity(3, 1);
        assert_eq!(categorical_trace(&one, &id1).unwrap(), 1);
        for p in [3u64, 5] {
            let proj = jm(p, &[p]);
            let id = FpMat::identity(p, p as usize);
            assert_eq!(categorical_trace(&proj, &id).unwrap(), 0);
        }
    }

    #[test]
    fn trace_rejects_non_equivariant() {
        let m = jm(3, &[2]);
        let mut f = FpMat::zeros(3, 2, 2);
        f.set(0, 1, 1); // superdiagonal does not commute with lower Jordan block
        assert_eq!(categorical_trace(&m, &f), Err(ModRepError::NotEquivariant));
    }

    #[test]
    fn exhaustive_nilpotents_on_two_twos_have_trace_zero() {
        // Every plainly nilpotent commuting endomorphism of J_2 + J_2 at p=3.
        let m = jm(3, &[2, 2]);
        let basis = commutant_basis(&m);
        assert_eq!(basis.len(), 8);
        let n = 4usize;
        let count = 3u64.pow(8);
        let mut seen_nilpotent = 0usize;
        for code in 0..count {
            let mut c = code;
            let mut f = FpMat::zeros(3, n, n);
            for b in &basis {
                let coeff = c % 3;
                c /= 3;
                if coeff != 0 {
                    f = f.add(&b.scale(coeff));
                }
            }
            let mut power = f.clone();
            for _ in 0..n {
                power = power.mul(&f);
            }
            if power.is_zero() {
                seen_nilpotent += 1;
                assert_eq!(categorical_trace(&m, &f).unwrap(), 0);
            }
        }
        assert!(seen_nilpotent > 100, "enumeration should find many nilpotents");
    }

    #[test]
    fn self_duality() {
        for p in [3u64, 5, 7] {
            for m in modules_up_to_dimension(p, 6) {
                assert_eq!(dual_module(&m), m, "dual mismatch at p={p}, m={m:?}");
            }
        }
    }

    #[test]
    fn projective_ideal_and_stable_nilpotence() {
        let p = 3u64;
        // On the projective module, the identity factors through a projective.
        let proj = jm(p, &[p]);
        let id = FpMat::identity(p, p as usize);
        assert_eq!(stably_nilpotent_power(&proj, &id).unwrap(), Some(1));
        // On J_1 the identity is not stably nilpotent.
        let one = jm(p, &[1]);
        let id1 = FpMat::identity(p, 1);
        assert_eq!(stably_nilpotent_power(&one, &id1).unwrap(), None);
        // sigma - 1 on J_2 is plainly nilpotent, hence stably nilpotent.
        let m = jm(p, &[2]);
        let nil = m.generator_matrix().sub(&FpMat::identity(p, 2));
        let k = stably_nilpotent_power(&m, &nil).unwrap();
        assert!(k.is_some());
        assert_eq!(categorical_trace(&m, &nil).unwrap(), 0);
    }

    #[test]
    fn block_validation() {
        assert!(JordanModule::new(3, vec![4]).is_err());
        assert!(JordanModule::new(3, vec![0]).is_err());
        assert!(JordanModule::new(4, vec![1]).is_err());
        assert!(JordanModule::new(3, vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn json_shape() {
        let m = jm(5, &[4, 2]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"p":5,"blocks":[4,2]}"#);
        let back: JordanModule = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        // Validation applies on the way in.
        assert!(serde_json::from_str::<JordanModule>(r#"{"p":5,"blocks":[6]}"#).is_err());
    }
}
