//! Exact computer algebra for categorified ring invariants at the level of
//! Grothendieck groups.
//!
//! The crate provides, with no floating point anywhere:
//!
//! - [`cyclotomic`]: arithmetic in `Z[zeta_l]` and its real subring
//!   `Z[zeta_l + zeta_l^{-1}]`, reduction modulo a prime, and the splitting of
//!   the reduction into finite fields.
//! - [`modrep`]: finite-dimensional modules over `F_p[C_p]` as Jordan block
//!   data, tensor decomposition, stable K0, and trace computations.
//! - [`fusion`]: the semisimplified tilting fusion ring of quantum sl2 at a
//!   root of unity, its even subring, and the identification of its K0 with a
//!   real cyclotomic ring.
//! - [`numtheory`]: prime searches and gcd/valuation identities that place a
//!   prescribed finite field inside a cyclotomic reduction.
//! - [`presentation`]: rings presented by generators and formal relations,
//!   with Heller witness bookkeeping and factorization certificates.
//! - [`filterprod`]: desk-scale filter-quotient arithmetic on prime-indexed
//!   families and empirical root-density reports.
//!
//! Everything is exact integer or finite-field arithmetic, and every verdict
//! that matters ships with a recomputable certificate.

pub mod cyclotomic;
pub mod filterprod;
pub mod finitefield;
pub mod fusion;
pub mod intpoly;
pub mod linalg;
pub mod modpoly;
pub mod modrep;
pub mod numtheory;
pub mod presentation;
pub mod primes;
pub mod rng;
