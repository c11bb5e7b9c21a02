//! Dense integer polynomials, constant term first.
//!
//! The JSON form of every polynomial in this crate is its coefficient array
//! with the constant term at index 0. Coefficients that fit in an `i64`
//! serialize as JSON numbers; anything larger serializes as a decimal string.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Remainder of `self` modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Self) -> Self {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let top = rem.len() - d;
            for (i, c) in divisor.coeffs.iter().take(d).enumerate() {
                rem[top + i] -= &lead * c;
            }
        }
        Self::new(rem)
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Render with `var` as the indeterminate, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => mag.to_string(),
                1 if mag.is_one() => var.to_string(),
                1 => format!("{mag}*{var}"),
                _ if mag.is_one() => format!("{var}^{i}"),
                _ => format!("{mag}*{var}^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {}", if c.is_negative() { "-" } else { "+" }, body));
            }
        }
        parts.join(" ")
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c.clone()) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("non-integer coefficient {n}"))
            }
        }
        serde_json::Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer string {s:?}: {e}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(bigint_to_json))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|v| bigint_from_json(v).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rem_monic_reduces() {
        // x^3 mod (x^2 + x - 1) = x - x^2 = x - (1 - x) = 2x - 1
        let f = IntPoly::from_i64(&[-1, 1, 1]);
        let x3 = IntPoly::monomial(BigInt::one(), 3);
        assert_eq!(x3.rem_monic(&f), IntPoly::from_i64(&[-1, 2]));
    }

    #[test]
    fn render_readable() {
        let f = IntPoly::from_i64(&[-1, -2, 1, 1]);
        assert_eq!(f.render("x"), "x^3 + x^2 - 2*x - 1");
    }

    #[test]
    fn json_round_trip_with_big_coefficient() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = IntPoly::new(vec![BigInt::from(-3), big]);
        let text = serde_json::to_string(&f).unwrap();
        let back: IntPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(f, back);
    }
}
