//! Dense univariate polynomials over a prime field 𝔽_p.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and equality is structural.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly(pub Vec<u64>);

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a ≠ 0 mod p
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn field_inv(a: u64, p: u64) -> u64 {
    inv_mod(a, p)
}

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Poly::from_coeffs(vec![c % p], p)
    }

    pub fn x() -> Self {
        Poly(vec![0, 1])
    }

    pub fn from_coeffs(mut c: Vec<u64>, p: u64) -> Self {
        for a in c.iter_mut() {
            *a %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, p: u64) -> Poly {
        let n = self.0.len().max(other.0.len());
        let c = (0..n)
            .map(|i| (self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0)) % p)
            .collect();
        Poly::from_coeffs(c, p)
    }

    pub fn neg(&self, p: u64) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| (p - a) % p).collect(), p)
    }

    pub fn sub(&self, other: &Poly, p: u64) -> Poly {
        self.add(&other.neg(p), p)
    }

    pub fn mul(&self, other: &Poly, p: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Poly::from_coeffs(c, p)
    }

    pub fn scale(&self, s: u64, p: u64) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| a * (s % p) % p).collect(), p)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly, p: u64) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv_lead = inv_mod(d.leading(), p);
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * inv_lead % p;
            q[k] = c;
            if c != 0 {
                for (j, &b) in d.0.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - c * b % p) % p;
                }
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(q, p), Poly::from_coeffs(r, p))
    }

    /// The monic associate together with the inverse of the leading coefficient.
    pub fn monic(&self, p: u64) -> (Poly, u64) {
        if self.is_zero() {
            return (Poly::zero(), 1);
        }
        let inv = inv_mod(self.leading(), p);
        (self.scale(inv, p), inv)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_reconstructs() {
        let p = 5;
        let a = Poly::from_coeffs(vec![3, 0, 4, 1, 2], p);
        let d = Poly::from_coeffs(vec![1, 2, 3], p);
        let (q, r) = a.div_rem(&d, p);
        assert!(r.degree().is_none_or(|k| k < 2));
        assert_eq!(q.mul(&d, p).add(&r, p), a);
    }

    #[test]
    fn monic_normalizes() {
        let (m, _) = Poly::from_coeffs(vec![2, 4], 5).monic(5);
        assert_eq!(m.leading(), 1);
    }
}
