//! Arithmetic in GF(p^n) behind a shared context with full operation tables.
//!
//! Elements are indices 0..q encoding coefficient vectors base p, constant
//! term least significant, reduced modulo the first monic irreducible
//! polynomial of degree n in that same encoding. The chosen polynomial is
//! recorded in every report so field constants are reproducible.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subgroup::is_prime;

/// Largest supported field size; keeps the q x q tables small.
const MAX_Q: u64 = 4096;

pub struct FieldCtx {
    pub p: u64,
    pub n: usize,
    pub q: u64,
    /// coefficients c_0..c_{n-1} of the monic modulus x^n + sum c_i x^i
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
}

fn digits(mut k: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for d in out.iter_mut() {
        *d = k % p;
        k /= p;
    }
    out
}

fn undigits(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

/// Polynomial remainder of `a` modulo monic `m`, coefficients mod p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - (lead * mi) % p) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Monic polynomial of degree n encoded by k (low coefficients first), i.e.
/// x^n + digits(k).
fn monic_from_index(k: u64, p: u64, n: usize) -> Vec<u64> {
    let mut coeffs = digits(k, p, n);
    coeffs.push(1);
    coeffs
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=n/2
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let g = monic_from_index(k, p, d);
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// GF(p^n) with the first monic irreducible polynomial of degree n in
    /// index order (constant term least significant).
    pub fn new(p: u64, n: usize) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::Parse("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(n as u32)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "field order {}^{} exceeds the bound {}",
                    p, n, MAX_Q
                ))
            })?;
        let modulus_full = (0..p.pow(n as u32))
            .map(|k| monic_from_index(k, p, n))
            .find(|f| is_irreducible(f, p))
            .ok_or_else(|| Error::Internal("no irreducible polynomial found".into()))?;
        let modulus = modulus_full[..n].to_vec();
        // tables
        let qn = q as usize;
        let mut add = vec![0u32; qn * qn];
        let mut mul = vec![0u32; qn * qn];
        let mut neg = vec![0u32; qn];
        for a in 0..q {
            let da = digits(a, p, n);
            let neg_d: Vec<u64> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = undigits(&neg_d, p) as u32;
            for b in 0..q {
                let db = digits(b, p, n);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as u32;
                let prod = poly_rem(&poly_mul(&trim(da.clone()), &trim(db), p), &modulus_full, p);
                let mut padded = prod;
                padded.resize(n, 0);
                mul[(a * q + b) as usize] = undigits(&padded, p) as u32;
            }
        }
        let mut inv = vec![0u32; qn];
        for a in 1..q {
            let found = (1..q).find(|&b| mul[(a * q + b) as usize] == 1);
            inv[a as usize] = found
                .ok_or_else(|| Error::Internal("non-invertible nonzero element".into()))?
                as u32;
        }
        Ok(Arc::new(FieldCtx {
            p,
            n,
            q,
            modulus,
            add,
            mul,
            inv,
            neg,
        }))
    }

    /// Field of order q = p^n, factoring q.
    pub fn from_order(q: u64) -> Result<Arc<FieldCtx>> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = (2..=q)
            .find(|&d| is_prime(d) && q.is_multiple_of(d))
            .unwrap();
        let mut n = 0usize;
        let mut m = q;
        while m.is_multiple_of(p) {
            m /= p;
            n += 1;
        }
        if m != 1 {
            return Err(Error::NotPrimePower(q));
        }
        FieldCtx::new(p, n)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize] as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize] as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        Ok(self.inv[a as usize] as u64)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The smallest cube root of unity other than 1 in index order, when one
    /// exists (3 divides q - 1).
    pub fn cube_root_of_unity(&self) -> Option<u64> {
        (2..self.q).find(|&z| self.pow(z, 3) == 1)
    }

    /// Human-readable modulus, e.g. "x^2+x+1".
    pub fn modulus_string(&self) -> String {
        let mut parts = vec![format!("x^{}", self.n)];
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => format!("{}", c),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{}x", c),
                (i, 1) => format!("x^{}", i),
                (i, c) => format!("{}x^{}", c, i),
            };
            parts.push(term);
        }
        parts.join("+")
    }

    /// Element rendered as a polynomial in t, e.g. "t+1" in GF(4).
    pub fn element_string(&self, a: u64) -> String {
        if self.n == 1 {
            return a.to_string();
        }
        let ds = digits(a, self.p, self.n);
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in ds.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, c) => format!("{}", c),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{}t", c),
                (i, 1) => format!("t^{}", i),
                (i, c) => format!("{}t^{}", c, i),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf4_structure() {
        let f = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f.q, 4);
        assert_eq!(f.modulus_string(), "x^2+x+1");
        // t^2 = t + 1, t^3 = 1
        let t = 2u64;
        assert_eq!(f.mul(t, t), 3);
        assert_eq!(f.pow(t, 3), 1);
        assert_eq!(f.cube_root_of_unity(), Some(2));
    }

    #[test]
    fn gf7_cube_roots() {
        let f = FieldCtx::new(7, 1).unwrap();
        // 2^3 = 8 = 1 mod 7; the smallest nontrivial cube root is 2
        assert_eq!(f.cube_root_of_unity(), Some(2));
        assert_eq!(f.pow(4, 3), 1);
    }

    #[test]
    fn prime_field_is_modular_arithmetic() {
        let f = FieldCtx::new(5, 1).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.add(a, b), (a + b) % 5);
                assert_eq!(f.mul(a, b), (a * b) % 5);
            }
        }
    }

    #[test]
    fn from_order_accepts_prime_powers_only() {
        assert!(FieldCtx::from_order(9).is_ok());
        assert!(FieldCtx::from_order(8).is_ok());
        assert!(matches!(
            FieldCtx::from_order(12),
            Err(Error::NotPrimePower(12))
        ));
    }

    #[test]
    fn nonzero_elements_have_order_dividing_q_minus_one() {
        for (p, n) in [(2u64, 2usize), (3, 2), (2, 3), (5, 1), (7, 1), (13, 1)] {
            let f = FieldCtx::new(p, n).unwrap();
            for x in 1..f.q {
                assert_eq!(f.pow(x, f.q - 1), 1, "x={} in GF({})", x, f.q);
            }
        }
    }

    #[test]
    fn inverse_law() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            let f = FieldCtx::from_order(q).unwrap();
            for x in 1..q {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            }
            assert!(f.inv(0).is_err());
        }
    }

    proptest! {
        #[test]
        fn field_axioms_gf9(a in 0u64..9, b in 0u64..9, c in 0u64..9) {
            let f = FieldCtx::new(3, 2).unwrap();
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }
}
