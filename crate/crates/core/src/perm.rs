//! Permutations on the points `0..n`, with disjoint-cycle I/O.
//!
//! Composition is a left action: `compose(p, q)` maps `i` to `p(q(i))`,
//! so `compose(p, q)` means "apply `q` first, then `p`". Conjugation is
//! `p.conjugated_by(g) = g p g^-1`. Points are 0-indexed internally;
//! cycle notation in I/O is 1-indexed.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, validating bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::Parse(format!(
                    "image sequence {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`: apply `other` first. Errors on degree mismatch.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition for internal hot paths; degrees must agree.
    #[inline]
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other
            .images
            .iter()
            .map(|&i| self.images[i as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g self g^-1`. Errors on degree mismatch.
    pub fn conjugated_by(&self, g: &Self) -> Result<Self> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch(self.degree(), g.degree()));
        }
        Ok(self.conj(g))
    }

    #[inline]
    pub(crate) fn conj(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i as u32)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// smallest point. Points are 0-indexed.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Renders in 1-indexed disjoint-cycle notation; identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body = c
                    .iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                format!("({})", body)
            })
            .collect()
    }

    /// Parses 1-indexed disjoint-cycle notation, e.g. `(1,2,3)(4,5)`.
    /// `()` is the identity. Repeated points are rejected.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation string".to_string()));
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] != b'(' {
                return Err(Error::Parse(format!("expected '(' in {:?}", text)));
            }
            let close = s[i..]
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {:?}", text)))?
                + i;
            let body = &s[i + 1..close];
            if !body.is_empty() {
                let points: Vec<u32> = body
                    .split(',')
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad point {:?} in {:?}", t, text)))
                    })
                    .collect::<Result<_>>()?;
                for &p in &points {
                    if p == 0 || p as usize > degree {
                        return Err(Error::Parse(format!(
                            "point {} out of range 1..={} in {:?}",
                            p, degree, text
                        )));
                    }
                    if moved[(p - 1) as usize] {
                        return Err(Error::Parse(format!(
                            "point {} repeated; cycles must be disjoint in {:?}",
                            p, text
                        )));
                    }
                    moved[(p - 1) as usize] = true;
                }
                for (k, &p) in points.iter().enumerate() {
                    let q = points[(k + 1) % points.len()];
                    images[(p - 1) as usize] = q - 1;
                }
            }
            i = close + 1;
        }
        Permutation::from_images(images)
    }

    /// Largest point mentioned in a cycle string, for degree inference.
    pub fn max_point_in_cycles(text: &str) -> Result<u32> {
        let mut max = 0;
        for tok in text
            .split(|c: char| c == '(' || c == ')' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let p: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {:?} in {:?}", tok, text)))?;
            max = max.max(p);
        }
        Ok(max)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}
