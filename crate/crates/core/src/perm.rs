//! Permutations of `{1, ..., degree}` with cycle notation.
//!
//! Internally points are 0-based indices into an image vector; all textual
//! forms are 1-based. Composition is left-to-right: `(a * b)` applies `a`
//! first, so points transform by `x^(a·b) = (x^a)^b`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::lcm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("invalid cycle notation: {0}")]
    Parse(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated within a permutation's cycles")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation of `{0, ..., degree-1}` stored by its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// The identity on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Build from an image vector (`images[x]` = image of `x`, 0-based).
    /// Validates bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &y in &images {
            let y = y as usize;
            if y >= d {
                return Err(PermError::PointOutOfRange { point: y + 1, degree: d });
            }
            if seen[y] {
                return Err(PermError::RepeatedPoint(y + 1));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based disjoint cycles over `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let a = cycle[window];
                let b = cycle[(window + 1) % cycle.len()];
                if a == 0 || a > degree {
                    return Err(PermError::PointOutOfRange { point: a, degree });
                }
                if b == 0 || b > degree {
                    return Err(PermError::PointOutOfRange { point: b, degree });
                }
                if moved[a - 1] {
                    return Err(PermError::RepeatedPoint(a));
                }
                moved[a - 1] = true;
                images[a - 1] = (b - 1) as u32;
            }
        }
        // Bijectivity is guaranteed by the disjointness check, but verify in
        // debug builds.
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// Left-to-right composition: `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&y| other.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Permutation { images }
    }

    /// `self^k` (negative `k` uses the inverse).
    pub fn pow(&self, k: i64) -> Permutation {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `g^h = h^{-1} g h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.inverse().compose(self).compose(h)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// The `p`-part of the commuting factorization `g = g_p · g_{p'}`:
    /// `self^m` where `m ≡ 0` mod the `p'`-part of the order and `m ≡ 1`
    /// mod its `p`-part. Returns the identity when `p` does not divide the
    /// order.
    pub fn p_element_power(&self, p: u64) -> Permutation {
        let n = self.order();
        let q = crate::arith::p_prime_part(n, p);
        let pk = n / q;
        if pk == 1 {
            return Permutation::identity(self.degree());
        }
        let t = crate::arith::inv_mod(q % pk, pk);
        self.pow((t * q) as i64)
    }

    /// Smallest moved 0-based point, if any.
    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &y)| *i != y as usize).map(|(i, _)| i)
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its
    /// smallest point, sorted by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths including fixed points (descending), e.g.
    /// the shape `[3, 1]` for a 3-cycle in S4.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut shape: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        shape.extend(std::iter::repeat(1).take(self.degree() - moved));
        shape.sort_unstable_by(|a, b| b.cmp(a));
        shape
    }
}

impl fmt::Display for Permutation {
    /// Canonical cycle notation, 1-based: `"(1,2)(3,4)"`; identity is `"()"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parse 1-based cycle notation `"(1,2)(3,4)"` into cycles (no degree
/// context; combine with [`Permutation::from_cycles`]).
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let s = s.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    if rest.is_empty() {
        return Err(PermError::Parse("empty input".to_string()));
    }
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| PermError::Parse(format!("expected '(' at '{rest}'")))?;
        if !rest[..open].trim().is_empty() {
            return Err(PermError::Parse(format!("unexpected text '{}'", &rest[..open])));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| PermError::Parse("unbalanced parenthesis".to_string()))?;
        let inner = &rest[open + 1..close];
        let inner = inner.trim();
        if !inner.is_empty() {
            let cycle: Result<Vec<usize>, _> = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| PermError::Parse(format!("bad point '{t}'")))
                })
                .collect();
            let cycle = cycle?;
            if cycle.iter().any(|&x| x == 0) {
                return Err(PermError::Parse("points are 1-based".to_string()));
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        rest = &rest[close + 1..];
    }
    Ok(cycles)
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parse cycle notation, inferring the degree as the largest point
    /// mentioned (identity `"()"` gets degree 0).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        Permutation::from_cycles(degree, &cycles)
    }
}
