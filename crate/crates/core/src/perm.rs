//! Permutations of `{1..n}` and their cycle notation.
//!
//! Products are read left to right: `p * q` first applies `p`, then `q`, so
//! `(p * q)(i) = q(p(i))`. This matches the way squares of a normal origami
//! are labeled (generators multiply from the right).
//!
//! Points are 1-based in cycle notation. The raw accessors [`Perm::image`]
//! and [`Perm::images`] work on 0-based offsets.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Build from 0-based images, checking that they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img >= n || seen[img] {
                return Err(Error::Input(format!(
                    "images do not form a bijection (entry {i} -> {img})"
                )));
            }
            seen[img] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.iter().map(|&i| i as usize).collect()).is_ok());
        Perm { images }
    }

    /// Build from 1-based cycles on `degree` points. Cycles must be disjoint.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::Input(format!("point {pt} outside 1..={degree}")));
                }
                if touched[pt - 1] {
                    return Err(Error::Input(format!("point {pt} appears twice")));
                }
                touched[pt - 1] = true;
                let next = cycle[(idx + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Perm { images })
    }

    /// Parse cycle notation on a fixed number of points.
    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Perm> {
        let cycles = parse_cycles(text)?;
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        if max > degree {
            return Err(Error::Input(format!("point {max} exceeds degree {degree}")));
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Smallest 0-based point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i as u32 != j)
            .map(|(i, _)| i)
    }

    /// The same permutation acting on `degree >= self.degree()` points.
    pub fn extended(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Perm { images }
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Perm { images }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Perm {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.then(&sq);
            }
        }
        acc
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at
    /// its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = self.image(cur);
            }
            order = lcm(order, len);
        }
        order
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(commutator(self, other))
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        // (g^-1 p g)(g(i)) = g(p(i))
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[g.image(i)] = g.images[self.image(i)];
        }
        Perm { images }
    }
}

pub(crate) fn commutator(x: &Perm, y: &Perm) -> Perm {
    x.inverse().then(&y.inverse()).then(x).then(y)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Perm {
    type Output = Perm;

    /// Panics on a degree mismatch; use [`Perm::compose`] to get an error.
    fn mul(self, rhs: &Perm) -> Perm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl Mul for Perm {
    type Output = Perm;

    fn mul(self, rhs: Perm) -> Perm {
        &self * &rhs
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation; the degree is the largest point mentioned.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        Perm::from_cycles(degree, &cycles)
    }
}

/// Split `"(1,2)(3,4,5)"` into 1-based cycles. Whitespace is ignored and
/// `"()"` is the identity.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let bytes: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if bytes.is_empty() {
        return Err(Error::parse(0, "empty permutation"));
    }
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c != '(' {
            return Err(Error::parse(pos, format!("expected `(`, found `{c}`")));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            let Some(&(pos, c)) = bytes.get(i) else {
                return Err(Error::parse(text.len(), "unterminated cycle"));
            };
            if c == ')' {
                i += 1;
                break;
            }
            if !cycle.is_empty() {
                if c != ',' {
                    return Err(Error::parse(
                        pos,
                        format!("expected `,` or `)`, found `{c}`"),
                    ));
                }
                i += 1;
            }
            let start = i;
            let mut value: usize = 0;
            while let Some(&(_, d)) = bytes.get(i) {
                let Some(digit) = d.to_digit(10) else { break };
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit as usize))
                    .ok_or_else(|| Error::parse(bytes[start].0, "point too large"))?;
                i += 1;
            }
            if i == start {
                let pos = bytes.get(i).map_or(text.len(), |b| b.0);
                return Err(Error::parse(pos, "expected a positive integer"));
            }
            if value == 0 {
                return Err(Error::parse(bytes[start].0, "points are 1-based"));
            }
            cycle.push(value);
        }
        if cycle.len() == 1 {
            return Err(Error::parse(pos, "cycles of length one are not allowed"));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    let mut all: Vec<usize> = cycles.iter().flatten().copied().collect();
    all.sort_unstable();
    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Input(format!(
            "point {} appears in two cycles",
            w[0]
        )));
    }
    Ok(cycles)
}
