//! Permutations on 0-based points, with 1-based cycle notation for text I/O.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on the points `0..degree`. Point `i` maps to `images[i]`.
///
/// Composition is written left to right: `a.then(b)` first applies `a`,
/// then `b`, matching the right-action convention `x(ab) = (xa)b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} appears in two cycles"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn order(&self) -> usize {
        self.cycle_lengths()
            .into_iter()
            .fold(1usize, |acc, len| acc / gcd(acc, len) * len)
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().map(|len| len - 1).sum::<usize>() % 2 == 0
    }

    /// Lengths of the nontrivial cycles, sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycle_lengths().into_iter().filter(|&l| l > 1).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.images[x] != x).collect()
    }

    /// Largest moved point, if any.
    pub fn support_max(&self) -> Option<usize> {
        (0..self.degree()).rev().find(|&x| self.images[x] != x)
    }

    /// Embeds into a larger degree, fixing the added points.
    pub fn embed(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: degree,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree()..degree);
        Ok(Permutation { images })
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            lens.push(len);
        }
        lens
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)`. Commas and extra
    /// whitespace are tolerated; `()` denotes the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Permutation> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::NotAPermutation(format!("expected '(' in {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::NotAPermutation(format!("unbalanced '(' in {s:?}")))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::NotAPermutation(format!("bad point {tok:?} in {s:?}")))?;
                if v == 0 {
                    return Err(Error::NotAPermutation(
                        "cycle notation is 1-based; point 0 is invalid".into(),
                    ));
                }
                cycle.push(v - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::parse("(1 2 3)", 4).unwrap();
        let b = Permutation::parse("(3 4)", 4).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.apply(0), 1);
        assert_eq!(ab.apply(1), 3);
        assert_eq!(ab.apply(2), 0);
        assert!(a.then(&a.inverse()).is_identity());
        assert!(a.inverse().then(&a).is_identity());
    }

    #[test]
    fn orders_and_parity() {
        let c3 = Permutation::parse("(1 2 3)", 5).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.is_even());
        let t = Permutation::parse("(1 2)", 5).unwrap();
        assert_eq!(t.order(), 2);
        assert!(!t.is_even());
        let mixed = Permutation::parse("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(mixed.order(), 6);
        assert_eq!(mixed.cycle_type(), vec![3, 2]);
    }

    #[test]
    fn display_round_trip() {
        for s in ["(1 2)(3 4)", "(1 5 3)", "()"] {
            let p = Permutation::parse(s, 5).unwrap();
            let q = Permutation::parse(&p.to_string(), 5).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::parse("(1 2", 4).is_err());
        assert!(Permutation::parse("(0 1)", 4).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 4).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }
}
