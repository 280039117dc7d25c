//! Permutations of `{0, .., n-1}` stored as image lists.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on the points `0..degree`, stored by its image list:
/// `images[i]` is where point `i` goes.
///
/// Composition is function composition with the right factor applied
/// first: `(p * q)(i) = p(q(i))`. Every other module relies on this
/// orientation, together with the conjugation convention
/// `x^g = g^-1 * x * g`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    /// Builds a permutation from its image list, rejecting non-bijections
    /// and the degenerate degree-0 case.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree 0 is not allowed".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let img = img as usize;
            if img >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} out of range for degree {n}"
                )));
            }
            if seen[img] {
                return Err(Error::InvalidPermutation(format!("duplicate image {img}")));
            }
            seen[img] = true;
        }
        Ok(Permutation { images: images.into_boxed_slice() })
    }

    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0 && degree <= u16::MAX as usize);
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from disjoint cycles; points absent from every
    /// cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree 0 is not allowed".into()));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let pt = pt as usize;
                if pt >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if moved[pt] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears in more than one cycle"
                    )));
                }
                moved[pt] = true;
                images[pt] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// `(self * other)(i) = self(other(i))`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        let images = other.images.iter().map(|&i| self.images[i as usize]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Permutation { images: images.into_boxed_slice() }
    }

    /// Least `k >= 1` with `self^k` the identity: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, lcm)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        let order = self.order() as i64;
        let mut e = k.rem_euclid(order);
        let mut result = Permutation::identity(n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base).expect("equal degrees");
            }
            base = base.compose(&base.clone()).expect("equal degrees");
            e >>= 1;
        }
        result
    }

    fn cycle_lengths(&self) -> Vec<u64> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Nontrivial cycles in increasing order of least moved point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u16);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::arith::gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Parses either an image list (`1 0 2`) or cycle notation (`(0 1)(2 3)`),
/// the two generator formats of the group file syntax.
pub fn parse_permutation(degree: usize, text: &str) -> Result<Permutation> {
    let trimmed = text.trim();
    if trimmed.starts_with('(') {
        parse_cycles(degree, trimmed)
    } else {
        let mut images = Vec::new();
        for tok in trimmed.split_whitespace() {
            let v: u16 = tok
                .parse()
                .map_err(|_| Error::parse(0, format!("bad point {tok:?} in image list")))?;
            images.push(v);
        }
        if images.len() != degree {
            return Err(Error::parse(
                0,
                format!("image list has {} points, expected {degree}", images.len()),
            ));
        }
        Permutation::from_images(images)
    }
}

fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::parse(
                text.len() - rest.len(),
                "expected '(' to open a cycle",
            ));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse(text.len() - rest.len(), "unclosed cycle"))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body.split_whitespace() {
            let v: u16 = tok
                .parse()
                .map_err(|_| Error::parse(0, format!("bad point {tok:?} in cycle")))?;
            cycle.push(v);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // p = (0 1), q = (1 2) on 3 points; (p*q)(i) = p(q(i)).
        let p = perm(&[1, 0, 2]);
        let q = perm(&[0, 2, 1]);
        assert_eq!(p.compose(&q).unwrap(), perm(&[1, 2, 0]));
    }

    #[test]
    fn compose_identity_and_inverse() {
        let p = perm(&[2, 0, 3, 1, 4]);
        let e = Permutation::identity(5);
        assert_eq!(p.compose(&e).unwrap(), p);
        assert_eq!(e.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&p.inverse()).unwrap(), e);
        assert_eq!(p.inverse().compose(&p).unwrap(), e);
    }

    #[test]
    fn compose_degree_mismatch_errors() {
        let p = perm(&[1, 0]);
        let q = perm(&[0, 2, 1]);
        assert!(matches!(p.compose(&q), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(perm(&[1, 2, 3, 4, 0]).order(), 5);
        // (0 1)(2 3 4): lcm(2, 3) = 6.
        assert_eq!(perm(&[1, 0, 3, 4, 2]).order(), 6);
    }

    #[test]
    fn rejects_bad_images() {
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycle_parse_and_print() {
        let p = parse_permutation(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(p, perm(&[1, 2, 0, 4, 3]));
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        let q = parse_permutation(3, "1 0 2").unwrap();
        assert_eq!(q, perm(&[1, 0, 2]));
        assert!(parse_permutation(3, "(0 1").is_err());
        assert!(parse_permutation(3, "(0 0 1)").is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = perm(&[1, 2, 3, 0, 4, 5]);
        let mut acc = Permutation::identity(6);
        for k in 0..9 {
            assert_eq!(p.pow(k), acc, "power {k}");
            acc = p.compose(&acc).unwrap();
        }
        assert_eq!(p.pow(-1), p.inverse());
    }
}
