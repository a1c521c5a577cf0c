//! Permutations on the points `1..=n`, the element substrate for symmetric
//! groups.
//!
//! Points are 0-based internally and 1-based in all textual I/O. The
//! composition convention is fixed for the whole crate: `a.compose(&b)`
//! applies `a` first, then `b`.

use crate::error::{Error, Result};

/// A permutation of the points `0..degree`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1 && degree <= 255, "degree out of range");
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its 0-based image vector, checking that it
    /// is a bijection.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > 255 {
            return Err(Error::CycleParse(format!("unsupported degree {n}")));
        }
        let mut seen = vec![false; n];
        for &im in &images {
            if im as usize >= n {
                return Err(Error::PointOutOfRange {
                    point: im as usize + 1,
                    degree: n,
                });
            }
            if seen[im as usize] {
                return Err(Error::RepeatedPoint(im as usize + 1));
            }
            seen[im as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Parses whitespace-separated parenthesized cycles over 1-based points.
    /// `""` and `"()"` denote the identity; points absent from every cycle
    /// are fixed.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 || degree > 255 {
            return Err(Error::CycleParse(format!("unsupported degree {degree}")));
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::CycleParse(format!(
                    "expected '(' at \"{}\"",
                    rest.chars().take(12).collect::<String>()
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::CycleParse("unbalanced '('".into()))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::CycleParse(format!("bad point \"{tok}\"")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        degree,
                    });
                }
                if used[p - 1] {
                    return Err(Error::RepeatedPoint(p));
                }
                used[p - 1] = true;
                cycle.push(p - 1);
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()] as u8;
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Applies `self` first, then `other`. Panics on degree mismatch; permutations
    /// of distinct degrees never coexist inside one group.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "compose: degree mismatch {} vs {}",
            self.degree(),
            other.degree()
        );
        Perm {
            images: self.images.iter().map(|&im| other.images[im as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (p, &im) in self.images.iter().enumerate() {
            images[im as usize] = p as u8;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &im)| p == im as usize)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }

    /// Parity: true iff the permutation is even.
    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Cycle decomposition, cycles sorted by least moved point, fixed points
    /// omitted (1-based points).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Perm {
        Perm::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn parse_three_cycle() {
        let c = p("(1 2 3)", 3);
        assert_eq!(c.apply(0), 1);
        assert_eq!(c.apply(1), 2);
        assert_eq!(c.apply(2), 0);
    }

    #[test]
    fn parse_identity_forms() {
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
    }

    #[test]
    fn parse_disjoint_transpositions() {
        let c = p("(1 2)(3 4)", 4);
        assert_eq!(c.order(), 2);
        assert_eq!(c.apply(2), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Perm::parse_cycles("(1 5)", 4),
            Err(Error::PointOutOfRange { point: 5, .. })
        ));
        assert!(matches!(
            Perm::parse_cycles("(1 2)(2 3)", 4),
            Err(Error::RepeatedPoint(2))
        ));
        assert!(Perm::parse_cycles("(1 2", 4).is_err());
        assert!(Perm::parse_cycles("1 2)", 4).is_err());
    }

    #[test]
    fn compose_convention() {
        let id = Perm::identity(3);
        let t = p("(1 2)", 3);
        assert_eq!(id.compose(&t), t);
        assert!(t.compose(&t).is_identity());
        // (1 2) then (2 3): 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2.
        // Point-by-point evaluation gives the 3-cycle (1 3 2).
        let lhs = p("(1 2)", 3).compose(&p("(2 3)", 3));
        assert_eq!(lhs, p("(1 3 2)", 3));
    }

    #[test]
    #[should_panic(expected = "degree mismatch")]
    fn compose_degree_mismatch() {
        let _ = p("(1 2)", 2).compose(&p("(1 2)", 3));
    }

    #[test]
    fn inverse_cases() {
        assert!(Perm::identity(4).inverse().is_identity());
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(p("(1 2)", 2).inverse(), p("(1 2)", 2));
        let c = p("(1 4 2)(3 5)", 5);
        assert!(c.compose(&c.inverse()).is_identity());
        assert!(c.inverse().compose(&c).is_identity());
    }

    #[test]
    fn printer_canonical_form() {
        assert_eq!(Perm::identity(5).to_string(), "()");
        assert_eq!(p("(2 3)(1 5)", 5).to_string(), "(1 5)(2 3)");
        assert_eq!(p("(3 1 2)", 3).to_string(), "(1 2 3)");
    }

    #[test]
    fn parity() {
        assert!(Perm::identity(4).is_even());
        assert!(!p("(1 2)", 4).is_even());
        assert!(p("(1 2 3)", 4).is_even());
        assert!(p("(1 2)(3 4)", 4).is_even());
    }
}
