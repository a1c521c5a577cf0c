//! Fixed-width bitsets over element indices.
//!
//! Subgroups are deduplicated and canonically ordered by these bitsets, so
//! `Ord`/`Hash` go through the raw words (low indices in low bits of word 0).

/// Bitset over `0..len` element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: u16) -> bool {
        let i = i as usize;
        debug_assert!(i < self.len);
        self.words[i >> 6] & (1 << (i & 63)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: u16) {
        let i = i as usize;
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: u16) {
        let i = i as usize;
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((wi * 64 + b) as u16)
                }
            })
        })
    }
}

impl FromIterator<u16> for Bits {
    /// Requires at least one element; sized to hold the maximum.
    /// Prefer `Bits::new` + `insert` when the universe size is known.
    fn from_iter<T: IntoIterator<Item = u16>>(iter: T) -> Self {
        let items: Vec<u16> = iter.into_iter().collect();
        let len = items.iter().map(|&i| i as usize + 1).max().unwrap_or(1);
        let mut b = Bits::new(len);
        for i in items {
            b.insert(i);
        }
        b
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut b = Bits::new(130);
        for i in [0u16, 63, 64, 65, 129] {
            b.insert(i);
        }
        assert_eq!(b.count(), 5);
        assert!(b.contains(64));
        assert!(!b.contains(1));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 65, 129]);
    }

    #[test]
    fn subset_and_ops() {
        let mut a = Bits::new(70);
        let mut b = Bits::new(70);
        a.insert(3);
        b.insert(3);
        b.insert(69);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(a.intersection(&b).count(), 1);
        a.union_with(&b);
        assert_eq!(a.count(), 2);
    }
}
