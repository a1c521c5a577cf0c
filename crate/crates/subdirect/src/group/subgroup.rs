//! Subgroups as bitsets of parent-element indices.
//!
//! The bitset is the canonical identity of a subgroup: deduplication,
//! equality and the deterministic lattice order all go through it.

use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};

use super::finite_group::FiniteGroup;

#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    bits: Bits,
    size: u32,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(Arc::ptr_eq(&self.parent, &other.parent));
        self.bits == other.bits
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.size, self.parent.label())
    }
}

impl Subgroup {
    pub fn from_bits(parent: Arc<FiniteGroup>, bits: Bits) -> Self {
        debug_assert_eq!(bits.len(), parent.order());
        let size = bits.count() as u32;
        Subgroup { parent, bits, size }
    }

    pub fn from_members<I: IntoIterator<Item = u16>>(parent: Arc<FiniteGroup>, it: I) -> Self {
        let mut bits = Bits::new(parent.order());
        for i in it {
            bits.insert(i);
        }
        Self::from_bits(parent, bits)
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Self::from_members(parent, [0])
    }

    pub fn full(parent: Arc<FiniteGroup>) -> Self {
        let n = parent.order();
        let mut bits = Bits::new(n);
        for i in 0..n as u16 {
            bits.insert(i);
        }
        Self::from_bits(parent, bits)
    }

    /// Smallest subgroup containing `gens` (closure under multiplication;
    /// inverses come free in a finite group).
    pub fn generated(parent: Arc<FiniteGroup>, gens: &[u16]) -> Self {
        let bits = parent.closure_bits(gens);
        Self::from_bits(parent, bits)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.size as usize
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, i: u16) -> bool {
        self.bits.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.bits.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_full(&self) -> bool {
        self.size as usize == self.parent.order()
    }

    /// Lattice order: by size, ties broken by the bitset words.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.bits.cmp(&other.bits))
    }

    /// Dimino extension: the subgroup generated by `self` and one further
    /// element. `own_gens` must generate `self`; the result is assembled
    /// coset by coset, so the cost is linear in the output order.
    pub fn extended_by(&self, own_gens: &[u16], g: u16) -> Subgroup {
        if self.contains(g) {
            return self.clone();
        }
        let gr = &self.parent;
        let mut bits = self.bits.clone();
        let mut all_gens: Vec<u16> = own_gens.to_vec();
        all_gens.push(g);
        let mut pending: Vec<u16> = vec![g];
        let mut count = self.size as usize;
        while let Some(t) = pending.pop() {
            if bits.contains(t) {
                continue;
            }
            for u in self.bits.iter() {
                let x = gr.mul(u, t);
                if !bits.contains(x) {
                    bits.insert(x);
                    count += 1;
                }
            }
            for &s in &all_gens {
                let c = gr.mul(t, s);
                if !bits.contains(c) {
                    pending.push(c);
                }
            }
        }
        Subgroup {
            parent: gr.clone(),
            bits,
            size: count as u32,
        }
    }

    /// A short generating chain: repeatedly adjoin the smallest member
    /// outside the running closure.
    pub fn small_gens(&self) -> Vec<u16> {
        let gr = &self.parent;
        let mut gens: Vec<u16> = Vec::new();
        let mut cur = Subgroup::trivial(gr.clone());
        while cur.size < self.size {
            let next = self.iter().find(|&x| !cur.contains(x)).unwrap();
            cur = cur.extended_by(&gens, next);
            gens.push(next);
        }
        gens
    }

    pub fn conjugated_by(&self, g: u16) -> Subgroup {
        let gr = &self.parent;
        let mut bits = Bits::new(gr.order());
        for x in self.iter() {
            bits.insert(gr.conj(x, g));
        }
        Subgroup {
            parent: gr.clone(),
            bits,
            size: self.size,
        }
    }

    /// Conjugation-invariance under every parent element, checked on a
    /// generating set of `self`.
    pub fn is_normal(&self) -> bool {
        let gens = self.small_gens();
        self.parent
            .elements()
            .all(|g| gens.iter().all(|&s| self.contains(self.parent.conj(s, g))))
    }

    /// Normality inside an intermediate subgroup (`self <= within` required).
    pub fn is_normal_in(&self, within: &Subgroup) -> bool {
        debug_assert!(self.bits.is_subset_of(&within.bits));
        let gens = self.small_gens();
        within
            .iter()
            .all(|g| gens.iter().all(|&s| self.contains(self.parent.conj(s, g))))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset_of(&other.bits)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let bits = self.bits.intersection(&other.bits);
        Subgroup::from_bits(self.parent.clone(), bits)
    }

    /// Setwise product `{ab}`; a subgroup when one side normalizes the other.
    pub fn setwise_product(&self, other: &Subgroup) -> Subgroup {
        let gr = &self.parent;
        let mut bits = Bits::new(gr.order());
        for a in self.iter() {
            for b in other.iter() {
                bits.insert(gr.mul(a, b));
            }
        }
        Subgroup::from_bits(gr.clone(), bits)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.small_gens();
        gens.extend(other.small_gens());
        Subgroup::generated(self.parent.clone(), &gens)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.small_gens();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.parent.mul(a, b) == self.parent.mul(b, a)))
    }

    /// Elementwise commutation `[self, other] = 1`, checked on generators.
    pub fn centralizes(&self, other: &Subgroup) -> bool {
        let a = self.small_gens();
        let b = other.small_gens();
        a.iter()
            .all(|&x| b.iter().all(|&y| self.parent.mul(x, y) == self.parent.mul(y, x)))
    }

    /// Derived subgroup, generated by all commutators.
    pub fn derived(&self) -> Subgroup {
        let gr = &self.parent;
        let mut comms: Vec<u16> = Vec::new();
        let mut seen = Bits::new(gr.order());
        for a in self.iter() {
            for b in self.iter() {
                let c = gr.comm(a, b);
                if !seen.contains(c) {
                    seen.insert(c);
                    comms.push(c);
                }
            }
        }
        Subgroup::generated(gr.clone(), &comms)
    }

    /// Validation helper: contains the identity and closed under products.
    pub fn is_valid_subgroup(&self) -> bool {
        if !self.contains(0) {
            return false;
        }
        for a in self.iter() {
            for b in self.iter() {
                if !self.contains(self.parent.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Lagrange sanity assert, used as a cheap corruption check.
    pub fn assert_lagrange(&self) {
        assert_eq!(
            self.parent.order() % self.order(),
            0,
            "subgroup order {} does not divide group order {}",
            self.order(),
            self.parent.order()
        );
    }

    /// Materializes the subgroup as a group of its own. Local element `i`
    /// corresponds to parent element `parent_of_local(i)`.
    pub fn as_group(&self, label: &str) -> Arc<FiniteGroup> {
        let members: Vec<u16> = self.iter().collect();
        FiniteGroup::from_members(label.to_string(), self.parent.clone(), members)
    }

    /// Element names of all members, in index order.
    pub fn member_names(&self) -> Vec<String> {
        self.iter().map(|i| self.parent.elem_name(i)).collect()
    }
}

/// Coset space and projection of a group by a normal subgroup.
#[derive(Clone)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub projection: super::hom::Homomorphism,
}

/// Quotient by a normal subgroup, with the canonical (minimal-index)
/// representative chosen per coset.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<Quotient> {
    debug_assert!(Arc::ptr_eq(g, n.parent()));
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of = vec![u16::MAX; order];
    let mut reps: Vec<u16> = Vec::new();
    for x in g.elements() {
        if coset_of[x as usize] != u16::MAX {
            continue;
        }
        let id = reps.len() as u16;
        reps.push(x);
        for m in n.iter() {
            coset_of[g.mul(m, x) as usize] = id;
        }
    }
    let label = format!("{}/{}", g.label(), n.order());
    let q = FiniteGroup::from_cosets(label, g.clone(), reps, coset_of.clone());
    let projection = super::hom::Homomorphism::new(g.clone(), q.clone(), coset_of)?;
    Ok(Quotient {
        group: q,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn s(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::symmetric(n).unwrap()
    }

    fn idx(g: &Arc<FiniteGroup>, cycles: &str, degree: usize) -> u16 {
        g.index_of_perm(&Perm::parse_cycles(cycles, degree).unwrap())
            .unwrap()
    }

    #[test]
    fn generated_subgroup_examples() {
        let s3 = s(3);
        assert_eq!(Subgroup::generated(s3.clone(), &[]).order(), 1);
        let both = [idx(&s3, "(1 2)", 3), idx(&s3, "(1 2 3)", 3)];
        assert_eq!(Subgroup::generated(s3.clone(), &both).order(), 6);

        let s4 = s(4);
        let v = Subgroup::generated(
            s4.clone(),
            &[idx(&s4, "(1 2)(3 4)", 4), idx(&s4, "(1 3)(2 4)", 4)],
        );
        assert_eq!(v.order(), 4);
        assert!(v.is_normal());
        assert!(v.is_abelian());
    }

    #[test]
    fn a_n_inside_s_n() {
        let s4 = s(4);
        let evens: Vec<u16> = s4
            .elements()
            .filter(|&i| s4.perm(i).unwrap().is_even())
            .collect();
        let a4 = Subgroup::from_members(s4.clone(), evens);
        assert_eq!(a4.order(), 12);
        assert!(a4.is_valid_subgroup());
        assert!(a4.is_normal());
        assert_eq!(a4.derived().order(), 4); // [A4,A4] = V
    }

    #[test]
    fn extension_and_small_gens() {
        let s4 = s(4);
        let t = Subgroup::trivial(s4.clone());
        let c2 = t.extended_by(&[], idx(&s4, "(1 2)", 4));
        assert_eq!(c2.order(), 2);
        let d = c2.extended_by(&[idx(&s4, "(1 2)", 4)], idx(&s4, "(3 4)", 4));
        assert_eq!(d.order(), 4);
        let gens = d.small_gens();
        assert_eq!(Subgroup::generated(s4.clone(), &gens), d);
    }

    #[test]
    fn quotient_s4_by_v_is_s3_sized() {
        let s4 = s(4);
        let v = Subgroup::generated(
            s4.clone(),
            &[idx(&s4, "(1 2)(3 4)", 4), idx(&s4, "(1 3)(2 4)", 4)],
        );
        let q = quotient(&s4, &v).unwrap();
        assert_eq!(q.group.order(), 6);
        q.group.check_axioms().unwrap();
        assert!(!q.group.is_abelian()); // S4/V is S3, not Z6
        // projection is onto and has kernel V
        for x in s4.elements() {
            let c = q.projection.apply(x);
            assert!(c < 6);
        }
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = s(3);
        let c2 = Subgroup::generated(s3.clone(), &[idx(&s3, "(1 2)", 3)]);
        assert!(quotient(&s3, &c2).is_err());
    }

    #[test]
    fn quotient_by_trivial_and_by_a3() {
        let s3 = s(3);
        let q1 = quotient(&s3, &Subgroup::trivial(s3.clone())).unwrap();
        assert_eq!(q1.group.order(), 6);
        let a3 = Subgroup::generated(s3.clone(), &[idx(&s3, "(1 2 3)", 3)]);
        let q2 = quotient(&s3, &a3).unwrap();
        assert_eq!(q2.group.order(), 2);
    }

    #[test]
    fn subgroup_as_group() {
        let s4 = s(4);
        let v = Subgroup::generated(
            s4.clone(),
            &[idx(&s4, "(1 2)(3 4)", 4), idx(&s4, "(1 3)(2 4)", 4)],
        );
        let vg = v.as_group("V");
        assert_eq!(vg.order(), 4);
        vg.check_axioms().unwrap();
        assert!(vg.is_abelian());
        for i in vg.elements() {
            let p = vg.parent_of_local(i).unwrap();
            assert_eq!(vg.local_of_parent(p), Some(i));
        }
    }
}
