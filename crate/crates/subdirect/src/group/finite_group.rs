//! Fully enumerated finite groups with Cayley-indexable multiplication.
//!
//! Every group is a list of elements indexed `0..n` with index 0 the
//! identity. Small groups carry a dense Cayley table; larger ones compute
//! products through their backing (permutation composition, componentwise
//! product multiplication, or parent-group lookups for subgroups and
//! quotients).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Orders up to this get an eager dense Cayley table (2 bytes per cell).
const DENSE_LIMIT: usize = 4096;
/// Product groups up to this cache per-coordinate component tables.
const COMPS_LIMIT: usize = 1 << 21;
/// Hard cap on representable group order (element indices are `u16`).
pub const MAX_ORDER: usize = u16::MAX as usize;

pub(crate) enum Backing {
    Perms {
        perms: Vec<Perm>,
        index: HashMap<Perm, u16>,
    },
    Product {
        factors: Vec<Arc<FiniteGroup>>,
        strides: Vec<usize>,
        comps: Option<Vec<Vec<u16>>>,
    },
    Members {
        parent: Arc<FiniteGroup>,
        to_parent: Vec<u16>,
        from_parent: Vec<u16>,
    },
    Cosets {
        parent: Arc<FiniteGroup>,
        reps: Vec<u16>,
        coset_of: Vec<u16>,
    },
    /// A subgroup of a componentwise product too large to index directly:
    /// elements are key tuples over the factor groups, multiplied
    /// componentwise and looked up by hash.
    Keyed {
        factors: Vec<Arc<FiniteGroup>>,
        keys: Vec<Vec<u16>>,
        index: HashMap<Vec<u16>, u16>,
    },
}

pub struct FiniteGroup {
    label: String,
    n: usize,
    inv: Vec<u16>,
    backing: Backing,
    dense: Option<Box<[u16]>>,
    orders: OnceLock<Vec<u16>>,
    fast_gens: OnceLock<Vec<u16>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.n)
    }
}

impl FiniteGroup {
    fn finish(label: String, n: usize, backing: Backing) -> Arc<FiniteGroup> {
        assert!(n >= 1 && n <= MAX_ORDER, "group order {n} unsupported");
        let mut g = FiniteGroup {
            label,
            n,
            inv: Vec::new(),
            backing,
            dense: None,
            orders: OnceLock::new(),
            fast_gens: OnceLock::new(),
        };
        g.inv = (0..n as u16).map(|a| g.raw_inv(a)).collect();
        if n <= DENSE_LIMIT {
            let mut table = vec![0u16; n * n];
            for a in 0..n as u16 {
                for b in 0..n as u16 {
                    table[a as usize * n + b as usize] = g.raw_mul(a, b);
                }
            }
            g.dense = Some(table.into_boxed_slice());
        }
        debug_assert_eq!(g.mul(0, 0), 0, "identity must sit at index 0");
        Arc::new(g)
    }

    /// The symmetric group on `n` points, elements sorted so that the
    /// identity has index 0.
    pub fn symmetric(n: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 || n > 8 {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut perms = all_perms(n);
        perms.sort();
        Ok(Self::from_sorted_perms(format!("S{n}"), perms))
    }

    /// The alternating group on `n` points.
    pub fn alternating(n: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 || n > 8 {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut perms: Vec<Perm> = all_perms(n).into_iter().filter(Perm::is_even).collect();
        perms.sort();
        Ok(Self::from_sorted_perms(format!("A{n}"), perms))
    }

    /// The cyclic group of order `n`, realized as powers of an `n`-cycle.
    pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 || n > 255 {
            return Err(Error::GroupSpec(format!("Z{n} out of range")));
        }
        let gen = if n == 1 {
            Perm::identity(1)
        } else {
            let cycle: Vec<usize> = (1..=n).collect();
            Perm::parse_cycles(
                &format!(
                    "({})",
                    cycle.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                ),
                n,
            )?
        };
        Self::from_generators(format!("Z{n}"), &[gen])
    }

    /// The Klein four-group as `<(1 2)(3 4), (1 3)(2 4)>` inside S4.
    pub fn klein_four() -> Arc<FiniteGroup> {
        let a = Perm::parse_cycles("(1 2)(3 4)", 4).unwrap();
        let b = Perm::parse_cycles("(1 3)(2 4)", 4).unwrap();
        Self::from_generators("V".to_string(), &[a, b]).unwrap()
    }

    /// Closure of a set of permutations of equal degree.
    pub fn from_generators(label: String, gens: &[Perm]) -> Result<Arc<FiniteGroup>> {
        if gens.is_empty() {
            return Err(Error::GroupSpec("empty generator list".into()));
        }
        let degree = gens[0].degree();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let mut queue = vec![Perm::identity(degree)];
        seen.insert(queue[0].clone(), ());
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            for g in gens {
                let next = cur.compose(g);
                if !seen.contains_key(&next) {
                    if seen.len() >= MAX_ORDER {
                        return Err(Error::BoundExceeded {
                            order: seen.len() + 1,
                            bound: MAX_ORDER,
                        });
                    }
                    seen.insert(next.clone(), ());
                    queue.push(next);
                }
            }
        }
        queue.sort();
        Ok(Self::from_sorted_perms(label, queue))
    }

    fn from_sorted_perms(label: String, perms: Vec<Perm>) -> Arc<FiniteGroup> {
        debug_assert!(perms[0].is_identity());
        let index: HashMap<Perm, u16> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u16))
            .collect();
        let n = perms.len();
        Self::finish(label, n, Backing::Perms { perms, index })
    }

    /// Direct product with componentwise multiplication. Elements are index
    /// tuples encoded in mixed radix, so projections are component reads.
    pub fn direct_product(factors: &[Arc<FiniteGroup>]) -> Result<Arc<FiniteGroup>> {
        assert!(!factors.is_empty());
        let mut n: usize = 1;
        let mut strides = Vec::with_capacity(factors.len());
        for f in factors {
            strides.push(n);
            n = n
                .checked_mul(f.order())
                .filter(|&m| m <= MAX_ORDER)
                .ok_or(Error::BoundExceeded {
                    order: usize::MAX,
                    bound: MAX_ORDER,
                })?;
        }
        let comps = (n <= COMPS_LIMIT).then(|| {
            factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    (0..n)
                        .map(|idx| ((idx / strides[i]) % f.order()) as u16)
                        .collect()
                })
                .collect()
        });
        let label = factors
            .iter()
            .map(|f| f.label().to_string())
            .collect::<Vec<_>>()
            .join(" x ");
        Ok(Self::finish(
            label,
            n,
            Backing::Product {
                factors: factors.to_vec(),
                strides,
                comps,
            },
        ))
    }

    pub(crate) fn from_members(
        label: String,
        parent: Arc<FiniteGroup>,
        members: Vec<u16>,
    ) -> Arc<FiniteGroup> {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        let mut from_parent = vec![u16::MAX; parent.order()];
        for (local, &p) in members.iter().enumerate() {
            from_parent[p as usize] = local as u16;
        }
        let n = members.len();
        Self::finish(
            label,
            n,
            Backing::Members {
                parent,
                to_parent: members,
                from_parent,
            },
        )
    }

    pub(crate) fn from_cosets(
        label: String,
        parent: Arc<FiniteGroup>,
        reps: Vec<u16>,
        coset_of: Vec<u16>,
    ) -> Arc<FiniteGroup> {
        let n = reps.len();
        Self::finish(label, n, Backing::Cosets { parent, reps, coset_of })
    }

    /// A multiplication-closed set of component tuples over the given
    /// factors, as a group in its own right. The all-zero tuple (the
    /// identity) must be present; tuples are sorted so it gets index 0.
    pub fn from_keyed_tuples(
        label: String,
        factors: Vec<Arc<FiniteGroup>>,
        mut keys: Vec<Vec<u16>>,
    ) -> Arc<FiniteGroup> {
        keys.sort();
        keys.dedup();
        assert!(keys[0].iter().all(|&c| c == 0), "identity tuple missing");
        let index: HashMap<Vec<u16>, u16> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u16))
            .collect();
        let n = keys.len();
        Self::finish(label, n, Backing::Keyed { factors, keys, index })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn identity(&self) -> u16 {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.n as u16
    }

    fn raw_mul(&self, a: u16, b: u16) -> u16 {
        match &self.backing {
            Backing::Perms { perms, index } => {
                index[&perms[a as usize].compose(&perms[b as usize])]
            }
            Backing::Product { factors, strides, comps } => {
                let mut idx = 0usize;
                for (i, f) in factors.iter().enumerate() {
                    let (ca, cb) = match comps {
                        Some(c) => (c[i][a as usize], c[i][b as usize]),
                        None => (
                            ((a as usize / strides[i]) % f.order()) as u16,
                            ((b as usize / strides[i]) % f.order()) as u16,
                        ),
                    };
                    idx += f.mul(ca, cb) as usize * strides[i];
                }
                idx as u16
            }
            Backing::Members { parent, to_parent, from_parent } => {
                from_parent[parent.mul(to_parent[a as usize], to_parent[b as usize]) as usize]
            }
            Backing::Cosets { parent, reps, coset_of } => {
                coset_of[parent.mul(reps[a as usize], reps[b as usize]) as usize]
            }
            Backing::Keyed { factors, keys, index } => {
                let ka = &keys[a as usize];
                let kb = &keys[b as usize];
                let prod: Vec<u16> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.mul(ka[i], kb[i]))
                    .collect();
                *index
                    .get(&prod)
                    .expect("keyed tuple set is not closed under multiplication")
            }
        }
    }

    fn raw_inv(&self, a: u16) -> u16 {
        match &self.backing {
            Backing::Perms { perms, index } => index[&perms[a as usize].inverse()],
            Backing::Product { factors, strides, comps } => {
                let mut idx = 0usize;
                for (i, f) in factors.iter().enumerate() {
                    let ca = match comps {
                        Some(c) => c[i][a as usize],
                        None => ((a as usize / strides[i]) % f.order()) as u16,
                    };
                    idx += f.inv(ca) as usize * strides[i];
                }
                idx as u16
            }
            Backing::Members { parent, to_parent, from_parent } => {
                from_parent[parent.inv(to_parent[a as usize]) as usize]
            }
            Backing::Cosets { parent, reps, coset_of } => {
                coset_of[parent.inv(reps[a as usize]) as usize]
            }
            Backing::Keyed { factors, keys, index } => {
                let ka = &keys[a as usize];
                let invk: Vec<u16> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.inv(ka[i]))
                    .collect();
                *index
                    .get(&invk)
                    .expect("keyed tuple set is not closed under inversion")
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        match &self.dense {
            Some(t) => t[a as usize * self.n + b as usize],
            None => self.raw_mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// Conjugate `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u16, g: u16) -> u16 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Commutator `[a,b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: u16, b: u16) -> u16 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: u16, mut e: usize) -> u16 {
        let mut acc = 0u16;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elem_order(&self, a: u16) -> usize {
        self.orders()[a as usize] as usize
    }

    pub fn orders(&self) -> &[u16] {
        self.orders.get_or_init(|| {
            (0..self.n as u16)
                .map(|a| {
                    let mut k = 1u16;
                    let mut x = a;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.fast_gens();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Right-multiplication closure of the identity under `gens`.
    pub(crate) fn closure_bits(&self, gens: &[u16]) -> Bits {
        let mut bits = Bits::new(self.n);
        bits.insert(0);
        let mut queue: Vec<u16> = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.contains(y) {
                    bits.insert(y);
                    queue.push(y);
                }
            }
        }
        bits
    }

    /// A generating chain found by repeatedly adjoining the smallest element
    /// outside the current closure. Not minimal, but short, deterministic,
    /// and cheap; used for homomorphism verification and normality checks.
    pub fn fast_gens(&self) -> &[u16] {
        self.fast_gens.get_or_init(|| {
            let mut gens: Vec<u16> = Vec::new();
            let mut bits = self.closure_bits(&gens);
            while bits.count() < self.n {
                let next = (0..self.n as u16).find(|&x| !bits.contains(x)).unwrap();
                gens.push(next);
                bits = self.closure_bits(&gens);
            }
            gens
        })
    }

    pub fn parent_group(&self) -> Option<&Arc<FiniteGroup>> {
        match &self.backing {
            Backing::Members { parent, .. } | Backing::Cosets { parent, .. } => Some(parent),
            _ => None,
        }
    }

    /// For subgroup-backed groups: the parent index of a local element.
    /// For quotient-backed groups: the canonical coset representative.
    pub fn parent_of_local(&self, i: u16) -> Option<u16> {
        match &self.backing {
            Backing::Members { to_parent, .. } => Some(to_parent[i as usize]),
            Backing::Cosets { reps, .. } => Some(reps[i as usize]),
            _ => None,
        }
    }

    /// For subgroup-backed groups: the local index of a parent element, if a
    /// member. For quotient-backed groups: the coset of a parent element.
    pub fn local_of_parent(&self, p: u16) -> Option<u16> {
        match &self.backing {
            Backing::Members { from_parent, .. } => {
                let v = from_parent[p as usize];
                (v != u16::MAX).then_some(v)
            }
            Backing::Cosets { coset_of, .. } => Some(coset_of[p as usize]),
            _ => None,
        }
    }

    pub fn product_factors(&self) -> Option<&[Arc<FiniteGroup>]> {
        match &self.backing {
            Backing::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Component of a product-group element along factor `i`.
    pub fn component(&self, idx: u16, i: usize) -> u16 {
        match &self.backing {
            Backing::Product { factors, strides, comps } => match comps {
                Some(c) => c[i][idx as usize],
                None => ((idx as usize / strides[i]) % factors[i].order()) as u16,
            },
            _ => panic!("component() on a non-product group"),
        }
    }

    /// Index of the product-group element with the given components.
    pub fn encode(&self, components: &[u16]) -> u16 {
        match &self.backing {
            Backing::Product { strides, .. } => {
                debug_assert_eq!(components.len(), strides.len());
                components
                    .iter()
                    .zip(strides)
                    .map(|(&c, &s)| c as usize * s)
                    .sum::<usize>() as u16
            }
            _ => panic!("encode() on a non-product group"),
        }
    }

    pub fn perm(&self, idx: u16) -> Option<&Perm> {
        match &self.backing {
            Backing::Perms { perms, .. } => Some(&perms[idx as usize]),
            _ => None,
        }
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<u16> {
        match &self.backing {
            Backing::Perms { index, .. } => index.get(p).copied(),
            _ => None,
        }
    }

    pub fn elem_name(&self, idx: u16) -> String {
        match &self.backing {
            Backing::Perms { perms, .. } => perms[idx as usize].to_string(),
            Backing::Product { factors, .. } => {
                let parts: Vec<String> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.elem_name(self.component(idx, i)))
                    .collect();
                format!("({})", parts.join(", "))
            }
            Backing::Members { parent, to_parent, .. } => {
                parent.elem_name(to_parent[idx as usize])
            }
            Backing::Cosets { parent, reps, .. } => {
                format!("[{}]", parent.elem_name(reps[idx as usize]))
            }
            Backing::Keyed { factors, keys, .. } => {
                let parts: Vec<String> = factors
                    .iter()
                    .zip(&keys[idx as usize])
                    .map(|(f, &c)| f.elem_name(c))
                    .collect();
                format!("({})", parts.join(", "))
            }
        }
    }

    /// The component tuple of a keyed-tuple group element.
    pub fn key_of(&self, idx: u16) -> Option<&[u16]> {
        match &self.backing {
            Backing::Keyed { keys, .. } => Some(&keys[idx as usize]),
            _ => None,
        }
    }

    /// Index lookup by component tuple, for keyed-tuple groups.
    pub fn index_of_key(&self, key: &[u16]) -> Option<u16> {
        match &self.backing {
            Backing::Keyed { index, .. } => index.get(key).copied(),
            _ => None,
        }
    }

    /// Group-axiom audit: inverse table, identity neutrality, and
    /// associativity — exhaustive for orders up to 200, sampled on 1e5
    /// seeded random triples above.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for a in self.elements() {
            if self.mul(a, 0) != a || self.mul(0, a) != a {
                return Err(format!("identity not neutral at {a}"));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(format!("inverse wrong at {a}"));
            }
        }
        let check = |a: u16, b: u16, c: u16| -> bool {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if self.n <= 200 {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        if !check(a, b, c) {
                            return Err(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
            for _ in 0..100_000 {
                let a = rng.gen_range(0..self.n) as u16;
                let b = rng.gen_range(0..self.n) as u16;
                let c = rng.gen_range(0..self.n) as u16;
                if !check(a, b, c) {
                    return Err(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<u8> = (0..n as u8).collect();
    permute(&mut images, 0, &mut out);
    out
}

fn permute(images: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k == images.len() {
        out.push(Perm::from_images(images.clone()).unwrap());
        return;
    }
    for i in k..images.len() {
        images.swap(k, i);
        permute(images, k + 1, out);
        images.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_orders() {
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert!(FiniteGroup::symmetric(9).is_err());
        assert!(FiniteGroup::symmetric(0).is_err());
    }

    #[test]
    fn axioms_hold() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::alternating(4).unwrap(),
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::klein_four(),
        ] {
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn axioms_sampled_above_200() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let p = FiniteGroup::direct_product(&[s4, s3.clone(), s3]).unwrap();
        assert_eq!(p.order(), 864);
        p.check_axioms().unwrap();
    }

    #[test]
    fn product_components_roundtrip() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let p = FiniteGroup::direct_product(&[s3.clone(), z2.clone(), s3.clone()]).unwrap();
        assert_eq!(p.order(), 72);
        for idx in p.elements() {
            let comps = [p.component(idx, 0), p.component(idx, 1), p.component(idx, 2)];
            assert_eq!(p.encode(&comps), idx);
        }
        // componentwise multiplication
        let a = p.encode(&[1, 1, 0]);
        let b = p.encode(&[2, 1, 3]);
        let ab = p.mul(a, b);
        assert_eq!(p.component(ab, 0), s3.mul(1, 2));
        assert_eq!(p.component(ab, 1), z2.mul(1, 1));
        assert_eq!(p.component(ab, 2), s3.mul(0, 3));
    }

    #[test]
    fn element_orders_s4() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let mut by_order = [0usize; 5];
        for a in s4.elements() {
            by_order[s4.elem_order(a)] += 1;
        }
        // 1 identity, 9 of order 2, 8 of order 3, 6 of order 4
        assert_eq!(by_order[1..], [1, 9, 8, 6]);
    }

    #[test]
    fn fast_gens_generate() {
        for g in [
            FiniteGroup::symmetric(5).unwrap(),
            FiniteGroup::cyclic(9).unwrap(),
            FiniteGroup::klein_four(),
        ] {
            let gens = g.fast_gens();
            assert_eq!(g.closure_bits(gens).count(), g.order());
        }
        assert!(FiniteGroup::symmetric(1).unwrap().fast_gens().is_empty());
    }

    #[test]
    fn abelian_detection() {
        assert!(FiniteGroup::cyclic(8).unwrap().is_abelian());
        assert!(FiniteGroup::klein_four().is_abelian());
        assert!(!FiniteGroup::symmetric(3).unwrap().is_abelian());
    }

    #[test]
    fn s6_is_dense_and_correct() {
        let s6 = FiniteGroup::symmetric(6).unwrap();
        assert_eq!(s6.order(), 720);
        s6.check_axioms().unwrap();
    }
}
