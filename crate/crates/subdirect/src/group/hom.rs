//! Homomorphisms as per-element index tables, and isomorphism search by
//! backtracking on generator images.

use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};

use super::finite_group::FiniteGroup;
use super::subgroup::Subgroup;

#[derive(Clone)]
pub struct Homomorphism {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    map: Vec<u16>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}
impl Eq for Homomorphism {}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Homomorphism({} -> {})",
            self.domain.label(),
            self.codomain.label()
        )
    }
}

impl Homomorphism {
    /// Builds and verifies a homomorphism. Multiplicativity is checked for
    /// every pair `(x, g)` with `g` in a generating chain of the domain,
    /// which by induction on word length covers all pairs; for domains of
    /// order at most 256 the full quadratic check runs as well.
    pub fn new(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        map: Vec<u16>,
    ) -> Result<Self> {
        if map.len() != domain.order() {
            return Err(Error::Precondition(format!(
                "map length {} != domain order {}",
                map.len(),
                domain.order()
            )));
        }
        if map[0] != 0 {
            return Err(Error::Precondition("map does not fix the identity".into()));
        }
        for &v in &map {
            if v as usize >= codomain.order() {
                return Err(Error::Precondition("map value out of codomain".into()));
            }
        }
        let h = Homomorphism {
            domain,
            codomain,
            map,
        };
        for x in h.domain.elements() {
            for &g in h.domain.fast_gens() {
                if h.map[h.domain.mul(x, g) as usize]
                    != h.codomain.mul(h.map[x as usize], h.map[g as usize])
                {
                    return Err(Error::Precondition(format!(
                        "not multiplicative at ({x}, {g})"
                    )));
                }
            }
        }
        if h.domain.order() <= 256 {
            for x in h.domain.elements() {
                for y in h.domain.elements() {
                    if h.map[h.domain.mul(x, y) as usize]
                        != h.codomain.mul(h.map[x as usize], h.map[y as usize])
                    {
                        return Err(Error::Precondition(format!(
                            "not multiplicative at ({x}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(h)
    }

    /// Internal constructor for maps already verified by the builder.
    pub(crate) fn new_unchecked(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        map: Vec<u16>,
    ) -> Self {
        debug_assert_eq!(map.len(), domain.order());
        debug_assert_eq!(map[0], 0);
        Homomorphism {
            domain,
            codomain,
            map,
        }
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: u16) -> u16 {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[u16] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Bits::new(self.codomain.order());
        for &v in &self.map {
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = Bits::new(self.codomain.order());
        for &v in &self.map {
            seen.insert(v);
        }
        seen.count() == self.codomain.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_members(
            self.domain.clone(),
            self.domain.elements().filter(|&x| self.map[x as usize] == 0),
        )
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_members(self.codomain.clone(), self.map.iter().copied())
    }

    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_bijective() {
            return Err(Error::Precondition("inverse of a non-bijection".into()));
        }
        let mut map = vec![0u16; self.codomain.order()];
        for x in self.domain.elements() {
            map[self.map[x as usize] as usize] = x;
        }
        Ok(Homomorphism::new_unchecked(
            self.codomain.clone(),
            self.domain.clone(),
            map,
        ))
    }

    /// `self` followed by `after`.
    pub fn then(&self, after: &Homomorphism) -> Homomorphism {
        debug_assert!(Arc::ptr_eq(&self.codomain, &after.domain));
        let map = self
            .map
            .iter()
            .map(|&v| after.map[v as usize])
            .collect();
        Homomorphism::new_unchecked(self.domain.clone(), after.codomain.clone(), map)
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Homomorphism {
        Homomorphism::new_unchecked(g.clone(), g.clone(), g.elements().collect())
    }
}

/// A small generating set found greedily: each step adjoins the element
/// whose closure with the current set is largest (smallest index on ties).
pub fn min_generating_set(g: &Arc<FiniteGroup>) -> Vec<u16> {
    let n = g.order();
    let mut gens: Vec<u16> = Vec::new();
    let mut cur = g.closure_bits(&gens);
    while cur.count() < n {
        let mut best: Option<(usize, u16)> = None;
        for x in g.elements() {
            if cur.contains(x) {
                continue;
            }
            gens.push(x);
            let size = g.closure_bits(&gens).count();
            gens.pop();
            if best.map_or(true, |(bs, _)| size > bs) {
                best = Some((size, x));
            }
        }
        let (_, x) = best.unwrap();
        gens.push(x);
        cur = g.closure_bits(&gens);
    }
    gens
}

/// All bijective homomorphisms `g -> h`, by backtracking on the images of a
/// greedy minimal generating set of `g`, pruned by element order and partial
/// multiplicativity. `limit` caps the number returned (existence mode:
/// `Some(1)`).
pub fn find_isomorphisms(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    limit: Option<usize>,
) -> Vec<Homomorphism> {
    let n = g.order();
    if n != h.order() {
        return Vec::new();
    }
    if n == 1 {
        return vec![Homomorphism::new_unchecked(g.clone(), h.clone(), vec![0])];
    }
    if order_profile(g) != order_profile(h) {
        return Vec::new();
    }

    let gens = min_generating_set(g);
    let k = gens.len();

    // Per level i: the BFS trace of <gens[0..=i]>, entries (x, y, j) with
    // x = y * gens[j], in an order where y precedes x.
    let mut traces: Vec<Vec<(u16, u16, usize)>> = Vec::with_capacity(k);
    let mut level_members: Vec<Vec<u16>> = Vec::with_capacity(k);
    for i in 0..k {
        let lvl_gens = &gens[..=i];
        let mut bits = Bits::new(n);
        bits.insert(0);
        let mut order: Vec<u16> = vec![0];
        let mut trace = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let y = order[head];
            head += 1;
            for (j, &gj) in lvl_gens.iter().enumerate() {
                let x = g.mul(y, gj);
                if !bits.contains(x) {
                    bits.insert(x);
                    order.push(x);
                    trace.push((x, y, j));
                }
            }
        }
        traces.push(trace);
        level_members.push(order);
    }
    debug_assert_eq!(level_members[k - 1].len(), n);

    // Candidate images per generator, filtered by element order.
    let candidates: Vec<Vec<u16>> = gens
        .iter()
        .map(|&gi| {
            let ord = g.elem_order(gi);
            h.elements().filter(|&x| h.elem_order(x) == ord).collect()
        })
        .collect();

    let mut found: Vec<Homomorphism> = Vec::new();
    let mut images = vec![0u16; k];
    let mut phi = vec![u16::MAX; n];
    phi[0] = 0;

    // Checks whether the partial map on <gens[0..=lvl]> extends consistently;
    // fills `phi` for the new level and reports success.
    fn try_level(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[u16],
        images: &[u16],
        lvl: usize,
        trace: &[(u16, u16, usize)],
        members: &[u16],
        phi: &mut [u16],
    ) -> bool {
        for &(x, y, j) in trace {
            phi[x as usize] = h.mul(phi[y as usize], images[j]);
        }
        // injectivity on the partial subgroup
        let mut seen = Bits::new(h.order());
        for &x in members {
            let v = phi[x as usize];
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        // multiplicativity against every assigned generator
        for &x in members {
            for (j, &gj) in gens[..=lvl].iter().enumerate() {
                if phi[g.mul(x, gj) as usize] != h.mul(phi[x as usize], images[j]) {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(
        g: &Arc<FiniteGroup>,
        h: &Arc<FiniteGroup>,
        gens: &[u16],
        candidates: &[Vec<u16>],
        traces: &[Vec<(u16, u16, usize)>],
        level_members: &[Vec<u16>],
        lvl: usize,
        images: &mut [u16],
        phi: &mut [u16],
        found: &mut Vec<Homomorphism>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| found.len() >= l) {
            return;
        }
        for &cand in &candidates[lvl] {
            images[lvl] = cand;
            if try_level(
                g,
                h,
                gens,
                images,
                lvl,
                &traces[lvl],
                &level_members[lvl],
                phi,
            ) {
                if lvl + 1 == gens.len() {
                    found.push(Homomorphism::new_unchecked(
                        g.clone(),
                        h.clone(),
                        phi.to_vec(),
                    ));
                    if limit.is_some_and(|l| found.len() >= l) {
                        return;
                    }
                } else {
                    dfs(
                        g,
                        h,
                        gens,
                        candidates,
                        traces,
                        level_members,
                        lvl + 1,
                        images,
                        phi,
                        found,
                        limit,
                    );
                    if limit.is_some_and(|l| found.len() >= l) {
                        return;
                    }
                }
            }
        }
    }

    dfs(
        g,
        h,
        &gens,
        &candidates,
        &traces,
        &level_members,
        0,
        &mut images,
        &mut phi,
        &mut found,
        limit,
    );
    found
}

pub fn are_isomorphic(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> bool {
    !find_isomorphisms(g, h, Some(1)).is_empty()
}

fn order_profile(g: &Arc<FiniteGroup>) -> Vec<(u16, usize)> {
    let mut counts: std::collections::BTreeMap<u16, usize> = Default::default();
    for &o in g.orders() {
        *counts.entry(o).or_default() += 1;
    }
    counts.into_iter().collect()
}
