//! The two-factor correspondence: subgroups of `G1 x G2` against tuples
//! `(P1, P2, N1, N2, phi)` where `N_i` is normal in `P_i <= G_i` and `phi`
//! is an isomorphism of the sections `P1/N1 -> P2/N2`.
//!
//! A tuple determines the subgroup `{(g1, g2) : phi(g1 N1) = g2 N2}`, of
//! order `|P1| * |N2|`; conversely a subgroup determines its tuple through
//! its projections and the fibers over the identity. Iterating all tuples
//! enumerates the full subgroup lattice of the product a second way, which
//! is the cross-check the census tests rely on.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, find_isomorphisms, quotient, FiniteGroup, Homomorphism, Subgroup,
};
use crate::product::DirectProduct;

/// A section `P/N` of a group, materialized as a quotient group with a
/// class lookup on the parent's element indices.
pub struct Section {
    pub p: Subgroup,
    pub n: Subgroup,
    pub group: Arc<FiniteGroup>,
    class_of: Vec<u16>,
}

impl Section {
    /// Requires `n <= p` and `n` normal in `p`.
    pub fn new(p: &Subgroup, n: &Subgroup) -> Result<Section> {
        if !n.is_subset_of(p) {
            return Err(Error::Precondition("N is not contained in P".into()));
        }
        let parent = p.parent().clone();
        let pg = p.as_group("P");
        let n_local = Subgroup::from_members(
            pg.clone(),
            n.iter().map(|x| pg.local_of_parent(x).unwrap()),
        );
        let q = quotient(&pg, &n_local)?;
        let mut class_of = vec![u16::MAX; parent.order()];
        for x in p.iter() {
            class_of[x as usize] = q.projection.apply(pg.local_of_parent(x).unwrap());
        }
        Ok(Section {
            p: p.clone(),
            n: n.clone(),
            group: q.group,
            class_of,
        })
    }

    /// Quotient class of a parent element, `None` outside `P`.
    #[inline]
    pub fn class_of(&self, x: u16) -> Option<u16> {
        let v = self.class_of[x as usize];
        (v != u16::MAX).then_some(v)
    }

    /// Members of `P` sorted into classes.
    fn members_by_class(&self) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new(); self.group.order()];
        for x in self.p.iter() {
            out[self.class_of[x as usize] as usize].push(x);
        }
        out
    }
}

/// The data classifying one subgroup of a two-factor product.
pub struct GoursatTuple {
    pub s1: Section,
    pub s2: Section,
    pub phi: Homomorphism,
}

/// `{(g1, g2) : g1 in P1, g2 in P2, phi(g1 N1) = g2 N2}`.
pub fn tuple_to_subgroup(dp: &DirectProduct, t: &GoursatTuple) -> Subgroup {
    assert_eq!(dp.arity(), 2);
    let by_class = t.s2.members_by_class();
    let mut bits = Bits::new(dp.order());
    for g1 in t.s1.p.iter() {
        let target = t.phi.apply(t.s1.class_of(g1).unwrap());
        for &g2 in &by_class[target as usize] {
            bits.insert(dp.encode(&[g1, g2]));
        }
    }
    let sub = Subgroup::from_bits(dp.group().clone(), bits);
    assert_eq!(
        sub.order(),
        t.s1.p.order() * t.s2.n.order(),
        "tuple subgroup must have order |P1| * |N2|"
    );
    debug_assert!(sub.is_valid_subgroup());
    sub
}

/// Recovers the tuple of a subgroup: `P_i` the projections, `N_1` the fiber
/// over the identity of `G_2` (and symmetrically), `phi` the induced map.
pub fn subgroup_to_tuple(dp: &DirectProduct, d: &Subgroup) -> GoursatTuple {
    assert_eq!(dp.arity(), 2);
    let p1 = dp.project(d, 0).unwrap();
    let p2 = dp.project(d, 1).unwrap();
    let n1 = Subgroup::from_members(
        dp.factor(0).clone(),
        d.iter().filter(|&x| dp.comp(x, 1) == 0).map(|x| dp.comp(x, 0)),
    );
    let n2 = Subgroup::from_members(
        dp.factor(1).clone(),
        d.iter().filter(|&x| dp.comp(x, 0) == 0).map(|x| dp.comp(x, 1)),
    );
    let s1 = Section::new(&p1, &n1).expect("N1 is normal in P1 by Goursat");
    let s2 = Section::new(&p2, &n2).expect("N2 is normal in P2 by Goursat");
    let mut map = vec![u16::MAX; s1.group.order()];
    for x in d.iter() {
        let q1 = s1.class_of(dp.comp(x, 0)).unwrap();
        let q2 = s2.class_of(dp.comp(x, 1)).unwrap();
        debug_assert!(
            map[q1 as usize] == u16::MAX || map[q1 as usize] == q2,
            "induced section map is not well-defined"
        );
        map[q1 as usize] = q2;
    }
    let phi = Homomorphism::new(s1.group.clone(), s2.group.clone(), map)
        .expect("induced section map must be a homomorphism");
    assert!(phi.is_bijective(), "induced section map must be bijective");
    GoursatTuple { s1, s2, phi }
}

/// One side's section cells: every `(P, N)` with `N` normal in `P`, over
/// the whole lattice of the factor.
fn section_cells(factor: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Section>> {
    let lattice = all_subgroups(factor, bound)?;
    let mut cells = Vec::new();
    for p in &lattice {
        for n in &lattice {
            if n.is_subset_of(p) && n.is_normal_in(p) {
                cells.push(Section::new(p, n)?);
            }
        }
    }
    Ok(cells)
}

/// Iterates every Goursat tuple of `G1 x G2` and emits the distinct
/// subgroups; `subdirect_only` restricts to `P_i = G_i`.
pub fn enumerate_subgroups_via_goursat(
    dp: &DirectProduct,
    bound: usize,
    subdirect_only: bool,
) -> Result<Vec<Subgroup>> {
    assert_eq!(dp.arity(), 2);
    let cells1: Vec<Section> = section_cells(dp.factor(0), bound)?
        .into_iter()
        .filter(|s| !subdirect_only || s.p.is_full())
        .collect();
    let cells2: Vec<Section> = section_cells(dp.factor(1), bound)?
        .into_iter()
        .filter(|s| !subdirect_only || s.p.is_full())
        .collect();

    let mut seen: HashMap<Bits, ()> = HashMap::new();
    let mut out = Vec::new();
    for s1 in &cells1 {
        for s2 in &cells2 {
            if s1.group.order() != s2.group.order() {
                continue;
            }
            for phi in find_isomorphisms(&s1.group, &s2.group, None) {
                let by_class = s2.members_by_class();
                let mut bits = Bits::new(dp.order());
                for g1 in s1.p.iter() {
                    let target = phi.apply(s1.class_of(g1).unwrap());
                    for &g2 in &by_class[target as usize] {
                        bits.insert(dp.encode(&[g1, g2]));
                    }
                }
                if seen.insert(bits.clone(), ()).is_none() {
                    out.push(Subgroup::from_bits(dp.group().clone(), bits));
                } else {
                    panic!(
                        "distinct Goursat tuples produced the same subgroup of {}",
                        dp.group().label()
                    );
                }
            }
        }
    }
    out.sort_by(Subgroup::canonical_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::normal_subgroups;
    use crate::perm::Perm;

    fn s(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::symmetric(n).unwrap()
    }

    fn idx(g: &Arc<FiniteGroup>, cycles: &str, degree: usize) -> u16 {
        g.index_of_perm(&Perm::parse_cycles(cycles, degree).unwrap())
            .unwrap()
    }

    fn diagonal_pair(dp: &DirectProduct) -> Subgroup {
        Subgroup::from_members(
            dp.group().clone(),
            dp.factor(0).elements().map(|g| dp.encode(&[g, g])),
        )
    }

    #[test]
    fn diagonal_tuple_roundtrip() {
        let dp = DirectProduct::pair(&s(3), &s(3)).unwrap();
        let d = diagonal_pair(&dp);
        let t = subgroup_to_tuple(&dp, &d);
        assert!(t.s1.n.is_trivial() && t.s2.n.is_trivial());
        assert!(t.s1.p.is_full());
        assert_eq!(tuple_to_subgroup(&dp, &t), d);
    }

    #[test]
    fn index_two_subdirect_product_of_s3_s3() {
        let s3 = s(3);
        let dp = DirectProduct::pair(&s3, &s3).unwrap();
        let a3 = Subgroup::generated(s3.clone(), &[idx(&s3, "(1 2 3)", 3)]);
        let full = Subgroup::full(s3.clone());
        let s1 = Section::new(&full, &a3).unwrap();
        let s2 = Section::new(&full, &a3).unwrap();
        let isos = find_isomorphisms(&s1.group, &s2.group, None);
        assert_eq!(isos.len(), 1); // unique isomorphism of Z2
        let t = GoursatTuple {
            s1,
            s2,
            phi: isos.into_iter().next().unwrap(),
        };
        let sub = tuple_to_subgroup(&dp, &t);
        assert_eq!(sub.order(), 18);
        // round trip recovers (S3, S3, A3, A3)
        let back = subgroup_to_tuple(&dp, &sub);
        assert_eq!(back.s1.n, a3);
        assert_eq!(back.s2.n, a3);
        assert_eq!(tuple_to_subgroup(&dp, &back), sub);
    }

    #[test]
    fn subproduct_tuple() {
        // A3 x S2 inside S3 x S2 is a subproduct: N_i = P_i, trivial phi.
        let s3 = s(3);
        let s2 = s(2);
        let dp = DirectProduct::pair(&s3, &s2).unwrap();
        let a3 = Subgroup::generated(s3.clone(), &[idx(&s3, "(1 2 3)", 3)]);
        let mut members = Vec::new();
        for a in a3.iter() {
            for b in s2.elements() {
                members.push(dp.encode(&[a, b]));
            }
        }
        let sub = Subgroup::from_members(dp.group().clone(), members);
        let t = subgroup_to_tuple(&dp, &sub);
        assert_eq!(t.s1.n, a3);
        assert_eq!(t.s1.p, a3);
        assert!(t.s2.p.is_full() && t.s2.n.is_full());
        assert_eq!(t.phi.domain().order(), 1);
        assert_eq!(tuple_to_subgroup(&dp, &t), sub);
    }

    #[test]
    fn census_s2_s2() {
        let dp = DirectProduct::pair(&s(2), &s(2)).unwrap();
        let subs = enumerate_subgroups_via_goursat(&dp, 100, false).unwrap();
        assert_eq!(subs.len(), 5); // 1, three Z2, V
        let lat = all_subgroups(dp.group(), 100).unwrap();
        assert_eq!(subs, lat);
    }

    #[test]
    fn census_s3_s3_matches_lattice_and_subdirect_count() {
        let dp = DirectProduct::pair(&s(3), &s(3)).unwrap();
        let subs = enumerate_subgroups_via_goursat(&dp, 100, false).unwrap();
        assert_eq!(subs.len(), 60);
        let lat = all_subgroups(dp.group(), 100).unwrap();
        assert_eq!(subs, lat);
        let subdirect = enumerate_subgroups_via_goursat(&dp, 100, true).unwrap();
        assert_eq!(subdirect.len(), 8); // 3! + 2
    }

    #[test]
    fn roundtrip_over_the_whole_s3_s2_lattice() {
        let dp = DirectProduct::pair(&s(3), &s(2)).unwrap();
        for sub in all_subgroups(dp.group(), 100).unwrap() {
            let t = subgroup_to_tuple(&dp, &sub);
            assert_eq!(tuple_to_subgroup(&dp, &t), sub);
        }
    }

    #[test]
    fn goursat_normal_subgroup_fibers() {
        // N1 recovered from the diagonal embedding of V in S4 x S4
        let s4 = s(4);
        let dp = DirectProduct::pair(&s4, &s4).unwrap();
        let nsubs = normal_subgroups(&s4, 100).unwrap();
        assert_eq!(nsubs.len(), 4);
        for n in &nsubs {
            // the subproduct N x N
            let mut members = Vec::new();
            for a in n.iter() {
                for b in n.iter() {
                    members.push(dp.encode(&[a, b]));
                }
            }
            let sub = Subgroup::from_members(dp.group().clone(), members);
            let t = subgroup_to_tuple(&dp, &sub);
            assert_eq!(&t.s1.n, n);
            assert_eq!(&t.s2.n, n);
        }
    }
}
