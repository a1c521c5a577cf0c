//! The correspondence for 2-factor injective subdirect products with
//! `Delta = H`: tuples `(B_1..B_3, C_1..C_3, phi_1..phi_3)` of commuting
//! normal subgroup pairs with `B_i C_i = G_i` and isomorphisms
//! `phi_i: B_i -> C_{i+1}` matching up the intersections `M_i = B_i ∩ C_i`.
//!
//! `phi_i` is stored as the plain coordinate transfer along `H_{i+2}` (the
//! element with `i`-coordinate `x` has `(i+1)`-coordinate `phi_i(x)`); this
//! is a genuine isomorphism even on non-Abelian projections, whereas the
//! inverse-slotted convention of the canonical maps is only an
//! anti-isomorphism there. Under this convention the closing condition on
//! `M` reads `phi_3(phi_2(phi_1(m))) = m^-1`.
//!
//! Since `[H_i, H_j] = 1`, every element of `H` factors as
//! `h_1 h_2 h_3` with `h_i in H_i`, which gives the group of a tuple
//! directly:
//!
//! ```text
//! Delta(T) = { (phi_3(y) z, x phi_1(z)... } over the three transfer maps —
//! concretely { (phi_3(y)·z, x·phi_1(z), phi_2(x)·y) :
//!              x in B_2, y in B_3, z in B_1 }   (1-based indices)
//! ```
//!
//! `to_group` builds that set and cross-checks it against an independent
//! factorization-based membership test, which is representation-independent
//! because the search absorbs the `M`-ambiguity of factorizations.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{find_isomorphisms, normal_subgroups, Homomorphism, Subgroup};
use crate::product::{nxt, nxt2, DirectProduct, SubdirectAnalysis};

/// Tuple data for the `Delta = H` correspondence. The isomorphisms are
/// stored on parent element indices: `phi[i]` maps members of `B_i <= G_i`
/// to members of `C_{i+1} <= G_{i+1}` (`u16::MAX` outside).
#[derive(Clone, PartialEq, Eq)]
pub struct NonDiagonalTuple {
    pub b: [Subgroup; 3],
    pub c: [Subgroup; 3],
    pub phi: [Vec<u16>; 3],
}

impl NonDiagonalTuple {
    pub fn m(&self, i: usize) -> Subgroup {
        self.b[i].intersection(&self.c[i])
    }

    /// Verifies the six tuple conditions, reporting the first violated one.
    pub fn check(&self, _dp: &DirectProduct) -> Result<()> {
        for i in 0..3 {
            if !self.b[i].is_normal() || !self.c[i].is_normal() {
                return Err(Error::TupleCondition {
                    condition: 1,
                    detail: format!("B_{0} or C_{0} not normal", i + 1),
                });
            }
        }
        for i in 0..3 {
            if !self.b[i].setwise_product(&self.c[i]).is_full() {
                return Err(Error::TupleCondition {
                    condition: 2,
                    detail: format!("B_{0}C_{0} != G_{0}", i + 1),
                });
            }
        }
        for i in 0..3 {
            self.iso(i).map_err(|e| Error::TupleCondition {
                condition: 3,
                detail: format!("phi_{} is not an isomorphism B -> C': {e}", i + 1),
            })?;
        }
        for i in 0..3 {
            if !self.b[i].centralizes(&self.c[i]) {
                return Err(Error::TupleCondition {
                    condition: 4,
                    detail: format!("[B_{0}, C_{0}] != 1", i + 1),
                });
            }
        }
        for i in 0..3 {
            let m_img: Vec<u16> = self.m(i).iter().map(|x| self.phi[i][x as usize]).collect();
            let target = self.m(nxt(i));
            if m_img.len() != target.order() || !m_img.iter().all(|&y| target.contains(y)) {
                return Err(Error::TupleCondition {
                    condition: 5,
                    detail: format!("phi_{}(M_{}) != M_{}", i + 1, i + 1, nxt(i) + 1),
                });
            }
        }
        let g0 = &self.b[0].parent().clone();
        for x in self.m(0).iter() {
            let y = self.phi[2][self.phi[1][self.phi[0][x as usize] as usize] as usize];
            if y != g0.inv(x) {
                return Err(Error::TupleCondition {
                    condition: 6,
                    detail: "phi_3 . phi_2 . phi_1 must invert M_1 \
                             (the plain-transfer form of the closing identity)"
                        .into(),
                });
            }
        }
        Ok(())
    }

    /// `phi_i` as a verified homomorphism between materialized groups.
    pub fn iso(&self, i: usize) -> Result<Homomorphism> {
        let dom = self.b[i].as_group(&format!("B{}", i + 1));
        let cod = self.c[nxt(i)].as_group(&format!("C{}", nxt(i) + 1));
        if dom.order() != cod.order() {
            return Err(Error::Precondition("size mismatch".into()));
        }
        let map = dom
            .elements()
            .map(|loc| {
                let p = dom.parent_of_local(loc).unwrap();
                let img = self.phi[i][p as usize];
                cod.local_of_parent(img)
                    .ok_or_else(|| Error::Precondition("phi image outside C".into()))
            })
            .collect::<Result<Vec<u16>>>()?;
        let hom = Homomorphism::new(dom, cod, map)?;
        if !hom.is_bijective() {
            return Err(Error::Precondition("phi not bijective".into()));
        }
        Ok(hom)
    }

    /// The subdirect product of the tuple, built from the `H_1 H_2 H_3`
    /// parametrization and cross-checked elementwise against the
    /// factorization-based membership test.
    pub fn to_group(&self, dp: &DirectProduct) -> Result<Subgroup> {
        self.check(dp)?;
        let g = [dp.factor(0), dp.factor(1), dp.factor(2)];
        let mut bits = Bits::new(dp.order());
        // elements (phi_3(y) z, x phi_1(z), phi_2(x) y) over
        // x in B_2, y in B_3, z in B_1 (1-based; arrays are 0-based)
        for x in self.b[1].iter() {
            for y in self.b[2].iter() {
                for z in self.b[0].iter() {
                    let e0 = g[0].mul(self.phi[2][y as usize], z);
                    let e1 = g[1].mul(x, self.phi[0][z as usize]);
                    let e2 = g[2].mul(self.phi[1][x as usize], y);
                    bits.insert(dp.encode(&[e0, e1, e2]));
                }
            }
        }
        let delta = Subgroup::from_bits(dp.group().clone(), bits);

        // independent membership route
        let inv_phi0 = {
            let mut inv = vec![u16::MAX; g[1].order()];
            for z in self.b[0].iter() {
                inv[self.phi[0][z as usize] as usize] = z;
            }
            inv
        };
        let m1 = self.m(1);
        for cand in dp.group().elements() {
            let e = [dp.comp(cand, 0), dp.comp(cand, 1), dp.comp(cand, 2)];
            // some factorization e1 = c b^-1 anchors the search
            let mut base = None;
            for c in self.c[1].iter() {
                let bb = g[1].mul(g[1].inv(e[1]), c);
                if self.b[1].contains(bb) {
                    base = Some(bb);
                    break;
                }
            }
            let mut member = false;
            if let Some(b1) = base {
                for mu in m1.iter() {
                    let x = g[1].mul(g[1].inv(mu), g[1].inv(b1));
                    let zc = inv_phi0[g[1].mul(g[1].inv(x), e[1]) as usize];
                    if zc == u16::MAX {
                        continue;
                    }
                    let y = g[2].mul(g[2].inv(self.phi[1][x as usize]), e[2]);
                    if !self.b[2].contains(y) {
                        continue;
                    }
                    if g[0].mul(self.phi[2][y as usize], zc) == e[0] {
                        member = true;
                        break;
                    }
                }
            }
            assert_eq!(
                member,
                delta.contains(cand),
                "factorization-based membership must agree with the parametrization"
            );
        }

        debug_assert!(delta.is_valid_subgroup());
        assert!(
            dp.is_subdirect(&delta) && dp.is_two_factor_injective(&delta),
            "tuple group must be a 2-factor injective subdirect product"
        );
        let analysis = dp.analyze(&delta)?;
        assert!(analysis.is_all_of_h(), "tuple group must satisfy Delta = H");
        Ok(delta)
    }

    /// Reads the tuple off a 2-factor injective subdirect product with
    /// `Delta = H`.
    pub fn from_analysis(a: &SubdirectAnalysis) -> Result<NonDiagonalTuple> {
        if !a.two_factor_injective {
            return Err(Error::NotTwoFactorInjective(0));
        }
        if !a.is_all_of_h() {
            return Err(Error::Precondition(
                "the non-diagonal correspondence needs Delta = H".into(),
            ));
        }
        let phi: [Vec<u16>; 3] = std::array::from_fn(|i| {
            // plain transfer along H_{i+2}, from coordinate i to i+1
            let mut map = vec![u16::MAX; a.factor(i).order()];
            let t = nxt(i);
            for x in a.b[i].iter() {
                map[x as usize] = a.factor(t).inv(a.apply_phi(nxt2(i), i, t, x));
            }
            map
        });
        Ok(NonDiagonalTuple {
            b: a.b.clone(),
            c: a.c.clone(),
            phi,
        })
    }
}

/// Every valid tuple over the factor groups of `dp`, enumerated from the
/// normal-subgroup lattices and all isomorphisms between candidates.
pub fn enumerate_tuples(dp: &DirectProduct, bound: usize) -> Result<Vec<NonDiagonalTuple>> {
    let normals: Vec<Vec<Subgroup>> = (0..3)
        .map(|i| normal_subgroups(dp.factor(i), bound))
        .collect::<Result<_>>()?;
    // candidate (B_i, C_i) pairs per factor: conditions 1, 2, 4
    let pairs: Vec<Vec<(usize, usize)>> = (0..3)
        .map(|i| {
            let mut v = Vec::new();
            for (bi, b) in normals[i].iter().enumerate() {
                for (ci, c) in normals[i].iter().enumerate() {
                    if b.setwise_product(c).is_full() && b.centralizes(c) {
                        v.push((bi, ci));
                    }
                }
            }
            v
        })
        .collect();

    let mut out = Vec::new();
    for &(b0, c0) in &pairs[0] {
        for &(b1, c1) in &pairs[1] {
            if normals[0][b0].order() != normals[1][c1].order() {
                continue;
            }
            for &(b2, c2) in &pairs[2] {
                if normals[1][b1].order() != normals[2][c2].order()
                    || normals[2][b2].order() != normals[0][c0].order()
                {
                    continue;
                }
                let b = [
                    normals[0][b0].clone(),
                    normals[1][b1].clone(),
                    normals[2][b2].clone(),
                ];
                let c = [
                    normals[0][c0].clone(),
                    normals[1][c1].clone(),
                    normals[2][c2].clone(),
                ];
                // all isomorphism triples B_i -> C_{i+1}
                let isos: Vec<Vec<Vec<u16>>> = (0..3)
                    .map(|i| {
                        let dom = b[i].as_group("B");
                        let cod = c[nxt(i)].as_group("C");
                        find_isomorphisms(&dom, &cod, None)
                            .into_iter()
                            .map(|h| {
                                let mut map = vec![u16::MAX; dp.factor(i).order()];
                                for loc in dom.elements() {
                                    map[dom.parent_of_local(loc).unwrap() as usize] =
                                        cod.parent_of_local(h.apply(loc)).unwrap();
                                }
                                map
                            })
                            .collect()
                    })
                    .collect();
                for p0 in &isos[0] {
                    for p1 in &isos[1] {
                        for p2 in &isos[2] {
                            let t = NonDiagonalTuple {
                                b: b.clone(),
                                c: c.clone(),
                                phi: [p0.clone(), p1.clone(), p2.clone()],
                            };
                            if t.check(dp).is_ok() {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::structure3::examples::{build_abc_group, build_interleaved};
    use std::sync::Arc;

    fn z(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn abc_z2_from_unique_full_tuple() {
        // Over S2^3 the only tuple has B_i = C_i = G_i and trivial phis;
        // it produces exactly the abc group.
        let dp = DirectProduct::cube(&z(2)).unwrap();
        let tuples = enumerate_tuples(&dp, 100).unwrap();
        let abc = build_abc_group(&dp).unwrap();
        let groups: Vec<Subgroup> = tuples
            .iter()
            .map(|t| t.to_group(&dp).unwrap())
            .collect();
        assert!(groups.contains(&abc));
        assert_eq!(groups.len(), 1);
    }

    #[test]
    fn roundtrip_on_abc_z3() {
        let dp = DirectProduct::cube(&z(3)).unwrap();
        let abc = build_abc_group(&dp).unwrap();
        let a = dp.analyze(&abc).unwrap();
        let t = NonDiagonalTuple::from_analysis(&a).unwrap();
        t.check(&dp).unwrap();
        assert_eq!(t.to_group(&dp).unwrap(), abc);
    }

    #[test]
    fn interleaved_z2_matches_factor_tuple() {
        // Example-4 data: B, C the evident factors, identity-shaped phis.
        let z2 = z(2);
        let (dp, d) = build_interleaved(&z2, &z2, &z2).unwrap();
        let a = dp.analyze(&d).unwrap();
        assert!(a.is_all_of_h());
        let t = NonDiagonalTuple::from_analysis(&a).unwrap();
        t.check(&dp).unwrap();
        assert_eq!(t.to_group(&dp).unwrap(), d);
        // B_i ∩ C_i = 1 here (also a degenerate product)
        for i in 0..3 {
            assert!(t.m(i).is_trivial());
            assert_eq!(t.b[i].order(), 2);
            assert_eq!(t.c[i].order(), 2);
        }
    }

    #[test]
    fn interleaved_s3_roundtrip_nonabelian_factors() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let (dp, d) = build_interleaved(&s3, &s3, &s3).unwrap();
        let a = dp.analyze(&d).unwrap();
        assert!(a.is_all_of_h());
        let t = NonDiagonalTuple::from_analysis(&a).unwrap();
        t.check(&dp).unwrap();
        assert_eq!(t.to_group(&dp).unwrap(), d);
    }

    #[test]
    fn trivial_tuple_gives_trivial_group() {
        let one = z(1);
        let dp = DirectProduct::cube(&one).unwrap();
        let tuples = enumerate_tuples(&dp, 10).unwrap();
        assert_eq!(tuples.len(), 1);
        assert_eq!(tuples[0].to_group(&dp).unwrap().order(), 1);
    }

    #[test]
    fn enumeration_matches_census_on_z4() {
        let dp = DirectProduct::cube(&z(4)).unwrap();
        let tuples = enumerate_tuples(&dp, 100).unwrap();
        let mut groups: Vec<Subgroup> = tuples
            .iter()
            .map(|t| t.to_group(&dp).unwrap())
            .collect();
        groups.sort_by(Subgroup::canonical_cmp);
        groups.dedup();
        assert_eq!(
            groups.len(),
            tuples.len(),
            "distinct tuples must give distinct groups"
        );
        // oracle side: all 2fi subdirect subgroups with Delta = H
        let lat = crate::group::all_subgroups(dp.group(), 100).unwrap();
        let mut expected = Vec::new();
        for s in lat {
            if dp.is_subdirect(&s) && dp.is_two_factor_injective(&s) {
                let a = dp.analyze(&s).unwrap();
                if a.is_all_of_h() {
                    expected.push(s);
                }
            }
        }
        expected.sort_by(Subgroup::canonical_cmp);
        assert_eq!(groups, expected);
        // round trips both ways
        for t in &tuples {
            let g = t.to_group(&dp).unwrap();
            let a = dp.analyze(&g).unwrap();
            let t2 = NonDiagonalTuple::from_analysis(&a).unwrap();
            assert!(t2 == *t, "group -> tuple must invert tuple -> group");
        }
    }

    #[test]
    fn tuple_condition_failures_are_numbered() {
        let dp = DirectProduct::cube(&z(2)).unwrap();
        let full = Subgroup::full(dp.factor(0).clone());
        let trivial = Subgroup::trivial(dp.factor(0).clone());
        // B_i C_i != G_i
        let t = NonDiagonalTuple {
            b: [trivial.clone(), trivial.clone(), trivial.clone()],
            c: [trivial.clone(), trivial.clone(), trivial.clone()],
            phi: [vec![0, u16::MAX], vec![0, u16::MAX], vec![0, u16::MAX]],
        };
        assert!(matches!(
            t.check(&dp),
            Err(Error::TupleCondition { condition: 2, .. })
        ));
        // size mismatch in phi domain
        let t = NonDiagonalTuple {
            b: [full.clone(), trivial.clone(), full.clone()],
            c: [full.clone(), full.clone(), full.clone()],
            phi: [vec![0, 1], vec![0, u16::MAX], vec![0, 1]],
        };
        assert!(matches!(
            t.check(&dp),
            Err(Error::TupleCondition { condition: 3, .. })
        ));
    }
}
