//! The correspondence for degenerate 2-factor injective subdirect products
//! (`M_i = B_i ∩ C_i = 1`): tuples of normal pairs `B_i, C_i` with trivial
//! intersection together with isomorphisms `phi_i: G_i/C_i -> G_{i+1}/B_{i+1}`
//! sending `B_iC_i` to `C_{i+1}B_{i+1}` whose cyclic composite fixes every
//! coset of `B_1C_1`. The group of a tuple is
//! `{(g_1,g_2,g_3) : phi_i(g_i C_i) = g_{i+1} B_{i+1}}`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{
    find_isomorphisms, normal_subgroups, quotient, Homomorphism, Quotient, Subgroup,
};
use crate::product::{nxt, DirectProduct, SubdirectAnalysis};

/// Tuple data for the degenerate correspondence. `phi[i]` maps classes of
/// the quotient `G_i/C_i` to classes of `G_{i+1}/B_{i+1}`.
pub struct DegenerateTuple {
    pub b: [Subgroup; 3],
    pub c: [Subgroup; 3],
    pub qc: [Quotient; 3],
    pub qb: [Quotient; 3],
    pub phi: [Vec<u16>; 3],
}

impl PartialEq for DegenerateTuple {
    fn eq(&self, other: &Self) -> bool {
        // Quotients use canonical minimal representatives, so the class maps
        // are directly comparable once the subgroups agree.
        self.b == other.b && self.c == other.c && self.phi == other.phi
    }
}
impl Eq for DegenerateTuple {}

impl DegenerateTuple {
    pub fn new(
        dp: &DirectProduct,
        b: [Subgroup; 3],
        c: [Subgroup; 3],
        phi: [Vec<u16>; 3],
    ) -> Result<DegenerateTuple> {
        let qc: [Quotient; 3] = make_quotients(dp, &c)?;
        let qb: [Quotient; 3] = make_quotients(dp, &b)?;
        let t = DegenerateTuple { b, c, qc, qb, phi };
        t.check(dp)?;
        Ok(t)
    }

    /// Verifies the six tuple conditions, reporting the first violated one.
    pub fn check(&self, dp: &DirectProduct) -> Result<()> {
        for i in 0..3 {
            if !self.b[i].is_normal() || !self.c[i].is_normal() {
                return Err(Error::TupleCondition {
                    condition: 1,
                    detail: format!("B_{0} or C_{0} not normal", i + 1),
                });
            }
        }
        for i in 0..3 {
            if self.b[i].intersection(&self.c[i]).order() != 1 {
                return Err(Error::TupleCondition {
                    condition: 2,
                    detail: format!("B_{0} ∩ C_{0} != 1", i + 1),
                });
            }
        }
        for i in 0..3 {
            if !self.b[i].centralizes(&self.c[i]) {
                return Err(Error::TupleCondition {
                    condition: 3,
                    detail: format!("[B_{0}, C_{0}] != 1", i + 1),
                });
            }
        }
        for i in 0..3 {
            let dom = &self.qc[i].group;
            let cod = &self.qb[nxt(i)].group;
            if dom.order() != cod.order() || self.phi[i].len() != dom.order() {
                return Err(Error::TupleCondition {
                    condition: 4,
                    detail: format!("phi_{} sizes do not match", i + 1),
                });
            }
            let hom = Homomorphism::new(dom.clone(), cod.clone(), self.phi[i].clone())
                .map_err(|e| Error::TupleCondition {
                    condition: 4,
                    detail: format!("phi_{} is not a homomorphism: {e}", i + 1),
                })?;
            if !hom.is_bijective() {
                return Err(Error::TupleCondition {
                    condition: 4,
                    detail: format!("phi_{} is not bijective", i + 1),
                });
            }
        }
        for i in 0..3 {
            // phi_i(B_i C_i) = C_{i+1} B_{i+1} (as subgroups of the quotients)
            let bc = self.b[i].setwise_product(&self.c[i]);
            let img: std::collections::BTreeSet<u16> = bc
                .iter()
                .map(|x| self.phi[i][self.qc[i].projection.apply(x) as usize])
                .collect();
            let t = nxt(i);
            let cb = self.c[t].setwise_product(&self.b[t]);
            let want: std::collections::BTreeSet<u16> = cb
                .iter()
                .map(|x| self.qb[t].projection.apply(x))
                .collect();
            if img != want {
                return Err(Error::TupleCondition {
                    condition: 5,
                    detail: format!("phi_{}(B C) != C' B'", i + 1),
                });
            }
        }
        // phi_3(phi_2(phi_1(g B_1 C_1))) = g B_1 C_1 for all g in G_1
        let bc0 = self.b[0].setwise_product(&self.c[0]);
        for g in dp.factor(0).elements() {
            let mut rep = g;
            for i in 0..3 {
                let class = self.phi[i][self.qc[i].projection.apply(rep) as usize];
                rep = self.qb[nxt(i)]
                    .group
                    .parent_of_local(class)
                    .expect("quotient classes carry representatives");
            }
            let f = dp.factor(0);
            if !bc0.contains(f.mul(f.inv(g), rep)) {
                return Err(Error::TupleCondition {
                    condition: 6,
                    detail: "the cyclic composite does not fix the B_1C_1 cosets".into(),
                });
            }
        }
        Ok(())
    }

    /// `{(g_1,g_2,g_3) : phi_i(g_i C_i) = g_{i+1} B_{i+1}}`.
    pub fn to_group(&self, dp: &DirectProduct) -> Result<Subgroup> {
        let mut bits = Bits::new(dp.order());
        for x in dp.group().elements() {
            let member = (0..3).all(|i| {
                let gi = dp.comp(x, i);
                let gt = dp.comp(x, nxt(i));
                self.phi[i][self.qc[i].projection.apply(gi) as usize]
                    == self.qb[nxt(i)].projection.apply(gt)
            });
            if member {
                bits.insert(x);
            }
        }
        let delta = Subgroup::from_bits(dp.group().clone(), bits);
        debug_assert!(delta.is_valid_subgroup());
        let analysis = dp.analyze(&delta)?;
        assert!(
            analysis.two_factor_injective && analysis.is_degenerate(),
            "tuple group must be a degenerate 2-factor injective subdirect product"
        );
        Ok(delta)
    }

    /// Reads the tuple off a degenerate 2-factor injective subdirect
    /// product: `phi_i(g_i C_i) := g_{i+1} B_{i+1}` over elements of delta,
    /// with well-definedness asserted.
    pub fn from_analysis(dp: &DirectProduct, a: &SubdirectAnalysis) -> Result<DegenerateTuple> {
        if !a.two_factor_injective {
            return Err(Error::NotTwoFactorInjective(0));
        }
        if !a.is_degenerate() {
            return Err(Error::Precondition(
                "the degenerate correspondence needs M_i = 1".into(),
            ));
        }
        let qc = make_quotients(dp, &a.c)?;
        let qb = make_quotients(dp, &a.b)?;
        let mut phi: [Vec<u16>; 3] =
            std::array::from_fn(|i| vec![u16::MAX; qc[i].group.order()]);
        for x in a.delta.iter() {
            for i in 0..3 {
                let from = qc[i].projection.apply(dp.comp(x, i));
                let to = qb[nxt(i)].projection.apply(dp.comp(x, nxt(i)));
                let slot = &mut phi[i][from as usize];
                assert!(
                    *slot == u16::MAX || *slot == to,
                    "induced coset map must be well-defined"
                );
                *slot = to;
            }
        }
        let t = DegenerateTuple {
            b: a.b.clone(),
            c: a.c.clone(),
            qc,
            qb,
            phi,
        };
        t.check(dp)?;
        Ok(t)
    }
}

fn make_quotients(dp: &DirectProduct, subs: &[Subgroup; 3]) -> Result<[Quotient; 3]> {
    let v: Vec<Quotient> = (0..3)
        .map(|i| quotient(dp.factor(i), &subs[i]))
        .collect::<Result<_>>()?;
    Ok(v.try_into().map_err(|_| ()).unwrap())
}

/// Every valid degenerate tuple over the factors of `dp`.
pub fn enumerate_tuples(dp: &DirectProduct, bound: usize) -> Result<Vec<DegenerateTuple>> {
    let normals: Vec<Vec<Subgroup>> = (0..3)
        .map(|i| normal_subgroups(dp.factor(i), bound))
        .collect::<Result<_>>()?;
    let pairs: Vec<Vec<(usize, usize)>> = (0..3)
        .map(|i| {
            let mut v = Vec::new();
            for (bi, b) in normals[i].iter().enumerate() {
                for (ci, c) in normals[i].iter().enumerate() {
                    if b.intersection(c).order() == 1 && b.centralizes(c) {
                        v.push((bi, ci));
                    }
                }
            }
            v
        })
        .collect();

    let mut out: Vec<DegenerateTuple> = Vec::new();
    for &(b0, c0) in &pairs[0] {
        for &(b1, c1) in &pairs[1] {
            let q0 = dp.factor(0).order() / normals[0][c0].order();
            if q0 != dp.factor(1).order() / normals[1][b1].order() {
                continue;
            }
            for &(b2, c2) in &pairs[2] {
                let q1 = dp.factor(1).order() / normals[1][c1].order();
                let q2 = dp.factor(2).order() / normals[2][c2].order();
                if q1 != dp.factor(2).order() / normals[2][b2].order()
                    || q2 != dp.factor(0).order() / normals[0][b0].order()
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
                let qc = make_quotients(dp, &c)?;
                let qb = make_quotients(dp, &b)?;
                let iso_maps: Vec<Vec<Vec<u16>>> = (0..3)
                    .map(|i| {
                        find_isomorphisms(&qc[i].group, &qb[nxt(i)].group, None)
                            .into_iter()
                            .map(|h| h.map().to_vec())
                            .collect()
                    })
                    .collect();
                for p0 in &iso_maps[0] {
                    for p1 in &iso_maps[1] {
                        for p2 in &iso_maps[2] {
                            let t = DegenerateTuple {
                                b: b.clone(),
                                c: c.clone(),
                                qc: qc.clone(),
                                qb: qb.clone(),
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

/// The graph-type degenerate tuple `B_i = C_i = 1` built from two full
/// isomorphisms (`phi_3` is forced by condition 6).
pub fn graph_tuple(
    dp: &DirectProduct,
    phi1: &Homomorphism,
    phi2: &Homomorphism,
) -> Result<DegenerateTuple> {
    // With trivial B and C the quotient classes are the elements themselves
    // in index order, so homomorphism maps transfer directly, and condition 6
    // forces phi_3 = phi_1^-1 . phi_2^-1.
    let phi3: Vec<u16> = {
        let inv1 = phi1.inverse()?;
        let inv2 = phi2.inverse()?;
        dp.factor(2)
            .elements()
            .map(|x| inv1.apply(inv2.apply(x)))
            .collect()
    };
    DegenerateTuple::new(
        dp,
        std::array::from_fn(|i| Subgroup::trivial(dp.factor(i).clone())),
        std::array::from_fn(|i| Subgroup::trivial(dp.factor(i).clone())),
        [phi1.map().to_vec(), phi2.map().to_vec(), phi3],
    )
}
