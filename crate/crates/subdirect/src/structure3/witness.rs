//! The structure theorem for 2-factor injective subdirect products.
//!
//! Given such a `delta`, the normal subgroup `H = <H1,H2,H3>` is isomorphic
//! to a quotient of an explicitly constrained group built from the abstract
//! groups `H_i` (realized as `pi_{i+1}(H_i)`) and the common central
//! Abelian subgroup `M` (the identified `M_i`). In raw slot coordinates
//! `(s0..s5)` over the factor list `[H2, H3, H3, H1, H1, H2]`, the ambient
//! group is
//!
//! ```text
//! W = { (s0..s5) : s2 s1^-1 in M, s4 s3^-1 in M, s0 s5^-1 in M,
//!       and the three M-values multiply to 1 under the canonical
//!       identifications }
//! ```
//!
//! and `H` is `W` modulo the kernel `{(t0(m), m^-1, t1(m'), m'^-1,
//! t2(m''), m''^-1)}` of representation shifts, where `t_i` are the plain
//! coordinate-transfer isomorphisms along the `H_j`. The witness
//! materializes every piece and verifies the explicit map
//! `(g1,g2,g3) |-> (t(c_1), b_1^-1, t(c_2), b_2^-1, t(c_3), b_3^-1)` over
//! factorizations `g_i = c_i b_i^-1` as an isomorphism `H -> W/kernel`.
//!
//! The slot pairs `(s0,s1), (s2,s3), (s4,s5)` carry the theorem's pairs
//! `(h_2, h_3'^-1), (h_3, h_1'^-1), (h_1, h_2'^-1)`; the `M`-membership of
//! `s2 s1^-1` is the theorem's mixed two-factor equation, and the product
//! condition is its Abelian equation system read in `M`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, Homomorphism, Subgroup};
use crate::product::{nxt, nxt2, SubdirectAnalysis};

pub struct StructureWitness {
    /// Abstract `H_i`, materialized from `pi_{i+1}(H_i)`.
    pub h_abs: [Arc<FiniteGroup>; 3],
    /// The copy of `M` inside each abstract `H_i` (`M_{i+1}` in its parent).
    pub m_in_h: [Subgroup; 3],
    pub m_order: usize,
    /// The constrained raw-slot group `W`.
    pub ambient: Arc<FiniteGroup>,
    /// The representation-shift kernel inside `W`.
    pub kernel: Subgroup,
    /// `W / kernel`.
    pub quotient: Arc<FiniteGroup>,
    /// `H` materialized as a group.
    pub h_group: Arc<FiniteGroup>,
    /// The explicit isomorphism `H -> W/kernel`.
    pub iso: Homomorphism,
}

/// A factorization `g = c * b^-1` with `c in C_i`, `b in B_i`.
fn rep_of(a: &SubdirectAnalysis, i: usize, g: u16) -> Option<(u16, u16)> {
    let gi = a.factor(i);
    for c in a.c[i].iter() {
        let b = gi.mul(gi.inv(g), c);
        if a.b[i].contains(b) {
            return Some((c, b));
        }
    }
    None
}

/// Plain coordinate transfer `tau_i: C_i -> pi_{i+2}(H_{i+1})` along
/// `H_{i+1}`: the `(i+2)`-coordinate of the element whose `i`-coordinate is
/// `x`. (The paper's canonical map is this followed by inversion.)
fn tau(a: &SubdirectAnalysis, i: usize, x: u16) -> u16 {
    let to = nxt2(i);
    a.factor(to).inv(a.apply_phi(nxt(i), i, to, x))
}

/// Checks the two element equations of the structure theorem for every
/// element of `H`: the mixed terms `b_{i+1}^-1 phi^i_{i-1,i+1}(c_{i-1})`
/// land in `M_{i+1}`, and the six-term Abelian relation multiplies out to
/// the identity in `G_3`.
pub fn check_h_equations(a: &SubdirectAnalysis) -> Result<()> {
    if !a.two_factor_injective {
        return Err(Error::NotTwoFactorInjective(0));
    }
    for x in a.h_join.iter() {
        let g: [u16; 3] = std::array::from_fn(|i| a.product().component(x, i));
        let mut c = [0u16; 3];
        let mut b = [0u16; 3];
        for i in 0..3 {
            let (ci, bi) = rep_of(a, i, g[i]).ok_or_else(|| {
                Error::Precondition(format!("element of H has no C_i B_i factorization at {i}"))
            })?;
            c[i] = ci;
            b[i] = bi;
        }
        for i in 0..3 {
            // b_{i+1}^-1 * phi^i_{i-1,i+1}(c_{i-1}) in M_{i+1}
            let t = nxt(i);
            let f = a.factor(t);
            let val = f.mul(f.inv(b[t]), a.apply_phi(i, nxt2(i), t, c[nxt2(i)]));
            if !a.m[t].contains(val) {
                return Err(Error::Precondition(format!(
                    "two-factor equation fails at element {x}, i = {i}"
                )));
            }
        }
        // c_3 phi^1_{2,3}(b_2)^-1 phi^2_{1,3}(c_1) b_3^-1 phi^1_{2,3}(c_2 phi^3_{1,2}(b_1^-1)) = 1
        let g0 = a.factor(0);
        let g1 = a.factor(1);
        let g2 = a.factor(2);
        let inner = g1.mul(c[1], a.apply_phi(2, 0, 1, g0.inv(b[0])));
        let mut acc = c[2];
        acc = g2.mul(acc, g2.inv(a.apply_phi(0, 1, 2, b[1])));
        acc = g2.mul(acc, a.apply_phi(1, 0, 2, c[0]));
        acc = g2.mul(acc, g2.inv(b[2]));
        acc = g2.mul(acc, a.apply_phi(0, 1, 2, inner));
        if acc != 0 {
            return Err(Error::Precondition(format!(
                "Abelian equation system fails at element {x}"
            )));
        }
    }
    Ok(())
}

/// Builds the full witness. Violations of the theorem's own claims on a
/// valid 2-factor injective input are internal bugs and panic.
pub fn build_structure_witness(a: &SubdirectAnalysis) -> Result<StructureWitness> {
    if !a.two_factor_injective {
        return Err(Error::NotTwoFactorInjective(0));
    }

    // Abstract H_i := pi_{i+1}(H_i) = B_{i+1}, as a group of its own.
    let h_abs: [Arc<FiniteGroup>; 3] =
        std::array::from_fn(|i| a.b[nxt(i)].as_group(&format!("H{}", i + 1)));

    // M sits inside h_abs[i] as M_{i+1} of the parent factor.
    let m_in_h: [Subgroup; 3] = std::array::from_fn(|i| {
        Subgroup::from_members(
            h_abs[i].clone(),
            a.m[nxt(i)].iter().map(|x| h_abs[i].local_of_parent(x).unwrap()),
        )
    });
    let m_order = a.m[0].order();
    for i in 0..3 {
        for m in m_in_h[i].iter() {
            for y in h_abs[i].elements() {
                assert_eq!(
                    h_abs[i].mul(m, y),
                    h_abs[i].mul(y, m),
                    "M must be central in the abstract H_{}",
                    i + 1
                );
            }
        }
    }
    // Compatibility of the identifications: tau_0 tau_1 tau_2 inverts M_2.
    for m in a.m[2].iter() {
        let back = tau(a, 0, tau(a, 1, tau(a, 2, m)));
        assert_eq!(
            back,
            a.factor(2).inv(m),
            "the cyclic transfer composite must invert M"
        );
    }

    // W over raw slots [h2, h3'^-1, h3, h1'^-1, h1, h2'^-1]; slot parents
    // are coordinates [2, 0, 0, 1, 1, 2]; free parameters (w, u, v, ma, mb).
    let slot_factors: Vec<Arc<FiniteGroup>> = vec![
        h_abs[1].clone(),
        h_abs[2].clone(),
        h_abs[2].clone(),
        h_abs[0].clone(),
        h_abs[0].clone(),
        h_abs[1].clone(),
    ];
    let w_order =
        h_abs[0].order() * h_abs[1].order() * h_abs[2].order() * m_order * m_order;
    if w_order > crate::group::MAX_ORDER {
        return Err(Error::BoundExceeded {
            order: w_order,
            bound: crate::group::MAX_ORDER,
        });
    }
    let g0 = a.factor(0);
    let g1 = a.factor(1);
    let g2 = a.factor(2);
    let m0: Vec<u16> = a.m[0].iter().collect();
    let m1: Vec<u16> = a.m[1].iter().collect();
    let m2: Vec<u16> = a.m[2].iter().collect();
    let mut keys: Vec<Vec<u16>> = Vec::with_capacity(w_order);
    for w in h_abs[2].elements() {
        let w_par = h_abs[2].parent_of_local(w).unwrap();
        for u in h_abs[0].elements() {
            let u_par = h_abs[0].parent_of_local(u).unwrap();
            for v in h_abs[1].elements() {
                let v_par = h_abs[1].parent_of_local(v).unwrap();
                for &ma in &m0 {
                    for &mb in &m1 {
                        // triple condition: ma * tau_1(mb)^-1 * tau_0^-1(mc)^-1 = 1
                        // read in M_1 of the first factor, so
                        // mc = tau_0(ma * tau_1(mb)^-1)
                        let r = g0.mul(ma, g0.inv(tau(a, 1, mb)));
                        let mc = tau(a, 0, r);
                        debug_assert!(a.m[2].contains(mc));
                        let key = vec![
                            h_abs[1].local_of_parent(g2.mul(mc, v_par)).unwrap(),
                            w,
                            h_abs[2].local_of_parent(g0.mul(ma, w_par)).unwrap(),
                            u,
                            h_abs[0].local_of_parent(g1.mul(mb, u_par)).unwrap(),
                            v,
                        ];
                        keys.push(key);
                    }
                }
            }
        }
    }
    let ambient = FiniteGroup::from_keyed_tuples("W".to_string(), slot_factors, keys);
    assert_eq!(
        ambient.order(),
        w_order,
        "the parametrization of W must be faithful"
    );

    // kernel of representation shifts
    let mut kernel_members = Vec::with_capacity(m_order * m_order * m_order);
    for &p in &m0 {
        for &q in &m1 {
            for &r in &m2 {
                let key = vec![
                    h_abs[1].local_of_parent(tau(a, 0, p)).unwrap(),
                    h_abs[2].local_of_parent(g0.inv(p)).unwrap(),
                    h_abs[2].local_of_parent(tau(a, 1, q)).unwrap(),
                    h_abs[0].local_of_parent(g1.inv(q)).unwrap(),
                    h_abs[0].local_of_parent(tau(a, 2, r)).unwrap(),
                    h_abs[1].local_of_parent(g2.inv(r)).unwrap(),
                ];
                kernel_members.push(
                    ambient
                        .index_of_key(&key)
                        .expect("kernel tuple must satisfy the W constraints"),
                );
            }
        }
    }
    let kernel = Subgroup::from_members(ambient.clone(), kernel_members);
    assert_eq!(kernel.order(), m_order * m_order * m_order);
    assert!(kernel.is_normal(), "representation-shift kernel must be normal in W");
    let q = quotient(&ambient, &kernel).expect("kernel is normal");
    assert_eq!(
        q.group.order(),
        a.h_join.order(),
        "|W/kernel| must equal |H|"
    );

    // Explicit map H -> W/kernel from the proof.
    let h_group = a.h_join.as_group("H");
    let mut map = vec![0u16; h_group.order()];
    for loc in h_group.elements() {
        let x = h_group.parent_of_local(loc).unwrap();
        let mut slots = vec![0u16; 6];
        for i in 0..3 {
            let g = a.product().component(x, i);
            let (c, b) = rep_of(a, i, g)
                .expect("every element of H factors as C_i * B_i^-1");
            // pair_i = (c_i transferred to coordinate i+2, b_i^-1 at coordinate i)
            slots[2 * i] = h_abs[nxt(i)].local_of_parent(tau(a, i, c)).unwrap();
            slots[2 * i + 1] = h_abs[nxt2(i)]
                .local_of_parent(a.factor(i).inv(b))
                .unwrap();
        }
        let w_idx = ambient
            .index_of_key(&slots)
            .expect("image tuple must satisfy the W constraints");
        map[loc as usize] = q.projection.apply(w_idx);
    }
    let iso = Homomorphism::new(h_group.clone(), q.group.clone(), map)
        .expect("the structure-theorem map must be a homomorphism");
    assert!(iso.is_bijective(), "the structure-theorem map must be bijective");

    Ok(StructureWitness {
        h_abs,
        m_in_h,
        m_order,
        ambient,
        kernel,
        quotient: q.group,
        h_group,
        iso,
    })
}
