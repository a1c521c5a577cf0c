//! Direct products of two or three groups, the projection/injectivity
//! vocabulary for subgroups of them, and the subgroup systems derived from a
//! subdirect product.
//!
//! For a subgroup `delta` of `G1 x G2 x G3` with all coordinate projections
//! surjective (a subdirect product), the analysis record collects
//!
//! - `H_i`: the elements of `delta` trivial in coordinate `i`, and
//!   `H = <H1,H2,H3>`;
//! - `B_i = pi_i(H_{i+2})`, `C_i = pi_i(H_{i+1})`, `E_i = pi_i(H)`,
//!   `M_i = B_i ∩ C_i`, `N_i = pi_i(ker psi_i)` (indices mod 3);
//! - when `delta` is 2-factor injective, the canonical isomorphisms
//!   `phi^i_{j,k}: pi_j(H_i) -> pi_k(H_i)` pinned down by membership of
//!   `(1 in slot i, g_j in slot j, phi(g_j)^{-1} in slot k)` in `delta`.
//!
//! Everything downstream (the structure theorem, both correspondence
//! theorems, the counting lemmas) consumes these derived subgroups, so the
//! analysis computes them eagerly.

use std::sync::{Arc, OnceLock};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, Homomorphism, Quotient, Subgroup};

/// `i + 1` mod 3 over coordinate indices `{0,1,2}`.
#[inline]
pub fn nxt(i: usize) -> usize {
    (i + 1) % 3
}

/// `i + 2` mod 3.
#[inline]
pub fn nxt2(i: usize) -> usize {
    (i + 2) % 3
}

/// A direct product of 2 or 3 groups whose elements are index tuples.
pub struct DirectProduct {
    factors: Vec<Arc<FiniteGroup>>,
    group: Arc<FiniteGroup>,
    /// For 3-factor products: the 2-factor products obtained by dropping
    /// coordinate `i`, built on first use.
    dropped: [OnceLock<Arc<FiniteGroup>>; 3],
}

impl DirectProduct {
    pub fn new(factors: &[Arc<FiniteGroup>]) -> Result<Self> {
        if factors.len() != 2 && factors.len() != 3 {
            return Err(Error::Precondition(format!(
                "direct products of {} factors are out of scope",
                factors.len()
            )));
        }
        let group = FiniteGroup::direct_product(factors)?;
        Ok(DirectProduct {
            factors: factors.to_vec(),
            group,
            dropped: Default::default(),
        })
    }

    pub fn pair(g1: &Arc<FiniteGroup>, g2: &Arc<FiniteGroup>) -> Result<Self> {
        Self::new(&[g1.clone(), g2.clone()])
    }

    pub fn triple(
        g1: &Arc<FiniteGroup>,
        g2: &Arc<FiniteGroup>,
        g3: &Arc<FiniteGroup>,
    ) -> Result<Self> {
        Self::new(&[g1.clone(), g2.clone(), g3.clone()])
    }

    /// The cube `G x G x G`.
    pub fn cube(g: &Arc<FiniteGroup>) -> Result<Self> {
        Self::triple(g, g, g)
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn factor(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn comp(&self, x: u16, i: usize) -> u16 {
        self.group.component(x, i)
    }

    pub fn encode(&self, comps: &[u16]) -> u16 {
        self.group.encode(comps)
    }

    /// The product of the two factors other than `i` (3-factor only),
    /// ordered by ascending coordinate.
    pub fn dropped_product(&self, i: usize) -> Result<&Arc<FiniteGroup>> {
        if self.arity() != 3 || i >= 3 {
            return Err(Error::FactorIndex(i));
        }
        Ok(self.dropped[i].get_or_init(|| {
            let (j, k) = (if i == 0 { 1 } else { 0 }, if i == 2 { 1 } else { 2 });
            FiniteGroup::direct_product(&[self.factors[j].clone(), self.factors[k].clone()])
                .expect("dropped product no larger than the full product")
        }))
    }

    /// Image subgroup under the coordinate projection `pi_i`.
    pub fn project(&self, delta: &Subgroup, i: usize) -> Result<Subgroup> {
        if i >= self.arity() {
            return Err(Error::FactorIndex(i));
        }
        debug_assert!(Arc::ptr_eq(delta.parent(), &self.group));
        let mut bits = Bits::new(self.factors[i].order());
        for x in delta.iter() {
            bits.insert(self.comp(x, i));
        }
        Ok(Subgroup::from_bits(self.factors[i].clone(), bits))
    }

    /// Image subgroup under `psi_i`, the map dropping coordinate `i`.
    pub fn coproject(&self, delta: &Subgroup, i: usize) -> Result<Subgroup> {
        let target = self.dropped_product(i)?.clone();
        let (j, k) = (if i == 0 { 1 } else { 0 }, if i == 2 { 1 } else { 2 });
        let mut bits = Bits::new(target.order());
        for x in delta.iter() {
            bits.insert(target.encode(&[self.comp(x, j), self.comp(x, k)]));
        }
        Ok(Subgroup::from_bits(target, bits))
    }

    /// Every coordinate projection surjective.
    pub fn is_subdirect(&self, delta: &Subgroup) -> bool {
        (0..self.arity()).all(|i| {
            let mut seen = Bits::new(self.factors[i].order());
            for x in delta.iter() {
                seen.insert(self.comp(x, i));
            }
            seen.count() == self.factors[i].order()
        })
    }

    /// Every `psi_i` injective: any two components of an element determine
    /// the third, equivalently `ker psi_i` is trivial for all `i`.
    pub fn is_two_factor_injective(&self, delta: &Subgroup) -> bool {
        debug_assert_eq!(self.arity(), 3);
        (0..3).all(|i| self.ker_psi_members(delta, i).len() == 1)
    }

    /// Every `psi_i` surjective.
    pub fn is_two_factor_surjective(&self, delta: &Subgroup) -> bool {
        debug_assert_eq!(self.arity(), 3);
        (0..3).all(|i| {
            let (j, k) = (if i == 0 { 1 } else { 0 }, if i == 2 { 1 } else { 2 });
            let target = self.factors[j].order() * self.factors[k].order();
            let mut seen = Bits::new(target);
            for x in delta.iter() {
                seen.insert(
                    (self.comp(x, j) as usize
                        + self.comp(x, k) as usize * self.factors[j].order())
                        as u16,
                );
            }
            seen.count() == target
        })
    }

    /// Elements of `delta` trivial everywhere except coordinate `i`.
    fn ker_psi_members(&self, delta: &Subgroup, i: usize) -> Vec<u16> {
        delta
            .iter()
            .filter(|&x| (0..self.arity()).all(|j| j == i || self.comp(x, j) == 0))
            .collect()
    }

    /// Elements of `delta` with coordinate `i` trivial (the subgroup `H_i`).
    fn h_members(&self, delta: &Subgroup, i: usize) -> Vec<u16> {
        delta.iter().filter(|&x| self.comp(x, i) == 0).collect()
    }

    /// Full eager analysis of a subdirect product of a 3-factor product.
    pub fn analyze(&self, delta: &Subgroup) -> Result<SubdirectAnalysis> {
        assert_eq!(self.arity(), 3, "analyze requires a 3-factor product");
        for i in 0..3 {
            let p = self.project(delta, i)?;
            if !p.is_full() {
                return Err(Error::NotSubdirect(i));
            }
        }

        let h: [Subgroup; 3] = std::array::from_fn(|i| {
            Subgroup::from_members(self.group.clone(), self.h_members(delta, i))
        });
        let mut join_gens: Vec<u16> = Vec::new();
        for hi in &h {
            join_gens.extend(hi.small_gens());
        }
        let h_join = Subgroup::generated(self.group.clone(), &join_gens);

        let proj =
            |sub: &Subgroup, i: usize| -> Subgroup { self.project(sub, i).expect("in range") };
        let b: [Subgroup; 3] = std::array::from_fn(|i| proj(&h[nxt2(i)], i));
        let c: [Subgroup; 3] = std::array::from_fn(|i| proj(&h[nxt(i)], i));
        let e: [Subgroup; 3] = std::array::from_fn(|i| proj(&h_join, i));
        let m: [Subgroup; 3] = std::array::from_fn(|i| b[i].intersection(&c[i]));
        let n: [Subgroup; 3] = std::array::from_fn(|i| {
            Subgroup::from_members(
                self.factors[i].clone(),
                self.ker_psi_members(delta, i)
                    .into_iter()
                    .map(|x| self.comp(x, i)),
            )
        });

        let two_factor_injective = self.is_two_factor_injective(delta);
        let two_factor_surjective = self.is_two_factor_surjective(delta);

        let phi = if two_factor_injective {
            let pairs: [PhiPair; 3] = std::array::from_fn(|i| {
                let (j, k) = (if i == 0 { 1 } else { 0 }, if i == 2 { 1 } else { 2 });
                let gj = &self.factors[j];
                let gk = &self.factors[k];
                let mut fwd = vec![u16::MAX; gj.order()];
                let mut bwd = vec![u16::MAX; gk.order()];
                for x in h[i].iter() {
                    let a = self.comp(x, j);
                    let bb = self.comp(x, k);
                    // (1, a, phi(a)^-1) in delta pins phi(a) = b^-1
                    fwd[a as usize] = gk.inv(bb);
                    bwd[gk.inv(bb) as usize] = a;
                }
                PhiPair { fwd, bwd }
            });
            Some(pairs)
        } else {
            None
        };

        let analysis = SubdirectAnalysis {
            product: self.group.clone(),
            factors: [
                self.factors[0].clone(),
                self.factors[1].clone(),
                self.factors[2].clone(),
            ],
            delta: delta.clone(),
            h,
            h_join,
            b,
            c,
            e,
            m,
            n,
            two_factor_injective,
            two_factor_surjective,
            phi,
        };

        if two_factor_injective {
            // Proven invariants; failure here is an internal bug, not input error.
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert!(
                            analysis.h[i].centralizes(&analysis.h[j]),
                            "[H_{i}, H_{j}] != 1 on a 2-factor injective subdirect product"
                        );
                    }
                }
                assert!(
                    analysis.m[i].is_abelian(),
                    "M_{i} is not Abelian on a 2-factor injective subdirect product"
                );
            }
        }
        Ok(analysis)
    }

    /// Reduction to a 2-factor injective subdirect product of the quotient
    /// product, with the round trip (preimage reconstruction) asserted.
    pub fn reduce_to_two_factor_injective(&self, delta: &Subgroup) -> Result<Reduction> {
        let analysis = self.analyze(delta)?;
        let quotients: Vec<Quotient> = (0..3)
            .map(|i| quotient(&self.factors[i], &analysis.n[i]))
            .collect::<Result<Vec<_>>>()?;
        let qp = DirectProduct::new(&[
            quotients[0].group.clone(),
            quotients[1].group.clone(),
            quotients[2].group.clone(),
        ])?;
        let mut bits = Bits::new(qp.order());
        for x in delta.iter() {
            let comps: Vec<u16> = (0..3)
                .map(|i| quotients[i].projection.apply(self.comp(x, i)))
                .collect();
            bits.insert(qp.encode(&comps));
        }
        let delta_prime = Subgroup::from_bits(qp.group().clone(), bits);

        assert!(
            qp.is_subdirect(&delta_prime) && qp.is_two_factor_injective(&delta_prime),
            "reduced image is not a 2-factor injective subdirect product"
        );
        // Round trip: the preimage of delta' is exactly delta.
        let mut preimage = Bits::new(self.order());
        for x in self.group.elements() {
            let comps: Vec<u16> = (0..3)
                .map(|i| quotients[i].projection.apply(self.comp(x, i)))
                .collect();
            if delta_prime.contains(qp.encode(&comps)) {
                preimage.insert(x);
            }
        }
        assert!(
            &preimage == delta.bits(),
            "preimage of the reduced product does not reconstruct delta"
        );

        Ok(Reduction {
            n: analysis.n.clone(),
            quotients: quotients.try_into().map_err(|_| ()).unwrap(),
            quotient_product: qp,
            delta_prime,
        })
    }
}

struct PhiPair {
    fwd: Vec<u16>,
    bwd: Vec<u16>,
}

/// Eagerly computed subgroup systems of a subdirect product (see module
/// docs for the definitions).
pub struct SubdirectAnalysis {
    product: Arc<FiniteGroup>,
    factors: [Arc<FiniteGroup>; 3],
    pub delta: Subgroup,
    pub h: [Subgroup; 3],
    pub h_join: Subgroup,
    pub b: [Subgroup; 3],
    pub c: [Subgroup; 3],
    pub e: [Subgroup; 3],
    pub m: [Subgroup; 3],
    pub n: [Subgroup; 3],
    pub two_factor_injective: bool,
    pub two_factor_surjective: bool,
    phi: Option<[PhiPair; 3]>,
}

impl SubdirectAnalysis {
    pub fn product(&self) -> &Arc<FiniteGroup> {
        &self.product
    }

    pub fn factor(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.factors[i]
    }

    /// Whether `M_i = 1` (for some, equivalently every, `i`).
    pub fn is_degenerate(&self) -> bool {
        self.m.iter().all(Subgroup::is_trivial)
    }

    /// `Delta = H`, the domain of the non-diagonal correspondence.
    pub fn is_all_of_h(&self) -> bool {
        self.h_join.order() == self.delta.order()
    }

    /// Applies the canonical isomorphism `phi^i_{j,k}` to a `G_j`-element in
    /// its domain `pi_j(H_i)`. Panics outside the domain or when the
    /// analysis is not 2-factor injective.
    pub fn apply_phi(&self, i: usize, j: usize, k: usize, x: u16) -> u16 {
        debug_assert!(i != j && j != k && i != k && i < 3 && j < 3 && k < 3);
        let pairs = self
            .phi
            .as_ref()
            .expect("canonical isomorphisms exist only for 2-factor injective products");
        let v = if j < k {
            pairs[i].fwd[x as usize]
        } else {
            pairs[i].bwd[x as usize]
        };
        assert!(v != u16::MAX, "element {x} outside the domain of phi^{i}_({j},{k})");
        v
    }

    /// The canonical isomorphism `phi^i_{j,k}` as a verified homomorphism
    /// between the materialized projection groups `pi_j(H_i) -> pi_k(H_i)`.
    pub fn canonical_isomorphism(&self, i: usize, j: usize, k: usize) -> Result<Homomorphism> {
        if !self.two_factor_injective {
            return Err(Error::NotTwoFactorInjective(0));
        }
        if i == j || j == k || i == k || i >= 3 || j >= 3 || k >= 3 {
            return Err(Error::FactorIndex(k));
        }
        let dom_sub = self.proj_of_h(i, j);
        let cod_sub = self.proj_of_h(i, k);
        let dom = dom_sub.as_group(&format!("pi_{}(H_{})", j + 1, i + 1));
        let cod = cod_sub.as_group(&format!("pi_{}(H_{})", k + 1, i + 1));
        let map: Vec<u16> = dom
            .elements()
            .map(|loc| {
                let parent = dom.parent_of_local(loc).unwrap();
                let img = self.apply_phi(i, j, k, parent);
                cod.local_of_parent(img).expect("phi lands in pi_k(H_i)")
            })
            .collect();
        let hom = Homomorphism::new(dom, cod, map)?;
        assert!(hom.is_bijective(), "canonical map must be an isomorphism");
        // The lemma also promises phi maps M_j onto M_k.
        for x in self.m[j].iter() {
            assert!(
                self.m[k].contains(self.apply_phi(i, j, k, x)),
                "phi^{i}_({j},{k}) does not map M into M"
            );
        }
        Ok(hom)
    }

    /// `pi_j(H_i)` for `j != i`: `C_j` when `i = j+1`, `B_j` when `i = j+2`.
    pub fn proj_of_h(&self, i: usize, j: usize) -> &Subgroup {
        debug_assert!(i != j);
        if i == nxt(j) {
            &self.c[j]
        } else {
            &self.b[j]
        }
    }
}

/// Result of quotienting away the kernels `N_i`, pairing a subdirect product
/// with its 2-factor injective image.
pub struct Reduction {
    pub n: [Subgroup; 3],
    pub quotients: [Quotient; 3],
    pub quotient_product: DirectProduct,
    pub delta_prime: Subgroup,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        FiniteGroup::symmetric(3).unwrap()
    }

    fn z2() -> Arc<FiniteGroup> {
        FiniteGroup::cyclic(2).unwrap()
    }

    /// The diagonal of G^3 as a subgroup of the cube.
    fn diagonal(dp: &DirectProduct) -> Subgroup {
        let members = dp
            .factor(0)
            .elements()
            .map(|g| dp.encode(&[g, g, g]));
        Subgroup::from_members(dp.group().clone(), members)
    }

    /// {(a,b,c) : abc = 1} over an Abelian group.
    fn abc(dp: &DirectProduct) -> Subgroup {
        let g = dp.factor(0);
        let mut members = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                let c = g.inv(g.mul(a, b));
                members.push(dp.encode(&[a, b, c]));
            }
        }
        Subgroup::from_members(dp.group().clone(), members)
    }

    #[test]
    fn diagonal_predicates() {
        let dp = DirectProduct::cube(&s3()).unwrap();
        let d = diagonal(&dp);
        assert_eq!(d.order(), 6);
        assert!(d.is_valid_subgroup());
        assert!(dp.is_subdirect(&d));
        assert!(dp.is_two_factor_injective(&d));
        assert!(!dp.is_two_factor_surjective(&d));
        assert_eq!(dp.project(&d, 0).unwrap().order(), 6);
        assert_eq!(dp.coproject(&d, 0).unwrap().order(), 6);
    }

    #[test]
    fn abc_over_z2_predicates_and_analysis() {
        let dp = DirectProduct::cube(&z2()).unwrap();
        let d = abc(&dp);
        assert_eq!(d.order(), 4);
        assert!(dp.is_subdirect(&d));
        assert!(dp.is_two_factor_injective(&d));
        assert!(dp.is_two_factor_surjective(&d));
        let a = dp.analyze(&d).unwrap();
        for i in 0..3 {
            assert_eq!(a.b[i].order(), 2, "B_{i} should be Z2");
            assert_eq!(a.c[i].order(), 2);
            assert_eq!(a.m[i].order(), 2);
            assert_eq!(a.h[i].order(), 2);
        }
        assert!(a.is_all_of_h());
        assert!(!a.is_degenerate());
        // phi^1_{2,3} on Z2 is the identity map
        assert_eq!(a.apply_phi(0, 1, 2, 1), 1);
        let hom = a.canonical_isomorphism(0, 1, 2).unwrap();
        assert_eq!(hom.domain().order(), 2);
    }

    #[test]
    fn full_product_s2_cubed() {
        let dp = DirectProduct::cube(&z2()).unwrap();
        let full = Subgroup::full(dp.group().clone());
        assert!(dp.is_subdirect(&full));
        assert!(!dp.is_two_factor_injective(&full));
        let a = dp.analyze(&full).unwrap();
        for i in 0..3 {
            assert_eq!(a.n[i].order(), 2);
        }
        let red = dp.reduce_to_two_factor_injective(&full).unwrap();
        assert_eq!(red.quotient_product.order(), 1);
        assert_eq!(red.delta_prime.order(), 1);
    }

    #[test]
    fn diagonal_analysis_trivial_parts() {
        let dp = DirectProduct::cube(&s3()).unwrap();
        let d = diagonal(&dp);
        let a = dp.analyze(&d).unwrap();
        assert_eq!(a.h_join.order(), 1);
        for i in 0..3 {
            assert!(a.b[i].is_trivial());
            assert!(a.c[i].is_trivial());
            assert!(a.m[i].is_trivial());
        }
        assert!(a.is_degenerate());
    }

    #[test]
    fn reduce_already_injective_is_identity_like() {
        let dp = DirectProduct::cube(&s3()).unwrap();
        let d = diagonal(&dp);
        let red = dp.reduce_to_two_factor_injective(&d).unwrap();
        for i in 0..3 {
            assert!(red.n[i].is_trivial());
        }
        assert_eq!(red.delta_prime.order(), d.order());
    }

    #[test]
    fn canonical_iso_composition_on_abc_z3() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let dp = DirectProduct::cube(&z3).unwrap();
        let d = abc(&dp);
        assert_eq!(d.order(), 9);
        let a = dp.analyze(&d).unwrap();
        // phi^3_{1,2} then phi^1_{2,3} equals phi^2_{1,3} on M_1, and
        // phi^i_{j,k} inverts phi^i_{k,j}.
        for x in a.m[0].iter() {
            let step = a.apply_phi(2, 0, 1, x);
            assert_eq!(a.apply_phi(0, 1, 2, step), a.apply_phi(1, 0, 2, x));
            assert_eq!(a.apply_phi(2, 1, 0, a.apply_phi(2, 0, 1, x)), x);
        }
    }

    #[test]
    fn analyze_rejects_non_subdirect() {
        let dp = DirectProduct::cube(&s3()).unwrap();
        let t = Subgroup::trivial(dp.group().clone());
        assert!(matches!(dp.analyze(&t), Err(Error::NotSubdirect(_))));
    }

    #[test]
    fn example2_coprojection_is_surjective() {
        let dp = DirectProduct::cube(&z2()).unwrap();
        let d = abc(&dp);
        let co = dp.coproject(&d, 2).unwrap();
        assert_eq!(co.order(), 4); // all of Z2 x Z2
    }
}
