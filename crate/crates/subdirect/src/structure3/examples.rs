//! The example constructions of subdirect products of three factors:
//! diagonals, the Abelian `abc = 1` group, its semidirect extension, the
//! interleaved product of three groups, and lifts through covers.

use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Homomorphism, Subgroup};
use crate::product::DirectProduct;

fn require_cube(dp: &DirectProduct) -> Result<()> {
    if dp.arity() != 3
        || !Arc::ptr_eq(dp.factor(0), dp.factor(1))
        || !Arc::ptr_eq(dp.factor(0), dp.factor(2))
    {
        return Err(Error::Precondition(
            "construction requires a cube G x G x G over one group instance".into(),
        ));
    }
    Ok(())
}

/// `{(g, g, g)}` inside `G^3`.
pub fn build_diagonal(dp: &DirectProduct) -> Result<Subgroup> {
    require_cube(dp)?;
    Ok(Subgroup::from_members(
        dp.group().clone(),
        dp.factor(0).elements().map(|g| dp.encode(&[g, g, g])),
    ))
}

/// `{(a, b, c) : abc = 1}` inside `A^3` for Abelian `A`; order `|A|^2`,
/// 2-factor surjective and 2-factor injective.
pub fn build_abc_group(dp: &DirectProduct) -> Result<Subgroup> {
    require_cube(dp)?;
    let a = dp.factor(0);
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut members = Vec::with_capacity(a.order() * a.order());
    for x in a.elements() {
        for y in a.elements() {
            let z = a.inv(a.mul(x, y));
            members.push(dp.encode(&[x, y, z]));
        }
    }
    let sub = Subgroup::from_members(dp.group().clone(), members);
    assert_eq!(sub.order(), a.order() * a.order());
    Ok(sub)
}

/// `{(ak, bk, ck) : a,b,c in H, k in K, abc = 1}` inside `G^3`, for
/// `G = H x| K` with `H` Abelian normal; order `|H|^2 * |K|`.
pub fn build_semidirect_example(
    dp: &DirectProduct,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Subgroup> {
    require_cube(dp)?;
    let g = dp.factor(0);
    if !h.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !h.is_normal() {
        return Err(Error::Precondition("H is not normal in G".into()));
    }
    if h.intersection(k).order() != 1 || h.order() * k.order() != g.order() {
        return Err(Error::Precondition(
            "K is not a complement of H in G".into(),
        ));
    }
    let mut bits = Bits::new(dp.order());
    let mut count = 0usize;
    for a in h.iter() {
        for b in h.iter() {
            let c = g.inv(g.mul(a, b));
            for kk in k.iter() {
                bits.insert(dp.encode(&[g.mul(a, kk), g.mul(b, kk), g.mul(c, kk)]));
                count += 1;
            }
        }
    }
    let sub = Subgroup::from_bits(dp.group().clone(), bits);
    assert_eq!(sub.order(), count, "semidirect example triples must be distinct");
    assert_eq!(sub.order(), h.order() * h.order() * k.order());
    debug_assert!(sub.is_valid_subgroup());
    Ok(sub)
}

/// `{((h2,h3), (h1,h3), (h1,h2))}` inside `(H2xH3) x (H1xH3) x (H1xH2)`:
/// a degenerate 2-factor injective subdirect product of order
/// `|H1|*|H2|*|H3|`. Returns the product it lives in.
pub fn build_interleaved(
    h1: &Arc<FiniteGroup>,
    h2: &Arc<FiniteGroup>,
    h3: &Arc<FiniteGroup>,
) -> Result<(DirectProduct, Subgroup)> {
    let g1 = FiniteGroup::direct_product(&[h2.clone(), h3.clone()])?;
    let g2 = FiniteGroup::direct_product(&[h1.clone(), h3.clone()])?;
    let g3 = FiniteGroup::direct_product(&[h1.clone(), h2.clone()])?;
    let dp = DirectProduct::new(&[g1.clone(), g2.clone(), g3.clone()])?;
    let mut members = Vec::with_capacity(h1.order() * h2.order() * h3.order());
    for a in h1.elements() {
        for b in h2.elements() {
            for c in h3.elements() {
                let x1 = g1.encode(&[b, c]);
                let x2 = g2.encode(&[a, c]);
                let x3 = g3.encode(&[a, b]);
                members.push(dp.encode(&[x1, x2, x3]));
            }
        }
    }
    let sub = Subgroup::from_members(dp.group().clone(), members);
    assert_eq!(sub.order(), h1.order() * h2.order() * h3.order());
    Ok((dp, sub))
}

/// Pulls a subdirect product back through a surjection `kappa` onto the
/// first factor: `{(g1~, g2, g3) : (kappa(g1~), g2, g3) in delta}`.
/// The lift is 2-factor injective iff `kappa` is injective.
pub fn lift_through_cover(
    dp: &DirectProduct,
    delta: &Subgroup,
    kappa: &Homomorphism,
) -> Result<(DirectProduct, Subgroup)> {
    if dp.arity() != 3 {
        return Err(Error::Precondition("lift needs a 3-factor product".into()));
    }
    if !Arc::ptr_eq(kappa.codomain(), dp.factor(0)) {
        return Err(Error::Precondition(
            "kappa must map onto the first factor".into(),
        ));
    }
    if !kappa.is_surjective() {
        return Err(Error::Precondition("kappa is not surjective".into()));
    }
    let gt = kappa.domain().clone();
    let lifted = DirectProduct::new(&[gt.clone(), dp.factor(1).clone(), dp.factor(2).clone()])?;
    // group delta's elements by first coordinate, then fan out over fibers
    let mut by_first: Vec<Vec<(u16, u16)>> = vec![Vec::new(); dp.factor(0).order()];
    for x in delta.iter() {
        by_first[dp.comp(x, 0) as usize].push((dp.comp(x, 1), dp.comp(x, 2)));
    }
    let mut members = Vec::with_capacity(delta.order() * kappa.kernel().order());
    for g in gt.elements() {
        for &(y, z) in &by_first[kappa.apply(g) as usize] {
            members.push(lifted.encode(&[g, y, z]));
        }
    }
    let sub = Subgroup::from_members(lifted.group().clone(), members);
    assert_eq!(sub.order(), delta.order() * kappa.kernel().order());
    Ok((lifted, sub))
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
    fn diagonal_orders() {
        for (g, want) in [(s(2), 2), (s(3), 6), (s(4), 24)] {
            let dp = DirectProduct::cube(&g).unwrap();
            let d = build_diagonal(&dp).unwrap();
            assert_eq!(d.order(), want);
            assert!(dp.is_subdirect(&d));
            assert!(dp.is_two_factor_injective(&d));
        }
        let dp = DirectProduct::cube(&s(3)).unwrap();
        let d = build_diagonal(&dp).unwrap();
        assert!(!dp.is_two_factor_surjective(&d));
    }

    #[test]
    fn abc_group_orders_and_predicates() {
        for (a, want) in [
            (FiniteGroup::cyclic(2).unwrap(), 4),
            (FiniteGroup::cyclic(3).unwrap(), 9),
            (FiniteGroup::klein_four(), 16),
        ] {
            let dp = DirectProduct::cube(&a).unwrap();
            let d = build_abc_group(&dp).unwrap();
            assert_eq!(d.order(), want);
            assert!(dp.is_subdirect(&d));
            assert!(dp.is_two_factor_injective(&d));
            assert!(dp.is_two_factor_surjective(&d));
        }
    }

    #[test]
    fn abc_rejects_nonabelian() {
        let dp = DirectProduct::cube(&s(3)).unwrap();
        assert!(matches!(build_abc_group(&dp), Err(Error::NotAbelian)));
    }

    #[test]
    fn semidirect_example_s3() {
        let s3 = s(3);
        let dp = DirectProduct::cube(&s3).unwrap();
        let a3 = Subgroup::generated(s3.clone(), &[idx(&s3, "(1 2 3)", 3)]);
        let k = Subgroup::generated(s3.clone(), &[idx(&s3, "(1 2)", 3)]);
        let d = build_semidirect_example(&dp, &a3, &k).unwrap();
        assert_eq!(d.order(), 18);
        assert!(dp.is_subdirect(&d));
        assert!(dp.is_two_factor_injective(&d));
    }

    #[test]
    fn semidirect_example_s4() {
        let s4 = s(4);
        let dp = DirectProduct::cube(&s4).unwrap();
        let v = Subgroup::generated(
            s4.clone(),
            &[idx(&s4, "(1 2)(3 4)", 4), idx(&s4, "(1 3)(2 4)", 4)],
        );
        let k = Subgroup::generated(s4.clone(), &[idx(&s4, "(1 2)", 4), idx(&s4, "(1 2 3)", 4)]);
        assert_eq!(k.order(), 6);
        let d = build_semidirect_example(&dp, &v, &k).unwrap();
        assert_eq!(d.order(), 96);
        assert!(dp.is_two_factor_injective(&d));
    }

    #[test]
    fn semidirect_with_trivial_h_is_diagonal() {
        let s3 = s(3);
        let dp = DirectProduct::cube(&s3).unwrap();
        let h = Subgroup::trivial(s3.clone());
        let k = Subgroup::full(s3.clone());
        let d = build_semidirect_example(&dp, &h, &k).unwrap();
        assert_eq!(d, build_diagonal(&dp).unwrap());
    }

    #[test]
    fn semidirect_rejects_bad_complement() {
        let s4 = s(4);
        let dp = DirectProduct::cube(&s4).unwrap();
        let v = Subgroup::generated(
            s4.clone(),
            &[idx(&s4, "(1 2)(3 4)", 4), idx(&s4, "(1 3)(2 4)", 4)],
        );
        // A4 shares V with the candidate normal subgroup: not a complement
        let a4 = Subgroup::from_members(
            s4.clone(),
            s4.elements().filter(|&i| s4.perm(i).unwrap().is_even()),
        );
        assert!(build_semidirect_example(&dp, &v, &a4).is_err());
        // non-Abelian H
        assert!(matches!(
            build_semidirect_example(&dp, &a4, &v),
            Err(Error::NotAbelian)
        ));
    }

    #[test]
    fn interleaved_orders_and_degeneracy() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let (dp, d) = build_interleaved(&z2, &z2, &z2).unwrap();
        assert_eq!(dp.order(), 64);
        assert_eq!(d.order(), 8);
        assert!(dp.is_subdirect(&d));
        assert!(dp.is_two_factor_injective(&d));
        let a = dp.analyze(&d).unwrap();
        assert!(a.is_degenerate());

        let s3 = s(3);
        let one = FiniteGroup::cyclic(1).unwrap();
        let (dp2, d2) = build_interleaved(&s3, &one, &one).unwrap();
        assert_eq!(d2.order(), 6);
        assert!(dp2.is_two_factor_injective(&d2));

        let (dp3, d3) = build_interleaved(&s3, &s3, &s3).unwrap();
        assert_eq!(d3.order(), 216);
        let a3 = dp3.analyze(&d3).unwrap();
        assert!(a3.is_degenerate());
        assert!(a3.two_factor_injective);
    }

    #[test]
    fn lift_through_projection_cover() {
        let s3 = s(3);
        let dp = DirectProduct::cube(&s3).unwrap();
        let d = build_diagonal(&dp).unwrap();

        // identity cover changes nothing
        let id = Homomorphism::identity(&s3);
        let (_, same) = lift_through_cover(&dp, &d, &id).unwrap();
        assert_eq!(same.order(), d.order());

        // first-projection cover S3 x S3 -> S3
        let s3s3 = FiniteGroup::direct_product(&[s3.clone(), s3.clone()]).unwrap();
        let proj: Vec<u16> = s3s3.elements().map(|x| s3s3.component(x, 0)).collect();
        let kappa = Homomorphism::new(s3s3.clone(), s3.clone(), proj).unwrap();
        let (lifted_dp, lifted) = lift_through_cover(&dp, &d, &kappa).unwrap();
        assert_eq!(lifted.order(), 36);
        assert!(lifted_dp.is_subdirect(&lifted));
        assert!(!lifted_dp.is_two_factor_injective(&lifted));

        // reduction recovers ker kappa as N_1 and the diagonal downstairs
        let red = lifted_dp.reduce_to_two_factor_injective(&lifted).unwrap();
        assert_eq!(red.n[0].order(), 6);
        assert!(red.n[1].is_trivial() && red.n[2].is_trivial());
        assert_eq!(red.delta_prime.order(), 6);
    }

    #[test]
    fn lift_through_s4_to_s3_cover() {
        let s3 = s(3);
        let s4 = s(4);
        let dp = DirectProduct::cube(&s3).unwrap();
        let d = build_diagonal(&dp).unwrap();
        // S4 -> S4/V is S3-shaped; compose with an isomorphism onto our S3
        let v = Subgroup::generated(
            s4.clone(),
            &[idx(&s4, "(1 2)(3 4)", 4), idx(&s4, "(1 3)(2 4)", 4)],
        );
        let q = crate::group::quotient(&s4, &v).unwrap();
        let iso = crate::group::find_isomorphisms(&q.group, &s3, Some(1))
            .into_iter()
            .next()
            .unwrap();
        let kappa = q.projection.then(&iso);
        let (_, lifted) = lift_through_cover(&dp, &d, &kappa).unwrap();
        assert_eq!(lifted.order(), 24);
    }

    #[test]
    fn lift_rejects_non_surjective() {
        let s3 = s(3);
        let dp = DirectProduct::cube(&s3).unwrap();
        let d = build_diagonal(&dp).unwrap();
        let trivial_map = Homomorphism::new(
            s3.clone(),
            s3.clone(),
            vec![0; 6],
        )
        .unwrap();
        assert!(lift_through_cover(&dp, &d, &trivial_map).is_err());
    }
}
