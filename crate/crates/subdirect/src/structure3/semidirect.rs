//! The injection for cubes `G^3` with `G = E x| K`: a 2-factor injective
//! subdirect product with `pi_1(H) = E` and `B_1 = C_1` determines a pair
//! `(kappa, iota)` — `kappa` the isomorphism pairing the second and third
//! coordinates over `K`-elements in the first, and `iota` an automorphism
//! of `G` fixing `K` setwise, measured against a fixed reference product
//! realized from `kappa` by the proof's recipe
//! `< {(k, g, kappa(g))} ∪ {(a, a^-1, 1) : a in E} >`.
//!
//! `kappa` is canonical given `K`; `iota` is relative to the reference, and
//! `realize` inverts `extract` on its image.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Homomorphism, Subgroup};
use crate::product::DirectProduct;

pub struct SemidirectData {
    pub e: Subgroup,
    pub k: Subgroup,
    pub kappa: Homomorphism,
    pub iota: Homomorphism,
}

fn require_cube(dp: &DirectProduct) -> Result<Arc<FiniteGroup>> {
    if dp.arity() != 3
        || !Arc::ptr_eq(dp.factor(0), dp.factor(1))
        || !Arc::ptr_eq(dp.factor(0), dp.factor(2))
    {
        return Err(Error::Precondition(
            "the semidirect injection is implemented over cubes G x G x G".into(),
        ));
    }
    Ok(dp.factor(0).clone())
}

fn check_complement(g: &Arc<FiniteGroup>, e: &Subgroup, k: &Subgroup) -> Result<()> {
    if !e.is_normal() {
        return Err(Error::Precondition("E is not normal in G".into()));
    }
    if e.intersection(k).order() != 1 || e.order() * k.order() != g.order() {
        return Err(Error::Precondition("K is not a complement of E in G".into()));
    }
    Ok(())
}

/// `K`-part of each group element under `G = E x| K`.
fn k_parts(g: &Arc<FiniteGroup>, e: &Subgroup, k: &Subgroup) -> Vec<u16> {
    let mut out = vec![u16::MAX; g.order()];
    for x in g.elements() {
        for kk in k.iter() {
            if e.contains(g.mul(x, g.inv(kk))) {
                out[x as usize] = kk;
                break;
            }
        }
        debug_assert!(out[x as usize] != u16::MAX);
    }
    out
}

/// For each second coordinate `g`, the unique element `(k, g, y)` of
/// `delta` with `k in K`; returns `(theta, kappa_map)` with `theta[g] = k`
/// and `kappa_map[g] = y`.
fn split_over_k(
    dp: &DirectProduct,
    delta: &Subgroup,
    k: &Subgroup,
) -> (Vec<u16>, Vec<u16>) {
    let n = dp.factor(0).order();
    let mut theta = vec![u16::MAX; n];
    let mut kappa_map = vec![u16::MAX; n];
    for x in delta.iter() {
        if k.contains(dp.comp(x, 0)) {
            let g = dp.comp(x, 1) as usize;
            assert!(
                theta[g] == u16::MAX,
                "more than one element over g_2 = {g} with K-part first coordinate"
            );
            theta[g] = dp.comp(x, 0);
            kappa_map[g] = dp.comp(x, 2);
        }
    }
    assert!(
        theta.iter().all(|&v| v != u16::MAX),
        "every second coordinate must be reached over a K-part first coordinate"
    );
    (theta, kappa_map)
}

/// The proof's reference product for `kappa`:
/// `< {(k_of(g), g, kappa(g)) : g in G} ∪ {(a, a^-1, 1) : a in E} >`.
pub fn reference_delta(
    dp: &DirectProduct,
    e: &Subgroup,
    k: &Subgroup,
    kappa: &Homomorphism,
) -> Result<Subgroup> {
    let g = require_cube(dp)?;
    check_complement(&g, e, k)?;
    if !kappa.is_bijective() {
        return Err(Error::Precondition("kappa must be an isomorphism".into()));
    }
    let k_of = k_parts(&g, e, k);
    let mut gens: Vec<u16> = Vec::new();
    for x in g.elements() {
        gens.push(dp.encode(&[k_of[x as usize], x, kappa.apply(x)]));
    }
    for a in e.iter() {
        gens.push(dp.encode(&[a, g.inv(a), 0]));
    }
    let delta = Subgroup::generated(dp.group().clone(), &gens);
    let analysis = dp.analyze(&delta)?;
    assert!(
        analysis.two_factor_injective,
        "reference product must be 2-factor injective"
    );
    assert_eq!(&analysis.e[0], e, "reference product must have pi_1(H) = E");
    assert_eq!(
        analysis.b[0], analysis.c[0],
        "reference product must have B_1 = C_1"
    );
    let (_, kappa_map) = split_over_k(dp, &delta, k);
    assert_eq!(
        kappa_map,
        kappa.map(),
        "reference product must realize the given kappa"
    );
    Ok(delta)
}

/// Reads `(kappa, iota)` off a qualifying subdirect product. Preconditions
/// are reported as errors; failures of the theorem's own claims panic.
pub fn extract_semidirect_data(
    dp: &DirectProduct,
    delta: &Subgroup,
    k: &Subgroup,
) -> Result<SemidirectData> {
    let g = require_cube(dp)?;
    let analysis = dp.analyze(delta)?;
    if !analysis.two_factor_injective {
        return Err(Error::NotTwoFactorInjective(0));
    }
    if analysis.b[0] != analysis.c[0] {
        return Err(Error::Precondition("B_1 = C_1 is required".into()));
    }
    let e = analysis.e[0].clone();
    check_complement(&g, &e, k)?;

    let (theta, kappa_map) = split_over_k(dp, delta, k);
    let kappa = Homomorphism::new(g.clone(), g.clone(), kappa_map)
        .expect("the coordinate-pairing map must be an isomorphism");
    assert!(kappa.is_bijective());

    let delta_ref = reference_delta(dp, &e, k, &kappa)?;
    let (theta_ref, _) = split_over_k(dp, &delta_ref, k);

    // iota_K: K-parts over matching second coordinates
    let mut iota_k = vec![u16::MAX; g.order()];
    for x in g.elements() {
        let from = theta_ref[x as usize];
        let to = theta[x as usize];
        assert!(
            iota_k[from as usize] == u16::MAX || iota_k[from as usize] == to,
            "iota_K must be well-defined"
        );
        iota_k[from as usize] = to;
    }
    // iota_E: match elements (e, u, 1) across the two products
    let mut u_ref = vec![u16::MAX; g.order()];
    for x in delta_ref.iter() {
        if dp.comp(x, 2) == 0 {
            u_ref[dp.comp(x, 0) as usize] = dp.comp(x, 1);
        }
    }
    let mut rev = vec![u16::MAX; g.order()];
    for x in delta.iter() {
        if dp.comp(x, 2) == 0 {
            rev[dp.comp(x, 1) as usize] = dp.comp(x, 0);
        }
    }
    let k_of = k_parts(&g, &e, k);
    let iota_map: Vec<u16> = g
        .elements()
        .map(|x| {
            let kk = k_of[x as usize];
            let ee = g.mul(x, g.inv(kk));
            let u = u_ref[ee as usize];
            assert!(u != u16::MAX, "every E element appears over a trivial third coordinate");
            let e_img = rev[u as usize];
            assert!(e_img != u16::MAX, "matching element must exist in delta");
            g.mul(e_img, iota_k[kk as usize])
        })
        .collect();
    let iota = Homomorphism::new(g.clone(), g.clone(), iota_map)
        .expect("iota must be an automorphism of G");
    assert!(iota.is_bijective());
    for kk in k.iter() {
        assert!(k.contains(iota.apply(kk)), "iota must fix K as a set");
    }

    // realize inverts extract
    let realized = translate_first(dp, &delta_ref, &iota);
    assert_eq!(
        &realized, delta,
        "translating the reference by iota must reconstruct delta"
    );

    Ok(SemidirectData {
        e,
        k: k.clone(),
        kappa,
        iota,
    })
}

fn translate_first(dp: &DirectProduct, delta: &Subgroup, iota: &Homomorphism) -> Subgroup {
    Subgroup::from_members(
        dp.group().clone(),
        delta.iter().map(|x| {
            dp.encode(&[
                iota.apply(dp.comp(x, 0)),
                dp.comp(x, 1),
                dp.comp(x, 2),
            ])
        }),
    )
}

/// Builds the subdirect product of a pair `(kappa, iota)`.
pub fn realize_semidirect_pair(
    dp: &DirectProduct,
    e: &Subgroup,
    k: &Subgroup,
    kappa: &Homomorphism,
    iota: &Homomorphism,
) -> Result<Subgroup> {
    let g = require_cube(dp)?;
    if !iota.is_bijective() || !Arc::ptr_eq(iota.domain(), &g) {
        return Err(Error::Precondition("iota must be an automorphism of G".into()));
    }
    if !k.iter().all(|kk| k.contains(iota.apply(kk))) {
        return Err(Error::Precondition("iota must fix K as a set".into()));
    }
    let delta_ref = reference_delta(dp, e, k, kappa)?;
    Ok(translate_first(dp, &delta_ref, iota))
}
