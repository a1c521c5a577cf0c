//! Subgroup-lattice enumeration.
//!
//! The main algorithm is cyclic extension: starting from the perfect
//! subgroups (just the trivial one in a solvable group), every further
//! subgroup arises as `<U, g>` for an already-known `U`, an element `g` of
//! its normalizer, and a prime coset order — because any non-perfect group
//! has a normal subgroup of prime index. A naive breadth-first closure over
//! arbitrary single-element extensions serves as an independent check at
//! small orders.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};

use super::finite_group::FiniteGroup;
use super::subgroup::Subgroup;

/// Default hard bound on the order of a group whose lattice we enumerate.
pub const DEFAULT_LATTICE_BOUND: usize = 20_000;
/// Above this order a lattice run is legal but worth a warning to the user.
pub const LATTICE_SOFT_WARN: usize = 4_000;
/// Cap on the order of the perfect core we can seed (A5 and A6 fit).
const PERFECT_CORE_BOUND: usize = 600;
/// Cap for the naive cross-validation algorithm.
pub const NAIVE_BOUND: usize = 216;

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

/// The terminal member of the derived series; every perfect subgroup is
/// contained in it.
fn perfect_core(g: &Arc<FiniteGroup>) -> Subgroup {
    let mut cur = Subgroup::full(g.clone());
    loop {
        let next = cur.derived();
        if next.order() == cur.order() {
            return cur;
        }
        cur = next;
    }
}

/// All perfect subgroups (including the trivial one), found by brute
/// enumeration inside the perfect core.
fn perfect_seeds(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    let core = perfect_core(g);
    if core.is_trivial() {
        return Ok(vec![Subgroup::trivial(g.clone())]);
    }
    if core.order() > PERFECT_CORE_BOUND {
        return Err(Error::Precondition(format!(
            "perfect core of order {} exceeds the seeding bound {}",
            core.order(),
            PERFECT_CORE_BOUND
        )));
    }
    let all_in_core = naive_within(g, &core);
    Ok(all_in_core
        .into_iter()
        .filter(|s| s.derived().order() == s.order())
        .collect())
}

/// The complete subgroup lattice of `g`, deduplicated by canonical bitset
/// and sorted by (order, bitset).
pub fn all_subgroups(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let n = g.order();
    let mut known: HashMap<Bits, Vec<u16>> = HashMap::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    for seed in perfect_seeds(g)? {
        let gens = seed.small_gens();
        if known.insert(seed.bits().clone(), gens).is_none() {
            queue.push_back(seed);
        }
    }
    while let Some(u) = queue.pop_front() {
        let u_gens = known[u.bits()].clone();
        let u_order = u.order();
        for cand in g.elements() {
            if u.contains(cand) {
                continue;
            }
            // normalizer condition: U^cand = U, checked on generators
            if !u_gens.iter().all(|&s| u.contains(g.conj(s, cand))) {
                continue;
            }
            // coset order of cand over U must be prime
            let mut k = 1usize;
            let mut pw = cand;
            while !u.contains(pw) {
                pw = g.mul(pw, cand);
                k += 1;
            }
            if !is_prime(k) {
                continue;
            }
            if u_order * k > n {
                continue;
            }
            // V = U ∪ U·cand ∪ ... ∪ U·cand^(k-1)
            let mut bits = u.bits().clone();
            let mut pw = cand;
            for _ in 1..k {
                for m in u.iter() {
                    bits.insert(g.mul(m, pw));
                }
                pw = g.mul(pw, cand);
            }
            if !known.contains_key(&bits) {
                let v = Subgroup::from_bits(g.clone(), bits);
                debug_assert_eq!(v.order(), u_order * k);
                let mut gens = u_gens.clone();
                gens.push(cand);
                known.insert(v.bits().clone(), gens);
                queue.push_back(v);
            }
        }
    }
    let mut out: Vec<Subgroup> = known
        .into_keys()
        .map(|bits| Subgroup::from_bits(g.clone(), bits))
        .collect();
    out.sort_by(Subgroup::canonical_cmp);
    Ok(out)
}

/// Naive fallback: close the set of subgroups under extension by arbitrary
/// elements, starting from the trivial subgroup. Complete by the chain
/// argument, with no theory behind it — the cross-check for the cyclic
/// extension method.
pub fn all_subgroups_naive(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound.min(NAIVE_BOUND) {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound: bound.min(NAIVE_BOUND),
        });
    }
    let mut out = naive_within(g, &Subgroup::full(g.clone()));
    out.sort_by(Subgroup::canonical_cmp);
    Ok(out)
}

fn naive_within(g: &Arc<FiniteGroup>, universe: &Subgroup) -> Vec<Subgroup> {
    let mut known: HashMap<Bits, Vec<u16>> = HashMap::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    let trivial = Subgroup::trivial(g.clone());
    known.insert(trivial.bits().clone(), Vec::new());
    queue.push_back(trivial);
    while let Some(u) = queue.pop_front() {
        let u_gens = known[u.bits()].clone();
        for cand in universe.iter() {
            if u.contains(cand) {
                continue;
            }
            let v = u.extended_by(&u_gens, cand);
            if !known.contains_key(v.bits()) {
                let mut gens = u_gens.clone();
                gens.push(cand);
                known.insert(v.bits().clone(), gens);
                queue.push_back(v);
            }
        }
    }
    known
        .into_keys()
        .map(|bits| Subgroup::from_bits(g.clone(), bits))
        .collect()
}

/// Subgroups invariant under conjugation by every element of `g`.
pub fn normal_subgroups(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g, bound)?
        .into_iter()
        .filter(Subgroup::is_normal)
        .collect())
}
