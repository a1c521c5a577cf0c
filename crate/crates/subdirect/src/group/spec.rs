//! Group-spec mini-language for the CLI: `S<n>`, `A<n>`, `Z<n>`, `V`, or
//! `gen:<degree>:<cycles;cycles;...>`. A group built from a spec carries the
//! spec as its label, so specs round-trip through `FiniteGroup::label`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Perm;

use super::finite_group::FiniteGroup;

pub fn parse_group_spec(spec: &str) -> Result<Arc<FiniteGroup>> {
    let spec = spec.trim();
    if spec == "V" {
        return Ok(FiniteGroup::klein_four());
    }
    if let Some(rest) = spec.strip_prefix("gen:") {
        let (degree_s, cycles_s) = rest
            .split_once(':')
            .ok_or_else(|| Error::GroupSpec(format!("malformed \"{spec}\"")))?;
        let degree: usize = degree_s
            .parse()
            .map_err(|_| Error::GroupSpec(format!("bad degree \"{degree_s}\"")))?;
        let gens = cycles_s
            .split(';')
            .map(|c| Perm::parse_cycles(c, degree))
            .collect::<Result<Vec<_>>>()?;
        return FiniteGroup::from_generators(spec.to_string(), &gens);
    }
    if let Some(n) = spec.strip_prefix('S').and_then(|s| s.parse::<usize>().ok()) {
        return FiniteGroup::symmetric(n);
    }
    if let Some(n) = spec.strip_prefix('A').and_then(|s| s.parse::<usize>().ok()) {
        return FiniteGroup::alternating(n);
    }
    if let Some(n) = spec.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        return FiniteGroup::cyclic(n);
    }
    Err(Error::GroupSpec(format!(
        "unrecognized \"{spec}\" (expected S<n>, A<n>, Z<n>, V, or gen:<degree>:<cycles;...>)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_specs() {
        assert_eq!(parse_group_spec("S4").unwrap().order(), 24);
        assert_eq!(parse_group_spec("A4").unwrap().order(), 12);
        assert_eq!(parse_group_spec("Z6").unwrap().order(), 6);
        assert_eq!(parse_group_spec("V").unwrap().order(), 4);
    }

    #[test]
    fn generated_specs() {
        // D4 on 4 points
        let d4 = parse_group_spec("gen:4:(1 2 3 4);(1 3)").unwrap();
        assert_eq!(d4.order(), 8);
        // Z2 x Z4 on 6 points
        let z2z4 = parse_group_spec("gen:6:(1 2);(3 4 5 6)").unwrap();
        assert_eq!(z2z4.order(), 8);
        assert!(z2z4.is_abelian());
    }

    #[test]
    fn labels_round_trip() {
        for spec in ["S3", "A4", "Z12", "V", "gen:4:(1 2 3 4);(1 3)"] {
            let g = parse_group_spec(spec).unwrap();
            assert_eq!(g.label(), spec);
            let again = parse_group_spec(g.label()).unwrap();
            assert_eq!(again.order(), g.order());
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_group_spec("Q8").is_err());
        assert!(parse_group_spec("S").is_err());
        assert!(parse_group_spec("gen:4").is_err());
    }
}
