//! The fixed list of small groups used by the exhaustive sweeps and golden files.

use std::sync::Arc;

use crate::chr::{character_table, is_faithful};
use crate::error::{Error, Result};
use crate::grp::{self, amalgamated_central_product, direct_product, named_group, Group};
use crate::ogo::{self, CoverKind};

/// Names accepted by [`group`], in sweep order; every order is at most 64.
pub const NAMES: &[&str] = &[
    "Z/2", "Z/3", "Z/4", "V", "S3", "Z/6", "Z/8", "Z/4xZ/2", "Z/2^3", "D4", "Q8", "D5", "A4", "D6", "Dic3",
    "Z/4xZ/4", "Q16", "SD16", "D8", "Z/4*Q8", "Q8xZ/2", "D4xZ/2", "S4", "SL(2,3)", "A4xZ/2", "Dic3xZ/2",
    "Q8xZ/4", "D4xZ/4", "S3xS3", "GL(2,3)", "S4hat", "S4xZ/2", "SL(2,3)xZ/2", "Q8xS3", "Z/2wrZ/4", "GO4(Q8)",
];

fn central_pair(a: &Group, b: &Group) -> Result<(usize, usize)> {
    let inv = |g: &Group| {
        g.center().members().iter().copied().find(|&x| g.element_order(x) == 2)
    };
    match (inv(a), inv(b)) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Internal("no central involution".into())),
    }
}

/// Builds a corpus group, or any group known by [`named_group`].
pub fn group(name: &str) -> Result<Group> {
    let name = name.trim();
    let dp = |a: &str, b: &str| -> Result<Group> {
        let g = direct_product(&group(a)?, &group(b)?)?;
        Ok(Arc::new(Arc::try_unwrap(g).map_err(|_| Error::Internal("shared group".into()))?.with_label(name)))
    };
    match name {
        "Z/4xZ/2" => dp("Z/4", "Z/2"),
        "Z/2^3" => dp("V", "Z/2"),
        "Z/4xZ/4" => dp("Z/4", "Z/4"),
        "Q8xZ/2" => dp("Q8", "Z/2"),
        "D4xZ/2" => dp("D4", "Z/2"),
        "A4xZ/2" => dp("A4", "Z/2"),
        "Dic3xZ/2" => dp("Dic3", "Z/2"),
        "Q8xZ/4" => dp("Q8", "Z/4"),
        "D4xZ/4" => dp("D4", "Z/4"),
        "S3xS3" => dp("S3", "S3"),
        "S4xZ/2" => dp("S4", "Z/2"),
        "SL(2,3)xZ/2" => dp("SL(2,3)", "Z/2"),
        "Q8xS3" => dp("Q8", "S3"),
        "Z/4*Q8" => {
            let (a, b) = (group("Z/4")?, group("Q8")?);
            let p = central_pair(&a, &b)?;
            let g = amalgamated_central_product(&a, &b, &[p])?;
            Ok(Arc::new(Arc::try_unwrap(g).map_err(|_| Error::Internal("shared group".into()))?.with_label(name)))
        }
        "Z/2wrZ/4" => {
            let gens: Vec<Vec<usize>> =
                ["(1 2)", "(1 3 5 7)(2 4 6 8)"].iter().map(|c| grp::parse_cycles(c, 8)).collect::<Result<_>>()?;
            Ok(Arc::new(grp::FiniteGroup::from_permutations(name, 8, &gens)?))
        }
        "S4tilde" => Ok(ogo::double_cover_s4(CoverKind::Tilde)?.group),
        "S4hat" => Ok(ogo::double_cover_s4(CoverKind::Hat)?.group),
        _ => {
            if let Some(inner) = name.strip_prefix("GO4(").and_then(|s| s.strip_suffix(')')) {
                return Ok(go4_of(inner)?.group);
            }
            named_group(name)
        }
    }
}

/// The GO(4)-extension over `h`, using its first faithful degree-2 character and the centre.
pub fn go4_of(h: &str) -> Result<ogo::Go4Extension> {
    let hg = group(h)?;
    let t = character_table(&hg)?;
    let tau = t
        .of_degree(2)
        .into_iter()
        .map(|(_, c)| c)
        .find(|c| is_faithful(c))
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("{h} has no faithful degree-2 character")))?;
    let scalars: Vec<usize> = {
        let z = hg.center();
        let d = tau.value(0).clone();
        z.members().iter().copied().filter(|&x| {
            let v = tau.at(x);
            (v * &v.conj()) == (&d * &d)
        }).collect()
    };
    let c = grp::Subgroup::from_members(&hg, &scalars)?;
    ogo::go4_extension(&hg, &tau, &c)
}

/// Every corpus group, in [`NAMES`] order.
pub fn all() -> Result<Vec<Group>> {
    NAMES.iter().map(|n| group(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let expect = [
            2, 3, 4, 4, 6, 6, 8, 8, 8, 8, 8, 10, 12, 12, 12, 16, 16, 16, 16, 16, 16, 16, 24, 24, 24, 24, 32, 32, 36,
            48, 48, 48, 48, 48, 64, 64,
        ];
        let got: Vec<usize> = all().unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(got, expect);
        for (g, n) in all().unwrap().iter().zip(NAMES) {
            assert_eq!(g.label(), *n);
        }
    }
}
