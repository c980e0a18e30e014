//! Check identifiers and the operation each one runs.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{Family, TypeLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CheckKind {
    Pi0,
    Pi0Mu,
    Flatness,
    Blocks,
    PiTruncated,
    WeylDenominator,
    IdealPowers,
    Spherical,
    Corner,
    Orientation,
    HilbertIdentity,
    FusionFunctor,
    ASelfDuality,
    Heisenberg,
    Verlinde,
    GroupOrders,
    HStar,
    Monodromy,
}

/// What a check is indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    PerType,
    /// Types with a nodal vertex only.
    PerNodalType,
    PerFamily,
    Global,
}

impl CheckKind {
    pub const ALL: [CheckKind; 18] = [
        CheckKind::Pi0,
        CheckKind::Pi0Mu,
        CheckKind::Flatness,
        CheckKind::Blocks,
        CheckKind::PiTruncated,
        CheckKind::WeylDenominator,
        CheckKind::IdealPowers,
        CheckKind::Spherical,
        CheckKind::Corner,
        CheckKind::Orientation,
        CheckKind::HilbertIdentity,
        CheckKind::FusionFunctor,
        CheckKind::ASelfDuality,
        CheckKind::Heisenberg,
        CheckKind::Verlinde,
        CheckKind::GroupOrders,
        CheckKind::HStar,
        CheckKind::Monodromy,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckKind::Pi0 => "pi0",
            CheckKind::Pi0Mu => "pi0mu",
            CheckKind::Flatness => "flatness",
            CheckKind::Blocks => "blocks",
            CheckKind::PiTruncated => "pi-truncated",
            CheckKind::WeylDenominator => "weyl-denominator",
            CheckKind::IdealPowers => "ideal-powers",
            CheckKind::Spherical => "spherical",
            CheckKind::Corner => "corner",
            CheckKind::Orientation => "orientation",
            CheckKind::HilbertIdentity => "hilbert-identity",
            CheckKind::FusionFunctor => "fusion-functor",
            CheckKind::ASelfDuality => "a-selfduality",
            CheckKind::Heisenberg => "heisenberg",
            CheckKind::Verlinde => "verlinde",
            CheckKind::GroupOrders => "group-orders",
            CheckKind::HStar => "hstar",
            CheckKind::Monodromy => "monodromy",
        }
    }

    pub fn scope(self) -> Scope {
        match self {
            CheckKind::Spherical | CheckKind::Corner | CheckKind::Monodromy => Scope::PerNodalType,
            CheckKind::HStar => Scope::PerFamily,
            CheckKind::Heisenberg | CheckKind::Verlinde | CheckKind::GroupOrders => Scope::Global,
            _ => Scope::PerType,
        }
    }

    /// Types used when `--type` is not given.
    pub fn default_types(self) -> Vec<TypeLabel> {
        let labels: &[&str] = match self {
            CheckKind::Pi0 => &["A2", "A3", "A4", "A5", "D4", "D5", "E6"],
            CheckKind::Pi0Mu => &["A2", "A3", "D4"],
            CheckKind::Flatness => &["A2", "A3", "D4"],
            CheckKind::Blocks => &["A2", "A3"],
            CheckKind::PiTruncated => &["A2", "A3"],
            CheckKind::WeylDenominator => &["A2", "A3"],
            CheckKind::IdealPowers => &["A2", "A3", "D4"],
            CheckKind::Spherical => &["A3", "D4", "E6"],
            CheckKind::Corner => &["A3", "D4"],
            CheckKind::Orientation => &["A3", "D4"],
            CheckKind::HilbertIdentity | CheckKind::FusionFunctor | CheckKind::ASelfDuality => {
                return TypeLabel::standard_list();
            }
            CheckKind::Monodromy => &["A3", "D4", "E6"],
            _ => &[],
        };
        labels.iter().map(|l| l.parse().expect("static label")).collect()
    }

    /// Whether this instance is excluded unless slow runs are requested.
    pub fn is_slow(self, t: Option<TypeLabel>) -> bool {
        let Some(t) = t else { return false };
        let big = t.family == Family::E || t.rank >= 6;
        match self {
            CheckKind::HilbertIdentity | CheckKind::FusionFunctor | CheckKind::ASelfDuality => false,
            CheckKind::WeylDenominator => !(t.family == Family::A && t.rank == 2),
            CheckKind::PiTruncated => t.rank > 3,
            CheckKind::Blocks | CheckKind::Flatness | CheckKind::Corner | CheckKind::Orientation => big || t.rank >= 5,
            CheckKind::Pi0 => big,
            _ => big,
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        CheckKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown check `{s}`; known: {}",
                    CheckKind::ALL.map(|k| k.id()).join(", ")
                ))
            })
    }
}

/// One representative per family: `A2, D4, E6, E7, E8`.
pub fn family_representatives() -> Vec<TypeLabel> {
    ["A2", "D4", "E6", "E7", "E8"].iter().map(|l| l.parse().expect("static label")).collect()
}

/// `all`, `standard`, or a comma-separated list of labels.
pub fn parse_types(s: &str) -> Result<Vec<TypeLabel>> {
    match s.trim() {
        "all" => Ok(family_representatives()),
        "standard" => Ok(TypeLabel::standard_list()),
        other => other
            .split(',')
            .map(|x| x.parse::<TypeLabel>().map_err(|e| Error::Config(e.to_string())))
            .collect(),
    }
}

pub fn parse_checks(s: &str) -> Result<Vec<CheckKind>> {
    if s.trim() == "all" {
        return Ok(CheckKind::ALL.to_vec());
    }
    let mut v: Vec<CheckKind> = s.split(',').map(str::parse).collect::<Result<_>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.id().parse::<CheckKind>().unwrap(), k);
        }
        assert!("bogus".parse::<CheckKind>().is_err());
    }

    #[test]
    fn type_lists() {
        assert_eq!(parse_types("all").unwrap().len(), 5);
        assert_eq!(parse_types("A2,d4").unwrap().len(), 2);
        assert!(parse_types("B3").is_err());
        assert_eq!(parse_checks("pi0mu,pi0,pi0").unwrap(), vec![CheckKind::Pi0, CheckKind::Pi0Mu]);
    }

    #[test]
    fn slow_gating() {
        let e6: TypeLabel = "E6".parse().unwrap();
        let a2: TypeLabel = "A2".parse().unwrap();
        assert!(CheckKind::Pi0.is_slow(Some(e6)));
        assert!(!CheckKind::HilbertIdentity.is_slow(Some(e6)));
        assert!(!CheckKind::WeylDenominator.is_slow(Some(a2)));
        assert!(CheckKind::WeylDenominator.is_slow(Some("A3".parse().unwrap())));
    }
}
