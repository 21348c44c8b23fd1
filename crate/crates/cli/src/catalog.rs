//! Root data shipped with the tool, and resolution of `--datum` arguments.

use std::collections::BTreeMap;
use std::fs;

use whittaker_core::{CartanSpec, RootDatum};

use crate::format::SpecJson;
use crate::CliError;

const CATALOG: &[(&str, &str)] = &[
    ("A1-adjoint", include_str!("../catalog/A1-adjoint.json")),
    ("A1-sc", include_str!("../catalog/A1-sc.json")),
    ("A2-adjoint", include_str!("../catalog/A2-adjoint.json")),
    ("A2-sc", include_str!("../catalog/A2-sc.json")),
    ("A3-adjoint", include_str!("../catalog/A3-adjoint.json")),
    ("A3-sc", include_str!("../catalog/A3-sc.json")),
    ("A4-adjoint", include_str!("../catalog/A4-adjoint.json")),
    ("A4-sc", include_str!("../catalog/A4-sc.json")),
    ("B2-adjoint", include_str!("../catalog/B2-adjoint.json")),
    ("B2-sc", include_str!("../catalog/B2-sc.json")),
    ("B3-adjoint", include_str!("../catalog/B3-adjoint.json")),
    ("B3-sc", include_str!("../catalog/B3-sc.json")),
    ("B4-adjoint", include_str!("../catalog/B4-adjoint.json")),
    ("B4-sc", include_str!("../catalog/B4-sc.json")),
    ("C2-adjoint", include_str!("../catalog/C2-adjoint.json")),
    ("C2-sc", include_str!("../catalog/C2-sc.json")),
    ("C3-adjoint", include_str!("../catalog/C3-adjoint.json")),
    ("C3-sc", include_str!("../catalog/C3-sc.json")),
    ("C4-adjoint", include_str!("../catalog/C4-adjoint.json")),
    ("C4-sc", include_str!("../catalog/C4-sc.json")),
    ("D4-adjoint", include_str!("../catalog/D4-adjoint.json")),
    ("D4-sc", include_str!("../catalog/D4-sc.json")),
    ("G2-adjoint", include_str!("../catalog/G2-adjoint.json")),
    ("G2-sc", include_str!("../catalog/G2-sc.json")),
    ("BC1-adjoint", include_str!("../catalog/BC1-adjoint.json")),
    ("BC1-sc", include_str!("../catalog/BC1-sc.json")),
    ("BC2-adjoint", include_str!("../catalog/BC2-adjoint.json")),
    ("BC2-sc", include_str!("../catalog/BC2-sc.json")),
    ("SU3", include_str!("../catalog/SU3.json")),
    ("GL2", include_str!("../catalog/GL2.json")),
];

/// The data swept by `verify all` when no datum is given.
pub const DEFAULT_SWEEP: &[&str] = &[
    "A1-adjoint",
    "A1-sc",
    "A2-adjoint",
    "A2-sc",
    "B2-adjoint",
    "B2-sc",
    "G2-adjoint",
    "G2-sc",
    "BC1-adjoint",
    "BC2-adjoint",
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

pub fn catalog_json(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, j)| *j)
}

pub fn parse_spec(text: &str) -> Result<CartanSpec, CliError> {
    let j: SpecJson = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    j.to_spec()
}

/// Resolves `catalog:NAME`, `file:PATH`, or a bare catalog name.
pub fn resolve_spec(arg: &str) -> Result<CartanSpec, CliError> {
    if let Some(path) = arg.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        return parse_spec(&text);
    }
    let name = arg.strip_prefix("catalog:").unwrap_or(arg);
    let text = catalog_json(name).ok_or_else(|| CliError::Usage(format!("--datum: unknown catalog entry `{name}`")))?;
    parse_spec(text)
}

/// Builds the datum for `arg` after applying multiplicity overrides.
pub fn load(arg: &str, mult: &BTreeMap<usize, u32>) -> Result<RootDatum, CliError> {
    let mut spec = resolve_spec(arg)?;
    spec.mult.extend(mult.iter().map(|(&k, &v)| (k, v)));
    Ok(RootDatum::build(&spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds() {
        for n in names() {
            let d = load(n, &BTreeMap::new()).unwrap();
            assert_eq!(d.label(), n);
            d.dual_datum().unwrap();
        }
    }

    #[test]
    fn resolution() {
        assert!(resolve_spec("catalog:A2-adjoint").is_ok());
        assert!(resolve_spec("A2-adjoint").is_ok());
        assert!(matches!(resolve_spec("catalog:E8"), Err(CliError::Usage(_))));
        assert!(matches!(resolve_spec("file:/nonexistent/x.json"), Err(CliError::Io(_))));
    }

    #[test]
    fn su3_multiplicities() {
        let d = load("SU3", &BTreeMap::new()).unwrap();
        assert_eq!((d.mult(0), d.mult(1)), (2, 1));
        let d = load("SU3", &BTreeMap::from([(0, 3), (1, 2)])).unwrap();
        assert_eq!((d.mult(0), d.mult(1)), (3, 2));
    }
}
