//! Bundled arrangements with their known invariants.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::io::parse::parse_equation;
use crate::Rational;

/// Invariants an entry must reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub n_lines: usize,
    pub beta: usize,
    pub g2g3_rank: usize,
    pub direct_sum: bool,
    /// `(b, rank of H_ab)` for the certified cycle.
    pub certificate: Option<(usize, usize)>,
    /// Line of the closure moved to infinity when the input has parallels.
    pub chart_line: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub arrangement: Arrangement<Rational>,
    pub expected: Expected,
}

fn coordinate(equations: &[&str], no_parallels: bool) -> Arrangement<Rational> {
    let lines = equations.iter().map(|e| parse_equation(e).expect("catalog equation")).collect();
    Arrangement::coordinate(lines, no_parallels)
}

const TRIANGLE6: [&str; 6] = ["y = 0", "x = 0", "x + y = 1", "y = 2x", "y = -2x + 2", "y = x/2 + 1"];

const NAMES: [&str; 10] = [
    "generic3",
    "pencil3",
    "nearpencil4",
    "pencil-5",
    "twopencils5",
    "star7-abstract",
    "triangle6",
    "neartriangle7",
    "square8-abstract",
    "braid-a3-generic",
];

/// Loadable by name but kept out of the default listing.
const EXTRA_NAMES: [&str; 1] = ["two-triangles-abstract"];

/// Names of the default entries; `pencil-k` is available for every `k ≥ 3`.
pub fn catalog_names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

/// Default entries plus the larger ones only loadable by name.
pub fn all_catalog_names() -> Vec<String> {
    NAMES.iter().chain(EXTRA_NAMES.iter()).map(|s| s.to_string()).collect()
}

pub fn catalog() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| load_catalog(n).expect("bundled entry")).collect()
}

fn expected(n_lines: usize, beta: usize, g2g3_rank: usize, certificate: Option<(usize, usize)>) -> Expected {
    Expected { n_lines, beta, g2g3_rank, direct_sum: beta == 0, certificate, chart_line: None }
}

/// `k` lines through the origin.
pub fn pencil(k: usize) -> Result<CatalogEntry> {
    if k < 3 {
        return Err(Error::UnknownCatalogEntry(format!("pencil-{k}")));
    }
    let mut equations = vec!["x = 0".to_string()];
    equations.extend((0..k - 1).map(|j| format!("y = {j}x")));
    let refs: Vec<&str> = equations.iter().map(String::as_str).collect();
    Ok(CatalogEntry {
        name: format!("pencil-{k}"),
        description: format!("{k} concurrent lines"),
        arrangement: coordinate(&refs, true),
        expected: expected(k, 0, (k - 1) * (k - 2) / 2, None),
    })
}

pub fn load_catalog(name: &str) -> Result<CatalogEntry> {
    if let Some(k) = name.strip_prefix("pencil-") {
        let k: usize = k.parse().map_err(|_| Error::UnknownCatalogEntry(name.to_string()))?;
        return pencil(k);
    }
    let (description, arrangement, expected) = match name {
        "generic3" => ("three lines in general position", coordinate(&["y = 0", "x = 0", "x + y = 1"], true), expected(3, 0, 0, None)),
        "pencil3" => ("three concurrent lines", coordinate(&["x = 0", "y = 0", "y = x"], true), expected(3, 0, 1, None)),
        "nearpencil4" => (
            "three concurrent lines and a generic line",
            coordinate(&["x = 0", "y = 0", "y = x", "x + y = 1"], true),
            expected(4, 0, 1, None),
        ),
        "twopencils5" => (
            "two triple points sharing a line",
            coordinate(&["y = 0", "x = 0", "y = x", "x + y = 1", "y = 2x - 2"], true),
            expected(5, 0, 2, None),
        ),
        "star7-abstract" => (
            "three triple points on a common line, abstract incidences",
            Arrangement::abstract_points(7, vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]]),
            expected(7, 0, 3, None),
        ),
        "triangle6" => (
            "three triple points at the vertices of a triangle",
            coordinate(&TRIANGLE6, true),
            expected(6, 1, 3, Some((6, 5))),
        ),
        "neartriangle7" => {
            let mut eqs = TRIANGLE6.to_vec();
            eqs.push("3x + 5y = 11");
            ("the triangle arrangement and a generic line", coordinate(&eqs, true), expected(7, 1, 3, Some((6, 5))))
        }
        "two-triangles-abstract" => (
            "two disjoint triangle configurations, abstract incidences",
            Arrangement::abstract_points(
                12,
                vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5], vec![6, 7, 9], vec![6, 8, 10], vec![7, 8, 11]],
            ),
            expected(12, 2, 6, Some((6, 5))),
        ),
        "square8-abstract" => (
            "four triple points at the corners of a quadrilateral, abstract incidences",
            Arrangement::abstract_points(8, vec![vec![0, 1, 4], vec![0, 3, 7], vec![1, 2, 5], vec![2, 3, 6]]),
            expected(8, 1, 4, Some((8, 7))),
        ),
        "braid-a3-generic" => (
            "affine picture of the braid arrangement (parallels allowed) plus a generic line",
            coordinate(&["x = 0", "y = 0", "y = x", "x = 1", "y = 1", "x + 2y = 5"], false),
            Expected { chart_line: Some(5), ..expected(6, 3, 4, Some((6, 5))) },
        ),
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    };
    Ok(CatalogEntry { name: name.to_string(), description: description.to_string(), arrangement, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::validate;

    #[test]
    fn every_entry_is_valid() {
        for name in all_catalog_names() {
            let e = load_catalog(&name).unwrap();
            assert!(validate(&e.arrangement).is_empty(), "{}", e.name);
            assert_eq!(e.arrangement.n_lines(), e.expected.n_lines, "{}", e.name);
        }
    }

    #[test]
    fn parametric_pencils() {
        let e = load_catalog("pencil-6").unwrap();
        assert_eq!(e.arrangement.n_lines(), 6);
        assert_eq!(e.expected.g2g3_rank, 10);
        assert!(load_catalog("pencil-2").is_err());
        assert!(load_catalog("pencil-x").is_err());
        assert!(matches!(load_catalog("nope"), Err(Error::UnknownCatalogEntry(_))));
    }
}
