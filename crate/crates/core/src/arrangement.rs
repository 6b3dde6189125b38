//! Line arrangements in coordinate or abstract (incidence-only) form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// Scales `(a, b, c)` so that the first nonzero of `(a, b)` is one.
pub fn normalize<T: ExactField>(a: T, b: T, c: T) -> Result<(T, T, T)> {
    let lead = if !a.is_zero() {
        a.clone()
    } else if !b.is_zero() {
        b.clone()
    } else {
        return Err(Error::DegenerateLine);
    };
    Ok((a / lead.clone(), b / lead.clone(), c / lead))
}

/// The affine line `a·x + b·y = c`, always stored normalized.
///
/// Two `Line`s are equal exactly when they have the same locus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: ExactField> Line<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let (a, b, c) = normalize(a, b, c)?;
        Ok(Line { a, b, c })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    /// Normalized `(a, b)`; two lines are parallel iff their directions agree.
    pub fn direction(&self) -> (T, T) {
        (self.a.clone(), self.b.clone())
    }

    pub fn contains(&self, x: &T, y: &T) -> bool {
        self.a.clone() * x.clone() + self.b.clone() * y.clone() == self.c
    }
}

impl<T: ExactField> fmt::Display for Line<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (coef, var) in [(&self.a, "x"), (&self.b, "y")] {
            if coef.is_zero() {
                continue;
            }
            let body = if coef.abs().is_one() { var.to_string() } else { format!("{} {var}", coef.abs()) };
            let sign = if coef.is_negative() { "-" } else { "+" };
            if terms.is_empty() {
                terms.push(if coef.is_negative() { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{sign} {body}"));
            }
        }
        write!(f, "{} = {}", terms.join(" "), self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Geometry<T> {
    Coordinate(Vec<Line<T>>),
    /// Multiple points only, each a set of line indices; every pair of lines
    /// not listed together meets in an implicit simple point.
    Abstract(Vec<Vec<usize>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Coordinate,
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement<T> {
    labels: Vec<String>,
    geometry: Geometry<T>,
    no_parallels: bool,
}

impl<T: ExactField> Arrangement<T> {
    pub fn coordinate(lines: Vec<Line<T>>, no_parallels: bool) -> Self {
        let labels = default_labels(lines.len());
        Arrangement { labels, geometry: Geometry::Coordinate(lines), no_parallels }
    }

    /// Abstract arrangements carry no direction data and are treated as
    /// having no parallel lines.
    pub fn abstract_points(n_lines: usize, multiple_points: Vec<Vec<usize>>) -> Self {
        Arrangement {
            labels: default_labels(n_lines),
            geometry: Geometry::Abstract(multiple_points),
            no_parallels: true,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn geometry(&self) -> &Geometry<T> {
        &self.geometry
    }

    pub fn no_parallels(&self) -> bool {
        self.no_parallels
    }

    pub fn mode(&self) -> Mode {
        match self.geometry {
            Geometry::Coordinate(_) => Mode::Coordinate,
            Geometry::Abstract(_) => Mode::Abstract,
        }
    }

    pub fn n_lines(&self) -> usize {
        self.labels.len()
    }

    pub fn lines(&self) -> Option<&[Line<T>]> {
        match &self.geometry {
            Geometry::Coordinate(lines) => Some(lines),
            Geometry::Abstract(_) => None,
        }
    }

    /// Partition of the line indices by direction. Abstract arrangements give
    /// singleton classes.
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        match &self.geometry {
            Geometry::Abstract(_) => (0..self.n_lines()).map(|i| vec![i]).collect(),
            Geometry::Coordinate(lines) => {
                let mut classes: BTreeMap<(T, T), Vec<usize>> = BTreeMap::new();
                for (i, l) in lines.iter().enumerate() {
                    classes.entry(l.direction()).or_default().push(i);
                }
                let mut out: Vec<Vec<usize>> = classes.into_values().collect();
                out.sort();
                out
            }
        }
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("L{i}")).collect()
}

/// A broken arrangement invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LabelCount { labels: usize, lines: usize },
    DuplicateLine { first: usize, second: usize },
    ParallelPair { first: usize, second: usize },
    PointTooSmall { point: usize, size: usize },
    LineOutOfRange { point: usize, line: usize },
    RepeatedLine { point: usize, line: usize },
    PairInTwoPoints { first: usize, second: usize, points: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LabelCount { labels, lines } => write!(f, "{labels} labels for {lines} lines"),
            Violation::DuplicateLine { first, second } => write!(f, "lines {first} and {second} are equal"),
            Violation::ParallelPair { first, second } => write!(f, "parallel pair ({first}, {second})"),
            Violation::PointTooSmall { point, size } => {
                write!(f, "listed point {point} has only {size} lines (need at least 3)")
            }
            Violation::LineOutOfRange { point, line } => write!(f, "listed point {point} uses unknown line {line}"),
            Violation::RepeatedLine { point, line } => write!(f, "listed point {point} repeats line {line}"),
            Violation::PairInTwoPoints { first, second, points } => {
                write!(f, "pair ({first}, {second}) in two points {} and {}", points.0, points.1)
            }
        }
    }
}

/// Checks every structural invariant; an empty list means the arrangement is valid.
pub fn validate<T: ExactField>(arr: &Arrangement<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    match &arr.geometry {
        Geometry::Coordinate(lines) => {
            if arr.labels.len() != lines.len() {
                out.push(Violation::LabelCount { labels: arr.labels.len(), lines: lines.len() });
            }
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    if lines[i] == lines[j] {
                        out.push(Violation::DuplicateLine { first: i, second: j });
                    } else if arr.no_parallels && lines[i].direction() == lines[j].direction() {
                        out.push(Violation::ParallelPair { first: i, second: j });
                    }
                }
            }
        }
        Geometry::Abstract(points) => {
            let n = arr.labels.len();
            let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for (p, members) in points.iter().enumerate() {
                if members.len() < 3 {
                    out.push(Violation::PointTooSmall { point: p, size: members.len() });
                }
                let mut sorted = members.clone();
                sorted.sort_unstable();
                for w in sorted.windows(2) {
                    if w[0] == w[1] {
                        out.push(Violation::RepeatedLine { point: p, line: w[0] });
                    }
                }
                sorted.dedup();
                for &l in &sorted {
                    if l >= n {
                        out.push(Violation::LineOutOfRange { point: p, line: l });
                    }
                }
                for (x, &i) in sorted.iter().enumerate() {
                    for &j in &sorted[x + 1..] {
                        if let Some(&q) = seen.get(&(i, j)) {
                            out.push(Violation::PairInTwoPoints { first: i, second: j, points: (q, p) });
                        } else {
                            seen.insert((i, j), p);
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn line(a: i64, b: i64, c: i64) -> Line<Rational> {
        Line::new(q(a), q(b), q(c)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(q(2), q(4), q(6)).unwrap(), (q(1), q(2), q(3)));
        assert_eq!(normalize(q(0), q(5), q(10)).unwrap(), (q(0), q(1), q(2)));
        assert_eq!(normalize(q(1), q(0), q(0)).unwrap(), (q(1), q(0), q(0)));
        assert!(matches!(normalize(q(0), q(0), q(1)), Err(Error::DegenerateLine)));
    }

    #[test]
    fn equal_loci_compare_equal() {
        assert_eq!(line(2, 4, 6), line(-1, -2, -3));
        assert_ne!(line(1, 2, 3), line(1, 2, 4));
    }

    #[test]
    fn validate_generic3() {
        let arr = Arrangement::coordinate(vec![line(0, 1, 0), line(1, 0, 0), line(1, 1, 1)], true);
        assert!(validate(&arr).is_empty());
    }

    #[test]
    fn validate_parallel_pair() {
        let arr = Arrangement::coordinate(vec![line(0, 1, 0), line(0, 1, 1)], true);
        assert_eq!(validate(&arr), vec![Violation::ParallelPair { first: 0, second: 1 }]);
        let relaxed = Arrangement::coordinate(vec![line(0, 1, 0), line(0, 1, 1)], false);
        assert!(validate(&relaxed).is_empty());
    }

    #[test]
    fn validate_duplicate_line() {
        let arr = Arrangement::coordinate(vec![line(1, 1, 1), line(2, 2, 2)], false);
        assert_eq!(validate(&arr), vec![Violation::DuplicateLine { first: 0, second: 1 }]);
    }

    #[test]
    fn validate_abstract_pair_in_two_points() {
        let arr = Arrangement::<Rational>::abstract_points(5, vec![vec![1, 2, 3], vec![1, 2, 4]]);
        let v = validate(&arr);
        assert_eq!(v, vec![Violation::PairInTwoPoints { first: 1, second: 2, points: (0, 1) }]);
        assert!(v[0].to_string().contains("pair (1, 2)"));
    }

    #[test]
    fn validate_abstract_small_and_out_of_range() {
        let arr = Arrangement::<Rational>::abstract_points(3, vec![vec![0, 1], vec![0, 2, 7]]);
        let v = validate(&arr);
        assert!(v.contains(&Violation::PointTooSmall { point: 0, size: 2 }));
        assert!(v.contains(&Violation::LineOutOfRange { point: 1, line: 7 }));
    }

    #[test]
    fn display_line() {
        assert_eq!(line(1, 1, 1).to_string(), "x + y = 1");
        assert_eq!(line(0, 2, -4).to_string(), "y = -2");
        assert_eq!(line(-2, 1, 0).to_string(), "x - 1/2 y = 0");
    }
}
