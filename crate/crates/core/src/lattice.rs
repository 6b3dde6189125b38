//! Intersection lattices: points with their incident lines.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// Index of a point inside its lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

/// Where a point sits, when known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Location<T> {
    Affine(T, T),
    /// On the line at infinity; the payload is the parallel class index.
    Infinity(usize),
    /// Abstract input carries no coordinates.
    Unplaced,
}

impl<T: fmt::Display> fmt::Display for Location<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Affine(x, y) => write!(f, "({x}, {y})"),
            Location::Infinity(class) => write!(f, "infinity[{class}]"),
            Location::Unplaced => write!(f, "-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint<T> {
    id: PointId,
    lines: Vec<usize>,
    location: Location<T>,
}

impl<T> LatticePoint<T> {
    pub fn id(&self) -> PointId {
        self.id
    }

    /// Incident line indices, ascending.
    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn location(&self) -> &Location<T> {
        &self.location
    }

    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn is_multiple(&self) -> bool {
        self.lines.len() >= 3
    }

    pub fn contains_line(&self, line: usize) -> bool {
        self.lines.binary_search(&line).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceLattice<T> {
    labels: Vec<String>,
    points: Vec<LatticePoint<T>>,
    pair_index: BTreeMap<(usize, usize), PointId>,
}

fn ordered_pair(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl<T: ExactField> IncidenceLattice<T> {
    /// Assembles a lattice from `(incident lines, location)` entries; ids follow
    /// the order given.
    pub fn from_points(labels: Vec<String>, entries: Vec<(Vec<usize>, Location<T>)>) -> Result<Self> {
        let n = labels.len();
        let mut points = Vec::with_capacity(entries.len());
        let mut pair_index = BTreeMap::new();
        for (k, (mut lines, location)) in entries.into_iter().enumerate() {
            lines.sort_unstable();
            lines.dedup();
            if lines.len() < 2 {
                return Err(Error::InconsistentLattice(format!("point {k} lies on fewer than two lines")));
            }
            if let Some(&line) = lines.iter().find(|&&l| l >= n) {
                return Err(Error::LineOutOfRange { line, n_lines: n });
            }
            let id = PointId(k);
            for (x, &i) in lines.iter().enumerate() {
                for &j in &lines[x + 1..] {
                    if let Some(prev) = pair_index.insert((i, j), id) {
                        return Err(Error::InconsistentLattice(format!(
                            "lines {i} and {j} meet in both {prev} and {id}"
                        )));
                    }
                }
            }
            points.push(LatticePoint { id, lines, location });
        }
        Ok(IncidenceLattice { labels, points, pair_index })
    }

    /// Lattice of an abstract arrangement: the listed multiple points first,
    /// then one implicit simple point per uncovered pair of lines.
    pub fn from_abstract(labels: Vec<String>, multiple_points: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        let mut entries: Vec<(Vec<usize>, Location<T>)> =
            multiple_points.iter().map(|p| (p.clone(), Location::Unplaced)).collect();
        let mut covered = vec![vec![false; n]; n];
        for p in multiple_points {
            for &i in p {
                for &j in p {
                    if i < n && j < n {
                        covered[i][j] = true;
                    }
                }
            }
        }
        for (i, row) in covered.iter().enumerate() {
            for (j, _) in row.iter().enumerate().skip(i + 1).filter(|(_, &c)| !c) {
                entries.push((vec![i, j], Location::Unplaced));
            }
        }
        Self::from_points(labels, entries)
    }

    pub fn n_lines(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn points(&self) -> &[LatticePoint<T>] {
        &self.points
    }

    pub fn point(&self, id: PointId) -> Result<&LatticePoint<T>> {
        self.points.get(id.0).ok_or(Error::UnknownPoint(id.0))
    }

    pub fn multiple_point(&self, id: PointId) -> Result<&LatticePoint<T>> {
        let p = self.point(id)?;
        if !p.is_multiple() {
            return Err(Error::NotMultiplePoint(id.0));
        }
        Ok(p)
    }

    pub fn multiple_points(&self) -> impl Iterator<Item = &LatticePoint<T>> {
        self.points.iter().filter(|p| p.is_multiple())
    }

    /// The point where lines `i` and `j` meet, if they do.
    pub fn point_of_pair(&self, i: usize, j: usize) -> Option<PointId> {
        self.pair_index.get(&ordered_pair(i, j)).copied()
    }

    pub fn pair_index(&self) -> &BTreeMap<(usize, usize), PointId> {
        &self.pair_index
    }

    /// Every pair of lines meets (no parallels).
    pub fn is_complete(&self) -> bool {
        let n = self.n_lines();
        self.pair_index.len() == n * n.saturating_sub(1) / 2
    }

    /// First pair of lines that does not meet.
    pub fn missing_pair(&self) -> Option<(usize, usize)> {
        let n = self.n_lines();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|p| !self.pair_index.contains_key(p))
    }

    pub fn check_line(&self, line: usize) -> Result<()> {
        if line >= self.n_lines() {
            return Err(Error::LineOutOfRange { line, n_lines: self.n_lines() });
        }
        Ok(())
    }

    /// Points on `line` in order along it: affine points by coordinates (a
    /// valid parameter order on any line), then the rest by id.
    pub fn points_on_line(&self, line: usize) -> Vec<PointId> {
        let mut on: Vec<&LatticePoint<T>> = self.points.iter().filter(|p| p.contains_line(line)).collect();
        on.sort_by(|p, q| match (&p.location, &q.location) {
            (Location::Affine(x1, y1), Location::Affine(x2, y2)) => (x1, y1).cmp(&(x2, y2)),
            (Location::Affine(..), _) => Ordering::Less,
            (_, Location::Affine(..)) => Ordering::Greater,
            _ => p.id.cmp(&q.id),
        });
        on.into_iter().map(|p| p.id).collect()
    }

    /// Σ C(m, 2) over all points.
    pub fn pair_count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum()
    }

    /// Line `line` meets the others only in simple points.
    pub fn is_generic_line(&self, line: usize) -> Result<bool> {
        self.check_line(line)?;
        Ok(self.points.iter().filter(|p| p.contains_line(line)).all(|p| !p.is_multiple()))
    }

    /// Removes `line`: incident points lose it, points left with fewer than
    /// two lines disappear, and higher line indices shift down by one.
    pub fn delete_line(&self, line: usize) -> Result<Self> {
        self.check_line(line)?;
        let mut labels = self.labels.clone();
        labels.remove(line);
        let entries = self
            .points
            .iter()
            .filter_map(|p| {
                let lines: Vec<usize> = p
                    .lines
                    .iter()
                    .filter(|&&l| l != line)
                    .map(|&l| if l > line { l - 1 } else { l })
                    .collect();
                (lines.len() >= 2).then(|| (lines, p.location.clone()))
            })
            .collect();
        Self::from_points(labels, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::default_labels;
    use crate::Rational;

    #[test]
    fn abstract_lattice_materializes_simple_points() {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(4), &[vec![0, 1, 2]]).unwrap();
        assert_eq!(lat.points().len(), 4);
        assert!(lat.is_complete());
        assert_eq!(lat.pair_count(), 6);
        assert_eq!(lat.point_of_pair(2, 0), Some(PointId(0)));
        assert_eq!(lat.point_of_pair(0, 3), Some(PointId(1)));
        assert!(lat.is_generic_line(3).unwrap());
        assert!(!lat.is_generic_line(0).unwrap());
    }

    #[test]
    fn pair_in_two_points_is_rejected() {
        let r = IncidenceLattice::<Rational>::from_points(
            default_labels(3),
            vec![(vec![0, 1], Location::Unplaced), (vec![0, 1, 2], Location::Unplaced)],
        );
        assert!(matches!(r, Err(Error::InconsistentLattice(_))));
    }

    #[test]
    fn unknown_ids() {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(3), &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(lat.point(PointId(5)), Err(Error::UnknownPoint(5))));
        assert!(matches!(lat.delete_line(3), Err(Error::LineOutOfRange { .. })));
    }

    #[test]
    fn delete_line_from_pencil() {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(3), &[vec![0, 1, 2]]).unwrap();
        let reduced = lat.delete_line(2).unwrap();
        assert_eq!(reduced.points().len(), 1);
        assert_eq!(reduced.points()[0].multiplicity(), 2);
        assert_eq!(reduced.labels(), &["L0".to_string(), "L1".to_string()]);
    }
}
