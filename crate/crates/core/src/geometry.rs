//! Exact intersection geometry and projective bookkeeping.

use std::collections::HashMap;

use crate::arrangement::{validate, Arrangement, Geometry, Line};
use crate::error::{Error, Result};
use crate::lattice::{IncidenceLattice, LatticePoint, Location};
use crate::scalar::ExactField;

pub const LINE_AT_INFINITY: &str = "L_inf";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection<T> {
    Point(T, T),
    Parallel,
}

/// Solves the 2×2 system exactly.
pub fn intersect<T: ExactField>(l1: &Line<T>, l2: &Line<T>) -> Result<Intersection<T>> {
    if l1 == l2 {
        return Err(Error::EqualLines(0, 1));
    }
    let det = l1.a().clone() * l2.b().clone() - l2.a().clone() * l1.b().clone();
    if det.is_zero() {
        return Ok(Intersection::Parallel);
    }
    let x = (l1.c().clone() * l2.b().clone() - l2.c().clone() * l1.b().clone()) / det.clone();
    let y = (l1.a().clone() * l2.c().clone() - l2.a().clone() * l1.c().clone()) / det;
    Ok(Intersection::Point(x, y))
}

/// Groups all pairwise intersections into lattice points by exact equality.
///
/// Point ids follow the first line pair (in lexicographic order) meeting there.
pub fn build_lattice<T: ExactField>(arr: &Arrangement<T>) -> Result<IncidenceLattice<T>> {
    let violations = validate(arr);
    if !violations.is_empty() {
        return Err(Error::InvalidArrangement(violations));
    }
    let labels = arr.labels().to_vec();
    match arr.geometry() {
        Geometry::Abstract(points) => IncidenceLattice::from_abstract(labels, points),
        Geometry::Coordinate(lines) => {
            let mut index: HashMap<(T, T), usize> = HashMap::new();
            let mut entries: Vec<(Vec<usize>, Location<T>)> = Vec::new();
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    match intersect(&lines[i], &lines[j]).map_err(|_| Error::EqualLines(i, j))? {
                        Intersection::Parallel => {
                            if arr.no_parallels() {
                                return Err(Error::ParallelLines(i, j));
                            }
                        }
                        Intersection::Point(x, y) => {
                            let k = *index.entry((x.clone(), y.clone())).or_insert_with(|| {
                                entries.push((Vec::new(), Location::Affine(x, y)));
                                entries.len() - 1
                            });
                            let members = &mut entries[k].0;
                            for l in [i, j] {
                                if !members.contains(&l) {
                                    members.push(l);
                                }
                            }
                        }
                    }
                }
            }
            IncidenceLattice::from_points(labels, entries)
        }
    }
}

/// An affine lattice together with its closure in the projective plane.
///
/// The closed lattice has one extra line, the line at infinity, with index
/// `n_lines`; base points keep their ids and the infinity points follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveClosure<T> {
    base: IncidenceLattice<T>,
    closed: IncidenceLattice<T>,
}

impl<T: ExactField> ProjectiveClosure<T> {
    /// Builds the lattice of `arr` and closes it using its parallel classes.
    pub fn of_arrangement(arr: &Arrangement<T>) -> Result<Self> {
        projectivize(&build_lattice(arr)?, &arr.parallel_classes())
    }

    /// Closure of a lattice in which every pair of lines meets.
    pub fn of_complete(lat: &IncidenceLattice<T>) -> Result<Self> {
        let classes: Vec<Vec<usize>> = (0..lat.n_lines()).map(|i| vec![i]).collect();
        projectivize(lat, &classes)
    }

    pub fn base(&self) -> &IncidenceLattice<T> {
        &self.base
    }

    pub fn closed(&self) -> &IncidenceLattice<T> {
        &self.closed
    }

    pub fn line_at_infinity(&self) -> usize {
        self.base.n_lines()
    }

    pub fn infinity_points(&self) -> &[LatticePoint<T>] {
        &self.closed.points()[self.base.points().len()..]
    }

    pub fn has_parallels(&self) -> bool {
        self.infinity_points().iter().any(|p| p.multiplicity() > 2)
    }

    /// Removes a line of the closed arrangement that meets the others only in
    /// simple points, leaving an affine arrangement without parallels in the
    /// complement of that line. Locations are kept as they were, so ordering
    /// along lines is inherited from the original chart.
    pub fn affine_chart(&self, line: usize) -> Result<IncidenceLattice<T>> {
        if !self.closed.is_generic_line(line)? {
            return Err(Error::NotGeneric(line));
        }
        self.closed.delete_line(line)
    }
}

/// An arrangement together with the affine model used for group computations.
///
/// Without parallels the model is the arrangement itself. Otherwise a line
/// meeting the others only in simple points is moved to infinity, which keeps
/// the multiple points (and hence the graph) of the projective closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReduction<T> {
    pub closure: ProjectiveClosure<T>,
    /// Index in the closed lattice of the line sent to infinity, if any.
    pub chart_line: Option<usize>,
    pub model: ProjectiveClosure<T>,
}

impl<T: ExactField> ProjectiveClosure<T> {
    /// Lowest-index line of the closed lattice through no multiple point.
    pub fn first_generic_line(&self) -> Option<usize> {
        (0..self.closed.n_lines()).find(|&l| self.closed.is_generic_line(l).unwrap_or(false))
    }

    /// Affine model of the closure, choosing a chart line when needed.
    pub fn reduce(&self, chart_line: Option<usize>) -> Result<AffineReduction<T>> {
        if !self.base.is_complete() || chart_line.is_some() {
            let line = match chart_line {
                Some(l) => l,
                None => self.first_generic_line().ok_or_else(|| {
                    Error::InconsistentLattice("arrangement has parallels and no generic line to move to infinity".into())
                })?,
            };
            let chart = self.affine_chart(line)?;
            let model = ProjectiveClosure::of_complete(&chart)?;
            return Ok(AffineReduction { closure: self.clone(), chart_line: Some(line), model });
        }
        Ok(AffineReduction { closure: self.clone(), chart_line: None, model: self.clone() })
    }
}

/// Builds the closure of `arr` and its affine model.
pub fn affine_reduction<T: ExactField>(arr: &Arrangement<T>) -> Result<AffineReduction<T>> {
    ProjectiveClosure::of_arrangement(arr)?.reduce(None)
}

/// Adjoins the line at infinity and one infinity point per parallel class.
pub fn projectivize<T: ExactField>(
    lat: &IncidenceLattice<T>,
    parallel_classes: &[Vec<usize>],
) -> Result<ProjectiveClosure<T>> {
    let n = lat.n_lines();
    let mut class_of = vec![None; n];
    for (k, class) in parallel_classes.iter().enumerate() {
        for &l in class {
            if l >= n || class_of[l].is_some() {
                return Err(Error::NotAPartition(n));
            }
            class_of[l] = Some(k);
        }
    }
    if class_of.iter().any(Option::is_none) {
        return Err(Error::NotAPartition(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            let parallel = class_of[i] == class_of[j];
            let meet = lat.point_of_pair(i, j).is_some();
            if parallel == meet {
                let what = if parallel { "meet although declared parallel" } else { "do not meet" };
                return Err(Error::InconsistentLattice(format!("lines {i} and {j} {what}")));
            }
        }
    }
    let mut labels = lat.labels().to_vec();
    labels.push(LINE_AT_INFINITY.to_string());
    let mut entries: Vec<(Vec<usize>, Location<T>)> =
        lat.points().iter().map(|p| (p.lines().to_vec(), p.location().clone())).collect();
    for (k, class) in parallel_classes.iter().enumerate() {
        let mut lines = class.clone();
        lines.push(n);
        entries.push((lines, Location::Infinity(k)));
    }
    let closed = IncidenceLattice::from_points(labels, entries)?;
    Ok(ProjectiveClosure { base: lat.clone(), closed })
}

/// Deletes line `i` from a lattice.
pub fn delete_line<T: ExactField>(lat: &IncidenceLattice<T>, i: usize) -> Result<IncidenceLattice<T>> {
    lat.delete_line(i)
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
    fn intersect_examples() {
        assert_eq!(intersect(&line(0, 1, 0), &line(1, 0, 0)).unwrap(), Intersection::Point(q(0), q(0)));
        assert_eq!(intersect(&line(0, 1, 0), &line(1, 1, 1)).unwrap(), Intersection::Point(q(1), q(0)));
        assert_eq!(intersect(&line(0, 1, 0), &line(0, 1, 1)).unwrap(), Intersection::Parallel);
        assert!(intersect(&line(1, 1, 1), &line(2, 2, 2)).is_err());
    }

    #[test]
    fn parallel_lines_rejected_when_flagged() {
        let mut arr = Arrangement::coordinate(vec![line(0, 1, 0), line(0, 1, 1)], false);
        assert_eq!(build_lattice(&arr).unwrap().points().len(), 0);
        arr = Arrangement::coordinate(vec![line(0, 1, 0), line(0, 1, 1)], true);
        assert!(matches!(build_lattice(&arr), Err(Error::InvalidArrangement(_))));
    }

    #[test]
    fn projectivize_parallel_class() {
        let arr = Arrangement::coordinate(vec![line(0, 1, 0), line(0, 1, 1), line(1, 0, 0)], false);
        let pc = ProjectiveClosure::of_arrangement(&arr).unwrap();
        let triple: Vec<_> = pc.infinity_points().iter().filter(|p| p.is_multiple()).collect();
        assert_eq!(triple.len(), 1);
        assert_eq!(triple[0].lines(), &[0, 1, 3]);
        assert!(pc.has_parallels());
        assert!(pc.closed().is_complete());
    }

    #[test]
    fn reduction_moves_generic_line_to_infinity() {
        let arr = Arrangement::coordinate(
            vec![line(1, 0, 0), line(0, 1, 0), line(1, -1, 0), line(1, 0, 1), line(0, 1, 1), line(1, 2, 5)],
            false,
        );
        let r = affine_reduction(&arr).unwrap();
        assert_eq!(r.chart_line, Some(5));
        assert!(r.model.base().is_complete());
        assert_eq!(r.model.base().labels()[5], LINE_AT_INFINITY);
        assert_eq!(r.model.closed().multiple_points().count(), r.closure.closed().multiple_points().count());

        let plain = Arrangement::coordinate(vec![line(1, 0, 0), line(0, 1, 0)], true);
        assert_eq!(affine_reduction(&plain).unwrap().chart_line, None);
    }

    #[test]
    fn projectivize_rejects_bad_partition() {
        let arr = Arrangement::coordinate(vec![line(0, 1, 0), line(1, 0, 0)], true);
        let lat = build_lattice(&arr).unwrap();
        assert!(matches!(projectivize(&lat, &[vec![0]]), Err(Error::NotAPartition(2))));
        assert!(matches!(projectivize(&lat, &[vec![0, 1]]), Err(Error::InconsistentLattice(_))));
    }
}
