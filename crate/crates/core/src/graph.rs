//! The graph on the multiple points of an arrangement, joined along shared lines.
//!
//! Vertices are points of multiplicity at least three. Along every line that
//! carries `k ≥ 2` of them, consecutive ones are joined, giving a path of
//! `k − 1` edges; three collinear multiple points therefore never form a
//! triangle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ProjectiveClosure;
use crate::lattice::{IncidenceLattice, PointId};
use crate::scalar::ExactField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub a: PointId,
    pub b: PointId,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplePointGraph {
    vertices: Vec<PointId>,
    multiplicity: BTreeMap<PointId, usize>,
    edges: Vec<GraphEdge>,
    adjacency: BTreeMap<PointId, Vec<(PointId, usize)>>,
}

/// A cycle of multiple points. `lines[k]` joins `points[k]` to
/// `points[(k + 1) % r]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub points: Vec<PointId>,
    pub lines: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks the cycle against a lattice: consecutive points share the stated
    /// line, carriers are pairwise distinct, and no line passes through two
    /// witness points that are not cyclic neighbours.
    pub fn verify<T: ExactField>(&self, lat: &IncidenceLattice<T>) -> Result<()> {
        let r = self.points.len();
        if r < 3 || self.lines.len() != r {
            return Err(Error::CycleMismatch(format!("{r} points and {} lines", self.lines.len())));
        }
        for (k, &p) in self.points.iter().enumerate() {
            let next = self.points[(k + 1) % r];
            let line = self.lines[k];
            if !lat.multiple_point(p)?.contains_line(line) || !lat.multiple_point(next)?.contains_line(line) {
                return Err(Error::CycleMismatch(format!("line {line} does not join {p} and {next}")));
            }
        }
        let distinct: BTreeSet<_> = self.lines.iter().collect();
        if distinct.len() != r || self.points.iter().collect::<BTreeSet<_>>().len() != r {
            return Err(Error::CycleMismatch("repeated point or carrier line".into()));
        }
        for line in 0..lat.n_lines() {
            let hits: Vec<usize> =
                (0..r).filter(|&k| lat.points()[self.points[k].0].contains_line(line)).collect();
            let ok = match hits.as_slice() {
                [] | [_] => true,
                [x, y] => y - x == 1 || (*x == 0 && *y == r - 1),
                _ => false,
            };
            if !ok {
                return Err(Error::CycleMismatch(format!("line {line} is a chord of the cycle")));
            }
        }
        Ok(())
    }
}

impl MultiplePointGraph {
    pub fn from_lattice<T: ExactField>(lat: &IncidenceLattice<T>) -> Self {
        let multiplicity: BTreeMap<PointId, usize> =
            lat.multiple_points().map(|p| (p.id(), p.multiplicity())).collect();
        let vertices: Vec<PointId> = multiplicity.keys().copied().collect();
        let mut edges = Vec::new();
        for line in 0..lat.n_lines() {
            let on: Vec<PointId> =
                lat.points_on_line(line).into_iter().filter(|p| multiplicity.contains_key(p)).collect();
            for w in on.windows(2) {
                edges.push(GraphEdge { a: w[0], b: w[1], line });
            }
        }
        let mut adjacency: BTreeMap<PointId, Vec<(PointId, usize)>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &edges {
            adjacency.get_mut(&e.a).expect("vertex").push((e.b, e.line));
            adjacency.get_mut(&e.b).expect("vertex").push((e.a, e.line));
        }
        MultiplePointGraph { vertices, multiplicity, edges, adjacency }
    }

    pub fn vertices(&self) -> &[PointId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn neighbours(&self, v: PointId) -> &[(PointId, usize)] {
        self.adjacency.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn multiplicity(&self, v: PointId) -> Option<usize> {
        self.multiplicity.get(&v).copied()
    }

    pub fn component_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in self.neighbours(v) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// First Betti number `E − V + C`.
    pub fn beta(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    /// Forest test by union-find, independent of [`Self::beta`].
    pub fn is_forest(&self) -> bool {
        let index: BTreeMap<PointId, usize> = self.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, index[&e.a]), find(&mut parent, index[&e.b]));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Carrier lines with the vertices each one passes through.
    fn carriers(&self) -> BTreeMap<usize, BTreeSet<PointId>> {
        let mut carriers: BTreeMap<usize, BTreeSet<PointId>> = BTreeMap::new();
        for e in &self.edges {
            let set = carriers.entry(e.line).or_default();
            set.insert(e.a);
            set.insert(e.b);
        }
        carriers
    }

    /// A shortest cycle, or `None` when the graph is a forest.
    ///
    /// The search runs on the point–line incidence graph (points joined to the
    /// carrier lines through them), which has the same cycle rank as this
    /// graph. A shortest cycle there uses pairwise distinct lines and has no
    /// chord: a line through two non-adjacent cycle points would close a
    /// shorter one. Length is the number of points; ties go to the smallest
    /// point sequence, read from the smallest point in its smaller direction.
    pub fn find_minimal_cycle(&self) -> Option<CycleWitness> {
        let carriers = self.carriers();
        let mut lines_at: BTreeMap<PointId, Vec<usize>> = BTreeMap::new();
        for (&line, pts) in &carriers {
            for &p in pts {
                lines_at.entry(p).or_default().push(line);
            }
        }
        let girth = self.incidence_girth(&carriers, &lines_at)?;
        let hops = self.collinear_distances(&carriers, &lines_at);

        let mut best: Option<CycleWitness> = None;
        for &start in &self.vertices {
            let mut search = CycleSearch {
                carriers: &carriers,
                lines_at: &lines_at,
                hops: &hops,
                start,
                target: girth,
                points: vec![start],
                lines: Vec::new(),
                best: &mut best,
            };
            search.extend();
            if best.is_some() {
                break;
            }
        }
        best
    }

    /// Shortest cycle length of the incidence graph, counted in points.
    fn incidence_girth(
        &self,
        carriers: &BTreeMap<usize, BTreeSet<PointId>>,
        lines_at: &BTreeMap<PointId, Vec<usize>>,
    ) -> Option<usize> {
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
        enum Node {
            Point(PointId),
            Line(usize),
        }
        let neighbours = |n: Node| -> Vec<Node> {
            match n {
                Node::Point(p) => lines_at.get(&p).map_or(Vec::new(), |ls| ls.iter().map(|&l| Node::Line(l)).collect()),
                Node::Line(l) => carriers[&l].iter().map(|&p| Node::Point(p)).collect(),
            }
        };
        let mut girth: Option<usize> = None;
        for &s in &self.vertices {
            let mut dist: BTreeMap<Node, (usize, Option<Node>)> = BTreeMap::new();
            dist.insert(Node::Point(s), (0, None));
            let mut queue = VecDeque::from([Node::Point(s)]);
            while let Some(u) = queue.pop_front() {
                let (du, pu) = dist[&u];
                for w in neighbours(u) {
                    if Some(w) == pu {
                        continue;
                    }
                    match dist.get(&w) {
                        Some(&(dw, _)) => {
                            let len = du + dw + 1;
                            girth = Some(girth.map_or(len, |g| g.min(len)));
                        }
                        None => {
                            dist.insert(w, (du + 1, Some(u)));
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        girth.map(|g| g / 2)
    }

    /// All-pairs distances in the collinearity graph (points sharing a carrier).
    fn collinear_distances(
        &self,
        carriers: &BTreeMap<usize, BTreeSet<PointId>>,
        lines_at: &BTreeMap<PointId, Vec<usize>>,
    ) -> BTreeMap<(PointId, PointId), usize> {
        let mut out = BTreeMap::new();
        for &s in &self.vertices {
            let mut dist = BTreeMap::from([(s, 0usize)]);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for l in lines_at.get(&u).into_iter().flatten() {
                    for &w in &carriers[l] {
                        if !dist.contains_key(&w) {
                            dist.insert(w, dist[&u] + 1);
                            queue.push_back(w);
                        }
                    }
                }
            }
            for (w, d) in dist {
                out.insert((s, w), d);
            }
        }
        out
    }

    /// Graphviz rendering; vertices show id and multiplicity, edges their carrier.
    pub fn to_dot<T: ExactField>(&self, lat: &IncidenceLattice<T>) -> String {
        let mut out = String::from("graph G {\n");
        for &v in &self.vertices {
            let _ = writeln!(out, "  {v} [label=\"{v} (m={})\"];", self.multiplicity[&v]);
        }
        for e in &self.edges {
            let label = lat.labels().get(e.line).cloned().unwrap_or_else(|| e.line.to_string());
            let _ = writeln!(out, "  {} -- {} [label=\"{label}\"];", e.a, e.b);
        }
        out.push_str("}\n");
        out
    }
}

struct CycleSearch<'a> {
    carriers: &'a BTreeMap<usize, BTreeSet<PointId>>,
    lines_at: &'a BTreeMap<PointId, Vec<usize>>,
    hops: &'a BTreeMap<(PointId, PointId), usize>,
    start: PointId,
    target: usize,
    points: Vec<PointId>,
    lines: Vec<usize>,
    best: &'a mut Option<CycleWitness>,
}

impl CycleSearch<'_> {
    fn extend(&mut self) {
        let current = *self.points.last().expect("non-empty path");
        let steps_left = self.target - self.points.len();
        for &line in self.lines_at.get(&current).into_iter().flatten() {
            if self.lines.contains(&line) {
                continue;
            }
            if steps_left == 0 {
                if self.carriers[&line].contains(&self.start) && self.points.len() >= 3 {
                    self.lines.push(line);
                    self.offer();
                    self.lines.pop();
                }
                continue;
            }
            for &next in &self.carriers[&line] {
                if next <= self.start || self.points.contains(&next) {
                    continue;
                }
                let back = self.hops.get(&(next, self.start)).copied().unwrap_or(usize::MAX);
                if back > steps_left {
                    continue;
                }
                self.points.push(next);
                self.lines.push(line);
                self.extend();
                self.points.pop();
                self.lines.pop();
            }
        }
    }

    fn offer(&mut self) {
        let better = match self.best.as_ref() {
            None => true,
            Some(b) => self.points < b.points,
        };
        if better {
            *self.best = Some(CycleWitness { points: self.points.clone(), lines: self.lines.clone() });
        }
    }
}

/// Multiple-point graph of the projective closure.
pub fn build_graph<T: ExactField>(pc: &ProjectiveClosure<T>) -> MultiplePointGraph {
    MultiplePointGraph::from_lattice(pc.closed())
}

pub fn beta(g: &MultiplePointGraph) -> usize {
    g.beta()
}

pub fn find_minimal_cycle(g: &MultiplePointGraph) -> Option<CycleWitness> {
    g.find_minimal_cycle()
}
