//! The first two lower central series quotients of the complement group,
//! computed from the lattice alone.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IncidenceLattice, PointId};
use crate::linalg::{hnf, inverse_unimodular, rank, snf, Matrix};
use crate::presentation::Word;
use crate::scalar::ExactField;

/// `G/G₂`, free abelian on the classes of the line generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationSpace {
    pub rank: usize,
    pub labels: Vec<String>,
}

impl AbelianizationSpace {
    pub fn of<T: ExactField>(lat: &IncidenceLattice<T>) -> Self {
        AbelianizationSpace { rank: lat.n_lines(), labels: lat.labels().to_vec() }
    }
}

/// The summand `C_p` of `G₂/G₃` contributed by one point.
///
/// Local generators are the commutators `[Γ_i, Γ_j]`, `i < j`, of lines
/// through the point; relations say that each `Γ_y` commutes with the product
/// of all lines through the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSummand {
    pub point: PointId,
    pub lines: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    /// One row per line through the point, one column per pair.
    pub relation_matrix: Matrix<BigInt>,
    pub rank: usize,
    /// Indices into `pairs` of the pairs whose classes form the chosen basis.
    pub basis: Vec<usize>,
    /// `pairs × rank`: maps pair coordinates to basis coordinates.
    projection: Matrix<BigInt>,
}

impl PointSummand {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn basis_pairs(&self) -> Vec<(usize, usize)> {
        self.basis.iter().map(|&k| self.pairs[k]).collect()
    }

    fn pair_position(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.binary_search(&(i.min(j), i.max(j))).ok()
    }

    /// Basis coordinates of a vector over the local pairs.
    pub fn project(&self, pair_coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if pair_coords.len() != self.pairs.len() {
            return Err(Error::DimensionMismatch { expected: self.pairs.len(), got: pair_coords.len() });
        }
        Ok(self.projection.vec_mul(pair_coords))
    }

    /// Basis coordinates of the class of `[Γ_i, Γ_j]`.
    pub fn pair_class(&self, i: usize, j: usize) -> Option<Vec<BigInt>> {
        if i == j {
            return Some(vec![BigInt::zero(); self.rank]);
        }
        let k = self.pair_position(i, j)?;
        let mut row = self.projection.row(k).to_vec();
        if i > j {
            row.iter_mut().for_each(|x| *x = -x.clone());
        }
        Some(row)
    }
}

/// Builds `C_p` for one point of the lattice.
pub fn point_summand<T: ExactField>(lat: &IncidenceLattice<T>, p: PointId) -> Result<PointSummand> {
    let lines = lat.point(p)?.lines().to_vec();
    let m = lines.len();
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).map(|(a, b)| (lines[a], lines[b])).collect();
    let col = |i: usize, j: usize| pairs.binary_search(&(i.min(j), i.max(j))).unwrap();

    // row y: sum over x != y of [Γ_x, Γ_y], with [Γ_x, Γ_y] = -[Γ_y, Γ_x]
    let rows: Vec<Vec<BigInt>> = lines
        .iter()
        .map(|&y| {
            let mut row = vec![BigInt::zero(); pairs.len()];
            for &x in lines.iter().filter(|&&x| x != y) {
                row[col(x, y)] += if x < y { BigInt::one() } else { -BigInt::one() };
            }
            row
        })
        .collect();
    let relation_matrix = Matrix::from_rows_with_cols(pairs.len(), rows);

    let smith = snf(&relation_matrix);
    if smith.invariant_factors().iter().any(|d| !d.is_one()) || smith.rank() + 1 != m {
        return Err(Error::Torsion(p.0));
    }
    let r = hnf(&relation_matrix);
    let quotient_rank = pairs.len() - r.rows();

    // lexicographically first pairs completing the relation rows to a basis
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = r.clone();
    for k in 0..pairs.len() {
        if chosen.len() == quotient_rank {
            break;
        }
        let candidate = current.stack(&unit_row(pairs.len(), k));
        if rank(&candidate) > current.rows() {
            chosen.push(k);
            current = candidate;
        }
    }
    let inverse = inverse_unimodular(&current).ok_or(Error::Torsion(p.0))?;
    let projection = inverse.column_slice(r.rows(), pairs.len());
    Ok(PointSummand { point: p, lines, pairs, relation_matrix, rank: quotient_rank, basis: chosen, projection })
}

fn unit_row(n: usize, k: usize) -> Matrix<BigInt> {
    let mut row = vec![BigInt::zero(); n];
    row[k] = BigInt::one();
    Matrix::from_rows_with_cols(n, vec![row])
}

/// `G₂/G₃ = ⨁_p C_p` over all points of the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2G3 {
    summands: Vec<PointSummand>,
    offsets: Vec<usize>,
    total_rank: usize,
}

pub fn g2g3<T: ExactField>(lat: &IncidenceLattice<T>) -> Result<G2G3> {
    let summands = lat.points().iter().map(|p| point_summand(lat, p.id())).collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(summands.len());
    let mut total_rank = 0;
    for s in &summands {
        offsets.push(total_rank);
        total_rank += s.rank;
    }
    Ok(G2G3 { summands, offsets, total_rank })
}

impl G2G3 {
    pub fn summands(&self) -> &[PointSummand] {
        &self.summands
    }

    pub fn summand(&self, p: PointId) -> Result<&PointSummand> {
        self.summands.get(p.0).ok_or(Error::UnknownPoint(p.0))
    }

    pub fn total_rank(&self) -> usize {
        self.total_rank
    }

    /// Position of the first coordinate of `C_p` in flattened vectors.
    pub fn offset(&self, p: PointId) -> Result<usize> {
        self.offsets.get(p.0).copied().ok_or(Error::UnknownPoint(p.0))
    }

    pub fn zero(&self) -> G2G3Element {
        G2G3Element { components: self.summands.iter().map(|s| vec![BigInt::zero(); s.rank]).collect() }
    }

    /// Inverse of [`G2G3Element::flatten`].
    pub fn unflatten(&self, flat: &[BigInt]) -> Result<G2G3Element> {
        if flat.len() != self.total_rank {
            return Err(Error::DimensionMismatch { expected: self.total_rank, got: flat.len() });
        }
        let components =
            self.summands.iter().zip(&self.offsets).map(|(s, &o)| flat[o..o + s.rank].to_vec()).collect();
        Ok(G2G3Element { components })
    }

    /// Class of `[Γ_i, Γ_j]`, supported on the point where the two lines meet.
    pub fn commutator_class(&self, i: usize, j: usize) -> Result<G2G3Element> {
        let mut out = self.zero();
        if i == j {
            return Ok(out);
        }
        let (k, class) = self
            .summands
            .iter()
            .enumerate()
            .find_map(|(k, s)| s.pair_class(i, j).map(|c| (k, c)))
            .ok_or(Error::ParallelLines(i.min(j), i.max(j)))?;
        out.components[k] = class;
        Ok(out)
    }

    /// Image in `G₂/G₃` of a word whose exponent sums all vanish.
    ///
    /// Collecting letters into ascending order in a class-2 quotient, each
    /// time `Γ_j^e` passes `Γ_i^f` with `i < j` a factor `[Γ_j, Γ_i]^{ef}` is
    /// produced.
    pub fn class_of_word(&self, w: &Word, n_lines: usize) -> Result<G2G3Element> {
        let sums = w.exponent_sums(n_lines.max(w.max_generator().map_or(0, |g| g + 1)));
        if sums.iter().any(|&s| s != 0) {
            return Err(Error::Unsupported(format!("word {w} is not in the commutator subgroup")));
        }
        let letters = w.letters();
        let mut out = self.zero();
        let mut seen = vec![0i64; sums.len()];
        for l in letters {
            for (j, &e) in seen.iter().enumerate().skip(l.generator + 1) {
                if e != 0 {
                    out = out.add(&self.commutator_class(j, l.generator)?.scale(&BigInt::from(e * l.exponent)));
                }
            }
            seen[l.generator] += l.exponent;
        }
        Ok(out)
    }
}

/// An element of `G₂/G₃`: per-point coordinates in the chosen bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G2G3Element {
    components: Vec<Vec<BigInt>>,
}

impl G2G3Element {
    pub fn components(&self) -> &[Vec<BigInt>] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        G2G3Element {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        G2G3Element { components: self.components.iter().map(|c| c.iter().map(|x| x * k).collect()).collect() }
    }

    /// Concatenation of all components.
    pub fn flatten(&self) -> Vec<BigInt> {
        self.components.iter().flatten().cloned().collect()
    }
}

/// The projection `ξ_r` onto the summand of point `r`.
pub fn xi_projection(x: &G2G3Element, r: PointId) -> Result<Vec<BigInt>> {
    x.components.get(r.0).cloned().ok_or(Error::UnknownPoint(r.0))
}

/// Number of basic commutators of the given weight (2 or 3) in the free group
/// of rank `n`, by enumeration.
pub fn free_group_lcs_oracle(n: usize, weight: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Unsupported("free group rank must be at least 1".into()));
    }
    // weight 2: [x_j, x_i] with j > i
    let weight_two: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (j, i))).collect();
    match weight {
        2 => Ok(weight_two.len()),
        // weight 3: [[x_j, x_i], x_k] with k >= i
        3 => Ok(weight_two.iter().map(|&(_, i)| (i..n).count()).sum()),
        _ => Err(Error::Unsupported(format!("weight {weight} layer"))),
    }
}
