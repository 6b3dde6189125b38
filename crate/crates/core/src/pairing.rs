//! The commutator pairing `G/G₂ × G/G₂ → G₂/G₃` and its stabilizers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IncidenceLattice, PointId};
use crate::lcs::{g2g3, G2G3Element, G2G3};
use crate::linalg::{kernel, Matrix, ZSubgroup};
use crate::scalar::ExactField;

/// Bilinear form recording the class of `[Γ_i, Γ_j]` for every pair of lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingForm {
    n: usize,
    target: G2G3,
    /// `classes[i][j]`, flattened over all summands.
    classes: Vec<Vec<Vec<BigInt>>>,
}

impl PairingForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &G2G3 {
        &self.target
    }

    /// Flattened class of `[Γ_i, Γ_j]`.
    pub fn class(&self, i: usize, j: usize) -> &[BigInt] {
        &self.classes[i][j]
    }

    fn check(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(())
    }

    /// `f(u, v) = Σ u_i v_j · class(i, j)`, flattened.
    pub fn evaluate_flat(&self, u: &[BigInt], v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check(u)?;
        self.check(v)?;
        let mut out = vec![BigInt::zero(); self.target.total_rank()];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(j, x)| *j != i && !x.is_zero()) {
                let k = ui * vj;
                for (o, c) in out.iter_mut().zip(&self.classes[i][j]) {
                    *o += &k * c;
                }
            }
        }
        Ok(out)
    }

    /// `f(u, v)` as an element of `G₂/G₃`.
    pub fn evaluate(&self, u: &[BigInt], v: &[BigInt]) -> Result<G2G3Element> {
        self.target.unflatten(&self.evaluate_flat(u, v)?)
    }

    /// Matrix whose column `i` is `f(e_i, x)`.
    pub fn column_matrix(&self, x: &[BigInt]) -> Result<Matrix<BigInt>> {
        self.check(x)?;
        let columns: Vec<Vec<BigInt>> = (0..self.n)
            .map(|i| {
                let mut col = vec![BigInt::zero(); self.target.total_rank()];
                for (j, xj) in x.iter().enumerate().filter(|(j, x)| *j != i && !x.is_zero()) {
                    for (o, c) in col.iter_mut().zip(&self.classes[i][j]) {
                        *o += xj * c;
                    }
                }
                col
            })
            .collect();
        Ok(Matrix::from_rows_with_cols(self.target.total_rank(), columns).transpose())
    }
}

/// Builds the pairing of a lattice in which every pair of lines meets.
pub fn pairing<T: ExactField>(lat: &IncidenceLattice<T>) -> Result<PairingForm> {
    if let Some((i, j)) = lat.missing_pair() {
        return Err(Error::ParallelLines(i, j));
    }
    let n = lat.n_lines();
    let target = g2g3(lat)?;
    let classes = (0..n)
        .map(|i| (0..n).map(|j| target.commutator_class(i, j).map(|c| c.flatten())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PairingForm { n, target, classes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerResult {
    pub target: Vec<BigInt>,
    pub subgroup: ZSubgroup<BigInt>,
}

/// `S(x) = {v : f(v, x) = 0}`.
pub fn stabilizer(form: &PairingForm, x: &[BigInt]) -> Result<StabilizerResult> {
    let m = form.column_matrix(x)?;
    Ok(StabilizerResult { target: x.to_vec(), subgroup: kernel(&m) })
}

/// Indicator vector of the lines through `q`: the abelianized product `M_q`.
pub fn point_sum_vector<T: ExactField>(lat: &IncidenceLattice<T>, q: PointId) -> Result<Vec<BigInt>> {
    let point = lat.point(q)?;
    Ok((0..lat.n_lines()).map(|l| if point.contains_line(l) { BigInt::one() } else { BigInt::zero() }).collect())
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    (0..n).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCheck {
    pub point: PointId,
    pub holds: bool,
    /// Stabilizer of `M_q`.
    pub lhs: ZSubgroup<BigInt>,
    /// Lines through `q` joined with the common stabilizer of those lines.
    pub rhs: ZSubgroup<BigInt>,
}

/// Compares the stabilizer of `M_q` with the subgroup generated by the lines
/// through `q` together with the intersection of their stabilizers.
pub fn check_stabilizer_theorem<T: ExactField>(lat: &IncidenceLattice<T>, q: PointId) -> Result<StabilizerCheck> {
    let form = pairing(lat)?;
    check_stabilizer_with(&form, lat, q)
}

/// As [`check_stabilizer_theorem`], reusing an existing pairing.
pub fn check_stabilizer_with<T: ExactField>(
    form: &PairingForm,
    lat: &IncidenceLattice<T>,
    q: PointId,
) -> Result<StabilizerCheck> {
    let point = lat.multiple_point(q)?;
    let n = lat.n_lines();
    let lhs = stabilizer(form, &point_sum_vector(lat, q)?)?.subgroup;
    let mut common = ZSubgroup::full(n);
    for &l in point.lines() {
        common = common.meet(&stabilizer(form, &unit_vector(n, l))?.subgroup)?;
    }
    let lines = ZSubgroup::from_vectors(n, point.lines().iter().map(|&l| unit_vector(n, l)).collect());
    let rhs = lines.join(&common)?;
    let holds = lhs.same_as(&rhs)?;
    Ok(StabilizerCheck { point: q, holds, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::default_labels;
    use crate::Rational;

    fn lattice(n: usize, points: &[Vec<usize>]) -> IncidenceLattice<Rational> {
        IncidenceLattice::from_abstract(default_labels(n), points).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn triangle() -> IncidenceLattice<Rational> {
        lattice(6, &[vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]])
    }

    #[test]
    fn generic_form_is_zero() {
        let f = pairing(&lattice(3, &[])).unwrap();
        assert!(f.evaluate(&v(&[1, 2, 3]), &v(&[-1, 0, 4])).unwrap().is_zero());
        assert!(stabilizer(&f, &v(&[1, 1, 0])).unwrap().subgroup.is_full());
    }

    #[test]
    fn pencil_pairing() {
        let lat = lattice(3, &[vec![0, 1, 2]]);
        let f = pairing(&lat).unwrap();
        let e = |i| unit_vector(3, i);
        assert!(!f.evaluate(&e(0), &e(1)).unwrap().is_zero());
        assert_eq!(f.evaluate(&e(0), &e(1)).unwrap(), f.target().commutator_class(0, 1).unwrap());
        let x = v(&[3, -2, 7]);
        assert!(f.evaluate(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn pencil_stabilizer_of_generator() {
        let lat = lattice(3, &[vec![0, 1, 2]]);
        let f = pairing(&lat).unwrap();
        let s = stabilizer(&f, &unit_vector(3, 0)).unwrap().subgroup;
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(&[1, 0, 0])));
        assert!(s.contains(&v(&[1, 1, 1])));
        // brute force over a box
        let expected = ZSubgroup::from_vectors(
            3,
            box_vectors(5, 3)
                .into_iter()
                .filter(|w| f.evaluate(w, &unit_vector(3, 0)).unwrap().is_zero())
                .collect(),
        );
        assert_eq!(s, expected);
        assert!(stabilizer(&f, &v(&[0, 0, 0])).unwrap().subgroup.is_full());
    }

    fn box_vectors(bound: i64, n: usize) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<BigInt>| {
                    (-bound..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn point_sum_vectors() {
        let lat = lattice(3, &[vec![0, 1, 2]]);
        assert_eq!(point_sum_vector(&lat, PointId(0)).unwrap(), v(&[1, 1, 1]));
        let lat = triangle();
        assert_eq!(point_sum_vector(&lat, PointId(0)).unwrap(), v(&[1, 1, 0, 1, 0, 0]));
        let simple = lat.points().iter().find(|p| !p.is_multiple()).unwrap();
        let w = point_sum_vector(&lat, simple.id()).unwrap();
        assert_eq!(w.iter().filter(|x| x.is_one()).count(), 2);
    }

    #[test]
    fn point_product_is_radical() {
        let lat = triangle();
        let f = pairing(&lat).unwrap();
        for p in lat.multiple_points() {
            let m = point_sum_vector(&lat, p.id()).unwrap();
            for &l in p.lines() {
                assert!(f.evaluate(&unit_vector(6, l), &m).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn stabilizer_theorem_examples() {
        let c = check_stabilizer_theorem(&lattice(3, &[vec![0, 1, 2]]), PointId(0)).unwrap();
        assert!(c.holds);
        assert!(c.lhs.is_full() && c.rhs.is_full());
        for k in 0..3 {
            assert!(check_stabilizer_theorem(&triangle(), PointId(k)).unwrap().holds);
        }
        assert!(check_stabilizer_theorem(&lattice(4, &[vec![0, 1, 2]]), PointId(0)).unwrap().holds);
        assert!(matches!(
            check_stabilizer_theorem(&lattice(4, &[vec![0, 1, 2]]), PointId(1)),
            Err(Error::NotMultiplePoint(1))
        ));
    }

    #[test]
    fn dimension_errors() {
        let f = pairing(&lattice(3, &[])).unwrap();
        assert!(matches!(f.evaluate(&v(&[1]), &v(&[1, 2, 3])), Err(Error::DimensionMismatch { .. })));
        assert!(stabilizer(&f, &v(&[1, 2])).is_err());
    }
}
