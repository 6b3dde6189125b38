use std::fmt;

use super::{hnf, pivot_columns, Matrix};
use crate::error::{Error, Result};
use crate::scalar::IntegerRing;

/// A subgroup of ℤⁿ stored by its row Hermite basis.
///
/// Because the basis is canonical, derived equality is subgroup equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZSubgroup<T> {
    ambient_rank: usize,
    basis: Matrix<T>,
}

impl<T: IntegerRing> ZSubgroup<T> {
    /// The subgroup generated by the rows of `generators`.
    pub fn generated_by(generators: &Matrix<T>) -> Self {
        ZSubgroup { ambient_rank: generators.cols(), basis: hnf(generators) }
    }

    pub fn from_vectors(ambient_rank: usize, vectors: Vec<Vec<T>>) -> Self {
        Self::generated_by(&Matrix::from_rows_with_cols(ambient_rank, vectors))
    }

    pub fn trivial(ambient_rank: usize) -> Self {
        ZSubgroup { ambient_rank, basis: Matrix::zeros(0, ambient_rank) }
    }

    pub fn full(ambient_rank: usize) -> Self {
        ZSubgroup { ambient_rank, basis: Matrix::identity(ambient_rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full(&self) -> bool {
        self.basis == Matrix::identity(self.ambient_rank)
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient_rank, "vector length differs from ambient rank");
        let mut w = v.to_vec();
        for (r, c) in pivot_columns(&self.basis).into_iter().enumerate() {
            let p = self.basis.get(r, c);
            if !w[c].is_multiple_of(p) {
                return false;
            }
            let q = w[c].clone() / p.clone();
            for (x, b) in w.iter_mut().zip(self.basis.row(r)) {
                *x = x.clone() - q.clone() * b.clone();
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::AmbientMismatch { left: self.ambient_rank, right: other.ambient_rank });
        }
        Ok(())
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::generated_by(&self.basis.stack(&other.basis)))
    }

    /// The intersection, computed from the left kernel of the stacked bases.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let stacked = self.basis.stack(&other.basis);
        let relations = kernel(&stacked.transpose());
        let k = self.basis.rows();
        let vectors = (0..relations.rank())
            .map(|r| self.basis.vec_mul(&relations.basis().row(r)[..k]))
            .collect();
        Ok(Self::from_vectors(self.ambient_rank, vectors))
    }

    pub fn same_as(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }
}

impl<T: IntegerRing> fmt::Display for ZSubgroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> in Z^{}", self.basis, self.ambient_rank)
    }
}

/// Integer right kernel `{v ∈ ℤⁿ : m·v = 0}`.
///
/// Row-reduces `[mᵀ | I]`; the rows whose left block vanishes span the kernel.
/// The result is saturated in ℤⁿ.
pub fn kernel<T: IntegerRing>(m: &Matrix<T>) -> ZSubgroup<T> {
    let n = m.cols();
    let k = m.rows();
    let reduced = hnf(&m.transpose().augment(&Matrix::identity(n)));
    let vectors = (0..reduced.rows())
        .filter(|&r| reduced.row(r)[..k].iter().all(|x| x.is_zero()))
        .map(|r| reduced.row(r)[k..].to_vec())
        .collect();
    ZSubgroup::from_vectors(n, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<i64> {
        v.to_vec()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::<i64>::identity(3)), ZSubgroup::trivial(3));
        assert_eq!(kernel(&Matrix::<i64>::zeros(2, 3)), ZSubgroup::full(3));
        let k = kernel(&Matrix::<i64>::from_i64(&[vec![1, 1, 1]]));
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&z(&[1, -1, 0])));
        assert!(k.contains(&z(&[0, 1, -1])));
        assert!(!k.contains(&z(&[1, 0, 0])));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2).
        let k = kernel(&Matrix::<i64>::from_i64(&[vec![2, 4]]));
        assert!(k.contains(&z(&[2, -1])));
    }

    #[test]
    fn join_meet_eq() {
        let e1 = ZSubgroup::from_vectors(2, vec![z(&[1, 0])]);
        let e2 = ZSubgroup::from_vectors(2, vec![z(&[0, 1])]);
        assert_eq!(e1.join(&e2).unwrap(), ZSubgroup::full(2));
        assert!(e1.same_as(&e1).unwrap());

        let a = ZSubgroup::from_vectors(2, vec![z(&[2, 0]), z(&[0, 3])]);
        let b = ZSubgroup::from_vectors(2, vec![z(&[3, 0]), z(&[0, 2])]);
        assert_eq!(a.meet(&b).unwrap(), ZSubgroup::from_vectors(2, vec![z(&[6, 0]), z(&[0, 6])]));
    }

    #[test]
    fn meet_of_independent_lines_is_trivial() {
        let a = ZSubgroup::from_vectors(2, vec![z(&[1, 1])]);
        let b = ZSubgroup::from_vectors(2, vec![z(&[1, -1])]);
        let m = a.meet(&b).unwrap();
        assert_eq!(m, ZSubgroup::trivial(2));
        for x in -10i64..=10 {
            for y in -10i64..=10 {
                let v = [x, y];
                assert_eq!(m.contains(&v), a.contains(&v) && b.contains(&v));
            }
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = ZSubgroup::<i64>::full(2);
        let b = ZSubgroup::<i64>::full(3);
        assert!(matches!(a.join(&b), Err(Error::AmbientMismatch { .. })));
        assert!(a.meet(&b).is_err());
        assert!(a.same_as(&b).is_err());
    }
}
