//! Hermite and Smith normal forms over an exact integer ring.

use super::Matrix;
use crate::scalar::IntegerRing;

fn sub_multiple<T: IntegerRing>(target: &mut [T], source: &[T], q: &T) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t = t.clone() - q.clone() * s.clone();
    }
}

/// Row Hermite normal form.
///
/// Same row span over ℤ as the input. Rows are in echelon form with positive
/// pivots, entries above each pivot lie in `[0, pivot)` and zero rows are
/// dropped, so two matrices span the same lattice iff their HNFs are equal.
pub fn hnf<T: IntegerRing>(m: &Matrix<T>) -> Matrix<T> {
    let mut a = m.to_rows();
    let n = a.len();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == n {
            break;
        }
        loop {
            let pivot = (r..n)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (top, bottom) = a.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[r], &q);
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            let (top, bottom) = a.split_at_mut(r);
            sub_multiple(&mut top[i], &bottom[0], &q);
        }
        r += 1;
    }
    a.truncate(r);
    Matrix::from_rows_with_cols(m.cols(), a)
}

/// Column index of the first nonzero entry of each HNF row.
pub fn pivot_columns<T: IntegerRing>(h: &Matrix<T>) -> Vec<usize> {
    (0..h.rows())
        .map(|r| h.row(r).iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
        .collect()
}

pub fn rank<T: IntegerRing>(m: &Matrix<T>) -> usize {
    hnf(m).rows()
}

/// Smith normal form `u · m · v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntegerRing> Smith<T> {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct SmithCalc<T> {
    d: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
}

impl<T: IntegerRing> SmithCalc<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.d.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q · row_j
    fn row_op(&mut self, i: usize, j: usize, q: &T) {
        let (src_d, src_u) = (self.d[j].clone(), self.u[j].clone());
        sub_multiple(&mut self.d[i], &src_d, q);
        sub_multiple(&mut self.u[i], &src_u, q);
    }

    /// col_i -= q · col_j
    fn col_op(&mut self, i: usize, j: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for row in self.d.iter_mut().chain(self.v.iter_mut()) {
            let s = row[j].clone();
            row[i] = row[i].clone() - q.clone() * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.d[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -x.clone();
        }
    }

    fn run(&mut self, rows: usize, cols: usize) {
        for t in 0..rows.min(cols) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        if self.d[i][j].is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| self.d[i][j].abs() < self.d[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                let mut dirty = false;
                for i in t + 1..rows {
                    let q = self.d[i][t].div_floor(&self.d[t][t]);
                    self.row_op(i, t, &q);
                    dirty |= !self.d[i][t].is_zero();
                }
                for j in t + 1..cols {
                    let q = self.d[t][j].div_floor(&self.d[t][t]);
                    self.col_op(j, t, &q);
                    dirty |= !self.d[t][j].is_zero();
                }
                if dirty {
                    continue;
                }
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.d[i][j].is_multiple_of(&self.d[t][t])));
                match offender {
                    Some(i) => {
                        let minus_one = -T::one();
                        self.row_op(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.d[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with unimodular transforms.
pub fn snf<T: IntegerRing>(m: &Matrix<T>) -> Smith<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut calc = SmithCalc {
        d: m.to_rows(),
        u: Matrix::<T>::identity(rows).to_rows(),
        v: Matrix::<T>::identity(cols).to_rows(),
    };
    calc.run(rows, cols);
    Smith {
        u: Matrix::from_rows_with_cols(rows, calc.u),
        d: Matrix::from_rows_with_cols(cols, calc.d),
        v: Matrix::from_rows_with_cols(cols, calc.v),
    }
}

/// Inverse of a unimodular matrix, or `None` if `m` is not unimodular.
pub fn inverse_unimodular<T: IntegerRing>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let h = hnf(&m.augment(&Matrix::identity(n)));
    if h.rows() != n || h.column_slice(0, n) != Matrix::identity(n) {
        return None;
    }
    Some(h.column_slice(n, 2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn is_hnf(h: &Matrix<i64>) -> bool {
        let pivots = pivot_columns(h);
        pivots.windows(2).all(|w| w[0] < w[1])
            && pivots.iter().enumerate().all(|(r, &c)| {
                let p = *h.get(r, c);
                p > 0 && (0..r).all(|i| (0..p).contains(h.get(i, c)))
            })
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = Matrix::<i64>::identity(3);
        assert_eq!(hnf(&id), id);
        let z = Matrix::<i64>::zeros(2, 3);
        let h = hnf(&z);
        assert_eq!(h.rows(), 0);
        assert_eq!(h.cols(), 3);
    }

    #[test]
    fn hnf_of_redundant_rows() {
        let m = Matrix::<i64>::from_i64(&[vec![2, 0], vec![0, 3], vec![2, 3]]);
        assert_eq!(hnf(&m), Matrix::from_i64(&[vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let m = Matrix::<i64>::from_i64(&[vec![3, 5, -7], vec![0, 4, 2], vec![-6, 1, 1]]);
        let h = hnf(&m);
        assert!(is_hnf(&h), "{h}");
        assert_eq!(h.rows(), 3);
    }

    #[test]
    fn snf_diag_2_3() {
        let m = Matrix::<BigInt>::from_i64(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert_eq!(s.d, Matrix::from_i64(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn snf_trivial_inputs() {
        let id = Matrix::<i64>::identity(2);
        assert_eq!(snf(&id).d, id);
        let z = Matrix::<i64>::zeros(2, 2);
        let s = snf(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn snf_rectangular() {
        let m = Matrix::<i64>::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = snf(&m);
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn unimodular_inverse() {
        let m = Matrix::<i64>::from_i64(&[vec![2, 1], vec![7, 4]]);
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(inverse_unimodular(&Matrix::<i64>::from_i64(&[vec![2, 0], vec![0, 1]])).is_none());
    }
}
