use arrangement_core::io::{load_catalog, parse_arrangement, serialize_arrangement};
use arrangement_core::linalg::{hnf, snf, Matrix};
use arrangement_core::presentation::Letter;
use arrangement_core::{affine_reduction, normalize, pairing, validate, Arrangement, BigInt, Line, Rational, Word};
use proptest::prelude::*;

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn to_big(rows: &[Vec<i64>]) -> Matrix<BigInt> {
    Matrix::from_i64(rows)
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..4, -3i64..=3), 0..12).prop_map(|letters| {
        Word::new(letters.into_iter().filter(|l| l.1 != 0).map(|(generator, exponent)| Letter { generator, exponent }))
    })
}

/// Left multiplication by elementary row operations keeps the row lattice.
fn scramble(rows: &[Vec<i64>], ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut rows = rows.to_vec();
    let r = rows.len();
    for &(i, j, k) in ops {
        let (i, j) = (i % r, j % r);
        if i == j {
            rows[i].iter_mut().for_each(|x| *x = -*x);
        } else {
            let src = rows[j].clone();
            rows[i].iter_mut().zip(src).for_each(|(x, y)| *x += k * y);
        }
    }
    rows
}

proptest! {
    #[test]
    fn normalize_is_idempotent_and_scale_free(a in rational(), b in rational(), c in rational(), k in rational()) {
        prop_assume!(a != int(0) || b != int(0));
        prop_assume!(k != int(0));
        let once = normalize(a.clone(), b.clone(), c.clone()).unwrap();
        let twice = normalize(once.0.clone(), once.1.clone(), once.2.clone()).unwrap();
        prop_assert_eq!(&once, &twice);
        let scaled = normalize(a * &k, b * &k, c * &k).unwrap();
        prop_assert_eq!(once, scaled);
    }

    #[test]
    fn word_times_inverse_is_identity(w in word(), v in word()) {
        prop_assert!(w.mul(&w.inverse()).is_identity());
        prop_assert!(w.inverse().mul(&w).is_identity());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.mul(&v).inverse(), v.inverse().mul(&w.inverse()));
        prop_assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn smith_form_structure(rows in matrix()) {
        let m = to_big(&rows);
        let s = snf(&m);
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    prop_assert_eq!(s.d.get(r, c), &BigInt::from(0));
                }
            }
        }
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| *x > BigInt::from(0)));
        prop_assert!(f.windows(2).all(|w| &w[1] % &w[0] == BigInt::from(0)));
        let diagonal_zeros = (0..s.d.rows().min(s.d.cols())).filter(|&i| *s.d.get(i, i) == BigInt::from(0)).count();
        prop_assert_eq!(f.len() + diagonal_zeros, s.d.rows().min(s.d.cols()));
    }

    #[test]
    fn hermite_form_is_canonical(rows in matrix(), ops in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..10)) {
        let h = hnf(&to_big(&rows));
        prop_assert_eq!(hnf(&h), h.clone());
        prop_assert_eq!(hnf(&to_big(&scramble(&rows, &ops))), h);
    }

    #[test]
    fn pairing_is_bilinear(
        entry in prop::sample::select(vec!["pencil3", "twopencils5", "triangle6", "star7-abstract", "pencil-5"]),
        seed in prop::collection::vec(-4i64..=4, 32),
        a in -4i64..=4,
    ) {
        let red = affine_reduction(&load_catalog(entry).unwrap().arrangement).unwrap();
        let form = pairing(red.model.base()).unwrap();
        let n = form.n();
        let vec = |k: usize| seed[k * n..(k + 1) * n].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let (u, u2, v) = (vec(0), vec(1), vec(2));
        let sum: Vec<BigInt> = u.iter().zip(&u2).map(|(x, y)| x + y).collect();
        let scaled: Vec<BigInt> = u.iter().map(|x| x * a).collect();
        let f = |x: &[BigInt], y: &[BigInt]| form.evaluate(x, y).unwrap();
        prop_assert_eq!(f(&sum, &v), f(&u, &v).add(&f(&u2, &v)));
        prop_assert_eq!(f(&scaled, &v), f(&u, &v).scale(&BigInt::from(a)));
        prop_assert_eq!(f(&v, &u), f(&u, &v).neg());
        prop_assert!(f(&u, &u).is_zero());
    }

    #[test]
    fn canonical_serialization_is_idempotent(coeffs in prop::collection::vec((-5i64..=5, -5i64..=5, -5i64..=5), 3..6)) {
        let lines: Vec<Line> = coeffs
            .iter()
            .filter_map(|&(a, b, c)| Line::new(int(a), int(b), int(c)).ok())
            .collect();
        let arr = Arrangement::coordinate(lines, false);
        prop_assume!(arr.n_lines() >= 1 && validate(&arr).is_empty());
        let text = serialize_arrangement(&arr);
        let back = parse_arrangement(&text).unwrap();
        prop_assert_eq!(&back, &arr);
        prop_assert_eq!(serialize_arrangement(&back), text);
    }
}
