//! Scalar traits the generic parts of the crate are written against.
//!
//! Integer linear algebra runs over any [`IntegerRing`] (`i64`, `i128`,
//! `BigInt`); coordinate geometry runs over any [`ExactField`]. Floating point
//! types do not implement `Eq + Hash` and are excluded on purpose: coincidence
//! of intersection points must be decided exactly.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A Euclidean ring of exact integers.
pub trait IntegerRing:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<T> IntegerRing for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// An ordered field with exact equality.
pub trait ExactField: Num + Signed + Clone + Eq + Ord + Hash + Debug + Display + Send + Sync {}

impl<T> ExactField for T where T: Num + Signed + Clone + Eq + Ord + Hash + Debug + Display + Send + Sync {}

/// Serializes big integers as JSON numbers when they fit in an `i64`, and as
/// decimal strings otherwise.
pub mod big_serde {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Wrapped(x))?;
        }
        seq.end()
    }

    pub fn serialize_matrix<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in rows {
            seq.serialize_element(&Row(r))?;
        }
        seq.end()
    }

    struct Wrapped<'a>(&'a BigInt);

    impl serde::Serialize for Wrapped<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize(self.0, s)
        }
    }

    struct Row<'a>(&'a [BigInt]);

    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_vec(self.0, s)
        }
    }
}
