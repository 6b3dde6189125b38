//! Exact integer linear algebra: normal forms, kernels and subgroups of ℤⁿ.

mod matrix;
mod normal_form;
mod subgroup;

pub use matrix::Matrix;
pub use normal_form::{hnf, inverse_unimodular, pivot_columns, rank, snf, Smith};
pub use subgroup::{kernel, ZSubgroup};
