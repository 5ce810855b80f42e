//! Exact-arithmetic engine for the n-qubit Clifford groups.
//!
//! The crate enumerates the groups `C_1` and `C_2` as phase-canonical unitary
//! matrices over the cyclotomic field Q(ζ₈), computes their conjugacy classes
//! and character tables from scratch (Dixon's class-algebra method over GF(p)
//! with exact lifting), verifies the defining presentation for ranks 1..=3,
//! abelianizes the presentation by Smith normal form, and decomposes tensor
//! powers of the 2ⁿ×2ⁿ matrix representation into irreducible constituents.
//! The rank-3 group (order 92 897 280) is not enumerated; its embedded 67×67
//! reference character table is verified property-by-property instead.
//!
//! Everything is exact: no floating point is used in any equality test.

// Matrix code indexes rows and columns by number throughout; iterator
// rewrites of those loops hide which axis is which.
#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod classes;
pub mod cyclo;
pub mod matgroup;
pub mod presentation;
pub mod refdata;
pub mod repdecomp;
pub mod snf;
pub mod word;

mod error;

pub use error::{Error, Result};
