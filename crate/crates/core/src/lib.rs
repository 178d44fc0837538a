//! Exact solvers for counting and deciding products of matrix transformations
//! that send a vector (or a matrix) to zero.
//!
//! Given `v ∈ F^d`, transforms `T_1..T_m ∈ F^{d×d}` and `S ∈ F^{h×d}`, the count
//! `M_k` is the number of index sequences `(i_1,…,i_k)` with
//! `S·T_{i_k}⋯T_{i_1}·v = 0`. The crate provides
//!
//! * exact scalars over `Q` and `Z_p` ([`field`]) and dense matrices ([`linalg`]),
//! * the instance model and brute-force enumeration ([`instance`], [`brute`]),
//! * the dynamic program over matrix values for finite fields ([`dp`]),
//! * generators for the hardness constructions ([`reductions`]),
//! * independent brute-force solvers for their source problems ([`oracles`]),
//! * a randomized cross-validation harness tying the two together ([`crossval`]).

pub mod brute;
pub mod crossval;
pub mod dp;
pub mod error;
pub mod field;
pub mod instance;
pub mod linalg;
pub mod oracles;
pub mod reductions;

pub use brute::{decide, exists_up_to, mk_bruteforce, mk_bruteforce_parallel, Budget};
pub use dp::{count_mk_dp, count_mk_dp_rows, min_k, DpTable, MinK};
pub use error::{Result, VestError};
pub use field::{enumerate_field, FieldTag, Scalar};
pub use instance::{CountValue, TargetVariant, VestInstance};
pub use linalg::{apply, block_diag, mat_mul, rr_mul, Matrix, RowRestrictedMatrix, Vector};
