use num_bigint::BigInt;

use super::{integers_json, Claim, ReductionCertificate};
use crate::error::Result;
use crate::field::{FieldTag, Scalar};
use crate::instance::{TargetVariant, VestInstance};
use crate::linalg::{Matrix, Vector};

/// `U_x = [[1, x], [0, 1]]` over the rationals.
pub fn u_matrix(x: &BigInt) -> Matrix {
    let q = FieldTag::RATIONAL;
    let mut u = Matrix::identity(q, 2);
    u.set(0, 1, Scalar::from_bigint(q, x)).expect("same field");
    u
}

/// `X = [[0, 0], [-1, 1]]`, idempotent, with `X·U_r·X = (1 - r)·X`.
pub fn x_matrix() -> Matrix {
    Matrix::from_i64_rows(FieldTag::RATIONAL, &[&[0, 0], &[-1, 1]])
}

fn gadget_matrices(a: &[BigInt]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = a.iter().map(u_matrix).collect();
    out.push(x_matrix());
    out
}

/// `{U_a : a ∈ A} ∪ {X}`: some `k + 2` of them multiply to zero iff at most
/// `k` elements of `A` (with repetition) sum to 1.
pub fn sum_to_zero_matrix_product(
    a: &[BigInt],
    k: usize,
) -> Result<(VestInstance, ReductionCertificate)> {
    let inst = VestInstance::matrix_target(
        FieldTag::RATIONAL,
        2,
        gadget_matrices(a),
        TargetVariant::MatrixZero,
    )?
    .with_k(k + 2);
    let cert = ReductionCertificate {
        construction: "sum_to_zero_matrix_product".into(),
        source: integers_json(a),
        k_source: k,
        k_target: k + 2,
        claim: Claim::DecisionEquivalence,
        statement: "at most k integers (with repetition) sum to 1 iff some k+2 matrices multiply to the zero matrix"
            .into(),
    };
    Ok((inst, cert))
}

/// The same matrices applied to `v = (0, 1)` with `S = I`; `X·v = v`, so the
/// extra start matrix of the zero-product form is not needed.
pub fn sum_to_vest_identity_s(
    a: &[BigInt],
    k: usize,
) -> Result<(VestInstance, ReductionCertificate)> {
    let q = FieldTag::RATIONAL;
    let inst = VestInstance::vector_zero(
        q,
        gadget_matrices(a),
        Some(Matrix::identity(q, 2)),
        Vector::from_i64(q, &[0, 1]),
    )?
    .with_k(k + 1);
    let cert = ReductionCertificate {
        construction: "sum_to_vest_identity_s".into(),
        source: integers_json(a),
        k_source: k,
        k_target: k + 1,
        claim: Claim::DecisionEquivalence,
        statement: "at most k integers (with repetition) sum to 1 iff M_{k+1} > 0".into(),
    };
    Ok((inst, cert))
}
