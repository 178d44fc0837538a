use super::s_elimination::source_json;
use super::{eliminate_s, u_matrix, x_matrix, Claim, ReductionCertificate};
use crate::error::{Result, VestError};
use crate::field::FieldTag;
use crate::instance::{TargetVariant, VestInstance};
use crate::linalg::{block_diag, Matrix, Vector};

/// Turn a zero-product question over `d × d` matrices into a vector question.
///
/// Each `T_i` becomes `d` copies of itself on the diagonal, `v` stacks the unit
/// vectors `e_1..e_d` and `S = I`. The image of `v` under a product `R` is
/// then the columns of `R` stacked, which vanishes exactly when `R = 0`.
pub fn zero_product_to_vest(
    inst: &VestInstance,
    k: usize,
) -> Result<(VestInstance, ReductionCertificate)> {
    if inst.target() != TargetVariant::MatrixZero {
        return Err(VestError::Variant("expected a matrix_zero instance".into()));
    }
    let tag = inst.tag();
    let d = inst.dim();
    let transforms = inst
        .transforms()
        .iter()
        .map(|t| block_diag(tag, &vec![t.clone(); d]))
        .collect::<Result<Vec<_>>>()?;
    let units: Vec<Vector> = (0..d).map(|i| Vector::unit(tag, d, i)).collect();
    let v = Vector::stack(tag, &units)?;
    let out = VestInstance::vector_zero(tag, transforms, Some(Matrix::identity(tag, d * d)), v)?
        .with_k(k);
    let cert = ReductionCertificate {
        construction: "zero_product_to_vest".into(),
        source: source_json(inst),
        k_source: k,
        k_target: k,
        claim: Claim::DecisionEquivalence,
        statement: "some k matrices multiply to zero iff M_k(target) > 0".into(),
    };
    Ok((out, cert))
}

/// The `3 × 3` pair `(A, B)` with `AB = 0` while `BA`, `AA` and `BB` are nonzero.
pub fn ordering_blocks() -> (Matrix, Matrix) {
    let q = FieldTag::RATIONAL;
    (
        Matrix::from_i64_rows(q, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
        Matrix::from_i64_rows(q, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]),
    )
}

/// Turn a vector question into a zero-product question with parameter `k + 3`.
///
/// After [`eliminate_s`] gives `T'_i`, `S'` and `v'` in dimension `n`, the
/// output matrices over dimension `n + 5` are
///
/// * `T''_i = diag(T'_i, I_3, U_{-2})`
/// * `S''   = diag(S', I_3, U_{2k+1})`
/// * `T'_v  = diag(V, B, X)` where `V` holds `v'` in its first column
/// * `H     = diag(I_n, A, X)`
///
/// The `X`/`U` blocks force the shape `X · (k+1 shifts summing to 1) · X`, and
/// `AB = 0 ≠ BA` forces `H` to the left of `T'_v`.
pub fn vest_to_zero_product(
    inst: &VestInstance,
    k: usize,
) -> Result<(VestInstance, ReductionCertificate)> {
    let q = FieldTag::RATIONAL;
    if inst.tag() != q && inst.target() == TargetVariant::VectorZero {
        return Err(VestError::UnsupportedField {
            field: inst.tag(),
            reason: "the U_x shift gadget needs characteristic zero".into(),
        });
    }
    let (reduced, _) = eliminate_s(inst, k)?;
    let n = reduced.dim();
    let (a, b) = ordering_blocks();
    let i3 = Matrix::identity(q, 3);
    let x = x_matrix();
    let (closer, rest) = reduced
        .transforms()
        .split_last()
        .expect("S' is always present");

    let mut out = rest
        .iter()
        .map(|t| block_diag(q, &[t.clone(), i3.clone(), u_matrix(&(-2).into())]))
        .collect::<Result<Vec<_>>>()?;
    let shift = num_bigint::BigInt::from(2 * k + 1);
    out.push(block_diag(q, &[closer.clone(), i3, u_matrix(&shift)])?);
    let mut start = Matrix::zeros(q, n, n);
    for (r, value) in reduced
        .v()
        .expect("vector instance")
        .entries()
        .iter()
        .enumerate()
    {
        start.set(r, 0, value.clone())?;
    }
    out.push(block_diag(q, &[start, b, x.clone()])?);
    out.push(block_diag(q, &[Matrix::identity(q, n), a, x])?);

    let target =
        VestInstance::matrix_target(q, n + 5, out, TargetVariant::MatrixZero)?.with_k(k + 3);
    let cert = ReductionCertificate {
        construction: "vest_to_zero_product".into(),
        source: source_json(inst),
        k_source: k,
        k_target: k + 3,
        claim: Claim::DecisionEquivalence,
        statement:
            "M_k(source) > 0 iff some k+3 of the matrices (with repetition) multiply to zero".into(),
    };
    Ok((target, cert))
}
