use super::{Claim, ReductionCertificate};
use crate::error::{Result, VestError};
use crate::field::Scalar;
use crate::instance::{TargetVariant, VestInstance};
use crate::linalg::{block_diag, Matrix};

/// Fold `S` into the transform list.
///
/// `S` is first made square by zero padding. Then two coordinates are added:
/// `v' = (v, k, 1)`, every `T'_i` gains the block `[[1, -1], [0, 1]]` (count
/// down the first extra coordinate by the second), and `S'` gains
/// `[[10, 0], [0, 0]]`. The output has transforms `T'_1..T'_m, S'`, `S = I`
/// and parameter `k + 1`; a zero is reachable only with `S'` applied once,
/// last, after exactly `k` transforms.
///
/// Over `Z_p` the countdown needs `p > k` and `10 ≠ 0`, so `p ∈ {2, 5}` and
/// `p ≤ k` are rejected.
pub fn eliminate_s(inst: &VestInstance, k: usize) -> Result<(VestInstance, ReductionCertificate)> {
    let tag = inst.tag();
    if inst.target() != TargetVariant::VectorZero {
        return Err(VestError::Variant(
            "S elimination needs a vector_zero instance".into(),
        ));
    }
    let s = inst
        .s()
        .ok_or_else(|| VestError::Variant("S elimination needs an explicit S".into()))?;
    let v = inst
        .v()
        .ok_or_else(|| VestError::Variant("S elimination needs v".into()))?;
    if let Some(p) = tag.modulus() {
        if p <= k as u64 || p == 2 || p == 5 {
            return Err(VestError::UnsupportedField {
                field: tag,
                reason: format!(
                    "the countdown from k = {k} and the factor 10 need p > k and p not in {{2, 5}}"
                ),
            });
        }
    }

    let d = inst.dim();
    let n = s.rows().max(d);
    let s_sq = s.pad_to(n, n)?;
    let v_sq = v.extended(&vec![Scalar::zero(tag); n - d])?;
    let countdown = Matrix::from_i64_rows(tag, &[&[1, -1], &[0, 1]]);
    let mut transforms = inst
        .transforms()
        .iter()
        .map(|t| block_diag(tag, &[t.pad_to(n, n)?, countdown.clone()]))
        .collect::<Result<Vec<_>>>()?;
    let closer = Matrix::from_i64_rows(tag, &[&[10, 0], &[0, 0]]);
    transforms.push(block_diag(tag, &[s_sq, closer])?);
    let v_out = v_sq.extended(&[Scalar::from_i64(tag, k as i64), Scalar::one(tag)])?;
    let out =
        VestInstance::vector_zero(tag, transforms, Some(Matrix::identity(tag, n + 2)), v_out)?
            .with_k(k + 1);

    let cert = ReductionCertificate {
        construction: "eliminate_s".into(),
        source: source_json(inst),
        k_source: k,
        k_target: k + 1,
        claim: Claim::DecisionEquivalence,
        statement: "M_k(source) > 0 iff M_{k+1}(target) > 0, where the target has S = I".into(),
    };
    Ok((out, cert))
}

pub(crate) fn source_json(inst: &VestInstance) -> serde_json::Value {
    serde_json::from_str(&inst.to_json()).expect("instance JSON parses")
}
