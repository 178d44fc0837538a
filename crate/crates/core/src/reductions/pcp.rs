use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Claim, PcpInstance, ReductionCertificate};
use crate::error::{Result, VestError};
use crate::field::{FieldTag, Scalar};
use crate::instance::VestInstance;
use crate::linalg::{block_diag, Matrix, Vector};

/// `T_v = [[2^|v| - (v)_2, (v)_2], [2^|v| - (v)_2 - 1, (v)_2 + 1]]` for a binary
/// word `v`. These satisfy `T_v · T_w = T_{wv}` and `T_ε = I`.
pub fn word_matrix(word: &str) -> Result<Matrix> {
    let mut value = BigInt::zero();
    for c in word.chars() {
        let bit = match c {
            '0' => 0u8,
            '1' => 1,
            _ => return Err(VestError::Alphabet(word.to_string())),
        };
        value = (value << 1) + bit;
    }
    let q = FieldTag::RATIONAL;
    let pow = BigInt::one() << word.len();
    let rest = &pow - &value;
    let entries = [&rest, &value, &(&rest - 1), &(&value + 1)]
        .into_iter()
        .map(|x| Scalar::from_bigint(q, x))
        .collect();
    Matrix::from_entries(q, 2, 2, entries)
}

/// Pair `(v_i, w_i)` becomes `diag(T_{v_i}, T_{w_i})`; with start `(0,1,0,1)`
/// and `S = (1, 0, -1, 0)`, a sequence evaluates to
/// `(v_{i_1}⋯v_{i_k})_2 - (w_{i_1}⋯w_{i_k})_2`.
pub fn pcp_to_vest(pcp: &PcpInstance) -> Result<(VestInstance, ReductionCertificate)> {
    if pcp.pairs().is_empty() {
        return Err(VestError::malformed(
            "a correspondence instance needs at least one pair",
        ));
    }
    let q = FieldTag::RATIONAL;
    let transforms = pcp
        .pairs()
        .iter()
        .map(|(v, w)| block_diag(q, &[word_matrix(v)?, word_matrix(w)?]))
        .collect::<Result<Vec<_>>>()?;
    let inst = VestInstance::vector_zero(
        q,
        transforms,
        Some(Matrix::from_i64_rows(q, &[&[1, 0, -1, 0]])),
        Vector::from_i64(q, &[0, 1, 0, 1]),
    )?;
    let cert = ReductionCertificate {
        construction: "pcp_to_vest".into(),
        source: serde_json::to_value(pcp).expect("pairs serialize"),
        k_source: 0,
        k_target: 0,
        claim: Claim::SourceImpliesTarget,
        statement: "S*T*...*T*v equals (v-concatenation)_2 - (w-concatenation)_2, \
                    so a matching sequence of length k gives M_k > 0"
            .into(),
    };
    Ok((inst, cert))
}
