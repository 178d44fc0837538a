use serde::{Deserialize, Serialize};

use super::{Claim, Graph, ReductionCertificate};
use crate::error::Result;
use crate::field::{FieldTag, Scalar};
use crate::instance::VestInstance;
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetStyle {
    /// `4n`-dimensional gadget whose sequence count is `k!` times the number
    /// of dominating sets of size `k`.
    Counting,
    /// `n`-dimensional diagonal 0/1 gadget that only preserves existence.
    Decision,
}

/// Encode "does `g` have a dominating set of size `k`" as a vector-zero instance.
///
/// Counting style: vertex `u` owns coordinates `4u..4u+3`. `T_u` carries the
/// block `[[0,0,0,0],[0,0,1,0],[0,0,0,1],[0,0,0,1]]` on its own coordinates,
/// zeroes the diagonal at `4w` for every `w ∈ N[u]`, and is the identity
/// elsewhere. Decision style: `T_u` is the identity with zeros at `N[u]`,
/// `v` is all-ones and `S = I`.
pub fn dominating_set_to_vest(
    g: &Graph,
    k: usize,
    style: GadgetStyle,
    tag: FieldTag,
) -> Result<(VestInstance, ReductionCertificate)> {
    let n = g.n();
    let inst = match style {
        GadgetStyle::Counting => counting_gadget(g, tag)?,
        GadgetStyle::Decision => {
            let transforms = (0..n)
                .map(|u| {
                    let mut t = Matrix::identity(tag, n);
                    for w in g.closed_neighborhood(u) {
                        t.set(w, w, Scalar::zero(tag))?;
                    }
                    Ok(t)
                })
                .collect::<Result<Vec<_>>>()?;
            let v = Vector::new(tag, vec![Scalar::one(tag); n])?;
            VestInstance::vector_zero(tag, transforms, Some(Matrix::identity(tag, n)), v)?
        }
    }
    .with_k(k);
    let (claim, statement) = match style {
        GadgetStyle::Counting => (
            Claim::FactorialCount,
            "M_k = k! * D_k where D_k is the number of dominating sets of size k".to_string(),
        ),
        GadgetStyle::Decision => (
            Claim::DecisionEquivalence,
            "M_k > 0 iff the graph has a dominating set of at most k vertices".to_string(),
        ),
    };
    let cert = ReductionCertificate {
        construction: "dominating_set_to_vest".into(),
        source: serde_json::json!({ "graph": g.describe(), "style": style }),
        k_source: k,
        k_target: k,
        claim,
        statement,
    };
    Ok((inst, cert))
}

fn counting_gadget(g: &Graph, tag: FieldTag) -> Result<VestInstance> {
    const BLOCK: [[i64; 4]; 4] = [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 1]];
    let n = g.n();
    let d = 4 * n;
    let zero = Scalar::zero(tag);
    let one = Scalar::one(tag);
    let mut transforms = Vec::with_capacity(n);
    for u in 0..n {
        let mut t = Matrix::identity(tag, d);
        for w in g.closed_neighborhood(u) {
            t.set(4 * w, 4 * w, zero.clone())?;
        }
        for (r, row) in BLOCK.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                t.set(4 * u + r, 4 * u + c, Scalar::from_i64(tag, x))?;
            }
        }
        transforms.push(t);
    }
    let mut v = vec![zero.clone(); d];
    let mut s = Matrix::zeros(tag, d, d);
    for u in 0..n {
        v[4 * u] = one.clone();
        v[4 * u + 3] = one.clone();
        s.set(4 * u, 4 * u, one.clone())?;
        s.set(4 * u + 1, 4 * u + 1, one.clone())?;
    }
    VestInstance::vector_zero(tag, transforms, Some(s), Vector::new(tag, v)?)
}
