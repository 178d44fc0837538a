//! The instance model: matrices `T_1..T_m`, an optional output map `S`, an
//! optional start vector `v`, and which product condition is being counted.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VestError};
use crate::field::FieldTag;
use crate::linalg::{apply, Matrix, RawMatrix, ScalarText, Vector};

/// Number of index sequences meeting the target. Unbounded.
pub type CountValue = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetVariant {
    /// `S·T_{i_k}⋯T_{i_1}·v = 0`; an absent `S` is the identity.
    VectorZero,
    /// `T_{i_k}⋯T_{i_1} = 0`.
    MatrixZero,
    /// `T_{i_k}⋯T_{i_1} = I`.
    MatrixIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VestInstance {
    tag: FieldTag,
    dim: usize,
    transforms: Vec<Matrix>,
    s: Option<Matrix>,
    v: Option<Vector>,
    target: TargetVariant,
    k: Option<usize>,
}

impl VestInstance {
    pub fn vector_zero(
        tag: FieldTag,
        transforms: Vec<Matrix>,
        s: Option<Matrix>,
        v: Vector,
    ) -> Result<Self> {
        let dim = v.dim();
        VestInstance::new(tag, dim, transforms, s, Some(v), TargetVariant::VectorZero)
    }

    pub fn matrix_target(
        tag: FieldTag,
        dim: usize,
        transforms: Vec<Matrix>,
        target: TargetVariant,
    ) -> Result<Self> {
        VestInstance::new(tag, dim, transforms, None, None, target)
    }

    pub fn new(
        tag: FieldTag,
        dim: usize,
        transforms: Vec<Matrix>,
        s: Option<Matrix>,
        v: Option<Vector>,
        target: TargetVariant,
    ) -> Result<Self> {
        for (i, t) in transforms.iter().enumerate() {
            if t.tag() != tag {
                return Err(VestError::MixedField(tag, t.tag()));
            }
            if t.rows() != dim || t.cols() != dim {
                return Err(VestError::shape(format!(
                    "transform {i} is {}x{}, expected {dim}x{dim}",
                    t.rows(),
                    t.cols()
                )));
            }
        }
        if let Some(s) = &s {
            if s.tag() != tag {
                return Err(VestError::MixedField(tag, s.tag()));
            }
            if s.cols() != dim {
                return Err(VestError::shape(format!(
                    "S has {} columns, expected {dim}",
                    s.cols()
                )));
            }
        }
        if let Some(v) = &v {
            if v.tag() != tag {
                return Err(VestError::MixedField(tag, v.tag()));
            }
            if v.dim() != dim {
                return Err(VestError::shape(format!(
                    "v has dimension {}, expected {dim}",
                    v.dim()
                )));
            }
        }
        match target {
            TargetVariant::VectorZero if v.is_none() => {
                return Err(VestError::Variant("vector_zero requires v".into()))
            }
            TargetVariant::MatrixZero | TargetVariant::MatrixIdentity
                if v.is_some() || s.is_some() =>
            {
                return Err(VestError::Variant(
                    "matrix targets take neither v nor S".into(),
                ))
            }
            _ => {}
        }
        Ok(VestInstance {
            tag,
            dim,
            transforms,
            s,
            v,
            target,
            k: None,
        })
    }

    /// Attach the parameter carried in instance files.
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transforms(&self) -> &[Matrix] {
        &self.transforms
    }

    pub fn m(&self) -> usize {
        self.transforms.len()
    }

    pub fn s(&self) -> Option<&Matrix> {
        self.s.as_ref()
    }

    pub fn v(&self) -> Option<&Vector> {
        self.v.as_ref()
    }

    pub fn target(&self) -> TargetVariant {
        self.target
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// `S`, or the identity when absent.
    pub fn s_or_identity(&self) -> Matrix {
        self.s
            .clone()
            .unwrap_or_else(|| Matrix::identity(self.tag, self.dim))
    }

    /// The same instance with transforms reordered by `order`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.m() {
            return Err(VestError::shape("permutation length differs from m"));
        }
        let mut out = self.clone();
        out.transforms = order.iter().map(|&i| self.transforms[i].clone()).collect();
        Ok(out)
    }

    /// Does the vector `x = T_{i_k}⋯T_{i_1}·v` satisfy `S·x = 0`?
    pub(crate) fn vector_accepted(&self, x: &Vector) -> bool {
        match &self.s {
            Some(s) => apply(s, x).expect("shapes validated").is_zero(),
            None => x.is_zero(),
        }
    }

    /// Does a full product `P = T_{i_k}⋯T_{i_1}` meet the target?
    pub fn product_accepted(&self, product: &Matrix) -> bool {
        match self.target {
            TargetVariant::VectorZero => {
                let v = self.v.as_ref().expect("vector_zero has v");
                self.vector_accepted(&apply(product, v).expect("shapes validated"))
            }
            TargetVariant::MatrixZero => product.is_zero(),
            TargetVariant::MatrixIdentity => product.is_identity(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceFile::from(self)).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RawInstanceFile =
            serde_json::from_str(text).map_err(|e| VestError::malformed(e.to_string()))?;
        file.resolve()
    }
}

#[derive(Serialize)]
struct InstanceFile<'a> {
    field: FieldTag,
    dim: usize,
    target: TargetVariant,
    s: Option<&'a Matrix>,
    v: Option<&'a Vector>,
    matrices: &'a [Matrix],
    k: Option<usize>,
}

impl<'a> From<&'a VestInstance> for InstanceFile<'a> {
    fn from(inst: &'a VestInstance) -> Self {
        InstanceFile {
            field: inst.tag,
            dim: inst.dim,
            target: inst.target,
            s: inst.s.as_ref(),
            v: inst.v.as_ref(),
            matrices: &inst.transforms,
            k: inst.k,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstanceFile {
    field: FieldTag,
    dim: usize,
    target: TargetVariant,
    #[serde(default)]
    s: Option<RawMatrix>,
    #[serde(default)]
    v: Option<Vec<ScalarText>>,
    matrices: Vec<RawMatrix>,
    #[serde(default)]
    k: Option<usize>,
}

impl RawInstanceFile {
    fn resolve(self) -> Result<VestInstance> {
        let tag = self.field;
        let transforms = self
            .matrices
            .iter()
            .map(|m| resolve_square(m, tag, self.dim))
            .collect::<Result<Vec<_>>>()?;
        let s = self.s.map(|m| m.resolve(tag)).transpose()?;
        let v = self
            .v
            .map(|v| {
                let entries = v.iter().map(|e| e.to_scalar(tag)).collect::<Result<_>>()?;
                Vector::new(tag, entries)
            })
            .transpose()?;
        let inst = VestInstance::new(tag, self.dim, transforms, s, v, self.target)?;
        Ok(match self.k {
            Some(k) => inst.with_k(k),
            None => inst,
        })
    }
}

/// A `0 × 0` matrix serializes as `[]`, which carries no column count.
fn resolve_square(m: &RawMatrix, tag: FieldTag, dim: usize) -> Result<Matrix> {
    if m.0.is_empty() {
        return Ok(Matrix::zeros(tag, 0, dim));
    }
    m.resolve(tag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FieldTag {
        FieldTag::prime(2).unwrap()
    }

    #[test]
    fn shape_and_variant_validation() {
        let t = Matrix::identity(z2(), 2);
        let v = Vector::from_i64(z2(), &[1, 0]);
        assert!(VestInstance::vector_zero(z2(), vec![t.clone()], None, v.clone()).is_ok());
        let bad_s = Matrix::zeros(z2(), 1, 3);
        assert!(matches!(
            VestInstance::vector_zero(z2(), vec![t.clone()], Some(bad_s), v.clone()),
            Err(VestError::Shape(_))
        ));
        assert!(matches!(
            VestInstance::new(
                z2(),
                2,
                vec![t.clone()],
                None,
                None,
                TargetVariant::VectorZero
            ),
            Err(VestError::Variant(_))
        ));
        assert!(matches!(
            VestInstance::new(
                z2(),
                2,
                vec![t.clone()],
                None,
                Some(v),
                TargetVariant::MatrixZero
            ),
            Err(VestError::Variant(_))
        ));
        assert!(matches!(
            VestInstance::matrix_target(FieldTag::RATIONAL, 2, vec![t], TargetVariant::MatrixZero),
            Err(VestError::MixedField(..))
        ));
    }

    #[test]
    fn json_round_trip() {
        let tag = FieldTag::prime(5).unwrap();
        let inst = VestInstance::vector_zero(
            tag,
            vec![Matrix::from_i64_rows(tag, &[&[1, 4], &[0, 2]])],
            Some(Matrix::from_i64_rows(tag, &[&[1, 3]])),
            Vector::from_i64(tag, &[2, 1]),
        )
        .unwrap()
        .with_k(3);
        let text = inst.to_json();
        assert!(text.contains(r#""kind": "prime""#));
        assert!(text.contains(r#""target": "vector_zero""#));
        assert_eq!(VestInstance::from_json(&text).unwrap(), inst);
    }

    #[test]
    fn json_accepts_shorthand_and_rejects_garbage() {
        let text = r#"{"field":{"kind":"rational"},"dim":1,"target":"vector_zero",
            "s":[["1"]],"v":["1/2"],"matrices":[[["0"]],[[3]]],"k":2}"#;
        let inst = VestInstance::from_json(text).unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.k(), Some(2));
        assert!(VestInstance::from_json("{}").is_err());
        let wrong_dim = r#"{"field":{"kind":"rational"},"dim":2,"target":"matrix_zero",
            "s":null,"v":null,"matrices":[[["0"]]],"k":null}"#;
        assert!(matches!(
            VestInstance::from_json(wrong_dim),
            Err(VestError::Shape(_))
        ));
    }
}
