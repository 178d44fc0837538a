//! Dense exact matrices and vectors.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VestError};
use crate::field::{FieldTag, Scalar};

/// A dense `rows × cols` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    tag: FieldTag,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(tag: FieldTag, rows: usize, cols: usize) -> Self {
        Matrix {
            tag,
            rows,
            cols,
            entries: vec![Scalar::zero(tag); rows * cols],
        }
    }

    pub fn identity(tag: FieldTag, n: usize) -> Self {
        let mut m = Matrix::zeros(tag, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(tag);
        }
        m
    }

    /// Build from row-major entries. Every entry must carry `tag`.
    pub fn from_entries(
        tag: FieldTag,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(VestError::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.tag() != tag) {
            return Err(VestError::MixedField(tag, bad.tag()));
        }
        Ok(Matrix {
            tag,
            rows,
            cols,
            entries,
        })
    }

    /// Build from nested rows of integers. Panics on ragged input; meant for
    /// constants and tests.
    pub fn from_i64_rows(tag: FieldTag, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Scalar::from_i64(tag, v)))
            .collect();
        Matrix {
            tag,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_rows(tag: FieldTag, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(VestError::shape("ragged rows"));
        }
        let n = rows.len();
        Matrix::from_entries(tag, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) -> Result<()> {
        if value.tag() != self.tag {
            return Err(VestError::MixedField(self.tag, value.tag()));
        }
        if r >= self.rows || c >= self.cols {
            return Err(VestError::shape(format!(
                "index ({r},{c}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector {
            tag: self.tag,
            entries: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        mat_mul(self, other)
    }

    pub fn scale(&self, k: &Scalar) -> Result<Matrix> {
        if k.tag() != self.tag {
            return Err(VestError::MixedField(self.tag, k.tag()));
        }
        Ok(Matrix {
            entries: self.entries.iter().map(|e| e.mul_same(k)).collect(),
            ..self.clone()
        })
    }

    /// The sub-block `rows × cols` starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Matrix> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(VestError::shape("submatrix out of range"));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            entries.extend_from_slice(&self.row(r)[c0..c0 + cols]);
        }
        Ok(Matrix {
            tag: self.tag,
            rows,
            cols,
            entries,
        })
    }

    /// Zero-pad to `rows × cols`, keeping this matrix in the top-left corner.
    pub fn pad_to(&self, rows: usize, cols: usize) -> Result<Matrix> {
        if rows < self.rows || cols < self.cols {
            return Err(VestError::shape("cannot pad to a smaller shape"));
        }
        let mut m = Matrix::zeros(self.tag, rows, cols);
        for r in 0..self.rows {
            m.entries[r * cols..r * cols + self.cols].clone_from_slice(self.row(r));
        }
        Ok(m)
    }

    /// Field tag, dimensions, then entries in row-major canonical form.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(17 + 8 * self.entries.len());
        self.tag.write_canonical(&mut out);
        out.extend_from_slice(&(self.rows as u32).to_be_bytes());
        out.extend_from_slice(&(self.cols as u32).to_be_bytes());
        for e in &self.entries {
            e.write_canonical(&mut out);
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.tag)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// A column vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vector {
    tag: FieldTag,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn zeros(tag: FieldTag, dim: usize) -> Self {
        Vector {
            tag,
            entries: vec![Scalar::zero(tag); dim],
        }
    }

    pub fn new(tag: FieldTag, entries: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| e.tag() != tag) {
            return Err(VestError::MixedField(tag, bad.tag()));
        }
        Ok(Vector { tag, entries })
    }

    pub fn from_i64(tag: FieldTag, values: &[i64]) -> Self {
        Vector {
            tag,
            entries: values.iter().map(|&v| Scalar::from_i64(tag, v)).collect(),
        }
    }

    /// The `i`-th standard basis vector of dimension `dim`.
    pub fn unit(tag: FieldTag, dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(tag, dim);
        v.entries[i] = Scalar::one(tag);
        v
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Append entries, e.g. the extra coordinates of a gadget.
    pub fn extended(&self, extra: &[Scalar]) -> Result<Vector> {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(extra);
        Vector::new(self.tag, entries)
    }

    /// Concatenate vectors top to bottom.
    pub fn stack(tag: FieldTag, parts: &[Vector]) -> Result<Vector> {
        let mut entries = Vec::new();
        for p in parts {
            if p.tag != tag {
                return Err(VestError::MixedField(tag, p.tag));
            }
            entries.extend_from_slice(&p.entries);
        }
        Ok(Vector { tag, entries })
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(13 + 8 * self.entries.len());
        self.tag.write_canonical(&mut out);
        out.extend_from_slice(&(self.entries.len() as u32).to_be_bytes());
        for e in &self.entries {
            e.write_canonical(&mut out);
        }
        out
    }
}

pub fn mat_mul(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    if x.tag != y.tag {
        return Err(VestError::MixedField(x.tag, y.tag));
    }
    if x.cols != y.rows {
        return Err(VestError::shape(format!(
            "cannot multiply {}x{} by {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    let mut out = Matrix::zeros(x.tag, x.rows, y.cols);
    for i in 0..x.rows {
        for (l, a) in x.row(i).iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.row(l).iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut out.entries[i * y.cols + j];
                *slot = slot.add_same(&a.mul_same(b));
            }
        }
    }
    Ok(out)
}

/// Matrix-vector product `m · x`.
pub fn apply(m: &Matrix, x: &Vector) -> Result<Vector> {
    if m.tag != x.tag {
        return Err(VestError::MixedField(m.tag, x.tag));
    }
    if m.cols != x.dim() {
        return Err(VestError::shape(format!(
            "cannot apply {}x{} to a vector of dimension {}",
            m.rows,
            m.cols,
            x.dim()
        )));
    }
    let entries = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .zip(&x.entries)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Scalar::zero(m.tag), |acc, (a, b)| {
                    acc.add_same(&a.mul_same(b))
                })
        })
        .collect();
    Ok(Vector {
        tag: m.tag,
        entries,
    })
}

/// Block-diagonal assembly of square blocks. The empty list gives a `0×0`
/// matrix over `tag`.
pub fn block_diag(tag: FieldTag, blocks: &[Matrix]) -> Result<Matrix> {
    for b in blocks {
        if b.tag != tag {
            return Err(VestError::MixedField(tag, b.tag));
        }
        if !b.is_square() {
            return Err(VestError::shape(format!(
                "block_diag needs square blocks, got {}x{}",
                b.rows, b.cols
            )));
        }
    }
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let mut out = Matrix::zeros(tag, n, n);
    let mut offset = 0;
    for b in blocks {
        for r in 0..b.rows {
            let start = (offset + r) * n + offset;
            out.entries[start..start + b.cols].clone_from_slice(b.row(r));
        }
        offset += b.rows;
    }
    Ok(out)
}

/// A `d × d` matrix whose rows `p..d` are zero, stored as the blocks `A` (`p × p`)
/// and `B` (`p × (d-p)`) of its top rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowRestrictedMatrix {
    d: usize,
    a: Matrix,
    b: Matrix,
}

impl RowRestrictedMatrix {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if a.tag != b.tag {
            return Err(VestError::MixedField(a.tag, b.tag));
        }
        if !a.is_square() || b.rows != a.rows {
            return Err(VestError::shape(format!(
                "A|B needs A p×p and B p×(d-p), got {}x{} and {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        Ok(RowRestrictedMatrix {
            d: a.rows + b.cols,
            a,
            b,
        })
    }

    /// Split a full `d × d` matrix; fails if any row at index `>= p` is nonzero.
    pub fn from_full(m: &Matrix, p: usize) -> Result<Self> {
        if !m.is_square() || p > m.rows {
            return Err(VestError::shape(format!(
                "cannot restrict a {}x{} matrix to {p} rows",
                m.rows, m.cols
            )));
        }
        if let Some(r) = (p..m.rows).find(|&r| m.row(r).iter().any(|e| !e.is_zero())) {
            return Err(VestError::shape(format!(
                "row {r} is nonzero but only the first {p} rows may be"
            )));
        }
        RowRestrictedMatrix::new(m.submatrix(0, 0, p, p)?, m.submatrix(0, p, p, m.cols - p)?)
    }

    pub fn tag(&self) -> FieldTag {
        self.a.tag
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> usize {
        self.a.rows
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// The full `d × d` matrix `[A B; 0 0]`.
    pub fn to_full(&self) -> Matrix {
        let (p, d) = (self.p(), self.d);
        let mut m = Matrix::zeros(self.tag(), d, d);
        for r in 0..p {
            m.entries[r * d..r * d + p].clone_from_slice(self.a.row(r));
            m.entries[r * d + p..(r + 1) * d].clone_from_slice(self.b.row(r));
        }
        m
    }
}

/// `(A1|B1)·(A2|B2) = (A1·A2)|(A1·B2)`.
pub fn rr_mul(t1: &RowRestrictedMatrix, t2: &RowRestrictedMatrix) -> Result<RowRestrictedMatrix> {
    if t1.d != t2.d || t1.p() != t2.p() {
        return Err(VestError::shape(format!(
            "A|B shapes differ: d={}, p={} vs d={}, p={}",
            t1.d,
            t1.p(),
            t2.d,
            t2.p()
        )));
    }
    RowRestrictedMatrix::new(mat_mul(&t1.a, &t2.a)?, mat_mul(&t1.a, &t2.b)?)
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Scalar as it appears in JSON: a string, or a bare integer for convenience.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    pub(crate) fn to_scalar(&self, tag: FieldTag) -> Result<Scalar> {
        match self {
            ScalarText::Text(t) => Scalar::parse(tag, t),
            ScalarText::Int(i) => Ok(Scalar::from_i64(tag, *i)),
        }
    }
}

/// A matrix read from JSON before its field is known.
#[derive(Deserialize)]
#[serde(transparent)]
pub(crate) struct RawMatrix(pub(crate) Vec<Vec<ScalarText>>);

impl RawMatrix {
    pub(crate) fn resolve(&self, tag: FieldTag) -> Result<Matrix> {
        let rows = self
            .0
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_scalar(tag))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(tag, rows)
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    /// Without a field tag in scope, standalone matrices are read as rationals.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawMatrix::deserialize(d)?
            .resolve(FieldTag::RATIONAL)
            .map_err(D::Error::custom)
    }
}
