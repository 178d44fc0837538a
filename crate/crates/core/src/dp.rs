//! Dynamic programming over matrix values for instances over a finite field.
//!
//! Level `i` of the table maps every product value `X` of `i` transforms to the
//! number `a_X^i` of sequences producing it; level `i + 1` is obtained by
//! pushing each count `a_X^i` to `X·T_q` for every transform `T_q`. Only
//! reachable values are stored: absent values have count zero.
//!
//! When only the first `p` rows of every transform can be nonzero, products
//! depend on the `p × p` blocks alone except for the last factor, so the table
//! can be kept over `p × p` matrices (see [`count_mk_dp_rows`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Result, VestError};
use crate::field::FieldTag;
use crate::instance::{CountValue, TargetVariant, VestInstance};
use crate::linalg::{apply, mat_mul, Matrix, RowRestrictedMatrix, Vector};

/// One level of the table, keyed by canonical matrix encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    level: usize,
    entries: BTreeMap<Vec<u8>, (Matrix, CountValue)>,
}

impl DpTable {
    fn identity(tag: FieldTag, n: usize) -> Self {
        let id = Matrix::identity(tag, n);
        let mut entries = BTreeMap::new();
        entries.insert(id.canonical_bytes(), (id, BigUint::one()));
        DpTable { level: 0, entries }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Number of distinct product values stored.
    pub fn states(&self) -> usize {
        self.entries.len()
    }

    /// `Σ_X a_X^i`; equals `m^i`.
    pub fn total(&self) -> CountValue {
        self.entries.values().map(|(_, c)| c).sum()
    }

    /// `(X, a_X^i)` in canonical-encoding order.
    pub fn iter(&self) -> impl Iterator<Item = (&Matrix, &CountValue)> {
        self.entries.values().map(|(m, c)| (m, c))
    }

    pub fn count_of(&self, x: &Matrix) -> CountValue {
        self.entries
            .get(&x.canonical_bytes())
            .map_or_else(BigUint::zero, |(_, c)| c.clone())
    }

    pub fn stats(&self) -> LevelStats {
        LevelStats {
            level: self.level,
            states: self.states(),
            total: self.total(),
        }
    }

    /// Right-multiply every state by every factor.
    fn advance(&self, factors: &[Matrix], parallel: bool) -> DpTable {
        let states: Vec<&(Matrix, CountValue)> = self.entries.values().collect();
        let entries = if parallel && states.len() > 1 {
            let chunk = states.len().div_ceil(rayon::current_num_threads().max(1));
            states
                .par_chunks(chunk)
                .map(|part| push_counts(part, factors))
                .reduce(BTreeMap::new, merge_tables)
        } else {
            push_counts(&states, factors)
        };
        DpTable {
            level: self.level + 1,
            entries,
        }
    }
}

type Entries = BTreeMap<Vec<u8>, (Matrix, CountValue)>;

fn push_counts(states: &[&(Matrix, CountValue)], factors: &[Matrix]) -> Entries {
    let mut out = Entries::new();
    for (x, count) in states {
        for t in factors {
            let y = mat_mul(x, t).expect("shapes validated");
            out.entry(y.canonical_bytes())
                .and_modify(|(_, c)| *c += count)
                .or_insert_with(|| (y, count.clone()));
        }
    }
    out
}

fn merge_tables(mut a: Entries, b: Entries) -> Entries {
    for (key, (m, c)) in b {
        a.entry(key)
            .and_modify(|(_, acc)| *acc += &c)
            .or_insert((m, c));
    }
    a
}

/// Per-level summary emitted by `--trace`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    pub states: usize,
    pub total: CountValue,
}

impl fmt::Display for LevelStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {}: states={}, total={}",
            self.level, self.states, self.total
        )
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DpOptions {
    /// Split each level across the rayon pool.
    pub parallel: bool,
}

fn require_finite(inst: &VestInstance) -> Result<()> {
    if inst.tag().modulus().is_none() {
        return Err(VestError::InfiniteField(inst.tag()));
    }
    Ok(())
}

/// `M_k` via the full `d × d` table.
pub fn count_mk_dp(inst: &VestInstance, k: usize) -> Result<CountValue> {
    Ok(count_mk_dp_traced(inst, k, DpOptions::default())?.0)
}

/// [`count_mk_dp`] that also reports the state count and `Σ a_X^i` per level.
pub fn count_mk_dp_traced(
    inst: &VestInstance,
    k: usize,
    opts: DpOptions,
) -> Result<(CountValue, Vec<LevelStats>)> {
    require_finite(inst)?;
    let mut table = DpTable::identity(inst.tag(), inst.dim());
    let mut trace = vec![table.stats()];
    for _ in 0..k {
        table = table.advance(inst.transforms(), opts.parallel);
        trace.push(table.stats());
    }
    Ok((accepted_total(inst, &table), trace))
}

/// `M_0, M_1, …, M_kmax` from a single pass over the levels.
pub fn dp_sequence(inst: &VestInstance, kmax: usize) -> Result<Vec<CountValue>> {
    require_finite(inst)?;
    let mut table = DpTable::identity(inst.tag(), inst.dim());
    let mut out = vec![accepted_total(inst, &table)];
    for _ in 0..kmax {
        table = table.advance(inst.transforms(), false);
        out.push(accepted_total(inst, &table));
    }
    Ok(out)
}

/// The tables for levels `0..=k`.
pub fn dp_tables(inst: &VestInstance, k: usize) -> Result<Vec<DpTable>> {
    require_finite(inst)?;
    let mut tables = vec![DpTable::identity(inst.tag(), inst.dim())];
    for _ in 0..k {
        let next = tables
            .last()
            .expect("nonempty")
            .advance(inst.transforms(), false);
        tables.push(next);
    }
    Ok(tables)
}

fn accepted_total(inst: &VestInstance, table: &DpTable) -> CountValue {
    table
        .iter()
        .filter(|(x, _)| inst.product_accepted(x))
        .map(|(_, c)| c)
        .sum()
}

/// Transforms of an instance split as `A|B` with a shared row count `p`.
struct RowSplit<'a> {
    inst: &'a VestInstance,
    parts: Vec<RowRestrictedMatrix>,
    a_blocks: Vec<Matrix>,
    /// Top `p` entries of `T_j·v` for vector targets.
    top_images: Vec<Vector>,
    /// The first `p` columns of `S` (identity columns when `S` is absent).
    s_left: Option<Matrix>,
}

impl<'a> RowSplit<'a> {
    fn new(inst: &'a VestInstance, p: usize) -> Result<Self> {
        require_finite(inst)?;
        if p == 0 || p > inst.dim() {
            return Err(VestError::shape(format!(
                "row count p={p} must lie in 1..={}",
                inst.dim()
            )));
        }
        let parts = inst
            .transforms()
            .iter()
            .map(|t| RowRestrictedMatrix::from_full(t, p))
            .collect::<Result<Vec<_>>>()?;
        let a_blocks = parts.iter().map(|r| r.a().clone()).collect();
        let (top_images, s_left) = match inst.v() {
            Some(v) => {
                let images = inst
                    .transforms()
                    .iter()
                    .map(|t| {
                        let full = apply(t, v)?;
                        Vector::new(inst.tag(), full.entries()[..p].to_vec())
                    })
                    .collect::<Result<Vec<_>>>()?;
                let s = inst.s_or_identity();
                (images, Some(s.submatrix(0, 0, s.rows(), p)?))
            }
            None => (Vec::new(), None),
        };
        Ok(RowSplit {
            inst,
            parts,
            a_blocks,
            top_images,
            s_left,
        })
    }

    /// Does `(X·A_j)|(X·B_j)` meet the target?
    fn last_step_accepted(&self, x: &Matrix, j: usize) -> bool {
        match self.inst.target() {
            TargetVariant::VectorZero => {
                // Only the top p entries of the product applied to v can be nonzero.
                let y = apply(x, &self.top_images[j]).expect("shapes validated");
                let s_left = self.s_left.as_ref().expect("vector target");
                apply(s_left, &y).expect("shapes validated").is_zero()
            }
            _ => {
                let part = &self.parts[j];
                let full = RowRestrictedMatrix::new(
                    mat_mul(x, part.a()).expect("shapes validated"),
                    mat_mul(x, part.b()).expect("shapes validated"),
                )
                .expect("shapes validated")
                .to_full();
                self.inst.product_accepted(&full)
            }
        }
    }
}

/// `M_k` when only the first `p` rows of every transform may be nonzero.
///
/// The table runs over `p × p` products of the `A` blocks up to level `k - 1`;
/// the last factor `A_j|B_j` is folded in per transform:
/// `M_k = Σ_j Σ_{X accepted with (X·A_j)|(X·B_j)} a_X^{k-1}`.
pub fn count_mk_dp_rows(inst: &VestInstance, p: usize, k: usize) -> Result<CountValue> {
    let split = RowSplit::new(inst, p)?;
    if k == 0 {
        return Ok(
            if inst.product_accepted(&Matrix::identity(inst.tag(), inst.dim())) {
                BigUint::one()
            } else {
                BigUint::zero()
            },
        );
    }
    let mut table = DpTable::identity(inst.tag(), p);
    for _ in 0..k - 1 {
        table = table.advance(&split.a_blocks, false);
    }
    let mut total = BigUint::zero();
    for j in 0..inst.m() {
        for (x, count) in table.iter() {
            if split.last_step_accepted(x, j) {
                total += count;
            }
        }
    }
    Ok(total)
}

/// Outcome of [`min_k`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinK {
    /// Smallest `k ≥ 1` with `M_k > 0`, or `None` when no length works.
    pub k: Option<usize>,
    /// Levels computed before stopping; never more than `|F|^{p²}`.
    pub levels: usize,
}

/// Smallest `k ≥ 1` with `M_k > 0`, or a proof that none exists.
///
/// Tracks only which `p × p` products are reachable. Stops with `None` once a
/// level produces no product unseen at earlier levels (the identity counts as
/// seen at level 0): every longer product then repeats a shorter one, all of
/// which were already rejected. Each continuing level adds a new value, so at
/// most `|F|^{p²}` levels run.
pub fn min_k(inst: &VestInstance, p_rows: usize) -> Result<MinK> {
    let split = RowSplit::new(inst, p_rows)?;
    let start = Matrix::identity(inst.tag(), p_rows);
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([start.canonical_bytes()]);
    let mut frontier: BTreeMap<Vec<u8>, Matrix> =
        BTreeMap::from([(start.canonical_bytes(), start)]);
    let mut level = 0;
    loop {
        level += 1;
        let hit = frontier
            .values()
            .any(|x| (0..inst.m()).any(|j| split.last_step_accepted(x, j)));
        if hit {
            return Ok(MinK {
                k: Some(level),
                levels: level,
            });
        }
        let mut next = BTreeMap::new();
        for x in frontier.values() {
            for a in &split.a_blocks {
                let y = mat_mul(x, a).expect("shapes validated");
                next.entry(y.canonical_bytes()).or_insert(y);
            }
        }
        let fresh = next.keys().filter(|key| !seen.contains(*key)).count();
        if fresh == 0 {
            return Ok(MinK {
                k: None,
                levels: level,
            });
        }
        seen.extend(next.keys().cloned());
        frontier = next;
    }
}
