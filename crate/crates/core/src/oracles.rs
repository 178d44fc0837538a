//! Plain brute-force solvers for the source problems of the reductions.
//!
//! These work on sets, strings and row-vectors of scalars directly and share
//! nothing with the generators or the counting solvers except scalar
//! arithmetic, so agreement between them is an independent check.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::brute::Budget;
use crate::error::{Result, VestError};
use crate::field::Scalar;
use crate::instance::CountValue;
use crate::linalg::{Matrix, Vector};
use crate::reductions::{Graph, PcpInstance, SetSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductTarget {
    Zero,
    Identity,
}

struct Meter {
    used: u64,
    budget: Budget,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter { used: 0, budget }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.0 {
            return Err(VestError::BudgetExceeded {
                needed: format!("more than {}", self.budget.0),
                budget: self.budget.0,
            });
        }
        Ok(())
    }
}

/// Number of `k`-vertex subsets whose closed neighborhoods cover every vertex.
pub fn count_dominating_sets(g: &Graph, k: usize, budget: Budget) -> Result<CountValue> {
    let mut meter = Meter::new(budget);
    let mut count = BigUint::default();
    for chosen in (0..g.n()).combinations(k) {
        meter.tick()?;
        let mut covered = vec![false; g.n()];
        for &u in &chosen {
            covered[u] = true;
            for w in g.neighbors(u) {
                covered[w] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            count += 1u32;
        }
    }
    Ok(count)
}

/// Whether `k` distinct sets of the collection partition the universe.
pub fn exact_cover_exists(sys: &SetSystem, k: usize, budget: Budget) -> Result<bool> {
    let mut meter = Meter::new(budget);
    let universe: BTreeSet<usize> = (1..=sys.universe()).collect();
    for chosen in sys.sets().iter().combinations(k) {
        meter.tick()?;
        let mut union = BTreeSet::new();
        let mut disjoint = true;
        for set in chosen {
            for &e in set {
                disjoint &= union.insert(e);
            }
        }
        if disjoint && union == universe {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether at most `k` elements of `a` (with repetition) sum to 1.
pub fn at_most_k_sum_target1_exists(a: &[BigInt], k: usize, budget: Budget) -> Result<bool> {
    let mut meter = Meter::new(budget);
    let one = BigInt::one();
    for size in 0..=k {
        for picks in a.iter().combinations_with_replacement(size) {
            meter.tick()?;
            if picks.into_iter().sum::<BigInt>() == one {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Whether exactly `k` elements of `a` (with repetition) multiply to 1.
pub fn k_product_target1_exists(a: &[Scalar], k: usize, budget: Budget) -> Result<bool> {
    let mut meter = Meter::new(budget);
    let Some(first) = a.first() else {
        return Ok(false);
    };
    let tag = first.tag();
    for picks in a.iter().combinations_with_replacement(k) {
        meter.tick()?;
        let mut product = Scalar::one(tag);
        for x in picks {
            product = product.mul(x)?;
        }
        if product.is_one() {
            return Ok(true);
        }
    }
    Ok(false)
}

type Rows = Vec<Vec<Scalar>>;

fn multiply(x: &Rows, y: &Rows) -> Result<Rows> {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc = Scalar::zero(row[0].tag());
                    for i in 0..inner {
                        acc = acc.add(&row[i].mul(&y[i][c])?)?;
                    }
                    Ok(acc)
                })
                .collect()
        })
        .collect()
}

fn meets(p: &Rows, target: ProductTarget) -> bool {
    p.iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(c, x)| match target {
            ProductTarget::Identity if r == c => x.is_one(),
            _ => x.is_zero(),
        })
    })
}

/// Whether some length-`k` sequence of `mats` (with repetition) multiplies to
/// the zero or identity matrix. The empty product counts as the identity.
pub fn matrix_product_target_exists(
    mats: &[Matrix],
    k: usize,
    target: ProductTarget,
    budget: Budget,
) -> Result<bool> {
    let rows: Vec<Rows> = mats.iter().map(Matrix::to_rows).collect();
    let mut meter = Meter::new(budget);
    if k == 0 {
        return Ok(target == ProductTarget::Identity);
    }
    for m in &rows {
        meter.tick()?;
        if product_search(&rows, m.clone(), k - 1, target, &mut meter)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn product_search(
    mats: &[Rows],
    prefix: Rows,
    depth: usize,
    target: ProductTarget,
    meter: &mut Meter,
) -> Result<bool> {
    if depth == 0 {
        return Ok(meets(&prefix, target));
    }
    for m in mats {
        meter.tick()?;
        if product_search(mats, multiply(m, &prefix)?, depth - 1, target, meter)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether some length-`k` sequence satisfies `S·T_{i_k}⋯T_{i_1}·v = 0`;
/// an absent `S` is the identity.
pub fn vector_zero_sequence_exists(
    mats: &[Matrix],
    s: Option<&Matrix>,
    v: &Vector,
    k: usize,
    budget: Budget,
) -> Result<bool> {
    let rows: Vec<Rows> = mats.iter().map(Matrix::to_rows).collect();
    let s = s.map(Matrix::to_rows);
    let column: Rows = v.entries().iter().map(|x| vec![x.clone()]).collect();
    let mut meter = Meter::new(budget);
    vector_search(&rows, s.as_ref(), column, k, &mut meter)
}

fn vector_search(
    mats: &[Rows],
    s: Option<&Rows>,
    x: Rows,
    depth: usize,
    meter: &mut Meter,
) -> Result<bool> {
    if depth == 0 {
        let out = match s {
            Some(s) => multiply(s, &x)?,
            None => x,
        };
        return Ok(out.iter().flatten().all(Scalar::is_zero));
    }
    for m in mats {
        meter.tick()?;
        if vector_search(mats, s, multiply(m, &x)?, depth - 1, meter)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Shortest index sequence (0-based) of length at most `kmax` whose top and
/// bottom concatenations agree; ties go to the lexicographically first.
pub fn pcp_bounded_search(
    pcp: &PcpInstance,
    kmax: usize,
    budget: Budget,
) -> Result<Option<Vec<usize>>> {
    let mut meter = Meter::new(budget);
    let mut level: Vec<(Vec<usize>, String, String)> =
        vec![(Vec::new(), String::new(), String::new())];
    for _ in 0..kmax {
        let mut next = Vec::new();
        for (seq, top, bottom) in &level {
            for (i, (v, w)) in pcp.pairs().iter().enumerate() {
                meter.tick()?;
                let top = format!("{top}{v}");
                let bottom = format!("{bottom}{w}");
                let mut seq = seq.clone();
                seq.push(i);
                if top == bottom {
                    return Ok(Some(seq));
                }
                if top.starts_with(&bottom) || bottom.starts_with(&top) {
                    next.push((seq, top, bottom));
                }
            }
        }
        level = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTag;

    const B: Budget = Budget::DEFAULT;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(FieldTag::RATIONAL, rows)
    }

    #[test]
    fn dominating_sets() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let empty = Graph::new(2, &[]).unwrap();
        assert_eq!(
            count_dominating_sets(&k3, 1, B).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_dominating_sets(&p3, 1, B).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            count_dominating_sets(&empty, 1, B).unwrap(),
            BigUint::from(0u32)
        );
        assert_eq!(
            count_dominating_sets(&p3, 2, B).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn exact_covers() {
        let sys = SetSystem::new(2, vec![vec![1], vec![2], vec![1, 2]]).unwrap();
        assert!(exact_cover_exists(&sys, 2, B).unwrap());
        assert!(exact_cover_exists(&sys, 1, B).unwrap());
        assert!(!exact_cover_exists(&sys, 3, B).unwrap());
        let partial = SetSystem::new(2, vec![vec![1]]).unwrap();
        assert!(!exact_cover_exists(&partial, 2, B).unwrap());
    }

    #[test]
    fn sums_and_products() {
        let a = [BigInt::from(-39), BigInt::from(40)];
        assert!(at_most_k_sum_target1_exists(&a, 2, B).unwrap());
        assert!(!at_most_k_sum_target1_exists(&a, 1, B).unwrap());
        assert!(k_product_target1_exists(&[q(2, 1), q(1, 2)], 2, B).unwrap());
        assert!(!k_product_target1_exists(&[q(2, 1)], 3, B).unwrap());
    }

    #[test]
    fn matrix_products() {
        let u1 = mat(&[&[1, 1], &[0, 1]]);
        let x = mat(&[&[0, 0], &[-1, 1]]);
        assert!(matrix_product_target_exists(&[u1, x], 3, ProductTarget::Zero, B).unwrap());
        assert!(
            !matrix_product_target_exists(&[mat(&[&[2]])], 1, ProductTarget::Identity, B).unwrap()
        );
        let nil = mat(&[&[0, 0], &[1, 0]]);
        assert!(matrix_product_target_exists(
            std::slice::from_ref(&nil),
            2,
            ProductTarget::Zero,
            B
        )
        .unwrap());
        assert!(!matrix_product_target_exists(&[nil], 1, ProductTarget::Zero, B).unwrap());
    }

    #[test]
    fn vector_sequences() {
        let tag = FieldTag::RATIONAL;
        let v = Vector::from_i64(tag, &[0, 1]);
        let u1 = mat(&[&[1, 1], &[0, 1]]);
        let x = mat(&[&[0, 0], &[-1, 1]]);
        assert!(vector_zero_sequence_exists(&[u1.clone(), x.clone()], None, &v, 2, B).unwrap());
        assert!(!vector_zero_sequence_exists(&[u1, x], None, &v, 1, B).unwrap());
    }

    #[test]
    fn correspondence_search() {
        let same = PcpInstance::from_strs(&[("01", "01")]).unwrap();
        assert_eq!(pcp_bounded_search(&same, 3, B).unwrap(), Some(vec![0]));
        let never = PcpInstance::from_strs(&[("0", "1")]).unwrap();
        assert_eq!(pcp_bounded_search(&never, 5, B).unwrap(), None);
        let classic = PcpInstance::from_strs(&[("1", "101"), ("10", "00"), ("011", "11")]).unwrap();
        assert_eq!(
            pcp_bounded_search(&classic, 4, B).unwrap(),
            Some(vec![0, 2, 1, 2])
        );
        assert_eq!(pcp_bounded_search(&classic, 3, B).unwrap(), None);
    }

    #[test]
    fn budgets_fail_loudly() {
        let k3 = Graph::new(6, &[]).unwrap();
        assert!(matches!(
            count_dominating_sets(&k3, 3, Budget(5)),
            Err(VestError::BudgetExceeded { .. })
        ));
    }
}
