//! Exhaustive ground-truth solvers: enumerate index sequences directly.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Result, VestError};
use crate::instance::{CountValue, TargetVariant, VestInstance};
use crate::linalg::{apply, mat_mul, Matrix, Vector};

/// Cap on enumeration work, in sequence-steps (one step = one matrix applied
/// to one partial sequence).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);
    pub const UNLIMITED: Budget = Budget(u64::MAX);

    fn exceeded(self, needed: impl ToString) -> VestError {
        VestError::BudgetExceeded {
            needed: needed.to_string(),
            budget: self.0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// The running value of a partial sequence: the vector `T⋯T·v` for vector
/// targets, the matrix product otherwise.
#[derive(Clone)]
enum Partial {
    Vector(Vector),
    Matrix(Matrix),
}

impl Partial {
    fn start(inst: &VestInstance) -> Partial {
        match inst.target() {
            TargetVariant::VectorZero => Partial::Vector(inst.v().expect("validated").clone()),
            _ => Partial::Matrix(Matrix::identity(inst.tag(), inst.dim())),
        }
    }

    /// Apply one more transform on the left.
    fn step(&self, t: &Matrix) -> Partial {
        match self {
            Partial::Vector(x) => Partial::Vector(apply(t, x).expect("shapes validated")),
            Partial::Matrix(p) => Partial::Matrix(mat_mul(t, p).expect("shapes validated")),
        }
    }

    fn accepted(&self, inst: &VestInstance) -> bool {
        match self {
            Partial::Vector(x) => inst.vector_accepted(x),
            Partial::Matrix(p) => match inst.target() {
                TargetVariant::MatrixZero => p.is_zero(),
                _ => p.is_identity(),
            },
        }
    }

    fn key(&self) -> Vec<u8> {
        match self {
            Partial::Vector(x) => x.canonical_bytes(),
            Partial::Matrix(p) => p.canonical_bytes(),
        }
    }
}

/// Steps a full depth-`k` enumeration takes: `m + m² + … + m^k`.
fn enumeration_cost(m: usize, k: usize) -> BigUint {
    let m = BigUint::from(m);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for _ in 0..k {
        power *= &m;
        total += &power;
    }
    total
}

fn check_budget(inst: &VestInstance, k: usize, budget: Budget) -> Result<()> {
    let cost = enumeration_cost(inst.m(), k);
    if cost > BigUint::from(budget.0) {
        return Err(budget.exceeded(cost));
    }
    Ok(())
}

/// Count the accepted leaves below `partial`, `depth` more steps down.
fn count_below(inst: &VestInstance, partial: &Partial, depth: usize) -> u128 {
    if depth == 0 {
        return partial.accepted(inst) as u128;
    }
    inst.transforms()
        .iter()
        .map(|t| count_below(inst, &partial.step(t), depth - 1))
        .sum()
}

/// `M_k`: the number of sequences `(i_1,…,i_k) ∈ {1..m}^k` whose product meets
/// the target, enumerated in lexicographic order. `M_0` is 1 exactly when the
/// empty product (the identity) meets the target.
pub fn mk_bruteforce(inst: &VestInstance, k: usize, budget: Budget) -> Result<CountValue> {
    check_budget(inst, k, budget)?;
    Ok(BigUint::from(count_below(inst, &Partial::start(inst), k)))
}

/// [`mk_bruteforce`] with the first index partitioned across the rayon pool.
pub fn mk_bruteforce_parallel(inst: &VestInstance, k: usize, budget: Budget) -> Result<CountValue> {
    check_budget(inst, k, budget)?;
    if k == 0 {
        return mk_bruteforce(inst, 0, budget);
    }
    let start = Partial::start(inst);
    let total: u128 = inst
        .transforms()
        .par_iter()
        .map(|t| count_below(inst, &start.step(t), k - 1))
        .sum();
    Ok(BigUint::from(total))
}

/// Whether `M_k > 0`; stops at the first witness.
pub fn decide(inst: &VestInstance, k: usize, budget: Budget) -> Result<bool> {
    let mut steps = 0u64;
    let found = search(inst, &Partial::start(inst), k, &mut steps, budget)?;
    Ok(found.is_break())
}

fn search(
    inst: &VestInstance,
    partial: &Partial,
    depth: usize,
    steps: &mut u64,
    budget: Budget,
) -> Result<ControlFlow<()>> {
    if depth == 0 {
        return Ok(if partial.accepted(inst) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        });
    }
    for t in inst.transforms() {
        *steps += 1;
        if *steps > budget.0 {
            return Err(budget.exceeded(format!("more than {}", budget.0)));
        }
        if search(inst, &partial.step(t), depth - 1, steps, budget)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Smallest `k` in `1..=kmax` with `M_k > 0`.
///
/// Walks the set of distinct values reachable after exactly `k` steps (vectors
/// for vector targets, products for matrix targets), so the work per level is
/// bounded by the number of distinct values rather than `m^k`.
pub fn exists_up_to(inst: &VestInstance, kmax: usize, budget: Budget) -> Result<Option<usize>> {
    let mut frontier: BTreeMap<Vec<u8>, Partial> = BTreeMap::new();
    let start = Partial::start(inst);
    frontier.insert(start.key(), start);
    let mut steps = 0u64;
    for k in 1..=kmax {
        let mut next = BTreeMap::new();
        for partial in frontier.values() {
            for t in inst.transforms() {
                steps += 1;
                if steps > budget.0 {
                    return Err(budget.exceeded(format!("more than {}", budget.0)));
                }
                let p = partial.step(t);
                next.entry(p.key()).or_insert(p);
            }
        }
        if next.values().any(|p| p.accepted(inst)) {
            return Ok(Some(k));
        }
        if next.is_empty() {
            return Ok(None);
        }
        frontier = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTag;

    fn z2() -> FieldTag {
        FieldTag::prime(2).unwrap()
    }

    fn one_dim(tag: FieldTag, ts: &[i64]) -> VestInstance {
        VestInstance::vector_zero(
            tag,
            ts.iter()
                .map(|&t| Matrix::from_i64_rows(tag, &[&[t]]))
                .collect(),
            Some(Matrix::from_i64_rows(tag, &[&[1]])),
            Vector::from_i64(tag, &[1]),
        )
        .unwrap()
    }

    #[test]
    fn two_scalar_transforms_over_z2() {
        let inst = one_dim(z2(), &[1, 0]);
        // Products 1·1, 1·0, 0·1, 0·0: three vanish.
        assert_eq!(
            mk_bruteforce(&inst, 2, Budget::DEFAULT).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            mk_bruteforce(&inst, 1, Budget::DEFAULT).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            mk_bruteforce(&inst, 0, Budget::DEFAULT).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn identity_powers_hit_identity_once() {
        let inst = VestInstance::matrix_target(
            FieldTag::RATIONAL,
            2,
            vec![Matrix::identity(FieldTag::RATIONAL, 2)],
            TargetVariant::MatrixIdentity,
        )
        .unwrap();
        assert_eq!(
            mk_bruteforce(&inst, 5, Budget::DEFAULT).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            mk_bruteforce(&inst, 0, Budget::DEFAULT).unwrap(),
            BigUint::one()
        );
    }

    #[test]
    fn m0_uses_empty_product() {
        let tag = FieldTag::RATIONAL;
        let killed = VestInstance::vector_zero(
            tag,
            vec![Matrix::identity(tag, 2)],
            Some(Matrix::from_i64_rows(tag, &[&[0, 1]])),
            Vector::from_i64(tag, &[5, 0]),
        )
        .unwrap();
        assert_eq!(
            mk_bruteforce(&killed, 0, Budget::DEFAULT).unwrap(),
            BigUint::one()
        );
        let zero_target = VestInstance::matrix_target(
            tag,
            2,
            vec![Matrix::zeros(tag, 2, 2)],
            TargetVariant::MatrixZero,
        )
        .unwrap();
        assert_eq!(
            mk_bruteforce(&zero_target, 0, Budget::DEFAULT).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn decide_cases() {
        assert!(decide(&one_dim(z2(), &[0]), 1, Budget::DEFAULT).unwrap());
        let tag = FieldTag::RATIONAL;
        let fixed = VestInstance::vector_zero(
            tag,
            vec![Matrix::identity(tag, 2), Matrix::identity(tag, 2)],
            None,
            Vector::from_i64(tag, &[1, 2]),
        )
        .unwrap();
        for k in 0..6 {
            assert!(!decide(&fixed, k, Budget::DEFAULT).unwrap());
        }
    }

    #[test]
    fn exists_up_to_cases() {
        assert_eq!(
            exists_up_to(&one_dim(z2(), &[0]), 5, Budget::DEFAULT).unwrap(),
            Some(1)
        );
        assert_eq!(
            exists_up_to(&one_dim(z2(), &[1]), 5, Budget::DEFAULT).unwrap(),
            None
        );
        assert_eq!(
            exists_up_to(&one_dim(z2(), &[0]), 0, Budget::DEFAULT).unwrap(),
            None
        );
        let q = FieldTag::RATIONAL;
        // 2·2·(1/4) = 1: first identity product at length 3.
        let quarter = crate::field::Scalar::rational(1, 4).unwrap();
        let inst = VestInstance::matrix_target(
            q,
            1,
            vec![
                Matrix::from_i64_rows(q, &[&[2]]),
                Matrix::from_entries(q, 1, 1, vec![quarter]).unwrap(),
            ],
            TargetVariant::MatrixIdentity,
        )
        .unwrap();
        assert_eq!(exists_up_to(&inst, 2, Budget::DEFAULT).unwrap(), None);
        assert_eq!(exists_up_to(&inst, 4, Budget::DEFAULT).unwrap(), Some(3));
        assert_eq!(
            mk_bruteforce(&inst, 3, Budget::DEFAULT).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let inst = one_dim(z2(), &[1, 1, 1]);
        let err = mk_bruteforce(&inst, 30, Budget::DEFAULT).unwrap_err();
        assert!(matches!(err, VestError::BudgetExceeded { .. }));
        assert!(matches!(
            decide(&inst, 30, Budget(1000)),
            Err(VestError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            exists_up_to(&inst, 10, Budget(5)),
            Err(VestError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let tag = FieldTag::prime(3).unwrap();
        let inst = VestInstance::vector_zero(
            tag,
            vec![
                Matrix::from_i64_rows(tag, &[&[1, 2], &[0, 1]]),
                Matrix::from_i64_rows(tag, &[&[0, 1], &[1, 1]]),
                Matrix::from_i64_rows(tag, &[&[2, 0], &[1, 0]]),
            ],
            Some(Matrix::from_i64_rows(tag, &[&[1, 1]])),
            Vector::from_i64(tag, &[1, 2]),
        )
        .unwrap();
        for k in 0..6 {
            assert_eq!(
                mk_bruteforce(&inst, k, Budget::DEFAULT).unwrap(),
                mk_bruteforce_parallel(&inst, k, Budget::DEFAULT).unwrap()
            );
        }
    }
}
