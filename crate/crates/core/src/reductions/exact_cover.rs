use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use super::{integers_json, sieve_primes, Claim, ReductionCertificate, SetSystem};
use crate::error::Result;
use crate::field::{FieldTag, Scalar};
use crate::instance::{TargetVariant, VestInstance};
use crate::linalg::Matrix;

/// Rationals together with the number of factors to pick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KProductInstance {
    pub numbers: Vec<Scalar>,
    pub k: usize,
}

impl KProductInstance {
    /// The same question as a `1 × 1` identity-product instance.
    pub fn to_vest(&self) -> Result<VestInstance> {
        let q = FieldTag::RATIONAL;
        let transforms = self
            .numbers
            .iter()
            .map(|x| Matrix::from_entries(q, 1, 1, vec![x.clone()]))
            .collect::<Result<Vec<_>>>()?;
        Ok(
            VestInstance::matrix_target(q, 1, transforms, TargetVariant::MatrixIdentity)?
                .with_k(self.k),
        )
    }
}

/// Integers together with the maximum number of summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumInstance {
    #[serde(serialize_with = "serialize_integers")]
    pub integers: Vec<BigInt>,
    pub k: usize,
}

fn serialize_integers<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    integers_json(xs).serialize(s)
}

impl SumInstance {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "kind": "at_most_k_sum",
            "integers": integers_json(&self.integers),
            "k": self.k,
        }))
        .expect("sum instance serializes")
    }
}

/// Element `j` (1-based) gets the `j`-th prime, and `p` is the next one.
/// A set `C` becomes `p · ∏_{c∈C} p_c`, and one extra number
/// `1 / (p^k · ∏_u p_u)` closes the product exactly when `k` chosen sets
/// partition the universe.
pub fn exact_cover_to_k_product(
    sys: &SetSystem,
    k: usize,
) -> Result<(KProductInstance, ReductionCertificate)> {
    let m = sys.universe();
    let primes: Vec<BigInt> = sieve_primes(m + 1).into_iter().map(BigInt::from).collect();
    let p = &primes[m];
    let mut numbers: Vec<Scalar> = sys
        .sets()
        .iter()
        .map(|c| {
            let product = c.iter().fold(p.clone(), |acc, &e| acc * &primes[e - 1]);
            Scalar::from_bigint(FieldTag::RATIONAL, &product)
        })
        .collect();
    let all: BigInt = primes[..m].iter().product();
    let denom = Pow::pow(p, k) * all;
    numbers.push(Scalar::rational(BigInt::one(), denom)?);
    let cert = ReductionCertificate {
        construction: "exact_cover_to_k_product".into(),
        source: sys.describe(),
        k_source: k,
        k_target: k + 1,
        claim: Claim::DecisionEquivalence,
        statement: "an exact cover by k sets exists iff some k+1 of the numbers (with repetition) multiply to 1"
            .into(),
    };
    Ok((KProductInstance { numbers, k: k + 1 }, cert))
}

/// With `x = k + 2` and `m = |U|`, set `C` becomes `-(x^{m+1} + Σ_{j∈C} x^j)` and
/// one extra number `y = k·x^{m+1} + Σ_{j=0}^{m} x^j` is added; the base-`x`
/// digits rule out every sum to 1 except `y` plus an exact cover of `k` sets.
pub fn exact_cover_to_at_most_k_sum(
    sys: &SetSystem,
    k: usize,
) -> Result<(SumInstance, ReductionCertificate)> {
    let m = sys.universe();
    let x = BigInt::from(k + 2);
    let powers: Vec<BigInt> = (0..=m + 1).map(|j| Pow::pow(&x, j)).collect();
    let mut integers: Vec<BigInt> = sys
        .sets()
        .iter()
        .map(|c| {
            let digits = c.iter().fold(BigInt::zero(), |acc, &j| acc + &powers[j]);
            -(&powers[m + 1] + digits)
        })
        .collect();
    let y = BigInt::from(k) * &powers[m + 1] + powers[..=m].iter().sum::<BigInt>();
    integers.push(y);
    let cert = ReductionCertificate {
        construction: "exact_cover_to_at_most_k_sum".into(),
        source: sys.describe(),
        k_source: k,
        k_target: k + 1,
        claim: Claim::DecisionEquivalence,
        statement: "an exact cover by k sets exists iff at most k+1 of the integers (with repetition) sum to 1"
            .into(),
    };
    Ok((SumInstance { integers, k: k + 1 }, cert))
}
