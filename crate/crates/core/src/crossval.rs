//! Cross-validation of every generator against the independent oracles:
//! an exhaustive sweep over small sources plus seeded random trials.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brute::{decide, mk_bruteforce, Budget};
use crate::error::{Result, VestError};
use crate::field::{FieldTag, Scalar};
use crate::instance::{TargetVariant, VestInstance};
use crate::linalg::{apply, Matrix, Vector};
use crate::oracles::{
    at_most_k_sum_target1_exists, count_dominating_sets, exact_cover_exists,
    matrix_product_target_exists, pcp_bounded_search, vector_zero_sequence_exists, ProductTarget,
};
use crate::reductions::{
    dominating_set_to_vest, eliminate_s, exact_cover_to_at_most_k_sum, exact_cover_to_k_product,
    pcp_to_vest, sum_to_vest_identity_s, sum_to_zero_matrix_product, vest_to_zero_product,
    zero_product_to_vest, GadgetStyle, Graph, PcpInstance, SetSystem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    DominatingSet,
    KProduct,
    KSum,
    ZeroProduct,
    VestIdentity,
    EliminateS,
    ZeroProductToVest,
    VestToZeroProduct,
    Pcp,
}

impl Reduction {
    pub const ALL: [Reduction; 9] = [
        Reduction::DominatingSet,
        Reduction::KProduct,
        Reduction::KSum,
        Reduction::ZeroProduct,
        Reduction::VestIdentity,
        Reduction::EliminateS,
        Reduction::ZeroProductToVest,
        Reduction::VestToZeroProduct,
        Reduction::Pcp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::DominatingSet => "dominating-set",
            Reduction::KProduct => "k-product",
            Reduction::KSum => "k-sum",
            Reduction::ZeroProduct => "zero-product",
            Reduction::VestIdentity => "vest-identity",
            Reduction::EliminateS => "eliminate-s",
            Reduction::ZeroProductToVest => "zero-product-to-vest",
            Reduction::VestToZeroProduct => "vest-to-zero-product",
            Reduction::Pcp => "pcp",
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = VestError;

    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                let names = Reduction::ALL.iter().map(|r| r.name()).join(", ");
                VestError::malformed(format!("unknown reduction {s:?}; expected one of {names}"))
            })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Number of seeded random trials after the exhaustive sweep.
    pub trials: usize,
    /// Caps the source size (vertices, universe, integers, pairs) in both phases.
    pub max_size: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub budget: Budget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 50,
            max_size: 4,
            seed: 0,
            exhaustive: true,
            budget: Budget::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for TrialResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.label, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub reduction: Reduction,
    pub results: Vec<TrialResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        format!(
            "{}: {} trials, {} passed, {} failed",
            self.reduction,
            self.results.len(),
            self.results.len() - failed,
            failed
        )
    }
}

/// Run the exhaustive sweep (if enabled) and `cfg.trials` random trials.
pub fn verify_reduction(reduction: Reduction, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut h = Harness {
        cfg,
        results: Vec::new(),
    };
    let stream = Reduction::ALL
        .iter()
        .position(|&r| r == reduction)
        .expect("listed") as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    match reduction {
        Reduction::DominatingSet => h.dominating_set(&mut rng)?,
        Reduction::KProduct | Reduction::KSum => h.exact_cover(reduction, &mut rng)?,
        Reduction::ZeroProduct | Reduction::VestIdentity => h.integer_sums(reduction, &mut rng)?,
        Reduction::EliminateS => h.eliminate_s(&mut rng)?,
        Reduction::ZeroProductToVest => h.zero_product_to_vest(&mut rng)?,
        Reduction::VestToZeroProduct => h.vest_to_zero_product(&mut rng)?,
        Reduction::Pcp => h.pcp(&mut rng)?,
    }
    Ok(VerifyReport {
        reduction,
        results: h.results,
    })
}

struct Harness<'a> {
    cfg: &'a VerifyConfig,
    results: Vec<TrialResult>,
}

impl Harness<'_> {
    fn record(
        &mut self,
        label: String,
        source: impl fmt::Display,
        target: impl fmt::Display,
        passed: bool,
    ) {
        self.results.push(TrialResult {
            label,
            passed,
            detail: format!("source={source} target={target}"),
        });
    }

    fn dominating_set(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        if self.cfg.exhaustive {
            for n in 1..=self.cfg.max_size.min(6) {
                for g in connected_graphs(n) {
                    for k in 1..=3 {
                        self.check_dominating(&g, k, GadgetStyle::Counting, "exhaustive")?;
                        self.check_dominating(&g, k, GadgetStyle::Decision, "exhaustive")?;
                    }
                }
            }
        }
        for t in 0..self.cfg.trials {
            let n = rng.gen_range(1..=self.cfg.max_size.max(1));
            let edges: Vec<(usize, usize)> = (0..n)
                .tuple_combinations()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let g = Graph::new(n, &edges)?;
            let k = rng.gen_range(1..=3);
            let style = if rng.gen_bool(0.5) {
                GadgetStyle::Counting
            } else {
                GadgetStyle::Decision
            };
            self.check_dominating(&g, k, style, &format!("random#{t}"))?;
        }
        Ok(())
    }

    fn check_dominating(
        &mut self,
        g: &Graph,
        k: usize,
        style: GadgetStyle,
        phase: &str,
    ) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!("{phase} {style:?} n={} edges={:?} k={k}", g.n(), g.edges());
        match style {
            GadgetStyle::Counting => {
                let (inst, _) = dominating_set_to_vest(g, k, style, FieldTag::RATIONAL)?;
                let expected = factorial(k) * count_dominating_sets(g, k.min(g.n()), budget)?;
                let expected = if k > g.n() { BigUint::zero() } else { expected };
                let got = mk_bruteforce(&inst, k, budget)?;
                let ok = got == expected;
                self.record(
                    label,
                    format!("k!*D_k={expected}"),
                    format!("M_k={got}"),
                    ok,
                );
            }
            GadgetStyle::Decision => {
                let (inst, _) = dominating_set_to_vest(g, k, style, FieldTag::prime(2)?)?;
                // Supersets of dominating sets dominate, so "size k" and
                // "at most k" agree once k <= n.
                let exists = !count_dominating_sets(g, k.min(g.n()), budget)?.is_zero();
                let got = decide(&inst, k, budget)?;
                self.record(label, exists, got, exists == got);
            }
        }
        Ok(())
    }

    fn exact_cover(&mut self, reduction: Reduction, rng: &mut ChaCha8Rng) -> Result<()> {
        if self.cfg.exhaustive {
            for universe in 1..=self.cfg.max_size.min(4) {
                let max_sets = if universe <= 3 { 5 } else { 3 };
                for sys in set_systems(universe, max_sets) {
                    for k in 1..=3 {
                        self.check_exact_cover(reduction, &sys, k, "exhaustive")?;
                    }
                }
            }
        }
        for t in 0..self.cfg.trials {
            let universe = rng.gen_range(1..=self.cfg.max_size.clamp(1, 5));
            let count = rng.gen_range(1..=self.cfg.max_size.clamp(1, 5));
            let sets = (0..count)
                .map(|_| loop {
                    let set: Vec<usize> = (1..=universe).filter(|_| rng.gen_bool(0.5)).collect();
                    if !set.is_empty() {
                        break set;
                    }
                })
                .collect();
            let sys = SetSystem::new(universe, sets)?;
            let k = rng.gen_range(1..=3);
            self.check_exact_cover(reduction, &sys, k, &format!("random#{t}"))?;
        }
        Ok(())
    }

    fn check_exact_cover(
        &mut self,
        reduction: Reduction,
        sys: &SetSystem,
        k: usize,
        phase: &str,
    ) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!(
            "{phase} universe={} sets={:?} k={k}",
            sys.universe(),
            sys.sets()
                .iter()
                .map(|s| s.iter().collect_vec())
                .collect_vec()
        );
        let source = exact_cover_exists(sys, k, budget)?;
        let target = if reduction == Reduction::KProduct {
            let (out, _) = exact_cover_to_k_product(sys, k)?;
            decide(&out.to_vest()?, out.k, budget)?
        } else {
            let (out, _) = exact_cover_to_at_most_k_sum(sys, k)?;
            at_most_k_sum_target1_exists(&out.integers, out.k, budget)?
        };
        self.record(label, source, target, source == target);
        Ok(())
    }

    fn integer_sums(&mut self, reduction: Reduction, rng: &mut ChaCha8Rng) -> Result<()> {
        if self.cfg.exhaustive {
            let pool: Vec<BigInt> = (-4..=4).map(BigInt::from).collect();
            for size in 1..=self.cfg.max_size.min(4) {
                for a in pool.iter().cloned().combinations(size) {
                    for k in 1..=3 {
                        self.check_sum(reduction, &a, k, "exhaustive")?;
                    }
                }
            }
        }
        for t in 0..self.cfg.trials {
            let bound = 2 * self.cfg.max_size.max(1) as i64;
            let size = rng.gen_range(1..=self.cfg.max_size.clamp(1, 4));
            let a: Vec<BigInt> = (0..size)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect();
            let k = rng.gen_range(1..=3);
            self.check_sum(reduction, &a, k, &format!("random#{t}"))?;
        }
        Ok(())
    }

    fn check_sum(
        &mut self,
        reduction: Reduction,
        a: &[BigInt],
        k: usize,
        phase: &str,
    ) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!(
            "{phase} A={:?} k={k}",
            a.iter().map(ToString::to_string).collect_vec()
        );
        let source = at_most_k_sum_target1_exists(a, k, budget)?;
        let (inst, cert) = if reduction == Reduction::ZeroProduct {
            sum_to_zero_matrix_product(a, k)?
        } else {
            sum_to_vest_identity_s(a, k)?
        };
        let target = decide(&inst, cert.k_target, budget)?;
        self.record(label, source, target, source == target);
        Ok(())
    }

    fn eliminate_s(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        if self.cfg.exhaustive {
            for d in 1..=self.cfg.max_size.min(2) {
                for src in small_vest_sources(FieldTag::RATIONAL, &[0, 1], d, 2) {
                    for k in 1..=2 {
                        self.check_eliminate_s(&src, k, "exhaustive")?;
                    }
                }
            }
        }
        for t in 0..self.cfg.trials {
            let tag = if rng.gen_bool(0.5) {
                FieldTag::RATIONAL
            } else {
                FieldTag::prime(7)?
            };
            let src = random_vest_source(rng, tag, 2, 2);
            let k = rng.gen_range(1..=2);
            self.check_eliminate_s(&src, k, &format!("random#{t}"))?;
        }
        Ok(())
    }

    fn check_eliminate_s(&mut self, src: &VestInstance, k: usize, phase: &str) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!("{phase} {} k={k}", describe_vest(src));
        let source = vest_oracle(src, k, budget)?;
        let (out, _) = eliminate_s(src, k)?;
        let target = decide(&out, k + 1, budget)?;
        self.record(label, source, target, source == target);
        Ok(())
    }

    fn zero_product_to_vest(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        if self.cfg.exhaustive {
            let z2 = FieldTag::prime(2)?;
            for d in 1..=self.cfg.max_size.min(2) {
                let mats = all_matrices(z2, &[0, 1], d);
                for m in 1..=2 {
                    for chosen in mats.iter().cloned().combinations_with_replacement(m) {
                        let src =
                            VestInstance::matrix_target(z2, d, chosen, TargetVariant::MatrixZero)?;
                        for k in 1..=3 {
                            self.check_zero_product_to_vest(&src, k, "exhaustive")?;
                        }
                    }
                }
            }
        }
        for t in 0..self.cfg.trials {
            let tag = if rng.gen_bool(0.5) {
                FieldTag::RATIONAL
            } else {
                FieldTag::prime(3)?
            };
            let d = rng.gen_range(1..=self.cfg.max_size.clamp(1, 3));
            let m = rng.gen_range(1..=3);
            let mats = (0..m).map(|_| random_matrix(rng, tag, d, d)).collect();
            let src = VestInstance::matrix_target(tag, d, mats, TargetVariant::MatrixZero)?;
            let k = rng.gen_range(1..=3);
            self.check_zero_product_to_vest(&src, k, &format!("random#{t}"))?;
        }
        Ok(())
    }

    fn check_zero_product_to_vest(
        &mut self,
        src: &VestInstance,
        k: usize,
        phase: &str,
    ) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!("{phase} {} k={k}", describe_vest(src));
        let source =
            matrix_product_target_exists(src.transforms(), k, ProductTarget::Zero, budget)?;
        let (out, _) = zero_product_to_vest(src, k)?;
        let target = decide(&out, k, budget)?;
        self.record(label, source, target, source == target);
        Ok(())
    }

    fn vest_to_zero_product(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        let q = FieldTag::RATIONAL;
        if self.cfg.exhaustive {
            for src in small_vest_sources(q, &[-1, 0, 1], 1, 2) {
                for k in 1..=2 {
                    self.check_vest_to_zero_product(&src, k, "exhaustive")?;
                }
            }
        }
        for t in 0..self.cfg.trials {
            let d = rng.gen_range(1..=self.cfg.max_size.clamp(1, 2));
            let src = random_vest_source(rng, q, d, 2);
            let k = rng.gen_range(1..=2);
            self.check_vest_to_zero_product(&src, k, &format!("random#{t}"))?;
        }
        Ok(())
    }

    fn check_vest_to_zero_product(
        &mut self,
        src: &VestInstance,
        k: usize,
        phase: &str,
    ) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!("{phase} {} k={k}", describe_vest(src));
        let source = vest_oracle(src, k, budget)?;
        let (out, _) = vest_to_zero_product(src, k)?;
        let target = decide(&out, k + 3, budget)?;
        self.record(label, source, target, source == target);
        Ok(())
    }

    fn pcp(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        let len = self.cfg.max_size.clamp(1, 3);
        if self.cfg.exhaustive {
            let words = binary_words(len.min(2));
            for (v, w) in words.iter().cartesian_product(&words) {
                let pcp = PcpInstance::new(vec![(v.clone(), w.clone())])?;
                self.check_pcp(&pcp, "exhaustive")?;
            }
        }
        let words = binary_words(len);
        for t in 0..self.cfg.trials {
            let pairs = (0..rng.gen_range(1..=len))
                .map(|_| {
                    let v = words.choose(rng).expect("nonempty").clone();
                    let w = words.choose(rng).expect("nonempty").clone();
                    (v, w)
                })
                .collect();
            self.check_pcp(&PcpInstance::new(pairs)?, &format!("random#{t}"))?;
        }
        Ok(())
    }

    /// Checks the value formula on every short sequence, and that a string-level
    /// witness makes the count at its length positive.
    fn check_pcp(&mut self, pcp: &PcpInstance, phase: &str) -> Result<()> {
        let budget = self.cfg.budget;
        let label = format!("{phase} pairs={:?}", pcp.pairs());
        let (inst, _) = pcp_to_vest(pcp)?;
        let max_len = self.cfg.max_size.clamp(1, 3);
        let mut formula_ok = true;
        for len in 1..=max_len {
            for seq in std::iter::repeat_n(0..pcp.pairs().len(), len).multi_cartesian_product() {
                formula_ok &= pcp_matrix_value(&inst, &seq)? == pcp_string_value(pcp, &seq);
            }
        }
        let witness = pcp_bounded_search(pcp, 2 * max_len, budget)?;
        let witness_ok = match &witness {
            Some(seq) => !mk_bruteforce(&inst, seq.len(), budget)?.is_zero(),
            None => true,
        };
        let source = match &witness {
            Some(seq) => format!("witness {seq:?}"),
            None => "no witness".to_string(),
        };
        let target = format!("formula={} witness_count={}", formula_ok, witness_ok);
        self.record(label, source, target, formula_ok && witness_ok);
        Ok(())
    }
}

/// `S·T_{i_k}⋯T_{i_1}·v` for a sequence of 0-based indices, as a scalar.
pub fn pcp_matrix_value(inst: &VestInstance, seq: &[usize]) -> Result<Scalar> {
    let mut x = inst.v().expect("vector instance").clone();
    for &i in seq {
        x = apply(&inst.transforms()[i], &x)?;
    }
    Ok(apply(&inst.s_or_identity(), &x)?.get(0).clone())
}

/// `(v_{i_1}⋯v_{i_k})_2 - (w_{i_1}⋯w_{i_k})_2`, computed on strings.
pub fn pcp_string_value(pcp: &PcpInstance, seq: &[usize]) -> Scalar {
    let top: String = seq.iter().map(|&i| pcp.pairs()[i].0.as_str()).collect();
    let bottom: String = seq.iter().map(|&i| pcp.pairs()[i].1.as_str()).collect();
    let diff = binary_value(&top) - binary_value(&bottom);
    Scalar::from_bigint(FieldTag::RATIONAL, &diff)
}

fn binary_value(word: &str) -> BigInt {
    if word.is_empty() {
        return BigInt::zero();
    }
    BigInt::parse_bytes(word.as_bytes(), 2).expect("binary word")
}

/// All binary words of length `0..=max_len`.
pub fn binary_words(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut level = vec![String::new()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| [format!("{w}0"), format!("{w}1")])
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

fn vest_oracle(src: &VestInstance, k: usize, budget: Budget) -> Result<bool> {
    vector_zero_sequence_exists(
        src.transforms(),
        src.s(),
        src.v().expect("vector instance"),
        k,
        budget,
    )
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn describe_vest(inst: &VestInstance) -> String {
    let rows = |m: &Matrix| m.to_rows().iter().map(|r| r.iter().join(" ")).join("; ");
    let mut out = format!(
        "field={} T=[{}]",
        inst.tag(),
        inst.transforms()
            .iter()
            .map(|t| format!("[{}]", rows(t)))
            .join(", ")
    );
    if let Some(s) = inst.s() {
        out.push_str(&format!(" S=[{}]", rows(s)));
    }
    if let Some(v) = inst.v() {
        out.push_str(&format!(" v=({})", v.entries().iter().join(", ")));
    }
    out
}

/// Connected graphs on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let index_of = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs
            .iter()
            .position(|&p| p == (a, b))
            .expect("pair listed")
    };
    // relabel[p][e] = index of edge e after applying permutation p.
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index_of(p[u], p[v])).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| pairs[e])
            .collect();
        let g = Graph::new(n, &edges).expect("valid edges");
        if !g.is_connected() {
            continue;
        }
        let canonical = relabel
            .iter()
            .map(|map| {
                (0..pairs.len())
                    .filter(|&e| mask >> e & 1 == 1)
                    .fold(0u64, |acc, e| acc | 1 << map[e])
            })
            .min()
            .expect("at least one permutation");
        if canonical == mask {
            out.push(g);
        }
    }
    out
}

/// Every collection of at most `max_sets` distinct nonempty subsets of `1..=universe`.
pub fn set_systems(universe: usize, max_sets: usize) -> Vec<SetSystem> {
    let subsets: Vec<Vec<usize>> = (1u32..(1 << universe))
        .map(|mask| {
            (1..=universe)
                .filter(|&e| mask >> (e - 1) & 1 == 1)
                .collect()
        })
        .collect();
    (1..=max_sets.min(subsets.len()))
        .flat_map(|c| subsets.iter().cloned().combinations(c))
        .map(|sets| SetSystem::new(universe, sets).expect("valid subsets"))
        .collect()
}

fn all_matrices(tag: FieldTag, values: &[i64], d: usize) -> Vec<Matrix> {
    std::iter::repeat_n(values.iter().copied(), d * d)
        .multi_cartesian_product()
        .map(|entries| {
            let entries = entries
                .into_iter()
                .map(|x| Scalar::from_i64(tag, x))
                .collect();
            Matrix::from_entries(tag, d, d, entries).expect("square")
        })
        .collect()
}

/// Vector instances of dimension `d` with entries from `values`: up to
/// `max_m` transforms (as a multiset), `S` either a single row or square, and
/// every start vector.
pub fn small_vest_sources(
    tag: FieldTag,
    values: &[i64],
    d: usize,
    max_m: usize,
) -> Vec<VestInstance> {
    let mats = all_matrices(tag, values, d);
    let row_s = |h: usize| -> Vec<Matrix> {
        std::iter::repeat_n(values.iter().copied(), h * d)
            .multi_cartesian_product()
            .map(|entries| {
                let entries = entries
                    .into_iter()
                    .map(|x| Scalar::from_i64(tag, x))
                    .collect();
                Matrix::from_entries(tag, h, d, entries).expect("shape")
            })
            .collect()
    };
    let mut s_choices = row_s(1);
    if d > 1 {
        s_choices.extend(row_s(d));
    }
    let vs: Vec<Vector> = std::iter::repeat_n(values.iter().copied(), d)
        .multi_cartesian_product()
        .map(|entries| Vector::from_i64(tag, &entries))
        .collect();
    let mut out = Vec::new();
    for m in 1..=max_m {
        for ts in mats.iter().cloned().combinations_with_replacement(m) {
            for s in &s_choices {
                for v in &vs {
                    out.push(
                        VestInstance::vector_zero(tag, ts.clone(), Some(s.clone()), v.clone())
                            .expect("consistent shapes"),
                    );
                }
            }
        }
    }
    out
}

fn random_scalar(rng: &mut ChaCha8Rng, tag: FieldTag) -> Scalar {
    match tag.modulus() {
        Some(p) => Scalar::from_i64(tag, rng.gen_range(0..p as i64)),
        None if rng.gen_bool(0.2) => Scalar::rational(rng.gen_range(-2..=2), rng.gen_range(1..=3))
            .expect("nonzero denominator"),
        None => Scalar::from_i64(tag, rng.gen_range(-2..=2)),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, tag: FieldTag, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols).map(|_| random_scalar(rng, tag)).collect();
    Matrix::from_entries(tag, rows, cols, entries).expect("shape")
}

/// A random vector instance with `d ≤ max_d`, `m ≤ max_m`, and `S` of height
/// `1..=d+1`, so wide, square and tall shapes all occur.
fn random_vest_source(
    rng: &mut ChaCha8Rng,
    tag: FieldTag,
    max_d: usize,
    max_m: usize,
) -> VestInstance {
    let d = rng.gen_range(1..=max_d);
    let m = rng.gen_range(1..=max_m);
    let h = rng.gen_range(1..=d + 1);
    let ts = (0..m).map(|_| random_matrix(rng, tag, d, d)).collect();
    let s = random_matrix(rng, tag, h, d);
    let v =
        Vector::new(tag, (0..d).map(|_| random_scalar(rng, tag)).collect()).expect("same field");
    VestInstance::vector_zero(tag, ts, Some(s), v).expect("consistent shapes")
}
