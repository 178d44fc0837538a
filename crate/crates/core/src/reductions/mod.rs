//! Instance generators for the hardness constructions. Each generator returns
//! the produced instance together with a [`ReductionCertificate`] recording the
//! source, the parameter map and the equivalence the pair must satisfy.

mod dominating_set;
mod exact_cover;
mod gadgets;
mod pcp;
mod primes;
mod s_elimination;
mod zero_product;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VestError};

pub use dominating_set::{dominating_set_to_vest, GadgetStyle};
pub use exact_cover::{
    exact_cover_to_at_most_k_sum, exact_cover_to_k_product, KProductInstance, SumInstance,
};
pub use gadgets::{sum_to_vest_identity_s, sum_to_zero_matrix_product, u_matrix, x_matrix};
pub use pcp::{pcp_to_vest, word_matrix};
pub use primes::sieve_primes;
pub use s_elimination::eliminate_s;
pub use zero_product::{ordering_blocks, vest_to_zero_product, zero_product_to_vest};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(VestError::malformed(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(VestError::malformed(format!("loop at vertex {u}")));
            }
            if !adj[u].insert(v) {
                return Err(VestError::malformed(format!("repeated edge ({u},{v})")));
            }
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    /// `N[u]`: `u` and its neighbors, ascending.
    pub fn closed_neighborhood(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[u].iter().copied().collect();
        let pos = out.partition_point(|&w| w < u);
        out.insert(pos, u);
        out
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parse the edge-list format: a header `n m`, then `m` lines `u v`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| VestError::malformed("empty graph file"))?;
        let (n, m) = parse_pair(header)?;
        let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(VestError::malformed(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            writeln!(out, "{u} {v}").expect("write to string");
        }
        out
    }

    fn describe(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "edges": self.edges() })
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let nums: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| VestError::malformed(format!("expected two integers, got {line:?}")))?;
    match nums.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(VestError::malformed(format!(
            "expected two integers, got {line:?}"
        ))),
    }
}

/// A universe `{1..m}` and a collection of nonempty subsets of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetSystemFile", into = "SetSystemFile")]
pub struct SetSystem {
    universe: usize,
    sets: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetSystemFile {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemFile> for SetSystem {
    type Error = VestError;

    fn try_from(f: SetSystemFile) -> Result<Self> {
        SetSystem::new(f.universe, f.sets)
    }
}

impl From<SetSystem> for SetSystemFile {
    fn from(s: SetSystem) -> Self {
        SetSystemFile {
            universe: s.universe,
            sets: s.sets.iter().map(|c| c.iter().copied().collect()).collect(),
        }
    }
}

impl SetSystem {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let sets = sets
            .into_iter()
            .map(|c| {
                if c.is_empty() {
                    return Err(VestError::malformed("empty set in collection"));
                }
                if let Some(&bad) = c.iter().find(|&&e| e == 0 || e > universe) {
                    return Err(VestError::malformed(format!(
                        "element {bad} outside universe 1..={universe}"
                    )));
                }
                Ok(c.into_iter().collect::<BTreeSet<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetSystem { universe, sets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    fn describe(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("set system serializes")
    }
}

/// Pairs of binary words `(v_i, w_i)`; empty words are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(String, String)>", into = "Vec<(String, String)>")]
pub struct PcpInstance {
    pairs: Vec<(String, String)>,
}

impl TryFrom<Vec<(String, String)>> for PcpInstance {
    type Error = VestError;

    fn try_from(pairs: Vec<(String, String)>) -> Result<Self> {
        PcpInstance::new(pairs)
    }
}

impl From<PcpInstance> for Vec<(String, String)> {
    fn from(p: PcpInstance) -> Self {
        p.pairs
    }
}

impl PcpInstance {
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        for (v, w) in &pairs {
            for word in [v, w] {
                if word.chars().any(|c| c != '0' && c != '1') {
                    return Err(VestError::Alphabet(word.clone()));
                }
            }
        }
        Ok(PcpInstance { pairs })
    }

    pub fn from_strs(pairs: &[(&str, &str)]) -> Result<Self> {
        PcpInstance::new(
            pairs
                .iter()
                .map(|(v, w)| (v.to_string(), w.to_string()))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }
}

/// What a generated instance must satisfy relative to its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Claim {
    /// `M_k(target) = k! · (number of source solutions of size k)`.
    FactorialCount,
    /// Source is a yes-instance at `k_source` iff target is at `k_target`.
    DecisionEquivalence,
    /// Source yes-instances map to target yes-instances; the converse is not claimed.
    SourceImpliesTarget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    /// Generator that produced the instance.
    pub construction: String,
    /// The source instance, as JSON.
    pub source: serde_json::Value,
    pub k_source: usize,
    pub k_target: usize,
    pub claim: Claim,
    /// Human-readable form of the claim.
    pub statement: String,
}

impl ReductionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Parse a JSON list of integers; entries may be numbers or decimal strings.
pub fn parse_integer_list(text: &str) -> Result<Vec<BigInt>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| VestError::malformed(e.to_string()))?;
    let items = value
        .as_array()
        .ok_or_else(|| VestError::malformed("expected a JSON list of integers"))?;
    items
        .iter()
        .map(|item| {
            let text = match item {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => return Err(VestError::malformed(format!("not an integer: {other}"))),
            };
            text.parse::<BigInt>()
                .map_err(|_| VestError::malformed(format!("not an integer: {text}")))
        })
        .collect()
}

pub(crate) fn integers_json(values: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(
        values
            .iter()
            .map(|v| serde_json::Value::String(v.to_string()))
            .collect(),
    )
}
