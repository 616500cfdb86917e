//! Construction routines: each one either runs under `Strict` mode, where the
//! relevant hypotheses are verified before running (exact checks, so small n
//! only), or under `Permissive` mode, where the procedure runs as-is and the
//! output is still certificate-validated before being returned.

pub mod expand;
pub mod multicover;
pub mod pathfinder;
pub mod pattern;
pub mod spider;

use crate::detect::{self, SearchOutcome};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{Budget, OracleError, SearchMode};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Permissive,
}

/// Structured failure: which stage of which routine gave up, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub stage: &'static str,
    pub detail: String,
}

impl Failure {
    pub fn new(stage: &'static str, detail: impl Into<String>) -> Failure {
        Failure {
            stage,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.detail)
    }
}

impl std::error::Error for Failure {}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        Failure::new("oracle", e.to_string())
    }
}

pub type CResult<T> = Result<T, Failure>;

/// Smallest extension: add pool members in index order (skipping anything in
/// `skip`) until `meets` holds on the added part, then drop additions in
/// reverse order while it still holds. Returns the added set only.
pub(crate) fn minimal_addition(
    pool: &VertexSet,
    skip: &VertexSet,
    meets: impl Fn(&VertexSet) -> bool,
) -> Option<VertexSet> {
    let mut extra = VertexSet::new(pool.capacity());
    let mut added = Vec::new();
    let mut ok = meets(&extra);
    if !ok {
        for v in pool.iter() {
            if skip.contains(v) {
                continue;
            }
            extra.insert(v);
            added.push(v);
            if meets(&extra) {
                ok = true;
                break;
            }
        }
    }
    if !ok {
        return None;
    }
    for &v in added.iter().rev() {
        extra.remove(v);
        if !meets(&extra) {
            extra.insert(v);
        }
    }
    Some(extra)
}

/// Strict-mode hypothesis gate: eps-sparse and (eps*n^(1-c), eps*n)-coherent,
/// the latter checked exactly (so n must be under the cap).
pub(crate) fn check_sparse_coherent(g: &Graph, eps: f64, c: f64, cap: usize) -> CResult<()> {
    let rep = detect::is_eps_sparse(g, eps);
    if !rep.sparse {
        return Err(Failure::new(
            "hypothesis sparse",
            format!(
                "max degree {} (vertex {:?}) is not below eps*n = {}",
                rep.max_degree,
                rep.max_degree_vertex,
                eps * g.n() as f64
            ),
        ));
    }
    let n = g.n() as f64;
    let p = detect::CoherenceParams {
        alpha: eps * n.powf(1.0 - c),
        beta: eps * n,
    };
    let mut budget = Budget::default();
    match detect::coherence_violation(g, p, SearchMode::Exact, &mut budget, cap) {
        Ok(SearchOutcome::Verified) => Ok(()),
        Ok(SearchOutcome::WitnessFound(cert)) => Err(Failure::new(
            "hypothesis coherent",
            format!("anticomplete pair exists: {cert:?}"),
        )),
        Ok(SearchOutcome::Unknown(s)) => Err(Failure::new("hypothesis coherent", s)),
        Err(e) => Err(Failure::new("hypothesis coherent", e.to_string())),
    }
}

/// Maps a vertex set of an induced subgraph back to parent-graph ids.
pub(crate) fn lift_set(sub: &VertexSet, map: &[usize], parent_n: usize) -> VertexSet {
    VertexSet::from_iter(parent_n, sub.iter().map(|v| map[v]))
}
