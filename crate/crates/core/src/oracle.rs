//! Brute-force gold standards. Everything here is exhaustive (or an honest
//! lower bound in heuristic mode) and independent of the construction code,
//! so construction outputs can be checked against it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exhausted during {0}")]
    BudgetExhausted(&'static str),
    #[error("exact mode refused: n = {n} exceeds cap {cap}")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Node-expansion budget; decremented by searches, never by wall time.
#[derive(Debug, Clone, Copy)]
pub struct Budget(pub u64);

impl Budget {
    pub fn tick(&mut self, stage: &'static str) -> Result<(), OracleError> {
        if self.0 == 0 {
            return Err(OracleError::BudgetExhausted(stage));
        }
        self.0 -= 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(50_000_000)
    }
}

pub const EXACT_PURE_PAIR_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Complete,
    Anticomplete,
}

#[derive(Debug, Clone)]
pub struct PurePairResult {
    pub a: VertexSet,
    pub b: VertexSet,
    pub kind: PairKind,
    /// min(|A|, |B|).
    pub objective: usize,
}

impl PurePairResult {
    pub fn validate(&self, g: &Graph) -> bool {
        if self.a.is_empty() || self.b.is_empty() {
            return false;
        }
        if self.objective != self.a.len().min(self.b.len()) {
            return false;
        }
        let check = match self.kind {
            PairKind::Complete => g.is_complete_pair(&self.a, &self.b),
            PairKind::Anticomplete => g.is_anticomplete_pair(&self.a, &self.b),
        };
        check == Ok(true)
    }
}

/// Closed-neighbourhood masks for word-sized exact search.
fn nbhd_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            let mut m = 1u64 << v;
            for u in g.neighbors(v).iter() {
                m |= 1 << u;
            }
            m
        })
        .collect()
}

fn mask_to_set(n: usize, mut m: u64) -> VertexSet {
    let mut s = VertexSet::new(n);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        s.insert(v);
        m &= m - 1;
    }
    s
}

/// Exhaustive best anticomplete pair: for every nonempty A, the best partner
/// is all of V minus N[A]. Ranking: objective, then |A|+|B|, then the
/// lexicographically least (A, B).
fn exact_anticomplete(g: &Graph, budget: &mut Budget) -> Result<Option<(u64, u64)>, OracleError> {
    let n = g.n();
    if n > EXACT_PURE_PAIR_CAP {
        return Err(OracleError::ExactCapExceeded {
            n,
            cap: EXACT_PURE_PAIR_CAP,
        });
    }
    let masks = nbhd_masks(g);
    let all = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    let mut best: Option<(u64, u64)> = None;
    let mut best_key = (0usize, 0usize);
    for a in 1..=all {
        budget.tick("exact_anticomplete")?;
        let mut closed = 0u64;
        let mut bits = a;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            closed |= masks[v];
            bits &= bits - 1;
        }
        let b = all & !closed;
        if b == 0 {
            continue;
        }
        let (sa, sb) = (a.count_ones() as usize, b.count_ones() as usize);
        let key = (sa.min(sb), sa + sb);
        let better = match best {
            None => true,
            Some((ba, bb)) => {
                key > best_key || (key == best_key && lex_pair(n, a, b, ba, bb))
            }
        };
        if better {
            best = Some((a, b));
            best_key = key;
        }
    }
    Ok(best)
}

/// True when (a, b) precedes (ba, bb) in lexicographic set order.
fn lex_pair(n: usize, a: u64, b: u64, ba: u64, bb: u64) -> bool {
    let cmp = |x: u64, y: u64| mask_to_set(n, x).cmp(&mask_to_set(n, y));
    match cmp(a, ba) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => cmp(b, bb) == std::cmp::Ordering::Less,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Heuristic,
}

/// Best anticomplete pair under max-min objective; `None` when no nonempty
/// anticomplete pair exists (e.g. complete graphs).
pub fn max_anticomplete_pair(
    g: &Graph,
    mode: SearchMode,
    budget: &mut Budget,
    seed: u64,
) -> Result<Option<PurePairResult>, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(None);
    }
    match mode {
        SearchMode::Exact => {
            let best = exact_anticomplete(g, budget)?;
            Ok(best.map(|(a, b)| {
                let a = mask_to_set(n, a);
                let b = mask_to_set(n, b);
                let objective = a.len().min(b.len());
                PurePairResult {
                    a,
                    b,
                    kind: PairKind::Anticomplete,
                    objective,
                }
            }))
        }
        SearchMode::Heuristic => Ok(heuristic_anticomplete(g, budget, seed)),
    }
}

/// Random-restart bilateral peeling: random split, then repeatedly drop the
/// vertex incident to the most cross edges until the pair is anticomplete.
pub(crate) fn heuristic_anticomplete(
    g: &Graph,
    budget: &mut Budget,
    seed: u64,
) -> Option<PurePairResult> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<PurePairResult> = None;
    let mut exhausted = false;
    while !exhausted && budget.tick("heuristic_anticomplete").is_ok() {
        let mut a = VertexSet::new(n);
        let mut b = VertexSet::new(n);
        for v in 0..n {
            if rng.gen_bool(0.5) {
                a.insert(v);
            } else {
                b.insert(v);
            }
        }
        loop {
            // Each peel step also costs a tick; the current restart is
            // allowed to finish so the recorded pair is anticomplete.
            if budget.tick("heuristic_anticomplete").is_err() {
                exhausted = true;
            }
            // Cross degree of each vertex into the opposite side.
            let mut worst: Option<(usize, usize)> = None;
            for v in a.iter() {
                let d = g.neighbors(v).intersection_len(&b);
                if d > 0 && worst.map_or(true, |(wd, _)| d > wd) {
                    worst = Some((d, v));
                }
            }
            for v in b.iter() {
                let d = g.neighbors(v).intersection_len(&a);
                if d > 0 && worst.map_or(true, |(wd, _)| d > wd) {
                    worst = Some((d, v));
                }
            }
            match worst {
                Some((_, v)) => {
                    a.remove(v);
                    b.remove(v);
                }
                None => break,
            }
        }
        if a.is_empty() || b.is_empty() {
            continue;
        }
        debug_assert_eq!(g.is_anticomplete_pair(&a, &b), Ok(true));
        let objective = a.len().min(b.len());
        let replace = match &best {
            None => true,
            Some(p) => {
                objective > p.objective
                    || (objective == p.objective && a.len() + b.len() > p.a.len() + p.b.len())
            }
        };
        if replace {
            best = Some(PurePairResult {
                a,
                b,
                kind: PairKind::Anticomplete,
                objective,
            });
        }
    }
    best
}

/// Best pure pair of either kind. A complete pair in `g` is an anticomplete
/// pair in the complement, so both kinds run through the same engine.
/// Ties between kinds go to the anticomplete side.
pub fn max_pure_pair(
    g: &Graph,
    mode: SearchMode,
    budget: &mut Budget,
    seed: u64,
) -> Result<Option<PurePairResult>, OracleError> {
    let anti = max_anticomplete_pair(g, mode, budget, seed)?;
    let comp_side = max_anticomplete_pair(&g.complement(), mode, budget, seed ^ 0x9e3779b97f4a7c15)?;
    let comp = comp_side.map(|p| PurePairResult {
        kind: PairKind::Complete,
        ..p
    });
    Ok(match (anti, comp) {
        (None, c) => c,
        (a, None) => a,
        (Some(a), Some(c)) => {
            let ka = (a.objective, a.a.len() + a.b.len());
            let kc = (c.objective, c.a.len() + c.b.len());
            if kc > ka {
                Some(c)
            } else {
                Some(a)
            }
        }
    })
}

/// Exact search for an induced path of length `ell` (`ell` edges) from `a`
/// to `b`. Backtracking with chordlessness enforced at every extension.
pub fn induced_path_oracle(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, OracleError> {
    if a == b {
        return Err(OracleError::InvalidInput(
            "endpoints must differ; use induced_cycle_oracle for cycles".into(),
        ));
    }
    let mut path = vec![a];
    let mut used = VertexSet::singleton(g.n(), a);
    if extend_induced_path(g, b, ell, &mut path, &mut used, budget)? {
        debug_assert!(g.is_induced_path(&path));
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

fn extend_induced_path(
    g: &Graph,
    target: usize,
    ell: usize,
    path: &mut Vec<usize>,
    used: &mut VertexSet,
    budget: &mut Budget,
) -> Result<bool, OracleError> {
    budget.tick("induced_path_oracle")?;
    let last = *path.last().unwrap();
    if path.len() == ell + 1 {
        return Ok(last == target);
    }
    // Reaching the target early would force a chord later; also the target
    // may only be adjacent to the final interior vertex.
    for w in g.neighbors(last).iter() {
        if used.contains(w) {
            continue;
        }
        if w == target && path.len() != ell {
            continue;
        }
        // w must have no neighbour among path[0..len-1].
        let chord = path[..path.len() - 1]
            .iter()
            .any(|&p| g.has_edge(w, p));
        if chord {
            continue;
        }
        path.push(w);
        used.insert(w);
        if extend_induced_path(g, target, ell, path, used, budget)? {
            return Ok(true);
        }
        path.pop();
        used.remove(w);
    }
    Ok(false)
}

/// Exact search for an induced cycle of length `ell` through `v`.
pub fn induced_cycle_oracle(
    g: &Graph,
    v: usize,
    ell: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, OracleError> {
    if ell < 3 {
        return Err(OracleError::InvalidInput("cycle length must be >= 3".into()));
    }
    let mut path = vec![v];
    let mut used = VertexSet::singleton(g.n(), v);
    if extend_induced_cycle(g, v, ell, &mut path, &mut used, budget, false)? {
        debug_assert!(g.is_induced_cycle(&path));
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

/// Cycle search restricted (when `min_rooted`) to cycles whose minimum
/// vertex is `root`; iterating roots then sees every cycle exactly once.
pub(crate) fn induced_cycle_rooted(
    g: &Graph,
    root: usize,
    ell: usize,
    budget: &mut Budget,
    min_rooted: bool,
) -> Result<Option<Vec<usize>>, OracleError> {
    if ell < 3 {
        return Err(OracleError::InvalidInput("cycle length must be >= 3".into()));
    }
    let mut path = vec![root];
    let mut used = VertexSet::singleton(g.n(), root);
    if extend_induced_cycle(g, root, ell, &mut path, &mut used, budget, min_rooted)? {
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

fn extend_induced_cycle(
    g: &Graph,
    root: usize,
    ell: usize,
    path: &mut Vec<usize>,
    used: &mut VertexSet,
    budget: &mut Budget,
    min_rooted: bool,
) -> Result<bool, OracleError> {
    budget.tick("induced_cycle_search")?;
    let last = *path.last().unwrap();
    if path.len() == ell {
        return Ok(g.has_edge(last, root));
    }
    let closing = path.len() == ell - 1;
    for w in g.neighbors(last).iter() {
        if used.contains(w) || (min_rooted && w < root) {
            continue;
        }
        // Adjacency to the root is only allowed (and then required) for the
        // final vertex; adjacency to any other earlier vertex is a chord.
        if g.has_edge(w, root) != closing && path.len() > 1 {
            continue;
        }
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        path.push(w);
        used.insert(w);
        if extend_induced_cycle(g, root, ell, path, used, budget, min_rooted)? {
            return Ok(true);
        }
        path.pop();
        used.remove(w);
    }
    Ok(false)
}

/// All induced cycles of length exactly `ell`, canonicalized: each cycle is
/// listed once, starting at its minimum vertex, second vertex smaller than
/// the last.
pub fn enumerate_induced_cycles(
    g: &Graph,
    ell: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<usize>>, OracleError> {
    if ell < 3 {
        return Err(OracleError::InvalidInput("cycle length must be >= 3".into()));
    }
    let mut out = Vec::new();
    for root in 0..g.n() {
        let mut path = vec![root];
        let mut used = VertexSet::singleton(g.n(), root);
        enumerate_from(g, root, ell, &mut path, &mut used, budget, &mut out)?;
    }
    Ok(out)
}

fn enumerate_from(
    g: &Graph,
    root: usize,
    ell: usize,
    path: &mut Vec<usize>,
    used: &mut VertexSet,
    budget: &mut Budget,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), OracleError> {
    budget.tick("enumerate_induced_cycles")?;
    if path.len() == ell {
        if g.has_edge(*path.last().unwrap(), root) && path[1] < path[ell - 1] {
            out.push(path.clone());
        }
        return Ok(());
    }
    let last = *path.last().unwrap();
    let closing = path.len() == ell - 1;
    for w in g.neighbors(last).iter() {
        if used.contains(w) || w < root {
            continue;
        }
        if path.len() > 1 && g.has_edge(w, root) != closing {
            continue;
        }
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        path.push(w);
        used.insert(w);
        enumerate_from(g, root, ell, path, used, budget, out)?;
        path.pop();
        used.remove(w);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn anticomplete_on_edgeless_four() {
        let g = Graph::edgeless(4);
        let p = max_anticomplete_pair(&g, SearchMode::Exact, &mut b(), 0)
            .unwrap()
            .unwrap();
        assert_eq!(p.objective, 2);
        assert!(p.validate(&g));
    }

    #[test]
    fn anticomplete_on_complete_graph_is_none() {
        let g = Graph::complete(5);
        assert!(max_anticomplete_pair(&g, SearchMode::Exact, &mut b(), 0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn anticomplete_on_two_triangles() {
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
        edges.sort();
        let g = Graph::from_edges(6, &edges).unwrap();
        let p = max_anticomplete_pair(&g, SearchMode::Exact, &mut b(), 0)
            .unwrap()
            .unwrap();
        assert_eq!(p.objective, 3);
        assert_eq!(p.a.to_vec(), vec![0, 1, 2]);
        assert_eq!(p.b.to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn pure_pair_on_k4_is_complete() {
        let g = Graph::complete(4);
        let p = max_pure_pair(&g, SearchMode::Exact, &mut b(), 0).unwrap().unwrap();
        assert_eq!(p.kind, PairKind::Complete);
        assert_eq!(p.objective, 2);
        assert!(p.validate(&g));
    }

    #[test]
    fn pure_pair_on_c6() {
        let g = Graph::cycle(6);
        let p = max_pure_pair(&g, SearchMode::Exact, &mut b(), 0).unwrap().unwrap();
        assert_eq!(p.objective, 2);
        assert!(p.validate(&g));
    }

    #[test]
    fn petersen_anticomplete_objective_frozen() {
        // Computed by the exhaustive engine and pinned.
        let g = petersen();
        let p = max_anticomplete_pair(&g, SearchMode::Exact, &mut b(), 0)
            .unwrap()
            .unwrap();
        assert!(p.validate(&g));
        assert_eq!(p.objective, 2);
    }

    #[test]
    fn heuristic_never_beats_exact() {
        for seed in 0..10u64 {
            let g = crate::gen_test_random(10, 0.4, seed);
            let exact = max_anticomplete_pair(&g, SearchMode::Exact, &mut b(), 0).unwrap();
            let heur =
                max_anticomplete_pair(&g, SearchMode::Heuristic, &mut Budget(200), seed).unwrap();
            let eo = exact.map_or(0, |p| p.objective);
            let ho = heur.map_or(0, |p| p.objective);
            assert!(ho <= eo, "seed {seed}: heuristic {ho} > exact {eo}");
        }
    }

    #[test]
    fn pure_pair_complement_swaps_kind() {
        for seed in 0..10u64 {
            let g = crate::gen_test_random(9, 0.5, seed);
            let p = max_pure_pair(&g, SearchMode::Exact, &mut b(), 0).unwrap();
            let q = max_pure_pair(&g.complement(), SearchMode::Exact, &mut b(), 0).unwrap();
            assert_eq!(p.map(|x| x.objective), q.map(|x| x.objective));
        }
    }

    #[test]
    fn induced_path_on_path_graph() {
        let g = Graph::path(5);
        let p = induced_path_oracle(&g, 0, 4, 4, &mut b()).unwrap().unwrap();
        assert_eq!(p, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn no_induced_p3_in_k4() {
        let g = Graph::complete(4);
        assert!(induced_path_oracle(&g, 0, 2, 2, &mut b()).unwrap().is_none());
    }

    #[test]
    fn petersen_induced_path_lengths() {
        // Frozen from the exhaustive engine. Adjacent endpoints admit only
        // the edge itself (anything longer has the endpoint edge as chord);
        // the non-adjacent pair 0,2 admits induced paths of length 2..=4.
        let g = petersen();
        assert!(induced_path_oracle(&g, 0, 1, 1, &mut b()).unwrap().is_some());
        assert!(induced_path_oracle(&g, 0, 1, 4, &mut b()).unwrap().is_none());
        assert!(induced_path_oracle(&g, 0, 2, 2, &mut b()).unwrap().is_some());
        assert!(induced_path_oracle(&g, 0, 2, 4, &mut b()).unwrap().is_some());
    }

    #[test]
    fn cycle_oracle_on_c6() {
        let g = Graph::cycle(6);
        let c = induced_cycle_oracle(&g, 0, 6, &mut b()).unwrap().unwrap();
        assert!(g.is_induced_cycle(&c));
        assert!(induced_cycle_oracle(&g, 0, 4, &mut b()).unwrap().is_none());
    }

    #[test]
    fn enumerate_c6_once() {
        let g = Graph::cycle(6);
        assert_eq!(enumerate_induced_cycles(&g, 6, &mut b()).unwrap().len(), 1);
        assert_eq!(enumerate_induced_cycles(&g, 4, &mut b()).unwrap().len(), 0);
    }

    #[test]
    fn k4_has_no_long_induced_cycles() {
        let g = Graph::complete(4);
        for ell in 4..=4 {
            assert!(enumerate_induced_cycles(&g, ell, &mut b()).unwrap().is_empty());
        }
    }

    #[test]
    fn petersen_cycle_census() {
        // Computed by the enumerator and pinned: girth 5 with 12 pentagons.
        let g = petersen();
        assert_eq!(enumerate_induced_cycles(&g, 5, &mut b()).unwrap().len(), 12);
        assert!(enumerate_induced_cycles(&g, 4, &mut b()).unwrap().is_empty());
        assert_eq!(enumerate_induced_cycles(&g, 6, &mut b()).unwrap().len(), 10);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = petersen();
        let mut tiny = Budget(3);
        assert!(matches!(
            enumerate_induced_cycles(&g, 5, &mut tiny),
            Err(OracleError::BudgetExhausted(_))
        ));
    }
}
