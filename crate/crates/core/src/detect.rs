//! Hypothesis detectors: sparsity, coherence, expansion, holes and antiholes
//! of exact length, branch-length, induced containment, and the heuristic
//! sparse-side finder. Exact modes are exhaustive with hard caps; heuristic
//! modes never claim Verified.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, Budget, OracleError, SearchMode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetectError {
    #[error("hole length must be at least 4, got {0}")]
    HoleTooShort(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Witness attached to a `WitnessFound` outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Disjoint anticomplete pair (coherence violations).
    SetPair(VertexSet, VertexSet),
    /// Violating set X (expansion failures).
    Set(VertexSet),
    /// Vertex sequence (holes: cyclic order; paths: endpoint to endpoint).
    Sequence(Vec<usize>),
    /// embedding[i] = image of pattern vertex i.
    Embedding(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The property holds; only exact modes may say this.
    Verified,
    WitnessFound(Certificate),
    /// Search gave up (budget, or heuristic found nothing).
    Unknown(String),
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::WitnessFound(c) => Some(c),
            _ => None,
        }
    }
}

/// Default cap on exhaustive coherence/expansion searches.
pub const DEFAULT_EXACT_CAP: usize = 20;

/// Cardinality needed to meet a real threshold: `|S| >= x` read as
/// `|S| >= ceil(x)`, with a small tolerance against float noise.
pub fn card_threshold(x: f64) -> usize {
    if x <= 0.0 {
        0
    } else {
        (x - 1e-9).ceil() as usize
    }
}

#[derive(Debug, Clone)]
pub struct SparsityReport {
    pub sparse: bool,
    pub max_degree: usize,
    pub max_degree_vertex: Option<usize>,
}

/// Every vertex degree strictly below `eps * n`.
pub fn is_eps_sparse(g: &Graph, eps: f64) -> SparsityReport {
    assert!(eps > 0.0);
    let v = (0..g.n()).max_by_key(|&v| g.degree(v));
    let max_degree = v.map_or(0, |v| g.degree(v));
    SparsityReport {
        sparse: (max_degree as f64) < eps * g.n() as f64 - 1e-9 || g.n() == 0,
        max_degree,
        max_degree_vertex: v,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CoherenceParams {
    pub alpha: f64,
    pub beta: f64,
}

/// Searches for disjoint anticomplete A, B with |A| >= alpha, |B| >= beta.
/// Exact mode enumerates every candidate A over word masks (n <= cap);
/// heuristic mode peels random splits and never returns Verified.
pub fn coherence_violation(
    g: &Graph,
    p: CoherenceParams,
    mode: SearchMode,
    budget: &mut Budget,
    cap: usize,
) -> Result<SearchOutcome, OracleError> {
    let n = g.n();
    let ca = card_threshold(p.alpha).max(1);
    let cb = card_threshold(p.beta).max(1);
    match mode {
        SearchMode::Exact => {
            if n > cap || n > 63 {
                return Err(OracleError::ExactCapExceeded { n, cap: cap.min(63) });
            }
            let masks: Vec<u64> = (0..n)
                .map(|v| {
                    let mut m = 1u64 << v;
                    for u in g.neighbors(v).iter() {
                        m |= 1 << u;
                    }
                    m
                })
                .collect();
            let all = if n == 0 { 0 } else { (1u64 << n) - 1 };
            for a in 1..=all {
                budget.tick("coherence_violation")?;
                if (a.count_ones() as usize) < ca {
                    continue;
                }
                let mut closed = 0u64;
                let mut bits = a;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    closed |= masks[v];
                    bits &= bits - 1;
                }
                let b = all & !closed;
                if (b.count_ones() as usize) >= cb {
                    let a_set = VertexSet::from_iter(n, BitIter(a));
                    let b_set = VertexSet::from_iter(n, BitIter(b));
                    debug_assert_eq!(g.is_anticomplete_pair(&a_set, &b_set), Ok(true));
                    return Ok(SearchOutcome::WitnessFound(Certificate::SetPair(
                        a_set, b_set,
                    )));
                }
            }
            Ok(SearchOutcome::Verified)
        }
        SearchMode::Heuristic => {
            match oracle::heuristic_anticomplete(g, budget, 0x5eed) {
                Some(pair) if pair.a.len() >= ca && pair.b.len() >= cb => Ok(
                    SearchOutcome::WitnessFound(Certificate::SetPair(pair.a, pair.b)),
                ),
                Some(pair) if pair.b.len() >= ca && pair.a.len() >= cb => Ok(
                    SearchOutcome::WitnessFound(Certificate::SetPair(pair.b, pair.a)),
                ),
                _ => Ok(SearchOutcome::Unknown(
                    "heuristic peeling found no violating pair".into(),
                )),
            }
        }
    }
}

struct BitIter(u64);
impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// |N[X]| >= min(tau*|X|, n/2) for every nonempty X. Exact mode is plain
/// subset enumeration; Verified means every subset passes.
pub fn is_tau_expanding(
    g: &Graph,
    tau: f64,
    mode: SearchMode,
    budget: &mut Budget,
    cap: usize,
) -> Result<SearchOutcome, OracleError> {
    assert!(tau >= 1.0);
    let n = g.n();
    if n == 0 {
        return Ok(SearchOutcome::Verified);
    }
    let half = n as f64 / 2.0;
    match mode {
        SearchMode::Exact => {
            if n > cap || n > 63 {
                return Err(OracleError::ExactCapExceeded { n, cap: cap.min(63) });
            }
            let masks: Vec<u64> = (0..n)
                .map(|v| {
                    let mut m = 1u64 << v;
                    for u in g.neighbors(v).iter() {
                        m |= 1 << u;
                    }
                    m
                })
                .collect();
            let all = (1u64 << n) - 1;
            for x in 1..=all {
                budget.tick("is_tau_expanding")?;
                let mut closed = 0u64;
                let mut bits = x;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    closed |= masks[v];
                    bits &= bits - 1;
                }
                let need = (tau * x.count_ones() as f64).min(half);
                if (closed.count_ones() as f64) < need - 1e-9 {
                    return Ok(SearchOutcome::WitnessFound(Certificate::Set(
                        VertexSet::from_iter(n, BitIter(x)),
                    )));
                }
            }
            Ok(SearchOutcome::Verified)
        }
        SearchMode::Heuristic => {
            // Singletons and their closed neighbourhoods, cheapest suspects.
            for v in 0..n {
                budget.tick("is_tau_expanding")?;
                for x in [
                    VertexSet::singleton(n, v),
                    g.closed_nbhd(&VertexSet::singleton(n, v)),
                ] {
                    let need = (tau * x.len() as f64).min(half);
                    if (g.closed_nbhd(&x).len() as f64) < need - 1e-9 {
                        return Ok(SearchOutcome::WitnessFound(Certificate::Set(x)));
                    }
                }
            }
            Ok(SearchOutcome::Unknown(
                "no violation among sampled sets".into(),
            ))
        }
    }
}

/// Induced cycle of length exactly `ell` (>= 4).
pub fn find_hole_of_length(
    g: &Graph,
    ell: usize,
    mode: SearchMode,
    budget: &mut Budget,
) -> Result<SearchOutcome, DetectError> {
    if ell < 4 {
        return Err(DetectError::HoleTooShort(ell));
    }
    for root in 0..g.n() {
        match oracle::induced_cycle_rooted(g, root, ell, budget, true) {
            Ok(Some(cycle)) => {
                debug_assert!(g.is_induced_cycle(&cycle));
                return Ok(SearchOutcome::WitnessFound(Certificate::Sequence(cycle)));
            }
            Ok(None) => {}
            Err(OracleError::BudgetExhausted(s)) if mode == SearchMode::Heuristic => {
                return Ok(SearchOutcome::Unknown(format!("budget exhausted in {s}")));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(SearchOutcome::Verified)
}

pub fn find_antihole_of_length(
    g: &Graph,
    ell: usize,
    mode: SearchMode,
    budget: &mut Budget,
) -> Result<SearchOutcome, DetectError> {
    find_hole_of_length(&g.complement(), ell, mode, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchLength {
    Finite(usize),
    Infinite,
}

impl BranchLength {
    pub fn at_least(&self, ell: usize) -> bool {
        match self {
            BranchLength::Infinite => true,
            BranchLength::Finite(b) => *b >= ell,
        }
    }
}

/// Largest ell such that every cycle has length >= ell and every two
/// degree->=3 vertices are at distance >= ell. Infinite when the graph is
/// acyclic and no component holds two branch vertices.
pub fn branch_length(h: &Graph) -> BranchLength {
    let mut best: Option<usize> = None;
    if let Some(girth) = girth(h) {
        best = Some(girth);
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    for &u in &branch {
        let dist = h.bfs_distances(u);
        for &v in &branch {
            if v > u {
                if let Some(d) = dist[v] {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
        }
    }
    match best {
        Some(b) => BranchLength::Finite(b),
        None => BranchLength::Infinite,
    }
}

/// Exact girth via BFS from every vertex; None for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x).iter() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let c = dist[x] + dist[y] + 1;
                    if best.map_or(true, |b| c < b) {
                        best = Some(c);
                    }
                }
            }
        }
    }
    best
}

/// Exact induced-subgraph isomorphism search: maps pattern vertices in
/// degree-descending order, checking adjacency and non-adjacency against
/// everything already placed.
pub fn contains_induced(
    g: &Graph,
    h: &Graph,
    budget: &mut Budget,
) -> Result<SearchOutcome, OracleError> {
    if h.n() == 0 {
        return Ok(SearchOutcome::WitnessFound(Certificate::Embedding(vec![])));
    }
    if h.n() > g.n() {
        return Ok(SearchOutcome::Verified);
    }
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut image = vec![usize::MAX; h.n()];
    let mut used = VertexSet::new(g.n());
    if embed(g, h, &order, 0, &mut image, &mut used, budget)? {
        Ok(SearchOutcome::WitnessFound(Certificate::Embedding(image)))
    } else {
        Ok(SearchOutcome::Verified)
    }
}

fn embed(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut VertexSet,
    budget: &mut Budget,
) -> Result<bool, OracleError> {
    if depth == order.len() {
        return Ok(true);
    }
    budget.tick("contains_induced")?;
    let hv = order[depth];
    'cand: for gv in 0..g.n() {
        if used.contains(gv) {
            continue;
        }
        for &hu in &order[..depth] {
            let want = h.has_edge(hv, hu);
            if g.has_edge(gv, image[hu]) != want {
                continue 'cand;
            }
        }
        image[hv] = gv;
        used.insert(gv);
        if embed(g, h, order, depth + 1, image, used, budget)? {
            return Ok(true);
        }
        image[hv] = usize::MAX;
        used.remove(gv);
    }
    Ok(false)
}

/// Checks an embedding certificate: injective, adjacency-preserving both ways.
pub fn validate_embedding(g: &Graph, h: &Graph, image: &[usize]) -> bool {
    if image.len() != h.n() {
        return false;
    }
    let distinct = VertexSet::from_iter(g.n(), image.iter().copied());
    if distinct.len() != image.len() {
        return false;
    }
    for u in 0..h.n() {
        for v in (u + 1)..h.n() {
            if h.has_edge(u, v) != g.has_edge(image[u], image[v]) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Graph,
    Complement,
}

/// Best-effort search for a nonempty X with one of G[X], complement[X]
/// eta-sparse: start from V and repeatedly delete the max-degree vertex of
/// the denser side. Always succeeds (a singleton is 0-degree on both sides);
/// makes no size guarantee.
pub fn find_sparse_side(g: &Graph, eta: f64, budget: &mut Budget) -> (VertexSet, Side) {
    assert!(eta > 0.0 && eta <= 1.0);
    assert!(g.n() > 0);
    let co = g.complement();
    let mut x = g.vertex_set();
    loop {
        let (sub_g, _) = g.induced_subgraph(&x).unwrap();
        let (sub_c, _) = co.induced_subgraph(&x).unwrap();
        if is_eps_sparse(&sub_g, eta).sparse {
            return (x, Side::Graph);
        }
        if is_eps_sparse(&sub_c, eta).sparse {
            return (x, Side::Complement);
        }
        if budget.tick("find_sparse_side").is_err() {
            // Fall back to a singleton, sparse on both sides.
            let v = x.min_vertex().unwrap();
            return (VertexSet::singleton(g.n(), v), Side::Graph);
        }
        let denser = if sub_g.edge_count() >= sub_c.edge_count() {
            g
        } else {
            &co
        };
        let victim = x
            .iter()
            .max_by_key(|&v| denser.neighbors(v).intersection_len(&x))
            .unwrap();
        x.remove(victim);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

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

    #[test]
    fn sparsity_basics() {
        assert!(is_eps_sparse(&Graph::edgeless(5), 0.01).sparse);
        assert!(!is_eps_sparse(&Graph::complete(2), 0.5).sparse);
        let r = is_eps_sparse(&Graph::cycle(5), 0.5);
        assert!(r.sparse);
        assert_eq!(r.max_degree, 2);
    }

    #[test]
    fn coherence_on_small_graphs() {
        let kn = Graph::complete(5);
        let p = CoherenceParams { alpha: 1.0, beta: 1.0 };
        assert_eq!(
            coherence_violation(&kn, p, SearchMode::Exact, &mut b(), 20).unwrap(),
            SearchOutcome::Verified
        );

        let empty = Graph::edgeless(4);
        let p2 = CoherenceParams { alpha: 2.0, beta: 2.0 };
        match coherence_violation(&empty, p2, SearchMode::Exact, &mut b(), 20).unwrap() {
            SearchOutcome::WitnessFound(Certificate::SetPair(a, bb)) => {
                assert!(a.len() >= 2 && bb.len() >= 2);
                assert_eq!(empty.is_anticomplete_pair(&a, &bb), Ok(true));
            }
            other => panic!("expected witness, got {other:?}"),
        }

        // C6 is not (2,2)-coherent: opposite edges such as {0,1} and {3,4}
        // are anticomplete.
        let c6 = Graph::cycle(6);
        match coherence_violation(&c6, p2, SearchMode::Exact, &mut b(), 20).unwrap() {
            SearchOutcome::WitnessFound(Certificate::SetPair(a, bb)) => {
                assert_eq!(c6.is_anticomplete_pair(&a, &bb), Ok(true));
                assert!(a.len() >= 2 && bb.len() >= 2);
            }
            other => panic!("expected witness, got {other:?}"),
        }
        // C6 is (3,3)-coherent.
        let p3 = CoherenceParams { alpha: 3.0, beta: 3.0 };
        assert_eq!(
            coherence_violation(&c6, p3, SearchMode::Exact, &mut b(), 20).unwrap(),
            SearchOutcome::Verified
        );
    }

    #[test]
    fn coherence_heuristic_never_verifies() {
        let kn = Graph::complete(6);
        let p = CoherenceParams { alpha: 1.0, beta: 1.0 };
        let out =
            coherence_violation(&kn, p, SearchMode::Heuristic, &mut Budget(100), 20).unwrap();
        assert!(matches!(out, SearchOutcome::Unknown(_)));
    }

    #[test]
    fn coherence_cap_is_enforced() {
        let g = Graph::edgeless(25);
        let p = CoherenceParams { alpha: 1.0, beta: 1.0 };
        assert!(matches!(
            coherence_violation(&g, p, SearchMode::Exact, &mut b(), 20),
            Err(OracleError::ExactCapExceeded { .. })
        ));
    }

    #[test]
    fn expansion_on_cliques_and_paths() {
        let k5 = Graph::complete(5);
        assert_eq!(
            is_tau_expanding(&k5, 10.0, SearchMode::Exact, &mut b(), 20).unwrap(),
            SearchOutcome::Verified
        );

        // Two disjoint K5s: every X still reaches min(4|X|, 5) via its own
        // clique sides.
        let mut edges = vec![];
        for base in [0, 5] {
            for u in 0..5 {
                for v in (u + 1)..5 {
                    edges.push((base + u, base + v));
                }
            }
        }
        let twin = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(
            is_tau_expanding(&twin, 4.0, SearchMode::Exact, &mut b(), 20).unwrap(),
            SearchOutcome::Verified
        );

        let p4 = Graph::path(4);
        assert_eq!(
            is_tau_expanding(&p4, 3.0, SearchMode::Exact, &mut b(), 20).unwrap(),
            SearchOutcome::Verified
        );

        // A long path is not 3-expanding: an endpoint only reaches 2.
        let p8 = Graph::path(8);
        match is_tau_expanding(&p8, 3.0, SearchMode::Exact, &mut b(), 20).unwrap() {
            SearchOutcome::WitnessFound(Certificate::Set(x)) => {
                let need = (3.0 * x.len() as f64).min(4.0);
                assert!((p8.closed_nbhd(&x).len() as f64) < need);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn hole_detection_matches_enumeration() {
        let g = petersen();
        assert_eq!(
            find_hole_of_length(&g, 4, SearchMode::Exact, &mut b()).unwrap(),
            SearchOutcome::Verified
        );
        match find_hole_of_length(&g, 5, SearchMode::Exact, &mut b()).unwrap() {
            SearchOutcome::WitnessFound(Certificate::Sequence(c)) => {
                assert!(g.is_induced_cycle(&c));
            }
            other => panic!("expected hole, got {other:?}"),
        }
        assert!(find_hole_of_length(&g, 3, SearchMode::Exact, &mut b()).is_err());

        let c5 = Graph::cycle(5);
        assert!(matches!(
            find_hole_of_length(&c5, 5, SearchMode::Exact, &mut b()).unwrap(),
            SearchOutcome::WitnessFound(_)
        ));
        assert_eq!(
            find_hole_of_length(&c5, 4, SearchMode::Exact, &mut b()).unwrap(),
            SearchOutcome::Verified
        );
    }

    #[test]
    fn antihole_detection() {
        let co_c6 = Graph::cycle(6).complement();
        assert!(matches!(
            find_antihole_of_length(&co_c6, 6, SearchMode::Exact, &mut b()).unwrap(),
            SearchOutcome::WitnessFound(_)
        ));
        // C5 is self-complementary.
        assert!(matches!(
            find_antihole_of_length(&Graph::cycle(5), 5, SearchMode::Exact, &mut b()).unwrap(),
            SearchOutcome::WitnessFound(_)
        ));
        for ell in 4..=6 {
            assert_eq!(
                find_antihole_of_length(&Graph::complete(6), ell, SearchMode::Exact, &mut b())
                    .unwrap(),
                SearchOutcome::Verified
            );
        }
    }

    #[test]
    fn branch_length_cases() {
        assert_eq!(branch_length(&Graph::cycle(7)), BranchLength::Finite(7));
        assert_eq!(branch_length(&Graph::path(6)), BranchLength::Infinite);
        assert_eq!(branch_length(&Graph::complete(4)), BranchLength::Finite(1));
        // Star: one branch vertex, acyclic.
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(branch_length(&star), BranchLength::Infinite);
        // Two stars joined by a long path: distance between centers rules.
        let mut edges = vec![(0, 1), (0, 2), (5, 6), (5, 7)];
        edges.extend([(0, 3), (3, 4), (4, 5)]);
        let dumbbell = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(branch_length(&dumbbell), BranchLength::Finite(3));
        assert_eq!(branch_length(&petersen()), BranchLength::Finite(1));
    }

    #[test]
    fn girth_values() {
        assert_eq!(girth(&Graph::cycle(9)), Some(9));
        assert_eq!(girth(&Graph::path(5)), None);
        assert_eq!(girth(&Graph::complete(4)), Some(3));
        assert_eq!(girth(&petersen()), Some(5));
    }

    #[test]
    fn containment_basics() {
        let c6 = Graph::cycle(6);
        let p3 = Graph::path(3);
        match contains_induced(&c6, &p3, &mut b()).unwrap() {
            SearchOutcome::WitnessFound(Certificate::Embedding(im)) => {
                assert!(validate_embedding(&c6, &p3, &im));
            }
            other => panic!("expected embedding, got {other:?}"),
        }
        assert_eq!(
            contains_induced(&Graph::complete(4), &Graph::edgeless(2), &mut b()).unwrap(),
            SearchOutcome::Verified
        );
        let g = petersen();
        assert!(matches!(
            contains_induced(&g, &Graph::cycle(5), &mut b()).unwrap(),
            SearchOutcome::WitnessFound(_)
        ));
        assert_eq!(
            contains_induced(&g, &Graph::cycle(4), &mut b()).unwrap(),
            SearchOutcome::Verified
        );
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = Graph::cycle(5);
        let co = c5.complement();
        assert!(matches!(
            contains_induced(&co, &c5, &mut b()).unwrap(),
            SearchOutcome::WitnessFound(_)
        ));
    }

    #[test]
    fn sparse_side_trivial_cases() {
        let empty = Graph::edgeless(6);
        let (x, side) = find_sparse_side(&empty, 0.1, &mut b());
        assert_eq!(x.len(), 6);
        assert_eq!(side, Side::Graph);

        let kn = Graph::complete(6);
        let (x, side) = find_sparse_side(&kn, 0.1, &mut b());
        assert_eq!(x.len(), 6);
        assert_eq!(side, Side::Complement);
    }

    #[test]
    fn sparse_side_output_revalidates() {
        for seed in 0..5u64 {
            let g = crate::gen_test_random(20, 0.5, seed);
            let (x, side) = find_sparse_side(&g, 0.3, &mut b());
            assert!(!x.is_empty());
            let host = match side {
                Side::Graph => g.clone(),
                Side::Complement => g.complement(),
            };
            let (sub, _) = host.induced_subgraph(&x).unwrap();
            assert!(is_eps_sparse(&sub, 0.3).sparse);
        }
    }

    #[test]
    fn bipartite_graphs_have_no_odd_holes() {
        for seed in 0..20u64 {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = vec![];
            for u in 0..5 {
                for v in 5..10 {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(10, &edges).unwrap();
            for ell in [5, 7] {
                assert_eq!(
                    find_hole_of_length(&g, ell, SearchMode::Exact, &mut b()).unwrap(),
                    SearchOutcome::Verified
                );
            }
        }
    }
}
