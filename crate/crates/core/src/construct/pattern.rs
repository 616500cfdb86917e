//! Pattern assembly: routing one induced path or cycle per pattern spec
//! through a lobster troupe, and the top-level sparse-side driver.

use super::pathfinder::get_path_relaxed;
use super::spider::{build_troupe, spiders_to_lobsters};
use super::{check_sparse_coherent, lift_set, minimal_addition, CResult, Failure, Mode};
use crate::detect::{
    branch_length, card_threshold, contains_induced, validate_embedding, Certificate,
    SearchOutcome, Side, DEFAULT_EXACT_CAP,
};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{
    max_anticomplete_pair, Budget, PairKind, PurePairResult, SearchMode, EXACT_PURE_PAIR_CAP,
};
use crate::params::{check_c, ParamSet};
use crate::structures::{realize_pattern, Levelling, PatternGraph, Troupe};

/// Ticks granted to fallback and certificate searches.
const SEARCH_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone)]
pub struct PatternEmbedding {
    /// map[i] = image of pattern-graph vertex i (realize_pattern order).
    pub map: Vec<usize>,
    /// "assembly" when the troupe pipeline produced it, "direct search" for
    /// the permissive-mode exhaustive fallback.
    pub stage: &'static str,
}

pub fn find_pattern(
    g: &Graph,
    pattern: &PatternGraph,
    c: f64,
    eps: f64,
    mode: Mode,
) -> CResult<PatternEmbedding> {
    let inv_c = check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    let h_graph =
        realize_pattern(pattern).map_err(|e| Failure::new("input", e.to_string()))?;
    let m = pattern.branch_count;
    let p = pattern.spec_count();
    if m == 0 || p == 0 {
        return Err(Failure::new("input", "pattern needs branch vertices and specs"));
    }
    if mode == Mode::Strict {
        let floor = card_threshold(4.0 / c + 5.0);
        if !pattern.meets_regime(c) {
            return Err(Failure::new(
                "hypothesis lengths",
                format!("some spec length is below {floor}"),
            ));
        }
        if !branch_length(&h_graph).at_least(floor) {
            return Err(Failure::new(
                "hypothesis branch length",
                format!("pattern branch-length is below {floor}"),
            ));
        }
        let n_deg = (0..m).map(|i| pattern.branch_degree(i)).max().unwrap() as f64;
        let d_inv = (2f64.powf(2f64.powf(2.0 * n_deg)) + 3.0 * (m as f64 - 1.0) * n_deg)
            * (2.0 + 2.0 * inv_c as f64).powi((m as f64 * n_deg) as i32);
        let d = 1.0 / d_inv;
        let lhs = 3.0
            * (2.0 + inv_c as f64).powi((h_graph.n() * h_graph.n()) as i32)
            * (4.0 * p as f64).powi(p as i32)
            * eps;
        if !(lhs < d) {
            return Err(Failure::new(
                "hypothesis regime",
                format!("3 r^(|H|^2) (4p)^p eps = {lhs} is not below d = {d}"),
            ));
        }
        check_sparse_coherent(g, eps, c, DEFAULT_EXACT_CAP)?;
    }
    match assemble(g, pattern, &h_graph, c, eps, mode) {
        Ok(map) => Ok(PatternEmbedding {
            map,
            stage: "assembly",
        }),
        Err(e) if mode == Mode::Permissive => {
            let mut budget = Budget(SEARCH_BUDGET);
            match contains_induced(g, &h_graph, &mut budget) {
                Ok(SearchOutcome::WitnessFound(Certificate::Embedding(map))) => {
                    if !validate_embedding(g, &h_graph, &map) {
                        return Err(Failure::new("soundness", "fallback embedding invalid"));
                    }
                    Ok(PatternEmbedding {
                        map,
                        stage: "direct search",
                    })
                }
                Ok(SearchOutcome::Verified) => Err(Failure::new(
                    "absent",
                    format!("{}; exhaustive search found no copy", e),
                )),
                _ => Err(e),
            }
        }
        Err(e) => Err(e),
    }
}

/// The staged routing loop: troupe of m lobsters, two members per spec, and
/// per stage a penultimate-level shrink for all later members, a pooled-base
/// exclusion for the current pair, one relaxed path call, and a purge of the
/// new interior's neighbourhood from everything still to come.
fn assemble(
    g: &Graph,
    pattern: &PatternGraph,
    h_graph: &Graph,
    c: f64,
    eps: f64,
    mode: Mode,
) -> CResult<Vec<usize>> {
    let n = g.n();
    let m = pattern.branch_count;
    let p = pattern.spec_count();
    let n_deg = (0..m)
        .map(|i| pattern.branch_degree(i))
        .max()
        .unwrap()
        .max(1);
    let troupe = build_troupe(g, c, m, n_deg, eps, mode, DEFAULT_EXACT_CAP)?;
    let lt = spiders_to_lobsters(g, &troupe, c, eps, mode)?;
    let Troupe::Lobsters(lobsters) = &lt else {
        unreachable!("conversion returns lobsters")
    };

    // Specs in realize_pattern order: (u-side branch, v-side branch, length).
    let specs: Vec<(usize, usize, usize)> = pattern
        .paths
        .iter()
        .map(|s| (s.from, s.to, s.len))
        .chain(pattern.cycles.iter().map(|s| (s.anchor, s.anchor, s.len)))
        .collect();

    let mut next_member = vec![0usize; m];
    let mut slots: Vec<Levelling> = Vec::with_capacity(2 * p);
    for &(u, v, _) in &specs {
        for branch in [u, v] {
            let idx = next_member[branch];
            if idx >= lobsters[branch].members.len() {
                return Err(Failure::new(
                    "member budget",
                    format!("branch {branch} needs more than {} members", idx),
                ));
            }
            next_member[branch] += 1;
            slots.push(lobsters[branch].members[idx].clone());
        }
    }

    let mut b_pool = VertexSet::new(n);
    for lv in &slots {
        b_pool.union_in_place(lv.base());
    }
    let mut ys: Vec<VertexSet> = slots.iter().map(|lv| lv.penultimate().clone()).collect();
    let mut xs: Vec<VertexSet> = ys
        .iter()
        .map(|y| g.open_nbhd(y).intersection(&b_pool))
        .collect();

    let params = ParamSet::new(c, eps, eps, n).map_err(|e| Failure::new("input", e.to_string()))?;
    let hsize = h_graph.n();
    let none = VertexSet::new(n);
    let mut interiors: Vec<Vec<usize>> = Vec::with_capacity(p);

    for h in 1..=p {
        let thr = match mode {
            Mode::Strict => {
                card_threshold((params.w_h(h as u32, p) + eps * (hsize - 1) as f64) * n as f64)
                    .max(1)
            }
            Mode::Permissive => 1,
        };
        let mut z = VertexSet::new(n);
        for i in 2 * h..2 * p {
            let ynew = minimal_addition(&ys[i], &none, |e| {
                g.open_nbhd(e).intersection(&xs[i]).len() >= thr
            })
            .ok_or_else(|| {
                Failure::new(
                    "pen shrink",
                    format!("path {h}: slot {} cannot keep {thr} covered", i + 1),
                )
            })?;
            xs[i] = g.open_nbhd(&ynew).intersection(&xs[i]);
            ys[i] = ynew;
            z.union_in_place(&xs[i]);
        }
        for i in [2 * h - 2, 2 * h - 1] {
            xs[i].subtract_in_place(&z);
            if xs[i].is_empty() {
                return Err(Failure::new(
                    "pool emptied",
                    format!("path {h}: slot {} has no base left", i + 1),
                ));
            }
        }
        let rebased = |i: usize| -> Levelling {
            let lv = &slots[i];
            let mut layers = lv.layers[..lv.layers.len() - 2].to_vec();
            layers.push(ys[i].clone());
            layers.push(xs[i].clone());
            Levelling { layers }
        };
        let lv1 = rebased(2 * h - 2);
        let lv2 = rebased(2 * h - 1);
        let (s, t) = (lv1.height(), lv2.height());
        let ell_h = specs[h - 1].2;
        let ell = ell_h
            .checked_sub(s + t)
            .filter(|&e| e >= 1)
            .ok_or_else(|| {
                Failure::new(
                    "length budget",
                    format!("path {h}: length {ell_h} cannot absorb heights {s}+{t}"),
                )
            })?;
        let cert = get_path_relaxed(g, &params, ell, &lv1, &lv2, mode)
            .map_err(|e| Failure::new(e.stage, format!("path {h}: {}", e.detail)))?;

        let interior: Vec<usize> = if cert.is_cycle {
            cert.vertices[1..].to_vec()
        } else {
            // Certificate runs second apex to first; pattern order is
            // first-endpoint to second, so reverse and strip the apexes.
            let mut v = cert.vertices.clone();
            v.reverse();
            v[1..v.len() - 1].to_vec()
        };
        let pstar = VertexSet::from_iter(n, interior.iter().copied());
        let touched = g.closed_nbhd(&pstar);
        for i in 2 * h..2 * p {
            xs[i].subtract_in_place(&touched);
            ys[i].subtract_in_place(&touched);
        }
        interiors.push(interior);
    }

    let mut map = vec![usize::MAX; h_graph.n()];
    for (j, lb) in lobsters.iter().enumerate().take(m) {
        map[j] = lb.apex;
    }
    let mut next = m;
    for interior in &interiors {
        for &v in interior {
            map[next] = v;
            next += 1;
        }
    }
    if next != h_graph.n() {
        return Err(Failure::new("soundness", "interior count mismatch"));
    }
    if !validate_embedding(g, h_graph, &map) {
        return Err(Failure::new(
            "soundness",
            "assembled image is not an induced copy",
        ));
    }
    Ok(map)
}

#[derive(Debug, Clone)]
pub enum ReduceOutcome {
    /// Induced copy of h1 in g.
    EmbeddingH1 { image: Vec<usize> },
    /// Induced copy of h2 in the complement of g.
    EmbeddingH2Complement { image: Vec<usize> },
    /// Pure pair found on the sparse side, reported against the eps targets.
    PurePair {
        pair: PurePairResult,
        side: Side,
        side_size: usize,
        target_balanced: usize,
        target_small: usize,
    },
}

/// Sparse-side driver: find a side of g (graph or complement) that is
/// eps-sparse on some X, look for the corresponding forbidden graph there,
/// and failing that return an anticomplete pair of the sparse side (which is
/// a complete pair of g when the side is the complement). Best effort.
pub fn reduce_and_find(
    g: &Graph,
    h1: &Graph,
    h2: &Graph,
    c: f64,
    eps: f64,
) -> CResult<ReduceOutcome> {
    check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    if g.n() == 0 {
        return Err(Failure::new("input", "empty graph"));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Failure::new("input", format!("eps = {eps} out of (0, 1]")));
    }
    let mut budget = Budget(SEARCH_BUDGET);
    let (x, side) = crate::detect::find_sparse_side(g, eps, &mut budget);
    let co;
    let ambient = match side {
        Side::Graph => g,
        Side::Complement => {
            co = g.complement();
            &co
        }
    };
    let (host, map) = ambient.induced_subgraph(&x).expect("side inside graph");
    let wanted = match side {
        Side::Graph => h1,
        Side::Complement => h2,
    };
    if wanted.n() > 0 && wanted.n() <= host.n() {
        let mut b2 = Budget(SEARCH_BUDGET);
        if let Ok(SearchOutcome::WitnessFound(Certificate::Embedding(img))) =
            contains_induced(&host, wanted, &mut b2)
        {
            let image: Vec<usize> = img.into_iter().map(|v| map[v]).collect();
            if !validate_embedding(ambient, wanted, &image) {
                return Err(Failure::new("soundness", "embedding failed revalidation"));
            }
            return Ok(match side {
                Side::Graph => ReduceOutcome::EmbeddingH1 { image },
                Side::Complement => ReduceOutcome::EmbeddingH2Complement { image },
            });
        }
    }
    let search = if host.n() <= EXACT_PURE_PAIR_CAP {
        SearchMode::Exact
    } else {
        SearchMode::Heuristic
    };
    let mut b3 = Budget(SEARCH_BUDGET / 10);
    let found = max_anticomplete_pair(&host, search, &mut b3, 0)
        .map_err(|e| Failure::new("oracle", e.to_string()))?;
    let Some(pp) = found else {
        return Err(Failure::new(
            "no certificate",
            "no forbidden copy and no anticomplete pair on the sparse side",
        ));
    };
    let kind = match side {
        Side::Graph => PairKind::Anticomplete,
        Side::Complement => PairKind::Complete,
    };
    let pair = PurePairResult {
        a: lift_set(&pp.a, &map, g.n()),
        b: lift_set(&pp.b, &map, g.n()),
        kind,
        objective: pp.objective,
    };
    if !pair.validate(g) {
        return Err(Failure::new("soundness", "pure pair failed revalidation"));
    }
    let sx = x.len();
    Ok(ReduceOutcome::PurePair {
        pair,
        side,
        side_size: sx,
        target_balanced: card_threshold(eps * sx as f64),
        target_small: card_threshold(eps * (sx as f64).powf(1.0 - c)),
    })
}
