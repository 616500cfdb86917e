//! Expansion surgery and the small-radius levelling it enables.

use super::{lift_set, CResult, Failure, Mode};
use crate::detect::{self, card_threshold, SearchOutcome};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{Budget, SearchMode};
use crate::params::check_c;
use crate::structures::Levelling;

/// Deletion set Y of at most n^(1-c)/4 vertices such that G - Y is
/// n^c-expanding. Grows Y by absorbing violating sets until none remain.
pub fn make_expanding(g: &Graph, c: f64, mode: Mode, cap: usize) -> CResult<VertexSet> {
    check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    let n = g.n();
    if n == 0 {
        return Ok(VertexSet::new(0));
    }
    let nf = n as f64;
    let alpha = nf.powf(1.0 - c) / 4.0;
    let tau = nf.powf(c).max(1.0);
    if mode == Mode::Strict {
        let p = detect::CoherenceParams {
            alpha,
            beta: nf / 4.0,
        };
        let mut budget = Budget::default();
        match detect::coherence_violation(g, p, SearchMode::Exact, &mut budget, cap) {
            Ok(SearchOutcome::Verified) => {}
            Ok(SearchOutcome::WitnessFound(cert)) => {
                return Err(Failure::new(
                    "hypothesis coherent",
                    format!("anticomplete pair exists: {cert:?}"),
                ))
            }
            Ok(SearchOutcome::Unknown(s)) => return Err(Failure::new("hypothesis coherent", s)),
            Err(e) => return Err(Failure::new("hypothesis coherent", e.to_string())),
        }
    }
    let mut y = VertexSet::new(n);
    loop {
        let mut rest = g.vertex_set();
        rest.subtract_in_place(&y);
        let (sub, map) = g.induced_subgraph(&rest).expect("rest inside graph");
        let mut budget = Budget::default();
        let outcome = if sub.n() <= cap {
            detect::is_tau_expanding(&sub, tau, SearchMode::Exact, &mut budget, cap)
        } else {
            if mode == Mode::Strict {
                return Err(Failure::new(
                    "exact cap",
                    format!("residual graph has {} > {cap} vertices", sub.n()),
                ));
            }
            detect::is_tau_expanding(&sub, tau, SearchMode::Heuristic, &mut budget, cap)
        };
        match outcome {
            Ok(SearchOutcome::Verified) | Ok(SearchOutcome::Unknown(_)) => return Ok(y),
            Ok(SearchOutcome::WitnessFound(detect::Certificate::Set(x))) => {
                y.union_in_place(&lift_set(&x, &map, n));
                if y.len() as f64 > alpha + 1e-9 {
                    return Err(Failure::new(
                        "Y budget exhausted",
                        format!("deletion set reached {} > {alpha}", y.len()),
                    ));
                }
            }
            Ok(SearchOutcome::WitnessFound(other)) => {
                return Err(Failure::new(
                    "oracle",
                    format!("unexpected witness shape {other:?}"),
                ))
            }
            Err(e) => return Err(Failure::new("oracle", e.to_string())),
        }
    }
}

/// Small-radius levelling: a centre with at most n/2 vertices strictly
/// inside radius k and at least n/4 on the sphere of radius k, k <= 1/c.
#[derive(Debug, Clone)]
pub struct RadialOutcome {
    pub center: usize,
    pub k: usize,
    /// Distance classes L_0..L_k from the centre.
    pub levelling: Levelling,
}

pub fn small_rad(g: &Graph, c: f64, mode: Mode, cap: usize) -> CResult<RadialOutcome> {
    let inv_c = check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    let n = g.n();
    if n < 2 {
        return Err(Failure::new("input", "graph has fewer than 2 vertices"));
    }
    let y = match make_expanding(g, c, mode, cap) {
        Ok(y) => y,
        Err(e) if mode == Mode::Permissive => {
            // Scan every centre rather than giving up.
            let _ = e;
            VertexSet::new(n)
        }
        Err(e) => return Err(e),
    };
    let lo = card_threshold(n as f64 / 4.0).max(1);
    let hi = n as f64 / 2.0 + 1e-9;
    for u in 0..n {
        if y.contains(u) {
            continue;
        }
        let (layers, _) = g.bfs_layers(u);
        let mut inside = 0usize;
        for k in 1..=inv_c.min(layers.len().saturating_sub(1)) {
            inside += layers[k - 1].len();
            if inside as f64 <= hi && layers[k].len() >= lo {
                return Ok(RadialOutcome {
                    center: u,
                    k,
                    levelling: Levelling {
                        layers: layers[..=k].to_vec(),
                    },
                });
            }
        }
    }
    Err(Failure::new(
        "no radial center",
        "no vertex has a qualifying sphere within radius 1/c".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::DEFAULT_EXACT_CAP;
    use crate::structures::validate_levelling;

    #[test]
    fn complete_graph_needs_no_deletions() {
        let g = Graph::complete(10);
        let y = make_expanding(&g, 1.0, Mode::Permissive, DEFAULT_EXACT_CAP).unwrap();
        assert!(y.is_empty());
    }

    #[test]
    fn random_graph_machine_checked() {
        let g = crate::gen_test_random(16, 0.5, 7);
        let y = make_expanding(&g, 0.5, Mode::Permissive, DEFAULT_EXACT_CAP).unwrap();
        let mut rest = g.vertex_set();
        rest.subtract_in_place(&y);
        let (sub, _) = g.induced_subgraph(&rest).unwrap();
        let mut budget = Budget::default();
        let tau = (g.n() as f64).sqrt();
        let out =
            detect::is_tau_expanding(&sub, tau, SearchMode::Exact, &mut budget, DEFAULT_EXACT_CAP)
                .unwrap();
        assert_eq!(out, SearchOutcome::Verified);
    }

    #[test]
    fn star_radius_one() {
        // Centre 0 of a star on 9 vertices: 1 vertex inside, 8 on the sphere.
        let edges: Vec<_> = (1..9).map(|v| (0, v)).collect();
        let g = Graph::from_edges(9, &edges).unwrap();
        let out = small_rad(&g, 1.0, Mode::Permissive, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(out.center, 0);
        assert_eq!(out.k, 1);
        assert!(validate_levelling(&g, &out.levelling).is_ok());
    }

    #[test]
    fn cycle_eight_succeeds_at_radius_one() {
        // Spheres of C8: 2 vertices at distance exactly 1 and 1 inside, both
        // within bound, and the graph is sqrt(8)-expanding, so the first
        // centre works immediately.
        let g = Graph::cycle(8);
        let y = make_expanding(&g, 0.5, Mode::Permissive, DEFAULT_EXACT_CAP).unwrap();
        assert!(y.is_empty());
        let out = small_rad(&g, 0.5, Mode::Permissive, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!((out.center, out.k), (0, 1));
        // Strict mode still rejects C8: it is nowhere near coherent enough.
        assert!(small_rad(&g, 0.5, Mode::Strict, DEFAULT_EXACT_CAP).is_err());
    }
}
