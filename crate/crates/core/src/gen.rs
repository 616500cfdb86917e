//! Reproducible instance generation: G(n,p), comparability graphs from random
//! linear orders, engineered levelling-pair fixtures, and a small catalog of
//! target patterns.
//!
//! Randomness contract: every generator drives a ChaCha8 stream seeded with
//! `ChaCha8Rng::seed_from_u64(seed)` and draws in a fixed documented order, so
//! identical (arguments, seed) reproduce identical graphs bit for bit.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::structures::{
    validate_levelling, CycleSpec, Levelling, PathSpec, PatternGraph,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("bad fixture spec: {0}")]
    Spec(String),
    #[error("fixture failed validation: {0}")]
    Validation(String),
}

/// Each pair independently adjacent with probability `p`. Pairs are drawn in
/// lexicographic order (0,1), (0,2), ..., one Bernoulli draw per pair.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0,1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Intersection of `k` uniformly random linear orders: u ~ v iff u precedes v
/// in all k orders or follows v in all k. k = 1 gives the complete graph.
/// Orders are drawn as Fisher-Yates shuffles of 0..n, one after another.
pub fn comparability_graph(n: usize, k: usize, seed: u64) -> Graph {
    assert!(k >= 1, "need at least one linear order");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // position[i][v] = rank of v in order i
    let mut position = Vec::with_capacity(k);
    for _ in 0..k {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut pos = vec![0usize; n];
        for (rank, &v) in perm.iter().enumerate() {
            pos[v] = rank;
        }
        position.push(pos);
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let below = position.iter().all(|pos| pos[u] < pos[v]);
            let above = position.iter().all(|pos| pos[u] > pos[v]);
            if below || above {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Fixture recipe for a pair of levellings, parsed from flat key=value text.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSpec {
    /// Height of the first levelling (>= 1).
    pub s: usize,
    /// Height of the second levelling (>= 1).
    pub t: usize,
    /// Base sizes.
    pub b1: usize,
    pub b2: usize,
    /// Probability of each optional cross edge.
    pub density: f64,
    /// Add a perfect matching between the bases (plain fixtures only).
    pub matching: bool,
    /// The two levellings share their apex.
    pub shared_apex: bool,
    /// The two levellings share part of their bases.
    pub shared_base: bool,
}

impl FixtureSpec {
    pub fn parse(text: &str) -> Result<FixtureSpec, GenError> {
        let mut spec = FixtureSpec {
            s: 0,
            t: 0,
            b1: 0,
            b2: 0,
            density: 0.0,
            matching: false,
            shared_apex: false,
            shared_base: false,
        };
        let mut seen = std::collections::HashSet::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| GenError::Spec(format!("line {}: expected key=value", ln + 1)))?;
            let key = key.trim();
            let val = val.trim();
            if !seen.insert(key.to_string()) {
                return Err(GenError::Spec(format!("duplicate key '{key}'")));
            }
            let as_usize = || {
                val.parse::<usize>()
                    .map_err(|_| GenError::Spec(format!("key '{key}': bad integer '{val}'")))
            };
            let as_flag = || match val {
                "0" | "false" => Ok(false),
                "1" | "true" => Ok(true),
                _ => Err(GenError::Spec(format!("key '{key}': bad flag '{val}'"))),
            };
            match key {
                "s" => spec.s = as_usize()?,
                "t" => spec.t = as_usize()?,
                "b1" => spec.b1 = as_usize()?,
                "b2" => spec.b2 = as_usize()?,
                "density" => {
                    spec.density = val
                        .parse::<f64>()
                        .map_err(|_| GenError::Spec(format!("bad density '{val}'")))?
                }
                "matching" => spec.matching = as_flag()?,
                "shared_apex" => spec.shared_apex = as_flag()?,
                "shared_base" => spec.shared_base = as_flag()?,
                other => return Err(GenError::Spec(format!("unknown key '{other}'"))),
            }
        }
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), GenError> {
        if self.s < 1 || self.t < 1 {
            return Err(GenError::Spec("heights s, t must be at least 1".into()));
        }
        if self.b1 < 1 || self.b2 < 1 {
            return Err(GenError::Spec("base sizes b1, b2 must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(GenError::Spec("density must lie in [0,1]".into()));
        }
        if self.shared_apex && self.shared_base {
            return Err(GenError::Spec(
                "shared_apex and shared_base are mutually exclusive".into(),
            ));
        }
        if self.matching && self.shared_base {
            return Err(GenError::Spec("matching needs disjoint bases".into()));
        }
        if self.matching && self.b1 != self.b2 {
            return Err(GenError::Spec("matching needs b1 = b2".into()));
        }
        Ok(())
    }
}

/// Builds a graph plus two levellings satisfying the structural pathfinding
/// hypotheses: the levellings overlap only where the recipe says (shared apex
/// or shared base), upper layers see nothing of the other levelling, and
/// cross edges run base to base (plain/shared-apex) or penultimate level to
/// the other base (shared base). Both levellings and all the structural
/// bullets are machine-checked before return.
pub fn engineered_levelling_pair(
    spec: &FixtureSpec,
    seed: u64,
) -> Result<(Graph, Levelling, Levelling), GenError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();

    // One vertical chain per levelling: apex, s-1 interior vertices, base.
    let chain = |edges: &mut Vec<(usize, usize)>,
                 apex: usize,
                 first_interior: usize,
                 height: usize,
                 base: &[usize]| {
        let mut prev = apex;
        for i in 0..height.saturating_sub(1) {
            edges.push((prev, first_interior + i));
            prev = first_interior + i;
        }
        for &b in base {
            edges.push((prev, b));
        }
        prev // penultimate vertex (the one covering the base)
    };

    let layers_of = |apex: usize, first_interior: usize, height: usize, base: Vec<usize>, n: usize| {
        let mut layers = vec![VertexSet::singleton(n, apex)];
        for i in 0..height - 1 {
            layers.push(VertexSet::singleton(n, first_interior + i));
        }
        layers.push(VertexSet::from_iter(n, base));
        Levelling { layers }
    };

    let (g, lv1, lv2);
    if spec.shared_base {
        let o = spec.b1.min(spec.b2);
        let e1 = spec.b1 - o;
        let e2 = spec.b2 - o;
        let a1 = 0;
        let c1 = 1; // interior chain of levelling 1
        let shared0 = c1 + (spec.s - 1);
        let ex1_0 = shared0 + o;
        let ex2_0 = ex1_0 + e1;
        let a2 = ex2_0 + e2;
        let c2 = a2 + 1;
        let n = c2 + (spec.t - 1);
        let base1: Vec<usize> = (shared0..shared0 + o).chain(ex1_0..ex1_0 + e1).collect();
        let base2: Vec<usize> = (shared0..shared0 + o).chain(ex2_0..ex2_0 + e2).collect();
        let pen1 = chain(&mut edges, a1, c1, spec.s, &base1);
        let pen2 = chain(&mut edges, a2, c2, spec.t, &base2);
        // Optional extra reach: each penultimate vertex may also see the part
        // of the other base it does not already cover.
        for b in ex2_0..ex2_0 + e2 {
            if rng.gen_bool(spec.density) {
                edges.push((pen1, b));
            }
        }
        for b in ex1_0..ex1_0 + e1 {
            if rng.gen_bool(spec.density) {
                edges.push((pen2, b));
            }
        }
        g = Graph::from_edges(n, &edges).map_err(|e| GenError::Spec(e.to_string()))?;
        lv1 = layers_of(a1, c1, spec.s, base1, n);
        lv2 = layers_of(a2, c2, spec.t, base2, n);
    } else {
        let a1 = 0;
        let c1 = 1;
        let b1_0 = c1 + (spec.s - 1);
        let (a2, c2, b2_0, n);
        if spec.shared_apex {
            a2 = a1;
            c2 = b1_0 + spec.b1;
            b2_0 = c2 + (spec.t - 1);
            n = b2_0 + spec.b2;
        } else {
            a2 = b1_0 + spec.b1;
            c2 = a2 + 1;
            b2_0 = c2 + (spec.t - 1);
            n = b2_0 + spec.b2;
        }
        let base1: Vec<usize> = (b1_0..b1_0 + spec.b1).collect();
        let base2: Vec<usize> = (b2_0..b2_0 + spec.b2).collect();
        chain(&mut edges, a1, c1, spec.s, &base1);
        chain(&mut edges, a2, c2, spec.t, &base2);
        if spec.matching {
            for i in 0..spec.b1 {
                edges.push((base1[i], base2[i]));
            }
        }
        for &u in &base1 {
            for &v in &base2 {
                if spec.matching && u - b1_0 == v - b2_0 {
                    continue;
                }
                if rng.gen_bool(spec.density) {
                    edges.push((u, v));
                }
            }
        }
        g = Graph::from_edges(n, &edges).map_err(|e| GenError::Spec(e.to_string()))?;
        lv1 = layers_of(a1, c1, spec.s, base1, n);
        lv2 = layers_of(a2, c2, spec.t, base2, n);
    }

    check_fixture(&g, &lv1, &lv2, spec).map_err(GenError::Validation)?;
    Ok((g, lv1, lv2))
}

/// Structural hypothesis bullets for the pathfinding procedures, re-derived
/// from adjacency alone.
fn check_fixture(g: &Graph, lv1: &Levelling, lv2: &Levelling, spec: &FixtureSpec) -> Result<(), String> {
    validate_levelling(g, lv1).map_err(|v| format!("first levelling: {v}"))?;
    validate_levelling(g, lv2).map_err(|v| format!("second levelling: {v}"))?;
    let v1 = lv1.vertex_set();
    let v2 = lv2.vertex_set();
    let overlap = v1.intersection(&v2);

    let mut expected = VertexSet::new(g.n());
    if spec.shared_apex {
        expected.insert(lv1.apex());
    }
    if spec.shared_base {
        expected = lv1.base().intersection(lv2.base());
    }
    if overlap != expected {
        return Err("vertex overlap differs from the recipe's sharing flags".into());
    }

    if spec.shared_base {
        // Upper layers (all but penultimate and base) of each levelling see
        // nothing of the other; penultimate levels reach only the bases.
        for (a, b) in [(lv1, lv2), (lv2, lv1)] {
            let s = a.height();
            let mut upper = VertexSet::new(g.n());
            for l in &a.layers[..s.saturating_sub(1)] {
                upper.union_in_place(l);
            }
            let other = b.vertex_set();
            if g.is_anticomplete_pair(&upper, &other.difference(&upper)) != Ok(true) {
                return Err("upper layers touch the other levelling".into());
            }
            let reach = g.open_nbhd(a.penultimate()).intersection(&other);
            if !reach.difference(&a.vertex_set()).is_subset(b.base()) {
                return Err("penultimate level reaches beyond the other base".into());
            }
        }
    } else {
        // Everything in the second levelling except the apex avoids the first
        // heart (apex excepted when shared).
        let mut h1 = lv1.heart();
        let mut body2 = v2.clone();
        body2.remove(lv2.apex());
        if spec.shared_apex {
            h1.remove(lv1.apex());
        }
        if g.is_anticomplete_pair(&body2, &h1) != Ok(true) {
            return Err("second levelling touches the first heart".into());
        }
        if !spec.shared_apex && g.neighbors(lv2.apex()).intersection_len(&h1) > 0 {
            return Err("second apex touches the first heart".into());
        }
    }
    Ok(())
}

/// Fixed catalog of target patterns: long paths, cycles, theta graphs, and
/// subdivided stars and cliques.
pub fn pattern_library() -> Vec<(&'static str, PatternGraph)> {
    let path = |len| PatternGraph {
        branch_count: 2,
        paths: vec![PathSpec { from: 0, to: 1, len }],
        cycles: Vec::new(),
    };
    let cycle = |len| PatternGraph {
        branch_count: 1,
        paths: Vec::new(),
        cycles: vec![CycleSpec { anchor: 0, len }],
    };
    let theta = |len| PatternGraph {
        branch_count: 2,
        paths: vec![
            PathSpec { from: 0, to: 1, len },
            PathSpec { from: 0, to: 1, len },
            PathSpec { from: 0, to: 1, len },
        ],
        cycles: Vec::new(),
    };
    let star = |arms: usize, len| PatternGraph {
        branch_count: arms + 1,
        paths: (1..=arms).map(|i| PathSpec { from: 0, to: i, len }).collect(),
        cycles: Vec::new(),
    };
    let clique = |m: usize, len| PatternGraph {
        branch_count: m,
        paths: (0..m)
            .flat_map(|i| ((i + 1)..m).map(move |j| PathSpec { from: i, to: j, len }))
            .collect(),
        cycles: Vec::new(),
    };
    vec![
        ("p10", path(10)),
        ("p20", path(20)),
        ("c5", cycle(5)),
        ("c6", cycle(6)),
        ("c7", cycle(7)),
        ("c9", cycle(9)),
        ("c12", cycle(12)),
        ("theta5", theta(5)),
        ("theta7", theta(7)),
        ("star3x5", star(3, 5)),
        ("star4x7", star(4, 7)),
        ("k4s5", clique(4, 5)),
    ]
}
