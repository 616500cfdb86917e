//! Acceptance gate: one test per criterion, each printing a single pass/fail
//! line. Every check re-derives its verdict from adjacency alone or from an
//! independently coded transcription of the definitions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use purepair::construct::expand::{make_expanding, small_rad};
use purepair::construct::multicover::merge_type_vector;
use purepair::construct::pathfinder::{find_path, get_path, get_path_relaxed, PathOutcome};
use purepair::construct::pattern::find_pattern;
use purepair::construct::Mode;
use purepair::detect::{
    card_threshold, coherence_violation, contains_induced, find_hole_of_length, is_eps_sparse,
    is_tau_expanding, validate_embedding, Certificate, CoherenceParams, SearchOutcome,
};
use purepair::gen::{comparability_graph, engineered_levelling_pair, gnp, FixtureSpec};
use purepair::graph::{Graph, VertexSet};
use purepair::oracle::{
    enumerate_induced_cycles, induced_cycle_oracle, induced_path_oracle, max_pure_pair, Budget,
    SearchMode,
};
use purepair::params::ParamSet;
use purepair::structio::Structure;
use purepair::structures::{
    realize_pattern, BatteryParams, Battery, Covering, CoveringSequence, CycleSpec, Levelling,
    Lobster, Multicovering, PatternGraph, Spider, Troupe,
};

fn report(id: usize, name: &str, pass: bool) {
    println!(
        "ACCEPTANCE {id} {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({name}) failed");
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, 5 + (i + 2) % 5));
    }
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    Graph::from_edges(10, &edges).unwrap()
}

// ---------- independent transcriptions of the structure definitions ----------

fn anticomplete(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().all(|u| b.iter().all(|v| !g.has_edge(u, v)))
}

fn naive_levelling(g: &Graph, lv: &Levelling) -> bool {
    let ls = &lv.layers;
    if ls.len() < 2 || ls[0].len() != 1 {
        return false;
    }
    for i in 0..ls.len() {
        for j in (i + 1)..ls.len() {
            if !ls[i].is_disjoint(&ls[j]) {
                return false;
            }
            if j >= i + 2 && !anticomplete(g, &ls[i], &ls[j]) {
                return false;
            }
        }
    }
    for i in 1..ls.len() {
        for v in ls[i].iter() {
            if !ls[i - 1].iter().any(|u| g.has_edge(u, v)) {
                return false;
            }
        }
    }
    true
}

fn naive_connected(g: &Graph, x: &VertexSet) -> bool {
    let Some(start) = x.min_vertex() else {
        return true;
    };
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        i += 1;
        for v in x.iter() {
            if g.has_edge(u, v) && !seen.contains(&v) {
                seen.push(v);
            }
        }
    }
    seen.len() == x.len()
}

fn naive_covering(g: &Graph, cv: &Covering) -> bool {
    cv.heart.is_disjoint(&cv.base)
        && cv.heart.contains(cv.apex)
        && cv
            .base
            .iter()
            .all(|v| cv.heart.iter().any(|u| g.has_edge(u, v)))
        && naive_connected(g, &cv.heart)
}

fn naive_sequence(g: &Graph, seq: &CoveringSequence) -> bool {
    if !seq.terms.iter().all(|t| naive_covering(g, t)) {
        return false;
    }
    for i in 0..seq.terms.len() {
        for j in (i + 1)..seq.terms.len() {
            let (hi, hj) = (&seq.terms[i].heart, &seq.terms[j].heart);
            if !hi.is_disjoint(hj) || !anticomplete(g, hi, hj) {
                return false;
            }
        }
    }
    true
}

fn naive_multicovering(g: &Graph, mc: &Multicovering) -> bool {
    !mc.terms.is_empty()
        && naive_sequence(g, &mc.as_sequence())
        && mc.terms.iter().all(|t| t.base == mc.terms[0].base)
}

fn naive_ecc_height(g: &Graph, cv: &Covering) -> Option<usize> {
    // 1 + eccentricity of the apex within G[heart], by per-vertex BFS.
    let mut best = 0;
    for v in cv.heart.iter() {
        let mut dist = vec![None; g.n()];
        dist[cv.apex] = Some(0usize);
        let mut queue = vec![cv.apex];
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            for w in cv.heart.iter() {
                if g.has_edge(u, w) && dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push(w);
                }
            }
        }
        best = best.max(dist[v]?);
    }
    Some(1 + best)
}

fn naive_battery(g: &Graph, bat: &Battery, p: BatteryParams) -> bool {
    let n = g.n();
    let inv_c = (1.0 / p.c).round() as usize;
    let vsets: Vec<VertexSet> = bat.multis.iter().map(|m| m.vertex_set(n)).collect();
    for i in 0..bat.multis.len() {
        for j in (i + 1)..bat.multis.len() {
            if !vsets[i].is_disjoint(&vsets[j]) {
                return false;
            }
        }
    }
    for (i, mc) in bat.multis.iter().enumerate() {
        if !naive_multicovering(g, mc) {
            return false;
        }
        for (j, t) in mc.terms.iter().enumerate() {
            let cap = if j == 0 { inv_c } else { 1 + inv_c };
            match naive_ecc_height(g, t) {
                Some(h) if h <= cap => {}
                _ => return false,
            }
        }
        let floor = card_threshold(p.x * 3f64.powi(1 - mc.length() as i32) * n as f64);
        if mc.base().len() < floor {
            return false;
        }
        for (j, vj) in vsets.iter().enumerate() {
            if i == j {
                continue;
            }
            let nonbase = vsets[i].difference(mc.base());
            if !anticomplete(g, &nonbase, vj) {
                return false;
            }
        }
    }
    true
}

fn naive_spider(g: &Graph, sp: &Spider) -> bool {
    if sp.members.is_empty() {
        return false;
    }
    if !sp
        .members
        .iter()
        .all(|m| m.apex == sp.apex && naive_covering(g, m))
    {
        return false;
    }
    for i in 0..sp.members.len() {
        for j in (i + 1)..sp.members.len() {
            let mut hi = sp.members[i].heart.clone();
            hi.remove(sp.apex);
            let mut hj = sp.members[j].heart.clone();
            hj.remove(sp.apex);
            if !hi.is_disjoint(&hj) || !anticomplete(g, &hi, &hj) {
                return false;
            }
        }
    }
    true
}

fn naive_lobster(g: &Graph, lb: &Lobster) -> bool {
    if lb.members.is_empty() {
        return false;
    }
    if !lb
        .members
        .iter()
        .all(|m| naive_levelling(g, m) && m.apex() == lb.apex)
    {
        return false;
    }
    for i in 0..lb.members.len() {
        for j in 0..lb.members.len() {
            if i == j {
                continue;
            }
            let mut hi = lb.members[i].heart();
            hi.remove(lb.apex);
            if j > i {
                let mut hj = lb.members[j].heart();
                hj.remove(lb.apex);
                if !hi.is_disjoint(&hj) {
                    return false;
                }
            }
            let mut vj = lb.members[j].vertex_set();
            vj.remove(lb.apex);
            for u in hi.iter() {
                for v in vj.iter() {
                    if g.has_edge(u, v)
                        && !(lb.members[i].penultimate().contains(u)
                            && lb.members[j].base().contains(v))
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn naive_troupe(g: &Graph, tr: &Troupe) -> bool {
    let n = g.n();
    let hearts: Vec<VertexSet> = match tr {
        Troupe::Spiders(v) => {
            if !v.iter().all(|s| naive_spider(g, s)) {
                return false;
            }
            v.iter().map(|s| s.heart(n)).collect()
        }
        Troupe::Lobsters(v) => {
            if !v.iter().all(|l| naive_lobster(g, l)) {
                return false;
            }
            v.iter().map(|l| l.heart(n)).collect()
        }
    };
    for i in 0..hearts.len() {
        for j in (i + 1)..hearts.len() {
            if !hearts[i].is_disjoint(&hearts[j]) || !anticomplete(g, &hearts[i], &hearts[j]) {
                return false;
            }
        }
    }
    if let Troupe::Lobsters(v) = tr {
        let members: Vec<&Levelling> = v.iter().flat_map(|l| l.members.iter()).collect();
        for (ai, a) in members.iter().enumerate() {
            let k = a.layers.len() - 1;
            let mut upper = VertexSet::new(n);
            for l in &a.layers[..k.max(1) - 1] {
                upper.union_in_place(l);
            }
            for (bi, b) in members.iter().enumerate() {
                if ai == bi {
                    continue;
                }
                if !anticomplete(g, &upper, b.base()) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------- random candidate structures for criterion 1 ----------

fn random_set(rng: &mut ChaCha8Rng, n: usize, p: f64) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|_| rng.gen_bool(p)))
}

/// Draws a candidate that is valid reasonably often: start from a BFS shape,
/// then sometimes perturb it.
fn random_structure(rng: &mut ChaCha8Rng, g: &Graph) -> Structure {
    let n = g.n();
    let mk_levelling = |rng: &mut ChaCha8Rng| -> Levelling {
        let u = rng.gen_range(0..n);
        let depth = rng.gen_range(1..4);
        match Levelling::from_bfs(g, u, depth) {
            Some(lv) if rng.gen_bool(0.6) => lv,
            _ => Levelling {
                layers: (0..=depth)
                    .map(|i| {
                        if i == 0 {
                            VertexSet::singleton(n, u)
                        } else {
                            random_set(rng, n, 0.3)
                        }
                    })
                    .collect(),
            },
        }
    };
    let mk_covering = |rng: &mut ChaCha8Rng| -> Covering {
        if rng.gen_bool(0.5) {
            let lv = mk_levelling(rng);
            Covering::from_levelling(&lv)
        } else {
            let apex = rng.gen_range(0..n);
            let mut heart = random_set(rng, n, 0.25);
            if rng.gen_bool(0.8) {
                heart.insert(apex);
            }
            Covering {
                apex,
                heart,
                base: random_set(rng, n, 0.3),
            }
        }
    };
    match rng.gen_range(0..8) {
        0 => Structure::Levelling(mk_levelling(rng)),
        1 => Structure::Covering(mk_covering(rng)),
        2 => Structure::Sequence(CoveringSequence {
            terms: (0..rng.gen_range(1..4)).map(|_| mk_covering(rng)).collect(),
        }),
        3 => {
            let base = random_set(rng, n, 0.3);
            let terms = (0..rng.gen_range(1..4))
                .map(|_| {
                    let mut t = mk_covering(rng);
                    if rng.gen_bool(0.7) {
                        t.base = base.clone();
                    }
                    t
                })
                .collect();
            Structure::Multicovering(Multicovering { terms })
        }
        4 => Structure::Battery(Battery {
            multis: (0..rng.gen_range(1..3))
                .map(|_| Multicovering {
                    terms: (0..rng.gen_range(1..3)).map(|_| mk_covering(rng)).collect(),
                })
                .collect(),
        }),
        5 => {
            let apex = rng.gen_range(0..n);
            Structure::Spider(Spider {
                apex,
                members: (0..rng.gen_range(1..4))
                    .map(|_| {
                        let mut c = mk_covering(rng);
                        c.apex = apex;
                        if rng.gen_bool(0.8) {
                            c.heart.insert(apex);
                        }
                        c
                    })
                    .collect(),
            })
        }
        6 => {
            let lv = mk_levelling(rng);
            let apex = lv.apex();
            let mut members = vec![lv];
            if rng.gen_bool(0.5) {
                members.push(mk_levelling(rng));
            }
            Structure::Lobster(Lobster { apex, members })
        }
        _ => {
            if rng.gen_bool(0.5) {
                let apex = rng.gen_range(0..n);
                let spiders = (0..rng.gen_range(1..3))
                    .map(|_| Spider {
                        apex,
                        members: vec![mk_covering(rng)],
                    })
                    .collect();
                Structure::Troupe(Troupe::Spiders(spiders))
            } else {
                let lobsters = (0..rng.gen_range(1..3))
                    .map(|_| {
                        let lv = mk_levelling(rng);
                        Lobster {
                            apex: lv.apex(),
                            members: vec![lv],
                        }
                    })
                    .collect();
                Structure::Troupe(Troupe::Lobsters(lobsters))
            }
        }
    }
}

#[test]
fn criterion_1_validator_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut valid = 0usize;
    for trial in 0..1000u64 {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.15..0.7);
        let g = gnp(n, p, trial);
        let s = random_structure(&mut rng, &g);
        let params = BatteryParams {
            c: if rng.gen_bool(0.5) { 1.0 } else { 0.5 },
            x: rng.gen_range(0.0..0.2),
        };
        let official = s.validate(&g, Some(params)).is_ok();
        let naive = match &s {
            Structure::Levelling(x) => naive_levelling(&g, x),
            Structure::Covering(x) => naive_covering(&g, x),
            Structure::Sequence(x) => naive_sequence(&g, x),
            Structure::Multicovering(x) => naive_multicovering(&g, x),
            Structure::Battery(x) => naive_battery(&g, x, params),
            Structure::Spider(x) => naive_spider(&g, x),
            Structure::Lobster(x) => naive_lobster(&g, x),
            Structure::Troupe(x) => naive_troupe(&g, x),
        };
        assert_eq!(
            official, naive,
            "trial {trial}: validator disagrees with transcription on a {}",
            s.kind()
        );
        valid += official as usize;
    }
    // The sampler must exercise both verdicts.
    assert!(valid > 50 && valid < 950, "unbalanced sampler: {valid}/1000");
    report(1, "validator-equivalence", true);
}

#[test]
fn criterion_2_repeat_exhaustive() {
    use purepair::construct::pathfinder::repeat_index;
    for kk in 2..=8usize {
        for k in 1..kk {
            for rho in 1..=3u64 {
                let mut values = vec![0u64; kk];
                loop {
                    let bound = (rho as f64).powf(kk as f64 / k as f64 - 2.0 - 1.0 / k as f64);
                    let hypothesis = values.iter().all(|&v| (v as f64) < bound);
                    let got = repeat_index(rho as f64, k, &values).unwrap();
                    if let Some(i) = got {
                        assert!(i >= 1 && i <= kk - k);
                        for j in (i + 1)..=(i + k) {
                            assert!(
                                rho as f64 * values[i - 1] as f64 >= values[j - 1] as f64 - 1e-9,
                                "window violated at i={i}, j={j}, values {values:?}"
                            );
                        }
                    } else if hypothesis {
                        panic!("hypothesis held but no index: rho={rho} k={k} {values:?}");
                    }
                    // Odometer over {0..3}^K.
                    let mut pos = 0;
                    loop {
                        if pos == kk {
                            break;
                        }
                        values[pos] += 1;
                        if values[pos] <= 3 {
                            break;
                        }
                        values[pos] = 0;
                        pos += 1;
                    }
                    if pos == kk {
                        break;
                    }
                }
            }
        }
    }
    report(2, "repeat-exhaustive", true);
}

#[test]
fn criterion_3_pathfinder_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    let mut successes = 0usize;
    for draw in 0..500u64 {
        let shared = rng.gen_range(0..3);
        let b1 = rng.gen_range(2..6);
        let spec = FixtureSpec {
            s: rng.gen_range(1..4),
            t: rng.gen_range(1..4),
            b1,
            b2: if shared == 0 && rng.gen_bool(0.6) {
                b1
            } else {
                rng.gen_range(2..6)
            },
            density: rng.gen_range(0.1..0.9),
            matching: shared == 0 && rng.gen_bool(0.3) && true,
            shared_apex: shared == 1,
            shared_base: shared == 2,
        };
        let spec = FixtureSpec {
            matching: spec.matching && spec.b1 == spec.b2,
            ..spec
        };
        let (g, lv1, lv2) = engineered_levelling_pair(&spec, draw).unwrap();
        let ell = rng.gen_range(1..4);
        let params = ParamSet::new(0.5, 0.05, 0.05, g.n()).unwrap();
        let run = if spec.shared_base {
            get_path_relaxed(&g, &params, ell, &lv1, &lv2, Mode::Permissive)
        } else {
            get_path(&g, &params, ell, &lv1, &lv2, Mode::Permissive)
        };
        if let Ok(cert) = run {
            successes += 1;
            let total = ell + lv1.height() + lv2.height();
            assert_eq!(cert.length(), total, "draw {draw}: wrong length");
            let mut allowed = lv1.vertex_set();
            allowed.union_in_place(&lv2.vertex_set());
            assert!(
                cert.vertices.iter().all(|&v| allowed.contains(v)),
                "draw {draw}: vertex outside the two levellings"
            );
            // Independent confirmation by the exact oracles.
            if cert.is_cycle {
                assert!(g.is_induced_cycle(&cert.vertices), "draw {draw}: chord");
                let apex = lv1.apex();
                let found =
                    induced_cycle_oracle(&g, apex, total, &mut Budget(5_000_000)).unwrap();
                assert!(found.is_some(), "draw {draw}: oracle refutes cycle");
            } else {
                assert!(g.is_induced_path(&cert.vertices), "draw {draw}: chord");
                let (a, b) = (cert.vertices[0], *cert.vertices.last().unwrap());
                let found =
                    induced_path_oracle(&g, a, b, total, &mut Budget(5_000_000)).unwrap();
                assert!(found.is_some(), "draw {draw}: oracle refutes path");
            }
        }
    }
    assert!(successes >= 100, "only {successes}/500 fixture successes");

    // find_path outcomes on random block instances.
    let mut strict_ok = 0usize;
    for draw in 0..200u64 {
        let n = rng.gen_range(8..=16);
        let g = gnp(n, rng.gen_range(0.1..0.5), 7000 + draw);
        let c = 1.0;
        let eps = rng.gen_range(0.01..0.3);
        let params = ParamSet::new(c, eps, eps, n).unwrap();
        let ell = 1 + (draw % 2) as usize;
        let want = params.k_seq(ell as u32);
        // Random disjoint b0 plus `want` blocks.
        let mut pool: Vec<usize> = (0..n).collect();
        let mut sets = vec![VertexSet::new(n); want + 1];
        for v in pool.drain(..) {
            let slot = rng.gen_range(0..(want + 2));
            if slot <= want {
                sets[slot].insert(v);
            }
        }
        if sets[0].is_empty() {
            continue;
        }
        let b0 = sets[0].clone();
        let blocks = &sets[1..];
        for mode in [Mode::Permissive, Mode::Strict] {
            match find_path(&g, &params, ell, &b0, blocks, mode) {
                Ok(PathOutcome::InducedPath { path, block_indices }) => {
                    assert_eq!(path.len(), ell + 1);
                    assert!(b0.contains(path[0]));
                    assert!(block_indices.windows(2).all(|w| w[0] < w[1]));
                    for (p, &t) in path[1..].iter().zip(&block_indices) {
                        assert!(blocks[t - 1].contains(*p));
                    }
                    assert!(g.is_induced_path(&path), "draw {draw}: chord in path");
                }
                Ok(PathOutcome::Partition { classes }) => {
                    let mut union = VertexSet::new(n);
                    for cset in &classes {
                        union.union_in_place(cset);
                    }
                    assert_eq!(union, b0, "draw {draw}: partition union");
                    if mode == Mode::Strict {
                        strict_ok += 1;
                        // Direct count of the free-vertex floor per window.
                        let floor = card_threshold(
                            (params.r() as f64).powi(2 * ell as i32 - 2) * eps * n as f64,
                        );
                        let kwin = params.k_seq(ell as u32 - 1);
                        for (i0, cset) in classes.iter().enumerate() {
                            for j in (i0 + 1)..=(i0 + 1 + kwin) {
                                let free = blocks[j - 1]
                                    .iter()
                                    .filter(|&v| cset.iter().all(|u| !g.has_edge(u, v)))
                                    .count();
                                assert!(free >= floor, "draw {draw}: window count");
                            }
                        }
                    }
                }
                Err(_) => {}
            }
        }
    }
    // Strict-mode regimes are unattainable at this scale; the window check
    // applies to however many strict partitions occur.
    println!("note: {strict_ok} strict partition outcomes checked");
    report(3, "pathfinder-soundness", true);
}

#[test]
fn criterion_4_expansion_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    let mut qualified = 0usize;
    let mut checked = 0usize;
    for draw in 0..300u64 {
        let n = rng.gen_range(6..=14);
        let p = [0.7, 0.8, 0.9, 1.0][rng.gen_range(0..4)];
        let g = gnp(n, p, 40_000 + draw);
        let c = if rng.gen_bool(0.5) { 1.0 } else { 0.5 };
        let nf = n as f64;
        let alpha = nf.powf(1.0 - c) / 4.0;
        let coherent = coherence_violation(
            &g,
            CoherenceParams { alpha, beta: nf / 4.0 },
            SearchMode::Exact,
            &mut Budget::default(),
            n,
        )
        .unwrap();
        if coherent != SearchOutcome::Verified {
            continue;
        }
        qualified += 1;
        let y = make_expanding(&g, c, Mode::Strict, n).unwrap();
        assert!(
            y.len() as f64 <= alpha + 1e-9,
            "draw {draw}: |Y| = {} exceeds {alpha}",
            y.len()
        );
        let rest = g.vertex_set().difference(&y);
        let (sub, _) = g.induced_subgraph(&rest).unwrap();
        let tau = nf.powf(c).max(1.0);
        let out =
            is_tau_expanding(&sub, tau, SearchMode::Exact, &mut Budget::default(), n).unwrap();
        assert_eq!(out, SearchOutcome::Verified, "draw {draw}: not expanding");
        if let Ok(rad) = small_rad(&g, c, Mode::Strict, n) {
            checked += 1;
            let dist = g.bfs_distances(rad.center);
            let closer = (0..n)
                .filter(|&v| dist[v].is_some_and(|d| d < rad.k))
                .count();
            let sphere = (0..n)
                .filter(|&v| dist[v] == Some(rad.k))
                .count();
            assert!(closer as f64 <= nf / 2.0 + 1e-9, "draw {draw}: inner count");
            assert!(
                sphere >= card_threshold(nf / 4.0).max(1),
                "draw {draw}: sphere count"
            );
        }
    }
    assert!(qualified >= 30, "only {qualified}/300 hypothesis-verified");
    assert!(checked >= 10, "only {checked} radial outcomes");
    report(4, "expansion-radius", true);
}

#[test]
fn criterion_5_battery_ledger() {
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    for _ in 0..10_000 {
        let len = rng.gen_range(2..=10);
        let mut d: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=4)).collect();
        let mut pot: u64 = d.iter().map(|&x| 1u64 << x).sum();
        while d.len() > 1 {
            let next = merge_type_vector(&d);
            assert_eq!(next.len(), d.len() - 1, "length must strictly decrease");
            let npot: u64 = next.iter().map(|&x| 1u64 << x).sum();
            assert!(npot >= pot, "potential dropped: {d:?} -> {next:?}");
            d = next;
            pot = npot;
        }
    }
    report(5, "battery-ledger", true);
}

#[test]
fn criterion_6_no_small_sparse_coherent_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(6006);
    for trial in 0..100_000u64 {
        let eps: f64 = [0.2, 0.34, 0.5][(trial % 3) as usize];
        let max_n = (1.0 / eps).floor() as usize;
        if max_n < 2 {
            continue;
        }
        let n = rng.gen_range(2..=max_n.min(30));
        let g = gnp(n, rng.gen_range(0.0..1.0), trial);
        if !is_eps_sparse(&g, eps).sparse {
            continue;
        }
        let bound = eps * n as f64;
        let out = coherence_violation(
            &g,
            CoherenceParams { alpha: bound, beta: bound },
            SearchMode::Exact,
            &mut Budget::default(),
            n,
        )
        .unwrap();
        assert_ne!(
            out,
            SearchOutcome::Verified,
            "counterexample: n={n} eps={eps} trial={trial}"
        );
    }
    report(6, "sparse-coherent-empirical", true);
}

#[test]
fn criterion_7_hole_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(7007);
    for trial in 0..500u64 {
        let n = rng.gen_range(4..=10);
        let g = gnp(n, rng.gen_range(0.1..0.8), 70_000 + trial);
        for ell in 4..=8usize {
            let det =
                find_hole_of_length(&g, ell, SearchMode::Exact, &mut Budget::default()).unwrap();
            let cycles = enumerate_induced_cycles(&g, ell, &mut Budget::default()).unwrap();
            match det {
                SearchOutcome::Verified => assert!(cycles.is_empty(), "trial {trial} ell {ell}"),
                SearchOutcome::WitnessFound(Certificate::Sequence(seq)) => {
                    assert!(!cycles.is_empty(), "trial {trial} ell {ell}");
                    assert!(g.is_induced_cycle(&seq));
                    assert_eq!(seq.len(), ell);
                }
                other => panic!("unexpected outcome {other:?}"),
            }
        }
    }
    let pg = petersen();
    let four = find_hole_of_length(&pg, 4, SearchMode::Exact, &mut Budget::default()).unwrap();
    assert_eq!(four, SearchOutcome::Verified);
    let five = find_hole_of_length(&pg, 5, SearchMode::Exact, &mut Budget::default()).unwrap();
    assert!(matches!(five, SearchOutcome::WitnessFound(_)));
    assert_eq!(
        enumerate_induced_cycles(&pg, 5, &mut Budget::default()).unwrap().len(),
        12
    );
    report(7, "hole-oracle-agreement", true);
}

#[test]
fn criterion_8_end_to_end_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(8008);
    let mut successes = 0usize;
    for inst in 0..100u64 {
        // Theta or long-cycle target, planted in a noisy host.
        let pattern = if inst % 2 == 0 {
            PatternGraph {
                branch_count: 1,
                paths: Vec::new(),
                cycles: vec![CycleSpec {
                    anchor: 0,
                    len: rng.gen_range(5..9),
                }],
            }
        } else {
            PatternGraph {
                branch_count: 2,
                paths: vec![
                    purepair::structures::PathSpec { from: 0, to: 1, len: 3 },
                    purepair::structures::PathSpec { from: 0, to: 1, len: 3 },
                    purepair::structures::PathSpec { from: 0, to: 1, len: 3 },
                ],
                cycles: Vec::new(),
            }
        };
        let h = realize_pattern(&pattern).unwrap();
        let noise_n = rng.gen_range(0..6);
        let noise = gnp(noise_n, 0.3, 80_000 + inst);
        // Disjoint union: pattern copy then noise.
        let mut edges = h.edges();
        for (u, v) in noise.edges() {
            edges.push((h.n() + u, h.n() + v));
        }
        let g = Graph::from_edges(h.n() + noise_n, &edges).unwrap();
        match find_pattern(&g, &pattern, 0.5, 0.2, Mode::Permissive) {
            Ok(emb) => {
                successes += 1;
                assert!(
                    validate_embedding(&g, &h, &emb.map),
                    "instance {inst}: embedding refuted"
                );
                let confirm = contains_induced(&g, &h, &mut Budget::default()).unwrap();
                assert!(
                    matches!(confirm, SearchOutcome::WitnessFound(_)),
                    "instance {inst}: oracle refutes containment"
                );
            }
            Err(e) => panic!("instance {inst}: planted pattern not found ({e})"),
        }
    }
    assert_eq!(successes, 100);
    report(8, "end-to-end-embedding", true);
}

#[test]
fn criterion_9_comparability_bound_empirical() {
    let mut shortfalls = 0usize;
    let mut total = 0usize;
    for &n in &[40usize, 80, 120] {
        for trial in 0..20u64 {
            let seed = 9_000 + n as u64 * 131 + trial;
            let g = comparability_graph(n, 2, seed);
            let pair = max_pure_pair(
                &g,
                SearchMode::Heuristic,
                &mut Budget(20_000),
                seed,
            )
            .unwrap();
            let objective = pair.map_or(0, |p| {
                assert!(p.validate(&g));
                p.objective
            });
            let bound = n as f64 / (4.0 * (n as f64).log2());
            total += 1;
            if (objective as f64) < bound {
                shortfalls += 1;
                println!("finding: n={n} trial={trial} objective={objective} < {bound:.3}");
            }
        }
    }
    let ok = shortfalls * 20 <= total; // at least 95% meet the bound
    println!("note: {shortfalls}/{total} shortfalls");
    report(9, "comparability-bound-empirical", ok);
}
