//! Layered structures as data, each with a strict validator that transcribes
//! its definition bullet for bullet. Constructions are debugged through
//! these validators, so every failure report names the broken rule and a
//! concrete witness.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.witness)
    }
}

pub type Check = Result<(), Violation>;

fn fail(rule: &'static str, witness: impl Into<String>) -> Check {
    Err(Violation {
        rule,
        witness: witness.into(),
    })
}

/// First edge with one end in `s1` and the other in `s2` (overlap allowed;
/// an edge inside the intersection counts).
fn edge_between(g: &Graph, s1: &VertexSet, s2: &VertexSet) -> Option<(usize, usize)> {
    for u in s1.iter() {
        if let Some(v) = g.neighbors(u).intersection(s2).min_vertex() {
            return Some((u, v));
        }
    }
    None
}

/// Layered sets (L_0..L_k): one apex, each layer covers the next, layers two
/// or more apart are anticomplete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levelling {
    pub layers: Vec<VertexSet>,
}

impl Levelling {
    pub fn height(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn apex(&self) -> usize {
        self.layers[0].min_vertex().expect("valid levelling has an apex")
    }

    pub fn base(&self) -> &VertexSet {
        self.layers.last().unwrap()
    }

    pub fn penultimate(&self) -> &VertexSet {
        &self.layers[self.layers.len() - 2]
    }

    pub fn heart(&self) -> VertexSet {
        let mut h = self.vertex_set();
        h.subtract_in_place(self.base());
        h
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut v = self.layers[0].clone();
        for l in &self.layers[1..] {
            v.union_in_place(l);
        }
        v
    }

    /// Truncation of BFS layers from `u`; the standard way to obtain a valid
    /// levelling.
    pub fn from_bfs(g: &Graph, u: usize, depth: usize) -> Option<Levelling> {
        let (layers, _) = g.bfs_layers(u);
        if depth == 0 || layers.len() <= depth {
            return None;
        }
        Some(Levelling {
            layers: layers.into_iter().take(depth + 1).collect(),
        })
    }
}

pub fn validate_levelling(g: &Graph, lv: &Levelling) -> Check {
    let k = lv.layers.len();
    if k < 2 {
        return fail("levelling height", format!("needs k >= 1, got {} layers", k));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if let Some(v) = lv.layers[i].common_vertex(&lv.layers[j]) {
                return fail(
                    "levelling layers disjoint",
                    format!("vertex {v} in layers {i} and {j}"),
                );
            }
        }
    }
    if lv.layers[0].len() != 1 {
        return fail(
            "levelling apex",
            format!("|L_0| = {}, expected 1", lv.layers[0].len()),
        );
    }
    for i in 1..k {
        if g.covers(&lv.layers[i - 1], &lv.layers[i]) != Ok(true) {
            let uncovered = lv.layers[i]
                .iter()
                .find(|&v| g.neighbors(v).is_disjoint(&lv.layers[i - 1]))
                .unwrap();
            return fail(
                "levelling covers",
                format!("layer {} vertex {} has no neighbour in layer {}", i, uncovered, i - 1),
            );
        }
    }
    for i in 2..k {
        let mut prefix = VertexSet::new(lv.layers[0].capacity());
        for l in &lv.layers[..i - 1] {
            prefix.union_in_place(l);
        }
        if let Some((u, v)) = edge_between(g, &prefix, &lv.layers[i]) {
            return fail(
                "levelling anticomplete",
                format!("edge {u}-{v} between layers <= {} and layer {}", i - 2, i),
            );
        }
    }
    Ok(())
}

/// Triple (apex, heart, base): connected heart containing the apex covers
/// the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub apex: usize,
    pub heart: VertexSet,
    pub base: VertexSet,
}

impl Covering {
    pub fn vertex_set(&self) -> VertexSet {
        self.heart.union(&self.base)
    }

    /// 1 + eccentricity of the apex inside G[heart]; None when some heart
    /// vertex is unreachable (i.e. the covering is invalid).
    pub fn height(&self, g: &Graph) -> Option<usize> {
        let dist = dist_within(g, &self.heart, self.apex)?;
        Some(1 + dist)
    }

    /// A levelling of height k reinterpreted: heart = first k layers, base =
    /// the last.
    pub fn from_levelling(lv: &Levelling) -> Covering {
        let mut heart = lv.layers[0].clone();
        for l in &lv.layers[1..lv.layers.len() - 1] {
            heart.union_in_place(l);
        }
        Covering {
            apex: lv.apex(),
            heart,
            base: lv.base().clone(),
        }
    }
}

/// Max distance from `a` to members of `x` inside G[x]; None if unreachable.
fn dist_within(g: &Graph, x: &VertexSet, a: usize) -> Option<usize> {
    let mut seen = VertexSet::singleton(g.n(), a);
    let mut frontier = seen.clone();
    let mut d = 0;
    let mut max_d = 0;
    while !frontier.is_empty() {
        let mut next = g.open_nbhd(&frontier).intersection(x);
        next.subtract_in_place(&seen);
        d += 1;
        if !next.is_empty() {
            max_d = d;
        }
        seen.union_in_place(&next);
        frontier = next;
    }
    if x.is_subset(&seen) {
        Some(max_d)
    } else {
        None
    }
}

pub fn validate_covering(g: &Graph, cv: &Covering) -> Check {
    if let Some(v) = cv.heart.common_vertex(&cv.base) {
        return fail("covering disjoint", format!("vertex {v} in heart and base"));
    }
    if !cv.heart.contains(cv.apex) {
        return fail("covering apex", format!("apex {} not in heart", cv.apex));
    }
    if g.covers(&cv.heart, &cv.base) != Ok(true) {
        let v = cv
            .base
            .iter()
            .find(|&v| g.neighbors(v).is_disjoint(&cv.heart))
            .unwrap();
        return fail(
            "covering covers",
            format!("base vertex {v} has no neighbour in heart"),
        );
    }
    if !g.is_connected_set(&cv.heart) {
        return fail("covering connected", "heart induces a disconnected graph".to_string());
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringSequence {
    pub terms: Vec<Covering>,
}

impl CoveringSequence {
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut v = VertexSet::new(n);
        for t in &self.terms {
            v.union_in_place(&t.vertex_set());
        }
        v
    }
}

pub fn validate_covering_sequence(g: &Graph, seq: &CoveringSequence) -> Check {
    for (i, t) in seq.terms.iter().enumerate() {
        validate_covering(g, t).map_err(|v| Violation {
            rule: v.rule,
            witness: format!("term {i}: {}", v.witness),
        })?;
    }
    for i in 0..seq.terms.len() {
        for j in (i + 1)..seq.terms.len() {
            let (hi, hj) = (&seq.terms[i].heart, &seq.terms[j].heart);
            if let Some(v) = hi.common_vertex(hj) {
                return fail(
                    "sequence hearts disjoint",
                    format!("vertex {v} in hearts {i} and {j}"),
                );
            }
            if let Some((u, v)) = edge_between(g, hi, hj) {
                return fail(
                    "sequence hearts anticomplete",
                    format!("edge {u}-{v} between hearts {i} and {j}"),
                );
            }
        }
    }
    Ok(())
}

/// Covering sequence whose terms all share one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multicovering {
    pub terms: Vec<Covering>,
}

impl Multicovering {
    pub fn base(&self) -> &VertexSet {
        &self.terms[0].base
    }

    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut v = VertexSet::new(n);
        for t in &self.terms {
            v.union_in_place(&t.vertex_set());
        }
        v
    }

    pub fn as_sequence(&self) -> CoveringSequence {
        CoveringSequence {
            terms: self.terms.clone(),
        }
    }
}

pub fn validate_multicovering(g: &Graph, mc: &Multicovering) -> Check {
    if mc.terms.is_empty() {
        return fail("multicovering length", "no terms".to_string());
    }
    validate_covering_sequence(g, &mc.as_sequence())?;
    for (i, t) in mc.terms.iter().enumerate().skip(1) {
        if t.base != mc.terms[0].base {
            return fail(
                "multicovering common base",
                format!("term {i} base differs from term 0"),
            );
        }
    }
    Ok(())
}

/// Sequence of vertex-disjoint multicoverings with height and mass floors
/// and base-to-base cross edges only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Battery {
    pub multis: Vec<Multicovering>,
}

impl Battery {
    pub fn type_vector(&self) -> Vec<usize> {
        self.multis.iter().map(Multicovering::length).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BatteryParams {
    /// 1/c is a positive integer.
    pub c: f64,
    /// Mass floor scale x: base of the i-th multicovering must have at least
    /// x * 3^(1-d_i) * n vertices.
    pub x: f64,
}

pub fn validate_battery(g: &Graph, bat: &Battery, p: BatteryParams) -> Check {
    let n = g.n();
    let inv_c = (1.0 / p.c).round() as usize;
    let vsets: Vec<VertexSet> = bat.multis.iter().map(|m| m.vertex_set(n)).collect();
    for i in 0..bat.multis.len() {
        for j in (i + 1)..bat.multis.len() {
            if let Some(v) = vsets[i].common_vertex(&vsets[j]) {
                return fail(
                    "battery disjoint",
                    format!("vertex {v} in multicoverings {i} and {j}"),
                );
            }
        }
    }
    for (i, mc) in bat.multis.iter().enumerate() {
        validate_multicovering(g, mc).map_err(|v| Violation {
            rule: v.rule,
            witness: format!("multicovering {i}: {}", v.witness),
        })?;
        for (j, t) in mc.terms.iter().enumerate() {
            let h = t.height(g).unwrap();
            let cap = if j == 0 { inv_c } else { 1 + inv_c };
            if h > cap {
                return fail(
                    "battery height",
                    format!("multicovering {i} term {j} height {h} > {cap}"),
                );
            }
        }
        let d_i = mc.length() as i32;
        let floor = crate::detect::card_threshold(p.x * 3f64.powi(1 - d_i) * n as f64);
        if mc.base().len() < floor {
            return fail(
                "battery mass",
                format!("multicovering {i} base {} < floor {floor}", mc.base().len()),
            );
        }
    }
    for i in 0..bat.multis.len() {
        for j in 0..bat.multis.len() {
            if i == j {
                continue;
            }
            let mut nonbase = vsets[i].clone();
            nonbase.subtract_in_place(bat.multis[i].base());
            if let Some((u, v)) = edge_between(g, &nonbase, &vsets[j]) {
                return fail(
                    "battery cross edges",
                    format!("edge {u}-{v} leaves a non-base vertex of multicovering {i}"),
                );
            }
        }
    }
    Ok(())
}

/// Coverings sharing an apex, hearts otherwise disjoint and anticomplete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spider {
    pub apex: usize,
    pub members: Vec<Covering>,
}

impl Spider {
    pub fn length(&self) -> usize {
        self.members.len()
    }

    pub fn mass(&self) -> usize {
        self.members.iter().map(|m| m.base.len()).min().unwrap_or(0)
    }

    pub fn height(&self, g: &Graph) -> Option<usize> {
        self.members.iter().map(|m| m.height(g)).max().flatten()
    }

    pub fn heart(&self, n: usize) -> VertexSet {
        let mut h = VertexSet::new(n);
        for m in &self.members {
            h.union_in_place(&m.heart);
        }
        h
    }
}

pub fn validate_spider(g: &Graph, sp: &Spider) -> Check {
    if sp.members.is_empty() {
        return fail("spider length", "no members".to_string());
    }
    for (i, m) in sp.members.iter().enumerate() {
        if m.apex != sp.apex {
            return fail(
                "spider apex",
                format!("member {i} apex {} differs from {}", m.apex, sp.apex),
            );
        }
        validate_covering(g, m).map_err(|v| Violation {
            rule: v.rule,
            witness: format!("member {i}: {}", v.witness),
        })?;
    }
    let n = g.n();
    for i in 0..sp.members.len() {
        for j in (i + 1)..sp.members.len() {
            let mut hi = sp.members[i].heart.clone();
            hi.remove(sp.apex);
            let mut hj = sp.members[j].heart.clone();
            hj.remove(sp.apex);
            let _ = n;
            if let Some(v) = hi.common_vertex(&hj) {
                return fail(
                    "spider hearts disjoint",
                    format!("vertex {v} in members {i} and {j}"),
                );
            }
            if let Some((u, v)) = edge_between(g, &hi, &hj) {
                return fail(
                    "spider hearts anticomplete",
                    format!("edge {u}-{v} between members {i} and {j}"),
                );
            }
        }
    }
    Ok(())
}

/// Levellings sharing an apex; every cross edge from one member's heart to
/// another member runs penultimate level to base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lobster {
    pub apex: usize,
    pub members: Vec<Levelling>,
}

impl Lobster {
    pub fn length(&self) -> usize {
        self.members.len()
    }

    pub fn mass(&self) -> usize {
        self.members.iter().map(|m| m.base().len()).min().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.members.iter().map(Levelling::height).max().unwrap_or(0)
    }

    pub fn heart(&self, n: usize) -> VertexSet {
        let mut h = VertexSet::new(n);
        for m in &self.members {
            h.union_in_place(&m.heart());
        }
        h
    }
}

pub fn validate_lobster(g: &Graph, lb: &Lobster) -> Check {
    if lb.members.is_empty() {
        return fail("lobster length", "no members".to_string());
    }
    for (i, m) in lb.members.iter().enumerate() {
        validate_levelling(g, m).map_err(|v| Violation {
            rule: v.rule,
            witness: format!("member {i}: {}", v.witness),
        })?;
        if m.apex() != lb.apex {
            return fail(
                "lobster apex",
                format!("member {i} apex {} differs from {}", m.apex(), lb.apex),
            );
        }
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
                if let Some(v) = hi.common_vertex(&hj) {
                    return fail(
                        "lobster hearts disjoint",
                        format!("vertex {v} in member hearts {i} and {j}"),
                    );
                }
            }
            let mut vj = lb.members[j].vertex_set();
            vj.remove(lb.apex);
            // Edges from H_i\{a} to V(L_j)\{a} must run penultimate(i) -> base(j).
            for u in hi.iter() {
                for v in g.neighbors(u).intersection(&vj).iter() {
                    if !(lb.members[i].penultimate().contains(u)
                        && lb.members[j].base().contains(v))
                    {
                        return fail(
                            "lobster cross edges",
                            format!("edge {u}-{v} between members {i} and {j} is not penultimate-to-base"),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Troupe {
    Spiders(Vec<Spider>),
    Lobsters(Vec<Lobster>),
}

impl Troupe {
    pub fn len(&self) -> usize {
        match self {
            Troupe::Spiders(v) => v.len(),
            Troupe::Lobsters(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn validate_troupe(g: &Graph, tr: &Troupe) -> Check {
    let n = g.n();
    match tr {
        Troupe::Spiders(spiders) => {
            for (i, s) in spiders.iter().enumerate() {
                validate_spider(g, s).map_err(|v| Violation {
                    rule: v.rule,
                    witness: format!("spider {i}: {}", v.witness),
                })?;
            }
            let hearts: Vec<VertexSet> = spiders.iter().map(|s| s.heart(n)).collect();
            for i in 0..spiders.len() {
                for j in (i + 1)..spiders.len() {
                    if let Some(v) = hearts[i].common_vertex(&hearts[j]) {
                        return fail(
                            "troupe hearts disjoint",
                            format!("vertex {v} in spider hearts {i} and {j}"),
                        );
                    }
                    if let Some((u, v)) = edge_between(g, &hearts[i], &hearts[j]) {
                        return fail(
                            "troupe hearts anticomplete",
                            format!("edge {u}-{v} between spider hearts {i} and {j}"),
                        );
                    }
                }
            }
        }
        Troupe::Lobsters(lobsters) => {
            for (i, l) in lobsters.iter().enumerate() {
                validate_lobster(g, l).map_err(|v| Violation {
                    rule: v.rule,
                    witness: format!("lobster {i}: {}", v.witness),
                })?;
            }
            let hearts: Vec<VertexSet> = lobsters.iter().map(|l| l.heart(n)).collect();
            for i in 0..lobsters.len() {
                for j in (i + 1)..lobsters.len() {
                    if let Some(v) = hearts[i].common_vertex(&hearts[j]) {
                        return fail(
                            "troupe hearts disjoint",
                            format!("vertex {v} in lobster hearts {i} and {j}"),
                        );
                    }
                    if let Some((u, v)) = edge_between(g, &hearts[i], &hearts[j]) {
                        return fail(
                            "troupe hearts anticomplete",
                            format!("edge {u}-{v} between lobster hearts {i} and {j}"),
                        );
                    }
                }
            }
            // No member's upper layers may touch any other member's base.
            let members: Vec<(usize, &Levelling)> = lobsters
                .iter()
                .enumerate()
                .flat_map(|(i, l)| l.members.iter().map(move |m| (i, m)))
                .collect();
            for (ai, a) in &members {
                let k = a.layers.len() - 1;
                let mut upper = VertexSet::new(n);
                for l in &a.layers[..k.max(1) - 1] {
                    upper.union_in_place(l);
                }
                for (bi, bm) in &members {
                    if std::ptr::eq(*a, *bm) {
                        continue;
                    }
                    if let Some((u, v)) = edge_between(g, &upper, bm.base()) {
                        return fail(
                            "troupe upper-to-base",
                            format!(
                                "edge {u}-{v} between upper layers (lobster {ai}) and a base (lobster {bi})"
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// ℒ-vertical induced path from the apex down to `target`, one vertex per
/// layer. Exists for every vertex of a valid levelling; induced because
/// non-consecutive layers are anticomplete.
pub fn levelling_vertical_path(
    g: &Graph,
    lv: &Levelling,
    target: usize,
) -> Result<Vec<usize>, Violation> {
    let layer = lv
        .layers
        .iter()
        .position(|l| l.contains(target))
        .ok_or(Violation {
            rule: "vertical path target",
            witness: format!("vertex {target} not in the levelling"),
        })?;
    let mut path = vec![target];
    for i in (0..layer).rev() {
        let cur = *path.last().unwrap();
        let parent = g
            .neighbors(cur)
            .intersection(&lv.layers[i])
            .min_vertex()
            .ok_or(Violation {
                rule: "vertical path parent",
                witness: format!("vertex {cur} has no neighbour in layer {i}"),
            })?;
        path.push(parent);
    }
    path.reverse();
    debug_assert!(g.is_induced_path(&path));
    Ok(path)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("endpoint index {0} out of range (m = {1})")]
    BadIndex(usize, usize),
    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("path length must be at least 1, got {0}")]
    PathTooShort(usize),
    #[error("path spec may not join a branch vertex to itself (use a cycle spec)")]
    SelfPath,
    #[error("duplicate unit path between branch vertices {0} and {1}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSpec {
    pub from: usize,
    pub to: usize,
    pub len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleSpec {
    pub anchor: usize,
    pub len: usize,
}

/// Target graph given as branch vertices plus internally disjoint paths and
/// anchored cycles with prescribed lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    pub branch_count: usize,
    pub paths: Vec<PathSpec>,
    pub cycles: Vec<CycleSpec>,
}

impl PatternGraph {
    pub fn spec_count(&self) -> usize {
        self.paths.len() + self.cycles.len()
    }

    /// All prescribed lengths.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths
            .iter()
            .map(|p| p.len)
            .chain(self.cycles.iter().map(|c| c.len))
            .collect()
    }

    /// Degree each branch vertex acquires across all specs.
    pub fn branch_degree(&self, i: usize) -> usize {
        self.paths
            .iter()
            .map(|p| (p.from == i) as usize + (p.to == i) as usize)
            .sum::<usize>()
            + self.cycles.iter().map(|c| 2 * (c.anchor == i) as usize).sum::<usize>()
    }

    /// Lengths must reach 4/c + 5 for the intended regime.
    pub fn meets_regime(&self, c: f64) -> bool {
        let floor = crate::detect::card_threshold(4.0 / c + 5.0);
        self.lengths().iter().all(|&l| l >= floor)
    }
}

/// Builds the concrete graph: branch vertices first (ids 0..m), then each
/// spec's interior vertices in spec order.
pub fn realize_pattern(p: &PatternGraph) -> Result<Graph, PatternError> {
    let m = p.branch_count;
    for s in &p.paths {
        if s.from >= m {
            return Err(PatternError::BadIndex(s.from, m));
        }
        if s.to >= m {
            return Err(PatternError::BadIndex(s.to, m));
        }
        if s.from == s.to {
            return Err(PatternError::SelfPath);
        }
        if s.len < 1 {
            return Err(PatternError::PathTooShort(s.len));
        }
    }
    for s in &p.cycles {
        if s.anchor >= m {
            return Err(PatternError::BadIndex(s.anchor, m));
        }
        if s.len < 3 {
            return Err(PatternError::CycleTooShort(s.len));
        }
    }
    let total: usize = m
        + p.paths.iter().map(|s| s.len - 1).sum::<usize>()
        + p.cycles.iter().map(|s| s.len - 1).sum::<usize>();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let push = |edges: &mut Vec<(usize, usize)>, u: usize, v: usize| -> Result<(), PatternError> {
        let e = (u.min(v), u.max(v));
        if edges.contains(&e) {
            return Err(PatternError::DuplicateEdge(e.0, e.1));
        }
        edges.push(e);
        Ok(())
    };
    let mut next = m;
    for s in &p.paths {
        let mut prev = s.from;
        for _ in 0..(s.len - 1) {
            push(&mut edges, prev, next)?;
            prev = next;
            next += 1;
        }
        push(&mut edges, prev, s.to)?;
    }
    for s in &p.cycles {
        let mut prev = s.anchor;
        for _ in 0..(s.len - 1) {
            push(&mut edges, prev, next)?;
            prev = next;
            next += 1;
        }
        push(&mut edges, prev, s.anchor)?;
    }
    debug_assert_eq!(next, total);
    Ok(Graph::from_edges(total, &edges).expect("pattern edges in range"))
}
