//! Covering sequences, their refinement into multicoverings, and the battery
//! merge process that trades sequence length for multicovering depth.

use super::expand::small_rad;
use super::{check_sparse_coherent, lift_set, minimal_addition, CResult, Failure, Mode};
use crate::detect::card_threshold;
use crate::graph::{Graph, VertexSet};
use crate::params::check_c;
use crate::structures::{
    validate_battery, validate_covering_sequence, validate_multicovering, Battery, BatteryParams,
    Covering, CoveringSequence, Levelling, Multicovering,
};
use std::collections::BTreeMap;

/// Vertex-disjoint covering sequence of the requested length: each term comes
/// from a small-radius levelling of what is left, trimmed so its penultimate
/// sphere covers a quarter of the current ground, and the term's closed heart
/// neighbourhood is excised before the next round.
pub fn build_covering_sequence(
    g: &Graph,
    c: f64,
    n_terms: usize,
    eps: f64,
    mode: Mode,
    cap: usize,
) -> CResult<CoveringSequence> {
    check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    let mut w = g.vertex_set();
    let mut eps_cur = eps;
    let mut terms = Vec::with_capacity(n_terms);
    for i in 1..=n_terms {
        if w.len() < 2 {
            return Err(Failure::new(
                "ground exhausted",
                format!("only {} vertices left before term {i}", w.len()),
            ));
        }
        let (sub, map) = g.induced_subgraph(&w).expect("ground inside graph");
        if mode == Mode::Strict {
            check_sparse_coherent(&sub, eps_cur, c, cap)?;
        }
        let rad = small_rad(&sub, c, mode, cap)
            .map_err(|e| Failure::new(e.stage, format!("term {i}: {}", e.detail)))?;
        let k = rad.k;
        let layers = &rad.levelling.layers;
        let sphere = &layers[k];
        let lo = card_threshold(sub.n() as f64 / 4.0).max(1);
        let none = VertexSet::new(sub.n());
        let trimmed = minimal_addition(&layers[k - 1], &none, |e| {
            sub.open_nbhd(e).intersection(sphere).len() >= lo
        })
        .ok_or_else(|| {
            Failure::new(
                "base trim",
                format!("term {i}: sphere of radius {k} cannot cover a quarter"),
            )
        })?;
        let new_base = sub.open_nbhd(&trimmed).intersection(sphere);
        let mut lv_layers = layers[..k - 1].to_vec();
        lv_layers.push(trimmed);
        lv_layers.push(new_base);
        let cov_sub = Covering::from_levelling(&Levelling { layers: lv_layers });
        let cov = Covering {
            apex: map[cov_sub.apex],
            heart: lift_set(&cov_sub.heart, &map, g.n()),
            base: lift_set(&cov_sub.base, &map, g.n()),
        };
        w.subtract_in_place(&g.closed_nbhd(&cov.heart));
        terms.push(cov);
        eps_cur *= 2.0;
    }
    let seq = CoveringSequence { terms };
    validate_covering_sequence(g, &seq).map_err(|v| Failure::new("soundness", v.to_string()))?;
    Ok(seq)
}

#[derive(Debug, Clone)]
pub enum RefineOutcome {
    /// Some refined base is covered by at least `target` hearts.
    Multi(Multicovering),
    /// Greedy subsequence whose bases nothing later touches.
    DisjointBases(CoveringSequence),
}

/// Splits each base by its signature against later hearts (keeping the
/// largest class, earliest signature on ties), so every later heart covers a
/// refined base all-or-none; then either some refined base reaches `target`
/// covering hearts, or a greedy pass extracts terms with untouched bases.
pub fn refine_covering_sequence(
    g: &Graph,
    seq: &CoveringSequence,
    target: usize,
) -> CResult<RefineOutcome> {
    let m = seq.terms.len();
    if m == 0 || target == 0 {
        return Err(Failure::new("input", "empty sequence or zero target"));
    }
    let mut refined: Vec<Covering> = Vec::with_capacity(m);
    let mut cover_sets: Vec<Vec<usize>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut classes: BTreeMap<Vec<bool>, VertexSet> = BTreeMap::new();
        for v in seq.terms[i].base.iter() {
            let sig: Vec<bool> = (i + 1..m)
                .map(|j| !g.neighbors(v).is_disjoint(&seq.terms[j].heart))
                .collect();
            classes
                .entry(sig)
                .or_insert_with(|| VertexSet::new(g.n()))
                .insert(v);
        }
        let mut best: Option<(&Vec<bool>, &VertexSet)> = None;
        for (sig, set) in &classes {
            if best.map_or(true, |(_, b)| set.len() > b.len()) {
                best = Some((sig, set));
            }
        }
        let (sig, set) = best.expect("base is nonempty");
        cover_sets.push(
            sig.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(off, _)| i + 1 + off)
                .collect(),
        );
        refined.push(Covering {
            apex: seq.terms[i].apex,
            heart: seq.terms[i].heart.clone(),
            base: set.clone(),
        });
    }

    for i in 0..m {
        if 1 + cover_sets[i].len() >= target {
            let mut terms = vec![refined[i].clone()];
            for &j in cover_sets[i].iter().take(target - 1) {
                terms.push(Covering {
                    apex: seq.terms[j].apex,
                    heart: seq.terms[j].heart.clone(),
                    base: refined[i].base.clone(),
                });
            }
            let mc = Multicovering { terms };
            validate_multicovering(g, &mc)
                .map_err(|v| Failure::new("soundness", v.to_string()))?;
            return Ok(RefineOutcome::Multi(mc));
        }
    }

    let mut chosen: Vec<Covering> = Vec::new();
    let mut chosen_bases = VertexSet::new(g.n());
    let mut chosen_hearts = VertexSet::new(g.n());
    let mut chosen_verts = VertexSet::new(g.n());
    for term in &refined {
        let vset = term.vertex_set();
        if !vset.is_disjoint(&chosen_verts)
            || !g.open_nbhd(&term.heart).is_disjoint(&chosen_bases)
            || !g.open_nbhd(&chosen_hearts).is_disjoint(&term.base)
        {
            continue;
        }
        chosen_bases.union_in_place(&term.base);
        chosen_hearts.union_in_place(&term.heart);
        chosen_verts.union_in_place(&vset);
        chosen.push(term.clone());
    }
    Ok(RefineOutcome::DisjointBases(CoveringSequence {
        terms: chosen,
    }))
}

/// One battery merge: send the shallowest multicovering to the back, carve a
/// minimal X out of its base that reaches a third of some earlier base, fold
/// X into that term as one extra covering, and shed the back term. Deepens
/// one term by one while shortening the battery by one.
pub fn battery_merge_step(g: &Graph, bat: &Battery) -> CResult<Battery> {
    let t = bat.multis.len();
    if t < 2 {
        return Err(Failure::new("merge", "battery has fewer than 2 terms"));
    }
    let dmin = bat.multis.iter().map(Multicovering::length).min().unwrap();
    let pos = bat
        .multis
        .iter()
        .position(|m| m.length() == dmin)
        .unwrap();
    let mut ms = bat.multis.clone();
    let back = ms.remove(pos);
    ms.push(back);

    let bt = ms[t - 1].base().clone();
    let thresholds: Vec<usize> = ms[..t - 1]
        .iter()
        .map(|m| card_threshold(m.base().len() as f64 / 3.0).max(1))
        .collect();
    let none = VertexSet::new(g.n());
    let hit = |x: &VertexSet, ms: &[Multicovering]| -> Option<usize> {
        let nx = g.open_nbhd(x);
        (0..t - 1).find(|&i| ms[i].base().intersection_len(&nx) >= thresholds[i])
    };
    let x = minimal_addition(&bt, &none, |e| hit(e, &ms).is_some()).ok_or_else(|| {
        Failure::new("merge", "last base reaches no third of any earlier base")
    })?;
    let istar = hit(&x, &ms).unwrap();
    ms.swap(0, istar);
    let nx = g.open_nbhd(&x);
    let y1 = ms[0].base().intersection(&nx);
    let donor = ms[t - 1].terms[0].clone();
    for term in ms[0].terms.iter_mut() {
        term.base = y1.clone();
    }
    ms[0].terms.push(Covering {
        apex: donor.apex,
        heart: donor.heart.union(&x),
        base: y1,
    });
    for m in ms[1..t - 1].iter_mut() {
        let mut z = m.base().clone();
        z.subtract_in_place(&nx);
        if z.is_empty() {
            return Err(Failure::new("merge", "a surviving base emptied"));
        }
        for term in m.terms.iter_mut() {
            term.base = z.clone();
        }
    }
    ms.pop();
    Ok(Battery { multis: ms })
}

/// Type-vector bookkeeping of one merge: first minimum to the back, new
/// front deepens by one, back term dropped. The potential sum of 2^d_i never
/// decreases while the length strictly does.
pub fn merge_type_vector(d: &[usize]) -> Vec<usize> {
    if d.len() < 2 {
        return d.to_vec();
    }
    let mut v = d.to_vec();
    let dmin = *v.iter().min().unwrap();
    let pos = v.iter().position(|&x| x == dmin).unwrap();
    let back = v.remove(pos);
    v.push(back);
    v[0] += 1;
    v.pop();
    v
}

/// Multicovering of the requested length via covering sequence, refinement,
/// and battery merges.
pub fn build_multicovering(
    g: &Graph,
    c: f64,
    n_target: usize,
    eps: f64,
    mode: Mode,
    cap: usize,
) -> CResult<Multicovering> {
    if n_target == 0 {
        return Err(Failure::new("input", "target length must be positive"));
    }
    if n_target > 16 {
        return Err(Failure::new(
            "input",
            format!("target length {n_target} blows up the sequence budget"),
        ));
    }
    if n_target == 1 {
        let seq = build_covering_sequence(g, c, 1, eps, mode, cap)?;
        let mc = Multicovering { terms: seq.terms };
        validate_multicovering(g, &mc).map_err(|v| Failure::new("soundness", v.to_string()))?;
        return Ok(mc);
    }
    let q = 1usize << n_target;
    let p = (q - 1) * (q - 1) + 1;
    let seq = build_covering_sequence(g, c, p, eps, mode, cap)?;
    let mut mc = match refine_covering_sequence(g, &seq, q)? {
        RefineOutcome::Multi(mc) => mc,
        RefineOutcome::DisjointBases(s2) => {
            if s2.terms.len() < q {
                return Err(Failure::new(
                    "refinement shortfall",
                    format!("only {} detached terms, need {q}", s2.terms.len()),
                ));
            }
            let mut hearts = VertexSet::new(g.n());
            for t in s2.terms.iter().take(q) {
                hearts.union_in_place(&t.heart);
            }
            let mut multis = Vec::with_capacity(q);
            for t in s2.terms.iter().take(q) {
                let mut b = t.base.clone();
                b.subtract_in_place(&hearts);
                if b.is_empty() {
                    return Err(Failure::new("base emptied", "heart trim removed a whole base"));
                }
                multis.push(Multicovering {
                    terms: vec![Covering {
                        apex: t.apex,
                        heart: t.heart.clone(),
                        base: b,
                    }],
                });
            }
            let mut bat = Battery { multis };
            let x = 2f64.powi(-(p.min(1000) as i32) - 1);
            loop {
                if mode == Mode::Strict {
                    validate_battery(g, &bat, BatteryParams { c, x })
                        .map_err(|v| Failure::new("soundness", v.to_string()))?;
                }
                if let Some(i) = bat.multis.iter().position(|m| m.length() >= n_target) {
                    break bat.multis[i].clone();
                }
                if bat.multis.len() < 2 {
                    return Err(Failure::new(
                        "merge exhausted",
                        "battery shrank to one term before reaching the target depth",
                    ));
                }
                bat = battery_merge_step(g, &bat)?;
            }
        }
    };
    mc.terms.truncate(n_target);
    validate_multicovering(g, &mc).map_err(|v| Failure::new("soundness", v.to_string()))?;
    Ok(mc)
}
