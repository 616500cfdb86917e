//! Spiders from multicoverings, troupes of spiders, and the conversion of a
//! spider troupe into a lobster troupe.

use super::multicover::build_multicovering;
use super::{lift_set, CResult, Failure, Mode};
use crate::detect::card_threshold;
use crate::graph::{Graph, VertexSet};
use crate::params::check_c;
use crate::structures::{
    validate_spider, validate_troupe, Covering, Levelling, Lobster, Multicovering, Spider, Troupe,
};

/// Reroots a multicovering at the least base vertex: that vertex becomes the
/// shared apex, joining every heart, and leaves the base.
pub fn spider_from_multicovering(g: &Graph, mc: &Multicovering) -> CResult<Spider> {
    let base = mc.base();
    if base.len() < 2 {
        return Err(Failure::new(
            "mass",
            format!("base has {} vertices, cannot spare one for the apex", base.len()),
        ));
    }
    let a = base.min_vertex().unwrap();
    let mut new_base = base.clone();
    new_base.remove(a);
    let members = mc
        .terms
        .iter()
        .map(|t| {
            let mut heart = t.heart.clone();
            heart.insert(a);
            Covering {
                apex: a,
                heart,
                base: new_base.clone(),
            }
        })
        .collect();
    let sp = Spider { apex: a, members };
    validate_spider(g, &sp).map_err(|v| Failure::new("soundness", v.to_string()))?;
    Ok(sp)
}

pub fn build_spider(
    g: &Graph,
    c: f64,
    n_target: usize,
    eps: f64,
    mode: Mode,
    cap: usize,
) -> CResult<Spider> {
    let mc = build_multicovering(g, c, n_target, eps, mode, cap)?;
    spider_from_multicovering(g, &mc)
}

/// Troupe of `m` spiders, each of length `n_target`, carved out of disjoint
/// grounds: after each spider, every member heart is minimized, member bases
/// are regrown to the full heart neighbourhoods, and the spider's closed
/// neighbourhood leaves the ground.
pub fn build_troupe(
    g: &Graph,
    c: f64,
    m: usize,
    n_target: usize,
    eps: f64,
    mode: Mode,
    cap: usize,
) -> CResult<Troupe> {
    let inv_c = check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    let hmax = 2 + 2 * inv_c;
    let mut w = g.vertex_set();
    let mut eps_cur = eps;
    let mut spiders = Vec::with_capacity(m);
    for s in 1..=m {
        let (sub, map) = g.induced_subgraph(&w).expect("ground inside graph");
        let mc = build_multicovering(&sub, c, n_target, eps_cur, mode, cap)
            .map_err(|e| Failure::new(e.stage, format!("spider {s}: {}", e.detail)))?;
        let mut sp = spider_from_multicovering(&sub, &mc)
            .map_err(|e| Failure::new(e.stage, format!("spider {s}: {}", e.detail)))?;

        // Heart minimization: drop any heart vertex whose removal keeps the
        // member a covering of its base, keeps the heart within radius
        // 1 + 2/c of the apex, and keeps enough attachment outside hearts.
        let thr = card_threshold(eps_cur * sub.n() as f64).max(1);
        let all_hearts = |sp: &Spider| sp.heart(sub.n());
        loop {
            let mut changed = false;
            for mi in 0..sp.members.len() {
                for v in sp.members[mi].heart.to_vec() {
                    if v == sp.apex {
                        continue;
                    }
                    let mut trial = sp.members[mi].clone();
                    trial.heart.remove(v);
                    let still_covering = sub.covers(&trial.heart, &trial.base) == Ok(true)
                        && sub.is_connected_set(&trial.heart);
                    if !still_covering {
                        continue;
                    }
                    if trial.height(&sub).map_or(true, |h| h > hmax) {
                        continue;
                    }
                    let mut attach = sub.open_nbhd(&trial.heart);
                    let mut hearts = all_hearts(&sp);
                    hearts.remove(v);
                    attach.subtract_in_place(&hearts);
                    if attach.len() < thr {
                        continue;
                    }
                    sp.members[mi] = trial;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        // Bases regrown to the full heart neighbourhoods so the excision
        // below removes the whole closed neighbourhood of every heart.
        let hearts = all_hearts(&sp);
        for mi in 0..sp.members.len() {
            let mut b = sub.open_nbhd(&sp.members[mi].heart);
            b.subtract_in_place(&hearts);
            if b.is_empty() {
                return Err(Failure::new(
                    "base emptied",
                    format!("spider {s} member {mi} has no attachment left"),
                ));
            }
            sp.members[mi].base = b;
        }
        validate_spider(&sub, &sp).map_err(|v| Failure::new("soundness", v.to_string()))?;

        let lifted = Spider {
            apex: map[sp.apex],
            members: sp
                .members
                .iter()
                .map(|mb| Covering {
                    apex: map[mb.apex],
                    heart: lift_set(&mb.heart, &map, g.n()),
                    base: lift_set(&mb.base, &map, g.n()),
                })
                .collect(),
        };
        for mb in &lifted.members {
            w.subtract_in_place(&mb.heart);
            w.subtract_in_place(&mb.base);
        }
        spiders.push(lifted);

        let inv = 1.0 / eps_cur - 3.0 * n_target as f64;
        if inv > 0.0 {
            eps_cur = 1.0 / inv;
        }
    }
    let tr = Troupe::Spiders(spiders);
    validate_troupe(g, &tr).map_err(|v| Failure::new("soundness", v.to_string()))?;
    Ok(tr)
}

/// Converts a spider troupe into a lobster troupe: each member is processed
/// in turn, its pool of attachment vertices is typed by the heart layer it
/// first touches, one type class becomes its base, and everything attaching
/// shallower anywhere is purged from every pool.
pub fn spiders_to_lobsters(
    g: &Graph,
    troupe: &Troupe,
    c: f64,
    eps: f64,
    mode: Mode,
) -> CResult<Troupe> {
    check_c(c).map_err(|e| Failure::new("input", e.to_string()))?;
    let inv_c = (1.0 / c).round();
    let spiders = match troupe {
        Troupe::Spiders(v) => v,
        Troupe::Lobsters(_) => {
            return Err(Failure::new("input", "troupe already consists of lobsters"))
        }
    };
    let n = g.n();
    let flat: Vec<(usize, &Covering)> = spiders
        .iter()
        .enumerate()
        .flat_map(|(si, sp)| sp.members.iter().map(move |mb| (si, mb)))
        .collect();
    let mn = flat.len();
    if mn == 0 {
        return Err(Failure::new("input", "empty troupe"));
    }
    let mut all_hearts = VertexSet::new(n);
    for (_, mb) in &flat {
        all_hearts.union_in_place(&mb.heart);
    }
    let mut pools: Vec<VertexSet> = flat
        .iter()
        .map(|(_, mb)| {
            let mut p = mb.base.clone();
            p.subtract_in_place(&all_hearts);
            p
        })
        .collect();

    let mut upper_layers: Vec<Vec<VertexSet>> = Vec::with_capacity(mn);
    for h in 1..=mn {
        let (_, mb) = &flat[h - 1];
        let layers = heart_layers(g, &mb.heart, mb.apex);
        let mut by_type: Vec<VertexSet> = vec![VertexSet::new(n); layers.len()];
        for v in pools[h - 1].iter() {
            let t = layers
                .iter()
                .position(|l| !g.neighbors(v).is_disjoint(l))
                .expect("pool vertices attach to the heart");
            by_type[t].insert(v);
        }
        let thr = match mode {
            Mode::Strict => {
                card_threshold((2.0 + 2.0 * inv_c).powi((mn - h) as i32) * eps * n as f64).max(1)
            }
            Mode::Permissive => 1,
        };
        let k = by_type
            .iter()
            .position(|cls| cls.len() >= thr)
            .ok_or_else(|| {
                Failure::new(
                    "mass shortfall",
                    format!("member {h}: no attachment type reaches {thr}"),
                )
            })?;
        let mut purge = VertexSet::new(n);
        for cls in &by_type[..k] {
            purge.union_in_place(cls);
        }
        pools[h - 1] = by_type[k].clone();
        for (i, p) in pools.iter_mut().enumerate() {
            if i != h - 1 {
                p.subtract_in_place(&purge);
            }
        }
        upper_layers.push(layers[..=k].to_vec());
    }

    let mut lobsters: Vec<Lobster> = spiders
        .iter()
        .map(|sp| Lobster {
            apex: sp.apex,
            members: Vec::new(),
        })
        .collect();
    for (idx, (si, _)) in flat.iter().enumerate() {
        if pools[idx].is_empty() {
            return Err(Failure::new(
                "base emptied",
                format!("member {} lost its whole base to later purges", idx + 1),
            ));
        }
        let mut layers = upper_layers[idx].clone();
        layers.push(pools[idx].clone());
        lobsters[*si].members.push(Levelling { layers });
    }
    let tr = Troupe::Lobsters(lobsters);
    validate_troupe(g, &tr).map_err(|v| Failure::new("soundness", v.to_string()))?;
    Ok(tr)
}

/// Distance classes from `a` inside G[heart].
fn heart_layers(g: &Graph, heart: &VertexSet, a: usize) -> Vec<VertexSet> {
    let mut layers = vec![VertexSet::singleton(g.n(), a)];
    let mut seen = VertexSet::singleton(g.n(), a);
    loop {
        let mut next = g.open_nbhd(layers.last().unwrap()).intersection(heart);
        next.subtract_in_place(&seen);
        if next.is_empty() {
            return layers;
        }
        seen.union_in_place(&next);
        layers.push(next);
    }
}
