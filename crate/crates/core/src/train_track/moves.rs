//! Splitting and pinching.

use serde::{Deserialize, Serialize};

use super::{EdgeKind, RibbonTrack, TrackVertex, VertexKind, WeightVector};
use crate::error::TrackError;
use crate::rational::{q, Q};
use crate::ribbon::RibbonGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitDirection {
    Left,
    Right,
    Central,
}

/// A large branch to split: both ends at trivalent switches where it is
/// alone on its side, or one such end and the other end on α.
pub type SplitSite = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PinchSite {
    /// Two plain branches facing each other across one region, given by
    /// the half-edges along which that region lies to the right.
    Parallel { p: usize, q: usize },
    /// The diagonal branch left behind by a left or right split.
    Diagonal(usize),
    /// Two branches ending at neighbouring points of one α component,
    /// given by their half-edges at α.
    AlphaEnds { upper: usize, lower: usize },
    /// A transverse double point.
    Crossing(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitOutcome {
    pub track: RibbonTrack,
    pub weights: Option<WeightVector>,
    /// Pinching here undoes the split.
    pub inverse: PinchSite,
}

fn illegal<T>(msg: String) -> Result<T, TrackError> {
    Err(TrackError::IllegalSite(msg))
}

/// Mutable copy with deferred deletion.
struct Draft {
    t: RibbonTrack,
    dead_edges: Vec<bool>,
    dead_vertices: Vec<bool>,
    weights: Option<Vec<Q>>,
}

impl Draft {
    fn new(t: &RibbonTrack, w: Option<&WeightVector>) -> Self {
        Draft {
            t: t.clone(),
            dead_edges: vec![false; t.edges.len()],
            dead_vertices: vec![false; t.vertices.len()],
            weights: w.map(|w| (0..t.edges.len()).map(|e| w.get(e)).collect()),
        }
    }

    fn replace(&mut self, old: usize, new: usize) {
        for v in &mut self.t.vertices {
            if let Some(slot) = v.rotation.iter_mut().find(|h| **h == old) {
                *slot = new;
                return;
            }
        }
        panic!("half-edge {old} not placed");
    }

    fn add_edge(&mut self, kind: EdgeKind, weight: Q) -> usize {
        self.t.edges.push(kind);
        self.dead_edges.push(false);
        if let Some(w) = &mut self.weights {
            w.push(weight);
        }
        self.t.edges.len() - 1
    }

    fn add_vertex(&mut self, v: TrackVertex) -> usize {
        self.t.vertices.push(v);
        self.dead_vertices.push(false);
        self.t.vertices.len() - 1
    }

    fn set_weight(&mut self, e: usize, w: Q) {
        if let Some(ws) = &mut self.weights {
            ws[e] = w;
        }
    }

    /// Drops dead items and renumbers; returns the new index of every old edge.
    fn finish(self) -> (RibbonTrack, Option<WeightVector>, Vec<Option<usize>>) {
        let mut map = vec![None; self.t.edges.len()];
        let mut edges = Vec::new();
        for (e, k) in self.t.edges.iter().enumerate() {
            if !self.dead_edges[e] {
                map[e] = Some(edges.len());
                edges.push(*k);
            }
        }
        let vertices = self
            .t
            .vertices
            .iter()
            .enumerate()
            .filter(|(v, _)| !self.dead_vertices[*v])
            .map(|(_, vert)| TrackVertex {
                kind: vert.kind,
                rotation: vert.rotation.iter().map(|&h| 2 * map[h / 2].expect("live edge") + h % 2).collect(),
            })
            .collect();
        let weights = self.weights.map(|ws| {
            WeightVector::new(
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k == EdgeKind::Plain)
                    .map(|(e, _)| (e, ws[map.iter().position(|m| *m == Some(e)).expect("mapped")])),
            )
        });
        (RibbonTrack { host: self.t.host, vertices, edges }, weights, map)
    }
}

fn map_half(map: &[Option<usize>], h: usize) -> usize {
    2 * map[h / 2].expect("live edge") + h % 2
}

/// Rotation at `v` when it has no tethers, else an error.
fn plain_switch(t: &RibbonTrack, v: usize, len: usize) -> Result<Vec<usize>, TrackError> {
    let vert = &t.vertices[v];
    if !matches!(vert.kind, VertexKind::Switch { .. }) || vert.rotation.len() != len {
        return illegal(format!("vertex {v} is not a {len}-valent switch"));
    }
    if vert.rotation.iter().any(|&h| t.kind(h) != EdgeKind::Plain) {
        return illegal(format!("vertex {v} has non-plain ends"));
    }
    Ok(vert.rotation.clone())
}

fn succ(rot: &[usize], h: usize) -> usize {
    rot[(rot.iter().position(|&x| x == h).expect("in rotation") + 1) % rot.len()]
}

fn pred(rot: &[usize], h: usize) -> usize {
    rot[(rot.iter().position(|&x| x == h).expect("in rotation") + rot.len() - 1) % rot.len()]
}

/// `h` is alone on its side at trivalent switch `v`.
fn alone(t: &RibbonTrack, v: usize, h: usize) -> bool {
    let s = t.side(v, h);
    t.vertices[v].rotation.iter().filter(|&&x| t.side(v, x) == s).count() == 1
}

/// Splits the large branch `e`.
pub fn split(
    track: &RibbonTrack,
    e: SplitSite,
    dir: SplitDirection,
    w: Option<&WeightVector>,
) -> Result<SplitOutcome, TrackError> {
    track.validate()?;
    if let Some(w) = w {
        track.check_weights(w)?;
    }
    if track.edges.get(e) != Some(&EdgeKind::Plain) {
        return illegal(format!("edge {e} is not a plain branch"));
    }
    let vertex = track.vertex_of();
    let (h0, h1) = (2 * e, 2 * e + 1);
    let (v0, v1) = (vertex[h0], vertex[h1]);
    let is_switch = |v: usize| matches!(track.vertices[v].kind, VertexKind::Switch { .. });
    if v0 != v1 && is_switch(v0) && is_switch(v1) {
        return split_classic(track, e, dir, w);
    }
    for (hs, ha) in [(h0, h1), (h1, h0)] {
        if is_switch(vertex[hs]) && track.vertices[vertex[ha]].kind == VertexKind::Boundary {
            return split_at_alpha(track, hs, ha, w);
        }
    }
    illegal(format!("branch {e} is not a splittable large branch"))
}

fn split_classic(
    track: &RibbonTrack,
    e: usize,
    dir: SplitDirection,
    w: Option<&WeightVector>,
) -> Result<SplitOutcome, TrackError> {
    let vertex = track.vertex_of();
    let (eu, ev) = (2 * e, 2 * e + 1);
    let (u, v) = (vertex[eu], vertex[ev]);
    let ru = plain_switch(track, u, 3)?;
    let rv = plain_switch(track, v, 3)?;
    if !alone(track, u, eu) || !alone(track, v, ev) {
        return illegal(format!("branch {e} is not large"));
    }
    let (b, c) = (succ(&ru, eu), succ(&ru, succ(&ru, eu)));
    let (f, d) = (succ(&rv, ev), succ(&rv, succ(&rv, ev)));
    let wt = |h: usize| w.map(|w| w.get(h / 2));
    let mut dr = Draft::new(track, w);
    match dir {
        SplitDirection::Right | SplitDirection::Left => {
            let (keep, lose) = if dir == SplitDirection::Right { (b, d) } else { (c, f) };
            if let (Some(a), Some(z)) = (wt(keep), wt(lose)) {
                if a < z {
                    return Err(TrackError::CarryingViolation(format!(
                        "{dir:?} split of branch {e} needs weight {a} >= {z}"
                    )));
                }
                dr.set_weight(e, a - z);
            }
            if dir == SplitDirection::Right {
                dr.t.vertices[u] = TrackVertex::switch(1, vec![b, eu, d]);
                dr.t.vertices[v] = TrackVertex::switch(1, vec![f, ev, c]);
            } else {
                dr.t.vertices[u] = TrackVertex::switch(1, vec![c, f, eu]);
                dr.t.vertices[v] = TrackVertex::switch(1, vec![d, b, ev]);
            }
            let (t, weights, map) = dr.finish();
            let inverse = PinchSite::Diagonal(map[e].expect("kept"));
            Ok(SplitOutcome { track: t, weights, inverse })
        }
        SplitDirection::Central => {
            if let (Some(a), Some(z)) = (wt(b), wt(d)) {
                if a != z {
                    return Err(TrackError::CarryingViolation(format!("central split of branch {e} needs {a} = {z}")));
                }
            }
            let mut ends = vec![e, b / 2, c / 2, d / 2, f / 2];
            ends.sort_unstable();
            ends.dedup();
            if ends.len() != 5 {
                return illegal(format!("central split of branch {e} would leave a vertex-free loop"));
            }
            // b absorbs d, c absorbs f.
            dr.replace(RibbonGraph::iota(d), b);
            dr.replace(RibbonGraph::iota(f), c);
            dr.t.vertices[u].rotation.clear();
            dr.t.vertices[v].rotation.clear();
            dr.dead_vertices[u] = true;
            dr.dead_vertices[v] = true;
            dr.dead_edges[e] = true;
            dr.dead_edges[d / 2] = true;
            dr.dead_edges[f / 2] = true;
            let (t, weights, map) = dr.finish();
            let inverse = PinchSite::Parallel { p: map_half(&map, RibbonGraph::iota(b)), q: map_half(&map, c) };
            Ok(SplitOutcome { track: t, weights, inverse })
        }
    }
}

fn visible_succ(t: &RibbonTrack, v: usize, h: usize) -> usize {
    succ(&t.visible_rotation(v), h)
}

fn split_at_alpha(
    track: &RibbonTrack,
    hs: usize,
    ha: usize,
    w: Option<&WeightVector>,
) -> Result<SplitOutcome, TrackError> {
    let vertex = track.vertex_of();
    let (u, p) = (vertex[hs], vertex[ha]);
    let ru = plain_switch(track, u, 3)?;
    if !alone(track, u, hs) {
        return illegal(format!("branch {} is not large at its switch", hs / 2));
    }
    let (b, c) = (succ(&ru, hs), succ(&ru, succ(&ru, hs)));
    if b / 2 == c / 2 || b / 2 == hs / 2 || c / 2 == hs / 2 {
        return illegal(format!("switch {u} has a loop"));
    }
    let g = visible_succ(track, p, ha);
    let EdgeKind::Alpha(i) = track.kind(g) else {
        return illegal(format!("branch {} does not end on α", hs / 2));
    };
    let mut dr = Draft::new(track, w);
    if let Some(w) = w {
        dr.set_weight(hs / 2, w.get(b / 2));
    }
    let n = dr.add_edge(EdgeKind::Alpha(i), q(0));
    let (n_p, n_q) = (2 * n + g % 2, 2 * n + 1 - g % 2);
    dr.replace(g, n_p);
    dr.add_vertex(TrackVertex::boundary(vec![n_q, c, g]));
    dr.replace(RibbonGraph::iota(b), hs);
    dr.t.vertices[u].rotation.clear();
    dr.dead_vertices[u] = true;
    dr.dead_edges[b / 2] = true;
    let (t, weights, map) = dr.finish();
    let inverse = PinchSite::AlphaEnds { upper: map_half(&map, ha), lower: map_half(&map, c) };
    Ok(SplitOutcome { track: t, weights, inverse })
}

/// Every branch and direction at which [`split`] applies without weights.
/// Branches ending on α are listed once, as central.
pub fn legal_splits(track: &RibbonTrack) -> Vec<(usize, SplitDirection)> {
    let mut out = Vec::new();
    let vertex = track.vertex_of();
    for e in track.plain_edges() {
        let at_alpha = [2 * e, 2 * e + 1].iter().any(|&h| track.vertices[vertex[h]].kind == VertexKind::Boundary);
        let dirs: &[SplitDirection] = if at_alpha {
            &[SplitDirection::Central]
        } else {
            &[SplitDirection::Left, SplitDirection::Right, SplitDirection::Central]
        };
        for &d in dirs {
            if split(track, e, d, None).is_ok() {
                out.push((e, d));
            }
        }
    }
    out
}

/// Inverse of splitting.
pub fn pinch(
    track: &RibbonTrack,
    site: PinchSite,
    w: Option<&WeightVector>,
) -> Result<(RibbonTrack, Option<WeightVector>), TrackError> {
    let has_crossing = track.vertices.iter().any(|v| v.kind == VertexKind::Crossing);
    if !has_crossing {
        track.validate()?;
    }
    if let Some(w) = w {
        track.check_weights(w)?;
    }
    let vertex = track.vertex_of();
    let half_ok = |h: usize| h < 2 * track.edges.len() && track.kind(h) == EdgeKind::Plain;
    let mut dr = Draft::new(track, w);
    let wt = |e: usize| w.map_or(q(0), |w| w.get(e));
    match site {
        PinchSite::Parallel { p: hp, q: hq } => {
            if !half_ok(hp) || !half_ok(hq) || hp / 2 == hq / 2 {
                return illegal("parallel pinch needs two distinct plain branches".into());
            }
            let fi = track.graph().face_index();
            let (fp, fq) = (fi[RibbonGraph::iota(hp)], fi[RibbonGraph::iota(hq)]);
            if fp != fq {
                return Err(TrackError::NotParallel(format!("branches {} and {} share no region", hp / 2, hq / 2)));
            }
            let e = dr.add_edge(EdgeKind::Plain, wt(hp / 2) + wt(hq / 2));
            let p2 = dr.add_edge(EdgeKind::Plain, wt(hp / 2));
            let q2 = dr.add_edge(EdgeKind::Plain, wt(hq / 2));
            dr.replace(RibbonGraph::iota(hp), 2 * p2 + 1);
            dr.replace(hq, 2 * q2 + 1);
            dr.add_vertex(TrackVertex::switch(1, vec![2 * e, RibbonGraph::iota(hp), hq]));
            dr.add_vertex(TrackVertex::switch(1, vec![2 * e + 1, 2 * q2, 2 * p2]));
        }
        PinchSite::Diagonal(x) => {
            if !half_ok(2 * x) {
                return illegal(format!("edge {x} is not a plain branch"));
            }
            let (xu, xv) = (2 * x, 2 * x + 1);
            let (u, v) = (vertex[xu], vertex[xv]);
            if u == v {
                return illegal(format!("branch {x} is a loop"));
            }
            let ru = plain_switch(track, u, 3)?;
            let rv = plain_switch(track, v, 3)?;
            if alone(track, u, xu) || alone(track, v, xv) {
                return illegal(format!("branch {x} is large"));
            }
            let partner = |r: &[usize], vv: usize, h: usize| {
                if track.side(vv, succ(r, h)) == track.side(vv, h) {
                    1
                } else {
                    -1
                }
            };
            let (b, c, f, d) = match (partner(&ru, u, xu), partner(&rv, v, xv)) {
                (1, 1) => (pred(&ru, xu), succ(&rv, xv), pred(&rv, xv), succ(&ru, xu)),
                (-1, -1) => (pred(&rv, xv), succ(&ru, xu), pred(&ru, xu), succ(&rv, xv)),
                _ => return illegal(format!("branch {x} is not a split diagonal")),
            };
            dr.set_weight(x, wt(b / 2) + wt(c / 2));
            dr.t.vertices[u] = TrackVertex::switch(1, vec![xu, b, c]);
            dr.t.vertices[v] = TrackVertex::switch(1, vec![xv, f, d]);
        }
        PinchSite::AlphaEnds { upper: x, lower: y } => {
            if !half_ok(x) || !half_ok(y) || x / 2 == y / 2 {
                return illegal("α pinch needs two distinct plain branches".into());
            }
            let (p, pq) = (vertex[x], vertex[y]);
            if track.vertices[p].kind != VertexKind::Boundary || track.vertices[pq].kind != VertexKind::Boundary {
                return illegal("α pinch needs branch ends on α".into());
            }
            let np = visible_succ(track, p, x);
            if !matches!(track.kind(np), EdgeKind::Alpha(_)) || vertex[RibbonGraph::iota(np)] != pq {
                return illegal("branch ends are not neighbours along α".into());
            }
            let rq = &track.vertices[pq].rotation;
            if rq.len() != 3 || succ(rq, RibbonGraph::iota(np)) != y {
                return illegal("branch ends are not neighbours along α".into());
            }
            let g = succ(rq, y);
            let nb = dr.add_edge(EdgeKind::Plain, wt(x / 2));
            dr.set_weight(x / 2, wt(x / 2) + wt(y / 2));
            dr.replace(RibbonGraph::iota(x), 2 * nb + 1);
            dr.t.vertices[pq].rotation.clear();
            dr.dead_vertices[pq] = true;
            dr.replace(np, g);
            dr.dead_edges[np / 2] = true;
            dr.add_vertex(TrackVertex::switch(1, vec![RibbonGraph::iota(x), 2 * nb, y]));
        }
        PinchSite::Crossing(v) => {
            let vert = &track.vertices[v];
            if vert.kind != VertexKind::Crossing || vert.rotation.len() != 4 {
                return illegal(format!("vertex {v} is not a crossing"));
            }
            let r = vert.rotation.clone();
            if r.iter().any(|&h| track.kind(h) != EdgeKind::Plain) {
                return illegal(format!("crossing {v} has non-plain ends"));
            }
            let e = dr.add_edge(EdgeKind::Plain, wt(r[0] / 2) + wt(r[1] / 2));
            dr.t.vertices[v] = TrackVertex::switch(1, vec![2 * e, r[0], r[1]]);
            dr.add_vertex(TrackVertex::switch(1, vec![2 * e + 1, r[2], r[3]]));
        }
    }
    let (t, weights, _) = dr.finish();
    if !t.vertices.iter().any(|v| v.kind == VertexKind::Crossing) {
        t.validate()?;
    }
    Ok((t, weights))
}

/// An isomorphism of tracks as a map on edges, if one exists.
pub fn isomorphism(a: &RibbonTrack, b: &RibbonTrack) -> Option<Vec<usize>> {
    if a.host != b.host || a.edges.len() != b.edges.len() || a.vertices.len() != b.vertices.len() {
        return None;
    }
    if a.edges.is_empty() {
        return Some(vec![]);
    }
    let (ga, gb) = (a.graph(), b.graph());
    let (va, vb) = (a.vertex_of(), b.vertex_of());
    let n = ga.half_edges();
    'candidates: for g0 in 0..n {
        let mut phi = vec![usize::MAX; n];
        let mut stack = vec![(0usize, g0)];
        while let Some((h, g)) = stack.pop() {
            if phi[h] != usize::MAX {
                if phi[h] != g {
                    continue 'candidates;
                }
                continue;
            }
            let (ka, kb) = (a.kind(h), b.kind(g));
            if ka != kb || (ka.is_boundary() && h % 2 != g % 2) {
                continue 'candidates;
            }
            if a.vertices[va[h]].kind != b.vertices[vb[g]].kind && !both_switches(a, va[h], b, vb[g]) {
                continue 'candidates;
            }
            phi[h] = g;
            stack.push((ga.sigma(h), gb.sigma(g)));
            stack.push((RibbonGraph::iota(h), RibbonGraph::iota(g)));
        }
        if phi.contains(&usize::MAX) {
            continue;
        }
        // Tangency partitions must correspond.
        for v in 0..a.vertices.len() {
            let rot = &a.vertices[v].rotation;
            let Some(h0) = rot.first() else { continue };
            let w = vb[phi[*h0]];
            for &h in rot {
                let same_a = a.side(v, h) == a.side(v, *h0);
                let same_b = b.side(w, phi[h]) == b.side(w, phi[*h0]);
                if same_a != same_b {
                    continue 'candidates;
                }
            }
        }
        return Some((0..a.edges.len()).map(|e| phi[2 * e] / 2).collect());
    }
    None
}

fn both_switches(a: &RibbonTrack, v: usize, b: &RibbonTrack, w: usize) -> bool {
    matches!(a.vertices[v].kind, VertexKind::Switch { .. }) && matches!(b.vertices[w].kind, VertexKind::Switch { .. })
}
