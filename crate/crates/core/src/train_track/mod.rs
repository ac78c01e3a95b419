//! Train tracks in planar elementary pieces.
//!
//! A track is stored as a combinatorial map on the sphere that contains the
//! track branches together with the host boundary. Each host boundary
//! component bounds one hole face. Boundary edges are oriented so that the
//! hole lies to the left of their even half-edge. Tether edges only fix the
//! relative placement of otherwise disconnected pieces; they are invisible
//! to every topological computation.

mod build;
mod moves;
mod reeb;
mod regions;
mod spiral;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::TrackError;
use crate::geometry::ElementaryKind;
use crate::rational::{q, Q};
use crate::ribbon::RibbonGraph;

pub use build::TrackBuilder;
pub use moves::{isomorphism, legal_splits, pinch, split, PinchSite, SplitDirection, SplitOutcome, SplitSite};
pub use reeb::{classify_track, detect_half_reeb, reeb_pattern, smooth_cycles, ReebPattern, TrackClass};
pub use regions::{complement_regions, neighbourhood_chi_g, Region};
pub use spiral::{
    delta_attachments, extend_weights_arc, extend_weights_closed, geometric_measure, no_switch_on_delta_arcs,
    SpiralExtension, Transversal,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// Ordinary track branch.
    Plain,
    /// Part of the δ component with this index, included in the track.
    DeltaBranch(usize),
    /// Part of the α component with this index (not in the track).
    Alpha(usize),
    /// Part of the δ component with this index, not in the track.
    Delta(usize),
    /// Placement-only edge.
    Tether,
}

impl EdgeKind {
    pub fn in_track(self) -> bool {
        matches!(self, EdgeKind::Plain | EdgeKind::DeltaBranch(_))
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, EdgeKind::DeltaBranch(_) | EdgeKind::Alpha(_) | EdgeKind::Delta(_))
    }

    fn side(self) -> Option<BoundarySide> {
        match self {
            EdgeKind::Alpha(i) => Some(BoundarySide::Alpha(i)),
            EdgeKind::Delta(i) | EdgeKind::DeltaBranch(i) => Some(BoundarySide::Delta(i)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// The first `split` non-tether half-edges of the rotation form one
    /// tangency side, the rest the other.
    Switch { split: usize },
    /// A point on the host boundary.
    Boundary,
    /// A transverse double point; only meaningful as input to pinching.
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrackVertex {
    pub kind: VertexKind,
    /// Half-edges in counter-clockwise order.
    pub rotation: Vec<usize>,
}

impl TrackVertex {
    pub fn switch(split: usize, rotation: Vec<usize>) -> Self {
        TrackVertex { kind: VertexKind::Switch { split }, rotation }
    }

    pub fn boundary(rotation: Vec<usize>) -> Self {
        TrackVertex { kind: VertexKind::Boundary, rotation }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundarySide {
    Alpha(usize),
    Delta(usize),
}

/// Cyclic α/δ pattern of every boundary component of a planar host, in the
/// order a face walk meets them. `None` for hosts that are not planar pieces.
pub fn host_boundary(kind: ElementaryKind) -> Option<Vec<Vec<BoundarySide>>> {
    use BoundarySide::*;
    let alternating = |first_alpha: usize, c: usize| -> Vec<BoundarySide> {
        (0..c).flat_map(|i| [Alpha(first_alpha + i), Delta(i)]).collect()
    };
    Some(match kind {
        ElementaryKind::Pants => vec![vec![Alpha(0)], vec![Alpha(1)], vec![Alpha(2)]],
        ElementaryKind::Connector => vec![vec![Alpha(0)], vec![Alpha(1)]],
        ElementaryKind::TrimAnnulusEmpty => vec![vec![Alpha(0)], vec![Delta(0)]],
        ElementaryKind::TrimAnnulus(c) => vec![vec![Alpha(0)], alternating(1, c)],
        ElementaryKind::CuspedDisk(c) => vec![alternating(0, c)],
        ElementaryKind::NonElementary => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonTrack {
    pub host: ElementaryKind,
    pub vertices: Vec<TrackVertex>,
    pub edges: Vec<EdgeKind>,
}

/// Nonnegative weights on the plain branches.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightVector {
    pub weights: BTreeMap<usize, Q>,
}

impl WeightVector {
    pub fn new(weights: impl IntoIterator<Item = (usize, Q)>) -> Self {
        WeightVector { weights: weights.into_iter().collect() }
    }

    pub fn get(&self, e: usize) -> Q {
        self.weights.get(&e).copied().unwrap_or(q(0))
    }

    pub fn is_positive(&self) -> bool {
        self.weights.values().all(|w| *w > q(0))
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        let mut out = self.clone();
        for (k, v) in &other.weights {
            *out.weights.entry(*k).or_insert(q(0)) += *v;
        }
        out
    }

    pub fn scaled(&self, lambda: Q) -> WeightVector {
        WeightVector { weights: self.weights.iter().map(|(k, v)| (*k, *v * lambda)).collect() }
    }
}

pub(crate) struct Reduced {
    pub graph: RibbonGraph,
    /// Old edge of each reduced edge.
    pub old_edge: Vec<usize>,
}

impl Reduced {
    pub fn old(&self, h: usize) -> usize {
        2 * self.old_edge[h / 2] + h % 2
    }
}

impl RibbonTrack {
    pub fn new(host: ElementaryKind, vertices: Vec<TrackVertex>, edges: Vec<EdgeKind>) -> Result<Self, TrackError> {
        let t = RibbonTrack { host, vertices, edges };
        t.validate()?;
        Ok(t)
    }

    #[inline]
    pub fn kind(&self, h: usize) -> EdgeKind {
        self.edges[h / 2]
    }

    /// Weight each α component receives from the branches ending on it.
    pub fn alpha_weights(&self, w: &WeightVector) -> BTreeMap<usize, Q> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            if v.kind != VertexKind::Boundary {
                continue;
            }
            let Some(i) = v.rotation.iter().find_map(|&h| match self.kind(h) {
                EdgeKind::Alpha(i) => Some(i),
                _ => None,
            }) else {
                continue;
            };
            for &h in &v.rotation {
                if self.kind(h) == EdgeKind::Plain {
                    *out.entry(i).or_insert(q(0)) += w.get(h / 2);
                }
            }
        }
        out
    }

    pub fn plain_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e] == EdgeKind::Plain).collect()
    }

    pub fn graph(&self) -> RibbonGraph {
        RibbonGraph::from_rotations(self.vertices.iter().map(|v| v.rotation.clone()).collect())
            .expect("validated rotations")
    }

    pub(crate) fn reduced(&self) -> Reduced {
        let mut new_edge = vec![None; self.edges.len()];
        let mut old_edge = Vec::new();
        for (e, k) in self.edges.iter().enumerate() {
            if *k != EdgeKind::Tether {
                new_edge[e] = Some(old_edge.len());
                old_edge.push(e);
            }
        }
        let rotations = self
            .vertices
            .iter()
            .map(|v| v.rotation.iter().filter_map(|&h| new_edge[h / 2].map(|e| 2 * e + h % 2)).collect())
            .collect();
        let graph = RibbonGraph::from_rotations(rotations).expect("validated rotations");
        Reduced { graph, old_edge }
    }

    /// Non-tether half-edges of the rotation at `v`.
    pub fn visible_rotation(&self, v: usize) -> Vec<usize> {
        self.vertices[v].rotation.iter().copied().filter(|&h| self.kind(h) != EdgeKind::Tether).collect()
    }

    /// Tangency side (0 or 1) of half-edge `h` at its switch.
    pub fn side(&self, v: usize, h: usize) -> Option<u8> {
        let VertexKind::Switch { split } = self.vertices[v].kind else { return None };
        let pos = self.visible_rotation(v).iter().position(|&x| x == h)?;
        Some(u8::from(pos >= split))
    }

    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; 2 * self.edges.len()];
        for (v, vert) in self.vertices.iter().enumerate() {
            for &h in &vert.rotation {
                out[h] = v;
            }
        }
        out
    }

    /// Index of the hole face of each boundary component of the host, in
    /// the order of [`host_boundary`], from a face list of the full map.
    pub(crate) fn hole_faces(&self, faces: &[Vec<usize>]) -> Result<Vec<usize>, TrackError> {
        let layout = host_boundary(self.host).ok_or_else(|| TrackError::UnsupportedHost(format!("{:?}", self.host)))?;
        let is_hole_corner = |h: usize| h % 2 == 0 && self.kind(h).is_boundary();
        let mut holes: Vec<(usize, Vec<BoundarySide>)> = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            let n = face.iter().filter(|&&h| is_hole_corner(h)).count();
            if n == 0 {
                continue;
            }
            if n != face.len() {
                return Err(TrackError::Malformed(format!("face {f} mixes hole and region corners")));
            }
            let mut seq: Vec<BoundarySide> = Vec::new();
            for &h in face {
                let side = self.kind(h).side().expect("boundary");
                if seq.last() != Some(&side) {
                    seq.push(side);
                }
            }
            while seq.len() > 1 && seq.first() == seq.last() {
                seq.pop();
            }
            holes.push((f, seq));
        }
        let mut out = Vec::new();
        for pattern in &layout {
            let found = holes
                .iter()
                .position(|(_, s)| cyclic_eq(s, pattern))
                .ok_or_else(|| TrackError::Malformed(format!("no hole face matching boundary pattern {pattern:?}")))?;
            out.push(holes.remove(found).0);
        }
        if !holes.is_empty() {
            return Err(TrackError::Malformed(format!("{} unexpected hole faces", holes.len())));
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), TrackError> {
        let bad = |s: String| Err(TrackError::Malformed(s));
        host_boundary(self.host).ok_or_else(|| TrackError::UnsupportedHost(format!("{:?}", self.host)))?;
        let g = RibbonGraph::from_rotations(self.vertices.iter().map(|v| v.rotation.clone()).collect())
            .map_err(TrackError::Malformed)?;
        if g.half_edges() != 2 * self.edges.len() {
            return bad("rotations do not cover every edge".into());
        }
        if g.components().len() != 1 {
            return bad("map is disconnected; add tethers".into());
        }
        if g.genus() != 0 {
            return bad("map is not planar".into());
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            let vis = self.visible_rotation(v);
            if vis.is_empty() {
                return bad(format!("vertex {v} carries only tethers"));
            }
            let plain = vis.iter().filter(|&&h| self.kind(h) == EdgeKind::Plain).count();
            let bnd: Vec<EdgeKind> = vis.iter().map(|&h| self.kind(h)).filter(|k| k.is_boundary()).collect();
            match vert.kind {
                VertexKind::Switch { split } => {
                    if split == 0 || split >= vis.len() {
                        return bad(format!("switch {v} needs an end on each side"));
                    }
                    if bnd.iter().any(|k| !k.in_track()) {
                        return bad(format!("switch {v} touches boundary outside the track"));
                    }
                    if !bnd.is_empty() {
                        let sides: Vec<u8> = vis
                            .iter()
                            .filter(|&&h| self.kind(h).is_boundary())
                            .map(|&h| self.side(v, h).expect("switch"))
                            .collect();
                        if bnd.len() != 2 || sides[0] == sides[1] {
                            return bad(format!("δ must pass smoothly through switch {v}"));
                        }
                    }
                }
                VertexKind::Boundary => {
                    if bnd.len() != 2 {
                        return bad(format!("boundary vertex {v} must lie on exactly one boundary curve"));
                    }
                    if plain > 1 {
                        return bad(format!("boundary vertex {v} has {plain} branch ends"));
                    }
                    if plain == 1 && bnd.iter().any(|k| !matches!(k, EdgeKind::Alpha(_))) {
                        return bad(format!("branch at vertex {v} must end transversely on α"));
                    }
                }
                VertexKind::Crossing => return bad(format!("vertex {v} is a crossing")),
            }
        }
        let in_track: Vec<usize> =
            self.edges.iter().filter_map(|k| if let EdgeKind::DeltaBranch(i) = k { Some(*i) } else { None }).collect();
        if self.edges.iter().any(|k| matches!(k, EdgeKind::Delta(i) if in_track.contains(i))) {
            return bad("a δ component is only partly contained in the track".into());
        }
        self.hole_faces(&g.faces())?;
        Ok(())
    }

    /// The mirror image: every rotation reversed, boundary edges turned
    /// around so holes stay on the left.
    pub fn mirrored(&self) -> RibbonTrack {
        let flip = |h: usize| if self.kind(h).is_boundary() { h ^ 1 } else { h };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vert)| {
                let mut rotation: Vec<usize> = vert.rotation.iter().rev().map(|&h| flip(h)).collect();
                let kind = match vert.kind {
                    VertexKind::Switch { split } => {
                        let n = self.visible_rotation(v).len();
                        // Put the other side's block first.
                        let first_other = self.visible_rotation(v)[n - 1];
                        let pos = rotation.iter().position(|&h| h == flip(first_other)).expect("present");
                        rotation.rotate_left(pos);
                        VertexKind::Switch { split: n - split }
                    }
                    k => k,
                };
                TrackVertex { kind, rotation }
            })
            .collect();
        RibbonTrack { host: self.host, vertices, edges: self.edges.clone() }
    }

    fn check_weights(&self, w: &WeightVector) -> Result<(), TrackError> {
        let plain = self.plain_edges();
        let keys: Vec<usize> = w.weights.keys().copied().collect();
        if keys != plain {
            return Err(TrackError::IndexMismatch(format!("expected branches {plain:?}, got {keys:?}")));
        }
        if let Some((e, v)) = w.weights.iter().find(|(_, v)| **v < q(0)) {
            return Err(TrackError::NegativeWeight(format!("branch {e}: {v}")));
        }
        Ok(())
    }

    /// Switches whose ends are all plain, with their two side sums.
    fn switch_sums(&self, w: &WeightVector) -> Vec<(usize, Q, Q)> {
        let mut out = Vec::new();
        for (v, vert) in self.vertices.iter().enumerate() {
            let VertexKind::Switch { .. } = vert.kind else { continue };
            let vis = self.visible_rotation(v);
            if vis.iter().any(|&h| self.kind(h) != EdgeKind::Plain) {
                continue;
            }
            let mut sums = [q(0), q(0)];
            for &h in &vis {
                sums[self.side(v, h).expect("switch") as usize] += w.get(h / 2);
            }
            out.push((v, sums[0], sums[1]));
        }
        out
    }
}

fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

/// Violated switch equations, one message per switch. Switches on δ are
/// exempt.
pub fn check_switch_equations(track: &RibbonTrack, w: &WeightVector) -> Result<Vec<String>, TrackError> {
    track.check_weights(w)?;
    Ok(track
        .switch_sums(w)
        .into_iter()
        .filter(|(_, a, b)| a != b)
        .map(|(v, a, b)| format!("switch {v}: {} != {}", crate::rational::fmt_q(&a), crate::rational::fmt_q(&b)))
        .collect())
}
