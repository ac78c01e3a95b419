//! Construction of tracks from a rough planar drawing.

use super::{EdgeKind, RibbonTrack, TrackVertex, VertexKind};
use crate::error::TrackError;
use crate::geometry::ElementaryKind;

#[derive(Clone, Copy, Debug)]
enum Point {
    Switch { tangent: f64 },
    Boundary,
    Crossing,
}

/// Builds a [`RibbonTrack`] from vertex positions and the directions in
/// which edges leave them. Angles are in degrees.
#[derive(Clone, Debug)]
pub struct TrackBuilder {
    host: ElementaryKind,
    points: Vec<(f64, f64, Point)>,
    edges: Vec<EdgeKind>,
    /// (vertex, angle) of each half-edge.
    ends: Vec<(usize, f64)>,
}

fn angle(from: (f64, f64), to: (f64, f64)) -> f64 {
    (to.1 - from.1).atan2(to.0 - from.0).to_degrees()
}

impl TrackBuilder {
    pub fn new(host: ElementaryKind) -> Self {
        TrackBuilder { host, points: vec![], edges: vec![], ends: vec![] }
    }

    /// A switch whose two tangency sides point along `tangent` and opposite.
    pub fn switch(&mut self, x: f64, y: f64, tangent: f64) -> usize {
        self.points.push((x, y, Point::Switch { tangent }));
        self.points.len() - 1
    }

    pub fn boundary_point(&mut self, x: f64, y: f64) -> usize {
        self.points.push((x, y, Point::Boundary));
        self.points.len() - 1
    }

    pub fn crossing(&mut self, x: f64, y: f64) -> usize {
        self.points.push((x, y, Point::Crossing));
        self.points.len() - 1
    }

    fn pos(&self, v: usize) -> (f64, f64) {
        (self.points[v].0, self.points[v].1)
    }

    /// Edge leaving `a` at angle `da` and arriving at `b` from angle `db`
    /// (the direction pointing back out of `b` along the edge).
    pub fn edge_at(&mut self, kind: EdgeKind, a: usize, da: f64, b: usize, db: f64) -> usize {
        self.edges.push(kind);
        self.ends.push((a, da));
        self.ends.push((b, db));
        self.edges.len() - 1
    }

    /// Straight edge.
    pub fn edge(&mut self, kind: EdgeKind, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.pos(a), self.pos(b));
        self.edge_at(kind, a, angle(pa, pb), b, angle(pb, pa))
    }

    /// Boundary circle through the given `(angle on circle, vertex, kind of
    /// the edge starting there)` marks. Marks are listed in the traversal
    /// order that keeps the hole on the left: counter-clockwise when the hole
    /// is inside, clockwise otherwise.
    pub fn circle(&mut self, hole_inside: bool, marks: &[(f64, usize, EdgeKind)]) -> Vec<usize> {
        let n = marks.len();
        let (fwd, back) = if hole_inside { (90.0, -90.0) } else { (-90.0, 90.0) };
        (0..n)
            .map(|i| {
                let (ta, a, kind) = marks[i];
                let (tb, b, _) = marks[(i + 1) % n];
                self.edge_at(kind, a, ta + fwd, b, tb + back)
            })
            .collect()
    }

    pub fn build(&self) -> Result<RibbonTrack, TrackError> {
        let mut at: Vec<Vec<(f64, usize)>> = vec![vec![]; self.points.len()];
        for (h, &(v, a)) in self.ends.iter().enumerate() {
            at[v].push((a.rem_euclid(360.0), h));
        }
        let mut vertices = Vec::new();
        for (v, list) in at.iter_mut().enumerate() {
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut rotation: Vec<usize> = list.iter().map(|x| x.1).collect();
            let kind = match self.points[v].2 {
                Point::Boundary => VertexKind::Boundary,
                Point::Crossing => VertexKind::Crossing,
                Point::Switch { tangent } => {
                    let visible: Vec<(f64, usize)> =
                        list.iter().copied().filter(|(_, h)| self.edges[h / 2] != EdgeKind::Tether).collect();
                    let side: Vec<bool> = visible.iter().map(|(a, _)| (a - tangent).to_radians().cos() > 0.0).collect();
                    let n = side.len();
                    let start = (0..n)
                        .find(|&i| side[i] && !side[(i + n - 1) % n])
                        .ok_or_else(|| TrackError::Malformed(format!("switch {v} lacks an end on each side")))?;
                    let split = side.iter().filter(|s| **s).count();
                    if (0..split).any(|i| !side[(start + i) % n]) {
                        return Err(TrackError::Malformed(format!("switch {v} sides are not contiguous")));
                    }
                    let first = visible[start].1;
                    let pos = rotation.iter().position(|&h| h == first).expect("present");
                    rotation.rotate_left(pos);
                    VertexKind::Switch { split }
                }
            };
            vertices.push(TrackVertex { kind, rotation });
        }
        RibbonTrack::new(self.host, vertices, self.edges.clone())
    }

    /// Like [`build`](Self::build) but without validation, for diagrams with
    /// crossings.
    pub fn build_unchecked(&self) -> RibbonTrack {
        let mut at: Vec<Vec<(f64, usize)>> = vec![vec![]; self.points.len()];
        for (h, &(v, a)) in self.ends.iter().enumerate() {
            at[v].push((a.rem_euclid(360.0), h));
        }
        let vertices = at
            .into_iter()
            .enumerate()
            .map(|(v, mut list)| {
                list.sort_by(|x, y| x.0.total_cmp(&y.0));
                let kind = match self.points[v].2 {
                    Point::Boundary => VertexKind::Boundary,
                    Point::Crossing => VertexKind::Crossing,
                    Point::Switch { .. } => VertexKind::Switch { split: 1 },
                };
                TrackVertex { kind, rotation: list.into_iter().map(|x| x.1).collect() }
            })
            .collect();
        RibbonTrack { host: self.host, vertices, edges: self.edges.clone() }
    }
}
