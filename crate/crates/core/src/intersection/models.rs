//! Cellulations of the elementary pieces and standard paths for their arcs.
//!
//! Every port is a loop edge bounding a one-corner free face; the rest of
//! each piece is a single filled face. Outer circles of trim annuli and
//! cusped disks hold their α-arcs as tokens in one mixed corner, in
//! counter-clockwise order.

use crate::catalog::disk::Diagonal;
use crate::catalog::{PantsArc, TrimArc};

use super::complex::{Complex, Corner};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    Port(usize),
    Alpha(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ArcPath {
    pub start: End,
    pub path: Vec<usize>,
    pub end: End,
}

#[derive(Clone, Debug)]
pub(crate) struct Model {
    pub cx: Complex,
    /// Port corner (vertex, corner) per port.
    pub ports: Vec<(usize, usize)>,
    /// α token ids in counter-clockwise order.
    pub alphas: Vec<usize>,
}

impl Model {
    /// Adds a copy of an arc to the complex as a new curve.
    pub fn add_arc(&mut self, a: &ArcPath) -> usize {
        let start = self.pin(a.start);
        let end = self.pin(a.end);
        self.cx.curves.push(super::complex::Curve::Arc { start, path: a.path.clone(), end });
        self.cx.curves.len() - 1
    }

    fn pin(&mut self, e: End) -> usize {
        match e {
            End::Port(p) => {
                let (v, k) = self.ports[p];
                self.cx.free_pin(v, k)
            }
            End::Alpha(j) => self.cx.alpha_pin(self.alphas[j]),
        }
    }
}

/// Boundary 0 is the outer circle; 1 and 2 are holes. Edges: loops 0..3
/// around the boundaries, then `3: p0 -> p1` and `4: p0 -> p2`.
pub(crate) fn pants() -> Model {
    let mut cx = Complex::default();
    let f = Corner::filled;
    cx.add_vertex(vec![0, 8, 6, 1], vec![f(), f(), f(), Corner::free()]);
    cx.add_vertex(vec![2, 3, 7], vec![Corner::free(), f(), f()]);
    cx.add_vertex(vec![4, 5, 9], vec![Corner::free(), f(), f()]);
    Model { cx, ports: vec![(0, 3), (1, 0), (2, 0)], alphas: vec![] }
}

/// Path from port `i` around boundary `j` and back; `j` must differ from `i`.
pub(crate) fn pants_around(i: usize, j: usize) -> Vec<usize> {
    match (i, j) {
        (0, 1) => vec![6, 2, 7],
        (0, 2) => vec![8, 4, 9],
        (1, 2) => vec![7, 8, 4, 9, 6],
        (1, 0) => vec![7, 1, 6],
        (2, 1) => vec![9, 6, 2, 7, 8],
        (2, 0) => vec![9, 1, 8],
        _ => panic!("no loop from {i} around {j}"),
    }
}

pub(crate) fn pants_cross_path(i: usize, j: usize) -> Vec<usize> {
    let to = |k: usize| -> Vec<usize> {
        match k {
            0 => vec![],
            1 => vec![6],
            _ => vec![8],
        }
    };
    let mut p = super::complex::inverse(&to(i));
    p.extend(to(j));
    p
}

pub(crate) fn pants_arc(a: PantsArc) -> ArcPath {
    match a {
        PantsArc::Cross(i, j) => ArcPath { start: End::Port(i), path: pants_cross_path(i, j), end: End::Port(j) },
        PantsArc::Loop(i) => ArcPath { start: End::Port(i), path: pants_loop_path(i), end: End::Port(i) },
    }
}

/// The loop arc at port `i`, drawn around the lower-numbered other hole.
pub(crate) fn pants_loop_path(i: usize) -> Vec<usize> {
    match i {
        0 => pants_around(0, 1),
        1 => pants_around(1, 2),
        _ => pants_around(2, 1),
    }
}

/// Port 0 is the outer circle, port 1 the inner one. Edges: loops 0 and 1,
/// then `2: q0 -> q1`.
pub(crate) fn connector() -> Model {
    let mut cx = Complex::default();
    let f = Corner::filled;
    cx.add_vertex(vec![0, 4, 1], vec![f(), f(), Corner::free()]);
    cx.add_vertex(vec![2, 3, 5], vec![Corner::free(), f(), f()]);
    Model { cx, ports: vec![(0, 2), (1, 0)], alphas: vec![] }
}

/// Half-edge for one positive turn around the port-1 loop.
pub(crate) const CONNECTOR_TURN: usize = 2;

/// Inner circle is the port; the outer circle carries `c` α-arcs. Edges:
/// `0` inner loop, `1` outer loop, `2: p -> o`.
pub(crate) fn trim(c: usize) -> Model {
    let mut cx = Complex::default();
    let f = Corner::filled;
    let alphas: Vec<usize> = (0..c).map(|_| cx.new_alpha()).collect();
    cx.add_vertex(vec![0, 1, 4], vec![Corner::free(), f(), f()]);
    cx.add_vertex(vec![2, 5, 3], vec![f(), f(), Corner::mixed(alphas.clone())]);
    Model { cx, ports: vec![(0, 0)], alphas }
}

pub(crate) fn trim_arc(c: usize, a: TrimArc) -> ArcPath {
    match a {
        TrimArc::Radial(i) => ArcPath { start: End::Port(0), path: vec![4], end: End::Alpha(i) },
        TrimArc::Outer { start, span } => {
            let path = if start + span >= c { vec![2] } else { vec![] };
            ArcPath { start: End::Alpha(start), path, end: End::Alpha((start + span) % c) }
        }
    }
}

/// A disk is a single vertex whose only corner holds the α-arcs.
pub(crate) fn disk(c: usize) -> Model {
    let mut cx = Complex::default();
    let alphas: Vec<usize> = (0..c).map(|_| cx.new_alpha()).collect();
    cx.add_vertex(vec![], vec![Corner::mixed(alphas.clone())]);
    Model { cx, ports: vec![], alphas }
}

pub(crate) fn disk_arc(d: Diagonal) -> ArcPath {
    ArcPath { start: End::Alpha(d.0), path: vec![], end: End::Alpha(d.1) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::complex::Tag;

    #[test]
    fn cellulations_have_expected_faces() {
        assert_eq!(pants().cx.face_tags(), vec![Tag::Filled, Tag::Free, Tag::Free, Tag::Free]);
        assert_eq!(connector().cx.face_tags(), vec![Tag::Filled, Tag::Free, Tag::Free]);
        assert_eq!(trim(3).cx.face_tags(), vec![Tag::Filled, Tag::Free, Tag::Mixed]);
        assert_eq!(disk(4).cx.face_tags(), vec![Tag::Mixed]);
    }
}
