//! Standard train tracks of the elementary pieces, one per top cell.

use std::collections::BTreeMap;

use super::disk::{self, Diagonal};
use super::pants::{induced_pants, PantsArc};
use super::trim::{induced_chart, maximal_systems, TrimArc};
use super::{ConnectorChart, PieceChart, TEmptyChart};
use crate::geometry::ElementaryKind;
use crate::linalg;
use crate::rational::{q, Q};
use crate::train_track::{EdgeKind, RibbonTrack, TrackBuilder, WeightVector};

/// How cone parameters turn into a chart point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartMap {
    Pants(Vec<PantsArc>),
    Trim(usize, Vec<TrimArc>),
    Disk(usize, Vec<Diagonal>),
    /// Chart index; parameters are `(t, y)`.
    Connector(u8),
    /// Spiral sense; the parameter is `|s|`.
    TEmpty(i8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTrack {
    pub kind: ElementaryKind,
    pub cell: String,
    pub track: RibbonTrack,
    /// Plain branches run over by each generator of the weight cone.
    pub generators: Vec<Vec<usize>>,
    pub chart_map: ChartMap,
}

impl StandardTrack {
    pub fn weights(&self, params: &[Q]) -> WeightVector {
        let mut w: BTreeMap<usize, Q> = self.track.plain_edges().into_iter().map(|e| (e, q(0))).collect();
        for (gen, p) in self.generators.iter().zip(params) {
            for e in gen {
                *w.get_mut(e).expect("plain branch") += *p;
            }
        }
        WeightVector { weights: w }
    }

    /// Cone parameters of a weight vector, if it lies in the cone.
    pub fn params(&self, w: &WeightVector) -> Option<Vec<Q>> {
        let plain = self.track.plain_edges();
        let a: Vec<Vec<Q>> = plain
            .iter()
            .map(|e| self.generators.iter().map(|g| q(g.iter().filter(|x| *x == e).count() as i64)).collect())
            .collect();
        let b: Vec<Q> = plain.iter().map(|e| w.get(*e)).collect();
        let p = linalg::solve(&a, &b)?;
        p.iter().all(|x| *x >= q(0)).then_some(p)
    }

    pub fn chart(&self, params: &[Q]) -> PieceChart {
        match &self.chart_map {
            ChartMap::Pants(arcs) => {
                PieceChart::Pants(induced_pants(&arcs.iter().copied().zip(params.iter().copied()).collect::<Vec<_>>()))
            }
            ChartMap::Trim(c, arcs) => PieceChart::Trim(induced_chart(
                *c,
                &arcs.iter().copied().zip(params.iter().copied()).collect::<Vec<_>>(),
            )),
            ChartMap::Disk(c, diags) => PieceChart::Disk(disk::induced_disk(
                *c,
                &diags.iter().copied().zip(params.iter().copied()).collect::<Vec<_>>(),
            )),
            ChartMap::Connector(ch) => PieceChart::Connector(ConnectorChart::new(*ch, params[0], params[1])),
            ChartMap::TEmpty(sense) => PieceChart::TEmpty(TEmptyChart::new(params[0] * Q::from(i64::from(*sense)))),
        }
    }
}

/// One standard track per top cell of the piece's chart.
pub fn standard_tracks(kind: ElementaryKind) -> Vec<StandardTrack> {
    match kind {
        ElementaryKind::Pants => pants_tracks(),
        ElementaryKind::Connector => connector_tracks(),
        ElementaryKind::TrimAnnulusEmpty => spiral_tracks(),
        ElementaryKind::TrimAnnulus(c) => maximal_systems(c).into_iter().map(|s| trim_track(c, s)).collect(),
        ElementaryKind::CuspedDisk(c) => disk::triangulations(c).into_iter().map(|t| disk_track(c, t)).collect(),
        ElementaryKind::NonElementary => vec![],
    }
}

fn polar(r: f64, deg: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

// Pants: outer circle 0 of radius 10 about the origin, circles 1 and 2 of
// radius 2 about (∓4, 0).
const PANTS_CENTRE: [(f64, f64, f64); 3] = [(0.0, 0.0, 10.0), (-4.0, 0.0, 2.0), (4.0, 0.0, 2.0)];

fn pants_track(cell: &str, arcs: &[(PantsArc, (usize, f64), (usize, f64))]) -> StandardTrack {
    let mut b = TrackBuilder::new(ElementaryKind::Pants);
    let mut marks: [Vec<(f64, usize)>; 3] = Default::default();
    let mut point = |b: &mut TrackBuilder, (i, a): (usize, f64)| {
        let (cx, cy, r) = PANTS_CENTRE[i];
        let (x, y) = polar(r, a);
        let v = b.boundary_point(cx + x, cy + y);
        marks[i].push((a, v));
        // Into the surface: inward from the outer circle, outward otherwise.
        (v, if i == 0 { a + 180.0 } else { a })
    };
    let mut ends = Vec::new();
    for (_, e0, e1) in arcs {
        let p0 = point(&mut b, *e0);
        let p1 = point(&mut b, *e1);
        ends.push((p0, p1));
    }
    for (i, m) in marks.iter_mut().enumerate() {
        m.sort_by(|x, y| x.0.total_cmp(&y.0));
        if i == 0 {
            m.reverse();
        }
        let ms: Vec<(f64, usize, EdgeKind)> = m.iter().map(|&(a, v)| (a, v, EdgeKind::Alpha(i))).collect();
        b.circle(i != 0, &ms);
    }
    let generators =
        ends.iter().map(|&((v0, d0), (v1, d1))| vec![b.edge_at(EdgeKind::Plain, v0, d0, v1, d1)]).collect();
    StandardTrack {
        kind: ElementaryKind::Pants,
        cell: cell.into(),
        track: b.build().expect("standard pants track"),
        generators,
        chart_map: ChartMap::Pants(arcs.iter().map(|a| a.0).collect()),
    }
}

fn pants_tracks() -> Vec<StandardTrack> {
    use PantsArc::*;
    vec![
        pants_track(
            "central",
            &[
                (Cross(0, 1), (0, 150.0), (1, 120.0)),
                (Cross(0, 2), (0, 30.0), (2, 60.0)),
                (Cross(1, 2), (1, 0.0), (2, 180.0)),
            ],
        ),
        pants_track(
            "corner1",
            &[
                (Loop(0), (0, 90.0), (0, 270.0)),
                (Cross(0, 1), (0, 180.0), (1, 180.0)),
                (Cross(0, 2), (0, 0.0), (2, 0.0)),
            ],
        ),
        pants_track(
            "corner2",
            &[
                (Loop(1), (1, 30.0), (1, 330.0)),
                (Cross(1, 2), (1, 0.0), (2, 180.0)),
                (Cross(0, 1), (0, 180.0), (1, 180.0)),
            ],
        ),
        pants_track(
            "corner3",
            &[
                (Loop(2), (2, 150.0), (2, 210.0)),
                (Cross(1, 2), (1, 0.0), (2, 180.0)),
                (Cross(0, 2), (0, 0.0), (2, 0.0)),
            ],
        ),
    ]
}

/// The connector track twisting in the positive sense: a core cycle through
/// two switches with one stem to each boundary circle. The core branch `k1`
/// carries `t + y`, `k2` carries `t`, each stem `y`.
fn connector_tracks() -> Vec<StandardTrack> {
    let mut b = TrackBuilder::new(ElementaryKind::Connector);
    let a0 = b.boundary_point(0.0, 10.0);
    let a1 = b.boundary_point(0.0, -2.0);
    b.circle(false, &[(90.0, a0, EdgeKind::Alpha(0))]);
    b.circle(true, &[(270.0, a1, EdgeKind::Alpha(1))]);
    let s1 = b.switch(0.0, 5.0, 0.0);
    let s2 = b.switch(0.0, -5.0, 0.0);
    let k1 = b.edge_at(EdgeKind::Plain, s1, 180.0, s2, 180.0);
    let k2 = b.edge_at(EdgeKind::Plain, s2, 0.0, s1, 0.0);
    let m0 = b.edge_at(EdgeKind::Plain, s1, 10.0, a0, 250.0);
    let m1 = b.edge_at(EdgeKind::Plain, s2, 10.0, a1, 300.0);
    let track = b.build().expect("standard connector track");
    let generators = vec![vec![k1, k2], vec![k1, m0, m1]];
    vec![
        StandardTrack {
            kind: ElementaryKind::Connector,
            cell: "chart1".into(),
            track: track.clone(),
            generators: generators.clone(),
            chart_map: ChartMap::Connector(1),
        },
        StandardTrack {
            kind: ElementaryKind::Connector,
            cell: "chart2".into(),
            track: track.mirrored(),
            generators,
            chart_map: ChartMap::Connector(2),
        },
    ]
}

/// The δ-circle with one branch from the α-circle spiralling onto it. The
/// drawing feeds δ counter-clockwise, against its induced orientation, so the
/// positive cell is its mirror image.
fn spiral_tracks() -> Vec<StandardTrack> {
    let mut b = TrackBuilder::new(ElementaryKind::TrimAnnulusEmpty);
    let a = b.boundary_point(0.0, 10.0);
    let s = b.switch(0.0, 3.0, 0.0);
    b.circle(false, &[(90.0, a, EdgeKind::Alpha(0))]);
    b.circle(true, &[(90.0, s, EdgeKind::DeltaBranch(0))]);
    let e = b.edge_at(EdgeKind::Plain, a, 270.0, s, 10.0);
    let track = b.build().expect("standard spiral track");
    vec![
        StandardTrack {
            kind: ElementaryKind::TrimAnnulusEmpty,
            cell: "positive".into(),
            track: track.mirrored(),
            generators: vec![vec![e]],
            chart_map: ChartMap::TEmpty(1),
        },
        StandardTrack {
            kind: ElementaryKind::TrimAnnulusEmpty,
            cell: "negative".into(),
            track,
            generators: vec![vec![e]],
            chart_map: ChartMap::TEmpty(-1),
        },
    ]
}

/// Arcs drawn in an annulus or disk whose outer circle of length `c`
/// carries `α_j` on `[j, j + 1/2]` and `δ_j` on `[j + 1/2, j + 1]`. Arc
/// ends on the same α component are merged through one switch.
struct OuterDrawing {
    c: usize,
    /// `Some(alpha index offset)`: α-arc `j` is `Alpha(offset + j)`.
    offset: usize,
    inner: bool,
    /// Per arc, its two ends: `None` for the inner circle, else an outer
    /// position.
    arcs: Vec<[Option<f64>; 2]>,
}

impl OuterDrawing {
    fn angle(&self, p: f64) -> f64 {
        360.0 * p / self.c as f64
    }

    fn build(&self, kind: ElementaryKind) -> (RibbonTrack, Vec<Vec<usize>>) {
        let mut b = TrackBuilder::new(kind);
        let c = self.c as f64;
        // Group ends by α component: usize::MAX for the inner circle.
        let mut groups: BTreeMap<usize, Vec<(f64, usize, usize)>> = BTreeMap::new();
        for (a, ends) in self.arcs.iter().enumerate() {
            for (k, end) in ends.iter().enumerate() {
                let key = end.map_or(usize::MAX, |p| p.rem_euclid(c).floor() as usize);
                let pos = end.map_or(0.0, |p| p.rem_euclid(c));
                groups.entry(key).or_default().push((pos, a, k));
            }
        }
        let mut outer_marks: Vec<(f64, usize)> = Vec::new();
        let mut inner_marks: Vec<(f64, usize)> = Vec::new();
        // (vertex, direction) at each arc end, and stem branches per arc.
        let mut at: BTreeMap<(usize, usize), (usize, f64)> = BTreeMap::new();
        let mut stems: Vec<Vec<usize>> = vec![vec![]; self.arcs.len()];
        for (&key, list) in &mut groups {
            let inner = key == usize::MAX;
            let angles: Vec<f64> = if inner {
                list.iter().map(|&(_, a, _)| self.angle(self.arcs[a][0].or(self.arcs[a][1]).unwrap_or(0.0))).collect()
            } else {
                list.iter().map(|&(p, _, _)| self.angle(p)).collect()
            };
            let mut order: Vec<usize> = (0..list.len()).collect();
            if list.len() == 1 {
                let a = angles[0];
                let (pt, dir) = if inner {
                    let (x, y) = polar(2.0, a);
                    let v = b.boundary_point(x, y);
                    inner_marks.push((a, v));
                    (v, a)
                } else {
                    let (x, y) = polar(10.0, a);
                    let v = b.boundary_point(x, y);
                    outer_marks.push((list[0].0, v));
                    (v, a + 180.0)
                };
                at.insert((list[0].1, list[0].2), (pt, dir));
                continue;
            }
            let phi = if inner {
                // Middle of the widest gap between radial ends.
                let mut s: Vec<f64> = angles.iter().map(|a| a.rem_euclid(360.0)).collect();
                s.sort_by(|x, y| x.total_cmp(y));
                let n = s.len();
                let (i, _) = (0..n)
                    .map(|i| (i, (s[(i + 1) % n] - s[i]).rem_euclid(360.0)))
                    .max_by(|x, y| x.1.total_cmp(&y.1).then(y.0.cmp(&x.0)))
                    .expect("nonempty");
                let gap = (s[(i + 1) % n] - s[i]).rem_euclid(360.0);
                let gap = if gap == 0.0 { 360.0 } else { gap };
                s[i] + gap / 2.0
            } else {
                angles.iter().sum::<f64>() / angles.len() as f64
            };
            let key_of = |a: f64| if inner { (a - phi).rem_euclid(360.0) } else { a };
            order.sort_by(|&x, &y| key_of(angles[x]).total_cmp(&key_of(angles[y])));
            let (r_pt, r_sw) = if inner { (2.0, 3.0) } else { (10.0, 9.0) };
            let (x, y) = polar(r_pt, phi);
            let pt = b.boundary_point(x, y);
            let (sx, sy) = polar(r_sw, phi);
            let sw = b.switch(sx, sy, phi);
            let stem = if inner {
                inner_marks.push((phi, pt));
                b.edge_at(EdgeKind::Plain, sw, phi + 180.0, pt, phi)
            } else {
                outer_marks.push((phi * c / 360.0, pt));
                b.edge_at(EdgeKind::Plain, sw, phi, pt, phi + 180.0)
            };
            let n = order.len() as f64;
            let base = if inner { phi } else { phi + 180.0 };
            for (rank, &i) in order.iter().enumerate() {
                let step = 120.0 * rank as f64 / (n - 1.0);
                // Facing inward, increasing angle lies to the right.
                let dir = if inner { base - 60.0 + step } else { base + 60.0 - step };
                let (_, a, k) = list[i];
                at.insert((a, k), (sw, dir));
                stems[a].push(stem);
            }
        }
        if self.inner {
            inner_marks.sort_by(|x, y| x.0.total_cmp(&y.0));
            let ms: Vec<_> = inner_marks.iter().map(|&(a, v)| (a, v, EdgeKind::Alpha(0))).collect();
            b.circle(true, &ms);
        }
        for j in 0..self.c {
            for p in [j as f64, j as f64 + 0.5] {
                let (x, y) = polar(10.0, self.angle(p));
                outer_marks.push((p, b.boundary_point(x, y)));
            }
        }
        outer_marks.sort_by(|x, y| y.0.total_cmp(&x.0));
        let n = outer_marks.len();
        let ms: Vec<(f64, usize, EdgeKind)> = (0..n)
            .map(|i| {
                let (p, v) = outer_marks[i];
                let next = outer_marks[(i + 1) % n].0;
                let lo = if next < p { next } else { next - c };
                let mid = ((p + lo) / 2.0).rem_euclid(c);
                let j = mid.floor() as usize;
                let kind = if mid - (j as f64) < 0.5 { EdgeKind::Alpha(self.offset + j) } else { EdgeKind::Delta(j) };
                (self.angle(p), v, kind)
            })
            .collect();
        b.circle(false, &ms);
        let mut generators = Vec::new();
        for a in 0..self.arcs.len() {
            let (v0, d0) = at[&(a, 0)];
            let (v1, d1) = at[&(a, 1)];
            let mut gen = vec![b.edge_at(EdgeKind::Plain, v0, d0, v1, d1)];
            gen.extend(&stems[a]);
            generators.push(gen);
        }
        let track = b.build().unwrap_or_else(|e| panic!("standard track for {kind:?}: {e}"));
        (track, generators)
    }
}

fn trim_track(c: usize, system: Vec<TrimArc>) -> StandardTrack {
    let arcs = system
        .iter()
        .map(|arc| match arc {
            TrimArc::Radial(i) => [None, Some(*i as f64 + 0.25)],
            TrimArc::Outer { .. } => {
                let (s, e) = arc.positions(c);
                [Some(s), Some(e)]
            }
        })
        .collect();
    let (track, generators) = OuterDrawing { c, offset: 1, inner: true, arcs }.build(ElementaryKind::TrimAnnulus(c));
    StandardTrack {
        kind: ElementaryKind::TrimAnnulus(c),
        cell: system.iter().map(TrimArc::label).collect::<Vec<_>>().join(","),
        track,
        generators,
        chart_map: ChartMap::Trim(c, system),
    }
}

fn disk_track(c: usize, diagonals: Vec<Diagonal>) -> StandardTrack {
    let cf = c as f64;
    let arcs = diagonals
        .iter()
        .map(|&(i, j)| {
            let d = (j + c - i) % c;
            [Some(i as f64 + 0.5 * (c - d) as f64 / cf), Some(j as f64 + 0.5 * d as f64 / cf)]
        })
        .collect();
    let (track, generators) = OuterDrawing { c, offset: 0, inner: false, arcs }.build(ElementaryKind::CuspedDisk(c));
    StandardTrack {
        kind: ElementaryKind::CuspedDisk(c),
        cell: diagonals.iter().map(|(i, j)| format!("{}-{}", i + 1, j + 1)).collect::<Vec<_>>().join(","),
        track,
        generators,
        chart_map: ChartMap::Disk(c, diagonals),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::train_track::{check_switch_equations, classify_track, TrackClass};

    fn kinds() -> Vec<ElementaryKind> {
        let mut k = vec![ElementaryKind::Pants, ElementaryKind::Connector, ElementaryKind::TrimAnnulusEmpty];
        k.extend((1..=4).map(ElementaryKind::TrimAnnulus));
        k.extend((3..=6).map(ElementaryKind::CuspedDisk));
        k
    }

    fn sample(n: usize, seed: i64) -> Vec<Q> {
        (0..n as i64).map(|i| q((seed * 7 + i * 3) % 5 + 1)).collect()
    }

    #[test]
    fn one_track_per_top_cell() {
        assert_eq!(standard_tracks(ElementaryKind::TrimAnnulusEmpty).len(), 2);
        assert_eq!(standard_tracks(ElementaryKind::Connector).len(), 2);
        assert_eq!(standard_tracks(ElementaryKind::Pants).len(), 4);
        assert_eq!(standard_tracks(ElementaryKind::TrimAnnulus(3)).len(), maximal_systems(3).len());
        assert_eq!(standard_tracks(ElementaryKind::CuspedDisk(5)).len(), 5);
    }

    #[test]
    fn weights_satisfy_switch_equations_and_induce_the_chart() {
        for kind in kinds() {
            for (n, st) in standard_tracks(kind).into_iter().enumerate() {
                let p = sample(st.generators.len(), n as i64);
                let w = st.weights(&p);
                assert!(check_switch_equations(&st.track, &w).unwrap().is_empty(), "{kind:?} {}", st.cell);
                let chart = st.chart(&p);
                chart.check(kind).unwrap();
                let alpha = st.track.alpha_weights(&w);
                let expected: Vec<Q> = match &chart {
                    PieceChart::Pants(c) => c.y.clone(),
                    PieceChart::Connector(c) => vec![c.y, c.y],
                    PieceChart::Trim(c) => std::iter::once(c.y).chain(c.x.iter().copied()).collect(),
                    PieceChart::TEmpty(c) => vec![c.boundary_weight()],
                    PieceChart::Disk(c) => c.x.clone(),
                };
                for (i, e) in expected.iter().enumerate() {
                    assert_eq!(alpha.get(&i).copied().unwrap_or(q(0)), *e, "{kind:?} {} α{i}", st.cell);
                }
                assert_eq!(st.params(&w), Some(p));
            }
        }
    }

    #[test]
    fn standard_tracks_are_fair() {
        for kind in kinds() {
            for st in standard_tracks(kind) {
                let class = classify_track(&st.track).unwrap();
                assert!(class.is_fair(), "{kind:?} {} {class:?}", st.cell);
            }
        }
    }

    #[test]
    fn connector_track_carries_a_half_reeb_component() {
        for st in standard_tracks(ElementaryKind::Connector) {
            assert_eq!(classify_track(&st.track).unwrap(), TrackClass::FairWithHalfReeb);
        }
    }

    #[test]
    fn mirror_flips_the_twist_sense() {
        let t = standard_tracks(ElementaryKind::Connector);
        let p = [q(2), q(3)];
        let (a, b) = (t[0].chart(&p), t[1].chart(&p));
        match (a, b) {
            (PieceChart::Connector(a), PieceChart::Connector(b)) => {
                assert_eq!(a.signed_twist(), -b.signed_twist());
            }
            _ => unreachable!(),
        }
    }
}
