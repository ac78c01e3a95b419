//! The subsurface around one connector: the connector together with the
//! piece or pieces it joins, carrying an integer curve system and one
//! twist-detecting curve.

use std::collections::BTreeMap;

use crate::catalog::{PantsArc, TrimArc};

use super::complex::{inverse, Complex, Curve};
use super::models::{self, ArcPath, End, Model, CONNECTOR_TURN};
use super::oracle;

/// One piece next to the connector, with its integer arc system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Pants { port: usize, arcs: Vec<(PantsArc, i64)> },
    Trim { c: usize, arcs: Vec<(TrimArc, i64)> },
}

impl Side {
    fn model(&self) -> Model {
        match self {
            Side::Pants { .. } => models::pants(),
            Side::Trim { c, .. } => models::trim(*c),
        }
    }
    fn port(&self) -> usize {
        match self {
            Side::Pants { port, .. } => *port,
            Side::Trim { .. } => 0,
        }
    }
    fn copies(&self) -> Vec<ArcPath> {
        let mut out = Vec::new();
        match self {
            Side::Pants { arcs, .. } => {
                for &(a, w) in arcs {
                    out.extend(std::iter::repeat(models::pants_arc(a)).take(w as usize));
                }
            }
            Side::Trim { c, arcs } => {
                for &(a, w) in arcs {
                    out.extend(std::iter::repeat(models::trim_arc(*c, a)).take(w as usize));
                }
            }
        }
        out
    }
}

/// Which way a connector joins its neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Junction {
    /// Port 0 of the connector meets `a`, port 1 meets `b`.
    Two { a: Side, b: Side },
    /// Both connector ports meet the same pair of pants, at ports
    /// `port` (connector port 0) and `other` (connector port 1).
    SelfGlued { pants: Side, other: usize },
}

/// Integer connector parameters: `y` crossing strands shifted by `twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Crossing {
    pub y: i64,
    pub twist: i64,
}

struct Placed {
    model: Model,
    off: super::complex::Offsets,
}

/// Where an arc end of some side lands: (side, port) of a glued port.
type Joint = (usize, usize);

pub(crate) struct Glued {
    pub cx: Complex,
    pub split: usize,
}

fn turn_path(twisted: i64) -> Vec<usize> {
    let h = if twisted >= 0 { CONNECTOR_TURN } else { CONNECTOR_TURN ^ 1 };
    vec![h; twisted.unsigned_abs() as usize]
}

/// The detecting curve, as a sequence of pieces: side paths joined by
/// connector crossings. Each element is (side or connector, local path).
enum Piecewise {
    Closed(Vec<(Option<usize>, Vec<usize>)>),
    Arc { start: (usize, End), parts: Vec<(Option<usize>, Vec<usize>)>, end: (usize, End) },
}

/// Crossing the connector from port 0 to port 1 (`forward`) or back,
/// turning `turns` times around the core.
fn across(forward: bool, turns: i64) -> (Option<usize>, Vec<usize>) {
    let mut p = vec![4];
    p.extend(turn_path(turns));
    (None, if forward { p } else { inverse(&p) })
}

fn detector(j: &Junction, turns: i64) -> Piecewise {
    match j {
        Junction::Two { a: Side::Pants { port: ka, .. }, b: Side::Pants { port: kb, .. } } => {
            let lb = models::pants_loop_path(*kb);
            Piecewise::Closed(vec![
                (Some(0), models::pants_loop_path(*ka)),
                across(true, turns),
                (Some(1), lb),
                across(false, turns),
            ])
        }
        Junction::SelfGlued { pants: Side::Pants { port, .. }, other } => {
            Piecewise::Closed(vec![across(true, turns), (Some(0), models::pants_cross_path(*other, *port))])
        }
        Junction::Two { a: Side::Trim { .. }, b: Side::Trim { .. } } => Piecewise::Arc {
            start: (0, End::Alpha(0)),
            parts: vec![(Some(0), vec![5]), across(true, turns), (Some(1), vec![4])],
            end: (1, End::Alpha(0)),
        },
        Junction::Two { a: Side::Trim { .. }, b: Side::Pants { port: kb, .. } } => {
            let lb = models::pants_loop_path(*kb);
            Piecewise::Arc {
                start: (0, End::Alpha(0)),
                parts: vec![
                    (Some(0), vec![5]),
                    across(true, turns),
                    (Some(1), lb),
                    across(false, turns),
                    (Some(0), vec![4]),
                ],
                end: (0, End::Alpha(0)),
            }
        }
        Junction::Two { a: Side::Pants { .. }, b: Side::Trim { .. } } => {
            panic!("put the trim annulus on connector port 0")
        }
        Junction::SelfGlued { .. } => panic!("self-gluing needs a pants"),
    }
}

impl Glued {
    /// Builds the glued surface with the curve system and the detector
    /// (`turns` extra turns at each connector crossing).
    pub fn build(j: &Junction, x: Crossing, turns: i64) -> Result<Glued, String> {
        let sides: Vec<&Side> = match j {
            Junction::Two { a, b } => vec![a, b],
            Junction::SelfGlued { pants, .. } => vec![pants],
        };
        let joints: [Joint; 2] = match j {
            Junction::Two { a, b } => [(0, a.port()), (1, b.port())],
            Junction::SelfGlued { pants, other } => [(0, pants.port()), (0, *other)],
        };
        // Arc copies per side, and the counter-clockwise order of their ends
        // on each glued port.
        let copies: Vec<Vec<ArcPath>> = sides.iter().map(|s| s.copies()).collect();
        let mut order: BTreeMap<Joint, Vec<(usize, bool)>> = BTreeMap::new();
        for (si, s) in sides.iter().enumerate() {
            let mut m = s.model();
            for a in &copies[si] {
                m.add_arc(a);
            }
            for &(js, port) in &joints {
                if js == si {
                    let (v, k) = m.ports[port];
                    order.insert((js, port), oracle::corner_order(&m.cx, v, k));
                }
            }
        }
        for jt in &joints {
            if order[jt].len() as i64 != x.y {
                return Err(format!("port {jt:?} carries {} ends, connector has {}", order[jt].len(), x.y));
            }
        }
        // Strand links across the connector.
        let y = x.y;
        let mut link: BTreeMap<(usize, usize, bool), ((usize, usize, bool), i64, bool)> = BTreeMap::new();
        for (i, &(ca, ea)) in order[&joints[0]].iter().enumerate() {
            let p = i as i64 - x.twist;
            let k = p.rem_euclid(y);
            let w = -p.div_euclid(y);
            let (cb, eb) = order[&joints[1]][(y - 1 - k) as usize];
            let sa = joints[0].0;
            let sb = joints[1].0;
            link.insert((sa, ca, ea), ((sb, cb, eb), w, true));
            link.insert((sb, cb, eb), ((sa, ca, ea), w, false));
        }

        let mut cx = Complex::default();
        let mut placed: Vec<Placed> = Vec::new();
        for s in &sides {
            let model = s.model();
            let off = cx.absorb(&model.cx);
            placed.push(Placed { model, off });
        }
        let q = models::connector();
        let qoff = cx.absorb(&q.cx);

        let side_path = |si: usize, p: &[usize]| placed[si].off.path(p);
        let q_path = |p: &[usize]| qoff.path(p);
        let pin = |cx: &mut Complex, si: usize, e: End| -> usize {
            let pl = &placed[si];
            match e {
                End::Port(k) => {
                    let (v, c) = pl.model.ports[k];
                    cx.free_pin(v + pl.off.vertex, c)
                }
                End::Alpha(a) => cx.alpha_pin(pl.model.alphas[a] + pl.off.alpha),
            }
        };
        let is_joint = |si: usize, e: End| matches!(e, End::Port(k) if joints.contains(&(si, k)));

        // Follow chains of arc copies through the connector.
        let mut used: Vec<Vec<bool>> = copies.iter().map(|c| vec![false; c.len()]).collect();
        let mut curves = Vec::new();
        let walk = |si: usize,
                    ci: usize,
                    from_start: bool,
                    used: &mut Vec<Vec<bool>>,
                    path: &mut Vec<usize>|
         -> (usize, usize, bool) {
            // Returns the exit end (side, copy, is_start) after walking chains
            // until an end that is not glued, or until the chain closes.
            let (mut si, mut ci, mut from_start) = (si, ci, from_start);
            loop {
                used[si][ci] = true;
                let a = &copies[si][ci];
                let (p, exit, exit_is_start) =
                    if from_start { (a.path.clone(), a.end, false) } else { (inverse(&a.path), a.start, true) };
                path.extend(side_path(si, &p));
                if !is_joint(si, exit) {
                    return (si, ci, exit_is_start);
                }
                let (next, w, fwd) = link[&(si, ci, exit_is_start)];
                let mut qp = vec![4];
                qp.extend(turn_path(w));
                path.extend(q_path(&if fwd { qp } else { inverse(&qp) }));
                if used[next.0][next.1] {
                    return (usize::MAX, 0, false);
                }
                si = next.0;
                ci = next.1;
                from_start = next.2;
            }
        };
        for si in 0..sides.len() {
            for ci in 0..copies[si].len() {
                if used[si][ci] {
                    continue;
                }
                let a = &copies[si][ci];
                let start_end = if !is_joint(si, a.start) {
                    Some(true)
                } else if !is_joint(si, a.end) {
                    Some(false)
                } else {
                    None
                };
                let Some(from_start) = start_end else { continue };
                let mut path = Vec::new();
                let first = if from_start { a.start } else { a.end };
                let (so, co, eo) = walk(si, ci, from_start, &mut used, &mut path);
                let last_copy = &copies[so][co];
                let last = if eo { last_copy.start } else { last_copy.end };
                curves.push((si, first, path, so, last));
            }
        }
        let mut closed = Vec::new();
        for si in 0..sides.len() {
            for ci in 0..copies[si].len() {
                if used[si][ci] {
                    continue;
                }
                let mut path = Vec::new();
                let (s, _, _) = walk(si, ci, true, &mut used, &mut path);
                debug_assert_eq!(s, usize::MAX);
                closed.push(path);
            }
        }
        if y == 0 {
            for _ in 0..x.twist.unsigned_abs() {
                closed.push(q_path(&[CONNECTOR_TURN]));
            }
        }
        for (si, first, path, so, last) in curves {
            let start = pin(&mut cx, si, first);
            let end = pin(&mut cx, so, last);
            cx.curves.push(Curve::Arc { start, path, end });
        }
        for p in closed {
            cx.curves.push(Curve::Closed(p));
        }
        let split = cx.curves.len();
        let piece = |part: &(Option<usize>, Vec<usize>)| match part.0 {
            Some(si) => side_path(si, &part.1),
            None => q_path(&part.1),
        };
        match detector(j, turns) {
            Piecewise::Closed(parts) => {
                cx.curves.push(Curve::Closed(parts.iter().flat_map(piece).collect()));
            }
            Piecewise::Arc { start, parts, end } => {
                let s = pin(&mut cx, start.0, start.1);
                let e = pin(&mut cx, end.0, end.1);
                cx.curves.push(Curve::Arc { start: s, path: parts.iter().flat_map(piece).collect(), end: e });
            }
        }
        // Glue connector ports to the sides.
        for (qport, &(si, port)) in joints.iter().enumerate() {
            let (v, k) = placed[si].model.ports[port];
            let (qv, qk) = q.ports[qport];
            cx.glue((v + placed[si].off.vertex, k), (qv + qoff.vertex, qk));
        }
        cx.reduce_paths();
        Ok(Glued { cx, split })
    }

    pub fn crossings(mut self) -> Result<u64, String> {
        self.cx.collapse();
        self.cx.slide_free_ends();
        oracle::min_crossings(&self.cx, self.split).map_err(|_| "strands would cross".to_string())
    }

    /// Whether the detector has a simple representative.
    #[cfg(test)]
    pub fn detector_is_simple(mut self) -> bool {
        self.cx.collapse();
        self.cx.slide_free_ends();
        let d = self.cx.curves[self.split].clone();
        oracle::is_simple(&self.cx, &d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::PantsChart;
    use crate::rational::q;

    pub(crate) fn pants_side(port: usize, y: [i64; 3]) -> Option<Side> {
        let chart = PantsChart::new([q(y[0]), q(y[1]), q(y[2])]);
        crate::catalog::pants::membership_pants(&chart)?;
        let mut arcs = Vec::new();
        for (a, w) in chart.arc_weights() {
            if !w.is_integer() {
                return None;
            }
            arcs.push((a, w.to_integer()));
        }
        Some(Side::Pants { port, arcs })
    }

    #[test]
    fn detectors_are_simple() {
        let pants = |k| pants_side(k, [2, 2, 2]).unwrap();
        let trim = |c| Side::Trim { c, arcs: vec![(TrimArc::Radial(0), 2)] };
        let junctions = [
            Junction::Two { a: pants(0), b: pants(1) },
            Junction::Two { a: pants(2), b: pants(2) },
            Junction::SelfGlued { pants: pants(0), other: 2 },
            Junction::Two { a: trim(1), b: trim(2) },
            Junction::Two { a: trim(2), b: pants(1) },
        ];
        for j in &junctions {
            for turns in [0, 1] {
                let g = Glued::build(j, Crossing { y: 2, twist: 1 }, turns).unwrap();
                assert!(g.detector_is_simple(), "{j:?} turns {turns}");
            }
        }
    }
}
