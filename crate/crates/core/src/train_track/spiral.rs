use serde::Serialize;

use super::{host_boundary, BoundarySide, EdgeKind, RibbonTrack, VertexKind, WeightVector};
use crate::error::TrackError;
use crate::rational::{q, Extended, Q};

/// Weights forced on the segments of a δ component by the branches that
/// spiral onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiralExtension {
    #[serde(with = "crate::rational::q_string")]
    pub x0: Q,
    #[serde(with = "crate::rational::q_vec")]
    pub segment_weights: Vec<Q>,
    #[serde(with = "crate::rational::q_string")]
    pub algebraic_total: Q,
    pub rotation: usize,
    pub orientation_reversed: bool,
}

fn check(attachments: &[(Q, i8)]) -> Result<(), TrackError> {
    for (w, s) in attachments {
        if *w < q(0) {
            return Err(TrackError::NegativeWeight(w.to_string()));
        }
        if s.abs() != 1 {
            return Err(TrackError::Malformed(format!("sign {s} is not ±1")));
        }
    }
    Ok(())
}

fn prefix_sums(attachments: impl Iterator<Item = (Q, i8)>) -> Vec<Q> {
    let mut out = vec![q(0)];
    for (w, s) in attachments {
        let last = *out.last().expect("nonempty");
        out.push(last + w * Q::from(i64::from(s)));
    }
    out
}

/// Extension along an arc of δ: the smallest starting weight keeping every
/// segment nonnegative.
pub fn extend_weights_arc(attachments: &[(Q, i8)]) -> Result<SpiralExtension, TrackError> {
    check(attachments)?;
    let sums = prefix_sums(attachments.iter().copied());
    let x0 = -*sums.iter().min().expect("nonempty");
    Ok(SpiralExtension {
        x0,
        segment_weights: sums.iter().map(|s| x0 + s).collect(),
        algebraic_total: *sums.last().expect("nonempty"),
        rotation: 0,
        orientation_reversed: false,
    })
}

/// Extension around a δ circle. Picks the first rotation, unreversed if
/// possible, whose partial sums are all nonnegative.
pub fn extend_weights_closed(attachments: &[(Q, i8)]) -> Result<SpiralExtension, TrackError> {
    check(attachments)?;
    if attachments.is_empty() {
        return Err(TrackError::Malformed("closed extension needs an attachment".into()));
    }
    let n = attachments.len();
    for reversed in [false, true] {
        let seq: Vec<(Q, i8)> =
            if reversed { attachments.iter().rev().map(|&(w, s)| (w, -s)).collect() } else { attachments.to_vec() };
        for r in 0..n {
            let sums = prefix_sums((0..n).map(|i| seq[(r + i) % n]));
            if sums.iter().all(|s| *s >= q(0)) {
                return Ok(SpiralExtension {
                    x0: q(0),
                    segment_weights: sums[..n].to_vec(),
                    algebraic_total: sums[n],
                    rotation: r,
                    orientation_reversed: reversed,
                });
            }
        }
    }
    unreachable!("a rotation with nonnegative partial sums exists in one orientation")
}

/// A transversal to the track: the plain branches it crosses, with
/// multiplicity, and whether it meets δ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transversal {
    pub branches: Vec<usize>,
    pub meets_delta: bool,
}

pub fn geometric_measure(w: &WeightVector, t: &Transversal) -> Extended {
    if t.meets_delta {
        Extended::Infinite
    } else {
        Extended::Finite(t.branches.iter().map(|&b| w.get(b)).sum())
    }
}

/// True when no plain branch attaches at a switch lying on an arc of δ.
pub fn no_switch_on_delta_arcs(track: &RibbonTrack) -> bool {
    let Some(layout) = host_boundary(track.host) else { return true };
    let circle: Vec<usize> =
        layout.iter().filter_map(|c| if let [BoundarySide::Delta(i)] = c[..] { Some(i) } else { None }).collect();
    track.vertices.iter().all(|v| {
        if !matches!(v.kind, VertexKind::Switch { .. }) {
            return true;
        }
        let on_arc =
            v.rotation.iter().any(|&h| matches!(track.kind(h), EdgeKind::DeltaBranch(i) if !circle.contains(&i)));
        !on_arc || v.rotation.iter().all(|&h| track.kind(h) != EdgeKind::Plain)
    })
}

/// Signed weights of the branches spiralling onto the δ circle `circle`, in
/// the order met when walking δ with the surface on the left. A branch
/// counts `+1` when the flow it feeds into δ runs in that direction.
pub fn delta_attachments(track: &RibbonTrack, w: &WeightVector, circle: usize) -> Vec<(Q, i8)> {
    let on_circle = |h: usize| track.kind(h) == EdgeKind::DeltaBranch(circle);
    let vertex_of = track.vertex_of();
    let Some(first) = (0..track.edges.len()).find(|&e| track.edges[e] == EdgeKind::DeltaBranch(circle)) else {
        return vec![];
    };
    // Walk along the edge directions, which keep the surface on the right.
    let mut out = Vec::new();
    let mut e = first;
    loop {
        let v = vertex_of[2 * e + 1];
        let next = track.vertices[v].rotation.iter().copied().find(|&h| on_circle(h) && h % 2 == 0).expect("circle");
        for &h in &track.vertices[v].rotation {
            if track.kind(h) != EdgeKind::Plain {
                continue;
            }
            let side = track.side(v, h);
            let exit = [2 * e + 1, next].into_iter().find(|&d| track.side(v, d) != side).unwrap_or(next);
            // Leaving along a tail follows the edge direction, against the
            // surface-left orientation.
            out.push((w.get(h / 2), if exit % 2 == 0 { -1 } else { 1 }));
        }
        e = next / 2;
        if e == first {
            break;
        }
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn att(v: &[(i64, i8)]) -> Vec<(Q, i8)> {
        v.iter().map(|&(w, s)| (q(w), s)).collect()
    }

    #[test]
    fn standard_spiral_tracks_have_opposite_senses() {
        use crate::catalog::standard::standard_tracks;
        use crate::geometry::ElementaryKind;
        let signs: Vec<i8> = standard_tracks(ElementaryKind::TrimAnnulusEmpty)
            .iter()
            .map(|st| {
                let att = delta_attachments(&st.track, &st.weights(&[q(3)]), 0);
                assert_eq!(att.len(), 1);
                assert_eq!(att[0].0, q(3));
                att[0].1
            })
            .collect();
        assert_eq!(signs, vec![1, -1]);
    }

    #[test]
    fn arc_extension_examples() {
        let e = extend_weights_arc(&[]).unwrap();
        assert_eq!((e.x0, e.segment_weights), (q(0), vec![q(0)]));
        let e = extend_weights_arc(&att(&[(2, 1), (3, -1)])).unwrap();
        assert_eq!((e.x0, e.segment_weights), (q(1), vec![q(1), q(3), q(0)]));
        let e = extend_weights_arc(&att(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!((e.x0, e.segment_weights), (q(0), vec![q(0), q(1), q(2)]));
    }

    #[test]
    fn closed_extension_examples() {
        let e = extend_weights_closed(&att(&[(1, 1), (1, -1)])).unwrap();
        assert_eq!((e.rotation, e.segment_weights.clone(), e.algebraic_total), (0, vec![q(0), q(1)], q(0)));
        let e = extend_weights_closed(&att(&[(1, 1)])).unwrap();
        assert_eq!((e.segment_weights.clone(), e.algebraic_total), (vec![q(0)], q(1)));
        let e = extend_weights_closed(&att(&[(2, -1), (1, 1)])).unwrap();
        assert!(e.orientation_reversed);
        assert_eq!((e.segment_weights, e.algebraic_total), (vec![q(0), q(2)], q(1)));
    }

    #[test]
    fn negative_weight_rejected() {
        assert!(extend_weights_arc(&[(q(-1), 1)]).is_err());
    }

    #[test]
    fn measure_is_infinite_across_delta() {
        let w = WeightVector::new([(0, crate::rational::qf(7, 2))]);
        let t = Transversal { branches: vec![0], meets_delta: false };
        assert_eq!(geometric_measure(&w, &t), Extended::Finite(crate::rational::qf(7, 2)));
        assert_eq!(geometric_measure(&w, &Transversal { meets_delta: true, ..t }), Extended::Infinite);
        assert_eq!(geometric_measure(&w, &Transversal::default()), Extended::Finite(q(0)));
    }
}
