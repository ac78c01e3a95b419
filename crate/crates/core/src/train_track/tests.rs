use super::*;
use crate::geometry::ElementaryKind::{self, *};
use crate::rational::qf;

fn deg(p: (f64, f64)) -> f64 {
    p.1.atan2(p.0).to_degrees()
}

/// Boundary point on a circle about the origin-shifted centre.
fn on_circle(b: &mut TrackBuilder, cx: f64, r: f64, theta: f64) -> usize {
    let t = theta.to_radians();
    b.boundary_point(cx + r * t.cos(), r * t.sin())
}

/// Y-shaped track in a pair of pants: `a` from the outer circle to a
/// switch, `b` and `c` on to the two inner circles.
pub(crate) fn y_track() -> (RibbonTrack, [usize; 3]) {
    let mut b = TrackBuilder::new(Pants);
    let p0 = on_circle(&mut b, 0.0, 10.0, 90.0);
    let p1 = on_circle(&mut b, -4.0, 2.0, 90.0);
    let p2 = on_circle(&mut b, 4.0, 2.0, 90.0);
    b.circle(false, &[(90.0, p0, EdgeKind::Alpha(0))]);
    b.circle(true, &[(90.0, p1, EdgeKind::Alpha(1))]);
    b.circle(true, &[(90.0, p2, EdgeKind::Alpha(2))]);
    let s = b.switch(0.0, 4.0, 90.0);
    let a = b.edge(EdgeKind::Plain, s, p0);
    let e1 = b.edge(EdgeKind::Plain, s, p1);
    let e2 = b.edge(EdgeKind::Plain, s, p2);
    (b.build().unwrap(), [a, e1, e2])
}

/// A large branch between two switches in a pair of pants; every region
/// has negative χ_g.
pub(crate) fn h_track() -> (RibbonTrack, [usize; 5]) {
    let mut b = TrackBuilder::new(Pants);
    let pl = on_circle(&mut b, 0.0, 10.0, 135.0);
    let pr = on_circle(&mut b, 0.0, 10.0, 315.0);
    let p1 = on_circle(&mut b, -4.0, 2.0, 0.0);
    let p2 = on_circle(&mut b, 4.0, 2.0, 180.0);
    b.circle(false, &[(135.0, pl, EdgeKind::Alpha(0)), (315.0, pr, EdgeKind::Alpha(0))]);
    b.circle(true, &[(0.0, p1, EdgeKind::Alpha(1))]);
    b.circle(true, &[(180.0, p2, EdgeKind::Alpha(2))]);
    let u = b.switch(-1.0, 0.0, 0.0);
    let v = b.switch(1.0, 0.0, 0.0);
    let e = b.edge(EdgeKind::Plain, u, v);
    let eb = b.edge_at(EdgeKind::Plain, u, 170.0, pl, 311.0);
    let ec = b.edge_at(EdgeKind::Plain, u, 190.0, p1, 0.0);
    let ed = b.edge_at(EdgeKind::Plain, v, 10.0, p2, 180.0);
    let ef = b.edge_at(EdgeKind::Plain, v, 350.0, pr, 131.0);
    (b.build().unwrap(), [e, eb, ec, ed, ef])
}

pub(crate) fn spiral_track() -> RibbonTrack {
    let mut b = TrackBuilder::new(TrimAnnulusEmpty);
    let a = b.boundary_point(0.0, 10.0);
    let s = b.switch(0.0, 3.0, 0.0);
    b.circle(false, &[(90.0, a, EdgeKind::Alpha(0))]);
    b.circle(true, &[(90.0, s, EdgeKind::DeltaBranch(0))]);
    b.edge_at(EdgeKind::Plain, a, 270.0, s, 10.0);
    b.build().unwrap()
}

fn connector_points(b: &mut TrackBuilder) -> (usize, usize) {
    let a0 = b.boundary_point(0.0, 10.0);
    let a1 = b.boundary_point(0.0, -2.0);
    b.circle(false, &[(90.0, a0, EdgeKind::Alpha(0))]);
    b.circle(true, &[(270.0, a1, EdgeKind::Alpha(1))]);
    (a0, a1)
}

pub(crate) fn core_track() -> RibbonTrack {
    let mut b = TrackBuilder::new(Connector);
    let (a0, a1) = connector_points(&mut b);
    let s = b.switch(0.0, 5.0, 0.0);
    b.edge_at(EdgeKind::Plain, s, 180.0, s, 0.0);
    b.edge(EdgeKind::Tether, s, a0);
    b.edge_at(EdgeKind::Tether, s, 270.0, a1, 270.0);
    b.build().unwrap()
}

pub(crate) fn half_reeb_track() -> RibbonTrack {
    let mut b = TrackBuilder::new(Connector);
    let (a0, a1) = connector_points(&mut b);
    let s1 = b.switch(0.0, 5.0, 0.0);
    let s2 = b.switch(0.0, -5.0, 0.0);
    b.edge_at(EdgeKind::Plain, s1, 180.0, s2, 180.0);
    b.edge_at(EdgeKind::Plain, s2, 0.0, s1, 0.0);
    b.edge_at(EdgeKind::Plain, s1, 10.0, a0, 250.0);
    b.edge_at(EdgeKind::Plain, s2, 170.0, a1, 290.0);
    b.build().unwrap()
}

fn chi_g_sum(t: &RibbonTrack) -> Q {
    complement_regions(t).unwrap().iter().map(|r| r.chi_g).sum::<Q>() + neighbourhood_chi_g(t).unwrap()
}

fn host_chi_g(k: ElementaryKind) -> Q {
    k.canonical_pair().unwrap().chi_g()
}

#[test]
fn switch_equation_examples() {
    let (t, [a, b, c]) = y_track();
    let w = WeightVector::new([(a, q(5)), (b, q(2)), (c, q(3))]);
    assert!(check_switch_equations(&t, &w).unwrap().is_empty());
    let w = WeightVector::new([(a, q(5)), (b, q(2)), (c, q(2))]);
    assert_eq!(check_switch_equations(&t, &w).unwrap().len(), 1);
    let w = WeightVector::new([(a, q(5))]);
    assert!(matches!(check_switch_equations(&t, &w), Err(TrackError::IndexMismatch(_))));
    let core = core_track();
    let w = WeightVector::new([(core.plain_edges()[0], q(4))]);
    assert!(check_switch_equations(&core, &w).unwrap().is_empty());
}

#[test]
fn regions_of_examples() {
    let r = complement_regions(&spiral_track()).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].chi, r[0].chi_g), (1, q(0)));
    let r = complement_regions(&core_track()).unwrap();
    assert_eq!(r.iter().map(|r| (r.chi, r.chi_g)).collect::<Vec<_>>(), vec![(0, q(0)), (0, q(0))]);
    let r = complement_regions(&y_track().0).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].chi_g, q(-1));
}

#[test]
fn empty_pants_is_one_region() {
    let mut b = TrackBuilder::new(Pants);
    let p0 = on_circle(&mut b, 0.0, 10.0, 90.0);
    let p1 = on_circle(&mut b, -4.0, 2.0, 90.0);
    let p2 = on_circle(&mut b, 4.0, 2.0, 90.0);
    b.circle(false, &[(90.0, p0, EdgeKind::Alpha(0))]);
    b.circle(true, &[(90.0, p1, EdgeKind::Alpha(1))]);
    b.circle(true, &[(90.0, p2, EdgeKind::Alpha(2))]);
    b.edge(EdgeKind::Tether, p0, p1);
    b.edge(EdgeKind::Tether, p0, p2);
    let t = b.build().unwrap();
    let r = complement_regions(&t).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].chi, r[0].chi_g), (-1, q(-1)));
    assert_eq!(classify_track(&t).unwrap(), TrackClass::Good);
}

#[test]
fn chi_g_adds_up() {
    for t in [spiral_track(), core_track(), half_reeb_track(), y_track().0, h_track().0] {
        assert_eq!(chi_g_sum(&t), host_chi_g(t.host), "{:?}", t.host);
    }
}

#[test]
fn classification_examples() {
    assert_eq!(classify_track(&spiral_track()).unwrap(), TrackClass::FairEssential);
    assert_eq!(classify_track(&half_reeb_track()).unwrap(), TrackClass::FairWithHalfReeb);
    assert!(detect_half_reeb(&half_reeb_track()).unwrap());
    assert!(!detect_half_reeb(&spiral_track()).unwrap());
    assert!(!detect_half_reeb(&core_track()).unwrap());
    assert_eq!(classify_track(&core_track()).unwrap(), TrackClass::FairEssential);
}

#[test]
fn monogon_is_not_fair() {
    // A loop based at a switch on a stem, bounding a monogon.
    let mut b = TrackBuilder::new(Connector);
    let (a0, a1) = connector_points(&mut b);
    let s = b.switch(0.0, 6.0, 270.0);
    b.edge(EdgeKind::Plain, s, a0);
    b.edge_at(EdgeKind::Plain, s, 260.0, s, 280.0);
    b.edge_at(EdgeKind::Tether, s, 0.0, a1, 270.0);
    let t = b.build().unwrap();
    assert_eq!(classify_track(&t).unwrap(), TrackClass::NotFair);
}

#[test]
fn split_at_alpha_divides_branch() {
    let (t, [a, b, c]) = y_track();
    let w = WeightVector::new([(a, q(5)), (b, q(2)), (c, q(3))]);
    let out = split(&t, a, SplitDirection::Right, Some(&w)).unwrap();
    let ws = out.weights.clone().unwrap();
    let mut values: Vec<Q> = ws.weights.values().copied().collect();
    values.sort();
    assert_eq!(values, vec![q(2), q(3)]);
    assert!(check_switch_equations(&out.track, &ws).unwrap().is_empty());
    let (back, wb) = pinch(&out.track, out.inverse, Some(&ws)).unwrap();
    let iso = isomorphism(&t, &back).expect("round trip");
    for (e, v) in &w.weights {
        assert_eq!(wb.as_ref().unwrap().get(iso[*e]), *v);
    }
}

#[test]
fn classic_splits_round_trip() {
    let (t, [e, b, c, d, f]) = h_track();
    assert_eq!(classify_track(&t).unwrap(), TrackClass::Good);
    let w = WeightVector::new([(e, q(5)), (b, q(3)), (c, q(2)), (d, q(1)), (f, q(4))]);
    assert!(check_switch_equations(&t, &w).unwrap().is_empty());
    let out = split(&t, e, SplitDirection::Right, Some(&w)).unwrap();
    let ws = out.weights.clone().unwrap();
    assert!(check_switch_equations(&out.track, &ws).unwrap().is_empty());
    assert!(ws.weights.values().any(|v| *v == q(2)));
    let (back, wb) = pinch(&out.track, out.inverse, Some(&ws)).unwrap();
    let iso = isomorphism(&t, &back).expect("round trip");
    assert_eq!(wb.unwrap().get(iso[e]), q(5));
    assert!(matches!(split(&t, e, SplitDirection::Left, Some(&w)), Err(TrackError::CarryingViolation(_))));
    for dir in [SplitDirection::Left, SplitDirection::Right, SplitDirection::Central] {
        let out = split(&t, e, dir, None).unwrap();
        let (back, _) = pinch(&out.track, out.inverse, None).unwrap();
        assert!(isomorphism(&t, &back).is_some(), "{dir:?}");
        let class = classify_track(&out.track).unwrap();
        assert!(class.is_fair(), "{dir:?} {class:?} {:?}", complement_regions(&out.track).unwrap());
    }
}

#[test]
fn central_split_disconnects() {
    let (t, [e, b, c, d, f]) = h_track();
    let w = WeightVector::new([(e, q(5)), (b, q(2)), (c, q(3)), (d, q(2)), (f, q(3))]);
    let out = split(&t, e, SplitDirection::Central, Some(&w)).unwrap();
    assert!(out.track.vertices.iter().all(|v| v.kind == VertexKind::Boundary));
    assert_eq!(out.track.plain_edges().len(), 2);
}

#[test]
fn pinching_parallel_core_curves() {
    let mut b = TrackBuilder::new(Connector);
    let (a0, a1) = connector_points(&mut b);
    let s = b.switch(0.0, 5.0, 0.0);
    let s2 = b.switch(0.0, 6.0, 0.0);
    let inner = b.edge_at(EdgeKind::Plain, s, 180.0, s, 0.0);
    let outer = b.edge_at(EdgeKind::Plain, s2, 180.0, s2, 0.0);
    b.edge(EdgeKind::Tether, s2, a0);
    b.edge(EdgeKind::Tether, s, s2);
    b.edge_at(EdgeKind::Tether, s, 270.0, a1, 270.0);
    let t = b.build().unwrap();
    // The region between the curves lies right of the inner curve's tail
    // half-edge's reverse and of the outer curve's tail.
    let site = PinchSite::Parallel { p: 2 * outer, q: 2 * inner + 1 };
    let (p, _) = pinch(&t, site, None)
        .or_else(|_| pinch(&t, PinchSite::Parallel { p: 2 * outer + 1, q: 2 * inner }, None))
        .unwrap();
    assert_eq!(p.plain_edges().len(), 5);
    assert!(classify_track(&p).unwrap().is_fair());
}

#[test]
fn pinching_a_crossing_gives_two_switches() {
    let mut b = TrackBuilder::new(Pants);
    let p0 = on_circle(&mut b, 0.0, 10.0, 135.0);
    let p0b = on_circle(&mut b, 0.0, 10.0, 45.0);
    let p1 = on_circle(&mut b, -4.0, 2.0, 90.0);
    let p2 = on_circle(&mut b, 4.0, 2.0, 90.0);
    b.circle(false, &[(135.0, p0, EdgeKind::Alpha(0)), (45.0, p0b, EdgeKind::Alpha(0))]);
    b.circle(true, &[(90.0, p1, EdgeKind::Alpha(1))]);
    b.circle(true, &[(90.0, p2, EdgeKind::Alpha(2))]);
    let x = b.crossing(0.0, 5.0);
    b.edge(EdgeKind::Plain, x, p0);
    b.edge(EdgeKind::Plain, x, p0b);
    b.edge(EdgeKind::Plain, x, p1);
    b.edge(EdgeKind::Plain, x, p2);
    let t = b.build_unchecked();
    let (p, _) = pinch(&t, PinchSite::Crossing(x), None).unwrap();
    let switches = p.vertices.iter().filter(|v| matches!(v.kind, VertexKind::Switch { .. })).count();
    assert_eq!(switches, 2);
    let _ = deg((1.0, 0.0));
}

#[test]
fn delta_arc_normal_form() {
    assert!(no_switch_on_delta_arcs(&spiral_track()));
}

#[test]
fn rejects_malformed() {
    let mut b = TrackBuilder::new(Pants);
    let p0 = on_circle(&mut b, 0.0, 10.0, 90.0);
    b.circle(false, &[(90.0, p0, EdgeKind::Alpha(0))]);
    assert!(b.build().is_err());
    let _ = qf(1, 2);
}
