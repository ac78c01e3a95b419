use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::regions::{complement_regions, face_regions};
use super::{host_boundary, BoundarySide, EdgeKind, RibbonTrack, VertexKind};
use crate::error::TrackError;
use crate::rational::q;
use crate::ribbon::RibbonGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrackClass {
    Good,
    FairEssential,
    FairWithHalfReeb,
    FairWithReeb,
    NotFair,
}

impl TrackClass {
    pub fn is_fair(self) -> bool {
        self != TrackClass::NotFair
    }

    pub fn is_essential(self) -> bool {
        matches!(self, TrackClass::Good | TrackClass::FairEssential)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReebPattern {
    None,
    HalfReeb,
    Reeb,
    /// A smooth curve cuts off a one-holed annulus but branches attach to it
    /// from that side in both senses.
    Unknown,
}

const CYCLE_CAP: usize = 20_000;

/// Smooth closed curves made of plain branches that visit no vertex twice,
/// one orientation each, as lists of outgoing half-edges.
pub fn smooth_cycles(track: &RibbonTrack) -> Vec<Vec<usize>> {
    let vertex = track.vertex_of();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let plain_out = |h: usize| track.kind(h) == EdgeKind::Plain;
    for start in (0..2 * track.edges.len()).filter(|&h| plain_out(h)) {
        let v0 = vertex[start];
        if !matches!(track.vertices[v0].kind, VertexKind::Switch { .. }) {
            continue;
        }
        let mut stack = vec![(vec![start], vec![v0])];
        while let Some((path, visited)) = stack.pop() {
            if out.len() >= CYCLE_CAP {
                return out;
            }
            let last = *path.last().expect("nonempty");
            let arrive = RibbonGraph::iota(last);
            let w = vertex[arrive];
            let Some(side) = track.side(w, arrive) else { continue };
            for h in track.visible_rotation(w) {
                if !plain_out(h) || h == arrive || track.side(w, h) == Some(side) {
                    continue;
                }
                if w == v0 {
                    // Closing up must be smooth at the start as well.
                    if h != start {
                        continue;
                    }
                    let mut key: Vec<usize> = path.iter().map(|h| h / 2).collect();
                    key.sort_unstable();
                    if seen.insert(key) {
                        out.push(path.clone());
                    }
                } else if !visited.contains(&w) {
                    let mut p = path.clone();
                    p.push(h);
                    let mut vs = visited.clone();
                    vs.push(w);
                    stack.push((p, vs));
                }
            }
        }
    }
    out
}

struct Sides {
    /// Face sets on the left and right of the cycle.
    side: [BTreeSet<usize>; 2],
}

fn cycle_sides(track: &RibbonTrack, g: &RibbonGraph, fi: &[usize], cycle: &[usize]) -> Option<Sides> {
    let cut: BTreeSet<usize> = cycle.iter().map(|h| h / 2).collect();
    let nf = g.faces().len();
    let mut adj = vec![vec![]; nf];
    for e in 0..track.edges.len() {
        if !cut.contains(&e) {
            adj[fi[2 * e]].push(fi[2 * e + 1]);
            adj[fi[2 * e + 1]].push(fi[2 * e]);
        }
    }
    let fill = |seed: usize| {
        let mut set = BTreeSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        while let Some(f) = queue.pop_front() {
            for &n in &adj[f] {
                if set.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        set
    };
    let left = fill(fi[cycle[0]]);
    let right = fill(fi[RibbonGraph::iota(cycle[0])]);
    (left.is_disjoint(&right) && left.len() + right.len() == nf).then_some(Sides { side: [left, right] })
}

/// Senses of plain branches attached to the cycle from one side: +1 when the
/// branch merges along the direction of travel, −1 against it.
fn attachment_senses(track: &RibbonTrack, g: &RibbonGraph, cycle: &[usize], left: bool) -> Vec<i8> {
    let vertex = track.vertex_of();
    let mut senses = Vec::new();
    for i in 0..cycle.len() {
        let arrive = RibbonGraph::iota(cycle[i]);
        let depart = cycle[(i + 1) % cycle.len()];
        let w = vertex[depart];
        let (from, to) = if left { (depart, arrive) } else { (arrive, depart) };
        let mut h = g.sigma(from);
        while h != to {
            if track.kind(h) == EdgeKind::Plain {
                senses.push(if track.side(w, h) == track.side(w, arrive) { 1 } else { -1 });
            }
            h = g.sigma(h);
        }
    }
    senses
}

/// Reeb-type configurations in the track.
pub fn reeb_pattern(track: &RibbonTrack) -> Result<ReebPattern, TrackError> {
    let (fi, _, is_hole) = face_regions(track)?;
    let g = track.graph();
    let faces = g.faces();
    let holes = track.hole_faces(&faces)?;
    let layout = host_boundary(track.host).expect("validated host");
    let alpha_circle = |f: usize| {
        holes.iter().position(|&h| h == f).is_some_and(|i| matches!(layout[i][..], [BoundarySide::Alpha(_)]))
    };
    let cycles = smooth_cycles(track);
    let sides: Vec<Option<Sides>> = cycles.iter().map(|c| cycle_sides(track, &g, &fi, c)).collect();
    let vertex = track.vertex_of();
    let mut unknown = false;
    let mut half = false;
    for (c, s) in cycles.iter().zip(&sides) {
        let Some(s) = s else { continue };
        for (k, side) in s.side.iter().enumerate() {
            let hole_list: Vec<usize> = side.iter().copied().filter(|&f| is_hole[f]).collect();
            if hole_list.len() != 1 || !alpha_circle(hole_list[0]) {
                continue;
            }
            let senses = attachment_senses(track, &g, c, k == 0);
            if senses.is_empty() {
                continue;
            }
            if senses.iter().all(|&x| x == senses[0]) {
                half = true;
            } else {
                unknown = true;
            }
        }
    }
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let (Some(si), Some(sj)) = (&sides[i], &sides[j]) else { continue };
            let vi: BTreeSet<usize> = cycles[i].iter().map(|&h| vertex[h]).collect();
            if cycles[j].iter().any(|&h| vi.contains(&vertex[h])) {
                continue;
            }
            // Side of each cycle that contains the other.
            let ki = usize::from(!si.side[0].contains(&fi[cycles[j][0]]));
            let kj = usize::from(!sj.side[0].contains(&fi[cycles[i][0]]));
            let annulus: BTreeSet<usize> = si.side[ki].intersection(&sj.side[kj]).copied().collect();
            if annulus.is_empty() || annulus.iter().any(|&f| is_hole[f]) {
                continue;
            }
            let inside = !attachment_senses(track, &g, &cycles[i], ki == 0).is_empty()
                || !attachment_senses(track, &g, &cycles[j], kj == 0).is_empty();
            if inside {
                return Ok(ReebPattern::Reeb);
            }
        }
    }
    Ok(if half {
        ReebPattern::HalfReeb
    } else if unknown {
        ReebPattern::Unknown
    } else {
        ReebPattern::None
    })
}

pub fn detect_half_reeb(track: &RibbonTrack) -> Result<bool, TrackError> {
    Ok(reeb_pattern(track)? == ReebPattern::HalfReeb)
}

/// Good, fair or not fair from the regions, then Reeb patterns among fair
/// tracks. An `Unknown` pattern is reported as essential.
pub fn classify_track(track: &RibbonTrack) -> Result<TrackClass, TrackError> {
    let regions = complement_regions(track)?;
    if regions.iter().any(|r| r.chi_g > q(0)) {
        return Ok(TrackClass::NotFair);
    }
    if regions.iter().all(|r| r.chi_g < q(0)) {
        return Ok(TrackClass::Good);
    }
    Ok(match reeb_pattern(track)? {
        ReebPattern::Reeb => TrackClass::FairWithReeb,
        ReebPattern::HalfReeb => TrackClass::FairWithHalfReeb,
        ReebPattern::None | ReebPattern::Unknown => TrackClass::FairEssential,
    })
}
