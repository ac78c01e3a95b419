use serde::Serialize;

use super::{EdgeKind, RibbonTrack, VertexKind};
use crate::error::TrackError;
use crate::rational::{q, qf, Q};

/// A complementary region of the track.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Boundary walks, as the half-edges traversed.
    pub walks: Vec<Vec<usize>>,
    pub cusps: usize,
    /// Maximal α-arcs along the boundary.
    pub alpha_arcs: usize,
    pub chi: i64,
    #[serde(with = "crate::rational::q_string")]
    pub chi_g: Q,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Region id of every face of the full map (faces joined across tethers)
/// and whether it is a hole.
pub(crate) fn face_regions(track: &RibbonTrack) -> Result<(Vec<usize>, Vec<usize>, Vec<bool>), TrackError> {
    track.validate()?;
    let g = track.graph();
    let faces = g.faces();
    let fi = g.face_index();
    let holes = track.hole_faces(&faces)?;
    let mut uf = UnionFind((0..faces.len()).collect());
    for (e, k) in track.edges.iter().enumerate() {
        if *k == EdgeKind::Tether {
            uf.union(fi[2 * e], fi[2 * e + 1]);
        }
    }
    let region: Vec<usize> = (0..faces.len()).map(|f| uf.find(f)).collect();
    let is_hole = (0..faces.len()).map(|f| holes.contains(&f)).collect();
    Ok((fi, region, is_hole))
}

/// Complementary regions with their Euler characteristics.
pub fn complement_regions(track: &RibbonTrack) -> Result<Vec<Region>, TrackError> {
    let (fi, region, is_hole) = face_regions(track)?;
    let red = track.reduced();
    let rg = &red.graph;
    let vertex = track.vertex_of();
    let mut grouped: std::collections::BTreeMap<usize, Region> = Default::default();
    for walk in rg.faces() {
        let first = red.old(walk[0]);
        if is_hole[fi[first]] {
            continue;
        }
        let mut cusps = 0;
        let mut kinds = Vec::with_capacity(walk.len());
        let mut traversed = Vec::with_capacity(walk.len());
        for &h in &walk {
            let next = rg.sigma(h);
            let (ho, no) = (red.old(h), red.old(next));
            let v = vertex[ho];
            if let VertexKind::Switch { .. } = track.vertices[v].kind {
                if track.vertices[v].rotation.len() > 1 && track.side(v, ho) == track.side(v, no) && ho != no {
                    cusps += 1;
                }
            }
            kinds.push(track.kind(no));
            traversed.push(no);
        }
        let alpha_arcs = alpha_runs(&kinds);
        let r = grouped.entry(region[fi[first]]).or_insert(Region {
            walks: vec![],
            cusps: 0,
            alpha_arcs: 0,
            chi: 2,
            chi_g: q(0),
        });
        r.walks.push(traversed);
        r.cusps += cusps;
        r.alpha_arcs += alpha_arcs;
    }
    Ok(grouped
        .into_values()
        .map(|mut r| {
            r.chi = 2 - r.walks.len() as i64;
            r.chi_g = q(r.chi) - qf((r.cusps + r.alpha_arcs) as i64, 2);
            r
        })
        .collect())
}

fn alpha_runs(kinds: &[EdgeKind]) -> usize {
    let is_alpha = |k: &EdgeKind| matches!(k, EdgeKind::Alpha(_));
    if kinds.iter().all(is_alpha) {
        return 0;
    }
    (0..kinds.len()).filter(|&i| is_alpha(&kinds[i]) && !is_alpha(&kinds[(i + kinds.len() - 1) % kinds.len()])).count()
}

/// Geometric Euler characteristic attributed to the fibered neighbourhood
/// of the track: `χ(τ) + (cusps − ends on α)/2`. Together with the regions
/// it adds up to that of the host.
pub fn neighbourhood_chi_g(track: &RibbonTrack) -> Result<Q, TrackError> {
    let regions = complement_regions(track)?;
    let cusps: usize = regions.iter().map(|r| r.cusps).sum();
    let mut verts = 0i64;
    let mut alpha_ends = 0i64;
    for (v, vert) in track.vertices.iter().enumerate() {
        let ends: Vec<usize> = vert.rotation.iter().copied().filter(|&h| track.kind(h).in_track()).collect();
        if ends.is_empty() {
            continue;
        }
        verts += 1;
        let on_alpha = track.visible_rotation(v).iter().any(|&h| matches!(track.kind(h), EdgeKind::Alpha(_)));
        if on_alpha {
            alpha_ends += ends.len() as i64;
        }
    }
    let edges = track.edges.iter().filter(|k| k.in_track()).count() as i64;
    Ok(q(verts - edges) + qf(cusps as i64 - alpha_ends, 2))
}
