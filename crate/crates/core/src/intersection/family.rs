//! The finite family of curve classes used to separate laminations, and
//! their intersection numbers in decomposition coordinates.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::disk::reconstruct_disk;
use crate::catalog::standard::{standard_tracks, ChartMap, StandardTrack};
use crate::catalog::trim::reconstruct_trim;
use crate::catalog::{ConnectorChart, PantsArc, PieceChart, TEmptyChart, TrimArc};
use crate::coordinates::DTCoordinates;
use crate::error::{CoordError, IntersectionError, TrackError};
use crate::geometry::{validate_decomposition, Decomposition, ElementaryKind, Port};
use crate::rational::{abs, common_denominator, q, Extended, Q};
use crate::train_track::{delta_attachments, extend_weights_closed, WeightVector};

use super::glued::{Crossing, Glued, Junction, Side};
use super::twist::{self, PantsSide, TrimSide, TwistForm};
use super::{oracle_intersect_piece_with_cap, PieceArc};

/// What a family member is.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveKind {
    /// The core curve of a connector.
    DecompositionCurve { connector: String },
    /// An arc parallel to the boundary circle of a trim annulus or cusped
    /// disk, from α-arc `from` to α-arc `to`, cutting off α-arc `around`.
    BoundaryParallelArc { piece: String, from: usize, to: usize, around: usize },
    /// A curve crossing a connector, before or after one Dehn twist about
    /// its core.
    TwistDetector { connector: String, twisted: bool },
    /// A δ-circle of an empty trim annulus with one of its orientations.
    OrientedDelta { piece: String, positive: bool },
    /// A curve parallel to an unglued α-circle port.
    PortReader { port: Port },
}

/// One piece a family member runs through, and the arc it follows there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathStep {
    pub piece: String,
    pub arc: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    pub kind: CurveKind,
    pub path: Vec<PathStep>,
}

impl CurveClass {
    /// Stable string id, e.g. `C:q1`, `arc:t1:a1-a3`, `twist:q1:base`,
    /// `delta:d1:+`, `port:p1#2`. α-arcs are numbered from 1.
    pub fn id(&self) -> String {
        match &self.kind {
            CurveKind::DecompositionCurve { connector } => format!("C:{connector}"),
            CurveKind::BoundaryParallelArc { piece, from, to, .. } => format!("arc:{piece}:a{}-a{}", from + 1, to + 1),
            CurveKind::TwistDetector { connector, twisted } => {
                format!("twist:{connector}:{}", if *twisted { "twisted" } else { "base" })
            }
            CurveKind::OrientedDelta { piece, positive } => {
                format!("delta:{piece}:{}", if *positive { "+" } else { "-" })
            }
            CurveKind::PortReader { port } => format!("port:{port}"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "id": self.id(), "kind": self.kind, "path": self.path })
    }
}

fn step(piece: &str, arc: impl Into<String>) -> PathStep {
    PathStep { piece: piece.to_string(), arc: arc.into() }
}

/// Intersection numbers over a family, keyed by class id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntersectionVector {
    pub entries: BTreeMap<String, Extended>,
}

impl IntersectionVector {
    pub fn get(&self, theta: &CurveClass) -> Option<Extended> {
        self.entries.get(&theta.id()).copied()
    }
}

/// The two neighbours of a connector, seen from its ports 0 and 1.
fn connector_partners(d: &Decomposition, connector: &str) -> Result<(Port, Port), IntersectionError> {
    let partners = d.partners();
    let get = |i| {
        partners
            .get(&Port::new(connector, i))
            .cloned()
            .ok_or_else(|| IntersectionError::Domain(format!("connector {connector} port {i} is unglued")))
    };
    Ok((get(0)?, get(1)?))
}

/// Which of the four neighbourhoods a connector sits in.
enum Neighbours {
    PantsPants(Port, Port),
    SelfGlued {
        pants: String,
        port: usize,
        other: usize,
    },
    TrimTrim(Port, Port),
    /// Trim annulus first.
    TrimPants(Port, Port),
}

fn neighbours(d: &Decomposition, connector: &str) -> Result<Neighbours, IntersectionError> {
    if d.kind(connector) != Some(ElementaryKind::Connector) {
        return Err(IntersectionError::Domain(format!("{connector} is not a connector")));
    }
    let (a, b) = connector_partners(d, connector)?;
    let ka = d.kind(&a.piece).expect("glued piece exists");
    let kb = d.kind(&b.piece).expect("glued piece exists");
    use ElementaryKind::{Pants, TrimAnnulus};
    Ok(match (ka, kb) {
        (Pants, Pants) if a.piece == b.piece => Neighbours::SelfGlued { pants: a.piece, port: a.index, other: b.index },
        (Pants, Pants) => Neighbours::PantsPants(a, b),
        (TrimAnnulus(_), TrimAnnulus(_)) => Neighbours::TrimTrim(a, b),
        (TrimAnnulus(_), Pants) => Neighbours::TrimPants(a, b),
        (Pants, TrimAnnulus(_)) => Neighbours::TrimPants(b, a),
        _ => return Err(IntersectionError::Domain(format!("connector {connector} joins {ka:?} and {kb:?}"))),
    })
}

fn loop_label(port: usize) -> String {
    PantsArc::Loop(port).label()
}

fn detector_path(d: &Decomposition, connector: &str, twisted: bool) -> Result<Vec<PathStep>, IntersectionError> {
    let (across, back) = if twisted { ("across+twist", "back+twist") } else { ("across", "back") };
    let rho = TrimArc::Radial(0).label();
    Ok(match neighbours(d, connector)? {
        Neighbours::PantsPants(a, b) => vec![
            step(&a.piece, loop_label(a.index)),
            step(connector, across),
            step(&b.piece, loop_label(b.index)),
            step(connector, back),
        ],
        Neighbours::SelfGlued { pants, port, other } => {
            vec![step(connector, across), step(&pants, PantsArc::cross(port, other).label())]
        }
        Neighbours::TrimTrim(a, b) => vec![step(&a.piece, &rho), step(connector, across), step(&b.piece, &rho)],
        Neighbours::TrimPants(t, p) => vec![
            step(&t.piece, &rho),
            step(connector, across),
            step(&p.piece, loop_label(p.index)),
            step(connector, back),
            step(&t.piece, &rho),
        ],
    })
}

fn disk_diagonal(c: usize, i: usize) -> (usize, usize, usize) {
    let (a, b) = (i, (i + 2) % c);
    (a.min(b), a.max(b), (i + 1) % c)
}

/// The finite distinguishing family of a valid decomposition: connector
/// cores with their twist detectors, boundary-parallel arcs of trim
/// annuli and cusped disks, both orientations of every spiral δ-circle,
/// and one reader per unglued α-circle port.
pub fn distinguishing_family(d: &Decomposition) -> Result<Vec<CurveClass>, CoordError> {
    let report = validate_decomposition(d)?;
    if !report.ok {
        return Err(CoordError::InvalidDecomposition(report.violations));
    }
    let wrap = |e: IntersectionError| CoordError::OutOfHypothesis(e.to_string());
    let mut out = Vec::new();
    for piece in &d.pieces {
        let id = piece.id.as_str();
        match piece.kind {
            ElementaryKind::Connector => {
                out.push(CurveClass {
                    kind: CurveKind::DecompositionCurve { connector: id.into() },
                    path: vec![step(id, "core")],
                });
                for twisted in [false, true] {
                    out.push(CurveClass {
                        kind: CurveKind::TwistDetector { connector: id.into(), twisted },
                        path: detector_path(d, id, twisted).map_err(wrap)?,
                    });
                }
            }
            ElementaryKind::TrimAnnulus(c) if c >= 2 => {
                for from in 0..c {
                    let arc = TrimArc::Outer { start: from, span: 2 };
                    out.push(CurveClass {
                        kind: CurveKind::BoundaryParallelArc {
                            piece: id.into(),
                            from,
                            to: (from + 2) % c,
                            around: (from + 1) % c,
                        },
                        path: vec![step(id, arc.label())],
                    });
                }
            }
            ElementaryKind::CuspedDisk(c) if c >= 4 => {
                let mut seen = Vec::new();
                for i in 0..c {
                    let (from, to, around) = disk_diagonal(c, i);
                    if seen.contains(&(from, to)) {
                        continue;
                    }
                    seen.push((from, to));
                    out.push(CurveClass {
                        kind: CurveKind::BoundaryParallelArc { piece: id.into(), from, to, around },
                        path: vec![step(id, format!("d{}-{}", from + 1, to + 1))],
                    });
                }
            }
            ElementaryKind::TrimAnnulusEmpty => {
                for positive in [true, false] {
                    out.push(CurveClass {
                        kind: CurveKind::OrientedDelta { piece: id.into(), positive },
                        path: vec![step(id, if positive { "delta+" } else { "delta-" })],
                    });
                }
            }
            _ => {}
        }
    }
    for port in d.unglued_ports() {
        let arc = format!("port{}", port.index);
        out.push(CurveClass { path: vec![step(&port.piece, arc)], kind: CurveKind::PortReader { port } });
    }
    Ok(out)
}

fn chart<'a>(coords: &'a DTCoordinates, piece: &str) -> Result<&'a PieceChart, IntersectionError> {
    coords.charts.get(piece).ok_or_else(|| IntersectionError::Domain(format!("no piece {piece}")))
}

fn connector_chart<'a>(coords: &'a DTCoordinates, piece: &str) -> Result<&'a ConnectorChart, IntersectionError> {
    match chart(coords, piece)? {
        PieceChart::Connector(c) => Ok(c),
        _ => Err(IntersectionError::Domain(format!("{piece} is not a connector"))),
    }
}

fn tempty_chart<'a>(coords: &'a DTCoordinates, piece: &str) -> Result<&'a TEmptyChart, IntersectionError> {
    match chart(coords, piece)? {
        PieceChart::TEmpty(c) => Ok(c),
        _ => Err(IntersectionError::Domain(format!("{piece} has no spiral δ-circle"))),
    }
}

fn pants_side(coords: &DTCoordinates, port: &Port) -> Result<PantsSide, IntersectionError> {
    match chart(coords, &port.piece)? {
        PieceChart::Pants(p) => Ok(PantsSide { port: port.index, arcs: p.arc_weights() }),
        _ => Err(IntersectionError::Domain(format!("{} is not a pair of pants", port.piece))),
    }
}

fn trim_side(coords: &DTCoordinates, piece: &str) -> Result<TrimSide, IntersectionError> {
    match chart(coords, piece)? {
        PieceChart::Trim(t) => {
            let arcs =
                reconstruct_trim(t).ok_or_else(|| IntersectionError::Domain(format!("{piece}: chart off the cone")))?;
            Ok(TrimSide { c: t.c(), arcs })
        }
        _ => Err(IntersectionError::Domain(format!("{piece} is not a trim annulus"))),
    }
}

/// The detector's intersection number as a function of the twist.
fn twist_form(coords: &DTCoordinates, connector: &str) -> Result<TwistForm, IntersectionError> {
    let y = connector_chart(coords, connector)?.y;
    Ok(match neighbours(&coords.decomposition, connector)? {
        Neighbours::PantsPants(a, b) => twist::pants_pants(&pants_side(coords, &a)?, &pants_side(coords, &b)?, y),
        Neighbours::SelfGlued { pants, port, other } => {
            twist::self_glued(&pants_side(coords, &Port::new(pants, port))?, other, y)
        }
        Neighbours::TrimTrim(a, b) => twist::trim_trim(&trim_side(coords, &a.piece)?, &trim_side(coords, &b.piece)?, y),
        Neighbours::TrimPants(t, p) => twist::trim_pants(&trim_side(coords, &t.piece)?, &pants_side(coords, &p)?),
    })
}

fn boundary_parallel(
    coords: &DTCoordinates,
    piece: &str,
    from: usize,
    to: usize,
    around: usize,
) -> Result<Q, IntersectionError> {
    let bad = || IntersectionError::Domain(format!("no boundary-parallel arc a{}-a{} in {piece}", from + 1, to + 1));
    match chart(coords, piece)? {
        PieceChart::Trim(t) => {
            let c = t.c();
            if c < 2 || to != (from + 2) % c || around != (from + 1) % c {
                return Err(bad());
            }
            Ok(t.x[around])
        }
        PieceChart::Disk(dc) => {
            let c = dc.x.len();
            if c < 4 || !(0..c).any(|i| disk_diagonal(c, i) == (from, to, around)) {
                return Err(bad());
            }
            Ok(dc.x[around])
        }
        _ => Err(bad()),
    }
}

fn unglued_port(coords: &DTCoordinates, port: &Port) -> Result<Q, IntersectionError> {
    let d = &coords.decomposition;
    if !d.unglued_ports().contains(port) {
        return Err(IntersectionError::Domain(format!("{port} is not an unglued port")));
    }
    Ok(coords.port_weight(port))
}

/// Intersection number of the lamination with a family member, from the
/// closed piecewise-linear formulas.
pub fn intersect(coords: &DTCoordinates, theta: &CurveClass) -> Result<Extended, IntersectionError> {
    let v = match &theta.kind {
        CurveKind::DecompositionCurve { connector } => connector_chart(coords, connector)?.y,
        CurveKind::PortReader { port } => unglued_port(coords, port)?,
        CurveKind::BoundaryParallelArc { piece, from, to, around } => {
            boundary_parallel(coords, piece, *from, *to, *around)?
        }
        CurveKind::OrientedDelta { piece, positive } => {
            let s = tempty_chart(coords, piece)?.s;
            let s = if *positive { s } else { -s };
            s.max(q(0))
        }
        CurveKind::TwistDetector { connector, twisted } => {
            let c = connector_chart(coords, connector)?;
            let form = twist_form(coords, connector)?;
            if *twisted {
                form.eval_twisted(c.signed_twist(), c.y)
            } else {
                form.eval(c.signed_twist())
            }
        }
    };
    Ok(Extended::Finite(v))
}

/// `intersect` over a whole family, evaluated in parallel.
pub fn intersection_vector(
    coords: &DTCoordinates,
    family: &[CurveClass],
) -> Result<IntersectionVector, IntersectionError> {
    let values: Vec<(String, Extended)> =
        family.par_iter().map(|theta| intersect(coords, theta).map(|v| (theta.id(), v))).collect::<Result<_, _>>()?;
    Ok(IntersectionVector { entries: values.into_iter().collect() })
}

/// Algebraic intersection with a spiral δ-circle: `i(δ+) − i(δ−)`.
pub fn algebraic_boundary_class(coords: &DTCoordinates, piece: &str) -> Result<Q, IntersectionError> {
    let theta =
        |positive| CurveClass { kind: CurveKind::OrientedDelta { piece: piece.into(), positive }, path: Vec::new() };
    let plus = intersect(coords, &theta(true))?.finite().expect("finite");
    let minus = intersect(coords, &theta(false))?.finite().expect("finite");
    Ok(plus - minus)
}

/// The same class read off the standard track carrying the piece's chart:
/// the algebraic total of the weights spiralling onto its δ-circle.
pub fn carried_boundary_class(coords: &DTCoordinates, piece: &str) -> Result<Q, IntersectionError> {
    let s = tempty_chart(coords, piece)?.s;
    let sense = if s < q(0) { -1 } else { 1 };
    let st = standard_tracks(ElementaryKind::TrimAnnulusEmpty)
        .into_iter()
        .find(|st| st.chart_map == ChartMap::TEmpty(sense))
        .expect("both senses are standard");
    let w = st.weights(&[abs(s)]);
    let ext = extend_weights_closed(&delta_attachments(&st.track, &w, 0))?;
    // The extension may read the circle against its orientation.
    Ok(if ext.orientation_reversed { -ext.algebraic_total } else { ext.algebraic_total })
}

fn integral(values: &[Q]) -> i64 {
    common_denominator(values)
}

fn to_int(v: Q, k: i64) -> i64 {
    (v * q(k)).to_integer()
}

fn within_cap(weights: impl IntoIterator<Item = i64>, cap: i64) -> Result<(), IntersectionError> {
    for w in weights {
        if w > cap {
            return Err(IntersectionError::CapExceeded { cap, value: w });
        }
    }
    Ok(())
}

enum OracleSide {
    Pants(PantsSide),
    Trim(TrimSide),
}

impl OracleSide {
    fn values(&self) -> Vec<Q> {
        match self {
            OracleSide::Pants(p) => p.arcs.iter().map(|(_, w)| *w).collect(),
            OracleSide::Trim(t) => t.arcs.iter().map(|(_, w)| *w).collect(),
        }
    }
    fn scaled(&self, k: i64) -> Side {
        match self {
            OracleSide::Pants(p) => {
                Side::Pants { port: p.port, arcs: p.arcs.iter().map(|(a, w)| (*a, to_int(*w, k))).collect() }
            }
            OracleSide::Trim(t) => {
                Side::Trim { c: t.c, arcs: t.arcs.iter().map(|(a, w)| (*a, to_int(*w, k))).collect() }
            }
        }
    }
}

fn oracle_twist(coords: &DTCoordinates, connector: &str, twisted: bool, cap: i64) -> Result<Q, IntersectionError> {
    let c = connector_chart(coords, connector)?;
    let (t, y) = (c.signed_twist(), c.y);
    let (sides, other) = match neighbours(&coords.decomposition, connector)? {
        Neighbours::PantsPants(a, b) => {
            (vec![OracleSide::Pants(pants_side(coords, &a)?), OracleSide::Pants(pants_side(coords, &b)?)], None)
        }
        Neighbours::SelfGlued { pants, port, other } => {
            (vec![OracleSide::Pants(pants_side(coords, &Port::new(pants, port))?)], Some(other))
        }
        Neighbours::TrimTrim(a, b) => {
            (vec![OracleSide::Trim(trim_side(coords, &a.piece)?), OracleSide::Trim(trim_side(coords, &b.piece)?)], None)
        }
        Neighbours::TrimPants(a, b) => {
            (vec![OracleSide::Trim(trim_side(coords, &a.piece)?), OracleSide::Pants(pants_side(coords, &b)?)], None)
        }
    };
    let mut values: Vec<Q> = sides.iter().flat_map(OracleSide::values).collect();
    values.extend([t, y]);
    let k = integral(&values);
    let scaled: Vec<Side> = sides.iter().map(|s| s.scaled(k)).collect();
    within_cap(values.iter().map(|v| to_int(abs(*v), k)), cap)?;
    let j = match other {
        Some(other) => Junction::SelfGlued { pants: scaled[0].clone(), other },
        None => Junction::Two { a: scaled[0].clone(), b: scaled[1].clone() },
    };
    let x = Crossing { y: to_int(y, k), twist: to_int(t, k) };
    let n =
        Glued::build(&j, x, i64::from(twisted)).and_then(Glued::crossings).map_err(IntersectionError::Unrealizable)?;
    Ok(Q::new(n as i64, k))
}

fn oracle_boundary_parallel(
    coords: &DTCoordinates,
    piece: &str,
    from: usize,
    to: usize,
    cap: i64,
) -> Result<Q, IntersectionError> {
    let (kind, system, theta): (ElementaryKind, Vec<(PieceArc, Q)>, PieceArc) = match chart(coords, piece)? {
        PieceChart::Trim(t) => {
            let arcs =
                reconstruct_trim(t).ok_or_else(|| IntersectionError::Domain(format!("{piece}: chart off the cone")))?;
            let sys = arcs.into_iter().map(|(a, w)| (PieceArc::Trim(a), w)).collect();
            (ElementaryKind::TrimAnnulus(t.c()), sys, PieceArc::Trim(TrimArc::Outer { start: from, span: 2 }))
        }
        PieceChart::Disk(dc) => {
            let arcs = reconstruct_disk(dc)
                .ok_or_else(|| IntersectionError::Domain(format!("{piece}: chart off the cone")))?;
            let sys = arcs.into_iter().map(|(a, w)| (PieceArc::Disk(a), w)).collect();
            (ElementaryKind::CuspedDisk(dc.x.len()), sys, PieceArc::Disk((from, to)))
        }
        _ => return Err(IntersectionError::Domain(format!("{piece} carries no boundary-parallel arcs"))),
    };
    let values: Vec<Q> = system.iter().map(|(_, w)| *w).collect();
    let k = integral(&values);
    let ints: Vec<(PieceArc, i64)> = system.iter().map(|(a, w)| (*a, to_int(*w, k))).collect();
    let n = oracle_intersect_piece_with_cap(kind, &ints, theta, cap)?;
    Ok(Q::new(n as i64, k))
}

/// Intersection number of a family member computed by drawing the curve
/// system in the pieces the member meets and minimizing crossings. Weights
/// are scaled to integers first; a scaled weight above `cap` is refused.
pub fn oracle_intersect(coords: &DTCoordinates, theta: &CurveClass, cap: i64) -> Result<Extended, IntersectionError> {
    let v = match &theta.kind {
        CurveKind::BoundaryParallelArc { piece, from, to, around } => {
            boundary_parallel(coords, piece, *from, *to, *around)?;
            oracle_boundary_parallel(coords, piece, *from, *to, cap)?
        }
        CurveKind::TwistDetector { connector, twisted } => oracle_twist(coords, connector, *twisted, cap)?,
        _ => return intersect(coords, theta),
    };
    Ok(Extended::Finite(v))
}

/// `oracle_intersect` over a whole family.
pub fn oracle_vector(
    coords: &DTCoordinates,
    family: &[CurveClass],
    cap: i64,
) -> Result<IntersectionVector, IntersectionError> {
    let values: Vec<(String, Extended)> = family
        .par_iter()
        .map(|theta| oracle_intersect(coords, theta, cap).map(|v| (theta.id(), v)))
        .collect::<Result<_, _>>()?;
    Ok(IntersectionVector { entries: values.into_iter().collect() })
}

fn pants_cell_ok(a: &[(PantsArc, Q)], b: &[(PantsArc, Q)]) -> bool {
    let support: Vec<PantsArc> = a.iter().chain(b).filter(|(_, w)| *w > q(0)).map(|(x, _)| *x).collect();
    support.iter().all(|x| support.iter().all(|y| x.compatible(y)))
}

fn trim_cell_ok(c: usize, a: &[(TrimArc, Q)], b: &[(TrimArc, Q)]) -> bool {
    let support: Vec<TrimArc> = a.iter().chain(b).filter(|(_, w)| *w > q(0)).map(|(x, _)| *x).collect();
    support.iter().all(|x| support.iter().all(|y| x.compatible(y, c)))
}

/// Sum of two points carried by a common standard track in every piece,
/// or `None` when some piece has them in different cells.
pub fn add_in_common_cell(a: &DTCoordinates, b: &DTCoordinates) -> Option<DTCoordinates> {
    let mut charts = BTreeMap::new();
    for (id, ca) in &a.charts {
        let cb = b.charts.get(id)?;
        let sum = match (ca, cb) {
            (PieceChart::Pants(x), PieceChart::Pants(y)) => {
                if !pants_cell_ok(&x.arc_weights(), &y.arc_weights()) {
                    return None;
                }
                PieceChart::Pants(crate::catalog::PantsChart {
                    y: x.y.iter().zip(&y.y).map(|(u, v)| *u + *v).collect(),
                })
            }
            (PieceChart::Trim(x), PieceChart::Trim(y)) => {
                if !trim_cell_ok(x.c(), &reconstruct_trim(x)?, &reconstruct_trim(y)?) {
                    return None;
                }
                PieceChart::Trim(crate::catalog::TrimChart::new(
                    x.x.iter().zip(&y.x).map(|(u, v)| *u + *v).collect(),
                    x.y + y.y,
                ))
            }
            (PieceChart::Disk(x), PieceChart::Disk(y)) => {
                let (sx, sy) = (reconstruct_disk(x)?, reconstruct_disk(y)?);
                let support: Vec<_> = sx.iter().chain(&sy).map(|(d, _)| *d).collect();
                if support.iter().any(|p| support.iter().any(|r| crate::catalog::disk::diagonals_cross(*p, *r))) {
                    return None;
                }
                PieceChart::Disk(crate::catalog::DiskChart { x: x.x.iter().zip(&y.x).map(|(u, v)| *u + *v).collect() })
            }
            (PieceChart::Connector(x), PieceChart::Connector(y)) => {
                let (tx, ty) = (x.signed_twist(), y.signed_twist());
                if tx * ty < q(0) {
                    return None;
                }
                PieceChart::Connector(ConnectorChart::from_signed(tx + ty, x.y + y.y))
            }
            (PieceChart::TEmpty(x), PieceChart::TEmpty(y)) => {
                if x.s * y.s < q(0) {
                    return None;
                }
                PieceChart::TEmpty(TEmptyChart::new(x.s + y.s))
            }
            _ => return None,
        };
        charts.insert(id.clone(), sum);
    }
    let boundary =
        a.boundary.iter().map(|(p, v)| (p.clone(), *v + b.boundary.get(p).copied().unwrap_or(q(0)))).collect();
    Some(DTCoordinates { decomposition: a.decomposition.clone(), charts, boundary })
}

/// Subadditivity `i(w0 + w1) ≤ i(w0) + i(w1)` for one arc type of a
/// piece, with weights on one of its standard tracks and every value
/// computed by the oracle.
pub fn check_convexity(
    track: &StandardTrack,
    theta: PieceArc,
    w0: &WeightVector,
    w1: &WeightVector,
) -> Result<bool, IntersectionError> {
    let arcs: Vec<PieceArc> = match &track.chart_map {
        ChartMap::Pants(a) => a.iter().map(|x| PieceArc::Pants(*x)).collect(),
        ChartMap::Trim(_, a) => a.iter().map(|x| PieceArc::Trim(*x)).collect(),
        ChartMap::Disk(_, a) => a.iter().map(|x| PieceArc::Disk(*x)).collect(),
        other => return Err(IntersectionError::Domain(format!("no arc system on a {other:?} track"))),
    };
    let value = |w: &WeightVector| -> Result<u64, IntersectionError> {
        let params =
            track.params(w).ok_or_else(|| TrackError::CarryingViolation("weights outside the track's cone".into()))?;
        let mut system = Vec::new();
        for (a, p) in arcs.iter().zip(params) {
            if !p.is_integer() {
                return Err(TrackError::Malformed(format!("non-integer weight {p}")).into());
            }
            system.push((*a, p.to_integer()));
        }
        oracle_intersect_piece_with_cap(track.kind, &system, theta, super::oracle_cap())
    };
    let sum = w0.add(w1);
    Ok(value(&sum)? <= value(w0)? + value(w1)?)
}

/// Subadditivity of one family member on a pair of points sharing a cell
/// in every piece, all three values computed by the oracle. `None` when
/// the points lie in different cells.
pub fn check_convexity_coords(
    c0: &DTCoordinates,
    c1: &DTCoordinates,
    theta: &CurveClass,
    cap: i64,
) -> Result<Option<bool>, IntersectionError> {
    let Some(sum) = add_in_common_cell(c0, c1) else {
        return Ok(None);
    };
    let f = |c: &DTCoordinates| oracle_intersect(c, theta, cap).map(|v| v.finite().expect("finite"));
    Ok(Some(f(&sum)? <= f(c0)? + f(c1)?))
}
