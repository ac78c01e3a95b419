//! Global coordinates assembled from piece charts along a decomposition.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{disk, ConnectorChart, DiskChart, PantsChart, PieceChart, TEmptyChart, TrimChart};
use crate::error::CoordError;
use crate::geometry::{validate_decomposition, Decomposition, ElementaryKind, Port};
use crate::rational::{q, Q};

/// A point of the lamination space in the coordinates of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTCoordinates {
    pub decomposition: Decomposition,
    pub charts: BTreeMap<String, PieceChart>,
    /// Weights on the unglued α-circle ports.
    pub boundary: BTreeMap<Port, Q>,
}

impl DTCoordinates {
    pub fn chart(&self, piece: &str) -> &PieceChart {
        &self.charts[piece]
    }

    /// Weight induced on a port, glued or not.
    pub fn port_weight(&self, port: &Port) -> Q {
        self.charts[&port.piece].port_weight(port.index).expect("port exists")
    }

    /// All parameters multiplied by `lambda ≥ 0`.
    pub fn scaled(&self, lambda: Q) -> DTCoordinates {
        DTCoordinates {
            decomposition: self.decomposition.clone(),
            charts: self.charts.iter().map(|(k, c)| (k.clone(), c.scaled(lambda))).collect(),
            boundary: self.boundary.iter().map(|(k, v)| (k.clone(), *v * lambda)).collect(),
        }
    }

    /// The positive homogeneous norm used for projectivization: boundary
    /// weights plus the absolute values of every piece's free coordinates.
    pub fn norm(&self) -> Q {
        self.boundary.values().copied().sum::<Q>() + self.charts.values().map(PieceChart::free_norm).sum::<Q>()
    }

    pub fn is_zero(&self) -> bool {
        self.charts.values().all(|c| c.parameters().iter().all(|v| *v == q(0)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "decomposition": crate::schema::decomposition_to_json(&self.decomposition),
            "charts": self.charts,
        })
    }
}

/// Verifies every chart and every gluing equality.
pub fn assemble(d: &Decomposition, charts: &BTreeMap<String, PieceChart>) -> Result<DTCoordinates, CoordError> {
    let report = validate_decomposition(d)?;
    if !report.ok {
        return Err(CoordError::InvalidDecomposition(report.violations));
    }
    for piece in &d.pieces {
        let chart = charts.get(&piece.id).ok_or_else(|| CoordError::MissingChart(piece.id.clone()))?;
        chart.check(piece.kind).map_err(|source| CoordError::Piece { piece: piece.id.clone(), source })?;
    }
    let mut mismatches = Vec::new();
    for (a, b) in &d.gluings {
        let wa = charts[&a.piece].port_weight(a.index).expect("checked port");
        let wb = charts[&b.piece].port_weight(b.index).expect("checked port");
        if wa != wb {
            mismatches.push(format!(
                "{a} has weight {} but {b} has weight {}",
                crate::rational::fmt_q(&wa),
                crate::rational::fmt_q(&wb)
            ));
        }
    }
    if !mismatches.is_empty() {
        return Err(CoordError::GluingMismatch(mismatches));
    }
    let boundary = d
        .unglued_ports()
        .into_iter()
        .map(|p| {
            let w = charts[&p.piece].port_weight(p.index).expect("checked port");
            (p, w)
        })
        .collect();
    Ok(DTCoordinates { decomposition: d.clone(), charts: charts.clone(), boundary })
}

/// Factors of the product of piece spaces before gluing, and the number of
/// boundary weights fixed by the attached connectors and empty trim annuli.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bookkeeping {
    pub pants_plus: i64,
    pub trim_plus: i64,
    pub trim_free: i64,
    pub connector_free: i64,
    pub tempty_free: i64,
    pub disk_free: i64,
    pub determined: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    /// Number of `ℝ` factors.
    pub n_free: i64,
    /// Number of `ℝ₊` factors.
    pub n_plus: i64,
    /// Dimension of the sphere in the projective join; absent when the pair
    /// is disconnected.
    pub sphere_dim: Option<i64>,
    /// Dimension of the simplex in the projective join.
    pub simplex_dim: Option<i64>,
    pub bookkeeping: Bookkeeping,
    /// Per-component reports when the pair is disconnected.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub components: Vec<DimensionReport>,
}

/// Counts surviving parameters by building the product of piece spaces and
/// removing the boundary weight of each pants or trim port fixed by the
/// attachment glued to it.
pub fn parameter_census(d: &Decomposition) -> Bookkeeping {
    let mut bk = Bookkeeping::default();
    for p in &d.pieces {
        match p.kind {
            ElementaryKind::Pants => bk.pants_plus += 3,
            ElementaryKind::TrimAnnulus(c) => {
                bk.trim_plus += 1;
                bk.trim_free += c as i64 - 1;
            }
            ElementaryKind::Connector => bk.connector_free += 2,
            ElementaryKind::TrimAnnulusEmpty => bk.tempty_free += 1,
            ElementaryKind::CuspedDisk(c) => bk.disk_free += c as i64 - 3,
            ElementaryKind::NonElementary => {}
        }
    }
    for (a, b) in &d.gluings {
        for port in [a, b] {
            if !d.kind(&port.piece).is_some_and(|k| k.is_attachment()) {
                bk.determined += 1;
            }
        }
    }
    bk
}

fn report_for(d: &Decomposition) -> DimensionReport {
    let derived = d.derived();
    let n_free = -3 * derived.chi - derived.b as i64 + derived.c as i64;
    let n_plus = derived.b as i64;
    DimensionReport {
        n_free,
        n_plus,
        sphere_dim: Some(n_free - 1),
        simplex_dim: Some(n_plus - 1),
        bookkeeping: parameter_census(d),
        components: vec![],
    }
}

/// The dimension formula `ℝ^{−3χ−b+c} × ℝ₊^b`, per component when the pair
/// is disconnected.
pub fn dimension(d: &Decomposition) -> Result<DimensionReport, CoordError> {
    d.check_structure()?;
    let comps = d.components();
    for comp in &comps {
        let sub = d.restrict(comp);
        if sub.derived().chi_g >= q(0) {
            return Err(CoordError::OutOfHypothesis(format!(
                "component [{}] has chi_g = {}",
                comp.join(","),
                crate::rational::fmt_q(&sub.derived().chi_g)
            )));
        }
    }
    let report = validate_decomposition(d)?;
    if !report.ok {
        return Err(CoordError::InvalidDecomposition(report.violations));
    }
    if comps.len() == 1 {
        return Ok(report_for(d));
    }
    let components: Vec<DimensionReport> = comps.iter().map(|c| report_for(&d.restrict(c))).collect();
    Ok(DimensionReport {
        n_free: components.iter().map(|r| r.n_free).sum(),
        n_plus: components.iter().map(|r| r.n_plus).sum(),
        sphere_dim: None,
        simplex_dim: None,
        bookkeeping: parameter_census(d),
        components,
    })
}

/// Surviving `(ℝ, ℝ₊)` counts from the census.
pub fn surviving_parameters(bk: &Bookkeeping) -> (i64, i64) {
    (bk.trim_free + bk.connector_free + bk.tempty_free + bk.disk_free, bk.pants_plus + bk.trim_plus - bk.determined)
}

/// Scales coordinates to unit norm.
pub fn projectivize(coords: &DTCoordinates) -> Result<DTCoordinates, CoordError> {
    let norm = coords.norm();
    if norm == q(0) {
        return Err(CoordError::ZeroLamination);
    }
    Ok(coords.scaled(q(1) / norm))
}

/// Scales a bare chart map to unit norm, counting every port weight of the
/// listed pieces that is not glued as a boundary weight.
pub fn projectivize_charts(
    d: &Decomposition,
    charts: &BTreeMap<String, PieceChart>,
) -> Result<BTreeMap<String, PieceChart>, CoordError> {
    let boundary: Q = d
        .unglued_ports()
        .iter()
        .filter(|p| !d.kind(&p.piece).is_some_and(|k| k.is_attachment()))
        .filter_map(|p| charts.get(&p.piece).and_then(|c| c.port_weight(p.index)))
        .sum();
    let norm = boundary + charts.values().map(PieceChart::free_norm).sum::<Q>();
    if norm == q(0) {
        return Err(CoordError::ZeroLamination);
    }
    Ok(charts.iter().map(|(k, c)| (k.clone(), c.scaled(q(1) / norm))).collect())
}

const RETRY_BUDGET: usize = 256;

/// Integer coordinates sampled deterministically from `seed`, with every
/// sampled parameter in `[0, bound]` (spiral weights in `[−bound, bound]`).
/// Boundary weights of pants and trim ports are taken from the attachment
/// glued to them.
pub fn random_coords(d: &Decomposition, seed: u64, bound: i64) -> Result<DTCoordinates, CoordError> {
    let report = validate_decomposition(d)?;
    if !report.ok {
        return Err(CoordError::InvalidDecomposition(report.violations));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        if let Some(charts) = sample_once(d, &mut rng, bound) {
            return assemble(d, &charts);
        }
    }
    Err(CoordError::RetryBudget(RETRY_BUDGET))
}

fn sample_once(d: &Decomposition, rng: &mut ChaCha8Rng, bound: i64) -> Option<BTreeMap<String, PieceChart>> {
    let mut charts = BTreeMap::new();
    for p in d.pieces.iter().filter(|p| p.kind.is_attachment()) {
        let chart = match p.kind {
            ElementaryKind::Connector => {
                let chart = if rng.gen_bool(0.5) { 1 } else { 2 };
                ConnectorChart::new(chart, q(rng.gen_range(0..=bound)), q(rng.gen_range(0..=bound))).canonical().into()
            }
            _ => TEmptyChart::new(q(rng.gen_range(-bound..=bound))).into(),
        };
        charts.insert(p.id.clone(), chart);
    }
    let partners = d.partners();
    let fixed = |port: Port, charts: &BTreeMap<String, PieceChart>| -> Option<Q> {
        partners.get(&port).map(|other| charts[&other.piece].port_weight(other.index).expect("port"))
    };
    for p in d.pieces.iter().filter(|p| !p.kind.is_attachment()) {
        let chart: PieceChart = match p.kind {
            ElementaryKind::Pants => {
                let mut y = [q(0); 3];
                for (i, yi) in y.iter_mut().enumerate() {
                    *yi = fixed(Port::new(p.id.clone(), i), &charts).unwrap_or_else(|| q(rng.gen_range(0..=bound)));
                }
                PantsChart::new(y).into()
            }
            ElementaryKind::TrimAnnulus(c) => {
                let y = fixed(Port::new(p.id.clone(), 0), &charts).unwrap_or_else(|| q(rng.gen_range(0..=bound)));
                sample_trim(rng, c, y.to_integer(), bound)?.into()
            }
            ElementaryKind::CuspedDisk(c) => {
                let tris = disk::triangulations(c);
                let tri = tris.choose(rng).cloned().unwrap_or_default();
                let system: Vec<_> = tri.into_iter().map(|dg| (dg, q(rng.gen_range(0..=bound)))).collect();
                disk::induced_disk(c, &system).into()
            }
            _ => unreachable!("attachments sampled above"),
        };
        charts.insert(p.id.clone(), chart);
    }
    Some(charts)
}

fn sample_trim(rng: &mut ChaCha8Rng, c: usize, y: i64, bound: i64) -> Option<TrimChart> {
    if rng.gen_bool(0.5) {
        // Radial cell: a random composition of y into c parts.
        let mut cuts: Vec<i64> = (0..c - 1).map(|_| rng.gen_range(0..=y)).collect();
        cuts.sort_unstable();
        let mut x = Vec::with_capacity(c);
        let mut prev = 0;
        for cut in cuts {
            x.push(q(cut - prev));
            prev = cut;
        }
        x.push(q(y - prev));
        return Some(TrimChart::new(x, q(y)));
    }
    let zero = rng.gen_range(0..c);
    let x: Vec<Q> = (0..c).map(|i| if i == zero { q(0) } else { q(rng.gen_range(0..=bound)) }).collect();
    (x.iter().copied().sum::<Q>() >= q(y)).then(|| TrimChart::new(x, q(y)))
}

impl From<PantsChart> for PieceChart {
    fn from(c: PantsChart) -> Self {
        PieceChart::Pants(c)
    }
}
impl From<ConnectorChart> for PieceChart {
    fn from(c: ConnectorChart) -> Self {
        PieceChart::Connector(c)
    }
}
impl From<TrimChart> for PieceChart {
    fn from(c: TrimChart) -> Self {
        PieceChart::Trim(c)
    }
}
impl From<TEmptyChart> for PieceChart {
    fn from(c: TEmptyChart) -> Self {
        PieceChart::TEmpty(c)
    }
}
impl From<DiskChart> for PieceChart {
    fn from(c: DiskChart) -> Self {
        PieceChart::Disk(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ElementaryKind::*;

    fn two_pants() -> Decomposition {
        Decomposition::new(
            vec![("p", Pants), ("q", Connector), ("r", Pants)],
            vec![(Port::new("p", 0), Port::new("q", 0)), (Port::new("q", 1), Port::new("r", 0))],
        )
    }

    #[test]
    fn dimension_of_connected_pants() {
        let r = dimension(&two_pants()).unwrap();
        assert_eq!((r.n_free, r.n_plus), (2, 4));
        assert_eq!(surviving_parameters(&r.bookkeeping), (2, 4));
        assert_eq!(r.sphere_dim, Some(1));
    }

    #[test]
    fn gluing_mismatch_names_ports() {
        let d = two_pants();
        let mut charts = BTreeMap::new();
        charts.insert("p".into(), PantsChart::new([q(3), q(1), q(1)]).into());
        charts.insert("q".into(), ConnectorChart::new(1, q(0), q(2)).into());
        charts.insert("r".into(), PantsChart::new([q(2), q(1), q(1)]).into());
        match assemble(&d, &charts) {
            Err(CoordError::GluingMismatch(m)) => assert!(m[0].contains("p#0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_coords_assemble_and_are_deterministic() {
        let d = two_pants();
        let a = random_coords(&d, 7, 5).unwrap();
        assert_eq!(a, random_coords(&d, 7, 5).unwrap());
        assert_eq!(a.boundary.len(), 4);
    }

    #[test]
    fn projectivized_norm_is_one() {
        let c = random_coords(&two_pants(), 3, 6).unwrap();
        if c.norm() != q(0) {
            assert_eq!(projectivize(&c).unwrap().norm(), q(1));
        }
    }

    #[test]
    fn annulus_is_out_of_hypothesis() {
        let d = Decomposition::new(vec![("q", Connector)], vec![]);
        assert!(matches!(dimension(&d), Err(CoordError::OutOfHypothesis(_))));
    }
}
