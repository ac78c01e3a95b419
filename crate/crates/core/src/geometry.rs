//! Surface pairs, their cusped equivalents, elementary pieces and
//! decompositions into elementary pieces.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::rational::{q, qf, Q};

/// One labeled segment of a boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Segment {
    AlphaArc,
    DeltaArc,
    AlphaCircle,
    DeltaCircle,
}

/// A boundary circle: either a whole α- or δ-circle, or an alternating
/// circular sequence of α-arcs and δ-arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryComponent(Vec<Segment>);

impl BoundaryComponent {
    pub fn alpha_circle() -> Self {
        BoundaryComponent(vec![Segment::AlphaCircle])
    }

    pub fn delta_circle() -> Self {
        BoundaryComponent(vec![Segment::DeltaCircle])
    }

    /// A circle carrying `c ≥ 1` α-arcs separated by δ-arcs.
    pub fn with_arcs(c: usize) -> Self {
        assert!(c >= 1, "use delta_circle for a circle without arcs");
        let mut segs = Vec::with_capacity(2 * c);
        for _ in 0..c {
            segs.push(Segment::AlphaArc);
            segs.push(Segment::DeltaArc);
        }
        BoundaryComponent(segs)
    }

    pub fn from_segments(segments: Vec<Segment>) -> Result<Self, StructureError> {
        let bad = |m: &str| Err(StructureError::BadBoundary(m.to_string()));
        if segments.is_empty() {
            return bad("empty boundary component");
        }
        let whole = |s: &Segment| matches!(s, Segment::AlphaCircle | Segment::DeltaCircle);
        if segments.iter().any(whole) {
            if segments.len() != 1 {
                return bad("a whole α- or δ-circle carries no arcs");
            }
            return Ok(BoundaryComponent(segments));
        }
        if segments.len() % 2 != 0 {
            return bad("α-arcs and δ-arcs must alternate around the circle");
        }
        let n = segments.len();
        for i in 0..n {
            if segments[i] == segments[(i + 1) % n] {
                return bad("α-arcs and δ-arcs must alternate around the circle");
            }
        }
        Ok(BoundaryComponent(segments))
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn alpha_arcs(&self) -> usize {
        self.0.iter().filter(|s| **s == Segment::AlphaArc).count()
    }

    pub fn is_alpha_circle(&self) -> bool {
        self.0 == [Segment::AlphaCircle]
    }

    pub fn is_delta_circle(&self) -> bool {
        self.0 == [Segment::DeltaCircle]
    }
}

/// A compact oriented surface with its boundary partitioned into α and δ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePair {
    genus: u32,
    boundary: Vec<BoundaryComponent>,
    /// Number of α-arcs.
    c: usize,
    /// Number of α-circles.
    b: usize,
}

impl SurfacePair {
    pub fn new(genus: u32, boundary: Vec<BoundaryComponent>) -> Self {
        let c = boundary.iter().map(BoundaryComponent::alpha_arcs).sum();
        let b = boundary.iter().filter(|bc| bc.is_alpha_circle()).count();
        SurfacePair { genus, boundary, c, b }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    pub fn alpha_arcs(&self) -> usize {
        self.c
    }

    pub fn alpha_circles(&self) -> usize {
        self.b
    }

    /// Ordinary Euler characteristic `2 − 2g − #boundary`.
    pub fn chi(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    /// Geometric Euler characteristic `χ − c/2`.
    pub fn chi_g(&self) -> Q {
        q(self.chi()) - qf(self.c as i64, 2)
    }

    /// Collapse α-arcs to boundary cusps and α-circles to interior cusps.
    pub fn to_cusped(&self) -> CuspedSurface {
        CuspedSurface {
            genus: self.genus,
            boundary_circles: (self.boundary.len() - self.b) as u32,
            interior_cusps: self.b as u32,
            boundary_cusps: self.c as u32,
        }
    }
}

/// Free-standing geometric Euler characteristic (`χ_g` of a surface pair).
pub fn chi_g(pair: &SurfacePair) -> Q {
    pair.chi_g()
}

/// A surface with finitely many interior cusps `b` and boundary cusps `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuspedSurface {
    pub genus: u32,
    pub boundary_circles: u32,
    pub interior_cusps: u32,
    pub boundary_cusps: u32,
}

impl CuspedSurface {
    pub fn chi(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_circles as i64
    }

    /// `χ(Ṡ) − c/2 − b`.
    pub fn chi_g(&self) -> Q {
        q(self.chi()) - qf(self.boundary_cusps as i64, 2) - q(self.interior_cusps as i64)
    }
}

pub fn chi_g_cusped(s: &CuspedSurface) -> Q {
    s.chi_g()
}

/// The elementary surface pairs out of which decompositions are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementaryKind {
    /// Pair of pants with all three boundary circles in α.
    Pants,
    /// Annulus with both boundary circles in α.
    Connector,
    /// Annulus with one α-circle and `c ≥ 1` α-arcs on the other circle.
    TrimAnnulus(usize),
    /// Annulus with one α-circle and one δ-circle.
    TrimAnnulusEmpty,
    /// Disk with `c` α-arcs on its boundary.
    CuspedDisk(usize),
    NonElementary,
}

impl ElementaryKind {
    /// Number of gluable α-circle ports.
    pub fn port_count(&self) -> usize {
        match self {
            ElementaryKind::Pants => 3,
            ElementaryKind::Connector => 2,
            ElementaryKind::TrimAnnulus(_) | ElementaryKind::TrimAnnulusEmpty => 1,
            ElementaryKind::CuspedDisk(_) | ElementaryKind::NonElementary => 0,
        }
    }

    /// α-arcs carried by the piece.
    pub fn alpha_arcs(&self) -> usize {
        match self {
            ElementaryKind::TrimAnnulus(c) | ElementaryKind::CuspedDisk(c) => *c,
            _ => 0,
        }
    }

    pub fn chi(&self) -> i64 {
        match self {
            ElementaryKind::Pants => -1,
            ElementaryKind::CuspedDisk(_) => 1,
            _ => 0,
        }
    }

    /// Boundary circles of the piece that are never glued (δ-circles and
    /// circles carrying α-arcs).
    pub fn fixed_boundary(&self) -> usize {
        match self {
            ElementaryKind::TrimAnnulus(_) | ElementaryKind::TrimAnnulusEmpty | ElementaryKind::CuspedDisk(_) => 1,
            _ => 0,
        }
    }

    /// Canonical surface pair of this kind (ports first, in port order).
    pub fn canonical_pair(&self) -> Option<SurfacePair> {
        use BoundaryComponent as B;
        let pair = match *self {
            ElementaryKind::Pants => SurfacePair::new(0, vec![B::alpha_circle(); 3]),
            ElementaryKind::Connector => SurfacePair::new(0, vec![B::alpha_circle(); 2]),
            ElementaryKind::TrimAnnulus(c) if c >= 1 => SurfacePair::new(0, vec![B::alpha_circle(), B::with_arcs(c)]),
            ElementaryKind::TrimAnnulusEmpty => SurfacePair::new(0, vec![B::alpha_circle(), B::delta_circle()]),
            ElementaryKind::CuspedDisk(0) => SurfacePair::new(0, vec![B::delta_circle()]),
            ElementaryKind::CuspedDisk(c) => SurfacePair::new(0, vec![B::with_arcs(c)]),
            _ => return None,
        };
        Some(pair)
    }

    /// Connectors and empty trim annuli attach to pants and trim annuli; their
    /// ports carry the parameter that fixes the shared boundary weight.
    pub fn is_attachment(&self) -> bool {
        matches!(self, ElementaryKind::Connector | ElementaryKind::TrimAnnulusEmpty)
    }

    /// Short tag used in the decomposition JSON schema.
    pub fn tag(&self) -> &'static str {
        match self {
            ElementaryKind::Pants => "P",
            ElementaryKind::Connector => "Q",
            ElementaryKind::TrimAnnulus(_) => "Tc",
            ElementaryKind::TrimAnnulusEmpty => "Tempty",
            ElementaryKind::CuspedDisk(_) => "Dc",
            ElementaryKind::NonElementary => "none",
        }
    }
}

/// Total, mutually exclusive classification of a surface pair.
pub fn classify_elementary(pair: &SurfacePair) -> ElementaryKind {
    if pair.genus() != 0 {
        return ElementaryKind::NonElementary;
    }
    let bs = pair.boundary();
    match bs.len() {
        1 => {
            let only = &bs[0];
            if only.is_alpha_circle() {
                ElementaryKind::NonElementary
            } else if only.is_delta_circle() {
                ElementaryKind::CuspedDisk(0)
            } else {
                ElementaryKind::CuspedDisk(only.alpha_arcs())
            }
        }
        2 => {
            let alpha = bs.iter().filter(|b| b.is_alpha_circle()).count();
            match alpha {
                2 => ElementaryKind::Connector,
                1 => {
                    let other = bs.iter().find(|b| !b.is_alpha_circle()).expect("one non-α circle");
                    if other.is_delta_circle() {
                        ElementaryKind::TrimAnnulusEmpty
                    } else {
                        ElementaryKind::TrimAnnulus(other.alpha_arcs())
                    }
                }
                _ => ElementaryKind::NonElementary,
            }
        }
        3 if bs.iter().all(BoundaryComponent::is_alpha_circle) => ElementaryKind::Pants,
        _ => ElementaryKind::NonElementary,
    }
}

/// A port: one gluable α-circle of one piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Port {
    pub piece: String,
    pub index: usize,
}

impl Port {
    pub fn new(piece: impl Into<String>, index: usize) -> Self {
        Port { piece: piece.into(), index }
    }
}

impl std::fmt::Display for Port {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}#{}", self.piece, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub id: String,
    pub kind: ElementaryKind,
}

/// Elementary pieces glued pairwise along α-circle ports.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<(Port, Port)>,
    /// When set, validation also requires the assembled pair to be connected.
    #[serde(default)]
    pub require_connected: bool,
}

/// Piece-type tallies used by the bookkeeping identity `2m + ℓ = 3k + r − b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceCounts {
    /// Pants.
    pub k: usize,
    /// Empty trim annuli.
    pub l: usize,
    /// Trim annuli with arcs.
    pub r: usize,
    /// Connectors.
    pub m: usize,
    /// Cusped disks.
    pub d: usize,
    /// Unglued α-circle ports.
    pub b: usize,
    /// α-arcs in total.
    pub c: usize,
}

impl PieceCounts {
    pub fn identity_holds(&self) -> bool {
        (2 * self.m + self.l) as i64 == (3 * self.k + self.r) as i64 - self.b as i64
    }
}

/// Derived invariants of the assembled pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    pub chi: i64,
    pub b: usize,
    pub c: usize,
    #[serde(with = "crate::rational::q_string")]
    pub chi_g: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
    pub derived: Derived,
    /// Piece ids per connected component, lexicographically ordered.
    pub components: Vec<Vec<String>>,
}

impl Decomposition {
    pub fn new(pieces: Vec<(impl Into<String>, ElementaryKind)>, gluings: Vec<(Port, Port)>) -> Self {
        Decomposition {
            pieces: pieces.into_iter().map(|(id, kind)| Piece { id: id.into(), kind }).collect(),
            gluings,
            require_connected: false,
        }
    }

    pub fn connected(mut self) -> Self {
        self.require_connected = true;
        self
    }

    pub fn piece(&self, id: &str) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.id == id)
    }

    pub fn kind(&self, id: &str) -> Option<ElementaryKind> {
        self.piece(id).map(|p| p.kind)
    }

    /// Structural checks: ids unique, kinds elementary, ports exist.
    pub fn check_structure(&self) -> Result<(), StructureError> {
        let mut seen = BTreeSet::new();
        for p in &self.pieces {
            if !seen.insert(p.id.as_str()) {
                return Err(StructureError::DuplicatePiece(p.id.clone()));
            }
            match p.kind {
                ElementaryKind::NonElementary => {
                    return Err(StructureError::BadKind(p.id.clone(), "non-elementary".into()))
                }
                ElementaryKind::TrimAnnulus(0) => {
                    return Err(StructureError::BadKind(p.id.clone(), "Tc needs c ≥ 1".into()))
                }
                _ => {}
            }
        }
        for (a, b) in &self.gluings {
            for port in [a, b] {
                let kind = self.kind(&port.piece).ok_or_else(|| StructureError::UnknownPiece(port.piece.clone()))?;
                if port.index >= kind.port_count() {
                    return Err(StructureError::DanglingPort { piece: port.piece.clone(), port: port.index });
                }
            }
        }
        Ok(())
    }

    /// Every port in canonical (piece-id, index) order.
    pub fn all_ports(&self) -> Vec<Port> {
        let mut ports: Vec<Port> = self
            .pieces
            .iter()
            .flat_map(|p| (0..p.kind.port_count()).map(move |i| Port::new(p.id.clone(), i)))
            .collect();
        ports.sort();
        ports
    }

    /// Partner of each glued port (assumes a valid decomposition; on a
    /// doubly glued port the first gluing wins).
    pub fn partners(&self) -> BTreeMap<Port, Port> {
        let mut map = BTreeMap::new();
        for (a, b) in &self.gluings {
            map.entry(a.clone()).or_insert_with(|| b.clone());
            map.entry(b.clone()).or_insert_with(|| a.clone());
        }
        map
    }

    pub fn unglued_ports(&self) -> Vec<Port> {
        let partners = self.partners();
        self.all_ports().into_iter().filter(|p| !partners.contains_key(p)).collect()
    }

    pub fn counts(&self) -> PieceCounts {
        let mut counts = PieceCounts::default();
        for p in &self.pieces {
            match p.kind {
                ElementaryKind::Pants => counts.k += 1,
                ElementaryKind::Connector => counts.m += 1,
                ElementaryKind::TrimAnnulus(c) => {
                    counts.r += 1;
                    counts.c += c;
                }
                ElementaryKind::TrimAnnulusEmpty => counts.l += 1,
                ElementaryKind::CuspedDisk(c) => {
                    counts.d += 1;
                    counts.c += c;
                }
                ElementaryKind::NonElementary => {}
            }
        }
        counts.b = self.unglued_ports().len();
        counts
    }

    pub fn chi(&self) -> i64 {
        self.pieces.iter().map(|p| p.kind.chi()).sum()
    }

    pub fn derived(&self) -> Derived {
        let counts = self.counts();
        let chi = self.chi();
        Derived { chi, b: counts.b, c: counts.c, chi_g: q(chi) - qf(counts.c as i64, 2) }
    }

    /// Connected components as sorted lists of piece ids, ordered by their
    /// smallest id.
    pub fn components(&self) -> Vec<Vec<String>> {
        let ids: Vec<&str> = self.pieces.iter().map(|p| p.id.as_str()).collect();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for (a, b) in &self.gluings {
            if let (Some(&ia), Some(&ib)) = (index.get(a.piece.as_str()), index.get(b.piece.as_str())) {
                let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for i in 0..ids.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(ids[i].to_string());
        }
        let mut comps: Vec<Vec<String>> = groups
            .into_values()
            .map(|mut v| {
                v.sort();
                v
            })
            .collect();
        comps.sort();
        comps
    }

    /// Restriction to the pieces of one component.
    pub fn restrict(&self, piece_ids: &[String]) -> Decomposition {
        let keep: BTreeSet<&str> = piece_ids.iter().map(String::as_str).collect();
        Decomposition {
            pieces: self.pieces.iter().filter(|p| keep.contains(p.id.as_str())).cloned().collect(),
            gluings: self.gluings.iter().filter(|(a, _)| keep.contains(a.piece.as_str())).cloned().collect(),
            require_connected: self.require_connected,
        }
    }

    /// The assembled surface pair of a connected decomposition. Gluing along
    /// whole circles adds Euler characteristics, so the genus follows from
    /// `χ = 2 − 2g − #boundary`.
    pub fn assembled_pair(&self) -> Option<SurfacePair> {
        if self.components().len() != 1 {
            return None;
        }
        let mut boundary = Vec::new();
        for _ in self.unglued_ports() {
            boundary.push(BoundaryComponent::alpha_circle());
        }
        for p in &self.pieces {
            match p.kind {
                ElementaryKind::TrimAnnulus(c) => boundary.push(BoundaryComponent::with_arcs(c)),
                ElementaryKind::TrimAnnulusEmpty => boundary.push(BoundaryComponent::delta_circle()),
                ElementaryKind::CuspedDisk(0) => boundary.push(BoundaryComponent::delta_circle()),
                ElementaryKind::CuspedDisk(c) => boundary.push(BoundaryComponent::with_arcs(c)),
                _ => {}
            }
        }
        let twice_genus = 2 - self.chi() - boundary.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return None;
        }
        Some(SurfacePair::new((twice_genus / 2) as u32, boundary))
    }
}

/// Checks every decomposition invariant and reports all violations.
///
/// Structural defects (unknown pieces, missing ports) are hard errors.
pub fn validate_decomposition(d: &Decomposition) -> Result<ValidationReport, StructureError> {
    d.check_structure()?;
    let mut violations = Vec::new();

    let mut uses: BTreeMap<Port, usize> = BTreeMap::new();
    for (a, b) in &d.gluings {
        if a == b {
            violations.push(format!("port {a} is glued to itself"));
        }
        *uses.entry(a.clone()).or_default() += 1;
        *uses.entry(b.clone()).or_default() += 1;
    }
    for (port, n) in &uses {
        if *n > 1 {
            violations.push(format!("port {port} is glued {n} times"));
        }
    }

    let mut adjacency: Vec<String> = Vec::new();
    for (a, b) in &d.gluings {
        let ka = d.kind(&a.piece).expect("checked");
        let kb = d.kind(&b.piece).expect("checked");
        let pair = [ka, kb];
        if pair.contains(&ElementaryKind::Connector) && pair.contains(&ElementaryKind::TrimAnnulusEmpty) {
            adjacency.push(format!("connector adjacent to an empty trim annulus at {a} ~ {b}"));
        } else if ka.is_attachment() == kb.is_attachment() {
            adjacency.push(format!(
                "gluing {a} ~ {b} must join a connector or empty trim annulus to a pants or trim annulus"
            ));
        }
    }
    adjacency.sort();
    violations.extend(adjacency);

    let counts = d.counts();
    if !counts.identity_holds() {
        violations.push(format!(
            "bookkeeping identity fails: 2m+l = {} but 3k+r-b = {}",
            2 * counts.m + counts.l,
            (3 * counts.k + counts.r) as i64 - counts.b as i64
        ));
    }

    let components = d.components();
    if d.require_connected && components.len() != 1 {
        violations.push(format!("assembled pair is disconnected ({} components)", components.len()));
    }
    for comp in &components {
        let sub = d.restrict(comp);
        let derived = sub.derived();
        if derived.chi_g >= q(0) {
            violations.push(format!(
                "component [{}] has chi_g = {} >= 0",
                comp.join(","),
                crate::rational::fmt_q(&derived.chi_g)
            ));
        }
    }

    Ok(ValidationReport { ok: violations.is_empty(), violations, derived: d.derived(), components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pants() -> SurfacePair {
        ElementaryKind::Pants.canonical_pair().unwrap()
    }

    #[test]
    fn chi_g_examples() {
        assert_eq!(pants().chi_g(), q(-1));
        let digon = SurfacePair::new(0, vec![BoundaryComponent::with_arcs(2)]);
        assert_eq!(digon.chi_g(), q(0));
        let t3 = ElementaryKind::TrimAnnulus(3).canonical_pair().unwrap();
        assert_eq!(t3.chi_g(), qf(-3, 2));
    }

    #[test]
    fn cusped_examples() {
        let collapsed = CuspedSurface { genus: 0, boundary_circles: 0, interior_cusps: 3, boundary_cusps: 0 };
        assert_eq!(collapsed.chi_g(), q(-1));
        let monogon = CuspedSurface { genus: 0, boundary_circles: 1, interior_cusps: 0, boundary_cusps: 1 };
        assert_eq!(monogon.chi_g(), qf(1, 2));
        let d4 = CuspedSurface { genus: 0, boundary_circles: 1, interior_cusps: 0, boundary_cusps: 4 };
        assert_eq!(d4.chi_g(), q(-1));
    }

    #[test]
    fn cusped_agrees_with_pair() {
        for kind in [
            ElementaryKind::Pants,
            ElementaryKind::Connector,
            ElementaryKind::TrimAnnulus(4),
            ElementaryKind::TrimAnnulusEmpty,
            ElementaryKind::CuspedDisk(5),
        ] {
            let pair = kind.canonical_pair().unwrap();
            assert_eq!(pair.chi_g(), pair.to_cusped().chi_g(), "{kind:?}");
        }
    }

    #[test]
    fn classification_examples() {
        use BoundaryComponent as B;
        let te = SurfacePair::new(0, vec![B::alpha_circle(), B::delta_circle()]);
        assert_eq!(classify_elementary(&te), ElementaryKind::TrimAnnulusEmpty);
        let qq = SurfacePair::new(0, vec![B::alpha_circle(), B::alpha_circle()]);
        assert_eq!(classify_elementary(&qq), ElementaryKind::Connector);
        let torus = SurfacePair::new(1, vec![B::alpha_circle()]);
        assert_eq!(classify_elementary(&torus), ElementaryKind::NonElementary);
        let two_delta = SurfacePair::new(0, vec![B::delta_circle(), B::delta_circle()]);
        assert_eq!(classify_elementary(&two_delta), ElementaryKind::NonElementary);
    }

    #[test]
    fn classification_round_trips_canonical_pairs() {
        for kind in [
            ElementaryKind::Pants,
            ElementaryKind::Connector,
            ElementaryKind::TrimAnnulus(1),
            ElementaryKind::TrimAnnulus(6),
            ElementaryKind::TrimAnnulusEmpty,
            ElementaryKind::CuspedDisk(0),
            ElementaryKind::CuspedDisk(7),
        ] {
            let pair = kind.canonical_pair().unwrap();
            assert_eq!(classify_elementary(&pair), kind);
        }
    }

    #[test]
    fn boundary_alternation_enforced() {
        use Segment::*;
        assert!(BoundaryComponent::from_segments(vec![AlphaArc, AlphaArc]).is_err());
        assert!(BoundaryComponent::from_segments(vec![AlphaArc, DeltaArc, AlphaArc]).is_err());
        assert!(BoundaryComponent::from_segments(vec![AlphaCircle, AlphaArc]).is_err());
        assert!(BoundaryComponent::from_segments(vec![DeltaArc, AlphaArc]).is_ok());
    }

    #[test]
    fn single_pants_is_valid() {
        let d = Decomposition::new(vec![("p", ElementaryKind::Pants)], vec![]);
        let report = validate_decomposition(&d).unwrap();
        assert!(report.ok, "{:?}", report.violations);
        assert_eq!(report.derived.chi, -1);
        assert_eq!(report.derived.b, 3);
        assert_eq!(report.derived.c, 0);
    }

    #[test]
    fn two_pants_and_connector() {
        let d = Decomposition::new(
            vec![("p1", ElementaryKind::Pants), ("p2", ElementaryKind::Pants), ("q", ElementaryKind::Connector)],
            vec![(Port::new("p1", 0), Port::new("q", 0)), (Port::new("p2", 0), Port::new("q", 1))],
        );
        let report = validate_decomposition(&d).unwrap();
        assert!(report.ok, "{:?}", report.violations);
        assert_eq!(report.derived.b, 4);
        let counts = d.counts();
        assert_eq!(2 * counts.m + counts.l, 2);
        assert!(counts.identity_holds());
        let pair = d.assembled_pair().unwrap();
        assert_eq!((pair.genus(), pair.boundary().len()), (0, 4));
    }

    #[test]
    fn connector_next_to_empty_trim_is_rejected() {
        let d = Decomposition::new(
            vec![("t", ElementaryKind::TrimAnnulusEmpty), ("q", ElementaryKind::Connector)],
            vec![(Port::new("t", 0), Port::new("q", 0))],
        );
        let report = validate_decomposition(&d).unwrap();
        assert!(!report.ok);
        assert!(report.violations.iter().any(|v| v.contains("connector adjacent")));
    }

    #[test]
    fn dangling_port_is_hard_error() {
        let d =
            Decomposition::new(vec![("p", ElementaryKind::Pants)], vec![(Port::new("p", 0), Port::new("ghost", 0))]);
        assert_eq!(validate_decomposition(&d), Err(StructureError::UnknownPiece("ghost".into())));
        let d = Decomposition::new(vec![("p", ElementaryKind::Pants)], vec![(Port::new("p", 0), Port::new("p", 5))]);
        assert!(matches!(validate_decomposition(&d), Err(StructureError::DanglingPort { .. })));
    }

    #[test]
    fn one_holed_torus_genus() {
        let d = Decomposition::new(
            vec![("p", ElementaryKind::Pants), ("q", ElementaryKind::Connector)],
            vec![(Port::new("p", 0), Port::new("q", 0)), (Port::new("p", 1), Port::new("q", 1))],
        );
        let report = validate_decomposition(&d).unwrap();
        assert!(report.ok, "{:?}", report.violations);
        let pair = d.assembled_pair().unwrap();
        assert_eq!((pair.genus(), pair.boundary().len()), (1, 1));
    }
}
