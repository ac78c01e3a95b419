//! The trim annulus `T_c`: an annulus whose inner circle lies in `α` and
//! whose outer circle carries `c` arcs of `α`, numbered counter-clockwise.

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::rational::{q, Q};

/// Essential arc types in `T_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrimArc {
    /// From the inner α-circle to `α_i`.
    Radial(usize),
    /// From `α_start` counter-clockwise to `α_{start+span}`, cutting off the
    /// arcs strictly between them. `span` runs over `2..=c`; `span == c`
    /// returns to the starting arc.
    Outer { start: usize, span: usize },
}

impl TrimArc {
    /// All `c²` arc types.
    pub fn all(c: usize) -> Vec<TrimArc> {
        let mut out: Vec<TrimArc> = (0..c).map(TrimArc::Radial).collect();
        for start in 0..c {
            for span in 2..=c {
                out.push(TrimArc::Outer { start, span });
            }
        }
        out
    }

    /// Number of endpoints on each `α_i` and on the inner circle.
    pub fn endpoint_counts(&self, c: usize) -> (Vec<usize>, usize) {
        let mut x = vec![0; c];
        match *self {
            TrimArc::Radial(i) => {
                x[i] += 1;
                (x, 1)
            }
            TrimArc::Outer { start, span } => {
                x[start] += 1;
                x[(start + span) % c] += 1;
                (x, 0)
            }
        }
    }

    /// Canonical boundary positions on a circle of length `c`, where `α_j`
    /// occupies `[j, j + 1/2]`. Longer outer arcs start earlier and end later,
    /// so nested arcs never cross inside a single `α_j`.
    pub(crate) fn positions(&self, c: usize) -> (f64, f64) {
        let cf = c as f64;
        match *self {
            TrimArc::Radial(i) => (i as f64 + 0.25, i as f64 + 0.25),
            TrimArc::Outer { start, span } => {
                let d = 0.25 * span as f64 / (cf + 1.0);
                let s = start as f64 + 0.5 - d;
                let e = (start + span) as f64 + d;
                (s, e)
            }
        }
    }

    /// Whether the two arc types have disjoint representatives: outer arcs
    /// must cut off nested or disjoint intervals, and a radial must land
    /// outside every interval cut off by an outer arc.
    pub fn compatible(&self, other: &TrimArc, c: usize) -> bool {
        match (self, other) {
            (TrimArc::Radial(_), TrimArc::Radial(_)) => true,
            (TrimArc::Radial(_), TrimArc::Outer { .. }) => other.compatible(self, c),
            (TrimArc::Outer { .. }, TrimArc::Radial(_)) => {
                let (s, e) = self.positions(c);
                let (p, _) = other.positions(c);
                !strictly_inside(p, s, e - s, c)
            }
            (TrimArc::Outer { .. }, TrimArc::Outer { .. }) => {
                if self == other {
                    return true;
                }
                let (s1, e1) = self.positions(c);
                let (s2, e2) = other.positions(c);
                laminar(s1, e1 - s1, s2, e2 - s2, c)
            }
        }
    }

    /// Arcs cut off from the core by this arc (empty for radials).
    pub fn enclosed(&self, c: usize) -> Vec<usize> {
        match *self {
            TrimArc::Radial(_) => vec![],
            TrimArc::Outer { start, span } => (1..span).map(|k| (start + k) % c).collect(),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            TrimArc::Radial(i) => format!("rho{}", i + 1),
            TrimArc::Outer { start, span } => format!("outer{}+{}", start + 1, span),
        }
    }
}

fn offset(p: f64, s: f64, c: usize) -> f64 {
    (p - s).rem_euclid(c as f64)
}

fn strictly_inside(p: f64, s: f64, len: f64, c: usize) -> bool {
    let o = offset(p, s, c);
    o > 0.0 && o < len
}

/// Two circular intervals `(s, s + len)` with distinct endpoints are laminar
/// when they are disjoint or nested.
fn laminar(s1: f64, l1: f64, s2: f64, l2: f64, c: usize) -> bool {
    let a = strictly_inside(s2, s1, l1, c);
    let b = strictly_inside(s2 + l2, s1, l1, c);
    if a != b {
        return false;
    }
    if a {
        return offset(s2, s1, c) + l2 < l1;
    }
    let a2 = strictly_inside(s1, s2, l2, c);
    let b2 = strictly_inside(s1 + l1, s2, l2, c);
    if a2 != b2 {
        return false;
    }
    if a2 {
        return offset(s1, s2, c) + l1 < l2;
    }
    true
}

/// Chart point of `T_c`: weights `x` on the α-arcs and `y` on the α-circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimChart {
    #[serde(with = "crate::rational::q_vec")]
    pub x: Vec<Q>,
    #[serde(with = "crate::rational::q_string")]
    pub y: Q,
}

/// The defining subsets of the trim chart that contain a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrimCell {
    /// `Σ x_i = y`: only radial arcs occur.
    pub radial: bool,
    /// Indices `i` with `x_i = 0` and `Σ x ≥ y`.
    pub faces: Vec<usize>,
}

impl std::fmt::Display for TrimCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.radial {
            parts.push("radial".to_string());
        }
        parts.extend(self.faces.iter().map(|i| format!("face:{}", i + 1)));
        write!(f, "{}", parts.join("|"))
    }
}

impl TrimChart {
    pub fn new(x: Vec<Q>, y: Q) -> Self {
        TrimChart { x, y }
    }

    pub fn c(&self) -> usize {
        self.x.len()
    }

    fn total(&self) -> Q {
        self.x.iter().copied().sum()
    }

    /// Image in `ℝ₊ × ℝ^{c−1}`: `y` followed by the first `c − 1`
    /// coordinates of `x − (Σx / c)·1`.
    pub fn to_product(&self) -> (Q, Vec<Q>) {
        let c = self.c() as i64;
        let mean = self.total() / q(c);
        let v = self.x.iter().take(self.c().saturating_sub(1)).map(|xi| *xi - mean).collect();
        (self.y, v)
    }

    /// Inverse of [`TrimChart::to_product`].
    pub fn from_product(y: Q, v: &[Q]) -> Self {
        let c = v.len() + 1;
        let last = -v.iter().copied().sum::<Q>();
        let full: Vec<Q> = v.iter().copied().chain(std::iter::once(last)).collect();
        let min = full.iter().copied().min().unwrap_or_else(|| q(0));
        let s = std::cmp::max(y, -q(c as i64) * min);
        let shift = s / q(c as i64);
        TrimChart { x: full.iter().map(|vi| *vi + shift).collect(), y }
    }
}

/// Which defining subsets contain the point; `None` if it lies outside the
/// lamination space of `T_c`.
pub fn membership_trim(chart: &TrimChart) -> Option<TrimCell> {
    let zero = q(0);
    if chart.c() == 0 || chart.y < zero || chart.x.iter().any(|xi| *xi < zero) {
        return None;
    }
    let total = chart.total();
    let radial = total == chart.y;
    let faces: Vec<usize> =
        if total >= chart.y { (0..chart.c()).filter(|&i| chart.x[i] == zero).collect() } else { Vec::new() };
    if radial || !faces.is_empty() {
        Some(TrimCell { radial, faces })
    } else {
        None
    }
}

/// All maximal sets of pairwise compatible arc types, each sorted, in
/// lexicographic order.
pub fn maximal_systems(c: usize) -> Vec<Vec<TrimArc>> {
    let arcs = TrimArc::all(c);
    let n = arcs.len();
    let adj: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && arcs[i].compatible(&arcs[j], c)).collect()).collect();
    let mut out = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut out);
    let mut systems: Vec<Vec<TrimArc>> = out
        .into_iter()
        .map(|clique| {
            let mut s: Vec<TrimArc> = clique.into_iter().map(|i| arcs[i]).collect();
            s.sort();
            s
        })
        .collect();
    systems.sort();
    systems
}

pub(crate) fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p.iter().chain(x.iter()).copied().max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count());
    let candidates: Vec<usize> = match pivot {
        Some(u) => p.iter().copied().filter(|&v| !adj[u][v]).collect(),
        None => p.clone(),
    };
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Chart parameters induced by a weighted system of arcs.
pub fn induced_chart(c: usize, system: &[(TrimArc, Q)]) -> TrimChart {
    let mut x = vec![q(0); c];
    let mut y = q(0);
    for (arc, w) in system {
        let (counts, radial) = arc.endpoint_counts(c);
        for i in 0..c {
            x[i] += q(counts[i] as i64) * *w;
        }
        y += q(radial as i64) * *w;
    }
    TrimChart { x, y }
}

/// Nonnegative weights on one maximal system realizing the chart point,
/// with zero-weight arcs dropped. The first maximal system (in
/// lexicographic order) that works is used.
pub fn reconstruct_trim(chart: &TrimChart) -> Option<Vec<(TrimArc, Q)>> {
    membership_trim(chart)?;
    let c = chart.c();
    for system in maximal_systems(c) {
        let mut a = vec![vec![q(0); system.len()]; c + 1];
        for (j, arc) in system.iter().enumerate() {
            let (counts, radial) = arc.endpoint_counts(c);
            for i in 0..c {
                a[i][j] = q(counts[i] as i64);
            }
            a[c][j] = q(radial as i64);
        }
        let mut b = chart.x.clone();
        b.push(chart.y);
        if let Some(w) = linalg::solve(&a, &b) {
            if w.iter().all(|wi| *wi >= q(0)) {
                return Some(system.into_iter().zip(w).filter(|(_, wi)| *wi != q(0)).collect());
            }
        }
    }
    None
}
