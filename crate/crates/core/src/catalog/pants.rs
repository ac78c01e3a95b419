//! The pair of pants with all three boundary circles in `α`.

use serde::{Deserialize, Serialize};

use crate::rational::{q, qf, Q};

/// Essential arc types in the pants, boundary circles numbered `0..3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PantsArc {
    /// Joins two distinct boundary circles, `i < j`.
    Cross(usize, usize),
    /// Both ends on circle `i`, separating the other two circles.
    Loop(usize),
}

impl PantsArc {
    pub fn all() -> [PantsArc; 6] {
        [
            PantsArc::Cross(0, 1),
            PantsArc::Cross(0, 2),
            PantsArc::Cross(1, 2),
            PantsArc::Loop(0),
            PantsArc::Loop(1),
            PantsArc::Loop(2),
        ]
    }

    pub fn cross(i: usize, j: usize) -> PantsArc {
        PantsArc::Cross(i.min(j), i.max(j))
    }

    /// Endpoints on each boundary circle.
    pub fn endpoint_counts(&self) -> [usize; 3] {
        let mut y = [0; 3];
        match *self {
            PantsArc::Cross(i, j) => {
                y[i] += 1;
                y[j] += 1;
            }
            PantsArc::Loop(i) => y[i] += 2,
        }
        y
    }

    /// Minimal intersection number of the two arc types.
    pub fn intersection(&self, other: &PantsArc) -> usize {
        match (*self, *other) {
            (PantsArc::Loop(i), PantsArc::Loop(j)) if i != j => 2,
            (PantsArc::Loop(k), PantsArc::Cross(i, j)) | (PantsArc::Cross(i, j), PantsArc::Loop(k))
                if k != i && k != j =>
            {
                1
            }
            _ => 0,
        }
    }

    pub fn compatible(&self, other: &PantsArc) -> bool {
        self.intersection(other) == 0
    }

    pub fn label(&self) -> String {
        match *self {
            PantsArc::Cross(i, j) => format!("a{}{}", i + 1, j + 1),
            PantsArc::Loop(i) => format!("a{}{}", i + 1, i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsChart {
    #[serde(with = "crate::rational::q_vec")]
    pub y: Vec<Q>,
}

/// Closed top cells of the pants chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PantsCell {
    /// Triangle inequalities hold; only crossing arcs occur.
    Central,
    /// `y_i ≥ y_j + y_k`; loops around circle `i` occur.
    Corner(usize),
}

impl std::fmt::Display for PantsCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PantsCell::Central => write!(f, "central"),
            PantsCell::Corner(i) => write!(f, "corner{}", i + 1),
        }
    }
}

impl PantsChart {
    pub fn new(y: [Q; 3]) -> Self {
        PantsChart { y: y.to_vec() }
    }

    fn others(i: usize) -> (usize, usize) {
        match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    /// The arc weights of the curve system with these boundary weights.
    pub fn arc_weights(&self) -> Vec<(PantsArc, Q)> {
        let y = &self.y;
        let cell = membership_pants(self).expect("nonnegative pants chart");
        let mut out = Vec::new();
        match cell[0] {
            PantsCell::Central => {
                for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                    out.push((PantsArc::Cross(i, j), (y[i] + y[j] - y[k]) * qf(1, 2)));
                }
            }
            PantsCell::Corner(i) => {
                let (j, k) = Self::others(i);
                out.push((PantsArc::cross(i, j), y[j]));
                out.push((PantsArc::cross(i, k), y[k]));
                out.push((PantsArc::Loop(i), (y[i] - y[j] - y[k]) * qf(1, 2)));
            }
        }
        out.retain(|(_, w)| *w != q(0));
        out.sort();
        out
    }
}

/// All closed cells containing the point, central first. Empty if some
/// weight is negative.
pub fn membership_pants(chart: &PantsChart) -> Option<Vec<PantsCell>> {
    let y = &chart.y;
    if y.len() != 3 || y.iter().any(|v| *v < q(0)) {
        return None;
    }
    let mut cells = Vec::new();
    if (0..3).all(|i| {
        let (j, k) = PantsChart::others(i);
        y[i] <= y[j] + y[k]
    }) {
        cells.push(PantsCell::Central);
    }
    for i in 0..3 {
        let (j, k) = PantsChart::others(i);
        if y[i] >= y[j] + y[k] {
            cells.push(PantsCell::Corner(i));
        }
    }
    Some(cells)
}

/// Boundary weights induced by a weighted arc system.
pub fn induced_pants(system: &[(PantsArc, Q)]) -> PantsChart {
    let mut y = [q(0); 3];
    for (arc, w) in system {
        let counts = arc.endpoint_counts();
        for i in 0..3 {
            y[i] += q(counts[i] as i64) * *w;
        }
    }
    PantsChart::new(y)
}
