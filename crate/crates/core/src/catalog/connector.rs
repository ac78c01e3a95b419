//! The connector annulus, both boundary circles in `α`, and the empty trim
//! annulus, one circle in `α` and one in `δ`.

use serde::{Deserialize, Serialize};

use crate::rational::{abs, q, Q};

/// Chart point on one of the two connector tracks. Chart 1 twists in the
/// positive sense, chart 2 in the negative sense; `y` is the number of
/// strands crossing the connector, `t` the twisting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorChart {
    pub chart: u8,
    #[serde(with = "crate::rational::q_string")]
    pub t: Q,
    #[serde(with = "crate::rational::q_string")]
    pub y: Q,
}

impl ConnectorChart {
    pub fn new(chart: u8, t: Q, y: Q) -> Self {
        ConnectorChart { chart, t, y }
    }

    /// Builds the chart point from a signed twist.
    pub fn from_signed(twist: Q, y: Q) -> Self {
        if twist < q(0) {
            ConnectorChart::new(2, -twist, y)
        } else {
            ConnectorChart::new(1, twist, y)
        }
    }

    pub fn is_valid(&self) -> bool {
        (self.chart == 1 || self.chart == 2) && self.t >= q(0) && self.y >= q(0)
    }

    /// `+t` on chart 1 and `−t` on chart 2.
    pub fn signed_twist(&self) -> Q {
        if self.chart == 2 {
            -self.t
        } else {
            self.t
        }
    }

    /// Point of the plane. Each quadrant maps to a closed half-plane by
    /// `(t, y) ↦ (t − y, ±min(t, y))`, so the two `t` axes and the two `y`
    /// axes land on the same rays.
    pub fn plane_point(&self) -> (Q, Q) {
        let v = std::cmp::min(self.t, self.y);
        let v = if self.chart == 2 { -v } else { v };
        (self.t - self.y, v)
    }

    /// Inverse of [`ConnectorChart::plane_point`]; points on the horizontal
    /// axis are reported on chart 1.
    pub fn from_plane_point(u: Q, v: Q) -> Self {
        let chart = if v < q(0) { 2 } else { 1 };
        let m = abs(v);
        let (t, y) = if u >= q(0) { (u + m, m) } else { (m, m - u) };
        ConnectorChart { chart, t, y }
    }

    /// Canonical representative: charts agree on both axes, so those points
    /// are reported on chart 1.
    pub fn canonical(&self) -> Self {
        let (u, v) = self.plane_point();
        Self::from_plane_point(u, v)
    }
}

/// Chart point of the empty trim annulus: the signed spiral weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TEmptyChart {
    #[serde(with = "crate::rational::q_string")]
    pub s: Q,
}

impl TEmptyChart {
    pub fn new(s: Q) -> Self {
        TEmptyChart { s }
    }

    /// Weight induced on the α-circle.
    pub fn boundary_weight(&self) -> Q {
        abs(self.s)
    }

    /// `+1` for the positive spiral sense, `−1` for the negative, `0` if empty.
    pub fn sense(&self) -> i8 {
        if self.s > q(0) {
            1
        } else if self.s < q(0) {
            -1
        } else {
            0
        }
    }
}
