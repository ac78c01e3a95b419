//! Charts for the elementary pieces.

pub mod connector;
pub mod disk;
pub mod pants;
pub mod standard;
pub mod trim;

pub use connector::{ConnectorChart, TEmptyChart};
pub use disk::DiskChart;
pub use pants::{PantsArc, PantsCell, PantsChart};
pub use standard::{standard_tracks, ChartMap, StandardTrack};
pub use trim::{TrimArc, TrimCell, TrimChart};

use serde::{Deserialize, Serialize};

use crate::error::ChartError;
use crate::geometry::ElementaryKind;
use crate::rational::{abs, common_denominator, q, Q};

/// A chart point for one piece of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PieceChart {
    Pants(PantsChart),
    Connector(ConnectorChart),
    Trim(TrimChart),
    TEmpty(TEmptyChart),
    Disk(DiskChart),
}

impl PieceChart {
    /// Parses chart fields for a piece of known kind.
    pub fn from_json(kind: ElementaryKind, value: &serde_json::Value) -> Result<Self, crate::ParseError> {
        let err = |e: serde_json::Error| crate::ParseError::Schema(e.to_string());
        let chart = match kind {
            ElementaryKind::Pants => PieceChart::Pants(serde_json::from_value(value.clone()).map_err(err)?),
            ElementaryKind::Connector => PieceChart::Connector(serde_json::from_value(value.clone()).map_err(err)?),
            ElementaryKind::TrimAnnulus(_) => PieceChart::Trim(serde_json::from_value(value.clone()).map_err(err)?),
            ElementaryKind::TrimAnnulusEmpty => PieceChart::TEmpty(serde_json::from_value(value.clone()).map_err(err)?),
            ElementaryKind::CuspedDisk(_) => PieceChart::Disk(serde_json::from_value(value.clone()).map_err(err)?),
            ElementaryKind::NonElementary => {
                return Err(crate::ParseError::Schema("no chart for a non-elementary piece".into()))
            }
        };
        Ok(chart)
    }

    /// Checks that the chart fits the kind and lies in the piece's space.
    pub fn check(&self, kind: ElementaryKind) -> Result<(), ChartError> {
        let wrong = || ChartError::WrongKind(format!("{} chart for a {} piece", self.tag(), kind.tag()));
        match (self, kind) {
            (PieceChart::Pants(p), ElementaryKind::Pants) => {
                if p.y.len() != 3 {
                    return Err(ChartError::WrongKind("pants chart needs three weights".into()));
                }
                pants::membership_pants(p).map(|_| ()).ok_or_else(|| ChartError::Negative("pants weight".into()))
            }
            (PieceChart::Connector(c), ElementaryKind::Connector) => {
                if c.is_valid() {
                    Ok(())
                } else if c.chart != 1 && c.chart != 2 {
                    Err(ChartError::WrongKind(format!("connector chart {} is not 1 or 2", c.chart)))
                } else {
                    Err(ChartError::Negative("connector parameter".into()))
                }
            }
            (PieceChart::Trim(t), ElementaryKind::TrimAnnulus(c)) => {
                if t.c() != c {
                    return Err(ChartError::WrongKind(format!("trim chart has {} weights, piece has {c} arcs", t.c())));
                }
                trim::membership_trim(t)
                    .map(|_| ())
                    .ok_or_else(|| ChartError::NotMember(format!("x={:?} y={}", t.x, t.y)))
            }
            (PieceChart::TEmpty(_), ElementaryKind::TrimAnnulusEmpty) => Ok(()),
            (PieceChart::Disk(dc), ElementaryKind::CuspedDisk(c)) => {
                if dc.x.len() != c {
                    return Err(ChartError::WrongKind(format!("disk chart has {} weights, piece has {c}", dc.x.len())));
                }
                if disk::membership_disk(dc) {
                    Ok(())
                } else {
                    Err(ChartError::NotMember(format!("disk weights {:?}", dc.x)))
                }
            }
            _ => Err(wrong()),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            PieceChart::Pants(_) => "P",
            PieceChart::Connector(_) => "Q",
            PieceChart::Trim(_) => "Tc",
            PieceChart::TEmpty(_) => "Tempty",
            PieceChart::Disk(_) => "Dc",
        }
    }

    /// Weight induced on α-circle port `port`.
    pub fn port_weight(&self, port: usize) -> Option<Q> {
        match self {
            PieceChart::Pants(p) => p.y.get(port).copied(),
            PieceChart::Connector(c) if port < 2 => Some(c.y),
            PieceChart::Trim(t) if port == 0 => Some(t.y),
            PieceChart::TEmpty(t) if port == 0 => Some(t.boundary_weight()),
            _ => None,
        }
    }

    /// Multiplies every parameter by `lambda ≥ 0`.
    pub fn scaled(&self, lambda: Q) -> Self {
        let s = |v: &Vec<Q>| v.iter().map(|x| *x * lambda).collect::<Vec<Q>>();
        match self {
            PieceChart::Pants(p) => PieceChart::Pants(PantsChart { y: s(&p.y) }),
            PieceChart::Connector(c) => PieceChart::Connector(ConnectorChart::new(c.chart, c.t * lambda, c.y * lambda)),
            PieceChart::Trim(t) => PieceChart::Trim(TrimChart::new(s(&t.x), t.y * lambda)),
            PieceChart::TEmpty(t) => PieceChart::TEmpty(TEmptyChart::new(t.s * lambda)),
            PieceChart::Disk(d) => PieceChart::Disk(DiskChart { x: s(&d.x) }),
        }
    }

    /// Every stored rational parameter, in a fixed order.
    pub fn parameters(&self) -> Vec<Q> {
        match self {
            PieceChart::Pants(p) => p.y.clone(),
            PieceChart::Connector(c) => vec![c.t, c.y],
            PieceChart::Trim(t) => t.x.iter().copied().chain(std::iter::once(t.y)).collect(),
            PieceChart::TEmpty(t) => vec![t.s],
            PieceChart::Disk(d) => d.x.clone(),
        }
    }

    /// Contribution of the piece's own free coordinates to the projective
    /// norm; boundary weights are added separately by the caller.
    pub fn free_norm(&self) -> Q {
        match self {
            PieceChart::Pants(_) => q(0),
            PieceChart::Connector(c) => c.t + c.y,
            PieceChart::Trim(t) => t.to_product().1.into_iter().map(abs).sum(),
            PieceChart::TEmpty(t) => abs(t.s),
            PieceChart::Disk(d) => d.x.iter().copied().sum(),
        }
    }
}

/// One component type of a curve system in a piece.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveArc {
    Pants(PantsArc),
    Trim(TrimArc),
    Chord(disk::Diagonal),
    /// Strands crossing a connector, all twisting by the given signed amount
    /// (in units of strand spacing).
    Crossing {
        #[serde(with = "crate::rational::q_string")]
        twist: Q,
    },
    /// The core curve of a connector.
    Core,
    /// A half-infinite leaf from the α-circle spiralling onto `δ` in the
    /// positive (`+1`) or negative (`−1`) sense.
    Spiral(i8),
}

impl CurveArc {
    pub fn label(&self) -> String {
        match self {
            CurveArc::Pants(a) => a.label(),
            CurveArc::Trim(a) => a.label(),
            CurveArc::Chord((i, j)) => format!("d{}-{}", i + 1, j + 1),
            CurveArc::Crossing { twist } => format!("cross(twist={})", crate::rational::fmt_q(twist)),
            CurveArc::Core => "core".into(),
            CurveArc::Spiral(s) => format!("spiral{}", if *s > 0 { "+" } else { "-" }),
        }
    }
}

/// A weighted system of pairwise disjoint curve types in one piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    #[serde(with = "weighted")]
    pub components: Vec<(CurveArc, Q)>,
}

impl CurveSystem {
    /// Smallest positive integer scale making all weights (and twists)
    /// integral, with the scaled weights.
    pub fn scaled_to_integers(&self) -> (i64, Vec<(CurveArc, i64)>) {
        let mut values: Vec<Q> = self.components.iter().map(|(_, w)| *w).collect();
        for (arc, _) in &self.components {
            if let CurveArc::Crossing { twist } = arc {
                values.push(*twist);
            }
        }
        let k = common_denominator(&values);
        let scale = |a: &CurveArc| match a {
            CurveArc::Crossing { twist } => CurveArc::Crossing { twist: *twist * q(k) },
            other => other.clone(),
        };
        let out = self.components.iter().map(|(a, w)| (scale(a), (*w * q(k)).to_integer())).collect();
        (k, out)
    }
}

/// The weighted curve system realizing a chart point.
pub fn reconstruct_curve_system(kind: ElementaryKind, chart: &PieceChart) -> Result<CurveSystem, ChartError> {
    chart.check(kind)?;
    let components = match chart {
        PieceChart::Pants(p) => p.arc_weights().into_iter().map(|(a, w)| (CurveArc::Pants(a), w)).collect(),
        PieceChart::Trim(t) => trim::reconstruct_trim(t)
            .ok_or_else(|| ChartError::NotMember("trim chart".into()))?
            .into_iter()
            .map(|(a, w)| (CurveArc::Trim(a), w))
            .collect(),
        PieceChart::Disk(d) => disk::reconstruct_disk(d)
            .ok_or_else(|| ChartError::NotMember("disk chart".into()))?
            .into_iter()
            .map(|(a, w)| (CurveArc::Chord(a), w))
            .collect(),
        PieceChart::Connector(c) => {
            if c.y > q(0) {
                vec![(CurveArc::Crossing { twist: c.signed_twist() }, c.y)]
            } else if c.t > q(0) {
                vec![(CurveArc::Core, c.t)]
            } else {
                vec![]
            }
        }
        PieceChart::TEmpty(t) => match t.sense() {
            0 => vec![],
            s => vec![(CurveArc::Spiral(s), t.boundary_weight())],
        },
    };
    Ok(CurveSystem { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn reconstruct_examples() {
        let t2 = PieceChart::Trim(TrimChart::new(vec![q(1), q(1)], q(2)));
        let sys = reconstruct_curve_system(ElementaryKind::TrimAnnulus(2), &t2).unwrap();
        assert_eq!(
            sys.components,
            vec![(CurveArc::Trim(TrimArc::Radial(0)), q(1)), (CurveArc::Trim(TrimArc::Radial(1)), q(1))]
        );
        let te = PieceChart::TEmpty(TEmptyChart::new(q(-2)));
        let sys = reconstruct_curve_system(ElementaryKind::TrimAnnulusEmpty, &te).unwrap();
        assert_eq!(sys.components, vec![(CurveArc::Spiral(-1), q(2))]);
        let p = PieceChart::Pants(PantsChart::new([q(2), q(1), q(1)]));
        let sys = reconstruct_curve_system(ElementaryKind::Pants, &p).unwrap();
        assert_eq!(
            sys.components,
            vec![(CurveArc::Pants(PantsArc::Cross(0, 1)), q(1)), (CurveArc::Pants(PantsArc::Cross(0, 2)), q(1))]
        );
    }

    #[test]
    fn non_member_is_rejected() {
        let bad = PieceChart::Trim(TrimChart::new(vec![q(0), q(1)], q(3)));
        assert!(matches!(
            reconstruct_curve_system(ElementaryKind::TrimAnnulus(2), &bad),
            Err(ChartError::NotMember(_))
        ));
        let p = PieceChart::Pants(PantsChart::new([q(1), q(1), q(1)]));
        assert!(matches!(p.check(ElementaryKind::Connector), Err(ChartError::WrongKind(_))));
    }

    #[test]
    fn integer_scaling() {
        let p = PieceChart::Pants(PantsChart::new([q(1), q(1), q(1)]));
        let sys = reconstruct_curve_system(ElementaryKind::Pants, &p).unwrap();
        let (k, ints) = sys.scaled_to_integers();
        assert_eq!(k, 2);
        assert!(ints.iter().all(|(_, w)| *w == 1));
        assert_eq!(sys.components[0].1, qf(1, 2));
    }
}

mod weighted {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::CurveArc;
    use crate::rational::Q;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        arc: CurveArc,
        #[serde(with = "crate::rational::q_string")]
        weight: Q,
    }

    pub fn serialize<S: Serializer>(v: &[(CurveArc, Q)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|(a, w)| Entry { arc: a.clone(), weight: *w }).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(CurveArc, Q)>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?.into_iter().map(|e| (e.arc, e.weight)).collect())
    }
}
