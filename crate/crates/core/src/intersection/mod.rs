//! Intersection numbers of a lamination with a finite family of curve classes.

mod complex;
mod family;
mod glued;
mod models;
mod oracle;
mod twist;

use crate::catalog::disk::Diagonal;
use crate::catalog::{PantsArc, TrimArc};
use crate::error::IntersectionError;
use crate::geometry::ElementaryKind;

use models::{ArcPath, Model};

pub use family::{
    add_in_common_cell, algebraic_boundary_class, carried_boundary_class, check_convexity, check_convexity_coords,
    distinguishing_family, intersect, intersection_vector, oracle_intersect, oracle_vector, CurveClass, CurveKind,
    IntersectionVector, PathStep,
};

/// Default bound on integer weights handed to the combinatorial oracle.
pub const DEFAULT_ORACLE_CAP: i64 = 6;

/// Oracle weight cap, overridable through `LAMINA_ORACLE_CAP`.
pub fn oracle_cap() -> i64 {
    std::env::var("LAMINA_ORACLE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_ORACLE_CAP)
}

/// An arc type inside one elementary piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceArc {
    Pants(PantsArc),
    Trim(TrimArc),
    Disk(Diagonal),
}

fn piece_model(kind: ElementaryKind) -> Result<Model, IntersectionError> {
    Ok(match kind {
        ElementaryKind::Pants => models::pants(),
        ElementaryKind::Connector => models::connector(),
        ElementaryKind::TrimAnnulus(c) => models::trim(c),
        ElementaryKind::CuspedDisk(c) => models::disk(c),
        other => return Err(IntersectionError::Domain(format!("no finite arc model for {other:?}"))),
    })
}

fn piece_path(kind: ElementaryKind, a: PieceArc) -> Result<ArcPath, IntersectionError> {
    match (kind, a) {
        (ElementaryKind::Pants, PieceArc::Pants(p)) => Ok(models::pants_arc(p)),
        (ElementaryKind::TrimAnnulus(c), PieceArc::Trim(t)) => Ok(models::trim_arc(c, t)),
        (ElementaryKind::CuspedDisk(_), PieceArc::Disk(d)) => Ok(models::disk_arc(d)),
        _ => Err(IntersectionError::Domain(format!("{a:?} is not an arc of {kind:?}"))),
    }
}

/// Minimal intersection of an integer arc system in one piece with an arc
/// `theta`, computed by drawing both on the piece.
pub fn oracle_intersect_piece(
    kind: ElementaryKind,
    system: &[(PieceArc, i64)],
    theta: PieceArc,
) -> Result<u64, IntersectionError> {
    oracle_intersect_piece_with_cap(kind, system, theta, oracle_cap())
}

/// `oracle_intersect_piece` with an explicit weight cap.
pub fn oracle_intersect_piece_with_cap(
    kind: ElementaryKind,
    system: &[(PieceArc, i64)],
    theta: PieceArc,
    cap: i64,
) -> Result<u64, IntersectionError> {
    let mut m = piece_model(kind)?;
    for &(a, w) in system {
        if w < 0 || w > cap {
            return Err(IntersectionError::CapExceeded { cap, value: w });
        }
        let path = piece_path(kind, a)?;
        for _ in 0..w {
            m.add_arc(&path);
        }
    }
    let split = m.cx.curves.len();
    m.add_arc(&piece_path(kind, theta)?);
    run(m.cx, split)
}

fn run(mut cx: complex::Complex, split: usize) -> Result<u64, IntersectionError> {
    cx.collapse();
    cx.slide_free_ends();
    oracle::min_crossings(&cx, split).map_err(|_| IntersectionError::Unrealizable("strands would cross".into()))
}
