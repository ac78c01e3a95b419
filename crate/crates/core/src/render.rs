//! Static SVG drawings of the curve system a chart point reconstructs in
//! one elementary piece. Each arc type is drawn once and labelled with its
//! weight.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::catalog::{reconstruct_curve_system, CurveArc, PantsArc, PieceChart, TrimArc};
use crate::error::ChartError;
use crate::geometry::ElementaryKind;
use crate::rational::{fmt_q, Q};

const SIZE: f64 = 400.0;
const C: f64 = 200.0;
const OUTER: f64 = 170.0;
const INNER: f64 = 60.0;

fn to_f64(v: Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

fn polar(r: f64, a: f64) -> (f64, f64) {
    (C + r * a.cos(), C - r * a.sin())
}

/// Centre angle of α-arc `i` out of `c`.
fn alpha_angle(i: usize, c: usize) -> f64 {
    PI / 2.0 + 2.0 * PI * i as f64 / c as f64
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn circle(&mut self, x: f64, y: f64, r: f64, class: &str) {
        writeln!(self.body, r#"<circle cx="{x:.1}" cy="{y:.1}" r="{r:.1}" class="{class}"/>"#).unwrap();
    }

    fn path(&mut self, d: &str, class: &str) {
        writeln!(self.body, r#"<path d="{d}" class="{class}"/>"#).unwrap();
    }

    fn polyline(&mut self, pts: &[(f64, f64)], class: &str) {
        let mut d = String::new();
        for (k, (x, y)) in pts.iter().enumerate() {
            write!(d, "{}{x:.1} {y:.1} ", if k == 0 { "M" } else { "L" }).unwrap();
        }
        self.path(d.trim_end(), class);
    }

    fn label(&mut self, (x, y): (f64, f64), text: &str) {
        writeln!(self.body, r#"<text x="{x:.1}" y="{y:.1}">{text}</text>"#).unwrap();
    }

    /// Thick marks for the α-arcs of a boundary circle of radius `r`.
    fn alpha_marks(&mut self, r: f64, c: usize) {
        for i in 0..c {
            let a = alpha_angle(i, c);
            let pts: Vec<_> = (0..=8).map(|k| polar(r, a - 0.15 + 0.3 * k as f64 / 8.0)).collect();
            self.polyline(&pts, "alpha");
            self.label(polar(r + 14.0, a), &format!("α{}", i + 1));
        }
    }

    fn finish(self) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
                "\n<style>circle,path{{fill:none;stroke:#444;stroke-width:1.5}} .alpha{{stroke:#1565c0;stroke-width:5}} ",
                ".delta{{stroke-dasharray:6 4}} .arc{{stroke:#c62828;stroke-width:2}} text{{font:12px sans-serif}}</style>\n",
                "{body}</svg>\n"
            ),
            s = SIZE,
            body = self.body
        )
    }
}

fn spiral(r0: f64, r1: f64, a0: f64, turns: f64) -> Vec<(f64, f64)> {
    (0..=48)
        .map(|k| {
            let s = k as f64 / 48.0;
            polar(r0 + (r1 - r0) * s, a0 + 2.0 * PI * turns * s)
        })
        .collect()
}

fn pants_arc(cv: &mut Canvas, a: PantsArc) -> (f64, f64) {
    let (d, at) = match a {
        PantsArc::Cross(0, 1) | PantsArc::Cross(1, 0) => ("M30 200 L95 200".to_string(), (45.0, 190.0)),
        PantsArc::Cross(0, 2) | PantsArc::Cross(2, 0) => ("M305 200 L370 200".to_string(), (315.0, 190.0)),
        PantsArc::Cross(..) => ("M165 200 L235 200".to_string(), (180.0, 190.0)),
        PantsArc::Loop(0) => ("M200 30 C200 120 200 280 200 370".to_string(), (205.0, 100.0)),
        PantsArc::Loop(1) => ("M130 165 C200 90 330 110 330 200 C330 290 200 310 130 235".to_string(), (300.0, 140.0)),
        PantsArc::Loop(_) => ("M270 165 C200 90 70 110 70 200 C70 290 200 310 270 235".to_string(), (60.0, 140.0)),
    };
    cv.path(&d, "arc");
    at
}

fn trim_arc(cv: &mut Canvas, a: TrimArc, c: usize) -> (f64, f64) {
    match a {
        TrimArc::Radial(i) => {
            let t = alpha_angle(i, c);
            cv.polyline(&[polar(INNER, t), polar(OUTER, t)], "arc");
            polar((INNER + OUTER) / 2.0, t + 0.12)
        }
        TrimArc::Outer { start, span } => {
            let a0 = alpha_angle(start, c) + 0.08;
            let a1 = alpha_angle(start, c) + 2.0 * PI * span as f64 / c as f64 - 0.08;
            let r = OUTER - 25.0 - 8.0 * span as f64;
            let mut pts = vec![polar(OUTER, a0)];
            pts.extend((0..=32).map(|k| polar(r, a0 + (a1 - a0) * k as f64 / 32.0)));
            pts.push(polar(OUTER, a1));
            cv.polyline(&pts, "arc");
            polar(r - 12.0, (a0 + a1) / 2.0)
        }
    }
}

/// SVG drawing of the curve system realizing `chart` in a piece of `kind`.
pub fn render_svg(kind: ElementaryKind, chart: &PieceChart) -> Result<String, ChartError> {
    let system = reconstruct_curve_system(kind, chart)?;
    let mut cv = Canvas { body: String::new() };
    match kind {
        ElementaryKind::Pants => {
            cv.circle(C, C, OUTER, "alpha");
            cv.circle(130.0, C, 35.0, "alpha");
            cv.circle(270.0, C, 35.0, "alpha");
        }
        ElementaryKind::Connector => {
            cv.circle(C, C, INNER, "alpha");
            cv.circle(C, C, OUTER, "alpha");
        }
        ElementaryKind::TrimAnnulus(c) => {
            cv.circle(C, C, INNER, "alpha");
            cv.circle(C, C, OUTER, "delta");
            cv.alpha_marks(OUTER, c);
        }
        ElementaryKind::TrimAnnulusEmpty => {
            cv.circle(C, C, INNER, "alpha");
            cv.circle(C, C, OUTER, "delta");
        }
        ElementaryKind::CuspedDisk(c) => {
            cv.circle(C, C, OUTER, "delta");
            cv.alpha_marks(OUTER, c);
        }
        ElementaryKind::NonElementary => {
            return Err(ChartError::WrongKind("no drawing for a non-elementary piece".into()))
        }
    }
    for (arc, w) in &system.components {
        let at = match arc {
            CurveArc::Pants(a) => pants_arc(&mut cv, *a),
            CurveArc::Trim(a) => trim_arc(&mut cv, *a, kind.alpha_arcs()),
            CurveArc::Chord((i, j)) => {
                let c = kind.alpha_arcs();
                let (p, r) = (polar(OUTER, alpha_angle(*i, c)), polar(OUTER, alpha_angle(*j, c)));
                cv.polyline(&[p, r], "arc");
                ((p.0 + r.0) / 2.0 + 4.0, (p.1 + r.1) / 2.0 - 4.0)
            }
            CurveArc::Crossing { twist } => {
                cv.polyline(&spiral(INNER, OUTER, PI / 2.0, to_f64(*twist / *w)), "arc");
                polar(INNER + 12.0, -PI / 2.0)
            }
            CurveArc::Core => {
                cv.circle(C, C, (INNER + OUTER) / 2.0, "arc");
                polar((INNER + OUTER) / 2.0 + 10.0, PI / 4.0)
            }
            CurveArc::Spiral(s) => {
                let pts = spiral(INNER, OUTER - 6.0, PI / 2.0, 2.5 * f64::from(*s));
                cv.polyline(&pts, "arc");
                polar(INNER + 12.0, -PI / 2.0)
            }
        };
        cv.label(at, &format!("{} ×{}", arc.label(), fmt_q(w)));
    }
    Ok(cv.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ConnectorChart, DiskChart, PantsChart, TEmptyChart, TrimChart};
    use crate::rational::q;

    #[test]
    fn drawings_are_deterministic_and_labelled() {
        let cases = [
            (ElementaryKind::Pants, PieceChart::Pants(PantsChart::new([q(2), q(1), q(1)]))),
            (ElementaryKind::Connector, PieceChart::Connector(ConnectorChart::from_signed(q(-3), q(2)))),
            (ElementaryKind::TrimAnnulus(3), PieceChart::Trim(TrimChart::new(vec![q(1), q(0), q(3)], q(2)))),
            (ElementaryKind::TrimAnnulusEmpty, PieceChart::TEmpty(TEmptyChart::new(q(-2)))),
            (ElementaryKind::CuspedDisk(4), PieceChart::Disk(DiskChart { x: vec![q(1), q(0), q(1), q(0)] })),
        ];
        for (kind, chart) in cases {
            let a = render_svg(kind, &chart).unwrap();
            assert_eq!(a, render_svg(kind, &chart).unwrap());
            assert!(a.starts_with("<svg") && a.contains("×"), "{a}");
        }
    }

    #[test]
    fn off_cone_charts_are_refused() {
        let chart = PieceChart::Trim(TrimChart::new(vec![q(6), q(6)], q(1)));
        assert!(render_svg(ElementaryKind::TrimAnnulus(2), &chart).is_err());
    }
}
