use lamina::catalog::disk::membership_disk;
use lamina::catalog::pants::membership_pants;
use lamina::catalog::trim::membership_trim;
use lamina::catalog::{
    reconstruct_curve_system, standard_tracks, ChartMap, CurveArc, DiskChart, PantsChart, PieceChart, TrimChart,
};
use lamina::geometry::ElementaryKind;
use lamina::rational::{q, Q};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (0..=24i64, 1..=4i64).prop_map(|(n, d)| Q::new(n, d))
}

/// Chart parameters induced by a reconstructed system, counted directly.
fn induced(kind: ElementaryKind, system: &[(CurveArc, Q)]) -> PieceChart {
    match kind {
        ElementaryKind::Pants => {
            let mut y = [q(0); 3];
            for (a, w) in system {
                let CurveArc::Pants(a) = a else { panic!("{a:?}") };
                for (i, n) in a.endpoint_counts().iter().enumerate() {
                    y[i] += *w * Q::from(*n as i64);
                }
            }
            PieceChart::Pants(PantsChart::new(y))
        }
        ElementaryKind::TrimAnnulus(c) => {
            let mut x = vec![q(0); c];
            let mut y = q(0);
            for (a, w) in system {
                let CurveArc::Trim(a) = a else { panic!("{a:?}") };
                let (xs, ys) = a.endpoint_counts(c);
                for (i, n) in xs.iter().enumerate() {
                    x[i] += *w * Q::from(*n as i64);
                }
                y += *w * Q::from(ys as i64);
            }
            PieceChart::Trim(TrimChart::new(x, y))
        }
        ElementaryKind::CuspedDisk(c) => {
            let mut x = vec![q(0); c];
            for (a, w) in system {
                let CurveArc::Chord((i, j)) = a else { panic!("{a:?}") };
                x[*i] += *w;
                x[*j] += *w;
            }
            PieceChart::Disk(DiskChart { x })
        }
        other => panic!("{other:?}"),
    }
}

/// Tracks carrying the chart point, with whether all cone parameters are positive.
fn carrying(kind: ElementaryKind, chart: &PieceChart) -> Vec<bool> {
    let Ok(system) = reconstruct_curve_system(kind, chart) else { return vec![] };
    let mut out = Vec::new();
    for st in standard_tracks(kind) {
        let arcs: Vec<CurveArc> = match &st.chart_map {
            ChartMap::Pants(a) => a.iter().map(|x| CurveArc::Pants(*x)).collect(),
            ChartMap::Trim(_, a) => a.iter().map(|x| CurveArc::Trim(*x)).collect(),
            ChartMap::Disk(_, a) => a.iter().map(|x| CurveArc::Chord(*x)).collect(),
            _ => unreachable!(),
        };
        if !system.components.iter().all(|(a, w)| *w == q(0) || arcs.contains(a)) {
            continue;
        }
        let params: Vec<Q> =
            arcs.iter().map(|a| system.components.iter().filter(|(b, _)| b == a).map(|(_, w)| *w).sum()).collect();
        assert_eq!(&st.chart(&params), chart, "{kind:?} {}", st.cell);
        assert!(st.params(&st.weights(&params)) == Some(params.clone()));
        out.push(params.iter().all(|p| *p > q(0)));
    }
    out
}

fn grid(dims: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..(bound + 1).pow(dims as u32))
        .map(move |n| (0..dims).map(|i| n / (bound + 1).pow(i as u32) % (bound + 1)).collect())
}

#[test]
fn integer_points_are_fully_carried_by_at_most_one_track() {
    let mut cases: Vec<(ElementaryKind, Vec<PieceChart>)> = Vec::new();
    cases.push((
        ElementaryKind::Pants,
        grid(3, 4).map(|v| PieceChart::Pants(PantsChart::new([q(v[0]), q(v[1]), q(v[2])]))).collect(),
    ));
    for c in 1..=3 {
        let charts = grid(c + 1, 3)
            .map(|v| PieceChart::Trim(TrimChart::new(v[..c].iter().map(|e| q(*e)).collect(), q(v[c]))))
            .collect();
        cases.push((ElementaryKind::TrimAnnulus(c), charts));
    }
    for c in 4..=6 {
        let charts = grid(c, 2).map(|v| PieceChart::Disk(DiskChart { x: v.iter().map(|e| q(*e)).collect() })).collect();
        cases.push((ElementaryKind::CuspedDisk(c), charts));
    }
    for (kind, charts) in cases {
        for chart in charts {
            let member = match &chart {
                PieceChart::Pants(p) => membership_pants(p).is_some(),
                PieceChart::Trim(t) => membership_trim(t).is_some(),
                PieceChart::Disk(d) => membership_disk(d),
                _ => unreachable!(),
            };
            let tracks = carrying(kind, &chart);
            assert_eq!(member, !tracks.is_empty(), "{kind:?} {chart:?}");
            assert!(tracks.iter().filter(|full| **full).count() <= 1, "{kind:?} {chart:?}");
        }
    }
}

proptest! {
    #[test]
    fn pants_systems_induce_their_chart(y in prop::array::uniform3(rational())) {
        let chart = PieceChart::Pants(PantsChart::new(y));
        let sys = reconstruct_curve_system(ElementaryKind::Pants, &chart).unwrap();
        prop_assert_eq!(induced(ElementaryKind::Pants, &sys.components), chart);
    }

    #[test]
    fn trim_systems_induce_their_chart(x in prop::collection::vec(rational(), 1..=5), y in rational()) {
        let c = x.len();
        let chart = TrimChart::new(x, y);
        let member = membership_trim(&chart).is_some();
        let kind = ElementaryKind::TrimAnnulus(c);
        match reconstruct_curve_system(kind, &PieceChart::Trim(chart.clone())) {
            Ok(sys) => {
                prop_assert!(member);
                prop_assert_eq!(induced(kind, &sys.components), PieceChart::Trim(chart.clone()));
            }
            Err(_) => prop_assert!(!member),
        }
        if member {
            let (p, v) = chart.to_product();
            prop_assert_eq!(TrimChart::from_product(p, &v), chart);
        }
    }

    #[test]
    fn radial_points_are_always_members(x in prop::collection::vec(rational(), 1..=5)) {
        let y: Q = x.iter().sum();
        prop_assert!(membership_trim(&TrimChart::new(x, y)).is_some());
    }

    #[test]
    fn disk_systems_induce_their_chart(x in prop::collection::vec(0..=4i64, 4..=7)) {
        let c = x.len();
        let chart = PieceChart::Disk(DiskChart { x: x.iter().map(|e| q(*e)).collect() });
        if let Ok(sys) = reconstruct_curve_system(ElementaryKind::CuspedDisk(c), &chart) {
            prop_assert_eq!(induced(ElementaryKind::CuspedDisk(c), &sys.components), chart);
        }
    }
}
