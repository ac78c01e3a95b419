mod common;

use std::sync::LazyLock;

use lamina::catalog::PieceChart;
use lamina::coordinates::{random_coords, DTCoordinates};
use lamina::geometry::{Decomposition, ElementaryKind};
use lamina::intersection::{
    add_in_common_cell, algebraic_boundary_class, carried_boundary_class, check_convexity_coords,
    distinguishing_family, intersect, intersection_vector, oracle_vector, CurveKind,
};
use lamina::rational::{q, Q};
use lamina::Extended;
use proptest::prelude::*;

static SMALL: LazyLock<Vec<Decomposition>> = LazyLock::new(common::small_corpus);

fn with_empty_trim() -> Vec<&'static Decomposition> {
    SMALL.iter().filter(|d| d.pieces.iter().any(|p| p.kind == ElementaryKind::TrimAnnulusEmpty)).collect()
}

fn finite(v: &Extended) -> Q {
    v.finite().expect("finite")
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn sample(i: usize, seed: u64) -> DTCoordinates {
    let d = &SMALL[i % SMALL.len()];
    random_coords(d, seed, 6).unwrap()
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn vectors_scale_with_the_coordinates(i in 0..100usize, seed in 0..10_000u64, n in 1..=9i64, m in 1..=9i64) {
        let c = sample(i, seed);
        let family = distinguishing_family(&c.decomposition).unwrap();
        let v = intersection_vector(&c, &family).unwrap();
        for lambda in [Q::new(n, m), q(3)] {
            let w = intersection_vector(&c.scaled(lambda), &family).unwrap();
            for (k, x) in &v.entries {
                prop_assert_eq!(finite(&w.entries[k]), finite(x) * lambda, "{}", k);
            }
        }
    }

    #[test]
    fn oriented_deltas_are_exclusive_and_read_the_spiral(i in 0..100usize, seed in 0..10_000u64) {
        let ds = with_empty_trim();
        let d = ds[i % ds.len()];
        let c = random_coords(d, seed, 6).unwrap();
        for p in d.pieces.iter().filter(|p| p.kind == ElementaryKind::TrimAnnulusEmpty) {
            let PieceChart::TEmpty(t) = c.chart(&p.id) else { unreachable!() };
            let get = |positive| {
                let theta = distinguishing_family(d)
                    .unwrap()
                    .into_iter()
                    .find(|f| f.kind == CurveKind::OrientedDelta { piece: p.id.clone(), positive })
                    .unwrap();
                finite(&intersect(&c, &theta).unwrap())
            };
            let (plus, minus) = (get(true), get(false));
            prop_assert!(plus == q(0) || minus == q(0));
            prop_assert_eq!(plus - minus, t.s);
            prop_assert_eq!(algebraic_boundary_class(&c, &p.id).unwrap(), t.s);
            prop_assert_eq!(carried_boundary_class(&c, &p.id).unwrap(), t.s);
        }
    }

    /// Members crossing the track once per strand are additive on a cell.
    #[test]
    fn efficient_members_are_additive_on_a_cell(i in 0..100usize, s0 in 0..10_000u64, s1 in 0..10_000u64) {
        let a = sample(i, s0);
        let b = sample(i, s1);
        let Some(sum) = add_in_common_cell(&a, &b) else { return Ok(()) };
        for theta in distinguishing_family(&a.decomposition).unwrap() {
            if matches!(
                theta.kind,
                CurveKind::DecompositionCurve { .. } | CurveKind::PortReader { .. } | CurveKind::OrientedDelta { .. }
            ) {
                let f = |c: &DTCoordinates| finite(&intersect(c, &theta).unwrap());
                prop_assert_eq!(f(&sum), f(&a) + f(&b), "{}", theta.id());
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn formulas_agree_with_the_oracle(i in 0..100usize, seed in 0..10_000u64) {
        let c = sample(i, seed);
        let family = distinguishing_family(&c.decomposition).unwrap();
        prop_assert_eq!(intersection_vector(&c, &family).unwrap(), oracle_vector(&c, &family, 12).unwrap());
    }

    #[test]
    fn members_are_subadditive_on_a_cell(i in 0..100usize, s0 in 0..10_000u64, s1 in 0..10_000u64) {
        let a = sample(i, s0);
        let b = sample(i, s1);
        for theta in distinguishing_family(&a.decomposition).unwrap() {
            prop_assert_ne!(check_convexity_coords(&a, &b, &theta, 30).unwrap(), Some(false), "{}", theta.id());
        }
    }
}

/// Two trim annuli with one α-arc each: strands mixing two neighbouring
/// twist classes miss both detectors, so the family cannot see the twist
/// inside that window.
#[test]
fn two_single_arc_trims_hide_twists_in_the_flat_window() {
    use lamina::catalog::{ConnectorChart, TrimChart};
    use lamina::coordinates::assemble;
    use lamina::geometry::Port;
    let d = Decomposition::new(
        vec![
            ("t1", ElementaryKind::TrimAnnulus(1)),
            ("t2", ElementaryKind::TrimAnnulus(1)),
            ("q1", ElementaryKind::Connector),
        ],
        vec![(Port::new("q1", 0), Port::new("t1", 0)), (Port::new("q1", 1), Port::new("t2", 0))],
    );
    let family = distinguishing_family(&d).unwrap();
    let at = |t: i64| {
        let charts = [
            ("t1".to_string(), PieceChart::Trim(TrimChart::new(vec![q(2)], q(2)))),
            ("t2".to_string(), PieceChart::Trim(TrimChart::new(vec![q(2)], q(2)))),
            ("q1".to_string(), PieceChart::Connector(ConnectorChart::from_signed(q(t), q(2)))),
        ];
        intersection_vector(&assemble(&d, &charts.into_iter().collect()).unwrap(), &family).unwrap()
    };
    assert_eq!(at(0), at(1));
    assert_eq!(at(1), at(2));
    assert_ne!(at(2), at(3));
}
