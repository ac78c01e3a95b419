mod common;

use std::sync::LazyLock;

use lamina::coordinates::{dimension, projectivize, random_coords};
use lamina::geometry::{Decomposition, Port};
use lamina::rational::{q, Q};
use proptest::prelude::*;

static CORPUS: LazyLock<Vec<Decomposition>> = LazyLock::new(|| {
    let mut all = common::small_corpus();
    all.extend(common::large_corpus());
    all
});

fn lambda() -> impl Strategy<Value = Q> {
    (1..=12i64, 1..=12i64).prop_map(|(n, d)| Q::new(n, d))
}

#[test]
fn dimension_report_is_consistent_over_the_corpus() {
    for d in CORPUS.iter() {
        let r = dimension(d).unwrap();
        let derived = d.derived();
        let (b, c) = (derived.b as i64, derived.c as i64);
        // −3χ − b + c rewritten through χ_g = χ − c/2.
        assert_eq!(q(r.n_free), -q(3) * derived.chi_g - Q::new(3 * c, 2) - q(b) + q(c), "{}", common::describe(d));
        assert_eq!(r.n_plus, b);
        assert_eq!(r.sphere_dim, Some(r.n_free - 1));
        assert_eq!(r.simplex_dim, Some(r.n_plus - 1));
    }
}

#[test]
fn disconnected_decompositions_are_reported_per_component() {
    let a = CORPUS.iter().find(|d| dimension(d).unwrap().n_free > 0).unwrap();
    let mut pieces: Vec<(String, _)> = a.pieces.iter().map(|p| (p.id.clone(), p.kind)).collect();
    pieces.extend(a.pieces.iter().map(|p| (format!("{}b", p.id), p.kind)));
    let mut gluings = a.gluings.clone();
    let renamed = |p: &Port| Port::new(format!("{}b", p.piece), p.index);
    gluings.extend(a.gluings.iter().map(|(x, y)| (renamed(x), renamed(y))));
    let d = Decomposition::new(pieces, gluings);
    let r = dimension(&d).unwrap();
    assert_eq!(r.components.len(), 2);
    assert_eq!(r.sphere_dim, None);
    assert_eq!(r.n_free, 2 * dimension(a).unwrap().n_free);
}

proptest! {
    #[test]
    fn projectivize_is_idempotent_and_ignores_scale(i in 0..280usize, seed in 0..1000u64, l in lambda()) {
        let d = &CORPUS[i % CORPUS.len()];
        let c = random_coords(d, seed, 6).unwrap();
        prop_assume!(!c.is_zero());
        let p = projectivize(&c).unwrap();
        prop_assert_eq!(p.norm(), q(1));
        prop_assert_eq!(&projectivize(&p).unwrap(), &p);
        prop_assert_eq!(&projectivize(&c.scaled(l)).unwrap(), &p);
    }

    #[test]
    fn sampling_is_deterministic(i in 0..280usize, seed in 0..1000u64) {
        let d = &CORPUS[i % CORPUS.len()];
        prop_assert_eq!(random_coords(d, seed, 6).unwrap(), random_coords(d, seed, 6).unwrap());
    }
}
