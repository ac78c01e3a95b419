//! Closed piecewise-linear forms for the twist detectors.
//!
//! Each detector crosses the connector once or twice. Where its ends may sit
//! on the connector boundary without meeting the curve system, the cost of a
//! crossing is the distance from the twist to an interval. When both ends of
//! the detector sit in one nested family the intervals slide together with
//! a depth parameter `s`, and the count is the minimum over `s`.

use num_traits::Zero;

use crate::catalog::{PantsArc, TrimArc};
use crate::rational::Q;

/// One connector crossing: the twist interval `[lo + k s, hi + k s]`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Window {
    pub lo: Q,
    pub hi: Q,
    pub k: i8,
}

/// `i(T) = base + min over s in [s_lo, s_hi] of Σ dist(T, window(s))`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct TwistForm {
    pub base: Q,
    pub windows: Vec<Window>,
    pub s_lo: Q,
    pub s_hi: Q,
}

fn dist(t: Q, lo: Q, hi: Q) -> Q {
    if t < lo {
        lo - t
    } else if t > hi {
        t - hi
    } else {
        Q::zero()
    }
}

impl TwistForm {
    fn cost(&self, t: Q, s: Q) -> Q {
        self.windows
            .iter()
            .map(|w| {
                let shift = s * Q::from(w.k as i64);
                dist(t, w.lo + shift, w.hi + shift)
            })
            .sum()
    }

    /// The cost is convex in `s`, so its minimum sits at a bound or at a
    /// point where some window edge meets `t`.
    pub fn eval(&self, t: Q) -> Q {
        let mut cands = vec![self.s_lo, self.s_hi];
        for w in &self.windows {
            if w.k != 0 {
                let k = Q::from(w.k as i64);
                cands.push((t - w.lo) / k);
                cands.push((t - w.hi) / k);
            }
        }
        let best = cands
            .into_iter()
            .filter(|s| *s >= self.s_lo && *s <= self.s_hi)
            .map(|s| self.cost(t, s))
            .min()
            .expect("bounds are candidates");
        self.base + best
    }

    /// The same detector after one positive Dehn twist about the core.
    pub fn eval_twisted(&self, t: Q, y: Q) -> Q {
        self.eval(t - y)
    }
}

/// Arc weights of a pair of pants, read at one of its ports.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PantsSide {
    pub port: usize,
    pub arcs: Vec<(PantsArc, Q)>,
}

impl PantsSide {
    fn w(&self, a: PantsArc) -> Q {
        self.arcs.iter().filter(|(b, _)| *b == a).map(|(_, w)| *w).sum()
    }
    fn cross(&self, i: usize, j: usize) -> Q {
        self.w(PantsArc::cross(i, j))
    }
    fn loops(&self, i: usize) -> Q {
        self.w(PantsArc::Loop(i))
    }
    /// Weight met by a detector part of type `a`, away from the connector.
    fn met(&self, a: PantsArc) -> Q {
        self.arcs.iter().map(|(b, w)| *w * Q::from(a.intersection(b) as i64)).sum()
    }

    /// Offset of the loop-end block and size of the block the loop family
    /// encloses, in counter-clockwise order from the seam of the port.
    fn loop_blocks(&self) -> (Q, Q, Q) {
        let k = self.port;
        let l = self.loops(k);
        match k {
            0 => (Q::zero(), self.cross(0, 1), l),
            1 => (Q::zero(), self.cross(1, 2), l),
            _ => (self.cross(0, 2), self.cross(1, 2), l),
        }
    }

    /// Start of the block of `Cross(k, other)` ends at port `k`.
    fn cross_start(&self, k: usize, other: usize) -> Q {
        let l = self.loops(k);
        let two = Q::from(2);
        match (k, other) {
            (0, 1) => l,
            (0, 2) => two * l + self.cross(0, 1),
            (1, 2) => l,
            (1, 0) => two * l + self.cross(1, 2),
            (2, 0) => Q::zero(),
            (2, 1) => self.cross(0, 2) + l,
            _ => panic!("no cross block from {k} to itself"),
        }
    }
}

/// Arc weights of a trim annulus.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct TrimSide {
    pub c: usize,
    pub arcs: Vec<(TrimArc, Q)>,
}

impl TrimSide {
    fn radial(&self, i: usize) -> Q {
        self.arcs.iter().filter(|(a, _)| *a == TrimArc::Radial(i)).map(|(_, w)| *w).sum()
    }
    /// Weight of outer arcs separating `α_i` from the port.
    fn over(&self, i: usize) -> Q {
        self.arcs.iter().filter(|(a, _)| a.enclosed(self.c).contains(&i)).map(|(_, w)| *w).sum()
    }
}

fn fixed(lo: Q, hi: Q) -> Window {
    Window { lo, hi, k: 0 }
}

/// (a) Two pairs of pants; the detector loops around one hole on each side.
pub(crate) fn pants_pants(a: &PantsSide, b: &PantsSide, y: Q) -> TwistForm {
    let (oa, ma, la) = a.loop_blocks();
    let (ob, mb, lb) = b.loop_blocks();
    let two = Q::from(2);
    let b1 = oa + ob + two * lb + mb - y;
    let b2 = oa + ob + two * la + ma - y;
    TwistForm {
        base: a.met(PantsArc::Loop(a.port)) + b.met(PantsArc::Loop(b.port)),
        windows: vec![Window { lo: b1, hi: b1, k: 1 }, Window { lo: b2, hi: b2, k: -1 }],
        s_lo: -lb,
        s_hi: la,
    }
}

/// (b) One pair of pants glued to itself, from `port` back to `other`.
pub(crate) fn self_glued(p: &PantsSide, other: usize, y: Q) -> TwistForm {
    let k = p.port;
    let x = p.cross(k, other);
    let z = p.cross_start(k, other) + p.cross_start(other, k) + x - y;
    TwistForm { base: p.met(PantsArc::cross(k, other)), windows: vec![fixed(z, z)], s_lo: Q::zero(), s_hi: Q::zero() }
}

/// (c) Two trim annuli; the detector runs between their first α-arcs.
pub(crate) fn trim_trim(a: &TrimSide, b: &TrimSide, y: Q) -> TwistForm {
    TwistForm {
        base: a.over(0) + b.over(0),
        windows: vec![fixed(y - a.radial(0) - b.radial(0), y)],
        s_lo: Q::zero(),
        s_hi: Q::zero(),
    }
}

/// (d) A trim annulus and a pair of pants; the detector leaves the first
/// α-arc, loops around a hole of the pants and returns to the same α-arc.
pub(crate) fn trim_pants(a: &TrimSide, b: &PantsSide) -> TwistForm {
    let (ob, mb, lb) = b.loop_blocks();
    let r = a.radial(0);
    let top = ob + Q::from(2) * lb + mb;
    TwistForm {
        base: Q::from(2) * a.over(0) + b.met(PantsArc::Loop(b.port)),
        windows: vec![Window { lo: top - r, hi: top, k: -1 }, Window { lo: ob - r, hi: ob, k: 1 }],
        s_lo: Q::zero(),
        s_hi: lb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::trim::maximal_systems;
    use crate::catalog::PantsChart;
    use crate::intersection::glued::{Crossing, Glued, Junction, Side};
    use crate::rational::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pants(rng: &mut ChaCha8Rng, port: usize, pinned: &[(usize, i64)]) -> (PantsSide, Side) {
        loop {
            let mut v = [rng.gen_range(0..=5i64), rng.gen_range(0..=5), rng.gen_range(0..=5)];
            for &(k, w) in pinned {
                v[k] = w;
            }
            let chart = PantsChart::new([q(v[0]), q(v[1]), q(v[2])]);
            if crate::catalog::pants::membership_pants(&chart).is_none() {
                continue;
            }
            let arcs = chart.arc_weights();
            if arcs.iter().any(|(_, w)| !w.is_integer()) {
                continue;
            }
            let ints = arcs.iter().map(|(a, w)| (*a, w.to_integer())).collect();
            return (PantsSide { port, arcs }, Side::Pants { port, arcs: ints });
        }
    }

    /// A random integer arc system in `T_c` with `y` ends on the port.
    fn trim(rng: &mut ChaCha8Rng, c: usize, y: i64) -> (TrimSide, Side) {
        let systems = maximal_systems(c);
        loop {
            let sys = &systems[rng.gen_range(0..systems.len())];
            let mut ints: Vec<(TrimArc, i64)> = Vec::new();
            let radials: Vec<&TrimArc> = sys.iter().filter(|a| matches!(a, TrimArc::Radial(_))).collect();
            if radials.is_empty() && y > 0 {
                continue;
            }
            let mut left = y;
            for (n, a) in radials.iter().enumerate() {
                let w = if n + 1 == radials.len() { left } else { rng.gen_range(0..=left) };
                left -= w;
                ints.push((**a, w));
            }
            for a in sys.iter().filter(|a| !matches!(a, TrimArc::Radial(_))) {
                ints.push((*a, rng.gen_range(0..=2)));
            }
            ints.retain(|(_, w)| *w > 0);
            let arcs = ints.iter().map(|(a, w)| (*a, q(*w))).collect();
            return (TrimSide { c, arcs }, Side::Trim { c, arcs: ints });
        }
    }

    fn check(j: &Junction, f: &TwistForm, y: i64, what: &str) {
        for t in -y - 3..=y + 3 {
            let x = Crossing { y, twist: t };
            let base = Glued::build(j, x, 0).unwrap().crossings().unwrap() as i64;
            let twisted = Glued::build(j, x, 1).unwrap().crossings().unwrap() as i64;
            assert_eq!(f.eval(q(t)), q(base), "{what} y={y} t={t} base");
            assert_eq!(f.eval_twisted(q(t), q(y)), q(twisted), "{what} y={y} t={t} twisted");
        }
    }

    #[test]
    fn forms_match_the_oracle_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let ka = rng.gen_range(0..3);
            let kb = rng.gen_range(0..3);
            let y = rng.gen_range(0..=5);
            let (pa, sa) = pants(&mut rng, ka, &[(ka, y)]);
            let (pb, sb) = pants(&mut rng, kb, &[(kb, y)]);
            check(&Junction::Two { a: sa, b: sb }, &pants_pants(&pa, &pb, q(y)), y, &format!("a {pa:?} {pb:?}"));

            let other = (ka + rng.gen_range(1..3)) % 3;
            let (p, s) = pants(&mut rng, ka, &[(ka, y), (other, y)]);
            check(
                &Junction::SelfGlued { pants: s, other },
                &self_glued(&p, other, q(y)),
                y,
                &format!("b {p:?} {other}"),
            );

            let ca = rng.gen_range(1..=4);
            let cb = rng.gen_range(1..=4);
            let (ta, sa) = trim(&mut rng, ca, y);
            let (tb, sb) = trim(&mut rng, cb, y);
            check(&Junction::Two { a: sa, b: sb }, &trim_trim(&ta, &tb, q(y)), y, &format!("c {ta:?} {tb:?}"));

            let (ta, sa) = trim(&mut rng, ca, y);
            let (pb, sb) = pants(&mut rng, kb, &[(kb, y)]);
            check(&Junction::Two { a: sa, b: sb }, &trim_pants(&ta, &pb), y, &format!("d {ta:?} {pb:?}"));
        }
    }
}
