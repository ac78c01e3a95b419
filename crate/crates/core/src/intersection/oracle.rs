//! Minimal intersection between a realized integer curve system and one
//! test curve, both drawn on the spine of a collapsed complex.
//!
//! The system's strands are ordered inside every band by walking to the
//! point where two strands part ways. The test curve then picks one gap per
//! band it crosses, and a dynamic program minimises the number of chords of
//! the system it must cut in each vertex disk.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::complex::{inverse, Complex, Curve, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Half(usize),
    Pin(usize),
}

type Pos = (usize, usize);
/// A group of pins that share a position on the boundary: (vertex, corner, token).
type Group = (usize, usize, usize);

struct View<'a> {
    cx: &'a Complex,
    loc: BTreeMap<usize, (usize, usize)>,
    curves: &'a [Curve],
    conflict: std::cell::Cell<bool>,
}

impl<'a> View<'a> {
    fn group(&self, pin: usize) -> Group {
        let (v, k, t) = self.cx.pin_spot(pin);
        if self.cx.corners[v][k].tag == Tag::Free {
            (v, k, 0)
        } else {
            (v, k, t)
        }
    }

    fn pos(&self, v: usize, s: Step) -> Pos {
        match s {
            Step::Half(f) => {
                let (w, i) = self.loc[&f];
                debug_assert_eq!(w, v);
                (2 * i, 0)
            }
            Step::Pin(p) => {
                let (w, k, g) = self.group(p);
                debug_assert_eq!(w, v);
                (2 * k + 1, g)
            }
        }
    }

    /// Steps after passage `i`, walking with (`fwd`) or against the curve.
    fn walk_from_passage(&self, s: usize, i: usize, fwd: bool) -> Vec<Step> {
        let c = &self.curves[s];
        let p = c.path();
        let n = p.len();
        let mut out = Vec::new();
        match c {
            Curve::Arc { start, end, .. } => {
                if fwd {
                    out.extend(p[i + 1..].iter().map(|&h| Step::Half(h)));
                    out.push(Step::Pin(*end));
                } else {
                    out.extend(p[..i].iter().rev().map(|&h| Step::Half(h ^ 1)));
                    out.push(Step::Pin(*start));
                }
            }
            Curve::Closed(_) => {
                for j in 1..=2 * n + 2 {
                    if fwd {
                        out.push(Step::Half(p[(i + j) % n]));
                    } else {
                        out.push(Step::Half(p[(i + n * (2 * n + 3) - j) % n] ^ 1));
                    }
                }
            }
        }
        out
    }

    fn walk_from_pin(&self, s: usize, at_start: bool) -> Vec<Step> {
        let Curve::Arc { start, path, end } = &self.curves[s] else { unreachable!() };
        let mut out: Vec<Step>;
        if at_start {
            out = path.iter().map(|&h| Step::Half(h)).collect();
            out.push(Step::Pin(*end));
        } else {
            out = inverse(path).into_iter().map(Step::Half).collect();
            out.push(Step::Pin(*start));
        }
        out
    }

    /// `Some(true)` when walk `a` leaves to the right of walk `b`.
    fn diverge(&self, mut v: usize, mut r: Pos, a: &[Step], b: &[Step]) -> Option<bool> {
        for (x, y) in a.iter().zip(b.iter()) {
            if x == y {
                match *x {
                    Step::Half(f) => {
                        let (w, j) = self.loc[&(f ^ 1)];
                        v = w;
                        r = (2 * j, 0);
                        continue;
                    }
                    Step::Pin(_) => return None,
                }
            }
            if let (Step::Pin(p), Step::Pin(q)) = (x, y) {
                if self.group(*p) == self.group(*q) {
                    return None;
                }
            }
            let key = |s: Step| {
                let p = self.pos(v, s);
                if p > r {
                    (0, p)
                } else {
                    (1, p)
                }
            };
            return Some(key(*x) < key(*y));
        }
        None
    }

    fn order_band(&self, e: usize, passages: &mut [(usize, usize)]) {
        let h = 2 * e;
        let (vf, jf) = self.loc[&(h + 1)];
        let (vb, jb) = self.loc[&h];
        let own = |&(s, i): &(usize, usize)| self.curves[s].path()[i] == h;
        passages.sort_by(|p, q| {
            let (op, oq) = (own(p), own(q));
            let f = self.diverge(
                vf,
                (2 * jf, 0),
                &self.walk_from_passage(p.0, p.1, op),
                &self.walk_from_passage(q.0, q.1, oq),
            );
            let b = self
                .diverge(
                    vb,
                    (2 * jb, 0),
                    &self.walk_from_passage(p.0, p.1, !op),
                    &self.walk_from_passage(q.0, q.1, !oq),
                )
                .map(|x| !x);
            let right = match (f, b) {
                (Some(x), Some(y)) => {
                    if x != y {
                        self.conflict.set(true);
                    }
                    Some(x)
                }
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            };
            match right {
                Some(true) => Ordering::Greater,
                Some(false) => Ordering::Less,
                // Parallel: the lower id runs on the left in its own direction.
                None => {
                    let ord = (p.0, p.1).cmp(&(q.0, q.1));
                    if op {
                        ord
                    } else {
                        ord.reverse()
                    }
                }
            }
        });
    }

    fn order_group(&self, g: Group, ends: &mut [(usize, bool)]) {
        let r = (2 * g.1 + 1, g.2);
        ends.sort_by(|p, q| match self.diverge(g.0, r, &self.walk_from_pin(p.0, p.1), &self.walk_from_pin(q.0, q.1)) {
            Some(true) => Ordering::Greater,
            Some(false) => Ordering::Less,
            None => {
                let ord = p.0.cmp(&q.0);
                if p.1 {
                    ord
                } else {
                    ord.reverse()
                }
            }
        });
    }
}

/// Chooses orientation (and base point for closed curves) so parallel
/// strands traverse their common route the same way.
fn canonicalize(cx: &Complex, curves: &mut [Curve]) {
    let group = |pin: usize| {
        let (v, k, t) = cx.pin_spot(pin);
        if cx.corners[v][k].tag == Tag::Free {
            (v, k, 0)
        } else {
            (v, k, t)
        }
    };
    for c in curves.iter_mut() {
        match c {
            Curve::Arc { start, path, end } => {
                let fwd = (group(*start), path.clone(), group(*end));
                let bwd = (group(*end), inverse(path), group(*start));
                if bwd < fwd {
                    std::mem::swap(start, end);
                    *path = inverse(path);
                }
            }
            Curve::Closed(path) => {
                let n = path.len();
                let inv = inverse(path);
                let mut best = path.clone();
                for w in [path.clone(), inv] {
                    for r in 0..n {
                        let cand: Vec<usize> = (0..n).map(|j| w[(r + j) % n]).collect();
                        if cand < best {
                            best = cand;
                        }
                    }
                }
                *path = best;
            }
        }
    }
}

/// Layout of one vertex disk: coordinates along its boundary.
struct Layout {
    /// Per half-edge: base coordinate at its own vertex.
    band_base: BTreeMap<usize, usize>,
    /// Per edge: number of system strands.
    band_count: BTreeMap<usize, usize>,
    group_base: BTreeMap<Group, usize>,
    group_count: BTreeMap<Group, usize>,
    /// Slot (from the left of `2e`) of each system passage.
    slot: BTreeMap<(usize, usize), usize>,
    /// ccw rank of each system end within its group.
    rank: BTreeMap<(usize, bool), usize>,
    /// System chords per vertex.
    chords: BTreeMap<usize, Vec<(usize, usize)>>,
}

impl Layout {
    fn band_coord(&self, h: usize, slot2: usize) -> usize {
        // `slot2` is doubled: 2k + 1 for strand k, 2g for gap g.
        let n = self.band_count.get(&(h / 2)).copied().unwrap_or(0);
        if h % 2 == 0 {
            self.band_base[&h] + 2 * n - slot2
        } else {
            self.band_base[&h] + slot2
        }
    }
    fn strand_at(&self, h: usize, k: usize) -> usize {
        self.band_coord(h, 2 * k + 1)
    }
    fn gap_at(&self, h: usize, g: usize) -> usize {
        self.band_coord(h, 2 * g)
    }
    fn cost(&self, v: usize, x: usize, y: usize) -> u64 {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let inside = |z: usize| lo < z && z < hi;
        self.chords.get(&v).map_or(0, |cs| cs.iter().filter(|(a, b)| inside(*a) != inside(*b)).count() as u64)
    }
}

/// Errors from the realization: the strands could not be drawn disjointly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct NotEmbedded;

fn layout(view: &View<'_>) -> Layout {
    let cx = view.cx;
    let curves = view.curves;
    let mut bands: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut groups: BTreeMap<Group, Vec<(usize, bool)>> = BTreeMap::new();
    for (s, c) in curves.iter().enumerate() {
        for (i, &h) in c.path().iter().enumerate() {
            bands.entry(h / 2).or_default().push((s, i));
        }
        if let Curve::Arc { start, end, .. } = c {
            groups.entry(view.group(*start)).or_default().push((s, true));
            groups.entry(view.group(*end)).or_default().push((s, false));
        }
    }
    let mut slot = BTreeMap::new();
    for (e, ps) in bands.iter_mut() {
        view.order_band(*e, ps);
        for (k, p) in ps.iter().enumerate() {
            slot.insert(*p, k);
        }
    }
    let mut rank = BTreeMap::new();
    for (g, es) in groups.iter_mut() {
        view.order_group(*g, es);
        for (k, p) in es.iter().enumerate() {
            rank.insert(*p, k);
        }
    }
    let band_count: BTreeMap<usize, usize> = bands.iter().map(|(e, p)| (*e, p.len())).collect();
    let group_count: BTreeMap<Group, usize> = groups.iter().map(|(g, p)| (*g, p.len())).collect();
    let mut band_base = BTreeMap::new();
    let mut group_base = BTreeMap::new();
    for v in 0..cx.rot.len() {
        if !cx.alive[v] {
            continue;
        }
        let mut at = 0;
        let d = cx.rot[v].len();
        for k in 0..d.max(1) {
            if d > 0 {
                let h = cx.rot[v][k];
                band_base.insert(h, at);
                at += 2 * band_count.get(&(h / 2)).copied().unwrap_or(0) + 1;
            }
            let corner = &cx.corners[v][k];
            let ng = if corner.tag == Tag::Free { 1 } else { corner.tokens.len() };
            for t in 0..ng {
                let g = (v, k, t);
                group_base.insert(g, at);
                at += 2 * group_count.get(&g).copied().unwrap_or(0) + 1;
            }
        }
    }
    let mut lay = Layout { band_base, band_count, group_base, group_count, slot, rank, chords: BTreeMap::new() };
    let mut chords: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (s, c) in curves.iter().enumerate() {
        let p = c.path();
        let n = p.len();
        let at_band = |i: usize, h: usize| lay.strand_at(h, lay.slot[&(s, i)]);
        match c {
            Curve::Arc { start, end, .. } => {
                let gs = view.group(*start);
                let ge = view.group(*end);
                let ps = lay.group_base[&gs] + 2 * lay.rank[&(s, true)] + 1;
                let pe = lay.group_base[&ge] + 2 * lay.rank[&(s, false)] + 1;
                if n == 0 {
                    chords.entry(gs.0).or_default().push((ps, pe));
                    continue;
                }
                chords.entry(gs.0).or_default().push((ps, at_band(0, p[0])));
                for i in 1..n {
                    let v = view.loc[&p[i]].0;
                    chords.entry(v).or_default().push((at_band(i - 1, p[i - 1] ^ 1), at_band(i, p[i])));
                }
                chords.entry(ge.0).or_default().push((at_band(n - 1, p[n - 1] ^ 1), pe));
            }
            Curve::Closed(_) => {
                for i in 0..n {
                    let prev = (i + n - 1) % n;
                    let v = view.loc[&p[i]].0;
                    chords.entry(v).or_default().push((at_band(prev, p[prev] ^ 1), at_band(i, p[i])));
                }
            }
        }
    }
    lay.chords = chords;
    lay
}

/// Term of the dynamic program: a chord in vertex `v` joining the gap chosen
/// for variable `a` (at coordinate `ca(g)`) to that of variable `b`.
struct Term {
    v: usize,
    a: usize,
    b: usize,
    ca: Vec<usize>,
    cb: Vec<usize>,
}

fn min_cycle(domains: &[usize], terms: &[Term], lay: &Layout, closed: bool) -> u64 {
    let mats: Vec<Vec<Vec<u64>>> = terms
        .iter()
        .map(|t| t.ca.iter().map(|&x| t.cb.iter().map(|&y| lay.cost(t.v, x, y)).collect()).collect())
        .collect();
    let k = domains.len();
    debug_assert!(terms.iter().enumerate().all(|(i, t)| t.a == i && t.b == (i + 1) % k));
    let chain = terms.len().min(if closed { k - 1 } else { k - 1 });
    let mut best = u64::MAX;
    let starts: Vec<usize> = if closed { (0..domains[0]).collect() } else { vec![usize::MAX] };
    for s in starts {
        let mut dp: Vec<u64> = if s == usize::MAX {
            vec![0; domains[0]]
        } else {
            (0..domains[0]).map(|g| if g == s { 0 } else { u64::MAX }).collect()
        };
        for (i, m) in mats.iter().enumerate().take(chain) {
            let mut nd = vec![u64::MAX; domains[i + 1]];
            for (ga, &base) in dp.iter().enumerate() {
                if base == u64::MAX {
                    continue;
                }
                for (gb, slot) in nd.iter_mut().enumerate() {
                    *slot = (*slot).min(base + m[ga][gb]);
                }
            }
            dp = nd;
        }
        let total = if closed {
            let m = &mats[k - 1];
            dp.iter().enumerate().filter(|(_, &b)| b != u64::MAX).map(|(g, &b)| b + m[g][s]).min().unwrap_or(u64::MAX)
        } else {
            dp.into_iter().min().unwrap_or(u64::MAX)
        };
        best = best.min(total);
    }
    best
}

/// Minimal number of crossings between the system (`cx.curves[..split]`)
/// and the test curve `cx.curves[split]`.
pub(crate) fn min_crossings(cx: &Complex, split: usize) -> Result<u64, NotEmbedded> {
    let mut system: Vec<Curve> = cx.curves[..split].to_vec();
    canonicalize(cx, &mut system);
    let view = View { cx, loc: cx.locate(), curves: &system, conflict: std::cell::Cell::new(false) };
    let lay = layout(&view);
    if view.conflict.get() {
        return Err(NotEmbedded);
    }
    let theta = &cx.curves[split];
    let p = theta.path();
    let n = p.len();
    let width = |h: usize| lay.band_count.get(&(h / 2)).copied().unwrap_or(0) + 1;
    let group_of = |pin: usize| view.group(pin);
    Ok(match theta {
        Curve::Closed(_) => {
            if n == 0 {
                return Ok(0);
            }
            let domains: Vec<usize> = p.iter().map(|&h| width(h)).collect();
            let terms: Vec<Term> = (0..n)
                .map(|i| {
                    let j = (i + 1) % n;
                    Term {
                        v: view.loc[&p[j]].0,
                        a: i,
                        b: j,
                        ca: (0..domains[i]).map(|g| lay.gap_at(p[i] ^ 1, g)).collect(),
                        cb: (0..domains[j]).map(|g| lay.gap_at(p[j], g)).collect(),
                    }
                })
                .collect();
            if n == 1 {
                // A single band: the chord closes up on itself.
                let t = &terms[0];
                (0..domains[0]).map(|g| lay.cost(t.v, t.ca[g], t.cb[g])).min().unwrap_or(0)
            } else {
                min_cycle(&domains, &terms, &lay, true)
            }
        }
        Curve::Arc { start, end, .. } => {
            let (gs, ge) = (group_of(*start), group_of(*end));
            let gcoords = |g: Group| -> Vec<usize> {
                let m = lay.group_count.get(&g).copied().unwrap_or(0);
                (0..=m).map(|x| lay.group_base[&g] + 2 * x).collect()
            };
            let mut domains = vec![gcoords(gs).len()];
            domains.extend(p.iter().map(|&h| width(h)));
            domains.push(gcoords(ge).len());
            let mut terms = Vec::new();
            let k = domains.len();
            for i in 0..k - 1 {
                let ca: Vec<usize> =
                    if i == 0 { gcoords(gs) } else { (0..domains[i]).map(|g| lay.gap_at(p[i - 1] ^ 1, g)).collect() };
                let cb: Vec<usize> = if i + 1 == k - 1 {
                    gcoords(ge)
                } else {
                    (0..domains[i + 1]).map(|g| lay.gap_at(p[i], g)).collect()
                };
                let v = if i + 1 == k - 1 { ge.0 } else { view.loc[&p[i]].0 };
                terms.push(Term { v, a: i, b: i + 1, ca, cb });
            }
            min_cycle(&domains, &terms, &lay, false)
        }
    })
}

/// Whether a single curve can be drawn without self-crossings.
#[cfg(test)]
pub(crate) fn is_simple(cx: &Complex, curve: &Curve) -> bool {
    let mut one = vec![curve.clone()];
    canonicalize(cx, &mut one);
    let view = View { cx, loc: cx.locate(), curves: &one, conflict: std::cell::Cell::new(false) };
    let _ = layout(&view);
    !view.conflict.get()
}

/// Arc ends sitting in a free corner, in counter-clockwise order, as
/// (curve, whether the end is the curve's start).
pub(crate) fn corner_order(cx: &Complex, v: usize, k: usize) -> Vec<(usize, bool)> {
    let view = View { cx, loc: cx.locate(), curves: &cx.curves, conflict: std::cell::Cell::new(false) };
    let mut ends = Vec::new();
    for (s, c) in cx.curves.iter().enumerate() {
        if let Curve::Arc { start, end, .. } = c {
            if view.group(*start) == (v, k, 0) {
                ends.push((s, true));
            }
            if view.group(*end) == (v, k, 0) {
                ends.push((s, false));
            }
        }
    }
    view.order_group((v, k, 0), &mut ends);
    ends
}
