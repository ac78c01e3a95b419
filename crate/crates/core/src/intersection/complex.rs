//! Cellulated surfaces with filled faces, glued along port loops and
//! collapsed to a spine, carrying curves as half-edge paths.
//!
//! Half-edge conventions follow the train-track maps: edge `e` owns `2e`
//! (tail) and `2e + 1`, rotations are counter-clockwise, and corner `k` of a
//! vertex is the sector from `rot[k]` to `rot[k + 1]`, lying on the left of
//! `rot[k]`.

use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Tag {
    Filled,
    /// An α-circle: arc ends slide freely along it.
    Free,
    /// A circle carrying α-arcs separated by δ-arcs.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Alpha(usize),
    Pin(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Corner {
    pub tag: Tag,
    pub tokens: Vec<Token>,
}

impl Corner {
    pub fn filled() -> Self {
        Corner { tag: Tag::Filled, tokens: vec![] }
    }
    pub fn free() -> Self {
        Corner { tag: Tag::Free, tokens: vec![] }
    }
    pub fn mixed(alphas: impl IntoIterator<Item = usize>) -> Self {
        Corner { tag: Tag::Mixed, tokens: alphas.into_iter().map(Token::Alpha).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Curve {
    Arc { start: usize, path: Vec<usize>, end: usize },
    Closed(Vec<usize>),
}

impl Curve {
    pub fn path(&self) -> &[usize] {
        match self {
            Curve::Arc { path, .. } | Curve::Closed(path) => path,
        }
    }
}

/// Where a pin sits: vertex, corner, and token index within the corner.
pub(crate) type Spot = (usize, usize, usize);

#[derive(Clone, Debug, Default)]
pub(crate) struct Complex {
    pub rot: Vec<Vec<usize>>,
    pub corners: Vec<Vec<Corner>>,
    pub alive: Vec<bool>,
    pub edges: usize,
    pub pins: usize,
    pub alphas: usize,
    /// Pins attached to an α token rather than sitting freely in a corner.
    pub pin_alpha: BTreeMap<usize, usize>,
    pub curves: Vec<Curve>,
}

/// Id shifts applied when one complex is copied into another.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Offsets {
    pub vertex: usize,
    pub half: usize,
    pub pin: usize,
    pub alpha: usize,
}

impl Offsets {
    pub fn path(&self, p: &[usize]) -> Vec<usize> {
        p.iter().map(|&h| h + self.half).collect()
    }
}

pub(crate) fn inverse(path: &[usize]) -> Vec<usize> {
    path.iter().rev().map(|&h| h ^ 1).collect()
}

fn free_reduce(path: &mut Vec<usize>) {
    let mut out: Vec<usize> = Vec::with_capacity(path.len());
    for &h in path.iter() {
        if out.last() == Some(&(h ^ 1)) {
            out.pop();
        } else {
            out.push(h);
        }
    }
    *path = out;
}

fn cyclic_reduce(path: &mut Vec<usize>) {
    free_reduce(path);
    while path.len() >= 2 && path[0] == path[path.len() - 1] ^ 1 {
        path.pop();
        path.remove(0);
    }
}

impl Complex {
    pub fn add_vertex(&mut self, rot: Vec<usize>, corners: Vec<Corner>) -> usize {
        assert_eq!(corners.len(), rot.len().max(1), "one corner per sector");
        for &h in &rot {
            self.edges = self.edges.max(h / 2 + 1);
        }
        self.rot.push(rot);
        self.corners.push(corners);
        self.alive.push(true);
        self.rot.len() - 1
    }

    pub fn new_alpha(&mut self) -> usize {
        self.alphas += 1;
        self.alphas - 1
    }

    /// Half-edge to (vertex, index in rotation).
    pub fn locate(&self) -> BTreeMap<usize, (usize, usize)> {
        let mut out = BTreeMap::new();
        for (v, r) in self.rot.iter().enumerate() {
            if self.alive[v] {
                for (i, &h) in r.iter().enumerate() {
                    out.insert(h, (v, i));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    fn alpha_spot(&self, a: usize) -> Option<Spot> {
        for (v, cs) in self.corners.iter().enumerate() {
            if !self.alive[v] {
                continue;
            }
            for (k, c) in cs.iter().enumerate() {
                if let Some(t) = c.tokens.iter().position(|x| *x == Token::Alpha(a)) {
                    return Some((v, k, t));
                }
            }
        }
        None
    }

    pub fn pin_spot(&self, pin: usize) -> Spot {
        if let Some(&a) = self.pin_alpha.get(&pin) {
            return self.alpha_spot(a).expect("α token present");
        }
        for (v, cs) in self.corners.iter().enumerate() {
            if !self.alive[v] {
                continue;
            }
            for (k, c) in cs.iter().enumerate() {
                if let Some(t) = c.tokens.iter().position(|x| *x == Token::Pin(pin)) {
                    return (v, k, t);
                }
            }
        }
        panic!("pin {pin} not placed")
    }

    pub fn free_pin(&mut self, v: usize, corner: usize) -> usize {
        debug_assert_eq!(self.corners[v][corner].tag, Tag::Free);
        self.pins += 1;
        self.corners[v][corner].tokens.push(Token::Pin(self.pins - 1));
        self.pins - 1
    }

    pub fn alpha_pin(&mut self, alpha: usize) -> usize {
        self.pins += 1;
        self.pin_alpha.insert(self.pins - 1, alpha);
        self.pins - 1
    }

    /// Copies `other` in, shifting every id.
    pub fn absorb(&mut self, other: &Complex) -> Offsets {
        let off = Offsets { vertex: self.rot.len(), half: 2 * self.edges, pin: self.pins, alpha: self.alphas };
        let tok = |t: &Token| match t {
            Token::Alpha(a) => Token::Alpha(a + off.alpha),
            Token::Pin(p) => Token::Pin(p + off.pin),
        };
        for v in 0..other.rot.len() {
            self.rot.push(other.rot[v].iter().map(|h| h + off.half).collect());
            self.corners.push(
                other.corners[v]
                    .iter()
                    .map(|c| Corner { tag: c.tag, tokens: c.tokens.iter().map(tok).collect() })
                    .collect(),
            );
            self.alive.push(other.alive[v]);
        }
        for (p, a) in &other.pin_alpha {
            self.pin_alpha.insert(p + off.pin, a + off.alpha);
        }
        for c in &other.curves {
            self.curves.push(match c {
                Curve::Arc { start, path, end } => {
                    Curve::Arc { start: start + off.pin, path: off.path(path), end: end + off.pin }
                }
                Curve::Closed(p) => Curve::Closed(off.path(p)),
            });
        }
        self.edges += other.edges;
        self.pins += other.pins;
        self.alphas += other.alphas;
        off
    }

    /// Glues two port corners, each bounded by a single loop edge, so the
    /// two ports fill each other. Returns the map applied to `b`'s loop
    /// halves (they become `a`'s halves).
    pub fn glue(&mut self, (va, ka): (usize, usize), (vb, kb): (usize, usize)) -> [(usize, usize); 2] {
        assert_ne!(va, vb);
        let (da, db) = (self.degree(va), self.degree(vb));
        let in_a = self.rot[va][ka];
        let out_a = self.rot[va][(ka + 1) % da];
        let in_b = self.rot[vb][kb];
        let out_b = self.rot[vb][(kb + 1) % db];
        assert_eq!(in_a ^ 1, out_a, "port corner must sit inside a loop");
        assert_eq!(in_b ^ 1, out_b, "port corner must sit inside a loop");
        assert!(self.corners[va][ka].tokens.is_empty() && self.corners[vb][kb].tokens.is_empty());
        // Rotations read from `out`: [out, X.., in] with the port after `in`.
        let ra: Vec<usize> = (0..da).map(|i| self.rot[va][(ka + 1 + i) % da]).collect();
        let ca: Vec<Corner> = (0..da).map(|i| self.corners[va][(ka + 1 + i) % da].clone()).collect();
        let rb: Vec<usize> = (0..db).map(|i| self.rot[vb][(kb + 1 + i) % db]).collect();
        let cb: Vec<Corner> = (0..db).map(|i| self.corners[vb][(kb + 1 + i) % db].clone()).collect();
        let mut rot = ra[..da].to_vec();
        let mut corners: Vec<Corner> = ca[..da - 1].to_vec();
        corners.push(cb[0].clone());
        rot.extend_from_slice(&rb[1..db - 1]);
        corners.extend_from_slice(&cb[1..db - 1]);
        self.rot[va] = rot;
        self.corners[va] = corners;
        self.rot[vb].clear();
        self.corners[vb].clear();
        self.alive[vb] = false;
        let map = [(out_b, in_a), (in_b, out_a)];
        for c in &mut self.curves {
            let p = match c {
                Curve::Arc { path, .. } | Curve::Closed(path) => path,
            };
            for h in p.iter_mut() {
                if *h == out_b {
                    *h = in_a;
                } else if *h == in_b {
                    *h = out_a;
                }
            }
        }
        map
    }

    /// Face on the left of each half-edge, and the walks.
    pub fn faces(&self) -> (BTreeMap<usize, usize>, Vec<Vec<usize>>) {
        let loc = self.locate();
        let mut face = BTreeMap::new();
        let mut walks = Vec::new();
        for &h0 in loc.keys() {
            if face.contains_key(&h0) {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = h0;
            loop {
                face.insert(h, walks.len());
                walk.push(h);
                let (w, j) = loc[&(h ^ 1)];
                let d = self.degree(w);
                h = self.rot[w][(j + d - 1) % d];
                if h == h0 {
                    break;
                }
            }
            walks.push(walk);
        }
        (face, walks)
    }

    fn corner_of_left(&self, loc: &BTreeMap<usize, (usize, usize)>, h: usize) -> (usize, usize) {
        loc[&h]
    }

    fn substitute(&mut self, h: usize, rep: &[usize]) {
        let inv = inverse(rep);
        for c in &mut self.curves {
            let p = match c {
                Curve::Arc { path, .. } | Curve::Closed(path) => path,
            };
            if !p.iter().any(|&x| x == h || x == h ^ 1) {
                continue;
            }
            let mut out = Vec::with_capacity(p.len() + rep.len());
            for &x in p.iter() {
                if x == h {
                    out.extend_from_slice(rep);
                } else if x == h ^ 1 {
                    out.extend_from_slice(&inv);
                } else {
                    out.push(x);
                }
            }
            *p = out;
        }
    }

    /// Removes one half-edge from its vertex, merging the two corners beside it.
    fn remove_half(&mut self, h: usize) {
        let loc = self.locate();
        let (v, i) = loc[&h];
        let d = self.degree(v);
        if d == 1 {
            self.rot[v].clear();
            return;
        }
        let prev = (i + d - 1) % d;
        let mut merged = self.corners[v][prev].clone();
        let after = self.corners[v][i].clone();
        merged.tag = merged.tag.max(after.tag);
        merged.tokens.extend(after.tokens);
        self.corners[v][prev] = merged;
        self.corners[v].remove(i);
        self.rot[v].remove(i);
    }

    /// Collapses every filled face through a free edge, then prunes leaves.
    pub fn collapse(&mut self) {
        loop {
            let (face, walks) = self.faces();
            let loc = self.locate();
            let tag_of = |walk: &Vec<usize>| {
                walk.iter()
                    .map(|&h| {
                        let (v, k) = self.corner_of_left(&loc, h);
                        self.corners[v][k].tag
                    })
                    .max()
                    .expect("nonempty walk")
            };
            let tags: Vec<Tag> = walks.iter().map(tag_of).collect();
            // Retag so every corner of a face agrees.
            for (f, walk) in walks.iter().enumerate() {
                for &h in walk {
                    let (v, k) = loc[&h];
                    self.corners[v][k].tag = tags[f];
                }
            }
            let pick = walks
                .iter()
                .enumerate()
                .filter(|(f, _)| tags[*f] == Tag::Filled)
                .find_map(|(f, walk)| walk.iter().position(|&h| face[&(h ^ 1)] != f).map(|i| (f, i)));
            let Some((f, i)) = pick else { break };
            let walk = &walks[f];
            let n = walk.len();
            let h = walk[i];
            let rest: Vec<usize> = (1..n).map(|j| walk[(i + j) % n]).collect();
            let rep = inverse(&rest);
            self.substitute(h, &rep);
            self.remove_half(h);
            self.remove_half(h ^ 1);
            self.reduce_paths();
        }
        // A vertex isolated by the collapse keeps the tag of its last face.
        loop {
            let leaf = (0..self.rot.len()).find(|&v| self.alive[v] && self.rot[v].len() == 1);
            let Some(w) = leaf else { break };
            let g = self.rot[w][0];
            let loc = self.locate();
            let (u, j) = loc[&(g ^ 1)];
            let tip = self.corners[w][0].clone();
            let d = self.degree(u);
            if d == 1 {
                let mut c = self.corners[u][0].clone();
                c.tag = c.tag.max(tip.tag);
                c.tokens.extend(tip.tokens);
                self.corners[u] = vec![c];
                self.rot[u].clear();
            } else {
                let prev = (j + d - 1) % d;
                let mut merged = self.corners[u][prev].clone();
                merged.tag = merged.tag.max(tip.tag);
                merged.tokens.extend(tip.tokens);
                merged.tokens.extend(self.corners[u][j].tokens.clone());
                self.corners[u][prev] = merged;
                self.corners[u].remove(j);
                self.rot[u].remove(j);
            }
            self.rot[w].clear();
            self.corners[w].clear();
            self.alive[w] = false;
            for c in &mut self.curves {
                if let Curve::Arc { path, .. } = c {
                    if path.first() == Some(&g) {
                        path.remove(0);
                    }
                    if path.last() == Some(&(g ^ 1)) {
                        path.pop();
                    }
                }
            }
            self.reduce_paths();
        }
    }

    pub fn reduce_paths(&mut self) {
        for c in &mut self.curves {
            match c {
                Curve::Arc { path, .. } => free_reduce(path),
                Curve::Closed(path) => cyclic_reduce(path),
            }
        }
    }

    /// Slides arc ends on α-circles until no arc runs along the circle it
    /// starts or ends on.
    pub fn slide_free_ends(&mut self) {
        for ci in 0..self.curves.len() {
            for _ in 0..2 {
                loop {
                    let Curve::Arc { start, path, .. } = &self.curves[ci] else { break };
                    let (start, f) = match path.first() {
                        Some(&f) => (*start, f),
                        None => break,
                    };
                    if self.pin_alpha.contains_key(&start) {
                        break;
                    }
                    let (v, k, t) = self.pin_spot(start);
                    let d = self.degree(v);
                    let loc = self.locate();
                    let (w, j) = loc[&(f ^ 1)];
                    let dw = self.degree(w);
                    let target = if f == self.rot[v][k] {
                        (j + dw - 1) % dw
                    } else if f == self.rot[v][(k + 1) % d] {
                        j
                    } else {
                        break;
                    };
                    self.corners[v][k].tokens.remove(t);
                    self.corners[w][target].tokens.push(Token::Pin(start));
                    if let Curve::Arc { path, .. } = &mut self.curves[ci] {
                        path.remove(0);
                        free_reduce(path);
                    }
                }
                if let Curve::Arc { start, path, end } = &mut self.curves[ci] {
                    std::mem::swap(start, end);
                    *path = inverse(path);
                }
            }
        }
    }

    /// Number of faces by tag, for sanity checks.
    #[cfg(test)]
    pub fn face_tags(&self) -> Vec<Tag> {
        let (_, walks) = self.faces();
        let loc = self.locate();
        let mut tags: Vec<Tag> = walks
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&h| {
                        let (v, k) = loc[&h];
                        self.corners[v][k].tag
                    })
                    .max()
                    .expect("nonempty")
            })
            .collect();
        for v in 0..self.rot.len() {
            if self.alive[v] && self.rot[v].is_empty() {
                tags.push(self.corners[v][0].tag);
            }
        }
        tags.sort();
        tags
    }
}
