#![allow(dead_code)]

//! Decomposition corpora shared by the integration tests.

use std::collections::BTreeSet;

use itertools::Itertools;
use lamina::geometry::{validate_decomposition, Decomposition, ElementaryKind, Port};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ElementaryKind::{Connector, Pants, TrimAnnulus, TrimAnnulusEmpty};

pub const MAX_PIECES: usize = 6;
pub const MAX_TRIM_ARCS: usize = 3;

fn capacity(k: ElementaryKind) -> usize {
    k.port_count()
}

fn id_prefix(k: ElementaryKind) -> &'static str {
    match k {
        Pants => "p",
        Connector => "q",
        TrimAnnulus(_) => "t",
        TrimAnnulusEmpty => "e",
        _ => "d",
    }
}

/// Attachment-host incidence counts: `edges[a][h]` gluings between
/// attachment `a` and host `h`.
#[derive(Clone)]
struct Graph {
    hosts: Vec<ElementaryKind>,
    atts: Vec<ElementaryKind>,
    edges: Vec<Vec<usize>>,
}

impl Graph {
    fn connected(&self) -> bool {
        let n = self.hosts.len() + self.atts.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let next: Vec<usize> = if v < self.hosts.len() {
                (0..self.atts.len()).filter(|&a| self.edges[a][v] > 0).map(|a| self.hosts.len() + a).collect()
            } else {
                let a = v - self.hosts.len();
                (0..self.hosts.len()).filter(|&h| self.edges[a][h] > 0).collect()
            };
            for u in next {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Smallest incidence matrix over relabellings of pieces of equal kind.
    fn canonical(&self) -> (Vec<ElementaryKind>, Vec<ElementaryKind>, Vec<Vec<usize>>) {
        let host_perms = kind_preserving_perms(&self.hosts);
        let att_perms = kind_preserving_perms(&self.atts);
        let mut best: Option<Vec<Vec<usize>>> = None;
        for hp in &host_perms {
            for ap in &att_perms {
                let m: Vec<Vec<usize>> = ap.iter().map(|&a| hp.iter().map(|&h| self.edges[a][h]).collect()).collect();
                if best.as_ref().is_none_or(|b| m < *b) {
                    best = Some(m);
                }
            }
        }
        (self.hosts.clone(), self.atts.clone(), best.unwrap())
    }

    fn realize(&self) -> Decomposition {
        let name = |kinds: &[ElementaryKind], i: usize| {
            let k = kinds[i];
            let n = kinds[..=i].iter().filter(|x| id_prefix(**x) == id_prefix(k)).count();
            format!("{}{n}", id_prefix(k))
        };
        let mut pieces = Vec::new();
        for i in 0..self.hosts.len() {
            pieces.push((name(&self.hosts, i), self.hosts[i]));
        }
        for i in 0..self.atts.len() {
            pieces.push((name(&self.atts, i), self.atts[i]));
        }
        let mut next_host = vec![0; self.hosts.len()];
        let mut gluings = Vec::new();
        for a in 0..self.atts.len() {
            let mut port = 0;
            for h in 0..self.hosts.len() {
                for _ in 0..self.edges[a][h] {
                    gluings.push((Port::new(name(&self.atts, a), port), Port::new(name(&self.hosts, h), next_host[h])));
                    port += 1;
                    next_host[h] += 1;
                }
            }
        }
        Decomposition::new(pieces, gluings).connected()
    }
}

/// Permutations of `0..kinds.len()` that map each index to one of equal kind.
fn kind_preserving_perms(kinds: &[ElementaryKind]) -> Vec<Vec<usize>> {
    (0..kinds.len())
        .permutations(kinds.len())
        .filter(|p| p.iter().enumerate().all(|(i, &j)| kinds[i] == kinds[j]))
        .collect()
}

/// All ways to choose `deg` hosts with repetition for every attachment.
fn attach_all(hosts: &[ElementaryKind], atts: &[ElementaryKind], out: &mut Vec<Graph>) {
    let choices: Vec<Vec<Vec<usize>>> = atts
        .iter()
        .map(|a| {
            (0..hosts.len())
                .combinations_with_replacement(capacity(*a))
                .map(|c| {
                    let mut row = vec![0; hosts.len()];
                    for h in c {
                        row[h] += 1;
                    }
                    row
                })
                .collect()
        })
        .collect();
    for rows in choices.iter().multi_cartesian_product() {
        let edges: Vec<Vec<usize>> = rows.into_iter().cloned().collect();
        let fits = (0..hosts.len()).all(|h| edges.iter().map(|r| r[h]).sum::<usize>() <= capacity(hosts[h]));
        let g = Graph { hosts: hosts.to_vec(), atts: atts.to_vec(), edges };
        if fits && g.connected() {
            out.push(g);
        }
    }
    if atts.is_empty() && hosts.len() == 1 {
        out.push(Graph { hosts: hosts.to_vec(), atts: vec![], edges: vec![] });
    }
}

/// Every valid connected decomposition with at most `MAX_PIECES` pieces, up
/// to relabelling, with trim annuli carrying at most `MAX_TRIM_ARCS` arcs.
/// Cusped disks appear only on their own.
pub fn small_corpus() -> Vec<Decomposition> {
    let host_kinds: Vec<ElementaryKind> = std::iter::once(Pants).chain((1..=MAX_TRIM_ARCS).map(TrimAnnulus)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for nh in 1..=MAX_PIECES {
        for hosts in host_kinds.iter().copied().combinations_with_replacement(nh) {
            let ports: usize = hosts.iter().map(|h| capacity(*h)).sum();
            for na in 0..=MAX_PIECES - nh {
                for nq in 0..=na {
                    let atts: Vec<ElementaryKind> = std::iter::repeat_n(Connector, nq)
                        .chain(std::iter::repeat_n(TrimAnnulusEmpty, na - nq))
                        .collect();
                    if 2 * nq + (na - nq) > ports || na + 1 < nh {
                        continue;
                    }
                    let mut graphs = Vec::new();
                    attach_all(&hosts, &atts, &mut graphs);
                    for g in graphs {
                        let key = format!("{:?}", g.canonical());
                        if seen.insert(key) {
                            let d = g.realize();
                            if validate_decomposition(&d).unwrap().ok {
                                out.push(d);
                            }
                        }
                    }
                }
            }
        }
    }
    for c in 3..=6 {
        out.push(Decomposition::new(vec![("d1", ElementaryKind::CuspedDisk(c))], vec![]).connected());
    }
    out
}

/// A connected decomposition grown at random from one host.
pub fn random_decomposition(seed: u64, pieces: usize) -> Decomposition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick_host = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.7) { Pants } else { TrimAnnulus(rng.gen_range(1..=4)) };
    loop {
        let mut hosts = vec![Pants];
        let mut atts: Vec<ElementaryKind> = Vec::new();
        let mut glue: Vec<Vec<usize>> = Vec::new();
        let mut used = vec![0usize];
        let free = |hosts: &[ElementaryKind], used: &[usize]| -> Vec<usize> {
            (0..hosts.len()).flat_map(|h| std::iter::repeat_n(h, capacity(hosts[h]) - used[h])).collect()
        };
        while hosts.len() + atts.len() < pieces {
            let open = free(&hosts, &used);
            if open.is_empty() {
                break;
            }
            let h = open[rng.gen_range(0..open.len())];
            match rng.gen_range(0..4) {
                0 if hosts.len() + atts.len() + 2 <= pieces => {
                    let k = pick_host(&mut rng);
                    hosts.push(k);
                    used.push(1);
                    used[h] += 1;
                    atts.push(Connector);
                    glue.push(vec![h, hosts.len() - 1]);
                }
                1 if open.len() >= 2 => {
                    let i = open.iter().position(|x| *x == h).unwrap();
                    let j = (i + rng.gen_range(1..open.len())) % open.len();
                    let h2 = open[j];
                    used[h] += 1;
                    used[h2] += 1;
                    atts.push(Connector);
                    glue.push(vec![h, h2]);
                }
                2 => {
                    used[h] += 1;
                    atts.push(TrimAnnulusEmpty);
                    glue.push(vec![h]);
                }
                _ if hosts.len() + atts.len() + 2 <= pieces => {
                    let k = pick_host(&mut rng);
                    hosts.push(k);
                    used.push(1);
                    used[h] += 1;
                    atts.push(Connector);
                    glue.push(vec![h, hosts.len() - 1]);
                }
                _ => {}
            }
        }
        let edges = glue
            .iter()
            .map(|hs| {
                let mut row = vec![0; hosts.len()];
                for h in hs {
                    row[*h] += 1;
                }
                row
            })
            .collect();
        let d = Graph { hosts, atts, edges }.realize();
        if d.pieces.len() == pieces && validate_decomposition(&d).unwrap().ok {
            return d;
        }
    }
}

/// 200 random connected decompositions with 7 to 12 pieces.
pub fn large_corpus() -> Vec<Decomposition> {
    (0..200u64).map(|s| random_decomposition(1000 + s, 7 + (s as usize % 6))).collect()
}

pub fn describe(d: &Decomposition) -> String {
    let pieces: Vec<String> = d
        .pieces
        .iter()
        .map(|p| match p.kind {
            TrimAnnulus(c) => format!("{}:T{c}", p.id),
            ElementaryKind::CuspedDisk(c) => format!("{}:D{c}", p.id),
            k => format!("{}:{}", p.id, k.tag()),
        })
        .collect();
    let glue: Vec<String> = d.gluings.iter().map(|(a, b)| format!("{a}~{b}")).collect();
    format!("[{}] {{{}}}", pieces.join(" "), glue.join(" "))
}
