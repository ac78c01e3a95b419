//! The cusped disk `D_c`: a disk with `c` arcs of `α` on its boundary.
//! Essential arcs are the diagonals of the `c`-gon whose vertices are the
//! α-arcs, and maximal systems are triangulations.

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskChart {
    #[serde(with = "crate::rational::q_vec")]
    pub x: Vec<Q>,
}

/// A diagonal `(i, j)` with `i < j`, joining non-adjacent α-arcs.
pub type Diagonal = (usize, usize);

pub fn diagonals(c: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for i in 0..c {
        for j in i + 2..c {
            if !(i == 0 && j == c - 1) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn diagonals_cross(a: Diagonal, b: Diagonal) -> bool {
    let strictly_between = |p: usize, (i, j): Diagonal| i < p && p < j;
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shared && (strictly_between(b.0, a) != strictly_between(b.1, a))
}

/// All triangulations of the `c`-gon as sorted diagonal lists.
pub fn triangulations(c: usize) -> Vec<Vec<Diagonal>> {
    fn polygon(vertices: &[usize]) -> Vec<Vec<Diagonal>> {
        let n = vertices.len();
        if n < 3 {
            return vec![vec![]];
        }
        // The edge (v0, v_{n−1}) lies in exactly one triangle (v0, vk, v_{n−1}).
        let mut out = Vec::new();
        let (first, last) = (vertices[0], vertices[n - 1]);
        for k in 1..n - 1 {
            let left = polygon(&vertices[..=k]);
            let right = polygon(&vertices[k..]);
            for l in &left {
                for r in &right {
                    let mut t = l.clone();
                    t.extend(r.iter().copied());
                    if k > 1 {
                        t.push((first, vertices[k]));
                    }
                    if k < n - 2 {
                        t.push((vertices[k], last));
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    let vertices: Vec<usize> = (0..c).collect();
    let mut all: Vec<Vec<Diagonal>> = polygon(&vertices)
        .into_iter()
        .map(|mut t| {
            t.sort();
            t
        })
        .collect();
    all.sort();
    all.dedup();
    all
}

/// Weights on the α-arcs induced by weighted diagonals.
pub fn induced_disk(c: usize, system: &[(Diagonal, Q)]) -> DiskChart {
    let mut x = vec![q(0); c];
    for ((i, j), w) in system {
        x[*i] += *w;
        x[*j] += *w;
    }
    DiskChart { x }
}

/// Weighted diagonals on the first triangulation realizing the point.
pub fn reconstruct_disk(chart: &DiskChart) -> Option<Vec<(Diagonal, Q)>> {
    let c = chart.x.len();
    if chart.x.iter().any(|v| *v < q(0)) {
        return None;
    }
    if chart.x.iter().all(|v| *v == q(0)) {
        return Some(vec![]);
    }
    for tri in triangulations(c) {
        let mut a = vec![vec![q(0); tri.len()]; c];
        for (k, &(i, j)) in tri.iter().enumerate() {
            a[i][k] = q(1);
            a[j][k] = q(1);
        }
        if let Some(w) = linalg::solve(&a, &chart.x) {
            if w.iter().all(|v| *v >= q(0)) {
                return Some(tri.into_iter().zip(w).filter(|(_, v)| *v != q(0)).collect());
            }
        }
    }
    None
}

pub fn membership_disk(chart: &DiskChart) -> bool {
    reconstruct_disk(chart).is_some()
}
