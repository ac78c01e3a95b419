//! Combinatorial maps (ribbon graphs) on half-edges.
//!
//! Edge `e` owns half-edges `2e` and `2e + 1`; the involution swaps them.
//! `sigma` is the counter-clockwise successor around a vertex. A corner is
//! named by the half-edge `h` that precedes it counter-clockwise, i.e. the
//! sector from `h` to `sigma(h)`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    vertex: Vec<usize>,
    rotations: Vec<Vec<usize>>,
}

impl RibbonGraph {
    /// Builds the map from counter-clockwise rotations at each vertex.
    /// Every half-edge `0..2E` must occur exactly once.
    pub fn from_rotations(rotations: Vec<Vec<usize>>) -> Result<Self, String> {
        let n: usize = rotations.iter().map(Vec::len).sum();
        if n % 2 != 0 {
            return Err("odd number of half-edges".into());
        }
        let mut sigma = vec![usize::MAX; n];
        let mut vertex = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(format!("vertex {v} has no half-edges"));
            }
            for (i, &h) in rot.iter().enumerate() {
                if h >= n || vertex[h] != usize::MAX {
                    return Err(format!("half-edge {h} missing or repeated"));
                }
                vertex[h] = v;
                sigma[h] = rot[(i + 1) % rot.len()];
            }
        }
        let mut sigma_inv = vec![0; n];
        for h in 0..n {
            sigma_inv[sigma[h]] = h;
        }
        Ok(RibbonGraph { sigma, sigma_inv, vertex, rotations })
    }

    pub fn half_edges(&self) -> usize {
        self.sigma.len()
    }

    pub fn edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    #[inline]
    pub fn iota(h: usize) -> usize {
        h ^ 1
    }

    #[inline]
    pub fn sigma(&self, h: usize) -> usize {
        self.sigma[h]
    }

    #[inline]
    pub fn sigma_inv(&self, h: usize) -> usize {
        self.sigma_inv[h]
    }

    #[inline]
    pub fn vertex(&self, h: usize) -> usize {
        self.vertex[h]
    }

    /// Corner reached by walking the face forward out of corner `h`.
    #[inline]
    pub fn next_corner(&self, h: usize) -> usize {
        Self::iota(self.sigma[h])
    }

    #[inline]
    pub fn prev_corner(&self, h: usize) -> usize {
        self.sigma_inv[Self::iota(h)]
    }

    /// Face cycles as lists of corners, each starting at its smallest corner.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.half_edges();
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                face.push(h);
                h = self.next_corner(h);
            }
            faces.push(face);
        }
        faces
    }

    /// Face index of every corner, consistent with `faces()`.
    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.half_edges()];
        for (f, face) in self.faces().iter().enumerate() {
            for &h in face {
                idx[h] = f;
            }
        }
        idx
    }

    /// Connected components as vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let nv = self.vertices();
        let mut comp = vec![usize::MAX; nv];
        let mut out = Vec::new();
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &h in &self.rotations[v] {
                    let w = self.vertex[Self::iota(h)];
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// `V − E` of the underlying graph.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices() as i64 - self.edges() as i64
    }

    /// Genus of the closed surface obtained by capping every face of a
    /// connected map.
    pub fn genus(&self) -> i64 {
        let chi = self.euler_characteristic() + self.faces().len() as i64;
        (2 - chi) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> RibbonGraph {
        // Edges 0,1,2 run from vertex A to vertex B.
        RibbonGraph::from_rotations(vec![vec![0, 2, 4], vec![1, 5, 3]]).unwrap()
    }

    #[test]
    fn planar_theta_has_three_faces() {
        let g = theta();
        assert_eq!(g.faces().len(), 3);
        assert_eq!(g.genus(), 0);
        assert!(g.faces().iter().all(|f| f.len() == 2));
    }

    #[test]
    fn twisted_theta_is_a_torus() {
        let g = RibbonGraph::from_rotations(vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.genus(), 1);
    }

    #[test]
    fn corner_walks_are_inverse() {
        let g = theta();
        for h in 0..g.half_edges() {
            assert_eq!(g.prev_corner(g.next_corner(h)), h);
        }
    }

    #[test]
    fn leaf_has_one_corner() {
        let g = RibbonGraph::from_rotations(vec![vec![0], vec![1]]).unwrap();
        assert_eq!(g.faces(), vec![vec![0, 1]]);
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn rejects_repeated_half_edge() {
        assert!(RibbonGraph::from_rotations(vec![vec![0, 0], vec![1, 1]]).is_err());
    }
}
