//! Combinatorial maps of graphs drawn in the sphere with up to two holes.
//!
//! A graph is stored as a rotation system: for every vertex the cyclic order
//! of its neighbours. Faces are traced from darts (directed edges): the dart
//! `u -> v` is followed by `v -> w` where `w` is the neighbour after `u` in the
//! rotation at `v`. Rings are stored explicitly as face walks in that same
//! direction; the face they bound is a hole.

mod cycles;
mod edit;
pub mod emg;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub use cycles::{
    distance, enumerate_short_cycles, is_contractible, is_tame, CycleRef, CycleSides, Side,
};
pub(crate) use cycles::simple_cycles;

/// Errors raised while building or querying an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("rotation is not symmetric: {0} lists {1} but not vice versa")]
    Asymmetric(usize, usize),
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("Euler check failed: V={v} E={e} F={f} components={components}")]
    EulerViolation {
        v: usize,
        e: usize,
        f: usize,
        components: usize,
    },
    #[error("at most two rings are supported, got {0}")]
    TooManyRings(usize),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("empty vertex set")]
    EmptyVertexSet,
}

/// A simple graph with a fixed rotation system and 0-2 designated ring faces.
///
/// Values are immutable once built; every constructor validates the
/// invariants (symmetric simple adjacency, spherical components, rings bound
/// distinct faces).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddedGraph {
    rotations: Vec<Vec<usize>>,
    rings: Vec<Vec<usize>>,
}

/// All face walks of an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceList {
    /// Face boundary walks, as vertex sequences in dart order.
    pub faces: Vec<Vec<usize>>,
    /// `ring_faces[i]` is the index of the face bounded by ring `i`.
    pub ring_faces: Vec<usize>,
    dart_face: Vec<usize>,
    dart_offset: Vec<usize>,
}

impl FaceList {
    /// Face containing the dart `u -> v` (which must be an edge).
    pub fn face_of_dart(&self, g: &EmbeddedGraph, u: usize, v: usize) -> usize {
        let pos = g.rotations[u]
            .iter()
            .position(|&w| w == v)
            .expect("dart must be an edge");
        self.dart_face[self.dart_offset[u] + pos]
    }

    pub fn is_hole(&self, face: usize) -> bool {
        self.ring_faces.contains(&face)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Indices of faces that are not holes.
    pub fn internal_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |f| !self.ring_faces.contains(f))
    }
}

impl EmbeddedGraph {
    /// Builds and validates a graph from rotations and ring walks.
    ///
    /// A ring may be given in either direction; it is stored in face-walk
    /// direction, starting at its smallest vertex. When both directions bound faces (a graph that is a single
    /// cycle) the given direction is kept.
    pub fn new(rotations: Vec<Vec<usize>>, rings: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        if rings.len() > 2 {
            return Err(EmbeddingError::TooManyRings(rings.len()));
        }
        let n = rotations.len();
        for (v, rot) in rotations.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &u in rot {
                if u >= n {
                    return Err(EmbeddingError::InvalidVertex(u));
                }
                if u == v {
                    return Err(EmbeddingError::Loop(v));
                }
                if !seen.insert(u) {
                    return Err(EmbeddingError::ParallelEdge(v, u));
                }
            }
        }
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                if !rotations[u].contains(&v) {
                    return Err(EmbeddingError::Asymmetric(v, u));
                }
            }
        }
        let mut g = EmbeddedGraph {
            rotations,
            rings: Vec::new(),
        };
        g.check_euler()?;
        let faces = g.trace_walks();
        let mut used = Vec::new();
        let mut stored = Vec::new();
        for ring in rings {
            g.check_cycle(&ring)
                .map_err(|e| EmbeddingError::MalformedRotation(format!("ring {ring:?}: {e}")))?;
            let fwd = faces.iter().position(|f| same_cyclic(f, &ring));
            let oriented = match fwd {
                Some(i) => (i, ring),
                None => {
                    let rev: Vec<usize> = reversed_walk(&ring);
                    match faces.iter().position(|f| same_cyclic(f, &rev)) {
                        Some(i) => (i, rev),
                        None => {
                            return Err(EmbeddingError::MalformedRotation(format!(
                                "ring {ring:?} does not bound a face"
                            )))
                        }
                    }
                }
            };
            if used.contains(&oriented.0) {
                return Err(EmbeddingError::MalformedRotation(
                    "two rings bound the same face".into(),
                ));
            }
            used.push(oriented.0);
            let walk = oriented.1;
            let m = (0..walk.len()).min_by_key(|&i| walk[i]).unwrap_or(0);
            stored.push([&walk[m..], &walk[..m]].concat());
        }
        g.rings = stored;
        Ok(g)
    }

    /// Builds a graph from oriented face walks covering every dart once.
    ///
    /// `holes` lists indices into `faces` that become rings.
    pub fn from_faces(
        vertex_count: usize,
        faces: &[Vec<usize>],
        holes: &[usize],
    ) -> Result<Self, EmbeddingError> {
        let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
        for face in faces {
            let len = face.len();
            if len < 2 {
                return Err(EmbeddingError::MalformedRotation(format!("degenerate face {face:?}")));
            }
            for i in 0..len {
                let prev = face[(i + len - 1) % len];
                let cur = face[i];
                let next = face[(i + 1) % len];
                for &x in &[prev, cur, next] {
                    if x >= vertex_count {
                        return Err(EmbeddingError::InvalidVertex(x));
                    }
                }
                if succ[cur].iter().any(|&(p, _)| p == prev) {
                    return Err(EmbeddingError::MalformedRotation(format!(
                        "dart {prev}->{cur} used twice"
                    )));
                }
                succ[cur].push((prev, next));
            }
        }
        let mut rotations = Vec::with_capacity(vertex_count);
        for (v, pairs) in succ.iter().enumerate() {
            if pairs.is_empty() {
                rotations.push(Vec::new());
                continue;
            }
            let start = pairs.iter().map(|&(p, _)| p).min().unwrap();
            let mut rot = vec![start];
            let mut cur = start;
            loop {
                let next = pairs
                    .iter()
                    .find(|&&(p, _)| p == cur)
                    .map(|&(_, nx)| nx)
                    .ok_or_else(|| {
                        EmbeddingError::MalformedRotation(format!("open rotation at vertex {v}"))
                    })?;
                if next == start {
                    break;
                }
                if rot.len() > pairs.len() {
                    return Err(EmbeddingError::MalformedRotation(format!(
                        "rotation at vertex {v} does not close"
                    )));
                }
                rot.push(next);
                cur = next;
            }
            if rot.len() != pairs.len() {
                return Err(EmbeddingError::MalformedRotation(format!(
                    "vertex {v} has a pinched neighbourhood"
                )));
            }
            rotations.push(rot);
        }
        let rings = holes.iter().map(|&h| faces[h].clone()).collect();
        EmbeddedGraph::new(rotations, rings)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotations[u].contains(&v)
    }

    pub fn rings(&self) -> &[Vec<usize>] {
        &self.rings
    }

    /// Sorted union of the ring vertices.
    pub fn ring_vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.rings.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_ring_vertex(&self, v: usize) -> bool {
        self.rings.iter().any(|r| r.contains(&v))
    }

    pub fn is_ring_edge(&self, u: usize, v: usize) -> bool {
        self.rings.iter().any(|r| {
            let l = r.len();
            (0..l).any(|i| {
                let (a, b) = (r[i], r[(i + 1) % l]);
                (a == u && b == v) || (a == v && b == u)
            })
        })
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, rot) in self.rotations.iter().enumerate() {
            for &u in rot {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Plain adjacency lists (sorted).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.rotations
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort_unstable();
                r
            })
            .collect()
    }

    /// Traces all faces and locates the ring faces.
    pub fn faces(&self) -> FaceList {
        let (dart_offset, dart_face, faces) = self.trace();
        let ring_faces = self
            .rings
            .iter()
            .map(|r| {
                faces
                    .iter()
                    .position(|f| same_cyclic(f, r))
                    .expect("validated ring bounds a face")
            })
            .collect();
        FaceList {
            faces,
            ring_faces,
            dart_face,
            dart_offset,
        }
    }

    /// Same graph with the given rings (validated).
    pub fn with_rings(&self, rings: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        EmbeddedGraph::new(self.rotations.clone(), rings)
    }

    /// Mirror image: every rotation and ring reversed.
    pub fn mirrored(&self) -> Self {
        let rotations = self
            .rotations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let rings = self.rings.iter().map(|r| reversed_walk(r)).collect();
        EmbeddedGraph { rotations, rings }
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length");
        let mut rotations = vec![Vec::new(); n];
        for (v, rot) in self.rotations.iter().enumerate() {
            rotations[perm[v]] = rot.iter().map(|&u| perm[u]).collect();
        }
        let rings = self
            .rings
            .iter()
            .map(|r| r.iter().map(|&v| perm[v]).collect())
            .collect();
        EmbeddedGraph { rotations, rings }
    }

    /// Removes the given edges, keeping the induced rotations.
    ///
    /// Ring edges cannot be removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Result<Self, EmbeddingError> {
        let mut rotations = self.rotations.clone();
        for &(u, v) in removed {
            if self.is_ring_edge(u, v) {
                return Err(EmbeddingError::MalformedRotation(format!(
                    "cannot delete ring edge {u}-{v}"
                )));
            }
            rotations[u].retain(|&w| w != v);
            rotations[v].retain(|&w| w != u);
        }
        EmbeddedGraph::new(rotations, self.rings.clone())
    }

    /// Drops the listed vertices (which must be isolated and off the rings)
    /// and compacts ids in order. Returns the graph and the old-to-new map.
    pub fn without_isolated(&self, drop: &[usize]) -> (Self, Vec<Option<usize>>) {
        let n = self.vertex_count();
        let mut map = vec![None; n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if drop.contains(&v) {
                assert!(self.rotations[v].is_empty() && !self.is_ring_vertex(v));
            } else {
                *slot = Some(next);
                next += 1;
            }
        }
        let rotations = (0..n)
            .filter(|v| map[*v].is_some())
            .map(|v| self.rotations[v].iter().map(|&u| map[u].unwrap()).collect())
            .collect();
        let rings = self
            .rings
            .iter()
            .map(|r| r.iter().map(|&v| map[v].unwrap()).collect())
            .collect();
        (EmbeddedGraph { rotations, rings }, map)
    }

    /// Connected components, each as a sorted vertex list, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.rotations[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// BFS distances from a vertex set; `usize::MAX` marks unreachable.
    pub fn bfs_from(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &self.rotations[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn check_cycle(&self, cycle: &[usize]) -> Result<(), EmbeddingError> {
        if cycle.len() < 3 {
            return Err(EmbeddingError::NotACycle(format!("{cycle:?} is shorter than 3")));
        }
        let mut seen = BTreeSet::new();
        for &v in cycle {
            if v >= self.vertex_count() {
                return Err(EmbeddingError::InvalidVertex(v));
            }
            if !seen.insert(v) {
                return Err(EmbeddingError::NotACycle(format!("{cycle:?} repeats vertex {v}")));
            }
        }
        let l = cycle.len();
        for i in 0..l {
            let (a, b) = (cycle[i], cycle[(i + 1) % l]);
            if !self.has_edge(a, b) {
                return Err(EmbeddingError::NotACycle(format!("{a}-{b} is not an edge")));
            }
        }
        Ok(())
    }

    fn check_euler(&self) -> Result<(), EmbeddingError> {
        let (_, dart_face, faces) = self.trace();
        let comps = self.components();
        let mut comp_of = vec![0; self.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut faces_per = vec![0usize; comps.len()];
        for f in &faces {
            faces_per[comp_of[f[0]]] += 1;
        }
        drop(dart_face);
        for (i, c) in comps.iter().enumerate() {
            let v = c.len();
            let e: usize = c.iter().map(|&x| self.rotations[x].len()).sum::<usize>() / 2;
            let f = if e == 0 { 1 } else { faces_per[i] };
            if v + f != e + 2 {
                return Err(EmbeddingError::EulerViolation {
                    v: self.vertex_count(),
                    e: self.edge_count(),
                    f: faces.len(),
                    components: comps.len(),
                });
            }
        }
        Ok(())
    }

    fn trace_walks(&self) -> Vec<Vec<usize>> {
        self.trace().2
    }

    fn trace(&self) -> (Vec<usize>, Vec<usize>, Vec<Vec<usize>>) {
        let n = self.vertex_count();
        let mut offset = Vec::with_capacity(n + 1);
        let mut total = 0;
        for rot in &self.rotations {
            offset.push(total);
            total += rot.len();
        }
        offset.push(total);
        let mut dart_face = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..self.rotations[v].len() {
                if dart_face[offset[v] + i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut cv, mut ci) = (v, i);
                while dart_face[offset[cv] + ci] == usize::MAX {
                    dart_face[offset[cv] + ci] = id;
                    walk.push(cv);
                    let head = self.rotations[cv][ci];
                    let back = self.rotations[head]
                        .iter()
                        .position(|&w| w == cv)
                        .expect("symmetric rotation");
                    let next = (back + 1) % self.rotations[head].len();
                    cv = head;
                    ci = next;
                }
                faces.push(walk);
            }
        }
        (offset, dart_face, faces)
    }
}

/// Traces the faces of `g`; ring faces are identified by index.
pub fn trace_faces(g: &EmbeddedGraph) -> FaceList {
    g.faces()
}

/// Same closed walk up to rotation (direction preserved).
pub(crate) fn same_cyclic(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let l = a.len();
    (0..l).any(|s| (0..l).all(|i| a[(s + i) % l] == b[i]))
}

/// The walk traversed backwards, keeping the first vertex.
pub fn reversed_walk(w: &[usize]) -> Vec<usize> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut out = vec![w[0]];
    out.extend(w[1..].iter().rev());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4() -> EmbeddedGraph {
        // Outer triangle 0,1,2 with centre 3.
        EmbeddedGraph::new(
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
            vec![],
        )
        .unwrap()
    }

    fn c4_disk() -> EmbeddedGraph {
        EmbeddedGraph::new(
            vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn k4_has_four_triangles() {
        let f = k4().faces();
        assert_eq!(f.len(), 4);
        assert!(f.faces.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn four_cycle_disk() {
        let g = c4_disk();
        let f = g.faces();
        assert_eq!(f.len(), 2);
        assert_eq!(f.ring_faces.len(), 1);
        assert!(f.faces.iter().all(|w| w.len() == 4));
    }

    #[test]
    fn reversed_ring_is_normalised() {
        let g = EmbeddedGraph::new(k4().rotations().to_vec(), vec![vec![0, 2, 1]]);
        // One orientation of the outer triangle is a face, the other is not.
        let g = g.unwrap();
        let f = g.faces();
        assert!(same_cyclic(&f.faces[f.ring_faces[0]], &g.rings()[0]));
    }

    #[test]
    fn rejects_non_face_ring() {
        let g = EmbeddedGraph::new(
            vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
            vec![vec![0, 2, 1, 3]],
        );
        assert!(g.is_err());
    }

    #[test]
    fn rejects_loops_parallel_and_asymmetry() {
        assert_eq!(
            EmbeddedGraph::new(vec![vec![0]], vec![]),
            Err(EmbeddingError::Loop(0))
        );
        assert_eq!(
            EmbeddedGraph::new(vec![vec![1, 1], vec![0, 0]], vec![]),
            Err(EmbeddingError::ParallelEdge(0, 1))
        );
        assert_eq!(
            EmbeddedGraph::new(vec![vec![1], vec![]], vec![]),
            Err(EmbeddingError::Asymmetric(0, 1))
        );
    }

    #[test]
    fn rejects_toroidal_rotation() {
        // K4 with a non-planar rotation at one vertex.
        let r = EmbeddedGraph::new(
            vec![vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
            vec![],
        );
        assert!(matches!(r, Err(EmbeddingError::EulerViolation { .. })));
    }

    #[test]
    fn from_faces_round_trip() {
        let g = k4();
        let f = g.faces();
        let h = EmbeddedGraph::from_faces(4, &f.faces, &[]).unwrap();
        assert_eq!(h.faces().len(), 4);
        assert_eq!(h.edges(), g.edges());
    }

    #[test]
    fn dart_sum_is_twice_edges() {
        let g = k4();
        let total: usize = g.faces().faces.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * g.edge_count());
    }
}
