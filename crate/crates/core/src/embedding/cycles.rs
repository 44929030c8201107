use std::collections::VecDeque;

use super::{EmbeddedGraph, EmbeddingError, FaceList};

/// A cycle of a host graph, tagged with its contractibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleRef {
    pub vertices: Vec<usize>,
    pub contractible: bool,
}

impl CycleRef {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Which side of a cycle a face or vertex lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The side containing the faces of the forward darts of the cycle.
    Forward,
    Backward,
    /// On the cycle itself (vertices only).
    On,
    /// In a different component of the graph.
    Detached,
}

/// The two regions a cycle cuts the sphere into.
#[derive(Debug, Clone)]
pub struct CycleSides {
    pub cycle: Vec<usize>,
    pub face_side: Vec<Side>,
    faces: FaceList,
}

impl CycleSides {
    /// Splits the faces of `g` along `cycle` by traversing the dual without
    /// crossing cycle edges.
    pub fn new(g: &EmbeddedGraph, cycle: &[usize]) -> Result<Self, EmbeddingError> {
        g.check_cycle(cycle)?;
        let faces = g.faces();
        let nf = faces.len();
        let l = cycle.len();
        let on_cycle = |a: usize, b: usize| {
            (0..l).any(|i| {
                let (x, y) = (cycle[i], cycle[(i + 1) % l]);
                (x == a && y == b) || (x == b && y == a)
            })
        };
        // Dual adjacency through non-cycle edges.
        let mut dual: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for (u, v) in g.edges() {
            if on_cycle(u, v) {
                continue;
            }
            let a = faces.face_of_dart(g, u, v);
            let b = faces.face_of_dart(g, v, u);
            dual[a].push(b);
            dual[b].push(a);
        }
        let mut side = vec![Side::Detached; nf];
        let mut queue = VecDeque::new();
        for i in 0..l {
            let f = faces.face_of_dart(g, cycle[i], cycle[(i + 1) % l]);
            if side[f] == Side::Detached {
                side[f] = Side::Forward;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            for &h in &dual[f] {
                if side[h] == Side::Detached {
                    side[h] = Side::Forward;
                    queue.push_back(h);
                }
            }
        }
        for i in 0..l {
            let f = faces.face_of_dart(g, cycle[(i + 1) % l], cycle[i]);
            if side[f] == Side::Forward {
                return Err(EmbeddingError::NotACycle(format!(
                    "{cycle:?} does not separate the surface"
                )));
            }
            if side[f] == Side::Detached {
                side[f] = Side::Backward;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            for &h in &dual[f] {
                if side[h] == Side::Detached {
                    side[h] = Side::Backward;
                    queue.push_back(h);
                }
            }
        }
        Ok(CycleSides {
            cycle: cycle.to_vec(),
            face_side: side,
            faces,
        })
    }

    pub fn faces(&self) -> &FaceList {
        &self.faces
    }

    /// Side of ring `i`'s hole face.
    pub fn ring_side(&self, ring: usize) -> Side {
        self.face_side[self.faces.ring_faces[ring]]
    }

    /// Side of a vertex: `On` for cycle vertices, otherwise the side of any
    /// incident face.
    pub fn vertex_side(&self, g: &EmbeddedGraph, v: usize) -> Side {
        if self.cycle.contains(&v) {
            return Side::On;
        }
        match g.rotation(v).first() {
            Some(&u) => self.face_side[self.faces.face_of_dart(g, v, u)],
            None => Side::Detached,
        }
    }

    /// True iff all holes attached to the cycle's component lie on one side.
    pub fn is_contractible(&self) -> bool {
        let sides: Vec<Side> = (0..self.faces.ring_faces.len())
            .map(|r| self.ring_side(r))
            .filter(|s| *s != Side::Detached)
            .collect();
        sides.windows(2).all(|w| w[0] == w[1])
    }

    /// Faces of the side not containing any hole (contractible cycles only;
    /// on the sphere the forward side is returned).
    pub fn disk_side(&self) -> Option<Side> {
        if !self.is_contractible() {
            return None;
        }
        let hole = (0..self.faces.ring_faces.len())
            .map(|r| self.ring_side(r))
            .find(|s| *s != Side::Detached);
        Some(match hole {
            Some(Side::Forward) => Side::Backward,
            Some(_) => Side::Forward,
            None => Side::Forward,
        })
    }

    pub fn faces_on(&self, side: Side) -> Vec<usize> {
        (0..self.face_side.len())
            .filter(|&f| self.face_side[f] == side)
            .collect()
    }
}

/// True iff every hole lies in one region of the surface cut along `cycle`.
pub fn is_contractible(g: &EmbeddedGraph, cycle: &[usize]) -> Result<bool, EmbeddingError> {
    Ok(CycleSides::new(g, cycle)?.is_contractible())
}

/// Length of a shortest path between two vertex sets; `None` if no path.
pub fn distance(g: &EmbeddedGraph, a: &[usize], b: &[usize]) -> Result<Option<usize>, EmbeddingError> {
    if a.is_empty() || b.is_empty() {
        return Err(EmbeddingError::EmptyVertexSet);
    }
    for &v in a.iter().chain(b) {
        if v >= g.vertex_count() {
            return Err(EmbeddingError::InvalidVertex(v));
        }
    }
    let d = g.bfs_from(a);
    let best = b.iter().map(|&v| d[v]).min().unwrap();
    Ok((best != usize::MAX).then_some(best))
}

/// All simple cycles of length at most `max_len` in a plain adjacency list.
///
/// Each cycle starts at its smallest vertex and continues towards the smaller
/// of its two neighbours on the cycle. Results are sorted by their sorted
/// vertex set, then by sequence.
pub(crate) fn simple_cycles(adj: &[Vec<usize>], max_len: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    fn dfs(
        adj: &[Vec<usize>],
        start: usize,
        max_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for &u in &adj[v] {
            if u == start && path.len() >= 3 && path[1] < v {
                out.push(path.clone());
            }
            if u > start && !on_path[u] && path.len() < max_len {
                on_path[u] = true;
                path.push(u);
                dfs(adj, start, max_len, path, on_path, out);
                path.pop();
                on_path[u] = false;
            }
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        dfs(adj, s, max_len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    sort_cycles(&mut out);
    out
}

pub(crate) fn sort_cycles(cycles: &mut [Vec<usize>]) {
    cycles.sort_by_cached_key(|c| {
        let mut s = c.clone();
        s.sort_unstable();
        (s, c.clone())
    });
}

/// Every cycle of length at most `max_len`, each tagged by contractibility.
pub fn enumerate_short_cycles(
    g: &EmbeddedGraph,
    max_len: usize,
    only_noncontractible: bool,
) -> Result<Vec<CycleRef>, EmbeddingError> {
    if max_len < 3 {
        return Err(EmbeddingError::NotACycle(format!(
            "cycle length bound {max_len} is below 3"
        )));
    }
    let mut out = Vec::new();
    for c in simple_cycles(&g.adjacency(), max_len) {
        let contractible = is_contractible(g, &c)?;
        if only_noncontractible && contractible {
            continue;
        }
        out.push(CycleRef {
            vertices: c,
            contractible,
        });
    }
    Ok(out)
}

/// No contractible triangles and all triangles pairwise vertex-disjoint.
pub fn is_tame(g: &EmbeddedGraph) -> bool {
    let triangles = match enumerate_short_cycles(g, 3, false) {
        Ok(t) => t,
        Err(_) => return false,
    };
    if triangles.iter().any(|t| t.contractible) {
        return false;
    }
    for (i, a) in triangles.iter().enumerate() {
        for b in &triangles[i + 1..] {
            if a.vertices.iter().any(|v| b.vertices.contains(v)) {
                return false;
            }
        }
    }
    true
}
