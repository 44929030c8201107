//! Exhaustive quadrangulation of disk and annulus regions.
//!
//! A region is described by the walk of darts on its boundary. The region is
//! filled by repeatedly placing the 4-face on the first boundary dart
//! `w0 -> w1`: its other two corners are either new vertices or vertices
//! already on the boundary, and placing the face cuts the region into
//! smaller pieces. A piece of length two is a glued edge. In an annulus the
//! face may also touch the inner boundary, which turns the annulus into a
//! disk. Every simple quadrangulation arises from exactly one sequence of
//! choices, so the enumeration is complete; isomorphic outputs are merged by
//! the caller.

use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
enum Region {
    Disk(Vec<usize>),
    Annulus(Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Corner {
    New,
    Outer(usize),
    Inner(usize),
}

#[cfg(test)]
pub(crate) struct Filling {
    pub vertex_count: usize,
    pub faces: Vec<Vec<usize>>,
}

pub(crate) struct Peeler {
    max_vertices: usize,
    /// Vertices between which no new edge may be drawn.
    no_chords: u64,
    adj: Vec<u64>,
    n: usize,
    faces: Vec<Vec<usize>>,
    regions: Vec<Region>,
}

type Sink<'a> = dyn FnMut(usize, &[Vec<usize>]) + 'a;

fn rotate_from(u: &[usize], j: usize) -> impl Iterator<Item = usize> + '_ {
    (0..u.len()).map(move |i| u[(j + i) % u.len()])
}

/// Cyclic arc of `u` from index `a` to index `b` inclusive.
fn arc(u: &[usize], a: usize, b: usize) -> Vec<usize> {
    let m = u.len();
    let steps = (b + m - a) % m;
    (0..=steps).map(|i| u[(a + i) % m]).collect()
}

impl Peeler {
    /// `edges` are the edges already present (the boundary walks).
    pub(crate) fn new(vertex_count: usize, edges: &[(usize, usize)], max_vertices: usize) -> Self {
        assert!(max_vertices <= 64, "peeling supports at most 64 vertices");
        let mut adj = vec![0u64; max_vertices.max(vertex_count)];
        for &(a, b) in edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Peeler {
            max_vertices,
            no_chords: 0,
            adj,
            n: vertex_count,
            faces: Vec::new(),
            regions: Vec::new(),
        }
    }

    pub(crate) fn forbid_chords_among(&mut self, vertices: &[usize]) {
        for &v in vertices {
            self.no_chords |= 1 << v;
        }
    }

    /// Fills the disk whose boundary darts are `walk`.
    #[cfg(test)]
    pub(crate) fn fill_disk(self, walk: Vec<usize>) -> Vec<Filling> {
        let mut out = Vec::new();
        self.fill_disk_with(walk, &mut |vertex_count, faces| {
            out.push(Filling {
                vertex_count,
                faces: faces.to_vec(),
            })
        });
        out
    }

    /// Streams the fillings of a disk to `sink` as (vertex count, faces).
    pub(crate) fn fill_disk_with(mut self, walk: Vec<usize>, sink: &mut Sink) {
        self.regions.push(Region::Disk(walk));
        self.rec(sink);
    }

    /// Fills the annulus between `outer` and `inner` (both dart walks of the
    /// region).
    #[cfg(test)]
    pub(crate) fn fill_annulus(self, outer: Vec<usize>, inner: Vec<usize>) -> Vec<Filling> {
        let mut out = Vec::new();
        self.fill_annulus_with(outer, inner, &mut |vertex_count, faces| {
            out.push(Filling {
                vertex_count,
                faces: faces.to_vec(),
            })
        });
        out
    }

    /// Streams the fillings of an annulus to `sink`.
    pub(crate) fn fill_annulus_with(mut self, outer: Vec<usize>, inner: Vec<usize>, sink: &mut Sink) {
        self.regions.push(Region::Annulus(outer, inner));
        self.rec(sink);
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    fn rec(&mut self, sink: &mut Sink) {
        let Some(region) = self.regions.pop() else {
            sink(self.n, &self.faces);
            return;
        };
        match &region {
            Region::Disk(w) if w.len() == 2 => self.rec(sink),
            Region::Disk(w) if w.len() % 2 == 1 => {}
            Region::Annulus(w, u) if (w.len() + u.len()) % 2 == 1 => {}
            _ => self.place_faces(&region, sink),
        }
        self.regions.push(region);
    }

    fn place_faces(&mut self, region: &Region, sink: &mut Sink) {
        let (w, inner) = match region {
            Region::Disk(w) => (w, None),
            Region::Annulus(w, u) => (w, Some(u.as_slice())),
        };
        let l = w.len();
        let (w0, w1) = (w[0], w[1]);
        let mut corners = vec![Corner::New];
        corners.extend((2..l).filter(|&j| w[j] != w0 && w[j] != w1).map(Corner::Outer));
        if let Some(u) = inner {
            corners.extend((0..u.len()).map(Corner::Inner));
        }
        for &p in &corners {
            for &q in &corners {
                self.try_face(w, inner, p, q, sink);
            }
        }
    }

    fn try_face(
        &mut self,
        w: &[usize],
        inner: Option<&[usize]>,
        p: Corner,
        q: Corner,
        sink: &mut Sink,
    ) {
        let l = w.len();
        let (w0, w1) = (w[0], w[1]);
        let fresh = matches!(p, Corner::New) as usize + matches!(q, Corner::New) as usize;
        if self.n + fresh > self.max_vertices {
            return;
        }
        let u = inner.unwrap_or(&[]);
        let mut next = self.n;
        let mut vertex = |c: Corner| match c {
            Corner::New => {
                next += 1;
                next - 1
            }
            Corner::Outer(j) => w[j],
            Corner::Inner(j) => u[j],
        };
        let pv = vertex(p);
        let qv = vertex(q);
        if pv == qv || pv == w0 || pv == w1 || qv == w0 || qv == w1 {
            return;
        }
        // Pieces left after removing the face, and which of the three face
        // edges w1-p, p-q, q-w0 are glued to existing boundary edges.
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        let mut glued = [false; 3];
        let mut merges_inner = false;
        match (p, q) {
            (Corner::New, Corner::New) => {
                let mut a = vec![w0, qv, pv];
                a.extend_from_slice(&w[1..]);
                pieces.push(a);
            }
            (Corner::Outer(j), Corner::New) => {
                let mut a = vec![pv];
                a.extend_from_slice(&w[1..j]);
                glued[0] = j == 2;
                let mut b = w[j..].to_vec();
                b.extend([w0, qv]);
                pieces.push(a);
                pieces.push(b);
            }
            (Corner::New, Corner::Outer(k)) => {
                let mut a = vec![qv, pv];
                a.extend_from_slice(&w[1..k]);
                let mut b = w[k..].to_vec();
                b.push(w0);
                glued[2] = k == l - 1;
                pieces.push(a);
                pieces.push(b);
            }
            (Corner::Outer(j), Corner::Outer(k)) => {
                if j >= k {
                    return;
                }
                let mut a = vec![pv];
                a.extend_from_slice(&w[1..j]);
                glued[0] = j == 2;
                let c = w[j..=k].to_vec();
                glued[1] = k == j + 1;
                let mut b = w[k..].to_vec();
                b.push(w0);
                glued[2] = k == l - 1;
                pieces.extend([a, c, b]);
            }
            (Corner::Inner(j), Corner::New) => {
                let mut a = vec![w0, qv];
                a.extend(rotate_from(u, j));
                a.push(u[j]);
                a.extend_from_slice(&w[1..]);
                pieces.push(a);
                merges_inner = true;
            }
            (Corner::Inner(j), Corner::Outer(k)) => {
                let mut x = vec![qv];
                x.extend(rotate_from(u, j));
                x.push(u[j]);
                x.extend_from_slice(&w[1..k]);
                let mut y = w[k..].to_vec();
                y.push(w0);
                glued[2] = k == l - 1;
                pieces.extend([x, y]);
                merges_inner = true;
            }
            (Corner::New, Corner::Inner(k)) => {
                let mut a = vec![w0];
                a.extend(rotate_from(u, k));
                a.extend([u[k], pv]);
                a.extend_from_slice(&w[1..]);
                pieces.push(a);
                merges_inner = true;
            }
            (Corner::Outer(j), Corner::Inner(k)) => {
                let mut x = vec![pv];
                x.extend_from_slice(&w[1..j]);
                glued[0] = j == 2;
                let mut y = vec![w0];
                y.extend(rotate_from(u, k));
                y.push(u[k]);
                y.extend_from_slice(&w[j..]);
                pieces.extend([x, y]);
                merges_inner = true;
            }
            (Corner::Inner(j), Corner::Inner(k)) => {
                let mut main = vec![w0];
                main.extend(arc(u, k, j));
                main.extend_from_slice(&w[1..]);
                let c = arc(u, j, k);
                glued[1] = c.len() == 2;
                pieces.extend([main, c]);
                merges_inner = true;
            }
        }
        let face_edges = [(w1, pv), (pv, qv), (qv, w0)];
        let mut added = Vec::new();
        for (i, &(a, b)) in face_edges.iter().enumerate() {
            if glued[i] {
                continue;
            }
            let chord = self.no_chords >> a & 1 == 1 && self.no_chords >> b & 1 == 1;
            if self.has_edge(a, b) || chord {
                return;
            }
            added.push((a, b));
        }
        // A piece may only carry the hole if it is a genuine region.
        let mut variants: Vec<Vec<Region>> = Vec::new();
        let open: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].len() > 2).collect();
        let as_disks = |pieces: &[Vec<usize>]| -> Vec<Region> {
            pieces.iter().map(|p| Region::Disk(p.clone())).collect()
        };
        match inner {
            Some(u) if !merges_inner => {
                for &h in &open {
                    let mut rs = as_disks(&pieces);
                    rs[h] = Region::Annulus(pieces[h].clone(), u.to_vec());
                    variants.push(rs);
                }
            }
            _ => variants.push(as_disks(&pieces)),
        }
        let saved_n = self.n;
        self.n += fresh;
        for &(a, b) in &added {
            self.adj[a] |= 1 << b;
            self.adj[b] |= 1 << a;
        }
        self.faces.push(vec![w0, w1, pv, qv]);
        for rs in variants {
            let depth = self.regions.len();
            self.regions.extend(rs);
            self.rec(sink);
            self.regions.truncate(depth);
        }
        self.faces.pop();
        for &(a, b) in &added {
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
        self.n = saved_n;
    }
}

pub(crate) const MAX_FACE_VERTICES: usize = 32;

/// Rotation successors of a filling given by its faces: `succ[y][x] = z`
/// for consecutive `x y z` on a face walk.
pub(crate) struct FaceRotation {
    n: usize,
    succ: [[u8; MAX_FACE_VERTICES]; MAX_FACE_VERTICES],
    pred: [[u8; MAX_FACE_VERTICES]; MAX_FACE_VERTICES],
}

impl FaceRotation {
    /// `faces` are the internal faces, `rings` the hole walks.
    pub(crate) fn new(n: usize, faces: &[Vec<usize>], rings: &[&[usize]]) -> Self {
        let mut r = FaceRotation {
            n,
            succ: [[0; MAX_FACE_VERTICES]; MAX_FACE_VERTICES],
            pred: [[0; MAX_FACE_VERTICES]; MAX_FACE_VERTICES],
        };
        for f in faces.iter().map(Vec::as_slice).chain(rings.iter().copied()) {
            let l = f.len();
            for i in 0..l {
                let (x, y, z) = (f[i], f[(i + 1) % l], f[(i + 2) % l]);
                r.succ[y][x] = z as u8;
                r.pred[y][z] = x as u8;
            }
        }
        r
    }

    /// Breadth-first code from the dart `v -> u`, turning with `succ` when
    /// `forward`, else with `pred`. Returns `false` as soon as the code
    /// exceeds `best`; otherwise `code` holds it and `true` is returned
    /// when it is smaller than `best`.
    fn code(&self, v: usize, u: usize, forward: bool, best: &[u8], code: &mut Vec<u8>) -> bool {
        let turn = if forward { &self.succ } else { &self.pred };
        let mut num = [u8::MAX; MAX_FACE_VERTICES];
        let mut parent = [0u8; MAX_FACE_VERTICES];
        let mut queue = [0u8; MAX_FACE_VERTICES];
        let (mut head, mut tail) = (0, 1);
        queue[0] = v as u8;
        num[v] = 0;
        parent[v] = u as u8;
        let mut next = 1u8;
        let mut smaller = best.is_empty();
        code.clear();
        let emit = |code: &mut Vec<u8>, x: u8, smaller: &mut bool| -> bool {
            if !*smaller {
                match x.cmp(&best[code.len()]) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Less => *smaller = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            code.push(x);
            true
        };
        while head < tail {
            let x = queue[head] as usize;
            head += 1;
            let start = parent[x] as usize;
            let mut y = start;
            loop {
                if num[y] == u8::MAX {
                    num[y] = next;
                    next += 1;
                    parent[y] = x as u8;
                    queue[tail] = y as u8;
                    tail += 1;
                }
                if !emit(code, num[y] + 1, &mut smaller) {
                    return false;
                }
                y = turn[x][y] as usize;
                if y == start {
                    break;
                }
            }
            if !emit(code, 0, &mut smaller) {
                return false;
            }
        }
        debug_assert_eq!(tail, self.n);
        smaller
    }

    /// Smallest code over all ring darts, read forward along the ring walk
    /// and backward against it. These are the images of one ring dart under
    /// the ring-respecting isomorphisms, so the key is an isomorphism
    /// invariant of connected fillings, and a complete one since a rooted
    /// code determines the rotation system.
    pub(crate) fn ring_key(&self, rings: &[&[usize]]) -> Vec<u8> {
        let mut best = Vec::new();
        let mut code = Vec::new();
        for r in rings {
            let l = r.len();
            for i in 0..l {
                for (u, forward) in [(r[(i + 1) % l], true), (r[(i + l - 1) % l], false)] {
                    if self.code(r[i], u, forward, &best, &mut code) {
                        std::mem::swap(&mut best, &mut code);
                    }
                }
            }
        }
        best
    }

    /// 128-bit digest of [`FaceRotation::ring_key`].
    pub(crate) fn ring_digest(&self, rings: &[&[usize]]) -> u128 {
        let d = Sha256::digest(self.ring_key(rings));
        u128::from_be_bytes(d[..16].try_into().expect("16 bytes"))
    }
}
