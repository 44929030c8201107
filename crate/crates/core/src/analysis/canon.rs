//! Canonical codes for embedded graphs with rings.
//!
//! Two graphs get equal codes iff some bijection maps rotations to rotations
//! (possibly all reversed) and ring faces to ring faces. The code of a
//! connected component is the smallest breadth-first code over all starting
//! darts and both orientations; components are sorted.

use std::collections::VecDeque;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::embedding::EmbeddedGraph;

/// A canonical code together with the labeling that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: Vec<u32>,
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> Vec<u8> {
        self.code.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    /// First 16 hex digits of the SHA-256 of the code bytes.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.bytes());
        let mut s = String::with_capacity(16);
        for b in &digest[..8] {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

struct Darts {
    offset: Vec<usize>,
    hole: Vec<bool>,
}

impl Darts {
    fn new(g: &EmbeddedGraph) -> Self {
        let faces = g.faces();
        let mut offset = Vec::with_capacity(g.vertex_count() + 1);
        let mut total = 0;
        for v in 0..g.vertex_count() {
            offset.push(total);
            total += g.degree(v);
        }
        offset.push(total);
        let mut hole = vec![false; total];
        for v in 0..g.vertex_count() {
            for (i, &u) in g.rotation(v).iter().enumerate() {
                hole[offset[v] + i] = faces.is_hole(faces.face_of_dart(g, v, u));
            }
        }
        Darts { offset, hole }
    }

    fn is_hole(&self, g: &EmbeddedGraph, v: usize, u: usize) -> bool {
        let pos = g.rotation(v).iter().position(|&x| x == u).unwrap();
        self.hole[self.offset[v] + pos]
    }
}

/// Breadth-first code from the dart `v -> rot(v)[start]` in orientation
/// `forward`, restricted to the component of `v`.
fn bfs_code(
    g: &EmbeddedGraph,
    darts: &Darts,
    v: usize,
    start: usize,
    forward: bool,
    best: Option<&[u32]>,
) -> Option<(Vec<u32>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut num = vec![usize::MAX; n];
    let mut reference = vec![0usize; n];
    let mut order = vec![v];
    num[v] = 0;
    reference[v] = start;
    let mut queue = VecDeque::from([v]);
    let mut code = Vec::new();
    let mut prefix_equal = true;
    let push = |code: &mut Vec<u32>, x: u32, prefix_equal: &mut bool| -> bool {
        code.push(x);
        if *prefix_equal {
            if let Some(b) = best {
                let i = code.len() - 1;
                match b.get(i) {
                    Some(&y) if x > y => return false,
                    Some(&y) if x < y => *prefix_equal = false,
                    _ => {}
                }
            }
        }
        true
    };
    while let Some(x) = queue.pop_front() {
        let rot = g.rotation(x);
        let d = rot.len();
        for t in 0..d {
            let idx = if forward {
                (reference[x] + t) % d
            } else {
                (reference[x] + d - t) % d
            };
            let y = rot[idx];
            if num[y] == usize::MAX {
                num[y] = order.len();
                order.push(y);
                reference[y] = g.rotation(y).iter().position(|&z| z == x).unwrap();
                queue.push_back(y);
            }
            let hole = if forward {
                darts.hole[darts.offset[x] + idx]
            } else {
                darts.is_hole(g, y, x)
            };
            let entry = 2 * (num[y] as u32 + 1) + hole as u32;
            if !push(&mut code, entry, &mut prefix_equal) {
                return None;
            }
        }
        if !push(&mut code, 0, &mut prefix_equal) {
            return None;
        }
    }
    Some((code, order))
}

/// Canonical form of `g` (see the module docs).
pub fn canonical_form(g: &EmbeddedGraph) -> CanonicalForm {
    let darts = Darts::new(g);
    let n = g.vertex_count();
    let invariant = |v: usize| (g.degree(v), g.is_ring_vertex(v));
    let mut comps: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for comp in g.components() {
        let key = comp.iter().map(|&v| invariant(v)).min().unwrap();
        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        for &v in comp.iter().filter(|&&v| invariant(v) == key) {
            if g.degree(v) == 0 {
                best = Some((vec![g.is_ring_vertex(v) as u32], vec![v]));
                break;
            }
            for start in 0..g.degree(v) {
                for forward in [true, false] {
                    let bound = best.as_ref().map(|b| b.0.as_slice());
                    if let Some(c) = bfs_code(g, &darts, v, start, forward, bound) {
                        if best.as_ref().map_or(true, |b| c.0 < b.0) {
                            best = Some(c);
                        }
                    }
                }
            }
        }
        let (code, order) = best.expect("component is non-empty");
        comps.push((code, order));
    }
    comps.sort();
    let mut code = vec![n as u32, g.edge_count() as u32, g.rings().len() as u32];
    let mut labeling = vec![0; n];
    let mut next = 0;
    for (c, order) in &comps {
        code.push(c.len() as u32);
        code.extend_from_slice(c);
        for &v in order {
            labeling[v] = next;
            next += 1;
        }
    }
    CanonicalForm { code, labeling }
}

/// Breadth-first code of the component of `v`, rooted at the dart `v -> u`
/// and read in the rotation direction. Equal codes mean an
/// orientation-preserving isomorphism of components taking root to root.
pub(crate) fn rooted_code(g: &EmbeddedGraph, v: usize, u: usize) -> Vec<u32> {
    let darts = Darts::new(g);
    let start = g.rotation(v).iter().position(|&x| x == u).expect("root is a dart");
    bfs_code(g, &darts, v, start, true, None).expect("no bound").0
}

/// Convenience: short hash of the canonical form.
pub fn canonical_hash(g: &EmbeddedGraph) -> String {
    canonical_form(g).hash_hex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cube, prism, reduced_thomas_walls, thomas_walls};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariant_under_relabeling_and_mirror() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [prism(), cube(), thomas_walls(3).unwrap(), reduced_thomas_walls(3).unwrap().0] {
            let base = canonical_form(&g).code;
            for _ in 0..50 {
                let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabeled(&perm)).code, base);
            }
            assert_eq!(canonical_form(&g.mirrored()).code, base);
        }
    }

    #[test]
    fn ring_swap_and_distinctions() {
        let p = prism();
        let swapped = p
            .with_rings(vec![p.rings()[1].clone(), p.rings()[0].clone()])
            .unwrap();
        assert_eq!(canonical_hash(&p), canonical_hash(&swapped));
        assert_ne!(canonical_hash(&p), canonical_hash(&cube()));
        let one_ring = p.with_rings(vec![p.rings()[0].clone()]).unwrap();
        assert_ne!(canonical_hash(&p), canonical_hash(&one_ring));
    }

    #[test]
    fn labeling_is_a_permutation_reproducing_the_code() {
        let g = thomas_walls(2).unwrap();
        let cf = canonical_form(&g);
        let relabeled = g.relabeled(&cf.labeling);
        assert_eq!(canonical_form(&relabeled).code, cf.code);
        let mut seen = cf.labeling.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..g.vertex_count()).collect::<Vec<_>>());
    }
}
