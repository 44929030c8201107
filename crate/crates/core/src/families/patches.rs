use std::collections::{BTreeMap, HashSet};

use crate::analysis::canonical_form;
use crate::embedding::{reversed_walk, EmbeddedGraph};

use super::peel::{FaceRotation, Peeler, MAX_FACE_VERTICES};
use super::FamilyError;

/// Quadrangulated disks bounded by a 6-ring with at most `max_internal`
/// internal vertices, one per isomorphism class, in canonical order.
///
/// The ring is `0 1 2 3 4 5`; internal vertices follow. With
/// `allow_chords == false` the ring is chordless (these are the patches).
pub fn six_ring_disks(max_internal: usize, allow_chords: bool) -> Vec<EmbeddedGraph> {
    let mut classes = BTreeMap::new();
    for_each_six_ring_disk(max_internal, allow_chords, |g| {
        classes.insert(canonical_form(g).code, g.clone());
    });
    classes.into_values().collect()
}

/// Calls `f` once per isomorphism class of quadrangulated disks bounded by
/// the 6-ring `0 1 2 3 4 5` with at most `max_internal` internal vertices,
/// in generation order. Streams, so memory stays at one 128-bit key per
/// class.
pub fn for_each_six_ring_disk(max_internal: usize, allow_chords: bool, mut f: impl FnMut(&EmbeddedGraph)) {
    assert!(6 + max_internal <= MAX_FACE_VERTICES, "at most {} internal vertices", MAX_FACE_VERTICES - 6);
    let ring: Vec<usize> = (0..6).collect();
    let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let mut peeler = Peeler::new(6, &edges, 6 + max_internal);
    if !allow_chords {
        peeler.forbid_chords_among(&ring);
    }
    let mut seen: HashSet<u128> = HashSet::new();
    peeler.fill_disk_with(reversed_walk(&ring), &mut |n, faces| {
        let key = FaceRotation::new(n, faces, &[&ring]).ring_digest(&[&ring]);
        if !seen.insert(key) {
            return;
        }
        let mut all = faces.to_vec();
        all.push(ring.clone());
        let hole = all.len() - 1;
        let g = EmbeddedGraph::from_faces(n, &all, &[hole]).expect("peeling yields valid disks");
        f(&g);
    });
}

/// Patches with at most `max_internal` internal vertices: disks with a
/// chordless 6-ring whose other faces all have length 4.
pub fn generate_patches(max_internal: usize) -> Vec<EmbeddedGraph> {
    six_ring_disks(max_internal, false)
}

/// Where and how a patch is glued in place of a degree-3 vertex.
#[derive(Debug, Clone)]
pub struct PatchPlacement {
    pub vertex: usize,
    pub patch: EmbeddedGraph,
    /// Rotates the patch ring against the hexagon `x a y b z c`.
    pub offset: usize,
    /// Glue the mirror image of the patch.
    pub mirrored: bool,
}

impl PatchPlacement {
    pub fn new(vertex: usize, patch: EmbeddedGraph) -> Self {
        PatchPlacement {
            vertex,
            patch,
            offset: 0,
            mirrored: false,
        }
    }
}

/// Replaces each placed vertex `v` (neighbours `x, y, z`) by a hexagon
/// `x a y b z c` filled with the given patch.
///
/// Returns the new graph and the map from old vertex ids to new ones
/// (`None` for the removed vertices).
pub fn patch_graph(
    g: &EmbeddedGraph,
    placements: &[PatchPlacement],
) -> Result<(EmbeddedGraph, Vec<Option<usize>>), FamilyError> {
    let n = g.vertex_count();
    for (i, p) in placements.iter().enumerate() {
        let v = p.vertex;
        if v >= n {
            return Err(FamilyError::InvalidParameter(format!("vertex {v} out of range")));
        }
        if g.is_ring_vertex(v) {
            return Err(FamilyError::RingVertex(v));
        }
        if g.degree(v) != 3 {
            return Err(FamilyError::WrongDegree(v));
        }
        for q in &placements[..i] {
            if q.vertex == v {
                return Err(FamilyError::InvalidParameter(format!("vertex {v} placed twice")));
            }
            if g.has_edge(q.vertex, v) {
                return Err(FamilyError::NotIndependent(q.vertex, v));
            }
        }
        let ring = p.patch.rings();
        if ring.len() != 1 || ring[0].len() != 6 {
            return Err(FamilyError::InvalidParameter(
                "a patch has exactly one ring of length 6".into(),
            ));
        }
    }
    let (mut faces, holes) = g.faces_with_holes();
    let mut next = n;
    for p in placements {
        let v = p.vertex;
        let nb = g.rotation(v).to_vec();
        let c = [next, next + 1, next + 2];
        next += 3;
        for f in faces.iter_mut() {
            let l = f.len();
            for k in 0..l {
                if f[k] == v {
                    let prev = f[(k + l - 1) % l];
                    let i = nb.iter().position(|&x| x == prev).unwrap();
                    f[k] = c[i];
                }
            }
        }
        // Darts of the emptied region, as seen from inside it.
        let hexagon = [nb[0], c[2], nb[2], c[1], nb[1], c[0]];
        let patch = if p.mirrored {
            p.patch.mirrored()
        } else {
            p.patch.clone()
        };
        let inner = reversed_walk(&patch.rings()[0]);
        let mut map = vec![usize::MAX; patch.vertex_count()];
        for (k, &r) in inner.iter().enumerate() {
            map[r] = hexagon[(k + p.offset) % 6];
        }
        for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = next;
            next += 1;
        }
        let pf = patch.faces();
        for i in pf.internal_faces() {
            faces.push(pf.faces[i].iter().map(|&x| map[x]).collect());
        }
    }
    let full = EmbeddedGraph::from_faces(next, &faces, &holes)?;
    let removed: Vec<usize> = placements.iter().map(|p| p.vertex).collect();
    let (out, map) = full.without_isolated(&removed);
    Ok((out, map[..n].to_vec()))
}
