use std::collections::{BTreeMap, HashSet};

use crate::analysis::canonical_form;
use crate::embedding::{reversed_walk, EmbeddedGraph};

use super::peel::{FaceRotation, Peeler};
use super::FamilyError;

/// All 3,3-quadrangulations on at most `max_vertices` vertices, one per
/// isomorphism class, in canonical order. The rings are vertex-disjoint
/// triangles (`0 1 2` and `3 4 5`); every other face has length 4.
pub fn generate_quad33(max_vertices: usize) -> Vec<EmbeddedGraph> {
    if max_vertices < 6 {
        return Vec::new();
    }
    let r1 = vec![0, 1, 2];
    let r2 = vec![3, 4, 5];
    let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
    let peeler = Peeler::new(6, &edges, max_vertices);
    let rings: [&[usize]; 2] = [&r1, &r2];
    let mut seen = HashSet::new();
    let mut classes = BTreeMap::new();
    peeler.fill_annulus_with(reversed_walk(&r1), reversed_walk(&r2), &mut |n, faces| {
        if !seen.insert(FaceRotation::new(n, faces, &rings).ring_digest(&rings)) {
            return;
        }
        let mut all = faces.to_vec();
        all.push(r1.clone());
        all.push(r2.clone());
        let holes = [all.len() - 2, all.len() - 1];
        let g = EmbeddedGraph::from_faces(n, &all, &holes).expect("peeling yields valid cylinders");
        classes.insert(canonical_form(&g).code, g);
    });
    classes.into_values().collect()
}

/// True iff `g` has two disjoint triangle rings and every other face has
/// length 4.
pub fn is_quad33(g: &EmbeddedGraph) -> bool {
    let rings = g.rings();
    if rings.len() != 2 || rings.iter().any(|r| r.len() != 3) {
        return false;
    }
    if rings[0].iter().any(|v| rings[1].contains(v)) {
        return false;
    }
    let f = g.faces();
    let ok = f.internal_faces().all(|i| f.faces[i].len() == 4);
    ok
}

/// Subdivides at most one edge of each ring of a 3,3-quadrangulation.
/// `edges[i]` must be an edge of ring `i`.
pub fn near_quad33(
    g: &EmbeddedGraph,
    edges: [Option<(usize, usize)>; 2],
) -> Result<EmbeddedGraph, FamilyError> {
    if !is_quad33(g) {
        return Err(FamilyError::InvalidParameter(
            "input is not a 3,3-quadrangulation".into(),
        ));
    }
    let mut out = g.clone();
    for (i, e) in edges.iter().enumerate() {
        let Some((a, b)) = *e else { continue };
        let ring = &g.rings()[i];
        let on_ring = (0..3).any(|k| {
            let (x, y) = (ring[k], ring[(k + 1) % 3]);
            (x, y) == (a, b) || (y, x) == (a, b)
        });
        if !on_ring {
            return Err(FamilyError::EdgeNotOnRing(a, b));
        }
        out = out.subdivided(a, b)?.0;
    }
    Ok(out)
}

/// A near 3,3-quadrangulation split into the 3,3-quadrangulation it came
/// from and the suppressed subdivision vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearQuadParts {
    pub base: EmbeddedGraph,
    /// `subdivided[i]` is the base edge of ring `i` that was subdivided.
    pub subdivided: [Option<(usize, usize)>; 2],
    /// Old vertex ids to base ids; `None` for suppressed vertices.
    pub map: Vec<Option<usize>>,
}

impl NearQuadParts {
    /// Rebuilds the near 3,3-quadrangulation from the parts.
    pub fn rebuild(&self) -> Result<EmbeddedGraph, FamilyError> {
        near_quad33(&self.base, self.subdivided)
    }
}

fn suppress(g: &EmbeddedGraph, drop: &[usize]) -> Option<(EmbeddedGraph, Vec<Option<usize>>)> {
    let (faces, holes) = g.faces_with_holes();
    let mut map = vec![None; g.vertex_count()];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if !drop.contains(&v) {
            *slot = Some(next);
            next += 1;
        }
    }
    let faces: Vec<Vec<usize>> = faces
        .iter()
        .map(|w| w.iter().filter_map(|&v| map[v]).collect())
        .collect();
    let base = EmbeddedGraph::from_faces(next, &faces, &holes).ok()?;
    Some((base, map))
}

/// Recognises a near 3,3-quadrangulation by suppressing at most one
/// degree-2 vertex on each ring and testing the result with [`is_quad33`].
pub fn near_quad33_parts(g: &EmbeddedGraph) -> Option<NearQuadParts> {
    let rings = g.rings();
    if rings.len() != 2 {
        return None;
    }
    let choices: Vec<Vec<Option<usize>>> = rings
        .iter()
        .map(|r| match r.len() {
            3 => vec![None],
            4 => r.iter().filter(|&&v| g.degree(v) == 2).map(|&v| Some(v)).collect(),
            _ => Vec::new(),
        })
        .collect();
    for &s0 in &choices[0] {
        for &s1 in &choices[1] {
            let drop: Vec<usize> = [s0, s1].into_iter().flatten().collect();
            let Some((base, map)) = suppress(g, &drop) else { continue };
            if !is_quad33(&base) {
                continue;
            }
            let ends = |s: Option<usize>| {
                s.map(|s| {
                    let rot = g.rotation(s);
                    (map[rot[0]].unwrap(), map[rot[1]].unwrap())
                })
            };
            return Some(NearQuadParts {
                base,
                subdivided: [ends(s0), ends(s1)],
                map,
            });
        }
    }
    None
}
