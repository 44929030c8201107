use crate::embedding::{CycleRef, CycleSides, EmbeddedGraph, Side};

use super::SurgeryError;

/// A transformed graph with the map from old vertex ids to new ones (`None`
/// for removed vertices).
#[derive(Debug, Clone)]
pub struct Transformed {
    pub graph: EmbeddedGraph,
    pub map: Vec<Option<usize>>,
}

/// Removes everything strictly between the non-contractible triangles `t1`
/// and `t2` and identifies `t1[i]` with `t2[i]`.
///
/// The triangles may share vertices, but only at equal positions, and must
/// be listed so that the correspondence preserves the orientation around the
/// cylinder.
pub fn collapse_triangle_pair(
    g: &EmbeddedGraph,
    t1: &CycleRef,
    t2: &CycleRef,
) -> Result<Transformed, SurgeryError> {
    let bad = |m: &str| SurgeryError::NotTrianglePair(m.into());
    let (a, b) = (&t1.vertices, &t2.vertices);
    if a.len() != 3 || b.len() != 3 {
        return Err(bad("both cycles must be triangles"));
    }
    if g.rings().len() != 2 {
        return Err(bad("graph is not a cylinder"));
    }
    for i in 0..3 {
        for j in 0..3 {
            if a[i] == b[j] && i != j {
                return Err(bad("shared vertices must correspond"));
            }
        }
    }
    if a == b {
        return Err(bad("the region between the triangles is empty"));
    }
    let s1 = CycleSides::new(g, a)?;
    let s2 = CycleSides::new(g, b)?;
    if s1.is_contractible() || s2.is_contractible() {
        return Err(bad("triangles must be non-contractible"));
    }
    let (r0a, r0b) = (s1.ring_side(0), s2.ring_side(0));
    if r0a != r0b {
        return Err(bad("the correspondence reverses the orientation"));
    }
    let flip = |s: Side| match s {
        Side::Forward => Side::Backward,
        _ => Side::Forward,
    };
    let faces = s1.faces();
    let nf = faces.len();
    // Faces between the triangles, trying both orders along the cylinder.
    let between = |near: &CycleSides, far: &CycleSides, side_near: Side, side_far: Side| -> Vec<usize> {
        (0..nf)
            .filter(|&f| near.face_side[f] == side_near && far.face_side[f] == side_far)
            .collect()
    };
    let mut sigma = between(&s1, &s2, flip(r0a), r0b);
    if sigma.is_empty() {
        sigma = between(&s2, &s1, flip(r0b), r0a);
    }
    if sigma.is_empty() {
        return Err(bad("the region between the triangles is empty"));
    }
    if sigma.iter().any(|&f| faces.is_hole(f)) {
        return Err(bad("a hole lies between the triangles"));
    }
    let n = g.vertex_count();
    let rename = |v: usize| b.iter().position(|&x| x == v).map_or(v, |i| a[i]);
    let mut kept_faces = Vec::new();
    let mut holes = Vec::new();
    for f in 0..nf {
        if sigma.contains(&f) {
            continue;
        }
        if faces.is_hole(f) {
            holes.push(kept_faces.len());
        }
        kept_faces.push(faces.faces[f].iter().map(|&v| rename(v)).collect::<Vec<usize>>());
    }
    let mut used = vec![false; n];
    for w in &kept_faces {
        for &v in w {
            used[v] = true;
        }
    }
    let mut new_id = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if used[v] {
            new_id[v] = Some(next);
            next += 1;
        }
    }
    let relabeled: Vec<Vec<usize>> = kept_faces
        .iter()
        .map(|w| w.iter().map(|&v| new_id[v].unwrap()).collect())
        .collect();
    let graph = EmbeddedGraph::from_faces(next, &relabeled, &holes)?;
    let map = (0..n).map(|v| new_id[rename(v)]).collect();
    Ok(Transformed { graph, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{dominates_under, extendable_set};
    use crate::families::layered;

    fn tri(start: usize) -> CycleRef {
        CycleRef {
            vertices: vec![start, start + 1, start + 2],
            contractible: false,
        }
    }

    #[test]
    fn collapse_layers() {
        let g = layered(&[3, 3, 3, 3]).unwrap();
        let out = collapse_triangle_pair(&g, &tri(3), &tri(6)).unwrap();
        assert_eq!(out.graph.vertex_count(), 9);
        assert_eq!(out.graph.edge_count(), 15);
        for v in 3..6 {
            assert_eq!(out.map[v], out.map[v + 3]);
        }
        // Both graphs are 3,3-quadrangulations of the same shape.
        assert_eq!(
            crate::analysis::canonical_form(&out.graph).code,
            crate::analysis::canonical_form(&layered(&[3, 3, 3]).unwrap()).code
        );
        assert!(dominates_under(&out.graph, &g, &out.map).unwrap());
        assert!(!extendable_set(&out.graph).unwrap().is_empty());
    }

    #[test]
    fn collapse_removes_interior() {
        let g = layered(&[3, 3, 3, 3, 3]).unwrap();
        let out = collapse_triangle_pair(&g, &tri(3), &tri(9)).unwrap();
        assert_eq!(out.graph.vertex_count(), 9);
        assert!((6..9).all(|v| out.map[v].is_none()));
        assert!(dominates_under(&out.graph, &g, &out.map).unwrap());
    }

    #[test]
    fn degenerate_pairs() {
        let g = layered(&[3, 3, 3, 3]).unwrap();
        assert!(matches!(
            collapse_triangle_pair(&g, &tri(3), &tri(3)),
            Err(SurgeryError::NotTrianglePair(_))
        ));
        let reversed = CycleRef {
            vertices: vec![6, 8, 7],
            contractible: false,
        };
        assert!(matches!(
            collapse_triangle_pair(&g, &tri(3), &reversed),
            Err(SurgeryError::NotTrianglePair(_))
        ));
    }
}
