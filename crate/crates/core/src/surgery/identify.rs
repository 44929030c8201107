use crate::embedding::{same_cyclic, EmbeddedGraph};

use super::SurgeryError;

/// Which pair of opposite vertices of a 4-face `v1 v2 v3 v4` to identify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagonal {
    /// `v1` and `v3`.
    First,
    /// `v2` and `v4`.
    Second,
}

/// Result of an identification.
#[derive(Debug, Clone)]
pub struct Identified {
    pub graph: EmbeddedGraph,
    /// `map[v]` is the vertex of `graph` that old vertex `v` became.
    pub map: Vec<Option<usize>>,
    /// The merged vertex.
    pub z: usize,
}

/// Identifies two opposite vertices of the 4-face `face` (given as a cyclic
/// vertex sequence in either direction) into one vertex `z`, drawn through
/// the face. Edges that become parallel are merged, keeping a ring edge
/// where there is one. `z` takes the smaller of the two ids; the larger id
/// is removed and later ids shift down by one.
pub fn identify_across_face(
    g: &EmbeddedGraph,
    face: &[usize],
    diagonal: Diagonal,
) -> Result<Identified, SurgeryError> {
    let not_face = || SurgeryError::NotAFace(face.to_vec());
    if face.len() != 4 || face.iter().any(|&v| v >= g.vertex_count()) {
        return Err(not_face());
    }
    let fl = g.faces();
    let rev: Vec<usize> = face.iter().rev().copied().collect();
    let idx = (0..fl.len())
        .find(|&i| !fl.is_hole(i) && (same_cyclic(&fl.faces[i], face) || same_cyclic(&fl.faces[i], &rev)))
        .ok_or_else(not_face)?;
    let (a, b) = match diagonal {
        Diagonal::First => (face[0], face[2]),
        Diagonal::Second => (face[1], face[3]),
    };
    let walk = &fl.faces[idx];
    let s = walk.iter().position(|&x| x == a).unwrap();
    let [v1, v2, v3, v4] = [0, 1, 2, 3].map(|i| walk[(s + i) % 4]);
    debug_assert_eq!(v3, b);
    if g.has_edge(v1, v3) {
        return Err(SurgeryError::DiagonalAdjacent(v1, v3));
    }
    if g.rings().iter().any(|r| r.contains(&v1) && r.contains(&v3)) {
        return Err(SurgeryError::RingDiagonal(v1, v3));
    }
    let starting_at = |v: usize, first: usize| -> Vec<usize> {
        let rot = g.rotation(v);
        let k = rot.iter().position(|&x| x == first).unwrap();
        (0..rot.len()).map(|i| rot[(k + i) % rot.len()]).collect()
    };
    let from_v1 = starting_at(v1, v2);
    let from_v3 = starting_at(v3, v4);
    debug_assert_eq!(from_v1.last(), Some(&v4));
    debug_assert_eq!(from_v3.last(), Some(&v2));
    let common: Vec<usize> = from_v1
        .iter()
        .copied()
        .filter(|&w| w != v2 && w != v4 && g.has_edge(v3, w))
        .collect();
    // Of two edges to a common neighbour, the copy from v3 goes unless it
    // is a ring edge.
    let drop_v3_copy = |w: usize| !g.is_ring_edge(v3, w);
    let mut rot_z: Vec<usize> = from_v1
        .iter()
        .copied()
        .filter(|&w| !common.contains(&w) || drop_v3_copy(w))
        .collect();
    rot_z.extend(
        from_v3[1..from_v3.len() - 1]
            .iter()
            .copied()
            .filter(|&w| !common.contains(&w) || !drop_v3_copy(w)),
    );
    let n = g.vertex_count();
    let mut rotations: Vec<Vec<usize>> = g.rotations().to_vec();
    // Placeholder id for z until compaction.
    let z_tmp = n;
    for (w, rot) in rotations.iter_mut().enumerate() {
        if w == v1 || w == v3 {
            continue;
        }
        let has1 = rot.contains(&v1);
        let has3 = rot.contains(&v3);
        if w == v2 || w == v4 || (has1 && has3) {
            let dropped = if w == v2 || w == v4 || drop_v3_copy(w) { v3 } else { v1 };
            rot.retain(|&x| x != dropped);
        }
        for x in rot.iter_mut() {
            if *x == v1 || *x == v3 {
                *x = z_tmp;
            }
        }
    }
    let z = v1.min(v3);
    let gone = v1.max(v3);
    let map: Vec<Option<usize>> = (0..n)
        .map(|v| {
            Some(if v == v1 || v == v3 {
                z
            } else if v > gone {
                v - 1
            } else {
                v
            })
        })
        .collect();
    let rename = |x: usize| if x == z_tmp { z } else { map[x].unwrap() };
    rotations[z] = rot_z;
    rotations[gone].clear();
    let new_rotations: Vec<Vec<usize>> = (0..n)
        .filter(|&v| v != gone)
        .map(|v| rotations[v].iter().map(|&x| rename(x)).collect())
        .collect();
    let rings: Vec<Vec<usize>> = g
        .rings()
        .iter()
        .map(|r| r.iter().map(|&v| map[v].unwrap()).collect())
        .collect();
    let graph = EmbeddedGraph::new(new_rotations, rings)?;
    Ok(Identified { graph, map, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{dominates_under, extend, Color, Precoloring};
    use crate::families::{cube, cylinder_grid};

    fn internal_quads(g: &EmbeddedGraph) -> Vec<Vec<usize>> {
        let f = g.faces();
        f.internal_faces()
            .filter(|&i| f.faces[i].len() == 4)
            .map(|i| f.faces[i].clone())
            .collect()
    }

    #[test]
    fn grid_identifications_dominate() {
        let g = cylinder_grid(4, 4);
        for face in internal_quads(&g) {
            for d in [Diagonal::First, Diagonal::Second] {
                let r = identify_across_face(&g, &face, d).unwrap();
                assert_eq!(r.graph.vertex_count(), g.vertex_count() - 1);
                assert!(dominates_under(&r.graph, &g, &r.map).unwrap());
            }
        }
    }

    #[test]
    fn colorings_lift() {
        let g = cylinder_grid(4, 3);
        let face = internal_quads(&g).remove(0);
        let r = identify_across_face(&g, &face, Diagonal::First).unwrap();
        let col = extend(&r.graph, &Precoloring::new()).unwrap().unwrap();
        let lifted: Vec<Color> = (0..g.vertex_count()).map(|v| col[r.map[v].unwrap()]).collect();
        assert!(crate::coloring::is_proper(&g, &lifted));
    }

    #[test]
    fn common_neighbours_are_merged() {
        // Opposite corners of a side face of the cube share both other
        // corners of the face.
        let g = cube();
        let face = internal_quads(&g).remove(0);
        let (v1, v3) = (face[0], face[2]);
        let shared = (0..g.vertex_count())
            .filter(|&w| g.has_edge(v1, w) && g.has_edge(v3, w))
            .count();
        let r = identify_across_face(&g, &face, Diagonal::First).unwrap();
        assert_eq!(r.graph.edge_count(), g.edge_count() - shared);
        assert!(dominates_under(&r.graph, &g, &r.map).unwrap());
    }

    #[test]
    fn errors() {
        let c = cube();
        let ring = c.rings()[0].clone();
        assert!(matches!(
            identify_across_face(&c, &ring, Diagonal::First),
            Err(SurgeryError::NotAFace(_))
        ));
        let chorded =
            EmbeddedGraph::from_faces(4, &[vec![0, 1, 2, 3], vec![0, 3, 2], vec![2, 1, 0]], &[])
                .unwrap();
        assert_eq!(
            identify_across_face(&chorded, &[0, 1, 2, 3], Diagonal::First).unwrap_err(),
            SurgeryError::DiagonalAdjacent(0, 2)
        );
        let hub = crate::families::generate_patches(1).remove(0);
        let quad = internal_quads(&hub).remove(0);
        let d = if hub.is_ring_vertex(quad[0]) && hub.is_ring_vertex(quad[2]) {
            Diagonal::First
        } else {
            Diagonal::Second
        };
        assert!(matches!(
            identify_across_face(&hub, &quad, d),
            Err(SurgeryError::RingDiagonal(..))
        ));
    }
}
