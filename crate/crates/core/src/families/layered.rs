use crate::embedding::EmbeddedGraph;

use super::FamilyError;

/// A cylinder quadrangulation built from concentric cycles.
///
/// Consecutive layer lengths must differ by 0 or 2. Layer `j` uses the ids
/// following those of layers `0..j`. The first and last layers are the
/// rings; every other face is a 4-face.
pub fn layered(lengths: &[usize]) -> Result<EmbeddedGraph, FamilyError> {
    if lengths.len() < 2 {
        return Err(FamilyError::InvalidParameter("need at least two layers".into()));
    }
    if lengths.iter().any(|&l| l < 3) {
        return Err(FamilyError::InvalidParameter("layers need length at least 3".into()));
    }
    let mut start = Vec::with_capacity(lengths.len());
    let mut total = 0;
    for &l in lengths {
        start.push(total);
        total += l;
    }
    let mut faces: Vec<Vec<usize>> = Vec::new();
    faces.push((0..lengths[0]).map(|i| start[0] + i).collect());
    for j in 0..lengths.len() - 1 {
        let (a, b) = (lengths[j], lengths[j + 1]);
        let ai = |i: usize| start[j] + i % a;
        let bi = |i: usize| start[j + 1] + i % b;
        if b == a {
            for i in 0..a {
                faces.push(vec![ai(i + 1), ai(i), bi(i), bi(i + 1)]);
            }
        } else if b == a + 2 {
            for i in 0..a - 1 {
                faces.push(vec![ai(i + 1), ai(i), bi(i), bi(i + 1)]);
            }
            faces.push(vec![ai(a - 1), bi(a - 1), bi(a), bi(a + 1)]);
            faces.push(vec![ai(0), ai(a - 1), bi(a + 1), bi(0)]);
        } else if a == b + 2 {
            for i in 0..b - 1 {
                faces.push(vec![ai(i + 1), ai(i), bi(i), bi(i + 1)]);
            }
            faces.push(vec![ai(b + 1), ai(b), ai(b - 1), bi(b - 1)]);
            faces.push(vec![ai(0), ai(b + 1), bi(b - 1), bi(0)]);
        } else {
            return Err(FamilyError::InvalidParameter(format!(
                "layer lengths {a} and {b} differ by more than 2"
            )));
        }
    }
    let last = lengths.len() - 1;
    faces.push((0..lengths[last]).rev().map(|i| start[last] + i).collect());
    let holes = [0, faces.len() - 1];
    Ok(EmbeddedGraph::from_faces(total, &faces, &holes)?)
}

/// The Cartesian product `C_k x P_m` with the two end cycles as rings.
pub fn cylinder_grid(k: usize, m: usize) -> EmbeddedGraph {
    layered(&vec![k; m]).expect("k >= 3 and m >= 2")
}

/// The triangular prism with its triangles as rings.
pub fn prism() -> EmbeddedGraph {
    cylinder_grid(3, 2)
}

/// The cube with two opposite faces as rings.
pub fn cube() -> EmbeddedGraph {
    cylinder_grid(4, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn internal_face_lengths(g: &EmbeddedGraph) -> Vec<usize> {
        let f = g.faces();
        f.internal_faces().map(|i| f.faces[i].len()).collect()
    }

    #[test]
    fn prism_counts() {
        let g = prism();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        assert_eq!(internal_face_lengths(&g), vec![4, 4, 4]);
        assert_eq!(g.rings()[0].len(), 3);
        assert_eq!(g.rings()[1].len(), 3);
    }

    #[test]
    fn growing_and_shrinking_layers_quadrangulate() {
        for lengths in [vec![3, 5, 3], vec![4, 6, 6, 4], vec![3, 5, 7, 5, 3], vec![6, 4]] {
            let g = layered(&lengths).unwrap();
            assert!(internal_face_lengths(&g).iter().all(|&l| l == 4), "{lengths:?}");
            let total: usize = lengths.iter().sum();
            assert_eq!(g.vertex_count(), total);
        }
        assert!(layered(&[3, 6]).is_err());
        assert!(layered(&[3]).is_err());
    }
}
