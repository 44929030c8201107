use crate::embedding::{EmbeddedGraph, EmbeddingError};

use super::{FamilyError, InterfacePairs};

/// Face list of `T_n` plus the first and the latest replaced diagonal.
fn tw_faces(n: usize) -> (Vec<Vec<usize>>, (usize, usize), (usize, usize)) {
    // K4 on 0..4; the edge 0-1 lies in triangles 0,1,2 and 1,0,3, so the
    // first diagonal after one step is 2-3.
    let mut faces = vec![vec![0, 1, 2], vec![1, 0, 3], vec![0, 2, 3], vec![1, 3, 2]];
    let (mut u, mut v) = (0, 1);
    let mut next = 4;
    for _ in 1..n {
        let (x, y, z) = (next, next + 1, next + 2);
        next += 3;
        for f in faces.iter_mut() {
            let l = f.len();
            if let Some(i) = (0..l).find(|&i| f[i] == u && f[(i + 1) % l] == v) {
                f.splice(i + 1..i + 1, [x, y]);
            } else if let Some(i) = (0..l).find(|&i| f[i] == v && f[(i + 1) % l] == u) {
                f.splice(i + 1..i + 1, [z, x]);
            }
        }
        faces.push(vec![y, x, z]);
        faces.push(vec![v, y, z]);
        u = y;
        v = z;
    }
    (faces, (2, 3), (u, v))
}

/// The Thomas-Walls graph `T_n`: start from `K_4` and repeatedly replace the
/// most recently created edge `uv` lying in two triangles by the gadget on
/// three new vertices `x, y, z` with edges `ux, xy, xz, vy, vz, yz`.
///
/// `T_n` has `3n + 1` vertices and `5n + 1` edges.
pub fn thomas_walls(n: usize) -> Result<EmbeddedGraph, FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidParameter("n must be at least 1".into()));
    }
    let (faces, _, _) = tw_faces(n);
    Ok(EmbeddedGraph::from_faces(3 * n + 1, &faces, &[])?)
}

/// The face walk containing both `a` and `b`, rotated to start at `a`.
fn face_with(g: &EmbeddedGraph, a: usize, b: usize) -> Vec<usize> {
    let f = g.faces();
    let walk = f
        .faces
        .iter()
        .find(|w| w.len() == 4 && w.contains(&a) && w.contains(&b))
        .expect("merged rhombus face");
    let p = walk.iter().position(|&x| x == a).unwrap();
    let mut out = walk[p..].to_vec();
    out.extend_from_slice(&walk[..p]);
    out
}

/// `T'_n`: `T_n` without its two interface diagonals, on the cylinder whose
/// rings are the two 4-cycles left behind. `T'_1` is a 4-cycle bounding both
/// holes, with its two opposite pairs as interface pairs.
pub fn reduced_thomas_walls(n: usize) -> Result<(EmbeddedGraph, InterfacePairs), FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidParameter("n must be at least 1".into()));
    }
    if n == 1 {
        let g = EmbeddedGraph::from_faces(4, &[vec![0, 1, 2, 3], vec![3, 2, 1, 0]], &[0, 1])?;
        return Ok((
            g,
            InterfacePairs {
                pairs: [(0, 2), (1, 3)],
            },
        ));
    }
    let full = thomas_walls(n)?;
    let (_, first, last) = tw_faces(n);
    let bare = full.without_edges(&[first, last])?;
    let r1 = face_with(&bare, first.0, first.1);
    let r2 = face_with(&bare, last.0, last.1);
    let g = bare.with_rings(vec![r1, r2])?;
    Ok((
        g,
        InterfacePairs {
            pairs: [first, last],
        },
    ))
}

/// How one end of a cylinder graph is framed: whether the ring vertices
/// opposite the interface pair are replaced by new vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EndFrame {
    pub new_y: bool,
    pub new_w: bool,
}

impl EndFrame {
    pub const ALL_NEW: EndFrame = EndFrame {
        new_y: true,
        new_w: true,
    };
    pub const REUSE: EndFrame = EndFrame {
        new_y: false,
        new_w: false,
    };
}

/// Frames a cylinder graph on its interface pairs.
///
/// Ring `i` must be a 4-cycle `x_i y_i z_i w_i` with `(x_i, z_i)` the pair;
/// the new ring is `x_i y'_i z_i w'_i` where `y'_i` is a new vertex or `y_i`
/// (likewise `w'_i`). Returns the framed graph and its interface pairs.
pub fn frame(
    g: &EmbeddedGraph,
    pairs: InterfacePairs,
    ends: [EndFrame; 2],
) -> Result<(EmbeddedGraph, InterfacePairs), FamilyError> {
    if g.rings().len() != 2 {
        return Err(FamilyError::RingShapeMismatch("expected two rings".into()));
    }
    let (mut faces, holes) = g.faces_with_holes();
    let mut n = g.vertex_count();
    let mut new_holes = Vec::new();
    for i in 0..2 {
        let hole = holes[i];
        let walk = &faces[hole];
        let (x, z) = pairs.pairs[i];
        if walk.len() != 4 {
            return Err(FamilyError::RingShapeMismatch(format!(
                "ring {i} has length {}",
                walk.len()
            )));
        }
        let p = walk.iter().position(|&v| v == x).ok_or_else(|| {
            FamilyError::RingShapeMismatch(format!("{x} is not on ring {i}"))
        })?;
        let (y, zz, w) = (walk[(p + 1) % 4], walk[(p + 2) % 4], walk[(p + 3) % 4]);
        if zz != z {
            return Err(FamilyError::RingShapeMismatch(format!(
                "{x} and {z} are not opposite on ring {i}"
            )));
        }
        let y2 = if ends[i].new_y {
            n += 1;
            faces.push(vec![x, y, z, n - 1]);
            n - 1
        } else {
            y
        };
        let w2 = if ends[i].new_w {
            n += 1;
            faces.push(vec![z, w, x, n - 1]);
            n - 1
        } else {
            w
        };
        faces[hole] = vec![x, y2, z, w2];
        new_holes.push(hole);
    }
    let framed = EmbeddedGraph::from_faces(n, &faces, &new_holes).map_err(|e| match e {
        EmbeddingError::ParallelEdge(..) => {
            FamilyError::RingShapeMismatch("framing creates a parallel edge".into())
        }
        other => other.into(),
    })?;
    Ok((framed, pairs))
}
