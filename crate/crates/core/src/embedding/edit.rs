//! Local edits that keep the embedding: subdividing an edge, drawing a chord
//! inside a face, and re-designating rings.

use super::{EmbeddedGraph, EmbeddingError};

impl EmbeddedGraph {
    /// Oriented face walks together with the indices of the hole faces.
    pub fn faces_with_holes(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let f = self.faces();
        (f.faces, f.ring_faces)
    }

    /// The face walk containing the dart `u -> v`.
    pub fn face_through(&self, u: usize, v: usize) -> Result<Vec<usize>, EmbeddingError> {
        if u >= self.vertex_count() || v >= self.vertex_count() || !self.has_edge(u, v) {
            return Err(EmbeddingError::NotACycle(format!("{u}-{v} is not an edge")));
        }
        let f = self.faces();
        Ok(f.faces[f.face_of_dart(self, u, v)].clone())
    }

    /// Subdivides edge `u-v` with a new vertex (id `vertex_count()`); rings
    /// through the edge grow by one.
    pub fn subdivided(&self, u: usize, v: usize) -> Result<(EmbeddedGraph, usize), EmbeddingError> {
        if u >= self.vertex_count() || v >= self.vertex_count() || !self.has_edge(u, v) {
            return Err(EmbeddingError::NotACycle(format!("{u}-{v} is not an edge")));
        }
        let s = self.vertex_count();
        let (faces, holes) = self.faces_with_holes();
        let faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|w| {
                let l = w.len();
                let mut out = Vec::with_capacity(l + 1);
                for i in 0..l {
                    out.push(w[i]);
                    let next = w[(i + 1) % l];
                    if (w[i] == u && next == v) || (w[i] == v && next == u) {
                        out.push(s);
                    }
                }
                out
            })
            .collect();
        Ok((EmbeddedGraph::from_faces(s + 1, &faces, &holes)?, s))
    }

    /// Adds the edge `u-v` inside the non-hole face containing the dart
    /// `a -> b`. Both endpoints must lie on that face.
    pub fn with_chord(
        &self,
        face_dart: (usize, usize),
        u: usize,
        v: usize,
    ) -> Result<EmbeddedGraph, EmbeddingError> {
        if u == v || self.has_edge(u, v) {
            return Err(EmbeddingError::ParallelEdge(u, v));
        }
        let fl = self.faces();
        if !self.has_edge(face_dart.0, face_dart.1) {
            return Err(EmbeddingError::NotACycle("face dart is not an edge".into()));
        }
        let target = fl.face_of_dart(self, face_dart.0, face_dart.1);
        if fl.is_hole(target) {
            return Err(EmbeddingError::MalformedRotation(
                "cannot draw inside a hole".into(),
            ));
        }
        let walk = &fl.faces[target];
        let l = walk.len();
        let i = walk.iter().position(|&x| x == u);
        let j = walk.iter().position(|&x| x == v);
        let (Some(i), Some(j)) = (i, j) else {
            return Err(EmbeddingError::NotACycle(format!(
                "{u} and {v} are not both on the face"
            )));
        };
        let arc = |from: usize, to: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut k = from;
            loop {
                out.push(walk[k]);
                if k == to {
                    break;
                }
                k = (k + 1) % l;
            }
            out
        };
        let mut faces = fl.faces.clone();
        faces[target] = arc(i, j);
        faces.push(arc(j, i));
        EmbeddedGraph::from_faces(self.vertex_count(), &faces, &fl.ring_faces)
    }
}
