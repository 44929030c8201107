//! Constructors for the graph families under study: Thomas-Walls graphs and
//! their reductions, hexagon patches, framings, 3,3-quadrangulations and
//! their near variants, plus small fixtures (grids, prism, cube).

mod layered;
mod patches;
mod peel;
mod quad33;
mod thomas_walls;

use thiserror::Error;

use crate::embedding::{EmbeddedGraph, EmbeddingError};

pub use layered::{cube, cylinder_grid, layered, prism};
pub use patches::{for_each_six_ring_disk, generate_patches, patch_graph, six_ring_disks, PatchPlacement};
pub use quad33::{generate_quad33, is_quad33, near_quad33, near_quad33_parts, NearQuadParts};
pub use thomas_walls::{frame, reduced_thomas_walls, thomas_walls, EndFrame};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("placement vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} does not have degree 3")]
    WrongDegree(usize),
    #[error("vertex {0} lies on a ring")]
    RingVertex(usize),
    #[error("ring shape mismatch: {0}")]
    RingShapeMismatch(String),
    #[error("edge {0}-{1} is not on the chosen ring")]
    EdgeNotOnRing(usize, usize),
    #[error("graph already has two rings")]
    TooManyRings,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// The two opposite vertex pairs on the rings of a reduced Thomas-Walls graph.
///
/// `pairs[i]` lies on ring `i`; for `n >= 2` both vertices of a pair have
/// degree two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterfacePairs {
    pub pairs: [(usize, usize); 2],
}

/// A patch chosen from the generated catalogue: the `index`-th patch (in
/// canonical order) with exactly `internal` internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatchRef {
    pub internal: usize,
    pub index: usize,
}

/// A recipe for one family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    ThomasWalls {
        n: usize,
    },
    ReducedThomasWalls {
        n: usize,
    },
    Patch(PatchRef),
    PatchedThomasWalls {
        n: usize,
        placements: Vec<(usize, PatchRef)>,
    },
    FramedPatchedThomasWalls {
        n: usize,
        placements: Vec<(usize, PatchRef)>,
        ends: [EndFrame; 2],
    },
    /// The `index`-th 3,3-quadrangulation (canonical order) on exactly
    /// `vertices` vertices.
    Quad33 {
        vertices: usize,
        index: usize,
    },
    /// A 3,3-quadrangulation with optional ring-edge subdivisions; entry `i`
    /// names the edge `ring[i][k]-ring[i][k+1]` by `k`.
    NearQuad33 {
        vertices: usize,
        index: usize,
        subdivide: [Option<usize>; 2],
    },
}

/// A constructed family member.
#[derive(Debug, Clone)]
pub struct Built {
    pub graph: EmbeddedGraph,
    pub pairs: Option<InterfacePairs>,
}

fn lookup_patch(r: PatchRef) -> Result<EmbeddedGraph, FamilyError> {
    let list = generate_patches(r.internal);
    let exact: Vec<&EmbeddedGraph> = list
        .iter()
        .filter(|p| p.vertex_count() == 6 + r.internal)
        .collect();
    exact.get(r.index).map(|g| (*g).clone()).ok_or_else(|| {
        FamilyError::InvalidParameter(format!(
            "only {} patches with {} internal vertices",
            exact.len(),
            r.internal
        ))
    })
}

fn lookup_quad33(vertices: usize, index: usize) -> Result<EmbeddedGraph, FamilyError> {
    let list = generate_quad33(vertices);
    let exact: Vec<&EmbeddedGraph> = list.iter().filter(|g| g.vertex_count() == vertices).collect();
    exact.get(index).map(|g| (*g).clone()).ok_or_else(|| {
        FamilyError::InvalidParameter(format!(
            "only {} 3,3-quadrangulations on {} vertices",
            exact.len(),
            vertices
        ))
    })
}

fn patched(n: usize, placements: &[(usize, PatchRef)]) -> Result<Built, FamilyError> {
    let (g, pairs) = reduced_thomas_walls(n)?;
    let placed = placements
        .iter()
        .map(|&(v, r)| Ok(PatchPlacement::new(v, lookup_patch(r)?)))
        .collect::<Result<Vec<_>, FamilyError>>()?;
    let (g, map) = patch_graph(&g, &placed)?;
    let remap = |(a, b): (usize, usize)| (map[a].unwrap(), map[b].unwrap());
    let pairs = InterfacePairs {
        pairs: [remap(pairs.pairs[0]), remap(pairs.pairs[1])],
    };
    Ok(Built {
        graph: g,
        pairs: Some(pairs),
    })
}

impl FamilySpec {
    pub fn build(&self) -> Result<Built, FamilyError> {
        match self {
            FamilySpec::ThomasWalls { n } => Ok(Built {
                graph: thomas_walls(*n)?,
                pairs: None,
            }),
            FamilySpec::ReducedThomasWalls { n } => {
                let (graph, pairs) = reduced_thomas_walls(*n)?;
                Ok(Built {
                    graph,
                    pairs: Some(pairs),
                })
            }
            FamilySpec::Patch(r) => Ok(Built {
                graph: lookup_patch(*r)?,
                pairs: None,
            }),
            FamilySpec::PatchedThomasWalls { n, placements } => patched(*n, placements),
            FamilySpec::FramedPatchedThomasWalls {
                n,
                placements,
                ends,
            } => {
                let b = patched(*n, placements)?;
                let pairs = b.pairs.expect("patched graphs carry pairs");
                let (graph, pairs) = frame(&b.graph, pairs, *ends)?;
                Ok(Built {
                    graph,
                    pairs: Some(pairs),
                })
            }
            FamilySpec::Quad33 { vertices, index } => Ok(Built {
                graph: lookup_quad33(*vertices, *index)?,
                pairs: None,
            }),
            FamilySpec::NearQuad33 {
                vertices,
                index,
                subdivide,
            } => {
                let g = lookup_quad33(*vertices, *index)?;
                let mut edges = [None, None];
                for i in 0..2 {
                    if let Some(k) = subdivide[i] {
                        let r = &g.rings()[i];
                        if k >= r.len() {
                            return Err(FamilyError::InvalidParameter(format!(
                                "ring {i} has no edge {k}"
                            )));
                        }
                        edges[i] = Some((r[k], r[(k + 1) % r.len()]));
                    }
                }
                Ok(Built {
                    graph: near_quad33(&g, edges)?,
                    pairs: None,
                })
            }
        }
    }
}

/// Adds a pendant 4-cycle `v u1 u2 u3` inside the face containing the dart
/// `v -> next` and designates it as a new ring. The new vertices get ids
/// `n, n+1, n+2`.
pub fn attach_pendant_ring(
    g: &EmbeddedGraph,
    v: usize,
    next: usize,
) -> Result<EmbeddedGraph, FamilyError> {
    if g.rings().len() >= 2 {
        return Err(FamilyError::TooManyRings);
    }
    let n = g.vertex_count();
    if v >= n {
        return Err(EmbeddingError::InvalidVertex(v).into());
    }
    let (mut faces, mut holes) = g.faces_with_holes();
    let (u1, u2, u3) = (n, n + 1, n + 2);
    if g.degree(v) == 0 {
        faces.push(vec![v, u1, u2, u3]);
        faces.push(vec![v, u3, u2, u1]);
        holes.push(faces.len() - 1);
        return Ok(EmbeddedGraph::from_faces(n + 3, &faces, &holes)?);
    }
    let fl = g.faces();
    if !g.has_edge(v, next) {
        return Err(EmbeddingError::NotACycle(format!("{v}-{next} is not an edge")).into());
    }
    let target = fl.face_of_dart(g, v, next);
    if fl.is_hole(target) {
        return Err(FamilyError::InvalidParameter(
            "the pendant ring must be drawn inside a face, not a hole".into(),
        ));
    }
    // Splice a detour v -> u1 -> u2 -> u3 -> v into the face walk just
    // before the dart v -> next; the inside of the detour becomes the hole.
    let walk = &faces[target];
    let pos = (0..walk.len())
        .find(|&i| walk[i] == v && walk[(i + 1) % walk.len()] == next)
        .expect("dart lies on its face");
    let mut spliced = walk[..=pos].to_vec();
    spliced.extend([u1, u2, u3, v]);
    spliced.extend_from_slice(&walk[pos + 1..]);
    faces[target] = spliced;
    faces.push(vec![v, u3, u2, u1]);
    holes.push(faces.len() - 1);
    Ok(EmbeddedGraph::from_faces(n + 3, &faces, &holes)?)
}
