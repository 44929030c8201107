//! Structural audits: the 6-ring extension criterion, the necessary
//! conditions met by critical graphs, and the face-length statistic.

use crate::coloring::{Color, Precoloring};
use crate::embedding::{simple_cycles, CycleSides, EmbeddedGraph, Side};

use super::AnalysisError;

/// Whether `psi` extends according to the 6-ring criterion.
///
/// With ring `v1..v6` a total precoloring fails to extend iff some chord
/// `v_i v_{i+3}` joins equally colored vertices, or the ring is induced and
/// `psi` repeats with period three. `g` must be drawn in the disk with a
/// single ring of length 6 and `psi` must color every ring vertex.
pub fn sixring_criterion(g: &EmbeddedGraph, psi: &Precoloring) -> Result<bool, AnalysisError> {
    let ring = match g.rings() {
        [r] if r.len() == 6 => r,
        [r] => return Err(AnalysisError::NotSixRing(format!("ring has length {}", r.len()))),
        rs => return Err(AnalysisError::NotSixRing(format!("{} rings", rs.len()))),
    };
    let mut c = [Color::ALL[0]; 6];
    for (i, &v) in ring.iter().enumerate() {
        c[i] = psi
            .get(v)
            .ok_or_else(|| AnalysisError::NotSixRing(format!("ring vertex {v} is uncolored")))?;
    }
    let chord = |a: usize, b: usize| g.has_edge(ring[a], ring[b]);
    let mut induced = true;
    for a in 0..6 {
        for b in a + 2..6 {
            if (a, b) != (0, 5) && chord(a, b) {
                induced = false;
            }
        }
    }
    for i in 0..3 {
        if chord(i, i + 3) && c[i] == c[i + 3] {
            return Ok(false);
        }
    }
    let periodic = (0..3).all(|i| c[i] == c[i + 3]);
    Ok(!(induced && periodic))
}

/// A failed necessary condition for criticality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vertex off the rings with degree below three.
    LowDegree(usize),
    /// A contractible cycle of length at most 5 that does not bound a face.
    NonFacialShortCycle(Vec<usize>),
    /// A cycle of length at most 6 bounding a disk with several faces, one
    /// of which does not have length 4.
    UnevenDisk(Vec<usize>),
}

/// Checks the three necessary conditions for criticality of a graph whose
/// triangles are all non-contractible.
///
/// Disk boundaries are taken to be cycles of length at most 6, the range in
/// which the 6-ring criterion forces a quadrangulated interior.
pub fn lemma_fr_audit(g: &EmbeddedGraph) -> Result<Vec<Violation>, AnalysisError> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if !g.is_ring_vertex(v) && g.degree(v) < 3 {
            out.push(Violation::LowDegree(v));
        }
    }
    for cycle in simple_cycles(&g.adjacency(), 6) {
        let sides = CycleSides::new(g, &cycle)?;
        if !sides.is_contractible() {
            continue;
        }
        // On the sphere both sides are disks.
        let disks: Vec<Side> = if g.rings().is_empty() {
            vec![Side::Forward, Side::Backward]
        } else {
            sides.disk_side().into_iter().collect()
        };
        let faces = sides.faces();
        let regions: Vec<Vec<usize>> = disks.iter().map(|&s| sides.faces_on(s)).collect();
        let facial = regions.iter().any(|r| r.len() == 1);
        if cycle.len() <= 5 && !facial {
            out.push(Violation::NonFacialShortCycle(cycle.clone()));
        }
        let uneven = regions
            .iter()
            .any(|r| r.len() > 1 && r.iter().any(|&f| faces.faces[f].len() != 4));
        if uneven {
            out.push(Violation::UnevenDisk(cycle));
        }
    }
    Ok(out)
}

/// Sum of `|f| - 4` over faces, without and with the hole faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceStats {
    pub deficiency_internal: i64,
    pub deficiency_all: i64,
}

pub fn face_deficiency(g: &EmbeddedGraph) -> FaceStats {
    let f = g.faces();
    let excess = |i: usize| f.faces[i].len() as i64 - 4;
    let deficiency_internal = f.internal_faces().map(excess).sum();
    let deficiency_all = (0..f.len()).map(excess).sum();
    FaceStats {
        deficiency_internal,
        deficiency_all,
    }
}
