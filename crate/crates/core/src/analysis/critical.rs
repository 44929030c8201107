//! Criticality by single deletions.
//!
//! Removing parts of a graph can only enlarge its extendable set, so a graph
//! is critical iff it is more than its rings and every single deletion of a
//! non-ring edge or non-ring vertex enlarges the set. Only ring colorings
//! outside the current set need to be retried after a deletion.

use rayon::prelude::*;

use crate::coloring::{extendable_set, extends, proper_ring_colorings, Color, Precoloring};
use crate::embedding::EmbeddedGraph;

use super::AnalysisError;

/// A part of the graph whose removal leaves the extendable set unchanged, or
/// the finding that nothing lies outside the rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    RingsOnly,
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub is_critical: bool,
    /// Set exactly when `is_critical` is false.
    pub witness: Option<Witness>,
}

/// Default vertex bound for brute-force extendable-set work.
pub const DEFAULT_GUARD: usize = 22;

pub(crate) fn check_guard(g: &EmbeddedGraph, guard: usize) -> Result<(), AnalysisError> {
    if g.vertex_count() > guard {
        return Err(AnalysisError::TooLarge {
            vertices: g.vertex_count(),
            guard,
        });
    }
    Ok(())
}

/// Ring colorings (proper on the ring cycles) that do not extend to `g`.
pub(crate) fn missing_colorings(g: &EmbeddedGraph) -> Result<Vec<Vec<Color>>, AnalysisError> {
    let ext = extendable_set(g)?;
    Ok(proper_ring_colorings(g)
        .into_iter()
        .filter(|c| !ext.contains(c))
        .collect())
}

fn without_vertex(adj: &[Vec<usize>], v: usize) -> Vec<Vec<usize>> {
    let mut out = adj.to_vec();
    out[v].clear();
    for list in out.iter_mut() {
        list.retain(|&u| u != v);
    }
    out
}

fn without_edge(adj: &[Vec<usize>], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = adj.to_vec();
    out[a].retain(|&u| u != b);
    out[b].retain(|&u| u != a);
    out
}

/// Whether some coloring in `missing` extends to `adj`.
fn grows(adj: &[Vec<usize>], domain: &[usize], missing: &[Vec<Color>]) -> bool {
    missing
        .par_iter()
        .any(|c| extends(adj, &Precoloring::on(domain, c)))
}

/// The first deletable part of `g`: vertices are tried before edges, each in
/// increasing order.
pub(crate) fn first_deletable(g: &EmbeddedGraph) -> Result<Option<Witness>, AnalysisError> {
    let n = g.vertex_count();
    let inner_vertices: Vec<usize> = (0..n).filter(|&v| !g.is_ring_vertex(v)).collect();
    let inner_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| !g.is_ring_edge(a, b))
        .collect();
    if inner_vertices.is_empty() && inner_edges.is_empty() {
        return Ok(Some(Witness::RingsOnly));
    }
    let domain = g.ring_vertices();
    let missing = missing_colorings(g)?;
    let adj = g.adjacency();
    for &v in &inner_vertices {
        if !grows(&without_vertex(&adj, v), &domain, &missing) {
            return Ok(Some(Witness::Vertex(v)));
        }
    }
    for &(a, b) in &inner_edges {
        if !grows(&without_edge(&adj, a, b), &domain, &missing) {
            return Ok(Some(Witness::Edge(a, b)));
        }
    }
    Ok(None)
}

/// Decides criticality of `g` with respect to its rings. Graphs with more
/// than `guard` vertices are refused.
pub fn is_critical(g: &EmbeddedGraph, guard: usize) -> Result<CriticalityReport, AnalysisError> {
    check_guard(g, guard)?;
    let witness = first_deletable(g)?;
    Ok(CriticalityReport {
        is_critical: witness.is_none(),
        witness,
    })
}

/// True iff the ringless graph `g` is not 3-colorable but loses that property
/// after deleting any single edge.
pub fn is_four_critical(g: &EmbeddedGraph) -> bool {
    let adj = g.adjacency();
    let empty = Precoloring::new();
    if extends(&adj, &empty) {
        return false;
    }
    g.edges()
        .par_iter()
        .all(|&(a, b)| extends(&without_edge(&adj, a, b), &empty))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cylinder_grid, prism, thomas_walls};

    #[test]
    fn prism_is_critical() {
        let r = is_critical(&prism(), DEFAULT_GUARD).unwrap();
        assert!(r.is_critical);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn rings_only() {
        let c4 = EmbeddedGraph::from_faces(4, &[vec![0, 1, 2, 3], vec![3, 2, 1, 0]], &[1]).unwrap();
        let r = is_critical(&c4, DEFAULT_GUARD).unwrap();
        assert_eq!(r.witness, Some(Witness::RingsOnly));
    }

    #[test]
    fn subdivided_cross_edge_has_degree_two_witness() {
        let p = prism();
        let a = p.rings()[0][0];
        let b = *p.rotation(a).iter().find(|&&x| p.rings()[1].contains(&x)).unwrap();
        let (g, s) = p.subdivided(a, b).unwrap();
        let r = is_critical(&g, DEFAULT_GUARD).unwrap();
        assert!(!r.is_critical);
        assert_eq!(r.witness, Some(Witness::Vertex(s)));
    }

    #[test]
    fn guard_is_enforced() {
        let g = cylinder_grid(4, 6);
        assert!(matches!(is_critical(&g, 20), Err(AnalysisError::TooLarge { .. })));
    }

    #[test]
    fn small_thomas_walls_are_four_critical() {
        for n in 1..=3 {
            assert!(is_four_critical(&thomas_walls(n).unwrap()));
        }
        assert!(!is_four_critical(&cylinder_grid(4, 2)));
    }
}
