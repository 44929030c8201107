use rayon::prelude::*;

use crate::coloring::{extendable_set, extends, proper_ring_colorings, Precoloring};
use crate::embedding::EmbeddedGraph;

use super::{SurgeryError, Transformed};

/// A critical subgraph with the same extendable set as `g`, obtained by
/// deleting non-ring edges in increasing order whenever the extendable set
/// stays the same, then dropping the isolated vertices off the rings.
///
/// One pass suffices: an edge whose deletion enlarged the set at some stage
/// still does so in every smaller subgraph with the same set.
pub fn maximal_critical_subgraph(g: &EmbeddedGraph) -> Result<Transformed, SurgeryError> {
    let ext = extendable_set(g)?;
    let domain = g.ring_vertices();
    let missing: Vec<_> = proper_ring_colorings(g)
        .into_iter()
        .filter(|c| !ext.contains(c))
        .collect();
    let mut adj = g.adjacency();
    let mut removed = Vec::new();
    for (a, b) in g.edges() {
        if g.is_ring_edge(a, b) {
            continue;
        }
        adj[a].retain(|&x| x != b);
        adj[b].retain(|&x| x != a);
        let grows = missing
            .par_iter()
            .any(|c| extends(&adj, &Precoloring::on(&domain, c)));
        if grows {
            adj[a].push(b);
            adj[b].push(a);
        } else {
            removed.push((a, b));
        }
    }
    let pruned = g.without_edges(&removed)?;
    let isolated: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| pruned.degree(v) == 0 && !pruned.is_ring_vertex(v))
        .collect();
    let (graph, map) = pruned.without_isolated(&isolated);
    let rings_only = (0..graph.vertex_count()).all(|v| graph.is_ring_vertex(v))
        && graph.edges().iter().all(|&(a, b)| graph.is_ring_edge(a, b));
    if rings_only {
        return Err(SurgeryError::NothingToExtract);
    }
    Ok(Transformed { graph, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_critical, DEFAULT_GUARD};
    use crate::families::prism;

    #[test]
    fn drops_degree_two_vertex() {
        // Split a 4-face of the prism by a path of length two through x.
        let p = prism();
        let (mut faces, holes) = p.faces_with_holes();
        let i = (0..faces.len()).find(|i| !holes.contains(i)).unwrap();
        let w = faces[i].clone();
        let x = p.vertex_count();
        faces[i] = vec![w[0], w[1], w[2], x];
        faces.push(vec![w[2], w[3], w[0], x]);
        let g = EmbeddedGraph::from_faces(x + 1, &faces, &holes).unwrap();
        assert_eq!(g.degree(x), 2);
        let out = maximal_critical_subgraph(&g).unwrap();
        assert_eq!(out.map[x], None);
        assert!(is_critical(&out.graph, DEFAULT_GUARD).unwrap().is_critical);
        assert_eq!(
            extendable_set(&out.graph).unwrap().members,
            extendable_set(&g).unwrap().members
        );
    }

    #[test]
    fn critical_graph_is_a_fixpoint() {
        let p = prism();
        let out = maximal_critical_subgraph(&p).unwrap();
        assert_eq!(out.graph, p);
    }

    #[test]
    fn nothing_to_extract() {
        // A 4-ring with an inner vertex on two opposite corners: every
        // precoloring extends.
        let faces = [vec![0, 1, 2, 4], vec![2, 3, 0, 4], vec![3, 2, 1, 0]];
        let g = EmbeddedGraph::from_faces(5, &faces, &[2]).unwrap();
        assert!(matches!(
            maximal_critical_subgraph(&g),
            Err(SurgeryError::NothingToExtract)
        ));
    }
}
