use std::collections::VecDeque;

use crate::embedding::{simple_cycles, same_cyclic, CycleRef, CycleSides, EmbeddedGraph};

use super::{identify_across_face, Diagonal, Identified, SurgeryError};

/// Vertices grouped by their distance from one ring; `classes[a]` holds the
/// vertices at distance exactly `a`. Vertices not connected to the ring are
/// listed in no class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceClasses {
    pub classes: Vec<Vec<usize>>,
}

impl DistanceClasses {
    pub fn class(&self, a: usize) -> &[usize] {
        self.classes.get(a).map_or(&[], |c| c.as_slice())
    }
}

pub fn distance_classes(g: &EmbeddedGraph, ring: usize) -> Result<DistanceClasses, SurgeryError> {
    let r = g
        .rings()
        .get(ring)
        .ok_or_else(|| SurgeryError::PreconditionFailed(format!("no ring {ring}")))?;
    let dist = g.bfs_from(r);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d == usize::MAX {
            continue;
        }
        if classes.len() <= d {
            classes.resize(d + 1, Vec::new());
        }
        classes[d].push(v);
    }
    Ok(DistanceClasses { classes })
}

/// Whether deleting `cut` disconnects ring 0 from ring 1.
fn separates_rings(g: &EmbeddedGraph, cut: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    for &v in cut {
        blocked[v] = true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &v in &g.rings()[0] {
        if !blocked[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.rotation(v) {
            if !blocked[u] && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    !g.rings()[1].iter().any(|&v| seen[v])
}

/// A shortest non-contractible cycle inside the layer at distance `a` from
/// ring 0, ties broken by the sorted vertex list and then the sequence.
///
/// For `a > 0` the layer must separate the rings and every vertex within
/// distance one of the layer may only touch faces of length 4; both
/// conditions are checked.
pub fn shortest_layer_cycle(g: &EmbeddedGraph, a: usize) -> Result<CycleRef, SurgeryError> {
    if g.rings().len() != 2 {
        return Err(SurgeryError::NoSuchCycle("graph is not a cylinder".into()));
    }
    if a == 0 {
        return Ok(CycleRef {
            vertices: g.rings()[0].clone(),
            contractible: false,
        });
    }
    let dc = distance_classes(g, 0)?;
    let layer = dc.class(a);
    if layer.is_empty() || !separates_rings(g, layer) {
        return Err(SurgeryError::NoSuchCycle(format!("layer {a} does not separate the rings")));
    }
    let fl = g.faces();
    let near: Vec<usize> = (a - 1..=a + 1).flat_map(|b| dc.class(b).to_vec()).collect();
    for &v in &near {
        for &u in g.rotation(v) {
            let f = fl.face_of_dart(g, v, u);
            if fl.faces[f].len() != 4 {
                return Err(SurgeryError::NoSuchCycle(format!(
                    "vertex {v} near layer {a} touches a face of length {}",
                    fl.faces[f].len()
                )));
            }
        }
    }
    let mut inside = vec![false; g.vertex_count()];
    for &v in layer {
        inside[v] = true;
    }
    let adj: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| {
            if !inside[v] {
                return Vec::new();
            }
            g.rotation(v).iter().copied().filter(|&u| inside[u]).collect()
        })
        .collect();
    let mut best: Option<Vec<usize>> = None;
    for c in simple_cycles(&adj, layer.len()) {
        if best.as_ref().is_some_and(|b| b.len() <= c.len()) {
            continue;
        }
        if !CycleSides::new(g, &c)?.is_contractible() {
            best = Some(c);
        }
    }
    best.map(|vertices| CycleRef {
        vertices,
        contractible: false,
    })
    .ok_or_else(|| SurgeryError::NoSuchCycle(format!("layer {a} has no non-contractible cycle")))
}

/// Number of alternating ladder vertices merged for a ladder of length `k`.
fn merged_count(k: usize) -> usize {
    if k % 2 == 0 {
        k - 3
    } else {
        k - 2
    }
}

/// Contracts the ladder between cycles `q2 = x_1..x_k` and `q3 = y_1..y_k`
/// (with `x_i y_i` edges and 4-faces `x_i x_{i+1} y_{i+1} y_i`) by
/// identifying `x_1, y_2, x_3, y_4, ...` up to index `k - 3` for even `k` and
/// `k - 2` for odd `k` into one vertex `r`. Each identification is across a
/// face of the ladder, so the result dominates `g`.
pub fn ladder_contract(
    g: &EmbeddedGraph,
    q2: &CycleRef,
    q3: &CycleRef,
) -> Result<Identified, SurgeryError> {
    let (x, y) = (&q2.vertices, &q3.vertices);
    let k = x.len();
    if k < 3 || y.len() != k {
        return Err(SurgeryError::NotALadder("cycles must have equal length at least 3".into()));
    }
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &v in x.iter().chain(y) {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(SurgeryError::NotALadder("cycles repeat or share a vertex".into()));
        }
    }
    let fl = g.faces();
    let is_face = |walk: &[usize]| {
        let rev: Vec<usize> = walk.iter().rev().copied().collect();
        fl.faces
            .iter()
            .any(|f| same_cyclic(f, walk) || same_cyclic(f, &rev))
    };
    for i in 0..k {
        let j = (i + 1) % k;
        if !g.has_edge(x[i], x[j]) || !g.has_edge(y[i], y[j]) || !g.has_edge(x[i], y[i]) {
            return Err(SurgeryError::NotALadder(format!("missing edge at position {}", i + 1)));
        }
        if !is_face(&[x[i], x[j], y[j], y[i]]) {
            return Err(SurgeryError::NotALadder(format!("no 4-face at position {}", i + 1)));
        }
    }
    let merged: Vec<usize> = (0..merged_count(k))
        .map(|i| if i % 2 == 0 { x[i] } else { y[i] })
        .collect();
    let mut graph = g.clone();
    let mut map: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut r = merged[0];
    for i in 1..merged.len() {
        let at = |v: usize| map[v].unwrap();
        // The i-th face of the ladder has the two vertices as a diagonal.
        let face = [at(x[i - 1]), at(x[i]), at(y[i]), at(y[i - 1])];
        let diagonal = if i % 2 == 1 { Diagonal::First } else { Diagonal::Second };
        let step = identify_across_face(&graph, &face, diagonal)?;
        for m in map.iter_mut() {
            *m = m.and_then(|v| step.map[v]);
        }
        r = step.z;
        graph = step.graph;
    }
    Ok(Identified { graph, map, z: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::dominates_under;
    use crate::embedding::enumerate_short_cycles;
    use crate::families::{cylinder_grid, prism};

    fn layer(k: usize, i: usize) -> CycleRef {
        CycleRef {
            vertices: (k * i..k * (i + 1)).collect(),
            contractible: false,
        }
    }

    #[test]
    fn classes_of_grids() {
        let p = prism();
        let dc = distance_classes(&p, 0).unwrap();
        assert_eq!(dc.classes.len(), 2);
        let mut r1 = p.rings()[1].clone();
        r1.sort_unstable();
        assert_eq!(dc.classes[1], r1);
        let g = cylinder_grid(4, 5);
        let dc = distance_classes(&g, 0).unwrap();
        assert!(dc.classes.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn middle_layers() {
        for k in [4, 6] {
            let g = cylinder_grid(k, 7);
            let q = shortest_layer_cycle(&g, 3).unwrap();
            let mut got = q.vertices.clone();
            got.sort_unstable();
            assert_eq!(got, layer(k, 3).vertices);
        }
        let g = cylinder_grid(4, 7);
        assert_eq!(shortest_layer_cycle(&g, 0).unwrap().vertices, g.rings()[0]);
        assert!(matches!(shortest_layer_cycle(&prism(), 1), Err(SurgeryError::NoSuchCycle(_))));
    }

    #[test]
    fn ladders() {
        for (k, m, expect_len) in [(6, 8, 4), (5, 6, 3), (4, 6, 4)] {
            let g = cylinder_grid(k, m);
            let q2 = layer(k, m / 2 - 1);
            let q3 = layer(k, m / 2);
            let out = ladder_contract(&g, &q2, &q3).unwrap();
            assert_eq!(out.graph.vertex_count(), g.vertex_count() + 1 - merged_count(k).max(1));
            let short = enumerate_short_cycles(&out.graph, 4, true).unwrap();
            assert!(short
                .iter()
                .any(|c| c.len() == expect_len && c.contains(out.z) && !out.graph.rings().contains(&c.vertices)));
        }
    }

    #[test]
    fn ladder_domination() {
        let g = cylinder_grid(4, 6);
        let out = ladder_contract(&g, &layer(4, 2), &layer(4, 3)).unwrap();
        assert!(dominates_under(&out.graph, &g, &out.map).unwrap());
        let g = cylinder_grid(5, 4);
        let out = ladder_contract(&g, &layer(5, 1), &layer(5, 2)).unwrap();
        assert!(dominates_under(&out.graph, &g, &out.map).unwrap());
    }

    #[test]
    fn not_a_ladder() {
        let g = cylinder_grid(4, 6);
        assert!(matches!(
            ladder_contract(&g, &layer(4, 1), &layer(4, 3)),
            Err(SurgeryError::NotALadder(_))
        ));
    }
}
