//! Chains: sequences of non-contractible (at most 4)-cycles cutting the
//! cylinder into consecutive pieces.

use std::collections::VecDeque;

use crate::embedding::{
    enumerate_short_cycles, is_tame, same_cyclic, CycleRef, CycleSides, EmbeddedGraph, Side,
};

use super::SurgeryError;

/// The part of the graph drawn between two consecutive cutting cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    /// Indices into `g.faces()`.
    pub faces: Vec<usize>,
    /// Sorted vertices of those faces and of both bounding cycles.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// `C_0 .. C_n`, from ring 0 to ring 1.
    pub cutting_cycles: Vec<CycleRef>,
    /// `pieces[i]` lies between `C_i` and `C_{i+1}`.
    pub pieces: Vec<Piece>,
}

impl ChainDecomposition {
    /// Number of pieces.
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// A failed chain condition, as found by [`audit_chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainViolation {
    NotShortNonContractible(usize),
    Intersecting(usize, usize),
    NotSeparating { middle: usize, a: usize, b: usize },
    WrongEnds,
    MissedTriangle(Vec<usize>),
    PiecesDoNotTile,
}

pub(crate) fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    let rev: Vec<usize> = a.iter().rev().copied().collect();
    same_cyclic(a, b) || same_cyclic(&rev, b)
}

/// Where the vertices of a cycle lie relative to the rings.
struct Located {
    sides: CycleSides,
    ring0: Side,
}

impl Located {
    fn new(g: &EmbeddedGraph, c: &[usize]) -> Result<Self, SurgeryError> {
        let sides = CycleSides::new(g, c)?;
        let ring0 = sides.ring_side(0);
        Ok(Located { sides, ring0 })
    }

    /// True iff `v` lies strictly on the ring-0 side.
    fn toward_ring0(&self, g: &EmbeddedGraph, v: usize) -> bool {
        self.sides.vertex_side(g, v) == self.ring0
    }

    fn toward_ring1(&self, g: &EmbeddedGraph, v: usize) -> bool {
        let s = self.sides.vertex_side(g, v);
        s != self.ring0 && s != Side::On && s != Side::Detached
    }
}

/// `a` comes strictly before `b` when walking from ring 0 to ring 1.
fn precedes(g: &EmbeddedGraph, a: &[usize], la: &Located, b: &[usize], lb: &Located) -> bool {
    let b_rest: Vec<usize> = b.iter().copied().filter(|v| !a.contains(v)).collect();
    let a_rest: Vec<usize> = a.iter().copied().filter(|v| !b.contains(v)).collect();
    !a_rest.is_empty()
        && !b_rest.is_empty()
        && b_rest.iter().all(|&v| la.toward_ring1(g, v))
        && a_rest.iter().all(|&v| lb.toward_ring0(g, v))
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| !b.contains(v))
}

/// Finds a chain with the largest number of pieces. The graph must be tame
/// with two rings of length at most 4.
pub fn chain_decompose(g: &EmbeddedGraph) -> Result<ChainDecomposition, SurgeryError> {
    if g.rings().len() != 2 || g.rings().iter().any(|r| r.len() > 4) {
        return Err(SurgeryError::NoChain("need two rings of length at most 4".into()));
    }
    if !is_tame(g) {
        return Err(SurgeryError::NotTame);
    }
    let (ring0, ring1) = (g.rings()[0].clone(), g.rings()[1].clone());
    let mut cands: Vec<Vec<usize>> = vec![ring0.clone()];
    for c in enumerate_short_cycles(g, 4, true)? {
        if !same_cycle(&c.vertices, &ring0) && !same_cycle(&c.vertices, &ring1) {
            cands.push(c.vertices);
        }
    }
    cands.push(ring1.clone());
    let last = cands.len() - 1;
    let triangles: Vec<usize> = (0..cands.len()).filter(|&i| cands[i].len() == 3).collect();
    let is_ring = |i: usize| i == 0 || i == last;
    // A non-ring cycle meeting a triangle cannot appear beside it.
    let usable: Vec<bool> = (0..cands.len())
        .map(|i| {
            is_ring(i)
                || triangles
                    .iter()
                    .all(|&t| t == i || disjoint(&cands[i], &cands[t]))
        })
        .collect();
    let located = cands
        .iter()
        .map(|c| Located::new(g, c))
        .collect::<Result<Vec<_>, _>>()?;
    let prec = |i: usize, j: usize| precedes(g, &cands[i], &located[i], &cands[j], &located[j]);
    let compatible = |i: usize, j: usize| {
        disjoint(&cands[i], &cands[j])
            || (i == 0 && cands[i].len() == 4 && cands[j].len() == 3)
            || (j == last && cands[j].len() == 4 && cands[i].len() == 3)
    };
    let m = cands.len();
    let mut edge = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j || !usable[i] || !usable[j] || j == 0 || i == last {
                continue;
            }
            if !compatible(i, j) || !prec(i, j) {
                continue;
            }
            let skips = triangles
                .iter()
                .any(|&t| t != i && t != j && prec(i, t) && prec(t, j));
            edge[i][j] = !skips;
        }
    }
    // Longest path to `last`, computed in an order compatible with `prec`:
    // a cycle with more faces on its ring-0 side comes later.
    let weight = |i: usize| located[i].sides.faces_on(located[i].ring0).len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weight(i)), i));
    let mut best: Vec<Option<(usize, usize)>> = vec![None; m];
    let mut reach_end = vec![false; m];
    reach_end[last] = true;
    for &i in &order {
        if i == last {
            continue;
        }
        for j in 0..m {
            if !edge[i][j] || !reach_end[j] {
                continue;
            }
            let len = if j == last { 1 } else { best[j].unwrap().0 + 1 };
            if best[i].map_or(true, |(l, _)| len > l) {
                best[i] = Some((len, j));
            }
        }
        reach_end[i] = best[i].is_some();
    }
    if best[0].is_none() {
        return Err(SurgeryError::NoChain("no admissible sequence of cutting cycles".into()));
    }
    let mut path = vec![0];
    let mut cur = 0;
    while cur != last {
        cur = best[cur].unwrap().1;
        path.push(cur);
    }
    let cutting_cycles: Vec<CycleRef> = path
        .iter()
        .map(|&i| CycleRef {
            vertices: cands[i].clone(),
            contractible: false,
        })
        .collect();
    let pieces = pieces_between(g, &cutting_cycles)?;
    Ok(ChainDecomposition {
        cutting_cycles,
        pieces,
    })
}

fn pieces_between(g: &EmbeddedGraph, cycles: &[CycleRef]) -> Result<Vec<Piece>, SurgeryError> {
    let located = cycles
        .iter()
        .map(|c| Located::new(g, &c.vertices))
        .collect::<Result<Vec<_>, _>>()?;
    let fl = located[0].sides.faces();
    let mut out = Vec::new();
    for i in 1..cycles.len() {
        let (a, b) = (&located[i - 1], &located[i]);
        let faces: Vec<usize> = fl
            .internal_faces()
            .filter(|&f| {
                let sa = a.sides.face_side[f];
                let sb = b.sides.face_side[f];
                sa != a.ring0 && sb == b.ring0
            })
            .collect();
        let mut vertices: Vec<usize> = faces
            .iter()
            .flat_map(|&f| fl.faces[f].iter().copied())
            .chain(cycles[i - 1].vertices.iter().copied())
            .chain(cycles[i].vertices.iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        out.push(Piece { faces, vertices });
    }
    Ok(out)
}

/// Vertices reachable from `from` in `g` minus `removed`.
fn reachable(g: &EmbeddedGraph, from: &[usize], removed: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &v in from {
        if !removed.contains(&v) && !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.rotation(v) {
            if !removed.contains(&u) && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Checks the chain conditions directly: cycle types, pairwise
/// disjointness with the end exception, separation by graph search, the
/// ends, triangle coverage and the tiling of faces by pieces.
pub fn audit_chain(g: &EmbeddedGraph, chain: &ChainDecomposition) -> Vec<ChainViolation> {
    let mut out = Vec::new();
    let cs: Vec<&[usize]> = chain.cutting_cycles.iter().map(|c| c.vertices.as_slice()).collect();
    let n = cs.len().saturating_sub(1);
    let short: Vec<CycleRef> = enumerate_short_cycles(g, 4, true).unwrap_or_default();
    for (i, c) in cs.iter().enumerate() {
        if !short.iter().any(|s| same_cycle(&s.vertices, c)) {
            out.push(ChainViolation::NotShortNonContractible(i));
        }
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if disjoint(cs[i], cs[j]) {
                continue;
            }
            let excepted = (i == 0 && j == 1 && cs[0].len() == 4 && cs[1].len() == 3)
                || (i == n - 1 && j == n && n >= 1 && cs[n].len() == 4 && cs[n - 1].len() == 3);
            if !excepted {
                out.push(ChainViolation::Intersecting(i, j));
            }
        }
    }
    for j in 1..n {
        for i in 0..j {
            for k in j + 1..=n {
                let side = reachable(g, cs[i], cs[j]);
                if cs[k].iter().any(|&v| !cs[j].contains(&v) && side[v]) {
                    out.push(ChainViolation::NotSeparating { middle: j, a: i, b: k });
                }
            }
        }
    }
    let rings = g.rings();
    if cs.len() < 2 || !same_cycle(cs[0], &rings[0]) || !same_cycle(cs[n], &rings[1]) {
        out.push(ChainViolation::WrongEnds);
    }
    for t in enumerate_short_cycles(g, 3, false).unwrap_or_default() {
        if !cs.iter().any(|c| same_cycle(c, &t.vertices)) {
            out.push(ChainViolation::MissedTriangle(t.vertices));
        }
    }
    let fl = g.faces();
    let mut count = vec![0usize; fl.len()];
    for p in &chain.pieces {
        for &f in &p.faces {
            count[f] += 1;
        }
    }
    let tiles = chain.pieces.len() == n && fl.internal_faces().all(|f| count[f] == 1);
    if !tiles {
        out.push(ChainViolation::PiecesDoNotTile);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cylinder_grid, layered, prism};

    #[test]
    fn grid_layers_all_cut() {
        let g = cylinder_grid(4, 5);
        let c = chain_decompose(&g).unwrap();
        assert_eq!(c.len(), 4);
        assert!(audit_chain(&g, &c).is_empty());
    }

    #[test]
    fn prism_is_one_piece() {
        let c = chain_decompose(&prism()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(audit_chain(&prism(), &c).is_empty());
    }

    #[test]
    fn triangles_are_forced() {
        let g = layered(&[3, 3, 3, 3]).unwrap();
        let c = chain_decompose(&g).unwrap();
        assert_eq!(c.len(), 3);
        assert!(audit_chain(&g, &c).is_empty());
    }

    #[test]
    fn audit_rejects_a_skipped_triangle() {
        let g = layered(&[3, 3, 3, 3]).unwrap();
        let mut c = chain_decompose(&g).unwrap();
        c.cutting_cycles.remove(1);
        c.pieces = pieces_between(&g, &c.cutting_cycles).unwrap();
        let v = audit_chain(&g, &c);
        assert!(v.iter().any(|x| matches!(x, ChainViolation::MissedTriangle(_))));
    }
}
