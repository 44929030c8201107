//! Exact 3-coloring: extension, counting, extendable ring precolorings and
//! domination.
//!
//! One backtracking kernel serves both modes. Domains are bitmasks over the
//! three colors; a vertex whose domain shrinks to one color is propagated
//! immediately, and branching picks the undecided vertex with the fewest
//! remaining colors (smallest id on ties). Counting continues exhaustively
//! and multiplies counts of independent undecided components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::embedding::EmbeddedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("precoloring is improper on edge {0}-{1}")]
    ImproperPrecoloring(usize, usize),
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("color {0} is not in 1..=3")]
    InvalidColor(u8),
    #[error("graph has no rings")]
    NoRings,
    #[error("graphs do not share the same rings")]
    RingMismatch,
    #[error("coloring count overflows u128")]
    Overflow,
}

/// One of the three colors, `1..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

impl Color {
    pub const ALL: [Color; 3] = [Color(1), Color(2), Color(3)];

    pub fn new(c: u8) -> Result<Self, ColoringError> {
        if (1..=3).contains(&c) {
            Ok(Color(c))
        } else {
            Err(ColoringError::InvalidColor(c))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    fn bit(self) -> u8 {
        1 << (self.0 - 1)
    }

    fn from_bit(bits: u8) -> Color {
        Color(bits.trailing_zeros() as u8 + 1)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A partial assignment of colors to vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Precoloring(BTreeMap<usize, Color>);

impl Precoloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Color)>) -> Self {
        Precoloring(pairs.into_iter().collect())
    }

    /// Assigns `colors[i]` to `domain[i]`.
    pub fn on(domain: &[usize], colors: &[Color]) -> Self {
        Self::from_pairs(domain.iter().copied().zip(colors.iter().copied()))
    }

    pub fn insert(&mut self, v: usize, c: Color) {
        self.0.insert(v, c);
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.0.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    /// The same precoloring with colors permuted by `perm` (`perm[c-1]`).
    pub fn permuted(&self, perm: [Color; 3]) -> Self {
        Precoloring(self.0.iter().map(|(&v, &c)| (v, perm[(c.0 - 1) as usize])).collect())
    }
}

/// Ring precolorings of a graph that extend to a full 3-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendableSet {
    /// Ring vertices in increasing order; members are indexed accordingly.
    pub ring_domain: Vec<usize>,
    pub members: BTreeSet<Vec<Color>>,
}

impl ExtendableSet {
    pub fn contains(&self, coloring: &[Color]) -> bool {
        self.members.contains(coloring)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &ExtendableSet) -> bool {
        self.ring_domain == other.ring_domain && self.members.is_subset(&other.members)
    }
}

struct Kernel<'a> {
    adj: &'a [Vec<usize>],
}

#[derive(Clone)]
struct State {
    dom: Vec<u8>,
    done: Vec<bool>,
}

impl<'a> Kernel<'a> {
    fn initial(&self, psi: &Precoloring) -> Option<State> {
        let n = self.adj.len();
        let mut st = State {
            dom: vec![0b111; n],
            done: vec![false; n],
        };
        let mut queue = VecDeque::new();
        for (v, c) in psi.iter() {
            st.dom[v] = c.bit();
            queue.push_back(v);
        }
        self.propagate(&mut st, queue).then_some(st)
    }

    fn propagate(&self, st: &mut State, mut queue: VecDeque<usize>) -> bool {
        while let Some(v) = queue.pop_front() {
            if st.done[v] {
                continue;
            }
            st.done[v] = true;
            let bit = st.dom[v];
            for &u in &self.adj[v] {
                if st.dom[u] & bit != 0 {
                    if st.done[u] {
                        return false;
                    }
                    st.dom[u] &= !bit;
                    match st.dom[u].count_ones() {
                        0 => return false,
                        1 => queue.push_back(u),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn pick(&self, st: &State, within: &[usize]) -> Option<usize> {
        within
            .iter()
            .copied()
            .filter(|&v| !st.done[v])
            .min_by_key(|&v| (st.dom[v].count_ones(), v))
    }

    fn assign(&self, st: &State, v: usize, bit: u8) -> Option<State> {
        let mut next = st.clone();
        next.dom[v] = bit;
        self.propagate(&mut next, VecDeque::from([v])).then_some(next)
    }

    fn first(&self, st: State, all: &[usize]) -> Option<State> {
        let Some(v) = self.pick(&st, all) else {
            return Some(st);
        };
        for c in Color::ALL {
            if st.dom[v] & c.bit() == 0 {
                continue;
            }
            if let Some(next) = self.assign(&st, v, c.bit()) {
                if let Some(sol) = self.first(next, all) {
                    return Some(sol);
                }
            }
        }
        None
    }

    fn count(&self, st: &State, within: &[usize]) -> Result<u128, ColoringError> {
        let open: Vec<usize> = within.iter().copied().filter(|&v| !st.done[v]).collect();
        if open.is_empty() {
            return Ok(1);
        }
        let comps = self.components(st, &open);
        if comps.len() > 1 {
            let mut total: u128 = 1;
            for comp in comps {
                let c = self.count(st, &comp)?;
                if c == 0 {
                    return Ok(0);
                }
                total = total.checked_mul(c).ok_or(ColoringError::Overflow)?;
            }
            return Ok(total);
        }
        let v = self.pick(st, &open).expect("open is non-empty");
        let mut total: u128 = 0;
        for c in Color::ALL {
            if st.dom[v] & c.bit() == 0 {
                continue;
            }
            if let Some(next) = self.assign(st, v, c.bit()) {
                let sub = self.count(&next, &open)?;
                total = total.checked_add(sub).ok_or(ColoringError::Overflow)?;
            }
        }
        Ok(total)
    }

    fn components(&self, st: &State, open: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let member: BTreeSet<usize> = open.iter().copied().collect();
        let mut out = Vec::new();
        for &s in open {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !st.done[u] && member.contains(&u) && seen.insert(u) {
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

fn check_precoloring(adj: &[Vec<usize>], psi: &Precoloring) -> Result<(), ColoringError> {
    for (v, _) in psi.iter() {
        if v >= adj.len() {
            return Err(ColoringError::InvalidVertex(v));
        }
    }
    for (v, c) in psi.iter() {
        for &u in &adj[v] {
            if u > v && psi.get(u) == Some(c) {
                return Err(ColoringError::ImproperPrecoloring(v, u));
            }
        }
    }
    Ok(())
}

/// First proper 3-coloring of a plain adjacency list agreeing with `psi`.
pub fn extend_adjacency(
    adj: &[Vec<usize>],
    psi: &Precoloring,
) -> Result<Option<Vec<Color>>, ColoringError> {
    check_precoloring(adj, psi)?;
    let kernel = Kernel { adj };
    let Some(st) = kernel.initial(psi) else {
        return Ok(None);
    };
    let all: Vec<usize> = (0..adj.len()).collect();
    Ok(kernel
        .first(st, &all)
        .map(|s| s.dom.iter().map(|&b| Color::from_bit(b)).collect()))
}

/// Whether `psi` extends; an improper `psi` simply does not extend. Vertices
/// must be in range.
pub(crate) fn extends(adj: &[Vec<usize>], psi: &Precoloring) -> bool {
    let kernel = Kernel { adj };
    let all: Vec<usize> = (0..adj.len()).collect();
    kernel.initial(psi).and_then(|st| kernel.first(st, &all)).is_some()
}

/// Number of proper 3-colorings of a plain adjacency list agreeing with `psi`.
pub fn count_adjacency(adj: &[Vec<usize>], psi: &Precoloring) -> Result<u128, ColoringError> {
    check_precoloring(adj, psi)?;
    let kernel = Kernel { adj };
    let Some(st) = kernel.initial(psi) else {
        return Ok(0);
    };
    let all: Vec<usize> = (0..adj.len()).collect();
    kernel.count(&st, &all)
}

/// A proper 3-coloring of `g` agreeing with `psi`, or `None`.
pub fn extend(g: &EmbeddedGraph, psi: &Precoloring) -> Result<Option<Vec<Color>>, ColoringError> {
    extend_adjacency(&g.adjacency(), psi)
}

/// Exact number of proper 3-colorings of `g` agreeing with `psi`.
pub fn count_colorings(g: &EmbeddedGraph, psi: &Precoloring) -> Result<u128, ColoringError> {
    count_adjacency(&g.adjacency(), psi)
}

/// True iff `coloring` is a proper 3-coloring of `g`.
pub fn is_proper(g: &EmbeddedGraph, coloring: &[Color]) -> bool {
    coloring.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

/// All colorings of the ring vertices (in `ring_vertices()` order) that are
/// proper on the ring cycles, in lexicographic order.
pub fn proper_ring_colorings(g: &EmbeddedGraph) -> Vec<Vec<Color>> {
    let domain = g.ring_vertices();
    let index: BTreeMap<usize, usize> = domain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Ring edges as index pairs (earlier, later).
    let mut constraints: Vec<Vec<usize>> = vec![Vec::new(); domain.len()];
    for r in g.rings() {
        let l = r.len();
        for i in 0..l {
            let (a, b) = (index[&r[i]], index[&r[(i + 1) % l]]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if !constraints[hi].contains(&lo) {
                constraints[hi].push(lo);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(domain.len());
    fn rec(
        i: usize,
        constraints: &[Vec<usize>],
        cur: &mut Vec<Color>,
        out: &mut Vec<Vec<Color>>,
    ) {
        if i == constraints.len() {
            out.push(cur.clone());
            return;
        }
        for c in Color::ALL {
            if constraints[i].iter().any(|&j| cur[j] == c) {
                continue;
            }
            cur.push(c);
            rec(i + 1, constraints, cur, out);
            cur.pop();
        }
    }
    rec(0, &constraints, &mut cur, &mut out);
    out
}

/// The exact set of proper ring precolorings that extend to `g`.
pub fn extendable_set(g: &EmbeddedGraph) -> Result<ExtendableSet, ColoringError> {
    if g.rings().is_empty() {
        return Err(ColoringError::NoRings);
    }
    let ring_domain = g.ring_vertices();
    let adj = g.adjacency();
    let candidates = proper_ring_colorings(g);
    let members = candidates
        .into_par_iter()
        .filter(|colors| extends(&adj, &Precoloring::on(&ring_domain, colors)))
        .collect::<Vec<_>>();
    let members = members.into_iter().collect();
    Ok(ExtendableSet {
        ring_domain,
        members,
    })
}

/// Every ring precoloring extending to `g1` also extends to `g2`; both graphs
/// must carry identical ring descriptors.
pub fn dominates(g1: &EmbeddedGraph, g2: &EmbeddedGraph) -> Result<bool, ColoringError> {
    if g1.rings() != g2.rings() {
        return Err(ColoringError::RingMismatch);
    }
    Ok(extendable_set(g1)?.is_subset(&extendable_set(g2)?))
}

/// Domination across a vertex correspondence: `map[v]` is the vertex of
/// `g1` that ring vertex `v` of `g2` was turned into. Every ring precoloring
/// extending to `g1`, pulled back along `map`, must extend to `g2`.
pub fn dominates_under(
    g1: &EmbeddedGraph,
    g2: &EmbeddedGraph,
    map: &[Option<usize>],
) -> Result<bool, ColoringError> {
    if g2.rings().is_empty() {
        return Err(ColoringError::NoRings);
    }
    let dom2 = g2.ring_vertices();
    let mut images = Vec::with_capacity(dom2.len());
    for &v in &dom2 {
        match map.get(v).copied().flatten() {
            Some(w) if g1.is_ring_vertex(w) => images.push(w),
            _ => return Err(ColoringError::RingMismatch),
        }
    }
    let ext1 = extendable_set(g1)?;
    let pos1: BTreeMap<usize, usize> =
        ext1.ring_domain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj2 = g2.adjacency();
    let results: Vec<bool> = ext1
        .members
        .par_iter()
        .map(|m| {
            let pulled: Vec<Color> = images.iter().map(|w| m[pos1[w]]).collect();
            extends(&adj2, &Precoloring::on(&dom2, &pulled))
        })
        .collect();
    Ok(results.into_iter().all(|b| b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_adj(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    /// Naive 3^n oracle.
    pub(crate) fn brute_count(adj: &[Vec<usize>], psi: &Precoloring) -> u128 {
        let n = adj.len();
        let mut count = 0;
        let total = 3usize.pow(n as u32);
        'outer: for code in 0..total {
            let mut x = code;
            let mut col = vec![0u8; n];
            for c in col.iter_mut() {
                *c = (x % 3) as u8 + 1;
                x /= 3;
            }
            for (v, c) in psi.iter() {
                if col[v] != c.get() {
                    continue 'outer;
                }
            }
            for v in 0..n {
                for &u in &adj[v] {
                    if col[u] == col[v] {
                        continue 'outer;
                    }
                }
            }
            count += 1;
        }
        count
    }

    fn k4_adj() -> Vec<Vec<usize>> {
        (0..4).map(|v| (0..4).filter(|&u| u != v).collect()).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_adjacency(&cycle_adj(4), &Precoloring::new()).unwrap(), 18);
        assert_eq!(count_adjacency(&[vec![1], vec![0]], &Precoloring::new()).unwrap(), 6);
        assert_eq!(count_adjacency(&k4_adj(), &Precoloring::new()).unwrap(), 0);
        assert_eq!(extend_adjacency(&k4_adj(), &Precoloring::new()).unwrap(), None);
    }

    #[test]
    fn counts_match_brute_force() {
        let graphs = [cycle_adj(5), cycle_adj(6), k4_adj(), vec![vec![]; 3]];
        for adj in &graphs {
            for pre in [Precoloring::new(), Precoloring::from_pairs([(0, Color(2))])] {
                assert_eq!(count_adjacency(adj, &pre).unwrap(), brute_count(adj, &pre));
            }
        }
    }

    #[test]
    fn improper_precoloring_rejected() {
        let pre = Precoloring::from_pairs([(0, Color(1)), (1, Color(1))]);
        assert_eq!(
            extend_adjacency(&cycle_adj(4), &pre),
            Err(ColoringError::ImproperPrecoloring(0, 1))
        );
        assert!(Color::new(4).is_err());
        assert_eq!(
            count_adjacency(&cycle_adj(4), &Precoloring::from_pairs([(9, Color(1))])),
            Err(ColoringError::InvalidVertex(9))
        );
    }

    #[test]
    fn first_solution_is_deterministic_and_proper() {
        let adj = cycle_adj(7);
        let a = extend_adjacency(&adj, &Precoloring::new()).unwrap().unwrap();
        let b = extend_adjacency(&adj, &Precoloring::new()).unwrap().unwrap();
        assert_eq!(a, b);
        for v in 0..7 {
            for &u in &adj[v] {
                assert_ne!(a[u], a[v]);
            }
        }
    }
}
