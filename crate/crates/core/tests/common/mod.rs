//! Fixture corpus and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use cylcolor::analysis::canonical_form;
use cylcolor::embedding::enumerate_short_cycles;
use cylcolor::families::{
    cube, cylinder_grid, generate_patches, generate_quad33, layered, near_quad33, prism,
    EndFrame, FamilySpec, PatchRef,
};
use cylcolor::surgery::{audit_chain, ChainDecomposition, ChainViolation};
use cylcolor::{CycleRef, EmbeddedGraph};

pub struct Fixture {
    pub name: String,
    pub graph: EmbeddedGraph,
}

fn fx(name: impl Into<String>, graph: EmbeddedGraph) -> Fixture {
    Fixture { name: name.into(), graph }
}

/// Calls `f` once per isomorphism class of near 3,3-quadrangulations over
/// all subdivision choices of the 3,3-quadrangulations on at most
/// `max_base` vertices, with the number of subdivided rings.
pub fn for_each_near_quad(max_base: usize, mut f: impl FnMut(&EmbeddedGraph, usize)) {
    let mut seen = HashSet::new();
    for g in generate_quad33(max_base) {
        let r = g.rings().to_vec();
        let choices = |i: usize| {
            let mut c = vec![None];
            c.extend((0..3).map(|k| Some((r[i][k], r[i][(k + 1) % 3]))));
            c
        };
        for a in choices(0) {
            for b in choices(1) {
                let h = near_quad33(&g, [a, b]).unwrap();
                if seen.insert(canonical_form(&h).code) {
                    f(&h, a.is_some() as usize + b.is_some() as usize);
                }
            }
        }
    }
}

pub fn near_quads(max_base: usize) -> Vec<(EmbeddedGraph, usize)> {
    let mut out = Vec::new();
    for_each_near_quad(max_base, |h, k| out.push((h.clone(), k)));
    out
}

/// Cylinder graphs: 3,3-quadrangulations, near ones, grids, layered
/// cylinders, framed and patched Thomas-Walls graphs, and subdivisions.
pub fn cylinder_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (i, g) in generate_quad33(10).into_iter().enumerate() {
        out.push(fx(format!("quad33#{i}"), g));
    }
    for (i, (g, k)) in near_quads(9).into_iter().enumerate() {
        if k > 0 {
            out.push(fx(format!("near-quad33#{i}"), g));
        }
    }
    for k in 3..=5 {
        for m in 2..=4 {
            out.push(fx(format!("grid{k}x{m}"), cylinder_grid(k, m)));
        }
    }
    for lengths in [&[3, 5, 3][..], &[4, 6, 4], &[3, 5, 5], &[4, 4, 6, 4], &[3, 5, 5, 3]] {
        out.push(fx(format!("layered{lengths:?}"), layered(lengths).unwrap()));
    }
    out.push(fx("layered[3,3,3,3]", layered(&[3, 3, 3, 3]).unwrap()));
    out.push(fx("cube", cube()));
    let p = prism();
    for (a, b) in [(0, 3), (1, 4), (2, 5)] {
        out.push(fx(format!("prism/{a}-{b}"), p.subdivided(a, b).unwrap().0));
    }
    for n in 1..=4 {
        let g = FamilySpec::ReducedThomasWalls { n }.build().unwrap().graph;
        out.push(fx(format!("T'_{n}"), g));
        for a in [EndFrame::REUSE, EndFrame::ALL_NEW] {
            for b in [EndFrame { new_y: true, new_w: false }, EndFrame::ALL_NEW] {
                let spec = FamilySpec::FramedPatchedThomasWalls { n, placements: vec![], ends: [a, b] };
                out.push(fx(format!("framed T'_{n} {a:?} {b:?}"), spec.build().unwrap().graph));
            }
        }
    }
    for index in 0..4 {
        let spec = FamilySpec::FramedPatchedThomasWalls {
            n: 3,
            placements: vec![(4, PatchRef { internal: 2, index })],
            ends: [EndFrame::REUSE, EndFrame::REUSE],
        };
        if let Ok(b) = spec.build() {
            out.push(fx(format!("patched T'_3 p2#{index}"), b.graph));
        }
    }
    out.push(fx("prism", p));
    out
}

pub fn is_triangle_free(g: &EmbeddedGraph) -> bool {
    enumerate_short_cycles(g, 3, false).unwrap().is_empty()
}

/// Triangle-free graphs on the sphere: cylinder fixtures with the rings
/// filled in as faces, patches, and subdivided grids.
pub fn sphere_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for f in cylinder_corpus() {
        let g = f.graph.with_rings(Vec::new()).unwrap();
        if is_triangle_free(&g) {
            out.push(fx(format!("{} (rings removed)", f.name), g));
        }
    }
    for (i, p) in generate_patches(4).into_iter().enumerate() {
        out.push(fx(format!("patch#{i} (ring removed)"), p.with_rings(Vec::new()).unwrap()));
    }
    for k in [4, 6, 8] {
        let g = cylinder_grid(k, 4).with_rings(Vec::new()).unwrap();
        let (s, _) = g.subdivided(0, 1).unwrap();
        let (s, _) = s.subdivided(k, k + 1).unwrap();
        out.push(fx(format!("grid{k}x4 subdivided"), s));
        out.push(fx(format!("grid{k}x4"), g));
    }
    out
}

fn prefix_ok(g: &EmbeddedGraph, cycles: &[CycleRef]) -> bool {
    let chain = ChainDecomposition {
        cutting_cycles: cycles.to_vec(),
        pieces: Vec::new(),
    };
    !audit_chain(g, &chain).iter().any(|v| {
        matches!(v, ChainViolation::Intersecting(..) | ChainViolation::NotSeparating { .. })
    })
}

fn complete(g: &EmbeddedGraph, cycles: &[CycleRef]) -> bool {
    let chain = ChainDecomposition {
        cutting_cycles: cycles.to_vec(),
        pieces: Vec::new(),
    };
    audit_chain(g, &chain)
        .iter()
        .all(|v| matches!(v, ChainViolation::PiecesDoNotTile))
}

fn same(a: &[usize], b: &[usize]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

/// Number of pieces of a largest chain, by exhaustive search over
/// sequences of non-contractible (≤4)-cycles from ring 0 to ring 1, each
/// checked by the audit (pieces excepted). `None` when no chain exists.
pub fn brute_max_chain(g: &EmbeddedGraph) -> Option<usize> {
    let rings = g.rings();
    if rings.len() != 2 || rings.iter().any(|r| r.len() > 4) {
        return None;
    }
    let ring = |r: &Vec<usize>| CycleRef {
        vertices: r.clone(),
        contractible: false,
    };
    let (r0, r1) = (ring(&rings[0]), ring(&rings[1]));
    let inner: Vec<CycleRef> = enumerate_short_cycles(g, 4, true)
        .unwrap()
        .into_iter()
        .filter(|c| !same(&c.vertices, &r0.vertices) && !same(&c.vertices, &r1.vertices))
        .collect();
    let mut best = None;
    let mut used = vec![false; inner.len()];
    let mut seq = vec![r0];
    search(g, &inner, &r1, &mut used, &mut seq, &mut best);
    best
}

fn search(
    g: &EmbeddedGraph,
    inner: &[CycleRef],
    last: &CycleRef,
    used: &mut [bool],
    seq: &mut Vec<CycleRef>,
    best: &mut Option<usize>,
) {
    seq.push(last.clone());
    let ok = prefix_ok(g, seq);
    if ok && complete(g, seq) {
        *best = Some(best.map_or(seq.len() - 1, |b: usize| b.max(seq.len() - 1)));
    }
    seq.pop();
    if !ok {
        return;
    }
    for i in 0..inner.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        seq.push(inner[i].clone());
        search(g, inner, last, used, seq, best);
        seq.pop();
        used[i] = false;
    }
}
