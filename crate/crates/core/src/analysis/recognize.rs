use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::embedding::{reversed_walk, EmbeddedGraph};
use crate::families::{
    frame, generate_patches, near_quad33_parts, patch_graph, reduced_thomas_walls, EndFrame,
    FamilyError, InterfacePairs, NearQuadParts, PatchPlacement,
};

use super::{canonical_form, rooted_code, AnalysisError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    FramedPatchedTW,
    NearQuad33,
    Neither,
}

/// Constructor choices reproducing a framed patched Thomas-Walls graph.
#[derive(Debug, Clone)]
pub struct FptwRecipe {
    pub n: usize,
    pub placements: Vec<PatchPlacement>,
    pub ends: [EndFrame; 2],
}

impl FptwRecipe {
    pub fn build(&self) -> Result<EmbeddedGraph, FamilyError> {
        let (g, pairs) = reduced_thomas_walls(self.n)?;
        let (g, map) = patch_graph(&g, &self.placements)?;
        let remap = |(a, b): (usize, usize)| (map[a].unwrap(), map[b].unwrap());
        let pairs = InterfacePairs {
            pairs: [remap(pairs.pairs[0]), remap(pairs.pairs[1])],
        };
        Ok(frame(&g, pairs, self.ends)?.0)
    }
}

#[derive(Debug, Clone)]
pub enum Decomposition {
    FramedPatchedTW(FptwRecipe),
    NearQuad33(NearQuadParts),
    None,
}

#[derive(Debug, Clone)]
pub struct FamilyWitness {
    pub verdict: Verdict,
    pub decomposition: Decomposition,
}

impl FamilyWitness {
    /// Rebuilds the matched graph from the decomposition.
    pub fn rebuild(&self) -> Option<Result<EmbeddedGraph, FamilyError>> {
        match &self.decomposition {
            Decomposition::FramedPatchedTW(r) => Some(r.build()),
            Decomposition::NearQuad33(p) => Some(p.rebuild()),
            Decomposition::None => None,
        }
    }
}

/// Framed patched Thomas-Walls graphs on at most `bound` vertices whose
/// patches have at most `patch_cap` internal vertices, keyed by a 128-bit
/// digest of the canonical code.
///
/// The smallest patchable base has 10 vertices and a patch on `k` internal
/// vertices adds `k + 2`, so the catalog is complete up to
/// [`FptwCatalog::complete_up_to`] vertices.
#[derive(Debug)]
pub struct FptwCatalog {
    pub bound: usize,
    pub patch_cap: usize,
    patches: Vec<EmbeddedGraph>,
    entries: HashMap<u128, Entry>,
}

#[derive(Debug, Clone)]
struct Entry {
    n: usize,
    /// `(vertex, patch index, offset, mirrored)`.
    placements: Vec<(usize, usize, usize, bool)>,
    ends: [EndFrame; 2],
}

const FRAMES: [EndFrame; 4] = [
    EndFrame { new_y: false, new_w: false },
    EndFrame { new_y: true, new_w: false },
    EndFrame { new_y: false, new_w: true },
    EndFrame { new_y: true, new_w: true },
];

fn digest(code: &[u32]) -> u128 {
    let bytes: Vec<u8> = code.iter().flat_map(|x| x.to_be_bytes()).collect();
    let d = Sha256::digest(bytes);
    u128::from_be_bytes(d[..16].try_into().unwrap())
}

/// Independent subsets of `cands` with at most `max` members.
fn independent_sets(g: &EmbeddedGraph, cands: &[usize], max: usize) -> Vec<Vec<usize>> {
    fn grow(
        g: &EmbeddedGraph,
        cands: &[usize],
        from: usize,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == max {
            return;
        }
        for i in from..cands.len() {
            let v = cands[i];
            if cur.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            cur.push(v);
            out.push(cur.clone());
            grow(g, cands, i + 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![Vec::new()];
    grow(g, cands, 0, max, &mut Vec::new(), &mut out);
    out
}

/// Gluings of `patch` into a hexagon that differ up to patch symmetry, as
/// `(offset, mirrored)` pairs of [`PatchPlacement`].
fn orientations(patch: &EmbeddedGraph) -> Vec<(usize, bool)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mirrored in [false, true] {
        let p = if mirrored { patch.mirrored() } else { patch.clone() };
        let inner = reversed_walk(&p.rings()[0]);
        for offset in 0..6 {
            // `inner[k]` lands on hexagon position `k + offset`.
            let a = inner[(6 - offset) % 6];
            let b = inner[(7 - offset) % 6];
            if seen.insert(rooted_code(&p, a, b)) {
                out.push((offset, mirrored));
            }
        }
    }
    out
}

/// Assignments of patch indices to the vertices of `set` within `room`
/// extra vertices.
fn assignments(set: &[usize], costs: &[usize], room: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(Vec::new(), 0usize)];
    for _ in set {
        let mut next = Vec::new();
        for (chosen, used) in &out {
            for (i, &c) in costs.iter().enumerate() {
                if used + c <= room {
                    let mut v: Vec<usize> = chosen.clone();
                    v.push(i);
                    next.push((v, used + c));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(c, _)| c).collect()
}

impl FptwCatalog {
    pub fn generate(bound: usize, patch_cap: usize) -> Self {
        let patches = if patch_cap > 0 { generate_patches(patch_cap) } else { Vec::new() };
        let costs: Vec<usize> = patches.iter().map(|p| p.vertex_count() - 4).collect();
        let orients: Vec<Vec<(usize, bool)>> = patches.iter().map(orientations).collect();
        let mut jobs = Vec::new();
        let mut n = 1;
        while 3 * n + 1 <= bound {
            let (base, _) = reduced_thomas_walls(n).expect("n >= 1");
            let room = bound - base.vertex_count();
            let cands: Vec<usize> = (0..base.vertex_count())
                .filter(|&v| !base.is_ring_vertex(v) && base.degree(v) == 3)
                .collect();
            for set in independent_sets(&base, &cands, room / 3) {
                for a in assignments(&set, &costs, room) {
                    jobs.push((n, set.clone(), a));
                }
            }
            n += 1;
        }
        let found: Vec<(u128, Entry)> = jobs
            .par_iter()
            .flat_map_iter(|(n, set, assign)| {
                let mut local: HashMap<u128, Entry> = HashMap::new();
                let choices: Vec<&Vec<(usize, bool)>> = assign.iter().map(|&i| &orients[i]).collect();
                let mut idx = vec![0usize; set.len()];
                loop {
                    let placements: Vec<(usize, usize, usize, bool)> = (0..set.len())
                        .map(|j| {
                            let (o, m) = choices[j][idx[j]];
                            (set[j], assign[j], o, m)
                        })
                        .collect();
                    if let Ok((g, pairs)) = patched(&patches, *n, &placements) {
                        for a in FRAMES {
                            for b in FRAMES {
                                let Ok((h, _)) = frame(&g, pairs, [a, b]) else { continue };
                                if h.vertex_count() <= bound {
                                    let e = Entry { n: *n, placements: placements.clone(), ends: [a, b] };
                                    local.entry(digest(&canonical_form(&h).code)).or_insert(e);
                                }
                            }
                        }
                    }
                    // Odometer over orientation choices.
                    let mut j = 0;
                    while j < idx.len() {
                        idx[j] += 1;
                        if idx[j] < choices[j].len() {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == idx.len() {
                        break;
                    }
                }
                local.into_iter()
            })
            .collect();
        let mut entries = HashMap::new();
        for (k, e) in found {
            entries.entry(k).or_insert(e);
        }
        FptwCatalog { bound, patch_cap, patches, entries }
    }

    /// Largest vertex count up to which every framed patched Thomas-Walls
    /// graph is listed.
    pub fn complete_up_to(&self) -> usize {
        self.bound.min(12 + self.patch_cap)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn recipe(&self, e: &Entry) -> FptwRecipe {
        FptwRecipe {
            n: e.n,
            placements: e
                .placements
                .iter()
                .map(|&(vertex, p, offset, mirrored)| PatchPlacement {
                    vertex,
                    patch: self.patches[p].clone(),
                    offset,
                    mirrored,
                })
                .collect(),
            ends: e.ends,
        }
    }

    pub fn lookup(&self, g: &EmbeddedGraph) -> Option<FptwRecipe> {
        self.entries
            .get(&digest(&canonical_form(g).code))
            .map(|e| self.recipe(e))
    }

    /// Recipes of all members, in digest order.
    pub fn recipes(&self) -> Vec<FptwRecipe> {
        let mut keys: Vec<&u128> = self.entries.keys().collect();
        keys.sort();
        keys.into_iter().map(|k| self.recipe(&self.entries[k])).collect()
    }
}

fn patched(
    patches: &[EmbeddedGraph],
    n: usize,
    placements: &[(usize, usize, usize, bool)],
) -> Result<(EmbeddedGraph, InterfacePairs), FamilyError> {
    let (g, pairs) = reduced_thomas_walls(n)?;
    let placed: Vec<PatchPlacement> = placements
        .iter()
        .map(|&(vertex, p, offset, mirrored)| PatchPlacement {
            vertex,
            patch: patches[p].clone(),
            offset,
            mirrored,
        })
        .collect();
    let (g, map) = patch_graph(&g, &placed)?;
    let remap = |(a, b): (usize, usize)| (map[a].unwrap(), map[b].unwrap());
    let pairs = InterfacePairs {
        pairs: [remap(pairs.pairs[0]), remap(pairs.pairs[1])],
    };
    Ok((g, pairs))
}

/// Patch size used by [`recognize`] catalogs.
pub const DEFAULT_PATCH_CAP: usize = 4;

/// Shared catalogs with patches of at most [`DEFAULT_PATCH_CAP`] internal
/// vertices, generated once per bound.
pub fn fptw_catalog(bound: usize) -> Arc<FptwCatalog> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FptwCatalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&bound) {
        return c.clone();
    }
    let c = Arc::new(FptwCatalog::generate(bound, DEFAULT_PATCH_CAP));
    cache.lock().unwrap().entry(bound).or_insert(c).clone()
}

/// Classifies `g` as a near 3,3-quadrangulation (structurally), a framed
/// patched Thomas-Walls graph (by catalog lookup), or neither. A cylinder
/// graph missing from the catalog but larger than the size up to which the
/// catalog is complete gets `CatalogTooSmall`. Graphs without two rings are
/// neither.
pub fn recognize(g: &EmbeddedGraph, catalog_bound: usize) -> Result<FamilyWitness, AnalysisError> {
    recognize_with(g, &fptw_catalog(catalog_bound))
}

pub fn recognize_with(g: &EmbeddedGraph, catalog: &FptwCatalog) -> Result<FamilyWitness, AnalysisError> {
    if let Some(parts) = near_quad33_parts(g) {
        return Ok(FamilyWitness {
            verdict: Verdict::NearQuad33,
            decomposition: Decomposition::NearQuad33(parts),
        });
    }
    if g.rings().len() != 2 {
        return Ok(FamilyWitness {
            verdict: Verdict::Neither,
            decomposition: Decomposition::None,
        });
    }
    if let Some(r) = catalog.lookup(g) {
        return Ok(FamilyWitness {
            verdict: Verdict::FramedPatchedTW,
            decomposition: Decomposition::FramedPatchedTW(r),
        });
    }
    if g.vertex_count() > catalog.complete_up_to() {
        return Err(AnalysisError::CatalogTooSmall {
            vertices: g.vertex_count(),
            bound: catalog.complete_up_to(),
        });
    }
    Ok(FamilyWitness {
        verdict: Verdict::Neither,
        decomposition: Decomposition::None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cylinder_grid, near_quad33, prism};

    #[test]
    fn near_quad_member() {
        let p = prism();
        let r = p.rings()[0].clone();
        let g = near_quad33(&p, [Some((r[0], r[1])), None]).unwrap();
        let w = recognize(&g, 12).unwrap();
        assert_eq!(w.verdict, Verdict::NearQuad33);
        let back = w.rebuild().unwrap().unwrap();
        assert_eq!(canonical_form(&back).code, canonical_form(&g).code);
    }

    #[test]
    fn framed_member() {
        let (t, pairs) = reduced_thomas_walls(3).unwrap();
        let v = (0..t.vertex_count())
            .find(|&v| !t.is_ring_vertex(v) && t.degree(v) == 3)
            .unwrap();
        let hub = generate_patches(1).remove(0);
        let (pg, map) = patch_graph(&t, &[PatchPlacement::new(v, hub)]).unwrap();
        let remap = |(a, b): (usize, usize)| (map[a].unwrap(), map[b].unwrap());
        let pairs = crate::families::InterfacePairs {
            pairs: [remap(pairs.pairs[0]), remap(pairs.pairs[1])],
        };
        let (g, _) = frame(&pg, pairs, [EndFrame::ALL_NEW; 2]).unwrap();
        let w = recognize(&g, g.vertex_count()).unwrap();
        assert_eq!(w.verdict, Verdict::FramedPatchedTW);
        let back = w.rebuild().unwrap().unwrap();
        assert_eq!(canonical_form(&back).code, canonical_form(&g).code);
    }

    #[test]
    fn grid_with_a_five_face_is_neither() {
        // Subdivide a middle edge of C4 x P6: two faces become 5-faces.
        let g = cylinder_grid(4, 6);
        let (h, _) = g.subdivided(8, 12).unwrap();
        // The grid has no degree-3 vertex pattern of a reduced Thomas-Walls
        // graph, yet at 25 vertices it lies beyond any complete catalog.
        assert!(matches!(
            recognize(&h, 16),
            Err(AnalysisError::CatalogTooSmall { .. })
        ));
        let small = cylinder_grid(4, 3);
        let (h, _) = small.subdivided(4, 8).unwrap();
        assert_eq!(recognize(&h, 16).unwrap().verdict, Verdict::Neither);
    }
}
