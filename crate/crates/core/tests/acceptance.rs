//! Acceptance suite: one PASS/FAIL line per criterion on stderr, then a
//! single assertion. Every criterion is exact, so the tolerance is zero
//! failures throughout.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cylcolor::analysis::{
    canonical_form, face_deficiency, fptw_catalog, is_critical, is_four_critical,
    lemma_fr_audit, recognize_with, sixring_criterion, Decomposition, FptwCatalog, Verdict,
    Witness,
};
use cylcolor::coloring::{count_colorings, dominates_under, extend, Color, Precoloring};
use cylcolor::embedding::is_tame;
use cylcolor::families::{
    for_each_six_ring_disk, generate_patches, generate_quad33, prism, reduced_thomas_walls,
    thomas_walls,
};
use cylcolor::surgery::{audit_chain, chain_decompose, identify_across_face, Diagonal, SurgeryError};
use cylcolor::EmbeddedGraph;

use common::{brute_max_chain, cylinder_corpus, for_each_near_quad, sphere_corpus};

/// Pinned tolerance: allowed failures per criterion.
const TOLERANCE: usize = 0;

/// Internal vertex bound for the exhaustive 6-ring disk enumeration.
const DISK_INTERNAL: usize = 10;
/// Vertex bound of the framed patched Thomas-Walls catalog.
const CATALOG_BOUND: usize = 24;
const RELABELINGS: usize = 1000;
/// Relabelings for instances outside the full-depth samples.
const SHALLOW_RELABELINGS: usize = 4;
/// Catalog members (seeded choice) that get the full 1000 relabelings.
const CATALOG_SAMPLE: usize = 300;
/// Vertex bound for 3,3-quadrangulations (and the bases of near ones).
const QUAD_VERTICES: usize = 12;
/// Every `QUAD_STRIDE`th 3,3-quadrangulation gets the full relabelings.
const QUAD_STRIDE: usize = 64;
const NEAR_STRIDE: usize = 512;

struct Outcome {
    checked: usize,
    failures: Vec<String>,
    note: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, failures: Vec::new(), note: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Proper colorings of the ring `0..6` up to permuting colors: the first
/// vertex gets 1 and the first other color is 2. Both the criterion and
/// extension are invariant under color permutations.
fn ring_colorings() -> Vec<Precoloring> {
    let mut out = Vec::new();
    for code in 0..729u32 {
        let c: Vec<u8> = (0..6).map(|i| (code / 3u32.pow(i) % 3) as u8 + 1).collect();
        if (0..6).any(|i| c[i] == c[(i + 1) % 6]) {
            continue;
        }
        if c[0] != 1 || c.iter().find(|&&x| x != 1) != Some(&2) {
            continue;
        }
        out.push(Precoloring::from_pairs((0..6).map(|i| (i, Color::new(c[i]).unwrap()))));
    }
    out
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let psis = ring_colorings();
    assert_eq!(psis.len(), 11);
    let mut disks = 0;
    for_each_six_ring_disk(DISK_INTERNAL, true, |g| {
        disks += 1;
        for psi in &psis {
            let brute = matches!(extend(g, psi), Ok(Some(_)));
            let fast = sixring_criterion(g, psi).unwrap();
            o.check(fast == brute, || format!("disk {} psi {:?}", canonical_form(g).hash_hex(), psi));
        }
    });
    o.note = format!("{disks} disks with <= {DISK_INTERNAL} internal vertices, 11 color classes each");
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let p = prism();
    let r = is_critical(&p, 22).unwrap();
    o.check(r.is_critical, || "prism not critical".into());
    for (a, b) in [(0, 3), (1, 4), (2, 5)] {
        let (s, mid) = p.subdivided(a, b).unwrap();
        let r = is_critical(&s, 22).unwrap();
        let ok = !r.is_critical
            && match r.witness {
                Some(Witness::Vertex(v)) => s.degree(v) == 2 && v == mid,
                Some(Witness::Edge(x, y)) => s.degree(x) == 2 || s.degree(y) == 2,
                _ => false,
            };
        o.check(ok, || format!("prism with {a}-{b} subdivided: {r:?}"));
    }
    for n in 1..=4 {
        let g = thomas_walls(n).unwrap();
        o.check(is_four_critical(&g), || format!("T_{n} not 4-critical"));
    }
    o.note = "prism, 3 subdivisions, T_1..T_4".into();
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let mut graphs = 0;
    for f in cylinder_corpus() {
        let g = &f.graph;
        if g.vertex_count() > 14 {
            continue;
        }
        graphs += 1;
        let faces = g.faces();
        for i in faces.internal_faces() {
            let face = &faces.faces[i];
            if face.len() != 4 {
                continue;
            }
            for d in [Diagonal::First, Diagonal::Second] {
                let Ok(id) = identify_across_face(g, face, d) else { continue };
                let ok = dominates_under(&id.graph, g, &id.map).unwrap_or(false);
                o.check(ok, || format!("{} face {face:?} {d:?}", f.name));
            }
        }
    }
    o.note = format!("{graphs} cylinder graphs <= 14 vertices, admissible identifications");
    o
}

fn relabel_invariant(g: &EmbeddedGraph, times: usize, rng: &mut ChaCha8Rng) -> bool {
    let code = canonical_form(g).code;
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    (0..times).all(|_| {
        perm.shuffle(rng);
        canonical_form(&g.relabeled(&perm)).code == code
    })
}

fn round_trip(g: &EmbeddedGraph, expected: Verdict, catalog: &FptwCatalog) -> Result<(), String> {
    let w = recognize_with(g, catalog).map_err(|e| e.to_string())?;
    if w.verdict != expected {
        return Err(format!("verdict {:?}, expected {expected:?}", w.verdict));
    }
    match (&w.decomposition, w.rebuild()) {
        (Decomposition::None, None) if expected == Verdict::Neither => Ok(()),
        (_, Some(Ok(h))) if canonical_form(&h).code == canonical_form(g).code => Ok(()),
        (_, other) => Err(format!("decomposition does not reproduce the graph: {other:?}")),
    }
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let catalog = fptw_catalog(CATALOG_BOUND);
    let mut family = |o: &mut Outcome, name: &str, g: &EmbeddedGraph, v: Verdict, times: usize| {
        let r = round_trip(g, v, &catalog);
        o.check(r.is_ok(), || format!("{name}: {}", r.unwrap_err()));
        o.check(relabel_invariant(g, times, &mut rng), || format!("{name}: canonical form moved"));
    };
    for n in 1..=5 {
        family(&mut o, &format!("T_{n}"), &thomas_walls(n).unwrap(), Verdict::Neither, RELABELINGS);
        let (r, _) = reduced_thomas_walls(n).unwrap();
        family(&mut o, &format!("T'_{n}"), &r, Verdict::FramedPatchedTW, RELABELINGS);
    }
    for (i, p) in generate_patches(4).iter().enumerate() {
        family(&mut o, &format!("patch#{i}"), p, Verdict::Neither, RELABELINGS);
    }
    let quads = generate_quad33(QUAD_VERTICES);
    for (i, q) in quads.iter().enumerate() {
        let times = if i % QUAD_STRIDE == 0 { RELABELINGS } else { SHALLOW_RELABELINGS };
        family(&mut o, &format!("quad33#{i}"), q, Verdict::NearQuad33, times);
    }
    let mut near = 0;
    for_each_near_quad(QUAD_VERTICES, |q, _| {
        let times = if near % NEAR_STRIDE == 0 { RELABELINGS } else { SHALLOW_RELABELINGS };
        family(&mut o, &format!("near-quad33#{near}"), q, Verdict::NearQuad33, times);
        near += 1;
    });
    let recipes = catalog.recipes();
    let mut idx: Vec<usize> = (0..recipes.len()).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(0xd330));
    let deep: std::collections::HashSet<usize> = idx.into_iter().take(CATALOG_SAMPLE).collect();
    for (i, r) in recipes.iter().enumerate() {
        let g = r.build().unwrap();
        let times = if deep.contains(&i) { RELABELINGS } else { SHALLOW_RELABELINGS };
        family(&mut o, &format!("fptw#{i}"), &g, Verdict::FramedPatchedTW, times);
    }
    o.note = format!(
        "T_n/T'_n n<=5, {} patches, {} quad33, {} near-quad33, {} framed patched (<= {CATALOG_BOUND} vertices); \
         {RELABELINGS} relabelings for T_n, T'_n, patches, every {QUAD_STRIDE}th quad33, every {NEAR_STRIDE}th \
         near-quad33 and {CATALOG_SAMPLE} sampled catalog members, {SHALLOW_RELABELINGS} for the rest",
        generate_patches(4).len(),
        quads.len(),
        near,
        recipes.len(),
    );
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let mut critical = 0;
    for f in cylinder_corpus() {
        if f.graph.vertex_count() > 22 || !is_critical(&f.graph, 22).unwrap().is_critical {
            continue;
        }
        critical += 1;
        let v = lemma_fr_audit(&f.graph).unwrap();
        o.check(v.is_empty(), || format!("{}: {v:?}", f.name));
    }
    o.note = format!("{critical} critical corpus graphs");
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let quads = generate_quad33(QUAD_VERTICES);
    for (i, q) in quads.iter().enumerate() {
        let d = face_deficiency(q).deficiency_internal;
        o.check(d == 0, || format!("quad33#{i}: {d}"));
    }
    let mut near = 0;
    for_each_near_quad(QUAD_VERTICES, |q, k| {
        let d = face_deficiency(q).deficiency_internal;
        o.check(d == k as i64, || format!("near-quad33#{near}: {d}, {k} subdivided"));
        near += 1;
    });
    o.note = format!("{} quad33, {near} near-quad33", quads.len());
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let (mut tame, mut brute, mut chainless) = (0, 0, 0);
    let mut corpus = cylinder_corpus();
    corpus.extend(generate_quad33(QUAD_VERTICES).into_iter().map(|g| common::Fixture { name: "quad33".into(), graph: g }));
    for f in corpus {
        let g = &f.graph;
        if !is_tame(g) || g.rings().iter().any(|r| r.len() > 4) {
            continue;
        }
        tame += 1;
        let chain = match chain_decompose(g) {
            Ok(c) => c,
            Err(SurgeryError::NoChain(_)) if g.vertex_count() <= 12 => {
                brute += 1;
                chainless += 1;
                let best = brute_max_chain(g);
                o.check(best.is_none(), || format!("{}: no chain, exhaustive {best:?}", f.name));
                continue;
            }
            Err(e) => {
                o.check(false, || format!("{}: {e}", f.name));
                continue;
            }
        };
        let v = audit_chain(g, &chain);
        o.check(v.is_empty(), || format!("{}: {v:?}", f.name));
        if g.vertex_count() <= 12 {
            brute += 1;
            let best = brute_max_chain(g);
            o.check(best == Some(chain.len()), || {
                format!("{}: chain {} pieces, exhaustive {best:?}", f.name, chain.len())
            });
        }
    }
    o.note = format!(
        "{tame} tame instances, {brute} against exhaustive search, {chainless} without any chain"
    );
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let corpus = sphere_corpus();
    for f in &corpus {
        let n = count_colorings(&f.graph, &Precoloring::new()).unwrap();
        o.check(n > 0, || format!("{} has no 3-coloring", f.name));
    }
    o.note = format!("{} triangle-free sphere fixtures", corpus.len());
    o
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("C1 6-ring criterion agrees with brute-force extension", criterion_1),
        ("C2 criticality ground truths", criterion_2),
        ("C3 identification dominates its input", criterion_3),
        ("C4 family round-trips and canonical invariance", criterion_4),
        ("C5 critical graphs pass the structure audit", criterion_5),
        ("C6 face deficiency of (near) 3,3-quadrangulations", criterion_6),
        ("C7 chain audit and exhaustive maximality", criterion_7),
        ("C8 triangle-free sphere fixtures are 3-colorable", criterion_8),
    ];
    let mut err = std::io::stderr();
    let mut failed = Vec::new();
    // ACCEPTANCE_ONLY=C4,C7 runs a subset.
    let only = std::env::var("ACCEPTANCE_ONLY").ok();
    for (name, run) in criteria {
        let id = name.split(' ').next().unwrap();
        if only.as_ref().is_some_and(|o| !o.split(',').any(|x| x == id)) {
            continue;
        }
        let t = Instant::now();
        let line = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(o) => {
                let pass = o.failures.len() <= TOLERANCE;
                if !pass {
                    failed.push(name);
                }
                let mut line = format!(
                    "{} {name}: {} checks, {} failures (tolerance {TOLERANCE}); {} [{:.1}s]",
                    if pass { "PASS" } else { "FAIL" },
                    o.checked,
                    o.failures.len(),
                    o.note,
                    t.elapsed().as_secs_f64()
                );
                for f in o.failures.iter().take(5) {
                    line.push_str(&format!("\n    {f}"));
                }
                line
            }
            Err(_) => {
                failed.push(name);
                format!("FAIL {name}: panicked")
            }
        };
        let _ = writeln!(err, "{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
