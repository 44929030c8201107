use std::fmt::Write as _;

use rayon::prelude::*;

use crate::embedding::{is_tame, EmbeddedGraph};
use crate::surgery::chain_decompose;

use super::{
    canonical_hash, check_guard, face_deficiency, is_critical, recognize_with, AnalysisError,
    FptwCatalog, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub canon: String,
    pub vertices: usize,
    pub tame: bool,
    pub critical: bool,
    /// `None` when the catalog was too small to decide.
    pub verdict: Option<Verdict>,
    pub def_int: i64,
    /// Number of pieces of a maximum chain, 0 when there is none.
    pub chain: usize,
}

impl CensusRecord {
    /// Tame, critical and neither family: what the classification rules out
    /// at large ring distance.
    pub fn is_counterexample(&self) -> bool {
        self.tame && self.critical && self.verdict == Some(Verdict::Neither)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusEntry {
    Record(CensusRecord),
    Skipped { canon: String, vertices: usize, guard: usize },
}

impl CensusEntry {
    fn canon(&self) -> &str {
        match self {
            CensusEntry::Record(r) => &r.canon,
            CensusEntry::Skipped { canon, .. } => canon,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusReport {
    /// Sorted by canonical hash.
    pub entries: Vec<CensusEntry>,
}

fn verdict_tag(v: Option<Verdict>) -> &'static str {
    match v {
        Some(Verdict::NearQuad33) => "NQ",
        Some(Verdict::FramedPatchedTW) => "FPTW",
        Some(Verdict::Neither) => "NEITHER",
        None => "UNKNOWN",
    }
}

impl CensusReport {
    pub fn records(&self) -> impl Iterator<Item = &CensusRecord> {
        self.entries.iter().filter_map(|e| match e {
            CensusEntry::Record(r) => Some(r),
            CensusEntry::Skipped { .. } => None,
        })
    }

    pub fn skipped(&self) -> usize {
        self.entries.len() - self.records().count()
    }

    pub fn unknown(&self) -> usize {
        self.records().filter(|r| r.verdict.is_none()).count()
    }

    pub fn counterexamples(&self) -> Vec<&CensusRecord> {
        self.records().filter(|r| r.is_counterexample()).collect()
    }

    /// No undecided verdict and no counterexample.
    pub fn is_clean(&self) -> bool {
        self.unknown() == 0 && self.counterexamples().is_empty()
    }

    /// One line per entry, then `#` summary lines.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            match e {
                CensusEntry::Record(r) => {
                    let _ = write!(
                        s,
                        "canon={} tame={} critical={} verdict={} def_int={} chain={}",
                        r.canon,
                        r.tame as u8,
                        r.critical as u8,
                        verdict_tag(r.verdict),
                        r.def_int,
                        r.chain
                    );
                    if r.is_counterexample() {
                        s.push_str(" flag=COUNTEREXAMPLE");
                    }
                    s.push('\n');
                }
                CensusEntry::Skipped { canon, vertices, guard } => {
                    let _ = writeln!(s, "canon={canon} skip=guard vertices={vertices} guard={guard}");
                }
            }
        }
        let _ = writeln!(
            s,
            "# instances={} skipped={} unknown={} counterexamples={}",
            self.entries.len(),
            self.skipped(),
            self.unknown(),
            self.counterexamples().len()
        );
        if !self.counterexamples().is_empty() {
            s.push_str(
                "# note: the classification only applies at large ring distance, which desk-scale instances do not reach\n",
            );
        }
        s
    }
}

fn examine(g: &EmbeddedGraph, guard: usize, catalog: &FptwCatalog) -> Result<CensusEntry, AnalysisError> {
    let canon = canonical_hash(g);
    if check_guard(g, guard).is_err() {
        return Ok(CensusEntry::Skipped {
            canon,
            vertices: g.vertex_count(),
            guard,
        });
    }
    let tame = is_tame(g);
    let critical = !g.rings().is_empty() && is_critical(g, guard)?.is_critical;
    let verdict = match recognize_with(g, catalog) {
        Ok(w) => Some(w.verdict),
        Err(AnalysisError::CatalogTooSmall { .. }) => None,
        Err(e) => return Err(e),
    };
    let chain = if tame { chain_decompose(g).map_or(0, |c| c.len()) } else { 0 };
    Ok(CensusEntry::Record(CensusRecord {
        canon,
        vertices: g.vertex_count(),
        tame,
        critical,
        verdict,
        def_int: face_deficiency(g).deficiency_internal,
        chain,
    }))
}

/// Runs every check on every graph; instances above `guard` vertices get a
/// skip record. The report is sorted by canonical hash, so it does not
/// depend on scheduling.
pub fn census(
    graphs: &[EmbeddedGraph],
    guard: usize,
    catalog: &FptwCatalog,
) -> Result<CensusReport, AnalysisError> {
    let mut entries = graphs
        .par_iter()
        .map(|g| examine(g, guard, catalog))
        .collect::<Result<Vec<_>, _>>()?;
    entries.sort_by(|a, b| a.canon().cmp(b.canon()));
    Ok(CensusReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::fptw_catalog;
    use crate::families::{generate_quad33, prism};

    #[test]
    fn empty_generator() {
        let r = census(&[], 22, &fptw_catalog(12)).unwrap();
        assert!(r.entries.is_empty());
        assert!(r.is_clean());
        assert_eq!(r.render(), "# instances=0 skipped=0 unknown=0 counterexamples=0\n");
    }

    #[test]
    fn small_quadrangulations() {
        let gs = generate_quad33(9);
        let r = census(&gs, 22, &fptw_catalog(12)).unwrap();
        assert_eq!(r.entries.len(), gs.len());
        for rec in r.records() {
            assert_eq!(rec.verdict, Some(Verdict::NearQuad33));
            assert_eq!(rec.def_int, 0);
        }
        let p = census(&[prism()], 22, &fptw_catalog(12)).unwrap();
        let line = p.render();
        assert!(line.contains("tame=1 critical=1 verdict=NQ def_int=0 chain=1"), "{line}");
    }

    #[test]
    fn guard_skips() {
        let r = census(&[crate::families::cylinder_grid(5, 5)], 22, &fptw_catalog(12)).unwrap();
        assert_eq!(r.skipped(), 1);
        assert!(r.render().contains("skip=guard vertices=25 guard=22"));
    }
}
