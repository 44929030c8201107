//! Command-line front end over the EMG format.
//!
//! Exit codes: 0 success, 1 property violation found, 2 malformed input or
//! usage, 3 size guard exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    canonical_form, canonical_hash, census, face_deficiency, is_critical, recognize_with,
    AnalysisError, Decomposition, FptwCatalog, Verdict, Witness, DEFAULT_GUARD, DEFAULT_PATCH_CAP,
};
use crate::coloring::{
    count_colorings, dominates, extend, extendable_set, proper_ring_colorings, Color,
    ColoringError, Precoloring,
};
use crate::embedding::emg::{parse_emg, parse_emg_stream, write_emg, write_emg_stream, EmgError};
use crate::embedding::{CycleRef, EmbeddedGraph, EmbeddingError};
use crate::families::{
    attach_pendant_ring, cube, cylinder_grid, generate_patches, generate_quad33, layered,
    near_quad33, prism, EndFrame, FamilyError, FamilySpec, PatchRef,
};
use crate::surgery::{
    audit_chain, chain_decompose, cut_step, identify_across_face, ladder_contract, CutRoute,
    Diagonal, SurgeryError,
};

#[derive(Debug, Parser)]
#[command(name = "cylcolor", version, about = "3-coloring analysis of graphs in the sphere, disk and cylinder")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input EMG file (default: standard input).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// thomas-walls, reduced-thomas-walls, framed-tw, fptw, patches, quad33,
    /// near-quad33, grid, layered, prism or cube.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    /// Vertex bound for streamed families.
    #[arg(long)]
    max_n: Option<usize>,
    /// Internal vertex bound for `patches`, patch size cap for `fptw`.
    #[arg(long)]
    max_internal: Option<usize>,
    /// Patch placement `vertex:internal:index` for `framed-tw` (repeatable).
    #[arg(long)]
    patch: Vec<String>,
    /// End frames for `framed-tw`: `A,B` with each of reuse, y, w, yw.
    #[arg(long, default_value = "yw,yw")]
    frame: String,
    /// Cycle length and layer count for `grid`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated layer lengths for `layered`.
    #[arg(long)]
    lengths: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate family members as an EMG stream.
    Gen(GenArgs),
    /// Extend a precoloring to a 3-coloring, or print UNSAT.
    Color {
        #[command(flatten)]
        io: Io,
        /// `vertex=color` pairs, comma-separated or repeated.
        #[arg(long)]
        precolor: Vec<String>,
    },
    /// Count the 3-colorings extending a precoloring.
    Count {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        precolor: Vec<String>,
    },
    /// List the ring colorings that extend.
    Extendset {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Decide criticality with respect to the rings.
    Critical {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Whether the first graph dominates the second (same rings).
    Dominates {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Family recognition.
    Classify {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 16)]
        catalog_bound: usize,
    },
    /// Face-length deficiency.
    Faces {
        #[command(flatten)]
        io: Io,
    },
    /// Maximum chain decomposition with its audit.
    Chain {
        #[command(flatten)]
        io: Io,
    },
    /// Identify opposite vertices of a 4-face.
    Identify {
        #[command(flatten)]
        io: Io,
        /// Four comma-separated vertices of the face, in cyclic order.
        #[arg(long)]
        face: String,
        /// 13 or 24.
        #[arg(long)]
        diagonal: String,
    },
    /// Contract the ladder between two layer cycles.
    ContractLadder {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        q3: String,
    },
    /// One cutting step.
    Cut {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        d0: usize,
        #[arg(long, default_value_t = 64)]
        guard: usize,
    },
    /// Attach a pendant 4-cycle ring at a vertex.
    AttachRing {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        vertex: usize,
        /// Neighbour fixing the face the ring is drawn in (default: first in
        /// the rotation).
        #[arg(long)]
        next: Option<usize>,
    },
    /// Run every check over a family or an EMG stream.
    Census {
        /// quad33, near-quad33 or fptw; without it the EMG stream from
        /// `--in` or standard input is used.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 16)]
        catalog_bound: usize,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Guard(String),
    Violation(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Guard(m) | CliError::Violation(m) => m,
        }
    }
}

impl From<EmgError> for CliError {
    fn from(e: EmgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::TooLarge { .. } => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::Analysis(a) => a.into(),
            SurgeryError::AuditFailed(_) => CliError::Violation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Output text and whether a property violation was found.
struct Output {
    text: String,
    violation: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, violation: false }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> CliResult<String> {
    let mut s = String::new();
    match path {
        Some(p) => s = std::fs::read_to_string(p)?,
        None => {
            stdin.read_to_string(&mut s)?;
        }
    }
    Ok(s)
}

fn read_graph(io: &Io, stdin: &mut dyn Read) -> CliResult<EmbeddedGraph> {
    Ok(parse_emg(&read_input(&io.input, stdin)?)?)
}

fn check_guard(g: &EmbeddedGraph, guard: usize) -> CliResult<()> {
    if g.vertex_count() > guard {
        return Err(AnalysisError::TooLarge {
            vertices: g.vertex_count(),
            guard,
        }
        .into());
    }
    Ok(())
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("not a vertex id: {t:?}")))
        })
        .collect()
}

fn parse_precoloring(items: &[String]) -> CliResult<Precoloring> {
    let mut pairs = Vec::new();
    for item in items.iter().flat_map(|s| s.split(',')) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (v, c) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected vertex=color, got {item:?}")))?;
        let v = v
            .parse::<usize>()
            .map_err(|_| CliError::Input(format!("bad vertex in {item:?}")))?;
        let c = c
            .parse::<u8>()
            .map_err(|_| CliError::Input(format!("bad color in {item:?}")))?;
        pairs.push((v, Color::new(c)?));
    }
    Ok(Precoloring::from_pairs(pairs))
}

fn parse_frame(s: &str) -> CliResult<EndFrame> {
    match s {
        "reuse" => Ok(EndFrame::REUSE),
        "y" => Ok(EndFrame { new_y: true, new_w: false }),
        "w" => Ok(EndFrame { new_y: false, new_w: true }),
        "yw" => Ok(EndFrame::ALL_NEW),
        _ => Err(CliError::Input(format!("unknown frame {s:?}"))),
    }
}

fn frame_name(f: EndFrame) -> &'static str {
    match (f.new_y, f.new_w) {
        (false, false) => "reuse",
        (true, false) => "y",
        (false, true) => "w",
        (true, true) => "yw",
    }
}

fn need(v: Option<usize>, name: &str) -> CliResult<usize> {
    v.ok_or_else(|| CliError::Input(format!("--{name} is required for this family")))
}

/// Near 3,3-quadrangulations from all subdivision choices, deduplicated.
fn near_quads(max_n: usize) -> Vec<EmbeddedGraph> {
    let mut out = BTreeMap::new();
    for g in generate_quad33(max_n) {
        let r = g.rings().to_vec();
        let choices = |i: usize| {
            let mut c = vec![None];
            c.extend((0..3).map(|k| Some((r[i][k], r[i][(k + 1) % 3]))));
            c
        };
        for a in choices(0) {
            for b in choices(1) {
                let h = near_quad33(&g, [a, b]).expect("ring edges of a 3,3-quadrangulation");
                if h.vertex_count() <= max_n {
                    out.entry(canonical_form(&h).code).or_insert(h);
                }
            }
        }
    }
    out.into_values().collect()
}

fn family_graphs(a: &GenArgs) -> CliResult<Vec<EmbeddedGraph>> {
    let built = |spec: FamilySpec| -> CliResult<Vec<EmbeddedGraph>> { Ok(vec![spec.build()?.graph]) };
    match a.family.as_str() {
        "thomas-walls" => built(FamilySpec::ThomasWalls { n: need(a.n, "n")? }),
        "reduced-thomas-walls" => built(FamilySpec::ReducedThomasWalls { n: need(a.n, "n")? }),
        "framed-tw" => {
            let mut placements = Vec::new();
            for p in &a.patch {
                let parts = p
                    .split(':')
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Input(format!("bad placement {p:?}")))?;
                let [vertex, internal, index] = parts[..] else {
                    return Err(CliError::Input(format!("placement {p:?} is not vertex:internal:index")));
                };
                placements.push((vertex, PatchRef { internal, index }));
            }
            let (e0, e1) = a
                .frame
                .split_once(',')
                .ok_or_else(|| CliError::Input("--frame takes two comma-separated ends".into()))?;
            built(FamilySpec::FramedPatchedThomasWalls {
                n: need(a.n, "n")?,
                placements,
                ends: [parse_frame(e0)?, parse_frame(e1)?],
            })
        }
        "fptw" => {
            let cap = a.max_internal.unwrap_or(DEFAULT_PATCH_CAP);
            let catalog = FptwCatalog::generate(need(a.max_n, "max-n")?, cap);
            catalog
                .recipes()
                .iter()
                .map(|r| Ok(r.build()?))
                .collect()
        }
        "patches" => Ok(generate_patches(need(a.max_internal, "max-internal")?)),
        "quad33" => Ok(generate_quad33(need(a.max_n, "max-n")?)),
        "near-quad33" => Ok(near_quads(need(a.max_n, "max-n")?)),
        "grid" => {
            let (k, m) = (need(a.k, "k")?, need(a.m, "m")?);
            if k < 3 || m < 2 {
                return Err(CliError::Input("grid needs k >= 3 and m >= 2".into()));
            }
            Ok(vec![cylinder_grid(k, m)])
        }
        "layered" => {
            let lengths = a
                .lengths
                .as_deref()
                .ok_or_else(|| CliError::Input("--lengths is required".into()))?;
            Ok(vec![layered(&parse_list(lengths)?)?])
        }
        "prism" => Ok(vec![prism()]),
        "cube" => Ok(vec![cube()]),
        other => Err(CliError::Input(format!("unknown family {other:?}"))),
    }
}

fn describe_witness(w: &Decomposition) -> String {
    let mut s = String::new();
    match w {
        Decomposition::NearQuad33(p) => {
            let _ = writeln!(s, "base={}", canonical_hash(&p.base));
            for (i, e) in p.subdivided.iter().enumerate() {
                match e {
                    Some((a, b)) => {
                        let _ = writeln!(s, "subdivided ring{i}={a}-{b}");
                    }
                    None => {
                        let _ = writeln!(s, "subdivided ring{i}=none");
                    }
                }
            }
        }
        Decomposition::FramedPatchedTW(r) => {
            let _ = writeln!(s, "n={}", r.n);
            for p in &r.placements {
                let _ = writeln!(
                    s,
                    "patch vertex={} internal={} hash={} offset={} mirrored={}",
                    p.vertex,
                    p.patch.vertex_count() - 6,
                    canonical_hash(&p.patch),
                    p.offset,
                    p.mirrored as u8
                );
            }
            let _ = writeln!(s, "frame={},{}", frame_name(r.ends[0]), frame_name(r.ends[1]));
        }
        Decomposition::None => {}
    }
    s
}

fn cycle_arg(s: &str) -> CliResult<CycleRef> {
    Ok(CycleRef {
        vertices: parse_list(s)?,
        contractible: false,
    })
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> CliResult<Output> {
    match cmd {
        Command::Gen(a) => Ok(Output::ok(write_emg_stream(&family_graphs(a)?))),
        Command::Color { io, precolor } => {
            let g = read_graph(io, stdin)?;
            let psi = parse_precoloring(precolor)?;
            Ok(Output::ok(match extend(&g, &psi)? {
                None => "UNSAT\n".into(),
                Some(col) => col
                    .iter()
                    .enumerate()
                    .map(|(v, c)| format!("color {v} {c}\n"))
                    .collect(),
            }))
        }
        Command::Count { io, precolor } => {
            let g = read_graph(io, stdin)?;
            let psi = parse_precoloring(precolor)?;
            Ok(Output::ok(format!("count={}\n", count_colorings(&g, &psi)?)))
        }
        Command::Extendset { io, guard } => {
            let g = read_graph(io, stdin)?;
            check_guard(&g, *guard)?;
            let ext = extendable_set(&g)?;
            let mut s = String::from("domain");
            for v in &ext.ring_domain {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
            for m in &ext.members {
                s.push_str("ext");
                for c in m {
                    let _ = write!(s, " {c}");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "size={} proper={}", ext.len(), proper_ring_colorings(&g).len());
            Ok(Output::ok(s))
        }
        Command::Critical { io, guard } => {
            let g = read_graph(io, stdin)?;
            let r = is_critical(&g, *guard)?;
            Ok(Output::ok(match r.witness {
                None => "critical=1\n".into(),
                Some(Witness::RingsOnly) => "critical=0 witness=rings\n".into(),
                Some(Witness::Vertex(v)) => format!("critical=0 witness=vertex:{v}\n"),
                Some(Witness::Edge(a, b)) => format!("critical=0 witness=edge:{a}-{b}\n"),
            }))
        }
        Command::Dominates { first, second, guard, .. } => {
            let g1 = parse_emg(&std::fs::read_to_string(first)?)?;
            let g2 = parse_emg(&std::fs::read_to_string(second)?)?;
            check_guard(&g1, *guard)?;
            check_guard(&g2, *guard)?;
            Ok(Output::ok(format!("dominates={}\n", dominates(&g1, &g2)? as u8)))
        }
        Command::Classify { io, catalog_bound } => {
            let g = read_graph(io, stdin)?;
            let catalog = FptwCatalog::generate(*catalog_bound, DEFAULT_PATCH_CAP);
            Ok(Output::ok(match recognize_with(&g, &catalog) {
                Ok(w) => {
                    let tag = match w.verdict {
                        Verdict::NearQuad33 => "NQ",
                        Verdict::FramedPatchedTW => "FPTW",
                        Verdict::Neither => "NEITHER",
                    };
                    format!("verdict={tag}\n{}", describe_witness(&w.decomposition))
                }
                Err(AnalysisError::CatalogTooSmall { vertices, bound }) => {
                    format!("verdict=UNKNOWN vertices={vertices} complete_up_to={bound}\n")
                }
                Err(e) => return Err(e.into()),
            }))
        }
        Command::Faces { io } => {
            let g = read_graph(io, stdin)?;
            let f = face_deficiency(&g);
            Ok(Output::ok(format!(
                "def_int={} def_all={}\n",
                f.deficiency_internal, f.deficiency_all
            )))
        }
        Command::Chain { io } => {
            let g = read_graph(io, stdin)?;
            let c = chain_decompose(&g)?;
            let mut s = format!("chain={}\n", c.len());
            for (i, cyc) in c.cutting_cycles.iter().enumerate() {
                let _ = write!(s, "cycle {i}:");
                for v in &cyc.vertices {
                    let _ = write!(s, " {v}");
                }
                s.push('\n');
            }
            let violations = audit_chain(&g, &c);
            for v in &violations {
                let _ = writeln!(s, "violation {v:?}");
            }
            Ok(Output {
                text: s,
                violation: !violations.is_empty(),
            })
        }
        Command::Identify { io, face, diagonal } => {
            let g = read_graph(io, stdin)?;
            let d = match diagonal.as_str() {
                "13" => Diagonal::First,
                "24" => Diagonal::Second,
                other => return Err(CliError::Input(format!("diagonal must be 13 or 24, got {other:?}"))),
            };
            let r = identify_across_face(&g, &parse_list(face)?, d)?;
            Ok(Output::ok(format!("# z={}\n{}", r.z, write_emg(&r.graph))))
        }
        Command::ContractLadder { io, q2, q3 } => {
            let g = read_graph(io, stdin)?;
            let r = ladder_contract(&g, &cycle_arg(q2)?, &cycle_arg(q3)?)?;
            Ok(Output::ok(format!("# r={}\n{}", r.z, write_emg(&r.graph))))
        }
        Command::Cut { io, d0, guard } => {
            let g = read_graph(io, stdin)?;
            let r = cut_step(&g, *d0, *guard)?;
            let route = match r.route {
                CutRoute::Identification => "identification",
                CutRoute::Ladder => "ladder",
            };
            Ok(Output::ok(format!(
                "# z={} route={route} rounds={}\n{}",
                r.z,
                r.rounds,
                write_emg(&r.graph)
            )))
        }
        Command::AttachRing { io, vertex, next } => {
            let g = read_graph(io, stdin)?;
            if *vertex >= g.vertex_count() {
                return Err(CliError::Input(format!("vertex {vertex} out of range")));
            }
            let next = next.or_else(|| g.rotation(*vertex).first().copied()).unwrap_or(*vertex);
            Ok(Output::ok(write_emg(&attach_pendant_ring(&g, *vertex, next)?)))
        }
        Command::Census { family, max_n, guard, jobs, catalog_bound, io } => {
            let graphs = match family {
                Some(f) => family_graphs(&GenArgs {
                    family: f.clone(),
                    n: None,
                    max_n: Some(*max_n),
                    max_internal: None,
                    patch: Vec::new(),
                    frame: "yw,yw".into(),
                    k: None,
                    m: None,
                    lengths: None,
                    out: None,
                })?,
                None => parse_emg_stream(&read_input(&io.input, stdin)?)?,
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads((*jobs).max(1))
                .build()
                .map_err(|e| CliError::Input(e.to_string()))?;
            let report = pool.install(|| {
                let catalog = FptwCatalog::generate(*catalog_bound, DEFAULT_PATCH_CAP);
                census(&graphs, *guard, &catalog)
            })?;
            Ok(Output {
                text: report.render(),
                violation: !report.is_clean(),
            })
        }
    }
}

fn out_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Gen(a) => a.out.as_ref(),
        Command::Dominates { out, .. } => out.as_ref(),
        Command::Color { io, .. }
        | Command::Count { io, .. }
        | Command::Extendset { io, .. }
        | Command::Critical { io, .. }
        | Command::Classify { io, .. }
        | Command::Faces { io }
        | Command::Chain { io }
        | Command::Identify { io, .. }
        | Command::ContractLadder { io, .. }
        | Command::Cut { io, .. }
        | Command::AttachRing { io, .. }
        | Command::Census { io, .. } => io.out.as_ref(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Results go to `stdout` (or `--out`), diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, stdin) {
        Ok(out) => {
            let written = match out_path(&cli.command) {
                Some(p) => std::fs::write(p, &out.text),
                None => stdout.write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if out.violation {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}
