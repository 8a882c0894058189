//! The `ctxlab` command line. Reports go to stdout as JSON; `--verbose` adds a
//! human summary on stderr.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::contextuality::{self, classify, homotopical_check, is_strongly_contextual, Classification, ScDecision, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::generate;
use crate::homotopy::{self, face_member, face_structure, is_null_homotopic, is_prime, nerve_image, NerveLabeling};
use crate::io::{dist_from_json, dist_to_value, scenario_to_json, to_pretty, AnyDist, DistDocument, JsonScalar, ScenarioFile};
use crate::logiccat::{build_category, category_support, reduce_and_decide, sc_criterion, semigroup_table_check};
use crate::scenario::{Circle, Scenario, VertexId};
use crate::semiring::{Boolean, Dist, Rational, Semiring};
use crate::simpdist::{OutcomeLabeling, SimpDist};

#[derive(Debug, Parser)]
#[command(name = "ctxlab", version, about = "Exact analysis of simplicial distributions on graph-shaped scenarios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Number of outcomes per measurement
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Largest number of deterministic labelings the LP may use
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Process every distribution file in a directory (analyze, category)
    #[arg(long, global = true, value_name = "DIR")]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a distribution
    Analyze(AnalyzeArgs),
    /// Write a distribution file
    Generate(GenerateArgs),
    /// Face of a nerve labeling on a scenario
    Face(FaceArgs),
    /// Collapse diagonal edges and compare classifications
    Collapse(CollapseArgs),
    /// Logical category of the support
    Category(CategoryArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub category: bool,
    #[arg(long)]
    pub face: bool,
    #[arg(long)]
    pub homotopy: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    PrBox,
    Deterministic,
    SectionT,
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GenerateKind,
    /// Length of the cycle scenario
    #[arg(long)]
    pub cycle: Option<usize>,
    /// Edges carrying p₋ in a PR box
    #[arg(long, value_delimiter = ',', default_values_t = [0usize])]
    pub minus: Vec<usize>,
    /// Vertex labels for a deterministic distribution
    #[arg(long, value_delimiter = ',')]
    pub labels: Option<Vec<u32>>,
    /// Edge labels for section-t
    #[arg(long, value_delimiter = ',')]
    pub edge_labels: Option<Vec<u32>>,
    /// Scenario file to generate on instead of a cycle
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub max_den: u32,
    /// Write the distribution here and report on stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FaceArgs {
    /// Scenario file
    pub file: PathBuf,
    #[arg(long, value_delimiter = ',', conflicts_with = "labels_file")]
    pub labels: Option<Vec<u32>>,
    /// JSON array of edge labels
    #[arg(long)]
    pub labels_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    pub file: PathBuf,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub edge: Option<String>,
    /// Collapse diagonal edges until none is left
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CategoryArgs {
    pub file: Option<PathBuf>,
    /// Include the Boolean semigroup identities
    #[arg(long)]
    pub table: bool,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx<'a> {
    cli: &'a Cli,
    stderr: String,
}

impl Ctx<'_> {
    fn note(&mut self, line: impl AsRef<str>) {
        if self.cli.verbose {
            self.stderr.push_str(line.as_ref());
            self.stderr.push('\n');
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut ctx = Ctx { cli, stderr: String::new() };
    let result = match &cli.command {
        Command::Analyze(a) => analyze(&mut ctx, a),
        Command::Generate(g) => cmd_generate(&mut ctx, g),
        Command::Face(f) => cmd_face(&mut ctx, f),
        Command::Collapse(c) => cmd_collapse(&mut ctx, c),
        Command::Category(c) => category(&mut ctx, c),
    };
    match result {
        Ok((value, code)) => Outcome {
            code,
            stdout: render(&value),
            stderr: ctx.stderr,
        },
        Err(e) => {
            let mut stderr = ctx.stderr;
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                code: e.exit_code(),
                stdout: render(&error_value(&e)),
                stderr,
            }
        }
    }
}

/// Runs with the process arguments and returns the exit status.
pub fn main() -> i32 {
    let out = run_args(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => to_pretty(v),
    }
}

fn error_value(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), e.kind().into());
    m.insert("message".into(), e.to_string().into());
    m.insert("exit_code".into(), e.exit_code().into());
    if let Error::Parse { line, column, .. } = e {
        m.insert("line".into(), (*line).into());
        m.insert("column".into(), (*column).into());
    }
    json!({ "error": m })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn micros(t: Instant) -> u64 {
    t.elapsed().as_micros() as u64
}

struct Loaded {
    doc: DistDocument,
    digest: String,
}

fn load(path: &Path, d: Option<usize>) -> Result<Loaded> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    let doc = dist_from_json(&text, path.parent())?;
    if let Some(d) = d {
        if d != doc.dist.d() {
            return Err(Error::WrongOutcomeArity { expected: d, got: doc.dist.d() });
        }
    }
    Ok(Loaded { doc, digest: sha256_hex(&bytes) })
}

fn input_value(path: &Path, digest: &str) -> Value {
    json!({ "file": path.display().to_string(), "sha256": digest })
}

fn labels_value(l: &OutcomeLabeling) -> Value {
    json!(l.labels())
}

fn circle_value(s: &Scenario, c: &Circle) -> Value {
    c.display(s).to_string().into()
}

fn scenario_summary(s: &Scenario) -> Value {
    json!({
        "vertices": s.num_vertices(),
        "edges": s.num_edges(),
        "components": s.connected_components().len(),
        "betti_number": s.betti_number(),
    })
}

fn sc_value<S: Semiring>(p: &SimpDist<S>, sc: &ScDecision) -> Result<Value> {
    let s = p.scenario();
    let pr = sc.pr_circle.as_ref().map(|pr| {
        json!({
            "strongly_contextual": pr.strongly_contextual,
            "circle": pr.witness.as_ref().map(|c| circle_value(s, c)),
        })
    });
    let criterion = sc.criterion.map(|(v, w)| {
        json!({
            "strongly_contextual": v,
            "vertex": w.map(|i| s.vertex_name(VertexId(i)).to_string()),
        })
    });
    let homotopical = match sc.pr_circle.as_ref().and_then(|pr| pr.witness.as_ref()) {
        Some(c) => homotopical_check(p, c)?.map(|(labels, inv)| {
            json!({ "circle": circle_value(s, c), "labels": labels, "invariant": inv })
        }),
        None => None,
    };
    Ok(json!({
        "support_witness": sc.support_witness.as_ref().map(labels_value),
        "pr_circle": pr,
        "criterion": criterion,
        "homotopical": homotopical,
    }))
}

fn classification_value(p: &SimpDist<Rational>, c: &Classification) -> Result<Value> {
    let nc = c.nc_witness.as_ref().map(|w| {
        w.weights
            .iter()
            .map(|(l, x)| json!({ "labeling": labels_value(l), "weight": x.to_string() }))
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "flags": {
            "deterministic": c.deterministic.is_some(),
            "vertex": c.vertex,
            "contextual": c.contextual,
            "strongly_contextual": c.strongly_contextual,
        },
        "coherent": c.is_coherent(),
        "deterministic_labels": c.deterministic.as_ref().map(labels_value),
        "nc_witness": nc,
        "sc": sc_value(p, &c.sc)?,
    }))
}

fn boolean_classification_value(p: &SimpDist<Boolean>) -> Result<Value> {
    let sc = is_strongly_contextual(p)?;
    let det = p.as_deterministic();
    Ok(json!({
        "flags": {
            "deterministic": det.is_some(),
            "vertex": null,
            "contextual": if sc.strongly_contextual { Value::Bool(true) } else { Value::Null },
            "strongly_contextual": sc.strongly_contextual,
        },
        "coherent": true,
        "deterministic_labels": det.as_ref().map(labels_value),
        "nc_witness": null,
        "sc": sc_value(p, &sc)?,
    }))
}

fn category_value(p: &SimpDist<Boolean>, table: bool) -> Result<Value> {
    let s = p.scenario();
    let c = build_category(p)?;
    let mut hom = Vec::new();
    for x in s.vertex_ids() {
        for y in s.vertex_ids() {
            let set = c.hom(x, y);
            if set.is_empty() {
                continue;
            }
            hom.push(json!({
                "source": s.vertex_name(x),
                "target": s.vertex_name(y),
                "matrices": set.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            }));
        }
    }
    let support: Vec<Value> = category_support(&c).iter().map(labels_value).collect();
    let mut out = json!({
        "vertices": s.vertex_names(),
        "hom": hom,
        "axioms_hold": c.check_axioms(),
        "support": support,
    });
    if p.d() == 2 {
        out["criterion"] = serde_json::to_value(sc_criterion(&c)?).expect("serializable");
        out["reduction"] = serde_json::to_value(reduce_and_decide(p)?).expect("serializable");
    }
    if table {
        out["semigroup_table"] = serde_json::to_value(semigroup_table_check()).expect("serializable");
    }
    Ok(out)
}

fn face_value(scenario: &Arc<Scenario>, phi: &NerveLabeling, cap: u64) -> Result<Value> {
    let fs = face_structure(scenario, phi)?;
    let nh = is_null_homotopic(scenario, phi)?;
    let d = phi.d();
    let unique = if fs.is_singleton() {
        let uniform = Dist::<Rational, u32>::uniform(0..d)?;
        let p = face_member(Arc::clone(scenario), &fs, VertexId(0), &uniform)?;
        let c = classify(&p, cap)?;
        Some(json!({
            "strongly_contextual": c.strongly_contextual,
            "polytope_vertex": c.vertex,
            "pr_box": is_pr_box(&p),
            "distribution": dist_to_value(&p, None),
        }))
    } else {
        None
    };
    Ok(json!({
        "labels": phi.labels(),
        "null_homotopic": nh.is_null(),
        "obstruction": nh.obstruction.as_ref().map(|c| circle_value(scenario, c)),
        "generator": fs.generator,
        "subgroup": fs.subgroup,
        "orbits": fs.orbits,
        "dimension": fs.dimension,
        "singleton": fs.is_singleton(),
        "sc_vertex_guaranteed": is_prime(d) && !nh.is_null(),
        "unique_member": unique,
    }))
}

fn is_pr_box(p: &SimpDist<Rational>) -> bool {
    use crate::simpdist::EdgeMatrix;
    p.d() == 2
        && p.edge_matrices()
            .iter()
            .all(|m| *m == EdgeMatrix::p_plus() || *m == EdgeMatrix::p_minus())
}

fn homotopy_value<S: Semiring>(p: &SimpDist<S>) -> Result<Value> {
    let s = p.scenario();
    let phi = nerve_image(p);
    let basis: Vec<Value> = s
        .cycle_basis()
        .iter()
        .map(|c| {
            json!({
                "circle": circle_value(s, c),
                "invariant": phi.as_ref().map(|phi| homotopy::circle_invariant(c, phi)),
            })
        })
        .collect();
    let null_homotopic = match &phi {
        Some(phi) => Some(is_null_homotopic(s, phi)?.is_null()),
        None => None,
    };
    let count = if s.num_vertices() > 0 && s.is_connected() {
        Some(homotopy::count_non_null_homotopic(s, p.d() as u32)?.to_string())
    } else {
        None
    };
    Ok(json!({
        "nerve_labels": phi.as_ref().map(|phi| phi.labels().to_vec()),
        "null_homotopic": null_homotopic,
        "basis": basis,
        "non_null_homotopic_labelings": count,
    }))
}

/// Files in `dir` that look like distribution files, sorted by name, and
/// the names of the ones skipped.
fn batch_files(dir: &Path) -> Result<(Vec<PathBuf>, Vec<String>)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut keep = Vec::new();
    let mut skipped = Vec::new();
    for f in files {
        let is_scenario = std::fs::read_to_string(&f)
            .ok()
            .and_then(|t| serde_json::from_str::<Value>(&t).ok())
            .is_some_and(|v| v.get("kind").is_none());
        if is_scenario {
            skipped.push(f.display().to_string());
        } else {
            keep.push(f);
        }
    }
    Ok((keep, skipped))
}

fn batch<F>(ctx: &mut Ctx, dir: &Path, f: F) -> Result<(Value, i32)>
where
    F: Fn(&Path) -> Result<(Value, String)> + Sync,
{
    let (files, skipped) = batch_files(dir)?;
    let results: Vec<Result<(Value, String)>> = files.par_iter().map(|p| f(p)).collect();
    let mut code = 0;
    let mut reports = Vec::with_capacity(files.len());
    for (path, r) in files.iter().zip(results) {
        match r {
            Ok((v, summary)) => {
                ctx.note(summary);
                reports.push(v);
            }
            Err(e) => {
                ctx.note(format!("{}: error: {e}", path.display()));
                code = code.max(e.exit_code());
                let mut v = error_value(&e);
                v["input"] = json!({ "file": path.display().to_string() });
                reports.push(v);
            }
        }
    }
    Ok((
        json!({
            "batch": dir.display().to_string(),
            "seed": ctx.cli.seed,
            "reports": reports,
            "skipped": skipped,
        }),
        code,
    ))
}

fn single_file<'a>(ctx: &Ctx, file: &'a Option<PathBuf>) -> Result<&'a Path> {
    match (file, &ctx.cli.batch) {
        (Some(_), Some(_)) => Err(Error::InvalidParams("give either a file or --batch".into())),
        (Some(f), None) => Ok(f),
        (None, _) => Err(Error::InvalidParams("missing input file".into())),
    }
}

fn analyze(ctx: &mut Ctx, a: &AnalyzeArgs) -> Result<(Value, i32)> {
    let cli = ctx.cli;
    let one = |path: &Path| analyze_one(cli, a, path);
    if let (None, Some(dir)) = (&a.file, &cli.batch) {
        return batch(ctx, dir, one);
    }
    let (v, summary) = one(single_file(ctx, &a.file)?)?;
    ctx.note(summary);
    Ok((v, 0))
}

fn analyze_one(cli: &Cli, a: &AnalyzeArgs, path: &Path) -> Result<(Value, String)> {
    let start = Instant::now();
    let Loaded { doc, digest } = load(path, cli.d)?;
    let p = &doc.dist;
    let s = p.scenario();
    let mut timing = Map::new();
    let t = Instant::now();
    let classification = match p {
        AnyDist::Rational(p) => classification_value(p, &classify(p, cli.cap)?)?,
        AnyDist::Boolean(p) => boolean_classification_value(p)?,
    };
    timing.insert("classify".into(), micros(t).into());
    let mut report = json!({
        "input": input_value(path, &digest),
        "seed": cli.seed,
        "kind": p.kind().to_string(),
        "d": p.d(),
        "scenario": scenario_summary(s),
        "classification": classification,
    });
    if a.category {
        let t = Instant::now();
        report["category"] = category_value(&p.boolean(), false)?;
        timing.insert("category".into(), micros(t).into());
    }
    if a.face {
        let t = Instant::now();
        let phi = match p {
            AnyDist::Rational(p) => nerve_image(p),
            AnyDist::Boolean(p) => nerve_image(p),
        };
        report["face"] = match phi {
            Some(phi) if s.num_vertices() > 0 && s.is_connected() => face_value(s, &phi, cli.cap)?,
            Some(_) => json!({ "error": Error::NotConnected.to_string() }),
            None => Value::Null,
        };
        timing.insert("face".into(), micros(t).into());
    }
    if a.homotopy {
        let t = Instant::now();
        report["homotopy"] = match p {
            AnyDist::Rational(p) => homotopy_value(p)?,
            AnyDist::Boolean(p) => homotopy_value(p)?,
        };
        timing.insert("homotopy".into(), micros(t).into());
    }
    timing.insert("total".into(), micros(start).into());
    report["timing_us"] = Value::Object(timing);
    let flags = &report["classification"]["flags"];
    let summary = format!(
        "{}: deterministic={} vertex={} contextual={} strongly_contextual={}",
        path.display(),
        flags["deterministic"],
        flags["vertex"],
        flags["contextual"],
        flags["strongly_contextual"],
    );
    Ok((report, summary))
}

fn category(ctx: &mut Ctx, a: &CategoryArgs) -> Result<(Value, i32)> {
    let cli = ctx.cli;
    let one = |path: &Path| -> Result<(Value, String)> {
        let start = Instant::now();
        let Loaded { doc, digest } = load(path, cli.d)?;
        let mut v = json!({ "input": input_value(path, &digest), "seed": cli.seed });
        v["category"] = category_value(&doc.dist.boolean(), a.table)?;
        v["timing_us"] = json!({ "total": micros(start) });
        let n = v["category"]["hom"].as_array().map_or(0, Vec::len);
        Ok((v, format!("{}: {n} nonempty hom-sets", path.display())))
    };
    if let (None, Some(dir)) = (&a.file, &cli.batch) {
        return batch(ctx, dir, one);
    }
    let (v, summary) = one(single_file(ctx, &a.file)?)?;
    ctx.note(summary);
    Ok((v, 0))
}

fn no_batch(ctx: &Ctx) -> Result<()> {
    if ctx.cli.batch.is_some() {
        return Err(Error::InvalidParams("--batch applies to analyze and category".into()));
    }
    Ok(())
}

fn read_scenario(path: &Path) -> Result<(Scenario, usize)> {
    let text = std::fs::read_to_string(path)?;
    let f: ScenarioFile = serde_json::from_str(&text)?;
    Ok((f.to_scenario()?, f.d as usize))
}

fn cmd_generate(ctx: &mut Ctx, g: &GenerateArgs) -> Result<(Value, i32)> {
    no_batch(ctx)?;
    let cli = ctx.cli;
    let d = cli.d.unwrap_or(2);
    let scenario = |len: Option<usize>| -> Result<Arc<Scenario>> {
        match (&g.scenario, g.cycle.or(len)) {
            (Some(path), _) => Ok(Arc::new(read_scenario(path)?.0)),
            (None, Some(n)) if n > 0 => Ok(Arc::new(Scenario::cycle(n))),
            _ => Err(Error::InvalidParams("give --cycle N or --scenario FILE".into())),
        }
    };
    let missing = |flag: &str| Error::InvalidParams(format!("{flag} is required"));
    let p = match g.kind {
        GenerateKind::PrBox => {
            if d != 2 {
                return Err(Error::InvalidParams("PR boxes have d = 2".into()));
            }
            let n = g.cycle.ok_or_else(|| missing("--cycle"))?;
            generate::pr_box(n, &g.minus)?
        }
        GenerateKind::Deterministic => {
            let labels = g.labels.as_ref().ok_or_else(|| missing("--labels"))?;
            generate::deterministic(scenario(Some(labels.len()))?, d, labels)?
        }
        GenerateKind::SectionT => {
            let labels = g.edge_labels.as_ref().ok_or_else(|| missing("--edge-labels"))?;
            generate::section_t(scenario(Some(labels.len()))?, d, labels)?
        }
        GenerateKind::Random => generate::random(scenario(Some(4))?, d, g.max_den, cli.seed)?,
    };
    let text = crate::io::dist_to_json(&p, None);
    ctx.note(format!(
        "generated {:?} on {} vertices and {} edges, d = {}, seed {}",
        g.kind,
        p.scenario().num_vertices(),
        p.scenario().num_edges(),
        p.d(),
        cli.seed
    ));
    match &g.out {
        None => Ok((Value::String(text), 0)),
        Some(out) => {
            std::fs::write(out, &text)?;
            Ok((
                json!({
                    "written": out.display().to_string(),
                    "sha256": sha256_hex(text.as_bytes()),
                    "seed": cli.seed,
                }),
                0,
            ))
        }
    }
}

fn cmd_face(ctx: &mut Ctx, f: &FaceArgs) -> Result<(Value, i32)> {
    no_batch(ctx)?;
    let start = Instant::now();
    let bytes = std::fs::read(&f.file)?;
    let (s, file_d) = read_scenario(&f.file)?;
    let d = ctx.cli.d.unwrap_or(file_d);
    let labels = match (&f.labels, &f.labels_file) {
        (Some(l), _) => l.clone(),
        (None, Some(path)) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::InvalidParams("give --labels or --labels-file".into())),
    };
    if labels.len() != s.num_edges() {
        return Err(Error::InvalidParams(format!(
            "expected {} edge labels, got {}",
            s.num_edges(),
            labels.len()
        )));
    }
    let phi = NerveLabeling::new(d as u32, labels)?;
    let s = Arc::new(s);
    if s.num_vertices() == 0 || !s.is_connected() {
        return Err(Error::NotConnected);
    }
    let face = face_value(&s, &phi, ctx.cli.cap)?;
    ctx.note(format!(
        "face of {phi} at d = {d}: dimension {}, null-homotopic {}",
        face["dimension"], face["null_homotopic"]
    ));
    Ok((
        json!({
            "input": input_value(&f.file, &sha256_hex(&bytes)),
            "seed": ctx.cli.seed,
            "d": d,
            "face": face,
            "timing_us": { "total": micros(start) },
        }),
        0,
    ))
}

/// Classification flags in the order deterministic, vertex, contextual,
/// strongly contextual; `None` where the Boolean semiring cannot decide.
fn flags(p: &AnyDist, cap: u64) -> Result<[Option<bool>; 4]> {
    Ok(match p {
        AnyDist::Rational(p) => classify(p, cap)?.flags().map(Some),
        AnyDist::Boolean(p) => {
            let sc = contextuality::support(p).is_empty();
            [Some(p.is_deterministic()), None, None, Some(sc)]
        }
    })
}

fn collapsible_edge<S: Semiring>(p: &SimpDist<S>) -> Option<crate::scenario::EdgeId> {
    p.scenario()
        .edge_ids()
        .find(|&e| !p.scenario().edge(e).is_loop() && p.edge_matrix(e).is_diagonal())
}

fn collapse_step<S: JsonScalar>(p: &SimpDist<S>, edge: &str) -> Result<(SimpDist<S>, Value, bool)> {
    let s = p.scenario();
    let e = s.edge_by_name(edge)?;
    let cm = s.collapse_edge(e)?;
    let q = p.transport_collapse(&cm)?;
    let back = q.pullback(&cm)? == *p;
    let step = json!({
        "edge": edge,
        "merged_into": cm.result.vertex_name(cm.merged),
        "pullback_round_trip": back,
    });
    Ok((q, step, back))
}

fn cmd_collapse(ctx: &mut Ctx, c: &CollapseArgs) -> Result<(Value, i32)> {
    no_batch(ctx)?;
    let start = Instant::now();
    let Loaded { doc, digest } = load(&c.file, ctx.cli.d)?;
    let before = flags(&doc.dist, ctx.cli.cap)?;
    let mut p = doc.dist.clone();
    let mut steps = Vec::new();
    let mut round_trips = true;
    loop {
        let edge = match (&c.edge, steps.is_empty()) {
            (Some(e), true) => e.clone(),
            (Some(_), false) => break,
            (None, _) => {
                let e = match &p {
                    AnyDist::Rational(p) => collapsible_edge(p),
                    AnyDist::Boolean(p) => collapsible_edge(p),
                };
                match e {
                    Some(e) => p.scenario().edge(e).id.clone(),
                    None => break,
                }
            }
        };
        let (q, step, back) = match &p {
            AnyDist::Rational(p) => {
                let (q, st, b) = collapse_step(p, &edge)?;
                (AnyDist::Rational(q), st, b)
            }
            AnyDist::Boolean(p) => {
                let (q, st, b) = collapse_step(p, &edge)?;
                (AnyDist::Boolean(q), st, b)
            }
        };
        round_trips &= back;
        steps.push(step);
        p = q;
    }
    let after = flags(&p, ctx.cli.cap)?;
    let equal = before == after;
    let s = p.scenario();
    let mut report = json!({
        "input": input_value(&c.file, &digest),
        "seed": ctx.cli.seed,
        "steps": steps,
        "scenario": {
            "vertices": s.vertex_names(),
            "edges": s.edges().iter().map(|e| e.id.clone()).collect::<Vec<_>>(),
        },
        "flags_before": flag_object(&before),
        "flags_after": flag_object(&after),
        "flags_equal": equal,
        "pullback_round_trip": round_trips,
    });
    match &c.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let stem = c.file.file_stem().map_or("input".into(), |x| x.to_string_lossy().into_owned());
            let scenario_name = format!("{stem}.collapsed.scenario.json");
            let dist_path = dir.join(format!("{stem}.collapsed.json"));
            let scenario_path = dir.join(&scenario_name);
            std::fs::write(&scenario_path, scenario_to_json(s, p.d() as u32))?;
            let out = DistDocument { dist: p.clone(), scenario_ref: Some(scenario_name) };
            std::fs::write(&dist_path, out.to_json())?;
            report["written"] = json!([scenario_path.display().to_string(), dist_path.display().to_string()]);
        }
        None => {
            report["distribution"] = match &p {
                AnyDist::Rational(p) => dist_to_value(p, None),
                AnyDist::Boolean(p) => dist_to_value(p, None),
            };
        }
    }
    report["timing_us"] = json!({ "total": micros(start) });
    ctx.note(format!(
        "collapsed {} edges, {} vertices left, flags equal: {equal}",
        report["steps"].as_array().map_or(0, Vec::len),
        s.num_vertices()
    ));
    Ok((report, if equal && round_trips { 0 } else { 3 }))
}

fn flag_object(f: &[Option<bool>; 4]) -> Value {
    json!({
        "deterministic": f[0],
        "vertex": f[1],
        "contextual": f[2],
        "strongly_contextual": f[3],
    })
}
