//! The `connsys` command line.
//!
//! Exit statuses: 0 success (check passed, family found), 2 usage, parse
//! or read errors, 3 capacity overruns and "no family exists", 4 failed
//! checks, 5 exact and brute-force branch-width disagree, 6 write errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use connsys_core::decomposition::{
    brute_force_branchwidth, exact_branchwidth, DecompositionTree, ENUMERATION_CAP, ENUMERATION_MIN,
};
use connsys_core::filter::{
    enumerate, is_weak_ultrafilter, max_order, search, search_tangle, AxiomSet, FeMode, SearchConfig,
    SetFamily,
};
use connsys_core::{AxiomReport, GroundSet};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format::{
    axioms_json, certificate_json, check_decomposition, config_json, decomposition_json, instance_json,
    matrix_json, matrix_text, parse_family, read_instance, read_text, to_pretty, write_json, Instance,
};
use crate::fuzz;
use crate::generate::{generate, EdgeCount, GeneratorConfig, GeneratorKind};

#[derive(Debug, Parser)]
#[command(name = "connsys", version, about = "Connectivity systems, branch-width and weak ultrafilters")]
pub struct Cli {
    /// Output format; JSON is stable, text is for reading.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check symmetry, submodularity and their consequences.
    Verify { instance: PathBuf },
    /// Exact branch-width with an optimal tree.
    Branchwidth(BranchwidthArgs),
    /// Weak ultrafilters of order k+1.
    Wuf {
        #[command(subcommand)]
        action: WufAction,
    },
    /// Tangles of order k+1.
    Tangle {
        #[command(subcommand)]
        action: TangleAction,
    },
    /// Audit branch-width against weak-ultrafilter existence.
    Duality {
        #[command(subcommand)]
        action: DualityAction,
    },
    /// Generate seeded random instances.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct BranchwidthArgs {
    instance: PathBuf,
    /// Write the optimal tree to this file.
    #[arg(long, value_name = "PATH")]
    decompose: Option<PathBuf>,
    /// Also compute branch-width by enumerating every tree.
    #[arg(long)]
    oracle: bool,
    /// Recompute the widths recorded in a decomposition file.
    #[arg(long, value_name = "PATH")]
    check: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FeModeArg {
    Conditional,
    Unconditional,
}

impl From<FeModeArg> for FeMode {
    fn from(m: FeModeArg) -> Self {
        match m {
            FeModeArg::Conditional => FeMode::Conditional,
            FeModeArg::Unconditional => FeMode::Unconditional,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxiomsArg {
    WeakUltrafilter,
    UltrafilterFs,
    Classical,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    instance: PathBuf,
    /// Order parameter; the family has order k+1.
    #[arg(short = 'k', value_name = "K", default_value_t = 0)]
    k: u32,
    #[arg(long, value_enum, default_value_t = FeModeArg::Conditional)]
    fe_mode: FeModeArg,
    /// Forbid singleton members.
    #[arg(long)]
    require_fp: bool,
    #[arg(long, value_enum, default_value_t = AxiomsArg::WeakUltrafilter)]
    axioms: AxiomsArg,
}

impl FilterArgs {
    fn config(&self) -> SearchConfig {
        match self.axioms {
            AxiomsArg::Classical => SearchConfig::classical(),
            a => SearchConfig {
                axiom_set: if matches!(a, AxiomsArg::UltrafilterFs) {
                    AxiomSet::UltrafilterFs
                } else {
                    AxiomSet::WeakUltrafilter
                },
                ..SearchConfig::weak(self.k, self.fe_mode.into(), self.require_fp)
            },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum WufAction {
    /// Find one family and print its certificate.
    Find {
        #[command(flatten)]
        filter: FilterArgs,
        /// Also write the certificate to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// List families in canonical order and count them all.
    Enumerate {
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check a given family against the axioms.
    Check {
        #[command(flatten)]
        filter: FilterArgs,
        /// Family file, or inline JSON starting with `{`.
        #[arg(long)]
        family: String,
    },
    /// Existence for every k from 0 to max f.
    MaxOrder {
        #[command(flatten)]
        filter: FilterArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum TangleAction {
    Find {
        instance: PathBuf,
        #[arg(short = 'k', value_name = "K", default_value_t = 0)]
        k: u32,
    },
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Instance files.
    instances: Vec<PathBuf>,
    #[command(flatten)]
    gen: GenOptions,
    /// Findings directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Only report cells with this FE reading.
    #[arg(long, value_enum)]
    fe_mode: Option<FeModeArg>,
    /// Worker threads; sequential when absent.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum DualityAction {
    /// Interpretation matrix per instance.
    Matrix(CorpusArgs),
    /// Violation counts over a corpus.
    Fuzz(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct GenOptions {
    /// Generator kind.
    #[arg(long = "gen", value_name = "KIND")]
    kind: Option<String>,
    #[arg(long, default_value_t = 4)]
    vertices: usize,
    /// Exact number of edges.
    #[arg(long, conflicts_with = "density")]
    edges: Option<usize>,
    /// Probability of each edge.
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, default_value_t = 4)]
    max_weight: u32,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    count: usize,
}

impl GenOptions {
    fn config(&self) -> Result<Option<GeneratorConfig>> {
        let Some(kind) = &self.kind else { return Ok(None) };
        let kind =
            GeneratorKind::parse(kind).ok_or_else(|| Error::parse(format!("gen: unknown generator `{kind}`")))?;
        let seed = self.seed.ok_or_else(|| Error::parse("gen: --seed is required"))?;
        let edges = match (self.edges, self.density) {
            (Some(m), _) => EdgeCount::Exact(m),
            (None, Some(p)) => EdgeCount::Density(p),
            (None, None) => EdgeCount::Density(0.5),
        };
        let mut cfg = GeneratorConfig::new(kind, self.vertices, edges, seed, self.count);
        cfg.max_weight = self.max_weight;
        Ok(Some(cfg))
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    gen: GenOptions,
    /// Write one file per instance into this directory instead of stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

/// What a command prints and how it exits.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

impl Outcome {
    fn new(json: Value, text: String, code: i32) -> Self {
        Outcome { json, text, code }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => to_pretty(&out.json),
                Format::Text => out.text,
            };
            if stdout.write_all(body.as_bytes()).is_err() {
                return 6;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { instance } => verify(&read_instance(instance)?),
        Command::Branchwidth(args) => branchwidth(args),
        Command::Wuf { action } => wuf(action),
        Command::Tangle {
            action: TangleAction::Find { instance, k },
        } => {
            let inst = read_instance(instance)?;
            let config = SearchConfig::tangle(*k);
            let found = search_tangle(&inst.system, *k)?;
            found_outcome(&inst, &config, found)
        }
        Command::Duality { action } => duality(action),
        Command::Gen(args) => gen(args),
    }
}

fn set_text(g: &GroundSet, s: &[connsys_core::ElementSet]) -> String {
    let parts: Vec<String> = s.iter().map(|&a| format!("{{{}}}", g.labels_of(a).join(", "))).collect();
    parts.join(" ")
}

fn report_text(g: &GroundSet, report: &AxiomReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let _ = write!(out, "{:<7} {}", e.id.as_str(), if e.pass { "pass" } else { "FAIL" });
        if let Some(w) = e.witnesses.first() {
            let _ = write!(out, "  e.g. {} values {:?}", set_text(g, &w.sets), w.values);
            if e.witnesses.len() > 1 {
                let _ = write!(out, " (+{} more)", e.witnesses.len() - 1);
            }
        }
        out.push('\n');
    }
    let _ = writeln!(out, "overall {}", if report.overall { "pass" } else { "FAIL" });
    out
}

fn verify(inst: &Instance) -> Result<Outcome> {
    let g = inst.system.ground();
    let report = inst.system.verify_all()?;
    let json = json!({
        "instance": inst.name,
        "checks": axioms_json(g, &report),
        "overall": report.overall,
    });
    let text = format!("instance {}\n{}", inst.name, report_text(g, &report));
    Ok(Outcome::new(json, text, if report.overall { 0 } else { 4 }))
}

fn branchwidth(args: &BranchwidthArgs) -> Result<Outcome> {
    let inst = read_instance(&args.instance)?;
    let sys = &inst.system;
    let (bw, tree) = exact_branchwidth(sys)?;
    let mut json = json!({ "instance": inst.name, "elements": sys.len(), "branchwidth": bw });
    let mut text = format!("branch-width {bw}\n");
    let mut code = 0;
    if sys.len() < 2 {
        let note = "fewer than two elements: the tree has no edges, width is f(X)";
        json["note"] = json!(note);
        let _ = writeln!(text, "note: {note}");
    }
    if args.oracle {
        let brute = if sys.len() < ENUMERATION_MIN {
            DecompositionTree::degenerate(sys.len())?.width_of_tree(sys)?.width
        } else if sys.len() > ENUMERATION_CAP {
            return Err(connsys_core::Error::Capacity {
                what: "tree enumeration",
                size: sys.len(),
                cap: ENUMERATION_CAP,
            }
            .into());
        } else {
            brute_force_branchwidth(sys)?
        };
        let agrees = brute == bw;
        json["oracle"] = json!({ "branchwidth": brute, "agrees": agrees });
        let _ = writeln!(text, "oracle {brute} ({})", if agrees { "agrees" } else { "MISMATCH" });
        if !agrees {
            code = 5;
        }
    }
    if let Some(path) = &args.decompose {
        write_json(path, &decomposition_json(sys, &tree))?;
        json["decomposition"] = json!(path.display().to_string());
        let _ = writeln!(text, "tree written to {}", path.display());
    }
    if let Some(path) = &args.check {
        let check = check_decomposition(&read_text(path)?, sys)?;
        json["check"] = json!({
            "file": path.display().to_string(),
            "matches": check.matches,
            "reported_width": check.reported_width,
            "recomputed": check.recomputed,
        });
        let _ = writeln!(
            text,
            "check {}: width {} ({})",
            path.display(),
            check.width,
            if check.matches { "matches" } else { "MISMATCH" }
        );
        if !check.matches && code == 0 {
            code = 4;
        }
    }
    Ok(Outcome::new(json, text, code))
}

fn certificate_text(g: &GroundSet, config: &SearchConfig, family: Option<&SetFamily>, report: Option<&AxiomReport>) -> String {
    let mut out = format!(
        "order {} ({}, fe {}, fp {})\n",
        config.order_k + 1,
        config.axiom_set,
        config.fe_mode,
        config.require_fp
    );
    match family {
        Some(f) => {
            let _ = writeln!(out, "family ({} members): {}", f.len(), set_text(g, f.members()));
        }
        None => out.push_str("no family exists\n"),
    }
    if let Some(r) = report {
        out.push_str(&report_text(g, r));
    }
    out
}

fn found_outcome(inst: &Instance, config: &SearchConfig, found: Option<SetFamily>) -> Result<Outcome> {
    let g = inst.system.ground();
    let report = match &found {
        Some(f) => Some(is_weak_ultrafilter(f, &inst.system, config)?),
        None => None,
    };
    let json = certificate_json(g, config, found.as_ref(), report.as_ref());
    let text = certificate_text(g, config, found.as_ref(), report.as_ref());
    Ok(Outcome::new(json, text, if found.is_some() { 0 } else { 3 }))
}

fn load_family(arg: &str, g: &GroundSet) -> Result<SetFamily> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        read_text(Path::new(arg))?
    };
    parse_family(&text, g)
}

fn wuf(action: &WufAction) -> Result<Outcome> {
    match action {
        WufAction::Find { filter, out } => {
            let inst = read_instance(&filter.instance)?;
            let config = filter.config();
            let found = search(&inst.system, &config)?;
            let outcome = found_outcome(&inst, &config, found)?;
            if let Some(path) = out {
                write_json(path, &outcome.json)?;
            }
            Ok(outcome)
        }
        WufAction::Enumerate { filter, limit } => {
            let inst = read_instance(&filter.instance)?;
            let g = inst.system.ground();
            let config = filter.config();
            let all = enumerate(&inst.system, &config, *limit)?;
            let families: Vec<Value> = all
                .families
                .iter()
                .map(|f| f.members().iter().map(|&m| json!(g.labels_of(m))).collect())
                .collect();
            let json = json!({ "config": config_json(&config), "total": all.total, "families": families });
            let mut text = format!("{} families\n", all.total);
            for f in &all.families {
                let _ = writeln!(text, "{}", set_text(g, f.members()));
            }
            Ok(Outcome::new(json, text, 0))
        }
        WufAction::Check { filter, family } => {
            let inst = read_instance(&filter.instance)?;
            let g = inst.system.ground();
            let config = filter.config();
            let family = load_family(family, g)?;
            let report = is_weak_ultrafilter(&family, &inst.system, &config)?;
            let json = certificate_json(g, &config, Some(&family), Some(&report));
            let text = certificate_text(g, &config, Some(&family), Some(&report));
            Ok(Outcome::new(json, text, if report.overall { 0 } else { 4 }))
        }
        WufAction::MaxOrder { filter } => {
            let inst = read_instance(&filter.instance)?;
            let config = filter.config();
            let scan = max_order(&inst.system, &config)?;
            let mut config_out = config_json(&config);
            if let Some(obj) = config_out.as_object_mut() {
                obj.remove("order_k");
            }
            let json = json!({ "config": config_out, "exists": scan.exists, "max_order": scan.max_order });
            let mut text = String::new();
            for (k, e) in scan.exists.iter().enumerate() {
                let _ = writeln!(text, "k={k}: {}", if *e { "exists" } else { "none" });
            }
            match scan.max_order {
                Some(o) => {
                    let _ = writeln!(text, "max order {o}");
                }
                None => text.push_str("no order admits a family\n"),
            }
            Ok(Outcome::new(json, text, 0))
        }
    }
}

fn corpus(args: &CorpusArgs) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for path in &args.instances {
        out.push(read_instance(path)?);
    }
    if let Some(cfg) = args.gen.config()? {
        out.extend(generate(&cfg)?);
    }
    Ok(out)
}

fn duality(action: &DualityAction) -> Result<Outcome> {
    let (args, full) = match action {
        DualityAction::Matrix(a) => (a, true),
        DualityAction::Fuzz(a) => (a, false),
    };
    let corpus = corpus(args)?;
    let mode = args.fe_mode.map(FeMode::from);
    let matrices = fuzz::run(&corpus, args.jobs)?;
    let findings = fuzz::findings(&corpus, &matrices, mode);
    if let Some(dir) = &args.out {
        fuzz::write_findings(&findings, dir)?;
    }
    let mut summary = fuzz::summary_json(&corpus, &matrices, mode, args.out.as_deref());
    let mut text = String::new();
    if full {
        let shown: Vec<Value> = corpus
            .iter()
            .zip(&matrices)
            .map(|(inst, m)| {
                let mut mj = matrix_json(m, inst.system.ground());
                if let (Some(f), Some(cells)) = (mode, mj["cells"].as_array_mut()) {
                    cells.retain(|c| c["fe_mode"] == json!(f.as_str()));
                }
                mj
            })
            .collect();
        for m in &matrices {
            text.push_str(&matrix_text(m));
        }
        summary = json!({ "matrices": shown, "summary": summary });
    } else {
        let _ = writeln!(
            text,
            "corpus {}: {} findings ({})",
            corpus.len(),
            findings.len(),
            summary["status"].as_str().unwrap_or_default()
        );
        for f in &findings {
            let _ = writeln!(text, "  {}", f.dir_name());
        }
    }
    Ok(Outcome::new(summary, text, 0))
}

fn gen(args: &GenArgs) -> Result<Outcome> {
    let cfg = args
        .gen
        .config()?
        .ok_or_else(|| Error::parse("gen: --gen KIND is required"))?;
    let instances = generate(&cfg)?;
    let docs: Vec<Value> = instances.iter().map(instance_json).collect();
    let mut text = String::new();
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|source| Error::Write {
            path: dir.clone(),
            source,
        })?;
        for (inst, doc) in instances.iter().zip(&docs) {
            let path = dir.join(format!("{}.json", inst.name));
            write_json(&path, doc)?;
            let _ = writeln!(text, "{}", path.display());
        }
        let paths: Vec<Value> = instances
            .iter()
            .map(|i| json!(dir.join(format!("{}.json", i.name)).display().to_string()))
            .collect();
        return Ok(Outcome::new(json!({ "written": paths }), text, 0));
    }
    for inst in &instances {
        let _ = writeln!(text, "{}: {} elements, max f {}", inst.name, inst.system.len(), inst.system.max_value()?);
    }
    Ok(Outcome::new(Value::Array(docs), text, 0))
}
