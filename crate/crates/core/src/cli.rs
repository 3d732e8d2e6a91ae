//! The `toggle-lab` command line. [`run`] does all the work so tests can drive
//! it in-process; `main` only forwards the process arguments.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certify::FamilyAnalysis;
use crate::certify::{
    survey_exceptionals, sweep, sweep_families, Suite, SurveyReport, SCHEMA_VERSION,
};
use crate::config::{OutputMode, RunConfig};
use crate::error::{Error, Result};
use crate::generators::{order_ideals, parse_poset, FamilyStream};
use crate::permgroup::{Containment, CycleOracle, Primitivity};
use crate::toggle::{decompose, FactorizationTree, FamilyFile, SetFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERT_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "toggle-lab",
    version,
    about = "Analyze and certify generalized toggle groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand. Flags override `TOGGLE_LAB_*`
/// environment variables, which override the defaults.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, env = "TOGGLE_LAB_ENUMERATION_LIMIT")]
    pub enumeration_limit: Option<u64>,

    /// Longest sampled toggle word in the lemma suite.
    #[arg(long, global = true, env = "TOGGLE_LAB_WORD_BOUND")]
    pub word_bound: Option<usize>,

    /// Random toggle words per lemma clause.
    #[arg(long, global = true, env = "TOGGLE_LAB_WORD_SAMPLES")]
    pub word_samples: Option<usize>,

    /// Seed for sampled streams and lemma words.
    #[arg(long, global = true, env = "TOGGLE_LAB_SEED")]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum, env = "TOGGLE_LAB_OUTPUT")]
    pub output: Option<OutputMode>,

    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, env = "TOGGLE_LAB_JOBS")]
    pub jobs: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "TOGGLE_LAB_OUT")]
    pub out: Option<PathBuf>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let d = RunConfig::default();
        let config = RunConfig {
            enumeration_limit: self.enumeration_limit.unwrap_or(d.enumeration_limit),
            word_bound: self.word_bound.unwrap_or(d.word_bound),
            word_samples: self.word_samples.unwrap_or(d.word_samples),
            seed: self.seed.unwrap_or(d.seed),
            output_mode: self.output.unwrap_or(d.output_mode),
            jobs: self.jobs.unwrap_or(d.jobs),
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize a family and report its toggle group.
    Analyze { family: PathBuf },
    /// Split a family into toggle-disjoint Cartesian factors.
    Decompose { family: PathBuf },
    /// Run certifiers over a family or a stream of families.
    Certify(CertifyArgs),
    /// Write the order-ideal family of a poset.
    GenIdeals { poset: PathBuf },
    /// Search for primitive groups with cycles of length n, n-1 or n-2 that
    /// are neither symmetric nor alternating.
    Survey(SurveyArgs),
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["exhaustive", "sample", "family"])))]
pub struct CertifyArgs {
    /// Every family over a ground of this size.
    #[arg(long, value_name = "K")]
    pub exhaustive: Option<usize>,

    /// COUNT random families over a ground of size K.
    #[arg(long, num_args = 2, value_names = ["K", "COUNT"])]
    pub sample: Option<Vec<usize>>,

    /// A single family file.
    #[arg(long, value_name = "FILE")]
    pub family: Option<PathBuf>,

    /// `all`, `theorems`, `lemmas`, or a comma-separated list of certifiers.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[arg(long, value_name = "K")]
    pub ground_size: usize,

    /// Walk every family (the default).
    #[arg(long, conflicts_with = "sample")]
    pub exhaustive: bool,

    /// Draw this many random families instead.
    #[arg(long, value_name = "COUNT")]
    pub sample: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command, writing
/// the report to `out` (or `--out`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_OK
            };
        }
    };
    match execute(&cli, err) {
        Ok((text, code)) => {
            let written = match &cli.config.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => out.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT_ERROR
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(String, i32)> {
    let config = cli.config.resolve()?;
    match &cli.command {
        Command::Analyze { family } => Ok((cmd_analyze(&read_family(family)?, &config)?, EXIT_OK)),
        Command::Decompose { family } => {
            Ok((cmd_decompose(&read_family(family)?, &config)?, EXIT_OK))
        }
        Command::Certify(args) => cmd_certify(args, &config),
        Command::GenIdeals { poset } => {
            let text = read(poset)?;
            let (p, warnings) = parse_poset(&text)?;
            for w in warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            Ok((order_ideals(&p)?.to_json() + "\n", EXIT_OK))
        }
        Command::Survey(args) => {
            let stream = match args.sample {
                Some(count) => FamilyStream::sampled(args.ground_size, config.seed, count),
                None => FamilyStream::exhaustive(args.ground_size),
            };
            let report = survey_exceptionals(&stream, &config)?;
            Ok((render(&report, &config, human_survey)?, EXIT_OK))
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_family(path: &Path) -> Result<SetFamily> {
    SetFamily::from_json(&read(path)?)
}

fn render<T: Serialize>(
    value: &T,
    config: &RunConfig,
    human: impl FnOnce(&T) -> String,
) -> Result<String> {
    Ok(match config.output_mode {
        OutputMode::Structured => {
            serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))? + "\n"
        }
        OutputMode::Human => format!("{}\n{}", config_line(config), human(value)),
    })
}

fn config_line(c: &RunConfig) -> String {
    format!(
        "config: enumeration_limit={} word_bound={} word_samples={} seed={} jobs={}",
        c.enumeration_limit, c.word_bound, c.word_samples, c.seed, c.jobs
    )
}

#[derive(Debug, Serialize)]
pub struct ToggleLine {
    pub element: String,
    pub permutation: String,
    pub identity: bool,
}

#[derive(Debug, Serialize)]
pub struct SpectrumEntry {
    pub length: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub family: FamilyFile,
    pub removed_elements: Vec<String>,
    pub degree: usize,
    pub toggles: Vec<ToggleLine>,
    pub order: String,
    pub transitive: bool,
    pub orbits: Vec<Vec<usize>>,
    pub block_systems: Vec<Vec<usize>>,
    pub primitivity: Option<Primitivity>,
    pub cycle_spectrum: Vec<SpectrumEntry>,
}

pub fn analyze_report(f: &SetFamily, config: &RunConfig) -> Result<AnalyzeReport> {
    let (norm, removed) = f.normalize();
    let a = FamilyAnalysis::new(&norm, config)?;
    let n = norm.len();
    let (block_systems, primitivity) = if a.is_transitive() {
        let systems = a
            .block_systems()?
            .iter()
            .map(|b| b.block_of().to_vec())
            .collect();
        (systems, Some(a.primitivity()?))
    } else {
        (Vec::new(), None)
    };
    let mut spectrum = Vec::new();
    for k in 2..=n {
        let c = a.oracle().contains_cycle(k)?;
        spectrum.push(SpectrumEntry {
            length: k,
            status: c.label(),
            witness: c.witness().map(ToString::to_string),
        });
    }
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        family: norm.to_file(),
        removed_elements: removed,
        degree: n,
        toggles: a
            .toggles()
            .iter()
            .map(|(e, p)| ToggleLine {
                element: e.to_owned(),
                permutation: p.to_string(),
                identity: p.is_identity(),
            })
            .collect(),
        order: a.group().order().to_string(),
        transitive: a.is_transitive(),
        orbits: a.group().orbits(),
        block_systems,
        primitivity,
        cycle_spectrum: spectrum,
    })
}

pub fn cmd_analyze(f: &SetFamily, config: &RunConfig) -> Result<String> {
    let report = analyze_report(f, config)?;
    let norm = SetFamily::from_file(&report.family)?;
    render(&report, config, |r| {
        let mut s = String::new();
        let _ = writeln!(s, "family: {norm}");
        if !r.removed_elements.is_empty() {
            let _ = writeln!(
                s,
                "removed trivial elements: {}",
                r.removed_elements.join(", ")
            );
        }
        let _ = writeln!(s, "degree: {}", r.degree);
        let _ = writeln!(s, "points:");
        for i in 0..norm.len() {
            let _ = writeln!(s, "  {i}: {}", norm.format_set(i));
        }
        let _ = writeln!(s, "toggles:");
        for t in &r.toggles {
            let _ = writeln!(s, "  {}: {}", t.element, t.permutation);
        }
        let _ = writeln!(s, "order: {}", r.order);
        let _ = writeln!(s, "transitive: {}", r.transitive);
        if !r.transitive {
            let _ = writeln!(s, "orbits: {:?}", r.orbits);
        }
        if let Some(p) = r.primitivity {
            let _ = writeln!(s, "nontrivial block systems: {}", r.block_systems.len());
            for b in &r.block_systems {
                let _ = writeln!(s, "  {b:?}");
            }
            let _ = writeln!(s, "primitivity: {p:?}");
        }
        let _ = writeln!(s, "cycle spectrum:");
        for e in &r.cycle_spectrum {
            match &e.witness {
                Some(w) => {
                    let _ = writeln!(s, "  {:>3}: {} {w}", e.length, e.status);
                }
                None => {
                    let _ = writeln!(s, "  {:>3}: {}", e.length, e.status);
                }
            }
        }
        s
    })
}

#[derive(Debug, Serialize)]
pub struct TreeReport {
    pub family: FamilyFile,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_system: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub long_cycle: Option<&'static str>,
    pub children: Vec<TreeReport>,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub removed_elements: Vec<String>,
    pub order: String,
    pub leaf_degrees: Vec<usize>,
    pub leaf_orders: Vec<String>,
    /// Whether the leaf orders multiply to the group order.
    pub order_identity: bool,
    pub tree: TreeReport,
}

fn tree_report(t: &FactorizationTree, limit: u64) -> Result<TreeReport> {
    Ok(match t {
        FactorizationTree::Leaf { family, group } => {
            let long = if family.len() < 2 {
                "n/a"
            } else {
                match CycleOracle::new(group, limit).contains_cycle(family.len())? {
                    Containment::Yes { .. } => "yes",
                    Containment::No { .. } => "no",
                    Containment::Undecided => "undecided",
                }
            };
            TreeReport {
                family: family.to_file(),
                degree: family.len(),
                block_system: None,
                order: Some(group.order().to_string()),
                long_cycle: Some(long),
                children: Vec::new(),
            }
        }
        FactorizationTree::Node {
            family,
            block_system,
            children,
            ..
        } => TreeReport {
            family: family.to_file(),
            degree: family.len(),
            block_system: Some(block_system.block_of().to_vec()),
            order: None,
            long_cycle: None,
            children: children
                .iter()
                .map(|c| tree_report(c, limit))
                .collect::<Result<_>>()?,
        },
    })
}

pub fn decompose_report(f: &SetFamily, config: &RunConfig) -> Result<DecomposeReport> {
    let (norm, removed) = f.normalize();
    let a = FamilyAnalysis::new(&norm, config)?;
    let tree = decompose(&norm)?;
    let leaves = tree.leaves();
    let product: num_bigint::BigUint = leaves.iter().map(|(_, g)| g.order().clone()).product();
    Ok(DecomposeReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        removed_elements: removed,
        order: a.group().order().to_string(),
        leaf_degrees: tree.leaf_degrees(),
        leaf_orders: leaves.iter().map(|(_, g)| g.order().to_string()).collect(),
        order_identity: product == *a.group().order(),
        tree: tree_report(&tree, config.enumeration_limit)?,
    })
}

fn human_tree(s: &mut String, t: &TreeReport, depth: usize) {
    let fam = SetFamily::from_file(&t.family)
        .map(|f| f.to_string())
        .unwrap_or_default();
    let indent = "  ".repeat(depth);
    let ground = t.family.ground.join(",");
    match (&t.order, t.long_cycle) {
        (Some(order), Some(long)) => {
            let _ = writeln!(
                s,
                "{indent}leaf: degree {}, ground {{{ground}}}, order {order}, long cycle {long}: {fam}",
                t.degree
            );
        }
        _ => {
            let _ = writeln!(
                s,
                "{indent}split: degree {}, ground {{{ground}}}: {fam}",
                t.degree
            );
            for c in &t.children {
                human_tree(s, c, depth + 1);
            }
        }
    }
}

pub fn cmd_decompose(f: &SetFamily, config: &RunConfig) -> Result<String> {
    let report = decompose_report(f, config)?;
    render(&report, config, |r| {
        let mut s = String::new();
        human_tree(&mut s, &r.tree, 0);
        let sign = if r.order_identity { "=" } else { "!=" };
        let _ = writeln!(s, "leaf degrees: {:?}", r.leaf_degrees);
        let _ = writeln!(
            s,
            "order check: {} {sign} {}",
            r.order,
            r.leaf_orders.join(" * ")
        );
        s
    })
}

pub fn cmd_certify(args: &CertifyArgs, config: &RunConfig) -> Result<(String, i32)> {
    let suite: Suite = args.suite.parse()?;
    let report = if let Some(k) = args.exhaustive {
        sweep(&FamilyStream::exhaustive(k), &suite, config)?
    } else if let Some(v) = &args.sample {
        sweep(
            &FamilyStream::sampled(v[0], config.seed, v[1]),
            &suite,
            config,
        )?
    } else {
        let path = args.family.as_ref().expect("clap requires one source");
        let (f, _) = read_family(path)?.normalize();
        let a = FamilyAnalysis::new(&f, config)?;
        if !a.is_transitive() {
            return Err(Error::NotTransitive {
                degree: f.len(),
                orbits: a.group().orbits().len(),
            });
        }
        sweep_families(&[f], &suite, config)?
    };
    let code = if report.fail_count() == 0 {
        EXIT_OK
    } else {
        EXIT_CERT_FAILURE
    };
    Ok((render(&report, config, ToString::to_string)?, code))
}

fn human_survey(r: &SurveyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "examined {} transitive families, {} primitive, {} undecided",
        r.families_examined, r.primitive_examined, r.undecided
    );
    let _ = writeln!(s, "candidates: {}", r.candidates.len());
    for c in &r.candidates {
        let fam = SetFamily::from_file(&c.family)
            .map(|f| f.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "  degree {}, order {}, {}-cycle {} (reverified: {}): {fam}",
            c.degree, c.order, c.cycle_length, c.witness, c.reverified
        );
    }
    let _ = writeln!(s, "note: {}", r.note);
    s
}
