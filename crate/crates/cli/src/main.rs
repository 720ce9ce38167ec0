//! `rapoly`: validation, statistics, doubling, reduction, bound tables and
//! catalog emission for right-angled polytopes given as incidence files.
//!
//! Exit codes: 0 success, 2 validation failure (or degenerate doubling, or an
//! unexplained difference from published bounds), 3 realizability screen
//! flagged, 4 input or usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rapoly_core::bounds::{compute_tables, verify_against_published};
use rapoly_core::face_lattice::{nk_checks, nonaka_checks, realizability_screen};
use rapoly_core::gluing::{fate_counts, CommonDim, FacetChoice, GluingError};
use rapoly_core::{
    catalog, double, enumerate_faces, face_vector, reduce_ideal_pair, validate, BigInt, BoundsConfig,
    CombinatorialPolytope, NuRule, ReductionOptions, TableFormat,
};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 2;
const EXIT_FLAGGED: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rapoly",
    version,
    about = "Combinatorics and bounds for right-angled hyperbolic polytopes"
)]
struct Cli {
    /// Write machine output here instead of standard output ("-" for stdout).
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    output: Option<String>,
    /// Table format for `bounds`: md, csv or json.
    #[arg(long, global = true, value_name = "FORMAT")]
    format: Option<TableFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Polytope file; "-" or absent reads standard input.
    #[arg(value_name = "FILE")]
    path: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the incidence structure against every validity rule.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also run the realizability screen with the default bounds table.
        #[arg(long)]
        screen: bool,
    },
    /// Face vector, face lists and screen values.
    Stats {
        #[command(flatten)]
        input: Input,
        /// List the k-faces.
        #[arg(long, value_name = "K")]
        faces: Option<usize>,
        /// Average incidences against the Nikulin–Khovanskii bounds.
        #[arg(long)]
        nk: bool,
        /// Include l = 0 in the --nk pairs.
        #[arg(long, requires = "nk")]
        l0: bool,
        /// Facet counts of 3-faces with at most one ideal vertex.
        #[arg(long)]
        nonaka: bool,
    },
    /// Double the polytope along one facet.
    Glue {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "H")]
        facet: usize,
        /// Facet/vertex fate sidecar; defaults to `<output>.map.json` when -o names a file.
        #[arg(long, value_name = "PATH")]
        map: Option<PathBuf>,
    },
    /// Double along common facets of two ideal vertices until their minimal
    /// common face reaches the target dimension or disappears.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "ID", allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_name = "ID", allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 4, value_name = "D")]
        target_dim: usize,
        /// Pick the largest-index common facet instead of the smallest.
        #[arg(long)]
        largest: bool,
    },
    /// Lower-bound tables for dimensions 5 through --max-dim.
    Bounds {
        #[arg(long, default_value = "3", value_name = "N")]
        base_v5: BigInt,
        #[arg(long, default_value = "4", value_name = "N")]
        base_vfin7: BigInt,
        #[arg(long, value_enum, default_value_t = RuleArg::Max)]
        nu_rule: RuleArg,
        #[arg(long, default_value_t = 12, value_name = "N")]
        max_dim: usize,
        /// Compare against the published values.
        #[arg(long)]
        verify: bool,
    },
    /// List the catalog, or emit one entry in the polytope file format.
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Max,
    Linear,
}

/// A failure that maps to a specific exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        Failure::input(format!("{err:#}"))
    }
}

type Outcome = Result<u8, Failure>;

/// Human report and machine output, kept apart: when machine output goes to
/// stdout the report moves to stderr.
struct Sink {
    output: Option<String>,
}

impl Sink {
    fn machine_to_stdout(&self) -> bool {
        matches!(self.output.as_deref(), None | Some("-"))
    }

    fn report(&self, text: &str) {
        if self.machine_to_stdout() {
            eprint!("{text}");
        } else {
            print!("{text}");
        }
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match self.output.as_deref() {
            None | Some("-") => {
                io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
            Some(path) => fs::write(path, text).with_context(|| format!("cannot write {path}")),
        }
    }
}

fn read_input(input: &Input) -> Result<CombinatorialPolytope, Failure> {
    let text = match input.path.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .context("cannot read standard input")?;
            text
        }
        Some(path) => fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?,
    };
    CombinatorialPolytope::from_json(&text).map_err(|e| Failure::input(e.to_string()))
}

/// Validates and prints violations; `Some(exit)` when invalid.
fn require_valid(p: &CombinatorialPolytope) -> Option<u8> {
    let report = validate(p);
    if report.is_valid() {
        return None;
    }
    println!("invalid: {} violation(s)", report.violations.len());
    for v in &report.violations {
        println!("  [{}] {}", v.rule, v.message);
    }
    Some(EXIT_INVALID)
}

fn reject_format(format: Option<TableFormat>) -> Result<(), Failure> {
    match format {
        Some(_) => Err(Failure::input("--format applies to `bounds` only")),
        None => Ok(()),
    }
}

fn counts_summary(p: &CombinatorialPolytope) -> String {
    let mut parts = vec![format!("facets {}", p.facet_count())];
    if p.finite_count() > 0 {
        parts.push(format!("v_fin {}", p.finite_count()));
    }
    if p.ideal_count() > 0 {
        parts.push(format!("v_inf {}", p.ideal_count()));
    }
    parts.join(", ")
}

fn cmd_validate(input: &Input, screen: bool, cli: &Cli) -> Outcome {
    reject_format(cli.format)?;
    if cli.output.is_some() {
        return Err(Failure::input("`validate` has no machine output"));
    }
    let p = read_input(input)?;
    if let Some(code) = require_valid(&p) {
        return Ok(code);
    }
    println!("valid: dimension {}, {}", p.dim(), counts_summary(&p));
    if !screen {
        return Ok(EXIT_OK);
    }
    let table = compute_tables(&BoundsConfig::default()).expect("default bounds");
    let report = realizability_screen(&p, &table).map_err(|e| Failure::input(e.to_string()))?;
    if report.is_empty() {
        println!("screen: no rule fired");
        return Ok(EXIT_OK);
    }
    println!("screen: {} finding(s)", report.findings.len());
    for finding in &report.findings {
        println!("  {finding}");
    }
    Ok(EXIT_FLAGGED)
}

fn cmd_stats(input: &Input, faces: Option<usize>, nk: bool, l0: bool, nonaka: bool, cli: &Cli) -> Outcome {
    reject_format(cli.format)?;
    if cli.output.is_some() {
        return Err(Failure::input("`stats` has no machine output"));
    }
    let p = read_input(input)?;
    if let Some(code) = require_valid(&p) {
        return Ok(code);
    }
    let face_error = |e: rapoly_core::face_lattice::FaceError| Failure::input(e.to_string());
    let fv = face_vector(&p).map_err(face_error)?;
    let mut out = String::new();
    let a: Vec<String> = fv.a.iter().map(ToString::to_string).collect();
    let mut line = format!("a: {}", a.join(" "));
    if fv.v_fin > 0 {
        write!(line, "; v_fin: {}", fv.v_fin).unwrap();
    }
    if fv.v_inf > 0 {
        write!(line, "; v_inf: {}", fv.v_inf).unwrap();
    }
    writeln!(out, "{line}").unwrap();

    if let Some(k) = faces {
        let list = enumerate_faces(&p, k).map_err(face_error)?;
        writeln!(out, "{k}-faces: {}", list.len()).unwrap();
        for face in &list {
            let ids: Vec<&str> = face.vertices.iter().map(|&i| p.vertex(i).id.as_str()).collect();
            writeln!(out, "  {} [{}]", face.facet_set, ids.join(" ")).unwrap();
        }
    }

    let mut flagged = false;
    if nk {
        for check in nk_checks(&p, l0).map_err(face_error)? {
            flagged |= check.violated();
            writeln!(out, "{check}").unwrap();
        }
    }
    if nonaka {
        for check in nonaka_checks(&p).map_err(face_error)? {
            let face = if check.face.is_empty() {
                String::new()
            } else {
                format!("3-face {}: ", check.face)
            };
            let verdict = if !check.applies() {
                format!("a_2 = {}, v_inf = {} > 1: not applicable", check.a2, check.v_inf)
            } else if check.fails() {
                flagged = true;
                format!("a_2 = {} < 12: fail", check.a2)
            } else {
                format!("a_2 = {} ≥ 12: pass", check.a2)
            };
            writeln!(out, "{face}{verdict}").unwrap();
        }
    }
    print!("{out}");
    Ok(if flagged { EXIT_FLAGGED } else { EXIT_OK })
}

fn sidecar_path(output: Option<&str>, map: Option<&Path>) -> Option<PathBuf> {
    if let Some(map) = map {
        return Some(map.to_path_buf());
    }
    match output {
        None | Some("-") => None,
        Some(path) => Some(PathBuf::from(format!(
            "{}.map.json",
            path.strip_suffix(".json").unwrap_or(path)
        ))),
    }
}

fn cmd_glue(input: &Input, facet: usize, map: Option<&Path>, cli: &Cli) -> Outcome {
    reject_format(cli.format)?;
    let sink = Sink {
        output: cli.output.clone(),
    };
    let p = read_input(input)?;
    if facet >= p.facet_count() {
        return Err(Failure::input(format!(
            "facet {facet} out of range (facet_count {})",
            p.facet_count()
        )));
    }
    let report = validate(&p);
    if !report.is_valid() {
        let mut text = format!("invalid input: {} violation(s)\n", report.violations.len());
        for v in &report.violations {
            writeln!(text, "  [{}] {}", v.rule, v.message).unwrap();
        }
        sink.report(&text);
        return Ok(EXIT_INVALID);
    }
    let (doubled, fates) = match double(&p, facet) {
        Ok(result) => result,
        Err(err @ GluingError::Degenerate { .. }) => {
            sink.report(&format!("{err}\n"));
            return Ok(EXIT_INVALID);
        }
        Err(err) => return Err(Failure::input(err.to_string())),
    };
    sink.emit(&doubled.to_json())?;
    if let Some(path) = sidecar_path(cli.output.as_deref(), map) {
        fs::write(&path, fates.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let groups = fate_counts(&fates);
    let mut text = format!("{}\n", counts_summary(&doubled));
    writeln!(
        text,
        "merged {}, kept pairs {}",
        groups.get("merged").copied().unwrap_or(0),
        groups.get("kept_pair").copied().unwrap_or(0)
    )
    .unwrap();
    sink.report(&text);
    Ok(EXIT_OK)
}

fn cmd_reduce(input: &Input, u: &str, v: &str, target_dim: usize, largest: bool, cli: &Cli) -> Outcome {
    reject_format(cli.format)?;
    let sink = Sink {
        output: cli.output.clone(),
    };
    let p = read_input(input)?;
    let report = validate(&p);
    if !report.is_valid() {
        sink.report(&format!(
            "invalid input: {} violation(s)\n",
            report.violations.len()
        ));
        return Ok(EXIT_INVALID);
    }
    let options = ReductionOptions {
        target_dim,
        choice: if largest {
            FacetChoice::LargestIndex
        } else {
            FacetChoice::SmallestIndex
        },
    };
    let trace = match reduce_ideal_pair(&p, u, v, options) {
        Ok(trace) => trace,
        Err(err @ GluingError::Degenerate { .. }) => {
            sink.report(&format!("{err}\n"));
            return Ok(EXIT_INVALID);
        }
        Err(err) => return Err(Failure::input(err.to_string())),
    };
    let mut text = format!(
        "{} {}: minimal common face dimension {}\n",
        trace.u, trace.v, trace.initial_dim
    );
    for (i, step) in trace.steps.iter().enumerate() {
        writeln!(
            text,
            "step {}: facet {}, common {} -> {}, d {} -> {}, facets {}, v_inf {}",
            i + 1,
            step.facet,
            step.common_before,
            step.common_after,
            step.dim_before,
            step.dim_after,
            step.facets_after,
            step.v_inf_after
        )
        .unwrap();
    }
    let remaining = match trace.final_dim() {
        CommonDim::WholePolytope => 0,
        CommonDim::Face(d) => p.dim() - d,
    };
    let tail = if remaining == 0 {
        "final common set empty".to_string()
    } else {
        format!("final common set has {remaining} facet(s)")
    };
    let plural = if trace.steps.len() == 1 { "" } else { "s" };
    writeln!(text, "{} step{plural}, {tail}", trace.steps.len()).unwrap();
    sink.emit(&trace.result.to_json())?;
    sink.report(&text);
    Ok(EXIT_OK)
}

fn cmd_bounds(config: BoundsConfig, verify: bool, cli: &Cli) -> Outcome {
    config.validate().map_err(|e| Failure::input(e.to_string()))?;
    let table = compute_tables(&config).map_err(|e| Failure::input(e.to_string()))?;
    let sink = Sink {
        output: cli.output.clone(),
    };
    sink.emit(&table.render(cli.format.unwrap_or(TableFormat::Markdown)))?;
    if !verify {
        return Ok(EXIT_OK);
    }
    let diff = verify_against_published(&table, &table);
    let mut text = String::new();
    if diff.is_empty() {
        text.push_str("verify: all published values reproduced\n");
    }
    for entry in &diff.entries {
        writeln!(text, "verify: {entry}").unwrap();
    }
    let unexplained = diff.unexplained().count();
    if unexplained > 0 {
        writeln!(text, "verify: {unexplained} unexplained difference(s)").unwrap();
    }
    sink.report(&text);
    Ok(if unexplained > 0 { EXIT_INVALID } else { EXIT_OK })
}

fn cmd_catalog(name: Option<&str>, cli: &Cli) -> Outcome {
    reject_format(cli.format)?;
    let sink = Sink {
        output: cli.output.clone(),
    };
    match name {
        None => {
            let mut text = String::new();
            for e in catalog::entries() {
                writeln!(text, "{}\t{}", e.name, e.provenance).unwrap();
            }
            print!("{text}");
        }
        Some(name) => {
            let p = catalog::build(name).map_err(|e| Failure::input(e.to_string()))?;
            sink.emit(&p.to_json())?;
        }
    }
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { input, screen } => cmd_validate(input, *screen, cli),
        Command::Stats {
            input,
            faces,
            nk,
            l0,
            nonaka,
        } => cmd_stats(input, *faces, *nk, *l0, *nonaka, cli),
        Command::Glue { input, facet, map } => cmd_glue(input, *facet, map.as_deref(), cli),
        Command::Reduce {
            input,
            u,
            v,
            target_dim,
            largest,
        } => cmd_reduce(input, u, v, *target_dim, *largest, cli),
        Command::Bounds {
            base_v5,
            base_vfin7,
            nu_rule,
            max_dim,
            verify,
        } => {
            let config = BoundsConfig {
                v5_base: base_v5.clone(),
                vfin7_base: base_vfin7.clone(),
                nu_rule: match nu_rule {
                    RuleArg::Max => NuRule::Max,
                    RuleArg::Linear => NuRule::Linear,
                },
                max_dim: *max_dim,
                ..BoundsConfig::default()
            };
            cmd_bounds(config, *verify, cli)
        }
        Command::Catalog { name } => cmd_catalog(name.as_deref(), cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
