//! The `blockade` command line: class checks, extraction with certificate
//! output, certificate verification, graph generation and batch benchmarks.
//!
//! Exit codes: 0 success (including a `check` that finds a copy), 2 bad
//! arguments or unreadable input, 3 input outside an operation's contract,
//! 4 certificate rejected, 5 internal invariant broken.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::certificate::{verify_document, CertificateDoc};
use crate::error::Error;
use crate::graph::Graph;
use crate::io::{self as graph_io, GraphFormat};
use crate::lab::{exponent_harness, generate, Family, GeneratorSpec, HarnessOptions, Pipeline};
use crate::pattern::{find_induced_copy, PatternGraph};
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational};
use crate::round2::{eh_extract, polynomial_rodl};

pub const PROFILE_ENV: &str = "BLOCKADE_PROFILE";

#[derive(Debug, Parser)]
#[command(name = "blockade", version, about = "Restricted subgraphs and homogeneous sets in house-free graphs, with checkable certificates")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Constants profile: `demo-small`, `paper`, or `name:sym=val,...`.
    /// Falls back to $BLOCKADE_PROFILE, then `demo-small`.
    #[arg(long, global = true)]
    pub profile: Option<String>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the graph avoids an induced pattern.
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Excluded::House)]
        exclude: Excluded,
        /// Check the complement instead.
        #[arg(long)]
        complement: bool,
    },
    /// Run an extraction pipeline and write its certificate as JSON.
    Extract {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = PipelineArg::Rodl)]
        pipeline: PipelineArg,
        /// Restriction parameter for `rodl`, as `num/den` or a decimal.
        #[arg(long, default_value = "1/4")]
        eps: String,
        /// The input is P5-free: run on its complement, which is house-free,
        /// and translate the result back.
        #[arg(long)]
        complement: bool,
        /// Certificate destination; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a graph, clause by clause.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Write a generated graph.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Edges)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a pipeline over generated graphs and write a CSV table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, default_value = "cograph")]
    pub family: Family,
    /// Emit the complement of the family's graph.
    #[arg(long)]
    pub complement: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Family labels, `co-` prefixed for complements; repeatable.
    #[arg(long = "family", default_values_t = ["cograph".to_string(), "co-substitution".to_string(), "sparse-random".to_string()])]
    pub families: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [32, 64, 128, 256, 512])]
    pub sizes: Vec<usize>,
    /// Instances per family and size.
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = PipelineArg::Eh)]
    pub pipeline: PipelineArg,
    /// Record wall-clock milliseconds, which makes the CSV vary between runs.
    #[arg(long)]
    pub timing: bool,
    /// Worker threads; rayon's default when absent.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Excluded {
    P5,
    House,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PipelineArg {
    Rodl,
    Eh,
}

impl From<PipelineArg> for Pipeline {
    fn from(p: PipelineArg) -> Pipeline {
        match p {
            PipelineArg::Rodl => Pipeline::Rodl,
            PipelineArg::Eh => Pipeline::Eh,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Edges,
    Dimacs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("input outside the contract: {0}")]
    Precondition(String),
    #[error("certificate rejected")]
    Rejected,
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Precondition(_) => 3,
            CliError::Rejected => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariantViolated(_) | Error::ContractBreach { .. } => CliError::Internal(e.to_string()),
            Error::PreconditionViolated { ref witness, .. } if !witness.is_empty() => {
                CliError::Precondition(format!("{e} (witness {witness:?})"))
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// `--profile`, then `$BLOCKADE_PROFILE`, then `demo-small`.
pub fn resolve_profile(flag: Option<&str>) -> Result<ConstantsProfile, CliError> {
    let env = std::env::var(PROFILE_ENV).ok().filter(|s| !s.trim().is_empty());
    let spec = flag.map(str::to_string).or(env).unwrap_or_else(|| ConstantsProfile::DEMO_SMALL.into());
    ConstantsProfile::parse(&spec).map_err(|e| CliError::Usage(format!("profile `{spec}`: {e}")))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    graph_io::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(io_err(Path::new("<stdout>")))
}

/// `cograph`, `co-substitution`, and so on.
pub fn parse_family_label(label: &str) -> Result<(Family, bool), CliError> {
    let (body, complement) = match label.strip_prefix("co-") {
        Some(rest) => (rest, true),
        None => (label, false),
    };
    body.parse::<Family>().map(|f| (f, complement)).map_err(CliError::Usage)
}

pub fn run(config: RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let profile = resolve_profile(config.profile.as_deref())?;
    let seed = config.seed;
    match config.command {
        Command::Check {
            graph,
            exclude,
            complement,
        } => {
            let mut g = read_graph(&graph)?;
            if complement {
                g = g.complement();
            }
            let pattern = match exclude {
                Excluded::P5 => PatternGraph::p5(),
                Excluded::House => PatternGraph::house(),
            };
            let line = match find_induced_copy(&g, &pattern) {
                None => format!("in class: no induced {}", pattern.name()),
                Some(copy) => format!("not in class: induced {} on {copy:?}", pattern.name()),
            };
            say(out, &line)
        }
        Command::Extract {
            graph,
            pipeline,
            eps,
            complement,
            output,
        } => {
            let g = read_graph(&graph)?;
            let eps: Rational =
                rational::parse(&eps).map_err(|e| CliError::Usage(format!("--eps: {e}")))?;
            let doc = extract(&g, pipeline.into(), &eps, complement, &profile, seed)?;
            emit(output.as_deref(), &(doc.to_json() + "\n"), out)
        }
        Command::Verify { graph, certificate } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&certificate).map_err(io_err(&certificate))?;
            let doc = CertificateDoc::from_json(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", certificate.display())))?;
            match verify_document(&doc, &g) {
                Ok(verdict) => {
                    write!(out, "{verdict}").map_err(io_err(Path::new("<stdout>")))?;
                    if verdict.accepted() {
                        Ok(())
                    } else {
                        Err(CliError::Rejected)
                    }
                }
                Err(e) => {
                    say(out, &format!("REJECTED (structural): {e}"))?;
                    Err(CliError::Rejected)
                }
            }
        }
        Command::Gen {
            family,
            n,
            format,
            output,
        } => {
            let mut spec = GeneratorSpec::new(family.family, n, seed);
            spec.complement = family.complement;
            let g = generate(&spec)?;
            let format = match format {
                FormatArg::Edges => GraphFormat::EdgeList,
                FormatArg::Dimacs => GraphFormat::Dimacs,
            };
            emit(output.as_deref(), &graph_io::write(&g, format), out)
        }
        Command::Bench(args) => bench(args, profile, seed, out),
    }
}

/// Runs `pipeline` on `g`, or on its complement when `complement` is set,
/// and returns a certificate about `g` itself.
pub fn extract(
    g: &Graph,
    pipeline: Pipeline,
    eps: &Rational,
    complement: bool,
    profile: &ConstantsProfile,
    seed: u64,
) -> Result<CertificateDoc, CliError> {
    let work = if complement { g.complement() } else { g.clone() };
    if let Some(copy) = find_induced_copy(&work, &PatternGraph::house()) {
        let what = if complement { "complement of the input" } else { "input" };
        return Err(CliError::Precondition(format!(
            "{what} contains an induced house on {copy:?}"
        )));
    }
    let cert = match pipeline {
        Pipeline::Rodl => {
            let mut r = polynomial_rodl(&work, eps, profile, seed)?;
            if complement {
                r.side = r.side.flipped();
            }
            r.certificate(profile)
        }
        Pipeline::Eh => {
            let mut r = eh_extract(&work, profile, seed)?;
            if complement {
                r.kind = r.kind.flipped();
            }
            r.certificate(profile)
        }
    };
    Ok(cert.to_doc(g))
}

fn bench(args: BenchArgs, profile: ConstantsProfile, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let mut specs = Vec::new();
    for label in &args.families {
        let (family, complement) = parse_family_label(label)?;
        for &n in &args.sizes {
            for _ in 0..args.count {
                let mut spec = GeneratorSpec::new(family, n, seed.wrapping_add(specs.len() as u64));
                spec.complement = complement;
                specs.push(spec);
            }
        }
    }
    let opts = HarnessOptions {
        pipeline: args.pipeline.into(),
        profile,
        timing: args.timing,
    };
    let table = match args.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?
            .install(|| exponent_harness(&specs, &opts))?,
        None => exponent_harness(&specs, &opts)?,
    };
    emit(args.output.as_deref(), &table.to_csv(), out)
}

/// Parses `args`, runs, reports errors on stderr, and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(config, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("blockade: {e}");
            e.exit_code()
        }
    }
}
