//! `caution`: plans a device task and writes the resulting warnings and
//! instructions.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use caution::domain::{builtin_domain, load_domain, validate_domain, DomainError, DomainModel};
use caution::pipeline::{
    format_indexed, format_interpretations, format_patterns, format_plan, format_points,
    format_trace, run, Artifacts, PipelineError, Stage,
};
use caution::planner::DEFAULT_MAX_DEPTH;
use clap::{ArgGroup, Parser};

#[derive(Debug, Parser)]
#[command(name = "caution", version, about = "Generate warnings and instructions for a device task")]
#[command(group(ArgGroup::new("source").required(true).args(["domain", "domain_file"])))]
struct Args {
    /// Built-in domain: toaster, breadmaker or combined.
    #[arg(long)]
    domain: Option<String>,
    /// Domain file to load instead of a built-in.
    #[arg(long, value_name = "PATH")]
    domain_file: Option<PathBuf>,
    /// Last stage to run and print.
    #[arg(long, default_value = "text", value_parser = parse_stage)]
    stage: Stage,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also write the sentence plans to this file.
    #[arg(long, value_name = "PATH")]
    spl_out: Option<PathBuf>,
    /// Depth bound for every planner search.
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    s.parse().map_err(|e: caution::pipeline::UnknownStage| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Pipeline(PipelineError::Plan(_)) => 1,
            CliError::Domain(_) | CliError::Pipeline(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn load(args: &Args) -> Result<DomainModel, CliError> {
    let model = match (&args.domain, &args.domain_file) {
        (Some(name), _) => builtin_domain(name)?,
        (None, Some(path)) => load_domain(&fs::read_to_string(path).map_err(io_err(path))?)?,
        (None, None) => unreachable!("clap requires a domain source"),
    };
    for d in validate_domain(&model) {
        eprintln!("caution: {d}");
    }
    Ok(model)
}

fn render(stage: Stage, a: &Artifacts) -> String {
    let line = |s: String| s + "\n";
    match stage {
        Stage::Plan => line(format_plan(&a.plan)),
        Stage::Points => line(format_points(&a.points)),
        Stage::Merged => line(format_indexed(&a.merged)),
        Stage::Interpret => format!(
            "INTERPRETATIONS: {}\nPATTERNS: {}\n",
            format_interpretations(&a.interpreted),
            format_patterns(&a.interpreted)
        ),
        Stage::Spl => a.spl.clone(),
        Stage::Text => a.sentences.iter().map(|s| line(s.clone())).collect(),
        Stage::Trace => format_trace(a),
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let model = load(args)?;
    let until = if args.spl_out.is_some() {
        args.stage.max(Stage::Spl)
    } else {
        args.stage
    };
    let artifacts = run(&model, until, args.max_depth)?;
    if let Some(path) = &args.spl_out {
        fs::write(path, &artifacts.spl).map_err(io_err(path))?;
    }
    let text = render(args.stage, &artifacts);
    match &args.out {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("caution: {e}");
            ExitCode::from(e.code())
        }
    }
}
