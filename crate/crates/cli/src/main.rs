use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use holo_core::atlas::{validate, AtlasDoc, Level};
use holo_core::causality::{report, FiberWord};
use holo_core::omega::{decompose, enumerate_poset, export_hasse, Pattern};
use holo_core::polymodel::ModelPolynomial;
use holo_core::reconstruct::{glue, invariants, trajectory_space, ReconstructError, StratifiedComplex};
use holo_core::strata::{polarity_oracle, polarize, polarize_divisor, strata_table};
use holo_core::surgery::{connected_sum, verify_strata_formulas, verify_trajectory_gluing, BasedAtlas, SurgeryError};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "holo", version, about = "Boundary data of traversing flows on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List trajectory patterns up to reduced norm n with their covers.
    Poset { n: u32 },
    /// Split a pattern into atoms and strings.
    Decompose { pattern: String },
    /// Polarized word of a pattern, or of the real divisor of a model polynomial.
    Polarity {
        #[arg(required_unless_present = "model", conflicts_with = "model")]
        pattern: Option<String>,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Causality step and orbit of each boundary point of a pattern.
    Causality { pattern: String },
    /// Check atlases at a level (default: the level declared in each file).
    Validate {
        #[arg(long)]
        level: Option<Level>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Glue a fillable surface atlas and print its invariants.
    Reconstruct { file: PathBuf },
    /// Invariants with the boundary strata table.
    Invariants { file: PathBuf },
    /// Boundary connected sum of two based atlases.
    Sum {
        a1: PathBuf,
        a2: PathBuf,
        #[arg(long)]
        base1: Option<String>,
        #[arg(long)]
        base2: Option<String>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Graphviz export.
    ExportDot {
        kind: DotKind,
        /// Poset bound or atlas file.
        input: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Poset,
    Complex,
    Trajectory,
}

#[derive(Debug, Error)]
enum Failure {
    /// The input is well formed but fails a check.
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Malformed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Malformed(_) => 2,
        }
    }
}

fn malformed(e: impl ToString) -> Failure {
    Failure::Malformed(e.to_string())
}

fn from_reconstruct(e: ReconstructError) -> Failure {
    match e {
        ReconstructError::NotFillable(_)
        | ReconstructError::UnpairedFace(_)
        | ReconstructError::NonManifoldGluing(_) => Failure::Invalid(e.to_string()),
        other => malformed(other),
    }
}

fn from_surgery(e: SurgeryError) -> Failure {
    match e {
        SurgeryError::Reconstruct(r) => from_reconstruct(r),
        SurgeryError::IncompatibleOrientation(_) => Failure::Invalid(e.to_string()),
        other => malformed(other),
    }
}

struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn pattern(s: &str) -> Result<Pattern, Failure> {
    s.parse().map_err(malformed)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn load_atlas(path: &Path) -> Result<AtlasDoc, Failure> {
    AtlasDoc::parse(&read(path)?).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn surface(path: &Path) -> Result<StratifiedComplex, Failure> {
    glue(&load_atlas(path)?).map_err(from_reconstruct)
}

fn validate_one(path: &Path, level: Option<Level>) -> Result<Output, Failure> {
    let doc = load_atlas(path)?;
    let level = level.or(doc.level).unwrap_or(Level::Fillable);
    let r = validate(&doc, level).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    Ok(Output {
        text: format!("file {}\n{}", path.display(), r.to_text()),
        passed: r.passed(),
    })
}

fn validate_all(files: &[PathBuf], level: Option<Level>, jobs: usize) -> Result<Output, Failure> {
    let jobs = jobs.clamp(1, files.len().max(1));
    let chunk = files.len().div_ceil(jobs);
    let results: Vec<Result<Output, Failure>> = thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk.max(1))
            .map(|part| s.spawn(move || part.iter().map(|f| validate_one(f, level)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("validation worker panicked"))
            .collect()
    });
    let mut text = String::new();
    let mut passed = true;
    for r in results {
        let out = r?;
        text.push_str(&out.text);
        passed &= out.passed;
    }
    Ok(Output { text, passed })
}

fn polarity(pattern_arg: Option<&str>, model: Option<&Path>) -> Result<Output, Failure> {
    if let Some(path) = model {
        let m: ModelPolynomial = read(path)?.parse().map_err(malformed)?;
        let div = m.divisor().map_err(malformed)?;
        let rule = polarize_divisor(&div).map_err(malformed)?;
        let oracle = polarity_oracle(&m).map_err(malformed)?;
        let agree = rule == oracle;
        let shown = div.pattern().map_or_else(|| "()".to_string(), |p| p.to_string());
        return Ok(Output {
            text: format!(
                "divisor {shown} complex_pairs={}\nrule {rule}\noracle {oracle}\nagree={}\n",
                div.complex_count(),
                u8::from(agree)
            ),
            passed: agree,
        });
    }
    let p = pattern(pattern_arg.expect("clap requires a pattern without --model"))?;
    let w = polarize(&p).map_err(malformed)?;
    Ok(Output::ok(format!("{w}\n")))
}

fn invariants_report(path: &Path) -> Result<Output, Failure> {
    let x = surface(path)?;
    let mut text = format!("{}\n", invariants(&x));
    text.push_str(&strata_table(&x).map_err(malformed)?.to_text());
    let t = trajectory_space(&x).graph();
    let s = t.simplified();
    let _ = writeln!(
        text,
        "trajectory vertices={} edges={} chi={} simplified_vertices={} simplified_edges={}",
        t.vertices.len(),
        t.edges.len(),
        t.euler_characteristic(),
        s.vertices.len(),
        s.edges.len()
    );
    Ok(Output::ok(text))
}

fn sum(
    a1: &Path,
    a2: &Path,
    base1: Option<&str>,
    base2: Option<&str>,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let b1 = BasedAtlas::new(load_atlas(a1)?, base1).map_err(from_surgery)?;
    let b2 = BasedAtlas::new(load_atlas(a2)?, base2).map_err(from_surgery)?;
    let doc = connected_sum(&b1, &b2).map_err(from_surgery)?;
    let strata = verify_strata_formulas(&b1, &b2, &doc).map_err(from_surgery)?;
    let traj = verify_trajectory_gluing(&b1, &b2, &doc).map_err(from_surgery)?;
    let reports: String = format!("{}{}", strata.to_text(), traj.to_text())
        .lines()
        .map(|l| format!("# {l}\n"))
        .collect();
    let text = match output {
        Some(path) => {
            fs::write(path, doc.to_text()).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
            reports
        }
        None => format!("{}{reports}", doc.to_text()),
    };
    Ok(Output {
        text,
        passed: strata.passed() && traj.passed(),
    })
}

fn export_dot(kind: DotKind, input: &str) -> Result<Output, Failure> {
    let text = match kind {
        DotKind::Poset => {
            let n: u32 = input
                .parse()
                .map_err(|_| malformed(format!("poset bound must be a number, got {input:?}")))?;
            export_hasse(&enumerate_poset(n).map_err(malformed)?)
        }
        DotKind::Complex => surface(Path::new(input))?.to_dot(),
        DotKind::Trajectory => trajectory_space(&surface(Path::new(input))?).to_dot(),
    };
    Ok(Output::ok(text))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Poset { n } => Ok(Output::ok(enumerate_poset(n).map_err(malformed)?.to_text())),
        Command::Decompose { pattern: p } => Ok(Output::ok(format!(
            "{}\n",
            decompose(&pattern(&p)?).map_err(malformed)?
        ))),
        Command::Polarity { pattern, model } => polarity(pattern.as_deref(), model.as_deref()),
        Command::Causality { pattern: p } => {
            let w = FiberWord::from_pattern(&pattern(&p)?).map_err(malformed)?;
            Ok(Output::ok(report(&w)))
        }
        Command::Validate { level, jobs, files } => validate_all(&files, level, jobs),
        Command::Reconstruct { file } => Ok(Output::ok(format!("{}\n", invariants(&surface(&file)?)))),
        Command::Invariants { file } => invariants_report(&file),
        Command::Sum {
            a1,
            a2,
            base1,
            base2,
            output,
        } => sum(&a1, &a2, base1.as_deref(), base2.as_deref(), output.as_deref()),
        Command::ExportDot { kind, input } => export_dot(kind, &input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
