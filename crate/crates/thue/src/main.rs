use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sparse_thue::analyze::analyze;
use sparse_thue::config::{parse_box, OutputFormat, RunConfig};
use sparse_thue::corpus::standard_corpus;
use sparse_thue::format::{form_display, parse_form, write_census_csv};
use sparse_thue::parallel::{available_workers, enumerate_parallel};
use sparse_thue::sweep::{self, Family, SweepConfig};
use sparse_thue::verify::{self_test_summary, verify_form, VerifyConfig, VerifySummary, CEILING_ENV};
use sparse_thue_core::bounds::{DEFAULT_A, DEFAULT_B};
use sparse_thue_core::census::checks::CheckKind;
use sparse_thue_core::{SparseForm, DEFAULT_PRECISION, DEFAULT_PRECISION_CEILING};

/// Sparse Thue inequalities |F(x, y)| <= h: analysis, solution census,
/// verification and form sweeps.
#[derive(Parser)]
#[command(name = "sparse-thue", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polygon, sparsity, roots, Mahler measure, discriminant and thresholds.
    Analyze {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: Common,
    },
    /// All solutions in the box max(|x|, |y|) <= X.
    Enumerate {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value = "1000")]
        bound: String,
        #[arg(long, value_enum, default_value_t = Fmt::Csv)]
        format: Fmt,
        /// Classify and attach nearest-root distances.
        #[arg(long)]
        classify: bool,
    },
    /// Census plus the verification checks; exit 1 on any violation.
    Verify {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value = "1000")]
        bound: String,
        /// Comma-separated check names (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Verify every bundled corpus form at its own h.
        #[arg(long, conflicts_with_all = ["form", "inline"])]
        corpus: bool,
        /// Emit reports with injected violations.
        #[arg(long, conflicts_with_all = ["form", "inline", "corpus"])]
        self_test: bool,
    },
    /// Verify a seeded random family and emit one row per form.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        r: u32,
        /// Minimum exponent spacing for the gapped family.
        #[arg(long, default_value_t = 2)]
        gap: u32,
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value = "200")]
        bound: String,
        #[arg(long, value_enum, default_value_t = Fmt::Csv)]
        format: Fmt,
    },
}

#[derive(Args)]
struct FormArgs {
    /// Form document path.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Form document given inline.
    #[arg(long, conflicts_with = "form")]
    inline: Option<String>,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 10)]
    h: u64,
    #[arg(long, default_value_t = DEFAULT_A)]
    a: f64,
    #[arg(long, default_value_t = DEFAULT_B)]
    b: f64,
    /// Starting precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Precision ceiling in bits.
    #[arg(long, env = CEILING_ENV, default_value_t = DEFAULT_PRECISION_CEILING)]
    ceiling: u32,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Pm1,
    Gapped,
}

enum Failure {
    Input(String),
    Failed,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn config(c: &Common, bound: &str, format: Fmt, seed: u64) -> Result<RunConfig, Failure> {
    let bound = parse_box(bound).map_err(|e| Failure::Input(e.to_string()))?;
    RunConfig {
        h: c.h,
        bound,
        a: c.a,
        b: c.b,
        precision: c.precision,
        ceiling: c.ceiling,
        format: match format {
            Fmt::Json => OutputFormat::Json,
            Fmt::Csv => OutputFormat::Csv,
        },
        seed,
        workers: c.workers.unwrap_or_else(available_workers).max(1),
    }
    .validate()
    .map_err(|e| Failure::Input(e.to_string()))
}

fn load_form(args: &FormArgs) -> Result<SparseForm, Failure> {
    let (text, origin) = match (&args.form, &args.inline) {
        (Some(path), _) => (
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
            path.display().to_string(),
        ),
        (None, Some(text)) => (text.clone(), "inline form".to_string()),
        (None, None) => return Err(Failure::Input("one of --form or --inline is required".into())),
    };
    parse_form(&text).map_err(|e| Failure::Input(format!("{origin}: {e}")))
}

fn sink(output: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match output {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: Serialize>(output: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let mut w = sink(output)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn parse_checks(names: &[String]) -> Result<Vec<CheckKind>, Failure> {
    if names.is_empty() {
        return Ok(CheckKind::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            CheckKind::from_name(n.trim()).ok_or_else(|| {
                let known: Vec<_> = CheckKind::ALL.iter().map(|k| k.name()).collect();
                Failure::Input(format!("unknown check {n:?}; known: {}", known.join(", ")))
            })
        })
        .collect()
}

#[derive(Serialize)]
struct CorpusSummary {
    name: String,
    #[serde(flatten)]
    summary: VerifySummary,
}

#[derive(Serialize)]
struct EnumerateJson {
    h: u64,
    bound: u64,
    total: usize,
    primitive: usize,
    naive_scan: bool,
    records: Vec<RecordJson>,
}

#[derive(Serialize)]
struct RecordJson {
    x: i64,
    y: i64,
    value: String,
    primitive: bool,
    class: String,
    nearest_root: Option<usize>,
    log_distance: Option<f64>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { form, common } => {
            let cfg = config(&common, "0", Fmt::Json, 0)?;
            let f = load_form(&form)?;
            let rep = analyze(&f, cfg.h, cfg.params()).map_err(|e| Failure::Input(format!("analysis failed: {e}")))?;
            emit_json(&common.output, &rep)
        }
        Command::Enumerate {
            form,
            common,
            bound,
            format,
            classify,
        } => {
            let cfg = config(&common, &bound, format, 0)?;
            let f = load_form(&form)?;
            let mut census = enumerate_parallel(&f, cfg.h, cfg.bound, cfg.workers);
            if classify {
                match sparse_thue_core::Analysis::new(&f, census.clone(), cfg.params()) {
                    Ok(a) => census = a.census,
                    Err(e) => eprintln!("warning: classification skipped: {e}"),
                }
            }
            match cfg.format {
                OutputFormat::Csv => {
                    let w = sink(&common.output)?;
                    write_census_csv(&census, w).map_err(|e| Failure::Input(e.to_string()))
                }
                OutputFormat::Json => {
                    let doc = EnumerateJson {
                        h: census.h,
                        bound: census.bound,
                        total: census.total(),
                        primitive: census.primitive().count(),
                        naive_scan: census.naive_scan,
                        records: census
                            .records
                            .iter()
                            .map(|r| RecordJson {
                                x: r.x,
                                y: r.y,
                                value: r.value.to_string(),
                                primitive: r.primitive,
                                class: r.class.to_string(),
                                nearest_root: r.nearest.map(|d| d.nearest),
                                log_distance: r.nearest.map(|d| d.ln_value.mid()),
                            })
                            .collect(),
                    };
                    emit_json(&common.output, &doc)
                }
            }
        }
        Command::Verify {
            form,
            common,
            bound,
            checks,
            corpus,
            self_test,
        } => {
            if self_test {
                let s = self_test_summary();
                emit_json(&common.output, &s)?;
                return if s.passed { Ok(()) } else { Err(Failure::Failed) };
            }
            let cfg = config(&common, &bound, Fmt::Json, 0)?;
            let kinds = parse_checks(&checks)?;
            let vc = |h| VerifyConfig {
                h,
                bound: cfg.bound,
                params: cfg.params(),
                ceiling: cfg.ceiling,
                kinds: &kinds,
                workers: cfg.workers,
            };
            if corpus {
                let mut out = Vec::new();
                for e in standard_corpus() {
                    let s = verify_form(&e.form, &vc(e.h));
                    eprintln!(
                        "{:<20} {:<28} {}",
                        e.name,
                        form_display(&e.form),
                        if s.passed { "ok" } else { "FAILED" }
                    );
                    out.push(CorpusSummary {
                        name: e.name.to_string(),
                        summary: s,
                    });
                }
                emit_json(&common.output, &out)?;
                return if out.iter().all(|c| c.summary.passed) { Ok(()) } else { Err(Failure::Failed) };
            }
            let f = load_form(&form)?;
            let s = verify_form(&f, &vc(cfg.h));
            emit_json(&common.output, &s)?;
            if s.passed {
                Ok(())
            } else {
                Err(Failure::Failed)
            }
        }
        Command::Sweep {
            family,
            count,
            seed,
            r,
            gap,
            common,
            bound,
            format,
        } => {
            let cfg = config(&common, &bound, format, seed)?;
            if r < 3 {
                return Err(Failure::Input("--r must be at least 3".into()));
            }
            let res = sweep::run(&SweepConfig {
                family: match family {
                    FamilyArg::Pm1 => Family::Pm1,
                    FamilyArg::Gapped => Family::Gapped { gap },
                },
                count,
                seed,
                r,
                h: cfg.h,
                bound: cfg.bound,
                params: cfg.params(),
                ceiling: cfg.ceiling,
                workers: cfg.workers,
            });
            match cfg.format {
                OutputFormat::Csv => {
                    let w = sink(&common.output)?;
                    sweep::write_csv(&res.rows, w).map_err(|e| Failure::Input(e.to_string()))?;
                }
                OutputFormat::Json => emit_json(&common.output, &res.summaries)?,
            }
            if res.all_passed() {
                Ok(())
            } else {
                Err(Failure::Failed)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
