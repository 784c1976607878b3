use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stieltjes_cli::compute::{compute, Target};
use stieltjes_cli::report::{build_report, render_cases, render_report, verify};
use stieltjes_cli::{exit, exit_code_for_error, verify_exit_code, Format, RunConfig};
use stieltjes_core::audit::{registry, Family};
use stieltjes_core::XReal;

#[derive(Parser, Debug)]
#[command(
    name = "stieltjes",
    version,
    about = "Stieltjes constants, Omega-kernel integrals and an identity auditor"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in bits [default: $STIELTJES_PREC, else 256].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(64..))]
    prec: Option<u32>,
    /// Replace every case tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format [default: json for `report`, text otherwise].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (1 runs sequentially).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(alias = "RIGOROUS")]
    Rigorous,
    #[value(alias = "SECTION2_AUDIT", alias = "section2_audit")]
    Section2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Rigorous => Family::Rigorous,
            FamilyArg::Section2 => Family::Section2Audit,
        }
    }
}

#[derive(Args, Debug)]
struct Filter {
    /// Case id, exact or without the `:params` suffix. Repeatable.
    #[arg(long = "id")]
    ids: Vec<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a single quantity.
    Compute {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Argument of gamma_n(u): integer, `a/b` or decimal.
        #[arg(long, default_value = "1")]
        u: String,
    },
    /// Evaluate identity cases and print one line per case.
    Verify {
        #[command(flatten)]
        filter: Filter,
    },
    /// Full report: constants, adjudication and all selected cases.
    Report {
        #[command(flatten)]
        filter: Filter,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List registered case ids.
    List {
        #[command(flatten)]
        filter: Filter,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> i32 {
    let res = match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match res {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit::IO
        }
    }
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

/// `--prec` wins over `STIELTJES_PREC`, which wins over the default.
fn resolve_precision(flag: Option<u32>) -> Result<u32, String> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PREC_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("{PREC_ENV}={v} is not a bit count")),
        Err(_) => Ok(RunConfig::default().precision_bits),
    }
}

const PREC_ENV: &str = "STIELTJES_PREC";

fn run(cli: Cli) -> i32 {
    let precision_bits = match resolve_precision(cli.common.prec) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::USAGE;
        }
    };
    let mut cfg = RunConfig {
        precision_bits,
        tolerance: cli.common.tol,
        format: cli.common.format.unwrap_or(match cli.command {
            Command::Report { .. } => Format::Json,
            _ => Format::Text,
        }),
        jobs: cli.common.jobs,
        ..RunConfig::default()
    };
    let set_filter = |cfg: &mut RunConfig, f: Filter| {
        cfg.ids = f.ids;
        cfg.family = f.family.map(Family::from);
    };
    match cli.command {
        Command::Compute { target, n, u } => {
            if let Err(e) = cfg.validate() {
                eprintln!("error: {e}");
                return exit::USAGE;
            }
            match run_in_pool(cfg.jobs, || compute(target, n, &u, &cfg)) {
                Ok(values) => {
                    let text = match cfg.format {
                        Format::Json => serde_json::to_string_pretty(&values).expect("serializable") + "\n",
                        Format::Csv | Format::Text => values
                            .iter()
                            .map(|v| {
                                let err = v
                                    .error_estimate
                                    .as_deref()
                                    .map(|e| format!("  error {e}"))
                                    .unwrap_or_default();
                                format!("{} = {}{}  work {}\n", v.label, v.value, err, v.work)
                            })
                            .collect(),
                    };
                    emit(&text, None)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for_error(&e)
                }
            }
        }
        Command::Verify { filter } => {
            set_filter(&mut cfg, filter);
            if let Err(e) = cfg.validate() {
                eprintln!("error: {e}");
                return exit::USAGE;
            }
            match run_in_pool(cfg.jobs, || verify(&cfg)) {
                Ok(reports) => {
                    let text = render_cases(&reports, cfg.format, XReal::decimal_digits_for(cfg.precision_bits));
                    let code = emit(&text, None);
                    if code != exit::OK {
                        return code;
                    }
                    verify_exit_code(reports.iter().map(|r| (r.family, r.verdict)))
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for_error(&e)
                }
            }
        }
        Command::Report { filter, out } => {
            set_filter(&mut cfg, filter);
            if let Err(e) = cfg.validate() {
                eprintln!("error: {e}");
                return exit::USAGE;
            }
            match run_in_pool(cfg.jobs, || build_report(&cfg)) {
                Ok(doc) => emit(&render_report(&doc, cfg.format), out.as_ref()),
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for_error(&e)
                }
            }
        }
        Command::List { filter } => {
            set_filter(&mut cfg, filter);
            let text: String = registry()
                .iter()
                .filter(|c| cfg.family.is_none_or(|f| f == c.family))
                .filter(|c| cfg.ids.is_empty() || cfg.ids.iter().any(|i| *i == c.id || i == c.base_id()))
                .map(|c| format!("{:<36} {:<15} {}\n", c.id, c.family, c.anchor))
                .collect();
            emit(&text, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli) as u8)
}
