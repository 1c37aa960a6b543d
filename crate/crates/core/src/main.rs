//! Command-line interface: analyze a variety file or catalog entry, print
//! catalog entries in the input grammar, or verify the whole catalog.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use osculant::harness::{render_report, run_suite, Config, Format};
use osculant::variety::{catalog, catalog_entry, parse_variety, ParamVariety};

#[derive(Parser)]
#[command(
    name = "osculant",
    version,
    about = "Exact analysis of higher osculating spaces, fundamental forms, and higher Gauss maps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(clap::Args)]
struct SuiteOpts {
    /// Highest jet order to analyze
    #[arg(long, default_value_t = 3)]
    max_order: usize,
    /// Base seed for the deterministic sampling streams
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sample points per variety
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Magnitude bound for sampled coordinates
    #[arg(long, default_value_t = 10)]
    bound: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SuiteOpts {
    fn config(&self) -> Config {
        Config {
            max_order: self.max_order,
            seed: self.seed,
            samples: self.samples,
            bound: self.bound,
            ..Config::default()
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification suite on one variety (a file path or a
    /// catalog name)
    Analyze {
        /// Variety file in the input grammar, or a built-in catalog name
        target: String,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Print the built-in varieties in the input grammar
    Catalog {
        /// Print only the names
        #[arg(long)]
        list: bool,
        /// Print a single entry
        #[arg(long)]
        name: Option<String>,
    },
    /// Run the suite over the whole catalog; exits nonzero on any FAIL
    Verify {
        /// Verify every catalog entry
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        opts: SuiteOpts,
    },
}

fn load_target(target: &str) -> Result<ParamVariety, String> {
    if Path::new(target).exists() {
        let text = fs::read_to_string(target)
            .map_err(|e| format!("cannot read '{target}': {e}"))?;
        return parse_variety(&text).map_err(|e| e.to_string());
    }
    catalog_entry(target).ok_or_else(|| {
        format!(
            "'{target}' is neither a readable file nor a catalog name (available: {})",
            catalog()
                .iter()
                .map(|v| v.name().to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    })
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write output: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Analyze { target, opts } => {
            let v = load_target(&target)?;
            let report = run_suite(&v, &opts.config()).map_err(|e| e.to_string())?;
            emit(&render_report(&report, opts.format.into()), &opts.out)?;
            Ok(if report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Catalog { list, name } => {
            let entries = catalog();
            if list {
                for v in &entries {
                    println!("{}", v.name());
                }
            } else if let Some(name) = name {
                let v = entries
                    .iter()
                    .find(|v| v.name() == name)
                    .ok_or_else(|| format!("no catalog entry named '{name}'"))?;
                println!("{}", v.render());
            } else {
                for (i, v) in entries.iter().enumerate() {
                    if i > 0 {
                        println!();
                    }
                    println!("{}", v.render());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { all, opts } => {
            if !all {
                return Err("pass --all to verify the whole catalog".into());
            }
            let cfg = opts.config();
            let format: Format = opts.format.into();
            let mut rendered = Vec::new();
            let mut failures = Vec::new();
            for v in catalog() {
                let report = run_suite(&v, &cfg).map_err(|e| e.to_string())?;
                for f in report.failures() {
                    failures.push(format!("{}: {}", report.variety, f.name));
                }
                rendered.push(render_report(&report, format));
            }
            let text = match format {
                Format::Json => format!("[\n{}]\n", join_json(&rendered)),
                Format::Markdown => rendered.join("\n---\n\n"),
            };
            emit(&text, &opts.out)?;
            if failures.is_empty() {
                eprintln!("verify: all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("verify: {} failing check(s):", failures.len());
                for f in &failures {
                    eprintln!("  {f}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn join_json(parts: &[String]) -> String {
    parts
        .iter()
        .map(|p| p.trim_end().to_string())
        .collect::<Vec<_>>()
        .join(",\n")
        + "\n"
}
