use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eisenkron::coset_geometry::enumerate_orbits;
use eisenkron_cli::{emit, identity_ledger, parse_satake, run_suite, CliError, CliResult, Format, LedgerIdentity, RunConfig, Suite};

#[derive(Parser, Debug)]
#[command(name = "eisenkron", version, about = "Run exact verification suites and emit reports")]
struct Cli {
    /// TOML configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Series truncation order N.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json, csv or markdown.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a suite: cosets, stabilizers, kron-props, gj, local-identity, arch-iwasawa or all.
    Verify {
        suite: String,
        /// Record wall times (output is then no longer byte-stable).
        #[arg(long)]
        timings: bool,
    },
    /// Per-cell torus-sum ledger of `gj` or `local`.
    Ledger {
        identity: String,
        /// Comma-separated rational Satake parameters.
        #[arg(long, default_value = "2,3")]
        alphas: String,
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Kronecker width for `local`.
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Orbit table of GL_m × GL_n on the last-row cosets over F_q.
    Orbits { m: usize, n: usize, q: u64 },
}

fn load_config(cli: &Cli) -> CliResult<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(order) = cli.order {
        config.order = order;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out = Some(out.clone());
    }
    if let Some(format) = &cli.format {
        config.format = Format::parse(format)?;
    }
    config.validate()?;
    Ok(config)
}

fn write_output(text: &str, config: &RunConfig) -> CliResult<()> {
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<bool> {
    let mut config = load_config(cli)?;
    match &cli.command {
        Command::Verify { suite, timings } => {
            config.suite = Suite::parse(suite)?;
            config.timings |= *timings;
            let report = run_suite(&config)?;
            let text = emit(&report, config.format, config.out.as_deref())?;
            if config.out.is_none() {
                print!("{text}");
            }
            let s = &report.summary;
            eprintln!("{}: {} passed, {} failed, {} over budget", config.suite.name(), s.passed, s.failed, s.budget_exceeded);
            for record in report.failures() {
                eprintln!("FAIL {}: {}", record.id, record.payload);
            }
            Ok(report.passed())
        }
        Command::Ledger { identity, alphas, q, m } => {
            let params = parse_satake(alphas, *q)?;
            let which = match identity.as_str() {
                "gj" => LedgerIdentity::Gj,
                "local" if *m >= params.n() => LedgerIdentity::Local { m: *m },
                "local" => return Err(CliError::Config(format!("local ledger needs m >= n, got m = {m}"))),
                other => return Err(CliError::Config(format!("unknown identity `{other}` (gj or local)"))),
            };
            let ledger = identity_ledger(which, &params, config.order)?;
            let text = match config.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&ledger.to_json()).map_err(|e| CliError::Serialize(e.to_string()))?),
                _ => ledger.to_csv()?,
            };
            write_output(&text, &config)?;
            Ok(true)
        }
        Command::Orbits { m, n, q } => {
            let table = enumerate_orbits(*m, *n, *q, config.budget as u128).map_err(|e| match e {
                eisenkron::Error::BudgetExceeded { .. } => CliError::Library(e),
                other => CliError::Config(other.to_string()),
            })?;
            let text = match config.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&table.to_json()).map_err(|e| CliError::Serialize(e.to_string()))?),
                Format::Csv => table.to_csv()?,
                Format::Markdown => {
                    let mut s = "| orbit | size | rank | contains ε_r |\n|---|---|---|---|\n".to_string();
                    for row in &table.orbits {
                        let eps = row.contains_epsilon_r.map(|r| r.to_string()).unwrap_or_else(|| "-".into());
                        s.push_str(&format!("| {} | {} | {} | {eps} |\n", row.orbit_id, row.size, row.rank));
                    }
                    s
                }
            };
            write_output(&text, &config)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
