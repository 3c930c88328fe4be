//! Batch runner for the `eisenkron` verification suites.
//!
//! A [`RunConfig`] names a suite and a parameter grid. [`plan`] expands it
//! into a canonical list of [`Check`]s, [`run_suite`] executes them on a
//! worker pool and merges the results in plan order, and [`emit`] renders
//! the [`Report`] as JSON, CSV or Markdown. With timings off, the same
//! config and seed give byte-identical output.

pub mod checks;
pub mod config;
pub mod emit;
pub mod error;
pub mod report;

use std::collections::BTreeSet;
use std::time::Instant;

use eisenkron::exact_algebra::rational_from_str;
use eisenkron::zeta::{local_integral_with_height, random_regular_params, zeta_gj_with_ledger, SatakeParams, TorusSummandLedger};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use checks::{Check, Outcome, Status};
pub use config::{Format, Grid, RunConfig, Suite};
pub use emit::emit;
pub use error::{CliError, CliResult};
pub use report::{CheckRecord, Report, Summary, SCHEMA_VERSION};

/// Checks of `config.suite` in canonical order, paired with their suite.
///
/// Each concrete suite draws from its own ChaCha8 stream of `config.seed`,
/// so a suite plans identically whether run alone or inside `all`.
pub fn plan(config: &RunConfig) -> CliResult<Vec<(Suite, Check)>> {
    config.validate()?;
    let shapes: BTreeSet<(usize, usize)> = config.grid.shapes.iter().copied().collect();
    let fields: BTreeSet<u64> = config.grid.fields.iter().copied().collect();
    let samples = config.grid.samples;
    let budget = config.budget;
    let mut out = Vec::new();
    for suite in config.suite.expand() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(suite as u64);
        let mut push = |c: Check| out.push((suite, c));
        match suite {
            Suite::Cosets => {
                for &(m, n) in &shapes {
                    for &q in &fields {
                        push(Check::Orbits { m, n, q, budget });
                        push(Check::OrbitLemma { m, n, q, seed: rng.gen(), trials: 10 * samples });
                    }
                }
            }
            Suite::Stabilizers => {
                for &(m, n) in &shapes {
                    for &q in &fields {
                        for r in 0..n {
                            push(Check::Stabilizer { m, n, r, q, budget });
                        }
                    }
                }
            }
            Suite::KronProps => {
                for &(m, n) in &shapes {
                    push(Check::Kronecker { m, n, seed: rng.gen(), trials: 10 * samples });
                    push(Check::Modulus { m, n, seed: rng.gen(), trials: 10 * samples });
                }
            }
            Suite::Gj => {
                let ns: BTreeSet<usize> = shapes.iter().map(|&(_, n)| n).collect();
                for &n in &ns {
                    for &q in &fields {
                        for _ in 0..samples {
                            let alphas = alpha_strings(&random_regular_params(n, q, &mut rng)?);
                            push(Check::Gj { q, alphas, order: config.order });
                        }
                    }
                }
            }
            Suite::LocalIdentity => {
                for &(m, n) in &shapes {
                    for &q in &fields {
                        for _ in 0..samples {
                            let alphas = alpha_strings(&random_regular_params(n, q, &mut rng)?);
                            push(Check::Local { m, q, alphas, order: config.order });
                        }
                    }
                }
            }
            Suite::ArchIwasawa => {
                for &(m, n) in &shapes {
                    for _ in 0..samples {
                        let mut t: Vec<f64> = (1..n).map(|_| rng.gen_range(0.05..=1.0)).collect();
                        t.sort_by(f64::total_cmp);
                        push(Check::Arch { m, n, t, tolerance: config.tolerance });
                    }
                }
            }
            Suite::All => unreachable!("expand() yields concrete suites"),
        }
    }
    Ok(out)
}

fn alpha_strings(params: &SatakeParams) -> Vec<String> {
    params.alphas().iter().map(|a| a.rational_part().to_string()).collect()
}

/// Runs every planned check on the rayon pool; records keep plan order.
pub fn run_suite(config: &RunConfig) -> CliResult<Report> {
    let planned = plan(config)?;
    let records: Vec<CheckRecord> = planned
        .into_par_iter()
        .enumerate()
        .map(|(index, (suite, check))| {
            let start = Instant::now();
            let outcome = check.run();
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            CheckRecord {
                id: format!("{}/{index:04}/{}", suite.name(), check.id()),
                suite,
                params: check,
                status: outcome.status,
                payload: outcome.payload,
                wall_time_ms: config.timings.then_some(elapsed),
            }
        })
        .collect();
    Ok(Report::new(config.suite, config.seed, config.order, records))
}

/// Replays a single serialized record.
pub fn rerun(record: &CheckRecord) -> Outcome {
    record.params.run()
}

/// Identities with a torus-sum ledger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LedgerIdentity {
    Gj,
    Local { m: usize },
}

/// Parses comma-separated rationals such as `2,-1/3`.
pub fn parse_satake(alphas: &str, q: u64) -> CliResult<SatakeParams> {
    let values = alphas
        .split(',')
        .map(|a| rational_from_str(a.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    SatakeParams::from_rationals(&values, q).map_err(|e| CliError::Config(e.to_string()))
}

/// The per-cell ledger of a torus sum, complete to `X^order`.
pub fn identity_ledger(identity: LedgerIdentity, params: &SatakeParams, order: usize) -> CliResult<TorusSummandLedger> {
    Ok(match identity {
        LedgerIdentity::Gj => zeta_gj_with_ledger(params, order)?.1,
        LedgerIdentity::Local { m } => local_integral_with_height(m, params, order, order.div_ceil(m) as u32)?,
    })
}
