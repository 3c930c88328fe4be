//! Individual checks. A [`Check`] carries every parameter it needs, so a
//! serialized record can be replayed on its own.

use eisenkron::arch::{gram_schmidt_explicit, section_value_exponents, torus_row_matrix, RealTorusPoint};
use eisenkron::coset_geometry::{enumerate_orbits, stabilizer_bruteforce, verify_orbit_lemma};
use eisenkron::exact_algebra::{rat, ratio, rational_from_str, Rational};
use eisenkron::matgroup::{kronecker, matrix_to_json, modulus_compatibility};
use eisenkron::zeta::{verify_gj_identity, verify_local_identity, SatakeParams};
use eisenkron::{Error, ExactMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The enumeration would exceed the configured budget.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Check {
    Orbits { m: usize, n: usize, q: u64, budget: u64 },
    OrbitLemma { m: usize, n: usize, q: u64, seed: u64, trials: usize },
    Stabilizer { m: usize, n: usize, r: usize, q: u64, budget: u64 },
    Kronecker { m: usize, n: usize, seed: u64, trials: usize },
    Modulus { m: usize, n: usize, seed: u64, trials: usize },
    Gj { q: u64, alphas: Vec<String>, order: usize },
    Local { m: usize, q: u64, alphas: Vec<String>, order: usize },
    Arch { m: usize, n: usize, t: Vec<f64>, tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
}

impl Outcome {
    fn pass(payload: Value) -> Self {
        Outcome { status: Status::Pass, payload }
    }

    fn fail(payload: Value) -> Self {
        Outcome { status: Status::Fail, payload }
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { needed, budget } => Outcome {
                status: Status::BudgetExceeded,
                payload: json!({ "needed": needed.to_string(), "budget": budget.to_string() }),
            },
            other => Outcome::fail(json!({ "error": other.to_string() })),
        }
    }
}

fn parse_alphas(alphas: &[String], q: u64) -> Result<SatakeParams, Error> {
    let values: Vec<Rational> = alphas.iter().map(|a| rational_from_str(a)).collect::<Result<_, _>>()?;
    SatakeParams::from_rationals(&values, q)
}

fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ExactMatrix<Rational> {
    ExactMatrix::from_fn(rows, cols, &rat(0), |_, _| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
}

fn random_invertible(k: usize, rng: &mut ChaCha8Rng) -> ExactMatrix<Rational> {
    loop {
        let x = random_matrix(k, k, rng);
        if x.is_invertible() {
            return x;
        }
    }
}

impl Check {
    pub fn run(&self) -> Outcome {
        self.try_run().unwrap_or_else(Outcome::from_error)
    }

    fn try_run(&self) -> Result<Outcome, Error> {
        match *self {
            Check::Orbits { m, n, q, budget } => {
                let table = enumerate_orbits(m, n, q, budget as u128)?;
                let mut eps = table.epsilon_orbits.clone();
                eps.sort_unstable();
                eps.dedup();
                let payload = json!({
                    "orbits": table.orbits.len(),
                    "sizes": table.sizes(),
                    "ranks": table.orbits.iter().map(|o| o.rank).collect::<Vec<_>>(),
                    "epsilon_orbits": table.epsilon_orbits,
                });
                let ok = table.orbits.len() == n && eps.len() == n;
                Ok(if ok { Outcome::pass(payload) } else { Outcome::fail(payload) })
            }
            Check::OrbitLemma { m, n, q, seed, trials } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let ok = verify_orbit_lemma(m, n, q, trials, &mut rng)?;
                let payload = json!({ "trials": trials });
                Ok(if ok { Outcome::pass(payload) } else { Outcome::fail(payload) })
            }
            Check::Stabilizer { m, n, r, q, budget } => {
                let check = stabilizer_bruteforce(m, n, r, q, budget as u128)?;
                if check.matches() {
                    return Ok(Outcome::pass(json!({ "order": check.found.len(), "pairs": check.pairs_examined.to_string() })));
                }
                let extra = check.found.difference(&check.predicted).next();
                let missing = check.predicted.difference(&check.found).next();
                Ok(Outcome::fail(json!({
                    "found": check.found.len(),
                    "predicted": check.predicted.len(),
                    "unpredicted_element": extra,
                    "missing_element": missing,
                })))
            }
            Check::Kronecker { m, n, seed, trials } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for trial in 0..trials {
                    let (h1, h2) = (random_invertible(m, &mut rng), random_invertible(m, &mut rng));
                    let (g1, g2) = (random_invertible(n, &mut rng), random_invertible(n, &mut rng));
                    let k1 = kronecker(&h1, &g1)?;
                    let laws = [
                        ("mixed_product", &k1 * &kronecker(&h2, &g2)? == kronecker(&(&h1 * &h2), &(&g1 * &g2))?),
                        ("transpose", k1.transpose() == kronecker(&h1.transpose(), &g1.transpose())?),
                        ("determinant", k1.det()? == num_traits::pow(h1.det()?, n) * num_traits::pow(g1.det()?, m)),
                        ("star", k1.star()? == kronecker(&h1.star()?, &g1.star()?)?),
                    ];
                    if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
                        return Ok(Outcome::fail(json!({
                            "trial": trial,
                            "law": law,
                            "h": [matrix_to_json(&h1), matrix_to_json(&h2)],
                            "g": [matrix_to_json(&g1), matrix_to_json(&g2)],
                        })));
                    }
                }
                Ok(Outcome::pass(json!({ "trials": trials })))
            }
            Check::Modulus { m, n, seed, trials } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for trial in 0..trials {
                    let a = random_invertible(m - n, &mut rng);
                    let b = random_matrix(m - n, n, &mut rng);
                    let d = random_invertible(n, &mut rng);
                    let p = ExactMatrix::from_blocks(&a, &b, &ExactMatrix::zeros(n, m - n, &rat(0)), &d)?;
                    let check = modulus_compatibility(m, n, &p)?;
                    if !check.holds() {
                        return Ok(Outcome::fail(json!({
                            "trial": trial,
                            "p": matrix_to_json(&p),
                            "alpha": check.alpha.to_string(),
                            "lhs": check.lhs.to_string(),
                            "rhs": check.rhs.to_string(),
                        })));
                    }
                }
                Ok(Outcome::pass(json!({ "trials": trials })))
            }
            Check::Gj { q, ref alphas, order } => {
                let params = parse_alphas(alphas, q)?;
                match verify_gj_identity(&params, order) {
                    Ok(report) => Ok(Outcome::pass(json!({ "cells": report.ledger.rows.len() }))),
                    Err(e @ Error::IdentityFailed { .. }) => Ok(Outcome::fail(json!({ "mismatch": e.to_string() }))),
                    Err(e) => Err(e),
                }
            }
            Check::Local { m, q, ref alphas, order } => {
                let params = parse_alphas(alphas, q)?;
                let report = match verify_local_identity(m, &params, order) {
                    Ok(r) => r,
                    Err(e @ Error::IdentityFailed { .. }) => {
                        return Ok(Outcome::fail(json!({ "mismatch": e.to_string() })))
                    }
                    Err(e) => return Err(e),
                };
                let b = report.variant_b.first_mismatch;
                let payload = json!({
                    "variant_a_matches": report.variant_a.matches(),
                    "variant_a_first_mismatch": report.variant_a.first_mismatch,
                    "variant_b_first_mismatch": b,
                    "informational": b.map(|k| format!(
                        "denominator L(m(s+1/2), omega) first diverges at X^{k} (m = {m})"
                    )),
                });
                Ok(if report.variant_a.matches() { Outcome::pass(payload) } else { Outcome::fail(payload) })
            }
            Check::Arch { m, n, ref t, tolerance } => {
                let point = RealTorusPoint::new(t.clone())?;
                let gs = gram_schmidt_explicit(&point);
                let y = torus_row_matrix(&point);
                let gs_residual = (&gs.y_p * &gs.y_k - &y).norm() / y.norm();
                let exps = section_value_exponents(m, n, &point);
                let payload = match &exps {
                    Ok(e) => json!({
                        "gram_schmidt_residual": gs_residual,
                        "alpha": e.alpha,
                        "predicted_alpha": e.predicted_alpha,
                        "delta": e.delta,
                        "predicted_delta": e.predicted_delta,
                    }),
                    Err(err) => json!({ "gram_schmidt_residual": gs_residual, "error": err.to_string() }),
                };
                let ok = gs_residual <= tolerance
                    && exps.as_ref().is_ok_and(|e| {
                        (e.alpha - e.predicted_alpha).abs() <= tolerance * e.predicted_alpha
                            && (e.delta - e.predicted_delta).abs() <= tolerance * e.predicted_delta
                    });
                Ok(if ok { Outcome::pass(payload) } else { Outcome::fail(payload) })
            }
        }
    }

    /// Stable identifier built from the parameters.
    pub fn id(&self) -> String {
        match self {
            Check::Orbits { m, n, q, .. } => format!("orbits/m={m},n={n},q={q}"),
            Check::OrbitLemma { m, n, q, seed, .. } => format!("orbit-lemma/m={m},n={n},q={q},seed={seed}"),
            Check::Stabilizer { m, n, r, q, .. } => format!("stabilizer/m={m},n={n},r={r},q={q}"),
            Check::Kronecker { m, n, seed, .. } => format!("kronecker/m={m},n={n},seed={seed}"),
            Check::Modulus { m, n, seed, .. } => format!("modulus/m={m},n={n},seed={seed}"),
            Check::Gj { q, alphas, .. } => format!("gj/q={q},alpha=({})", alphas.join(",")),
            Check::Local { m, q, alphas, .. } => format!("local/m={m},q={q},alpha=({})", alphas.join(",")),
            Check::Arch { m, n, t, .. } => {
                let t: Vec<String> = t.iter().map(|x| format!("{x:.6}")).collect();
                format!("arch/m={m},n={n},t=({})", t.join(","))
            }
        }
    }
}
