use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matgroup::epsilon_rep;

use super::ff::Fq;

/// Default cap on the number of projective points enumerated.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub orbit_id: usize,
    pub size: u64,
    pub rank: usize,
    /// `r` such that the coset of `ε_r` lies in this orbit.
    pub contains_epsilon_r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTable {
    pub m: usize,
    pub n: usize,
    pub q: u64,
    /// Number of projective points `(q^{mn} - 1)/(q - 1)`.
    pub points: u64,
    pub orbits: Vec<OrbitRow>,
    /// Smallest label code in each orbit, parallel to `orbits`.
    pub representatives: Vec<u64>,
    /// Orbit index of `ε_r` for each `r`; empty when `n > m`.
    pub epsilon_orbits: Vec<usize>,
}

impl OrbitTable {
    pub fn sizes(&self) -> Vec<u64> {
        self.orbits.iter().map(|o| o.size).collect()
    }

    /// `orbit_id,size,rank,contains_epsilon_r`, one row per orbit.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.orbits {
            w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("orbit table serializes")
    }
}

struct Space<'a> {
    fq: &'a Fq,
    m: usize,
    n: usize,
    zeta: u32,
}

impl Space<'_> {
    fn decode(&self, mut code: u64) -> Vec<u32> {
        let len = self.m * self.n;
        let q = self.fq.q as u64;
        let mut v = vec![0u32; len];
        for slot in v.iter_mut().rev() {
            *slot = (code % q) as u32;
            code /= q;
        }
        v
    }

    fn encode_normalized(&self, v: &mut [u32]) -> u64 {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero point");
        let s = self.fq.inv(lead);
        v.iter_mut().fold(0u64, |acc, x| {
            *x = self.fq.mul(*x, s);
            acc * self.fq.q as u64 + *x as u64
        })
    }

    /// Images of a point under the generators of `GL(m) × GL(n)` acting by
    /// `R ↦ h^T R g`: row and column transvections and scaling of the first
    /// row and column by a primitive root.
    fn neighbors(&self, code: u64) -> Vec<u64> {
        let (m, n) = (self.m, self.n);
        let v = self.decode(code);
        let mut out = Vec::with_capacity(m * m + n * n + 2);
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let mut w = v.clone();
                    for c in 0..n {
                        w[i * n + c] = self.fq.add(w[i * n + c], v[j * n + c]);
                    }
                    out.push(self.encode_normalized(&mut w));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut w = v.clone();
                    for r in 0..m {
                        w[r * n + i] = self.fq.add(w[r * n + i], v[r * n + j]);
                    }
                    out.push(self.encode_normalized(&mut w));
                }
            }
        }
        let mut w = v.clone();
        for x in w.iter_mut().take(n) {
            *x = self.fq.mul(*x, self.zeta);
        }
        out.push(self.encode_normalized(&mut w));
        let mut w = v;
        for r in 0..m {
            w[r * n] = self.fq.mul(w[r * n], self.zeta);
        }
        out.push(self.encode_normalized(&mut w));
        out
    }

    fn rank(&self, code: u64) -> usize {
        self.fq.rank(&self.decode(code), self.m, self.n)
    }

    fn is_normalized(&self, code: u64) -> bool {
        let v = self.decode(code);
        v.iter().find(|&&x| x != 0) == Some(&1)
    }
}

/// Partitions the projective space of coset labels into orbits of
/// `t(GL_m(F_q), GL_n(F_q))` by breadth-first closure under generators.
///
/// The rank of the reshaped label is checked to be constant on every orbit.
/// The representatives `ε_r` exist only for `n <= m`; for `n > m` the
/// orbits are still enumerated but no `ε_r` is located.
pub fn enumerate_orbits(m: usize, n: usize, q: u64, budget: u128) -> Result<OrbitTable> {
    if m == 0 || n == 0 {
        return Err(Error::BadShape(format!("need m, n >= 1, got (m, n) = ({m}, {n})")));
    }
    let fq = Fq::new(q)?;
    let len = (m * n) as u32;
    let total = (q as u128).checked_pow(len).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget,
    })?;
    let points = (total - 1) / (q as u128 - 1);
    if points > budget || total > u64::MAX as u128 {
        return Err(Error::BudgetExceeded { needed: points, budget });
    }
    let space = Space { fq: &fq, m, n, zeta: fq.primitive_root() };
    let total = total as u64;
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let is_set = |bits: &Vec<u64>, c: u64| bits[(c / 64) as usize] >> (c % 64) & 1 == 1;

    let mut orbits = Vec::new();
    let mut representatives = Vec::new();
    let mut member_orbit: Vec<(u64, usize)> = Vec::new();
    for start in 1..total {
        if is_set(&visited, start) || !space.is_normalized(start) {
            continue;
        }
        let id = orbits.len();
        let rank = space.rank(start);
        visited[(start / 64) as usize] |= 1 << (start % 64);
        let mut frontier = vec![start];
        let mut size = 0u64;
        while !frontier.is_empty() {
            size += frontier.len() as u64;
            let ranks_ok = frontier.par_iter().all(|&c| space.rank(c) == rank);
            if !ranks_ok {
                return Err(Error::AssertionFailed(format!(
                    "orbit {id} of ({m},{n},{q}) mixes ranks"
                )));
            }
            let mut next: Vec<u64> = frontier
                .par_iter()
                .flat_map_iter(|&c| space.neighbors(c))
                .collect();
            next.par_sort_unstable();
            next.dedup();
            next.retain(|&c| !is_set(&visited, c));
            for &c in &next {
                visited[(c / 64) as usize] |= 1 << (c % 64);
            }
            member_orbit.extend(frontier.iter().map(|&c| (c, id)));
            frontier = next;
        }
        orbits.push(OrbitRow { orbit_id: id, size, rank, contains_epsilon_r: None });
        representatives.push(start);
    }
    member_orbit.sort_unstable();

    let field = crate::exact_algebra::PrimeField::new(q)?;
    let mut epsilon_orbits = Vec::with_capacity(n);
    for r in 0..if n <= m { n } else { 0 } {
        let eps = epsilon_rep(m, n, r, &field.one())?;
        let code = super::coset_label(&eps)?.code();
        let idx = member_orbit
            .binary_search_by_key(&code, |&(c, _)| c)
            .map_err(|_| Error::AssertionFailed(format!("label of ε_{r} not enumerated")))?;
        let id = member_orbit[idx].1;
        epsilon_orbits.push(id);
        if orbits[id].contains_epsilon_r.is_none() {
            orbits[id].contains_epsilon_r = Some(r);
        }
    }
    Ok(OrbitTable {
        m,
        n,
        q,
        points: points as u64,
        orbits,
        representatives,
        epsilon_orbits,
    })
}
