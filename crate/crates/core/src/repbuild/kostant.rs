//! Independent multiplicity oracle: Kostant's alternating sum over the Weyl
//! group with the partition function of the positive roots.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Largest rank accepted by [`multiplicity_oracle`].
pub const ORACLE_MAX_RANK: usize = 3;

struct Partitions<'a> {
    roots: &'a [Vec<i64>],
    memo: HashMap<(Vec<i64>, usize), i128>,
}

impl Partitions<'_> {
    /// Number of ways to write `gamma` as a sum of positive roots drawn from
    /// `roots[k..]`.
    fn count(&mut self, gamma: &[i64], k: usize) -> i128 {
        if gamma.iter().any(|&x| x < 0) {
            return 0;
        }
        if gamma.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == self.roots.len() {
            return 0;
        }
        let key = (gamma.to_vec(), k);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0;
        let mut rest = gamma.to_vec();
        loop {
            total += self.count(&rest, k + 1);
            for (r, b) in rest.iter_mut().zip(&self.roots[k]) {
                *r -= b;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// Multiplicity of `mu` in `V_lambda` via `sum_w sign(w) P(w(lambda+rho) - (mu+rho))`.
pub fn multiplicity_oracle(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<u64> {
    let mut oracle = KostantOracle::new(rs)?;
    oracle.multiplicity(lambda, mu)
}

/// Reusable oracle state (Weyl group and partition-function memo).
pub struct KostantOracle<'a> {
    rs: &'a RootSystem,
    group: Vec<crate::rootsys::WeylElement>,
    memo: HashMap<(Vec<i64>, usize), i128>,
}

impl<'a> KostantOracle<'a> {
    pub fn new(rs: &'a RootSystem) -> Result<Self> {
        if rs.rank() > ORACLE_MAX_RANK {
            return Err(Error::Capability(format!(
                "character oracle supports rank at most {}, got {}",
                ORACLE_MAX_RANK,
                rs.rank()
            )));
        }
        Ok(KostantOracle { rs, group: rs.weyl_group(100_000)?, memo: HashMap::new() })
    }

    pub fn multiplicity(&mut self, lambda: &[i64], mu: &[i64]) -> Result<u64> {
        let rs = self.rs;
        if !rs.is_dominant(lambda) {
            return Err(Error::InvalidInput(format!("weight {:?} is not dominant", lambda)));
        }
        let top: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let bottom: Vec<i64> = mu.iter().map(|x| x + 1).collect();
        let mut parts = Partitions { roots: rs.positive_roots(), memo: std::mem::take(&mut self.memo) };
        let mut total: i128 = 0;
        for w in &self.group {
            let img = w.apply(&top);
            let diff: Vec<i64> = img.iter().zip(&bottom).map(|(a, b)| a - b).collect();
            if let Some(root) = rs.fw_to_root_int(&diff) {
                total += w.sign() as i128 * parts.count(&root, 0);
            }
        }
        self.memo = parts.memo;
        if total < 0 {
            return Err(Error::Integrity("negative alternating sum".into()));
        }
        Ok(total as u64)
    }
}
