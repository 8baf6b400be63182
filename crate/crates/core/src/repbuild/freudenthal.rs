//! Weight multiplicities by Freudenthal's recursion.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Dominant weights of `V_lambda` with their multiplicities, ordered by depth
/// below `lambda` and then by fw coordinates descending.
#[derive(Debug, Clone)]
pub struct DominantCharacter {
    pub lambda: Vec<i64>,
    pub weights: Vec<(Vec<i64>, u64)>,
    index: HashMap<Vec<i64>, usize>,
}

impl DominantCharacter {
    pub fn new(rs: &RootSystem, lambda: &[i64]) -> Result<Self> {
        if !rs.is_dominant(lambda) {
            return Err(Error::InvalidInput(format!("weight {:?} is not dominant", lambda)));
        }
        let mut found: Vec<(Vec<i64>, i64)> = vec![(lambda.to_vec(), 0)];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(lambda.to_vec(), 0);
        let mut head = 0;
        while head < found.len() {
            let (nu, depth) = found[head].clone();
            head += 1;
            for (beta, beta_fw) in rs.positive_roots().iter().zip(rs.positive_roots_fw()) {
                let next: Vec<i64> = nu.iter().zip(beta_fw).map(|(a, b)| a - b).collect();
                if rs.is_dominant(&next) && !index.contains_key(&next) {
                    let h: i64 = beta.iter().sum();
                    index.insert(next.clone(), found.len());
                    found.push((next, depth + h));
                }
            }
        }
        // depth of each weight is the height of lambda - nu, independent of path
        let mut order: Vec<(Vec<i64>, i64)> = found
            .into_iter()
            .map(|(nu, _)| {
                let diff: Vec<i64> = lambda.iter().zip(&nu).map(|(a, b)| a - b).collect();
                let root = rs.fw_to_root_int(&diff).expect("lambda - nu lies in Q");
                let h = root.iter().sum();
                (nu, h)
            })
            .collect();
        order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        let index: HashMap<Vec<i64>, usize> =
            order.iter().enumerate().map(|(i, (w, _))| (w.clone(), i)).collect();

        let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let norm_top = rs.inner_fw_scaled(&shifted, &shifted);
        let mut mults: Vec<u64> = vec![0; order.len()];
        mults[0] = 1;
        for idx in 1..order.len() {
            let mu = &order[idx].0;
            let mu_rho: Vec<i64> = mu.iter().map(|x| x + 1).collect();
            let lhs = norm_top - rs.inner_fw_scaled(&mu_rho, &mu_rho);
            let mut rhs: i128 = 0;
            for (beta, beta_fw) in rs.positive_roots().iter().zip(rs.positive_roots_fw()) {
                let mut nu = mu.clone();
                loop {
                    for (a, b) in nu.iter_mut().zip(beta_fw) {
                        *a += b;
                    }
                    let dom = rs.dominant_conjugate(&nu);
                    let Some(&j) = index.get(&dom) else { break };
                    let m = mults[j] as i128;
                    // <nu, beta> scaled by det(A)
                    let ip = rs.pair_fw_root(&nu, beta) as i128 * rs.cartan_determinant() as i128;
                    rhs += 2 * ip * m;
                }
            }
            if lhs <= 0 || rhs % lhs != 0 {
                return Err(Error::Integrity(format!(
                    "Freudenthal recursion produced a non-integer at {:?}",
                    mu
                )));
            }
            mults[idx] = (rhs / lhs) as u64;
        }
        Ok(DominantCharacter {
            lambda: lambda.to_vec(),
            weights: order.into_iter().map(|(w, _)| w).zip(mults).collect(),
            index,
        })
    }

    /// Multiplicity of an arbitrary integral weight.
    pub fn multiplicity(&self, rs: &RootSystem, mu: &[i64]) -> u64 {
        let dom = rs.dominant_conjugate(mu);
        self.index.get(&dom).map_or(0, |&i| self.weights[i].1)
    }

    /// Every weight of the module with its multiplicity (orbits expanded).
    pub fn all_weights(&self, rs: &RootSystem) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (w, m) in &self.weights {
            let mut orbit = vec![w.clone()];
            let mut seen: std::collections::HashSet<Vec<i64>> = orbit.iter().cloned().collect();
            let mut head = 0;
            while head < orbit.len() {
                let v = orbit[head].clone();
                head += 1;
                for i in 0..rs.rank() {
                    if v[i] > 0 {
                        let mut u = v.clone();
                        rs.reflect_fw(i, &mut u);
                        if seen.insert(u.clone()) {
                            orbit.push(u);
                        }
                    }
                }
            }
            out.extend(orbit.into_iter().map(|o| (o, *m)));
        }
        out
    }

    pub fn dimension(&self, rs: &RootSystem) -> u128 {
        self.all_weights(rs).iter().map(|(_, m)| *m as u128).sum()
    }
}

/// Multiplicity of `mu` in `V_lambda`; zero outside the weights of the module.
pub fn multiplicity_freudenthal(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> Result<u64> {
    let ch = DominantCharacter::new(rs, lambda)?;
    Ok(ch.multiplicity(rs, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::weyl_dimension;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_examples() {
        let a2 = rs("A2");
        assert_eq!(multiplicity_freudenthal(&a2, &[1, 1], &[0, 0]).unwrap(), 2);
        assert_eq!(multiplicity_freudenthal(&a2, &[3, 1], &[3, 1]).unwrap(), 1);
        assert_eq!(multiplicity_freudenthal(&a2, &[1, 0], &[0, 0]).unwrap(), 0);
        assert!(multiplicity_freudenthal(&a2, &[-1, 0], &[0, 0]).is_err());
    }

    #[test]
    fn dimensions_match_weyl() {
        for (t, lam) in [("B2", vec![2, 1]), ("G2", vec![1, 1]), ("A3", vec![1, 2, 1]), ("C3", vec![0, 1, 1])] {
            let r = rs(t);
            let ch = DominantCharacter::new(&r, &lam).unwrap();
            assert_eq!(ch.dimension(&r), weyl_dimension(&r, &lam).unwrap(), "{} {:?}", t, lam);
        }
    }

    #[test]
    fn e6_adjoint_zero_weight() {
        let e6 = rs("E6");
        assert_eq!(multiplicity_freudenthal(&e6, &[0, 1, 0, 0, 0, 0], &[0; 6]).unwrap(), 6);
    }
}
