//! Tensor products of two irreducible modules and projection onto the Cartan
//! component `V_{lambda+mu}`.

use std::collections::{BTreeMap, HashMap};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};
use crate::repbuild::module::{Gen, IrreducibleModule};
use crate::rootsys::WeylWord;

/// Vector in `V_lambda (x) V_mu`, keyed by pairs of global basis indices.
pub type TensorVec = BTreeMap<(usize, usize), Rat>;

/// `V_lambda (x) V_mu` with generators acting by the Leibniz rule.
#[derive(Debug, Clone)]
pub struct TensorModule<'a> {
    pub left: &'a IrreducibleModule,
    pub right: &'a IrreducibleModule,
}

/// Pair two modules over the same root system.
pub fn tensor_module<'a>(
    left: &'a IrreducibleModule,
    right: &'a IrreducibleModule,
    dim_cap: u128,
) -> Result<TensorModule<'a>> {
    if left.root_system() != right.root_system() {
        return Err(Error::InvalidInput("tensor factors over different root systems".into()));
    }
    let d = left.dim() as u128 * right.dim() as u128;
    if d > dim_cap {
        return Err(Error::Capacity { what: "tensor product".into(), size: d, cap: dim_cap });
    }
    Ok(TensorModule { left, right })
}

fn add_term(v: &mut TensorVec, key: (usize, usize), c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(key).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&key);
    }
}

/// Pure tensor of two sparse vectors.
pub fn pure_tensor(u: &[(usize, Rat)], v: &[(usize, Rat)]) -> TensorVec {
    let mut out = TensorVec::new();
    for (a, x) in u {
        for (b, y) in v {
            add_term(&mut out, (*a, *b), x * y);
        }
    }
    out
}

impl TensorModule<'_> {
    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn weight_of(&self, key: (usize, usize)) -> Vec<i64> {
        let a = self.left.weight_of(key.0);
        let b = self.right.weight_of(key.1);
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn apply_factor(m: &IrreducibleModule, g: Gen, idx: usize) -> Vec<(usize, Rat)> {
        let v = m.from_sparse(&[(idx, Rat::one())]);
        m.to_sparse(&m.apply(g, &v))
    }

    /// `X (u (x) v) = X u (x) v + u (x) X v`.
    pub fn apply(&self, g: Gen, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::new();
        let mut cache_l: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
        let mut cache_r: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
        for (&(a, b), c) in v {
            let xl = cache_l.entry(a).or_insert_with(|| Self::apply_factor(self.left, g, a));
            for (a2, x) in xl.iter() {
                add_term(&mut out, (*a2, b), c * x);
            }
            let xr = cache_r.entry(b).or_insert_with(|| Self::apply_factor(self.right, g, b));
            for (b2, y) in xr.iter() {
                add_term(&mut out, (a, *b2), c * y);
            }
        }
        out
    }

    /// `N (x) N` for the Tits operator `N` of a word.
    pub fn tits_word_apply(&self, word: &WeylWord, v: &TensorVec) -> TensorVec {
        let mut cache_l: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
        let mut cache_r: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
        let mut out = TensorVec::new();
        for (&(a, b), c) in v {
            let nl = cache_l
                .entry(a)
                .or_insert_with(|| {
                    let m = self.left;
                    m.to_sparse(&m.tits_word_apply(word, &m.from_sparse(&[(a, Rat::one())])))
                })
                .clone();
            let nr = cache_r.entry(b).or_insert_with(|| {
                let m = self.right;
                m.to_sparse(&m.tits_word_apply(word, &m.from_sparse(&[(b, Rat::one())])))
            });
            for (a2, x) in &nl {
                for (b2, y) in nr.iter() {
                    add_term(&mut out, (*a2, *b2), c * &(x * y));
                }
            }
        }
        out
    }

    /// Product contravariant form.
    pub fn form(&self, u: &TensorVec, v: &TensorVec) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), x) in u {
            for (&(a2, b2), y) in v {
                if self.left.weight_of(a) != self.left.weight_of(a2)
                    || self.right.weight_of(b) != self.right.weight_of(b2)
                {
                    continue;
                }
                let fl = basis_form(self.left, a, a2);
                if fl.is_zero() {
                    continue;
                }
                let fr = basis_form(self.right, b, b2);
                acc += x * &(y * &(&fl * &fr));
            }
        }
        acc
    }

    /// Tensor of the two highest weight vectors.
    pub fn top_vector(&self) -> TensorVec {
        TensorVec::from([((0, 0), Rat::one())])
    }

    /// Basis of the Cartan component `V_{lambda+mu}` in weight `nu`, obtained
    /// by lowering operators from the top vector.
    pub fn cartan_component_basis(&self, nu: &[i64]) -> Result<Vec<TensorVec>> {
        let rs = self.left.root_system();
        let top: Vec<i64> = self
            .left
            .highest_weight()
            .iter()
            .zip(self.right.highest_weight())
            .map(|(a, b)| a + b)
            .collect();
        let diff: Vec<i64> = top.iter().zip(nu).map(|(a, b)| a - b).collect();
        let Some(root) = rs.fw_to_root_int(&diff) else { return Ok(vec![]) };
        if root.iter().any(|&x| x < 0) {
            return Ok(vec![]);
        }
        let depth: i64 = root.iter().sum();
        let mut level: BTreeMap<Vec<i64>, Vec<TensorVec>> = BTreeMap::from([(top, vec![self.top_vector()])]);
        for _ in 0..depth {
            let mut next: BTreeMap<Vec<i64>, Vec<TensorVec>> = BTreeMap::new();
            for (w, basis) in &level {
                for i in 0..rs.rank() {
                    let w2: Vec<i64> = w.iter().zip(rs.simple_root_fw(i)).map(|(a, b)| a - b).collect();
                    let d2: Vec<i64> = w2.iter().zip(nu).map(|(a, b)| a - b).collect();
                    match rs.fw_to_root_int(&d2) {
                        Some(rt) if rt.iter().all(|&x| x >= 0) => {}
                        _ => continue,
                    }
                    for b in basis {
                        let fb = self.apply(Gen::F(i), b);
                        if !fb.is_empty() {
                            next.entry(w2.clone()).or_default().push(fb);
                        }
                    }
                }
            }
            level = next.into_iter().map(|(w, cands)| (w, independent(cands))).collect();
        }
        Ok(level.remove(nu).unwrap_or_default())
    }
}

fn basis_form(m: &IrreducibleModule, a: usize, b: usize) -> Rat {
    let (s, k) = m.locate(a);
    let (s2, l) = m.locate(b);
    if s != s2 {
        return Rat::zero();
    }
    m.gram(s)[k][l].clone()
}

/// Keep a maximal linearly independent subfamily, in order.
fn independent(cands: Vec<TensorVec>) -> Vec<TensorVec> {
    let mut keys: Vec<(usize, usize)> = cands.iter().flat_map(|c| c.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let mut ech = Echelon::new();
    cands
        .into_iter()
        .filter(|c| {
            let dense = keys.iter().map(|k| c.get(k).cloned().unwrap_or_else(Rat::zero)).collect();
            ech.insert(dense).is_none()
        })
        .collect()
}

/// Component of `v` in the Cartan summand `V_{lambda+mu}`: orthogonal
/// projection for the product contravariant form, weight space by weight
/// space.
pub fn cartan_project(t: &TensorModule<'_>, v: &TensorVec) -> Result<TensorVec> {
    let mut by_weight: BTreeMap<Vec<i64>, TensorVec> = BTreeMap::new();
    for (&k, c) in v {
        if !c.is_zero() {
            by_weight.entry(t.weight_of(k)).or_default().insert(k, c.clone());
        }
    }
    let mut out = TensorVec::new();
    for (nu, part) in by_weight {
        let basis = t.cartan_component_basis(&nu)?;
        if basis.is_empty() {
            continue;
        }
        let n = basis.len();
        let g: Matrix = (0..n).map(|i| (0..n).map(|j| t.form(&basis[i], &basis[j])).collect()).collect();
        let rhs: Vec<Rat> = basis.iter().map(|b| t.form(b, &part)).collect();
        let a = linalg::solve(&g, &rhs).ok_or_else(|| {
            Error::Integrity(format!("degenerate product form on weight {:?}", nu))
        })?;
        for (c, b) in a.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (&k, x) in b {
                add_term(&mut out, k, c * x);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repbuild::module::build_module;
    use crate::rootsys::RootSystem;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_zero_weight_product_is_nonzero() {
        let a1 = rs("A1");
        let m = build_module(&a1, &[2], 100).unwrap();
        let t = tensor_module(&m, &m, 1000).unwrap();
        assert_eq!(t.dim(), 9);
        let z = m.spaces()[m.zero_space().unwrap()].offset;
        let v = pure_tensor(&[(z, Rat::one())], &[(z, Rat::one())]);
        let p = cartan_project(&t, &v).unwrap();
        assert!(!p.is_empty());
        assert_eq!(cartan_project(&t, &p).unwrap(), p);
        assert!(cartan_project(&t, &TensorVec::new()).unwrap().is_empty());
        assert_eq!(cartan_project(&t, &t.top_vector()).unwrap(), t.top_vector());
    }

    #[test]
    fn a1_fundamental_square() {
        let a1 = rs("A1");
        let m = build_module(&a1, &[1], 100).unwrap();
        let t = tensor_module(&m, &m, 1000).unwrap();
        assert_eq!(t.dim(), 4);
        // the antisymmetric vector spans the trivial summand
        let anti = TensorVec::from([((0, 1), Rat::one()), ((1, 0), -Rat::one())]);
        assert!(cartan_project(&t, &anti).unwrap().is_empty());
    }

    #[test]
    fn projection_commutes_with_generators() {
        let a2 = rs("A2");
        let m1 = build_module(&a2, &[1, 0], 100).unwrap();
        let m2 = build_module(&a2, &[0, 1], 100).unwrap();
        let t = tensor_module(&m1, &m2, 1000).unwrap();
        for a in 0..m1.dim() {
            for b in 0..m2.dim() {
                let v = TensorVec::from([((a, b), Rat::one())]);
                let p = cartan_project(&t, &v).unwrap();
                for g in [Gen::E(0), Gen::E(1), Gen::F(0), Gen::F(1)] {
                    let lhs = cartan_project(&t, &t.apply(g, &v)).unwrap();
                    assert_eq!(lhs, t.apply(g, &p));
                }
            }
        }
    }
}
