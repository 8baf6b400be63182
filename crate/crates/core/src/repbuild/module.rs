//! Explicit weight-basis models of irreducible highest-weight modules.
//!
//! The module is grown depth by depth below the highest weight. Candidates
//! for a weight space are the vectors `F_i u` with `u` a basis vector one
//! level up. A vector of weight `mu != lambda` vanishes in the irreducible
//! quotient exactly when every `E_j` kills it, so each candidate is recorded
//! by its "signature" `(E_j F_i u)_j`, computed from the commutation rule
//! `E_j F_i u = F_i E_j u + delta_ij H_i u`. An echelon basis of signatures
//! picks the basis; dependent candidates give the remaining columns of `F_i`.

use std::collections::{BTreeMap, HashMap};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};
use crate::repbuild::freudenthal::DominantCharacter;
use crate::rootsys::{weyl_dimension, RootSystem, WeylWord};

/// Default cap on module dimension.
pub const DEFAULT_DIM_CAP: u128 = 5000;

/// A weight space of the module: weight in fw coordinates, depth below the
/// highest weight, dimension and global basis offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub weight: Vec<i64>,
    pub depth: usize,
    pub dim: usize,
    pub offset: usize,
}

/// Generator restricted to one weight space: `mat` is `dim(target) x dim(source)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub target: usize,
    pub mat: Matrix,
}

/// Which generator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    E(usize),
    F(usize),
    H(usize),
}

/// Vector stored by weight-space blocks.
pub type BlockVec = BTreeMap<usize, Vec<Rat>>;

#[derive(Debug, Clone)]
pub struct IrreducibleModule {
    rs: RootSystem,
    lambda: Vec<i64>,
    spaces: Vec<Space>,
    index: HashMap<Vec<i64>, usize>,
    e: Vec<Vec<Option<Block>>>,
    f: Vec<Vec<Option<Block>>>,
    gram: Vec<Matrix>,
    dim: usize,
}

/// Build `V_lambda` and verify its defining relations.
pub fn build_module(rs: &RootSystem, lambda: &[i64], dim_cap: u128) -> Result<IrreducibleModule> {
    let d = weyl_dimension(rs, lambda)?;
    if d > dim_cap {
        return Err(Error::Capacity { what: format!("module V{:?}", lambda), size: d, cap: dim_cap });
    }
    let m = IrreducibleModule::construct(rs, lambda)?;
    m.verify()?;
    Ok(m)
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn sub_assign(a: &mut Matrix, b: &Matrix) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Rat::is_zero))
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

impl IrreducibleModule {
    fn construct(rs: &RootSystem, lambda: &[i64]) -> Result<Self> {
        let r = rs.rank();
        let mut m = IrreducibleModule {
            rs: rs.clone(),
            lambda: lambda.to_vec(),
            spaces: vec![Space { weight: lambda.to_vec(), depth: 0, dim: 1, offset: 0 }],
            index: HashMap::from([(lambda.to_vec(), 0)]),
            e: vec![vec![None]; r],
            f: vec![vec![None]; r],
            gram: vec![vec![vec![Rat::one()]]],
            dim: 0,
        };
        let simple: Vec<Vec<i64>> = (0..r).map(|i| rs.simple_root_fw(i)).collect();
        let shift = |w: &[i64], i: usize, sign: i64| -> Vec<i64> {
            w.iter().zip(&simple[i]).map(|(a, b)| a + sign * b).collect()
        };
        let mut level: Vec<usize> = vec![0];
        let mut depth = 0;
        while !level.is_empty() {
            depth += 1;
            let mut targets: Vec<Vec<i64>> = Vec::new();
            for &s in &level {
                for i in 0..r {
                    let mu = shift(&m.spaces[s].weight, i, -1);
                    if !targets.contains(&mu) {
                        targets.push(mu);
                    }
                }
            }
            targets.sort_by(|a, b| b.cmp(a));
            let mut next = Vec::new();
            for mu in targets {
                // (i, source space) pairs feeding candidates
                let sources: Vec<(usize, usize)> = (0..r)
                    .filter_map(|i| m.index.get(&shift(&mu, i, 1)).map(|&s| (i, s)))
                    .collect();
                let sig_targets: Vec<Option<usize>> =
                    (0..r).map(|j| m.index.get(&shift(&mu, j, 1)).copied()).collect();
                let mut sig_offsets = Vec::with_capacity(r);
                let mut sig_len = 0;
                for t in &sig_targets {
                    sig_offsets.push(sig_len);
                    if let Some(t) = t {
                        sig_len += m.spaces[*t].dim;
                    }
                }
                let mut ech = Echelon::new();
                let mut accepted: Vec<(usize, usize, Vec<Rat>)> = Vec::new();
                let mut columns: Vec<(usize, usize, usize, Option<Vec<Rat>>)> = Vec::new();
                for &(i, s) in &sources {
                    for k in 0..m.spaces[s].dim {
                        let sig = m.signature(i, s, k, &sig_targets, &sig_offsets, sig_len);
                        match ech.insert(sig.clone()) {
                            None => {
                                columns.push((i, s, k, None));
                                accepted.push((i, k, sig));
                            }
                            Some(coords) => columns.push((i, s, k, Some(coords))),
                        }
                    }
                }
                let dim = accepted.len();
                if dim == 0 {
                    continue;
                }
                let new = m.spaces.len();
                m.spaces.push(Space { weight: mu.clone(), depth, dim, offset: 0 });
                m.index.insert(mu.clone(), new);
                for j in 0..r {
                    m.e[j].push(sig_targets[j].map(|t| {
                        let tdim = m.spaces[t].dim;
                        let off = sig_offsets[j];
                        let mat = (0..tdim)
                            .map(|row| accepted.iter().map(|(_, _, sig)| sig[off + row].clone()).collect())
                            .collect();
                        Block { target: t, mat }
                    }));
                    m.f[j].push(None);
                }
                // F blocks from the sources into the new space
                let mut fmats: HashMap<(usize, usize), Matrix> = HashMap::new();
                let mut basis_pos = 0;
                for (i, s, k, coords) in columns {
                    let sdim = m.spaces[s].dim;
                    let mat = fmats.entry((i, s)).or_insert_with(|| linalg::zeros(dim, sdim));
                    match coords {
                        None => {
                            mat[basis_pos][k] = Rat::one();
                            basis_pos += 1;
                        }
                        Some(c) => {
                            for (row, x) in c.into_iter().enumerate() {
                                mat[row][k] = x;
                            }
                        }
                    }
                }
                for ((i, s), mat) in fmats {
                    m.f[i][s] = Some(Block { target: new, mat });
                }
                // contravariant form: <F_i u_k, b> = <u_k, E_i b>
                let mut g = linalg::zeros(dim, dim);
                for (a, (i, k, _)) in accepted.iter().enumerate() {
                    let s = sig_targets[*i].expect("source space exists");
                    let off = sig_offsets[*i];
                    let sdim = m.spaces[s].dim;
                    for (c, (_, _, sig_c)) in accepted.iter().enumerate() {
                        let mut acc = Rat::zero();
                        for l in 0..sdim {
                            let x = &sig_c[off + l];
                            let gk = &m.gram[s][*k][l];
                            if !x.is_zero() && !gk.is_zero() {
                                acc += gk * x;
                            }
                        }
                        g[a][c] = acc;
                    }
                }
                m.gram.push(g);
                next.push(new);
            }
            level = next;
        }
        // final ordering is by depth, then weight descending, which is the
        // order spaces were created in
        let mut off = 0;
        for s in m.spaces.iter_mut() {
            s.offset = off;
            off += s.dim;
        }
        m.dim = off;
        Ok(m)
    }

    fn signature(
        &self,
        i: usize,
        s: usize,
        k: usize,
        sig_targets: &[Option<usize>],
        sig_offsets: &[usize],
        sig_len: usize,
    ) -> Vec<Rat> {
        let mut sig = vec![Rat::zero(); sig_len];
        for (j, t) in sig_targets.iter().enumerate() {
            let Some(t) = *t else { continue };
            let off = sig_offsets[j];
            if let Some(ej) = &self.e[j][s] {
                let col: Vec<Rat> = ej.mat.iter().map(|row| row[k].clone()).collect();
                if col.iter().any(|x| !x.is_zero()) {
                    if let Some(fi) = &self.f[i][ej.target] {
                        debug_assert_eq!(fi.target, t);
                        for (row, x) in linalg::mat_vec(&fi.mat, &col).into_iter().enumerate() {
                            sig[off + row] += x;
                        }
                    }
                }
            }
            if i == j {
                // u_k lives in s = t
                let h = self.spaces[s].weight[i];
                sig[off + k] += Rat::from_int(h);
            }
        }
        sig
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn highest_weight(&self) -> &[i64] {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spaces(&self) -> &[Space] {
        &self.spaces
    }

    pub fn space_index(&self, weight: &[i64]) -> Option<usize> {
        self.index.get(weight).copied()
    }

    pub fn weight_dim(&self, weight: &[i64]) -> usize {
        self.space_index(weight).map_or(0, |s| self.spaces[s].dim)
    }

    pub fn zero_space(&self) -> Option<usize> {
        self.space_index(&vec![0; self.rs.rank()])
    }

    /// `E_i` restricted to space `s`.
    pub fn e_block(&self, i: usize, s: usize) -> Option<&Block> {
        self.e[i][s].as_ref()
    }

    /// `F_i` restricted to space `s`.
    pub fn f_block(&self, i: usize, s: usize) -> Option<&Block> {
        self.f[i][s].as_ref()
    }

    /// Contravariant form on space `s`, normalized by `<v_lambda, v_lambda> = 1`.
    pub fn gram(&self, s: usize) -> &Matrix {
        &self.gram[s]
    }

    fn block(&self, g: Gen, s: usize) -> Option<Block> {
        match g {
            Gen::E(i) => self.e[i][s].clone(),
            Gen::F(i) => self.f[i][s].clone(),
            Gen::H(i) => {
                let d = self.spaces[s].dim;
                let h = Rat::from_int(self.spaces[s].weight[i]);
                Some(Block { target: s, mat: linalg::scale_matrix(&linalg::identity(d), &h) })
            }
        }
    }

    /// Product `g_k ... g_1` restricted to space `s` (`ops[0]` applied first).
    /// `None` when the target weight is not a weight of the module.
    fn chain(&self, s: usize, ops: &[Gen]) -> Option<Block> {
        let mut cur = Block { target: s, mat: linalg::identity(self.spaces[s].dim) };
        for &g in ops {
            let b = self.block(g, cur.target)?;
            cur = Block { target: b.target, mat: linalg::mat_mul(&b.mat, &cur.mat) };
        }
        Some(cur)
    }

    fn target_weight(&self, s: usize, ops: &[Gen]) -> Vec<i64> {
        let mut w = self.spaces[s].weight.clone();
        for g in ops {
            let (i, sign) = match g {
                Gen::E(i) => (*i, 1),
                Gen::F(i) => (*i, -1),
                Gen::H(_) => continue,
            };
            for (a, b) in w.iter_mut().zip(self.rs.simple_root_fw(i)) {
                *a += sign * b;
            }
        }
        w
    }

    /// Sum of `coef * chain` over terms, all mapping space `s` to one target.
    fn combination(&self, s: usize, terms: &[(i64, Vec<Gen>)]) -> Option<Matrix> {
        let tw = self.target_weight(s, &terms[0].1);
        let t = self.space_index(&tw)?;
        let mut acc = linalg::zeros(self.spaces[t].dim, self.spaces[s].dim);
        for (c, ops) in terms {
            if let Some(b) = self.chain(s, ops) {
                debug_assert_eq!(b.target, t);
                let scaled = linalg::scale_matrix(&b.mat, &Rat::from_int(-c));
                sub_assign(&mut acc, &scaled);
            }
        }
        Some(acc)
    }

    /// Check dimensions against Freudenthal and the Weyl formula, the
    /// Chevalley relations, the Serre relations and the contravariant form.
    pub fn verify(&self) -> Result<()> {
        let rs = &self.rs;
        let r = rs.rank();
        let fail = |m: String| Err(Error::Integrity(m));
        let ch = DominantCharacter::new(rs, &self.lambda)?;
        let expected = ch.all_weights(rs);
        if expected.len() != self.spaces.len() {
            return fail(format!(
                "V{:?}: {} weight spaces, expected {}",
                self.lambda,
                self.spaces.len(),
                expected.len()
            ));
        }
        for (w, mult) in &expected {
            if self.weight_dim(w) as u64 != *mult {
                return fail(format!(
                    "V{:?}: weight {:?} has dimension {}, Freudenthal gives {}",
                    self.lambda,
                    w,
                    self.weight_dim(w),
                    mult
                ));
            }
        }
        if self.dim as u128 != weyl_dimension(rs, &self.lambda)? {
            return fail(format!("V{:?}: dimension differs from the Weyl formula", self.lambda));
        }
        for s in 0..self.spaces.len() {
            for i in 0..r {
                for j in 0..r {
                    let comm = self.combination(s, &[(1, vec![Gen::F(j), Gen::E(i)]), (-1, vec![Gen::E(i), Gen::F(j)])]);
                    let ok = match comm {
                        None => true,
                        Some(c) if i == j => {
                            let h = Rat::from_int(self.spaces[s].weight[i]);
                            c == linalg::scale_matrix(&linalg::identity(self.spaces[s].dim), &h)
                        }
                        Some(c) => is_zero_matrix(&c),
                    };
                    if !ok {
                        return fail(format!(
                            "V{:?}: [E{}, F{}] relation fails on weight {:?}",
                            self.lambda,
                            i + 1,
                            j + 1,
                            self.spaces[s].weight
                        ));
                    }
                    if i == j {
                        continue;
                    }
                    let n = 1 - rs.cartan()[i][j];
                    for (mk, name) in [(Gen::E as fn(usize) -> Gen, "E"), (Gen::F as fn(usize) -> Gen, "F")] {
                        let terms: Vec<(i64, Vec<Gen>)> = (0..=n)
                            .map(|k| {
                                // (-1)^k C(n,k) X_i^{n-k} X_j X_i^k, rightmost first
                                let mut ops = vec![mk(i); k as usize];
                                ops.push(mk(j));
                                ops.extend(vec![mk(i); (n - k) as usize]);
                                let sign = if k % 2 == 0 { 1 } else { -1 };
                                (sign * binomial(n, k), ops)
                            })
                            .collect();
                        if let Some(c) = self.combination(s, &terms) {
                            if !is_zero_matrix(&c) {
                                return fail(format!(
                                    "V{:?}: Serre relation for {}{}, {}{} fails",
                                    self.lambda,
                                    name,
                                    i + 1,
                                    name,
                                    j + 1
                                ));
                            }
                        }
                    }
                }
            }
            let g = &self.gram[s];
            if *g != linalg::transpose(g) || linalg::rank(g) != self.spaces[s].dim {
                return fail(format!(
                    "V{:?}: contravariant form degenerate or asymmetric on {:?}",
                    self.lambda, self.spaces[s].weight
                ));
            }
        }
        for i in 0..r {
            if self.e[i][0].is_some() {
                return fail("highest weight vector not killed by E".into());
            }
        }
        Ok(())
    }

    /// Full generator matrix (dense; intended for small modules).
    pub fn dense_generator(&self, g: Gen) -> Matrix {
        let mut out = linalg::zeros(self.dim, self.dim);
        for s in 0..self.spaces.len() {
            if let Some(b) = self.block(g, s) {
                let so = self.spaces[s].offset;
                let to = self.spaces[b.target].offset;
                for (row, r) in b.mat.iter().enumerate() {
                    for (col, x) in r.iter().enumerate() {
                        out[to + row][so + col] = x.clone();
                    }
                }
            }
        }
        out
    }

    /// Apply a generator to a block vector.
    pub fn apply(&self, g: Gen, v: &BlockVec) -> BlockVec {
        let mut out = BlockVec::new();
        for (&s, x) in v {
            if let Some(b) = self.block(g, s) {
                let y = linalg::mat_vec(&b.mat, x);
                if y.iter().all(Rat::is_zero) {
                    continue;
                }
                let dim = self.spaces[b.target].dim;
                let slot = out.entry(b.target).or_insert_with(|| vec![Rat::zero(); dim]);
                for (a, c) in slot.iter_mut().zip(y) {
                    *a += c;
                }
            }
        }
        out.retain(|_, x| x.iter().any(|c| !c.is_zero()));
        out
    }

    /// `exp(c X) v` for nilpotent `X = E_i` or `F_i`.
    pub fn exp_apply(&self, g: Gen, c: &Rat, v: &BlockVec) -> BlockVec {
        let mut out = v.clone();
        let mut term = v.clone();
        let mut k = 1i64;
        loop {
            term = self.apply(g, &term);
            if term.is_empty() {
                break;
            }
            let f = c / &Rat::from_int(k);
            for x in term.values_mut() {
                for y in x.iter_mut() {
                    *y = &*y * &f;
                }
            }
            add_into(&mut out, &term, &self.spaces);
            k += 1;
        }
        out.retain(|_, x| x.iter().any(|c| !c.is_zero()));
        out
    }

    /// Tits representative `n_i = exp(E_i) exp(-F_i) exp(E_i)` applied to `v`.
    pub fn tits_apply(&self, i: usize, v: &BlockVec) -> BlockVec {
        let one = Rat::one();
        let a = self.exp_apply(Gen::E(i), &one, v);
        let b = self.exp_apply(Gen::F(i), &-&one, &a);
        self.exp_apply(Gen::E(i), &one, &b)
    }

    /// Tits operator of a word (rightmost letter applied first).
    pub fn tits_word_apply(&self, word: &WeylWord, v: &BlockVec) -> BlockVec {
        let mut cur = v.clone();
        for &i in word.0.iter().rev() {
            cur = self.tits_apply(i, &cur);
        }
        cur
    }

    /// Basis vector `k` of space `s` as a block vector.
    pub fn basis_vector(&self, s: usize, k: usize) -> BlockVec {
        BlockVec::from([(s, unit(self.spaces[s].dim, k))])
    }

    /// Space and slot of a global basis index.
    pub fn locate(&self, global: usize) -> (usize, usize) {
        let s = self.spaces.partition_point(|sp| sp.offset + sp.dim <= global);
        (s, global - self.spaces[s].offset)
    }

    /// Block vector from sparse global coordinates.
    pub fn from_sparse(&self, v: &[(usize, Rat)]) -> BlockVec {
        let mut out = BlockVec::new();
        for (g, c) in v {
            let (s, k) = self.locate(*g);
            let dim = self.spaces[s].dim;
            out.entry(s).or_insert_with(|| vec![Rat::zero(); dim])[k] += c;
        }
        out.retain(|_, x| x.iter().any(|c| !c.is_zero()));
        out
    }

    /// Sparse global coordinates of a block vector.
    pub fn to_sparse(&self, v: &BlockVec) -> Vec<(usize, Rat)> {
        let mut out = Vec::new();
        for (&s, x) in v {
            let o = self.spaces[s].offset;
            for (k, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    out.push((o + k, c.clone()));
                }
            }
        }
        out
    }

    /// Weight (fw coordinates) of a global basis index.
    pub fn weight_of(&self, global: usize) -> &[i64] {
        &self.spaces[self.locate(global).0].weight
    }

    /// Dense global coordinates of a block vector.
    pub fn to_global(&self, v: &BlockVec) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (&s, x) in v {
            let o = self.spaces[s].offset;
            for (k, c) in x.iter().enumerate() {
                out[o + k] = c.clone();
            }
        }
        out
    }

    /// Contravariant pairing of two block vectors.
    pub fn form(&self, u: &BlockVec, v: &BlockVec) -> Rat {
        let mut acc = Rat::zero();
        for (s, x) in u {
            if let Some(y) = v.get(s) {
                let gy = linalg::mat_vec(&self.gram[*s], y);
                acc += x.iter().zip(&gy).map(|(a, b)| a * b).sum::<Rat>();
            }
        }
        acc
    }
}

fn add_into(out: &mut BlockVec, v: &BlockVec, spaces: &[Space]) {
    for (&s, x) in v {
        let slot = out.entry(s).or_insert_with(|| vec![Rat::zero(); spaces[s].dim]);
        for (a, c) in slot.iter_mut().zip(x) {
            if !c.is_zero() {
                *a += c;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_adjoint() {
        let a1 = rs("A1");
        let m = build_module(&a1, &[2], 100).unwrap();
        assert_eq!(m.dim(), 3);
        let ws: Vec<_> = m.spaces().iter().map(|s| s.weight.clone()).collect();
        assert_eq!(ws, vec![vec![2], vec![0], vec![-2]]);
    }

    #[test]
    fn a2_defining_relations() {
        let a2 = rs("A2");
        let m = build_module(&a2, &[1, 0], 100).unwrap();
        assert_eq!(m.dim(), 3);
        let e: Vec<_> = (0..2).map(|i| m.dense_generator(Gen::E(i))).collect();
        let f: Vec<_> = (0..2).map(|i| m.dense_generator(Gen::F(i))).collect();
        let h: Vec<_> = (0..2).map(|i| m.dense_generator(Gen::H(i))).collect();
        for i in 0..2 {
            for j in 0..2 {
                let mut c = linalg::mat_mul(&e[i], &f[j]);
                sub_assign(&mut c, &linalg::mat_mul(&f[j], &e[i]));
                let want = if i == j { h[i].clone() } else { linalg::zeros(3, 3) };
                assert_eq!(c, want);
                let mut he = linalg::mat_mul(&h[i], &e[j]);
                sub_assign(&mut he, &linalg::mat_mul(&e[j], &h[i]));
                let a = Rat::from_int(a2.cartan()[i][j]);
                assert_eq!(he, linalg::scale_matrix(&e[j], &a));
            }
        }
    }

    #[test]
    fn b2_vector_module() {
        let m = build_module(&rs("B2"), &[1, 0], 100).unwrap();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.weight_dim(&[0, 0]), 1);
    }

    #[test]
    fn capacity_reports_dimension() {
        let err = build_module(&rs("A2"), &[3, 3], 10).unwrap_err();
        assert_eq!(err, Error::Capacity { what: "module V[3, 3]".into(), size: 64, cap: 10 });
    }

    #[test]
    fn g2_and_c3_modules_verify() {
        build_module(&rs("G2"), &[1, 1], 1000).unwrap();
        build_module(&rs("C3"), &[0, 1, 1], 1000).unwrap();
        build_module(&rs("A3"), &[1, 1, 1], 1000).unwrap();
    }

    #[test]
    fn tits_operator_on_adjoint_a1() {
        let m = build_module(&rs("A1"), &[2], 100).unwrap();
        let z = m.zero_space().unwrap();
        let v = m.basis_vector(z, 0);
        let w = m.tits_apply(0, &v);
        let mut neg = v.clone();
        for x in neg.values_mut() {
            x[0] = -&x[0];
        }
        assert_eq!(w, neg);
    }
}
