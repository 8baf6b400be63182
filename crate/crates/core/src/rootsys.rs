//! Root systems of simple complex Lie algebras: Cartan data, positive roots,
//! weights in fundamental-weight and simple-root coordinates, and Weyl group
//! words.
//!
//! Conventions. Simple roots follow the Bourbaki labelling. The Cartan matrix
//! is `A[i][j] = <alpha_i^vee, alpha_j>`, so `[H_i, E_j] = A[i][j] E_j` and
//! the fundamental-weight coordinates of `alpha_j` form column `j` of `A`.
//! Symmetrizers `d_i = <alpha_i, alpha_i> / 2` are scaled so the shortest
//! simple root has `d_i = 1`. Indices are 0-based in the API; words print
//! 1-based.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple complex type such as `B5` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub letter: TypeLetter,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        use TypeLetter::*;
        let ok = match letter {
            A => rank >= 1,
            B | C => rank >= 2,
            D => rank >= 3,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if ok {
            Ok(CartanType { letter, rank })
        } else {
            Err(Error::InvalidInput(format!(
                "{:?}{} is not a simple root system type",
                letter, rank
            )))
        }
    }

    /// Closed-form `|Delta^+|`.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.letter {
            TypeLetter::A => n * (n + 1) / 2,
            TypeLetter::B | TypeLetter::C => n * n,
            TypeLetter::D => n * (n - 1),
            TypeLetter::E => [36, 63, 120][n - 6],
            TypeLetter::F => 24,
            TypeLetter::G => 6,
        }
    }

    /// Closed-form Weyl group order.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.letter {
            TypeLetter::A => fact(n + 1),
            TypeLetter::B | TypeLetter::C => (1u128 << n) * fact(n),
            TypeLetter::D => (1u128 << (n - 1)) * fact(n),
            TypeLetter::E => [51_840, 2_903_040, 696_729_600][self.rank - 6],
            TypeLetter::F => 1152,
            TypeLetter::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("malformed root system type {:?}", s));
        let mut chars = s.chars();
        let letter = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => TypeLetter::A,
            Some('B') => TypeLetter::B,
            Some('C') => TypeLetter::C,
            Some('D') => TypeLetter::D,
            Some('E') => TypeLetter::E,
            Some('F') => TypeLetter::F,
            Some('G') => TypeLetter::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(letter, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Simple roots of a simple type in an orthonormal realization. Classical
/// types use the usual `e_i` coordinates; `G2` sits in the sum-zero plane of
/// `R^3`; `F4` uses the Bourbaki realization in `R^4`. `E` types have no
/// realization here.
pub fn euclidean_simple_roots(ct: CartanType) -> Option<Vec<Vec<Rat>>> {
    let n = ct.rank;
    let unit = |dim: usize, i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize, sj: i64| -> Vec<Rat> {
        let mut v = unit(dim, i);
        v[j] = Rat::from_int(sj);
        v
    };
    let r = |x: i64| Rat::from_int(x);
    match ct.letter {
        TypeLetter::A => Some((0..n).map(|i| diff(n + 1, i, i + 1, -1)).collect()),
        TypeLetter::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1, -1)).collect();
            s.push(unit(n, n - 1));
            Some(s)
        }
        TypeLetter::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1, -1)).collect();
            let mut last = vec![Rat::zero(); n];
            last[n - 1] = r(2);
            s.push(last);
            Some(s)
        }
        TypeLetter::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1, -1)).collect();
            s.push(diff(n, n - 2, n - 1, 1));
            Some(s)
        }
        TypeLetter::G => Some(vec![vec![r(1), r(-1), r(0)], vec![r(-2), r(1), r(1)]]),
        TypeLetter::F => {
            let h = Rat::new(1, 2);
            Some(vec![
                vec![r(0), r(1), r(-1), r(0)],
                vec![r(0), r(0), r(1), r(-1)],
                vec![r(0), r(0), r(0), r(1)],
                vec![h.clone(), -&h, -&h, -&h],
            ])
        }
        TypeLetter::E => None,
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn e_type_cartan(n: usize) -> Vec<Vec<i64>> {
    // Bourbaki: 1-3-4-5-...-n with 2 attached to 4.
    let mut edges = vec![(0, 2), (1, 3)];
    for i in 2..n - 1 {
        edges.push((i, i + 1));
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

/// Cartan matrix of a simple type, `A[i][j] = <alpha_i^vee, alpha_j>`.
pub fn cartan_matrix(ct: CartanType) -> Vec<Vec<i64>> {
    match euclidean_simple_roots(ct) {
        None => e_type_cartan(ct.rank),
        Some(s) => {
            let n = ct.rank;
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                let nii = dot(&s[i], &s[i]);
                for j in 0..n {
                    let v = Rat::from_int(2) * dot(&s[i], &s[j]) / &nii;
                    a[i][j] = v.to_i64().expect("integral Cartan entry");
                }
            }
            a
        }
    }
}

/// A (possibly reducible) finite root system given by its Cartan matrix.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ctype: Option<CartanType>,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    det: i64,
    // det * A^{-1}
    adj: Vec<Vec<i64>>,
    cartan_inv: Matrix,
    positive: Vec<Vec<i64>>,
    positive_fw: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootSystem {}

/// Construct the root system of a simple type.
pub fn build_root_system(letter: TypeLetter, rank: usize) -> Result<RootSystem> {
    let ct = CartanType::new(letter, rank)?;
    let mut rs = RootSystem::from_cartan(cartan_matrix(ct))?;
    rs.ctype = Some(ct);
    if rs.positive.len() != ct.positive_root_count() {
        return Err(Error::Integrity(format!(
            "{}: enumerated {} positive roots, expected {}",
            ct,
            rs.positive.len(),
            ct.positive_root_count()
        )));
    }
    Ok(rs)
}

impl RootSystem {
    pub fn of_type(ct: CartanType) -> Result<RootSystem> {
        build_root_system(ct.letter, ct.rank)
    }

    /// Any Cartan matrix of finite type (reducible allowed).
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let n = cartan.len();
        let bad = |m: &str| Err(Error::InvalidInput(format!("invalid Cartan matrix: {}", m)));
        if cartan.iter().any(|r| r.len() != n) {
            return bad("not square");
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return bad("diagonal entry is not 2");
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return bad("off-diagonal sign pattern");
                }
            }
        }
        let sym = symmetrizer(&cartan).ok_or_else(|| {
            Error::InvalidInput("invalid Cartan matrix: not symmetrizable".into())
        })?;
        let b: Matrix = (0..n)
            .map(|i| (0..n).map(|j| Rat::from_int(sym[i] * cartan[i][j])).collect())
            .collect();
        for k in 1..=n {
            let minor: Matrix = b[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !linalg::determinant(&minor).is_positive() {
                return bad("not of finite type");
            }
        }
        let a: Matrix = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        let det = linalg::determinant(&a).to_i64().expect("integer determinant");
        let cartan_inv = if n == 0 { vec![] } else { linalg::inverse(&a).expect("nonsingular") };
        let adj = cartan_inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * &Rat::from_int(det)).to_i64().expect("adjugate"))
                    .collect()
            })
            .collect();
        let mut rs = RootSystem {
            ctype: None,
            cartan,
            sym,
            det,
            adj,
            cartan_inv,
            positive: vec![],
            positive_fw: vec![],
            root_index: HashMap::new(),
        };
        rs.enumerate_positive_roots();
        Ok(rs)
    }

    fn enumerate_positive_roots(&mut self) {
        let n = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut level: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut all = Vec::new();
        while !level.is_empty() {
            for r in &level {
                seen.insert(r.clone());
            }
            all.extend(level.iter().cloned());
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &level {
                let fw = self.root_to_fw(beta);
                for i in 0..n {
                    let mut down = beta.clone();
                    let mut p = 0;
                    loop {
                        down[i] -= 1;
                        if seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - fw[i];
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            level = next;
        }
        all.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.positive_fw = all.iter().map(|r| self.root_to_fw(r)).collect();
        self.root_index = all.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        self.positive = all;
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.det
    }

    /// Positive roots in simple-root coordinates, graded by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots in fundamental-weight coordinates, same order.
    pub fn positive_roots_fw(&self) -> &[Vec<i64>] {
        &self.positive_fw
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        if root.iter().all(|&x| x <= 0) {
            let neg: Vec<i64> = root.iter().map(|x| -x).collect();
            self.root_index.contains_key(&neg)
        } else {
            self.root_index.contains_key(root)
        }
    }

    /// All roots, positive ones first.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        out
    }

    /// Fundamental-weight coordinates of the simple root `alpha_i`.
    pub fn simple_root_fw(&self, i: usize) -> Vec<i64> {
        self.cartan.iter().map(|row| row[i]).collect()
    }

    pub fn root_to_fw(&self, root: &[i64]) -> Vec<i64> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(root).map(|(a, r)| a * r).sum())
            .collect()
    }

    pub fn fw_to_root(&self, fw: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec(&self.cartan_inv, fw)
    }

    pub fn root_to_fw_rat(&self, root: &[Rat]) -> Vec<Rat> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(root).map(|(a, r)| Rat::from_int(*a) * r).sum())
            .collect()
    }

    /// Root coordinates of an integral weight, if it lies in the root lattice.
    pub fn fw_to_root_int(&self, fw: &[i64]) -> Option<Vec<i64>> {
        self.adj
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(fw).map(|(a, x)| a * x).sum();
                if s % self.det == 0 {
                    Some(s / self.det)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `A^{-1}`; row `i` gives `varpi_i` in simple-root coordinates.
    pub fn inverse_cartan(&self) -> &Matrix {
        &self.cartan_inv
    }

    /// `<x, beta>` for `x` in fw coordinates and `beta` in root coordinates.
    pub fn pair_fw_root(&self, x: &[i64], beta: &[i64]) -> i64 {
        (0..self.rank()).map(|k| beta[k] * self.sym[k] * x[k]).sum()
    }

    /// `det(A) * <x, y>` for fw coordinates; an exact integer.
    pub fn inner_fw_scaled(&self, x: &[i64], y: &[i64]) -> i128 {
        let n = self.rank();
        let mut s: i128 = 0;
        for k in 0..n {
            let ax: i128 = (0..n).map(|j| self.adj[k][j] as i128 * x[j] as i128).sum();
            s += ax * self.sym[k] as i128 * y[k] as i128;
        }
        s
    }

    pub fn inner_fw(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let root = self.fw_to_root(x);
        (0..self.rank())
            .map(|k| &root[k] * &Rat::from_int(self.sym[k]) * &y[k])
            .sum()
    }

    /// The invariant form on simple-root coordinates, `B[i][j] = d_i A[i][j]`.
    pub fn root_gram(&self) -> Matrix {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| Rat::from_int(self.sym[i] * self.cartan[i][j])).collect())
            .collect()
    }

    pub fn inner_root(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let g = self.root_gram();
        let gy = linalg::mat_vec(&g, y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `<beta, beta> / 2` for a root in root coordinates.
    pub fn half_norm_root(&self, beta: &[i64]) -> i64 {
        let fw = self.root_to_fw(beta);
        self.pair_fw_root(&fw, beta) / 2
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    /// In-place simple reflection on fw coordinates.
    pub fn reflect_fw(&self, i: usize, w: &mut [i64]) {
        let c = w[i];
        if c != 0 {
            for (k, row) in self.cartan.iter().enumerate() {
                w[k] -= c * row[i];
            }
        }
    }

    pub fn reflect_fw_rat(&self, i: usize, w: &mut [Rat]) {
        let c = w[i].clone();
        if !c.is_zero() {
            for (k, row) in self.cartan.iter().enumerate() {
                if row[i] != 0 {
                    w[k] -= &c * &Rat::from_int(row[i]);
                }
            }
        }
    }

    /// In-place simple reflection on root coordinates.
    pub fn reflect_root(&self, i: usize, x: &mut [Rat]) {
        let pairing: Rat = (0..self.rank())
            .filter(|&j| self.cartan[i][j] != 0)
            .map(|j| Rat::from_int(self.cartan[i][j]) * &x[j])
            .sum();
        x[i] -= pairing;
    }

    pub fn is_dominant(&self, fw: &[i64]) -> bool {
        fw.iter().all(|&x| x >= 0)
    }

    /// The dominant representative of the Weyl orbit of `fw`.
    pub fn dominant_conjugate(&self, fw: &[i64]) -> Vec<i64> {
        let mut w = fw.to_vec();
        while let Some(i) = w.iter().position(|&x| x < 0) {
            self.reflect_fw(i, &mut w);
        }
        w
    }

    /// Reduced word of the element `w` determined by `w(rho) = image`.
    pub fn reduced_word_from_rho_image(&self, image: &[i64]) -> WeylWord {
        let mut v = image.to_vec();
        let mut word = Vec::new();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect_fw(i, &mut v);
            word.push(i);
        }
        WeylWord(word)
    }

    /// Size of the Weyl orbit of `rho` (a regular weight, so this is `|W|`).
    pub fn weyl_orbit_size(&self, fw: &[i64], limit: usize) -> Result<usize> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(fw.to_vec());
        queue.push_back(fw.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                let mut u = v.clone();
                self.reflect_fw(i, &mut u);
                if seen.insert(u.clone()) {
                    if seen.len() > limit {
                        return Err(Error::Capacity {
                            what: "Weyl orbit".into(),
                            size: seen.len() as u128,
                            cap: limit as u128,
                        });
                    }
                    queue.push_back(u);
                }
            }
        }
        Ok(seen.len())
    }

    /// Every Weyl group element, by nondecreasing length.
    pub fn weyl_group(&self, limit: usize) -> Result<Vec<WeylElement>> {
        let n = self.rank();
        let rho = self.rho();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let id: Vec<Vec<i64>> = (0..n)
            .map(|j| (0..n).map(|k| i64::from(j == k)).collect())
            .collect();
        seen.insert(rho.clone());
        let mut out = vec![WeylElement { columns: id, length: 0 }];
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for i in 0..n {
                let mut cols = cur.columns.clone();
                for c in cols.iter_mut() {
                    self.reflect_fw(i, c);
                }
                let mut image = vec![0; n];
                for c in &cols {
                    for k in 0..n {
                        image[k] += c[k];
                    }
                }
                if seen.insert(image) {
                    if out.len() >= limit {
                        return Err(Error::Capacity {
                            what: "Weyl group enumeration".into(),
                            size: out.len() as u128 + 1,
                            cap: limit as u128,
                        });
                    }
                    out.push(WeylElement { columns: cols, length: cur.length + 1 });
                }
            }
        }
        Ok(out)
    }

    /// Type of each connected component, e.g. `"B3"` or `"A1xA1"`; `"0"` for
    /// rank zero.
    pub fn type_name(&self) -> String {
        if let Some(ct) = self.ctype {
            return ct.to_string();
        }
        classify_cartan(&self.cartan)
    }

    /// Root system spanned by a subset of simple roots.
    pub fn subsystem(&self, subset: &[usize]) -> Result<RootSystem> {
        let cartan = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        RootSystem::from_cartan(cartan)
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i A_ij = d_j A_ji
                let dj = d[i].clone().unwrap() * Rat::new(a[i][j], a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => return None,
                    _ => {}
                }
            }
        }
    }
    // scale each component so its smallest entry is 1 and all are integers
    let d: Vec<Rat> = d.into_iter().map(Option::unwrap).collect();
    let comps = components(a);
    let mut out = vec![0i64; n];
    for comp in comps {
        let min = comp.iter().map(|&i| d[i].clone()).min().unwrap();
        let scaled: Vec<Rat> = comp.iter().map(|&i| &d[i] / &min).collect();
        let den = crate::arith::common_denominator(scaled.iter());
        for (&i, s) in comp.iter().zip(&scaled) {
            out[i] = (s * &Rat::from(den.clone())).to_i64()?;
        }
    }
    Some(out)
}

/// Connected components of the Dynkin diagram, each sorted.
pub fn components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![];
        let mut stack = vec![s];
        comp[s] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..n {
                if a[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

/// Identify each component of a finite-type Cartan matrix by root counts.
/// `C2` is reported as `B2`, `D3` as `A3`, and rank-one systems as `A1`.
pub fn classify_cartan(a: &[Vec<i64>]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut names: Vec<String> = components(a)
        .into_iter()
        .map(|comp| {
            let sub: Vec<Vec<i64>> =
                comp.iter().map(|&i| comp.iter().map(|&j| a[i][j]).collect()).collect();
            let rs = RootSystem::from_cartan(sub).expect("finite type component");
            classify_irreducible(&rs)
        })
        .collect();
    names.sort();
    names.join("x")
}

fn classify_irreducible(rs: &RootSystem) -> String {
    let n = rs.rank();
    let total = rs.positive.len() * 2;
    let norms: Vec<i64> = rs.positive.iter().map(|r| rs.half_norm_root(r)).collect();
    let min = *norms.iter().min().unwrap();
    let short = 2 * norms.iter().filter(|&&x| x == min).count();
    let letter = if short == total {
        match (n, total) {
            (6, 72) => "E",
            (7, 126) => "E",
            (8, 240) => "E",
            _ if total == n * (n + 1) => "A",
            _ => "D",
        }
    } else if n == 2 && total == 12 {
        "G"
    } else if n == 4 && total == 48 {
        "F"
    } else if short == 2 * n {
        "B"
    } else {
        "C"
    };
    format!("{}{}", letter, n)
}

/// Normalize a type name for comparison: `C2 -> B2`, `D3 -> A3`,
/// `B1/C1 -> A1`.
pub fn normalize_type_name(name: &str) -> String {
    let mut parts: Vec<String> = name
        .split('x')
        .map(|p| match p {
            "C2" => "B2".to_string(),
            "D3" => "A3".to_string(),
            "B1" | "C1" => "A1".to_string(),
            "BC1" => "BC1".to_string(),
            other => other.to_string(),
        })
        .collect();
    parts.sort();
    parts.join("x")
}

/// A Weyl group element as the images of the fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// `columns[j]` = fw coordinates of `w(varpi_j)`.
    pub columns: Vec<Vec<i64>>,
    pub length: usize,
}

impl WeylElement {
    pub fn apply(&self, fw: &[i64]) -> Vec<i64> {
        let n = fw.len();
        let mut out = vec![0; n];
        for (j, c) in self.columns.iter().enumerate() {
            if fw[j] != 0 {
                for k in 0..n {
                    out[k] += fw[j] * c[k];
                }
            }
        }
        out
    }

    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// A word `s_{i_1} s_{i_2} ... s_{i_k}` in the simple reflections (0-based
/// indices; applied right to left).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(vec![])
    }

    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        indices
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidInput("Weyl word indices start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeylWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// Concatenation `self * other`.
    pub fn then(&self, other: &WeylWord) -> Self {
        let mut v = self.0.clone();
        v.extend(&other.0);
        WeylWord(v)
    }

    fn check(&self, rs: &RootSystem) -> Result<()> {
        if let Some(&i) = self.0.iter().find(|&&i| i >= rs.rank()) {
            return Err(Error::InvalidInput(format!(
                "simple reflection index {} out of range 1..{}",
                i + 1,
                rs.rank()
            )));
        }
        Ok(())
    }

    pub fn apply_fw(&self, rs: &RootSystem, fw: &[i64]) -> Result<Vec<i64>> {
        self.check(rs)?;
        let mut w = fw.to_vec();
        for &i in self.0.iter().rev() {
            rs.reflect_fw(i, &mut w);
        }
        Ok(w)
    }

    pub fn apply_root(&self, rs: &RootSystem, x: &[Rat]) -> Result<Vec<Rat>> {
        self.check(rs)?;
        let mut w = x.to_vec();
        for &i in self.0.iter().rev() {
            rs.reflect_root(i, &mut w);
        }
        Ok(w)
    }

    /// Image of `rho`, which determines the group element.
    pub fn rho_image(&self, rs: &RootSystem) -> Result<Vec<i64>> {
        self.apply_fw(rs, &rs.rho())
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> Result<usize> {
        self.check(rs)?;
        let mut count = 0;
        for beta in rs.positive_roots() {
            let mut x: Vec<Rat> = beta.iter().map(|&b| Rat::from_int(b)).collect();
            for &i in self.0.iter().rev() {
                rs.reflect_root(i, &mut x);
            }
            if x.iter().any(Rat::is_negative) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Reduced word of the same element, by greedy descent.
    pub fn reduced(&self, rs: &RootSystem) -> Result<WeylWord> {
        Ok(rs.reduced_word_from_rho_image(&self.rho_image(rs)?))
    }

    pub fn same_element(&self, other: &WeylWord, rs: &RootSystem) -> Result<bool> {
        Ok(self.rho_image(rs)? == other.rho_image(rs)?)
    }

    /// Matrix of the element on simple-root coordinates (columns are images
    /// of the simple roots).
    pub fn root_matrix(&self, rs: &RootSystem) -> Result<Matrix> {
        let n = rs.rank();
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let mut e = vec![Rat::zero(); n];
                e[j] = Rat::one();
                self.apply_root(rs, &e)
            })
            .collect::<Result<_>>()?;
        Ok(linalg::transpose(&cols))
    }

    /// Up to `limit` reduced words of the element, lexicographically ordered.
    pub fn all_reduced_words(&self, rs: &RootSystem, limit: usize) -> Result<Vec<WeylWord>> {
        fn rec(
            rs: &RootSystem,
            v: Vec<i64>,
            prefix: &mut Vec<usize>,
            out: &mut Vec<WeylWord>,
            limit: usize,
        ) {
            if out.len() >= limit {
                return;
            }
            let descents: Vec<usize> = (0..v.len()).filter(|&i| v[i] < 0).collect();
            if descents.is_empty() {
                out.push(WeylWord(prefix.clone()));
                return;
            }
            for i in descents {
                let mut u = v.clone();
                rs.reflect_fw(i, &mut u);
                prefix.push(i);
                rec(rs, u, prefix, out, limit);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rs, self.rho_image(rs)?, &mut vec![], &mut out, limit);
        Ok(out)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Apply a Weyl word to a weight.
pub fn weyl_apply(rs: &RootSystem, word: &WeylWord, w: &Weight) -> Result<Weight> {
    word.check(rs)?;
    let mut fw = w.fw.clone();
    for &i in word.0.iter().rev() {
        rs.reflect_fw_rat(i, &mut fw);
    }
    Ok(Weight::from_fw(rs, fw))
}

/// Reduced word for the longest element of the parabolic subgroup generated
/// by `subset`, by greedy descent with smallest-index tie-break.
pub fn longest_word(rs: &RootSystem, subset: &[usize]) -> WeylWord {
    let mut v = rs.rho();
    let mut applied = Vec::new();
    while let Some(&j) = subset.iter().filter(|&&j| v[j] > 0).min() {
        rs.reflect_fw(j, &mut v);
        applied.push(j);
    }
    // v = s_{jk} ... s_{j1} rho
    applied.reverse();
    WeylWord(applied)
}

/// Weyl dimension formula `prod <lambda+rho, alpha> / <rho, alpha>`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> Result<u128> {
    if !rs.is_dominant(lambda) {
        return Err(Error::InvalidInput(format!(
            "weight {:?} is not dominant",
            lambda
        )));
    }
    let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let rho = rs.rho();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for beta in rs.positive_roots() {
        num *= rs.pair_fw_root(&shifted, beta);
        den *= rs.pair_fw_root(&rho, beta);
    }
    let q = &num / &den;
    debug_assert!((&num % &den).is_zero());
    q.to_u128()
        .ok_or_else(|| Error::Capacity { what: "dimension".into(), size: u128::MAX, cap: u128::MAX })
}

/// A weight with both coordinate systems filled in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    fw: Vec<Rat>,
    root: Vec<Rat>,
}

/// Input coordinates for [`weight_convert`].
#[derive(Debug, Clone)]
pub enum Coords {
    Fundamental(Vec<Rat>),
    SimpleRoot(Vec<Rat>),
}

/// Fill in both coordinate systems.
pub fn weight_convert(rs: &RootSystem, c: Coords) -> Weight {
    match c {
        Coords::Fundamental(fw) => Weight::from_fw(rs, fw),
        Coords::SimpleRoot(root) => Weight::from_root(rs, root),
    }
}

impl Weight {
    pub fn from_fw(rs: &RootSystem, fw: Vec<Rat>) -> Weight {
        assert_eq!(fw.len(), rs.rank(), "weight length must match rank");
        let root = rs.fw_to_root(&fw);
        Weight { fw, root }
    }

    pub fn from_fw_int(rs: &RootSystem, fw: &[i64]) -> Weight {
        Weight::from_fw(rs, fw.iter().map(|&x| Rat::from_int(x)).collect())
    }

    pub fn from_root(rs: &RootSystem, root: Vec<Rat>) -> Weight {
        assert_eq!(root.len(), rs.rank(), "weight length must match rank");
        let fw = rs.root_to_fw_rat(&root);
        Weight { fw, root }
    }

    pub fn fw(&self) -> &[Rat] {
        &self.fw
    }

    pub fn root(&self) -> &[Rat] {
        &self.root
    }

    pub fn in_p(&self) -> bool {
        self.fw.iter().all(Rat::is_integer)
    }

    pub fn in_q(&self) -> bool {
        self.root.iter().all(Rat::is_integer)
    }

    pub fn is_dominant(&self) -> bool {
        self.fw.iter().all(|x| !x.is_negative())
    }

    pub fn fw_int(&self) -> Option<Vec<i64>> {
        self.fw.iter().map(Rat::to_i64).collect()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            fw: self.fw.iter().zip(&other.fw).map(|(a, b)| a + b).collect(),
            root: self.root.iter().zip(&other.root).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            fw: self.fw.iter().map(|x| -x).collect(),
            root: self.root.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.fw.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Every simple type of rank at most `max_rank` (`D` from rank 3; `B`, `C`
/// from rank 2).
pub fn simple_types_up_to(max_rank: usize) -> Vec<CartanType> {
    use TypeLetter::*;
    let mut out = Vec::new();
    for letter in [A, B, C, D, E, F, G] {
        for rank in 1..=max_rank {
            if let Ok(ct) = CartanType::new(letter, rank) {
                out.push(ct);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn b2_has_eight_roots_and_order_eight() {
        let b2 = rs("B2");
        assert_eq!(b2.all_roots().len(), 8);
        assert_eq!(b2.weyl_orbit_size(&b2.rho(), 100).unwrap(), 8);
    }

    #[test]
    fn a1_fundamental_weight_is_half_root() {
        let a1 = rs("A1");
        assert_eq!(a1.all_roots(), vec![vec![1], vec![-1]]);
        let w = Weight::from_fw_int(&a1, &[1]);
        assert_eq!(w.root(), &[Rat::new(1, 2)]);
    }

    #[test]
    fn e6_counts() {
        let e6 = rs("E6");
        assert_eq!(e6.all_roots().len(), 72);
        assert_eq!(e6.weyl_orbit_size(&e6.rho(), 100_000).unwrap(), 51_840);
    }

    #[test]
    fn a2_weight_conversion() {
        let a2 = rs("A2");
        let w = weight_convert(&a2, Coords::Fundamental(vec![Rat::one(), Rat::one()]));
        assert_eq!(w.root(), &[Rat::one(), Rat::one()]);
        assert!(w.in_q());
        let w = Weight::from_fw_int(&a2, &[1, 0]);
        assert_eq!(w.root(), &[Rat::new(2, 3), Rat::new(1, 3)]);
        assert!(!w.in_q());
        let z = Weight::from_fw_int(&a2, &[0, 0]);
        assert!(z.in_q() && z.root().iter().all(Rat::is_zero));
        let back = weight_convert(&a2, Coords::SimpleRoot(w.root().to_vec()));
        assert_eq!(back, w);
    }

    #[test]
    fn reflections() {
        let a1 = rs("A1");
        let w = weyl_apply(&a1, &WeylWord(vec![0]), &Weight::from_fw_int(&a1, &[1])).unwrap();
        assert_eq!(w, Weight::from_fw_int(&a1, &[-1]));
        let a2 = rs("A2");
        let word = WeylWord::from_one_based(&[1, 2, 1]).unwrap();
        let w = weyl_apply(&a2, &word, &Weight::from_fw_int(&a2, &[1, 0])).unwrap();
        assert_eq!(w, Weight::from_fw_int(&a2, &[0, -1]));
        let b2 = rs("B2");
        let w0 = longest_word(&b2, &[0, 1]);
        for lam in [[1, 0], [0, 1], [3, 2]] {
            let img = weyl_apply(&b2, &w0, &Weight::from_fw_int(&b2, &lam)).unwrap();
            assert_eq!(img, Weight::from_fw_int(&b2, &lam).neg());
        }
        assert!(weyl_apply(&a2, &WeylWord(vec![2]), &Weight::from_fw_int(&a2, &[1, 0])).is_err());
    }

    #[test]
    fn longest_words() {
        assert_eq!(longest_word(&rs("A2"), &[0, 1]).len(), 3);
        assert_eq!(longest_word(&rs("B2"), &[0, 1]).len(), 4);
        assert!(longest_word(&rs("B2"), &[]).is_empty());
        let b5 = rs("B5");
        let w = longest_word(&b5, &[2, 3, 4]);
        assert_eq!(w.len(), 9);
        assert_eq!(w.inversions(&b5).unwrap(), 9);
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&rs("A2"), &[1, 1]).unwrap(), 8);
        for k in 0..10 {
            assert_eq!(weyl_dimension(&rs("A1"), &[k]).unwrap(), k as u128 + 1);
        }
        assert_eq!(weyl_dimension(&rs("E6"), &[0; 6]).unwrap(), 1);
        assert_eq!(weyl_dimension(&rs("E6"), &[0, 1, 0, 0, 0, 0]).unwrap(), 78);
        assert_eq!(weyl_dimension(&rs("B5"), &[1, 0, 0, 0, 0]).unwrap(), 11);
        assert!(weyl_dimension(&rs("A2"), &[-1, 0]).is_err());
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_root_system(TypeLetter::E, 5).is_err());
        assert!(build_root_system(TypeLetter::G, 3).is_err());
        assert!(build_root_system(TypeLetter::B, 1).is_err());
        assert!("Q3".parse::<CartanType>().is_err());
    }

    #[test]
    fn classification_of_types() {
        for ct in simple_types_up_to(8) {
            let r = RootSystem::from_cartan(cartan_matrix(ct)).unwrap();
            assert_eq!(classify_cartan(r.cartan()), normalize_type_name(&ct.to_string()), "{}", ct);
        }
        let a1a1 = RootSystem::from_cartan(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(a1a1.type_name(), "A1xA1");
    }
}
