//! Exact linear algebra over [`Rat`]: echelon forms, kernels, solves, and a
//! sparse vector type used for module elements. Also integer Smith normal
//! form for lattice index computations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;

pub type Matrix = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn is_identity(a: &Matrix) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn scale_matrix(a: &Matrix, c: &Rat) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}`, one vector per free column, in column order.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<Rat>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let mut pi = 0;
    for free in 0..cols {
        if pi < pivots.len() && pivots[pi] == free {
            pi += 1;
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b` for square nonsingular `A`.
pub fn solve(a: &Matrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

/// Coordinates of `v` in terms of the linearly independent `basis`, if `v`
/// lies in their span.
pub fn coordinates(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let dim = v.len();
    let mut aug: Matrix = (0..dim)
        .map(|i| {
            let mut r: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

pub fn determinant(a: &Matrix) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incremental row echelon basis: vectors are reduced against the rows seen
/// so far, and each stored row remembers its expression as a combination of
/// the accepted input vectors.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rat>, Vec<Rat>)>,
    accepted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.accepted
    }

    /// Reduce `v`. If it is independent of the accepted vectors it is
    /// accepted and `None` is returned; otherwise returns its coordinates
    /// over the accepted vectors.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> Option<Vec<Rat>> {
        let mut combo = vec![Rat::zero(); self.accepted];
        for (pivot, row, expr) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (c, e) in combo.iter_mut().zip(expr) {
                if !e.is_zero() {
                    *c += &f * e;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(p) => {
                // row = (v_new - sum combo_k acc_k) / v[p]
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
                let mut expr: Vec<Rat> = combo.iter().map(|c| -(c * &inv)).collect();
                expr.push(inv);
                for (_, _, e) in self.rows.iter_mut() {
                    e.push(Rat::zero());
                }
                // keep earlier rows reduced against the new pivot
                for (_, row, e) in self.rows.iter_mut() {
                    if row[p].is_zero() {
                        continue;
                    }
                    let f = row[p].clone();
                    for (x, y) in row.iter_mut().zip(&v) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                    for (x, y) in e.iter_mut().zip(&expr) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
                self.rows.push((p, v, expr));
                self.accepted += 1;
                None
            }
        }
    }
}

/// Sparse vector indexed by basis position.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVec(pub BTreeMap<usize, Rat>);

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.0.insert(i, Rat::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Rat {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(i) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn axpy(&mut self, c: &Rat, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.0 {
            self.add_term(*i, &(c * x));
        }
    }

    pub fn scaled(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&-Rat::one(), other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.0.iter().map(|(i, x)| (*i, x))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries only).
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![r(1), r(2), r(3)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn echelon_expresses_dependents() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![r(1), r(1), r(0)]).is_none());
        assert!(e.insert(vec![r(0), r(1), r(1)]).is_none());
        let c = e.insert(vec![r(2), r(5), r(3)]).unwrap();
        assert_eq!(c, vec![r(2), r(3)]);
        assert!(e.insert(vec![r(0), r(0), r(0)]).unwrap().iter().all(Rat::is_zero));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn inverse_and_det() {
        let a = vec![vec![r(2), r(-1)], vec![r(-1), r(2)]];
        assert_eq!(determinant(&a), r(3));
        let inv = inverse(&a).unwrap();
        assert!(is_identity(&mat_mul(&a, &inv)));
        assert_eq!(inv[0][0], Rat::new(2, 3));
    }

    #[test]
    fn smith_of_even_sum_lattice() {
        let g: Vec<Vec<BigInt>> = [[1, 1, 0], [1, -1, 0], [0, 1, 1]]
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let d = smith_diagonal(&g);
        let prod: BigInt = d.iter().product();
        assert_eq!(d.len(), 3);
        assert_eq!(prod, BigInt::from(2));
    }

    #[test]
    fn coordinates_rejects_outside_span() {
        let basis = vec![vec![r(1), r(0), r(0)]];
        assert!(coordinates(&basis, &[r(0), r(1), r(0)]).is_none());
        assert_eq!(coordinates(&basis, &[r(4), r(0), r(0)]).unwrap(), vec![r(4)]);
    }
}
