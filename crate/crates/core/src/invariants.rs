//! L-invariant vectors in the zero weight space and the action of the
//! restricted longest Weyl element on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::realform::{lift_or_identity, restricted_w0_lift, RealFormEntry};
use crate::repbuild::module::{build_module, BlockVec, Gen, IrreducibleModule};
use crate::repbuild::tensor::{cartan_project, pure_tensor, tensor_module, TensorModule, TensorVec};
use crate::rootsys::{Weight, WeylWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Empty,
    PlusId,
    MinusId,
    NonScalar,
}

impl Classification {
    pub fn is_scalar(&self) -> bool {
        matches!(self, Classification::PlusId | Classification::MinusId)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Empty => "empty",
            Classification::PlusId => "+id",
            Classification::MinusId => "-id",
            Classification::NonScalar => "non-scalar",
        };
        write!(f, "{}", s)
    }
}

impl std::str::FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty" => Ok(Classification::Empty),
            "+id" => Ok(Classification::PlusId),
            "-id" => Ok(Classification::MinusId),
            "non-scalar" => Ok(Classification::NonScalar),
            _ => Err(Error::InvalidInput(format!("unknown classification {:?}", s))),
        }
    }
}

/// Result of the computation for one `(entry, lambda)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub algebra: String,
    pub lambda: Vec<i64>,
    pub in_q: bool,
    pub module_dim: u128,
    pub dim_v0: usize,
    /// Basis of `V^L` in coordinates of the zero weight space.
    pub basis: Vec<Vec<Rat>>,
    /// Matrix of `w0` on `V^L` (columns are images of basis vectors).
    pub w0_matrix: Matrix,
    pub classification: Classification,
    pub nontrivial: bool,
    /// Lift of `w0` used, printed 1-based.
    pub lift: String,
}

impl InvariantReport {
    pub fn dim_vl(&self) -> usize {
        self.basis.len()
    }

    /// Recompute classification and involution property from the matrix.
    pub fn check(&self) -> Result<()> {
        let (c, nontrivial) = classify_action(&self.w0_matrix)?;
        if c != self.classification || nontrivial != self.nontrivial {
            return Err(Error::Integrity(format!(
                "{} {:?}: stored classification disagrees with the matrix",
                self.algebra, self.lambda
            )));
        }
        Ok(())
    }
}

/// `(dim V^0, basis of V^L)` with `V^L = V^0 ∩ ker E_b ∩ ker F_b` over the
/// black simple roots `b`.
pub fn l_invariant_basis(entry: &RealFormEntry, m: &IrreducibleModule) -> (usize, Vec<Vec<Rat>>) {
    let Some(z) = m.zero_space() else { return (0, vec![]) };
    let d = m.spaces()[z].dim;
    let mut rows: Matrix = Vec::new();
    for &b in &entry.black {
        for blk in [m.e_block(b, z), m.f_block(b, z)].into_iter().flatten() {
            rows.extend(blk.mat.iter().cloned());
        }
    }
    if rows.is_empty() {
        let basis = (0..d)
            .map(|i| {
                let mut v = vec![Rat::zero(); d];
                v[i] = Rat::one();
                v
            })
            .collect();
        return (d, basis);
    }
    (d, linalg::nullspace(&rows, d))
}

/// Matrix of the Tits operator of `word` on the zero weight space.
pub fn tits_on_zero_space(m: &IrreducibleModule, word: &WeylWord) -> Result<Matrix> {
    let Some(z) = m.zero_space() else { return Ok(vec![]) };
    let d = m.spaces()[z].dim;
    let cols = (0..d)
        .map(|k| {
            let img = m.tits_word_apply(word, &m.basis_vector(z, k));
            if img.keys().any(|&s| s != z) {
                return Err(Error::Integrity("Tits operator leaves the zero weight space".into()));
            }
            Ok(img.get(&z).cloned().unwrap_or_else(|| vec![Rat::zero(); d]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::transpose(&cols))
}

fn w0_matrix_for(
    m: &IrreducibleModule,
    word: &WeylWord,
    basis: &[Vec<Rat>],
    label: &str,
) -> Result<Matrix> {
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let z = m.zero_space().expect("nonempty V^L lies in V^0");
    let cols = basis
        .iter()
        .map(|v| {
            let img = m.tits_word_apply(word, &BlockVec::from([(z, v.clone())]));
            if img.keys().any(|&s| s != z) {
                return Err(Error::Integrity(format!("{}: lift does not preserve the zero weight space", label)));
            }
            let img = img.get(&z).cloned().unwrap_or_else(|| vec![Rat::zero(); v.len()]);
            linalg::coordinates(basis, &img)
                .ok_or_else(|| Error::Integrity(format!("{}: lift does not preserve V^L", label)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::transpose(&cols))
}

/// Matrix of the lifted `w0` on the given basis of `V^L`.
pub fn w0_operator(entry: &RealFormEntry, m: &IrreducibleModule, basis: &[Vec<Rat>]) -> Result<Matrix> {
    let word = restricted_w0_lift(entry)?;
    w0_matrix_for(m, &word, basis, &entry.label)
}

/// Classification of a `w0` matrix and the nontrivial flag (`M != I`).
pub fn classify_action(m: &Matrix) -> Result<(Classification, bool)> {
    let n = m.len();
    if n == 0 {
        return Ok((Classification::Empty, false));
    }
    if !linalg::is_identity(&linalg::mat_mul(m, m)) {
        return Err(Error::Integrity("w0 matrix does not square to the identity".into()));
    }
    let id = linalg::identity(n);
    let minus = linalg::scale_matrix(&id, &Rat::from_int(-1));
    let c = if *m == id {
        Classification::PlusId
    } else if *m == minus {
        Classification::MinusId
    } else {
        Classification::NonScalar
    };
    Ok((c, c != Classification::PlusId))
}

/// Report for `lambda` using an already built module.
pub fn report_from_module(entry: &RealFormEntry, m: &IrreducibleModule) -> Result<InvariantReport> {
    if m.root_system() != &entry.rs {
        return Err(Error::InvalidInput("module built over a different root system".into()));
    }
    let (dim_v0, basis) = l_invariant_basis(entry, m);
    let word = lift_or_identity(entry);
    let w0 = w0_matrix_for(m, &word, &basis, &entry.label)?;
    let (classification, nontrivial) = classify_action(&w0)?;
    Ok(InvariantReport {
        algebra: entry.label.clone(),
        lambda: m.highest_weight().to_vec(),
        in_q: true,
        module_dim: m.dim() as u128,
        dim_v0,
        basis,
        w0_matrix: w0,
        classification,
        nontrivial,
        lift: word.to_string(),
    })
}

/// Full report for `lambda` (fw coordinates), building the module.
pub fn compute_report(entry: &RealFormEntry, lambda: &[i64], dim_cap: u128) -> Result<InvariantReport> {
    let rs = &entry.rs;
    if lambda.len() != rs.rank() {
        return Err(Error::InvalidInput(format!(
            "weight has {} coordinates, {} has rank {}",
            lambda.len(),
            entry.label,
            rs.rank()
        )));
    }
    let w = Weight::from_fw_int(rs, lambda);
    let dim = crate::rootsys::weyl_dimension(rs, lambda)?;
    if !w.in_q() {
        // no zero weight, nothing to build
        return Ok(InvariantReport {
            algebra: entry.label.clone(),
            lambda: lambda.to_vec(),
            in_q: false,
            module_dim: dim,
            dim_v0: 0,
            basis: vec![],
            w0_matrix: vec![],
            classification: Classification::Empty,
            nontrivial: false,
            lift: lift_or_identity(entry).to_string(),
        });
    }
    let m = build_module(rs, lambda, dim_cap)?;
    report_from_module(entry, &m)
}

/// Outcome of one additivity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Check {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

/// A Cartan-product witness: eigenvectors `u`, `v` of `w0` with signs, and
/// the nonzero invariant product found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sign_left: i64,
    pub sign_right: i64,
    pub nonzero: bool,
    pub invariant: bool,
    pub eigen_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivityVerdict {
    /// Nonzero at `lambda` and `mu` implies nonzero at `lambda + mu`.
    pub submonoid: Check,
    /// Non-scalar at one summand and nonzero at the other implies
    /// non-scalar at the sum.
    pub ideal: Check,
    /// Cartan products of eigenvectors are nonzero invariant eigenvectors.
    pub constructive: Check,
    pub witnesses: Vec<Witness>,
}

impl AdditivityVerdict {
    pub fn passed(&self) -> bool {
        ![self.submonoid, self.ideal, self.constructive].contains(&Check::Fail)
    }
}

fn eigenvectors(report: &InvariantReport, sign: i64) -> Vec<Vec<Rat>> {
    let n = report.dim_vl();
    if n == 0 {
        return vec![];
    }
    let mut a = report.w0_matrix.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= Rat::from_int(sign);
    }
    // eigenvectors in V^L coordinates, mapped back to V^0 coordinates
    linalg::nullspace(&a, n)
        .into_iter()
        .map(|c| {
            let d = report.basis[0].len();
            let mut v = vec![Rat::zero(); d];
            for (ci, b) in c.iter().zip(&report.basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += ci * y;
                }
            }
            v
        })
        .collect()
}

fn zero_sparse(m: &IrreducibleModule, v: &[Rat]) -> Vec<(usize, Rat)> {
    let z = m.zero_space().expect("zero weight present");
    let off = m.spaces()[z].offset;
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (off + k, c.clone()))
        .collect()
}

fn tensor_invariant(entry: &RealFormEntry, t: &TensorModule<'_>, x: &TensorVec) -> bool {
    entry
        .black
        .iter()
        .all(|&b| t.apply(Gen::E(b), x).is_empty() && t.apply(Gen::F(b), x).is_empty())
}

/// Check the submonoid and ideal statements on three reports; when modules
/// are supplied and the tensor product fits `tensor_cap`, also verify them
/// constructively through Cartan products of `w0`-eigenvectors.
pub fn additivity_check(
    entry: &RealFormEntry,
    rep_l: &InvariantReport,
    rep_m: &InvariantReport,
    rep_lm: &InvariantReport,
    modules: Option<(&IrreducibleModule, &IrreducibleModule)>,
    tensor_cap: u128,
) -> Result<AdditivityVerdict> {
    let sum: Vec<i64> = rep_l.lambda.iter().zip(&rep_m.lambda).map(|(a, b)| a + b).collect();
    if sum != rep_lm.lambda {
        return Err(Error::InvalidInput("third report is not at lambda + mu".into()));
    }
    let nz = |r: &InvariantReport| r.dim_vl() > 0;
    let submonoid = if nz(rep_l) && nz(rep_m) {
        if nz(rep_lm) { Check::Pass } else { Check::Fail }
    } else {
        Check::Vacuous
    };
    let ns = |r: &InvariantReport| r.classification == Classification::NonScalar;
    let ideal = if (ns(rep_l) && nz(rep_m)) || (ns(rep_m) && nz(rep_l)) {
        if ns(rep_lm) { Check::Pass } else { Check::Fail }
    } else {
        Check::Vacuous
    };
    let mut witnesses = Vec::new();
    let constructive = match modules {
        _ if !(nz(rep_l) && nz(rep_m)) => Check::Vacuous,
        None => Check::Skipped,
        Some((ml, mm)) => match tensor_module(ml, mm, tensor_cap) {
            Err(Error::Capacity { .. }) => Check::Skipped,
            Err(e) => return Err(e),
            Ok(t) => {
                let word = lift_or_identity(entry);
                let mut ok = true;
                for sl in [1i64, -1] {
                    if let Some(u) = eigenvectors(rep_l, sl).into_iter().next() {
                        for sm in [1i64, -1] {
                            // one eigenvector per sign pair keeps this cheap
                            if let Some(v) = eigenvectors(rep_m, sm).into_iter().next() {
                                let x = cartan_project(&t, &pure_tensor(&zero_sparse(ml, &u), &zero_sparse(mm, &v)))?;
                                let nonzero = !x.is_empty();
                                let invariant = tensor_invariant(entry, &t, &x);
                                let img = t.tits_word_apply(&word, &x);
                                let expect: TensorVec =
                                    x.iter().map(|(k, c)| (*k, c * &Rat::from_int(sl * sm))).collect();
                                let eigen_ok = img == expect;
                                ok &= nonzero && invariant && eigen_ok;
                                witnesses.push(Witness { sign_left: sl, sign_right: sm, nonzero, invariant, eigen_ok });
                            }
                        }
                    }
                }
                if ok { Check::Pass } else { Check::Fail }
            }
        },
    };
    Ok(AdditivityVerdict { submonoid, ideal, constructive, witnesses })
}

/// Compare the lift's action on the adjoint module with the restricted Weyl
/// action on `a`: `a` (embedded in the Cartan subalgebra, i.e. the zero
/// weight space) must consist of invariants, and the Tits operator must act
/// on it as `w0` does through the restriction.
pub fn adjoint_check(entry: &RealFormEntry, dim_cap: u128) -> Result<()> {
    let rs = &entry.rs;
    let word = restricted_w0_lift(entry)?;
    let r = rs.rank();
    let theta = rs.positive_roots_fw().last().cloned().expect("nonempty root system");
    let m = build_module(rs, &theta, dim_cap)?;
    let z = m.zero_space().expect("adjoint has zero weight");
    let fail = |s: &str| Err(Error::Integrity(format!("{}: adjoint check: {}", entry.label, s)));
    // u_j = F_j x_j with x_j spanning the alpha_j weight space; x_j ~ t_j E_j
    let xs: Vec<usize> = (0..r).map(|j| m.space_index(&rs.simple_root_fw(j)).expect("simple root weight")).collect();
    let mut t: Vec<Option<Rat>> = vec![None; r];
    t[0] = Some(Rat::one());
    let mut changed = true;
    while changed {
        changed = false;
        for j in 0..r {
            let Some(tj) = t[j].clone() else { continue };
            let fj = m.f_block(j, xs[j]).expect("F_j on the alpha_j space");
            let u_j = BlockVec::from([(fj.target, fj.mat.iter().map(|row| row[0].clone()).collect())]);
            for i in 0..r {
                if t[i].is_some() || rs.cartan()[j][i] == 0 {
                    continue;
                }
                // E_i u_j = (t_j / t_i) A_ji x_i
                let img = m.apply(Gen::E(i), &u_j);
                let c = img.get(&xs[i]).map(|v| v[0].clone()).unwrap_or_else(Rat::zero);
                if c.is_zero() {
                    return fail("vanishing structure constant");
                }
                t[i] = Some(&tj * &Rat::from_int(rs.cartan()[j][i]) / &c);
                changed = true;
            }
        }
    }
    let t: Vec<Rat> = t.into_iter().map(|x| x.expect("connected diagram")).collect();
    // V^0 vector of the coroot combination sum_j c_j H_j: H_j ~ -u_j / t_j
    let u: Vec<Vec<Rat>> = (0..r)
        .map(|j| {
            let fj = m.f_block(j, xs[j]).expect("F_j");
            fj.mat.iter().map(|row| row[0].clone()).collect()
        })
        .collect();
    let embed = |c: &[Rat]| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); m.spaces()[z].dim];
        for j in 0..r {
            let f = -(&c[j] / &t[j]);
            for (x, y) in v.iter_mut().zip(&u[j]) {
                *x += &f * y;
            }
        }
        v
    };
    // root coordinates -> coroot coordinates via the invariant form
    let d = rs.symmetrizer();
    let to_coroot = |x: &[Rat]| -> Vec<Rat> { x.iter().zip(d).map(|(a, &dj)| a * &Rat::from_int(dj)).collect() };
    let (_, basis) = l_invariant_basis(entry, &m);
    if basis.len() < entry.restricted_rank() {
        return fail("V^L smaller than the restricted rank");
    }
    let a_basis = {
        let cols = linalg::transpose(&entry.projection);
        let mut ech = linalg::Echelon::new();
        cols.into_iter().filter(|c| ech.insert(c.clone()).is_none()).collect::<Vec<_>>()
    };
    for x in a_basis {
        let v = embed(&to_coroot(&x));
        if linalg::coordinates(&basis, &v).is_none() {
            return fail("a is not contained in V^L");
        }
        let wx = crate::rootsys::weyl_apply(rs, &word, &Weight::from_root(rs, x.clone()))?;
        let want = embed(&to_coroot(&entry.restrict(wx.root())));
        let got = m.tits_word_apply(&word, &BlockVec::from([(z, v)]));
        let got = got.get(&z).cloned().unwrap_or_else(|| vec![Rat::zero(); want.len()]);
        if got != want {
            return fail("Tits action on a differs from the restricted w0");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realform::catalog_entry;

    #[test]
    fn sl2r_signs() {
        let e = catalog_entry("sl(2,R)").unwrap();
        for k in 1..=4 {
            let r = compute_report(&e, &[2 * k], 100).unwrap();
            let want = if k % 2 == 1 { Classification::MinusId } else { Classification::PlusId };
            assert_eq!(r.classification, want, "k = {}", k);
            assert_eq!(r.w0_matrix.len(), 1);
        }
        let r = compute_report(&e, &[2], 100).unwrap();
        assert_eq!(r.w0_matrix, vec![vec![Rat::from_int(-1)]]);
        assert!(r.nontrivial);
    }

    #[test]
    fn sl3r_adjoint() {
        let e = catalog_entry("sl(3,R)").unwrap();
        let r = compute_report(&e, &[1, 1], 100).unwrap();
        assert_eq!(r.dim_v0, 2);
        assert_eq!(r.dim_vl(), 2);
        assert_eq!(r.classification, Classification::NonScalar);
        assert!(r.nontrivial);
        r.check().unwrap();
    }

    #[test]
    fn compact_and_empty() {
        let e = catalog_entry("su(3)-compact").unwrap();
        let r = compute_report(&e, &[1, 1], 100).unwrap();
        assert_eq!(r.dim_vl(), 0);
        assert_eq!(r.classification, Classification::Empty);
        assert!(!r.nontrivial);
        let r = compute_report(&e, &[0, 0], 100).unwrap();
        assert_eq!(r.classification, Classification::PlusId);
        assert_eq!(classify_action(&vec![]).unwrap(), (Classification::Empty, false));
    }

    #[test]
    fn so29_standard_and_adjoint() {
        let e = catalog_entry("so(2,9)").unwrap();
        assert_eq!(compute_report(&e, &[1, 0, 0, 0, 0], 5000).unwrap().dim_vl(), 0);
        assert_eq!(compute_report(&e, &[2, 0, 0, 0, 0], 5000).unwrap().dim_vl(), 2);
        assert_eq!(compute_report(&e, &[0, 1, 0, 0, 0], 5000).unwrap().dim_vl(), 2);
    }

    #[test]
    fn adjoint_checks() {
        for l in ["sl(3,R)", "so(2,5)", "su(1,2)", "sp(1,2)", "G2-split"] {
            adjoint_check(&catalog_entry(l).unwrap(), 5000).unwrap();
        }
    }

    #[test]
    fn additivity_examples() {
        let e = catalog_entry("sl(2,R)").unwrap();
        let rs = &e.rs;
        let m2 = build_module(rs, &[2], 100).unwrap();
        let m4 = build_module(rs, &[4], 100).unwrap();
        let r2 = report_from_module(&e, &m2).unwrap();
        let r4 = report_from_module(&e, &m4).unwrap();
        let v = additivity_check(&e, &r2, &r2, &r4, Some((&m2, &m2)), 10_000).unwrap();
        assert_eq!(v.submonoid, Check::Pass);
        assert_eq!(v.constructive, Check::Pass);
        assert!(v.passed());
        let r0 = compute_report(&e, &[0], 100).unwrap();
        let v = additivity_check(&e, &r0, &r2, &r2, None, 0).unwrap();
        assert!(v.passed());
        let e3 = catalog_entry("sl(3,R)").unwrap();
        let a = compute_report(&e3, &[1, 1], 1000).unwrap();
        let b = compute_report(&e3, &[2, 2], 1000).unwrap();
        let v = additivity_check(&e3, &a, &a, &b, None, 0).unwrap();
        assert_eq!(v.ideal, Check::Pass);
    }
}
