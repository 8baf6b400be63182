//! Conjectural predicates on nonvanishing of `V^L` and scalarity of `w0`.
//! These are evaluated against computed reports, never assumed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::invariants::InvariantReport;
use crate::realform::{Family, RealFormEntry};
use crate::rootsys::Weight;

/// Bound on the number of nonzero coordinates of a scalar weight.
pub const CONJ1_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    One,
    TwoI,
    TwoII,
    TwoIII,
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConjectureId::One => "conj1",
            ConjectureId::TwoI => "conj2(i)",
            ConjectureId::TwoII => "conj2(ii)",
            ConjectureId::TwoIII => "conj2(iii)",
        };
        write!(f, "{}", s)
    }
}

/// What a conjecture says about one weight. `scalar` is conditional on
/// `V^L != 0`; `None` means no statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjecturePrediction {
    pub id: ConjectureId,
    pub nonvanishing: Option<bool>,
    pub scalar: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureOutcome {
    pub id: ConjectureId,
    pub algebra: String,
    pub lambda: Vec<i64>,
    pub predicted_nonvanishing: Option<bool>,
    pub actual_nonvanishing: bool,
    pub predicted_scalar: Option<bool>,
    pub actual_scalar: Option<bool>,
    pub agree: bool,
}

fn support(c: &[i64]) -> Vec<usize> {
    (0..c.len()).filter(|&i| c[i] != 0).collect()
}

/// `lambda` is `x ϖ_i + y ϖ_j` (1-based `j`) with `i` in `allowed`; returns
/// the `i` used (if `x != 0`) or `Some(None)` when `lambda` is on `ϖ_j`.
fn pair_form(c: &[i64], j: usize, allowed: &[usize]) -> Option<Option<usize>> {
    let rest: Vec<usize> = support(c).into_iter().map(|i| i + 1).filter(|&i| i != j).collect();
    match rest.as_slice() {
        [] => Some(None),
        [i] if allowed.contains(i) => Some(Some(*i)),
        _ => None,
    }
}

/// All conjectural statements applying to `(entry, lambda)`.
pub fn conjecture_predictions(entry: &RealFormEntry, lambda: &[i64]) -> Vec<ConjecturePrediction> {
    let w = Weight::from_fw_int(&entry.rs, lambda);
    if !w.is_dominant() {
        return vec![];
    }
    let in_q = w.in_q();
    let mut out = Vec::new();
    if in_q {
        let small = support(lambda).len() <= CONJ1_K;
        out.push(ConjecturePrediction {
            id: ConjectureId::One,
            nonvanishing: None,
            // scalar is only possible on small support
            scalar: (!small).then_some(false),
        });
    }
    match entry.family {
        Some(Family::So(2, q)) if q == 7 || q >= 9 => {
            let nonvanishing = in_q && lambda.iter().skip(4).all(|&c| c == 0);
            out.push(ConjecturePrediction {
                id: ConjectureId::TwoI,
                nonvanishing: Some(nonvanishing),
                scalar: nonvanishing.then(|| pair_form(lambda, 4, &[1, 2, 3]).is_some()),
            });
        }
        Some(Family::Eiv) => out.push(ConjecturePrediction {
            id: ConjectureId::TwoII,
            nonvanishing: Some(in_q),
            scalar: in_q.then(|| pair_form(lambda, 2, &[1, 3, 5, 6]).is_some()),
        }),
        Some(Family::Sp(2, 6)) => {
            let scalar = match pair_form(lambda, 8, &[1, 2, 3, 4, 5, 6, 7]) {
                Some(Some(i)) if (3..=5).contains(&i) => lambda[i - 1] <= 2,
                Some(_) => true,
                None => false,
            };
            out.push(ConjecturePrediction {
                id: ConjectureId::TwoIII,
                nonvanishing: Some(in_q),
                scalar: in_q.then_some(scalar),
            });
        }
        _ => {}
    }
    out
}

/// Compare every applicable prediction with a computed report.
pub fn evaluate(entry: &RealFormEntry, report: &InvariantReport) -> Vec<ConjectureOutcome> {
    let actual_nonvanishing = report.dim_vl() > 0;
    let actual_scalar = actual_nonvanishing.then(|| report.classification.is_scalar());
    conjecture_predictions(entry, &report.lambda)
        .into_iter()
        .map(|p| {
            let nv_ok = p.nonvanishing.is_none_or(|n| n == actual_nonvanishing);
            let sc_ok = match (p.scalar, actual_scalar) {
                (Some(s), Some(a)) => s == a,
                _ => true,
            };
            ConjectureOutcome {
                id: p.id,
                algebra: report.algebra.clone(),
                lambda: report.lambda.clone(),
                predicted_nonvanishing: p.nonvanishing,
                actual_nonvanishing,
                predicted_scalar: p.scalar,
                actual_scalar,
                agree: nv_ok && sc_ok,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::compute_report;
    use crate::realform::catalog_entry;

    fn ids(e: &RealFormEntry, l: &[i64]) -> Vec<ConjectureId> {
        conjecture_predictions(e, l).into_iter().map(|p| p.id).collect()
    }

    #[test]
    fn applicability() {
        let so29 = catalog_entry("so(2,9)").unwrap();
        assert_eq!(ids(&so29, &[1, 0, 0, 0, 0]), vec![ConjectureId::One, ConjectureId::TwoI]);
        let so28 = catalog_entry("so(2,8)").unwrap();
        assert_eq!(ids(&so28, &[2, 0, 0, 0, 0]), vec![ConjectureId::One]);
        let sl3 = catalog_entry("sl(3,R)").unwrap();
        assert!(ids(&sl3, &[1, 0]).is_empty());
    }

    #[test]
    fn so29_predicates() {
        let e = catalog_entry("so(2,9)").unwrap();
        let p = |l: &[i64]| conjecture_predictions(&e, l)[1];
        assert_eq!(p(&[1, 0, 0, 1, 0]).scalar, Some(true));
        assert_eq!(p(&[1, 1, 0, 0, 0]).scalar, Some(false));
        assert_eq!(p(&[0, 0, 0, 0, 2]).nonvanishing, Some(false));
        assert_eq!(p(&[0, 0, 0, 0, 2]).scalar, None);
    }

    #[test]
    fn sp26_bound() {
        let e = catalog_entry("sp(2,6)").unwrap();
        let p = |l: &[i64]| conjecture_predictions(&e, l).last().unwrap().scalar;
        let mut l = vec![0; 8];
        l[3] = 2;
        l[7] = 1;
        assert_eq!(p(&l), Some(true));
        l[3] = 4;
        assert_eq!(p(&l), Some(false));
    }

    #[test]
    fn so29_standard_disagrees() {
        let e = catalog_entry("so(2,9)").unwrap();
        let r = compute_report(&e, &[1, 0, 0, 0, 0], 1000).unwrap();
        let out = evaluate(&e, &r);
        let two = out.iter().find(|o| o.id == ConjectureId::TwoI).unwrap();
        assert!(!two.actual_nonvanishing);
        assert!(!two.agree);
    }
}
