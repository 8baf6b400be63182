//! Generated sign data for split real forms: for each fundamental weight,
//! `p_i` (least `p` with `p ϖ_i` in `Q`), the largest `m_i` such that
//! `w0` is scalar on `V^0` of `k p_i ϖ_i` for `k <= m_i`, and the sign
//! `σ_i` with `w0 = σ_i^k Id` there.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::common_denominator;
use crate::error::{Error, Result};
use crate::invariants::{report_from_module, Classification};
use crate::realform::{Catalog, FormKind, RealFormEntry};
use crate::repbuild::module::build_module;
use crate::rootsys::{weyl_dimension, RootSystem, Weight};

pub const SIGN_TABLE_SCHEMA: u32 = 1;
pub const DEFAULT_SIGN_TABLE: &str = include_str!("../data/split_sign_table.toml");
pub const TABLE_MAX_RANK: usize = 4;
pub const TABLE_DIM_CAP: u128 = 3000;
pub const TABLE_MAX_K: u32 = 3;

/// `m_i`; `AtLeast` records an inconclusive row cut short by the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MValue {
    Finite(u32),
    Infinite,
    AtLeast(u32),
}

impl fmt::Display for MValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MValue::Finite(m) => write!(f, "{}", m),
            MValue::Infinite => write!(f, "inf"),
            MValue::AtLeast(m) => write!(f, ">={}", m),
        }
    }
}

impl std::str::FromStr for MValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownTable(format!("bad m value {:?}", s));
        if s == "inf" {
            Ok(MValue::Infinite)
        } else if let Some(rest) = s.strip_prefix(">=") {
            rest.parse().map(MValue::AtLeast).map_err(|_| bad())
        } else {
            s.parse().map(MValue::Finite).map_err(|_| bad())
        }
    }
}

impl Serialize for MValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignRow {
    pub ambient: String,
    /// 1-based fundamental weight index.
    pub index: usize,
    pub p: u32,
    pub m: MValue,
    /// Absent when `m = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i8>,
    /// Classification at `k = 1, 2, ...`, or "capped".
    pub observed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSignTable {
    pub schema: u32,
    pub dim_cap: u128,
    pub max_k: u32,
    #[serde(rename = "row", default)]
    pub rows: Vec<SignRow>,
}

impl SplitSignTable {
    pub fn parse(text: &str) -> Result<Self> {
        let t: SplitSignTable =
            toml::from_str(text).map_err(|e| Error::UnknownTable(format!("sign table: {}", e)))?;
        if t.schema != SIGN_TABLE_SCHEMA {
            return Err(Error::UnknownTable(format!(
                "sign table schema {} (expected {})",
                t.schema, SIGN_TABLE_SCHEMA
            )));
        }
        Ok(t)
    }

    pub fn default_table() -> Result<Self> {
        Self::parse(DEFAULT_SIGN_TABLE)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("sign table serializes")
    }

    pub fn row(&self, ambient: &str, index: usize) -> Option<&SignRow> {
        self.rows.iter().find(|r| r.ambient == ambient && r.index == index)
    }
}

/// Smallest `p > 0` with `p ϖ_i` in the root lattice.
pub fn p_index(rs: &RootSystem, i: usize) -> u32 {
    let inv = rs.inverse_cartan();
    // root coordinates of ϖ_i form column i of A^{-1}
    let col: Vec<_> = (0..rs.rank()).map(|j| &inv[j][i]).collect();
    u32::try_from(common_denominator(col)).expect("small denominator")
}

/// Split forms of the default catalog with ambient rank `<= max_rank`, one
/// per ambient type.
pub fn split_entries(max_rank: usize) -> Result<Vec<RealFormEntry>> {
    let cat = Catalog::default();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rec in cat.records() {
        if rec.kind != FormKind::Split || !seen.insert(rec.ambient.clone()) {
            continue;
        }
        let e = cat.entry(&rec.label)?;
        if e.rs.rank() <= max_rank {
            out.push(e);
        }
    }
    Ok(out)
}

fn sign_of(c: Classification) -> Option<i8> {
    match c {
        Classification::PlusId => Some(1),
        Classification::MinusId => Some(-1),
        _ => None,
    }
}

/// Rows for one split entry.
pub fn rows_for(entry: &RealFormEntry, dim_cap: u128, max_k: u32) -> Result<Vec<SignRow>> {
    let rs = &entry.rs;
    let ambient = entry.ambient().to_string();
    let mut rows = Vec::new();
    for i in 0..rs.rank() {
        let p = p_index(rs, i);
        let mut observed = Vec::new();
        let mut classes = Vec::new();
        for k in 1..=max_k {
            let mut lambda = vec![0i64; rs.rank()];
            lambda[i] = (k * p) as i64;
            if weyl_dimension(rs, &lambda)? > dim_cap {
                observed.push("capped".to_string());
                break;
            }
            let m = build_module(rs, &lambda, dim_cap)?;
            let c = report_from_module(entry, &m)?.classification;
            observed.push(c.to_string());
            classes.push(c);
        }
        let leading = classes.iter().take_while(|c| c.is_scalar()).count() as u32;
        let m = if leading < classes.len() as u32 {
            MValue::Finite(leading)
        } else if leading == max_k {
            MValue::Infinite
        } else {
            MValue::AtLeast(leading)
        };
        let sigma = classes.first().and_then(|c| sign_of(*c));
        for (k, c) in classes.iter().take(leading as usize).enumerate() {
            let s = sigma.expect("leading scalar");
            if sign_of(*c) != Some(if k % 2 == 0 { s } else { 1 }) {
                return Err(Error::Integrity(format!(
                    "{} ϖ_{}: scalar signs are not powers of one sign",
                    ambient,
                    i + 1
                )));
            }
        }
        rows.push(SignRow { ambient: ambient.clone(), index: i + 1, p, m, sigma, observed });
    }
    Ok(rows)
}

/// Regenerate the table with the classification pipeline.
pub fn generate_sign_table(max_rank: usize, dim_cap: u128, max_k: u32) -> Result<SplitSignTable> {
    let mut rows = Vec::new();
    for e in split_entries(max_rank)? {
        rows.extend(rows_for(&e, dim_cap, max_k)?);
    }
    Ok(SplitSignTable { schema: SIGN_TABLE_SCHEMA, dim_cap, max_k, rows })
}

/// Predicted classification on `V^0` for a split entry; `None` when the
/// table row is inconclusive at this `k`.
pub fn predict_split_sign(
    entry: &RealFormEntry,
    lambda: &Weight,
    table: &SplitSignTable,
) -> Result<Option<Classification>> {
    if !entry.is_split() {
        return Err(Error::InvalidInput(format!("{} is not split", entry.label)));
    }
    if !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("{} is not dominant", lambda)));
    }
    if !lambda.in_q() {
        return Ok(Some(Classification::Empty));
    }
    let fw = lambda
        .fw_int()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not integral", lambda)))?;
    let support: Vec<usize> = (0..fw.len()).filter(|&i| fw[i] != 0).collect();
    match support.as_slice() {
        [] => Ok(Some(Classification::PlusId)),
        [i] => {
            let ambient = entry.ambient().to_string();
            let row = table.row(&ambient, i + 1).ok_or_else(|| {
                Error::UnknownTable(format!("no sign row for {} ϖ_{}", ambient, i + 1))
            })?;
            let k = (fw[*i] / row.p as i64) as u32;
            let scalar = match row.m {
                MValue::Finite(m) => Some(k <= m),
                MValue::Infinite => Some(true),
                MValue::AtLeast(m) => (k <= m).then_some(true),
            };
            Ok(scalar.map(|s| {
                if !s {
                    return Classification::NonScalar;
                }
                let sigma = row.sigma.unwrap_or(1);
                if sigma == -1 && k % 2 == 1 {
                    Classification::MinusId
                } else {
                    Classification::PlusId
                }
            }))
        }
        _ => Ok(Some(Classification::NonScalar)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realform::catalog_entry;

    #[test]
    fn p_values() {
        let a1 = RootSystem::of_type("A1".parse().unwrap()).unwrap();
        assert_eq!(p_index(&a1, 0), 2);
        let a2 = RootSystem::of_type("A2".parse().unwrap()).unwrap();
        assert_eq!((p_index(&a2, 0), p_index(&a2, 1)), (3, 3));
        let b3 = RootSystem::of_type("B3".parse().unwrap()).unwrap();
        assert_eq!((0..3).map(|i| p_index(&b3, i)).collect::<Vec<_>>(), vec![1, 1, 2]);
    }

    #[test]
    fn a1_row_and_predictions() {
        let e = catalog_entry("sl(2,R)").unwrap();
        let rows = rows_for(&e, 100, 3).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].p, rows[0].m, rows[0].sigma), (2, MValue::Infinite, Some(-1)));
        let table = SplitSignTable { schema: 1, dim_cap: 100, max_k: 3, rows };
        let pred = |k: i64| predict_split_sign(&e, &Weight::from_fw_int(&e.rs, &[k]), &table).unwrap();
        assert_eq!(pred(2), Some(Classification::MinusId));
        assert_eq!(pred(8), Some(Classification::PlusId));
        assert_eq!(pred(3), Some(Classification::Empty));
    }

    #[test]
    fn a2_non_scalar_off_the_axes() {
        let e = catalog_entry("sl(3,R)").unwrap();
        let t = SplitSignTable::default_table().unwrap();
        let w = Weight::from_fw_int(&e.rs, &[1, 1]);
        assert_eq!(predict_split_sign(&e, &w, &t).unwrap(), Some(Classification::NonScalar));
        let w = Weight::from_fw_int(&e.rs, &[3, 0]);
        assert!(predict_split_sign(&e, &w, &t).unwrap().unwrap().is_scalar());
    }

    #[test]
    fn missing_row_and_non_split() {
        let e = catalog_entry("sl(2,R)").unwrap();
        let empty = SplitSignTable { schema: 1, dim_cap: 0, max_k: 0, rows: vec![] };
        let w = Weight::from_fw_int(&e.rs, &[2]);
        assert!(matches!(predict_split_sign(&e, &w, &empty), Err(Error::UnknownTable(_))));
        let su = catalog_entry("su(1,2)").unwrap();
        let w = Weight::from_fw_int(&su.rs, &[1, 1]);
        assert!(matches!(predict_split_sign(&su, &w, &empty), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn m_values_roundtrip() {
        for s in ["0", "2", "inf", ">=1"] {
            assert_eq!(s.parse::<MValue>().unwrap().to_string(), s);
        }
        assert!("x".parse::<MValue>().is_err());
    }
}

#[cfg(test)]
mod regen {
    #[test]
    #[ignore]
    fn write_shipped_table() {
        let t = super::generate_sign_table(super::TABLE_MAX_RANK, super::TABLE_DIM_CAP, super::TABLE_MAX_K).unwrap();
        std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/data/split_sign_table.toml"), t.to_toml()).unwrap();
    }
}
