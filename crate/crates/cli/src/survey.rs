//! Weight surveys over catalog entries.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use rweyl::invariants::{compute_report, report_from_module, Classification, InvariantReport};
use rweyl::realform::{predict_nonvanishing, Catalog, Nonvanishing, RealFormEntry};
use rweyl::repbuild::build_module;
use rweyl::rootsys::{weyl_dimension, RootSystem, Weight};
use rweyl::signtable::{predict_split_sign, SplitSignTable};
use serde::Serialize;

use crate::cache::{report_key, Cache};
use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Class(Classification),
    Vanishing(Nonvanishing),
}

impl Prediction {
    pub fn label(&self) -> String {
        match self {
            Prediction::Class(c) => c.to_string(),
            Prediction::Vanishing(n) => n.to_string(),
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Prediction::Vanishing(Nonvanishing::Unknown))
    }

    pub fn agrees(&self, report: &InvariantReport) -> bool {
        match self {
            Prediction::Class(c) => *c == report.classification,
            Prediction::Vanishing(Nonvanishing::Nonzero) => report.dim_vl() > 0,
            Prediction::Vanishing(Nonvanishing::Zero) => report.dim_vl() == 0,
            Prediction::Vanishing(Nonvanishing::Unknown) => true,
        }
    }
}

/// Theorem-based prediction: the sign table for split entries (falling back
/// to the cone data where the table is silent), the cone data otherwise.
pub fn predict(entry: &RealFormEntry, lambda: &[i64], table: &SplitSignTable) -> Prediction {
    let w = Weight::from_fw_int(&entry.rs, lambda);
    if entry.is_split() {
        if let Ok(Some(c)) = predict_split_sign(entry, &w, table) {
            return Prediction::Class(c);
        }
    }
    Prediction::Vanishing(predict_nonvanishing(entry, &w))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub algebra: String,
    pub weight: Vec<i64>,
    #[serde(rename = "in_Q")]
    pub in_q: bool,
    #[serde(rename = "dim_V0")]
    pub dim_v0: usize,
    #[serde(rename = "dim_VL")]
    pub dim_vl: usize,
    pub class: String,
    pub nontrivial: bool,
    pub prediction: String,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl SurveyRow {
    pub fn from_report(report: &InvariantReport, pred: Prediction, millis: Option<u128>) -> Self {
        SurveyRow {
            algebra: report.algebra.clone(),
            weight: report.lambda.clone(),
            in_q: report.in_q,
            dim_v0: report.dim_v0,
            dim_vl: report.dim_vl(),
            class: report.classification.to_string(),
            nontrivial: report.nontrivial,
            prediction: pred.label(),
            agree: pred.agrees(report),
            millis,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SurveyOptions {
    pub max_coord: i64,
    pub dim_cap: u128,
    pub timing: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions { max_coord: 4, dim_cap: 5000, timing: false }
    }
}

/// Nonzero dominant weights in `Q` with coordinates `<= max_coord` and
/// dimension `<= dim_cap`, ordered by coordinate sum then lexicographically.
pub fn survey_weights(rs: &RootSystem, max_coord: i64, dim_cap: u128) -> Vec<Vec<i64>> {
    let r = rs.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        if c.iter().any(|&x| x != 0)
            && Weight::from_fw_int(rs, &c).in_q()
            && weyl_dimension(rs, &c).is_ok_and(|d| d <= dim_cap)
        {
            out.push(c.clone());
        }
        // odometer increment
        let mut i = r;
        loop {
            if i == 0 {
                out.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
                return out;
            }
            i -= 1;
            if c[i] < max_coord {
                c[i] += 1;
                break;
            }
            c[i] = 0;
        }
    }
}

/// Entries of the catalog with ambient rank `<= max_rank`, catalog order.
pub fn entries_up_to(catalog: &Catalog, max_rank: usize) -> CliResult<Vec<RealFormEntry>> {
    let mut out = Vec::new();
    for rec in catalog.records() {
        let e = catalog.entry(&rec.label)?;
        if e.rs.rank() <= max_rank {
            out.push(e);
        }
    }
    Ok(out)
}

/// Reports for several entries sharing an ambient system at one weight,
/// building the module at most once.
fn reports_for_group(
    entries: &[&RealFormEntry],
    lambda: &[i64],
    dim_cap: u128,
    cache: Option<&Cache>,
) -> CliResult<Vec<(InvariantReport, u128)>> {
    let mut module = None;
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let start = Instant::now();
        let key = report_key(e, lambda);
        if let Some(r) = cache.map(|c| c.get_report(&key)).transpose()?.flatten() {
            out.push((r, start.elapsed().as_millis()));
            continue;
        }
        let report = if Weight::from_fw_int(&e.rs, lambda).in_q() {
            if module.is_none() {
                module = Some(build_module(&e.rs, lambda, dim_cap)?);
            }
            report_from_module(e, module.as_ref().expect("built"))?
        } else {
            compute_report(e, lambda, dim_cap)?
        };
        if let Some(c) = cache {
            c.put_report(key, &report)?;
        }
        out.push((report, start.elapsed().as_millis()));
    }
    Ok(out)
}

/// Survey the given entries; rows follow entry order, then weight order,
/// whatever order the work pool finishes in.
pub fn run_survey(
    entries: &[RealFormEntry],
    opts: SurveyOptions,
    cache: Option<&Cache>,
    table: &SplitSignTable,
) -> CliResult<Vec<SurveyRow>> {
    // group (entry, weight) pairs by (ambient, weight) to share modules
    let mut groups: BTreeMap<(String, Vec<i64>), Vec<usize>> = BTreeMap::new();
    let mut weights = Vec::with_capacity(entries.len());
    for (ei, e) in entries.iter().enumerate() {
        let ws = survey_weights(&e.rs, opts.max_coord, opts.dim_cap);
        for w in &ws {
            groups.entry((e.ambient().to_string(), w.clone())).or_default().push(ei);
        }
        weights.push(ws);
    }
    let tasks: Vec<_> = groups.into_iter().collect();
    let results = tasks
        .par_iter()
        .map(|((_, w), idx)| {
            let es: Vec<&RealFormEntry> = idx.iter().map(|&i| &entries[i]).collect();
            reports_for_group(&es, w, opts.dim_cap, cache)
        })
        .collect::<Vec<_>>();
    let mut by_key: BTreeMap<(usize, Vec<i64>), (InvariantReport, u128)> = BTreeMap::new();
    for (((_, w), idx), res) in tasks.iter().zip(results) {
        for (&i, r) in idx.iter().zip(res?) {
            by_key.insert((i, w.clone()), r);
        }
    }
    let mut rows = Vec::new();
    for (ei, e) in entries.iter().enumerate() {
        for w in &weights[ei] {
            let (report, ms) = &by_key[&(ei, w.clone())];
            let pred = predict(e, w, table);
            rows.push(SurveyRow::from_report(report, pred, opts.timing.then_some(*ms)));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rweyl::realform::catalog_entry;

    #[test]
    fn sl2r_weights_and_signs() {
        let e = catalog_entry("sl2r").unwrap();
        assert_eq!(survey_weights(&e.rs, 8, 5000), vec![vec![2], vec![4], vec![6], vec![8]]);
        let table = SplitSignTable::default_table().unwrap();
        let opts = SurveyOptions { max_coord: 8, ..Default::default() };
        let rows = run_survey(&[e], opts, None, &table).unwrap();
        let classes: Vec<&str> = rows.iter().map(|r| r.class.as_str()).collect();
        assert_eq!(classes, ["-id", "+id", "-id", "+id"]);
        assert!(rows.iter().all(|r| r.agree && r.millis.is_none()));
    }

    #[test]
    fn graded_order() {
        let e = catalog_entry("sl3r").unwrap();
        let ws = survey_weights(&e.rs, 3, 5000);
        assert_eq!(&ws[..3], &[vec![1, 1], vec![0, 3], vec![3, 0]]);
    }
}
