//! Row rendering: aligned table, CSV, one JSON object per line.

use clap::ValueEnum;
use serde::Serialize;

use crate::survey::SurveyRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Table,
    Csv,
    Jsonl,
}

pub const CSV_COLUMNS: [&str; 10] =
    ["algebra", "weight", "in_Q", "dim_V0", "dim_VL", "class", "nontrivial", "prediction", "agree", "millis"];

pub fn weight_string(w: &[i64]) -> String {
    w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn fields(r: &SurveyRow) -> [String; 10] {
    [
        r.algebra.clone(),
        weight_string(&r.weight),
        r.in_q.to_string(),
        r.dim_v0.to_string(),
        r.dim_vl.to_string(),
        r.class.clone(),
        r.nontrivial.to_string(),
        r.prediction.clone(),
        r.agree.to_string(),
        r.millis.map(|m| m.to_string()).unwrap_or_default(),
    ]
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{:<w$}", c, w = *w)).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn jsonl<T: Serialize>(items: &[T]) -> String {
    items.iter().map(|x| serde_json::to_string(x).expect("serializable") + "\n").collect()
}

pub fn render_rows(rows: &[SurveyRow], format: OutFormat) -> String {
    match format {
        OutFormat::Table => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| fields(r).to_vec()).collect();
            render_table(&CSV_COLUMNS, &cells)
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COLUMNS).expect("in-memory write");
            for r in rows {
                w.write_record(fields(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        OutFormat::Jsonl => jsonl(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> SurveyRow {
        SurveyRow {
            algebra: "sl(3,R)".into(),
            weight: vec![1, 1],
            in_q: true,
            dim_v0: 2,
            dim_vl: 2,
            class: "non-scalar".into(),
            nontrivial: true,
            prediction: "non-scalar".into(),
            agree: true,
            millis: None,
        }
    }

    #[test]
    fn csv_quotes_weights_and_blanks_timing() {
        let s = render_rows(&[row()], OutFormat::Csv);
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(lines.next().unwrap(), "\"sl(3,R)\",\"1,1\",true,2,2,non-scalar,true,non-scalar,true,");
    }

    #[test]
    fn jsonl_uses_column_names() {
        let s = render_rows(&[row()], OutFormat::Jsonl);
        let v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
        assert_eq!(v["dim_VL"], 2);
        assert_eq!(v["in_Q"], true);
        assert!(v.get("millis").is_none());
    }

    #[test]
    fn table_aligns() {
        let s = render_table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(s, "a    bb\nxxx  y\n");
    }
}
