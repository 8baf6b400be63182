//! Argument parsing and subcommand dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rweyl::invariants::compute_report;
use rweyl::realform::{generate_default_catalog, lift_or_identity, Catalog, RealFormEntry};
use rweyl::rootsys::classify_cartan;
use rweyl::signtable::{generate_sign_table, SplitSignTable, TABLE_DIM_CAP, TABLE_MAX_K, TABLE_MAX_RANK};
use rweyl::Error;

use crate::cache::{report_key, Cache};
use crate::error::{CliError, CliResult};
use crate::output::{jsonl, render_rows, render_table, weight_string, OutFormat};
use crate::survey::{entries_up_to, predict, run_survey, SurveyOptions};
use crate::verify::{conjecture_outcomes, render_checks, render_conjectures, theorem_checks, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "rweyl", version, about = "L-invariant vectors and the restricted longest Weyl element")]
pub struct Cli {
    /// Extra catalog file (TOML) layered over the built-in catalog.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the restricted root data of an algebra.
    Describe {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value = "table")]
        out: OutFormat,
    },
    /// Compute V^L and the w0 action for one highest weight.
    Invariants {
        #[arg(long)]
        algebra: String,
        /// Fundamental-weight coordinates, comma separated.
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 5000)]
        dim_cap: u128,
        #[arg(long, value_enum, default_value = "table")]
        out: OutFormat,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Enumerate nonzero dominant weights in Q and report each.
    Survey {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        algebra: Option<String>,
        /// Survey every catalog entry of rank <= --max-rank.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_coord: i64,
        #[arg(long, default_value_t = 5000)]
        dim_cap: u128,
        #[arg(long, value_enum, default_value = "table")]
        out: OutFormat,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Fill the millis column (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Run theorem checks and/or conjecture reports.
    Verify {
        #[arg(long)]
        theorems: bool,
        #[arg(long)]
        conjectures: bool,
        #[arg(long, default_value_t = 3)]
        max_coord: i64,
        #[arg(long, default_value_t = 5000)]
        dim_cap: u128,
    },
    /// Regenerate the split sign table.
    RegenTable {
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = TABLE_MAX_RANK)]
        max_rank: usize,
        #[arg(long, default_value_t = TABLE_DIM_CAP)]
        dim_cap: u128,
        #[arg(long, default_value_t = TABLE_MAX_K)]
        max_k: u32,
    },
    /// Inspect or clear the report cache.
    Cache {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[command(subcommand)]
        action: CacheAction,
    },
    /// List catalog entries, or emit the generated default catalog.
    Catalog {
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    Ls,
    Clear,
    Verify,
}

pub fn parse_weight(s: &str, rank: usize) -> CliResult<Vec<i64>> {
    let w: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("malformed weight {:?}", s)))?;
    if w.len() != rank {
        return Err(Error::InvalidInput(format!("weight {:?} needs {} coordinates", s, rank)).into());
    }
    if w.iter().any(|&c| c < 0) {
        return Err(Error::InvalidInput(format!("weight {:?} is not dominant", s)).into());
    }
    Ok(w)
}

fn load_catalog(path: Option<&PathBuf>) -> CliResult<Catalog> {
    match path {
        None => Ok(Catalog::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            Ok(Catalog::with_extra(&text)?)
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> CliResult<()> {
    out.write_all(s.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn describe(entry: &RealFormEntry, format: OutFormat) -> String {
    let rs = &entry.rs;
    let r = &entry.restricted;
    let sub: Vec<Vec<i64>> =
        r.delta0_basis.iter().map(|&i| r.delta0_basis.iter().map(|&j| rs.cartan()[i][j]).collect()).collect();
    let black: Vec<usize> = entry.black.iter().map(|b| b + 1).collect();
    let fields = vec![
        ("algebra", entry.label.clone()),
        ("ambient", entry.ambient().to_string()),
        ("kind", entry.kind.to_string()),
        ("restricted_rank", entry.restricted_rank().to_string()),
        ("black", join(&black)),
        ("delta0_type", classify_cartan(&sub)),
        ("delta0_roots", r.delta0.len().to_string()),
        ("restricted_type", r.type_name.clone()),
        ("multiplicities", join(&r.multiplicities)),
        ("positive_restricted_roots", r.roots.len().to_string()),
        ("w0_lift", lift_or_identity(entry).to_string()),
        ("cone", entry.cone.to_string()),
    ];
    match format {
        OutFormat::Jsonl => {
            let map: serde_json::Map<String, serde_json::Value> =
                fields.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
            serde_json::to_string(&map).expect("json") + "\n"
        }
        OutFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(fields.iter().map(|f| f.0)).expect("in-memory");
            w.write_record(fields.iter().map(|f| f.1.as_str())).expect("in-memory");
            String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
        }
        OutFormat::Table => {
            let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            render_table(&["field", "value"], &rows)
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let catalog = load_catalog(cli.catalog.as_ref())?;
    match cli.command {
        Command::Describe { algebra, out: format } => {
            let e = catalog.entry(&algebra)?;
            emit(out, &describe(&e, format))
        }
        Command::Invariants { algebra, weight, dim_cap, out: format, cache_dir } => {
            let e = catalog.entry(&algebra)?;
            let w = parse_weight(&weight, e.rs.rank())?;
            let cache = Cache::from_flag(cache_dir.as_deref())?;
            let key = report_key(&e, &w);
            let report = match cache.as_ref().map(|c| c.get_report(&key)).transpose()?.flatten() {
                Some(r) => r,
                None => {
                    let r = compute_report(&e, &w, dim_cap)?;
                    if let Some(c) = &cache {
                        c.put_report(key, &r)?;
                    }
                    r
                }
            };
            let table = SplitSignTable::default_table()?;
            let pred = predict(&e, &w, &table);
            let text = match format {
                OutFormat::Jsonl => jsonl(&[&report]),
                OutFormat::Csv => {
                    let row = crate::survey::SurveyRow::from_report(&report, pred, None);
                    render_rows(&[row], OutFormat::Csv)
                }
                OutFormat::Table => {
                    let matrix: Vec<String> = report
                        .w0_matrix
                        .iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                        .collect();
                    let mut rows = vec![
                        vec!["algebra".to_string(), report.algebra.clone()],
                        vec!["weight".into(), weight_string(&report.lambda)],
                        vec!["in_Q".into(), report.in_q.to_string()],
                        vec!["module_dim".into(), report.module_dim.to_string()],
                        vec!["dim_V0".into(), report.dim_v0.to_string()],
                        vec!["dim_VL".into(), report.dim_vl().to_string()],
                        vec!["class".into(), report.classification.to_string()],
                        vec!["nontrivial".into(), report.nontrivial.to_string()],
                        vec!["w0_lift".into(), report.lift.clone()],
                        vec![
                            "prediction".into(),
                            format!("{} ({})", pred.label(), if pred.agrees(&report) { "agrees" } else { "DISAGREES" }),
                        ],
                    ];
                    for (i, m) in matrix.into_iter().enumerate() {
                        rows.push(vec![if i == 0 { "w0_matrix".into() } else { String::new() }, m]);
                    }
                    render_table(&["field", "value"], &rows)
                }
            };
            emit(out, &text)
        }
        Command::Survey { algebra, all, max_rank, max_coord, dim_cap, out: format, cache_dir, timing } => {
            let entries = match algebra {
                Some(a) if !all => vec![catalog.entry(&a)?],
                _ => entries_up_to(&catalog, max_rank)?,
            };
            let cache = Cache::from_flag(cache_dir.as_deref())?;
            let table = SplitSignTable::default_table()?;
            let opts = SurveyOptions { max_coord, dim_cap, timing };
            let rows = run_survey(&entries, opts, cache.as_ref(), &table)?;
            emit(out, &render_rows(&rows, format))
        }
        Command::Verify { theorems, conjectures, max_coord, dim_cap } => {
            let (theorems, conjectures) = if theorems || conjectures { (theorems, conjectures) } else { (true, false) };
            let mut failed = 0;
            if theorems {
                let opts = VerifyOptions { max_coord, dim_cap: dim_cap.min(VerifyOptions::default().dim_cap), ..Default::default() };
                let table = SplitSignTable::default_table()?;
                let checks = theorem_checks(&catalog, &opts, &table)?;
                failed = checks.iter().filter(|c| c.is_failure()).count();
                emit(out, &format!("THEOREMS\n{}", render_checks(&checks)))?;
            }
            if conjectures {
                if theorems {
                    emit(out, "\n")?;
                }
                let outcomes = conjecture_outcomes(&catalog, dim_cap)?;
                emit(out, &format!("CONJECTURES\n{}", render_conjectures(&outcomes)))?;
            }
            if failed > 0 {
                return Err(CliError::VerifyFailed(failed));
            }
            Ok(())
        }
        Command::RegenTable { output, max_rank, dim_cap, max_k } => {
            let text = generate_sign_table(max_rank, dim_cap, max_k)?.to_toml();
            match output {
                Some(p) => std::fs::write(&p, text).map_err(|e| CliError::io(&p, e)),
                None => emit(out, &text),
            }
        }
        Command::Cache { cache_dir, action } => {
            let cache = Cache::from_flag(cache_dir.as_deref())?
                .ok_or_else(|| CliError::Usage("cache needs --cache-dir or RWEYL_CACHE_DIR".into()))?;
            match action {
                CacheAction::Ls => {
                    let mut rows = Vec::new();
                    for (p, res) in cache.verify_all()? {
                        let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                        rows.push(match res {
                            Ok(r) => vec![r.algebra, weight_string(&r.lambda), name],
                            Err(e) => vec!["?".into(), e.to_string(), name],
                        });
                    }
                    emit(out, &render_table(&["algebra", "weight", "file"], &rows))
                }
                CacheAction::Clear => {
                    let n = cache.clear()?;
                    emit(out, &format!("removed {} records\n", n))
                }
                CacheAction::Verify => {
                    let results = cache.verify_all()?;
                    let n = results.len();
                    let mut first_err = None;
                    for (p, res) in results {
                        if let Err(e) = res {
                            emit(out, &format!("BAD  {}: {}\n", p.display(), e))?;
                            first_err.get_or_insert(e);
                        }
                    }
                    match first_err {
                        Some(e) => Err(e),
                        None => emit(out, &format!("{} records ok\n", n)),
                    }
                }
            }
        }
        Command::Catalog { emit: true } => emit(out, &generate_default_catalog()?.to_toml()),
        Command::Catalog { emit: false } => {
            let rows: Vec<Vec<String>> = catalog
                .records()
                .iter()
                .map(|r| {
                    vec![
                        r.label.clone(),
                        r.ambient.clone(),
                        r.kind.to_string(),
                        r.restricted_type.clone(),
                        join(&r.multiplicities),
                        r.cone.to_string(),
                    ]
                })
                .collect();
            emit(out, &render_table(&["label", "ambient", "kind", "restricted", "mult", "cone"], &rows))
        }
    }
}

/// Parse `args`, run, and map the outcome to an exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}
