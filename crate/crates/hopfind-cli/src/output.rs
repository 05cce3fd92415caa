//! Report rendering: JSON, CSV and pretty tables. The data stream is kept
//! machine-parseable; progress and observations go to stderr only.

use std::io::Write;
use std::path::Path;

use hopfind::config::AlgebraConfig;
use hopfind::cyclotomic::CycNumber;
use hopfind::indicators::Method;
use serde::Serialize;

use crate::{CommonOut, FormatArg, EXIT_IO};
use crate::run::CliError;

/// One emitted indicator value.
#[derive(Serialize)]
pub struct IndicatorRecord {
    pub algebra: AlgebraConfig,
    pub n: i64,
    pub method: Method,
    pub value: CycNumber,
    pub value_pretty: String,
}

impl IndicatorRecord {
    pub fn new(algebra: &AlgebraConfig, n: i64, method: Method, value: CycNumber) -> Self {
        let value = value.minimized();
        IndicatorRecord {
            algebra: algebra.clone(),
            n,
            method,
            value_pretty: value.to_string(),
            value,
        }
    }
}

pub fn render_indicator_records(
    records: &[IndicatorRecord],
    algebra: &AlgebraConfig,
    format: FormatArg,
) -> String {
    match format {
        FormatArg::Json => serde_json::to_string_pretty(records).expect("serializable") + "\n",
        FormatArg::Csv => {
            let mut out = String::new();
            out.push_str(&format!(
                "# algebra: {}\n",
                serde_json::to_string(algebra).expect("serializable")
            ));
            out.push_str("n,method,conductor,coeffs,value_pretty\n");
            for r in records {
                let coeffs: Vec<String> = r
                    .value
                    .coeffs()
                    .iter()
                    .map(hopfind::cyclotomic::format_rational)
                    .collect();
                out.push_str(&format!(
                    "{},{},{},{},\"{}\"\n",
                    r.n,
                    r.method,
                    r.value.conductor(),
                    coeffs.join(";"),
                    r.value_pretty
                ));
            }
            out
        }
        FormatArg::Pretty => {
            let mut out = String::new();
            out.push_str(&format!("algebra: {}\n", algebra.describe()));
            out.push_str(&format!("{:>6}  {:<9} value\n", "n", "method"));
            for r in records {
                out.push_str(&format!("{:>6}  {:<9} {}\n", r.n, r.method, r.value_pretty));
            }
            out
        }
    }
}

/// Generic JSON-or-pretty rendering for non-tabular reports.
pub fn render_report<T: Serialize>(value: &T, pretty_text: String, format: FormatArg) -> String {
    match format {
        FormatArg::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        FormatArg::Csv | FormatArg::Pretty => pretty_text,
    }
}

pub fn emit(out: &CommonOut, content: &str) -> Result<(), CliError> {
    match &out.out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => write_file(path, content),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot create {}: {e}", path.display()),
    })?;
    f.write_all(content.as_bytes()).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    })
}
