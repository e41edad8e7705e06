//! CSV ingestion, preprocessing, and report serialization.
//!
//! Output files are self-describing: JSON documents carry `schema_version`
//! and the full `config` (including the seed) at the top level; CSV files
//! carry the same provenance as leading `#` comment lines ahead of the
//! RFC-4180 table. Identical config + seed therefore reproduces byte-identical
//! files.

use crate::copula::DataMatrix;
use crate::error::{Error, Result};
use crate::inference::{EstimatorBackend, GradientReport, MultipletScan};
use crate::ising::SweepResult;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

/// Version of every serialized output schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Per-column preprocessing applied after ingestion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preprocess {
    None,
    LogReturns,
}

/// Serialization format of report files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// β grid bounds of a sweep run.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BetaGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// Everything that determined a run; embedded verbatim in every output file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub columns: Vec<String>,
    pub preprocess: Preprocess,
    pub backend: EstimatorBackend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub n_boot: usize,
    pub alpha: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_grid: Option<BetaGrid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub format: OutputFormat,
}

/// A parsed CSV: column names, numeric columns, and the name of the leading
/// index column when one was detected and dropped.
#[derive(Clone, Debug)]
pub struct ColumnTable {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub dropped_index: Option<String>,
}

impl ColumnTable {
    /// Restricts the table to the named columns, in the order given.
    pub fn select(&self, wanted: &[String]) -> Result<ColumnTable> {
        if wanted.is_empty() {
            return Ok(self.clone());
        }
        let mut names = Vec::with_capacity(wanted.len());
        let mut columns = Vec::with_capacity(wanted.len());
        for w in wanted {
            let pos = self
                .names
                .iter()
                .position(|n| n == w)
                .ok_or_else(|| Error::UnknownColumn(w.clone()))?;
            names.push(self.names[pos].clone());
            columns.push(self.columns[pos].clone());
        }
        Ok(ColumnTable {
            names,
            columns,
            dropped_index: self.dropped_index.clone(),
        })
    }

    pub fn to_data_matrix(&self) -> Result<DataMatrix> {
        DataMatrix::from_columns(&self.columns)
    }
}

/// Reads a comma-separated file with a mandatory header row.
///
/// When the first column contains any value that does not parse as a number
/// (a date index, typically), it is dropped and reported via
/// [`ColumnTable::dropped_index`]; non-numeric values anywhere else are an
/// error.
pub fn read_columns(path: &Path) -> Result<ColumnTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if headers.is_empty() {
        return Err(Error::Parse(format!("{}: no header row", path.display())));
    }
    let records: Vec<csv::StringRecord> =
        reader.records().collect::<std::result::Result<_, _>>()?;
    if records.is_empty() {
        return Err(Error::Parse(format!("{}: no data rows", path.display())));
    }
    let first_is_index = records
        .iter()
        .any(|rec| rec.get(0).is_none_or(|v| v.parse::<f64>().is_err()));
    let start = usize::from(first_is_index);
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(records.len()); headers.len() - start];
    for (row, rec) in records.iter().enumerate() {
        if rec.len() != headers.len() {
            return Err(Error::Parse(format!(
                "row {row}: {} fields, header has {}",
                rec.len(),
                headers.len()
            )));
        }
        for (k, col) in columns.iter_mut().enumerate() {
            let field = rec.get(start + k).unwrap_or("");
            let value: f64 = field.parse().map_err(|_| {
                Error::Parse(format!(
                    "column '{}', row {row}: cannot parse '{field}' as a number",
                    headers[start + k]
                ))
            })?;
            col.push(value);
        }
    }
    Ok(ColumnTable {
        names: headers[start..].to_vec(),
        columns,
        dropped_index: first_is_index.then(|| headers[0].clone()),
    })
}

/// Reads a headerless square coupling matrix (comma-separated).
pub fn read_couplings(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)?;
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let row: Vec<f64> = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("couplings row {r}: cannot parse '{f}'")))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Logarithmic returns r_t = ln(x_{t+1} / x_t); output is one shorter than
/// the input. Non-positive values have no log return and are reported with
/// their 0-based row.
pub fn log_returns(series: &[f64]) -> Result<Vec<f64>> {
    for (row, &v) in series.iter().enumerate() {
        if v <= 0.0 {
            return Err(Error::NonPositiveValue { row, value: v });
        }
    }
    Ok(series.windows(2).map(|w| (w[1] / w[0]).ln()).collect())
}

/// Applies the configured preprocessing to every column.
pub fn apply_preprocess(table: &ColumnTable, preprocess: Preprocess) -> Result<ColumnTable> {
    match preprocess {
        Preprocess::None => Ok(table.clone()),
        Preprocess::LogReturns => {
            let columns = table
                .names
                .iter()
                .zip(&table.columns)
                .map(|(name, col)| {
                    log_returns(col).map_err(|e| Error::Parse(format!("column '{name}': {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ColumnTable {
                names: table.names.clone(),
                columns,
                dropped_index: table.dropped_index.clone(),
            })
        }
    }
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn write_text(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, content)?;
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn provenance(config: &RunConfig) -> Result<String> {
    let compact = serde_json::to_string(config).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(format!(
        "# schema_version: {SCHEMA_VERSION}\n# config: {compact}\n"
    ))
}

/// JSON envelope: schema version, full config, one payload field.
pub fn json_document<T: Serialize>(config: &RunConfig, key: &str, payload: &T) -> Result<String> {
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "config": config,
        key: payload,
    });
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn csv_body<F>(build: F) -> Result<String>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>,
{
    let mut writer = csv::Writer::from_writer(Vec::new());
    build(&mut writer)?;
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Report table as provenance-prefixed CSV.
pub fn reports_csv(config: &RunConfig, reports: &[GradientReport]) -> Result<String> {
    let body = csv_body(|w| {
        w.write_record([
            "label",
            "estimate",
            "ci_low",
            "ci_high",
            "significant",
            "n_boot",
            "seed",
        ])?;
        for r in reports {
            w.write_record([
                r.label.as_str(),
                &r.estimate.to_string(),
                &r.ci_low.to_string(),
                &r.ci_high.to_string(),
                &r.significant.to_string(),
                &r.n_boot.to_string(),
                &r.seed.to_string(),
            ])?;
        }
        Ok(())
    })?;
    Ok(provenance(config)? + &body)
}

/// Pairwise reports as a plot-ready edge list: (node_i, node_j, value,
/// significant) rows. `pairs` gives the member indices behind each report.
pub fn edge_list_csv(
    config: &RunConfig,
    names: &[String],
    pairs: &[Vec<usize>],
    reports: &[GradientReport],
) -> Result<String> {
    let body = csv_body(|w| {
        w.write_record(["node_i", "node_j", "value", "significant"])?;
        for (members, r) in pairs.iter().zip(reports) {
            w.write_record([
                names[members[0]].as_str(),
                names[members[1]].as_str(),
                &r.estimate.to_string(),
                &r.significant.to_string(),
            ])?;
        }
        Ok(())
    })?;
    Ok(provenance(config)? + &body)
}

/// Sweep result as CSV: one row per β, one column per traced quantity.
pub fn sweep_csv(config: &RunConfig, result: &SweepResult) -> Result<String> {
    let body = csv_body(|w| {
        let mut header = vec!["beta".to_string()];
        header.extend(result.curves.iter().map(|c| c.label.clone()));
        w.write_record(&header)?;
        for (k, beta) in result.betas.iter().enumerate() {
            let mut row = vec![beta.to_string()];
            row.extend(result.curves.iter().map(|c| c.values[k].to_string()));
            w.write_record(&row)?;
        }
        Ok(())
    })?;
    Ok(provenance(config)? + &body)
}

/// The three CSV faces of a multiplet scan: the per-multiplet table, the
/// per-variable indices, and the per-pair indices as an edge list.
pub fn scan_csv_files(config: &RunConfig, scan: &MultipletScan) -> Result<[(String, String); 3]> {
    let multiplets = csv_body(|w| {
        w.write_record([
            "members",
            "label",
            "estimate",
            "ci_low",
            "ci_high",
            "significant",
        ])?;
        for m in &scan.multiplets {
            let members = m
                .members
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("|");
            w.write_record([
                members.as_str(),
                m.report.label.as_str(),
                &m.report.estimate.to_string(),
                &m.report.ci_low.to_string(),
                &m.report.ci_high.to_string(),
                &m.report.significant.to_string(),
            ])?;
        }
        Ok(())
    })?;
    let variables = csv_body(|w| {
        w.write_record(["variable", "name", "r_omega", "s_omega"])?;
        for v in &scan.variable_indices {
            w.write_record([
                v.variable.to_string().as_str(),
                v.name.as_str(),
                &v.r_omega.to_string(),
                &v.s_omega.to_string(),
            ])?;
        }
        Ok(())
    })?;
    let pairs = csv_body(|w| {
        w.write_record(["node_i", "node_j", "r_omega", "s_omega"])?;
        for p in &scan.pair_indices {
            w.write_record([
                p.name_i.as_str(),
                p.name_j.as_str(),
                &p.r_omega.to_string(),
                &p.s_omega.to_string(),
            ])?;
        }
        Ok(())
    })?;
    let head = provenance(config)?;
    Ok([
        ("multiplets".to_string(), head.clone() + &multiplets),
        ("variables".to_string(), head.clone() + &variables),
        ("pairs".to_string(), head + &pairs),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample_config() -> RunConfig {
        RunConfig {
            command: "gradients".into(),
            input: Some("data.csv".into()),
            columns: vec!["a".into(), "b".into()],
            preprocess: Preprocess::LogReturns,
            backend: EstimatorBackend::GaussianCopula,
            order: Some(1),
            n_boot: 1000,
            alpha: 0.05,
            seed: 42,
            beta_grid: None,
            output: None,
            format: OutputFormat::Csv,
        }
    }

    #[test]
    fn log_return_reference_values() {
        let r = log_returns(&[1.0, std::f64::consts::E, std::f64::consts::E.powi(2)]).unwrap();
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1], 1.0, epsilon = 1e-15);

        let constant = log_returns(&[5.0; 10]).unwrap();
        assert!(constant.iter().all(|&v| v == 0.0));
        assert_eq!(log_returns(&vec![2.0; 244]).unwrap().len(), 243);

        match log_returns(&[1.0, -2.0, 3.0]) {
            Err(Error::NonPositiveValue { row: 1, value }) => assert_eq!(value, -2.0),
            other => panic!("expected NonPositiveValue, got {other:?}"),
        }
    }

    #[test]
    fn csv_round_trip_with_date_index() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        fs::write(
            &path,
            "DATE,GDP,CPI\n1959-04-01,2.0,1.5\n1959-07-01,2.5,1.6\n1959-10-01,3.0,1.4\n",
        )
        .unwrap();
        let table = read_columns(&path).unwrap();
        assert_eq!(table.dropped_index.as_deref(), Some("DATE"));
        assert_eq!(table.names, vec!["GDP", "CPI"]);
        assert_eq!(table.columns[0], vec![2.0, 2.5, 3.0]);

        let selected = table.select(&["CPI".to_string()]).unwrap();
        assert_eq!(selected.names, vec!["CPI"]);
        assert!(matches!(
            table.select(&["missing".to_string()]),
            Err(Error::UnknownColumn(_))
        ));
    }

    #[test]
    fn fully_numeric_first_column_is_kept() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        fs::write(&path, "a,b\n1,2\n3,4\n").unwrap();
        let table = read_columns(&path).unwrap();
        assert_eq!(table.dropped_index, None);
        assert_eq!(table.names, vec!["a", "b"]);
    }

    #[test]
    fn report_csv_has_provenance_then_table() {
        let report = GradientReport {
            label: "grad2[a,b]".into(),
            estimate: 0.25,
            ci_low: 0.1,
            ci_high: 0.4,
            significant: true,
            n_boot: 1000,
            seed: 42,
        };
        let text = reports_csv(&sample_config(), &[report]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# schema_version: 1");
        assert!(lines.next().unwrap().starts_with("# config: {"));
        assert_eq!(
            lines.next().unwrap(),
            "label,estimate,ci_low,ci_high,significant,n_boot,seed"
        );
        // The comma inside the label must be quoted per RFC-4180.
        assert!(lines.next().unwrap().starts_with("\"grad2[a,b]\","));
    }

    #[test]
    fn json_document_embeds_config_and_schema() {
        let text = json_document(&sample_config(), "reports", &Vec::<u32>::new()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema_version"], 1);
        assert_eq!(value["config"]["seed"], 42);
        assert_eq!(value["config"]["backend"], "gaussian_copula");
        assert!(value["reports"].is_array());
    }
}
