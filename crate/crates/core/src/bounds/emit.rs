//! Table rendering: markdown, CSV, and a JSON form with every big value as a
//! decimal string. Output is byte-stable for a fixed table.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{BoundsConfig, CascadeTable, DimensionRow, NuRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!(
                "unknown table format `{other}` (expected md, csv or json)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum TableParseError {
    #[error("malformed table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`{field}` is not a decimal integer: {value}")]
    Number { field: &'static str, value: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    nu_bases: BTreeMap<usize, String>,
    v5_base: String,
    vfin7_base: String,
    nu_rule: NuRule,
    max_dim: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowJson {
    n: usize,
    a_min: String,
    nu: String,
    v_inf: String,
    v_fin: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    config: ConfigJson,
    rows: Vec<RowJson>,
}

fn number(field: &'static str, value: &str) -> Result<BigInt, TableParseError> {
    value.parse().map_err(|_| TableParseError::Number {
        field,
        value: value.to_string(),
    })
}

impl CascadeTable {
    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Markdown => self.to_markdown(),
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_min,nu,v_inf,v_fin\n");
        for r in &self.rows {
            let v_fin = r.v_fin_min.as_ref().map(|v| v.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{},{},{}", r.n, r.a_min, r.nu, r.v_inf_min, v_fin).unwrap();
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| n | a_{n-1} >= | nu_n >= | v_inf >= | v_fin >= |\n");
        out.push_str("|---:|---:|---:|---:|---:|\n");
        for r in &self.rows {
            let v_fin = r
                .v_fin_min
                .as_ref()
                .map_or_else(|| "-".to_string(), |v| v.to_string());
            writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.n, r.a_min, r.nu, r.v_inf_min, v_fin
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let c = &self.config;
        let doc = TableJson {
            config: ConfigJson {
                nu_bases: c.nu_bases.iter().map(|(n, v)| (*n, v.to_string())).collect(),
                v5_base: c.v5_base.to_string(),
                vfin7_base: c.vfin7_base.to_string(),
                nu_rule: c.nu_rule,
                max_dim: c.max_dim,
            },
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    n: r.n,
                    a_min: r.a_min.to_string(),
                    nu: r.nu.to_string(),
                    v_inf: r.v_inf_min.to_string(),
                    v_fin: r.v_fin_min.as_ref().map(|v| v.to_string()),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("table serialization");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, TableParseError> {
        let doc: TableJson = serde_json::from_str(text)?;
        let mut nu_bases = BTreeMap::new();
        for (n, v) in &doc.config.nu_bases {
            nu_bases.insert(*n, number("nu_bases", v)?);
        }
        let config = BoundsConfig {
            nu_bases,
            v5_base: number("v5_base", &doc.config.v5_base)?,
            vfin7_base: number("vfin7_base", &doc.config.vfin7_base)?,
            nu_rule: doc.config.nu_rule,
            max_dim: doc.config.max_dim,
        };
        let rows = doc
            .rows
            .iter()
            .map(|r| {
                Ok(DimensionRow {
                    n: r.n,
                    nu: number("nu", &r.nu)?,
                    a_min: number("a_min", &r.a_min)?,
                    v_inf_min: number("v_inf", &r.v_inf)?,
                    v_fin_min: r.v_fin.as_deref().map(|v| number("v_fin", v)).transpose()?,
                })
            })
            .collect::<Result<_, TableParseError>>()?;
        Ok(CascadeTable { config, rows })
    }
}
