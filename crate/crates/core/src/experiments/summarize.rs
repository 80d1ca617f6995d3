use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

use super::run::{fmt_f, Table};

/// Columns that identify a group rather than a measurement.
pub const KEY_COLUMNS: [&str; 8] = ["t", "i", "n", "m", "k", "l", "h", "distribution"];
/// Columns dropped before averaging.
pub const IGNORED_COLUMNS: [&str; 2] = ["rep", "seed"];

pub fn read_csv(path: &Path) -> Result<Table> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(rec?.iter().map(str::to_string).collect());
    }
    Ok(Table { header, rows })
}

/// Groups the rows of all files by their key columns and reports the mean,
/// sample standard deviation and count of every other column. Groups appear
/// in order of first occurrence. All files must share a header.
pub fn summarize(paths: &[impl AsRef<Path>]) -> Result<Table> {
    let tables = paths
        .iter()
        .map(|p| read_csv(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    summarize_tables(&tables)
}

pub fn summarize_tables(tables: &[Table]) -> Result<Table> {
    let first = tables
        .first()
        .ok_or_else(|| Error::usage("summarize needs at least one file"))?;
    if let Some(bad) = tables.iter().find(|t| t.header != first.header) {
        return Err(Error::usage(format!(
            "mixed headers: {:?} vs {:?}",
            first.header, bad.header
        )));
    }
    let keys: Vec<usize> = (0..first.header.len())
        .filter(|&c| KEY_COLUMNS.contains(&first.header[c].as_str()))
        .collect();
    let values: Vec<usize> = (0..first.header.len())
        .filter(|&c| {
            let name = first.header[c].as_str();
            !KEY_COLUMNS.contains(&name) && !IGNORED_COLUMNS.contains(&name)
        })
        .collect();

    let mut order: Vec<Vec<String>> = Vec::new();
    let mut groups: HashMap<Vec<String>, Vec<Vec<f64>>> = HashMap::new();
    for row in tables.iter().flat_map(|t| &t.rows) {
        let key: Vec<String> = keys.iter().map(|&c| row[c].clone()).collect();
        let mut sample = Vec::with_capacity(values.len());
        for &c in &values {
            let v = row[c].parse::<f64>().map_err(|_| {
                Error::usage(format!("column {:?} holds non-numeric {:?}", first.header[c], row[c]))
            })?;
            sample.push(v);
        }
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(sample);
    }

    let mut header: Vec<String> = keys.iter().map(|&c| first.header[c].clone()).collect();
    for &c in &values {
        header.push(format!("{}_mean", first.header[c]));
        header.push(format!("{}_std", first.header[c]));
    }
    header.push("count".into());
    let mut out = Table { header, rows: Vec::new() };
    for key in order {
        let samples = &groups[&key];
        let count = samples.len();
        let mut row = key;
        for j in 0..values.len() {
            let mean = samples.iter().map(|s| s[j]).sum::<f64>() / count as f64;
            let std = if count > 1 {
                let ss: f64 = samples.iter().map(|s| (s[j] - mean).powi(2)).sum();
                (ss / (count - 1) as f64).sqrt()
            } else {
                0.0
            };
            row.push(fmt_f(mean));
            row.push(fmt_f(std));
        }
        row.push(count.to_string());
        out.rows.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(header: &[&str], rows: &[&[&str]]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn groups_by_key_and_drops_seed() {
        let a = table(&["n", "seed", "value"], &[&["2", "7", "1.0"], &["3", "7", "4.0"]]);
        let b = table(&["n", "seed", "value"], &[&["2", "8", "3.0"]]);
        let s = summarize_tables(&[a, b]).unwrap();
        assert_eq!(s.header, ["n", "value_mean", "value_std", "count"]);
        assert_eq!(s.rows.len(), 2);
        assert_eq!(s.rows[0][0], "2");
        assert_eq!(s.floats("value_mean").unwrap(), vec![2.0, 4.0]);
        let std = s.floats("value_std").unwrap();
        assert!((std[0] - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(std[1], 0.0);
        assert_eq!(s.rows[1][3], "1");
    }

    #[test]
    fn mixed_headers_rejected() {
        let a = table(&["t", "value"], &[]);
        let b = table(&["i", "value"], &[]);
        assert!(matches!(summarize_tables(&[a, b]), Err(Error::Usage(_))));
    }
}
