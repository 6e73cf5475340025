//! Text and CSV renderings; JSON is the serialized `RunReport`.

use crate::error::CliError;
use crate::registry::Table;
use crate::report::{RunReport, Status};

pub fn csv_rows(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

pub fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let width: Vec<usize> = (0..cols)
        .map(|c| {
            std::iter::once(header)
                .chain(rows.iter().map(Vec::as_slice))
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |r: &[String]| {
        r.iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = width.get(c).copied().unwrap_or(0)))
            .collect::<Vec<_>>()
            .join(" ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header) + "\n";
    for r in rows {
        out += &line(r);
        out.push('\n');
    }
    out
}

pub fn diff_text(t: &Table) -> String {
    match &t.diff {
        None => "diff: no fixture for this table\n".into(),
        Some(d) if d.is_empty() => "diff: clean against the fixture\n".into(),
        Some(d) => {
            let mut out = format!("diff: {} cells differ (cell, fixture, computed)\n", d.len());
            for e in d {
                out += &format!("  {} {} {}\n", e.cell, e.fixture, e.computed);
            }
            out
        }
    }
}

pub fn table_text(t: &Table) -> String {
    let mut out = format!("{}\n", t.title);
    out += &aligned(&t.header, &t.rows);
    out += &diff_text(t);
    for n in &t.notes {
        out += &format!("note: {n}\n");
    }
    out
}

pub fn checks_text(r: &RunReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        out += &format!("{tag} {} {}\n", c.name, c.detail);
    }
    out += &format!("{}\n", r.summary());
    out
}

pub fn checks_csv(r: &RunReport) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            let status = serde_json::to_value(c.status)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            vec![c.name.clone(), status, c.detail.clone()]
        })
        .collect();
    csv_rows(&["name", "status", "detail"].map(String::from), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_fields() {
        let out = csv_rows(
            &["a".into(), "b".into()],
            &[vec!["x,y".into(), "z\"".into()]],
        )
        .unwrap();
        assert_eq!(out, "a,b\n\"x,y\",\"z\"\"\"\n");
    }

    #[test]
    fn alignment_pads_columns() {
        let out = aligned(
            &["i".into(), "val".into()],
            &[vec!["10".into(), "1".into()]],
        );
        assert_eq!(out, " i val\n10   1\n");
    }
}
