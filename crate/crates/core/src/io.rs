//! Plain-text table format used for every CSV output.
//!
//! ```text
//! # tool: sususy 0.1.0
//! # fingerprint: 0123456789abcdef
//! # status: regular
//! x,beta,dbeta
//! -6.0000000000000000e0,...
//! ```
//!
//! Metadata lines start with `# key: value`, followed by one header row and
//! the data rows. Floats are written with 17 significant digits so that a
//! write/read cycle is bit-exact.

use crate::{Error, Result};

/// A parsed or to-be-written CSV document with `#` metadata lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvDoc {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvDoc {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Parses column `name` of every row as `f64`.
    pub fn float_column(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self.column(name).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing column `{name}`"),
        })?;
        self.rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.get(idx)
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: r + 1,
                        msg: format!("bad value in column `{name}`"),
                    })
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = CsvDoc::default();
        let mut header_seen = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if header_seen {
                    continue;
                }
                if let Some((k, v)) = rest.split_once(':') {
                    doc.meta.push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            let fields: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if !header_seen {
                doc.columns = fields;
                header_seen = true;
            } else {
                if fields.len() != doc.columns.len() {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("expected {} fields, found {}", doc.columns.len(), fields.len()),
                    });
                }
                doc.rows.push(fields);
            }
        }
        if !header_seen {
            return Err(Error::Parse { line: 0, msg: "no header row".into() });
        }
        Ok(doc)
    }
}

/// 17 significant digits, round-trip exact.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_render_cycle() {
        let mut doc = CsvDoc::new(&["x", "v"]).with_meta("tool", "t").with_meta("status", "ok");
        doc.push_row(vec![fmt_f64(0.1), fmt_f64(-2.5)]);
        let back = CsvDoc::parse(&doc.render()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.meta("status"), Some("ok"));
        assert_eq!(back.float_column("v").unwrap(), vec![-2.5]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = CsvDoc::parse("a,b\n1,2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    proptest! {
        #[test]
        fn float_format_round_trips(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let back: f64 = fmt_f64(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
