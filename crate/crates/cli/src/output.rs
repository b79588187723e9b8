//! Rendering of command results as JSON, CSV or aligned text.
//!
//! Every floating-point number is rounded to 12 significant digits before it
//! is written, so repeated runs produce identical bytes and the JSON and CSV
//! forms of one result parse back to the same values.

use std::fmt::Write as _;

use clap::ValueEnum;
use fgtrace::Complex64;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Table {
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A command result. `csv` and `text` may hold different layouts of the
/// same data; `pass` decides the exit status.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub csv: Vec<Table>,
    pub text: Vec<Table>,
    pub preamble: Vec<String>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl Report {
    pub fn new(json: Value, tables: Vec<Table>) -> Self {
        Report {
            json,
            csv: tables.clone(),
            text: tables,
            preamble: Vec::new(),
            warnings: Vec::new(),
            pass: true,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| CliError::Input(format!("cannot serialise output: {e}")))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut out = Vec::new();
                for (i, table) in self.csv.iter().enumerate() {
                    if i > 0 {
                        out.push(b'\n');
                    }
                    let mut w = csv::Writer::from_writer(&mut out);
                    let io = |e: csv::Error| CliError::Input(format!("cannot write csv: {e}"));
                    w.write_record(&table.header).map_err(io)?;
                    for row in &table.rows {
                        w.write_record(row).map_err(io)?;
                    }
                    w.flush()
                        .map_err(|e| CliError::Input(format!("cannot write csv: {e}")))?;
                }
                String::from_utf8(out).map_err(|e| CliError::Input(e.to_string()))
            }
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        for line in &self.preamble {
            let _ = writeln!(s, "{line}");
        }
        for table in &self.text {
            if !s.is_empty() {
                s.push('\n');
            }
            if !table.title.is_empty() {
                let _ = writeln!(s, "{}", table.title);
            }
            let mut width: Vec<usize> = table.header.iter().map(|h| h.chars().count()).collect();
            for row in &table.rows {
                for (w, cell) in width.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let mut l = String::new();
                for (i, (cell, w)) in cells.iter().zip(&width).enumerate() {
                    if i > 0 {
                        l.push_str("  ");
                    }
                    let _ = write!(l, "{cell:<w$}");
                }
                l.trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(&table.header));
            for row in &table.rows {
                let _ = writeln!(s, "{}", line(row));
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

/// Plain decimal for ordinary magnitudes, exponent form otherwise.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".into()
    } else if !r.is_finite() || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let (re, im) = (round_sig(z.re), round_sig(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_num(re),
        (true, false) => format!("{}i", fmt_num(im)),
        (false, false) if im < 0.0 => format!("{}-{}i", fmt_num(re), fmt_num(-im)),
        _ => format!("{}+{}i", fmt_num(re), fmt_num(im)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_stable_and_drops_negative_zero() {
        assert_eq!(round_sig(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_sig(-1e-300 * 1e-300).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        for x in [
            0.5f64,
            -2.75,
            1e-12 / 7.0,
            123456789.12345679,
            3.0f64.sqrt(),
        ] {
            assert_eq!(round_sig(round_sig(x)), round_sig(x));
        }
    }

    #[test]
    fn text_numbers_parse_back_to_the_json_value() {
        for x in [0.0, 1.0, -0.5, 3.1e-15, 2.0f64.sqrt(), 6.02e23, -1e-5] {
            let v: f64 = fmt_num(x).parse().unwrap();
            assert_eq!(v, num(x).as_f64().unwrap());
        }
    }

    #[test]
    fn complex_text() {
        assert_eq!(fmt_complex(Complex64::new(1.0, 0.0)), "1");
        assert_eq!(
            fmt_complex(Complex64::new(-0.5, 0.8660254037844386)),
            "-0.5+0.866025403784i"
        );
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "-1i");
        assert_eq!(fmt_complex(Complex64::new(2.0, -1.0)), "2-1i");
    }

    #[test]
    fn text_columns_align() {
        let mut t = Table::new("t", &["a", "long"]);
        t.push(vec!["xyz".into(), "1".into()]);
        let r = Report::new(Value::Null, vec![t]);
        assert_eq!(r.render(Format::Text).unwrap(), "t\na    long\nxyz  1\n");
        assert_eq!(r.render(Format::Csv).unwrap(), "a,long\nxyz,1\n");
    }
}
