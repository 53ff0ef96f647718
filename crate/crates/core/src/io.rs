//! Tabular output: CSV with a header row, or aligned plain-text tables.
//!
//! Numbers are written with 15 significant digits.

use std::io::Write;

use crate::beam_splitter::SchmidtResult;
use crate::criteria::CriterionReport;
use crate::error::Result;
use crate::experiments::{RankRecord, SweepRecord};

/// `%.15g`-style formatting.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // rounding may bump the exponent, so inspect the scientific form
    let sci = format!("{:.14e}", x);
    let (mantissa, e) = sci.split_once('e').expect("scientific format");
    let e: i32 = e.parse().expect("exponent");
    if (-5..15).contains(&e) {
        let decimals = (14 - e).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if e < 0 { '-' } else { '+' }, e.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Table,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Table => self.write_text(out),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| -> String {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
        };
        writeln!(out, "{}", line(&self.header))?;
        writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row))?;
        }
        Ok(())
    }
}

pub fn criteria_table(reports: &[CriterionReport]) -> Table {
    let mut t = Table::new(["criterion", "ell", "value", "nonclassical", "tolerance"]);
    for r in reports {
        let ell = match r.criterion {
            crate::criteria::Criterion::HigherOrder(l) => l.to_string(),
            _ => String::new(),
        };
        t.push(vec![
            r.criterion.name().to_string(),
            ell,
            format_number(r.value),
            r.nonclassical.to_string(),
            format_number(r.tolerance),
        ]);
    }
    t
}

/// Singular values are joined with `;` in one cell.
pub fn schmidt_table(results: &[SchmidtResult]) -> Table {
    let mut t = Table::new(["rank", "entropy_bits", "threshold", "singular_values"]);
    for r in results {
        let sv: Vec<String> =
            r.singular_values.iter().filter(|&&s| s > r.threshold).map(|&s| format_number(s)).collect();
        t.push(vec![r.rank.to_string(), format_number(r.entropy_bits), format_number(r.threshold), sv.join(";")]);
    }
    t
}

/// `runtime_ms` is wall-clock and only included on request, so that the
/// default output is byte-for-byte reproducible.
pub fn sweep_table(records: &[SweepRecord], with_timing: bool) -> Table {
    let mut header = vec!["N", "finite_n_value", "limit_value", "abs_error"];
    if with_timing {
        header.push("runtime_ms");
    }
    let mut t = Table::new(header);
    for r in records {
        let mut row = vec![
            r.n_particles.to_string(),
            format_number(r.finite_n_value),
            format_number(r.limit_value),
            format_number(r.abs_error),
        ];
        if with_timing {
            row.push(format_number(r.runtime_ms));
        }
        t.push(row);
    }
    t
}

pub fn rank_table(records: &[RankRecord]) -> Table {
    let mut t = Table::new(["r_input", "schmidt_rank", "acs_gram_rank", "min_singular_value_ratio"]);
    for r in records {
        t.push(vec![
            r.r_input.to_string(),
            r.schmidt_rank.to_string(),
            r.acs_gram_rank.to_string(),
            format_number(r.min_singular_value_ratio),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_format_examples() {
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-1.0), "-1");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(1e-20), "1e-20");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(123456.0), "123456");
        assert_eq!(format_number(2.5e17), "2.5e+17");
    }

    proptest! {
        #[test]
        fn fifteen_digits_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite() && *x != 0.0)) {
            let back: f64 = format_number(x).parse().unwrap();
            prop_assert!(((back - x) / x).abs() < 1e-14);
            prop_assert_eq!(format_number(back), format_number(x));
        }
    }

    #[test]
    fn csv_has_header() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec!["1".into(), "x;y".into()]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,x;y\n");
    }
}
