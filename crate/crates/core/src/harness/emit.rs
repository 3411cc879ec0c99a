use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use super::sweep::{OutputFormat, RowKey, SweepRow};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "key,energy_half_norm,nonlinear_measure,energy_gap,kappa_percent,residual";

/// CSV with 6 significant digits per term and κ to 4 decimals; an undefined
/// κ is an empty field.
pub fn format_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let r = &row.report;
        let kappa = r.kappa_percent.map(|k| format!("{k:.4}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{:.5e},{:.5e},{:.5e},{},{:.5e}",
            row.key, r.energy_half_norm, r.nonlinear_measure, r.energy_gap, kappa, r.residual
        );
    }
    out
}

/// Scientific notation with a signed two-digit exponent, e.g. `7.1531e+00`.
pub fn sci_fixed(x: f64, significant: usize) -> String {
    let raw = format!("{:.*e}", significant.saturating_sub(1), x);
    let (mantissa, exp) = raw.split_once('e').unwrap_or((&raw, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Aligned table in the published column layout. Amplitude-keyed rows use
/// 5 significant digits and κ to 4 decimals; node-count rows use 3 digits
/// and κ to 2 decimals.
pub fn format_text(rows: &[SweepRow]) -> String {
    let eps_rows = rows.iter().any(|r| matches!(r.key, RowKey::Eps(_)));
    let (key_head, digits, kappa_dec) = if eps_rows { ("eps", 5, 4) } else { ("N", 3, 2) };
    let header = [key_head, "1/2|grad(u-v)|^2_A", "mu(v)", "J(v)-J(u)", "kappa[%]"];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|row| {
            let r = &row.report;
            let key = match row.key {
                RowKey::Eps(e) => format!("{e:.4}"),
                RowKey::Nodes(n) => n.to_string(),
            };
            [
                key,
                sci_fixed(r.energy_half_norm, digits),
                sci_fixed(r.nonlinear_measure, digits),
                sci_fixed(r.energy_gap, digits),
                r.kappa_percent
                    .map_or_else(|| "-".to_string(), |k| format!("{k:.kappa_dec$}")),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for line in &body {
        for (w, cell) in widths.iter_mut().zip(line) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut push_line = |cells: [&str; 5]| {
        let mut parts = Vec::with_capacity(5);
        for (i, cell) in cells.iter().enumerate() {
            parts.push(if i == 0 {
                format!("{cell:<w$}", w = widths[i])
            } else {
                format!("{cell:>w$}", w = widths[i])
            });
        }
        out.push_str(parts.join(" | ").trim_end());
        out.push('\n');
    };
    push_line(header);
    for line in &body {
        push_line([&line[0], &line[1], &line[2], &line[3], &line[4]].map(String::as_str));
    }
    out
}

/// Writes the rows to `path`, or standard output when `path` is `None`.
pub fn emit(rows: &[SweepRow], format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => format_csv(rows),
        OutputFormat::TextTable => format_text(rows),
    };
    match path {
        Some(p) => fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::IdentityReport;

    #[test]
    fn csv_layout() {
        let rows = [
            SweepRow {
                key: RowKey::Eps(1.0),
                report: IdentityReport::new(7.1531, 4.4311, 11.5842),
            },
            SweepRow {
                key: RowKey::Eps(0.0),
                report: IdentityReport::new(0.0, 0.0, 0.0),
            },
        ];
        let csv = format_csv(&rows);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(
            lines[1].starts_with("1,7.15310e0,4.43110e0,1.15842e1,38.2512,"),
            "{}",
            lines[1]
        );
        assert_eq!(lines[2], "0,0.00000e0,0.00000e0,0.00000e0,,0.00000e0");
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn empty_rows_give_header_only() {
        assert_eq!(format_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn fixed_significant_digits() {
        assert_eq!(sci_fixed(7.15312, 5), "7.1531e+00");
        assert_eq!(sci_fixed(4.43749e-4, 5), "4.4375e-04");
        assert_eq!(sci_fixed(11.0 / 3.0, 3), "3.67e+00");
        assert_eq!(sci_fixed(0.0, 3), "0.00e+00");
    }

    #[test]
    fn text_table_is_aligned() {
        let rows: Vec<_> = [2usize, 120]
            .iter()
            .map(|&n| SweepRow {
                key: RowKey::Nodes(n),
                report: IdentityReport::new(1.0 / n as f64, 0.5, 0.5 + 1.0 / n as f64),
            })
            .collect();
        let t = format_text(&rows);
        let lines: Vec<_> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("N "));
        assert_eq!(lines[1].len(), lines[2].len());
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let err = emit(&[], OutputFormat::Csv, Some(Path::new("/nonexistent-dir/x.csv"))).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }
}
