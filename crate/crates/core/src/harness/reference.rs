use std::fmt;

use super::sweep::{RowKey, SweepRow};
use crate::error::{config, Result};

/// Relative tolerance on the three identity terms.
pub const TERM_REL_TOL: f64 = 5e-4;
/// Absolute tolerance on κ, in percent.
pub const KAPPA_ABS_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    EnergyHalfNorm,
    NonlinearMeasure,
    EnergyGap,
    Kappa,
}

impl Column {
    pub const ALL: [Column; 4] = [
        Column::EnergyHalfNorm,
        Column::NonlinearMeasure,
        Column::EnergyGap,
        Column::Kappa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::EnergyHalfNorm => "energy_half_norm",
            Column::NonlinearMeasure => "nonlinear_measure",
            Column::EnergyGap => "energy_gap",
            Column::Kappa => "kappa_percent",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    fn value(self, row: &SweepRow) -> Option<f64> {
        let r = &row.report;
        match self {
            Column::EnergyHalfNorm => Some(r.energy_half_norm),
            Column::NonlinearMeasure => Some(r.nonlinear_measure),
            Column::EnergyGap => Some(r.energy_gap),
            Column::Kappa => r.kappa_percent,
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Round the computed value to `digits` significant digits, then compare
    /// relatively.
    RelativeRounded {
        rel: f64,
        digits: usize,
    },
    Absolute(f64),
    /// The published cell is a structural zero; the computed value must be
    /// exactly 0.
    ExactZero,
}

impl Tolerance {
    fn accepts(&self, computed: f64, published: f64) -> bool {
        match *self {
            Tolerance::RelativeRounded { rel, digits } => {
                (round_to_significant(computed, digits) - published).abs() <= rel * published.abs()
            }
            Tolerance::Absolute(abs) => (computed - published).abs() <= abs,
            Tolerance::ExactZero => computed == 0.0,
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::RelativeRounded { rel, digits } => write!(f, "rel {rel:e} after rounding to {digits} digits"),
            Tolerance::Absolute(a) => write!(f, "abs {a}"),
            Tolerance::ExactZero => f.write_str("exact zero"),
        }
    }
}

fn round_to_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// Number of significant digits printed in a mantissa such as `4.4311e-04`.
fn printed_digits(text: &str) -> usize {
    let mantissa = text.split(['e', 'E']).next().unwrap_or(text);
    mantissa
        .chars()
        .filter(char::is_ascii_digit)
        .skip_while(|&c| c == '0')
        .count()
        .max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCell {
    pub column: Column,
    pub printed: String,
    pub published: f64,
    pub tolerance: Tolerance,
}

impl ReferenceCell {
    fn term(column: Column, printed: &str) -> Self {
        let published: f64 = printed.parse().expect("embedded reference value");
        let tolerance = if published == 0.0 {
            Tolerance::ExactZero
        } else {
            Tolerance::RelativeRounded {
                rel: TERM_REL_TOL,
                digits: printed_digits(printed),
            }
        };
        Self {
            column,
            printed: printed.to_string(),
            published,
            tolerance,
        }
    }

    fn kappa(printed: &str) -> Self {
        Self {
            column: Column::Kappa,
            printed: printed.to_string(),
            published: printed.parse().expect("embedded reference value"),
            tolerance: Tolerance::Absolute(KAPPA_ABS_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRow {
    pub key: RowKey,
    pub cells: Vec<ReferenceCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub name: &'static str,
    pub rows: Vec<ReferenceRow>,
}

type PrintedRow<K> = (K, [&'static str; 4]);

// Published values, copied as printed (exact zeros printed as "00").
const CLASSICAL_ROWS: [PrintedRow<f64>; 5] = [
    (1.0, ["7.1531e+00", "4.4311e+00", "1.1584e+01", "38.2512"]),
    (0.1, ["7.1531e-02", "4.4311e-01", "5.1464e-01", "86.1008"]),
    (0.01, ["7.1531e-04", "4.4311e-02", "4.5027e-02", "98.4113"]),
    (0.001, ["7.1531e-06", "4.4311e-03", "4.4388e-03", "99.8388"]),
    (0.0001, ["7.1531e-08", "4.4311e-04", "4.4375e-04", "99.9839"]),
];

const TWO_PHASE_ROWS: [PrintedRow<usize>; 10] = [
    (2, ["1.67e+00", "2.00e+00", "3.67e+00", "54.55"]),
    (5, ["6.67e-01", "00", "6.67e-01", "0.00"]),
    (6, ["3.59e-01", "7.20e-02", "4.31e-01", "16.72"]),
    (7, ["2.59e-01", "7.41e-02", "3.33e-01", "22.22"]),
    (8, ["2.16e-01", "2.62e-02", "2.42e-01", "10.82"]),
    (9, ["1.67e-01", "00", "1.67e-01", "0.00"]),
    (10, ["1.20e-01", "1.23e-02", "1.32e-01", "9.33"]),
    (30, ["1.23e-02", "3.69e-04", "1.27e-02", "2.91"]),
    (60, ["3.06e-03", "4.38e-05", "3.10e-03", "1.41"]),
    (120, ["7.53e-04", "5.34e-06", "7.58e-04", "0.70"]),
];

fn build_row(key: RowKey, printed: [&str; 4]) -> ReferenceRow {
    ReferenceRow {
        key,
        cells: vec![
            ReferenceCell::term(Column::EnergyHalfNorm, printed[0]),
            ReferenceCell::term(Column::NonlinearMeasure, printed[1]),
            ReferenceCell::term(Column::EnergyGap, printed[2]),
            ReferenceCell::kappa(printed[3]),
        ],
    }
}

impl ReferenceTable {
    /// Classical obstacle benchmark, `R = 0.7`, `r = 0.2`, `k = 16`.
    pub fn classical() -> Self {
        Self {
            name: "classical (R=0.7, r=0.2, k=16)",
            rows: CLASSICAL_ROWS
                .iter()
                .map(|&(eps, p)| build_row(RowKey::Eps(eps), p))
                .collect(),
        }
    }

    /// Two-phase benchmark, interpolants `v_N`.
    pub fn two_phase() -> Self {
        Self {
            name: "two-phase (interpolants v_N)",
            rows: TWO_PHASE_ROWS
                .iter()
                .map(|&(n, p)| build_row(RowKey::Nodes(n), p))
                .collect(),
        }
    }

    pub fn row(&self, key: RowKey) -> Option<&ReferenceRow> {
        self.rows.iter().find(|r| r.key == key)
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(|r| r.cells.len()).sum()
    }

    /// Scales one published value by 1.1 (or sets a zero to 1) so the
    /// comparison must fail. Used as a negative control.
    pub fn corrupt(&mut self, key: RowKey, column: Column) -> Result<()> {
        let row = self
            .rows
            .iter_mut()
            .find(|r| r.key == key)
            .ok_or_else(|| config(format!("no reference row with key {key}")))?;
        let cell = row
            .cells
            .iter_mut()
            .find(|c| c.column == column)
            .ok_or_else(|| config(format!("no reference column {column}")))?;
        cell.published = if cell.published == 0.0 {
            1.0
        } else {
            cell.published * 1.1
        };
        cell.printed = format!("{} (corrupted)", cell.published);
        if cell.tolerance == Tolerance::ExactZero {
            cell.tolerance = Tolerance::RelativeRounded {
                rel: TERM_REL_TOL,
                digits: 3,
            };
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellVerdict {
    pub key: RowKey,
    pub column: Column,
    pub computed: Option<f64>,
    pub published: f64,
    pub printed: String,
    pub tolerance: Tolerance,
    pub pass: bool,
}

impl fmt::Display for CellVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let computed = self
            .computed
            .map_or_else(|| "undefined".to_string(), |v| format!("{v:.6e}"));
        write!(
            f,
            "{} key={} {}: computed {} published {} ({})",
            if self.pass { "PASS" } else { "FAIL" },
            self.key,
            self.column,
            computed,
            self.printed,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub table: &'static str,
    pub verdicts: Vec<CellVerdict>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellVerdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }

    pub fn passed(&self) -> usize {
        self.verdicts.iter().filter(|v| v.pass).count()
    }

    /// 0 when every cell passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }
}

/// Compares every published cell of each computed row. A row whose key has
/// no reference entry is a configuration error.
pub fn compare_reference(rows: &[SweepRow], reference: &ReferenceTable) -> Result<ComparisonReport> {
    let mut verdicts = Vec::with_capacity(rows.len() * 4);
    for row in rows {
        let reference_row = reference
            .row(row.key)
            .ok_or_else(|| config(format!("no reference row for key {} in {}", row.key, reference.name)))?;
        for cell in &reference_row.cells {
            let computed = cell.column.value(row);
            let pass = computed.is_some_and(|c| cell.tolerance.accepts(c, cell.published));
            verdicts.push(CellVerdict {
                key: row.key,
                column: cell.column,
                computed,
                published: cell.published,
                printed: cell.printed.clone(),
                tolerance: cell.tolerance,
                pass,
            });
        }
    }
    Ok(ComparisonReport {
        table: reference.name,
        verdicts,
    })
}
