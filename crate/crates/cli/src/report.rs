use std::io::Write;

use dplab_core::Rational;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::Serialize;

use crate::cli::Format;
use crate::error::CliError;

const SIGNIFICANT_DIGITS: i64 = 15;

/// One line of output. Optional fields are empty in CSV and `null` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: u64,
    pub quantity: String,
    pub exact: Option<String>,
    pub decimal: Option<String>,
    pub empirical: Option<String>,
    pub stderr: Option<String>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

impl ReportRow {
    pub fn new(n: u64, quantity: impl Into<String>) -> Self {
        Self {
            n,
            quantity: quantity.into(),
            exact: None,
            decimal: None,
            empirical: None,
            stderr: None,
            samples: None,
            seed: None,
        }
    }

    /// Sets the exact field and its decimal rendering.
    pub fn exact(mut self, value: &Rational) -> Self {
        self.exact = Some(value.to_string());
        self.decimal = Some(format_decimal(value));
        self
    }

    pub fn decimal(mut self, value: f64) -> Self {
        self.decimal = Some(format_f64(value));
        self
    }
}

/// Pass/fail line of a verification suite. The verdict is appended to the
/// quantity name.
pub fn check_row(n: u64, name: &str, passed: bool) -> ReportRow {
    ReportRow::new(
        n,
        format!("{name}:{}", if passed { "pass" } else { "fail" }),
    )
}

pub fn row_passed(row: &ReportRow) -> bool {
    !row.quantity.ends_with(":fail")
}

pub fn format_f64(value: f64) -> String {
    match Rational::from_f64(value) {
        Some(r) => format_decimal(&r),
        None if value.is_nan() => "NaN".to_string(),
        None if value > 0.0 => "inf".to_string(),
        None => "-inf".to_string(),
    }
}

/// Rounds to 15 significant digits (half away from zero) and prints in
/// positional notation without trailing zeros.
pub fn format_decimal(value: &Rational) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let magnitude = value.abs();
    let ten = Rational::from_integer(10.into());
    // exponent e with 10^e <= magnitude < 10^(e+1)
    let mut exponent: i64 = 0;
    let mut scaled = magnitude.clone();
    while scaled >= ten {
        scaled /= &ten;
        exponent += 1;
    }
    while scaled < Rational::from_integer(1.into()) {
        scaled *= &ten;
        exponent -= 1;
    }
    let shift = SIGNIFICANT_DIGITS - 1 - exponent;
    let factor = num_traits::pow(ten.clone(), shift.unsigned_abs() as usize);
    let shifted = if shift >= 0 {
        &magnitude * &factor
    } else {
        &magnitude / &factor
    };
    let mut digits = shifted.round().to_integer().to_string();
    let mut shift = shift;
    // rounding 9.99..9x up adds a digit; drop the extra trailing zero
    if digits.len() as i64 > SIGNIFICANT_DIGITS {
        digits.pop();
        shift -= 1;
    }
    let body = if shift <= 0 {
        format!("{digits}{}", "0".repeat(shift.unsigned_abs() as usize))
    } else {
        let shift = shift as usize;
        let padded = if digits.len() <= shift {
            format!("{}{digits}", "0".repeat(shift - digits.len() + 1))
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - shift);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if value.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

pub fn write_report<W: Write>(rows: &[ReportRow], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for row in rows {
                writer.serialize(row)?;
            }
            if rows.is_empty() {
                writer.write_record([
                    "n",
                    "quantity",
                    "exact",
                    "decimal",
                    "empirical",
                    "stderr",
                    "samples",
                    "seed",
                ])?;
            }
            writer.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
    }
    Ok(())
}
