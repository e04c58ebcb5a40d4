//! CSV emission and parsing for the two fixed schemas.
//!
//! * spectrum rows: header `b,domain,bc,k,value,refine`
//! * fiber-curve rows: header `b,curve_id,value`
//!
//! Floats are rendered with Rust's shortest round-trip formatting, so
//! parsing a rendered file reproduces every value bit for bit, and
//! identical runs produce byte-identical files.

use crate::{CliError, CliResult};

pub const SPECTRUM_HEADER: &str = "b,domain,bc,k,value,refine";
pub const CURVE_HEADER: &str = "b,curve_id,value";

/// One eigenvalue record of a spectrum sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub b: f64,
    pub domain: String,
    /// `dirichlet` or `neumann`.
    pub bc: String,
    /// 1-based eigenvalue index.
    pub k: usize,
    pub value: f64,
    pub refine: u32,
}

/// One sample of a named fiber curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub b: f64,
    pub curve_id: String,
    pub value: f64,
}

fn check_field_text(text: &str, what: &str) -> CliResult<()> {
    if text.is_empty() || text.contains(',') || text.contains('\n') || text.contains('\r') {
        return Err(CliError::Config(format!(
            "{what} {text:?} is not a valid CSV field (empty or contains a separator)"
        )));
    }
    Ok(())
}

fn check_value(x: f64, what: &str) -> CliResult<()> {
    if !x.is_finite() {
        return Err(CliError::Config(format!("{what} must be finite, got {x}")));
    }
    Ok(())
}

/// Renders spectrum rows with the fixed header.
pub fn render_spectrum_csv(rows: &[SpectrumRow]) -> CliResult<String> {
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for r in rows {
        check_field_text(&r.domain, "domain label")?;
        check_field_text(&r.bc, "boundary-condition label")?;
        check_value(r.b, "field strength")?;
        check_value(r.value, "eigenvalue")?;
        out.push_str(&format!("{},{},{},{},{},{}\n", r.b, r.domain, r.bc, r.k, r.value, r.refine));
    }
    Ok(out)
}

/// Renders curve rows with the fixed header.
pub fn render_curve_csv(rows: &[CurveRow]) -> CliResult<String> {
    let mut out = String::from(CURVE_HEADER);
    out.push('\n');
    for r in rows {
        check_field_text(&r.curve_id, "curve id")?;
        check_value(r.b, "field strength")?;
        check_value(r.value, "curve value")?;
        out.push_str(&format!("{},{},{}\n", r.b, r.curve_id, r.value));
    }
    Ok(out)
}

fn split_line<'a>(line: &'a str, n: usize, lineno: usize) -> CliResult<Vec<&'a str>> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != n {
        return Err(CliError::Config(format!(
            "CSV line {lineno}: expected {n} fields, got {}",
            fields.len()
        )));
    }
    Ok(fields)
}

fn parse_f64(text: &str, what: &str, lineno: usize) -> CliResult<f64> {
    text.parse::<f64>()
        .map_err(|e| CliError::Config(format!("CSV line {lineno}: bad {what} {text:?}: {e}")))
}

/// Parses a spectrum CSV produced by [`render_spectrum_csv`]; the header
/// must match exactly.
pub fn parse_spectrum_csv(text: &str) -> CliResult<Vec<SpectrumRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SPECTRUM_HEADER => {}
        other => {
            return Err(CliError::Config(format!(
                "expected header {SPECTRUM_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let f = split_line(line, 6, lineno)?;
        rows.push(SpectrumRow {
            b: parse_f64(f[0], "field strength", lineno)?,
            domain: f[1].to_string(),
            bc: f[2].to_string(),
            k: f[3]
                .parse::<usize>()
                .map_err(|e| CliError::Config(format!("CSV line {lineno}: bad index: {e}")))?,
            value: parse_f64(f[4], "eigenvalue", lineno)?,
            refine: f[5]
                .parse::<u32>()
                .map_err(|e| CliError::Config(format!("CSV line {lineno}: bad refine: {e}")))?,
        });
    }
    Ok(rows)
}

/// Parses a curve CSV produced by [`render_curve_csv`].
pub fn parse_curve_csv(text: &str) -> CliResult<Vec<CurveRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CURVE_HEADER => {}
        other => {
            return Err(CliError::Config(format!(
                "expected header {CURVE_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let f = split_line(line, 3, lineno)?;
        rows.push(CurveRow {
            b: parse_f64(f[0], "field strength", lineno)?,
            curve_id: f[1].to_string(),
            value: parse_f64(f[2], "curve value", lineno)?,
        });
    }
    Ok(rows)
}
