//! CSV input and output.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use ssrel_core::{CensoredSample, ExponentialScales, SimCellConfig};

/// Reads a headerless one-column CSV of failure times.
pub fn read_times(path: &Path) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let mut times = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let line = row + 1;
        let record = record.with_context(|| format!("{}: line {line}", path.display()))?;
        if record.len() != 1 {
            bail!(
                "{}: line {line}: expected 1 column, found {}",
                path.display(),
                record.len()
            );
        }
        let field = &record[0];
        let t: f64 = field
            .parse()
            .with_context(|| format!("{}: line {line}: '{field}' is not a number", path.display()))?;
        times.push(t);
    }
    if times.is_empty() {
        bail!("{}: no failure times found", path.display());
    }
    Ok(times)
}

/// Reads a sample file, sorting the times, with `total_units` units on test.
pub fn read_sample(path: &Path, total_units: usize) -> Result<CensoredSample> {
    let times = read_times(path)?;
    CensoredSample::from_unordered(times, total_units)
        .with_context(|| format!("{}: invalid censored sample", path.display()))
}

/// Writes the observed times of `sample`, one per line, at full precision.
pub fn write_sample(path: &Path, sample: &CensoredSample) -> Result<()> {
    let mut out = io::BufWriter::new(
        File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
    );
    for t in sample.ordered_times() {
        writeln!(out, "{t:?}")?;
    }
    out.flush()?;
    Ok(())
}

pub const GRID_HEADER: [&str; 7] = ["m", "n", "r1", "r2", "alpha", "beta", "replicates"];

/// One row of a grid file, before per-cell seeding and priors are applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub m: usize,
    pub n: usize,
    pub r1: usize,
    pub r2: usize,
    pub alpha: f64,
    pub beta: f64,
    pub replicates: usize,
}

impl GridRow {
    pub fn config(&self) -> Result<SimCellConfig> {
        let params = ExponentialScales::new(self.alpha, self.beta)?;
        Ok(SimCellConfig::new(params, self.n, self.m, self.r1, self.r2).with_replicates(self.replicates))
    }
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, col: usize, row: usize, path: &Path) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let raw = &record[col];
    raw.parse().with_context(|| {
        format!(
            "{}: row {row}, column {} ('{}'): '{raw}' is not valid",
            path.display(),
            col + 1,
            GRID_HEADER[col]
        )
    })
}

pub fn read_grid(path: &Path) -> Result<Vec<GridRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let header = reader.headers()?.clone();
    if header.iter().ne(GRID_HEADER) {
        bail!(
            "{}: header must be '{}', found '{}'",
            path.display(),
            GRID_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        );
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.with_context(|| format!("{}: row {row}", path.display()))?;
        rows.push(GridRow {
            m: field(&record, 0, row, path)?,
            n: field(&record, 1, row, path)?,
            r1: field(&record, 2, row, path)?,
            r2: field(&record, 3, row, path)?,
            alpha: field(&record, 4, row, path)?,
            beta: field(&record, 5, row, path)?,
            replicates: field(&record, 6, row, path)?,
        });
    }
    if rows.is_empty() {
        bail!("{}: grid has no rows", path.display());
    }
    Ok(rows)
}

/// Opens `path` for writing, or stdout when `path` is `None`.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes a header and rows of pre-formatted fields as CSV.
pub fn write_table(out: Box<dyn Write>, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    Ok(())
}
