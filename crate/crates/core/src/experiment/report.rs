use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// One line of the common CSV schema; non-applicable fields are blank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub experiment: String,
    pub model: String,
    pub params: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub constant: Option<f64>,
    pub se: Option<f64>,
    pub control: Option<f64>,
    pub ratio: Option<f64>,
    pub pass: bool,
    pub wall_time: Option<f64>,
    pub exclusion_fraction: Option<f64>,
}

/// Column names, in order.
pub const COLUMNS: [&str; 12] = [
    "experiment",
    "model",
    "params",
    "lhs",
    "rhs",
    "constant",
    "se",
    "control",
    "ratio",
    "pass",
    "wall_time",
    "exclusion_fraction",
];

impl ReportRow {
    pub fn new(experiment: impl Into<String>, model: impl Into<String>, params: impl Into<String>) -> Self {
        ReportRow {
            experiment: experiment.into(),
            model: model.into(),
            params: params.into(),
            lhs: None,
            rhs: None,
            constant: None,
            se: None,
            control: None,
            ratio: None,
            pass: false,
            wall_time: None,
            exclusion_fraction: None,
        }
    }

    pub fn sides(mut self, lhs: f64, rhs: f64) -> Self {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }

    pub fn constant(mut self, c: f64) -> Self {
        self.constant = Some(c);
        self
    }

    pub fn se(mut self, se: f64) -> Self {
        self.se = Some(se);
        self
    }

    pub fn control(mut self, c: f64) -> Self {
        self.control = Some(c);
        self
    }

    pub fn ratio(mut self, r: f64) -> Self {
        self.ratio = Some(r);
        self
    }

    pub fn pass(mut self, p: bool) -> Self {
        self.pass = p;
        self
    }

    pub fn exclusion(mut self, f: f64) -> Self {
        self.exclusion_fraction = Some(f);
        self
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(COLUMNS).map_err(csv_error)?;
    }
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(rows: &[ReportRow], path: &Path) -> Result<()> {
    write_csv(rows, std::fs::File::create(path)?)
}

pub fn to_csv_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

/// gnuplot script plotting lhs and rhs against the row index of `csv`.
pub fn gnuplot_stub(csv: &Path) -> String {
    let name = csv.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'row'\n\
         set logscale y\n\
         plot '{name}' using 0:4 with points title 'lhs', \\\n     '{name}' using 0:5 with points title 'rhs'\n"
    )
}

/// Writes the gnuplot stub next to `csv` as `<stem>.gp`.
pub fn write_gnuplot_stub(csv: &Path) -> Result<std::path::PathBuf> {
    let gp = csv.with_extension("gp");
    std::fs::write(&gp, gnuplot_stub(csv))?;
    Ok(gp)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
