//! Curve CSV (`s,x,y,z`) and apparatus CSV
//! (`s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau`).

use std::io::{Read, Write};

use nalgebra::Vector3;
use thiserror::Error;

use super::{
    ApparatusError, CurveError, FrenetApparatus, FrenetSample, Provenance, SampleQuality, SampledCurve,
    BOUNDARY_SAMPLES,
};
use crate::numeric::Frame;

pub const CURVE_HEADER: [&str; 4] = ["s", "x", "y", "z"];
pub const APPARATUS_HEADER: [&str; 15] =
    ["s", "x", "y", "z", "tx", "ty", "tz", "nx", "ny", "nz", "bx", "by", "bz", "kappa", "tau"];

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("unexpected header {found:?}, expected {expected:?}")]
    Header { expected: String, found: String },
    #[error("row {row}: cannot parse {value:?} as a number")]
    Number { row: usize, value: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Apparatus(#[from] ApparatusError),
}

/// Fixed 17-significant-digit scientific formatting; round-trips every f64.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn read_rows<R: Read>(reader: R, header: &[&str]) -> Result<Vec<Vec<f64>>, CsvError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let found: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
    if found.iter().map(String::as_str).ne(header.iter().copied()) {
        return Err(CsvError::Header { expected: header.join(","), found: found.join(",") });
    }
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|v| v.trim().parse::<f64>().map_err(|_| CsvError::Number { row: i + 1, value: v.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_curve_csv<R: Read>(reader: R) -> Result<SampledCurve, CsvError> {
    let rows = read_rows(reader, &CURVE_HEADER)?;
    let s: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let pts = rows.iter().map(|r| Vector3::new(r[1], r[2], r[3])).collect();
    Ok(SampledCurve::from_samples(&s, pts)?)
}

pub fn write_curve_csv<W: Write>(mut w: W, curve: &SampledCurve) -> std::io::Result<()> {
    let mut buf = String::with_capacity(curve.len() * 100);
    buf.push_str(&CURVE_HEADER.join(","));
    buf.push('\n');
    for (k, p) in curve.points().iter().enumerate() {
        let row = [curve.s(k), p.x, p.y, p.z].map(fmt_num);
        buf.push_str(&row.join(","));
        buf.push('\n');
    }
    w.write_all(buf.as_bytes())
}

/// Reads an apparatus; samples are treated as estimated, with the two
/// outermost rows at each end flagged as boundary samples.
pub fn read_apparatus_csv<R: Read>(reader: R) -> Result<FrenetApparatus, CsvError> {
    let rows = read_rows(reader, &APPARATUS_HEADER)?;
    let n = rows.len();
    let samples = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let v = |o: usize| Vector3::new(r[o], r[o + 1], r[o + 2]);
            let frame = Frame { t: v(4), n: v(7), b: v(10) };
            let quality = if !(frame.is_finite() && r[13].is_finite() && r[14].is_finite()) {
                SampleQuality::Undefined
            } else if i < BOUNDARY_SAMPLES || i + BOUNDARY_SAMPLES >= n {
                SampleQuality::Boundary
            } else {
                SampleQuality::Interior
            };
            FrenetSample { s: r[0], point: v(1), frame, kappa: r[13], tau: r[14], quality }
        })
        .collect();
    Ok(FrenetApparatus::new(samples, Provenance::Estimated)?)
}

pub fn write_apparatus_csv<W: Write>(mut w: W, app: &FrenetApparatus) -> std::io::Result<()> {
    let mut buf = String::with_capacity(app.len() * 400);
    buf.push_str(&APPARATUS_HEADER.join(","));
    buf.push('\n');
    for p in app.samples() {
        let f = &p.frame;
        let row = [
            p.s, p.point.x, p.point.y, p.point.z, f.t.x, f.t.y, f.t.z, f.n.x, f.n.y, f.n.z, f.b.x, f.b.y, f.b.z, p.kappa,
            p.tau,
        ]
        .map(fmt_num);
        buf.push_str(&row.join(","));
        buf.push('\n');
    }
    w.write_all(buf.as_bytes())
}
