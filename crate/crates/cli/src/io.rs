use std::path::Path;

use num_complex::Complex;

use crate::CliError;

/// Shortest round-trip representation, so re-reading a file reproduces the numbers exactly.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn write_rows<I, R>(path: &Path, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `(x, Re, Im)` triples under a header like `k,re,im`.
pub fn write_complex<'a>(
    path: &Path,
    header: [&str; 3],
    points: impl IntoIterator<Item = (f64, &'a Complex<f64>)>,
) -> Result<(), CliError> {
    write_rows(path, &header, points.into_iter().map(|(x, v)| [num(x), num(v.re), num(v.im)]))
}

/// Reads a `k,re,im` file as written by `forward`.
pub fn read_complex(path: &Path, header: [&str; 3]) -> Result<(Vec<f64>, Vec<Complex<f64>>), CliError> {
    let schema = |msg: String| CliError::Schema(format!("{}: {msg}", path.display()));
    let mut r = csv::Reader::from_path(path).map_err(|e| schema(e.to_string()))?;
    let found: Vec<String> = r.headers().map_err(|e| schema(e.to_string()))?.iter().map(|h| h.trim().to_string()).collect();
    if found != header {
        return Err(schema(format!("header {found:?}, expected {header:?}")));
    }
    let (mut xs, mut vs) = (vec![], vec![]);
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| schema(e.to_string()))?;
        let field = |i: usize| -> Result<f64, CliError> {
            rec.get(i)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| schema(format!("row {}: column {} is not a finite number", line + 2, header[i])))
        };
        xs.push(field(0)?);
        vs.push(Complex::new(field(1)?, field(2)?));
    }
    Ok((xs, vs))
}
