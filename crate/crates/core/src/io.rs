//! File formats: curve specs (JSON), a_p tables (CSV), coefficient caches,
//! series dumps and density reports.
//!
//! Exact values are written as decimal integer strings; floats carry 12
//! significant digits.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::Deserialize;

use crate::arith;
use crate::coeffs::{self, CoefficientTable};
use crate::curves::{ApTable, EllipticCurve};
use crate::density::ReportRow;
use crate::error::{Error, Result};
use crate::series::PowerSeries;

pub const CACHE_MAGIC: &str = "# gmf-coefficient-cache v1";

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default)]
    pub label: Option<String>,
    pub a_invariants: [i64; 5],
    #[serde(default)]
    pub bad_primes: Option<Vec<u64>>,
    #[serde(default)]
    pub cm_discriminant: Option<i64>,
    /// `a_p` at bad primes, keyed by the prime as a decimal string.
    #[serde(default)]
    pub ap_overrides: BTreeMap<String, i64>,
}

/// A validated curve plus any bad-prime `a_p` supplied with it.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedCurve {
    pub curve: EllipticCurve,
    pub overrides: BTreeMap<u64, i64>,
}

impl CurveSpec {
    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let message = if path == "." {
                e.inner().to_string()
            } else {
                format!("field `{path}`: {}", e.inner())
            };
            parse_error(origin, message)
        })
    }

    pub fn into_curve(self, origin: &Path) -> Result<LoadedCurve> {
        let mut curve = match self.bad_primes {
            Some(list) => {
                if let Some(&p) = list.iter().find(|&&p| !arith::is_prime(p)) {
                    return Err(parse_error(origin, format!("field `bad_primes`: {p} is not prime")));
                }
                EllipticCurve::with_bad_primes(self.a_invariants, list)
            }
            None => EllipticCurve::new(self.a_invariants),
        }
        .map_err(|e| parse_error(origin, format!("field `a_invariants`: {e}")))?;
        if let Some(label) = self.label {
            curve = curve.labeled(label);
        }
        if let Some(d) = self.cm_discriminant {
            if d >= 0 {
                return Err(parse_error(
                    origin,
                    format!("field `cm_discriminant`: {d} is not negative"),
                ));
            }
            curve = curve.with_cm(d);
        }
        let mut overrides = BTreeMap::new();
        for (key, value) in self.ap_overrides {
            let p: u64 = key
                .parse()
                .ok()
                .filter(|&p| arith::is_prime(p))
                .ok_or_else(|| parse_error(origin, format!("field `ap_overrides`: key {key:?} is not a prime")))?;
            if value * value > 4 * p as i64 {
                return Err(parse_error(
                    origin,
                    format!("field `ap_overrides.{key}`: {value} violates the Hasse bound"),
                ));
            }
            overrides.insert(p, value);
        }
        Ok(LoadedCurve { curve, overrides })
    }
}

fn parse_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn row_error(path: &Path, row: usize, message: impl Into<String>) -> Error {
    Error::Row {
        path: path.to_path_buf(),
        row,
        message: message.into(),
    }
}

pub fn load_curve(path: &Path) -> Result<LoadedCurve> {
    let text = std::fs::read_to_string(path).map_err(io_error(path))?;
    CurveSpec::from_json(&text, path)?.into_curve(path)
}

/// Reads a `p,ap` table. Rows must be ascending distinct primes within the
/// Hasse bound.
pub fn import_ap_csv(path: &Path) -> Result<BTreeMap<u64, i64>> {
    let file = File::open(path).map_err(io_error(path))?;
    parse_ap_csv(file, path)
}

pub fn parse_ap_csv(reader: impl Read, origin: &Path) -> Result<BTreeMap<u64, i64>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| parse_error(origin, e.to_string()))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["p", "ap"] {
        return Err(parse_error(origin, "expected header `p,ap`"));
    }
    let mut out = BTreeMap::new();
    let mut last = 0u64;
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| row_error(origin, row, e.to_string()))?;
        let field = |k: usize| record.get(k).unwrap_or_default();
        let p: u64 = field(0)
            .parse()
            .map_err(|_| row_error(origin, row, format!("p = {:?} is not an integer", field(0))))?;
        let ap: i64 = field(1)
            .parse()
            .map_err(|_| row_error(origin, row, format!("ap = {:?} is not an integer", field(1))))?;
        if !arith::is_prime(p) {
            return Err(row_error(origin, row, format!("{p} is not prime")));
        }
        if out.contains_key(&p) {
            return Err(row_error(origin, row, format!("duplicate prime {p}")));
        }
        if p < last {
            return Err(row_error(origin, row, format!("{p} is out of order (after {last})")));
        }
        if (ap as i128) * (ap as i128) > 4 * p as i128 {
            return Err(row_error(
                origin,
                row,
                format!("Hasse bound violated: |{ap}| > 2√{p}"),
            ));
        }
        last = p;
        out.insert(p, ap);
    }
    Ok(out)
}

pub fn write_ap_csv(table: &ApTable, out: impl Write) -> std::io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "p,ap")?;
    for (p, a) in table.entries() {
        writeln!(w, "{p},{a}")?;
    }
    w.flush()
}

/// Writes a coefficient cache: a comment header followed by `n,b_num,c_num,c_den` rows.
pub fn write_cache(table: &CoefficientTable, label: &str, out: impl Write) -> std::io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "{CACHE_MAGIC}")?;
    writeln!(w, "# label: {label}")?;
    writeln!(w, "# bound: {}", table.bound())?;
    let bad: Vec<String> = table.bad_primes().iter().map(u64::to_string).collect();
    writeln!(w, "# bad_primes: {}", bad.join(" "))?;
    writeln!(w, "n,b_num,c_num,c_den")?;
    for n in 1..=table.bound() {
        let c = table.c(n).expect("dense table");
        writeln!(w, "{n},{},{},{}", table.b(n).unwrap(), c.numer(), c.denom())?;
    }
    w.flush()
}

/// Reads a cache back. `c` is recomputed from `b` and must agree with the
/// stored rows.
pub fn read_cache(path: &Path) -> Result<(String, CoefficientTable)> {
    let file = File::open(path).map_err(io_error(path))?;
    let mut lines = BufReader::new(file).lines();
    let mut next_line = |what: &str| -> Result<String> {
        lines
            .next()
            .ok_or_else(|| parse_error(path, format!("truncated cache, expected {what}")))?
            .map_err(io_error(path))
    };
    if next_line("magic line")? != CACHE_MAGIC {
        return Err(parse_error(path, "not a coefficient cache (bad magic line)"));
    }
    let header = |line: String, key: &str| -> Result<String> {
        line.strip_prefix(&format!("# {key}:"))
            .map(|v| v.trim().to_string())
            .ok_or_else(|| parse_error(path, format!("expected `# {key}:` header")))
    };
    let label = header(next_line("label")?, "label")?;
    let bound: u64 = header(next_line("bound")?, "bound")?
        .parse()
        .map_err(|_| parse_error(path, "bound is not an integer"))?;
    let bad_primes: Vec<u64> = header(next_line("bad primes")?, "bad_primes")?
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| parse_error(path, format!("bad prime {s:?}"))))
        .collect::<Result<_>>()?;
    if next_line("column header")? != "n,b_num,c_num,c_den" {
        return Err(parse_error(path, "expected column header `n,b_num,c_num,c_den`"));
    }
    let mut b = vec![0i64];
    let mut c = vec![(BigInt::from(0), BigInt::from(1))];
    for (i, line) in lines.enumerate() {
        let row = i + 1;
        let line = line.map_err(io_error(path))?;
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 4 {
            return Err(row_error(path, row, "expected 4 columns"));
        }
        let n: u64 = parts[0].parse().map_err(|_| row_error(path, row, "bad n"))?;
        if n != row as u64 {
            return Err(row_error(path, row, format!("rows must be dense; found n = {n}")));
        }
        b.push(parts[1].parse().map_err(|_| row_error(path, row, "bad b_num"))?);
        let num: BigInt = parts[2].parse().map_err(|_| row_error(path, row, "bad c_num"))?;
        let den: BigInt = parts[3].parse().map_err(|_| row_error(path, row, "bad c_den"))?;
        c.push((num, den));
    }
    if b.len() as u64 != bound + 1 {
        return Err(parse_error(path, format!("expected {bound} rows, found {}", b.len() - 1)));
    }
    if bound >= 1 && b[1] != 1 {
        return Err(row_error(path, 1, "b(1) must be 1"));
    }
    let table = CoefficientTable::from_b(b, bad_primes);
    for (n, (num, den)) in c.iter().enumerate().skip(1) {
        let stored = table.c(n as u64).expect("dense table");
        if stored.numer() != num || stored.denom() != den {
            return Err(row_error(
                path,
                n,
                format!("c({n}) = {num}/{den} disagrees with b (expected {stored})"),
            ));
        }
    }
    Ok((label, table))
}

/// Series dump: `n,num,den` per coefficient.
pub fn write_series_csv(series: &PowerSeries, out: impl Write) -> std::io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "n,num,den")?;
    for (n, a) in series.coeffs().iter().enumerate() {
        writeln!(w, "{n},{},{}", a.numer(), a.denom())?;
    }
    w.flush()
}

pub fn read_series_csv(path: &Path) -> Result<PowerSeries> {
    let file = File::open(path).map_err(io_error(path))?;
    let mut rdr = csv::Reader::from_reader(file);
    let mut coeffs = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| row_error(path, i + 1, e.to_string()))?;
        let num: BigInt = record[1].parse().map_err(|_| row_error(path, i + 1, "bad num"))?;
        let den: BigInt = record[2].parse().map_err(|_| row_error(path, i + 1, "bad den"))?;
        coeffs.push(coeffs::Rational::new(num, den));
    }
    if coeffs.is_empty() {
        return Err(parse_error(path, "empty series"));
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// Formats a float with 12 significant digits, trailing zeros trimmed.
pub fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.11e}")
    }
}

pub const REPORT_HEADER: &str = "predicate_id,x,count,pi_x,ratio,theoretical,deviation";

pub fn write_report_csv(rows: &[ReportRow], out: impl Write) -> std::io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "{REPORT_HEADER}")?;
    for r in rows {
        // interval ids contain commas
        writeln!(
            w,
            "\"{}\",{},{},{},{},{},{}",
            r.predicate_id,
            r.x,
            r.count,
            r.pi_x,
            fmt_float(r.ratio),
            fmt_float(r.theoretical),
            fmt_float(r.deviation)
        )?;
    }
    w.flush()
}

pub fn read_report_csv(path: &Path) -> Result<Vec<ReportRow>> {
    let file = File::open(path).map_err(io_error(path))?;
    let mut rdr = csv::Reader::from_reader(file);
    let headers = rdr.headers().map_err(|e| parse_error(path, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>().join(",") != REPORT_HEADER {
        return Err(parse_error(path, format!("expected header `{REPORT_HEADER}`")));
    }
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| row_error(path, row, e.to_string()))?;
        let int = |k: usize| -> Result<u64> {
            record[k]
                .parse()
                .map_err(|_| row_error(path, row, format!("column {k} is not an integer")))
        };
        let float = |k: usize| -> Result<f64> {
            record[k]
                .parse()
                .map_err(|_| row_error(path, row, format!("column {k} is not a number")))
        };
        rows.push(ReportRow {
            predicate_id: record[0].to_string(),
            x: int(1)?,
            count: int(2)?,
            pi_x: int(3)?,
            ratio: float(4)?,
            theoretical: float(5)?,
            deviation: float(6)?,
        });
    }
    Ok(rows)
}

pub fn report_json(rows: &[ReportRow]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|r| {
                serde_json::json!({
                    "predicate_id": r.predicate_id,
                    "x": r.x,
                    "count": r.count,
                    "pi_x": r.pi_x,
                    "ratio": r.ratio,
                    "theoretical": r.theoretical,
                    "deviation": r.deviation,
                })
            })
            .collect(),
    )
}

/// Opens `path` for writing, or stdout for `-`.
pub fn create_output(path: &Path) -> Result<Box<dyn Write>> {
    if path == Path::new("-") {
        return Ok(Box::new(std::io::stdout()));
    }
    let f = File::create(path).map_err(io_error(path))?;
    Ok(Box::new(f))
}

pub(crate) fn write_failed(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from(path),
        source,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> Result<LoadedCurve> {
        CurveSpec::from_json(text, Path::new("t.json"))?.into_curve(Path::new("t.json"))
    }

    #[test]
    fn curve_spec_parsing() {
        let c = spec(r#"{"label": "11a1", "a_invariants": [0,-1,1,-10,-20], "ap_overrides": {"11": 1}}"#).unwrap();
        assert_eq!(c.curve.bad_primes(), &[11]);
        assert_eq!(c.overrides, BTreeMap::from([(11, 1)]));
        let c = spec(r#"{"a_invariants": [0,0,0,-1,0], "cm_discriminant": -4}"#).unwrap();
        assert_eq!(c.curve.cm_discriminant(), Some(-4));
        let c = spec(r#"{"a_invariants": [0,0,0,-1,0], "bad_primes": [2, 3]}"#).unwrap();
        assert_eq!(c.curve.bad_primes(), &[2, 3]);
    }

    #[test]
    fn curve_spec_errors_name_fields() {
        let msg = |t: &str| spec(t).unwrap_err().to_string();
        assert!(msg(r#"{"label": "x"}"#).contains("a_invariants"));
        assert!(msg(r#"{"a_invariants": [0,0,0,-1]}"#).contains("a_invariants"));
        assert!(msg(r#"{"a_invariants": [0,0,0.5,-1,0]}"#).contains("a_invariants[2]"));
        assert!(msg(r#"{"a_invariants": [0,0,0,-1,0], "rank": 0}"#).contains("rank"));
        assert!(msg(r#"{"a_invariants": [0,0,0,-1,0], "ap_overrides": {"4": 1}}"#).contains("ap_overrides"));
        assert!(msg(r#"{"a_invariants": [0,0,0,0,0]}"#).contains("a_invariants"));
        assert!(msg(r#"{"a_invariants": [0,0,0,-1,0], "cm_discriminant": 4}"#).contains("cm_discriminant"));
        assert!(msg("{").contains("t.json"));
    }

    #[test]
    fn ap_csv_parsing() {
        let parse = |t: &str| parse_ap_csv(t.as_bytes(), Path::new("a.csv"));
        assert_eq!(parse("p,ap\n2,-2\n3,-1").unwrap(), BTreeMap::from([(2, -2), (3, -1)]));
        let e = parse("p,ap\n2,-2\n4,1").unwrap_err().to_string();
        assert!(e.contains("row 2") && e.contains("not prime"), "{e}");
        let e = parse("p,ap\n5,7").unwrap_err().to_string();
        assert!(e.contains("Hasse"), "{e}");
        let e = parse("p,ap\n3,1\n3,1").unwrap_err().to_string();
        assert!(e.contains("duplicate"), "{e}");
        let e = parse("p,ap\n5,1\n3,1").unwrap_err().to_string();
        assert!(e.contains("order"), "{e}");
        assert!(parse("prime,ap\n2,1").is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(0.5), "0.5");
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_float(-0.70710678118654752), "-0.707106781187");
        assert_eq!(fmt_float(1234.5), "1234.5");
        assert_eq!(fmt_float(1e-7), "1.00000000000e-7");
    }
}
