//! Deterministic CSV emission.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{ExperimentError, Result};

/// A record that knows its column names and can render itself.
pub trait CsvRow {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Formats with 12 significant digits, `%.12g` style: trailing zeros are
/// trimmed, exponent notation outside `1e-5 ..= 1e12`, and `-0` prints as `0`.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    let fixed = format!("{:.*}", decimals, x);
    let fixed = trim_zeros(&fixed);
    if fixed == "-0" {
        "0".into()
    } else {
        fixed.to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes a header and one line per row to `out`.
pub fn write_csv<R: CsvRow, W: Write>(rows: &[R], out: W) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(R::header())?;
    for row in rows {
        writer.write_record(row.fields())?;
    }
    writer.flush()
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit_csv<R: CsvRow>(rows: &[R], path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let io_err = |source| ExperimentError::Io { path: p.to_path_buf(), source };
            let file = File::create(p).map_err(io_err)?;
            write_csv(rows, file).map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            write_csv(rows, stdout.lock())
                .map_err(|source| ExperimentError::Io { path: "<stdout>".into(), source })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Pair(f64, &'static str);

    impl CsvRow for Pair {
        fn header() -> &'static [&'static str] {
            &["x", "label"]
        }
        fn fields(&self) -> Vec<String> {
            vec![fmt_sig(self.0), self.1.to_string()]
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(0.1 + 0.2), "0.3");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_sig(-0.25), "-0.25");
        assert_eq!(fmt_sig(123456.789), "123456.789");
        assert_eq!(fmt_sig(1.5e-7), "1.5e-07");
        assert_eq!(fmt_sig(-2.0e-12), "-2e-12");
        assert_eq!(fmt_sig(0.0001), "0.0001");
        assert_eq!(fmt_sig(3.0e15), "3e+15");
        assert_eq!(fmt_sig(0.99999999999999), "1");
    }

    #[test]
    fn header_only_and_rows() {
        let mut buf = Vec::new();
        write_csv::<Pair, _>(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,label\n");

        let mut buf = Vec::new();
        write_csv(&[Pair(0.125, "a,b")], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,label\n0.125,\"a,b\"\n");
    }
}
