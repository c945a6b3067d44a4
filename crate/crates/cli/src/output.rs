//! CSV writing helpers.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::error::CliError;

/// Rounds to 15 significant digits and prints the shortest decimal that
/// reads back as the rounded value.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.14e}").parse().unwrap_or(v);
    let mag = rounded.abs();
    if mag != 0.0 && !(1e-5..1e15).contains(&mag) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

/// CSV writer on the given file, or on `stdout` when no path is set.
pub fn csv_writer<'a>(
    path: Option<&Path>,
    stdout: &'a mut dyn Write,
) -> Result<csv::Writer<Box<dyn Write + 'a>>, CliError> {
    let sink: Box<dyn Write + 'a> = match path {
        Some(p) => Box::new(io::BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(stdout),
    };
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(sink))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_num(-1.6293), "-1.6293");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(2.0e-20 / 3.0), "6.66666666666667e-21");
        assert_eq!(fmt_num(12.0), "12");
    }

    #[test]
    fn writes_crlf_rows() {
        let mut buf = Vec::new();
        {
            let mut w = csv_writer(None, &mut buf).unwrap();
            w.write_record(["a", "b,c"]).unwrap();
            w.flush().unwrap();
        }
        assert_eq!(String::from_utf8(buf).unwrap(), "a,\"b,c\"\r\n");
    }
}
