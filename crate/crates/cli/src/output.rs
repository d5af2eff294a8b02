use std::io::Write;

use crate::CliError;

/// Fixed 17-significant-digit rendering; `+∞` is written as `inf`.
pub fn format_number(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_owned()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_owned()
    } else {
        // fold −0 into 0 so output does not depend on the sign of zero
        format!("{:.16e}", x + 0.0)
    }
}

/// Writes a header and numeric rows as CSV with `\n` line endings.
pub fn write_csv<W: Write>(out: W, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| format_number(x)))?;
    }
    w.flush()?;
    Ok(())
}
