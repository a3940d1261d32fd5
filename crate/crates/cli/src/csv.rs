//! CSV output: header row, then rows of fixed-point reals with 9 fractional
//! digits, comma separated, LF line endings.

use std::io::{self, Write};

use crate::figure::CurveTable;

pub fn format_real(x: f64) -> String {
    let s = format!("{x:.9}");
    // -0.000000000 and 0.000000000 must not differ between runs
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn emit_csv(table: &CurveTable, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{}", table.columns().join(","))?;
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(|&x| format_real(x)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}
