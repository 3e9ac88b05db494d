//! CSV emission: comma separator, '.' decimal point, scientific notation
//! with 17 significant digits, LF line endings, a header line followed by a
//! units line.

use std::io::{self, Write};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Format a float in scientific notation with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_cell(w: &mut impl Write, cell: &Cell) -> io::Result<()> {
    match cell {
        Cell::Number(v) => write!(w, "{}", fmt_float(*v)),
        Cell::Bool(b) => write!(w, "{b}"),
        Cell::Text(t) => write!(w, "{t}"),
    }
}

/// In-memory table with column headers and a units row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub units: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String> + Clone>(headers: &[S], units: &[S]) -> Self {
        assert_eq!(headers.len(), units.len(), "one unit per column");
        Self {
            headers: headers.iter().cloned().map(Into::into).collect(),
            units: units.iter().cloned().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn write(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.headers.join(","))?;
        writeln!(w, "{}", self.units.join(","))?;
        for row in &self.rows {
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    write!(w, ",")?;
                }
                write_cell(w, cell)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(-0.25), "-2.5000000000000000e-1");
    }

    #[test]
    fn table_layout_headers_then_units_then_rows() {
        let mut t = Table::new(&["a", "flag"], &["m", "bool"]);
        t.push_row(vec![Cell::Number(3.0), Cell::Bool(true)]);
        let s = t.to_csv_string();
        assert_eq!(s, "a,flag\nm,bool\n3.0000000000000000e0,true\n");
    }

    #[test]
    fn round_trips_through_parse() {
        let x = 0.1234567890123456789_f64;
        let s = fmt_float(x);
        let back: f64 = s.parse().unwrap();
        assert_eq!(back, x);
    }
}
