//! Deterministic CSV emission.

use std::io::Write;

use mzi_parity::DeltaPhi;

use crate::error::Result;

/// Shortest round-trip decimal; scientific notation outside [1e-5, 1e16).
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// One CSV cell; `None` is an empty cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_f64(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n.into())
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<DeltaPhi> for Cell {
    fn from(d: DeltaPhi) -> Self {
        Cell::Num(d.value())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_f64(0.1), "0.1");
        assert_eq!(format_f64(0.0), "0");
        assert_eq!(format_f64(-2.5), "-2.5");
        assert_eq!(format_f64(1e-7), "1e-7");
        assert_eq!(format_f64(1.5e20), "1.5e20");
        assert_eq!(format_f64(f64::INFINITY), "inf");
        assert_eq!(format_f64(1e-4), "0.0001");
        for x in [0.1 + 0.2, 1.0 / 3.0, 2.0f64.sqrt() * 1e-9, 123456.789e10] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn writes_empty_cells_and_inf() {
        let mut buf = Vec::new();
        let rows = vec![vec![Cell::from(1.0), Cell::from(DeltaPhi::Divergent), Cell::from(None::<f64>)]];
        write_csv(&mut buf, &["a", "delta_phi", "c"], &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,delta_phi,c\n1,inf,\n");
    }
}
