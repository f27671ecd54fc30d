//! Row tables and their CSV / JSON encodings.

use std::io::Write;

use num_traits::ToPrimitive;
use pdrqa::BigRational;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Ratio(BigRational),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float_text(*v),
            Cell::Ratio(q) => ratio_text(q),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Value::from(*v),
            Cell::Ratio(q) => Value::from(ratio_text(q)),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn float_text(v: f64) -> String {
    format!("{v:.16e}")
}

/// Always `p/q`, also for integers.
pub fn ratio_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A record under construction: named cells in column order.
#[derive(Debug, Default)]
pub struct Record(Vec<(String, Cell)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn cell(mut self, name: impl Into<String>, cell: Cell) -> Self {
        self.0.push((name.into(), cell));
        self
    }

    pub fn int(self, name: impl Into<String>, v: u64) -> Self {
        self.cell(name, Cell::Int(v))
    }

    pub fn float(self, name: impl Into<String>, v: Option<f64>) -> Self {
        self.cell(name, v.map_or(Cell::Empty, Cell::Float))
    }

    /// Exact value in `name` and its decimal approximation in `name_f`.
    pub fn exact(self, name: &str, q: Option<&BigRational>) -> Self {
        let (exact, approx) = match q {
            Some(q) => (Cell::Ratio(q.clone()), Cell::Float(to_f64(q))),
            None => (Cell::Empty, Cell::Empty),
        };
        self.cell(name, exact).cell(format!("{name}_f"), approx)
    }
}

#[derive(Debug, Default)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new() -> Self {
        Table::default()
    }

    /// Appends a record; the first record fixes the columns.
    pub fn push(&mut self, record: Record) {
        let (names, cells): (Vec<_>, Vec<_>) = record.0.into_iter().unzip();
        if self.rows.is_empty() && self.columns.is_empty() {
            self.columns = names;
        } else {
            assert_eq!(self.columns, names, "records must share columns");
        }
        self.rows.push(cells);
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn rows_json(&self) -> Value {
        let rows = self.rows.iter().map(|row| {
            let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
            Value::Object(obj)
        });
        Value::Array(rows.collect())
    }
}
