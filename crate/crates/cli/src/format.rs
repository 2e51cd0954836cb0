//! Self-describing delimited text output.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Tsv,
    /// Aligned columns for reading in a terminal.
    Table,
}

/// Formats like C's `%.12e`: twelve mantissa digits and a signed exponent of
/// at least two digits.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Header values. Floats use the shortest text that parses back to the same
/// number, so echoed inputs round-trip exactly.
pub trait MetaValue {
    fn echo(&self) -> String;
}

impl MetaValue for f64 {
    fn echo(&self) -> String {
        format!("{self:?}")
    }
}

macro_rules! display_meta {
    ($($t:ty),*) => {$(
        impl MetaValue for $t {
            fn echo(&self) -> String {
                self.to_string()
            }
        }
    )*};
}

display_meta!(u8, u64, usize, &str, String);

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => sci(*x),
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

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// `# key=value` metadata, a column header and rows; empty cells mark points
/// where a quantity is undefined.
#[derive(Debug, Clone, Default)]
pub struct Table {
    meta: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl MetaValue) -> &mut Self {
        self.meta.push((key.to_string(), value.echo()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        match format {
            OutputFormat::Csv | OutputFormat::Tsv => {
                let sep = if format == OutputFormat::Csv {
                    ","
                } else {
                    "\t"
                };
                out.push_str(&self.columns.join(sep));
                out.push('\n');
                for r in cells {
                    out.push_str(&r.join(sep));
                    out.push('\n');
                }
            }
            OutputFormat::Table => {
                let widths: Vec<usize> = self
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        cells
                            .iter()
                            .map(|r| r[i].len())
                            .chain([c.len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |items: &[String]| -> String {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                out.push_str(&line(&self.columns));
                out.push('\n');
                for r in &cells {
                    out.push_str(&line(r));
                    out.push('\n');
                }
            }
        }
        out
    }
}
