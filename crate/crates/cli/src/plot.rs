//! Gnuplot script emission for data files.

use std::fmt::Write as _;
use std::path::Path;

use crate::format::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub xlabel: String,
    pub ylabel: String,
    /// 1-based data columns drawn against column 1.
    pub columns: Vec<usize>,
}

impl PlotSpec {
    pub fn new(title: &str, xlabel: &str, ylabel: &str, columns: Vec<usize>) -> Self {
        Self {
            title: title.into(),
            xlabel: xlabel.into(),
            ylabel: ylabel.into(),
            columns,
        }
    }

    pub fn script(&self, data: &Path, format: OutputFormat) -> String {
        let mut s = String::new();
        match format {
            OutputFormat::Csv => s.push_str("set datafile separator \",\"\n"),
            OutputFormat::Tsv => s.push_str("set datafile separator \"\\t\"\n"),
            OutputFormat::Table => s.push_str("set datafile separator whitespace\n"),
        }
        let _ = writeln!(s, "set datafile commentschars \"#\"");
        let _ = writeln!(s, "set title \"{}\"", self.title);
        let _ = writeln!(s, "set xlabel \"{}\"", self.xlabel);
        let _ = writeln!(s, "set ylabel \"{}\"", self.ylabel);
        let _ = writeln!(s, "set key autotitle columnhead");
        let file = data.display().to_string().replace('"', "\\\"");
        let curves: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("\"{file}\" using 1:{c} with lines"))
            .collect();
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_curve_per_column() {
        let spec = PlotSpec::new("t", "x", "y", vec![2, 3]);
        let s = spec.script(Path::new("out.csv"), OutputFormat::Csv);
        assert!(s.starts_with("set datafile separator \",\"\n"));
        assert!(s.contains("\"out.csv\" using 1:2 with lines"));
        assert!(s.contains("\"out.csv\" using 1:3 with lines"));
        assert!(s.ends_with('\n'));
    }
}
