//! Command output: tables of strings rendered as aligned text or CSV.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Self { title: title.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width in table '{}'", self.title);
        self.rows.push(row);
    }

    /// The column named `name`, top to bottom.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j].as_str()).collect())
    }

    fn render_text(&self, out: &mut String) {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain(std::iter::once(self.header[j].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
            padded.join("  ").trim_end().to_string()
        };
        if !self.title.is_empty() {
            let _ = writeln!(out, "{}", self.title);
        }
        let _ = writeln!(out, "{}", line(&self.header));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        let _ = writeln!(out, "{}", rule.join("  "));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row));
        }
    }

    fn render_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header).map_err(csv_error)?;
        for row in &self.rows {
            writer.write_record(row).map_err(csv_error)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// The invocation, normalized with every defaulted flag spelled out.
    pub command: String,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Table => Ok(self.to_text()),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("$ {}\n", self.command);
        for table in &self.tables {
            out.push('\n');
            table.render_text(&mut out);
        }
        out
    }

    /// A single table is plain CSV (header row first). Several tables are
    /// written as blocks separated by blank lines, each opened by a
    /// `# title` comment line.
    pub fn to_csv(&self) -> Result<String> {
        if let [only] = self.tables.as_slice() {
            return only.render_csv();
        }
        let mut blocks = Vec::with_capacity(self.tables.len());
        for table in &self.tables {
            blocks.push(format!("# {}\n{}", table.title, table.render_csv()?));
        }
        Ok(blocks.join("\n"))
    }
}

/// Reads back the output of [`Report::to_csv`]. Single-table input yields
/// one table with an empty title.
pub fn parse_csv(text: &str) -> Result<Vec<Table>> {
    let mut tables = Vec::new();
    let mut title = String::new();
    let mut block = String::new();
    let flush = |title: &mut String, block: &mut String, tables: &mut Vec<Table>| -> Result<()> {
        if block.trim().is_empty() {
            return Ok(());
        }
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(block.as_bytes());
        let header = reader.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
        let rows = reader
            .records()
            .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()).map_err(csv_error))
            .collect::<Result<Vec<Vec<String>>>>()?;
        tables.push(Table { title: std::mem::take(title), header, rows });
        block.clear();
        Ok(())
    };
    for line in text.lines() {
        if let Some(t) = line.strip_prefix("# ") {
            flush(&mut title, &mut block, &mut tables)?;
            title = t.to_string();
        } else if line.is_empty() {
            flush(&mut title, &mut block, &mut tables)?;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    flush(&mut title, &mut block, &mut tables)?;
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("growth", &["l", "ratio"]);
        t.push(vec!["1".into(), "3/4".into()]);
        t.push(vec!["2".into(), "a,\"b\"".into()]);
        t
    }

    #[test]
    fn single_table_csv_round_trips() {
        let mut report = Report::new("growth");
        report.tables.push(sample());
        let csv = report.to_csv().unwrap();
        assert!(csv.starts_with("l,ratio\n"));
        let back = parse_csv(&csv).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!((&back[0].header, &back[0].rows), (&sample().header, &sample().rows));
    }

    #[test]
    fn multi_table_csv_round_trips() {
        let mut report = Report::new("verify");
        report.tables.push(sample());
        let mut second = Table::new("other", &["x"]);
        second.push(vec!["".into()]);
        second.push(vec!["7".into()]);
        report.tables.push(second);
        assert_eq!(parse_csv(&report.to_csv().unwrap()).unwrap(), report.tables);
    }

    #[test]
    fn text_is_aligned() {
        let mut report = Report::new("x");
        report.tables.push(sample());
        let text = report.to_text();
        assert!(text.starts_with("$ x\n"));
        assert!(text.contains("\nl  ratio\n-  -----\n1    3/4\n"), "{text}");
    }
}
