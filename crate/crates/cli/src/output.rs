use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::cli::Format;

/// Column view of a record for CSV and table output.
pub trait Tabular {
    fn columns() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// JSON lines with sorted keys, a CSV with header, or an aligned table.
pub fn emit<T: Serialize + Tabular>(out: &mut dyn Write, format: Format, items: &[T]) -> Result<()> {
    match format {
        Format::Json => {
            for item in items {
                // Value maps are ordered by key
                let value = serde_json::to_value(item)?;
                writeln!(out, "{}", serde_json::to_string(&value)?)?;
            }
        }
        Format::Csv => {
            writeln!(out, "{}", T::columns().join(","))?;
            for item in items {
                let cells: Vec<String> = item.cells().into_iter().map(|c| csv_escape(&c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Table => {
            let header: Vec<String> = T::columns().iter().map(|s| s.to_string()).collect();
            let rows: Vec<Vec<String>> = items.iter().map(|i| i.cells()).collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}", w = *w))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(&header))?;
            for row in &rows {
                writeln!(out, "{}", line(row))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn csv_escape(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Long integers shortened for tables: leading digits, digit count.
pub fn abbreviate(digits: &str) -> String {
    if digits.len() <= 24 {
        digits.to_string()
    } else {
        format!("{}…({} digits)", &digits[..12], digits.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        zeta: u32,
        alpha: String,
    }

    impl Tabular for Row {
        fn columns() -> &'static [&'static str] {
            &["zeta", "alpha"]
        }
        fn cells(&self) -> Vec<String> {
            vec![self.zeta.to_string(), self.alpha.clone()]
        }
    }

    fn render(format: Format) -> String {
        let rows = [
            Row {
                zeta: 1,
                alpha: "a,b".into(),
            },
            Row {
                zeta: 22,
                alpha: "c".into(),
            },
        ];
        let mut buf = Vec::new();
        emit(&mut buf, format, &rows).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn json_keys_are_sorted() {
        assert_eq!(render(Format::Json), "{\"alpha\":\"a,b\",\"zeta\":1}\n{\"alpha\":\"c\",\"zeta\":22}\n");
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(render(Format::Csv), "zeta,alpha\n1,\"a,b\"\n22,c\n");
    }

    #[test]
    fn table_aligns() {
        assert_eq!(render(Format::Table), "zeta  alpha\n   1    a,b\n  22      c\n");
    }

    #[test]
    fn long_numbers_shortened() {
        assert_eq!(abbreviate("123"), "123");
        let long = "9".repeat(40);
        assert_eq!(abbreviate(&long), "999999999999…(40 digits)");
    }
}
