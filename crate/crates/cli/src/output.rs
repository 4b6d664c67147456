//! Rendering of flat records as aligned text, json-lines or CSV.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

pub type Record = Map<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    #[value(alias = "json-lines", alias = "jsonl")]
    Json,
    Csv,
}

/// Writes `records` in `format`. `notes` are trailing summary lines shown in
/// human output only; the machine formats carry the same facts per record.
pub fn render(
    out: &mut impl Write,
    format: Format,
    records: &[Record],
    notes: &[String],
) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if let Some(first) = records.first() {
                w.write_record(first.keys())?;
            }
            for r in records {
                w.write_record(r.values().map(|v| cell(v, ";")))?;
            }
            w.flush()?;
        }
        Format::Human => {
            match records {
                [] => {}
                [single] => {
                    let width = single.keys().map(String::len).max().unwrap_or(0);
                    for (k, v) in single {
                        writeln!(
                            out,
                            "{}",
                            format!("{k:<width$}  {}", cell(v, ", ")).trim_end()
                        )?;
                    }
                }
                many => table(out, many)?,
            }
            for n in notes {
                writeln!(out, "{n}")?;
            }
        }
    }
    Ok(())
}

fn table(out: &mut impl Write, records: &[Record]) -> io::Result<()> {
    let header: Vec<&String> = records[0].keys().collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| r.values().map(|v| cell(v, ",")).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.iter().map(|h| h.as_str()).collect()))?;
    for r in &rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn cell(v: &Value, sep: &str) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|x| cell(x, sep)).collect();
            if sep == ";" {
                inner.join(";")
            } else {
                format!("({})", inner.join(sep))
            }
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec(v: Value) -> Record {
        v.as_object().unwrap().clone()
    }

    fn text(format: Format, records: &[Record]) -> String {
        let mut buf = Vec::new();
        render(&mut buf, format, records, &["note".into()]).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        let rs = vec![
            rec(json!({"name": "a", "x": [1, 2], "y": null})),
            rec(json!({"name": "bb", "x": [3], "y": 0.5})),
        ];
        assert_eq!(text(Format::Csv, &rs), "name,x,y\na,1;2,\nbb,3,0.5\n");
        assert_eq!(
            text(Format::Json, &rs),
            "{\"name\":\"a\",\"x\":[1,2],\"y\":null}\n{\"name\":\"bb\",\"x\":[3],\"y\":0.5}\n"
        );
        assert_eq!(
            text(Format::Human, &rs),
            "name  x      y\na     (1,2)\nbb    (3)    0.5\nnote\n"
        );
        assert_eq!(
            text(Format::Human, &rs[..1]),
            "name  a\nx     (1, 2)\ny\nnote\n"
        );
    }
}
