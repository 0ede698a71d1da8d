use serde_json::Value;

use crate::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Value]) -> Vec<String> {
    rows.first()
        .and_then(Value::as_object)
        .map(|o| o.keys().cloned().collect())
        .unwrap_or_default()
}

fn text(report: &Report) -> String {
    let mut out = format!("# {}\n", report.command);
    if let Some(params) = report.params.as_object() {
        for (k, v) in params {
            out.push_str(&format!("{k} = {}\n", cell(v)));
        }
    }
    let cols = columns(&report.rows);
    if !cols.is_empty() {
        let table: Vec<Vec<String>> = report
            .rows
            .iter()
            .map(|r| cols.iter().map(|c| cell(&r[c.as_str()])).collect())
            .collect();
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| table.iter().map(|row| row[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        out.push('\n');
        out.push_str(&line(&cols));
        for row in &table {
            out.push_str(&line(row));
        }
    }
    out.push_str(&format!("\npass: {}\n", report.pass));
    out
}

fn csv(report: &Report) -> String {
    let cols = columns(&report.rows);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&cols).expect("in-memory write");
    for r in &report.rows {
        w.write_record(cols.iter().map(|c| cell(&r[c.as_str()]))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 input")
}

/// Deterministic rendering of a report.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Csv => csv(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmd_dims;

    #[test]
    fn csv_has_fixed_header() {
        let s = render(&cmd_dims(2, 2, false).unwrap(), Format::Csv);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("d,dim_A,dim_B,dim_H,dim_P,formula_match"));
        assert_eq!(lines.next(), Some("0,1,1,1,1,true"));
        assert_eq!(s.lines().count(), 4);
    }

    #[test]
    fn json_top_level_keys_in_order() {
        let s = render(&cmd_dims(1, 1, false).unwrap(), Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "params", "rows", "pass"]);
        assert_eq!(v["rows"][1]["dim_P"], 2);
    }

    #[test]
    fn text_table() {
        let s = render(&cmd_dims(1, 4, false).unwrap(), Format::Text);
        assert!(s.starts_with("# dims\nn = 1\ndmax = 4\n"));
        assert!(s.contains("d  dim_A  dim_B  dim_H  dim_P  formula_match\n"));
        assert!(s.contains("4  1      0      4      5      true\n"));
        assert!(s.ends_with("pass: true\n"));
    }
}
