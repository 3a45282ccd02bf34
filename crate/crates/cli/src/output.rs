use ck_entropy::numfmt::sig15;
use serde_json::{Map, Value};

use crate::Format;

/// Ordered key/value record rendered as aligned text, a JSON object or
/// two-column CSV. Reals are stored as 15-significant-digit strings.
#[derive(Debug, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

pub fn num(x: f64) -> Value {
    Value::String(sig15(x))
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

pub fn num_rows(rows: &[Vec<f64>]) -> Value {
    Value::Array(rows.iter().map(|r| nums(r)).collect())
}

pub fn int_rows<T: Copy + Into<u64>>(rows: &[Vec<T>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(|&v| Value::from(v.into())).collect())).collect())
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".to_string(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn is_rows(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.first().is_some_and(Value::is_array))
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.fields.iter().cloned().collect::<Map<String, Value>>())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json_line(&self.to_json()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["key", "value"]).expect("in-memory write");
                for (k, v) in &self.fields {
                    let cell = if is_rows(v) {
                        let Value::Array(rows) = v else { unreachable!() };
                        rows.iter().map(plain).collect::<Vec<_>>().join(";")
                    } else {
                        plain(v)
                    };
                    w.write_record([k.as_str(), cell.as_str()]).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut out = String::new();
                for (k, v) in &self.fields {
                    if is_rows(v) {
                        out.push_str(&format!("{k}:\n"));
                        let Value::Array(rows) = v else { unreachable!() };
                        for row in rows {
                            out.push_str(&format!("  {}\n", plain(row)));
                        }
                    } else {
                        out.push_str(&format!("{k:<width$}  {}\n", plain(v)));
                    }
                }
                out
            }
        }
    }
}

pub fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Rows under a header, as CSV or space-aligned text.
pub fn table(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        for row in rows {
            w.write_record(row).expect("in-memory write");
        }
        return String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_formats() {
        let mut r = Record::new();
        r.put("n", 2).put("entropy", num(std::f64::consts::LN_2)).put("rows", int_rows(&[vec![1u8, 1], vec![1, 0]]));
        assert_eq!(r.render(Format::Csv), "key,value\nn,2\nentropy,0.693147180559945\nrows,1 1;1 0\n");
        assert!(r.render(Format::Text).starts_with("n        2\nentropy  0.693147180559945\nrows:\n  1 1\n"));
        assert_eq!(r.to_json()["entropy"], "0.693147180559945");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["k", "w_k"], &[vec!["1".into(), "2".into()], vec!["10".into(), "144".into()]], Format::Text);
        assert_eq!(t, " k  w_k\n 1    2\n10  144\n");
    }
}
