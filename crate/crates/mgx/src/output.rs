//! Rendering command results as JSON, CSV or plain text.

use std::str::FromStr;

use mgx_core::BigUint;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// A command result: one record, or a list of records. Streams are lists
/// printed one compact JSON object per line.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Record(Map<String, Value>),
    Rows(Vec<Map<String, Value>>),
    Stream(Vec<Map<String, Value>>),
}

/// A big integer as an exact JSON number.
pub fn big(x: &BigUint) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal digits form a JSON number"))
}

pub fn float(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Builds a record from (key, value) pairs, keeping their order.
pub fn record<I: IntoIterator<Item = (&'static str, Value)>>(fields: I) -> Map<String, Value> {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn plain_record(m: &Map<String, Value>) -> String {
    if let Some(v) = m.get("value") {
        return scalar(v);
    }
    m.iter().map(|(k, v)| format!("{k}: {}", scalar(v))).collect::<Vec<_>>().join("\n")
}

fn plain_row(m: &Map<String, Value>) -> String {
    m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" ")
}

fn csv_rows(rows: &[&Map<String, Value>]) -> String {
    let mut header: Vec<&String> = Vec::new();
    for row in rows {
        for k in row.keys() {
            if !header.contains(&k) {
                header.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        let cells: Vec<String> = header.iter().map(|k| row.get(*k).map(scalar).unwrap_or_default()).collect();
        w.write_record(&cells).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// The text printed for `out`, ending in a newline.
pub fn render(out: &Output, format: Format) -> String {
    let mut text = match (out, format) {
        (Output::Record(m), Format::Json) => serde_json::to_string_pretty(m).expect("serializable"),
        (Output::Rows(r), Format::Json) => serde_json::to_string_pretty(r).expect("serializable"),
        (Output::Stream(r), Format::Json) => {
            r.iter().map(|m| serde_json::to_string(m).expect("serializable")).collect::<Vec<_>>().join("\n")
        }
        (Output::Record(m), Format::Csv) => csv_rows(&[m]),
        (Output::Rows(r) | Output::Stream(r), Format::Csv) => csv_rows(&r.iter().collect::<Vec<_>>()),
        (Output::Record(m), Format::Plain) => plain_record(m),
        (Output::Rows(r) | Output::Stream(r), Format::Plain) => r.iter().map(plain_row).collect::<Vec<_>>().join("\n"),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn big_integers_stay_exact() {
        let x = BigUint::from(3u32).pow(200);
        let out = Output::Record(record([("value", big(&x))]));
        assert_eq!(render(&out, Format::Plain).trim(), x.to_string());
        assert!(render(&out, Format::Json).contains(&x.to_string()));
        assert_eq!(render(&out, Format::Csv), format!("value\n{x}\n"));
    }

    #[test]
    fn plain_lists_fields_without_a_value() {
        let out = Output::Record(record([("regime", json!("POWER")), ("lower", json!(2))]));
        assert_eq!(render(&out, Format::Plain), "regime: POWER\nlower: 2\n");
    }

    #[test]
    fn csv_quotes_nested_values() {
        let out = Output::Rows(vec![record([("id", json!("a")), ("sizes", json!([1, 2]))])]);
        assert_eq!(render(&out, Format::Csv), "id,sizes\na,\"[1,2]\"\n");
    }

    #[test]
    fn streams_are_json_lines() {
        let out = Output::Stream(vec![record([("k", json!(1))]), record([("k", json!(2))])]);
        assert_eq!(render(&out, Format::Json), "{\"k\":1}\n{\"k\":2}\n");
    }
}
