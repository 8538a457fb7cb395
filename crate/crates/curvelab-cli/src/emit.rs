//! Deterministic result emission.
//!
//! Every number is printed with 17 significant digits so that output is
//! byte-identical across runs and round-trips exactly through `f64`.

use num_complex::Complex;

/// A JSON document with deterministic field order (insertion order; all
/// builders insert in a fixed order).
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn obj(fields: impl IntoIterator<Item = (&'static str, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn complex(z: Complex<f64>) -> Json {
        Json::obj([("re", Json::Num(z.re)), ("im", Json::Num(z.im))])
    }
}

/// 17 significant digits, scientific notation, stable across platforms.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "null".into();
    }
    if x.is_infinite() {
        // JSON has no infinities; emit a sentinel string instead.
        return if x > 0.0 { "\"inf\"".into() } else { "\"-inf\"".into() };
    }
    format!("{:.16e}", x)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn to_json(doc: &Json) -> String {
    let mut out = String::new();
    write_json(doc, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(doc: &Json, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match doc {
        Json::Null => out.push_str("null"),
        Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Json::Int(n) => out.push_str(&n.to_string()),
        Json::Num(x) => out.push_str(&fmt_f64(*x)),
        Json::Str(s) => out.push_str(&escape(s)),
        Json::Arr(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad);
                out.push_str("  ");
                write_json(item, indent + 1, out);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push(']');
        }
        Json::Obj(fields) => {
            if fields.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (k, (key, value)) in fields.iter().enumerate() {
                out.push_str(&pad);
                out.push_str("  ");
                out.push_str(&escape(key));
                out.push_str(": ");
                write_json(value, indent + 1, out);
                if k + 1 < fields.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push('}');
        }
    }
}

fn scalar_csv(doc: &Json) -> String {
    match doc {
        Json::Null => String::new(),
        Json::Bool(b) => b.to_string(),
        Json::Int(n) => n.to_string(),
        Json::Num(x) => fmt_f64(*x),
        Json::Str(s) => {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        Json::Arr(items) => items.iter().map(scalar_csv).collect::<Vec<_>>().join(";"),
        Json::Obj(_) => unreachable!("flattened before rendering"),
    }
}

/// Flattens nested objects into dotted column names. Arrays of scalars are
/// joined with semicolons inside a cell; arrays holding structured values
/// get one indexed column per element.
fn flatten(prefix: &str, doc: &Json, out: &mut Vec<(String, Json)>) {
    match doc {
        Json::Arr(items)
            if items
                .iter()
                .any(|x| matches!(x, Json::Obj(_) | Json::Arr(_))) =>
        {
            for (k, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{k}"), item, out);
            }
        }
        Json::Obj(fields) => {
            for (key, value) in fields {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, value, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

/// Renders a document as CSV. The first top-level field holding an array of
/// objects becomes the row source (one row per element, with the remaining
/// scalar fields repeated on each row); otherwise the document is a single
/// row.
pub fn to_csv(doc: &Json) -> String {
    let fields = match doc {
        Json::Obj(fields) => fields.clone(),
        other => vec![("value".to_string(), other.clone())],
    };
    let row_source = fields.iter().position(|(_, v)| {
        matches!(v, Json::Arr(items) if !items.is_empty() && items.iter().all(|x| matches!(x, Json::Obj(_))))
    });
    let mut shared: Vec<(String, Json)> = Vec::new();
    let mut rows: Vec<Vec<(String, Json)>> = Vec::new();
    match row_source {
        Some(idx) => {
            let (row_key, row_val) = &fields[idx];
            for (k, (key, value)) in fields.iter().enumerate() {
                if k != idx {
                    flatten(key, value, &mut shared);
                }
            }
            if let Json::Arr(items) = row_val {
                for item in items {
                    let mut row = Vec::new();
                    flatten(row_key, item, &mut row);
                    rows.push(row);
                }
            }
        }
        None => {
            let mut row = Vec::new();
            for (key, value) in &fields {
                flatten(key, value, &mut row);
            }
            rows.push(row);
        }
    }
    // Column set: union over rows, in first-seen order, shared columns first.
    let mut columns: Vec<String> = shared.iter().map(|(k, _)| k.clone()).collect();
    for row in &rows {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let mut out = columns.join(",");
    out.push('\n');
    for row in &rows {
        let line: Vec<String> = columns
            .iter()
            .map(|col| {
                shared
                    .iter()
                    .chain(row.iter())
                    .find(|(k, _)| k == col)
                    .map(|(_, v)| scalar_csv(v))
                    .unwrap_or_default()
            })
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
