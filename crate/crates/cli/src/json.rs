//! Output documents with a fixed field order and fixed float formatting, so
//! that identical inputs give byte-identical output.

use std::fmt::Write;

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

/// 17 significant digits in scientific notation, which round-trips every
/// f64. Non-finite values have no JSON form and become `null`.
pub fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

impl Json {
    pub fn obj() -> ObjBuilder {
        ObjBuilder(Vec::new())
    }

    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    pub fn nums(values: impl IntoIterator<Item = f64>) -> Json {
        Json::Arr(values.into_iter().map(Json::Num).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => write!(out, "{i}").unwrap(),
            Json::Num(x) => out.push_str(format_float(*x).as_deref().unwrap_or("null")),
            Json::Str(s) => write_str(out, s),
            Json::Arr(items) if items.is_empty() => out.push_str("[]"),
            Json::Arr(items) if items.iter().all(Json::is_scalar) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    item.write(out, indent);
                }
                out.push(']');
            }
            Json::Arr(items) => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    pad(out, indent + 1);
                    item.write(out, indent + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push(']');
            }
            Json::Obj(fields) if fields.is_empty() => out.push_str("{}"),
            Json::Obj(fields) => {
                out.push_str("{\n");
                for (i, (key, value)) in fields.iter().enumerate() {
                    pad(out, indent + 1);
                    write_str(out, key);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                    out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Json::Obj(_)) && !matches!(self, Json::Arr(a) if !a.iter().all(Json::is_scalar))
    }

    /// Scalar leaves keyed by their dotted path, for key/value CSV output.
    pub fn flatten(&self) -> Vec<(String, String)> {
        let mut rows = Vec::new();
        self.flatten_into(String::new(), &mut rows);
        rows
    }

    fn flatten_into(&self, prefix: String, rows: &mut Vec<(String, String)>) {
        let join = |key: &str| {
            if prefix.is_empty() {
                key.to_string()
            } else {
                format!("{prefix}.{key}")
            }
        };
        match self {
            Json::Obj(fields) => {
                for (key, value) in fields {
                    value.flatten_into(join(key), rows);
                }
            }
            Json::Arr(items) => {
                for (i, item) in items.iter().enumerate() {
                    item.flatten_into(join(&i.to_string()), rows);
                }
            }
            scalar => rows.push((prefix, scalar.csv_cell())),
        }
    }

    pub fn csv_cell(&self) -> String {
        match self {
            Json::Null => String::new(),
            Json::Bool(b) => b.to_string(),
            Json::Int(i) => i.to_string(),
            Json::Num(x) => format_float(*x).unwrap_or_default(),
            Json::Str(s) => csv_escape(s),
            other => csv_escape(other.render().trim_end()),
        }
    }
}

pub struct ObjBuilder(Vec<(String, Json)>);

impl ObjBuilder {
    pub fn field(mut self, key: &str, value: Json) -> Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn num(self, key: &str, value: f64) -> Self {
        self.field(key, Json::Num(value))
    }

    pub fn int(self, key: &str, value: i64) -> Self {
        self.field(key, Json::Int(value))
    }

    pub fn str(self, key: &str, value: impl Into<String>) -> Self {
        self.field(key, Json::Str(value.into()))
    }

    pub fn bool(self, key: &str, value: bool) -> Self {
        self.field(key, Json::Bool(value))
    }

    pub fn build(self) -> Json {
        Json::Obj(self.0)
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn write_str(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => write!(out, "\\u{:04x}", c as u32).unwrap(),
            c => out.push(c),
        }
    }
    out.push('"');
}

pub fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
