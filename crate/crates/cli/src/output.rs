//! Output documents: JSON with rationals as `"p/q"` strings and floats with
//! 17 significant digits.

use std::fs;
use std::io;
use std::path::Path;

use conical_core::forms::{Matrix, Q};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Non-finite values become strings; finite ones are printed by [`render`]
/// as `1.2345678901234567e2`.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::String(x.to_string())
    }
}

/// Pretty printing with every float in 17 significant digits.
struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(float).collect())
}

pub fn rational(q: &Q) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational).collect()))
            .collect(),
    )
}

pub fn strings<S: AsRef<str>>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(|s| Value::String(s.as_ref().to_string())).collect())
}

/// The reproducibility block embedded in every output.
pub fn meta(command: &str, seed: u64, config: &Value) -> Value {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let mut m = Map::new();
    m.insert("tool".into(), Value::String(env!("CARGO_PKG_NAME").into()));
    m.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    m.insert("command".into(), Value::String(command.into()));
    m.insert("seed".into(), Value::from(seed));
    m.insert("config_hash".into(), Value::String(hex::encode(Sha256::digest(canonical.as_bytes()))));
    Value::Object(m)
}

pub fn render(doc: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    doc.serialize(&mut ser).expect("document serializes");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Output {
            path: p.to_path_buf(),
            message: e.to_string(),
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Output {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })
        }
    }
}
