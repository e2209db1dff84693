//! Plain-text emitters shared by the CLI and the library's serializers.
//!
//! Every float is written with 17 significant digits in scientific notation,
//! which round-trips any `f64` exactly.

use std::fmt::Write as _;

/// `x` with 17 significant digits; non-finite values as `nan`, `inf`, `-inf`.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Builder for one JSON object on one line, keys in insertion order.
#[derive(Debug, Default, Clone)]
pub struct JsonRow {
    body: String,
}

impl JsonRow {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(&mut self, key: &str) {
        if !self.body.is_empty() {
            self.body.push(',');
        }
        self.body.push_str(&serde_json::to_string(key).expect("string key"));
        self.body.push(':');
    }

    pub fn num(mut self, key: &str, value: f64) -> Self {
        self.key(key);
        if value.is_finite() {
            self.body.push_str(&fmt17(value));
        } else {
            self.body.push_str("null");
        }
        self
    }

    pub fn int(mut self, key: &str, value: i64) -> Self {
        self.key(key);
        let _ = write!(self.body, "{value}");
        self
    }

    pub fn text(mut self, key: &str, value: &str) -> Self {
        self.key(key);
        self.body.push_str(&serde_json::to_string(value).expect("string value"));
        self
    }

    pub fn flag(mut self, key: &str, value: bool) -> Self {
        self.key(key);
        self.body.push_str(if value { "true" } else { "false" });
        self
    }

    pub fn finish(&self) -> String {
        format!("{{{}}}", self.body)
    }
}
