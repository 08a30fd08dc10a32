//! Deterministic report assembly: sorted keys (serde_json's default
//! map) and fixed `%.12g`-style float formatting so identical inputs
//! produce byte-identical output.

use ivfopt_core::Interval;
use serde_json::{json, Map, Value};

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// trimmed, scientific notation outside [1e-4, 1e12), and `inf`/`-inf`
/// tokens for the infinities.
pub fn g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= 12 {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{}e{}{:02}", mant, if exp < 0 { "-" } else { "+" }, exp.abs())
    } else {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    }
}

pub fn num(x: f64) -> Value {
    Value::String(g12(x))
}

pub fn vec_nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn opt_vec(xs: &Option<Vec<f64>>) -> Value {
    match xs {
        Some(v) => vec_nums(v),
        None => Value::Null,
    }
}

pub fn interval(i: Interval) -> Value {
    json!({ "lo": num(i.lo()), "hi": num(i.hi()) })
}

pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    results: Value,
    diagnostics: Vec<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Value::Null,
            diagnostics: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: Value) -> Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn results(mut self, results: Value) -> Self {
        self.results = results;
        self
    }

    pub fn diagnostic(mut self, level: &str, message: &str) -> Self {
        self.diagnostics
            .push(json!({ "level": level, "message": message }));
        self
    }

    pub fn render(&self) -> String {
        let body = json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": self.results,
            "diagnostics": self.diagnostics,
        });
        serde_json::to_string_pretty(&body).expect("report serialization")
    }

    pub fn print(&self) {
        println!("{}", self.render());
    }
}
