//! JSON interchange. Rationals are written as `"p/q"` strings; on input,
//! strings (`"p/q"`, integers, decimals) and plain JSON numbers are accepted
//! and read exactly.
//!
//! ```text
//! game:     {"cx": ["-1", "1"], "cy": ["-1", "1"]}
//! measure:  [["2/5", "1/5", "25/2"], ...]          (x, y, weight)
//! strategy: [["-1", "1/2"], ["1", "1/2"]]          (value, weight)
//! ```

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::FiniteGame;
use crate::measure::{FiniteMeasure, MixedStrategy};
use crate::rational::{format_rational, parse_rational, Rational};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_value(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(bad(format!(
            "expected a number or \"p/q\" string, got {other}"
        ))),
    }
}

fn rational_list(v: &Value, what: &str) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?
        .iter()
        .map(rational_from_value)
        .collect()
}

fn tuples(v: &Value, width: usize, what: &str) -> Result<Vec<Vec<Rational>>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of arrays")))?
        .iter()
        .map(|row| {
            let r = rational_list(row, what)?;
            if r.len() != width {
                return Err(bad(format!("each {what} entry needs {width} values")));
            }
            Ok(r)
        })
        .collect()
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))
}

pub fn game_to_value(game: &FiniteGame) -> Value {
    json!({
        "cx": game.cx().iter().map(rational_value).collect::<Vec<_>>(),
        "cy": game.cy().iter().map(rational_value).collect::<Vec<_>>(),
    })
}

pub fn game_from_value(v: &Value) -> Result<FiniteGame> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| bad(format!("game is missing \"{k}\"")))
    };
    FiniteGame::new(
        rational_list(field("cx")?, "cx")?,
        rational_list(field("cy")?, "cy")?,
    )
}

pub fn game_from_json(text: &str) -> Result<FiniteGame> {
    game_from_value(&parse_json(text)?)
}

pub fn game_to_json(game: &FiniteGame) -> String {
    pretty(&game_to_value(game))
}

pub fn measure_to_value(mu: &FiniteMeasure) -> Value {
    Value::Array(
        mu.iter()
            .map(|(x, y, w)| json!([rational_value(x), rational_value(y), rational_value(w)]))
            .collect(),
    )
}

pub fn measure_from_value(v: &Value) -> Result<FiniteMeasure> {
    FiniteMeasure::new(
        tuples(v, 3, "measure")?
            .into_iter()
            .map(|r| (r[0].clone(), r[1].clone(), r[2].clone())),
    )
}

pub fn measure_from_json(text: &str) -> Result<FiniteMeasure> {
    measure_from_value(&parse_json(text)?)
}

pub fn measure_to_json(mu: &FiniteMeasure) -> String {
    pretty(&measure_to_value(mu))
}

pub fn strategy_to_value(s: &MixedStrategy) -> Value {
    Value::Array(
        s.atoms()
            .iter()
            .map(|(v, w)| json!([rational_value(v), rational_value(w)]))
            .collect(),
    )
}

pub fn strategy_from_value(v: &Value) -> Result<MixedStrategy> {
    MixedStrategy::new(
        tuples(v, 2, "strategy")?
            .into_iter()
            .map(|r| (r[0].clone(), r[1].clone())),
    )
}

/// Two-space indented JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
