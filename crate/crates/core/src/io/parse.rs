//! Reading arrangements from JSON, with exact rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::arrangement::{Arrangement, Geometry};
use crate::error::{Error, Result};
use crate::{Line, Rational};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_integer(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(format!("not an integer: {s:?}")));
    }
    t.trim_start_matches('+').parse().map_err(|_| parse_err(format!("not an integer: {s:?}")))
}

/// Parses `"3"`, `"-2/7"` or an exact decimal such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let den = parse_integer(den)?;
        if den.is_zero() {
            return Err(parse_err(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(parse_integer(num)?, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(format!("not a decimal: {s:?}")));
        }
        let negative = whole.trim_start().starts_with('-');
        let whole = match whole.trim() {
            "" | "-" | "+" => BigInt::zero(),
            w => parse_integer(w)?,
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac_part = Rational::new(parse_integer(frac)?, scale);
        let magnitude = Rational::from_integer(whole.abs()) + frac_part;
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Rational::from_integer(parse_integer(t)?))
}

fn json_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_err(format!("{n} is not an integer; use a string or a [num, den] pair"))),
        Value::String(s) => parse_integer(s),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

/// A rational from a JSON integer, a string, or a `[num, den]` pair.
pub fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(_) => Ok(Rational::from_integer(json_integer(v)?)),
        Value::String(s) => parse_rational(s),
        Value::Array(pair) if pair.len() == 2 => {
            let den = json_integer(&pair[1])?;
            if den.is_zero() {
                return Err(parse_err("zero denominator"));
            }
            Ok(Rational::new(json_integer(&pair[0])?, den))
        }
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Times,
    Over,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Token::Plus),
            '-' | '\u{2212}' => out.push(Token::Minus),
            '*' => out.push(Token::Times),
            '/' => out.push(Token::Over),
            'x' | 'X' => out.push(Token::Var(0)),
            'y' | 'Y' => out.push(Token::Var(1)),
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k + 1 < chars.len() && (chars[k + 1].is_ascii_digit() || chars[k + 1] == '.') {
                    k += 1;
                }
                let text: String = chars[start..=k].iter().collect();
                out.push(Token::Num(parse_rational(&text)?));
            }
            other => return Err(parse_err(format!("unexpected character {other:?} in {s:?}"))),
        }
        k += 1;
    }
    Ok(out)
}

/// Coefficients of x, y and the constant in a linear expression.
fn parse_linear(s: &str) -> Result<[Rational; 3]> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(parse_err(format!("empty side in equation {s:?}")));
    }
    let mut acc = [Rational::zero(), Rational::zero(), Rational::zero()];
    let mut k = 0;
    while k < tokens.len() {
        let mut sign = Rational::one();
        let mut saw_sign = false;
        while let Some(t @ (Token::Plus | Token::Minus)) = tokens.get(k) {
            if *t == Token::Minus {
                sign = -sign;
            }
            saw_sign = true;
            k += 1;
        }
        if k > 0 && !saw_sign {
            return Err(parse_err(format!("missing operator in {s:?}")));
        }
        let mut coef = sign;
        let mut var: Option<usize> = None;
        let mut factors = 0;
        loop {
            match tokens.get(k) {
                Some(Token::Num(q)) => coef *= q.clone(),
                Some(Token::Var(v)) => {
                    if var.replace(*v).is_some() {
                        return Err(parse_err(format!("nonlinear term in {s:?}")));
                    }
                }
                Some(Token::Over) if factors > 0 => {
                    k += 1;
                    match tokens.get(k) {
                        Some(Token::Num(q)) if !q.is_zero() => coef /= q.clone(),
                        _ => return Err(parse_err(format!("'/' must be followed by a nonzero number in {s:?}"))),
                    }
                }
                Some(Token::Times) if factors > 0 => {
                    k += 1;
                    continue;
                }
                _ => break,
            }
            factors += 1;
            k += 1;
        }
        if factors == 0 {
            return Err(parse_err(format!("dangling operator in {s:?}")));
        }
        acc[var.unwrap_or(2)] += coef;
    }
    Ok(acc)
}

/// Parses a line equation such as `"y = 2x - 1"` or `"x - 1/2 y = 0"`.
pub fn parse_equation(s: &str) -> Result<Line> {
    let (lhs, rhs) = s.split_once('=').ok_or_else(|| parse_err(format!("equation {s:?} has no '='")))?;
    if rhs.contains('=') {
        return Err(parse_err(format!("equation {s:?} has more than one '='")));
    }
    let [la, lb, lc] = parse_linear(lhs)?;
    let [ra, rb, rc] = parse_linear(rhs)?;
    Line::new(la - ra, lb - rb, rc - lc).map_err(|_| parse_err(format!("equation {s:?} is not a line")))
}

fn parse_line(v: &Value) -> Result<(Line, Option<String>)> {
    let line = |a, b, c| Line::new(a, b, c).map_err(|_| parse_err(format!("degenerate line {v}")));
    match v {
        Value::String(s) => Ok((parse_equation(s)?, None)),
        Value::Array(items) if items.len() == 6 => {
            let q = |k: usize| -> Result<Rational> {
                json_rational(&Value::Array(vec![items[2 * k].clone(), items[2 * k + 1].clone()]))
            };
            Ok((line(q(0)?, q(1)?, q(2)?)?, None))
        }
        Value::Array(items) if items.len() == 3 => {
            Ok((line(json_rational(&items[0])?, json_rational(&items[1])?, json_rational(&items[2])?)?, None))
        }
        Value::Object(map) => {
            let label = match map.get("label") {
                None => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(other) => return Err(parse_err(format!("label must be a string, found {other}"))),
            };
            let parsed = if let Some(eq) = map.get("equation") {
                parse_line(eq)?.0
            } else {
                let get = |k: &str| map.get(k).ok_or_else(|| parse_err(format!("line object {v} lacks {k:?}")));
                line(json_rational(get("a")?)?, json_rational(get("b")?)?, json_rational(get("c")?)?)?
            };
            Ok((parsed, label))
        }
        other => Err(parse_err(format!("cannot read a line from {other}"))),
    }
}

fn parse_labels(map: &Map<String, Value>) -> Result<Option<Vec<String>>> {
    match map.get("labels") {
        None => Ok(None),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| parse_err("labels must be strings")))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Some(_) => Err(parse_err("labels must be an array of strings")),
    }
}

fn parse_index(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| parse_err(format!("expected a line index, found {v}")))
}

/// Reads an arrangement from its JSON value.
///
/// Coordinate form: `{"lines": [...], "no_parallels": bool, "labels": [...]}`
/// where each line is an equation string, `[a, b, c]`, six integers
/// `[a_num, a_den, b_num, b_den, c_num, c_den]`, or an object with `a`, `b`,
/// `c` (or `equation`) and an optional `label`. Abstract form:
/// `{"n_lines": N, "multiple_points": [[i, j, k, ...], ...]}`.
pub fn arrangement_from_value(v: &Value) -> Result<Arrangement<Rational>> {
    let map = v.as_object().ok_or_else(|| parse_err("arrangement must be a JSON object"))?;
    let labels = parse_labels(map)?;
    let mut arr = if let Some(lines) = map.get("lines") {
        let items = lines.as_array().ok_or_else(|| parse_err("\"lines\" must be an array"))?;
        let no_parallels = match map.get("no_parallels") {
            None => true,
            Some(Value::Bool(b)) => *b,
            Some(other) => return Err(parse_err(format!("no_parallels must be a boolean, found {other}"))),
        };
        let parsed = items.iter().map(parse_line).collect::<Result<Vec<_>>>()?;
        let inline: Vec<Option<String>> = parsed.iter().map(|p| p.1.clone()).collect();
        let mut arr = Arrangement::coordinate(parsed.into_iter().map(|p| p.0).collect(), no_parallels);
        if inline.iter().any(Option::is_some) {
            let merged = arr.labels().iter().zip(inline).map(|(d, l)| l.unwrap_or_else(|| d.clone())).collect();
            arr = arr.with_labels(merged);
        }
        arr
    } else if let Some(n) = map.get("n_lines") {
        let n = parse_index(n)?;
        let points = match map.get("multiple_points") {
            None => Vec::new(),
            Some(Value::Array(ps)) => ps
                .iter()
                .map(|p| {
                    p.as_array()
                        .ok_or_else(|| parse_err("each multiple point must be an array of line indices"))?
                        .iter()
                        .map(parse_index)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
            Some(_) => return Err(parse_err("\"multiple_points\" must be an array")),
        };
        Arrangement::abstract_points(n, points)
    } else {
        return Err(parse_err("arrangement needs \"lines\" or \"n_lines\""));
    };
    if let Some(labels) = labels {
        arr = arr.with_labels(labels);
    }
    Ok(arr)
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement<Rational>> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("malformed JSON: {e}")))?;
    arrangement_from_value(&v)
}

/// Canonical JSON form: normalized equations (or sorted abstract points) and labels.
pub fn arrangement_to_value(arr: &Arrangement<Rational>) -> Value {
    match arr.geometry() {
        Geometry::Coordinate(lines) => json!({
            "labels": arr.labels(),
            "lines": lines.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "no_parallels": arr.no_parallels(),
        }),
        Geometry::Abstract(points) => {
            let mut sorted: Vec<Vec<usize>> = points
                .iter()
                .map(|p| {
                    let mut p = p.clone();
                    p.sort_unstable();
                    p
                })
                .collect();
            sorted.sort();
            json!({ "labels": arr.labels(), "n_lines": arr.n_lines(), "multiple_points": sorted })
        }
    }
}

pub fn serialize_arrangement(arr: &Arrangement<Rational>) -> String {
    serde_json::to_string_pretty(&arrangement_to_value(arr)).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational(" -2/6 ").unwrap(), q(-1, 3));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert_eq!(json_rational(&json!([3, -6])).unwrap(), q(-1, 2));
        assert!(json_rational(&json!(0.5)).is_err());
    }

    #[test]
    fn equations() {
        let l = parse_equation("x + y = 1").unwrap();
        assert_eq!(l, Line::new(q(1, 1), q(1, 1), q(1, 1)).unwrap());
        assert_eq!(parse_equation("y = 2x").unwrap(), Line::new(q(-2, 1), q(1, 1), q(0, 1)).unwrap());
        assert_eq!(parse_equation("y = x/2 + 1").unwrap(), Line::new(q(-1, 2), q(1, 1), q(1, 1)).unwrap());
        assert_eq!(parse_equation("y = -2*x + 2").unwrap(), Line::new(q(2, 1), q(1, 1), q(2, 1)).unwrap());
        assert_eq!(parse_equation("3x + 5y = 11").unwrap(), Line::new(q(3, 1), q(5, 1), q(11, 1)).unwrap());
        assert_eq!(parse_equation("0.5 x = 1").unwrap(), Line::new(q(1, 1), q(0, 1), q(2, 1)).unwrap());
        assert!(parse_equation("x y = 1").is_err());
        assert!(parse_equation("x + = 1").is_err());
        assert!(parse_equation("1 = 1").is_err());
        assert!(parse_equation("x = y = 1").is_err());
        assert!(parse_equation("x + z = 1").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x + y = 1", "y = 2x", "y = x/2 + 1", "x - 7/3 y = -1/2", "-x = 4", "y = 0"] {
            let l = parse_equation(s).unwrap();
            assert_eq!(parse_equation(&l.to_string()).unwrap(), l, "{s} -> {l}");
        }
    }

    #[test]
    fn line_forms_agree() {
        let text = r#"{"lines": ["x + y = 1", [1, 1, 1, 1, 1, 1], [1, 1, "1"], {"a": [2, 2], "b": "1", "c": 1}]}"#;
        let arr = parse_arrangement(text).unwrap();
        let lines = arr.lines().unwrap();
        assert!(lines.iter().all(|l| *l == lines[0]));
    }

    #[test]
    fn labels_and_abstract_form() {
        let arr = parse_arrangement(r#"{"lines": [{"equation": "x = 0", "label": "v"}, "y = 0"]}"#).unwrap();
        assert_eq!(arr.labels(), ["v", "L1"]);
        let arr = parse_arrangement(r#"{"n_lines": 4, "multiple_points": [[2, 0, 1]]}"#).unwrap();
        assert_eq!(arr.n_lines(), 4);
        let v = arrangement_to_value(&arr);
        assert_eq!(v["multiple_points"], json!([[0, 1, 2]]));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_arrangement("{").is_err());
        assert!(parse_arrangement("[]").is_err());
        assert!(parse_arrangement(r#"{"lines": [[1.5, 1, 0]]}"#).is_err());
        assert!(parse_arrangement(r#"{"lines": [[0, 0, 1]]}"#).is_err());
        assert!(parse_arrangement(r#"{"n_lines": -1}"#).is_err());
        assert!(parse_arrangement(r#"{"lines": ["x = 0"], "no_parallels": "yes"}"#).is_err());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let text = r#"{"lines": ["2y = 4x", "x + y = 1", [0, 3, -6]], "no_parallels": true}"#;
        let once = serialize_arrangement(&parse_arrangement(text).unwrap());
        let twice = serialize_arrangement(&parse_arrangement(&once).unwrap());
        assert_eq!(once, twice);
    }
}
