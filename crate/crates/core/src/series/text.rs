//! Line-oriented text form and structured JSON form of [`LogSeries`].
//!
//! Text: one term per line,
//! `coeff_re coeff_im ; var exp_re/exp_den exp_im/exp_den logpow ; ...`,
//! in canonical key order.

use serde_json::{json, Value};

use super::{LogMonomial, LogSeries, MonoKey, Var};
use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, Q};

fn frac(q: &Q) -> String {
    let (n, d) = q.numer_denom_string();
    format!("{n}/{d}")
}

pub fn to_text(s: &LogSeries) -> String {
    let mut out = String::new();
    for (k, c) in s.terms() {
        out.push_str(&format!("{} {}", c.re, c.im));
        for m in &k.0 {
            out.push_str(&format!(" ; {} {} {} {}", m.var, frac(&m.exponent.re), frac(&m.exponent.im), m.logpower));
        }
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<LogSeries> {
    let mut terms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        let mut parts = line.split(';');
        let coeff: Vec<&str> = parts.next().unwrap_or("").split_whitespace().collect();
        if coeff.len() != 2 {
            return Err(bad("expected `re im` coefficient"));
        }
        let c = ExactComplex::new(coeff[0].parse()?, coeff[1].parse()?);
        let mut monos = Vec::new();
        for part in parts {
            let f: Vec<&str> = part.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad("expected `var exp_re exp_im logpow`"));
            }
            monos.push(LogMonomial {
                var: Var::from_name(f[0])?,
                exponent: ExactComplex::new(f[1].parse()?, f[2].parse()?),
                logpower: f[3].parse().map_err(|_| bad("bad log power"))?,
            });
        }
        let mut sorted = monos.clone();
        sorted.sort_by_key(|m| m.var);
        sorted.dedup_by_key(|m| m.var);
        if sorted.len() != monos.len() {
            return Err(bad("variable repeated in one term"));
        }
        terms.push((MonoKey(sorted), c));
    }
    Ok(LogSeries::from_terms(terms, None))
}

fn q_json(q: &Q) -> (Value, Value) {
    match q.numer_denom_i64() {
        Some((n, d)) => (json!(n), json!(d)),
        None => {
            let (n, d) = q.numer_denom_string();
            (json!(n), json!(d))
        }
    }
}

fn json_q(num: &Value, den: &Value) -> Result<Q> {
    let s = |v: &Value| -> Result<String> {
        match v {
            Value::Number(n) => Ok(n.to_string()),
            Value::String(s) => Ok(s.clone()),
            _ => Err(Error::Parse(format!("expected integer, got {v}"))),
        }
    };
    format!("{}/{}", s(num)?, s(den)?).parse()
}

pub fn exact_to_json(c: &ExactComplex) -> Value {
    json!([c.re.to_string(), c.im.to_string()])
}

pub fn exponent_to_json(e: &ExactComplex) -> Value {
    let (a, b) = q_json(&e.re);
    let (c, d) = q_json(&e.im);
    json!([a, b, c, d])
}

pub fn exponent_from_json(v: &Value) -> Result<ExactComplex> {
    let a = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| Error::Parse("exponent must be [num,den,inum,iden]".into()))?;
    Ok(ExactComplex::new(json_q(&a[0], &a[1])?, json_q(&a[2], &a[3])?))
}

pub fn exact_from_json(v: &Value) -> Result<ExactComplex> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse("coefficient must be [re, im]".into()))?;
    let part = |v: &Value| -> Result<Q> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => n.to_string().parse(),
            _ => Err(Error::Parse(format!("bad rational {v}"))),
        }
    };
    Ok(ExactComplex::new(part(&a[0])?, part(&a[1])?))
}

pub fn to_json(s: &LogSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(k, c)| {
            let mono: Vec<Value> = k
                .0
                .iter()
                .map(|m| json!({"v": m.var.name(), "e": exponent_to_json(&m.exponent), "k": m.logpower}))
                .collect();
            json!({"c": exact_to_json(c), "mono": mono})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn from_json(v: &Value) -> Result<LogSeries> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `terms` array".into()))?;
    let mut out = Vec::new();
    for t in terms {
        let c = exact_from_json(t.get("c").ok_or_else(|| Error::Parse("term without `c`".into()))?)?;
        let mut monos = Vec::new();
        for m in t.get("mono").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let var = Var::from_name(m.get("v").and_then(Value::as_str).ok_or_else(|| Error::Parse("mono without `v`".into()))?)?;
            let exponent = exponent_from_json(m.get("e").ok_or_else(|| Error::Parse("mono without `e`".into()))?)?;
            let logpower = m.get("k").and_then(Value::as_u64).unwrap_or(0) as u32;
            monos.push(LogMonomial { var, exponent, logpower });
        }
        monos.sort_by_key(|m| m.var);
        out.push((MonoKey(monos), c));
    }
    Ok(LogSeries::from_terms(out, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_round_trip() {
        let s = &LogSeries::monomial(Var::X, ExactComplex::rat(1, 2), 2).scale(&ExactComplex::new(Q::new(3, 4), Q::from_int(-1)))
            + &LogSeries::power(Var::X1, ExactComplex::int(-3));
        let t = to_text(&s);
        assert_eq!(from_text(&t).unwrap(), s);
        assert_eq!(from_json(&to_json(&s)).unwrap(), s);
        assert!(t.contains("x 1/2 0/1 2"));
    }
}
