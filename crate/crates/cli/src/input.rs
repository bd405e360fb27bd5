//! Signal CSV files and `key = value` parameter files.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use lpkit::Signal;

use crate::error::{CliError, Result};

/// One finite decimal per line; an optional first line `value`; blank lines ignored.
pub fn parse_signal(text: &str) -> Result<Signal> {
    let mut samples = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let first = !seen_content;
        seen_content = true;
        if first && line == "value" {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| CliError::data(format!("line {}: not a number: {line:?}", i + 1)))?;
        if !v.is_finite() {
            return Err(CliError::data(format!(
                "line {}: value is not finite",
                i + 1
            )));
        }
        samples.push(v);
    }
    if samples.is_empty() {
        return Err(CliError::data("signal file contains no samples"));
    }
    Ok(Signal::new(samples)?)
}

/// Shortest round-trip decimal per line, newline terminated.
pub fn format_signal(samples: &[f64]) -> String {
    let mut out = String::new();
    for v in samples {
        out.push_str(&format_number(*v));
        out.push('\n');
    }
    out
}

/// Shortest round-trip decimal; exponent form outside `[1e-5, 1e16)`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        // no "-0"
        "0".to_string()
    } else if (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// A parsed `key = value` file. Keys remember their line for error messages.
#[derive(Debug, Default)]
pub struct KeyValues {
    entries: BTreeMap<String, (usize, String)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::data(format!("line {line_no}: expected `key = value`")))?;
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(CliError::data(format!("line {line_no}: empty key")));
            }
            if entries
                .insert(key.clone(), (line_no, value.trim().to_string()))
                .is_some()
            {
                return Err(CliError::data(format!(
                    "line {line_no}: duplicate key `{key}`"
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Rejects keys outside `allowed`.
    pub fn restrict(&self, allowed: &[&str]) -> Result<()> {
        for (key, (line, _)) in &self.entries {
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::data(format!(
                    "line {line}: unknown key `{key}` (expected one of {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Line on which `key` was set.
    pub fn line(&self, key: &str) -> Option<usize> {
        self.entries.get(key).map(|(l, _)| *l)
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn raw(&self, key: &str) -> Result<(usize, &str)> {
        self.entries
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| CliError::data(format!("missing key `{key}`")))
    }

    pub fn string(&self, key: &str) -> Result<String> {
        Ok(self.raw(key)?.1.to_string())
    }

    pub fn numbers(&self, key: &str) -> Result<Vec<f64>> {
        let (line, v) = self.raw(key)?;
        split_list(v)
            .map(|item| parse_number(item).map_err(|e| at(line, e)))
            .collect()
    }

    pub fn integer(&self, key: &str) -> Result<usize> {
        let list = self.integers(key)?;
        match list.as_slice() {
            [one] => Ok(*one),
            _ => Err(at(
                self.raw(key)?.0,
                format!("`{key}` must be a single integer"),
            )),
        }
    }

    /// Comma-separated integers; `a..b` expands to the inclusive range.
    pub fn integers(&self, key: &str) -> Result<Vec<usize>> {
        let (line, v) = self.raw(key)?;
        let mut out = Vec::new();
        for item in split_list(v) {
            if let Some((a, b)) = item.split_once("..") {
                let a = parse_integer(a).map_err(|e| at(line, e))?;
                let b = parse_integer(b).map_err(|e| at(line, e))?;
                if a > b {
                    return Err(at(line, format!("empty range {item}")));
                }
                out.extend(a..=b);
            } else {
                out.push(parse_integer(item).map_err(|e| at(line, e))?);
            }
        }
        if out.is_empty() {
            return Err(at(line, format!("`{key}` is empty")));
        }
        Ok(out)
    }

    /// Parenthesized tuples: `(1, 0, 0), (1, pi/2, 0)`.
    pub fn tuples(&self, key: &str) -> Result<Vec<Vec<f64>>> {
        let (line, v) = self.raw(key)?;
        let mut out = Vec::new();
        let mut rest = v.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| at(line, format!("expected `(` in {v:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| at(line, format!("unclosed `(` in {v:?}")))?;
            let items = split_list(&open[..close])
                .map(|item| parse_number(item).map_err(|e| at(line, e)))
                .collect::<Result<Vec<_>>>()?;
            out.push(items);
            rest = open[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            }
        }
        Ok(out)
    }
}

fn at(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::data(format!("line {line}: {msg}"))
}

fn split_list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_integer(s: &str) -> std::result::Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("not a non-negative integer: {s:?}"))
}

/// A decimal, or a multiple of π written `pi`, `2pi`, `3*pi/4`, `-pi/2`.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let v = match s.find("pi") {
        None => s
            .parse::<f64>()
            .map_err(|_| format!("not a number: {s:?}"))?,
        Some(pos) => {
            let head = s[..pos].trim().trim_end_matches('*').trim();
            let tail = s[pos + 2..].trim();
            let factor = match head {
                "" | "+" => 1.0,
                "-" => -1.0,
                h => h
                    .parse::<f64>()
                    .map_err(|_| format!("bad multiple of pi: {s:?}"))?,
            };
            let divisor = match tail {
                "" => 1.0,
                t => t
                    .strip_prefix('/')
                    .and_then(|d| d.trim().parse::<f64>().ok())
                    .ok_or_else(|| format!("bad divisor of pi: {s:?}"))?,
            };
            factor * PI / divisor
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}
