//! Experiment parameters: string key/value maps with per-experiment
//! defaults, merged from (lowest to highest precedence) built-in defaults,
//! a TOML config file, and `--set key=value` flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Flat, deterministically ordered parameter map. Every value is kept in
/// its text form; runners parse what they need and reject what they can't.
pub type Params = BTreeMap<String, String>;

#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    Toml(String),
    BadOverride(String),
    UnknownKey { experiment: String, key: String, allowed: Vec<String> },
    MissingKeys { experiment: String, keys: Vec<String> },
    BadValue { key: String, value: String, reason: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "config i/o error: {e}"),
            ConfigError::Toml(e) => write!(f, "config parse error: {e}"),
            ConfigError::BadOverride(s) => {
                write!(f, "override `{s}` is not of the form key=value")
            }
            ConfigError::UnknownKey { experiment, key, allowed } => write!(
                f,
                "unknown parameter `{key}` for experiment `{experiment}` (allowed: {})",
                allowed.join(", ")
            ),
            ConfigError::MissingKeys { experiment, keys } => write!(
                f,
                "experiment `{experiment}` requires parameters: {}",
                keys.join(", ")
            ),
            ConfigError::BadValue { key, value, reason } => {
                write!(f, "parameter `{key}={value}`: {reason}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<std::io::Error> for ConfigError {
    fn from(e: std::io::Error) -> Self {
        ConfigError::Io(e)
    }
}

/// Parse one `key=value` flag.
pub fn parse_override(s: &str) -> Result<(String, String), ConfigError> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => {
            Ok((k.trim().to_string(), v.trim().to_string()))
        }
        _ => Err(ConfigError::BadOverride(s.to_string())),
    }
}

fn toml_value_to_string(v: &toml::Value) -> String {
    match v {
        toml::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Read a TOML config file. Top-level scalar keys apply to whatever
/// experiment is being run; a table named after an experiment id applies
/// only to that experiment and wins over the top level.
pub fn load_config_file(path: &Path, experiment: &str) -> Result<Params, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    let doc: toml::Value = text.parse().map_err(|e: toml::de::Error| {
        ConfigError::Toml(e.to_string())
    })?;
    let mut out = Params::new();
    if let toml::Value::Table(top) = &doc {
        for (k, v) in top {
            if !v.is_table() {
                out.insert(k.clone(), toml_value_to_string(v));
            }
        }
        if let Some(toml::Value::Table(section)) = top.get(experiment) {
            for (k, v) in section {
                out.insert(k.clone(), toml_value_to_string(v));
            }
        }
    }
    Ok(out)
}

/// Merge maps in increasing precedence order.
pub fn merge(layers: &[&Params]) -> Params {
    let mut out = Params::new();
    for layer in layers {
        for (k, v) in layer.iter() {
            out.insert(k.clone(), v.clone());
        }
    }
    out
}

// ---- typed accessors --------------------------------------------------

pub fn get_f64(p: &Params, key: &str) -> Result<f64, ConfigError> {
    let raw = p.get(key).ok_or_else(|| missing(key))?;
    raw.parse().map_err(|_| ConfigError::BadValue {
        key: key.into(),
        value: raw.clone(),
        reason: "expected a real number".into(),
    })
}

pub fn get_usize(p: &Params, key: &str) -> Result<usize, ConfigError> {
    let raw = p.get(key).ok_or_else(|| missing(key))?;
    raw.parse().map_err(|_| ConfigError::BadValue {
        key: key.into(),
        value: raw.clone(),
        reason: "expected a positive integer".into(),
    })
}

pub fn get_str<'p>(p: &'p Params, key: &str) -> Result<&'p str, ConfigError> {
    p.get(key).map(|s| s.as_str()).ok_or_else(|| missing(key))
}

/// Comma-separated list of reals, e.g. `0.2,0.4,0.6`.
pub fn get_f64_list(p: &Params, key: &str) -> Result<Vec<f64>, ConfigError> {
    split_list(p, key)?
        .iter()
        .map(|s| {
            s.parse().map_err(|_| ConfigError::BadValue {
                key: key.into(),
                value: s.to_string(),
                reason: "expected a real number".into(),
            })
        })
        .collect()
}

/// Comma-separated list of integers. Ranges like `224..232` expand
/// inclusively, so `200,224..232` is valid.
pub fn get_usize_list(p: &Params, key: &str) -> Result<Vec<usize>, ConfigError> {
    let mut out = Vec::new();
    for item in split_list(p, key)? {
        if let Some((a, b)) = item.split_once("..") {
            let lo: usize = parse_int(key, a)?;
            let hi: usize = parse_int(key, b)?;
            if hi < lo {
                return Err(ConfigError::BadValue {
                    key: key.into(),
                    value: item,
                    reason: "descending range".into(),
                });
            }
            out.extend(lo..=hi);
        } else {
            out.push(parse_int(key, &item)?);
        }
    }
    Ok(out)
}

/// Comma-separated list of strings; parenthesised arguments may themselves
/// contain commas, e.g. `h2,scaled-expm1-sq(c=100)`.
pub fn get_str_list(p: &Params, key: &str) -> Result<Vec<String>, ConfigError> {
    split_list(p, key)
}

fn split_list(p: &Params, key: &str) -> Result<Vec<String>, ConfigError> {
    let raw = p.get(key).ok_or_else(|| missing(key))?;
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in raw.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    if out.is_empty() {
        return Err(ConfigError::BadValue {
            key: key.into(),
            value: raw.clone(),
            reason: "empty list".into(),
        });
    }
    Ok(out)
}

fn parse_int(key: &str, s: &str) -> Result<usize, ConfigError> {
    s.trim().parse().map_err(|_| ConfigError::BadValue {
        key: key.into(),
        value: s.to_string(),
        reason: "expected a positive integer".into(),
    })
}

fn missing(key: &str) -> ConfigError {
    ConfigError::MissingKeys { experiment: String::new(), keys: vec![key.to_string()] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_parsing() {
        assert_eq!(parse_override("n=100").unwrap(), ("n".into(), "100".into()));
        assert_eq!(
            parse_override("psi-list = h2, sin2").unwrap(),
            ("psi-list".into(), "h2, sin2".into())
        );
        assert!(parse_override("=x").is_err());
        assert!(parse_override("novalue").is_err());
    }

    #[test]
    fn list_parsing_respects_parentheses() {
        let mut p = Params::new();
        p.insert("psi-list".into(), "h2,scaled-expm1-sq(c=100),sin2".into());
        assert_eq!(
            get_str_list(&p, "psi-list").unwrap(),
            vec!["h2", "scaled-expm1-sq(c=100)", "sin2"]
        );
    }

    #[test]
    fn integer_ranges_expand() {
        let mut p = Params::new();
        p.insert("m-list".into(), "200,224..227".into());
        assert_eq!(get_usize_list(&p, "m-list").unwrap(), vec![200, 224, 225, 226, 227]);
    }

    #[test]
    fn merge_precedence() {
        let mut a = Params::new();
        a.insert("n".into(), "10".into());
        a.insert("alpha".into(), "0.5".into());
        let mut b = Params::new();
        b.insert("n".into(), "20".into());
        let merged = merge(&[&a, &b]);
        assert_eq!(merged["n"], "20");
        assert_eq!(merged["alpha"], "0.5");
    }
}
