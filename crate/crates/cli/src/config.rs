//! Option layering: command line, then config file, then `PIBOUND_*`
//! environment variables, then built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};

/// A rejected input, named by its option.
#[derive(Debug)]
pub struct Invalid {
    pub field: String,
    pub reason: String,
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid {}: {}", self.field, self.reason)
    }
}

impl std::error::Error for Invalid {}

pub fn invalid(field: &str, reason: impl Into<String>) -> anyhow::Error {
    Invalid {
        field: field.to_string(),
        reason: reason.into(),
    }
    .into()
}

pub const KEYS: &[&str] = &[
    "format",
    "out",
    "threads",
    "prime_limit",
    "s",
    "mu",
    "eps",
    "c4",
    "terms",
    "x0",
    "safety",
    "cap",
    "trial_bound",
    "rho_iterations",
    "rho_attempts",
    "time_cap",
];

#[derive(Debug, Default, Clone)]
pub struct Layers {
    file: BTreeMap<String, String>,
    env: BTreeMap<String, String>,
}

impl Layers {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let file = match path {
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                parse_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let env = KEYS
            .iter()
            .filter_map(|k| {
                let var = format!("PIBOUND_{}", k.to_uppercase());
                std::env::var(var).ok().map(|v| (k.to_string(), v))
            })
            .collect();
        Ok(Layers { file, env })
    }

    fn raw(&self, key: &str) -> Option<(&str, String)> {
        if let Some(v) = self.file.get(key) {
            return Some((v.as_str(), "config file".to_string()));
        }
        self.env
            .get(key)
            .map(|v| (v.as_str(), format!("PIBOUND_{}", key.to_uppercase())))
    }

    /// `cli`, else the layered value for `key`.
    pub fn pick<T: FromStr>(&self, cli: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        if cli.is_some() {
            return Ok(cli);
        }
        match self.raw(key) {
            None => Ok(None),
            Some((text, origin)) => text
                .trim()
                .parse::<T>()
                .map(Some)
                .map_err(|e| invalid(key, format!("{text:?} from {origin}: {e}"))),
        }
    }
}

fn parse_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| invalid("config", format!("line {}: expected key=value", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(invalid("config", format!("line {}: unknown key {key:?}", i + 1)));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let m = parse_file("# defaults\nthreads = 4\nprime-limit=1000\n\n").unwrap();
        assert_eq!(m["threads"], "4");
        assert_eq!(m["prime_limit"], "1000");
        assert!(parse_file("bogus=1").is_err());
        assert!(parse_file("threads").is_err());
    }

    #[test]
    fn cli_beats_file() {
        let layers = Layers {
            file: parse_file("terms=50").unwrap(),
            env: BTreeMap::new(),
        };
        assert_eq!(layers.pick(Some(7u64), "terms").unwrap(), Some(7));
        assert_eq!(layers.pick(None::<u64>, "terms").unwrap(), Some(50));
        assert_eq!(layers.pick(None::<u64>, "x0").unwrap(), None);
    }

    #[test]
    fn file_beats_env() {
        let layers = Layers {
            file: parse_file("terms=50").unwrap(),
            env: [("terms".to_string(), "9".to_string()), ("x0".to_string(), "3".to_string())]
                .into_iter()
                .collect(),
        };
        assert_eq!(layers.pick(None::<u64>, "terms").unwrap(), Some(50));
        assert_eq!(layers.pick(None::<u64>, "x0").unwrap(), Some(3));
    }

    #[test]
    fn bad_values_name_the_key() {
        let layers = Layers {
            file: parse_file("terms=many").unwrap(),
            env: BTreeMap::new(),
        };
        let err = layers.pick(None::<u64>, "terms").unwrap_err();
        assert!(err.to_string().contains("invalid terms"));
    }
}
