//! Flag value types and the `key=value` config file.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::{ArgAction, CommandFactory};
use serde::{Serialize, Serializer};

use crate::Cli;

/// Comma-separated integers where each item is `a` or an inclusive range `a..b`.
/// Serializes as the text it was parsed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<usize>, String);

impl IntList {
    pub fn text(&self) -> &str {
        &self.1
    }
}

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item.split_once("..") {
                Some((a, b)) => {
                    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {item:?}"))?;
                    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end in {item:?}"))?;
                    if a > b {
                        return Err(format!("empty range {item:?}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(item.parse().map_err(|_| format!("not an integer: {item:?}"))?),
            }
        }
        if out.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(out, s.trim().to_string()))
    }
}

impl Serialize for IntList {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.1)
    }
}

/// Comma-separated values of any parseable type.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let items = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<T>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if items.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(items))
    }
}

impl<T: Serialize> Serialize for List<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Error-magnitude bound: a number, or `q/6` for `max(1, ⌊q/6⌋)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaRule {
    Fixed(u64),
    SixthOfQ,
}

impl EtaRule {
    pub fn resolve(self, q: usize) -> u64 {
        match self {
            Self::Fixed(e) => e,
            Self::SixthOfQ => (q as u64 / 6).max(1),
        }
    }
}

impl FromStr for EtaRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "q/6" {
            return Ok(Self::SixthOfQ);
        }
        s.parse().map(Self::Fixed).map_err(|_| format!("expected an integer or q/6, got {s:?}"))
    }
}

impl fmt::Display for EtaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fixed(e) => write!(f, "{e}"),
            Self::SixthOfQ => f.write_str("q/6"),
        }
    }
}

impl Serialize for EtaRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Turns `key=value` lines into flags for `subcommand`. Blank lines and lines
/// starting with `#` are skipped; keys may use `_` or `-`.
pub fn config_flags(path: &Path, subcommand: &str) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let cmd = Cli::command();
    let sub = cmd.find_subcommand(subcommand).ok_or_else(|| format!("unknown subcommand {subcommand:?}"))?;
    let mut flags = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
        let key = key.trim().trim_start_matches('-').replace('_', "-");
        let value = value.trim();
        if key == "config" {
            return Err(format!("{}:{}: config files cannot nest", path.display(), lineno + 1));
        }
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| format!("{}:{}: unknown key {key:?} for {subcommand}", path.display(), lineno + 1))?;
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value {
                "true" | "1" | "yes" => flags.push(format!("--{key}")),
                "false" | "0" | "no" => {}
                _ => return Err(format!("{}:{}: {key} expects true or false", path.display(), lineno + 1)),
            }
        } else {
            flags.push(format!("--{key}"));
            flags.push(value.to_string());
        }
    }
    Ok(flags)
}

/// Splices config-file flags in right after the subcommand name so that
/// explicit flags, which come later, take precedence.
pub fn expand_argv(argv: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let Some(pos) = argv.iter().skip(1).position(|a| !a.starts_with('-')).map(|p| p + 1) else {
        return Ok(argv);
    };
    let flags = config_flags(Path::new(&path), &argv[pos])?;
    let mut out = argv[..=pos].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[pos + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_lists_and_ranges() {
        assert_eq!("2..5".parse::<IntList>().unwrap().0, vec![2, 3, 4, 5]);
        assert_eq!("1,4, 16,64".parse::<IntList>().unwrap().0, vec![1, 4, 16, 64]);
        assert_eq!("1..2,7".parse::<IntList>().unwrap().0, vec![1, 2, 7]);
        assert_eq!("3..=4".parse::<IntList>().unwrap().0, vec![3, 4]);
        assert!("5..2".parse::<IntList>().is_err());
        assert!("x".parse::<IntList>().is_err());
        assert!("".parse::<IntList>().is_err());
    }

    #[test]
    fn float_lists_and_eta_rules() {
        assert_eq!("0,0.25".parse::<List<f64>>().unwrap().0, vec![0.0, 0.25]);
        assert_eq!("1,q/6".parse::<List<EtaRule>>().unwrap().0, vec![EtaRule::Fixed(1), EtaRule::SixthOfQ]);
        assert_eq!(EtaRule::SixthOfQ.resolve(5), 1);
        assert_eq!(EtaRule::SixthOfQ.resolve(13), 2);
    }
}
