//! Flat key=value configuration with one section per experiment.
//!
//! A `[common]` section supplies defaults that every experiment section can
//! override. Every key can also be overridden from the command line with
//! `--set section.key=value`. Parse errors carry the offending line number.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExperimentId {
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl ExperimentId {
    pub fn all() -> [ExperimentId; 5] {
        [
            ExperimentId::E1,
            ExperimentId::E2,
            ExperimentId::E3,
            ExperimentId::E4,
            ExperimentId::E5,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentId::E1 => "e1",
            ExperimentId::E2 => "e2",
            ExperimentId::E3 => "e3",
            ExperimentId::E4 => "e4",
            ExperimentId::E5 => "e5",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e1" => Ok(ExperimentId::E1),
            "e2" => Ok(ExperimentId::E2),
            "e3" => Ok(ExperimentId::E3),
            "e4" => Ok(ExperimentId::E4),
            "e5" => Ok(ExperimentId::E5),
            other => Err(Error::InvalidParameter(format!(
                "unknown experiment '{other}' (expected e1..e5)"
            ))),
        }
    }
}

type Section = BTreeMap<String, (usize, String)>;

/// Parsed but untyped configuration.
#[derive(Debug, Clone, Default)]
pub struct HarnessConfig {
    sections: BTreeMap<String, Section>,
}

impl HarnessConfig {
    pub fn parse(text: &str) -> Result<HarnessConfig> {
        let mut sections: BTreeMap<String, Section> = BTreeMap::new();
        let mut current = "common".to_string();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(stripped) = line.strip_prefix('[') {
                let name = stripped
                    .strip_suffix(']')
                    .ok_or_else(|| Error::config(line_no, "unterminated section header"))?
                    .trim()
                    .to_ascii_lowercase();
                if name.is_empty() {
                    return Err(Error::config(line_no, "empty section name"));
                }
                current = name;
                sections.entry(current.clone()).or_default();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(line_no, format!("expected key = value, got '{line}'"))
            })?;
            let key = key.trim().to_ascii_lowercase();
            if key.is_empty() {
                return Err(Error::config(line_no, "empty key"));
            }
            sections
                .entry(current.clone())
                .or_default()
                .insert(key, (line_no, value.trim().to_string()));
        }
        Ok(HarnessConfig { sections })
    }

    pub fn from_file(path: &std::path::Path) -> Result<HarnessConfig> {
        let text = std::fs::read_to_string(path)?;
        HarnessConfig::parse(&text)
    }

    /// Apply a `section.key=value` override (line number 0 marks CLI origin).
    pub fn set_override(&mut self, spec: &str) -> Result<()> {
        let (path, value) = spec.split_once('=').ok_or_else(|| {
            Error::config(0, format!("--set expects section.key=value, got '{spec}'"))
        })?;
        let (section, key) = path.split_once('.').ok_or_else(|| {
            Error::config(0, format!("--set expects section.key=value, got '{spec}'"))
        })?;
        self.sections
            .entry(section.trim().to_ascii_lowercase())
            .or_default()
            .insert(
                key.trim().to_ascii_lowercase(),
                (0, value.trim().to_string()),
            );
        Ok(())
    }

    /// Effective key set for one experiment: `[common]` overridden by the
    /// experiment's own section.
    pub fn scope(&self, id: ExperimentId) -> Scope {
        let mut merged: Section = self.sections.get("common").cloned().unwrap_or_default();
        let own_keys = self
            .sections
            .get(id.as_str())
            .map(|own| own.keys().cloned().collect())
            .unwrap_or_default();
        if let Some(own) = self.sections.get(id.as_str()) {
            for (k, v) in own {
                merged.insert(k.clone(), v.clone());
            }
        }
        Scope {
            id,
            merged,
            own_keys,
            resolved: BTreeMap::new(),
            consumed: Vec::new(),
        }
    }
}

/// Typed accessor over a merged section. Records every key it resolves
/// (explicit or default) so reports can echo the full effective config, and
/// flags unknown keys afterwards.
#[derive(Debug, Clone)]
pub struct Scope {
    id: ExperimentId,
    merged: Section,
    /// keys declared in the experiment's own section (typo-checked; unused
    /// `[common]` keys are fine since other experiments may consume them)
    own_keys: Vec<String>,
    resolved: BTreeMap<String, String>,
    consumed: Vec<String>,
}

impl Scope {
    fn raw(&mut self, key: &str) -> Option<(usize, String)> {
        self.consumed.push(key.to_string());
        self.merged.get(key).cloned()
    }

    pub fn f64(&mut self, key: &str, default: f64) -> Result<f64> {
        let out = match self.raw(key) {
            None => default,
            Some((line, v)) => v.parse::<f64>().map_err(|_| {
                Error::config(line, format!("key '{key}': expected a number, got '{v}'"))
            })?,
        };
        self.resolved.insert(key.into(), format_float(out));
        Ok(out)
    }

    pub fn u64(&mut self, key: &str, default: u64) -> Result<u64> {
        let out = match self.raw(key) {
            None => default,
            Some((line, v)) => v.parse::<u64>().map_err(|_| {
                Error::config(line, format!("key '{key}': expected an integer, got '{v}'"))
            })?,
        };
        self.resolved.insert(key.into(), out.to_string());
        Ok(out)
    }

    pub fn usize(&mut self, key: &str, default: usize) -> Result<usize> {
        Ok(self.u64(key, default as u64)? as usize)
    }

    pub fn string(&mut self, key: &str, default: &str) -> Result<String> {
        let out = match self.raw(key) {
            None => default.to_string(),
            Some((_, v)) => v,
        };
        self.resolved.insert(key.into(), out.clone());
        Ok(out)
    }

    pub fn usize_list(&mut self, key: &str, default: &[usize]) -> Result<Vec<usize>> {
        let out = match self.raw(key) {
            None => default.to_vec(),
            Some((line, v)) => v
                .split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| {
                        Error::config(line, format!("key '{key}': expected integers, got '{s}'"))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        self.resolved.insert(
            key.into(),
            out.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        Ok(out)
    }

    pub fn string_list(&mut self, key: &str, default: &[&str]) -> Result<Vec<String>> {
        let out: Vec<String> = match self.raw(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some((_, v)) => v
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        };
        self.resolved.insert(key.into(), out.join(","));
        Ok(out)
    }

    /// Must be called once all keys are read; rejects anything left over so
    /// typos fail loudly with their line number.
    pub fn finish(self) -> Result<BTreeMap<String, String>> {
        for key in &self.own_keys {
            if !self.consumed.iter().any(|c| c == key) {
                let line = self.merged.get(key).map(|(l, _)| *l).unwrap_or(0);
                return Err(Error::config(
                    line,
                    format!("unknown key '{key}' for experiment {}", self.id),
                ));
            }
        }
        Ok(self.resolved)
    }
}

fn format_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}
