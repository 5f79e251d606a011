//! Experiment reports: structured record, text rendering, CSV table, file
//! naming.
//!
//! The CSV header is fixed: `experiment,metric,x,series,value`. The `x`
//! column carries the grid size for refinement series, the shell index for
//! moment curves, and is empty for scalars. Identical configurations produce
//! byte-identical tables (runtime is report-only).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::util::fnv1a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// max ratio drifts by less than the drift threshold across the ladder
    Bounded,
    /// max ratio grows by at least the growth threshold across the ladder
    UnboundedTrend,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Bounded => f.write_str("BOUNDED"),
            Verdict::UnboundedTrend => f.write_str("UNBOUNDED-TREND"),
            Verdict::Inconclusive => f.write_str("INCONCLUSIVE"),
        }
    }
}

/// One measured curve or scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTrace {
    pub name: String,
    pub metric: String,
    /// abscissae (grid sizes, shell indices, ...); empty for scalars
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// max/min - 1 across the values (refinement series only)
    pub drift: Option<f64>,
    /// last/first across the values (refinement series only)
    pub growth: Option<f64>,
    /// fitted slope of log2(value) against log2(x)
    pub log_slope: Option<f64>,
    pub verdict: Option<Verdict>,
}

impl SeriesTrace {
    pub fn scalar(name: impl Into<String>, metric: impl Into<String>, value: f64) -> SeriesTrace {
        SeriesTrace {
            name: name.into(),
            metric: metric.into(),
            xs: Vec::new(),
            values: vec![value],
            drift: None,
            growth: None,
            log_slope: None,
            verdict: None,
        }
    }

    pub fn curve(
        name: impl Into<String>,
        metric: impl Into<String>,
        xs: Vec<f64>,
        values: Vec<f64>,
    ) -> SeriesTrace {
        SeriesTrace {
            name: name.into(),
            metric: metric.into(),
            xs,
            values,
            drift: None,
            growth: None,
            log_slope: None,
            verdict: None,
        }
    }

    /// Attach drift/growth statistics, the refinement slope, and the trend
    /// verdict.
    pub fn with_trend(mut self) -> SeriesTrace {
        let (drift, growth, verdict) = trend_stats(&self.values);
        self.drift = Some(drift);
        self.growth = Some(growth);
        if self.xs.len() == self.values.len() && self.xs.len() >= 2 {
            let lx: Vec<f64> = self.xs.iter().map(|x| x.max(1e-300).log2()).collect();
            let ly: Vec<f64> = self.values.iter().map(|v| v.max(1e-300).log2()).collect();
            self.log_slope = Some(crate::util::linear_fit(&lx, &ly).0);
        }
        self.verdict = Some(verdict);
        self
    }
}

/// (drift, growth, verdict) of a refinement series.
pub fn trend_stats(values: &[f64]) -> (f64, f64, Verdict) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let drift = if lo > 0.0 {
        hi / lo - 1.0
    } else {
        f64::INFINITY
    };
    let growth = if values.first().copied().unwrap_or(0.0) > 0.0 {
        values.last().unwrap() / values.first().unwrap()
    } else {
        f64::INFINITY
    };
    let verdict = if growth >= crate::tolerances::GROWTH_THRESHOLD {
        Verdict::UnboundedTrend
    } else if drift < crate::tolerances::DRIFT_THRESHOLD {
        Verdict::Bounded
    } else {
        Verdict::Inconclusive
    };
    (drift, growth, verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    /// full effective configuration, defaults included
    pub resolved_config: BTreeMap<String, String>,
    /// every numeric gate that produced a verdict in this run
    pub thresholds: BTreeMap<String, f64>,
    pub ladder: Vec<usize>,
    pub series: Vec<SeriesTrace>,
    pub notes: Vec<String>,
    pub excluded_points: usize,
    pub pass: bool,
    pub failures: Vec<String>,
    pub runtime_ms: u64,
}

impl ExperimentReport {
    pub fn config_hash(&self) -> u64 {
        let mut buf = self.experiment.clone();
        for (k, v) in &self.resolved_config {
            buf.push_str(k);
            buf.push('=');
            buf.push_str(v);
            buf.push('\n');
        }
        fnv1a(buf.as_bytes())
    }

    pub fn file_stem(&self) -> String {
        format!("{}_{:016x}", self.experiment, self.config_hash())
    }

    pub fn series_named(&self, name: &str) -> Option<&SeriesTrace> {
        self.series.iter().find(|s| s.name == name)
    }

    /// Fixed-header CSV table; deterministic for a given config.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("experiment,metric,x,series,value\n");
        for s in &self.series {
            for (i, v) in s.values.iter().enumerate() {
                let x = s.xs.get(i).map(|x| format!("{x}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.12e}",
                    self.experiment, s.metric, x, s.name, v
                );
            }
            if let (Some(d), Some(g)) = (s.drift, s.growth) {
                let _ = writeln!(out, "{},drift,,{},{:.12e}", self.experiment, s.name, d);
                let _ = writeln!(out, "{},growth,,{},{:.12e}", self.experiment, s.name, g);
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "experiment {}: {}",
            self.experiment,
            if self.pass { "PASS" } else { "FAIL" }
        );
        let _ = writeln!(out, "ladder: {:?}", self.ladder);
        let _ = writeln!(out, "excluded ratio points: {}", self.excluded_points);
        let _ = writeln!(out, "runtime: {} ms", self.runtime_ms);
        let _ = writeln!(out, "\n[config]");
        for (k, v) in &self.resolved_config {
            let _ = writeln!(out, "{k} = {v}");
        }
        let _ = writeln!(out, "\n[thresholds]");
        for (k, v) in &self.thresholds {
            let _ = writeln!(out, "{k} = {v}");
        }
        let _ = writeln!(out, "\n[series]");
        for s in &self.series {
            let vals: Vec<String> = s.values.iter().map(|v| format!("{v:.6e}")).collect();
            let _ = write!(out, "{} [{}]: {}", s.name, s.metric, vals.join(", "));
            if let (Some(d), Some(g), Some(v)) = (s.drift, s.growth, s.verdict) {
                let _ = write!(out, "  drift={d:.3} growth={g:.3} verdict={v}");
                if let Some(sl) = s.log_slope {
                    let _ = write!(out, " slope={sl:.3}");
                }
            }
            let _ = writeln!(out);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\n[notes]");
            for n in &self.notes {
                let _ = writeln!(out, "- {n}");
            }
        }
        if !self.failures.is_empty() {
            let _ = writeln!(out, "\n[failures]");
            for f in &self.failures {
                let _ = writeln!(out, "- {f}");
            }
        }
        out
    }

    /// Write report text, JSON, CSV table, and the SVG plot; returns paths.
    pub fn write_outputs(&self, out_dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(out_dir)?;
        let stem = self.file_stem();
        let mut paths = Vec::new();
        let txt = out_dir.join(format!("{stem}.report.txt"));
        std::fs::write(&txt, self.to_text())?;
        paths.push(txt);
        let json = out_dir.join(format!("{stem}.report.json"));
        std::fs::write(&json, self.to_json()?)?;
        paths.push(json);
        let csv = out_dir.join(format!("{stem}.table.csv"));
        std::fs::write(&csv, self.to_csv())?;
        paths.push(csv);
        let svg = out_dir.join(format!("{stem}.plot.svg"));
        std::fs::write(&svg, super::plot::render_report(self))?;
        paths.push(svg);
        Ok(paths)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> ExperimentReport {
        let mut cfg = BTreeMap::new();
        cfg.insert("rho".into(), "0.5".into());
        let mut thresholds = BTreeMap::new();
        thresholds.insert("drift".into(), 0.25);
        ExperimentReport {
            experiment: "e1".into(),
            resolved_config: cfg,
            thresholds,
            ladder: vec![64, 128],
            series: vec![
                SeriesTrace::curve("core_max", "ratio", vec![64.0, 128.0], vec![1.0, 1.1])
                    .with_trend(),
                SeriesTrace::scalar("slope", "slope", 0.5),
            ],
            notes: vec!["note".into()],
            excluded_points: 3,
            pass: true,
            failures: vec![],
            runtime_ms: 12,
        }
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let r = sample_report();
        let json = r.to_json().unwrap();
        let back: ExperimentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn csv_is_deterministic_and_headed() {
        let r = sample_report();
        let a = r.to_csv();
        let b = sample_report().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("experiment,metric,x,series,value\n"));
        assert!(a.contains("e1,ratio,64,core_max,"));
    }

    #[test]
    fn file_stem_tracks_config() {
        let a = sample_report();
        let mut b = sample_report();
        assert_eq!(a.file_stem(), b.file_stem());
        b.resolved_config.insert("rho".into(), "0.0".into());
        assert_ne!(a.file_stem(), b.file_stem());
    }

    #[test]
    fn trend_verdicts() {
        let (_, _, v) = trend_stats(&[1.0, 1.05, 1.1]);
        assert_eq!(v, Verdict::Bounded);
        let (_, _, v) = trend_stats(&[1.0, 1.3, 1.6]);
        assert_eq!(v, Verdict::UnboundedTrend);
        let (_, _, v) = trend_stats(&[1.0, 1.4, 1.3]);
        assert_eq!(v, Verdict::Inconclusive);
    }
}
