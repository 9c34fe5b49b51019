//! Run configuration: a flat `key = value` file with dotted keys.
//!
//! ```text
//! # comment
//! window = 0:100
//! energy = 0.9999
//! trial.counts = 40,80
//! trial.overlaps = 0.5
//! test.counts = 160
//! ```
//!
//! Unknown keys, repeated keys and malformed values are rejected.

use std::path::PathBuf;

use crate::basis::{BasisLayout, OverlapMode};
use crate::error::{Error, Result};
use crate::types::{TimeGrid, Window};
use crate::wdmd::{EnergyCriterion, FitOptions, ForecastSpace};

/// Basis parameters before the window is known.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutParams {
    /// `None` picks a size from the sample count.
    pub counts: Option<Vec<usize>>,
    /// One value per tier, or a single value broadcast to every tier.
    pub overlaps: Option<Vec<f64>>,
    pub p: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForecastParams {
    pub dt: Option<f64>,
    pub steps: usize,
    pub space: ForecastSpace,
}

impl Default for ForecastParams {
    fn default() -> Self {
        Self {
            dt: None,
            steps: 100,
            space: ForecastSpace::Reduced,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `None` uses the full time range of the data.
    pub window: Option<Window>,
    pub trial: LayoutParams,
    pub test: LayoutParams,
    pub energy: f64,
    pub criterion: EnergyCriterion,
    pub overlap_mode: OverlapMode,
    pub rcond: f64,
    pub forecast: ForecastParams,
    pub seed: u64,
    pub output_dir: PathBuf,
}

pub const DEFAULT_P: u32 = 2;
pub const DEFAULT_OVERLAP: f64 = 1.5;
pub const DEFAULT_MIN_TRIAL: usize = 8;
pub const DEFAULT_MAX_TRIAL: usize = 400;

impl Default for RunConfig {
    fn default() -> Self {
        let fit = FitOptions::default();
        Self {
            window: None,
            trial: LayoutParams::default(),
            test: LayoutParams::default(),
            energy: fit.energy,
            criterion: fit.criterion,
            overlap_mode: OverlapMode::default(),
            rcond: fit.rcond,
            forecast: ForecastParams::default(),
            seed: 0,
            output_dir: PathBuf::from("."),
        }
    }
}

fn config_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

pub fn parse_window(text: &str) -> Result<Window> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("window must look like T1:T2, got {text:?}")))?;
    let a: f64 = parse_scalar(a)?;
    let b: f64 = parse_scalar(b)?;
    Window::new(a, b)
}

pub fn parse_scalar<T: std::str::FromStr>(text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse {:?}", text.trim())))
}

pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    let items: Vec<T> = text
        .split(',')
        .map(|s| parse_scalar(s))
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::Config("empty list".into()));
    }
    Ok(items)
}

fn parse_criterion(text: &str) -> Result<EnergyCriterion> {
    match text.trim() {
        "sum" => Ok(EnergyCriterion::Sum),
        "sum-of-squares" | "squares" => Ok(EnergyCriterion::SumOfSquares),
        other => Err(Error::Config(format!("unknown energy criterion {other:?}"))),
    }
}

fn parse_overlap_mode(text: &str) -> Result<OverlapMode> {
    match text.trim() {
        "spacing" => Ok(OverlapMode::Spacing),
        "support" => Ok(OverlapMode::Support),
        other => Err(Error::Config(format!("unknown overlap mode {other:?}"))),
    }
}

pub fn parse_space(text: &str) -> Result<ForecastSpace> {
    match text.trim() {
        "reduced" => Ok(ForecastSpace::Reduced),
        "full" => Ok(ForecastSpace::Full),
        other => Err(Error::Config(format!("unknown forecast space {other:?}"))),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = std::collections::HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(line_no, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(config_err(line_no, format!("duplicate key {key:?}")));
            }
            cfg.set(key, value).map_err(|e| match e {
                Error::Config(msg) => config_err(line_no, format!("{key}: {msg}")),
                other => config_err(line_no, format!("{key}: {other}")),
            })?;
        }
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "window" => self.window = Some(parse_window(value)?),
            "energy" => self.energy = parse_scalar(value)?,
            "energy.criterion" => self.criterion = parse_criterion(value)?,
            "overlap.mode" => self.overlap_mode = parse_overlap_mode(value)?,
            "rcond" => self.rcond = parse_scalar(value)?,
            "trial.counts" => self.trial.counts = Some(parse_list(value)?),
            "trial.overlaps" => self.trial.overlaps = Some(parse_list(value)?),
            "trial.p" => self.trial.p = Some(parse_scalar(value)?),
            "test.counts" => self.test.counts = Some(parse_list(value)?),
            "test.overlaps" => self.test.overlaps = Some(parse_list(value)?),
            "test.p" => self.test.p = Some(parse_scalar(value)?),
            "forecast.dt" => self.forecast.dt = Some(parse_scalar(value)?),
            "forecast.steps" => self.forecast.steps = parse_scalar(value)?,
            "forecast.space" => self.forecast.space = parse_space(value)?,
            "seed" => self.seed = parse_scalar(value)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn fit_options(&self) -> FitOptions {
        FitOptions {
            energy: self.energy,
            criterion: self.criterion,
            rcond: self.rcond,
        }
    }

    pub fn window_for(&self, grid: &TimeGrid) -> Window {
        self.window.unwrap_or_else(|| Window::covering(grid))
    }

    /// Trial count when none is configured: a fifth of the samples in the
    /// window, clamped to `[DEFAULT_MIN_TRIAL, DEFAULT_MAX_TRIAL]`.
    pub fn default_trial_count(samples_in_window: usize) -> usize {
        (samples_in_window / 5).clamp(DEFAULT_MIN_TRIAL, DEFAULT_MAX_TRIAL)
    }

    /// Resolve both layouts against a window and a sample count.
    pub fn layouts(&self, window: Window, samples_in_window: usize) -> Result<(BasisLayout, BasisLayout)> {
        let trial_counts = self
            .trial
            .counts
            .clone()
            .unwrap_or_else(|| vec![Self::default_trial_count(samples_in_window)]);
        let test_counts = self
            .test
            .counts
            .clone()
            .unwrap_or_else(|| trial_counts.iter().map(|&c| 2 * c).collect());
        let trial = resolve(&self.trial, trial_counts, window, self.overlap_mode)?;
        let test = resolve(&self.test, test_counts, window, self.overlap_mode)?;
        Ok((trial, test))
    }
}

fn broadcast(overlaps: Option<&Vec<f64>>, tiers: usize) -> Result<Vec<f64>> {
    match overlaps {
        None => Ok(vec![DEFAULT_OVERLAP; tiers]),
        Some(v) if v.len() == 1 => Ok(vec![v[0]; tiers]),
        Some(v) if v.len() == tiers => Ok(v.clone()),
        Some(v) => Err(Error::Config(format!(
            "{} overlaps given for {tiers} tiers",
            v.len()
        ))),
    }
}

fn resolve(params: &LayoutParams, counts: Vec<usize>, window: Window, mode: OverlapMode) -> Result<BasisLayout> {
    let overlaps = broadcast(params.overlaps.as_ref(), counts.len())?;
    BasisLayout::new(counts, overlaps, params.p.unwrap_or(DEFAULT_P), window)?.with_overlap_mode(mode)
}
