//! Experiment configuration: a single JSON file describing the group, the
//! input sets, and the command parameters.

use std::path::Path;

use num_rational::Ratio;
use serde::Deserialize;

use growthlab::{ElementSet, ExactLimits, Group, GroupSpec};

use crate::error::CliError;

/// Homomorphism description for the `push` and `lift` commands.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HomConfig {
    Identity,
    AbelianizeHeisenberg,
    ReduceMod { modulus: i64 },
    CyclicReduce { modulus: i64, divisor: i64 },
    ProjectBase,
    ProjectFinite,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactLimitConfig {
    pub max_candidates: Option<usize>,
    pub max_universe: Option<usize>,
    pub max_nodes: Option<u64>,
}

/// One experiment: the group, coordinate lists for the sets involved, and
/// the per-command parameters.  Unknown keys are rejected.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupSpec,
    /// The primary set `A` (or `S` for `growth`).
    pub set: Option<Vec<Vec<i64>>>,
    /// The second set: `F` for `cover`, `S` for `inner-ball`.
    pub second_set: Option<Vec<Vec<i64>>>,
    /// Semigroup generators for `fm-check`.
    pub generators: Option<Vec<Vec<i64>>>,
    /// Translate set: `X` for `witness` and `push`, `Y` for `lift`.
    pub translates: Option<Vec<Vec<i64>>>,
    /// Kernel elements for `lift`.
    pub kernel: Option<Vec<Vec<i64>>>,
    pub hom: Option<HomConfig>,
    pub r: Option<u32>,
    pub h: Option<u32>,
    pub h_min: Option<u32>,
    pub h_max: Option<u32>,
    pub n_max: Option<u64>,
    /// Exact rational like "1/2" (or an integer string).
    pub theta: Option<String>,
    pub p: Option<u32>,
    pub cutoff: Option<u32>,
    /// Normalization search depth for `fm-check`.
    pub depth: Option<u32>,
    /// Truncation radius `L` for `fm-check`.
    pub truncation: Option<u32>,
    /// `"min"` (default) or `"ruzsa"` for the `cover` command.
    pub cover_mode: Option<String>,
    pub budget: Option<usize>,
    pub exact_limit: Option<ExactLimitConfig>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn group(&self) -> Result<Group, CliError> {
        Ok(Group::new(self.group.clone())?)
    }

    fn coords_to_set(&self, group: &Group, coords: &[Vec<i64>], what: &str) -> Result<ElementSet, CliError> {
        if coords.is_empty() {
            return Err(CliError::Config(format!("{what} must be non-empty")));
        }
        Ok(ElementSet::from_coords(group, coords)?)
    }

    pub fn primary_set(&self, group: &Group) -> Result<ElementSet, CliError> {
        let coords = self
            .set
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field: set".into()))?;
        self.coords_to_set(group, coords, "set")
    }

    pub fn second_set(&self, group: &Group) -> Result<ElementSet, CliError> {
        let coords = self
            .second_set
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field: second_set".into()))?;
        self.coords_to_set(group, coords, "second_set")
    }

    pub fn generator_set(&self, group: &Group) -> Result<ElementSet, CliError> {
        let coords = self
            .generators
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field: generators".into()))?;
        self.coords_to_set(group, coords, "generators")
    }

    pub fn translate_set(&self, group: &Group) -> Result<ElementSet, CliError> {
        let coords = self
            .translates
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field: translates".into()))?;
        self.coords_to_set(group, coords, "translates")
    }

    pub fn kernel_set(&self, group: &Group) -> Result<ElementSet, CliError> {
        let coords = self
            .kernel
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field: kernel".into()))?;
        self.coords_to_set(group, coords, "kernel")
    }

    pub fn require_r(&self) -> Result<u32, CliError> {
        let r = self
            .r
            .ok_or_else(|| CliError::Config("missing field: r".into()))?;
        if r < 2 {
            return Err(CliError::Config("r must be >= 2".into()));
        }
        Ok(r)
    }

    pub fn require_h(&self) -> Result<u32, CliError> {
        self.h
            .ok_or_else(|| CliError::Config("missing field: h".into()))
    }

    pub fn h_range(&self) -> Result<(u32, u32), CliError> {
        let lo = self
            .h_min
            .ok_or_else(|| CliError::Config("missing field: h_min".into()))?;
        let hi = self
            .h_max
            .ok_or_else(|| CliError::Config("missing field: h_max".into()))?;
        if lo > hi {
            return Err(CliError::Config("h_min must not exceed h_max".into()));
        }
        Ok((lo, hi))
    }

    pub fn theta(&self) -> Result<Ratio<i64>, CliError> {
        let raw = self
            .theta
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field: theta".into()))?;
        parse_ratio(raw)
    }

    pub fn exact_limits(&self, flag_override: Option<usize>) -> ExactLimits {
        let mut limits = ExactLimits::default();
        if let Some(cfg) = &self.exact_limit {
            if let Some(c) = cfg.max_candidates {
                limits.max_candidates = c;
            }
            if let Some(u) = cfg.max_universe {
                limits.max_universe = u;
            }
            if let Some(n) = cfg.max_nodes {
                limits.max_nodes = n;
            }
        }
        if let Some(n) = flag_override {
            limits.max_candidates = n;
            limits.max_universe = n;
        }
        limits
    }
}

/// Parses an exact rational from `"p/q"` or a plain integer string.
pub fn parse_ratio(raw: &str) -> Result<Ratio<i64>, CliError> {
    let parse_int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| CliError::Config(format!("invalid rational component: {s}")))
    };
    let ratio = match raw.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == 0 {
                return Err(CliError::Config("rational denominator is zero".into()));
            }
            Ratio::new(parse_int(num)?, den)
        }
        None => Ratio::from_integer(parse_int(raw)?),
    };
    Ok(ratio)
}
