//! Sweep configuration: types, validation, and the flat `key = value` file
//! format.
//!
//! ```text
//! # two photon additions, parity against phase
//! kind = added
//! ops = 2
//! r = 0.3            # or: target_nbar = 4
//! nz = 4
//! axis = phi
//! start = -3.14159
//! stop = 3.14159
//! count = 401
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use mzi_parity::{StateKind, Variant};
use serde::{Serialize, Serializer};

use crate::error::{io_err, CliError, Result};

/// Points per curve when a config or figure does not say otherwise.
pub const DEFAULT_COUNT: usize = 401;
/// Phase used on non-phase axes unless `phi` is given.
pub const DEFAULT_PHI: f64 = 1e-4;
/// Largest photon-number sector the oracle will diagonalize in a sweep.
pub const DEFAULT_ORACLE_MAX_SECTOR: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Phi,
    TotalNbar,
    R,
    Ops,
    Nz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

/// How the two ports share photons when the axis does not pin everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// n̄ of the squeezed port = nz = N̄/2.
    FixNbarSplit,
    /// Squeezing r held fixed; the coherent port takes the rest of N̄.
    FixR,
    /// Squeezed-port n̄ held fixed; the coherent port takes the rest of N̄.
    FixNbarSqueezed,
}

/// Squeezed-port parameterization: a squeezing value or a mean photon number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Squeezing {
    R(f64),
    TargetNbar(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl AxisRange {
    pub fn linear(start: f64, stop: f64, count: usize) -> Self {
        Self {
            start,
            stop,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        let last = (n - 1) as f64;
        match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * i as f64 / last
                    }
                })
                .collect(),
            Spacing::Log => {
                let (a, b) = (self.start.ln(), self.stop.ln());
                (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.stop
                        } else {
                            (a + (b - a) * i as f64 / last).exp()
                        }
                    })
                    .collect()
            }
        }
    }
}

fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    #[serde(serialize_with = "display")]
    pub kind: StateKind,
    pub ops: u32,
    pub squeezing: Squeezing,
    pub nz: f64,
    pub theta: f64,
    /// Phase for every row unless the axis is `phi`.
    pub phi: f64,
    #[serde(serialize_with = "display")]
    pub variant: Variant,
    pub axis: Axis,
    pub range: AxisRange,
    pub constraint: Option<Constraint>,
    pub verify: bool,
    pub oracle_max_sector: usize,
}

impl SweepConfig {
    /// A phase sweep around a fixed scenario, to be adjusted field by field.
    pub fn phase_sweep(kind: StateKind, ops: u32, squeezing: Squeezing, nz: f64, range: AxisRange) -> Self {
        Self {
            kind,
            ops,
            squeezing,
            nz,
            theta: 0.0,
            phi: DEFAULT_PHI,
            variant: Variant::SeriesConsistent,
            axis: Axis::Phi,
            range,
            constraint: None,
            verify: false,
            oracle_max_sector: DEFAULT_ORACLE_MAX_SECTOR,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Sweep(msg));
        let r = &self.range;
        if r.count < 2 {
            return bad(format!("count must be at least 2, got {}", r.count));
        }
        if !(r.start.is_finite() && r.stop.is_finite()) || r.start >= r.stop {
            return bad(format!("need start < stop, got {} and {}", r.start, r.stop));
        }
        if r.spacing == Spacing::Log && r.start <= 0.0 {
            return bad("log spacing needs a positive start".into());
        }
        if !(self.nz.is_finite() && self.nz >= 0.0) {
            return bad(format!("nz must be finite and non-negative, got {}", self.nz));
        }
        if !self.theta.is_finite() || !self.phi.is_finite() {
            return bad("theta and phi must be finite".into());
        }
        if self.kind == StateKind::Plain && self.ops != 0 {
            return bad("plain squeezed vacuum takes ops = 0".into());
        }
        match self.squeezing {
            Squeezing::R(v) | Squeezing::TargetNbar(v) if !(v.is_finite() && v >= 0.0) => {
                return bad(format!("squeezing parameter must be non-negative, got {v}"));
            }
            _ => {}
        }

        match (self.axis, self.constraint) {
            (Axis::TotalNbar, None) => {
                return bad("axis total_nbar needs a constraint".into());
            }
            (axis, Some(Constraint::FixNbarSplit)) if axis != Axis::TotalNbar => {
                return bad("fix_nbar_split only applies to axis total_nbar".into());
            }
            (Axis::R, Some(Constraint::FixR | Constraint::FixNbarSqueezed)) => {
                return bad("axis r conflicts with a squeezing constraint".into());
            }
            _ => {}
        }
        match (self.constraint, self.squeezing) {
            (Some(Constraint::FixR), Squeezing::TargetNbar(_)) => {
                return bad("fix_r needs `r`, not `target_nbar`".into());
            }
            (Some(Constraint::FixNbarSqueezed), Squeezing::R(_)) => {
                return bad("fix_nbar_squeezed needs `target_nbar`, not `r`".into());
            }
            _ => {}
        }
        if self.axis == Axis::R && matches!(self.squeezing, Squeezing::TargetNbar(_)) {
            return bad("axis r conflicts with `target_nbar`".into());
        }
        if self.axis == Axis::Ops {
            if self.kind == StateKind::Plain {
                return bad("axis ops needs kind added or subtracted".into());
            }
            if r.spacing != Spacing::Linear
                || r.start < 0.0
                || self.range.values().iter().any(|v| v.fract() != 0.0)
            {
                return bad("axis ops needs non-negative integer grid points".into());
            }
        }
        if matches!(self.axis, Axis::R | Axis::Nz) && r.start < 0.0 {
            return bad("axis values must be non-negative".into());
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parse the flat config format; `origin` labels error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let err = |line: usize, msg: String| CliError::Config {
            path: origin.to_string(),
            line,
            msg,
        };
        let mut kind = None;
        let mut ops = 0u32;
        let mut r = None;
        let mut target = None;
        let mut nz = 0.0;
        let mut theta = 0.0;
        let mut phi = DEFAULT_PHI;
        let mut variant = Variant::SeriesConsistent;
        let mut axis = None;
        let (mut start, mut stop) = (None, None);
        let mut count = DEFAULT_COUNT;
        let mut spacing = Spacing::Linear;
        let mut constraint = None;
        let mut verify = false;
        let mut oracle_max_sector = DEFAULT_ORACLE_MAX_SECTOR;
        let mut seen = std::collections::HashSet::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(line_no, format!("expected `key = value`, got `{line}`")));
            };
            let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
            if !seen.insert(key.clone()) {
                return Err(err(line_no, format!("duplicate key `{key}`")));
            }
            let num = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| err(line_no, format!("`{key}` expects a number, got `{v}`")))
            };
            let int = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| err(line_no, format!("`{key}` expects an integer, got `{v}`")))
            };
            match key.as_str() {
                "kind" => {
                    kind = Some(
                        StateKind::from_str(value).map_err(|e| err(line_no, e.to_string()))?,
                    )
                }
                "ops" => ops = int(value)? as u32,
                "r" => r = Some(num(value)?),
                "target_nbar" => target = Some(num(value)?),
                "nz" => nz = num(value)?,
                "theta" => theta = num(value)?,
                "phi" => phi = num(value)?,
                "variant" => {
                    variant = Variant::from_str(value).map_err(|e| err(line_no, e.to_string()))?
                }
                "axis" => axis = Some(parse_axis(value).ok_or_else(|| err(line_no, format!("unknown axis `{value}`")))?),
                "start" => start = Some(num(value)?),
                "stop" => stop = Some(num(value)?),
                "count" => count = int(value)?,
                "spacing" => {
                    spacing = match value.to_ascii_lowercase().as_str() {
                        "linear" | "lin" => Spacing::Linear,
                        "log" | "logarithmic" => Spacing::Log,
                        other => return Err(err(line_no, format!("unknown spacing `{other}`"))),
                    }
                }
                "constraint" => {
                    constraint = parse_constraint(value)
                        .ok_or_else(|| err(line_no, format!("unknown constraint `{value}`")))?
                }
                "verify" => {
                    verify = match value.to_ascii_lowercase().as_str() {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        other => return Err(err(line_no, format!("`verify` expects true/false, got `{other}`"))),
                    }
                }
                "oracle_max_sector" => oracle_max_sector = int(value)?,
                other => return Err(err(line_no, format!("unknown key `{other}`"))),
            }
        }

        let missing = |k: &str| err(0, format!("missing required key `{k}`"));
        let kind = kind.ok_or_else(|| missing("kind"))?;
        let axis = axis.ok_or_else(|| missing("axis"))?;
        let squeezing = match (r, target) {
            (Some(_), Some(_)) => return Err(err(0, "give exactly one of `r` and `target_nbar`".into())),
            (Some(r), None) => Squeezing::R(r),
            (None, Some(t)) => Squeezing::TargetNbar(t),
            // the axis or a split constraint supplies it
            (None, None) if axis == Axis::R => Squeezing::R(0.0),
            (None, None) if constraint == Some(Constraint::FixNbarSplit) => Squeezing::TargetNbar(0.0),
            (None, None) => return Err(missing("r` or `target_nbar")),
        };
        let config = SweepConfig {
            kind,
            ops,
            squeezing,
            nz,
            theta,
            phi,
            variant,
            axis,
            range: AxisRange {
                start: start.ok_or_else(|| missing("start"))?,
                stop: stop.ok_or_else(|| missing("stop"))?,
                count,
                spacing,
            },
            constraint,
            verify,
            oracle_max_sector,
        };
        config.validate().map_err(|e| err(0, e.to_string()))?;
        Ok(config)
    }
}

fn parse_axis(s: &str) -> Option<Axis> {
    Some(match s.to_ascii_lowercase().as_str() {
        "phi" => Axis::Phi,
        "total_nbar" => Axis::TotalNbar,
        "r" => Axis::R,
        "ops" => Axis::Ops,
        "nz" => Axis::Nz,
        _ => return None,
    })
}

fn parse_constraint(s: &str) -> Option<Option<Constraint>> {
    Some(match s.to_ascii_lowercase().as_str() {
        "none" => None,
        "fix_nbar_split" => Some(Constraint::FixNbarSplit),
        "fix_r" => Some(Constraint::FixR),
        "fix_nbar_squeezed" => Some(Constraint::FixNbarSqueezed),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHASE: &str = "
        # comment line
        kind = Added
        ops = 2
        r = 0.3      # squeezing
        nz = 4
        axis = phi
        start = -3
        stop = 3
        count = 7
    ";

    #[test]
    fn parses_a_phase_sweep() {
        let c = SweepConfig::parse(PHASE, "t").unwrap();
        assert_eq!(c.kind, StateKind::Added);
        assert_eq!(c.squeezing, Squeezing::R(0.3));
        assert_eq!(c.range.values(), vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        assert_eq!(c.variant, Variant::SeriesConsistent);
        assert!(!c.verify);
    }

    #[test]
    fn rejects_both_squeezing_keys() {
        let text = format!("{PHASE}\ntarget_nbar = 4\n");
        assert!(SweepConfig::parse(&text, "t").is_err());
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(SweepConfig::parse(&format!("{PHASE}\ncolour = red\n"), "t").is_err());
        assert!(SweepConfig::parse(&format!("{PHASE}\nnz = 3\n"), "t").is_err());
        let e = SweepConfig::parse("kind = added\nops two\n", "cfg.txt").unwrap_err();
        assert!(e.to_string().starts_with("cfg.txt:2:"), "{e}");
    }

    #[test]
    fn constraint_compatibility() {
        let split = "kind = plain\naxis = total_nbar\nconstraint = fix_nbar_split\nstart = 4\nstop = 200\n";
        assert!(SweepConfig::parse(split, "t").is_ok());
        let wrong = "kind = plain\nr = 0.3\naxis = phi\nconstraint = fix_nbar_split\nstart = 0\nstop = 1\n";
        assert!(SweepConfig::parse(wrong, "t").is_err());
        let unconstrained = "kind = plain\nr = 0.3\naxis = total_nbar\nstart = 4\nstop = 20\n";
        assert!(SweepConfig::parse(unconstrained, "t").is_err());
        let fix_r_target = "kind = plain\ntarget_nbar = 3\naxis = total_nbar\nconstraint = fix_r\nstart = 4\nstop = 20\n";
        assert!(SweepConfig::parse(fix_r_target, "t").is_err());
    }

    #[test]
    fn range_validation() {
        let text = PHASE.replace("count = 7", "count = 1");
        assert!(SweepConfig::parse(&text, "t").is_err());
        let text = PHASE.replace("stop = 3", "stop = -4");
        assert!(SweepConfig::parse(&text, "t").is_err());
        let ops = "kind = added\nr = 0.3\naxis = ops\nstart = 0\nstop = 3\ncount = 5\n";
        assert!(SweepConfig::parse(ops, "t").is_err());
        let ops = ops.replace("count = 5", "count = 4");
        assert!(SweepConfig::parse(&ops, "t").is_ok());
    }

    #[test]
    fn log_spacing_hits_both_ends() {
        let r = AxisRange {
            start: 1.0,
            stop: 100.0,
            count: 3,
            spacing: Spacing::Log,
        };
        let v = r.values();
        assert_eq!(v[0], 1.0);
        assert!((v[1] - 10.0).abs() < 1e-12);
        assert_eq!(v[2], 100.0);
    }
}
