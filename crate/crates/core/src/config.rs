//! Point arrangements and the provenance of results computed for them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A supported arrangement of `r` distinct points in the projective plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointConfig {
    /// `2 <= r <= 8` points in general position; blow-up engine.
    GeneralPosition { r: usize },
    /// `r >= 9` general points; Hilbert function taken from the SHGH formula.
    GeneralShgh { r: usize },
    /// `l >= 3` points on a line plus one point off it.
    CollinearPlusOne { l: usize },
}

/// How much trust a computed value deserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Follows from the proven blow-up machinery.
    Proven,
    /// Relies on the SHGH conjecture.
    Conjectural,
    /// Blow-up machinery applied outside its proven range, checked against known results.
    EmpiricallyValidated,
}

impl PointConfig {
    pub fn general(r: usize) -> Result<Self> {
        let c = PointConfig::GeneralPosition { r };
        c.validate()?;
        Ok(c)
    }

    pub fn shgh(r: usize) -> Result<Self> {
        let c = PointConfig::GeneralShgh { r };
        c.validate()?;
        Ok(c)
    }

    pub fn collinear(l: usize) -> Result<Self> {
        let c = PointConfig::CollinearPlusOne { l };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PointConfig::GeneralPosition { r } if !(2..=8).contains(&r) => {
                Err(Error::InvalidConfig(format!(
                    "general position needs 2 <= r <= 8, got {r} (use shgh:R for r >= 9)"
                )))
            }
            PointConfig::GeneralShgh { r } if r < 9 => Err(Error::InvalidConfig(format!(
                "the SHGH engine needs r >= 9, got {r} (use general:R)"
            ))),
            PointConfig::CollinearPlusOne { l } if l < 3 => Err(Error::InvalidConfig(format!(
                "collinear configuration needs l >= 3, got {l}"
            ))),
            // Keeps every binomial and pairing comfortably inside i64.
            PointConfig::GeneralShgh { r } if r > 1_000_000 => {
                Err(Error::InvalidConfig(format!("r = {r} is too large")))
            }
            PointConfig::CollinearPlusOne { l } if l > 64 => {
                Err(Error::InvalidConfig(format!("l = {l} is too large")))
            }
            _ => Ok(()),
        }
    }

    /// Number of points.
    pub fn r(&self) -> usize {
        match *self {
            PointConfig::GeneralPosition { r } | PointConfig::GeneralShgh { r } => r,
            PointConfig::CollinearPlusOne { l } => l + 1,
        }
    }

    /// Whether the blow-up surface has finitely many negative classes we can enumerate.
    pub fn has_finite_classes(&self) -> bool {
        !matches!(self, PointConfig::GeneralShgh { .. })
    }

    pub fn provenance(&self) -> Provenance {
        match self {
            PointConfig::GeneralPosition { .. } => Provenance::Proven,
            PointConfig::GeneralShgh { .. } => Provenance::Conjectural,
            PointConfig::CollinearPlusOne { .. } => Provenance::EmpiricallyValidated,
        }
    }

    pub fn is_conjectural(&self) -> bool {
        self.provenance() == Provenance::Conjectural
    }

    /// Multiplicity period along which closed forms for the intercepts are exact.
    pub fn divisibility_period(&self) -> u64 {
        match *self {
            PointConfig::GeneralPosition { r: 6 } => 10,
            PointConfig::GeneralPosition { r: 7 } => 24,
            PointConfig::GeneralPosition { r: 8 } => 102,
            PointConfig::CollinearPlusOne { l } => (l * (l - 1)) as u64,
            _ => 1,
        }
    }
}

impl fmt::Display for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointConfig::GeneralPosition { r } => write!(f, "general:{r}"),
            PointConfig::GeneralShgh { r } => write!(f, "shgh:{r}"),
            PointConfig::CollinearPlusOne { l } => write!(f, "collinear:{l}"),
        }
    }
}

impl FromStr for PointConfig {
    type Err = Error;

    /// Parses `general:R`, `shgh:R` or `collinear:L`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, n) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidConfig(format!("expected KIND:N, got `{s}`")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("`{n}` is not a point count")))?;
        match kind.trim() {
            "general" => PointConfig::general(n),
            "shgh" => PointConfig::shgh(n),
            "collinear" => PointConfig::collinear(n),
            other => Err(Error::InvalidConfig(format!(
                "unknown configuration kind `{other}` (expected general, shgh or collinear)"
            ))),
        }
    }
}

impl Serialize for PointConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointConfig {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
