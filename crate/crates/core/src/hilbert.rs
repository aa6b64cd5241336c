//! Hilbert functions `H(t) = dim (I^(m))_t` of uniform fat points and the initial degree.
//!
//! Up to eight points (and the collinear arrangement) go through the blow-up
//! engine in [`crate::divisor`]; nine or more general points use the SHGH formula
//! and every value they produce is flagged conjectural.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{PointConfig, Provenance};
use crate::divisor::{DivisorClass, Surface};
use crate::error::{Error, Result};

/// A value together with the trust level of the engine that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Flagged<T> {
    pub fn is_conjectural(&self) -> bool {
        self.provenance == Provenance::Conjectural
    }
}

/// `C(n+2, 2)`: number of degree-`n` monomials in three variables.
pub fn forms_of_degree(n: u64) -> Result<u128> {
    let n = n as u128;
    (n + 2)
        .checked_mul(n + 1)
        .map(|v| v / 2)
        .ok_or(Error::Overflow("binomial coefficient"))
}

/// `r * C(m+1, 2)`: conditions imposed by `r` points of multiplicity `m`.
pub fn fat_point_conditions(r: usize, m: u64) -> Result<u128> {
    let m = m as u128;
    (m + 1)
        .checked_mul(m)
        .and_then(|v| v.checked_mul(r as u128))
        .map(|v| v / 2)
        .ok_or(Error::Overflow("fat point conditions"))
}

/// `C(t+2,2) - r*C(m+1,2)`, which may be negative.
pub fn expected_dimension(r: usize, m: u64, t: u64) -> Result<i128> {
    let forms =
        i128::try_from(forms_of_degree(t)?).map_err(|_| Error::Overflow("binomial coefficient"))?;
    let conditions = i128::try_from(fat_point_conditions(r, m)?)
        .map_err(|_| Error::Overflow("fat point conditions"))?;
    Ok(forms - conditions)
}

fn to_u64(v: i128, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what))
}

fn to_i64(v: u64, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(())
}

fn check_shgh_r(r: usize) -> Result<()> {
    if r < 9 {
        return Err(Error::Precondition(format!(
            "the SHGH formula is only used for r >= 9 (got r = {r}); use the blow-up engine"
        )));
    }
    Ok(())
}

/// `max{C(t+2,2) - r*C(m+1,2), 0}`. Conjectural for every `r >= 9`.
pub fn shgh_hilbert(r: usize, m: u64, t: u64) -> Result<u64> {
    check_shgh_r(r)?;
    to_u64(expected_dimension(r, m, t)?.max(0), "SHGH Hilbert function")
}

/// `floor(-1/2 + sqrt(1/4 + r*m^2 + r*m))`, evaluated with an integer square root.
pub fn alpha_shgh(r: usize, m: u64) -> Result<u64> {
    check_shgh_r(r)?;
    check_m(m)?;
    let m = m as u128;
    // (-1 + sqrt(D)) / 2 with D = 1 + 4rm(m+1); floor commutes with the integer sqrt here.
    let disc = m
        .checked_mul(m + 1)
        .and_then(|v| v.checked_mul(4))
        .and_then(|v| v.checked_mul(r as u128))
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("alpha discriminant"))?;
    let root = disc.isqrt();
    u64::try_from((root - 1) / 2).map_err(|_| Error::Overflow("alpha"))
}

/// Largest degree scanned or materialised as a staircase column.
pub const MAX_DEGREE: u64 = 1 << 22;

/// Evaluates `H_{I^(m)}(t)` for one configuration, reusing the class list across calls.
#[derive(Debug, Clone)]
pub struct HilbertEngine {
    config: PointConfig,
    surface: Option<Surface>,
}

impl HilbertEngine {
    pub fn new(config: PointConfig) -> Result<Self> {
        config.validate()?;
        let surface = if config.has_finite_classes() {
            Some(Surface::new(config)?)
        } else {
            None
        };
        Ok(HilbertEngine { config, surface })
    }

    pub fn config(&self) -> PointConfig {
        self.config
    }

    pub fn provenance(&self) -> Provenance {
        self.config.provenance()
    }

    pub fn surface(&self) -> Option<&Surface> {
        self.surface.as_ref()
    }

    fn surface_for(&self, op: &'static str) -> Result<&Surface> {
        self.surface.as_ref().ok_or(Error::UnsupportedConfig {
            op,
            config: self.config,
        })
    }

    /// `H(t)` without the provenance wrapper.
    pub fn value(&self, m: u64, t: u64) -> Result<u64> {
        check_m(m)?;
        match &self.surface {
            Some(surface) => {
                let f = DivisorClass::uniform(
                    to_i64(t, "degree")?,
                    to_i64(m, "multiplicity")?,
                    self.config.r(),
                );
                surface.h0(&f)
            }
            None => shgh_hilbert(self.config.r(), m, t),
        }
    }

    /// First difference `H(t) - H(t-1)` with `H(-1) = 0`.
    pub fn difference(&self, m: u64, t: u64) -> Result<u64> {
        let here = self.value(m, t)?;
        let before = if t == 0 { 0 } else { self.value(m, t - 1)? };
        here.checked_sub(before).ok_or_else(|| {
            Error::Staircase(format!("Hilbert function decreases at t = {t} for m = {m}"))
        })
    }

    /// Upper bound on `alpha(m)`: `ceil(m*sqrt(r)) + m + 3`.
    pub fn alpha_guard(&self, m: u64) -> Result<u64> {
        let m2r = (m as u128)
            .checked_mul(m as u128)
            .and_then(|v| v.checked_mul(self.config.r() as u128))
            .ok_or(Error::Overflow("alpha guard"))?;
        let root = m2r.isqrt();
        let ceil = if root * root == m2r { root } else { root + 1 };
        u64::try_from(ceil + m as u128 + 3).map_err(|_| Error::Overflow("alpha guard"))
    }

    /// Least `t` with `H(t) > 0`, found by scanning upward from 0.
    pub fn alpha_by_scan(&self, m: u64) -> Result<u64> {
        check_m(m)?;
        let guard = self.alpha_guard(m)?;
        if guard > MAX_DEGREE {
            return Err(Error::GuardExceeded("alpha scan degree bound"));
        }
        for t in 0..=guard {
            if self.value(m, t)? > 0 {
                return Ok(t);
            }
        }
        Err(Error::GuardExceeded("alpha scan"))
    }

    pub fn alpha(&self, m: u64) -> Result<u64> {
        match self.config {
            PointConfig::GeneralShgh { r } => alpha_shgh(r, m),
            _ => self.alpha_by_scan(m),
        }
    }

    /// Smallest `N >= 0` such that `F_t` is nef for every `t >= N`.
    pub fn nef_threshold(&self, m: u64) -> Result<u64> {
        check_m(m)?;
        let surface = self.surface_for("nef_threshold")?;
        let m = to_i64(m, "multiplicity")?;
        let mut threshold = 0i64;
        for c in surface.classes().iter().filter(|c| c.degree() > 0) {
            // F_t.C = t*d - m*sum(a) >= 0  <=>  t >= m*sum(a)/d
            let weight: i64 = c.mults().iter().sum();
            let need = m
                .checked_mul(weight)
                .ok_or(Error::Overflow("nef threshold"))?;
            threshold = threshold
                .max(need.div_euclid(c.degree()) + i64::from(need.rem_euclid(c.degree()) != 0));
        }
        Ok(threshold as u64)
    }
}

/// `H_{I^(m)}(t)` for any supported configuration.
pub fn hilbert_fn(config: PointConfig, m: u64, t: u64) -> Result<Flagged<u64>> {
    let engine = HilbertEngine::new(config)?;
    Ok(Flagged {
        value: engine.value(m, t)?,
        provenance: config.provenance(),
    })
}

/// `H(t)` for every `t` in `ts`, computed in parallel and returned in order.
pub fn hilbert_table(
    config: PointConfig,
    m: u64,
    ts: std::ops::RangeInclusive<u64>,
) -> Result<Flagged<Vec<(u64, u64)>>> {
    let engine = HilbertEngine::new(config)?;
    let value = ts
        .into_par_iter()
        .map(|t| engine.value(m, t).map(|h| (t, h)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Flagged {
        value,
        provenance: config.provenance(),
    })
}

pub fn alpha(config: PointConfig, m: u64) -> Result<Flagged<u64>> {
    let engine = HilbertEngine::new(config)?;
    Ok(Flagged {
        value: engine.alpha(m)?,
        provenance: config.provenance(),
    })
}

pub fn nef_threshold(config: PointConfig, m: u64) -> Result<u64> {
    HilbertEngine::new(config)?.nef_threshold(m)
}
