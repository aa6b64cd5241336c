//! Self-check suite tying the engines, the staircase reconstruction and the
//! limiting-shape predictions together for one configuration.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{PointConfig, Provenance};
use crate::divisor::{
    canonical_class, exceptional_classes, intersect, numerical_exceptional_classes, DivisorClass,
};
use crate::error::{Error, Result};
use crate::gin::{colength, product_contained, shgh_gin_closed_form, MonomialStaircase};
use crate::hilbert::{alpha_shgh, expected_dimension, HilbertEngine};
use crate::limit::{check_convergence, collinear_shape_check, scaled_polytope_nested};

/// Engine agreement is checked for `m` up to this bound.
pub const AGREEMENT_MAX_M: u64 = 30;
/// Width of the `t` window above the nef threshold.
pub const AGREEMENT_WINDOW: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn from_failures(name: &'static str, detail: String, failures: Vec<String>) -> Self {
        let status = if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckOutcome {
            name,
            status,
            detail,
            failures,
        }
    }

    fn skipped(name: &'static str, why: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            status: Status::Skipped,
            detail: why.into(),
            failures: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: PointConfig,
    pub max_m: u64,
    pub passed: bool,
    pub conjectural: bool,
    pub provenance: Provenance,
    pub checks: Vec<CheckOutcome>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verify {} max_m={} provenance={:?}{}\n",
            self.config,
            self.max_m,
            self.provenance,
            if self.conjectural {
                " (conjectural)"
            } else {
                ""
            }
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
            for f in &c.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out.push_str(if self.passed {
            "result: pass\n"
        } else {
            "result: fail\n"
        });
        out
    }
}

/// Guard errors abort the suite; anything else counts as a failed check.
fn absorb<T>(
    r: Result<T>,
    failures: &mut Vec<String>,
    context: impl FnOnce() -> String,
) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_arithmetic_guard() => Err(e),
        Err(e) => {
            failures.push(format!("{}: {e}", context()));
            Ok(None)
        }
    }
}

fn check_classes(config: PointConfig) -> Result<CheckOutcome> {
    let name = "exceptional_classes";
    match config {
        PointConfig::GeneralShgh { .. } => Ok(CheckOutcome::skipped(
            name,
            "infinitely many classes for r >= 9",
        )),
        PointConfig::GeneralPosition { r } => {
            let listed: BTreeSet<DivisorClass> = exceptional_classes(config)?.into_iter().collect();
            let brute: BTreeSet<DivisorClass> =
                numerical_exceptional_classes(r)?.into_iter().collect();
            let mut failures = Vec::new();
            for c in listed.symmetric_difference(&brute) {
                let side = if listed.contains(c) {
                    "listed only"
                } else {
                    "numerical only"
                };
                failures.push(format!("{c}: {side}"));
            }
            Ok(CheckOutcome::from_failures(
                name,
                format!(
                    "{} classes against numerical enumeration ({})",
                    listed.len(),
                    brute.len()
                ),
                failures,
            ))
        }
        PointConfig::CollinearPlusOne { .. } => {
            let classes = exceptional_classes(config)?;
            let k = canonical_class(config.r())?;
            let mut failures = Vec::new();
            for c in &classes {
                let (cc, ck) = (intersect(c, c)?, intersect(c, &k)?);
                if cc >= 0 || cc + ck != -2 {
                    failures.push(format!("{c}: C^2 = {cc}, C.K = {ck}"));
                }
            }
            Ok(CheckOutcome::from_failures(
                name,
                format!(
                    "{} negative classes satisfy C^2 < 0 and C^2 + C.K = -2",
                    classes.len()
                ),
                failures,
            ))
        }
    }
}

fn check_colength(stairs: &BTreeMap<u64, Result<MonomialStaircase>>) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for (m, s) in stairs {
        let s = match s {
            Ok(s) => s,
            Err(e) if e.is_arithmetic_guard() => return Err(e.clone()),
            Err(e) => {
                failures.push(format!("m={m}: {e}"));
                continue;
            }
        };
        absorb(colength(s), &mut failures, || format!("m={m}"))?;
    }
    Ok(CheckOutcome::from_failures(
        "colength",
        format!("colength = r*m(m+1)/2 for m = 1..{}", stairs.len()),
        failures,
    ))
}

fn check_engine_agreement(engine: &HilbertEngine, max_m: u64) -> Result<CheckOutcome> {
    let name = "engine_agreement";
    if engine.surface().is_none() {
        return Ok(CheckOutcome::skipped(name, "no blow-up engine for r >= 9"));
    }
    let top = max_m.min(AGREEMENT_MAX_M);
    let r = engine.config().r();
    let per_m: Vec<Result<Vec<String>>> = (1..=top)
        .into_par_iter()
        .map(|m| {
            let mut failures = Vec::new();
            let n = engine.nef_threshold(m)?;
            for t in n..=n + AGREEMENT_WINDOW {
                let h = engine.value(m, t)?;
                let expected = expected_dimension(r, m, t)?;
                if h as i128 != expected {
                    failures.push(format!(
                        "m={m} t={t}: h0 = {h}, binomial count = {expected}"
                    ));
                }
            }
            Ok(failures)
        })
        .collect();
    let mut failures = Vec::new();
    for f in per_m {
        failures.extend(f?);
    }
    Ok(CheckOutcome::from_failures(
        name,
        format!("h0 = C(t+2,2) - r*C(m+1,2) for m <= {top}, t in [N, N+{AGREEMENT_WINDOW}]"),
        failures,
    ))
}

fn check_shgh(
    config: PointConfig,
    engine: &HilbertEngine,
    stairs: &BTreeMap<u64, Result<MonomialStaircase>>,
) -> Result<CheckOutcome> {
    let name = "shgh_closed_form";
    let PointConfig::GeneralShgh { r } = config else {
        return Ok(CheckOutcome::skipped(name, "only for r >= 9"));
    };
    let mut failures = Vec::new();
    for (&m, s) in stairs {
        let scan = engine.alpha_by_scan(m)?;
        let closed = alpha_shgh(r, m)?;
        if scan != closed {
            failures.push(format!("m={m}: alpha by scan {scan}, closed form {closed}"));
        }
        let Ok(s) = s else { continue };
        if let Some(c) = absorb(shgh_gin_closed_form(r, m), &mut failures, || {
            format!("m={m}")
        })? {
            if c.generators() != s.generators() {
                failures.push(format!(
                    "m={m}: closed-form generators differ from reconstruction"
                ));
            }
        }
    }
    Ok(CheckOutcome::from_failures(
        name,
        format!(
            "alpha scan and closed-form staircase for m = 1..{}",
            stairs.len()
        ),
        failures,
    ))
}

fn check_convergence_along(config: PointConfig, max_m: u64) -> Result<CheckOutcome> {
    let name = "convergence";
    if matches!(config, PointConfig::CollinearPlusOne { .. }) {
        return Ok(CheckOutcome::skipped(
            name,
            "no single-line prediction for collinear points",
        ));
    }
    let period = config.divisibility_period();
    let ms: Vec<u64> = (1..=max_m / period).map(|k| k * period).collect();
    if ms.is_empty() {
        return Ok(CheckOutcome::skipped(
            name,
            format!("no multiple of {period} up to {max_m}"),
        ));
    }
    let mut failures = Vec::new();
    let detail = format!(
        "intercepts within 3/m of the predicted line for m in {period}, {}, ..",
        2 * period
    );
    if let Some(rep) = absorb(check_convergence(config, &ms), &mut failures, || {
        "convergence".into()
    })? {
        failures.extend(rep.failures());
    }
    Ok(CheckOutcome::from_failures(name, detail, failures))
}

fn check_graded(
    stairs: &BTreeMap<u64, Result<MonomialStaircase>>,
    max_m: u64,
) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for m in 1..=max_m / 2 {
        let (Some(Ok(s)), Some(Ok(d))) = (stairs.get(&m), stairs.get(&(2 * m))) else {
            continue;
        };
        if let Err((g, h)) = product_contained(s, s, d) {
            failures.push(format!(
                "m={m}: x^{}y^{} * x^{}y^{} not in the staircase for {}",
                g.0,
                g.1,
                h.0,
                h.1,
                2 * m
            ));
        }
        if !scaled_polytope_nested(s, d) {
            failures.push(format!(
                "m={m}: scaled polytope not contained in the one for {}",
                2 * m
            ));
        }
    }
    Ok(CheckOutcome::from_failures(
        "graded_system",
        format!(
            "I(m)^2 in I(2m) and polytope nesting for m <= {}",
            max_m / 2
        ),
        failures,
    ))
}

fn check_collinear(config: PointConfig, max_m: u64) -> Result<CheckOutcome> {
    let name = "collinear_degrees";
    let PointConfig::CollinearPlusOne { l } = config else {
        return Ok(CheckOutcome::skipped(name, "only for collinear points"));
    };
    let period = config.divisibility_period();
    let ms: Vec<u64> = (1..=max_m / period).map(|k| k * period).collect();
    if ms.is_empty() {
        return Ok(CheckOutcome::skipped(
            name,
            format!("no multiple of {period} up to {max_m}"),
        ));
    }
    let rep = collinear_shape_check(l, &ms)?;
    let mut failures = Vec::new();
    for r in &rep.records {
        if !r.lowest_degree_matches {
            failures.push(format!(
                "m={}: lowest generator degree {} != 2m - m/l",
                r.m, r.alpha
            ));
        }
        if !r.highest_degree_matches {
            failures.push(format!(
                "m={}: highest generator degree {} != l*m",
                r.m, r.max_generator_degree
            ));
        }
        if r.x_intercept != rep.predicted_x_intercept || r.y_intercept != rep.predicted_y_intercept
        {
            failures.push(format!(
                "m={}: intercepts ({}, {})",
                r.m, r.x_intercept, r.y_intercept
            ));
        }
    }
    if !rep.single_segment_fails {
        failures.push(format!(
            "single-segment area {} does not exceed {}",
            rep.single_segment_area, rep.limit_area
        ));
    }
    Ok(CheckOutcome::from_failures(
        name,
        format!(
            "generator degrees 2m - m/l and l*m, area {} > {}",
            rep.single_segment_area, rep.limit_area
        ),
        failures,
    ))
}

/// Runs every applicable check for `config` with multiplicities up to `max_m`.
pub fn run_suite(config: PointConfig, max_m: u64) -> Result<VerifyReport> {
    config.validate()?;
    if max_m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let engine = HilbertEngine::new(config)?;
    let stairs: BTreeMap<u64, Result<MonomialStaircase>> = (1..=max_m)
        .into_par_iter()
        .map(|m| (m, crate::gin::gin_staircase_with(&engine, m)))
        .collect();
    if let Some(Err(e)) = stairs
        .values()
        .find(|s| matches!(s, Err(e) if e.is_arithmetic_guard()))
    {
        return Err(e.clone());
    }
    let checks = vec![
        check_classes(config)?,
        check_colength(&stairs)?,
        check_engine_agreement(&engine, max_m)?,
        check_shgh(config, &engine, &stairs)?,
        check_convergence_along(config, max_m)?,
        check_graded(&stairs, max_m)?,
        check_collinear(config, max_m)?,
    ];
    let failures: Vec<String> = checks
        .iter()
        .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
        .collect();
    Ok(VerifyReport {
        config,
        max_m,
        passed: failures.is_empty(),
        conjectural: config.is_conjectural(),
        provenance: config.provenance(),
        checks,
        failures,
    })
}
