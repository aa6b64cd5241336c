//! Scaled Newton polytopes of the symbolic generic initial system and their limit.
//!
//! Everything here is exact: intercepts, areas and corner coordinates are
//! rationals, and `sqrt(r)` for nine or more points is kept symbolic and compared
//! through squares.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::config::{PointConfig, Provenance};
use crate::error::{Error, Result};
use crate::gin::{colength, gin_staircase_with, Exponent, MonomialStaircase};
use crate::hilbert::HilbertEngine;

pub type Q = Ratio<i64>;

/// Convergence tolerance numerator: intercepts must lie within `3/m` of the prediction.
pub const INTERCEPT_TOLERANCE: i64 = 3;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn qi(n: u64) -> Result<Q> {
    i64::try_from(n)
        .map(Q::from_integer)
        .map_err(|_| Error::Overflow("rational conversion"))
}

/// A rational that prints and serializes as `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Q);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<Q> for Rational {
    fn from(v: Q) -> Self {
        Rational(v)
    }
}

impl Rational {
    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

/// A predicted intercept: an exact rational, or `sqrt(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intercept {
    Exact(Q),
    Sqrt(u64),
}

impl fmt::Display for Intercept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intercept::Exact(v) => write!(f, "{}", Rational(*v)),
            Intercept::Sqrt(r) if r.isqrt() * r.isqrt() == *r => write!(f, "{}", r.isqrt()),
            Intercept::Sqrt(r) => write!(f, "sqrt({r})"),
        }
    }
}

impl Serialize for Intercept {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Intercept {
    pub fn to_f64(self) -> f64 {
        match self {
            Intercept::Exact(v) => Rational(v).to_f64(),
            Intercept::Sqrt(r) => (r as f64).sqrt(),
        }
    }

    /// Compares `value` against this intercept exactly.
    pub fn cmp_rational(self, value: Q) -> Ordering {
        match self {
            Intercept::Exact(v) => v.cmp(&value),
            Intercept::Sqrt(r) => {
                if value < Q::from_integer(0) {
                    return Ordering::Greater;
                }
                // sqrt(r) vs value  <=>  r vs value^2, in i128 to stay clear of overflow
                let (n, d) = (*value.numer() as i128, *value.denom() as i128);
                (r as i128 * d * d).cmp(&(n * n))
            }
        }
    }

    /// `|value - self| <= tol`.
    pub fn within(self, value: Q, tol: Q) -> bool {
        self.cmp_rational(value - tol) != Ordering::Less
            && self.cmp_rational(value + tol) != Ordering::Greater
    }

    /// `|value - self|` when the intercept is rational.
    pub fn deviation(self, value: Q) -> Option<Q> {
        match self {
            Intercept::Exact(v) => Some(if v > value { v - value } else { value - v }),
            Intercept::Sqrt(_) => None,
        }
    }
}

/// `gamma1 * gamma2 == r`, checked symbolically.
pub fn intercept_product_is(g1: Intercept, g2: Intercept, r: u64) -> bool {
    match (g1, g2) {
        (Intercept::Exact(a), Intercept::Exact(b)) => a * b == Q::from_integer(r as i64),
        (Intercept::Sqrt(a), Intercept::Sqrt(b)) => {
            (a as u128) * (b as u128) == (r as u128) * (r as u128)
        }
        (Intercept::Exact(a), Intercept::Sqrt(s)) | (Intercept::Sqrt(s), Intercept::Exact(a)) => {
            // a * sqrt(s) = r  <=>  a > 0 and a^2 * s = r^2
            let (n, d) = (*a.numer() as i128, *a.denom() as i128);
            n > 0 && n * n * s as i128 == (r as i128) * (r as i128) * d * d
        }
    }
}

/// The line bounding the limiting shape for the configurations where it is known.
pub fn theoretical_shape(config: PointConfig) -> Result<(Intercept, Intercept)> {
    use Intercept::Exact;
    match config {
        PointConfig::GeneralPosition { r } => Ok(match r {
            2 | 3 => (Exact(q(r as i64, 2)), Exact(q(2, 1))),
            4 | 5 => (Exact(q(2, 1)), Exact(q(r as i64, 2))),
            6 => (Exact(q(12, 5)), Exact(q(5, 2))),
            7 => (Exact(q(21, 8)), Exact(q(8, 3))),
            8 => (Exact(q(48, 17)), Exact(q(17, 6))),
            _ => unreachable!("validated config"),
        }),
        PointConfig::GeneralShgh { r } => {
            Ok((Intercept::Sqrt(r as u64), Intercept::Sqrt(r as u64)))
        }
        PointConfig::CollinearPlusOne { .. } => Err(Error::UnsupportedConfig {
            op: "theoretical_shape",
            config,
        }),
    }
}

/// Lower-left boundary of `conv(generators) + R^2_{>=0}`, from `(0, zeta)` to `(alpha, 0)`.
fn lower_hull(s: &MonomialStaircase) -> Vec<Exponent> {
    let mut pts = s.generators();
    pts.reverse();
    let mut hull: Vec<Exponent> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below segment a-p
            let cross = (b.0 as i128 - a.0 as i128) * (p.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (p.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Whether the point `(x, y)` (in exponent coordinates) lies in the Newton polytope.
pub fn newton_polytope_contains(s: &MonomialStaircase, (x, y): (Q, Q)) -> bool {
    let zero = Q::from_integer(0);
    if x < zero || y < zero {
        return false;
    }
    let hull = lower_hull(s);
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ax, ay) = (Q::from_integer(a.0 as i64), Q::from_integer(a.1 as i64));
        let (bx, by) = (Q::from_integer(b.0 as i64), Q::from_integer(b.1 as i64));
        if x >= ax && x <= bx {
            let boundary = ay + (by - ay) * (x - ax) / (bx - ax);
            return y >= boundary;
        }
    }
    // right of x^alpha
    true
}

/// `(1/m) P_m ⊆ (1/n) P_n`, checked on the vertices of the left polytope.
pub fn scaled_polytope_nested(small: &MonomialStaircase, large: &MonomialStaircase) -> bool {
    let factor = Q::new(large.m() as i64, small.m() as i64);
    lower_hull(small).into_iter().all(|(a, b)| {
        newton_polytope_contains(
            large,
            (
                Q::from_integer(a as i64) * factor,
                Q::from_integer(b as i64) * factor,
            ),
        )
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeRecord {
    pub m: u64,
    pub alpha: u64,
    pub zeta: u64,
    pub x_intercept: Rational,
    pub y_intercept: Rational,
    pub colength: u64,
    pub colength_over_m2: Rational,
    /// Generators scaled by `1/m`, in descending `x`.
    pub corners: Vec<[Rational; 2]>,
    #[serde(skip)]
    pub outline: Vec<[Rational; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub gamma1: Intercept,
    pub gamma2: Intercept,
    pub product_equals_r: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NestingCheck {
    pub m: u64,
    pub doubled: u64,
    pub nested: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub config: PointConfig,
    pub conjectural: bool,
    pub provenance: Provenance,
    pub m_list: Vec<u64>,
    pub records: Vec<ShapeRecord>,
    pub predicted: Option<Prediction>,
    /// `alpha(m)/(r*m)` at the largest `m`.
    pub seshadri_estimate: Rational,
    pub nesting: Vec<NestingCheck>,
}

fn scale(p: Exponent, m: u64) -> Result<[Rational; 2]> {
    let m = qi(m)?;
    Ok([Rational(qi(p.0)? / m), Rational(qi(p.1)? / m)])
}

fn record_for(s: &MonomialStaircase) -> Result<ShapeRecord> {
    let m = s.m();
    let mq = qi(m)?;
    let len = colength(s)?;
    let over_m2 = qi(len)? / (mq * mq);
    let r = s.config().r() as i64;
    // r(m+1)/(2m), from the colength r*m(m+1)/2
    let expected = Q::new(r, 2) * (mq + 1) / mq;
    if over_m2 != expected {
        return Err(Error::Staircase(format!(
            "colength/m^2 = {} but r(m+1)/(2m) = {}",
            Rational(over_m2),
            Rational(expected)
        )));
    }
    Ok(ShapeRecord {
        m,
        alpha: s.alpha(),
        zeta: s.zeta(),
        x_intercept: Rational(qi(s.alpha())? / mq),
        y_intercept: Rational(qi(s.zeta())? / mq),
        colength: len,
        colength_over_m2: Rational(over_m2),
        corners: s
            .generators()
            .into_iter()
            .map(|g| scale(g, m))
            .collect::<Result<_>>()?,
        outline: s
            .outline()
            .into_iter()
            .map(|g| scale(g, m))
            .collect::<Result<_>>()?,
    })
}

fn normalized_m_list(m_list: &[u64]) -> Result<Vec<u64>> {
    if m_list.is_empty() {
        return Err(Error::Precondition("empty multiplicity list".into()));
    }
    if m_list.contains(&0) {
        return Err(Error::ZeroMultiplicity);
    }
    let mut ms = m_list.to_vec();
    ms.sort_unstable();
    ms.dedup();
    Ok(ms)
}

/// Staircases for every `m`, computed in parallel and keyed by `m`.
pub fn staircases(config: PointConfig, m_list: &[u64]) -> Result<BTreeMap<u64, MonomialStaircase>> {
    let engine = HilbertEngine::new(config)?;
    normalized_m_list(m_list)?
        .into_par_iter()
        .map(|m| gin_staircase_with(&engine, m).map(|s| (m, s)))
        .collect()
}

pub fn shape_report(config: PointConfig, m_list: &[u64]) -> Result<ShapeReport> {
    let stairs = staircases(config, m_list)?;
    shape_report_from(config, &stairs)
}

pub fn shape_report_from(
    config: PointConfig,
    stairs: &BTreeMap<u64, MonomialStaircase>,
) -> Result<ShapeReport> {
    let records = stairs
        .values()
        .map(record_for)
        .collect::<Result<Vec<_>>>()?;
    let predicted = match theoretical_shape(config) {
        Ok((gamma1, gamma2)) => Some(Prediction {
            gamma1,
            gamma2,
            product_equals_r: intercept_product_is(gamma1, gamma2, config.r() as u64),
        }),
        Err(Error::UnsupportedConfig { .. }) => None,
        Err(e) => return Err(e),
    };
    let nesting = stairs
        .iter()
        .filter_map(|(&m, s)| {
            stairs.get(&(2 * m)).map(|d| NestingCheck {
                m,
                doubled: 2 * m,
                nested: scaled_polytope_nested(s, d),
            })
        })
        .collect();
    let (&largest, top) = stairs
        .iter()
        .next_back()
        .ok_or_else(|| Error::Precondition("empty multiplicity list".into()))?;
    let seshadri = qi(top.alpha())? / (qi(largest)? * qi(config.r() as u64)?);
    Ok(ShapeReport {
        config,
        conjectural: config.is_conjectural(),
        provenance: config.provenance(),
        m_list: stairs.keys().copied().collect(),
        records,
        predicted,
        seshadri_estimate: Rational(seshadri),
        nesting,
    })
}

impl ShapeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,alpha,zeta,x_intercept,y_intercept,colength\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.m, r.alpha, r.zeta, r.x_intercept, r.y_intercept, r.colength
            );
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Staircase(e.to_string()))
    }

    /// Scaled staircase outlines, one polyline per `m`, with the predicted line dashed.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 480.0;
        const MARGIN: f64 = 40.0;
        const PALETTE: [&str; 8] = [
            "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
        ];
        let mut extent: f64 = 1.0;
        for r in &self.records {
            extent = extent
                .max(r.x_intercept.to_f64())
                .max(r.y_intercept.to_f64());
        }
        if let Some(p) = &self.predicted {
            extent = extent.max(p.gamma1.to_f64()).max(p.gamma2.to_f64());
        }
        let extent = extent.ceil() + 0.5;
        let plot = SIZE - 2.0 * MARGIN;
        let px = |x: f64| MARGIN + x / extent * plot;
        let py = |y: f64| SIZE - MARGIN - y / extent * plot;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, "  <title>{} scaled staircases</title>", self.config);
        let _ = writeln!(
            out,
            r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
        );
        let _ = writeln!(
            out,
            r#"  <path d="M {:.4} {:.4} L {:.4} {:.4} L {:.4} {:.4}" stroke="black" fill="none"/>"#,
            px(0.0),
            py(extent),
            px(0.0),
            py(0.0),
            px(extent),
            py(0.0)
        );
        for tick in 1..=(extent.floor() as i64) {
            let t = tick as f64;
            let _ = writeln!(
                out,
                r#"  <text x="{:.4}" y="{:.4}" font-size="10" text-anchor="middle">{tick}</text>"#,
                px(t),
                py(0.0) + 14.0
            );
            let _ = writeln!(
                out,
                r#"  <text x="{:.4}" y="{:.4}" font-size="10" text-anchor="end">{tick}</text>"#,
                px(0.0) - 6.0,
                py(t) + 3.0
            );
        }
        for (i, r) in self.records.iter().enumerate() {
            let points: Vec<String> = r
                .outline
                .iter()
                .map(|[x, y]| format!("{:.4},{:.4}", px(x.to_f64()), py(y.to_f64())))
                .collect();
            let _ = writeln!(
                out,
                r#"  <polyline data-m="{}" points="{}" stroke="{}" fill="none" stroke-width="1.5"/>"#,
                r.m,
                points.join(" "),
                PALETTE[i % PALETTE.len()]
            );
        }
        if let Some(p) = &self.predicted {
            let _ = writeln!(
                out,
                r#"  <line data-gamma1="{}" data-gamma2="{}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="black" stroke-dasharray="6 4"/>"#,
                p.gamma1,
                p.gamma2,
                px(p.gamma1.to_f64()),
                py(0.0),
                px(0.0),
                py(p.gamma2.to_f64())
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InterceptCheck {
    pub m: u64,
    pub axis: &'static str,
    pub observed: Rational,
    pub predicted: Intercept,
    pub tolerance: Rational,
    /// Exact deviation when the prediction is rational.
    pub deviation: Option<Rational>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub config: PointConfig,
    pub conjectural: bool,
    pub gamma1: Intercept,
    pub gamma2: Intercept,
    pub checks: Vec<InterceptCheck>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per failing check, naming the multiplicity and the deviation.
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                let dev = c.deviation.map_or_else(
                    || format!("~{:.6}", (c.observed.to_f64() - c.predicted.to_f64()).abs()),
                    |d| d.to_string(),
                );
                format!(
                    "{} m={} {}: observed {} vs predicted {} (deviation {dev} > {})",
                    self.config, c.m, c.axis, c.observed, c.predicted, c.tolerance
                )
            })
            .collect()
    }
}

/// Checks the intercepts and colength against the predicted line along `m_list`.
///
/// Each `m` must be a multiple of the configuration's divisibility period
/// (10, 24 and 102 for six, seven and eight points).
pub fn check_convergence(config: PointConfig, m_list: &[u64]) -> Result<ConvergenceReport> {
    let (gamma1, gamma2) = theoretical_shape(config)?;
    let period = config.divisibility_period();
    if let Some(bad) = m_list.iter().find(|&&m| m % period != 0) {
        return Err(Error::Precondition(format!(
            "m = {bad} is not a multiple of {period} for {config}"
        )));
    }
    let stairs = staircases(config, m_list)?;
    let half_r = Q::new(config.r() as i64, 2);
    let r = Q::from_integer(config.r() as i64);
    let mut checks = Vec::new();
    for (&m, s) in &stairs {
        let mq = qi(m)?;
        let tol = Q::from_integer(INTERCEPT_TOLERANCE) / mq;
        for (axis, value, predicted) in [("x", s.alpha(), gamma1), ("y", s.zeta(), gamma2)] {
            let observed = qi(value)? / mq;
            checks.push(InterceptCheck {
                m,
                axis,
                observed: Rational(observed),
                predicted,
                tolerance: Rational(tol),
                deviation: predicted.deviation(observed).map(Rational),
                passed: predicted.within(observed, tol),
            });
        }
        let area = qi(colength(s)?)? / (mq * mq);
        let area_tol = r / mq;
        let dev = if area > half_r {
            area - half_r
        } else {
            half_r - area
        };
        checks.push(InterceptCheck {
            m,
            axis: "area",
            observed: Rational(area),
            predicted: Intercept::Exact(half_r),
            tolerance: Rational(area_tol),
            deviation: Some(Rational(dev)),
            passed: dev <= area_tol,
        });
    }
    Ok(ConvergenceReport {
        config,
        conjectural: config.is_conjectural(),
        gamma1,
        gamma2,
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CollinearRecord {
    pub m: u64,
    pub alpha: u64,
    pub max_generator_degree: u64,
    pub x_intercept: Rational,
    pub y_intercept: Rational,
    pub colength_over_m2: Rational,
    /// `alpha = 2m - m/l`.
    pub lowest_degree_matches: bool,
    /// Highest generator degree `= l*m`.
    pub highest_degree_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollinearReport {
    pub l: usize,
    pub records: Vec<CollinearRecord>,
    pub predicted_x_intercept: Rational,
    pub predicted_y_intercept: Rational,
    /// Area under the line through the two intercepts, `l(2 - 1/l)/2`.
    pub single_segment_area: Rational,
    /// Limit of `colength/m^2`, `(l+1)/2`.
    pub limit_area: Rational,
    pub single_segment_fails: bool,
    /// Scaled generators of the largest `m`: the computed limiting shape.
    pub corners: Vec<[Rational; 2]>,
}

impl CollinearReport {
    pub fn passed(&self) -> bool {
        self.single_segment_fails
            && self.records.iter().all(|r| {
                r.lowest_degree_matches
                    && r.highest_degree_matches
                    && r.x_intercept == self.predicted_x_intercept
                    && r.y_intercept == self.predicted_y_intercept
            })
    }
}

/// Generator degrees, intercepts and area for `l` collinear points plus one.
pub fn collinear_shape_check(l: usize, m_list: &[u64]) -> Result<CollinearReport> {
    let config = PointConfig::collinear(l)?;
    let period = config.divisibility_period();
    if let Some(bad) = m_list.iter().find(|&&m| m % period != 0) {
        return Err(Error::Precondition(format!(
            "m = {bad} is not a multiple of l(l-1) = {period}"
        )));
    }
    let stairs = staircases(config, m_list)?;
    let lq = Q::from_integer(l as i64);
    let predicted_x = Q::from_integer(2) - Q::new(1, l as i64);
    let predicted_y = lq;
    let mut records = Vec::new();
    for (&m, s) in &stairs {
        let mq = qi(m)?;
        let lowest = 2 * m - m / l as u64;
        let highest = l as u64 * m;
        records.push(CollinearRecord {
            m,
            alpha: s.alpha(),
            max_generator_degree: s.max_generator_degree(),
            x_intercept: Rational(qi(s.alpha())? / mq),
            y_intercept: Rational(qi(s.zeta())? / mq),
            colength_over_m2: Rational(qi(colength(s)?)? / (mq * mq)),
            lowest_degree_matches: s.min_generator_degree() == lowest,
            highest_degree_matches: s.max_generator_degree() == highest,
        });
    }
    let single = lq * predicted_x / 2;
    let limit = Q::new(l as i64 + 1, 2);
    let top = stairs.values().next_back().expect("nonempty list");
    Ok(CollinearReport {
        l,
        records,
        predicted_x_intercept: Rational(predicted_x),
        predicted_y_intercept: Rational(predicted_y),
        single_segment_area: Rational(single),
        limit_area: Rational(limit),
        single_segment_fails: single > limit,
        corners: top
            .generators()
            .into_iter()
            .map(|g| scale(g, top.m()))
            .collect::<Result<_>>()?,
    })
}
