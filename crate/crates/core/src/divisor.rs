//! Divisor classes on the blow-up of the plane at a handful of points.
//!
//! A class is stored as `(d; a_1, ..., a_r)` and stands for `d*e_0 - sum a_i*e_i`,
//! so the fat-point divisors `F_t = t*L - m*(E_1 + ... + E_r)` have nonnegative
//! entries. The pairing is `e_0^2 = 1`, `e_i^2 = -1`, all other products zero.
//!
//! `h^0` of an arbitrary class is computed by peeling off negative curves that
//! are forced into the base locus until either a nef class remains (whose `h^0`
//! is given by Riemann-Roch) or the degree turns negative.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config::PointConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    d: i64,
    mults: Vec<i64>,
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b)
        .ok_or(Error::Overflow("divisor arithmetic"))
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or(Error::Overflow("divisor arithmetic"))
}

impl DivisorClass {
    pub fn new(d: i64, mults: Vec<i64>) -> Self {
        DivisorClass { d, mults }
    }

    /// The class `e_0` of a general line.
    pub fn line(r: usize) -> Self {
        DivisorClass::new(1, vec![0; r])
    }

    /// The class `e_i` of the exceptional curve over the `i`-th point (0-based).
    pub fn exceptional(i: usize, r: usize) -> Self {
        let mut mults = vec![0; r];
        mults[i] = -1;
        DivisorClass::new(0, mults)
    }

    /// `t*e_0 - m*(e_1 + ... + e_r)`.
    pub fn uniform(t: i64, m: i64, r: usize) -> Self {
        DivisorClass::new(t, vec![m; r])
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn r(&self) -> usize {
        self.mults.len()
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.mults.iter().all(|&a| a == 0)
    }

    fn check_same_surface(&self, other: &DivisorClass) -> Result<()> {
        if self.r() != other.r() {
            return Err(Error::DimensionMismatch {
                left: self.r(),
                right: other.r(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check_same_surface(other)?;
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(&a, &b)| add(a, b))
            .collect::<Result<_>>()?;
        Ok(DivisorClass::new(add(self.d, other.d)?, mults))
    }

    /// `self - k * other`.
    pub fn checked_sub_scaled(&self, other: &DivisorClass, k: i64) -> Result<DivisorClass> {
        self.check_same_surface(other)?;
        let sub = |a: i64, b: i64| -> Result<i64> {
            a.checked_sub(mul(b, k)?)
                .ok_or(Error::Overflow("divisor arithmetic"))
        };
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(&a, &b)| sub(a, b))
            .collect::<Result<_>>()?;
        Ok(DivisorClass::new(sub(self.d, other.d)?, mults))
    }

    pub fn checked_scale(&self, k: i64) -> Result<DivisorClass> {
        let mults = self
            .mults
            .iter()
            .map(|&a| mul(a, k))
            .collect::<Result<_>>()?;
        Ok(DivisorClass::new(mul(self.d, k)?, mults))
    }

    pub fn self_intersection(&self) -> Result<i64> {
        intersect(self, self)
    }

    /// Same class with the exceptional coordinates permuted: `result[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> DivisorClass {
        DivisorClass::new(self.d, perm.iter().map(|&j| self.mults[j]).collect())
    }

    /// Basis notation, e.g. `6e0 - 3e1 - 2e2 - ... - 2e8`.
    pub fn to_basis_string(&self) -> String {
        let mut out = match self.d {
            0 => String::new(),
            1 => "e0".to_string(),
            -1 => "-e0".to_string(),
            d => format!("{d}e0"),
        };
        for (i, &a) in self.mults.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let coeff = -a;
            let sign = if coeff < 0 { "-" } else { "+" };
            let abs = coeff.abs();
            if out.is_empty() {
                if coeff < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if abs != 1 {
                out.push_str(&abs.to_string());
            }
            out.push_str(&format!("e{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.d)?;
        for (i, a) in self.mults.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { " " } else { "," })?;
        }
        write!(f, ")")
    }
}

/// Intersection product `A.d*B.d - sum A.a_i*B.a_i`.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    a.check_same_surface(b)?;
    let mut acc = mul(a.d, b.d)?;
    for (&x, &y) in a.mults.iter().zip(&b.mults) {
        acc = acc
            .checked_sub(mul(x, y)?)
            .ok_or(Error::Overflow("intersection product"))?;
    }
    Ok(acc)
}

/// `K_X = -3e_0 + e_1 + ... + e_r`, i.e. `(-3; -1, ..., -1)`.
pub fn canonical_class(r: usize) -> Result<DivisorClass> {
    if !(2..=65).contains(&r) {
        return Err(Error::Precondition(format!(
            "canonical class needs 2 <= r <= 65, got {r}"
        )));
    }
    Ok(DivisorClass::new(-3, vec![-1; r]))
}

// Exceptional classes on the blow-up at eight general points, one per symmetry type.
// The fifth entry is 4e0 - 2(e1+e2+e3) - (e4+...+e8).
const TEMPLATES: [(i64, [i64; 8]); 7] = [
    (0, [-1, 0, 0, 0, 0, 0, 0, 0]),
    (1, [1, 1, 0, 0, 0, 0, 0, 0]),
    (2, [1, 1, 1, 1, 1, 0, 0, 0]),
    (3, [2, 1, 1, 1, 1, 1, 1, 0]),
    (4, [2, 2, 2, 1, 1, 1, 1, 1]),
    (5, [2, 2, 2, 2, 2, 2, 1, 1]),
    (6, [3, 2, 2, 2, 2, 2, 2, 2]),
];

/// Advances `v` to the next lexicographic permutation; false once wrapped.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn general_position_classes(r: usize) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for (d, template) in TEMPLATES {
        let support: Vec<i64> = template.iter().copied().filter(|&a| a != 0).collect();
        if support.len() > r {
            continue;
        }
        let mut row = support;
        row.resize(r, 0);
        row.sort_unstable();
        loop {
            out.push(DivisorClass::new(d, row.clone()));
            if !next_permutation(&mut row) {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn collinear_classes(l: usize) -> Vec<DivisorClass> {
    let r = l + 1;
    let mut out: Vec<DivisorClass> = (0..r).map(|i| DivisorClass::exceptional(i, r)).collect();
    let mut line = vec![1; l];
    line.push(0);
    out.push(DivisorClass::new(1, line));
    for i in 0..l {
        let mut mults = vec![0; r];
        mults[i] = 1;
        mults[l] = 1;
        out.push(DivisorClass::new(1, mults));
    }
    out.sort();
    out
}

fn class_cache() -> &'static Mutex<HashMap<PointConfig, Arc<[DivisorClass]>>> {
    static CACHE: OnceLock<Mutex<HashMap<PointConfig, Arc<[DivisorClass]>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached_classes(config: PointConfig) -> Result<Arc<[DivisorClass]>> {
    config.validate()?;
    let build = move || match config {
        PointConfig::GeneralPosition { r } => general_position_classes(r),
        PointConfig::CollinearPlusOne { l } => collinear_classes(l),
        PointConfig::GeneralShgh { .. } => unreachable!("rejected below"),
    };
    if !config.has_finite_classes() {
        return Err(Error::UnsupportedConfig {
            op: "exceptional_classes",
            config,
        });
    }
    Ok(cache_get_or_insert(config, build))
}

fn cache_get_or_insert(
    config: PointConfig,
    build: impl FnOnce() -> Vec<DivisorClass>,
) -> Arc<[DivisorClass]> {
    let mut cache = class_cache().lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry(config)
        .or_insert_with(|| build().into())
        .clone()
}

/// The negative curves that govern nefness on the blow-up, sorted by `(d, mults)`.
///
/// For general position these are the (-1)-curves. For `l` collinear points plus
/// one, the list is the `E_i`, the line through the collinear points (which has
/// self-intersection `1 - l`) and the lines joining the extra point to each
/// collinear one.
pub fn exceptional_classes(config: PointConfig) -> Result<Vec<DivisorClass>> {
    Ok(cached_classes(config)?.to_vec())
}

/// Enumerates every `(d; a)` with `0 <= d <= 6`, `-1 <= a_i <= 3`, `C^2 = -1` and
/// `C.K = -1`. On at most eight general points these are exactly the exceptional classes.
pub fn numerical_exceptional_classes(r: usize) -> Result<Vec<DivisorClass>> {
    if !(2..=8).contains(&r) {
        return Err(Error::Precondition(format!(
            "brute-force enumeration needs 2 <= r <= 8, got {r}"
        )));
    }
    let mut out = Vec::new();
    let mut a = vec![-1i64; r];
    for d in 0..=6i64 {
        a.iter_mut().for_each(|x| *x = -1);
        loop {
            let sum: i64 = a.iter().sum();
            let sq: i64 = a.iter().map(|x| x * x).sum();
            // C^2 = d^2 - sq = -1 and C.K = -3d + sum = -1
            if d * d - sq == -1 && sum - 3 * d == -1 {
                out.push(DivisorClass::new(d, a.clone()));
            }
            // odometer over [-1, 3]^r
            let mut i = 0;
            while i < r && a[i] == 3 {
                a[i] = -1;
                i += 1;
            }
            if i == r {
                break;
            }
            a[i] += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// One subtraction recorded by [`reduce_to_nef`]: `class` removed `times` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub class: DivisorClass,
    pub times: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Effectivity {
    Effective {
        h0: u64,
        nef_remainder: DivisorClass,
    },
    /// `witness` has negative degree, so it pairs negatively with the nef class `e_0`.
    NotEffective { witness: DivisorClass },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivityResult {
    pub status: Effectivity,
    pub trace: Vec<TraceStep>,
}

impl EffectivityResult {
    pub fn h0(&self) -> u64 {
        match &self.status {
            Effectivity::Effective { h0, .. } => *h0,
            Effectivity::NotEffective { .. } => 0,
        }
    }

    pub fn is_effective(&self) -> bool {
        matches!(self.status, Effectivity::Effective { .. })
    }

    /// Total number of single-class subtractions in the trace.
    pub fn subtraction_count(&self) -> i64 {
        self.trace.iter().map(|s| s.times).sum()
    }
}

/// A blow-up surface with its cached list of negative classes.
#[derive(Debug, Clone)]
pub struct Surface {
    config: PointConfig,
    classes: Arc<[DivisorClass]>,
    canonical: DivisorClass,
}

impl Surface {
    pub fn new(config: PointConfig) -> Result<Surface> {
        let classes = cached_classes(config)?;
        Ok(Surface {
            config,
            classes,
            canonical: canonical_class(config.r())?,
        })
    }

    pub fn config(&self) -> PointConfig {
        self.config
    }

    pub fn r(&self) -> usize {
        self.config.r()
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    fn check(&self, f: &DivisorClass) -> Result<()> {
        if f.r() != self.r() {
            return Err(Error::DimensionMismatch {
                left: f.r(),
                right: self.r(),
            });
        }
        Ok(())
    }

    /// The class with the most negative pairing against `f`, if any pairing is negative.
    /// Ties go to the smallest class in `(d, mults)` order.
    fn most_negative(&self, f: &DivisorClass) -> Result<Option<(&DivisorClass, i64)>> {
        let mut best: Option<(&DivisorClass, i64)> = None;
        for c in self.classes.iter() {
            let p = intersect(f, c)?;
            if p < 0 && best.is_none_or(|(_, q)| p < q) {
                best = Some((c, p));
            }
        }
        Ok(best)
    }

    pub fn is_nef(&self, f: &DivisorClass) -> Result<bool> {
        self.check(f)?;
        Ok(self.most_negative(f)?.is_none())
    }

    /// `(F^2 - F.K)/2 + 1` for nef `F`.
    pub fn riemann_roch_h0(&self, f: &DivisorClass) -> Result<u64> {
        if !self.is_nef(f)? {
            return Err(Error::NotNef(f.to_string()));
        }
        self.euler_characteristic(f).and_then(|chi| {
            u64::try_from(chi)
                .map_err(|_| Error::Precondition(format!("nef class {f} has chi = {chi}")))
        })
    }

    fn euler_characteristic(&self, f: &DivisorClass) -> Result<i64> {
        let numerator = intersect(f, f)?
            .checked_sub(intersect(f, &self.canonical)?)
            .ok_or(Error::Overflow("Riemann-Roch"))?;
        if numerator % 2 != 0 {
            return Err(Error::ParityViolation(numerator));
        }
        add(numerator / 2, 1)
    }

    pub fn reduce_to_nef(&self, f: &DivisorClass) -> Result<EffectivityResult> {
        self.check(f)?;
        let r = self.r();
        let mut f = f.clone();
        let mut trace = Vec::new();
        let negative_total: i64 = f.mults.iter().filter(|&&a| a < 0).map(|&a| -a).sum();
        let guard = (f.d.max(0) + 2)
            .saturating_mul(self.classes.len() as i64 + 1)
            .saturating_add(negative_total);
        let mut iterations = 0i64;
        loop {
            iterations += 1;
            if iterations > guard {
                return Err(Error::GuardExceeded("reduce_to_nef"));
            }
            // A negative a_i means F.E_i < 0, so E_i splits off -a_i times.
            for i in 0..r {
                let a = f.mults[i];
                if a < 0 {
                    trace.push(TraceStep {
                        class: DivisorClass::exceptional(i, r),
                        times: -a,
                    });
                    f.mults[i] = 0;
                }
            }
            if f.d < 0 {
                return Ok(EffectivityResult {
                    status: Effectivity::NotEffective { witness: f },
                    trace,
                });
            }
            let Some((c, pairing)) = self.most_negative(&f)? else {
                let h0 = self.riemann_roch_h0(&f)?;
                return Ok(EffectivityResult {
                    status: Effectivity::Effective {
                        h0,
                        nef_remainder: f,
                    },
                    trace,
                });
            };
            // Each removal of C raises F.C by -C^2; C stays fixed while F.C < 0.
            let drop = -c.self_intersection()?;
            if drop <= 0 {
                return Err(Error::Precondition(format!(
                    "class {c} has nonnegative self-intersection"
                )));
            }
            let times = (-pairing + drop - 1) / drop;
            f = f.checked_sub_scaled(c, times)?;
            trace.push(TraceStep {
                class: c.clone(),
                times,
            });
        }
    }

    pub fn h0(&self, f: &DivisorClass) -> Result<u64> {
        Ok(self.reduce_to_nef(f)?.h0())
    }
}

pub fn is_nef(f: &DivisorClass, config: PointConfig) -> Result<bool> {
    Surface::new(config)?.is_nef(f)
}

pub fn riemann_roch_h0(f: &DivisorClass, config: PointConfig) -> Result<u64> {
    Surface::new(config)?.riemann_roch_h0(f)
}

pub fn reduce_to_nef(f: &DivisorClass, config: PointConfig) -> Result<EffectivityResult> {
    Surface::new(config)?.reduce_to_nef(f)
}

pub fn h0(f: &DivisorClass, config: PointConfig) -> Result<u64> {
    Surface::new(config)?.h0(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn general(r: usize) -> PointConfig {
        PointConfig::general(r).unwrap()
    }

    fn dc(d: i64, mults: &[i64]) -> DivisorClass {
        DivisorClass::new(d, mults.to_vec())
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect(&dc(1, &[0, 0]), &dc(1, &[0, 0])).unwrap(), 1);
        assert_eq!(
            intersect(
                &dc(2, &[1, 1, 1, 1, 1, 0]),
                &DivisorClass::uniform(24, 10, 6)
            )
            .unwrap(),
            -2
        );
        let k7 = canonical_class(7).unwrap();
        assert_eq!(intersect(&dc(3, &[2, 1, 1, 1, 1, 1, 1]), &k7).unwrap(), -1);
    }

    #[test]
    fn intersect_dimension_mismatch() {
        let err = intersect(&dc(1, &[0, 0]), &dc(1, &[0, 0, 0])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn intersect_overflow_is_an_error() {
        let big = dc(i64::MAX, &[0, 0]);
        assert!(matches!(intersect(&big, &big), Err(Error::Overflow(_))));
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(canonical_class(6).unwrap(), dc(-3, &[-1; 6]));
        let k8 = canonical_class(8).unwrap();
        assert_eq!(intersect(&k8, &k8).unwrap(), 1);
        assert_eq!(intersect(&k8, &DivisorClass::line(8)).unwrap(), -3);
        assert!(canonical_class(1).is_err());
    }

    #[test]
    fn class_counts_and_numerics() {
        let expected = [3, 6, 10, 16, 27, 56, 240];
        for (r, &n) in (2..=8).zip(&expected) {
            let classes = exceptional_classes(general(r)).unwrap();
            assert_eq!(classes.len(), n, "r = {r}");
            let k = canonical_class(r).unwrap();
            for c in &classes {
                assert_eq!(intersect(c, c).unwrap(), -1, "{c}");
                assert_eq!(intersect(c, &k).unwrap(), -1, "{c}");
            }
        }
    }

    #[test]
    fn r2_classes_are_e1_e2_and_the_line() {
        let classes = exceptional_classes(general(2)).unwrap();
        assert_eq!(
            classes,
            vec![dc(0, &[-1, 0]), dc(0, &[0, -1]), dc(1, &[1, 1])]
        );
    }

    #[test]
    fn r8_contains_sextic_with_triple_point() {
        let classes = exceptional_classes(general(8)).unwrap();
        assert!(classes.contains(&dc(6, &[3, 2, 2, 2, 2, 2, 2, 2])));
        assert!(classes.contains(&dc(4, &[2, 2, 2, 1, 1, 1, 1, 1])));
    }

    #[test]
    fn templates_agree_with_numeric_enumeration() {
        for r in 2..=8 {
            assert_eq!(
                exceptional_classes(general(r)).unwrap(),
                numerical_exceptional_classes(r).unwrap(),
                "r = {r}"
            );
        }
    }

    #[test]
    fn collinear_classes_listing() {
        let classes = exceptional_classes(PointConfig::collinear(3).unwrap()).unwrap();
        assert_eq!(classes.len(), 8);
        assert!(classes.contains(&dc(1, &[1, 1, 1, 0])));
        assert!(classes.contains(&dc(1, &[0, 1, 0, 1])));
        assert_eq!(
            intersect(&dc(1, &[1, 1, 1, 0]), &dc(1, &[1, 1, 1, 0])).unwrap(),
            -2
        );
    }

    #[test]
    fn shgh_has_no_class_list() {
        let err = exceptional_classes(PointConfig::shgh(9).unwrap()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedConfig { .. }));
    }

    #[test]
    fn nef_examples() {
        assert!(is_nef(&dc(5, &[2; 6]), general(6)).unwrap());
        assert!(!is_nef(&DivisorClass::uniform(24, 10, 6), general(6)).unwrap());
        for r in 2..=8 {
            assert!(is_nef(&DivisorClass::line(r), general(r)).unwrap());
        }
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(riemann_roch_h0(&dc(0, &[0; 6]), general(6)).unwrap(), 1);
        assert_eq!(riemann_roch_h0(&dc(25, &[10; 6]), general(6)).unwrap(), 21);
        // binomial form: C(t+2,2) - r*C(m+1,2)
        let f = DivisorClass::uniform(17, 6, 8);
        assert_eq!(riemann_roch_h0(&f, general(8)).unwrap(), 171 - 8 * 21);
        assert!(matches!(
            riemann_roch_h0(&DivisorClass::uniform(24, 10, 6), general(6)),
            Err(Error::NotNef(_))
        ));
    }

    #[test]
    fn reduce_six_points_subtracts_two_cycles() {
        let res = reduce_to_nef(&DivisorClass::uniform(24, 10, 6), general(6)).unwrap();
        assert_eq!(
            res.status,
            Effectivity::Effective {
                h0: 1,
                nef_remainder: dc(0, &[0; 6])
            }
        );
        assert_eq!(res.subtraction_count(), 12);
        let mut cycle_sum = dc(0, &[0; 6]);
        for step in &res.trace {
            assert_eq!(step.class.degree(), 2);
            cycle_sum = cycle_sum
                .checked_add(&step.class.checked_scale(step.times).unwrap())
                .unwrap();
        }
        // 2 cycles of Y = 12e0 - 5(e1+...+e6)
        assert_eq!(cycle_sum, dc(12, &[5; 6]).checked_scale(2).unwrap());
    }

    #[test]
    fn reduce_seven_points_subtracts_cubic_cycles() {
        let res = reduce_to_nef(&DivisorClass::uniform(63, 24, 7), general(7)).unwrap();
        assert_eq!(res.h0(), 1);
        let mut total = dc(0, &[0; 7]);
        for step in &res.trace {
            assert_eq!(step.class.degree(), 3);
            total = total
                .checked_add(&step.class.checked_scale(step.times).unwrap())
                .unwrap();
        }
        assert_eq!(total, dc(21, &[8; 7]).checked_scale(3).unwrap());
    }

    #[test]
    fn reduce_below_alpha_is_not_effective() {
        let res = reduce_to_nef(&DivisorClass::uniform(23, 10, 6), general(6)).unwrap();
        assert!(!res.is_effective());
        match res.status {
            Effectivity::NotEffective { witness } => assert!(witness.degree() < 0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn h0_examples() {
        assert_eq!(
            h0(&DivisorClass::uniform(24, 10, 6), general(6)).unwrap(),
            1
        );
        assert_eq!(
            h0(&DivisorClass::uniform(288, 102, 8), general(8)).unwrap(),
            1
        );
        let clamped = h0(&dc(24, &[10, 10, 10, 10, 10, 0]), general(6)).unwrap();
        let negative = h0(&dc(24, &[10, 10, 10, 10, 10, -2]), general(6)).unwrap();
        assert_eq!(clamped, negative);
    }

    #[test]
    fn collinear_batches_respect_self_intersection() {
        // l^4 * (lines through p4)^2 has degree 10 and multiplicity 6 everywhere.
        let h = h0(
            &DivisorClass::uniform(10, 6, 4),
            PointConfig::collinear(3).unwrap(),
        )
        .unwrap();
        assert_eq!(h, 1);
    }

    #[test]
    fn basis_string() {
        assert_eq!(dc(6, &[3, 2, 2]).to_basis_string(), "6e0 - 3e1 - 2e2 - 2e3");
        assert_eq!(dc(0, &[-1, 0]).to_basis_string(), "e1");
        assert_eq!(dc(0, &[0, 0]).to_basis_string(), "0");
        assert_eq!(dc(1, &[1, 1, 0]).to_basis_string(), "e0 - e1 - e2");
        assert_eq!(dc(-3, &[-1, -1]).to_basis_string(), "-3e0 + e1 + e2");
    }

    #[test]
    fn next_permutation_counts() {
        let mut v = vec![0, 0, 1, 1];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
