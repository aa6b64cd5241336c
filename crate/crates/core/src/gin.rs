//! Reverse-lex generic initial ideals of symbolic powers, as staircases in `x, y`.
//!
//! No minimal generator of `gin(I^(m))` involves `z`, so the ideal is described by
//! its generators `x^alpha, x^(alpha-1) y^lambda_(alpha-1), ..., y^lambda_0`. Degree
//! by degree its `x, y`-part is a top segment in descending `x`-exponent whose length
//! is the first difference of the Hilbert function. That is all we need to rebuild it.

use serde::Serialize;

use crate::config::{PointConfig, Provenance};
use crate::error::{Error, Result};
use crate::hilbert::{
    alpha_shgh, expected_dimension, fat_point_conditions, HilbertEngine, MAX_DEGREE,
};

/// Monomial `x^a y^b` as its exponent pair.
pub type Exponent = (u64, u64);

/// Degrees past the first full segment that must also be full.
const FULLNESS_WINDOW: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialStaircase {
    config: PointConfig,
    m: u64,
    alpha: u64,
    lambdas: Vec<u64>,
}

impl MonomialStaircase {
    /// Builds a staircase, checking `lambda_0 > ... > lambda_(alpha-1) >= 1`.
    pub fn new(config: PointConfig, m: u64, lambdas: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        if lambdas.is_empty() {
            return Err(Error::Staircase("a staircase needs alpha >= 1".into()));
        }
        if lambdas.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Staircase(format!(
                "y-exponents are not strictly decreasing: {lambdas:?}"
            )));
        }
        if *lambdas.last().unwrap() == 0 {
            return Err(Error::Staircase(
                "lambda_(alpha-1) must be at least 1".into(),
            ));
        }
        let alpha = lambdas.len() as u64;
        Ok(MonomialStaircase {
            config,
            m,
            alpha,
            lambdas,
        })
    }

    pub fn config(&self) -> PointConfig {
        self.config
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Smallest power of `x` in the ideal.
    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// Smallest power of `y` in the ideal, `lambda_0`.
    pub fn zeta(&self) -> u64 {
        self.lambdas[0]
    }

    /// `lambda_i` for `i = 0..alpha`.
    pub fn lambdas(&self) -> &[u64] {
        &self.lambdas
    }

    pub fn provenance(&self) -> Provenance {
        self.config.provenance()
    }

    pub fn is_conjectural(&self) -> bool {
        self.config.is_conjectural()
    }

    /// Minimal generators sorted by descending `x`-exponent, starting with `x^alpha`.
    pub fn generators(&self) -> Vec<Exponent> {
        std::iter::once((self.alpha, 0))
            .chain((0..self.alpha).rev().map(|i| (i, self.lambdas[i as usize])))
            .collect()
    }

    pub fn contains(&self, (a, b): Exponent) -> bool {
        a >= self.alpha || b >= self.lambdas[a as usize]
    }

    /// Number of `x, y` monomials outside the ideal.
    pub fn complement_size(&self) -> u64 {
        self.lambdas.iter().sum()
    }

    pub fn min_generator_degree(&self) -> u64 {
        self.generators().iter().map(|(a, b)| a + b).min().unwrap()
    }

    pub fn max_generator_degree(&self) -> u64 {
        self.generators().iter().map(|(a, b)| a + b).max().unwrap()
    }

    /// Outline of the complement from `(0, zeta)` to `(alpha, 0)`, alternating right and down steps.
    pub fn outline(&self) -> Vec<Exponent> {
        let mut pts = vec![(0, self.lambdas[0])];
        for i in 0..self.alpha {
            let here = self.lambdas[i as usize];
            let next = self.lambdas.get(i as usize + 1).copied().unwrap_or(0);
            pts.push((i + 1, here));
            pts.push((i + 1, next));
        }
        pts
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&StaircaseRecord::from_staircase(self)?)
            .map_err(|e| Error::Staircase(e.to_string()))
    }
}

/// Serialized form of a staircase; field order is part of the output format.
#[derive(Debug, Clone, Serialize)]
pub struct StaircaseRecord {
    pub config: PointConfig,
    pub m: u64,
    pub alpha: u64,
    pub lambdas: Vec<u64>,
    pub generators: Vec<[u64; 2]>,
    pub colength: u64,
    pub conjectural: bool,
    pub provenance: Provenance,
}

impl StaircaseRecord {
    pub fn from_staircase(s: &MonomialStaircase) -> Result<Self> {
        Ok(StaircaseRecord {
            config: s.config,
            m: s.m,
            alpha: s.alpha,
            lambdas: s.lambdas.clone(),
            generators: s.generators().into_iter().map(|(a, b)| [a, b]).collect(),
            colength: colength(s)?,
            conjectural: s.is_conjectural(),
            provenance: s.provenance(),
        })
    }
}

/// Number of degree-`t` monomials of `gin(I^(m))` in `x` and `y` alone: `H(t) - H(t-1)`.
pub fn xy_count(config: PointConfig, m: u64, t: u64) -> Result<u64> {
    xy_count_with(&HilbertEngine::new(config)?, m, t)
}

fn xy_count_with(engine: &HilbertEngine, m: u64, t: u64) -> Result<u64> {
    let k = engine.difference(m, t)?;
    if k > t + 1 {
        return Err(Error::Staircase(format!(
            "{k} monomials of degree {t} in x, y exceeds the {} available",
            t + 1
        )));
    }
    Ok(k)
}

/// Reconstructs the staircase from Hilbert-function first differences and Borel-fixedness.
pub fn gin_staircase(config: PointConfig, m: u64) -> Result<MonomialStaircase> {
    let engine = HilbertEngine::new(config)?;
    gin_staircase_with(&engine, m)
}

pub fn gin_staircase_with(engine: &HilbertEngine, m: u64) -> Result<MonomialStaircase> {
    let alpha = engine.alpha(m)?;
    if alpha > MAX_DEGREE {
        return Err(Error::GuardExceeded("staircase size"));
    }
    if alpha == 0 {
        return Err(Error::Staircase("alpha(m) = 0 for positive m".into()));
    }
    let guard = alpha + 4 * engine.alpha_guard(m)? + 8;
    // counts[j] = segment length in degree alpha + j
    let mut counts: Vec<u64> = Vec::new();
    let mut full_at = None;
    let mut t = alpha;
    loop {
        if t > guard {
            return Err(Error::GuardExceeded("staircase fullness search"));
        }
        let k = xy_count_with(engine, m, t)?;
        if let Some(&prev) = counts.last() {
            // x*segment and y*segment of degree t-1 lie in degree t
            if prev > 0 && k < (prev + 1).min(t + 1) {
                return Err(Error::Staircase(format!(
                    "segment of length {k} in degree {t} cannot contain the {prev} monomials from degree {} times x and y",
                    t - 1
                )));
            }
        } else if k == 0 {
            return Err(Error::Staircase(format!(
                "H(alpha) = H(alpha-1) at alpha = {alpha}"
            )));
        }
        counts.push(k);
        match full_at {
            None if k == t + 1 => full_at = Some(t),
            Some(first) if k != t + 1 => {
                return Err(Error::Staircase(format!(
                    "segment is full in degree {first} but not in degree {t}"
                )));
            }
            _ => {}
        }
        if matches!(full_at, Some(first) if t >= first + FULLNESS_WINDOW) {
            break;
        }
        t += 1;
    }
    let full = full_at.expect("loop exits only after a full segment");
    let segment = |t: u64| -> u64 {
        if t < alpha {
            0
        } else if t >= full {
            t + 1
        } else {
            counts[(t - alpha) as usize]
        }
    };
    // x^i y^j lies in degree i+j iff j < segment(i+j)
    let lambdas = (0..alpha)
        .map(|i| {
            (alpha - i..=full - i)
                .find(|&j| segment(i + j) > j)
                .expect("every column is bounded by the full degree")
        })
        .collect();
    MonomialStaircase::new(engine.config(), m, lambdas)
}

/// Staircase for `r >= 9` straight from `alpha` and `eta = H(alpha)` under SHGH.
pub fn shgh_gin_closed_form(r: usize, m: u64) -> Result<MonomialStaircase> {
    let alpha = alpha_shgh(r, m)?;
    if alpha > MAX_DEGREE {
        return Err(Error::GuardExceeded("staircase size"));
    }
    let eta = expected_dimension(r, m, alpha)?;
    if eta < 1 || eta > alpha as i128 + 1 {
        return Err(Error::Staircase(format!(
            "eta = {eta} outside [1, alpha+1] at alpha = {alpha}"
        )));
    }
    let eta = eta as u64;
    // Degree-alpha generators are x^i y^(alpha-i) for i > alpha - eta; the rest sit in degree alpha+1.
    let lambdas = (0..alpha)
        .map(|i| {
            if eta == alpha + 1 || i + eta > alpha {
                alpha - i
            } else {
                alpha + 1 - i
            }
        })
        .collect();
    MonomialStaircase::new(PointConfig::shgh(r)?, m, lambdas)
}

/// Colength of the staircase, checked against `r*m*(m+1)/2`.
pub fn colength(s: &MonomialStaircase) -> Result<u64> {
    let computed = s.complement_size();
    let expected = fat_point_conditions(s.config.r(), s.m)?;
    if computed as u128 != expected {
        return Err(Error::Staircase(format!(
            "colength {computed} differs from r*m(m+1)/2 = {expected} for {} at m = {}",
            s.config, s.m
        )));
    }
    Ok(computed)
}

/// Checks `left * right ⊆ target` on generators; returns the first offending pair.
pub fn product_contained(
    left: &MonomialStaircase,
    right: &MonomialStaircase,
    target: &MonomialStaircase,
) -> std::result::Result<(), (Exponent, Exponent)> {
    let right_gens = right.generators();
    for g in left.generators() {
        for &h in &right_gens {
            if !target.contains((g.0 + h.0, g.1 + h.1)) {
                return Err((g, h));
            }
        }
    }
    Ok(())
}
