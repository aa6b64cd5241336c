//! Generic initial staircases of symbolic powers of points in the projective
//! plane, computed exactly from their Hilbert functions.
//!
//! Three arrangements are supported: up to eight general points (blow-up
//! engine over the exceptional curves), nine or more general points (the SHGH
//! formula, flagged conjectural) and `l` collinear points plus one.
//!
//! ```
//! use ginlab::{gin_staircase, PointConfig};
//!
//! let s = gin_staircase("general:6".parse::<PointConfig>().unwrap(), 10).unwrap();
//! assert_eq!((s.alpha(), s.zeta()), (24, 26));
//! ```

pub mod config;
pub mod divisor;
pub mod error;
pub mod gin;
pub mod hilbert;
pub mod limit;
pub mod verify;

pub use config::{PointConfig, Provenance};
pub use divisor::{
    canonical_class, exceptional_classes, h0, intersect, is_nef, reduce_to_nef, riemann_roch_h0,
    DivisorClass, Effectivity, EffectivityResult, Surface, TraceStep,
};
pub use error::{Error, Result};
pub use gin::{
    colength, gin_staircase, product_contained, shgh_gin_closed_form, xy_count, MonomialStaircase,
    StaircaseRecord,
};
pub use hilbert::{alpha, hilbert_fn, hilbert_table, nef_threshold, Flagged, HilbertEngine};
pub use limit::{
    check_convergence, collinear_shape_check, shape_report, theoretical_shape, ConvergenceReport,
    Intercept, Rational, ShapeReport,
};
pub use verify::{run_suite, VerifyReport};
