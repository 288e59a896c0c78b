//! Local C1 piecewise polynomial curves of variable degree and nodal
//! derivative estimation.
//!
//! Given data `(tau_i, F_i)`, `i = 1..N`, one secondary knot `x_i` is placed
//! inside each data interval. Between consecutive secondary knots the curve
//! is a cubic (quadratic on uniform midpoint grids) matching blended chord
//! values and chord slopes at both ends. No system of equations is solved;
//! every piece depends only on three neighbouring data points.
//!
//! Knot numbering is 1-based throughout: primary knots `1..=N`, secondary
//! knots `2..=N`, segments and interior knots `2..=N-1`.
//!
//! ```
//! use varcurve_core::{build_curve, estimate_at_knot, KnotPlacement, PrimaryGrid};
//!
//! let grid = PrimaryGrid::new(vec![0.0, 0.4, 1.0, 1.7], vec![0.0, 0.16, 1.0, 2.89]).unwrap();
//! let curve = build_curve(&grid, &KnotPlacement::clamped(grid.len())).unwrap();
//! assert_eq!(curve.value(0.0).unwrap(), 0.0);
//! let est = estimate_at_knot(&curve, 2).unwrap();
//! assert!((est.f2_est - 2.0).abs() < 1e-10);
//! ```

pub mod convergence;
pub mod curve;
pub mod error;
pub mod estimators;
pub mod grid;

pub use curve::{build_curve, build_segment, chord_data, ChordData, PiecewiseCurve, Segment};
pub use error::{CurveError, Result};
pub use estimators::{
    compute_c1, compute_c2, estimate_all, estimate_at_knot, KnotDerivativeEstimate, KnotGeometry,
};
pub use grid::{build_secondary_grid, placement_from_knots, KnotPlacement, PrimaryGrid, SecondaryGrid};
