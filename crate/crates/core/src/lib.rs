//! Plane covering paths for planar point sets.
//!
//! [`solve`] returns a non-crossing polygonal path with at most
//! `ceil(6n/7)` segments that covers all `n` input points. All coordinates
//! are exact rationals ([`Scalar`]); nothing is rounded.

pub mod error;
pub mod generators;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod path;
pub mod planner;
pub mod preprocess;
pub mod render;
pub mod scalar;
pub mod trace;
pub mod verifier;
pub mod window_solver;

mod search;

pub use error::Error;
pub use generators::{generate, GenKind, GenSpec};
pub use geom::{Line, Orientation, Point, Ray, Segment};
pub use io::{parse_points, write_points, PathDocument};
pub use oracle::{min_link_path, OracleMode, OracleResult};
pub use path::{prefix_bound, segment_bound, CoveringPath};
pub use planner::{solve, DegeneracyMode, OutputFormat, Solution, SolveOptions};
pub use preprocess::{Frame, PointSet};
pub use render::{to_svg, RenderSpec, TraceOverlay};
pub use scalar::Scalar;
pub use trace::{CaseId, IterationTrace, ReflectionFlags};
pub use verifier::{check_invariant_trace, verify, VerificationReport, VerifyMode};
pub use window_solver::{solve_window, WindowProblem};
