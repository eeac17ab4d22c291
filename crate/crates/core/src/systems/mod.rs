//! T- and Y-systems along the period-2 orbit: forward mutation points,
//! exponent tabulation, closed-form extraction, iteration, periodic
//! quantities and their reductions.

pub mod expr;
pub mod field;
pub mod iterate;
pub mod points;
pub mod reduce;
pub mod search;
pub mod spec;
pub mod tz;

pub use expr::{builtin, parse_expr, verify_periodic, Expr, Period, PeriodicQuantityTemplate, PeriodicReport};
pub use field::{Field, Fp};
pub use iterate::{iterate_system, window_of, SeqTrace, ZSeqs};
pub use points::{forward_points, g_exponent, h_exponent, tabulate_system, MutationPointTable, OrbitMatrices};
pub use reduce::{somos_reduce, ReductionReport, SomosFamily};
pub use search::{template_search, FoundTemplate, TemplateSearch};
pub use spec::{extract_system, Equation, Kind, Seq, Slot, SystemSpec};
pub use tz::{check_tz_condition, tz_substitution, TzReport};
