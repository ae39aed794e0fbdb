//! Abelian surfaces over finite fields: isogeny classes, the existence
//! filter and the Brauer group invariants.

pub mod existence;
pub mod isogeny;
pub mod padic;
pub mod report;
pub mod split;

pub use existence::{classify, elliptic_brauer_order, SurfaceKind};
pub use isogeny::{
    make_isogeny_class, p2_polynomial, s1_bound, s2_range, weil_window_violation, ExistenceStatus,
    IsogenyClass,
};
pub use report::{
    compute_report, resolve_br_det, rho2_brdet, square_candidates, BrauerReport, Resolution,
    ResolutionMethod,
};
pub use split::{split_elliptic, split_traces, waterhouse_admissible, EllipticSplit};
