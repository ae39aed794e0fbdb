//! Exhaustive isogeny-class enumeration, table regeneration and bound scans.

pub mod classes;
pub mod scan;
pub mod tables;

pub use classes::{
    all_weil_classes, enumerate_classes, enumerate_classes_bounded, weil_window, ClassFilter,
    DEFAULT_Q_BOUND,
};
pub use scan::{bound_scan, Falsification, QScan, ScanReport, Witness};
pub use tables::{render_tsv, reproduce_table, square_counts, tsv_header, TableId, TableRow, SQUARE_COUNT_QS};
