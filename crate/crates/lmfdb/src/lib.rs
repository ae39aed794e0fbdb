//! Fetching genus-2 isogeny classes from the LMFDB `av_fq_isog` API, with a
//! content-addressed on-disk cache, and reconciling them against the local
//! enumeration.

pub mod client;
pub mod error;
pub mod record;
pub mod reconcile;
pub mod store;

pub use client::{bundled_fixtures_dir, Fetched, LmfdbClient, LmfdbConfig, Query, Source};
pub use error::{LmfdbError, Result};
pub use record::LmfdbRecord;
pub use reconcile::{reconcile, reconcile_summaries, ClassSummary, Mismatch, Reconciliation};
