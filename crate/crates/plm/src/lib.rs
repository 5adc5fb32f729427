//! The I/O layer over the core model library: CSV ingestion and emission,
//! JSON and table serialization, SVG plotting, and the `plm` command-line
//! surface. Everything compute-shaped lives in `plm-core`; this crate only
//! moves bytes in and out.

pub mod cli;
pub mod csv;
pub mod fmt;
pub mod json;
pub mod plot;
pub mod table;
