//! Scene parsing, the analysis pipeline, deterministic reports, SVG link
//! diagrams, and the floating-point sampling oracle.

pub mod oracle;
pub mod report;
pub mod scene;
pub mod svg;
