//! File formats, bundled models, reports and command implementations on top
//! of `logsurf-core`.

pub mod assignment;
pub mod bundled;
pub mod commands;
pub mod format;
pub mod report;

pub use assignment::load_assignment;
pub use format::{load_model, save_model, ParseError};
pub use report::{Report, Status};
