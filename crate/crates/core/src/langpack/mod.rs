//! Bundled object languages.

pub mod stlc;
