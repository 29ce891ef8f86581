pub mod format;
pub mod gen;
pub mod instance;
pub mod lift;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod stats;
