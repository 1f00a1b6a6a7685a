pub mod analyze;
pub mod bound;
pub mod fa;
pub mod montecarlo;
pub mod sweep;
pub mod tightness;
