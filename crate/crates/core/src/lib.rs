pub mod error;
pub mod exterior;
pub mod interior;
pub mod kinematics;
pub mod levinson;
pub mod nodes;
pub mod phase;
pub mod potential;
pub mod special;
pub mod spectrum;
pub mod sweep;
