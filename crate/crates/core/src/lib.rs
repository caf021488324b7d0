//! Goal formulas, a STRIPS world model, behavior trees and cost-optimal
//! behavior-tree planning over condition space.

pub mod bt;
pub mod cost;
pub mod logic;
pub mod planner;
pub mod world;

pub use cost::Cost;
