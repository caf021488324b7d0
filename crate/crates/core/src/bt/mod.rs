//! Behavior trees: node types, tick semantics, simulation and rendering.

mod node;
mod render;
mod sim;
mod tick;

pub use node::{BtError, BtNode};
pub use render::{render, RenderFormat};
pub use sim::{simulate, ExecTrace, Outcome, SimError};
pub use tick::{tick, TickResult, TickStatus};
