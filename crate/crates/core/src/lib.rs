pub mod birkhoff;
pub mod engine;
pub mod error;
pub mod normspace;
pub mod optim;
pub mod oracle;
pub mod vector;

pub use engine::*;
pub use error::{Error, Result};
pub use normspace::*;
pub use vector::{wedge, Vector2};
