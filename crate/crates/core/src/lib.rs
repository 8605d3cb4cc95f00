pub mod cases;
pub mod density;
pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod io;
pub mod momentum;
mod par;
pub mod pressure;
pub mod scalar;
pub mod stagger;
pub mod thermo;
pub mod time;
pub mod weno;

pub use error::{BlowUpReason, Error, Result};
