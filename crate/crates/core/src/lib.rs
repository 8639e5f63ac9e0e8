pub mod binary;
pub mod blowup;
pub mod commands;
pub mod config;
pub mod determinantal;
pub mod error;
pub mod field;
pub mod forms;
pub mod gcd;
pub mod hexagram;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod projgeom;
pub mod quadrics;
pub mod species;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement};
