//! Constantly curved minimal 2-spheres in the complex hyperquadric.

pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod existence;
pub mod geometry;
pub mod linalg;
pub mod quadrics;
pub mod veronese;

pub use error::{Error, Result};
