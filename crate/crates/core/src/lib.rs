//! Exact structurable algebras, their Tits–Kantor–Koecher Lie algebras, and the
//! incidence geometries formed by inner ideals.

pub mod config;
pub mod cli;
pub mod cubic;
pub mod error;
pub mod exactlin;
pub mod geometry;
pub mod innerauto;
pub mod report;
pub mod structalg;
pub mod tkk;

pub use error::{Error, Result};
pub use report::{CheckReport, Status};
