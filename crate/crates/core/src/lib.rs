//! Exact toric geometry: integer linear algebra, rational polyhedra, fans,
//! Cox-ring grading data and multigraded Hilbert functions.

pub mod coxring;
pub mod error;
pub mod fan;
pub mod fanfile;
pub mod fixtures;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod models;
pub mod polyhedral;
pub mod report;

pub use error::{Error, Result};
