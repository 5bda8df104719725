pub mod alexander;
pub mod braid;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod geometry;
pub mod groupring;
pub mod heisenberg;
pub mod homology;
pub mod linalg;
pub mod report;
pub mod schreier;
pub mod smith;
pub mod words;

pub use error::{Error, Result};
