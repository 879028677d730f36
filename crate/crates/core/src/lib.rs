pub mod error;
pub mod cli;
pub mod pattern;
pub mod seq;
pub mod series;
pub mod word;

pub use error::{Error, Result};
pub use pattern::{encounters, is_instance, is_unavoidable, zimin, Morphism, Pattern};
pub use word::{is_factor, is_zimin_instance, Word};
