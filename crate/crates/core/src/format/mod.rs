//! The line-oriented category file format and the built-in catalog.

mod catalog;
mod parse;
mod raw;

pub use catalog::{builtin, builtin_names, z_n, CatalogError, BUILTIN_NAMES, MAX_ZN_ORDER};
pub use parse::{parse_category, parse_category_bytes, ParseError, ParseErrorKind, MAX_RANK};
pub use raw::RawCategoryFile;
