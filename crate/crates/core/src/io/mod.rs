//! Arrangement files and the bundled catalog.

pub mod catalog;
pub mod parse;

pub use catalog::{all_catalog_names, catalog, catalog_names, load_catalog, pencil, CatalogEntry, Expected};
pub use parse::{
    arrangement_from_value, arrangement_to_value, json_rational, parse_arrangement, parse_equation, parse_rational,
    serialize_arrangement,
};
