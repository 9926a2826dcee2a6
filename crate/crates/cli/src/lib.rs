//! Command-line front end and HTTP service for `natded`.

pub mod api;
pub mod input;
