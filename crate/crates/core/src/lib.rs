// Errors carry exact rationals and paths for diagnostics; they are not hot.
#![allow(clippy::result_large_err)]

pub mod config;
pub mod game;
pub mod lab;
pub mod perfect;
pub mod scalar;
pub mod space;
pub mod strategy;
pub mod suites;
