//! Experiment registry, CSV emitters, and run manifests around [`nsfd`].

pub mod config;
pub mod csvio;
pub mod diff;
pub mod experiments;
pub mod manifest;
