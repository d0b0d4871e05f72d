//! Command-line tool and HTTP service around [`pictopipe_core`].

pub mod cli;
pub mod service;
