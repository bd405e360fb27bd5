//! Runs the `lp-lab` binary from the fixtures directory.
#![allow(dead_code)]

mod examples;

use std::path::PathBuf;
use std::process::{Command, Output};

pub use examples::EXAMPLES;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn lp_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lp-lab"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("failed to launch lp-lab")
}
