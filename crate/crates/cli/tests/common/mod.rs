#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .env_remove("ATLAS_CACHE_DIR")
        .output()
        .expect("atlas binary runs")
}

pub fn atlas_with_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .env(key, value)
        .output()
        .expect("atlas binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}
