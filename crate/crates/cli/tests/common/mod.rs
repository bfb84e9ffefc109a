#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub golden: &'static str,
    pub args: &'static [&'static str],
}

/// Subcommand invocations on the worked instances; `{data}` is the instance directory.
pub const CASES: &[Case] = &[
    Case { golden: "standard.kernel.txt", args: &["kernel", "{data}/standard.toml"] },
    Case { golden: "standard.kernel.json", args: &["kernel", "{data}/standard.toml", "--json"] },
    Case { golden: "standard.positivity.txt", args: &["positivity", "{data}/standard.toml"] },
    Case { golden: "standard.positivity.json", args: &["positivity", "{data}/standard.toml", "--json"] },
    Case { golden: "standard.component.txt", args: &["component", "{data}/standard.toml", "--degree", "2"] },
    Case { golden: "standard.component.json", args: &["component", "{data}/standard.toml", "--degree", "2", "--json"] },
    Case { golden: "negative.kernel.txt", args: &["kernel", "{data}/negative.toml"] },
    Case { golden: "negative.kernel.json", args: &["kernel", "{data}/negative.toml", "--json"] },
    Case { golden: "negative.positivity.txt", args: &["positivity", "{data}/negative.toml"] },
    Case { golden: "negative.positivity.json", args: &["positivity", "{data}/negative.toml", "--json"] },
    Case { golden: "negative.component.txt", args: &["component", "{data}/negative.toml", "--degree", "1"] },
    Case { golden: "negative.component.json", args: &["component", "{data}/negative.toml", "--degree", "1", "--json"] },
    Case { golden: "negative.component.pruned.txt", args: &["component", "{data}/negative.toml", "--degree", "1", "--prune"] },
    Case { golden: "z2.kernel.txt", args: &["kernel", "{data}/z2.toml"] },
    Case { golden: "z2.kernel.json", args: &["kernel", "{data}/z2.toml", "--json"] },
    Case { golden: "z2.positivity.txt", args: &["positivity", "{data}/z2.toml"] },
    Case { golden: "z2.positivity.json", args: &["positivity", "{data}/z2.toml", "--json"] },
    Case { golden: "z2.component.txt", args: &["component", "{data}/z2.toml", "--degree", "1"] },
    Case { golden: "z2.component.json", args: &["component", "{data}/z2.toml", "--degree", "1", "--json"] },
    Case { golden: "z2.component.pruned.txt", args: &["component", "{data}/z2.toml", "--degree", "1", "--prune"] },
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn data(file: &str) -> String {
    tests_dir().join("data").join(file).display().to_string()
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let dir = tests_dir().join("data").display().to_string();
    let args: Vec<String> = args.iter().map(|a| a.replace("{data}", &dir)).collect();
    let out = Command::new(env!("CARGO_BIN_EXE_glaurent"))
        .args(&args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn golden(name: &str) -> Vec<u8> {
    std::fs::read(tests_dir().join("golden").join(name)).expect("golden file present")
}
