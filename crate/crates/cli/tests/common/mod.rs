//! Golden-file cases shared by the CLI tests and the acceptance target.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// A CLI invocation and the artifacts it writes, by file name.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// `(flag, file name)` of side artifacts.
    pub artifacts: &'static [(&'static str, &'static str)],
}

pub const CASES: &[Case] = &[
    Case {
        name: "zset_0_1",
        args: &["zset", "--m", "0", "--n", "1"],
        artifacts: &[],
    },
    Case {
        name: "zset_0_3",
        args: &["zset", "--m", "0", "--n", "3"],
        artifacts: &[],
    },
    Case {
        name: "sphere_0_6",
        args: &["sphere", "--m", "0", "--n", "6", "--grid", "128"],
        artifacts: &[],
    },
    Case {
        name: "sphere_0_2",
        args: &["sphere", "--m", "0", "--n", "2", "--grid", "128"],
        artifacts: &[],
    },
    Case {
        name: "winding_1_4",
        args: &["winding", "--m", "1", "--n", "4", "--grid", "64"],
        artifacts: &[("--out-csv", "winding_1_4.csv")],
    },
    Case {
        name: "knots_3",
        args: &["knots", "--winding", "3"],
        artifacts: &[("--out-csv", "knots_3.csv")],
    },
    Case {
        name: "fresnel",
        args: &["fresnel", "--epsilon", "2.0,2.5,3.0", "--subdiv", "2"],
        artifacts: &[("--out-obj", "fresnel.obj")],
    },
    Case {
        name: "eigenline",
        args: &["eigenline", "--epsilon", "2.0,2.5,3.0", "--subdiv", "3"],
        artifacts: &[("--out-obj", "eigenline.obj")],
    },
];

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wavesym")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Run a case into `dir`; returns `(file name, bytes)` for the report and
/// every artifact.
pub fn run_case(case: &Case, dir: &Path) -> Vec<(String, Vec<u8>)> {
    let report = dir.join(format!("{}.json", case.name));
    let mut cmd = Command::new(bin());
    cmd.args(case.args).arg("--out").arg(&report);
    for (flag, file) in case.artifacts {
        cmd.arg(flag).arg(dir.join(file));
    }
    let status = cmd.status().expect("spawn wavesym");
    assert!(status.success(), "{} exited with {status}", case.name);
    let mut files = vec![format!("{}.json", case.name)];
    files.extend(case.artifacts.iter().map(|(_, f)| f.to_string()));
    files
        .into_iter()
        .map(|f| {
            let bytes = std::fs::read(dir.join(&f)).expect("read artifact");
            (f, bytes)
        })
        .collect()
}
