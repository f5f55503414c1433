#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// Golden cases over the shipped example corpus: `(name, arguments)`.
pub const CASES: &[(&str, &[&str])] = &[
    ("degree", &["degree", "-w", "examples/plane13.json", "-c", "plane", "-f", "x^4 + x*y"]),
    ("degree-json", &["--format", "json", "degree", "-w", "examples/plane13.json", "-c", "plane", "-f", "y^2"]),
    ("homog", &["homog", "-w", "examples/plane13.json", "-c", "plane", "-f", "x^4 + x*y + y^2", "-i", "4"]),
    ("rees", &["rees", "-w", "examples/plane13.json", "-c", "plane", "-f", "x^4 + x*y + y^2", "-i", "4"]),
    ("zoom-weight", &["zoom-weight", "-w", "examples/plane13.json", "-c", "plane", "-g", "_t^2*y_bar + x_bar"]),
    ("path-valuation", &["path-valuation", "-w", "examples/plane13.json", "-c", "plane", "-f", "x*y - y^2"]),
    ("parabola", &["check-morphism", "-w", "examples/plane13.json", "-m", "parabola"]),
    ("cubic", &["check-morphism", "-w", "examples/plane13.json", "-m", "cubic"]),
    ("cubic-json", &["--format", "json", "check-morphism", "-w", "examples/plane13.json", "-m", "cubic"]),
    ("graph-chart", &["graph-chart", "-w", "examples/plane13.json", "-m", "parabola"]),
    ("vf-degree", &["vf-degree", "-w", "examples/plane13.json", "-v", "xdy"]),
    ("transverse", &["transverse", "-w", "examples/plane13.json", "--first", "cubic", "--second", "parabola", "-p", "0", "-q", "0"]),
    ("section-degree", &["section-degree", "-w", "examples/plane13.json", "-s", "x, y"]),
    ("dual", &["dual", "-w", "examples/plane13.json"]),
    ("shift-json", &["--format", "json", "shift", "-w", "examples/plane13.json", "-k", "-1"]),
    ("transition", &["transition-check", "-w", "examples/plane13.json", "--matrix", "1,x;0,1"]),
    ("section-rees", &["section-rees", "-w", "examples/plane13.json", "-s", "x + x^2, y", "-i", "0"]),
    ("q-model", &["q-model", "-w", "examples/plane13.json", "-c", "plane"]),
    ("q-degree", &["q-degree", "-w", "examples/plane13.json", "-c", "plane", "-f", "x^2 + y", "-r", "4"]),
    ("tangency", &["tangency", "-w", "examples/plane13.json", "-v", "dy", "-i", "1"]),
    ("lift", &["lift", "-f", "x*y", "-i", "2", "-r", "2"]),
    ("lift-vf", &["lift-vf", "-w", "examples/plane13.json", "-v", "euler", "-i", "1", "-r", "2"]),
    ("bch", &["bch", "-w", "examples/heisenberg.json", "-x", "1,0,0", "-y", "0,1,0"]),
    ("lcs", &["lcs", "-w", "examples/heisenberg.json"]),
    ("dilation", &["dilation-check", "-w", "examples/heisenberg.json"]),
    ("wide-heisenberg", &["wide-hypotheses", "-w", "examples/heisenberg.json", "--levels", "e2", "--b", "1,0,0"]),
    ("wide-borel", &["wide-hypotheses", "-w", "examples/sl2-borel.json", "--levels", "h,e,f", "--b", "1,0,0;0,1,0"]),
    ("im-borel", &["im-check", "-w", "examples/sl2-borel.json"]),
    ("graded-borel", &["graded", "-w", "examples/sl2-borel.json"]),
    ("rees-borel-json", &["--format", "json", "rees-algebroid", "-w", "examples/sl2-borel.json"]),
    ("lifted-borel", &["lifted-algebroid", "-w", "examples/sl2-borel.json"]),
    ("jacobi-contact", &["jacobi", "-w", "examples/contact.json"]),
    ("da-contact", &["da-check", "-w", "examples/contact.json"]),
    ("poisson-contact", &["poisson-check", "-w", "examples/contact.json"]),
    ("graded-contact", &["graded", "-w", "examples/contact.json"]),
    ("induced-degree", &["induced-degree", "-w", "examples/contact.json", "-f", "x*y + z"]),
    ("clean-x", &["clean", "-w", "examples/clean.json", "-F", "x_axis", "--points", "0,0;1,0;2,0"]),
    ("clean-y", &["clean", "-w", "examples/clean.json", "-F", "y_axis", "--points", "0,0;0,1"]),
    ("ambiguous-chart", &["degree", "-w", "examples/plane13.json", "-f", "x"]),
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary from the crate root; returns stdout, stderr and the exit
/// status rendered as one transcript.
pub fn transcript(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_weightlab"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("binary runs");
    let mut text = String::from_utf8(out.stdout).expect("utf-8 stdout");
    let stderr = String::from_utf8(out.stderr).expect("utf-8 stderr");
    for line in stderr.lines() {
        text.push_str("stderr: ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&format!("[exit {}]\n", out.status.code().unwrap_or(-1)));
    text
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.out"))
}

pub fn read(path: &Path) -> Option<String> {
    std::fs::read_to_string(path).ok()
}
