#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

pub struct Sample {
    pub name: String,
    pub text: String,
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("corpus")
}

fn load(sub: &str) -> Vec<Sample> {
    let mut out: Vec<Sample> = fs::read_dir(corpus_dir().join(sub))
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "qc"))
        .map(|p| Sample {
            name: p.file_name().unwrap().to_string_lossy().into_owned(),
            text: fs::read_to_string(&p).expect("utf-8 corpus file"),
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn valid() -> Vec<Sample> {
    load("valid")
}

pub fn invalid() -> Vec<Sample> {
    load("invalid")
}

/// The line named by the leading `# error-line: N` comment.
pub fn expected_line(s: &Sample) -> usize {
    let first = s.text.lines().next().unwrap_or("");
    first
        .strip_prefix("# error-line:")
        .and_then(|n| n.trim().parse().ok())
        .unwrap_or_else(|| panic!("{} lacks an `# error-line: N` marker", s.name))
}
