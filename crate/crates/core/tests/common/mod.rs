#![allow(dead_code)]

use std::path::PathBuf;

use altlink_core::{parse_diagram, Diagram};

pub struct Entry {
    pub name: String,
    pub diagram: Diagram,
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

/// Every `*.pd` fixture, sorted by file name.
pub fn corpus() -> Vec<Entry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "pd"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable fixture");
            let name = p.file_stem().expect("file name").to_string_lossy().into_owned();
            let diagram = parse_diagram(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            Entry { name, diagram }
        })
        .collect()
}

pub fn fixture(name: &str) -> Diagram {
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("no fixture {name}"))
        .diagram
}
