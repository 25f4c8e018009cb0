//! Sensitivity to alternative measurements and redundancy of alternative
//! readings, decided by comparing composites with render.
//!
//! cargo run --example alternates

use viscat::analysis::{redundancy_report, sensitivity_report};
use viscat::spec_io::{parse_spec, SpecModel, SpecSource};

fn load(name: &str) -> viscat::process::ProcessModel {
    let path = format!("{}/fixtures/{name}.viscat", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).expect("fixture exists");
    match parse_spec(&SpecSource::new(text, name)).model {
        Some(SpecModel::Process(p)) => p,
        other => panic!("{name}: {other:?}"),
    }
}

fn main() {
    for name in ["sensitivity_bar", "sensitivity_text"] {
        let r = sensitivity_report(&load(name)).unwrap();
        println!("{name}: sensitive={} ({}) witness={:?}", r.sensitive, r.mode, r.witness);
    }
    let r = redundancy_report(&load("redundant_reads")).unwrap();
    println!("redundant_reads: non_redundant={} ({}) witness={:?}", r.non_redundant, r.mode, r.witness);
}
