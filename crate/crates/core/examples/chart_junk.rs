//! Layout elements with no schema source, and schema components drawn twice.
//!
//! cargo run --example chart_junk

use viscat::analysis::detect_chart_junk;
use viscat::spec_io::{parse_spec, SpecModel, SpecSource};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["chart_junk_plain", "chart_junk_arbitrary", "chart_junk_face"] {
        let text = std::fs::read_to_string(format!("{dir}/{name}.viscat"))?;
        let Some(SpecModel::Process(p)) = parse_spec(&SpecSource::new(text, name)).model else {
            return Err(format!("{name} is not a process model").into());
        };
        let junk = detect_chart_junk(&p)?;
        println!("{name}");
        println!("  arbitrary: {:?}", junk.arbitrary_junk.iter().map(|e| e.as_str()).collect::<Vec<_>>());
        for g in &junk.redundant_groups {
            let layout: Vec<&str> = g.layout.iter().map(|e| e.as_str()).collect();
            println!("  {} is drawn by {layout:?}", g.source);
        }
        println!("  rules agree with derivations: {}", junk.rules_consistency);
    }
    Ok(())
}
