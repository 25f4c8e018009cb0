//! The full eight-object process for a bar chart of student marks: parse,
//! validate, and print the text report.
//!
//! cargo run --example student_cohort

use viscat::spec_io::{emit_report, parse_spec, Format, Report, SpecSource};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["golden_cohort", "corrupted_understanding"] {
        let path = format!("{dir}/{name}.viscat");
        let text = std::fs::read_to_string(&path)?;
        let parsed = parse_spec(&SpecSource::new(text, name));
        let Some(model) = parsed.model else {
            for d in parsed.diagnostics {
                eprintln!("{}", d.render(name));
            }
            continue;
        };
        let report = Report::validate(name, &model, None);
        // The corrupted file fails many derived pairs; show the named ones.
        let text = emit_report(&report, Format::Text);
        for line in text.lines().filter(|l| !l.starts_with("  [")) {
            println!("{line}");
        }
        println!();
    }
    Ok(())
}
