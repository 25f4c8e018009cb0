//! Parsing model text with positioned diagnostics and printing it back in
//! canonical form.
//!
//! cargo run --example parse_and_serialize

use viscat::spec_io::{parse_spec, serialize_spec, SpecSource};

const MODEL: &str = r#"
object Data { mark(Alan,92) mark(Beth,78) }
object Representation { bar(Alan) bar(Beth) }
object Spare { unused }
morphism render : Data -> Representation { mark(Alan,92) -> bar(Alan), mark(Beth,78) -> bar(Beth) }
role Data = Data
role Representation = Representation
role render = render
"#;

const BROKEN: &str = "object Data { mark(Alan,92) }\nmorphism render Data -> Data { }\n";

fn main() {
    let ok = parse_spec(&SpecSource::new(MODEL, "inline"));
    for d in &ok.diagnostics {
        println!("{}", d.render("inline"));
    }
    if let Some(model) = &ok.model {
        print!("{}", serialize_spec(model));
    }

    let bad = parse_spec(&SpecSource::new(BROKEN, "broken"));
    assert!(bad.model.is_none());
    for d in &bad.diagnostics {
        println!("{}", d.render("broken"));
    }
}
