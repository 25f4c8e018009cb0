//! Building a diagram in code and checking it: category axioms, parallel
//! paths, declared equalities and monic/epic status in both modes.
//!
//! cargo run --example commuting_square

use std::sync::Arc;

use viscat::diagram::{
    build_diagram, categorical_status, check_axioms, check_commutativity, enumerate_paths,
    EqualitySpec, Mode,
};
use viscat::finset::{make_map, make_set};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Arc::new(make_set("A", &["a1", "a2"])?);
    let b = Arc::new(make_set("B", &["b1", "b2"])?);
    let c = Arc::new(make_set("C", &["c1", "c2"])?);
    let d = Arc::new(make_set("D", &["d1", "d2"])?);

    let f = make_map("f", &a, &b, &[("a1", "b1"), ("a2", "b2")])?;
    let g = make_map("g", &b, &d, &[("b1", "d1"), ("b2", "d2")])?;
    let h = make_map("h", &a, &c, &[("a1", "c2"), ("a2", "c1")])?;
    // k sends both elements of C to d1, so the square breaks at a1.
    let k = make_map("k", &c, &d, &[("c1", "d1"), ("c2", "d1")])?;

    let square = build_diagram(
        [a, b, c, d],
        [f, g, h, k],
        [EqualitySpec::new(["f", "g"], ["h", "k"]).labeled("g∘f = k∘h")],
    )?;

    let axioms = check_axioms(&square);
    println!("axioms hold: {}", axioms.passed);

    for p in enumerate_paths(&square, "A", "D", 3)? {
        println!("path {p} = {}", p.composite_name());
    }

    let report = check_commutativity(&square, None);
    println!("commutes: {} ({} pairs)", report.passed, report.pairs_compared);
    for fail in &report.failures {
        println!(
            "  {}: at {} left gives {}, right gives {}",
            fail.equality.as_deref().unwrap_or("parallel paths"),
            fail.witness,
            fail.via_left,
            fail.via_right
        );
    }

    for mode in [Mode::SetLevel, Mode::Categorical] {
        let s = categorical_status(&square, "k", mode)?;
        println!("k ({mode}): monic={} epic={} isic={}", s.monic, s.epic, s.isic);
    }
    Ok(())
}
