//! Finite sets, total maps, composition and classification.
//!
//! cargo run --example finset_basics

use std::sync::Arc;

use viscat::finset::{classify_map, compose, inverse, make_map, make_set, maps_equal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let child = Arc::new(make_set("Child", &["ann", "bob", "cid"])?);
    let mother = Arc::new(make_set("Mother", &["dora", "edna"])?);
    let aunt = Arc::new(make_set("Aunt", &["fay", "gwen"])?);

    let motherhood = make_map("motherhood", &child, &mother, &[("ann", "dora"), ("bob", "dora"), ("cid", "edna")])?;
    let sisterhood = make_map("sisterhood", &mother, &aunt, &[("dora", "fay"), ("edna", "gwen")])?;
    let aunthood = make_map("aunthood", &child, &aunt, &[("ann", "fay"), ("bob", "fay"), ("cid", "gwen")])?;

    let composite = compose(&sisterhood, &motherhood)?;
    println!("{composite}");
    println!("equals aunthood: {}", maps_equal(&composite, &aunthood));

    for m in [&motherhood, &sisterhood] {
        let c = classify_map(m);
        println!(
            "{}: injective={} surjective={} bijective={} collision={:?}",
            m.id(),
            c.injective,
            c.surjective,
            c.bijective,
            c.collision
        );
    }

    let inv = inverse(&sisterhood)?;
    println!("{inv}");
    match inverse(&motherhood) {
        Ok(_) => unreachable!("motherhood is not injective"),
        Err(e) => println!("no inverse: {e}"),
    }
    Ok(())
}
