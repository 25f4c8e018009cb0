//! How the set-level type of render determines sensitivity, redundancy,
//! ambiguity and literalness, and decoding through a bijective render.
//!
//! cargo run --example render_profile

use std::sync::Arc;

use viscat::analysis::profile_render;
use viscat::diagram::build_diagram;
use viscat::finset::{FiniteMap, FiniteSet};
use viscat::process::{build_process, MorphismRole, ObjectRole, ProcessExtras, RoleBindings};

fn profile(label: &str, data: &[&str], rep: Option<&[&str]>, table: Vec<usize>) {
    let d = Arc::new(FiniteSet::new("Data", data).unwrap());
    let r = match rep {
        Some(els) => Arc::new(FiniteSet::new("Representation", els).unwrap()),
        None => d.clone(),
    };
    let render = FiniteMap::from_indices("render", d.clone(), r.clone(), table).unwrap();
    let objects = if rep.is_some() { vec![d, r.clone()] } else { vec![d] };
    let diagram = build_diagram(objects, [render], []).unwrap();
    let roles = RoleBindings::new()
        .object(ObjectRole::Data, "Data")
        .object(ObjectRole::Representation, r.id())
        .morphism(MorphismRole::Render, "render");
    let p = build_process(diagram, roles, ProcessExtras::default()).unwrap();
    let prof = profile_render(&p).unwrap();
    println!(
        "{label:<14} sensitive={:<5} non_redundant={:<5} non_ambiguous={:<5} literal={}",
        prof.sensitive(),
        prof.non_redundant(),
        prof.non_ambiguous,
        prof.literal
    );
    if let Some(decode) = prof.decode {
        println!("{:<14} {decode}", "");
    }
}

fn main() {
    profile("injective", &["a", "b"], Some(&["x", "y", "z"]), vec![0, 1]);
    profile("surjective", &["a", "b", "c"], Some(&["x", "y"]), vec![0, 1, 1]);
    profile("bijective", &["a", "b"], Some(&["x", "y"]), vec![1, 0]);
    profile("neither", &["a", "b"], Some(&["x", "y"]), vec![0, 0]);
    profile("endo, bijective", &["a", "b", "c"], None, vec![1, 2, 0]);
    profile("endo, neither", &["a", "b", "c"], None, vec![0, 0, 1]);
}
