use std::fmt::Write;

use crate::diagram::{DeclaredEquality, Diagram};

use super::parse::scan_bare;
use super::SpecModel;

/// Bare when the lexer would read the token back whole, quoted otherwise.
pub fn quote_token(token: &str) -> String {
    if !token.is_empty() && scan_bare(token) == Ok(token.len()) {
        return token.to_string();
    }
    let mut out = String::with_capacity(token.len() + 2);
    out.push('"');
    for c in token.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Canonical text: objects, morphisms, derivations, roles, alternates, then
/// user equalities. Parsing the output yields an equal model.
pub fn serialize_spec(model: &SpecModel) -> String {
    let mut out = String::new();
    let d = model.diagram();
    write_diagram_body(&mut out, d);
    if let SpecModel::Process(p) = model {
        if let Some(derivations) = p.derivations() {
            let pairs: Vec<String> = derivations
                .iter()
                .map(|(l, s)| format!("{} <- {}", quote_token(l.as_str()), quote_token(s.as_str())))
                .collect();
            if pairs.is_empty() {
                out.push_str("\nderive { }\n");
            } else {
                let _ = writeln!(out, "\nderive {{ {} }}", pairs.join(", "));
            }
        }
        let roles = p.roles();
        if !roles.is_empty() {
            out.push('\n');
        }
        for (role, id) in &roles.objects {
            let _ = writeln!(out, "role {role} = {id}");
        }
        for (role, id) in &roles.morphisms {
            let _ = writeln!(out, "role {role} = {id}");
        }
        let extras = p.extras();
        if !extras.alt_measures.is_empty() || !extras.alt_reads.is_empty() {
            out.push('\n');
        }
        for id in &extras.alt_measures {
            let _ = writeln!(out, "alt_measure {id}");
        }
        for id in &extras.alt_reads {
            let _ = writeln!(out, "alt_read {id}");
        }
    }
    if !d.equalities().is_empty() {
        out.push('\n');
    }
    for eq in d.equalities() {
        let _ = writeln!(out, "{}", equality_line(eq));
    }
    out
}

fn write_diagram_body(out: &mut String, d: &Diagram) {
    for o in d.objects() {
        let els: Vec<String> = o.elements().map(|e| quote_token(e.as_str())).collect();
        if els.is_empty() {
            let _ = writeln!(out, "object {} {{ }}", o.id());
        } else {
            let _ = writeln!(out, "object {} {{ {} }}", o.id(), els.join(" "));
        }
    }
    if d.morphism_count() > 0 {
        out.push('\n');
    }
    for m in d.morphisms() {
        let pairs: Vec<String> = m
            .pairs()
            .map(|(x, y)| format!("{} -> {}", quote_token(x.as_str()), quote_token(y.as_str())))
            .collect();
        let body = if pairs.is_empty() {
            "{ }".to_string()
        } else {
            format!("{{ {} }}", pairs.join(", "))
        };
        let _ = writeln!(out, "morphism {} : {} -> {} {body}", m.id(), m.dom().id(), m.cod().id());
    }
}

fn equality_line(eq: &DeclaredEquality) -> String {
    let side = |steps: &[String]| {
        steps.iter().rev().map(String::as_str).collect::<Vec<_>>().join(" . ")
    };
    format!("equal {} = {}", side(&eq.left.steps), side(&eq.right.steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_io::{parse_spec, SpecSource};

    #[test]
    fn quoting_is_minimal() {
        assert_eq!(quote_token("best_mark(Alan)"), "best_mark(Alan)");
        assert_eq!(quote_token("average_mark(> 70)"), "average_mark(> 70)");
        assert_eq!(quote_token("Nobody failed"), "\"Nobody failed\"");
        assert_eq!(quote_token("a->b"), "\"a->b\"");
        assert_eq!(quote_token("x#1"), "\"x#1\"");
        assert_eq!(quote_token("say \"hi\""), "\"say \\\"hi\\\"\"");
    }

    #[test]
    fn empty_diagram_serializes_to_nothing() {
        assert_eq!(serialize_spec(&SpecModel::Diagram(Diagram::empty())), "");
    }

    #[test]
    fn round_trip_preserves_model() {
        let text = "object A { a1 \"two words\" }\nobject B { p(x,y) }\n\
                    morphism f : A -> B { a1 -> p(x,y), \"two words\" -> p(x,y) }\n\
                    morphism g : B -> B { p(x,y) -> p(x,y) }\n\
                    equal f = g . f\n";
        let model = parse_spec(&SpecSource::new(text, "t")).model.unwrap();
        let printed = serialize_spec(&model);
        let again = parse_spec(&SpecSource::new(printed.clone(), "t")).model.unwrap();
        assert_eq!(model, again);
        assert_eq!(serialize_spec(&again), printed);
        assert!(printed.contains("equal f = g . f"));
    }
}
