use std::fmt::{self, Write};

use serde::Serialize;

use crate::analysis::{analyze, AnalysisReport, ChartJunkReport, RenderProfile, Witness};
use crate::diagram::{
    compose_path, enumerate_paths, AxiomCheck, AxiomReport, CategoricalStatus, CommuteFailure,
    CommuteReport, DiagramError, ExtremalReport, Mode, Path, Unevaluated,
};
use crate::finset::{map_difference, maps_equal, FiniteMap, MapDifference};
use crate::process::{validate_diagram, validate_process, GenEReport, ValidationReport};

use super::SpecModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    /// Pretty-printed JSON.
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Diagram,
    Process,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativitySection {
    pub status: Status,
    pub pairs_compared: usize,
    pub failures: Vec<CommuteFailure>,
    pub unevaluated: Vec<Unevaluated>,
}

impl From<CommuteReport> for CommutativitySection {
    fn from(r: CommuteReport) -> Self {
        CommutativitySection {
            status: Status::of(r.passed),
            pairs_compared: r.pairs_compared,
            failures: r.failures,
            unevaluated: r.unevaluated,
        }
    }
}

/// Validation results, plus analysis when requested on a process model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub origin: String,
    pub model: ModelKind,
    pub passed: bool,
    pub axioms: AxiomReport,
    pub commutativity: CommutativitySection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal: Option<Vec<ExtremalReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen_e: Option<GenEReport>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisReport>,
}

impl Report {
    pub fn validate(origin: &str, model: &SpecModel, max_len: Option<usize>) -> Self {
        let (kind, v) = match model {
            SpecModel::Diagram(d) => (ModelKind::Diagram, validate_diagram(d, max_len)),
            SpecModel::Process(p) => (ModelKind::Process, validate_process(p, max_len)),
        };
        Self::from_validation(origin, kind, v)
    }

    pub fn analyze(origin: &str, model: &SpecModel, mode: Mode, max_len: Option<usize>) -> Self {
        let mut report = Self::validate(origin, model, max_len);
        report.analysis = model.as_process().map(|p| analyze(p, mode));
        report
    }

    fn from_validation(origin: &str, model: ModelKind, v: ValidationReport) -> Self {
        Report {
            origin: origin.to_string(),
            model,
            passed: v.passed,
            axioms: v.axioms,
            commutativity: v.commutativity.into(),
            extremal: v.extremal,
            gen_e: v.gen_e,
            analysis: None,
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Machine => to_json(report),
        Format::Text => report_text(report),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

fn failure_label(f: &CommuteFailure) -> String {
    match &f.equality {
        Some(label) => label.clone(),
        None => format!("{} vs {}", f.left_path, f.right_path),
    }
}

fn failure_line(f: &CommuteFailure) -> String {
    format!(
        "{}: FAIL at element {} ({} gives {}, {} gives {})",
        failure_label(f),
        f.witness,
        f.left_path,
        f.via_left,
        f.right_path,
        f.via_right
    )
}

fn axiom_line(out: &mut String, name: &str, check: &AxiomCheck) {
    let _ = writeln!(
        out,
        "  {name}: {} ({} checked)",
        Status::of(check.passed),
        check.checked
    );
    for v in &check.violations {
        let _ = writeln!(out, "    {}", v.message);
    }
}

fn report_text(r: &Report) -> String {
    let mut out = String::new();
    let kind = match r.model {
        ModelKind::Diagram => "diagram",
        ModelKind::Process => "process",
    };
    let _ = writeln!(out, "{}: {} ({kind})", r.origin, Status::of(r.passed));
    let _ = writeln!(out, "axioms: {}", Status::of(r.axioms.passed));
    axiom_line(&mut out, "identity", &r.axioms.identity);
    axiom_line(&mut out, "totality", &r.axioms.totality);
    axiom_line(&mut out, "associativity", &r.axioms.associativity);
    let c = &r.commutativity;
    let _ = writeln!(
        out,
        "commutativity: {} ({} parallel pairs compared)",
        c.status, c.pairs_compared
    );
    for f in &c.failures {
        let _ = writeln!(out, "  {}", failure_line(f));
    }
    for u in &c.unevaluated {
        let _ = writeln!(out, "  {} not evaluated: {}", u.path, u.reason);
    }
    for e in r.extremal.iter().flatten() {
        let kind = match e.kind {
            crate::diagram::ExtremalKind::Terminal => "terminal",
            crate::diagram::ExtremalKind::Initial => "initial",
        };
        let _ = writeln!(out, "{} {kind}: {}", e.object, Status::of(e.passed));
        if !e.unreachable.is_empty() {
            let _ = writeln!(out, "  not connected: {}", e.unreachable.join(", "));
        }
        if let Some(first) = e.disagreements.first() {
            let _ = writeln!(
                out,
                "  {} disagreeing pair(s), first: {}",
                e.disagreements.len(),
                failure_line(first)
            );
        }
    }
    if let Some(g) = &r.gen_e {
        let _ = writeln!(
            out,
            "gen_E agreement: {} ({} checked)",
            Status::of(g.passed),
            g.checked.len()
        );
        for m in &g.mismatches {
            let _ = writeln!(
                out,
                "  {} generalizes to {}, gen_E gives {}",
                m.element, m.expected, m.declared
            );
        }
        for u in &g.unparsable {
            let _ = writeln!(out, "  {u} is not a predicate atom");
        }
    }
    if let Some(a) = &r.analysis {
        analysis_text(&mut out, a);
    }
    out
}

fn yes_no(b: bool, yes: &str, no: &str) -> String {
    if b { yes } else { no }.to_string()
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Collision { first, second } => {
                write!(f, "{first} and {second} land on the same element")
            }
            Witness::Unhit { element } => write!(f, "{element} is never produced"),
            Witness::Morphisms { first, second } => {
                write!(f, "{first} and {second} become indistinguishable")
            }
        }
    }
}

fn profile_text(out: &mut String, p: &RenderProfile) {
    let traits = [
        yes_no(p.sensitive(), "sensitive", "insensitive"),
        yes_no(p.non_redundant(), "non-redundant", "redundant"),
        yes_no(p.non_ambiguous, "non-ambiguous", "ambiguous"),
        if p.strictly_literal {
            "strictly literal".to_string()
        } else {
            yes_no(p.literal, "literal", "not literal")
        },
    ];
    let _ = writeln!(out, "render: {}", traits.join(", "));
    let _ = writeln!(
        out,
        "  sensitivity ({}){}",
        p.sensitivity.mode,
        witness_suffix(&p.sensitivity.witness)
    );
    let _ = writeln!(
        out,
        "  redundancy ({}){}",
        p.redundancy.mode,
        witness_suffix(&p.redundancy.witness)
    );
    if let Some(w) = &p.ambiguity {
        let _ = writeln!(out, "  ambiguity: {w}");
    }
    if let Some(decode) = &p.decode {
        let _ = writeln!(out, "  {decode}");
    }
}

fn witness_suffix(w: &Option<Witness>) -> String {
    w.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
}

fn status_text(out: &mut String, s: &CategoricalStatus) {
    let flags: Vec<&str> = [
        (s.monic, "monic"),
        (s.epic, "epic"),
        (s.isic, "isic"),
        (s.endic, "endic"),
    ]
    .iter()
    .filter(|(b, _)| *b)
    .map(|(_, n)| *n)
    .collect();
    let flags = if flags.is_empty() {
        "none".to_string()
    } else {
        flags.join(", ")
    };
    let _ = writeln!(out, "{} ({}): {flags}", s.morphism, s.mode);
    if let Some((a, b)) = &s.monic_witness {
        let _ = writeln!(out, "  not monic: {a} and {b} are equalized");
    }
    if let Some((a, b)) = &s.epic_witness {
        let _ = writeln!(out, "  not epic: {a} and {b} are equalized");
    }
}

fn junk_text(out: &mut String, j: &ChartJunkReport) {
    let list = |v: &[crate::finset::ElementId]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
        }
    };
    let _ = writeln!(out, "chart junk:");
    let _ = writeln!(out, "  arbitrary: {}", list(&j.arbitrary_junk));
    if j.redundant_groups.is_empty() {
        let _ = writeln!(out, "  redundant: none");
    }
    for g in &j.redundant_groups {
        let _ = writeln!(out, "  redundant: {} all derive from {}", list(&g.layout), g.source);
    }
    let _ = writeln!(
        out,
        "  rules consistency: {}{}",
        Status::of(j.rules_consistency),
        if j.inconsistent_rules.is_empty() {
            String::new()
        } else {
            format!(" ({})", list(&j.inconsistent_rules))
        }
    );
}

fn analysis_text(out: &mut String, a: &AnalysisReport) {
    let _ = writeln!(out, "intension: {} ({})", a.intension.as_str(), a.intension_note);
    if let Some(p) = &a.render_profile {
        profile_text(out, p);
    }
    if let Some(s) = &a.render_status {
        status_text(out, s);
    }
    if let Some(j) = &a.chart_junk {
        junk_text(out, j);
    }
    if let Some(q) = &a.questions {
        let join = |v: &[crate::finset::ElementId]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
            }
        };
        let _ = writeln!(out, "answerable questions: {}", join(&q.answerable));
        if !q.raised_unanswered.is_empty() {
            let _ = writeln!(out, "raised but unanswered: {}", join(&q.raised_unanswered));
        }
    }
    for n in &a.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathEntry {
    pub path: Path,
    pub composite: String,
    pub map: FiniteMap,
}

/// Every simple path between two objects and whether their composites agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathsReport {
    pub origin: String,
    pub from: String,
    pub to: String,
    pub max_len: usize,
    pub paths: Vec<PathEntry>,
    pub agree: bool,
    /// Each path that differs from the first one, with a witness.
    pub disagreements: Vec<CommuteFailure>,
}

pub fn paths_report(
    origin: &str,
    model: &SpecModel,
    from: &str,
    to: &str,
    max_len: Option<usize>,
) -> Result<PathsReport, DiagramError> {
    let d = match model {
        SpecModel::Diagram(d) => d.clone(),
        SpecModel::Process(p) => p.checked_diagram(),
    };
    let max_len = max_len.unwrap_or_else(|| d.default_max_len());
    let mut paths = Vec::new();
    for path in enumerate_paths(&d, from, to, max_len)? {
        let map = compose_path(&d, &path)?;
        paths.push(PathEntry {
            composite: path.composite_name(),
            path,
            map,
        });
    }
    let mut disagreements = Vec::new();
    if let Some((first, rest)) = paths.split_first() {
        for other in rest {
            if maps_equal(&first.map, &other.map) {
                continue;
            }
            if let Some(MapDifference::At {
                element,
                left,
                right,
            }) = map_difference(&first.map, &other.map)
            {
                disagreements.push(CommuteFailure {
                    equality: None,
                    left_path: first.path.clone(),
                    right_path: other.path.clone(),
                    witness: element,
                    via_left: left,
                    via_right: right,
                });
            }
        }
    }
    Ok(PathsReport {
        origin: origin.to_string(),
        from: from.to_string(),
        to: to.to_string(),
        max_len,
        agree: disagreements.is_empty(),
        paths,
        disagreements,
    })
}

pub fn emit_paths(report: &PathsReport, format: Format) -> String {
    if format == Format::Machine {
        return to_json(report);
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: {} path(s) {} -> {} (max length {})",
        report.origin,
        report.paths.len(),
        report.from,
        report.to,
        report.max_len
    );
    for p in &report.paths {
        let pairs: Vec<String> = p.map.pairs().map(|(x, y)| format!("{x} -> {y}")).collect();
        let _ = writeln!(out, "  {} = {}: {{ {} }}", p.path, p.composite, pairs.join(", "));
    }
    if report.agree {
        let _ = writeln!(out, "all composites agree");
    } else {
        for f in &report.disagreements {
            let _ = writeln!(out, "{}", failure_line(f));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_io::{parse_spec, SpecSource};

    fn model(text: &str) -> SpecModel {
        let out = parse_spec(&SpecSource::new(text, "t"));
        out.model.unwrap_or_else(|| panic!("{:?}", out.diagnostics))
    }

    const SQUARE: &str = "object A { a1 a2 }\nobject B { b1 b2 }\nobject C { c1 c2 }\n\
        morphism f : A -> B { a1 -> b1, a2 -> b2 }\n\
        morphism g : B -> C { b1 -> c1, b2 -> c2 }\n\
        morphism h : A -> C { a1 -> c1, a2 -> c1 }\n\
        equal h = g . f\n";

    #[test]
    fn failing_equality_is_named_in_text() {
        let r = Report::validate("sq", &model(SQUARE), None);
        assert!(!r.passed);
        let text = emit_report(&r, Format::Text);
        assert!(text.contains("h = g∘f: FAIL at element a2"), "{text}");
        assert!(text.starts_with("sq: FAIL (diagram)"));
    }

    #[test]
    fn machine_report_has_stable_fields() {
        let r = Report::validate("sq", &model(SQUARE), None);
        let v: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Machine)).unwrap();
        assert_eq!(v["commutativity"]["status"], "fail");
        let f = &v["commutativity"]["failures"][0];
        assert_eq!(f["witness"], "a2");
        assert_eq!(f["via_left"], "c1");
        assert_eq!(f["via_right"], "c2");
        assert_eq!(f["left_path"]["steps"][0], "h");
        assert!(v["axioms"]["passed"].as_bool().unwrap());
    }

    #[test]
    fn paths_report_lists_composites() {
        let r = paths_report("sq", &model(SQUARE), "A", "C", None).unwrap();
        assert_eq!(r.paths.len(), 2);
        assert!(!r.agree);
        assert_eq!(r.paths[0].composite, "g∘f");
        assert!(emit_paths(&r, Format::Text).contains("[f, g] = g∘f"));
        assert!(paths_report("sq", &model(SQUARE), "A", "Z", None).is_err());
    }
}
