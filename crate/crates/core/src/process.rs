//! The visualization process as a category.
//!
//! Eight object roles and fourteen morphism roles are bound onto the objects
//! and morphisms of a [`Diagram`]:
//!
//! ```text
//!   measure        : System         -> Data
//!   render         : Data           -> Representation
//!   read           : Representation -> Evocation
//!   understanding  : Data           -> Evocation
//!   gen_D          : Data           -> Schema
//!   gen_R          : Representation -> Layout
//!   gen_E          : Evocation      -> Question
//!   rules          : Schema         -> Layout
//!   answers        : Layout         -> Question
//!   raises         : Schema         -> Question
//!   infers         : Evocation      -> Knowledge
//!   op_desc        : System         -> Schema
//!   op_know        : Question       -> Knowledge
//!   truth          : System         -> Knowledge
//! ```
//!
//! The extension row (System, Data, Representation, Evocation) may be bound on
//! its own. Schema, Layout and Question form the intension and are bound all
//! together or not at all.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    check_axioms, check_commutativity, check_extremal, AxiomReport, CommuteReport, DeclaredEquality,
    Diagram, DiagramError, EqualitySpec, ExtremalKind, ExtremalReport,
};
use crate::finset::{ElementId, FiniteMap, FiniteSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcessError {
    #[error("role {role} is bound to `{morphism}` : {actual_dom} -> {actual_cod}, expected {expected_dom} -> {expected_cod}")]
    SignatureMismatch {
        role: MorphismRole,
        morphism: String,
        expected_dom: String,
        expected_cod: String,
        actual_dom: String,
        actual_cod: String,
    },
    #[error("role {morphism_role} needs object role {object_role} to be bound")]
    MissingObjectRole {
        morphism_role: MorphismRole,
        object_role: ObjectRole,
    },
    #[error("partial intension: {bound} bound but {missing} missing")]
    PartialIntension { bound: String, missing: String },
    #[error("role {role} is bound to unknown {kind} `{id}`")]
    UnknownBinding {
        role: String,
        kind: &'static str,
        id: String,
    },
    #[error("unknown role `{0}`")]
    UnknownRole(String),
    #[error("role {0} is not bound")]
    MissingRole(String),
    #[error("derivation annotation needs Schema and Layout bound")]
    DerivationsWithoutIntension,
    #[error("derivation: `{element}` is not an element of {role}")]
    DerivationElement { role: ObjectRole, element: ElementId },
    #[error("derivation: layout element `{0}` is derived twice")]
    DuplicateDerivation(ElementId),
    #[error("alternate `{id}` must be a {expected} morphism")]
    BadAlternate { id: String, expected: &'static str },
    #[error("`{0}` is not of the form predicate(arg, ...)")]
    UnparsableAtom(String),
    #[error("model has no intensional level")]
    NoIntension,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

macro_rules! roles {
    ($name:ident { $($variant:ident => $text:literal),* $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),*
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = ProcessError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)*
                    _ => Err(ProcessError::UnknownRole(s.to_string())),
                }
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }
    };
}

roles!(ObjectRole {
    System => "System",
    Data => "Data",
    Schema => "Schema",
    Representation => "Representation",
    Layout => "Layout",
    Evocation => "Evocation",
    Question => "Question",
    Knowledge => "Knowledge",
});

roles!(MorphismRole {
    Measure => "measure",
    Render => "render",
    Read => "read",
    Understanding => "understanding",
    GenD => "gen_D",
    GenR => "gen_R",
    GenE => "gen_E",
    Rules => "rules",
    Answers => "answers",
    Raises => "raises",
    Infers => "infers",
    OpDesc => "op_desc",
    OpKnow => "op_know",
    Truth => "truth",
});

impl MorphismRole {
    /// Source and target object roles.
    pub fn signature(self) -> (ObjectRole, ObjectRole) {
        use MorphismRole::*;
        use ObjectRole as O;
        match self {
            Measure => (O::System, O::Data),
            Render => (O::Data, O::Representation),
            Read => (O::Representation, O::Evocation),
            Understanding => (O::Data, O::Evocation),
            GenD => (O::Data, O::Schema),
            GenR => (O::Representation, O::Layout),
            GenE => (O::Evocation, O::Question),
            Rules => (O::Schema, O::Layout),
            Answers => (O::Layout, O::Question),
            Raises => (O::Schema, O::Question),
            Infers => (O::Evocation, O::Knowledge),
            OpDesc => (O::System, O::Schema),
            OpKnow => (O::Question, O::Knowledge),
            Truth => (O::System, O::Knowledge),
        }
    }
}

/// Either kind of role, for parsing role lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Object(ObjectRole),
    Morphism(MorphismRole),
}

impl FromStr for Role {
    type Err = ProcessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<ObjectRole>()
            .map(Role::Object)
            .or_else(|_| s.parse::<MorphismRole>().map(Role::Morphism))
            .map_err(|_| ProcessError::UnknownRole(s.to_string()))
    }
}

const INTENSION_OBJECTS: [ObjectRole; 3] =
    [ObjectRole::Schema, ObjectRole::Layout, ObjectRole::Question];
const INTENSION_MORPHISMS: [MorphismRole; 6] = [
    MorphismRole::GenD,
    MorphismRole::GenR,
    MorphismRole::GenE,
    MorphismRole::Rules,
    MorphismRole::Answers,
    MorphismRole::Raises,
];

/// The canonical equalities, as (label, left, right) with paths in
/// application order.
const CANONICAL_EQUALITIES: [(&str, &[MorphismRole], &[MorphismRole]); 7] = {
    use MorphismRole::*;
    [
        ("understanding = read∘render", &[Understanding], &[Render, Read]),
        ("raises = answers∘rules", &[Raises], &[Rules, Answers]),
        ("gen_R∘render = rules∘gen_D", &[Render, GenR], &[GenD, Rules]),
        ("gen_E∘read = answers∘gen_R", &[Read, GenE], &[GenR, Answers]),
        ("op_desc = gen_D∘measure", &[OpDesc], &[Measure, GenD]),
        ("infers = op_know∘gen_E", &[Infers], &[GenE, OpKnow]),
        (
            "truth = infers∘understanding∘measure",
            &[Truth],
            &[Measure, Understanding, Infers],
        ),
    ]
};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoleBindings {
    pub objects: BTreeMap<ObjectRole, String>,
    pub morphisms: BTreeMap<MorphismRole, String>,
}

impl RoleBindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, role: ObjectRole, id: impl Into<String>) -> Self {
        self.objects.insert(role, id.into());
        self
    }

    pub fn morphism(mut self, role: MorphismRole, id: impl Into<String>) -> Self {
        self.morphisms.insert(role, id.into());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.morphisms.is_empty()
    }
}

/// Optional extras attached to a process model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProcessExtras {
    /// Partial map Layout element → Schema element. `None` means no
    /// annotation was supplied, which is distinct from an empty one.
    pub derivations: Option<Vec<(ElementId, ElementId)>>,
    pub alt_measures: Vec<String>,
    pub alt_reads: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessModel {
    diagram: Diagram,
    roles: RoleBindings,
    extras: ProcessExtras,
    canonical: Vec<DeclaredEquality>,
}

/// Named equality derived from the bound roles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedEquality {
    pub name: &'static str,
    pub left: Vec<MorphismRole>,
    pub right: Vec<MorphismRole>,
}

pub fn build_process(
    diagram: Diagram,
    roles: RoleBindings,
    extras: ProcessExtras,
) -> Result<ProcessModel, ProcessError> {
    for (role, id) in &roles.objects {
        if diagram.object(id).is_none() {
            return Err(ProcessError::UnknownBinding {
                role: role.to_string(),
                kind: "object",
                id: id.clone(),
            });
        }
    }
    for (&role, id) in &roles.morphisms {
        let m = diagram
            .morphism(id)
            .ok_or_else(|| ProcessError::UnknownBinding {
                role: role.to_string(),
                kind: "morphism",
                id: id.clone(),
            })?;
        check_signature(&roles, role, m)?;
    }

    let intension_bound: Vec<String> = INTENSION_OBJECTS
        .iter()
        .filter(|r| roles.objects.contains_key(r))
        .map(|r| r.to_string())
        .chain(
            INTENSION_MORPHISMS
                .iter()
                .filter(|r| roles.morphisms.contains_key(r))
                .map(|r| r.to_string()),
        )
        .collect();
    let intension_missing: Vec<String> = INTENSION_OBJECTS
        .iter()
        .filter(|r| !roles.objects.contains_key(r))
        .map(|r| r.to_string())
        .chain(
            INTENSION_MORPHISMS
                .iter()
                .filter(|r| !roles.morphisms.contains_key(r))
                .map(|r| r.to_string()),
        )
        .collect();
    if !intension_bound.is_empty() && !intension_missing.is_empty() {
        return Err(ProcessError::PartialIntension {
            bound: intension_bound.join(", "),
            missing: intension_missing.join(", "),
        });
    }

    if let Some(derivations) = &extras.derivations {
        let (Some(schema), Some(layout)) = (
            roles.objects.get(&ObjectRole::Schema),
            roles.objects.get(&ObjectRole::Layout),
        ) else {
            return Err(ProcessError::DerivationsWithoutIntension);
        };
        let schema = diagram.object(schema).expect("checked");
        let layout = diagram.object(layout).expect("checked");
        let mut seen = std::collections::HashSet::new();
        for (l, s) in derivations {
            if !layout.contains(l) {
                return Err(ProcessError::DerivationElement {
                    role: ObjectRole::Layout,
                    element: l.clone(),
                });
            }
            if !schema.contains(s) {
                return Err(ProcessError::DerivationElement {
                    role: ObjectRole::Schema,
                    element: s.clone(),
                });
            }
            if !seen.insert(l.clone()) {
                return Err(ProcessError::DuplicateDerivation(l.clone()));
            }
        }
    }

    for (alts, role, expected) in [
        (&extras.alt_measures, MorphismRole::Measure, "System -> Data"),
        (&extras.alt_reads, MorphismRole::Read, "Representation -> Evocation"),
    ] {
        for id in alts {
            let bad = || ProcessError::BadAlternate {
                id: id.clone(),
                expected,
            };
            let m = diagram.morphism(id).ok_or_else(bad)?;
            check_signature(&roles, role, m).map_err(|_| bad())?;
        }
    }

    let canonical_specs: Vec<EqualitySpec> = required_equalities_for(&roles)
        .into_iter()
        .map(|eq| {
            let ids = |side: &[MorphismRole]| -> Vec<String> {
                side.iter().map(|r| roles.morphisms[r].clone()).collect()
            };
            EqualitySpec::new(ids(&eq.left), ids(&eq.right)).labeled(eq.name)
        })
        .collect();
    let with = diagram.with_equalities(canonical_specs)?;
    let canonical_eqs = with.equalities()[diagram.equalities().len()..].to_vec();

    Ok(ProcessModel {
        diagram,
        roles,
        extras,
        canonical: canonical_eqs,
    })
}

fn check_signature(
    roles: &RoleBindings,
    role: MorphismRole,
    m: &FiniteMap,
) -> Result<(), ProcessError> {
    let (dom_role, cod_role) = role.signature();
    let lookup = |r: ObjectRole| {
        roles
            .objects
            .get(&r)
            .ok_or(ProcessError::MissingObjectRole {
                morphism_role: role,
                object_role: r,
            })
    };
    let expected_dom = lookup(dom_role)?;
    let expected_cod = lookup(cod_role)?;
    if m.dom().id() != expected_dom || m.cod().id() != expected_cod {
        return Err(ProcessError::SignatureMismatch {
            role,
            morphism: m.id().to_string(),
            expected_dom: expected_dom.clone(),
            expected_cod: expected_cod.clone(),
            actual_dom: m.dom().id().to_string(),
            actual_cod: m.cod().id().to_string(),
        });
    }
    Ok(())
}

fn required_equalities_for(roles: &RoleBindings) -> Vec<NamedEquality> {
    CANONICAL_EQUALITIES
        .iter()
        .filter(|(_, l, r)| l.iter().chain(r.iter()).all(|m| roles.morphisms.contains_key(m)))
        .map(|(name, l, r)| NamedEquality {
            name,
            left: l.to_vec(),
            right: r.to_vec(),
        })
        .collect()
}

/// The canonical equalities whose roles are all bound.
pub fn required_equalities(p: &ProcessModel) -> Vec<NamedEquality> {
    required_equalities_for(&p.roles)
}

impl ProcessModel {
    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn roles(&self) -> &RoleBindings {
        &self.roles
    }

    pub fn extras(&self) -> &ProcessExtras {
        &self.extras
    }

    pub fn derivations(&self) -> Option<&[(ElementId, ElementId)]> {
        self.extras.derivations.as_deref()
    }

    /// The installed canonical equalities, with morphism ids resolved.
    pub fn canonical_equalities(&self) -> &[DeclaredEquality] {
        &self.canonical
    }

    /// The user diagram plus the canonical equalities, minus alternate
    /// measures and reads: alternates are hypothetical and need not commute.
    pub fn checked_diagram(&self) -> Diagram {
        let bound: Vec<&str> = self.roles.morphisms.values().map(String::as_str).collect();
        let alternates: Vec<&str> = self
            .extras
            .alt_measures
            .iter()
            .chain(&self.extras.alt_reads)
            .map(String::as_str)
            .filter(|id| !bound.contains(id))
            .collect();
        let mut specs = Vec::new();
        for eq in &self.canonical {
            specs.push(
                EqualitySpec::new(eq.left.steps.clone(), eq.right.steps.clone())
                    .labeled(eq.label.clone()),
            );
        }
        self.diagram
            .without_morphisms(&alternates)
            .with_equalities(specs)
            .expect("canonical equalities resolved at build time")
    }

    pub fn object(&self, role: ObjectRole) -> Option<&std::sync::Arc<FiniteSet>> {
        self.roles
            .objects
            .get(&role)
            .and_then(|id| self.diagram.object(id))
    }

    pub fn morphism(&self, role: MorphismRole) -> Option<&FiniteMap> {
        self.roles
            .morphisms
            .get(&role)
            .and_then(|id| self.diagram.morphism(id))
    }

    pub fn require(&self, role: MorphismRole) -> Result<&FiniteMap, ProcessError> {
        self.morphism(role)
            .ok_or_else(|| ProcessError::MissingRole(role.to_string()))
    }

    /// All 8 object roles and 14 morphism roles are bound.
    pub fn is_full(&self) -> bool {
        self.roles.objects.len() == ObjectRole::ALL.len()
            && self.roles.morphisms.len() == MorphismRole::ALL.len()
    }

    pub fn has_intension(&self) -> bool {
        intension_status(self) == IntensionStatus::Full
    }

    pub fn alt_measures(&self) -> impl Iterator<Item = &FiniteMap> + '_ {
        self.extras
            .alt_measures
            .iter()
            .filter_map(|id| self.diagram.morphism(id))
    }

    pub fn alt_reads(&self) -> impl Iterator<Item = &FiniteMap> + '_ {
        self.extras
            .alt_reads
            .iter()
            .filter_map(|id| self.diagram.morphism(id))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntensionStatus {
    Full,
    ExtensionOnly,
}

impl IntensionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            IntensionStatus::Full => "full",
            IntensionStatus::ExtensionOnly => "extension_only",
        }
    }

    pub fn note(self) -> &'static str {
        match self {
            IntensionStatus::Full => {
                "Schema, Layout and Question are bound: the representation can be interrogated and generalized"
            }
            IntensionStatus::ExtensionOnly => {
                "no intensional level: a data-driven representation rather than a visualization that supports questions or generalization"
            }
        }
    }
}

pub fn intension_status(p: &ProcessModel) -> IntensionStatus {
    let full = INTENSION_OBJECTS
        .iter()
        .all(|r| p.roles.objects.contains_key(r))
        && INTENSION_MORPHISMS
            .iter()
            .all(|r| p.roles.morphisms.contains_key(r));
    if full {
        IntensionStatus::Full
    } else {
        IntensionStatus::ExtensionOnly
    }
}

/// An unsaturated predicate such as `best_mark(_)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuestionTemplate {
    pub predicate: String,
    pub arity: usize,
}

impl fmt::Display for QuestionTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.predicate)?;
        for i in 0..self.arity {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("_")?;
        }
        f.write_str(")")
    }
}

impl Serialize for QuestionTemplate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A ground predicate such as `best_mark(Alan)` or `average_mark(> 70)`.
/// Arguments are kept as opaque text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvocationAtom {
    pub predicate: String,
    pub arguments: Vec<String>,
}

impl FromStr for EvocationAtom {
    type Err = ProcessError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let bad = || ProcessError::UnparsableAtom(token.to_string());
        let open = token.find('(').ok_or_else(bad)?;
        let predicate = token[..open].trim();
        let inner = token[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        if predicate.is_empty()
            || !predicate
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_')
        {
            return Err(bad());
        }
        let mut arguments = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for c in inner.chars() {
            match c {
                '(' => {
                    depth += 1;
                    current.push(c);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(bad)?;
                    current.push(c);
                }
                ',' if depth == 0 => arguments.push(std::mem::take(&mut current)),
                _ => current.push(c),
            }
        }
        if depth != 0 {
            return Err(bad());
        }
        arguments.push(current);
        let arguments: Vec<String> = arguments.into_iter().map(|a| a.trim().to_string()).collect();
        if arguments.iter().any(String::is_empty) {
            return Err(bad());
        }
        Ok(EvocationAtom {
            predicate: predicate.to_string(),
            arguments,
        })
    }
}

/// Replaces every argument with a hole.
pub fn generalize_evocation(atom: &EvocationAtom) -> QuestionTemplate {
    QuestionTemplate {
        predicate: atom.predicate.clone(),
        arity: atom.arguments.len(),
    }
}

/// Parses an element token and generalizes it.
pub fn generalize_token(token: &str) -> Result<QuestionTemplate, ProcessError> {
    Ok(generalize_evocation(&token.parse()?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenEMismatch {
    pub element: ElementId,
    pub declared: ElementId,
    pub expected: String,
}

/// Agreement of the bound gen_E with template erasure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenEReport {
    pub passed: bool,
    pub checked: Vec<ElementId>,
    /// Evocation elements not of predicate(args) shape; taken as declared.
    pub unparsable: Vec<ElementId>,
    pub mismatches: Vec<GenEMismatch>,
}

/// `None` when gen_E is not bound.
pub fn check_gen_e(p: &ProcessModel) -> Option<GenEReport> {
    let gen_e = p.morphism(MorphismRole::GenE)?;
    let mut checked = Vec::new();
    let mut unparsable = Vec::new();
    let mut mismatches = Vec::new();
    for (e, q) in gen_e.pairs() {
        match generalize_token(e.as_str()) {
            Ok(template) => {
                let expected = template.to_string();
                if q.as_str() != expected {
                    mismatches.push(GenEMismatch {
                        element: e.clone(),
                        declared: q.clone(),
                        expected,
                    });
                }
                checked.push(e.clone());
            }
            Err(_) => unparsable.push(e.clone()),
        }
    }
    Some(GenEReport {
        passed: mismatches.is_empty(),
        checked,
        unparsable,
        mismatches,
    })
}

/// Questions raised by the Schema versus answered by the Layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuestionCoverage {
    /// In the image of both raises and answers, in Question order.
    pub answerable: Vec<ElementId>,
    /// Raised by the Schema but not answered by any Layout element.
    pub raised_unanswered: Vec<ElementId>,
}

impl QuestionCoverage {
    pub fn answerable_templates(&self) -> Vec<QuestionTemplate> {
        self.answerable
            .iter()
            .filter_map(|q| generalize_token(q.as_str()).ok())
            .collect()
    }
}

pub fn answerable_questions(p: &ProcessModel) -> Result<QuestionCoverage, ProcessError> {
    if !p.has_intension() {
        return Err(ProcessError::NoIntension);
    }
    let question = p.object(ObjectRole::Question).expect("intension bound");
    let raises = p.require(MorphismRole::Raises)?;
    let answers = p.require(MorphismRole::Answers)?;
    let raised: std::collections::HashSet<&ElementId> = raises.pairs().map(|(_, q)| q).collect();
    let answered: std::collections::HashSet<&ElementId> =
        answers.pairs().map(|(_, q)| q).collect();
    let mut coverage = QuestionCoverage {
        answerable: Vec::new(),
        raised_unanswered: Vec::new(),
    };
    for q in question.elements() {
        match (raised.contains(q), answered.contains(q)) {
            (true, true) => coverage.answerable.push(q.clone()),
            (true, false) => coverage.raised_unanswered.push(q.clone()),
            _ => {}
        }
    }
    Ok(coverage)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub axioms: AxiomReport,
    pub commutativity: CommuteReport,
    /// Knowledge terminal and System initial; only for the full shape.
    pub extremal: Option<Vec<ExtremalReport>>,
    pub gen_e: Option<GenEReport>,
}

/// Axioms, commutativity (generic paths plus canonical equalities), extremal
/// objects when the full shape is bound, and gen_E agreement.
pub fn validate_process(p: &ProcessModel, max_len: Option<usize>) -> ValidationReport {
    let d = p.checked_diagram();
    let axioms = check_axioms(&d);
    let commutativity = check_commutativity(&d, max_len);
    let extremal = p.is_full().then(|| {
        let knowledge = &p.roles.objects[&ObjectRole::Knowledge];
        let system = &p.roles.objects[&ObjectRole::System];
        vec![
            check_extremal(&d, knowledge, ExtremalKind::Terminal, max_len)
                .expect("bound object exists"),
            check_extremal(&d, system, ExtremalKind::Initial, max_len)
                .expect("bound object exists"),
        ]
    });
    let gen_e = check_gen_e(p);
    let passed = axioms.passed
        && commutativity.passed
        && extremal.iter().flatten().all(|r| r.passed)
        && gen_e.as_ref().is_none_or(|g| g.passed);
    ValidationReport {
        passed,
        axioms,
        commutativity,
        extremal,
        gen_e,
    }
}

/// Checks for a bare diagram (no roles): axioms and commutativity only.
pub fn validate_diagram(d: &Diagram, max_len: Option<usize>) -> ValidationReport {
    let axioms = check_axioms(d);
    let commutativity = check_commutativity(d, max_len);
    ValidationReport {
        passed: axioms.passed && commutativity.passed,
        axioms,
        commutativity,
        extremal: None,
        gen_e: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::finset::make_map;
    use std::sync::Arc;

    fn set(id: &str, els: &[&str]) -> Arc<FiniteSet> {
        Arc::new(FiniteSet::new(id, els).unwrap())
    }

    fn extension_only() -> (Diagram, RoleBindings) {
        let sys = set("Sys", &["s1", "s2"]);
        let data = set("D", &["d1", "d2"]);
        let rep = set("R", &["r1", "r2"]);
        let ev = set("E", &["p(a)", "p(b)"]);
        let measure = make_map("m", &sys, &data, &[("s1", "d1"), ("s2", "d2")]).unwrap();
        let render = make_map("rn", &data, &rep, &[("d1", "r1"), ("d2", "r2")]).unwrap();
        let read = make_map("rd", &rep, &ev, &[("r1", "p(a)"), ("r2", "p(b)")]).unwrap();
        let und = make_map("u", &data, &ev, &[("d1", "p(a)"), ("d2", "p(b)")]).unwrap();
        let d = build_diagram([sys, data, rep, ev], [measure, render, read, und], []).unwrap();
        let roles = RoleBindings::new()
            .object(ObjectRole::System, "Sys")
            .object(ObjectRole::Data, "D")
            .object(ObjectRole::Representation, "R")
            .object(ObjectRole::Evocation, "E")
            .morphism(MorphismRole::Measure, "m")
            .morphism(MorphismRole::Render, "rn")
            .morphism(MorphismRole::Read, "rd")
            .morphism(MorphismRole::Understanding, "u");
        (d, roles)
    }

    #[test]
    fn signatures_match_the_process_diagram() {
        use MorphismRole::*;
        use ObjectRole as O;
        assert_eq!(Raises.signature(), (O::Schema, O::Question));
        assert_eq!(Infers.signature(), (O::Evocation, O::Knowledge));
        assert_eq!(OpDesc.signature(), (O::System, O::Schema));
        assert_eq!(OpKnow.signature(), (O::Question, O::Knowledge));
        assert_eq!(Truth.signature(), (O::System, O::Knowledge));
        assert_eq!(MorphismRole::ALL.len(), 14);
        assert_eq!(ObjectRole::ALL.len(), 8);
    }

    #[test]
    fn role_names_round_trip() {
        for r in ObjectRole::ALL {
            assert_eq!(r.as_str().parse::<ObjectRole>().unwrap(), *r);
        }
        for r in MorphismRole::ALL {
            assert_eq!(r.as_str().parse::<Role>().unwrap(), Role::Morphism(*r));
        }
        assert!("Sistem".parse::<Role>().is_err());
        assert!("gen_d".parse::<Role>().is_err());
    }

    #[test]
    fn extension_only_model_is_valid() {
        let (d, roles) = extension_only();
        let p = build_process(d, roles, ProcessExtras::default()).unwrap();
        assert_eq!(intension_status(&p), IntensionStatus::ExtensionOnly);
        let eqs: Vec<_> = required_equalities(&p).iter().map(|e| e.name).collect();
        assert_eq!(eqs, vec!["understanding = read∘render"]);
        let v = validate_process(&p, None);
        assert!(v.passed);
        assert!(v.extremal.is_none());
        assert!(matches!(answerable_questions(&p), Err(ProcessError::NoIntension)));
    }

    #[test]
    fn no_roles_means_no_equalities() {
        let (d, _) = extension_only();
        let p = build_process(d, RoleBindings::new(), ProcessExtras::default()).unwrap();
        assert!(required_equalities(&p).is_empty());
    }

    #[test]
    fn partial_intension_is_rejected() {
        let (d, roles) = extension_only();
        let schema = set("Sch", &["col"]);
        let mut objects: Vec<_> = d.objects().cloned().collect();
        objects.push(schema);
        let d = build_diagram(objects, d.morphisms().cloned().collect::<Vec<_>>(), []).unwrap();
        let roles = roles.object(ObjectRole::Schema, "Sch");
        assert!(matches!(
            build_process(d, roles, ProcessExtras::default()),
            Err(ProcessError::PartialIntension { .. })
        ));
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        let (d, roles) = extension_only();
        let roles = roles.morphism(MorphismRole::Render, "rd");
        assert!(matches!(
            build_process(d, roles, ProcessExtras::default()),
            Err(ProcessError::SignatureMismatch { role: MorphismRole::Render, .. })
        ));
    }

    #[test]
    fn corrupted_understanding_names_the_equality() {
        let (d, roles) = extension_only();
        let data = d.object("D").unwrap().clone();
        let ev = d.object("E").unwrap().clone();
        let bad = make_map("u", &data, &ev, &[("d1", "p(a)"), ("d2", "p(a)")]).unwrap();
        let mut d = d;
        d.replace_morphism_unchecked("u", bad);
        let p = build_process(d, roles, ProcessExtras::default()).unwrap();
        let v = validate_process(&p, None);
        assert!(!v.passed);
        let named: Vec<_> = v
            .commutativity
            .failures
            .iter()
            .filter_map(|f| f.equality.as_deref())
            .collect();
        assert_eq!(named, vec!["understanding = read∘render"]);
        assert_eq!(v.commutativity.failures[0].witness.as_str(), "d2");
    }

    #[test]
    fn generalize_examples() {
        let t = generalize_token("best_mark(Alan)").unwrap();
        assert_eq!(t.to_string(), "best_mark(_)");
        assert_eq!(generalize_token("average_mark(> 70)").unwrap().to_string(), "average_mark(_)");
        assert_eq!(generalize_token("p(a,b)").unwrap().to_string(), "p(_,_)");
        assert_eq!(generalize_token("p(f(x,y), b)").unwrap().arity, 2);
        for bad in ["Alan", "p()", "(a)", "p(a", "p(a))", "p(a,)", "two words(a)"] {
            assert!(generalize_token(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn generalize_is_idempotent_on_rendered_templates() {
        for token in ["best_mark(Alan)", "p(a,b,c)", "q(> 70)"] {
            let once = generalize_token(token).unwrap();
            let twice = generalize_token(&once.to_string()).unwrap();
            assert_eq!(once, twice);
        }
    }
}
