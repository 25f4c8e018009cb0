//! Diagrams: labeled multigraphs of finite sets and maps.
//!
//! Paths are stored in application order (`[f, g]` means "first `f`, then
//! `g`", i.e. the composite `g∘f`). Identity morphisms are implicit unless a
//! morphism named `1_<object>` is declared, in which case it is checked against
//! the identity laws.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::finset::{
    classify_map, compose, identity, map_difference, maps_equal, ElementId, FiniteMap, FiniteSet,
    FinsetError, MapClassification, MapDifference,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown object `{object}` ({context})")]
    UnknownObject { object: String, context: String },
    #[error("morphism `{morphism}` uses a set named `{object}` whose elements differ from the declared object")]
    ObjectMismatch { morphism: String, object: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("equality refers to unknown morphism `{0}`")]
    DanglingEquality(String),
    #[error("ill-typed equality `{label}`: {reason}")]
    IllTypedEquality { label: String, reason: String },
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("path length bound must be at least 1")]
    ZeroLength,
    #[error(transparent)]
    Finset(#[from] FinsetError),
}

/// A composable chain of morphisms, in application order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub source: String,
    pub target: String,
    pub steps: Vec<String>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Right-to-left composite notation, e.g. `infers∘understanding∘measure`.
    pub fn composite_name(&self) -> String {
        if self.steps.is_empty() {
            return format!("1_{}", self.source);
        }
        let mut names: Vec<&str> = self.steps.iter().map(String::as_str).collect();
        names.reverse();
        names.join("∘")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.steps.join(", "))
    }
}

/// An asserted equality between two parallel paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeclaredEquality {
    pub label: String,
    pub left: Path,
    pub right: Path,
}

/// Input form of an equality: morphism ids in application order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualitySpec {
    pub label: Option<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl EqualitySpec {
    pub fn new<S: Into<String>>(
        left: impl IntoIterator<Item = S>,
        right: impl IntoIterator<Item = S>,
    ) -> Self {
        EqualitySpec {
            label: None,
            left: left.into_iter().map(Into::into).collect(),
            right: right.into_iter().map(Into::into).collect(),
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    objects: IndexMap<String, Arc<FiniteSet>>,
    morphisms: IndexMap<String, FiniteMap>,
    equalities: Vec<DeclaredEquality>,
}

/// Validates ids and wiring. Morphism tables are taken as given; the axiom
/// checker re-verifies them.
pub fn build_diagram(
    objects: impl IntoIterator<Item = Arc<FiniteSet>>,
    morphisms: impl IntoIterator<Item = FiniteMap>,
    equalities: impl IntoIterator<Item = EqualitySpec>,
) -> Result<Diagram, DiagramError> {
    let mut d = Diagram::default();
    for o in objects {
        if d.objects.contains_key(o.id()) {
            return Err(DiagramError::DuplicateId(o.id().to_string()));
        }
        d.objects.insert(o.id().to_string(), o);
    }
    for m in morphisms {
        if d.morphisms.contains_key(m.id()) {
            return Err(DiagramError::DuplicateId(m.id().to_string()));
        }
        for end in [m.dom(), m.cod()] {
            match d.objects.get(end.id()) {
                None => {
                    return Err(DiagramError::UnknownObject {
                        object: end.id().to_string(),
                        context: format!("endpoint of morphism `{}`", m.id()),
                    })
                }
                Some(o) if **o != **end => {
                    return Err(DiagramError::ObjectMismatch {
                        morphism: m.id().to_string(),
                        object: end.id().to_string(),
                    })
                }
                Some(_) => {}
            }
        }
        d.morphisms.insert(m.id().to_string(), m);
    }
    for eq in equalities {
        let declared = d.resolve_equality(eq)?;
        d.equalities.push(declared);
    }
    Ok(d)
}

impl Diagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = &Arc<FiniteSet>> + '_ {
        self.objects.values()
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = &FiniteMap> + '_ {
        self.morphisms.values()
    }

    pub fn equalities(&self) -> &[DeclaredEquality] {
        &self.equalities
    }

    pub fn object(&self, id: &str) -> Option<&Arc<FiniteSet>> {
        self.objects.get(id)
    }

    pub fn morphism(&self, id: &str) -> Option<&FiniteMap> {
        self.morphisms.get(id)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    /// A copy without the given morphisms or any equality that mentions them.
    pub fn without_morphisms(&self, ids: &[&str]) -> Diagram {
        let mut d = self.clone();
        d.morphisms.retain(|id, _| !ids.contains(&id.as_str()));
        d.equalities.retain(|eq| {
            eq.left
                .steps
                .iter()
                .chain(&eq.right.steps)
                .all(|s| !ids.contains(&s.as_str()))
        });
        d
    }

    /// A copy with extra equalities appended.
    pub fn with_equalities(
        &self,
        extra: impl IntoIterator<Item = EqualitySpec>,
    ) -> Result<Diagram, DiagramError> {
        let mut d = self.clone();
        for eq in extra {
            let declared = d.resolve_equality(eq)?;
            d.equalities.push(declared);
        }
        Ok(d)
    }

    /// Same diagram with `id` swapped for `replacement` (kept under the same id).
    #[doc(hidden)]
    pub fn replace_morphism_unchecked(&mut self, id: &str, replacement: FiniteMap) {
        if let Some(slot) = self.morphisms.get_mut(id) {
            *slot = replacement.renamed(id);
        }
    }

    fn require_object(&self, id: &str, context: &str) -> Result<&Arc<FiniteSet>, DiagramError> {
        self.objects.get(id).ok_or_else(|| DiagramError::UnknownObject {
            object: id.to_string(),
            context: context.to_string(),
        })
    }

    fn resolve_path(&self, steps: &[String], label: &str) -> Result<Path, DiagramError> {
        let mut source: Option<String> = None;
        let mut target: Option<String> = None;
        for step in steps {
            let m = self
                .morphisms
                .get(step)
                .ok_or_else(|| DiagramError::DanglingEquality(step.clone()))?;
            if let Some(t) = &target {
                if t != m.dom().id() {
                    return Err(DiagramError::IllTypedEquality {
                        label: label.to_string(),
                        reason: format!("`{step}` does not start at `{t}`"),
                    });
                }
            }
            source.get_or_insert_with(|| m.dom().id().to_string());
            target = Some(m.cod().id().to_string());
        }
        match (source, target) {
            (Some(source), Some(target)) => Ok(Path {
                source,
                target,
                steps: steps.to_vec(),
            }),
            _ => Err(DiagramError::IllTypedEquality {
                label: label.to_string(),
                reason: "empty side".to_string(),
            }),
        }
    }

    fn resolve_equality(&self, eq: EqualitySpec) -> Result<DeclaredEquality, DiagramError> {
        let provisional = eq.label.clone().unwrap_or_else(|| "equality".to_string());
        let left = self.resolve_path(&eq.left, &provisional)?;
        let right = self.resolve_path(&eq.right, &provisional)?;
        let label = eq
            .label
            .unwrap_or_else(|| format!("{} = {}", left.composite_name(), right.composite_name()));
        if left.source != right.source || left.target != right.target {
            return Err(DiagramError::IllTypedEquality {
                label,
                reason: format!(
                    "sides are not parallel ({} -> {} vs {} -> {})",
                    left.source, left.target, right.source, right.target
                ),
            });
        }
        Ok(DeclaredEquality { label, left, right })
    }

    /// Outgoing morphisms of each object, ids in lexicographic order.
    fn adjacency(&self) -> BTreeMap<&str, Vec<&FiniteMap>> {
        let mut adj: BTreeMap<&str, Vec<&FiniteMap>> = BTreeMap::new();
        for m in self.morphisms.values() {
            adj.entry(m.dom().id()).or_default().push(m);
        }
        for out in adj.values_mut() {
            out.sort_by(|a, b| a.id().cmp(b.id()));
        }
        adj
    }

    /// Every simple path leaving `from`, of length 1..=max_len.
    ///
    /// No object is entered twice; at most one endomorphic step per path.
    fn paths_from(&self, from: &str, max_len: usize) -> Vec<Path> {
        struct Walk<'a> {
            adj: BTreeMap<&'a str, Vec<&'a FiniteMap>>,
            max_len: usize,
            source: &'a str,
            out: Vec<Path>,
        }
        fn go<'a>(
            w: &mut Walk<'a>,
            at: &'a str,
            visited: &mut HashSet<&'a str>,
            used_endo: bool,
            steps: &mut Vec<String>,
        ) {
            if steps.len() == w.max_len {
                return;
            }
            let outgoing = w.adj.get(at).cloned().unwrap_or_default();
            for m in outgoing {
                let next = m.cod().id();
                let endo = next == at;
                if endo && used_endo {
                    continue;
                }
                if !endo && visited.contains(next) {
                    continue;
                }
                steps.push(m.id().to_string());
                w.out.push(Path {
                    source: w.source.to_string(),
                    target: next.to_string(),
                    steps: steps.clone(),
                });
                if !endo {
                    visited.insert(next);
                }
                go(w, next, visited, used_endo || endo, steps);
                if !endo {
                    visited.remove(next);
                }
                steps.pop();
            }
        }
        let mut w = Walk {
            adj: self.adjacency(),
            max_len,
            source: from,
            out: Vec::new(),
        };
        let mut visited = HashSet::from([from]);
        go(&mut w, from, &mut visited, false, &mut Vec::new());
        w.out.sort_by(|a, b| a.steps.cmp(&b.steps));
        w.out
    }

    pub fn default_max_len(&self) -> usize {
        self.morphisms.len().max(1)
    }
}

/// All simple paths `from → to` with at most `max_len` steps, sorted
/// lexicographically by morphism id sequence.
pub fn enumerate_paths(
    d: &Diagram,
    from: &str,
    to: &str,
    max_len: usize,
) -> Result<Vec<Path>, DiagramError> {
    d.require_object(from, "path source")?;
    d.require_object(to, "path target")?;
    if max_len == 0 {
        return Err(DiagramError::ZeroLength);
    }
    Ok(d
        .paths_from(from, max_len)
        .into_iter()
        .filter(|p| p.target == to)
        .collect())
}

pub fn compose_path(d: &Diagram, p: &Path) -> Result<FiniteMap, DiagramError> {
    let mut acc: Option<FiniteMap> = None;
    for step in &p.steps {
        let m = d
            .morphism(step)
            .ok_or_else(|| DiagramError::UnknownMorphism(step.clone()))?;
        acc = Some(match acc {
            None => m.clone(),
            Some(f) => compose(m, &f)?,
        });
    }
    match acc {
        Some(f) => Ok(f),
        None => {
            let o = d.require_object(&p.source, "empty path")?;
            Ok(identity(o))
        }
    }
}

/// Two parallel paths that compose to different maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommuteFailure {
    /// Name of the declared equality, when the pair came from one.
    pub equality: Option<String>,
    pub left_path: Path,
    pub right_path: Path,
    pub witness: ElementId,
    pub via_left: ElementId,
    pub via_right: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unevaluated {
    pub path: Path,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommuteReport {
    pub passed: bool,
    pub pairs_compared: usize,
    pub failures: Vec<CommuteFailure>,
    /// Paths that could not be composed (malformed tables).
    pub unevaluated: Vec<Unevaluated>,
}

enum Comparison {
    Equal,
    Differ(Box<CommuteFailure>),
}

fn compare_paths(
    cache: &mut BTreeMap<Vec<String>, Result<FiniteMap, String>>,
    d: &Diagram,
    left: &Path,
    right: &Path,
    label: Option<&str>,
    unevaluated: &mut Vec<Unevaluated>,
) -> Option<Comparison> {
    let mut eval = |p: &Path| -> Option<FiniteMap> {
        let entry = cache
            .entry(p.steps.clone())
            .or_insert_with(|| compose_path(d, p).map_err(|e| e.to_string()));
        match entry {
            Ok(f) => Some(f.clone()),
            Err(reason) => {
                if !unevaluated.iter().any(|u| u.path == *p) {
                    unevaluated.push(Unevaluated {
                        path: p.clone(),
                        reason: reason.clone(),
                    });
                }
                None
            }
        }
    };
    let fl = eval(left)?;
    let fr = eval(right)?;
    match map_difference(&fl, &fr) {
        None => Some(Comparison::Equal),
        Some(MapDifference::At {
            element,
            left: a,
            right: b,
        }) => Some(Comparison::Differ(Box::new(CommuteFailure {
            equality: label.map(str::to_string),
            left_path: left.clone(),
            right_path: right.clone(),
            witness: element,
            via_left: a,
            via_right: b,
        }))),
        // Parallel paths share endpoints, so only a malformed table gets here.
        Some(_) => {
            unevaluated.push(Unevaluated {
                path: left.clone(),
                reason: format!("cannot compare with {right}"),
            });
            None
        }
    }
}

/// Compares every pair of parallel simple paths, then every declared equality.
///
/// Generic pairs that coincide with a declared equality are reported once,
/// under the equality's label.
pub fn check_commutativity(d: &Diagram, max_len: Option<usize>) -> CommuteReport {
    let max_len = max_len.unwrap_or_else(|| d.default_max_len()).max(1);
    let mut cache = BTreeMap::new();
    let mut failures = Vec::new();
    let mut unevaluated = Vec::new();
    let mut compared = 0;

    let mut declared_pairs = HashSet::new();
    for eq in d.equalities() {
        declared_pairs.insert((eq.left.steps.clone(), eq.right.steps.clone()));
        declared_pairs.insert((eq.right.steps.clone(), eq.left.steps.clone()));
        compared += 1;
        if let Some(Comparison::Differ(f)) = compare_paths(
            &mut cache,
            d,
            &eq.left,
            &eq.right,
            Some(&eq.label),
            &mut unevaluated,
        ) {
            failures.push(*f);
        }
    }

    for from in d.objects.keys() {
        let mut by_target: BTreeMap<&str, Vec<Path>> = BTreeMap::new();
        for p in d.paths_from(from, max_len) {
            let key = d.objects.get_key_value(&p.target).expect("resolved").0.as_str();
            by_target.entry(key).or_default().push(p);
        }
        // Report in object declaration order.
        for to in d.objects.keys() {
            let Some(paths) = by_target.get(to.as_str()) else { continue };
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    let (l, r) = (&paths[i], &paths[j]);
                    if declared_pairs.contains(&(l.steps.clone(), r.steps.clone())) {
                        continue;
                    }
                    compared += 1;
                    if let Some(Comparison::Differ(f)) =
                        compare_paths(&mut cache, d, l, r, None, &mut unevaluated)
                    {
                        failures.push(*f);
                    }
                }
            }
        }
    }

    CommuteReport {
        passed: failures.is_empty() && unevaluated.is_empty(),
        pairs_compared: compared,
        failures,
        unevaluated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub morphisms: Vec<String>,
    pub element: Option<ElementId>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub passed: bool,
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomCheck {
    fn new(checked: usize, violations: Vec<AxiomViolation>) -> Self {
        AxiomCheck {
            passed: violations.is_empty(),
            checked,
            violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub identity: AxiomCheck,
    pub totality: AxiomCheck,
    pub associativity: AxiomCheck,
}

fn difference_element(f: &FiniteMap, g: &FiniteMap) -> Option<ElementId> {
    match map_difference(f, g)? {
        MapDifference::At { element, .. } | MapDifference::Malformed { element } => Some(element),
        _ => None,
    }
}

/// Re-verifies the category axioms on a diagram: identities (declared ones
/// named `1_<object>` or synthesized), totality of every table, and
/// associativity of every composable triple.
pub fn check_axioms(d: &Diagram) -> AxiomReport {
    // Totality first; the other checks only use well-formed morphisms.
    let mut total_violations = Vec::new();
    let mut valid: Vec<&FiniteMap> = Vec::new();
    for m in d.morphisms() {
        let wired = [m.dom(), m.cod()]
            .iter()
            .all(|o| d.object(o.id()).is_some_and(|x| **x == ***o));
        match m.check_table() {
            Ok(()) if wired => valid.push(m),
            Ok(()) => total_violations.push(AxiomViolation {
                morphisms: vec![m.id().to_string()],
                element: None,
                message: "endpoints do not resolve to diagram objects".to_string(),
            }),
            Err(e) => {
                let element = m
                    .dom()
                    .elements()
                    .enumerate()
                    .find(|(i, _)| m.table().get(*i).is_none_or(|&j| j >= m.cod().len()))
                    .map(|(_, x)| x.clone());
                total_violations.push(AxiomViolation {
                    morphisms: vec![m.id().to_string()],
                    element,
                    message: e.to_string(),
                })
            }
        }
    }
    let totality = AxiomCheck::new(d.morphism_count(), total_violations);

    let mut id_violations = Vec::new();
    let mut id_checks = 0;
    let mut identities: BTreeMap<&str, FiniteMap> = BTreeMap::new();
    for o in d.objects() {
        let synthesized = identity(o);
        let declared_name = format!("1_{}", o.id());
        let chosen = match d.morphism(&declared_name) {
            Some(decl) if valid.iter().any(|v| v.id() == decl.id()) => {
                id_checks += 1;
                if decl.dom().id() != o.id() || decl.cod().id() != o.id() {
                    id_violations.push(AxiomViolation {
                        morphisms: vec![declared_name.clone()],
                        element: None,
                        message: format!("declared identity is not an endomorphism of `{}`", o.id()),
                    });
                    synthesized
                } else if !maps_equal(decl, &synthesized) {
                    // 1∘1_synth = 1 forces decl to be the identity table.
                    id_violations.push(AxiomViolation {
                        morphisms: vec![declared_name.clone()],
                        element: difference_element(decl, &synthesized),
                        message: "declared identity moves an element".to_string(),
                    });
                    synthesized
                } else {
                    decl.clone()
                }
            }
            _ => synthesized,
        };
        identities.insert(o.id(), chosen);
    }
    for f in &valid {
        let (Some(id_dom), Some(id_cod)) =
            (identities.get(f.dom().id()), identities.get(f.cod().id()))
        else {
            continue;
        };
        id_checks += 2;
        for (composite, law) in [
            (compose(f, id_dom), format!("{}∘1_{} = {}", f.id(), f.dom().id(), f.id())),
            (compose(id_cod, f), format!("1_{}∘{} = {}", f.cod().id(), f.id(), f.id())),
        ] {
            match composite {
                Ok(c) if maps_equal(&c, f) => {}
                Ok(c) => id_violations.push(AxiomViolation {
                    morphisms: vec![f.id().to_string()],
                    element: difference_element(&c, f),
                    message: format!("identity law {law} fails"),
                }),
                Err(e) => id_violations.push(AxiomViolation {
                    morphisms: vec![f.id().to_string()],
                    element: None,
                    message: e.to_string(),
                }),
            }
        }
    }
    let identity_check = AxiomCheck::new(id_checks, id_violations);

    let mut by_dom: BTreeMap<&str, Vec<&FiniteMap>> = BTreeMap::new();
    for f in &valid {
        by_dom.entry(f.dom().id()).or_default().push(f);
    }
    let mut assoc_violations = Vec::new();
    let mut triples = 0;
    for f in &valid {
        for g in by_dom.get(f.cod().id()).into_iter().flatten() {
            let Ok(gf) = compose(g, f) else { continue };
            for h in by_dom.get(g.cod().id()).into_iter().flatten() {
                triples += 1;
                let (Ok(left), Ok(hg)) = (compose(h, &gf), compose(h, g)) else {
                    continue;
                };
                let Ok(right) = compose(&hg, f) else { continue };
                if !maps_equal(&left, &right) {
                    assoc_violations.push(AxiomViolation {
                        morphisms: vec![f.id().into(), g.id().into(), h.id().into()],
                        element: difference_element(&left, &right),
                        message: "h∘(g∘f) ≠ (h∘g)∘f".to_string(),
                    });
                }
            }
        }
    }
    let associativity = AxiomCheck::new(triples, assoc_violations);

    AxiomReport {
        passed: identity_check.passed && totality.passed && associativity.passed,
        identity: identity_check,
        totality,
        associativity,
    }
}

/// How monic/epic are decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Injective / surjective / bijective on the underlying sets.
    #[default]
    SetLevel,
    /// Cancellation laws quantified over the morphisms declared in the diagram.
    Categorical,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::SetLevel => "set-level",
            Mode::Categorical => "categorical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoricalStatus {
    pub morphism: String,
    pub mode: Mode,
    pub monic: bool,
    pub epic: bool,
    pub endic: bool,
    pub isic: bool,
    /// Distinct declared maps equalized by composition with the morphism.
    pub monic_witness: Option<(String, String)>,
    pub epic_witness: Option<(String, String)>,
    /// Present in set-level mode.
    pub classification: Option<MapClassification>,
}

pub fn categorical_status(
    d: &Diagram,
    f_id: &str,
    mode: Mode,
) -> Result<CategoricalStatus, DiagramError> {
    let f = d
        .morphism(f_id)
        .ok_or_else(|| DiagramError::UnknownMorphism(f_id.to_string()))?;
    let endic = f.dom().id() == f.cod().id() && f.is_endomorphic();
    match mode {
        Mode::SetLevel => {
            let c = classify_map(f);
            Ok(CategoricalStatus {
                morphism: f_id.to_string(),
                mode,
                monic: c.injective,
                epic: c.surjective,
                endic,
                isic: c.bijective,
                monic_witness: None,
                epic_witness: None,
                classification: Some(c),
            })
        }
        Mode::Categorical => {
            let dom = f.dom().id();
            let cod = f.cod().id();

            // g₁, g₂ : X → dom(f) with f∘g₁ = f∘g₂, g₁ ≠ g₂
            let mut monic_witness = None;
            let mut into_dom: BTreeMap<&str, Vec<(&FiniteMap, FiniteMap)>> = BTreeMap::new();
            for g in d.morphisms().filter(|g| g.cod().id() == dom) {
                if let Ok(fg) = compose(f, g) {
                    into_dom.entry(g.dom().id()).or_default().push((g, fg));
                }
            }
            'monic: for group in into_dom.values() {
                for (i, (g1, fg1)) in group.iter().enumerate() {
                    for (g2, fg2) in &group[i + 1..] {
                        if maps_equal(fg1, fg2) && !maps_equal(g1, g2) {
                            monic_witness = Some((g1.id().to_string(), g2.id().to_string()));
                            break 'monic;
                        }
                    }
                }
            }

            // g₁, g₂ : cod(f) → Y with g₁∘f = g₂∘f, g₁ ≠ g₂
            let mut epic_witness = None;
            let mut out_of_cod: BTreeMap<&str, Vec<(&FiniteMap, FiniteMap)>> = BTreeMap::new();
            for g in d.morphisms().filter(|g| g.dom().id() == cod) {
                if let Ok(gf) = compose(g, f) {
                    out_of_cod.entry(g.cod().id()).or_default().push((g, gf));
                }
            }
            'epic: for group in out_of_cod.values() {
                for (i, (g1, g1f)) in group.iter().enumerate() {
                    for (g2, g2f) in &group[i + 1..] {
                        if maps_equal(g1f, g2f) && !maps_equal(g1, g2) {
                            epic_witness = Some((g1.id().to_string(), g2.id().to_string()));
                            break 'epic;
                        }
                    }
                }
            }

            let id_dom = identity(f.dom());
            let id_cod = identity(f.cod());
            let isic = d.morphisms().any(|g| {
                g.dom().id() == cod
                    && g.cod().id() == dom
                    && compose(g, f).is_ok_and(|gf| maps_equal(&gf, &id_dom))
                    && compose(f, g).is_ok_and(|fg| maps_equal(&fg, &id_cod))
            });

            Ok(CategoricalStatus {
                morphism: f_id.to_string(),
                mode,
                monic: monic_witness.is_none(),
                epic: epic_witness.is_none(),
                endic,
                isic,
                monic_witness,
                epic_witness,
                classification: None,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalKind {
    Terminal,
    Initial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub object: String,
    pub kind: ExtremalKind,
    pub passed: bool,
    /// Objects with no path to (terminal) or from (initial) the object.
    pub unreachable: Vec<String>,
    pub disagreements: Vec<CommuteFailure>,
}

/// Terminal: every other object reaches `obj` and all its parallel paths into
/// `obj` agree. Initial is the dual.
pub fn check_extremal(
    d: &Diagram,
    obj: &str,
    kind: ExtremalKind,
    max_len: Option<usize>,
) -> Result<ExtremalReport, DiagramError> {
    d.require_object(obj, "extremal object")?;
    let max_len = max_len.unwrap_or_else(|| d.default_max_len()).max(1);
    let mut cache = BTreeMap::new();
    let mut unreachable = Vec::new();
    let mut disagreements = Vec::new();
    let mut unevaluated = Vec::new();
    for other in d.objects.keys().filter(|o| o.as_str() != obj) {
        let paths = match kind {
            ExtremalKind::Terminal => enumerate_paths(d, other, obj, max_len)?,
            ExtremalKind::Initial => enumerate_paths(d, obj, other, max_len)?,
        };
        if paths.is_empty() {
            unreachable.push(other.clone());
            continue;
        }
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                if let Some(Comparison::Differ(f)) =
                    compare_paths(&mut cache, d, &paths[i], &paths[j], None, &mut unevaluated)
                {
                    disagreements.push(*f);
                }
            }
        }
    }
    Ok(ExtremalReport {
        object: obj.to_string(),
        kind,
        passed: unreachable.is_empty() && disagreements.is_empty() && unevaluated.is_empty(),
        unreachable,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{hom_set, make_map};

    fn set(id: &str, els: &[&str]) -> Arc<FiniteSet> {
        Arc::new(FiniteSet::new(id, els).unwrap())
    }

    /// Fig. 4(b)-style triangle A → B → C with h = g∘f declared.
    fn triangle(h_pairs: &[(&str, &str)]) -> Diagram {
        let a = set("A", &["a1", "a2"]);
        let b = set("B", &["b1", "b2"]);
        let c = set("C", &["c1", "c2"]);
        let f = make_map("f", &a, &b, &[("a1", "b1"), ("a2", "b2")]).unwrap();
        let g = make_map("g", &b, &c, &[("b1", "c1"), ("b2", "c1")]).unwrap();
        let h = make_map("h", &a, &c, h_pairs).unwrap();
        build_diagram(
            [a, b, c],
            [f, g, h],
            [EqualitySpec::new(["h"], ["f", "g"])],
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let d = triangle(&[("a1", "c1"), ("a2", "c1")]);
        assert_eq!(d.equalities()[0].label, "h = g∘f");
        assert_eq!(d.morphism_count(), 3);

        let a = set("A", &["a"]);
        let b = set("B", &["b"]);
        let f = make_map("f", &a, &b, &[("a", "b")]).unwrap();
        assert!(matches!(
            build_diagram([a.clone()], [f.clone()], []),
            Err(DiagramError::UnknownObject { .. })
        ));
        assert!(matches!(
            build_diagram([a.clone(), b.clone()], [f.clone()], [EqualitySpec::new(["f"], ["nope"])]),
            Err(DiagramError::DanglingEquality(m)) if m == "nope"
        ));
        assert!(matches!(
            build_diagram([a.clone(), a.clone()], [], []),
            Err(DiagramError::DuplicateId(_))
        ));
        assert!(build_diagram([], [], []).unwrap().objects().len() == 0);
    }

    #[test]
    fn object_with_same_id_but_other_elements_is_rejected() {
        let a = set("A", &["a"]);
        let a2 = set("A", &["z"]);
        let f = make_map("f", &a2, &a2, &[("z", "z")]).unwrap();
        assert!(matches!(
            build_diagram([a], [f], []),
            Err(DiagramError::ObjectMismatch { .. })
        ));
    }

    #[test]
    fn ill_typed_equality_is_rejected() {
        let a = set("A", &["a"]);
        let b = set("B", &["b"]);
        let f = make_map("f", &a, &b, &[("a", "b")]).unwrap();
        let g = make_map("g", &b, &a, &[("b", "a")]).unwrap();
        assert!(matches!(
            build_diagram([a, b], [f, g], [EqualitySpec::new(["f"], ["g"])]),
            Err(DiagramError::IllTypedEquality { .. })
        ));
    }

    #[test]
    fn path_enumeration_examples() {
        let d = triangle(&[("a1", "c1"), ("a2", "c1")]);
        let paths = enumerate_paths(&d, "A", "C", 3).unwrap();
        let steps: Vec<_> = paths.iter().map(|p| p.steps.clone()).collect();
        assert_eq!(steps, vec![vec!["f".to_string(), "g".into()], vec!["h".into()]]);
        assert!(enumerate_paths(&d, "A", "A", 3).unwrap().is_empty());
        assert!(enumerate_paths(&d, "C", "A", 3).unwrap().is_empty());
        assert!(enumerate_paths(&d, "A", "Z", 3).is_err());
        assert!(enumerate_paths(&d, "A", "C", 0).is_err());
        assert_eq!(enumerate_paths(&d, "A", "C", 1).unwrap().len(), 1);
    }

    #[test]
    fn endomorphic_steps_are_taken_at_most_once() {
        let a = set("A", &["x", "y"]);
        let b = set("B", &["z"]);
        let e = make_map("e", &a, &a, &[("x", "y"), ("y", "x")]).unwrap();
        let e2 = make_map("e2", &a, &a, &[("x", "x"), ("y", "x")]).unwrap();
        let f = make_map("f", &a, &b, &[("x", "z"), ("y", "z")]).unwrap();
        let d = build_diagram([a, b], [e, e2, f], []).unwrap();
        let loops = enumerate_paths(&d, "A", "A", 5).unwrap();
        assert_eq!(loops.len(), 2);
        let to_b = enumerate_paths(&d, "A", "B", 5).unwrap();
        let steps: Vec<_> = to_b.iter().map(|p| p.steps.join(",")).collect();
        assert_eq!(steps, vec!["e,f", "e2,f", "f"]);
    }

    #[test]
    fn compose_path_examples() {
        let d = triangle(&[("a1", "c1"), ("a2", "c1")]);
        let single = Path {
            source: "A".into(),
            target: "B".into(),
            steps: vec!["f".into()],
        };
        assert_eq!(compose_path(&d, &single).unwrap(), *d.morphism("f").unwrap());
        let two = Path {
            source: "A".into(),
            target: "C".into(),
            steps: vec!["f".into(), "g".into()],
        };
        assert_eq!(compose_path(&d, &two).unwrap(), *d.morphism("h").unwrap());
    }

    #[test]
    fn identity_step_leaves_path_unchanged() {
        let a = set("A", &["a"]);
        let b = set("B", &["b1", "b2"]);
        let f = make_map("f", &a, &b, &[("a", "b2")]).unwrap();
        let id = identity(&b);
        let d = build_diagram([a, b], [f.clone(), id], []).unwrap();
        let p = Path {
            source: "A".into(),
            target: "B".into(),
            steps: vec!["f".into(), "1_B".into()],
        };
        assert_eq!(compose_path(&d, &p).unwrap(), f);
        assert!(check_axioms(&d).passed);
    }

    #[test]
    fn commutativity_examples() {
        let good = triangle(&[("a1", "c1"), ("a2", "c1")]);
        let r = check_commutativity(&good, None);
        assert!(r.passed, "{r:?}");

        let bad = triangle(&[("a1", "c1"), ("a2", "c2")]);
        let r = check_commutativity(&bad, None);
        assert!(!r.passed);
        assert_eq!(r.failures.len(), 1);
        let fail = &r.failures[0];
        assert_eq!(fail.equality.as_deref(), Some("h = g∘f"));
        assert_eq!(fail.witness.as_str(), "a2");
        assert_eq!(fail.via_left.as_str(), "c2");
        assert_eq!(fail.via_right.as_str(), "c1");

        let lonely = build_diagram([set("A", &["a"])], [], []).unwrap();
        assert!(check_commutativity(&lonely, None).passed);
    }

    #[test]
    fn undeclared_parallel_paths_are_compared_too() {
        let bad = triangle(&[("a1", "c1"), ("a2", "c2")]);
        let bare = build_diagram(
            bad.objects().cloned().collect::<Vec<_>>(),
            bad.morphisms().cloned().collect::<Vec<_>>(),
            [],
        )
        .unwrap();
        let r = check_commutativity(&bare, None);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].equality, None);
        assert_eq!(r.failures[0].witness.as_str(), "a2");
    }

    #[test]
    fn axiom_examples() {
        let d = triangle(&[("a1", "c1"), ("a2", "c1")]);
        let r = check_axioms(&d);
        assert!(r.passed);
        assert_eq!(r.associativity.checked, 0);

        let a = set("A", &["a1", "a2"]);
        let with_ids = build_diagram(
            [a.clone()],
            [identity(&a)],
            [],
        )
        .unwrap();
        let r = check_axioms(&with_ids);
        assert!(r.identity.passed && r.identity.checked > 0);

        let fake_id = make_map("1_A", &a, &a, &[("a1", "a1"), ("a2", "a1")]).unwrap();
        let r = check_axioms(&build_diagram([a.clone()], [fake_id], []).unwrap());
        assert!(!r.identity.passed);
        assert_eq!(r.identity.violations[0].element.as_ref().unwrap().as_str(), "a2");
    }

    #[test]
    fn corrupted_table_fails_totality_with_witness() {
        let mut d = triangle(&[("a1", "c1"), ("a2", "c1")]);
        let f = d.morphism("f").unwrap().clone();
        let corrupt = FiniteMap::from_raw_unchecked("f", f.dom().clone(), f.cod().clone(), vec![0, 9]);
        d.replace_morphism_unchecked("f", corrupt);
        let r = check_axioms(&d);
        assert!(!r.totality.passed);
        assert!(r.identity.passed && r.associativity.passed);
        assert_eq!(r.totality.violations[0].element.as_ref().unwrap().as_str(), "a2");
        let c = check_commutativity(&d, None);
        assert!(!c.passed);
        assert!(!c.unevaluated.is_empty());
    }

    #[test]
    fn categorical_status_examples() {
        // two kids share a mother
        let kids = set("Kids", &["ann", "bob"]);
        let moms = set("Mothers", &["mia"]);
        let mother = make_map("motherhood", &kids, &moms, &[("ann", "mia"), ("bob", "mia")]).unwrap();
        let d = build_diagram([kids, moms.clone()], [mother, identity(&moms)], []).unwrap();
        let s = categorical_status(&d, "motherhood", Mode::SetLevel).unwrap();
        assert!(!s.monic && s.epic && !s.isic && !s.endic);
        assert_eq!(s.mode, Mode::SetLevel);

        for mode in [Mode::SetLevel, Mode::Categorical] {
            let s = categorical_status(&d, "1_Mothers", mode).unwrap();
            assert!(s.monic && s.epic && s.isic && s.endic, "{mode}");
        }
        assert!(matches!(
            categorical_status(&d, "nope", Mode::SetLevel),
            Err(DiagramError::UnknownMorphism(_))
        ));
    }

    #[test]
    fn sparse_diagrams_can_disagree_between_modes() {
        // a constant map is not injective, yet with no maps into its domain
        // nothing witnesses the failure of left cancellation
        let a = set("A", &["x", "y"]);
        let b = set("B", &["z"]);
        let k = make_map("k", &a, &b, &[("x", "z"), ("y", "z")]).unwrap();
        let d = build_diagram([a, b], [k], []).unwrap();
        assert!(!categorical_status(&d, "k", Mode::SetLevel).unwrap().monic);
        assert!(categorical_status(&d, "k", Mode::Categorical).unwrap().monic);
    }

    #[test]
    fn categorical_modes_agree_on_full_hom_sets_small() {
        let sets: Vec<_> = (0..=2)
            .map(|n| {
                let els: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                Arc::new(FiniteSet::new(&format!("S{n}"), &els).unwrap())
            })
            .collect();
        let mut maps = Vec::new();
        for a in &sets {
            for b in &sets {
                maps.extend(hom_set(&format!("{}_{}_", a.id(), b.id()), a, b));
            }
        }
        let d = build_diagram(sets.clone(), maps.clone(), []).unwrap();
        for m in &maps {
            let s = categorical_status(&d, m.id(), Mode::SetLevel).unwrap();
            let c = categorical_status(&d, m.id(), Mode::Categorical).unwrap();
            assert_eq!((s.monic, s.epic, s.isic), (c.monic, c.epic, c.isic), "{}", m.id());
        }
    }

    #[test]
    fn extremal_examples() {
        let d = triangle(&[("a1", "c1"), ("a2", "c1")]);
        assert!(check_extremal(&d, "C", ExtremalKind::Terminal, None).unwrap().passed);
        assert!(check_extremal(&d, "A", ExtremalKind::Initial, None).unwrap().passed);
        let r = check_extremal(&d, "B", ExtremalKind::Terminal, None).unwrap();
        assert_eq!(r.unreachable, vec!["C".to_string()]);

        let bad = triangle(&[("a1", "c1"), ("a2", "c2")]);
        let r = check_extremal(&bad, "C", ExtremalKind::Terminal, None).unwrap();
        assert!(!r.passed && r.disagreements.len() == 1);

        let two = build_diagram([set("X", &["x"]), set("Y", &["y"])], [], []).unwrap();
        for kind in [ExtremalKind::Terminal, ExtremalKind::Initial] {
            let r = check_extremal(&two, "X", kind, None).unwrap();
            assert!(!r.passed);
            assert_eq!(r.unreachable, vec!["Y".to_string()]);
        }
        assert!(check_extremal(&two, "Q", ExtremalKind::Initial, None).is_err());
    }
}
