//! Properties of a visualization derived from the bound morphisms.
//!
//! The render morphism's set-level type determines four characteristics:
//!
//! | render is   | sensitive | non-redundant | non-ambiguous |
//! |-------------|-----------|---------------|---------------|
//! | injective   | yes       |               |               |
//! | surjective  |           | yes           |               |
//! | bijective   | yes       | yes           | yes           |
//!
//! and it is literal exactly when it is an endomorphism (Data and
//! Representation are the same object). On finite sets an endomorphism is
//! injective iff surjective iff bijective, so the endomorphic "injective only"
//! and "surjective only" cases cannot occur.
//!
//! Sensitivity and redundancy switch to the quantified (categorical) form when
//! alternate measures or reads are declared: render is sensitive when distinct
//! measures always give distinct representations, and non-redundant when
//! distinct reads always give distinct understandings.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{categorical_status, CategoricalStatus, Mode};
use crate::finset::{classify_map, compose, identity, inverse, maps_equal, ElementId, FiniteMap};
use crate::process::{
    answerable_questions, intension_status, IntensionStatus, MorphismRole, ObjectRole,
    ProcessModel, QuestionCoverage,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("role {0} is not bound")]
    MissingRole(MorphismRole),
    #[error("model has no intensional level")]
    NoIntension,
    #[error("no derivation annotation was supplied")]
    MissingDerivations,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two elements sent to the same place.
    Collision { first: ElementId, second: ElementId },
    /// An element outside the image.
    Unhit { element: ElementId },
    /// Two distinct morphisms whose composites with render coincide.
    Morphisms { first: String, second: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensitivityReport {
    pub sensitive: bool,
    pub mode: Mode,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundancyReport {
    pub non_redundant: bool,
    pub mode: Mode,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RenderProfile {
    pub sensitivity: SensitivityReport,
    pub redundancy: RedundancyReport,
    /// Data and Representation are the same object.
    pub literal: bool,
    /// render is the identity.
    pub strictly_literal: bool,
    pub non_ambiguous: bool,
    pub ambiguity: Option<Witness>,
    /// Inverse of render, when it exists.
    pub decode: Option<FiniteMap>,
}

impl RenderProfile {
    pub fn sensitive(&self) -> bool {
        self.sensitivity.sensitive
    }

    pub fn non_redundant(&self) -> bool {
        self.redundancy.non_redundant
    }
}

fn render_of(p: &ProcessModel) -> Result<&FiniteMap, AnalysisError> {
    p.morphism(MorphismRole::Render)
        .ok_or(AnalysisError::MissingRole(MorphismRole::Render))
}

/// First pair of distinct maps (by table) whose images under `post`
/// coincide. Pairs are visited in declaration order.
fn equalized_pair<'a>(
    candidates: &[&'a FiniteMap],
    post: impl Fn(&FiniteMap) -> Option<FiniteMap>,
) -> Option<(&'a FiniteMap, &'a FiniteMap)> {
    let images: Vec<Option<FiniteMap>> = candidates.iter().map(|m| post(m)).collect();
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if maps_equal(candidates[i], candidates[j]) {
                continue;
            }
            if let (Some(a), Some(b)) = (&images[i], &images[j]) {
                if maps_equal(a, b) {
                    return Some((candidates[i], candidates[j]));
                }
            }
        }
    }
    None
}

pub fn sensitivity_report(p: &ProcessModel) -> Result<SensitivityReport, AnalysisError> {
    let render = render_of(p)?;
    if p.extras().alt_measures.is_empty() {
        let c = classify_map(render);
        return Ok(SensitivityReport {
            sensitive: c.injective,
            mode: Mode::SetLevel,
            witness: c
                .collision
                .map(|(first, second)| Witness::Collision { first, second }),
        });
    }
    let measures: Vec<&FiniteMap> = p
        .morphism(MorphismRole::Measure)
        .into_iter()
        .chain(p.alt_measures())
        .collect();
    let pair = equalized_pair(&measures, |m| compose(render, m).ok());
    Ok(SensitivityReport {
        sensitive: pair.is_none(),
        mode: Mode::Categorical,
        witness: pair.map(|(a, b)| Witness::Morphisms {
            first: a.id().to_string(),
            second: b.id().to_string(),
        }),
    })
}

pub fn redundancy_report(p: &ProcessModel) -> Result<RedundancyReport, AnalysisError> {
    let render = render_of(p)?;
    if p.extras().alt_reads.is_empty() {
        let c = classify_map(render);
        return Ok(RedundancyReport {
            non_redundant: c.surjective,
            mode: Mode::SetLevel,
            witness: c.missed.map(|element| Witness::Unhit { element }),
        });
    }
    let reads: Vec<&FiniteMap> = p
        .morphism(MorphismRole::Read)
        .into_iter()
        .chain(p.alt_reads())
        .collect();
    let pair = equalized_pair(&reads, |r| compose(r, render).ok());
    Ok(RedundancyReport {
        non_redundant: pair.is_none(),
        mode: Mode::Categorical,
        witness: pair.map(|(a, b)| Witness::Morphisms {
            first: a.id().to_string(),
            second: b.id().to_string(),
        }),
    })
}

pub fn profile_render(p: &ProcessModel) -> Result<RenderProfile, AnalysisError> {
    let render = render_of(p)?;
    let c = classify_map(render);
    let literal = c.endomorphic;
    let strictly_literal = literal && maps_equal(render, &identity(render.dom()));
    let decode = inverse(render).ok().map(|d| d.renamed("decode"));
    let ambiguity = match (&c.collision, &c.missed) {
        (Some((a, b)), _) => Some(Witness::Collision {
            first: a.clone(),
            second: b.clone(),
        }),
        (None, Some(x)) => Some(Witness::Unhit { element: x.clone() }),
        (None, None) => None,
    };
    Ok(RenderProfile {
        sensitivity: sensitivity_report(p)?,
        redundancy: redundancy_report(p)?,
        literal,
        strictly_literal,
        non_ambiguous: c.bijective,
        ambiguity,
        decode,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundantGroup {
    pub source: ElementId,
    pub layout: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartJunkReport {
    /// Layout elements with no derivation from the Schema.
    pub arbitrary_junk: Vec<ElementId>,
    /// Layout elements that share one Schema source.
    pub redundant_groups: Vec<RedundantGroup>,
    /// Every Schema element is recovered by deriving back from its rule.
    pub rules_consistency: bool,
    pub inconsistent_rules: Vec<ElementId>,
}

pub fn detect_chart_junk(p: &ProcessModel) -> Result<ChartJunkReport, AnalysisError> {
    if intension_status(p) != IntensionStatus::Full {
        return Err(AnalysisError::NoIntension);
    }
    let derivations = p.derivations().ok_or(AnalysisError::MissingDerivations)?;
    let layout = p.object(ObjectRole::Layout).expect("intension bound");
    let schema = p.object(ObjectRole::Schema).expect("intension bound");
    let rules = p
        .morphism(MorphismRole::Rules)
        .ok_or(AnalysisError::MissingRole(MorphismRole::Rules))?;

    let derived: HashMap<&ElementId, &ElementId> =
        derivations.iter().map(|(l, s)| (l, s)).collect();

    let arbitrary_junk = layout
        .elements()
        .filter(|l| !derived.contains_key(l))
        .cloned()
        .collect();

    let redundant_groups = schema
        .elements()
        .filter_map(|s| {
            let members: Vec<ElementId> = layout
                .elements()
                .filter(|l| derived.get(l) == Some(&s))
                .cloned()
                .collect();
            (members.len() >= 2).then(|| RedundantGroup {
                source: s.clone(),
                layout: members,
            })
        })
        .collect();

    let inconsistent_rules: Vec<ElementId> = rules
        .pairs()
        .filter(|(s, l)| derived.get(l) != Some(s))
        .map(|(s, _)| s.clone())
        .collect();

    Ok(ChartJunkReport {
        arbitrary_junk,
        redundant_groups,
        rules_consistency: inconsistent_rules.is_empty(),
        inconsistent_rules,
    })
}

/// Everything derivable from a model; sections are absent when the roles they
/// need are not bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub render_profile: Option<RenderProfile>,
    pub render_status: Option<CategoricalStatus>,
    pub chart_junk: Option<ChartJunkReport>,
    pub intension: IntensionStatus,
    pub intension_note: &'static str,
    pub questions: Option<QuestionCoverage>,
    pub notes: Vec<String>,
}

pub fn analyze(p: &ProcessModel, mode: Mode) -> AnalysisReport {
    let mut notes = Vec::new();
    let render_profile = match profile_render(p) {
        Ok(r) => Some(r),
        Err(e) => {
            notes.push(format!("render profile skipped: {e}"));
            None
        }
    };
    let render_status = p
        .roles()
        .morphisms
        .get(&MorphismRole::Render)
        .and_then(|id| categorical_status(p.diagram(), id, mode).ok());
    let chart_junk = match detect_chart_junk(p) {
        Ok(r) => Some(r),
        Err(AnalysisError::NoIntension) => None,
        Err(e) => {
            notes.push(format!("chart junk skipped: {e}"));
            None
        }
    };
    let intension = intension_status(p);
    AnalysisReport {
        render_profile,
        render_status,
        chart_junk,
        intension,
        intension_note: intension.note(),
        questions: answerable_questions(p).ok(),
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::finset::{make_map, FiniteSet};
    use crate::process::{build_process, ProcessExtras, RoleBindings};
    use std::sync::Arc;

    fn set(id: &str, els: &[&str]) -> Arc<FiniteSet> {
        Arc::new(FiniteSet::new(id, els).unwrap())
    }

    fn render_only(data: Arc<FiniteSet>, rep: Arc<FiniteSet>, pairs: &[(&str, &str)]) -> ProcessModel {
        let render = make_map("render", &data, &rep, pairs).unwrap();
        let objects = if data.id() == rep.id() {
            vec![data.clone()]
        } else {
            vec![data.clone(), rep.clone()]
        };
        let d = build_diagram(objects, [render], []).unwrap();
        let roles = RoleBindings::new()
            .object(ObjectRole::Data, data.id())
            .object(ObjectRole::Representation, rep.id())
            .morphism(MorphismRole::Render, "render");
        build_process(d, roles, ProcessExtras::default()).unwrap()
    }

    #[test]
    fn identity_render_is_literal_and_unambiguous() {
        let data = set("Table", &["r1", "r2", "r3"]);
        let p = render_only(data.clone(), data, &[("r1", "r1"), ("r2", "r2"), ("r3", "r3")]);
        let prof = profile_render(&p).unwrap();
        assert!(prof.literal && prof.strictly_literal);
        assert!(prof.sensitive() && prof.non_redundant() && prof.non_ambiguous);
        assert_eq!(prof.sensitivity.mode, Mode::SetLevel);
    }

    #[test]
    fn collapsing_render_is_ambiguous() {
        let data = set("D", &["a", "b"]);
        let rep = set("R", &["m"]);
        let p = render_only(data, rep, &[("a", "m"), ("b", "m")]);
        let prof = profile_render(&p).unwrap();
        assert!(!prof.non_ambiguous && prof.decode.is_none());
        assert_eq!(
            prof.ambiguity,
            Some(Witness::Collision {
                first: ElementId::new("a").unwrap(),
                second: ElementId::new("b").unwrap()
            })
        );
        assert!(!prof.sensitive());
    }

    #[test]
    fn bijective_non_endo_render() {
        let data = set("D", &["a", "b"]);
        let rep = set("R", &["x", "y"]);
        let p = render_only(data, rep, &[("a", "y"), ("b", "x")]);
        let prof = profile_render(&p).unwrap();
        assert!(prof.sensitive() && prof.non_redundant() && prof.non_ambiguous && !prof.literal);
        let decode = prof.decode.unwrap();
        let render = p.morphism(MorphismRole::Render).unwrap();
        assert_eq!(compose(&decode, render).unwrap(), identity(render.dom()));
    }

    #[test]
    fn unhit_mark_is_the_redundancy_witness() {
        let data = set("D", &["a"]);
        let rep = set("R", &["x", "legend"]);
        let p = render_only(data, rep, &[("a", "x")]);
        let r = redundancy_report(&p).unwrap();
        assert!(!r.non_redundant);
        assert_eq!(
            r.witness,
            Some(Witness::Unhit {
                element: ElementId::new("legend").unwrap()
            })
        );
    }

    #[test]
    fn render_must_be_bound() {
        let d = build_diagram([set("D", &["a"])], [], []).unwrap();
        let p = build_process(
            d,
            RoleBindings::new().object(ObjectRole::Data, "D"),
            ProcessExtras::default(),
        )
        .unwrap();
        assert_eq!(
            profile_render(&p).unwrap_err(),
            AnalysisError::MissingRole(MorphismRole::Render)
        );
        assert_eq!(detect_chart_junk(&p).unwrap_err(), AnalysisError::NoIntension);
    }
}
