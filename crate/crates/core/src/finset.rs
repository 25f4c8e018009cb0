//! Finite sets and total functions between them.
//!
//! A [`FiniteSet`] is an ordered collection of distinct [`ElementId`]s and a
//! [`FiniteMap`] is a total table from one set into another. Tables are stored
//! as codomain indices aligned with the domain's declared order, so composition
//! and comparison are plain index lookups.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinsetError {
    #[error("identifier must not be empty")]
    EmptyIdentifier,
    #[error("invalid element token {0:?}: {1}")]
    InvalidElement(String, &'static str),
    #[error("duplicate element `{0}`")]
    DuplicateElement(ElementId),
    #[error("map `{map}`: no image given for `{element}`")]
    MissingSource { map: String, element: ElementId },
    #[error("map `{map}`: `{element}` is mapped more than once")]
    DuplicateSource { map: String, element: ElementId },
    #[error("map `{map}`: `{element}` is not an element of the domain `{set}`")]
    SourceNotInDomain {
        map: String,
        element: ElementId,
        set: String,
    },
    #[error("map `{map}`: `{element}` is not an element of the codomain `{set}`")]
    TargetNotInCodomain {
        map: String,
        element: ElementId,
        set: String,
    },
    #[error("`{element}` is not in the domain of `{map}`")]
    ElementNotInDomain { map: String, element: ElementId },
    #[error("cannot compose `{g}` after `{f}`: codomain `{f_cod}` is not domain `{g_dom}`")]
    NonComposable {
        f: String,
        g: String,
        f_cod: String,
        g_dom: String,
    },
    #[error("map `{0}` is not bijective")]
    NotBijective(String, Box<MapClassification>),
    #[error("map `{map}` has a malformed table: {reason}")]
    MalformedTable { map: String, reason: String },
}

/// An element token. Compared by exact equality after NFC normalization.
///
/// Tokens may contain interior spaces (quoted tokens such as
/// `"Alan performed the best"`), but no control characters and no leading or
/// trailing whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(Arc<str>);

impl ElementId {
    pub fn new(token: &str) -> Result<Self, FinsetError> {
        let normalized: String = token.nfc().collect();
        if normalized.is_empty() {
            return Err(FinsetError::EmptyIdentifier);
        }
        if normalized.chars().any(|c| c.is_control()) {
            return Err(FinsetError::InvalidElement(
                normalized,
                "control characters are not allowed",
            ));
        }
        if normalized.starts_with(char::is_whitespace) || normalized.ends_with(char::is_whitespace)
        {
            return Err(FinsetError::InvalidElement(
                normalized,
                "leading or trailing whitespace",
            ));
        }
        if normalized
            .chars()
            .any(|c| c.is_whitespace() && c != ' ')
        {
            return Err(FinsetError::InvalidElement(
                normalized,
                "only plain spaces may appear inside a token",
            ));
        }
        Ok(ElementId(normalized.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl serde::Serialize for ElementId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// A named finite set. Declared order is kept for output only.
#[derive(Debug, Clone)]
pub struct FiniteSet {
    id: String,
    elements: IndexSet<ElementId>,
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        // IndexSet equality ignores order.
        self.id == other.id && self.elements == other.elements
    }
}

impl Eq for FiniteSet {}

impl FiniteSet {
    pub fn new<S: AsRef<str>>(id: &str, elements: &[S]) -> Result<Self, FinsetError> {
        let ids = elements
            .iter()
            .map(|e| ElementId::new(e.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_elements(id, ids)
    }

    pub fn from_elements(
        id: &str,
        elements: impl IntoIterator<Item = ElementId>,
    ) -> Result<Self, FinsetError> {
        if id.is_empty() {
            return Err(FinsetError::EmptyIdentifier);
        }
        let mut set = IndexSet::new();
        for e in elements {
            if set.contains(&e) {
                return Err(FinsetError::DuplicateElement(e));
            }
            set.insert(e);
        }
        Ok(FiniteSet {
            id: id.to_string(),
            elements: set,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &ElementId> + '_ {
        self.elements.iter()
    }

    pub fn element(&self, index: usize) -> Option<&ElementId> {
        self.elements.get_index(index)
    }

    pub fn index_of(&self, e: &ElementId) -> Option<usize> {
        self.elements.get_index_of(e)
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.elements.contains(e)
    }
}

/// Builds a set; convenience over [`FiniteSet::new`].
pub fn make_set<S: AsRef<str>>(id: &str, elements: &[S]) -> Result<FiniteSet, FinsetError> {
    FiniteSet::new(id, elements)
}

/// A total function between two finite sets.
///
/// `table[i]` is the codomain index of the image of the `i`-th domain element.
#[derive(Debug, Clone)]
pub struct FiniteMap {
    id: String,
    dom: Arc<FiniteSet>,
    cod: Arc<FiniteSet>,
    table: Vec<usize>,
}

/// Equality by effect: names are ignored.
impl PartialEq for FiniteMap {
    fn eq(&self, other: &Self) -> bool {
        maps_equal(self, other)
    }
}

impl Eq for FiniteMap {}

impl FiniteMap {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        id: &str,
        dom: Arc<FiniteSet>,
        cod: Arc<FiniteSet>,
        pairs: &[(S, T)],
    ) -> Result<Self, FinsetError> {
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((ElementId::new(a.as_ref())?, ElementId::new(b.as_ref())?)))
            .collect::<Result<Vec<_>, FinsetError>>()?;
        Self::from_pairs(id, dom, cod, pairs)
    }

    pub fn from_pairs(
        id: &str,
        dom: Arc<FiniteSet>,
        cod: Arc<FiniteSet>,
        pairs: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self, FinsetError> {
        if id.is_empty() {
            return Err(FinsetError::EmptyIdentifier);
        }
        let mut table: Vec<Option<usize>> = vec![None; dom.len()];
        for (src, dst) in pairs {
            let Some(i) = dom.index_of(&src) else {
                return Err(FinsetError::SourceNotInDomain {
                    map: id.to_string(),
                    element: src,
                    set: dom.id().to_string(),
                });
            };
            let Some(j) = cod.index_of(&dst) else {
                return Err(FinsetError::TargetNotInCodomain {
                    map: id.to_string(),
                    element: dst,
                    set: cod.id().to_string(),
                });
            };
            if table[i].is_some() {
                return Err(FinsetError::DuplicateSource {
                    map: id.to_string(),
                    element: src,
                });
            }
            table[i] = Some(j);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, slot)| {
                slot.ok_or_else(|| FinsetError::MissingSource {
                    map: id.to_string(),
                    element: dom.element(i).expect("index in range").clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteMap {
            id: id.to_string(),
            dom,
            cod,
            table,
        })
    }

    /// Builds a map straight from codomain indices, validating them.
    pub fn from_indices(
        id: &str,
        dom: Arc<FiniteSet>,
        cod: Arc<FiniteSet>,
        table: Vec<usize>,
    ) -> Result<Self, FinsetError> {
        let map = FiniteMap {
            id: id.to_string(),
            dom,
            cod,
            table,
        };
        map.check_table()?;
        Ok(map)
    }

    /// Bypasses every check. Only for exercising the axiom re-verification.
    #[doc(hidden)]
    pub fn from_raw_unchecked(
        id: &str,
        dom: Arc<FiniteSet>,
        cod: Arc<FiniteSet>,
        table: Vec<usize>,
    ) -> Self {
        FiniteMap {
            id: id.to_string(),
            dom,
            cod,
            table,
        }
    }

    /// Re-verifies totality and closure of the table.
    pub fn check_table(&self) -> Result<(), FinsetError> {
        if self.table.len() != self.dom.len() {
            let reason = match self.dom.element(self.table.len()) {
                Some(e) => format!("no image for `{e}`"),
                None => format!(
                    "{} entries for a domain of {} elements",
                    self.table.len(),
                    self.dom.len()
                ),
            };
            return Err(FinsetError::MalformedTable {
                map: self.id.clone(),
                reason,
            });
        }
        for (i, &j) in self.table.iter().enumerate() {
            if j >= self.cod.len() {
                return Err(FinsetError::MalformedTable {
                    map: self.id.clone(),
                    reason: format!(
                        "image of `{}` lies outside `{}`",
                        self.dom.element(i).expect("index in range"),
                        self.cod.id()
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn renamed(&self, id: &str) -> FiniteMap {
        FiniteMap {
            id: id.to_string(),
            ..self.clone()
        }
    }

    pub fn dom(&self) -> &Arc<FiniteSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteSet> {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_endomorphic(&self) -> bool {
        self.dom == self.cod
    }

    /// `(x, f(x))` pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&ElementId, &ElementId)> + '_ {
        self.dom
            .elements()
            .zip(self.table.iter())
            .filter_map(|(x, &j)| self.cod.element(j).map(|y| (x, y)))
    }

    pub fn apply(&self, x: &ElementId) -> Result<&ElementId, FinsetError> {
        let missing = || FinsetError::ElementNotInDomain {
            map: self.id.clone(),
            element: x.clone(),
        };
        let i = self.dom.index_of(x).ok_or_else(missing)?;
        self.table
            .get(i)
            .and_then(|&j| self.cod.element(j))
            .ok_or_else(|| FinsetError::MalformedTable {
                map: self.id.clone(),
                reason: format!("no valid image for `{x}`"),
            })
    }

    /// Image of the `i`-th domain element, if the table is well formed there.
    fn image_index(&self, i: usize) -> Option<usize> {
        self.table.get(i).copied().filter(|&j| j < self.cod.len())
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {} {{", self.id, self.dom.id(), self.cod.id())?;
        for (n, (x, y)) in self.pairs().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, " {x} -> {y}")?;
        }
        f.write_str(" }")
    }
}

impl serde::Serialize for FiniteMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiniteMap", 4)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("dom", self.dom.id())?;
        st.serialize_field("cod", self.cod.id())?;
        st.serialize_field("table", &self.pairs().collect::<Vec<_>>())?;
        st.end()
    }
}

pub fn make_map<S: AsRef<str>, T: AsRef<str>>(
    id: &str,
    dom: &Arc<FiniteSet>,
    cod: &Arc<FiniteSet>,
    pairs: &[(S, T)],
) -> Result<FiniteMap, FinsetError> {
    FiniteMap::new(id, dom.clone(), cod.clone(), pairs)
}

pub fn apply<'a>(f: &'a FiniteMap, x: &ElementId) -> Result<&'a ElementId, FinsetError> {
    f.apply(x)
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(g: &FiniteMap, f: &FiniteMap) -> Result<FiniteMap, FinsetError> {
    if f.cod != g.dom {
        return Err(FinsetError::NonComposable {
            f: f.id.clone(),
            g: g.id.clone(),
            f_cod: f.cod.id().to_string(),
            g_dom: g.dom.id().to_string(),
        });
    }
    // Equal sets may list elements in a different order.
    let same_order = Arc::ptr_eq(&f.cod, &g.dom) || f.cod.elements().eq(g.dom.elements());
    let mut table = Vec::with_capacity(f.table.len());
    for i in 0..f.dom.len() {
        let mid = f.image_index(i).ok_or_else(|| malformed(f, i))?;
        let mid = if same_order {
            mid
        } else {
            let e = f.cod.element(mid).expect("checked");
            g.dom.index_of(e).expect("equal sets")
        };
        let out = g.image_index(mid).ok_or_else(|| malformed(g, mid))?;
        table.push(out);
    }
    Ok(FiniteMap {
        id: format!("{}∘{}", g.id, f.id),
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table,
    })
}

fn malformed(f: &FiniteMap, i: usize) -> FinsetError {
    let reason = match f.dom.element(i) {
        Some(e) => format!("no valid image for `{e}`"),
        None => format!("index {i} outside the domain"),
    };
    FinsetError::MalformedTable {
        map: f.id.clone(),
        reason,
    }
}

pub fn identity(a: &Arc<FiniteSet>) -> FiniteMap {
    FiniteMap {
        id: format!("1_{}", a.id()),
        dom: a.clone(),
        cod: a.clone(),
        table: (0..a.len()).collect(),
    }
}

/// How two maps differ, if they do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDifference {
    Domain,
    Codomain,
    /// First differing element in the left map's domain order.
    At {
        element: ElementId,
        left: ElementId,
        right: ElementId,
    },
    /// One of the tables is malformed at this element.
    Malformed { element: ElementId },
}

pub fn map_difference(f: &FiniteMap, g: &FiniteMap) -> Option<MapDifference> {
    if f.dom != g.dom {
        return Some(MapDifference::Domain);
    }
    if f.cod != g.cod {
        return Some(MapDifference::Codomain);
    }
    for (i, x) in f.dom.elements().enumerate() {
        let gi = g.dom.index_of(x).expect("equal sets");
        let fy = f.image_index(i).and_then(|j| f.cod.element(j));
        let gy = g.image_index(gi).and_then(|j| g.cod.element(j));
        match (fy, gy) {
            (Some(a), Some(b)) if a == b => {}
            (Some(a), Some(b)) => {
                return Some(MapDifference::At {
                    element: x.clone(),
                    left: a.clone(),
                    right: b.clone(),
                })
            }
            _ => return Some(MapDifference::Malformed { element: x.clone() }),
        }
    }
    None
}

pub fn maps_equal(f: &FiniteMap, g: &FiniteMap) -> bool {
    map_difference(f, g).is_none()
}

/// Set-level classification of a map, with deterministic witnesses.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MapClassification {
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    pub endomorphic: bool,
    /// Two distinct domain elements with the same image; the second is the
    /// first element (in domain order) whose image was already taken.
    pub collision: Option<(ElementId, ElementId)>,
    /// First codomain element (in codomain order) outside the image.
    pub missed: Option<ElementId>,
}

pub fn classify_map(f: &FiniteMap) -> MapClassification {
    let mut first_preimage: Vec<Option<usize>> = vec![None; f.cod.len()];
    let mut collision = None;
    for i in 0..f.dom.len() {
        let Some(j) = f.image_index(i) else { continue };
        match first_preimage[j] {
            Some(prev) if collision.is_none() => {
                collision = Some((
                    f.dom.element(prev).expect("in range").clone(),
                    f.dom.element(i).expect("in range").clone(),
                ));
            }
            Some(_) => {}
            None => first_preimage[j] = Some(i),
        }
    }
    let missed = first_preimage
        .iter()
        .position(Option::is_none)
        .map(|j| f.cod.element(j).expect("in range").clone());
    let injective = collision.is_none();
    let surjective = missed.is_none();
    MapClassification {
        injective,
        surjective,
        bijective: injective && surjective,
        endomorphic: f.is_endomorphic(),
        collision,
        missed,
    }
}

pub fn inverse(f: &FiniteMap) -> Result<FiniteMap, FinsetError> {
    let class = classify_map(f);
    if !class.bijective {
        return Err(FinsetError::NotBijective(f.id.clone(), Box::new(class)));
    }
    let mut table = vec![0; f.cod.len()];
    for (i, &j) in f.table.iter().enumerate() {
        table[j] = i;
    }
    Ok(FiniteMap {
        id: format!("{}⁻¹", f.id),
        dom: f.cod.clone(),
        cod: f.dom.clone(),
        table,
    })
}

/// Every function from `dom` to `cod`, in lexicographic order of tables.
///
/// Maps are named `<prefix><n>`. There are `|cod|^|dom|` of them.
pub fn hom_set(prefix: &str, dom: &Arc<FiniteSet>, cod: &Arc<FiniteSet>) -> Vec<FiniteMap> {
    let n = dom.len();
    let m = cod.len();
    if m == 0 {
        return if n == 0 {
            vec![FiniteMap::from_raw_unchecked(&format!("{prefix}0"), dom.clone(), cod.clone(), vec![])]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        out.push(FiniteMap::from_raw_unchecked(
            &format!("{prefix}{}", out.len()),
            dom.clone(),
            cod.clone(),
            table.clone(),
        ));
        // odometer increment, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            table[pos] += 1;
            if table[pos] < m {
                break;
            }
            table[pos] = 0;
        }
    }
}
