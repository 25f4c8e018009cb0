//! Hand-written parser for `.viscat` files.
//!
//! ```text
//! # comment to end of line
//! object Data { mark(Alan,92) "Alan performed the best" }
//! morphism render : Data -> Representation { mark(Alan,92) -> bar(Alan), ... }
//! derive { points <- instances, ... }
//! role Data = Data
//! alt_measure retest
//! alt_read by_shade
//! equal understanding = read . render
//! ```
//!
//! Element tokens are either quoted (`"..."` with `\"` and `\\` escapes) or
//! bare. A bare token ends at whitespace or one of `{ } , " #`, or before `->`
//! and `<-`; inside parentheses everything up to the matching `)` belongs to
//! the token, so `average_mark(> 70)` needs no quotes.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::diagram::{build_diagram, DiagramError, EqualitySpec};
use crate::finset::{ElementId, FiniteMap, FiniteSet};
use crate::process::{
    build_process, MorphismRole, ObjectRole, ProcessError, ProcessExtras, Role, RoleBindings,
};

use super::{Diagnostic, ParseOutcome, Severity, SpecModel, SpecSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone)]
struct Tok {
    text: String,
    pos: Pos,
}

#[derive(Debug)]
enum Stmt {
    Object {
        id: Tok,
        elements: Vec<Tok>,
    },
    Morphism {
        id: Tok,
        dom: Tok,
        cod: Tok,
        pairs: Vec<(Tok, Tok)>,
    },
    Derive {
        pairs: Vec<(Tok, Tok)>,
    },
    Role {
        name: Tok,
        target: Tok,
    },
    AltMeasure(Tok),
    AltRead(Tok),
    Equal {
        at: Pos,
        left: Vec<Tok>,
        right: Vec<Tok>,
    },
}

struct SyntaxError {
    message: String,
    pos: Pos,
}

const KEYWORDS: [&str; 7] = [
    "object",
    "morphism",
    "derive",
    "role",
    "alt_measure",
    "alt_read",
    "equal",
];

struct Parser<'a> {
    text: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            offset: 0,
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.offset..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn at_eof(&self) -> bool {
        self.offset >= self.text.len()
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            message: message.into(),
            pos: self.pos(),
        })
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of file".to_string(),
            Some(_) => {
                let word: String = self
                    .rest()
                    .chars()
                    .take_while(|c| !c.is_whitespace())
                    .take(20)
                    .collect();
                format!("`{word}`")
            }
        }
    }

    fn eat(&mut self, punct: &str) -> bool {
        self.skip_trivia();
        if self.rest().starts_with(punct) {
            for _ in punct.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, punct: &str) -> Result<(), SyntaxError> {
        if self.eat(punct) {
            Ok(())
        } else {
            self.error(format!("expected `{punct}`, found {}", self.found()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Tok, SyntaxError> {
        self.skip_trivia();
        let pos = self.pos();
        let mut text = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if text.is_empty() {
            return self.error(format!("expected {what}, found {}", self.found()));
        }
        Ok(Tok { text, pos })
    }

    fn element(&mut self) -> Result<Tok, SyntaxError> {
        self.skip_trivia();
        let pos = self.pos();
        if self.peek() == Some('"') {
            self.bump();
            let mut text = String::new();
            loop {
                match self.bump() {
                    None | Some('\n') => {
                        return Err(SyntaxError {
                            message: "unterminated quoted token".to_string(),
                            pos,
                        })
                    }
                    Some('"') => break,
                    Some('\\') => match self.bump() {
                        Some(c @ ('"' | '\\')) => text.push(c),
                        _ => {
                            return Err(SyntaxError {
                                message: "unknown escape in quoted token".to_string(),
                                pos,
                            })
                        }
                    },
                    Some(c) => text.push(c),
                }
            }
            return Ok(Tok { text, pos });
        }
        match scan_bare(self.rest()) {
            Ok(0) => self.error(format!("expected an element, found {}", self.found())),
            Ok(len) => {
                let text = self.rest()[..len].to_string();
                for _ in text.chars() {
                    self.bump();
                }
                Ok(Tok { text, pos })
            }
            Err(msg) => Err(SyntaxError {
                message: msg.to_string(),
                pos,
            }),
        }
    }

    fn at_close_brace(&mut self) -> bool {
        self.skip_trivia();
        self.peek() == Some('}')
    }

    fn statement(&mut self) -> Result<Stmt, SyntaxError> {
        let kw = self.ident("a declaration keyword")?;
        match kw.text.as_str() {
            "object" => {
                let id = self.ident("an object id")?;
                self.expect("{")?;
                let mut elements = Vec::new();
                while !self.at_close_brace() {
                    if self.at_eof() {
                        return self.error("unclosed `{`");
                    }
                    elements.push(self.element()?);
                    self.eat(",");
                }
                self.expect("}")?;
                Ok(Stmt::Object { id, elements })
            }
            "morphism" => {
                let id = self.ident("a morphism id")?;
                self.expect(":")?;
                let dom = self.ident("a domain object id")?;
                self.expect("->")?;
                let cod = self.ident("a codomain object id")?;
                self.expect("{")?;
                let pairs = self.pair_list("->")?;
                Ok(Stmt::Morphism { id, dom, cod, pairs })
            }
            "derive" => {
                self.expect("{")?;
                let pairs = self.pair_list("<-")?;
                Ok(Stmt::Derive { pairs })
            }
            "role" => {
                let name = self.ident("a role name")?;
                self.expect("=")?;
                let target = self.ident("an object or morphism id")?;
                Ok(Stmt::Role { name, target })
            }
            "alt_measure" => Ok(Stmt::AltMeasure(self.ident("a morphism id")?)),
            "alt_read" => Ok(Stmt::AltRead(self.ident("a morphism id")?)),
            "equal" => {
                let left = self.composite()?;
                self.expect("=")?;
                let right = self.composite()?;
                Ok(Stmt::Equal {
                    at: kw.pos,
                    left,
                    right,
                })
            }
            other => Err(SyntaxError {
                message: format!(
                    "unknown declaration `{other}` (expected one of {})",
                    KEYWORDS.join(", ")
                ),
                pos: kw.pos,
            }),
        }
    }

    /// `a <arrow> b , ...` up to and including the closing brace.
    fn pair_list(&mut self, arrow: &str) -> Result<Vec<(Tok, Tok)>, SyntaxError> {
        let mut pairs = Vec::new();
        while !self.at_close_brace() {
            if self.at_eof() {
                return self.error("unclosed `{`");
            }
            let a = self.element()?;
            self.expect(arrow)?;
            let b = self.element()?;
            pairs.push((a, b));
            if !self.eat(",") && !self.at_close_brace() {
                return self.error(format!("expected `,` or `}}`, found {}", self.found()));
            }
        }
        self.expect("}")?;
        Ok(pairs)
    }

    /// `g . f . e`, returned in application order `[e, f, g]`.
    fn composite(&mut self) -> Result<Vec<Tok>, SyntaxError> {
        let mut ids = vec![self.ident("a morphism id")?];
        while self.eat(".") {
            ids.push(self.ident("a morphism id")?);
        }
        ids.reverse();
        Ok(ids)
    }

    /// Skips to the next line that starts with a keyword.
    fn recover(&mut self) {
        loop {
            while let Some(c) = self.bump() {
                if c == '\n' {
                    break;
                }
            }
            if self.at_eof() {
                return;
            }
            let line = self.rest().trim_start_matches([' ', '\t']);
            if KEYWORDS.iter().any(|k| {
                line.starts_with(k)
                    && !line[k.len()..].starts_with(|c: char| c.is_alphanumeric() || c == '_')
            }) {
                return;
            }
        }
    }
}

/// Length in bytes of the bare token at the start of `s`.
pub(crate) fn scan_bare(s: &str) -> Result<usize, &'static str> {
    let mut depth = 0usize;
    let mut iter = s.char_indices().peekable();
    while let Some(&(i, c)) = iter.peek() {
        if depth == 0 {
            if c.is_whitespace() || "{},\"#".contains(c) {
                return Ok(i);
            }
            if s[i..].starts_with("->") || s[i..].starts_with("<-") {
                return Ok(i);
            }
            if c == ')' {
                return Err("unbalanced `)` in token");
            }
            if c == '(' {
                depth += 1;
            }
        } else {
            match c {
                '\n' | '\r' => return Err("unclosed `(` in token"),
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
        }
        iter.next();
    }
    if depth > 0 {
        return Err("unclosed `(` in token");
    }
    Ok(s.len())
}

struct Checker {
    diagnostics: Vec<Diagnostic>,
}

impl Checker {
    fn error(&mut self, pos: Pos, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            line: pos.line,
            column: pos.column,
        });
    }

    fn warning(&mut self, pos: Pos, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            severity: Severity::Warning,
            message: message.into(),
            line: pos.line,
            column: pos.column,
        });
    }

    fn has_errors(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == Severity::Error)
    }

    fn element(&mut self, tok: &Tok) -> Option<ElementId> {
        match ElementId::new(&tok.text) {
            Ok(e) => Some(e),
            Err(e) => {
                self.error(tok.pos, e.to_string());
                None
            }
        }
    }
}

pub fn parse_spec(src: &SpecSource) -> ParseOutcome {
    let mut parser = Parser::new(&src.text);
    let mut stmts = Vec::new();
    let mut ck = Checker {
        diagnostics: Vec::new(),
    };
    loop {
        parser.skip_trivia();
        if parser.at_eof() {
            break;
        }
        match parser.statement() {
            Ok(s) => stmts.push(s),
            Err(e) => {
                ck.error(e.pos, e.message);
                parser.recover();
            }
        }
    }
    if ck.has_errors() {
        return ParseOutcome {
            model: None,
            diagnostics: ck.diagnostics,
        };
    }
    let model = check(&stmts, &mut ck);
    let model = if ck.has_errors() { None } else { model };
    ParseOutcome {
        model,
        diagnostics: ck.diagnostics,
    }
}

fn check(stmts: &[Stmt], ck: &mut Checker) -> Option<SpecModel> {
    let mut objects: BTreeMap<&str, (Arc<FiniteSet>, Pos)> = BTreeMap::new();
    let mut object_order: Vec<Arc<FiniteSet>> = Vec::new();
    for s in stmts {
        let Stmt::Object { id, elements } = s else { continue };
        if objects.contains_key(id.text.as_str()) {
            ck.error(id.pos, format!("object `{}` is declared twice", id.text));
            continue;
        }
        let mut seen: HashSet<ElementId> = HashSet::new();
        let mut els = Vec::new();
        for t in elements {
            let Some(e) = ck.element(t) else { continue };
            if !seen.insert(e.clone()) {
                ck.error(t.pos, format!("duplicate element `{e}` in object `{}`", id.text));
                continue;
            }
            els.push(e);
        }
        match FiniteSet::from_elements(&id.text, els) {
            Ok(set) => {
                let set = Arc::new(set);
                objects.insert(&id.text, (set.clone(), id.pos));
                object_order.push(set);
            }
            Err(e) => ck.error(id.pos, e.to_string()),
        }
    }

    let mut used_objects: HashSet<&str> = HashSet::new();
    let mut morphisms: Vec<FiniteMap> = Vec::new();
    let mut morphism_pos: HashMap<&str, Pos> = HashMap::new();
    for s in stmts {
        let Stmt::Morphism { id, dom, cod, pairs } = s else { continue };
        if morphism_pos.contains_key(id.text.as_str()) {
            ck.error(id.pos, format!("morphism `{}` is declared twice", id.text));
            continue;
        }
        morphism_pos.insert(&id.text, id.pos);
        let mut ends = Vec::new();
        for end in [dom, cod] {
            match objects.get(end.text.as_str()) {
                Some((set, _)) => {
                    used_objects.insert(&end.text);
                    ends.push(set.clone());
                }
                None => ck.error(
                    end.pos,
                    format!("morphism `{}` refers to undeclared object `{}`", id.text, end.text),
                ),
            }
        }
        let [dom_set, cod_set] = ends.as_slice() else { continue };
        let mut table: Vec<Option<usize>> = vec![None; dom_set.len()];
        let mut ok = true;
        for (a, b) in pairs {
            let (Some(x), Some(y)) = (ck.element(a), ck.element(b)) else {
                ok = false;
                continue;
            };
            let Some(i) = dom_set.index_of(&x) else {
                ck.error(a.pos, format!("`{x}` is not an element of `{}`", dom.text));
                ok = false;
                continue;
            };
            let Some(j) = cod_set.index_of(&y) else {
                ck.error(b.pos, format!("`{y}` is not an element of `{}`", cod.text));
                ok = false;
                continue;
            };
            if table[i].is_some() {
                ck.error(a.pos, format!("`{x}` is mapped more than once by `{}`", id.text));
                ok = false;
                continue;
            }
            table[i] = Some(j);
        }
        if !ok {
            continue;
        }
        let missing: Vec<String> = table
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_none())
            .map(|(i, _)| format!("`{}`", dom_set.element(i).expect("in range")))
            .collect();
        if !missing.is_empty() {
            ck.error(
                id.pos,
                format!("morphism `{}` gives no image for {}", id.text, missing.join(", ")),
            );
            continue;
        }
        let table = table.into_iter().map(|t| t.expect("checked")).collect();
        match FiniteMap::from_indices(&id.text, dom_set.clone(), cod_set.clone(), table) {
            Ok(m) => morphisms.push(m),
            Err(e) => ck.error(id.pos, e.to_string()),
        }
    }
    if ck.has_errors() {
        return None;
    }

    let mut diagram = match build_diagram(object_order.iter().cloned(), morphisms, []) {
        Ok(d) => d,
        Err(e) => {
            ck.error(Pos { line: 1, column: 1 }, e.to_string());
            return None;
        }
    };

    for s in stmts {
        let Stmt::Equal { at, left, right } = s else { continue };
        let ids = |side: &[Tok]| side.iter().map(|t| t.text.clone()).collect::<Vec<_>>();
        match diagram.with_equalities([EqualitySpec::new(ids(left), ids(right))]) {
            Ok(d) => diagram = d,
            Err(DiagramError::DanglingEquality(m)) => {
                let pos = left
                    .iter()
                    .chain(right)
                    .find(|t| t.text == m)
                    .map_or(*at, |t| t.pos);
                ck.error(pos, format!("equality refers to undeclared morphism `{m}`"));
            }
            Err(e) => ck.error(*at, e.to_string()),
        }
    }

    let mut roles = RoleBindings::new();
    let mut role_pos: HashMap<Role, Pos> = HashMap::new();
    let mut extras = ProcessExtras::default();
    let mut alt_pos: HashMap<String, Pos> = HashMap::new();
    let mut derive_toks: Vec<(Tok, Tok)> = Vec::new();
    let mut is_process = false;
    for s in stmts {
        match s {
            Stmt::Role { name, target } => {
                is_process = true;
                let role = match name.text.parse::<Role>() {
                    Ok(r) => r,
                    Err(_) => {
                        ck.error(name.pos, format!("unknown role `{}`", name.text));
                        continue;
                    }
                };
                if role_pos.contains_key(&role) {
                    ck.error(name.pos, format!("role `{}` is bound twice", name.text));
                    continue;
                }
                role_pos.insert(role, name.pos);
                match role {
                    Role::Object(r) => {
                        if diagram.object(&target.text).is_none() {
                            ck.error(
                                target.pos,
                                format!("role `{}` names undeclared object `{}`", name.text, target.text),
                            );
                            continue;
                        }
                        used_objects.insert(&target.text);
                        roles.objects.insert(r, target.text.clone());
                    }
                    Role::Morphism(r) => {
                        if diagram.morphism(&target.text).is_none() {
                            ck.error(
                                target.pos,
                                format!(
                                    "role `{}` names undeclared morphism `{}`",
                                    name.text, target.text
                                ),
                            );
                            continue;
                        }
                        roles.morphisms.insert(r, target.text.clone());
                    }
                }
            }
            Stmt::AltMeasure(t) | Stmt::AltRead(t) => {
                is_process = true;
                if diagram.morphism(&t.text).is_none() {
                    ck.error(t.pos, format!("alternate names undeclared morphism `{}`", t.text));
                    continue;
                }
                alt_pos.insert(t.text.clone(), t.pos);
                if matches!(s, Stmt::AltMeasure(_)) {
                    extras.alt_measures.push(t.text.clone());
                } else {
                    extras.alt_reads.push(t.text.clone());
                }
            }
            Stmt::Derive { pairs } => {
                is_process = true;
                derive_toks.extend(pairs.iter().cloned());
            }
            _ => {}
        }
    }
    if stmts.iter().any(|s| matches!(s, Stmt::Derive { .. })) {
        let mut derivations = Vec::new();
        for (l, s) in &derive_toks {
            if let (Some(l), Some(s)) = (ck.element(l), ck.element(s)) {
                derivations.push((l, s));
            }
        }
        extras.derivations = Some(derivations);
    }

    for set in &object_order {
        if !used_objects.contains(set.id()) {
            let pos = objects[set.id()].1;
            ck.warning(pos, format!("object `{}` is not used by any morphism or role", set.id()));
        }
    }

    if ck.has_errors() {
        return None;
    }
    if !is_process {
        return Some(SpecModel::Diagram(diagram));
    }

    let first_role_pos = role_pos
        .values()
        .min_by_key(|p| (p.line, p.column))
        .copied()
        .unwrap_or(Pos { line: 1, column: 1 });
    match build_process(diagram, roles, extras) {
        Ok(p) => Some(SpecModel::Process(p)),
        Err(e) => {
            let pos = match &e {
                ProcessError::SignatureMismatch { role, .. } => role_pos
                    .get(&Role::Morphism(*role))
                    .copied(),
                ProcessError::MissingObjectRole { morphism_role, .. } => role_pos
                    .get(&Role::Morphism(*morphism_role))
                    .copied(),
                ProcessError::PartialIntension { .. } => [
                    ObjectRole::Schema,
                    ObjectRole::Layout,
                    ObjectRole::Question,
                ]
                .iter()
                .filter_map(|r| role_pos.get(&Role::Object(*r)))
                .chain(
                    [
                        MorphismRole::GenD,
                        MorphismRole::GenR,
                        MorphismRole::GenE,
                        MorphismRole::Rules,
                        MorphismRole::Answers,
                        MorphismRole::Raises,
                    ]
                    .iter()
                    .filter_map(|r| role_pos.get(&Role::Morphism(*r))),
                )
                .min_by_key(|p| (p.line, p.column))
                .copied(),
                ProcessError::BadAlternate { id, .. } => alt_pos.get(id).copied(),
                ProcessError::DerivationElement { element, .. }
                | ProcessError::DuplicateDerivation(element) => derive_toks
                    .iter()
                    .flat_map(|(l, s)| [l, s])
                    .rev()
                    .find(|t| ElementId::new(&t.text).ok().as_ref() == Some(element))
                    .map(|t| t.pos),
                ProcessError::DerivationsWithoutIntension => derive_toks.first().map(|(l, _)| l.pos),
                _ => None,
            };
            ck.error(pos.unwrap_or(first_role_pos), e.to_string());
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> ParseOutcome {
        parse_spec(&SpecSource::new(text, "<test>"))
    }

    fn errors(out: &ParseOutcome) -> Vec<(usize, usize, String)> {
        out.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
            .map(|d| (d.line, d.column, d.message.clone()))
            .collect()
    }

    #[test]
    fn empty_file_is_an_empty_diagram() {
        let out = parse("");
        assert!(out.diagnostics.is_empty());
        match out.model {
            Some(SpecModel::Diagram(d)) => assert_eq!(d.objects().len(), 0),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("# only a comment\n\n").model, Some(SpecModel::Diagram(_))));
    }

    #[test]
    fn bare_tokens() {
        assert_eq!(scan_bare("best_mark(Alan) rest"), Ok(15));
        assert_eq!(scan_bare("average_mark(> 70)}"), Ok(18));
        assert_eq!(scan_bare("p(a,b),"), Ok(6));
        assert_eq!(scan_bare("a->b"), Ok(1));
        assert_eq!(scan_bare("x#c"), Ok(1));
        assert!(scan_bare("p(a").is_err());
        assert!(scan_bare("a)").is_err());
    }

    #[test]
    fn triangle_parses() {
        let out = parse(
            "object A { a1 a2 }\nobject B { b }\nobject C { c }\n\
             morphism f : A -> B { a1 -> b, a2 -> b }\n\
             morphism g : B -> C { b -> c }\n\
             morphism h : A -> C { a1 -> c, a2 -> c }\n\
             equal h = g . f\n",
        );
        assert!(out.diagnostics.is_empty(), "{:?}", out.diagnostics);
        let Some(SpecModel::Diagram(d)) = out.model else { panic!() };
        assert_eq!(d.equalities()[0].right.steps, vec!["f", "g"]);
        assert_eq!(d.equalities()[0].label, "h = g∘f");
    }

    #[test]
    fn compact_punctuation_is_accepted() {
        let out = parse("object A{x}morphism f:A->A{x->x}equal f=f.f");
        assert!(out.diagnostics.is_empty(), "{:?}", out.diagnostics);
    }

    #[test]
    fn quoted_and_parenthesized_elements() {
        let out = parse(
            "object K { \"Alan performed the best\" \"say \\\"hi\\\"\" }\n\
             object E { best_mark(Alan) average_mark(> 70) p(a,b) }\n",
        );
        assert!(errors(&out).is_empty(), "{:?}", out.diagnostics);
        let Some(SpecModel::Diagram(d)) = out.model else { panic!() };
        let k: Vec<_> = d.object("K").unwrap().elements().map(|e| e.to_string()).collect();
        assert_eq!(k, vec!["Alan performed the best", "say \"hi\""]);
        assert_eq!(d.object("E").unwrap().len(), 3);
    }

    #[test]
    fn undeclared_object_is_reported_at_its_token() {
        let out = parse("object A { a }\nmorphism f : A -> Nowhere { a -> b }\n");
        assert!(out.model.is_none());
        let errs = errors(&out);
        assert_eq!(errs.len(), 1);
        assert_eq!((errs[0].0, errs[0].1), (2, 19));
        assert!(errs[0].2.contains("Nowhere"));
    }

    #[test]
    fn element_errors_carry_positions() {
        let errs = errors(&parse("object S { x y x }"));
        assert_eq!((errs[0].0, errs[0].1), (1, 16));
        assert!(errs[0].2.contains("duplicate element `x`"));

        let errs = errors(&parse("object A { a b }\nobject B { x }\nmorphism f : A -> B { a -> x }"));
        assert_eq!((errs[0].0, errs[0].1), (3, 10));
        assert!(errs[0].2.contains("`b`"));

        let errs = errors(&parse("object A { a }\nobject B { x }\nmorphism f : A -> B { a -> y }"));
        assert_eq!((errs[0].0, errs[0].1), (3, 28));

        let errs = errors(&parse("object A { a }\nobject B { x }\nmorphism f : A -> B { a -> x, a -> x }"));
        assert_eq!((errs[0].0, errs[0].1), (3, 31));
    }

    #[test]
    fn syntax_errors_recover_at_next_declaration() {
        let out = parse("object A { a } }\nobject B { b\nfrobnicate\nobject C { c }\nequal = f\n");
        let errs = errors(&out);
        let positions: Vec<_> = errs.iter().map(|e| (e.0, e.1)).collect();
        assert_eq!(positions, vec![(1, 16), (4, 10), (5, 7)], "{errs:?}");
        assert!(out.model.is_none());
    }

    #[test]
    fn unknown_role_is_an_error() {
        let out = parse("object D { d }\nrole Dta = D\n");
        let errs = errors(&out);
        assert_eq!((errs[0].0, errs[0].1), (2, 6));
        assert!(errs[0].2.contains("Dta"));
    }

    #[test]
    fn unused_object_warns_without_blocking() {
        let out = parse("object D { d }\nobject Spare { s }\nrole Data = D\n");
        assert!(out.model.is_some());
        let warnings: Vec<_> = out
            .diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Warning)
            .collect();
        assert_eq!(warnings.len(), 1);
        assert_eq!((warnings[0].line, warnings[0].column), (2, 8));
    }

    #[test]
    fn signature_mismatch_points_at_the_role() {
        let out = parse(
            "object D { d }\nobject R { r }\nmorphism f : R -> D { r -> d }\n\
             role Data = D\nrole Representation = R\nrole render = f\n",
        );
        let errs = errors(&out);
        assert_eq!((errs[0].0, errs[0].1), (6, 6));
    }

    #[test]
    fn empty_derive_is_distinct_from_none() {
        let base = "object S { s }\nobject L { l }\nobject Q { q(_) }\nobject D { d }\nobject R { r }\nobject E { q(x) }\n\
            morphism gd : D -> S { d -> s }\nmorphism gr : R -> L { r -> l }\nmorphism ge : E -> Q { q(x) -> q(_) }\n\
            morphism rules : S -> L { s -> l }\nmorphism ans : L -> Q { l -> q(_) }\nmorphism rs : S -> Q { s -> q(_) }\n\
            role Schema = S\nrole Layout = L\nrole Question = Q\nrole Data = D\nrole Representation = R\nrole Evocation = E\n\
            role gen_D = gd\nrole gen_R = gr\nrole gen_E = ge\nrole rules = rules\nrole answers = ans\nrole raises = rs\n";
        let Some(SpecModel::Process(p)) = parse(base).model else { panic!() };
        assert!(p.derivations().is_none());
        let with = format!("{base}derive {{ }}\n");
        let Some(SpecModel::Process(p)) = parse(&with).model else { panic!() };
        assert_eq!(p.derivations(), Some(&[][..]));
    }
}
