//! The fixture corpus through the parser and serializer.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use proptest::prelude::*;
use viscat::diagram::{build_diagram, EqualitySpec};
use viscat::finset::{ElementId, FiniteMap, FiniteSet};
use viscat::spec_io::{parse_spec, serialize_spec, SpecModel, SpecSource};

fn corpus(dir: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join(dir);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "viscat"))
        .collect();
    files.sort();
    files
}

fn parse_file(path: &Path) -> viscat::spec_io::ParseOutcome {
    let text = std::fs::read_to_string(path).unwrap();
    parse_spec(&SpecSource::new(text, path.display().to_string()))
}

#[test]
fn corpus_round_trips() {
    let files = corpus("fixtures");
    assert!(files.len() >= 12);
    for path in files {
        let out = parse_file(&path);
        let model = out.model.unwrap_or_else(|| panic!("{}: {:?}", path.display(), out.diagnostics));
        let text = serialize_spec(&model);
        let again = parse_spec(&SpecSource::new(text.clone(), "again"));
        assert!(again.diagnostics.iter().all(|d| !d.is_error()), "{}", path.display());
        let again = again.model.unwrap();
        assert_eq!(model, again, "{}", path.display());
        assert_eq!(serialize_spec(&again), text, "{}", path.display());
    }
}

#[test]
fn corrupt_files_report_the_expected_position() {
    let files = corpus("fixtures/corrupt");
    assert!(!files.is_empty());
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let expect = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# expect: "))
            .unwrap_or_else(|| panic!("{} lacks an expect header", path.display()));
        let (line, col) = expect.split_once(':').unwrap();
        let out = parse_file(&path);
        assert!(out.model.is_none(), "{}", path.display());
        let first = out.errors().next().unwrap();
        assert_eq!(
            (first.line, first.column),
            (line.parse().unwrap(), col.parse().unwrap()),
            "{}: {}",
            path.display(),
            first.message
        );
    }
}

fn arb_token() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9 _(),#\"\\\\<>{}-]{0,8}"
        .prop_filter("valid element", |s| ElementId::new(s).is_ok())
}

fn arb_model() -> impl Strategy<Value = SpecModel> {
    (
        proptest::collection::btree_set(arb_token(), 1..5),
        proptest::collection::btree_set(arb_token(), 1..4),
    )
        .prop_flat_map(|(a, b)| {
            let (na, nb) = (a.len(), b.len());
            (
                Just(a),
                Just(b),
                proptest::collection::vec(0..nb, na),
                proptest::collection::vec(0..nb, na),
                any::<bool>(),
            )
        })
        .prop_map(|(a, b, t1, t2, with_eq)| {
            let sa = Arc::new(FiniteSet::new("A", &a.into_iter().collect::<Vec<_>>()).unwrap());
            let sb = Arc::new(FiniteSet::new("B", &b.into_iter().collect::<Vec<_>>()).unwrap());
            let f = FiniteMap::from_indices("f", sa.clone(), sb.clone(), t1).unwrap();
            let g = FiniteMap::from_indices("g", sa.clone(), sb.clone(), t2).unwrap();
            let eqs = if with_eq { vec![EqualitySpec::new(["f"], ["g"])] } else { vec![] };
            SpecModel::Diagram(build_diagram([sa, sb], [f, g], eqs).unwrap())
        })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(model in arb_model()) {
        let text = serialize_spec(&model);
        let out = parse_spec(&SpecSource::new(text.clone(), "p"));
        prop_assert!(out.model.is_some(), "{}\n{:?}", text, out.diagnostics);
        prop_assert_eq!(out.model.unwrap(), model);
    }
}
