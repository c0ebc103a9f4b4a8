mod common;

use proptest::prelude::*;

use verseproj::onf::{load_corpus, parse_onf, parse_tree, SyntaxTree};
use verseproj::par::Execution;

#[test]
fn fixture_corpus_loads_in_path_order() {
    let docs = load_corpus(&common::onf_dir(), Execution::default()).unwrap();
    let ids: Vec<&str> = docs.iter().map(|d| d.doc_id.as_str()).collect();
    assert_eq!(ids, ["jhn/11", "mat/28", "mrk/1"]);
    assert_eq!(docs.iter().map(|d| d.sentences.len()).sum::<usize>(), 7);
}

#[test]
fn three_block_file_hand_counts() {
    let text = &common::raw_fixture_files()["mat/28"];
    let doc = parse_onf("mat/28", text).unwrap();
    assert_eq!(doc.sentences.len(), 3);
    let mentions: Vec<usize> = doc.sentences.iter().map(|s| s.mentions.len()).collect();
    let props: Vec<usize> = doc.sentences.iter().map(|s| s.props.len()).collect();
    assert_eq!(mentions, [2, 2, 1]);
    assert_eq!(props, [1, 2, 1]);
    // name lines are not mentions
    assert!(doc.sentences[0]
        .mentions
        .iter()
        .all(|m| m.coref_type == "IDENT"));
}

#[test]
fn empty_categories_are_skipped_in_token_indices() {
    let doc = parse_onf("mat/28", &common::raw_fixture_files()["mat/28"]).unwrap();
    let s = &doc.sentences[2];
    let surfaces: Vec<&str> = s.tokens.iter().map(|t| t.surface.as_str()).collect();
    assert_eq!(surfaces, ["Who", "rolled", "the", "stone", "?"]);
    assert_eq!(s.tree.leaves().count(), 6);
}

#[test]
fn every_arg_span_resolves() {
    for doc in load_corpus(&common::onf_dir(), Execution::Sequential).unwrap() {
        for s in &doc.sentences {
            for p in &s.props {
                for a in &p.args {
                    let (lo, hi) = s.tree.resolve_arg_span(a.head_token, a.levels_up).unwrap();
                    assert!(lo <= a.head_token && a.head_token <= hi && hi < s.tokens.len());
                }
            }
        }
    }
}

#[test]
fn corpus_round_trips_through_serialization() {
    for doc in load_corpus(&common::onf_dir(), Execution::default()).unwrap() {
        let again = parse_onf(&doc.doc_id, &doc.to_onf_string()).unwrap();
        assert_eq!(again, doc);
    }
}

#[test]
fn truncated_prefixes_never_panic() {
    for (id, text) in common::raw_fixture_files() {
        let mut cut = 0;
        while cut <= text.len() {
            if text.is_char_boundary(cut) {
                let _ = parse_onf(&id, &text[..cut]);
            }
            cut += 1;
        }
    }
}

#[test]
fn sequential_and_parallel_loads_agree() {
    let a = load_corpus(&common::onf_dir(), Execution::Sequential).unwrap();
    let b = load_corpus(&common::onf_dir(), Execution::default()).unwrap();
    assert_eq!(a, b);
}

fn arb_tree() -> impl Strategy<Value = String> {
    let leaf = ("[A-Z]{1,3}(-[A-Z]{3})?", "[a-z]{1,6}").prop_map(|(t, w)| format!("({t} {w})"));
    leaf.prop_recursive(4, 32, 4, |inner| {
        (
            "[A-Z]{1,4}(-SBJ|-1|=2)?",
            prop::collection::vec(inner, 1..4),
        )
            .prop_map(|(label, kids)| format!("({label} {})", kids.join(" ")))
    })
}

proptest! {
    #[test]
    fn bracketed_trees_round_trip(src in arb_tree()) {
        let tree = parse_tree(&src).unwrap();
        let again = parse_tree(&tree.to_bracketed()).unwrap();
        prop_assert_eq!(&again, &tree);
    }

    #[test]
    fn token_indices_are_dense(src in arb_tree()) {
        let tree: SyntaxTree = parse_tree(&src).unwrap();
        let idx: Vec<usize> = tree.leaves().filter_map(|l| l.token_index()).collect();
        prop_assert_eq!(idx, (0..tree.token_count()).collect::<Vec<_>>());
    }

    #[test]
    fn arg_span_matches_ancestor_walk(src in arb_tree(), pick in 0usize..64, up in 0usize..6) {
        let tree = parse_tree(&src).unwrap();
        let n = tree.token_count();
        let head = pick % n;
        let path = tree.path_to_token(head).unwrap();
        match tree.resolve_arg_span(head, up) {
            Ok(span) => {
                prop_assert!(up < path.len());
                let node = path[path.len() - 1 - up];
                let idx: Vec<usize> = node.leaves().filter_map(|l| l.token_index()).collect();
                prop_assert_eq!(span, (idx[0], *idx.last().unwrap()));
            }
            Err(_) => prop_assert!(up >= path.len()),
        }
    }

    #[test]
    fn onf_parser_is_total(bytes in prop::collection::vec(any::<u8>(), 0..400)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = parse_onf("x", &text);
    }
}
