use std::sync::OnceLock;

use proptest::prelude::*;

use multifold::analysis::{is_extended_unitrade, verify_packing};
use multifold::bounds::unitrade_min_cardinality;
use multifold::search::{
    apply_isometry, are_equivalent, canonical_form, canonical_labeling,
    classify_extended_unitrades, max_packing_size, min_extended_unitrade_size, Classification,
    EquivalenceClass, PackingSearch, SearchConfig,
};
use multifold::Word;

fn length_eight() -> &'static [EquivalenceClass] {
    static CLASSES: OnceLock<Vec<EquivalenceClass>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        classify_extended_unitrades(&SearchConfig::new(8))
            .unwrap()
            .classes
    })
}

fn manifest(c: &Classification) -> String {
    serde_json::to_string(c).unwrap()
}

#[test]
fn result_is_independent_of_execution() {
    let base = classify_extended_unitrades(&SearchConfig::new(8)).unwrap();
    let mut seq = SearchConfig::new(8);
    seq.sequential = true;
    let mut one = SearchConfig::new(8);
    one.threads = 1;
    assert_eq!(
        manifest(&base),
        manifest(&classify_extended_unitrades(&seq).unwrap())
    );
    assert_eq!(
        manifest(&base),
        manifest(&classify_extended_unitrades(&one).unwrap())
    );
    assert_eq!(base.classes.len(), 7);
    for k in &base.classes {
        assert!(is_extended_unitrade(&k.representative).unwrap().holds);
        assert_eq!(canonical_form(&k.representative).unwrap(), k.representative);
    }
    for (i, a) in base.classes.iter().enumerate() {
        for b in &base.classes[i + 1..] {
            assert!(!are_equivalent(&a.representative, &b.representative).unwrap());
        }
    }
}

#[test]
fn cardinality_cap_keeps_small_classes() {
    let full = classify_extended_unitrades(&SearchConfig::new(8)).unwrap();
    let mut cfg = SearchConfig::new(8);
    cfg.max_cardinality = Some(24);
    let capped = classify_extended_unitrades(&cfg).unwrap();
    let small: Vec<usize> = full
        .classes
        .iter()
        .map(|k| k.cardinality)
        .filter(|&c| c <= 24)
        .collect();
    let got: Vec<usize> = capped.classes.iter().map(|k| k.cardinality).collect();
    assert_eq!(got, small);
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt.json");
    let fresh = classify_extended_unitrades(&SearchConfig::new(8)).unwrap();

    // a search interrupted right after its first branching
    std::fs::write(
        &path,
        r#"{"n":8,"max_cardinality":null,"pending":{"2":[[0,3]]},"leaves":[],"explored":1}"#,
    )
    .unwrap();
    let mut cfg = SearchConfig::new(8);
    cfg.checkpoint = Some(path.clone());
    let resumed = classify_extended_unitrades(&cfg).unwrap();
    let reps = |c: &Classification| {
        c.classes
            .iter()
            .map(|k| k.representative.clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(reps(&resumed), reps(&fresh));

    // the finished checkpoint replays to the same answer
    let again = classify_extended_unitrades(&cfg).unwrap();
    assert_eq!(reps(&again), reps(&fresh));

    let mut other = SearchConfig::new(6);
    other.checkpoint = Some(path.clone());
    assert!(classify_extended_unitrades(&other).is_err());
    std::fs::write(&path, "not json").unwrap();
    assert!(classify_extended_unitrades(&cfg).is_err());
}

#[test]
fn unsupported_lengths() {
    assert!(classify_extended_unitrades(&SearchConfig::new(7)).is_err());
    assert!(classify_extended_unitrades(&SearchConfig::new(14)).is_err());
    assert!(min_extended_unitrade_size(10).is_err());
}

#[test]
fn minimum_sizes_match_formula() {
    for n in [4, 6] {
        let got = min_extended_unitrade_size(n).unwrap();
        assert_eq!(
            unitrade_min_cardinality(n, true, false).unwrap(),
            got.into()
        );
        // the smallest class found by the classifier agrees
        let smallest = classify_extended_unitrades(&SearchConfig::new(n))
            .unwrap()
            .classes[0]
            .cardinality;
        assert_eq!(smallest, got);
    }
}

#[test]
fn packing_witnesses_verify() {
    for (n, q, lambda) in [(4, 2, 2), (3, 3, 2), (2, 3, 3)] {
        let r = max_packing_size(&PackingSearch {
            n,
            q,
            lambda,
            stop_at_bound: false,
        })
        .unwrap();
        assert_eq!(r.witness.len(), r.size);
        assert!(
            verify_packing(&r.witness, lambda, 1)
                .unwrap()
                .is_lambda_fold
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classes_are_closed_under_isometries(
        idx in 0usize..7,
        t in 0u64..256,
        perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let rep = &length_eight()[idx].representative;
        let tw = Word::from_bits(8, t).unwrap();
        let image = apply_isometry(rep, &tw, &perm).unwrap();
        prop_assert_eq!(canonical_form(&image).unwrap(), rep.clone());
        let lab = canonical_labeling(&image).unwrap();
        prop_assert_eq!(apply_isometry(&image, &lab.translation, &lab.permutation).unwrap(), rep.clone());
    }
}
