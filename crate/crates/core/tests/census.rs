use std::collections::BTreeMap;

use wicks_core::count::{count_table, m1, m2, m3, m6};
use wicks_core::enumerate::{census_from_jsonl, census_to_jsonl, enumerate_constructive_from};
use wicks_core::words::canonicalize;
use wicks_core::{enumerate_backtrack, enumerate_constructive, Census, EnumerateError, EnumerateOptions, ExactRational, Order6Label};

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn words(c: &Census) -> Vec<String> {
    c.words().map(|w| w.to_verbose()).collect()
}

#[test]
fn genus_one_ground_truth() {
    for census in [enumerate_constructive(1, &EnumerateOptions::default()).unwrap(), enumerate_backtrack(1).unwrap()] {
        assert_eq!(words(&census), vec!["a b c a' b' c'"]);
        let class = &census.classes[0];
        assert_eq!(class.profile.aut_order, 6);
        assert_eq!(class.signs, (0, 2));
        assert_eq!(class.profile.order6_label(), Some(Order6Label::from_params(1, 0, 1)));
        assert_eq!(census.mass, q(1, 6));
    }
}

#[test]
fn genus_two_engines_agree() {
    let constructive = enumerate_constructive(2, &EnumerateOptions::default()).unwrap();
    let backtrack = enumerate_backtrack(2).unwrap();
    assert_eq!(words(&constructive), words(&backtrack));
    assert_eq!(constructive.len(), 9);

    let stats = constructive.stats();
    assert_eq!(stats.exactly, BTreeMap::from([(1, 3), (2, 5), (3, 1), (6, 0)]));
    assert_eq!(stats.total_mass, q(35, 6));
    assert_eq!(stats.order2, BTreeMap::from([(1, q(2, 1)), (5, q(1, 2))]));
    assert_eq!(stats.order3, BTreeMap::from([((2, 1), q(1, 3))]));
    assert!(stats.order6.is_empty());
    assert_eq!(stats.total_mass, m1(2).unwrap());
    assert_eq!(stats.order2[&1], m2(2, 1).unwrap());
    assert_eq!(stats.order3[&(2, 1)], m3(2, 2, 1).unwrap());
    for class in &constructive.classes {
        assert_eq!(class.signs, (2, 4));
        match class.profile.aut_order {
            2 => assert!(matches!(class.profile.fixed_edges, Some(1 | 5))),
            3 => assert_eq!(class.profile.fixed_vertices, Some((2, 1))),
            d => assert_eq!(d, 1),
        }
    }
}

#[test]
fn genus_three_constructive_census() {
    let census = enumerate_constructive(3, &EnumerateOptions::default()).unwrap();
    assert_eq!(census.len(), 1726);
    assert_eq!(census.mass, q(5005, 3));
    let table = count_table(3).unwrap();
    assert_eq!(census.len().to_string(), table.at_least[0].to_string());

    let stats = census.stats();
    assert_eq!(stats.order2, BTreeMap::from([(3, q(140, 3)), (7, q(3, 1))]));
    assert_eq!(stats.order3, BTreeMap::from([((1, 0), q(3, 1)), ((1, 3), q(2, 3)), ((4, 0), q(1, 6))]));
    assert_eq!(stats.order6, BTreeMap::from([(Order6Label::from_params(1, 2, 0), q(1, 6))]));
    assert_eq!(stats.order6[&Order6Label::from_params(1, 2, 0)], m6(3, 1, 2, 0).unwrap());
    let exact: Vec<usize> = stats.exactly.values().copied().collect();
    let n = table.exactly.iter().map(|v| v.to_string().parse::<usize>().unwrap()).collect::<Vec<_>>();
    assert_eq!(exact, n);

    for pair in census.classes.windows(2) {
        assert!(pair[0].word() < pair[1].word());
    }
    for class in &census.classes {
        assert_eq!(&canonicalize(class.word()), class.word());
    }
}

#[test]
fn jsonl_round_trip_and_determinism() {
    let options = EnumerateOptions::default();
    let first = enumerate_constructive(2, &options).unwrap();
    let text = census_to_jsonl(&first);
    assert_eq!(text.lines().count(), 9);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| enumerate_constructive(2, &options).unwrap());
    assert_eq!(census_to_jsonl(&serial), text);
    let back = census_from_jsonl(2, &text).unwrap();
    assert_eq!(census_to_jsonl(&back), text);
}

#[test]
fn resource_guards() {
    let options = EnumerateOptions::default();
    assert_eq!(enumerate_constructive(4, &options).unwrap_err(), EnumerateError::RequiresAllowLarge { genus: 4 });
    assert!(matches!(
        enumerate_constructive(5, &EnumerateOptions::allow_large()),
        Err(EnumerateError::GenusTooLarge { genus: 5, .. })
    ));
    let one = enumerate_constructive(1, &options).unwrap();
    let capped = EnumerateOptions { allow_large: false, max_classes: Some(5) };
    assert_eq!(
        enumerate_constructive_from(&one, &capped).unwrap_err(),
        EnumerateError::ResourceLimit { genus: 2, limit: 5 }
    );
}

#[test]
#[ignore = "genus-4 census: about 1.35 million classes; run with --ignored in release mode"]
fn genus_four_constructive_census() {
    let census = enumerate_constructive(4, &EnumerateOptions::allow_large()).unwrap();
    assert_eq!(census.len(), 1_349_005);
}
