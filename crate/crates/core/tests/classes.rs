use std::collections::BTreeSet;

use canalizing::{
    enumerate_canalizing, generate_canalizing_next, generate_ncfs, is_canalizing, ncf_matrix,
    pncf_classify, BooleanFunction,
};

#[test]
fn five_variable_ncfs_match_matrix() {
    let ncfs = generate_ncfs(5).unwrap();
    assert_eq!(ncfs.len() as u64, ncf_matrix(5).unwrap().ncf_count());
    assert_eq!(ncfs.len(), 10624);
}

#[test]
fn padded_third_example_is_not_canalizing() {
    // the printed table has 31 characters; one trailing zero completes it
    let printed = "0000111000011111111000011110000";
    assert!(BooleanFunction::parse_auto(printed).is_err());
    assert!(BooleanFunction::parse(printed, 5).is_err());
    let f = BooleanFunction::parse(&format!("{printed}0"), 5).unwrap();
    assert!(!is_canalizing(&f));
}

#[test]
fn fully_nested_bucket_is_the_ncf_class() {
    let nested: BTreeSet<_> = enumerate_canalizing(4)
        .unwrap()
        .into_iter()
        .filter(|f| !f.is_constant() && pncf_classify(f).unwrap().is_fully_nested())
        .collect();
    assert_eq!(nested, generate_ncfs(4).unwrap());
}

#[test]
fn generation_chain_from_one_variable() {
    let mut class = enumerate_canalizing(1).unwrap();
    for n in 2..=4 {
        let report = generate_canalizing_next(&class).unwrap();
        assert!(report.within_budget(), "n={n}");
        class = report.produced;
        assert_eq!(class, enumerate_canalizing(n).unwrap());
    }
}
