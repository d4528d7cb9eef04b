mod common;

use common::{admissible, check_counts, check_oracle, check_syzygies};

#[test]
fn counts_for_all_admissible_semigroups() {
    for sg in admissible(12) {
        check_counts(&sg, false).unwrap();
    }
}

#[test]
fn ideal_codimensions() {
    for sg in admissible(10) {
        check_counts(&sg, true).unwrap();
    }
}

#[test]
fn syzygies_vanish() {
    for sg in admissible(12) {
        check_syzygies(&sg).unwrap();
    }
}

#[test]
fn oracle_agreement_small_genus() {
    for sg in admissible(9) {
        check_oracle(&sg).unwrap();
    }
}

#[test]
fn census_size() {
    assert_eq!(admissible(12).len(), 91);
}
