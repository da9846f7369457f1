use std::collections::BTreeSet;

use amalgamlab::amalgam::{classify, regular_three_arc_filter, three_arc_admissible, two_point_columns, Amalgam, FilterOutcome};
use amalgamlab::catalog::load_catalog;
use amalgamlab::names::labels_match;

fn rows(amalgams: &[Amalgam]) -> BTreeSet<u32> {
    amalgams.iter().filter_map(|a| a.table_row).collect()
}

fn extras(amalgams: &[Amalgam]) -> BTreeSet<(String, String)> {
    amalgams.iter().filter(|a| a.table_row.is_none()).map(|a| (a.left.id.clone(), a.right.id.clone())).collect()
}

fn row(n: u32) -> Amalgam {
    classify(load_catalog().unwrap()).unwrap().amalgams.into_iter().find(|a| a.table_row == Some(n)).unwrap()
}

#[test]
fn soluble_stabilisers() {
    // Rows 2-4 need a 2-transitive 5^2:GL(2,3) or 7^2:GL(2,3), which does not exist.
    let cat = load_catalog().unwrap().filter(|e| e.stabiliser_soluble);
    let c = classify(&cat).unwrap();
    assert_eq!(rows(&c.amalgams), BTreeSet::from([1]));
    let want: BTreeSet<(String, String)> =
        [("S5@5", "PSL3_2@7"), ("AGammaL1_8@8", "PSL2_7@8")].map(|(a, b)| (a.to_string(), b.to_string())).into();
    assert_eq!(extras(&c.amalgams), want);
    assert!(c.amalgams.iter().all(|a| a.left.stabiliser_soluble && a.right.stabiliser_soluble));
}

#[test]
fn a5_and_s5_stabilisers_give_rows_5_to_8() {
    let cat = load_catalog().unwrap().filter(|e| ["A5", "S5"].iter().any(|l| labels_match(&e.stabiliser_iso, l)));
    let c = classify(&cat).unwrap();
    assert_eq!(rows(&c.amalgams), BTreeSet::from([5, 6, 7, 8]));
    assert!(extras(&c.amalgams).is_empty());
}

#[test]
fn two_point_columns_of_rows_5_and_11() {
    let [l, r] = two_point_columns(&row(5)).unwrap();
    assert_eq!((l.order, r.order), (12, 6));
    assert!(labels_match(&l.label, "A4") && labels_match(&r.label, "D6"));
    let [l, r] = two_point_columns(&row(11)).unwrap();
    assert!(labels_match(&l.label, "A6") && labels_match(&r.label, "PSL(2,7)"));
    let [l, r] = two_point_columns(&row(1)).unwrap();
    assert_eq!((l.label.as_str(), r.order), ("C3", 1));
}

#[test]
fn s9_with_sp6_2() {
    let d = three_arc_admissible(&row(13)).unwrap();
    let w = d.witness.unwrap();
    assert_eq!(w.intersection.order, 144);
    assert!(labels_match(&w.intersection.label, "S4xS3"));
    assert_eq!(BTreeSet::from([w.left_index, w.right_index]), BTreeSet::from([8, 35]));
    assert!(!three_arc_admissible(&row(1)).unwrap().admissible);
}

#[test]
fn filter_examples() {
    let f = regular_three_arc_filter(load_catalog().unwrap(), 0).unwrap();
    let get = |id: &str| f.iter().find(|e| e.id == id).unwrap().outcome.clone();
    assert_eq!(get("A7@7"), FilterOutcome::Witness { subgroup_order: 10 });
    assert_eq!(get("S6@6"), FilterOutcome::ScreenedOut);
    // |X_ww'| = 36 is divisible by 12, and a subgroup of order 3 has index 12.
    assert_eq!(get("PSL3_3@13"), FilterOutcome::Witness { subgroup_order: 3 });
}
