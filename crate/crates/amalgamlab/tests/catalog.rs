use std::collections::BTreeSet;

use amalgamlab::catalog::{load_catalog, validate_entry, Family};

#[test]
fn every_constructed_entry_validates() {
    let cat = load_catalog().unwrap();
    let mut failed = Vec::new();
    for e in cat.constructed() {
        let report = validate_entry(e).unwrap();
        println!("{report}");
        if !report.passed() {
            failed.push(report.id.clone());
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn descriptor_arithmetic_holds_everywhere() {
    for e in load_catalog().unwrap().entries() {
        assert_eq!(e.order, e.degree * e.stabiliser_order, "{}", e.id);
        assert_eq!(e.stabiliser_order, (e.degree - 1) * e.two_point_order, "{}", e.id);
    }
}

#[test]
fn both_tables_are_covered() {
    let cat = load_catalog().unwrap();
    let rows = |fam: Family| -> BTreeSet<u32> {
        cat.entries().iter().filter(|e| e.source.table == fam).map(|e| e.source.row).collect()
    };
    assert_eq!(rows(Family::AlmostSimple), (1..=18).collect());
    assert_eq!(rows(Family::Affine), (0..=16).collect());
}

#[test]
fn named_entries() {
    let cat = load_catalog().unwrap();
    let m24 = cat.get("M_24@24").unwrap();
    assert!(!m24.is_constructed());
    assert_eq!(m24.order, 244823040);
    let psl = cat.get("PSL2_11@11").unwrap();
    assert_eq!(psl.stabiliser().unwrap().order_u64(), Some(60));
}
