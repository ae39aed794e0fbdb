use brauer_core::enumeration::{enumerate_classes, ClassFilter};
use brauer_core::surface::ExistenceStatus;
use brauer_lmfdb::{bundled_fixtures_dir, reconcile, LmfdbClient, LmfdbConfig, Query};

fn offline() -> LmfdbClient {
    LmfdbClient::new(LmfdbConfig {
        offline: true,
        fixtures_dir: Some(bundled_fixtures_dir()),
        ..LmfdbConfig::default()
    })
}

#[test]
fn supersingular_fixtures_agree() {
    let client = offline();
    for (q, n) in [(2, 11), (3, 9), (4, 19), (5, 7), (7, 5), (9, 19), (25, 15), (49, 12)] {
        let remote = client.fetch(Query::p_rank(q, 0)).unwrap().records;
        let local = enumerate_classes(q, ClassFilter::PRank(0)).unwrap();
        let r = reconcile(q, &local, &remote).unwrap();
        assert!(r.is_empty(), "q = {q}: {r:?}");
        assert_eq!(r.matched, n, "q = {q}");
    }
}

#[test]
fn full_fixtures_agree() {
    let client = offline();
    for (q, n) in [(2, 35), (4, 91)] {
        let remote = client.fetch(Query::all(q)).unwrap().records;
        let local = enumerate_classes(q, ClassFilter::All).unwrap();
        let r = reconcile(q, &local, &remote).unwrap();
        assert!(r.is_empty(), "q = {q}: {r:?}");
        assert_eq!(r.matched, n);
    }
}

#[test]
fn deleted_record_shows_as_local_only() {
    let mut remote = offline().fetch(Query::p_rank(7, 0)).unwrap().records;
    let gone = remote.remove(2);
    let local = enumerate_classes(7, ClassFilter::PRank(0)).unwrap();
    let r = reconcile(7, &local, &remote).unwrap();
    assert_eq!(r.matched, 4);
    assert_eq!(r.local_only().len(), 1);
    assert_eq!(r.local_only()[0].l_coeffs.to_vec(), gone.l_poly_coeffs);
    assert!(r.remote_only().is_empty());

    let mut classes: Vec<_> = local.into_iter().map(|(ic, _)| ic).collect();
    assert!(!r.confirm(&mut classes));
    assert!(classes.iter().all(|ic| ic.existence_status == ExistenceStatus::Heuristic));
}

#[test]
fn flipped_simplicity_is_reported() {
    let mut remote = offline().fetch(Query::p_rank(5, 0)).unwrap().records;
    remote[0].is_simple = !remote[0].is_simple;
    let local = enumerate_classes(5, ClassFilter::PRank(0)).unwrap();
    let r = reconcile(5, &local, &remote).unwrap();
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!(r.mismatches[0].field, "is_simple");
}

#[test]
fn empty_diff_confirms() {
    let remote = offline().fetch(Query::p_rank(3, 0)).unwrap().records;
    let local = enumerate_classes(3, ClassFilter::PRank(0)).unwrap();
    let r = reconcile(3, &local, &remote).unwrap();
    let mut classes: Vec<_> = local.into_iter().map(|(ic, _)| ic).collect();
    assert!(r.confirm(&mut classes));
    assert!(classes.iter().all(|ic| ic.existence_status == ExistenceStatus::Confirmed));
}

#[test]
fn q_mismatch_is_an_error() {
    let remote = offline().fetch(Query::p_rank(3, 0)).unwrap().records;
    let local = enumerate_classes(5, ClassFilter::PRank(0)).unwrap();
    assert!(reconcile(3, &local, &remote).is_err());
    assert!(reconcile(5, &local, &remote).is_err());
}
