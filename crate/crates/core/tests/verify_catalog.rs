use blocklab::catalog;
use blocklab::chartab::{CharacterTable, DEFAULT_SEED};
use blocklab::verify::{verify, CheckRegistry, Instance, Status, VerificationReport};

fn report(name: &str, p: u64) -> VerificationReport {
    let g = catalog::find(name).unwrap().build().unwrap();
    let t = CharacterTable::compute(&g).unwrap();
    let inst = Instance::new(name, g, t, p, DEFAULT_SEED).unwrap();
    let reg = CheckRegistry::standard();
    verify(&inst, &reg.select(None).unwrap()).unwrap()
}

fn status(r: &VerificationReport, id: &str) -> Status {
    r.checks.iter().find(|c| c.id == id).unwrap().status
}

#[test]
fn every_catalog_instance_passes() {
    for e in catalog::entries() {
        for p in [2, 3, 5, 7] {
            let r = report(e.name, p);
            let bad: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
            assert!(bad.is_empty(), "{} p={p}: {:#?}", e.name, bad);
            assert_ne!(r.classical_cross_check.status, Status::Fail, "{} p={p}", e.name);
        }
    }
}

#[test]
fn s3_at_two_runs_the_chain() {
    let r = report("S3", 2);
    assert!(r.hypothesis_holds);
    assert_eq!(r.normal_p_complement_order, Some(3));
    for id in ["thm1", "lem2.3/E2", "sec3/E3", "sec3/E10", "sec3/closing", "sec3/kronecker"] {
        assert_eq!(status(&r, id), Status::Pass, "{id}");
    }
    assert_eq!(r.classical_cross_check.status, Status::Pass);
}

#[test]
fn s3_at_three_has_no_complement() {
    let r = report("S3", 3);
    assert!(!r.hypothesis_holds);
    assert_eq!(r.normal_p_complement_order, None);
    assert_eq!(status(&r, "thm1"), Status::Pass);
    for id in ["lem2.2", "lem2.3/E2", "sec3/E4", "sec3/E8", "sec3/closing"] {
        assert_eq!(status(&r, id), Status::NotApplicable, "{id}");
    }
}

#[test]
fn hypothesis_examples() {
    assert!(report("C6", 3).hypothesis_holds);
    let a4 = report("A4", 3);
    assert!(a4.hypothesis_holds);
    assert_eq!(a4.normal_p_complement_order, Some(4));
    assert!(!report("A4", 2).hypothesis_holds);
    let q8 = report("Q8", 2);
    // a nonabelian Sylow subgroup: the complement exists without the hypothesis
    assert!(!q8.hypothesis_holds);
    assert_eq!(q8.normal_p_complement_order, Some(1));
    assert_eq!(status(&q8, "thm1"), Status::Pass);
    let a5 = report("A5", 5);
    assert!(!a5.hypothesis_holds);
    assert_eq!(status(&a5, "lem2.5"), Status::Pass);
}

#[test]
fn unknown_check_ids_are_rejected() {
    let reg = CheckRegistry::standard();
    assert!(reg.select(Some(&["nope".to_string()])).is_err());
    let picked = reg.select(Some(&["sec3/E8".to_string(), "thm1".to_string()])).unwrap();
    assert_eq!(picked.iter().map(|c| c.id()).collect::<Vec<_>>(), vec!["thm1", "sec3/E8"]);
}
