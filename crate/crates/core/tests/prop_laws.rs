use cyclowitt::rig::{
    check_prop_laws, check_rig_laws, BooleanRig, Matrix2Rig, PropBudget, SubtractionRig,
    TropicalNonNeg, TropicalUnit, ZMod, PROP_LAWS,
};

#[test]
fn boolean_prop_is_exhaustive_and_lawful() {
    let budget = PropBudget {
        max_dim: 2,
        max_entries: 4,
        ..PropBudget::default()
    };
    let r = check_prop_laws(&BooleanRig, budget, false).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(r.laws.len(), PROP_LAWS.len());
    assert!(r.laws.iter().all(|&(_, _, exhaustive)| exhaustive));
}

#[test]
fn sampled_rigs_are_lawful() {
    let z3 = check_prop_laws(&ZMod::new(3).unwrap(), PropBudget::default(), false).unwrap();
    assert!(z3.passed(), "{:?}", z3.violations);
    let trop = check_prop_laws(&TropicalUnit, PropBudget::default(), false).unwrap();
    assert!(trop.passed(), "{:?}", trop.violations);
    assert!(check_rig_laws(&TropicalNonNeg, 2000).passed());
}

#[test]
fn controls_are_caught() {
    let m2 = check_prop_laws(&Matrix2Rig, PropBudget::default(), true).unwrap();
    assert!(m2.violated("commutative"));
    assert!(!m2.violated("compose-associative"));
    assert!(!check_rig_laws(&SubtractionRig, 2000).passed());
}
