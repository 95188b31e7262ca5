use super::*;
use crate::corpus;
use crate::module::{is_isomorphic, simple};

fn choice(s: &str) -> StrataChoice {
    s.parse().unwrap()
}

#[test]
fn standard_dims_ex43() {
    let a = corpus::ex43();
    let s = Strata::new(&a).unwrap();
    assert!(is_isomorphic(&s.standard[0], &simple(&a, 0).unwrap()).unwrap());
    assert_eq!(s.proper[0].dims(), [1, 0, 0]);
    assert_eq!(s.standard[1].dims(), [2, 2, 0]);
    assert_eq!(s.proper[1].dims(), [1, 1, 0]);
    assert_eq!(s.standard[2].dims(), projective(&a, 2).unwrap().dims());
    assert_eq!(s.proper[2].dims(), [0, 1, 1]);
}

#[test]
fn costandard_dims_ex414() {
    let a = corpus::ex414();
    assert_eq!(costandard_module(&a, 0).unwrap().dims(), [3, 0, 0]);
    let nb = proper_costandard_module(&a, 0).unwrap();
    assert!(is_isomorphic(&nb, &simple(&a, 0).unwrap()).unwrap());
}

#[test]
fn standard_modules_are_stones_and_proper_ones_bricks() {
    for a in corpus::all() {
        let s = Strata::new(&a).unwrap();
        for i in 0..a.n() {
            assert!(is_stone(&s.standard[i]).unwrap());
            assert!(is_brick(&s.proper[i]).unwrap());
        }
    }
}

#[test]
fn proper_standard_is_maximal() {
    for a in corpus::all() {
        for i in 0..a.n() {
            let d = proper_standard_module(&a, i).unwrap().module;
            let rad = radical(&d);
            let p = projective(&a, i).unwrap();
            for h in hom(&p, &d).unwrap() {
                if crate::homext::restrict_into(&rad.map, &h).is_ok() {
                    assert!(h.is_zero());
                }
            }
        }
    }
}

#[test]
fn choice_syntax() {
    assert_eq!(choice("d, p,d").to_string(), "d,p,d");
    assert!("d,x".parse::<StrataChoice>().is_err());
}

#[test]
fn ex43_membership() {
    let a = corpus::ex43();
    let s = Strata::new(&a).unwrap();
    let fam = Family::new(s.family(&choice("d,p,d")).unwrap()).unwrap();
    let p2 = projective(&a, 1).unwrap();
    match filtration_membership(&p2, &fam, DEFAULT_NODE_BUDGET).unwrap() {
        Membership::Filtered(c) => {
            assert!(c.verify(&p2, &fam));
            assert_eq!(c.indices(), [2, 1, 1]);
        }
        other => panic!("{other:?}"),
    }
    let all_d = Family::new(s.family(&choice("d,d,d")).unwrap()).unwrap();
    let Membership::Filtered(c) = filtration_membership(&p2, &all_d, DEFAULT_NODE_BUDGET).unwrap()
    else {
        panic!()
    };
    assert_eq!(c.indices(), [2, 1]);
    let p1 = projective(&a, 0).unwrap();
    assert!(matches!(
        filtration_membership(&p1, &all_d, DEFAULT_NODE_BUDGET).unwrap(),
        Membership::NotFiltered { .. }
    ));
}

#[test]
fn single_member_is_one_layer() {
    let a = corpus::ex43();
    let s = Strata::new(&a).unwrap();
    let fam = Family::new(s.family(&choice("d,p,d")).unwrap()).unwrap();
    for (j, m) in fam.modules().iter().enumerate() {
        let Membership::Filtered(c) = filtration_membership(m, &fam, 100).unwrap() else {
            panic!()
        };
        assert_eq!(c.indices(), [j]);
    }
}

#[test]
fn ex43_decision() {
    let a = corpus::ex43();
    assert_eq!(
        is_mixed_stratified(&a, &choice("d,p,d")).unwrap().verdict,
        Verdict::Pass
    );
    assert_eq!(
        is_mixed_stratified(&a, &choice("d,d,d")).unwrap().verdict,
        Verdict::Fail
    );
    let passing = enumerate_mixed_choices(&a, DEFAULT_CHOICE_BOUND).unwrap();
    assert!(passing.contains(&choice("d,p,d")));
    assert!(!passing.contains(&choice("d,d,d")));
}

#[test]
fn ex414_family_recognized() {
    let a = corpus::ex414();
    let s = Strata::new(&a).unwrap();
    let c = choice("p,d,p");
    assert_eq!(
        mixed_stratified_with(&s, &c, DEFAULT_NODE_BUDGET)
            .unwrap()
            .verdict,
        Verdict::Pass
    );
    assert!(enumerate_mixed_choices(&a, 12)
        .unwrap()
        .contains(&s.normalize(&c)));
    let theta = s.family(&c).unwrap();
    assert!(is_isomorphic(&theta[0], &simple(&a, 0).unwrap()).unwrap());
    assert_eq!(theta[2].dims(), [0, 1, 1]);
}

#[test]
fn reversed_order_violates_backward_maps() {
    let a = corpus::ex43();
    let s = Strata::new(&a).unwrap();
    let mut theta = s.family(&choice("d,p,d")).unwrap();
    theta.reverse();
    let r = verify_mixed_standardizable(&theta).unwrap();
    assert!(!r.passed && r.ms2_witness.is_some());
    assert!(Family::new(theta).is_err());
}

#[test]
fn hereditary_and_semisimple_pass_everywhere() {
    for a in [corpus::linear_an(3), corpus::semisimple(3)] {
        let all = enumerate_choices(&a, 12).unwrap();
        assert!(all.iter().all(|(_, v)| *v == Verdict::Pass));
    }
}
