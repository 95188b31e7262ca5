use super::*;
use crate::corpus;
use crate::module::{direct_sum, kernel, projective, quotient, radical, simple, socle, Module};

fn kron_m() -> Module {
    let doc = corpus::kron_document();
    Module::from_literal(&doc.algebra, &doc.modules[0]).unwrap()
}

#[test]
fn ext_of_projectives_vanishes() {
    for a in corpus::all() {
        for i in 0..a.n() {
            let p = projective(&a, i).unwrap();
            for j in 0..a.n() {
                assert_eq!(ext1(&p, &simple(&a, j).unwrap()).unwrap().dim(), 0);
                assert_eq!(
                    ext_dim(&p, &projective(&a, j).unwrap(), 2, 4).unwrap(),
                    Bounded::Known(0)
                );
            }
        }
    }
    let ss = corpus::semisimple(3);
    let s = simple(&ss, 1).unwrap();
    assert_eq!(ext_dim(&s, &s, 1, 3).unwrap(), Bounded::Known(0));
    assert_eq!(ext_dim(&s, &s, 5, 3).unwrap(), Bounded::BeyondCap(3));
}

#[test]
fn small_ext_dimensions() {
    let b = corpus::ex35b();
    let s = simple(&b, 0).unwrap();
    assert_eq!(ext1(&s, &s).unwrap().dim(), 2);
    let m = kron_m();
    assert_eq!(ext1(&m, &m).unwrap().dim(), 1);
    assert!(!is_stone(&s).unwrap());
    let a = corpus::ex43();
    assert!(is_stone(&projective(&a, 2).unwrap()).unwrap());
}

#[test]
fn radical_sequence_of_ex35a_is_not_split() {
    let a = corpus::ex35a();
    let p = projective(&a, 1).unwrap();
    let soc = socle(&p);
    let n = quotient(&p, soc.map.comps());
    let rad_n = radical(&n.module);
    assert_eq!(rad_n.module.dims(), soc.module.dims());
    let c = Conflation {
        left: soc.module.clone(),
        middle: p.clone(),
        right: n.module.clone(),
        inclusion: soc.map.clone(),
        projection: n.map.clone(),
    };
    assert!(c.verify());
    let e = ext1(&n.module, &rad_n.module).unwrap();
    assert!(!e.is_zero(&classify(&e, &c).unwrap()));
    assert!(!is_split(&c).unwrap());
}

#[test]
fn realize_and_classify_round_trip() {
    for a in corpus::all() {
        for i in 0..a.n() {
            let m = simple(&a, i).unwrap();
            for j in 0..a.n() {
                let n = projective(&a, j).unwrap();
                let e = ext1(&m, &n).unwrap();
                let zero = realize(&e, &e.class(&vec![Scalar::zero(); e.dim()]));
                assert!(zero.verify());
                assert!(is_split(&zero).unwrap());
                for b in e.basis() {
                    let c = realize(&e, b);
                    assert!(c.verify());
                    assert_eq!(classify(&e, &c).unwrap(), e.canonical(b));
                    assert!(!is_split(&c).unwrap());
                }
            }
        }
    }
}

#[test]
fn pushout_and_pullback_act_on_classes() {
    let a = corpus::ex35b();
    let s = simple(&a, 0).unwrap();
    let e = ext1(&s, &s).unwrap();
    let c = realize(&e, &e.basis()[0]);
    let same = pushout(&c, &s.identity());
    assert_eq!(classify(&e, &same).unwrap(), e.canonical(&e.basis()[0]));
    let zero = pushout(&c, &ModuleMap::zero(&s, &s));
    assert!(is_split(&zero).unwrap());
    let two = s.identity().scale(&a.field.from_i64(2));
    let doubled = pushout(&c, &two);
    assert_eq!(
        e.coords(&classify(&e, &doubled).unwrap()),
        vec![a.field.from_i64(2), Scalar::zero()]
    );
    let back = pullback(&c, &two);
    assert!(back.verify());
    assert_eq!(
        e.coords(&classify(&e, &back).unwrap()),
        vec![a.field.from_i64(2), Scalar::zero()]
    );
}

#[test]
fn universal_extensions() {
    let m = kron_m();
    let u = universal_extension(&m, &m).unwrap();
    assert_eq!(u.d, 1);
    assert_eq!(u.conflation.middle.dims(), [2, 2]);
    assert!(u.conflation.verify());
    let b = corpus::ex35b();
    let s = simple(&b, 0).unwrap();
    let u = universal_extension(&s, &s).unwrap();
    assert_eq!(u.d, 2);
    assert_eq!(u.conflation.middle.dims(), [3]);
    // the middle term is the projective cover of S(1)
    assert_eq!(ext1(&u.conflation.middle, &s).unwrap().dim(), 0);
    let a = corpus::ex43();
    let p = projective(&a, 0).unwrap();
    let t = universal_extension(&p, &simple(&a, 1).unwrap()).unwrap();
    assert_eq!(t.d, 0);
    assert_eq!(t.conflation.middle, p);
    let dec = direct_sum(&a, &[&p, &p]).module;
    assert!(universal_extension(&p, &dec).is_err());
}

#[test]
fn universal_coextension_is_dual() {
    let b = corpus::ex35b();
    let s = simple(&b, 0).unwrap();
    let u = universal_coextension(&s, &s).unwrap();
    assert_eq!(u.d, 2);
    assert!(u.conflation.verify());
    assert_eq!(u.conflation.right.dims(), [2]);
    let a = corpus::ex43();
    let i = crate::module::injective(&a, 0).unwrap();
    let t = universal_coextension(&i, &simple(&a, 1).unwrap()).unwrap();
    assert_eq!(t.d, 0);
    let _ = kernel(&t.conflation.projection);
}
