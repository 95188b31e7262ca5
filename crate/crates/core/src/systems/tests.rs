use super::*;
use crate::corpus;
use crate::module::{injective, is_isomorphic, projective, quotient, simple, socle, top};
use crate::strata::{Strata, StrataChoice};

fn family(a: &Arc<Algebra>, c: &str) -> Family {
    let s = Strata::new(a).unwrap();
    Family::new(s.family(&c.parse::<StrataChoice>().unwrap()).unwrap()).unwrap()
}

#[test]
fn kronecker_never_stabilizes() {
    let doc = corpus::kron_document();
    let m = Module::from_literal(&doc.algebra, &doc.modules[0]).unwrap();
    let t = universal_extension_sequence(&m, &m, 8).unwrap();
    assert_eq!(t.status, TraceStatus::CapExceeded { cap: 8 });
    assert_eq!(t.steps(), 8);
    let dims: Vec<usize> = t.modules.iter().map(Module::dim).collect();
    assert!(dims.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(t.modules[1].dims(), [2, 2]);
    for (k, c) in t.kernels.iter().zip(&t.certificates) {
        assert!(c.verify(&k.module, &t.family));
    }
    assert!(t.conflation().verify());
}

#[test]
fn no_extensions_means_no_steps() {
    let a = corpus::ex43();
    let p = projective(&a, 0).unwrap();
    let t = universal_extension_sequence(&p, &simple(&a, 1).unwrap(), 4).unwrap();
    assert_eq!(t.status, TraceStatus::Stabilized { at: 0 });
    assert_eq!(t.modules.len(), 1);
}

#[test]
fn stones_stabilize_in_one_step() {
    for a in corpus::all() {
        let s = Strata::new(&a).unwrap();
        for n in &s.standard {
            for i in 0..a.n() {
                for m in [
                    simple(&a, i).unwrap(),
                    s.proper[i].clone(),
                    s.standard[i].clone(),
                ] {
                    let t = universal_extension_sequence(&m, n, 4).unwrap();
                    match t.status {
                        TraceStatus::Stabilized { at } => assert!(at <= 1),
                        other => panic!("{other:?}"),
                    }
                }
            }
        }
    }
}

#[test]
fn brick_trace_hom_matches_extensions() {
    let a = corpus::ex35b();
    let s1 = simple(&a, 0).unwrap();
    let t = universal_extension_sequence(&s1, &s1, 10).unwrap();
    assert!(matches!(t.status, TraceStatus::Stabilized { .. }));
    let k = &t.kernels.last().unwrap().module;
    assert_eq!(hom(k, &s1).unwrap().len(), t.d[0]);
    assert_eq!(t.d[0], 2);
}

#[test]
fn finiteness_examples() {
    let a = corpus::ex35a();
    let p = projective(&a, 1).unwrap();
    let n = quotient(&p, socle(&p).map.comps()).module;
    assert_eq!(
        check_finiteness_conditions(&n).unwrap().ext_rad_vanishing,
        Check::Fails
    );
    let b = corpus::ex35b();
    let n = top(&projective(&b, 0).unwrap()).module;
    let r = check_finiteness_conditions(&n).unwrap();
    assert_eq!(r.ext_rad_vanishing, Check::Holds);
    assert_eq!(r.length_bound, Check::NotChecked);
    for a in corpus::all() {
        for m in Strata::new(&a).unwrap().proper {
            assert_eq!(
                check_finiteness_conditions(&m).unwrap().ext_rad_vanishing,
                Check::Holds
            );
        }
    }
}

#[test]
fn ex43_system_recovers_projectives() {
    let a = corpus::ex43();
    let fam = family(&a, "d,p,d");
    let sys = build_system(&fam, default_cap(&a)).unwrap();
    assert!(sys.report.passed, "{:?}", sys.report);
    for (i, p) in sys.projectives.iter().enumerate() {
        assert!(is_isomorphic(p, &projective(&a, i).unwrap()).unwrap());
        assert!(sys.conflations[i].verify());
        let Membership::Filtered(c) = &sys.kernel_certificates[i] else {
            panic!()
        };
        assert!(c.verify(&sys.conflations[i].left, &fam));
        assert!(c.indices().iter().all(|j| *j >= i));
    }
    let regular: Vec<Module> = (0..a.n()).map(|i| projective(&a, i).unwrap()).collect();
    assert!(verify_system(fam.modules(), &regular).unwrap().passed);
    let mut swapped = regular.clone();
    swapped.swap(0, 1);
    let r = verify_system(fam.modules(), &swapped).unwrap();
    assert!(!r.passed);
    assert_eq!(r.first_failure(), Some(0));
}

#[test]
fn semisimple_and_hereditary_systems() {
    let a = corpus::semisimple(3);
    let sys = build_system(&family(&a, "d,d,d"), 10).unwrap();
    for (p, t) in sys.projectives.iter().zip(&sys.theta) {
        assert_eq!(p, t);
    }
    let co = build_cosystem(&family(&a, "d,d,d"), 10).unwrap();
    for (i, t) in co.injectives.iter().zip(&co.theta) {
        assert!(is_isomorphic(i, t).unwrap());
    }
    let h = corpus::linear_an(2);
    let sys = build_system(&family(&h, "d,d"), 10).unwrap();
    for (i, p) in sys.projectives.iter().enumerate() {
        assert!(is_isomorphic(p, &projective(&h, i).unwrap()).unwrap());
    }
}

#[test]
fn ex414_cosystem() {
    let a = corpus::ex414();
    let fam = family(&a, "p,d,p");
    let co = build_cosystem(&fam, default_cap(&a)).unwrap();
    assert!(co.report.passed, "{:?}", co.report);
    let d1 = injective(&a, 0).unwrap();
    let f = hom(&d1, &simple(&a, 1).unwrap()).unwrap();
    assert_eq!(f.len(), 1);
    let t1 = kernel(&f[0]).module;
    assert!(is_isomorphic(&co.injectives[0], &t1).unwrap());
    assert!(is_isomorphic(&co.injectives[1], &d1).unwrap());
    assert!(is_isomorphic(&co.injectives[2], &injective(&a, 1).unwrap()).unwrap());
    for (i, c) in co.conflations.iter().enumerate() {
        assert!(c.verify());
        assert!(co.cokernel_certificates[i].is_filtered());
    }
}

#[test]
fn ex43_all_standard_cosystem_exists() {
    let a = corpus::ex43();
    let co = build_cosystem(&family(&a, "d,d,d"), default_cap(&a)).unwrap();
    assert!(co.report.passed);
}

#[test]
fn left_approximations() {
    let a = corpus::ex43();
    let fam = family(&a, "d,p,d");
    let s3 = simple(&a, 2).unwrap();
    let l = left_approximation(&s3, &fam, default_cap(&a)).unwrap();
    assert!(l.verified);
    for t in fam.modules() {
        let l = left_approximation(t, &fam, default_cap(&a)).unwrap();
        assert!(l.verified && l.map.is_iso());
    }
}
