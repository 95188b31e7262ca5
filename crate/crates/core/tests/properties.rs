use proptest::prelude::*;

use strata_core::corpus;
use strata_core::homext::{classify, ext1, is_split, realize};
use strata_core::module::{direct_sum, hom_dim, injective, is_isomorphic, projective, simple};
use strata_core::strata::{is_mixed_stratified, Strata, StrataChoice, Verdict};
use strata_core::{Field, Matrix, Module};

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let data = entries
        .iter()
        .take(rows * cols)
        .map(|v| field.from_i64(*v))
        .collect();
    Matrix::from_vec(field, rows, cols, data)
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(7).unwrap())
    ]
}

fn small_modules(seed: u64) -> (std::sync::Arc<strata_core::Algebra>, Vec<Module>) {
    let a = corpus::random_algebra(seed, 3, 9);
    let mut pool = Vec::new();
    for i in 0..a.n() {
        pool.push(projective(&a, i).unwrap());
        pool.push(injective(&a, i).unwrap());
        pool.push(simple(&a, i).unwrap());
    }
    (a, pool)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(field in fields(), rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-3i64..4, 36)) {
        let m = matrix(field, rows, cols, &entries);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), cols);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverse_is_two_sided(field in fields(), n in 1usize..5, entries in prop::collection::vec(-3i64..4, 16)) {
        let m = matrix(field, n, n, &entries);
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn duality_is_involutive(seed in 0u64..200) {
        let (_, pool) = small_modules(seed);
        for m in &pool {
            prop_assert_eq!(&m.dual().dual(), m);
        }
    }

    #[test]
    fn hom_is_additive(seed in 0u64..200, i in 0usize..9, j in 0usize..9, k in 0usize..9) {
        let (a, pool) = small_modules(seed);
        let (x, y, z) = (&pool[i % pool.len()], &pool[j % pool.len()], &pool[k % pool.len()]);
        let xy = direct_sum(&a, &[x, y]).module;
        prop_assert_eq!(hom_dim(&xy, z).unwrap(), hom_dim(x, z).unwrap() + hom_dim(y, z).unwrap());
        prop_assert_eq!(hom_dim(z, &xy).unwrap(), hom_dim(z, x).unwrap() + hom_dim(z, y).unwrap());
    }

    #[test]
    fn extension_classes_round_trip(seed in 0u64..200, i in 0usize..9, j in 0usize..9, coeffs in prop::collection::vec(-2i64..3, 8)) {
        let (a, pool) = small_modules(seed);
        let (m, n) = (&pool[i % pool.len()], &pool[j % pool.len()]);
        let ext = ext1(m, n).unwrap();
        let c: Vec<_> = coeffs.iter().take(ext.dim()).map(|v| a.field.from_i64(*v)).chain(std::iter::repeat(a.field.zero())).take(ext.dim()).collect();
        let r = ext.class(&c);
        let conf = realize(&ext, &r);
        prop_assert!(conf.verify());
        prop_assert_eq!(ext.coords(&classify(&ext, &conf).unwrap()), ext.coords(&r));
        prop_assert_eq!(is_split(&conf).unwrap(), ext.is_zero(&r));
    }

    #[test]
    fn projectives_have_no_extensions(seed in 0u64..200) {
        let (a, pool) = small_modules(seed);
        for i in 0..a.n() {
            let p = projective(&a, i).unwrap();
            let q = injective(&a, i).unwrap();
            for m in &pool {
                prop_assert_eq!(ext1(&p, m).unwrap().dim(), 0);
                prop_assert_eq!(ext1(m, &q).unwrap().dim(), 0);
            }
        }
    }

    /// Standard modules are quotients of projectives whose top is the simple.
    #[test]
    fn standard_modules_have_simple_top(seed in 0u64..200) {
        let a = corpus::random_algebra(seed, 4, 12);
        let s = Strata::new(&a).unwrap();
        for i in 0..a.n() {
            let top = strata_core::module::top(&s.standard[i]).module;
            prop_assert!(is_isomorphic(&top, &simple(&a, i).unwrap()).unwrap());
            prop_assert!(s.proper[i].dim() <= s.standard[i].dim());
        }
    }

    /// Over a linear quiver without relations every algebra is standardly stratified.
    #[test]
    fn hereditary_linear_is_stratified(n in 1usize..5) {
        let a = corpus::linear_an(n);
        let r = is_mixed_stratified(&a, &StrataChoice::all_standard(n)).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass);
    }
}
