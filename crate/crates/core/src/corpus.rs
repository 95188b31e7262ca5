//! Shipped example algebras and a seeded generator of small random ones.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{parse_document, Algebra, Document, Path, Quiver, Relation};
use crate::exactlin::Field;

pub const EX43: &str = include_str!("../../../corpus/ex43.alg");
pub const EX414: &str = include_str!("../../../corpus/ex414.alg");
pub const EX35A: &str = include_str!("../../../corpus/ex35a.alg");
pub const EX35B: &str = include_str!("../../../corpus/ex35b.alg");
pub const KRON: &str = include_str!("../../../corpus/kron.alg");

fn load(src: &str) -> Arc<Algebra> {
    parse_document(src).expect("corpus file parses").algebra
}

pub fn ex43() -> Arc<Algebra> {
    load(EX43)
}

pub fn ex414() -> Arc<Algebra> {
    load(EX414)
}

pub fn ex35a() -> Arc<Algebra> {
    load(EX35A)
}

pub fn ex35b() -> Arc<Algebra> {
    load(EX35B)
}

pub fn kron() -> Arc<Algebra> {
    load(KRON)
}

pub fn kron_document() -> Document {
    parse_document(KRON).expect("corpus file parses")
}

/// All corpus algebras with their names.
pub fn named() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![
        ("ex43", ex43()),
        ("ex414", ex414()),
        ("ex35a", ex35a()),
        ("ex35b", ex35b()),
        ("kron", kron()),
    ]
}

pub fn all() -> Vec<Arc<Algebra>> {
    named().into_iter().map(|(_, a)| a).collect()
}

/// Linearly oriented A_n with no relations.
pub fn linear_an(n: usize) -> Arc<Algebra> {
    let mut q = Quiver::new((1..=n).map(|i| i.to_string()).collect());
    for i in 0..n.saturating_sub(1) {
        q.add_arrow(&format!("a{}", i + 1), i, i + 1);
    }
    Algebra::new(Field::Rationals, q, Vec::new()).unwrap()
}

/// Product of `n` copies of the ground field.
pub fn semisimple(n: usize) -> Arc<Algebra> {
    Algebra::new(
        Field::Rationals,
        Quiver::new((1..=n).map(|i| i.to_string()).collect()),
        Vec::new(),
    )
    .unwrap()
}

/// Seeded random admissible algebra with at most `max_n` vertices and
/// dimension at most `max_dim`. Relations are mostly monomial, with an
/// occasional commutativity-type binomial.
pub fn random_algebra(seed: u64, max_n: usize, max_dim: usize) -> Arc<Algebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=max_n);
        let mut q = Quiver::new((1..=n).map(|i| i.to_string()).collect());
        let arrows = rng.gen_range(0..=n + 2);
        for k in 0..arrows {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            q.add_arrow(&format!("x{k}"), u, v);
        }
        let mut twos: Vec<Path> = Vec::new();
        for (i, a) in q.arrows.iter().enumerate() {
            for (j, b) in q.arrows.iter().enumerate() {
                if a.target == b.source {
                    twos.push(Path {
                        source: a.source,
                        target: b.target,
                        arrows: vec![i, j],
                    });
                }
            }
        }
        let mut rels = Vec::new();
        let mut used = vec![false; twos.len()];
        if rng.gen_bool(0.3) {
            // binomial between two parallel length-two paths
            for i in 0..twos.len() {
                for j in i + 1..twos.len() {
                    if !used[i]
                        && !used[j]
                        && twos[i].source == twos[j].source
                        && twos[i].target == twos[j].target
                        && rng.gen_bool(0.5)
                    {
                        let c = rng.gen_range(1..=3);
                        rels.push(Relation {
                            terms: vec![
                                (Field::Rationals.one(), twos[i].clone()),
                                (Field::Rationals.from_i64(-c), twos[j].clone()),
                            ],
                        });
                        used[i] = true;
                        used[j] = true;
                    }
                }
            }
        }
        let density = rng.gen_range(0.3..0.9);
        for (i, p) in twos.iter().enumerate() {
            if !used[i] && rng.gen_bool(density) {
                rels.push(Relation {
                    terms: vec![(Field::Rationals.one(), p.clone())],
                });
            }
        }
        if let Ok(a) = Algebra::with_limits(Field::Rationals, q, rels, max_dim, 4 * max_dim) {
            if a.dim() <= max_dim {
                return a;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_algebras_are_bounded_and_reproducible() {
        for seed in 0..20 {
            let a = random_algebra(seed, 4, 12);
            assert!(a.dim() <= 12 && a.n() <= 4);
            assert_eq!(*a, *random_algebra(seed, 4, 12));
        }
    }
}
