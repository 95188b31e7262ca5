//! Quivers with admissible relations: DSL, path basis, structure constants.

mod build;
mod dsl;
mod quiver;

pub use build::{Algebra, DEFAULT_LENGTH_CAP};
pub use dsl::{
    parse_algebra, parse_document, parse_document_with, print_algebra, print_document, Document,
    ModuleLiteral,
};
pub use quiver::{Arrow, Path, Quiver, Relation};

use std::sync::Arc;

/// Opposite algebra; vertex order is kept so that duality maps the i-th
/// standard left module to the i-th costandard right module.
pub fn opposite_algebra(a: &Arc<Algebra>) -> Arc<Algebra> {
    a.opposite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn names(a: &Algebra, v: usize) -> Vec<String> {
        (0..a.dim())
            .filter(|i| a.basis()[*i].source == v)
            .map(|i| a.path_text(i))
            .collect()
    }

    #[test]
    fn ex43_basis() {
        let a = corpus::ex43();
        assert_eq!(a.dim(), 13);
        assert_eq!(names(&a, 0), ["e1", "a", "a*c"]);
        assert_eq!(
            names(&a, 1),
            ["e2", "c", "b", "c*a", "b*d", "c*a*c", "b*d*b"]
        );
        assert_eq!(names(&a, 2), ["e3", "d", "d*b"]);
    }

    #[test]
    fn ex414_basis() {
        let a = corpus::ex414();
        assert_eq!(a.dim(), 11);
        assert_eq!(names(&a, 0), ["e1", "x", "y"]);
    }

    #[test]
    fn trivial_algebra() {
        let a = parse_algebra("vertices 1\n").unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn associativity_on_corpus() {
        for a in corpus::all() {
            let d = a.dim();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let ij = a.mul(&vec![(i, a.field.one())], &vec![(j, a.field.one())]);
                        let left = a.mul(&ij, &vec![(k, a.field.one())]);
                        let jk = a.mul(&vec![(j, a.field.one())], &vec![(k, a.field.one())]);
                        let right = a.mul(&vec![(i, a.field.one())], &jk);
                        assert_eq!(left, right);
                    }
                }
            }
            let cartan: usize = a.cartan().iter().flatten().sum();
            assert_eq!(cartan, d);
        }
    }

    #[test]
    fn opposite_is_involutive() {
        for a in corpus::all() {
            let op = opposite_algebra(&a);
            assert_eq!(op.dim(), a.dim());
            let back = opposite_algebra(&op);
            assert_eq!(*back, *a);
        }
        let loop_alg = parse_algebra("vertices 1\narrow x : 1 -> 1\nrelation x*x\n").unwrap();
        assert_eq!(*opposite_algebra(&loop_alg), *loop_alg);
    }
}
