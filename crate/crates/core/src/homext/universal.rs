use super::{ext1, realize, Conflation, ExtSpace};
use crate::error::{Error, Result};
use crate::exactlin::{to_sparse, Echelon};
use crate::module::{hom, is_brick, is_indecomposable, power, rebase, Module, ModuleMap};

/// `N^d -> E -> M` realizing a basis of `Ext^1(M, N)` over `D_N`, where
/// `D_N = End(N)^op` for a brick and the ground field otherwise.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub conflation: Conflation,
    pub d: usize,
    pub over_endomorphisms: bool,
    /// Canonical representatives of the chosen classes.
    pub classes: Vec<ModuleMap>,
}

/// Classes of `ext` forming a basis over `D_N`, chosen greedily in basis
/// order; `D_N` acts by post-composition with endomorphisms of `N`.
pub fn dn_basis(ext: &ExtSpace, endos: Option<&[ModuleMap]>) -> Vec<ModuleMap> {
    let f = ext.target.field();
    let mut span = Echelon::new(f, ext.dim());
    let mut chosen = Vec::new();
    for b in ext.basis() {
        if span.contains(&to_sparse(&ext.coords(b))) {
            continue;
        }
        chosen.push(b.clone());
        match endos {
            Some(es) => {
                for phi in es {
                    span.insert(&to_sparse(&ext.coords(&phi.compose(b))));
                }
            }
            None => {
                span.insert(&to_sparse(&ext.coords(b)));
            }
        }
    }
    chosen
}

pub fn universal_extension(m: &Module, n: &Module) -> Result<UniversalExtension> {
    if n.is_zero() || !is_indecomposable(n)? {
        return Err(Error::Precondition(
            "universal extension by a decomposable module".into(),
        ));
    }
    let ext = ext1(m, n)?;
    universal_extension_in(&ext)
}

pub(crate) fn universal_extension_in(ext: &ExtSpace) -> Result<UniversalExtension> {
    let (m, n) = (&ext.source, &ext.target);
    if ext.dim() == 0 {
        return Ok(UniversalExtension {
            conflation: Conflation::trivial(m),
            d: 0,
            over_endomorphisms: false,
            classes: Vec::new(),
        });
    }
    let brick = is_brick(n)?;
    let endos = if brick { Some(hom(n, n)?) } else { None };
    let classes = dn_basis(ext, endos.as_deref());
    let d = classes.len();
    let nd = power(n, d);
    let rep = ModuleMap::from_rows(&ext.syzygy.module, &nd, &classes);
    let conflation = realize(ext, &rep);
    Ok(UniversalExtension {
        conflation,
        d,
        over_endomorphisms: brick,
        classes,
    })
}

/// `M -> E -> N^d` realizing a `D_N`-basis of `Ext^1(N, M)`, built as the
/// dual of a universal extension over the opposite algebra.
pub fn universal_coextension(m: &Module, n: &Module) -> Result<UniversalExtension> {
    let a = m.algebra();
    let u = universal_extension(&m.dual(), &n.dual())?;
    let c = u.conflation.dual();
    let left = rebase(a, c.left);
    let middle = rebase(a, c.middle);
    let right = rebase(a, c.right);
    let conflation = Conflation {
        inclusion: c.inclusion.with_ends(&left, &middle),
        projection: c.projection.with_ends(&middle, &right),
        left,
        middle,
        right,
    };
    Ok(UniversalExtension {
        conflation,
        d: u.d,
        over_endomorphisms: u.over_endomorphisms,
        classes: Vec::new(),
    })
}
