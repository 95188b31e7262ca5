use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::module::{Module, ModuleMap};

use super::present::{BasicPresentation, HomSpace, StructureAlgebra};

/// `Hom(X_v, M)` (covariant case) or `Hom(M, X_v)` (contravariant case) at
/// each vertex `v`, as a module over the presented structure algebra.
#[derive(Clone, Debug)]
pub struct FunctorImage {
    pub module: Module,
    pub spaces: Vec<HomSpace>,
}

fn image(s: &StructureAlgebra, p: &BasicPresentation, m: &Module) -> Result<FunctorImage> {
    let f = m.field();
    let t = s.n();
    let mut spaces = Vec::with_capacity(t);
    for x in &s.summands {
        spaces.push(if s.opposite {
            HomSpace::between(m, x)?
        } else {
            HomSpace::between(x, m)?
        });
    }
    let q = &p.algebra.quiver;
    let mut maps = Vec::with_capacity(q.arrows.len());
    for (k, a) in q.arrows.iter().enumerate() {
        let r = &p.arrow_elements[k];
        let (src, dst) = (&spaces[a.source], &spaces[a.target]);
        let cols: Vec<Vec<_>> = src
            .basis
            .iter()
            .map(|g| {
                dst.coords(&if s.opposite {
                    r.compose(g)
                } else {
                    g.compose(r)
                })
            })
            .collect();
        maps.push(Matrix::from_columns(f, dst.dim(), &cols));
    }
    let dims = spaces.iter().map(HomSpace::dim).collect();
    let module = Module::new(p.algebra.clone(), dims, maps)?;
    Ok(FunctorImage { module, spaces })
}

/// `Ψ(M) = Hom(X, M)` over `End(X)`, acting by precomposition.
pub fn apply_psi(s: &StructureAlgebra, p: &BasicPresentation, m: &Module) -> Result<FunctorImage> {
    if s.opposite {
        return Err(Error::Precondition(
            "covariant hom needs End(X), not its opposite".into(),
        ));
    }
    image(s, p, m)
}

/// `Φ(M) = Hom(M, X)` over `End(X)^op`, acting by postcomposition.
pub fn apply_phi(s: &StructureAlgebra, p: &BasicPresentation, m: &Module) -> Result<FunctorImage> {
    if !s.opposite {
        return Err(Error::Precondition(
            "contravariant hom needs End(X)^op".into(),
        ));
    }
    image(s, p, m)
}

/// The image of `g : M -> N`: `Ψ(g) : Ψ(M) -> Ψ(N)` by postcomposition, or
/// `Φ(g) : Φ(N) -> Φ(M)` by precomposition.
pub fn apply_to_map(
    s: &StructureAlgebra,
    g: &ModuleMap,
    fm: &FunctorImage,
    fn_: &FunctorImage,
) -> Result<ModuleMap> {
    let f = g.source().field();
    let (from, to) = if s.opposite { (fn_, fm) } else { (fm, fn_) };
    let comps = (0..s.n())
        .map(|v| {
            let cols: Vec<Vec<_>> = from.spaces[v]
                .basis
                .iter()
                .map(|h| {
                    to.spaces[v].coords(&if s.opposite {
                        h.compose(g)
                    } else {
                        g.compose(h)
                    })
                })
                .collect();
            Matrix::from_columns(f, to.spaces[v].dim(), &cols)
        })
        .collect();
    ModuleMap::new(from.module.clone(), to.module.clone(), comps)
}
