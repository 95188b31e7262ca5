use std::collections::BTreeMap;

use super::{same_algebra, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{to_sparse, Echelon, Scalar, SparseVec};

/// Basis of `Hom(M, N)`: the null space of the intertwining equations,
/// with unknowns ordered as in `ModuleMap::to_vec`.
pub fn hom(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let nv = m.dims().len();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + m.dims()[v] * n.dims()[v];
    }
    let unknowns = off[nv];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let idx = |v: usize, r: usize, c: usize| off[v] + r * m.dims()[v] + c;
    let mut eqs = Echelon::new(f, unknowns);
    for (k, a) in m.algebra().quiver.arrows.iter().enumerate() {
        let (u, v) = (a.source, a.target);
        let ma = m.arrow_map(k);
        let na = n.arrow_map(k);
        // (N_a f_u - f_v M_a)[r, c] = 0
        for r in 0..n.dims()[v] {
            for c in 0..m.dims()[u] {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for kk in 0..n.dims()[u] {
                    let x = na.get(r, kk);
                    if !x.is_zero() {
                        let e = acc.entry(idx(u, kk, c)).or_insert_with(Scalar::zero);
                        *e = f.add(e, x);
                    }
                }
                for kk in 0..m.dims()[v] {
                    let x = ma.get(kk, c);
                    if !x.is_zero() {
                        let e = acc.entry(idx(v, r, kk)).or_insert_with(Scalar::zero);
                        *e = f.sub(e, x);
                    }
                }
                let row: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !row.is_empty() {
                    eqs.insert(&row);
                }
            }
        }
    }
    Ok(eqs
        .null_space()
        .iter()
        .map(|x| ModuleMap::from_vec(m, n, &crate::exactlin::to_dense(x, unknowns)))
        .collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom(m, n)?.len())
}

/// Combination of `maps` equal to `target`, as coefficients.
pub(crate) fn combination(maps: &[ModuleMap], target: &ModuleMap) -> Option<Vec<Scalar>> {
    let f = target.source().field();
    let len = target.to_vec().len();
    let mut e = Echelon::tracking(f, len);
    for g in maps {
        e.insert(&to_sparse(&g.to_vec()));
    }
    let c = e.coords(&to_sparse(&target.to_vec()))?;
    Some(crate::exactlin::to_dense(&c, maps.len()))
}

pub(crate) fn linear_combination(
    basis: &[ModuleMap],
    coeffs: &[Scalar],
    source: &Module,
    target: &Module,
) -> ModuleMap {
    let mut acc = ModuleMap::zero(source, target);
    for (g, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&g.scale(c));
        }
    }
    acc
}

/// Some `h : X -> Y` with `g ∘ h = f`, for `g : Y -> Z` and `f : X -> Z`.
pub fn factor_through(g: &ModuleMap, f: &ModuleMap) -> Result<Option<ModuleMap>> {
    let basis = hom(f.source(), g.source())?;
    let images: Vec<ModuleMap> = basis.iter().map(|h| g.compose(h)).collect();
    Ok(combination(&images, f).map(|c| linear_combination(&basis, &c, f.source(), g.source())))
}

/// Some `h : Y -> Z` with `h ∘ g = f`, for `g : X -> Y` and `f : X -> Z`.
pub fn factor_from(g: &ModuleMap, f: &ModuleMap) -> Result<Option<ModuleMap>> {
    let basis = hom(g.target(), f.target())?;
    let images: Vec<ModuleMap> = basis.iter().map(|h| h.compose(g)).collect();
    Ok(combination(&images, f).map(|c| linear_combination(&basis, &c, g.target(), f.target())))
}
