//! First and higher extension groups, conflations (short exact sequences),
//! and universal extensions.

mod conflation;
mod universal;

pub(crate) use conflation::restrict_into;
pub use conflation::{classify, is_split, pullback, pushout, realize, Conflation};
pub(crate) use universal::universal_extension_in;
pub use universal::{dn_basis, universal_coextension, universal_extension, UniversalExtension};

use crate::error::Result;
use crate::exactlin::{to_dense, to_sparse, Echelon, Scalar};
use crate::module::{
    decompose, hom, is_indecomposable, is_isomorphic, syzygy, Module, ModuleMap, ProjCover, Sub,
};

/// `Ext^1(M, N)` as `Hom(ΩM, N)` modulo restrictions of `Hom(P_0, N)`.
/// Classes are represented by maps `ΩM -> N` reduced to a canonical form.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub source: Module,
    pub target: Module,
    pub cover: ProjCover,
    pub syzygy: Sub,
    restrictions: Echelon,
    quotient: Echelon,
    basis: Vec<ModuleMap>,
}

pub fn ext1(m: &Module, n: &Module) -> Result<ExtSpace> {
    let (cover, syz) = syzygy(m);
    ext1_with(m, n, cover, syz)
}

pub(crate) fn ext1_with(m: &Module, n: &Module, cover: ProjCover, syz: Sub) -> Result<ExtSpace> {
    let f = m.field();
    let omega = &syz.module;
    let len: usize = (0..omega.dims().len())
        .map(|v| omega.dims()[v] * n.dims()[v])
        .sum();
    let mut restrictions = Echelon::new(f, len);
    let mut quotient = Echelon::new(f, len);
    let mut basis = Vec::new();
    if len > 0 {
        for h in hom(&cover.module, n)? {
            let r = h.compose(&syz.map);
            restrictions.insert(&to_sparse(&r.to_vec()));
        }
        for g in hom(omega, n)? {
            let r = restrictions.reduce(&to_sparse(&g.to_vec()));
            if !r.is_empty() {
                quotient.insert(&r);
            }
        }
        for row in quotient.basis() {
            basis.push(ModuleMap::from_vec(omega, n, &to_dense(&row, len)));
        }
    }
    Ok(ExtSpace {
        source: m.clone(),
        target: n.clone(),
        cover,
        syzygy: syz,
        restrictions,
        quotient,
        basis,
    })
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleMap] {
        &self.basis
    }

    /// Canonical representative of the class of `r : ΩM -> N`.
    pub fn canonical(&self, r: &ModuleMap) -> ModuleMap {
        let len = self.restrictions.ncols;
        let red = self.restrictions.reduce(&to_sparse(&r.to_vec()));
        ModuleMap::from_vec(&self.syzygy.module, &self.target, &to_dense(&red, len))
    }

    /// Coordinates of a class in the canonical basis.
    pub fn coords(&self, r: &ModuleMap) -> Vec<Scalar> {
        let red = self.restrictions.reduce(&to_sparse(&r.to_vec()));
        let dense = to_dense(&red, self.restrictions.ncols);
        self.quotient
            .pivots()
            .iter()
            .map(|p| dense[*p].clone())
            .collect()
    }

    pub fn is_zero(&self, r: &ModuleMap) -> bool {
        self.restrictions.contains(&to_sparse(&r.to_vec()))
    }

    /// Representative with the given coordinates.
    pub fn class(&self, coeffs: &[Scalar]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.syzygy.module, &self.target);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Result that may be cut off by a degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bounded<T> {
    Known(T),
    BeyondCap(usize),
}

/// Syzygies `M, ΩM, Ω²M, ...` of a minimal projective resolution, computed
/// up to `cap` steps. `length` is the projective dimension when reached.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub syzygies: Vec<Module>,
    pub length: Option<usize>,
}

pub fn proj_resolution(m: &Module, cap: usize) -> Resolution {
    let mut syzygies = vec![m.clone()];
    if m.is_zero() {
        return Resolution {
            syzygies,
            length: Some(0),
        };
    }
    for k in 0..cap {
        let (_, s) = syzygy(&syzygies[k]);
        if s.module.is_zero() {
            return Resolution {
                syzygies,
                length: Some(k),
            };
        }
        syzygies.push(s.module);
    }
    Resolution {
        syzygies,
        length: None,
    }
}

/// Default cap on homological degrees: twice the Loewy length times the
/// number of simples.
pub fn default_degree_cap(m: &Module) -> usize {
    2 * m.algebra().loewy_length().max(1) * m.algebra().n()
}

/// Iterates a map on modules that commutes with direct sums, tracking each
/// term as a multiset of indecomposable isomorphism classes so repeated
/// summands are handled once.
#[derive(Clone, Debug)]
pub struct ClassSequence {
    pub classes: Vec<Module>,
    /// Per step `k`: `(class, multiplicity)` making up the `k`-th term.
    pub degrees: Vec<Vec<(usize, usize)>>,
    /// Last step with a nonzero term, when a zero term is reached within the cap.
    pub length: Option<usize>,
}

/// Syzygies `Ω^k M` as class multisets; `length` is the projective dimension.
pub type ClassResolution = ClassSequence;

impl ClassSequence {
    fn intern(&mut self, m: Module) -> Result<usize> {
        for (k, c) in self.classes.iter().enumerate() {
            if c.dims() == m.dims() && is_isomorphic(c, &m)? {
                return Ok(k);
            }
        }
        self.classes.push(m);
        Ok(self.classes.len() - 1)
    }

    fn split(&mut self, m: &Module) -> Result<Vec<(usize, usize)>> {
        if m.is_zero() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (c, k) in decompose(m)?.summands {
            out.push((self.intern(c)?, k));
        }
        Ok(out)
    }

    pub fn dims(&self, k: usize) -> Vec<usize> {
        let n = self.classes.first().map_or(0, |c| c.dims().len());
        let mut out = vec![0; n];
        for (c, m) in &self.degrees[k] {
            for (o, d) in out.iter_mut().zip(self.classes[*c].dims()) {
                *o += m * d;
            }
        }
        out
    }
}

/// Applies `step` up to `cap` times, starting from `m`; `step` sees only
/// indecomposable modules, once per isomorphism class.
pub fn class_sequence(
    m: &Module,
    cap: usize,
    mut step: impl FnMut(&Module) -> Result<Module>,
) -> Result<ClassSequence> {
    let mut r = ClassSequence {
        classes: Vec::new(),
        degrees: Vec::new(),
        length: None,
    };
    let first = r.split(m)?;
    r.degrees.push(first);
    let mut next: Vec<Option<Vec<(usize, usize)>>> = Vec::new();
    for k in 0..=cap {
        if r.degrees[k].is_empty() {
            r.length = Some(k.saturating_sub(1));
            if k > 0 {
                r.degrees.pop();
            }
            return Ok(r);
        }
        if k == cap {
            break;
        }
        let mut acc: Vec<(usize, usize)> = Vec::new();
        for (c, mult) in r.degrees[k].clone() {
            next.resize(r.classes.len(), None);
            if next[c].is_none() {
                let x = step(&r.classes[c])?;
                let parts = r.split(&x)?;
                next.resize(r.classes.len(), None);
                next[c] = Some(parts);
            }
            for (d, e) in next[c].clone().expect("just filled") {
                match acc.iter_mut().find(|x| x.0 == d) {
                    Some(x) => x.1 += mult * e,
                    None => acc.push((d, mult * e)),
                }
            }
        }
        r.degrees.push(acc);
    }
    Ok(r)
}

pub fn class_resolution(m: &Module, cap: usize) -> Result<ClassResolution> {
    class_sequence(m, cap, |x| Ok(syzygy(x).1.module))
}

/// `dim Ext^i(M, N)` for `i = 1..=cap`, additively over the summands of
/// each syzygy.
pub fn ext_profile(m: &Module, n: &Module, cap: usize) -> Result<Vec<usize>> {
    let r = class_resolution(m, cap.saturating_sub(1))?;
    let mut cache: Vec<Option<usize>> = vec![None; r.classes.len()];
    let mut out = Vec::with_capacity(cap);
    for i in 1..=cap {
        let mut total = 0;
        if let Some(deg) = r.degrees.get(i - 1) {
            for (c, mult) in deg {
                if cache[*c].is_none() {
                    cache[*c] = Some(ext1(&r.classes[*c], n)?.dim());
                }
                total += mult * cache[*c].expect("just filled");
            }
        }
        out.push(total);
    }
    Ok(out)
}

/// `dim Ext^i(M, N)` by dimension shifting; `BeyondCap` when `i > cap`.
pub fn ext_dim(m: &Module, n: &Module, i: usize, cap: usize) -> Result<Bounded<usize>> {
    assert!(i >= 1, "extension degree starts at 1");
    if i > cap {
        return Ok(Bounded::BeyondCap(cap));
    }
    Ok(Bounded::Known(ext_profile(m, n, i)?[i - 1]))
}

/// Stone: indecomposable without self-extensions.
pub fn is_stone(m: &Module) -> Result<bool> {
    Ok(!m.is_zero() && ext1(m, m)?.dim() == 0 && is_indecomposable(m)?)
}

#[cfg(test)]
mod tests;
