//! Right modules as quiver representations, module maps, and the structure
//! built on them: Hom spaces, submodules and quotients, decomposition,
//! minimal morphisms and projective covers.

mod decompose;
mod hom;
mod minimal;
mod sub;

pub use decompose::{
    decompose, indecomposable_summands, is_brick, is_indecomposable, is_isomorphic, Decomposition,
    Summand,
};
pub use hom::{factor_from, factor_through, hom, hom_dim};
pub use minimal::{left_minimal, right_minimal, LeftMinimal, RightMinimal};
pub use sub::{
    cokernel, image, kernel, preimage, proj_cover, proj_presentation, quotient, radical, socle,
    submodule, submodule_generated, syzygy, top, ProjCover, Sub,
};

use std::sync::Arc;

use crate::algebra::{Algebra, ModuleLiteral, Path};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};

/// Finite-dimensional right module: one vector space per vertex and one
/// matrix per arrow, from the source space to the target space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a.canonical_text() == b.canonical_text()
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Module> {
        let q = &algebra.quiver;
        if dims.len() != q.n() {
            return Err(Error::Shape(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                q.n()
            )));
        }
        if maps.len() != q.arrows.len() {
            return Err(Error::Shape(format!(
                "{} arrow matrices for {} arrows",
                maps.len(),
                q.arrows.len()
            )));
        }
        for (k, a) in q.arrows.iter().enumerate() {
            if maps[k].shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Shape(format!(
                    "arrow {} has shape {:?}",
                    a.name,
                    maps[k].shape()
                )));
            }
            if maps[k].field != algebra.field {
                return Err(Error::Input(format!(
                    "arrow {} over the wrong field",
                    a.name
                )));
            }
        }
        let m = Module {
            algebra,
            dims,
            maps,
        };
        let f = m.field();
        for r in &m.algebra.relations {
            let mut acc = Matrix::zeros(f, m.dims[r.target()], m.dims[r.source()]);
            for (c, p) in &r.terms {
                acc = acc.add(&m.path_action(p).scale(c));
            }
            if !acc.is_zero() {
                let text: Vec<String> = r
                    .terms
                    .iter()
                    .map(|(_, p)| m.algebra.quiver.path_text(p))
                    .collect();
                return Err(Error::Input(format!(
                    "relation {} does not act by zero",
                    text.join(" + ")
                )));
            }
        }
        Ok(m)
    }

    pub(crate) fn raw(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Module {
        Module {
            algebra,
            dims,
            maps,
        }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let f = algebra.field;
        let maps = algebra
            .quiver
            .arrows
            .iter()
            .map(|_| Matrix::zeros(f, 0, 0))
            .collect();
        Module {
            algebra: algebra.clone(),
            dims: vec![0; algebra.n()],
            maps,
        }
    }

    pub fn from_literal(algebra: &Arc<Algebra>, lit: &ModuleLiteral) -> Result<Module> {
        let f = algebra.field;
        let q = &algebra.quiver;
        if lit.dims.len() != q.n() {
            return Err(Error::Shape(format!(
                "module {} has {} dimensions",
                lit.name,
                lit.dims.len()
            )));
        }
        let mut maps: Vec<Matrix> = q
            .arrows
            .iter()
            .map(|a| Matrix::zeros(f, lit.dims[a.target], lit.dims[a.source]))
            .collect();
        for (name, rows) in &lit.maps {
            let k = q.arrow_index(name).ok_or_else(|| {
                Error::Input(format!("module {}: unknown arrow {name}", lit.name))
            })?;
            let a = &q.arrows[k];
            let (r, c) = (lit.dims[a.target], lit.dims[a.source]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Shape(format!(
                    "module {}: arrow {name} needs a {r}x{c} matrix",
                    lit.name
                )));
            }
            let mut data = Vec::with_capacity(r * c);
            for x in rows.iter().flatten() {
                data.push(f.from_big(&x.to_big())?);
            }
            maps[k] = Matrix::from_vec(f, r, c, data);
        }
        Module::new(algebra.clone(), lit.dims.clone(), maps)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow_map(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix by which a path acts, from its source space to its target space.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let f = self.field();
        let mut m = Matrix::identity(f, self.dims[p.source]);
        for a in &p.arrows {
            m = self.maps[*a].mul(&m);
        }
        m
    }

    /// Applies a path to a vector of the source vertex space.
    pub fn apply_path(&self, p: &Path, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = x.to_vec();
        for a in &p.arrows {
            v = self.maps[*a].mul_vec(&v);
        }
        v
    }

    /// Offsets of the vertex spaces inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Vector-space dual, a module over the opposite algebra.
    pub fn dual(&self) -> Module {
        let op = self.algebra.opposite();
        Module {
            algebra: op,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(|m| m.transpose()).collect(),
        }
    }

    pub fn identity(&self) -> ModuleMap {
        let f = self.field();
        ModuleMap {
            source: self.clone(),
            target: self.clone(),
            comps: self.dims.iter().map(|d| Matrix::identity(f, *d)).collect(),
        }
    }
}

fn check_index(a: &Algebra, i: usize) -> Result<()> {
    if i >= a.n() {
        return Err(Error::Index(i));
    }
    Ok(())
}

/// Indecomposable projective `e_i A` on its path basis, `i` zero-based.
pub fn projective(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    check_index(a, i)?;
    let f = a.field;
    let n = a.n();
    let members: Vec<usize> = (0..a.dim()).filter(|b| a.basis()[*b].source == i).collect();
    let mut dims = vec![0; n];
    let mut pos = vec![usize::MAX; a.dim()];
    for b in &members {
        let t = a.basis()[*b].target;
        pos[*b] = dims[t];
        dims[t] += 1;
    }
    let mut maps = Vec::with_capacity(a.quiver.arrows.len());
    for (k, arr) in a.quiver.arrows.iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
        let ab = a
            .basis_index(&Path {
                source: arr.source,
                target: arr.target,
                arrows: vec![k],
            })
            .expect("arrows are basis paths");
        for b in &members {
            if a.basis()[*b].target != arr.source {
                continue;
            }
            for (c, x) in a.mul_basis(*b, ab) {
                m.set(pos[*c], pos[*b], x.clone());
            }
        }
        maps.push(m);
    }
    Ok(Module::raw(a.clone(), dims, maps))
}

pub fn simple(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    check_index(a, i)?;
    let f = a.field;
    let mut dims = vec![0; a.n()];
    dims[i] = 1;
    let maps = a
        .quiver
        .arrows
        .iter()
        .map(|arr| Matrix::zeros(f, dims[arr.target], dims[arr.source]))
        .collect();
    Ok(Module::raw(a.clone(), dims, maps))
}

/// Indecomposable injective `D(A e_i)`, the dual of a projective of the
/// opposite algebra.
pub fn injective(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    let p = projective(&a.opposite(), i)?;
    Ok(rebase(a, p.dual()))
}

/// The regular module `A_A = e_1A + ... + e_nA`.
pub fn regular(a: &Arc<Algebra>) -> Module {
    let ps: Vec<Module> = (0..a.n()).map(|i| projective(a, i).unwrap()).collect();
    direct_sum(a, &ps.iter().collect::<Vec<_>>()).module
}

/// Re-attaches a module to an equal algebra handle.
pub(crate) fn rebase(a: &Arc<Algebra>, m: Module) -> Module {
    debug_assert!(same_algebra(a, &m.algebra));
    Module {
        algebra: a.clone(),
        ..m
    }
}

/// Direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(a: &Arc<Algebra>, parts: &[&Module]) -> DirectSum {
    let f = a.field;
    let n = a.n();
    let mut dims = vec![0; n];
    for p in parts {
        for v in 0..n {
            dims[v] += p.dims[v];
        }
    }
    let mut maps = Vec::with_capacity(a.quiver.arrows.len());
    for (k, arr) in a.quiver.arrows.iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            m.paste(r, c, &p.maps[k]);
            r += p.dims[arr.target];
            c += p.dims[arr.source];
        }
        maps.push(m);
    }
    let module = Module::raw(a.clone(), dims.clone(), maps);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = vec![0; n];
    for p in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Matrix::zeros(f, dims[v], p.dims[v]);
            i.paste(off[v], 0, &Matrix::identity(f, p.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            off[v] += p.dims[v];
        }
        let p = rebase(a, (*p).clone());
        injections.push(ModuleMap::raw(p.clone(), module.clone(), inj));
        projections.push(ModuleMap::raw(module.clone(), p, proj));
    }
    DirectSum {
        module,
        injections,
        projections,
    }
}

/// `n` copies of a module.
pub fn power(m: &Module, n: usize) -> DirectSum {
    let parts: Vec<&Module> = std::iter::repeat_n(m, n).collect();
    direct_sum(m.algebra(), &parts)
}

/// Module homomorphism, given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    comps: Vec<Matrix>,
}

impl ModuleMap {
    /// Checks shapes and that the components intertwine every arrow.
    pub fn new(source: Module, target: Module, comps: Vec<Matrix>) -> Result<ModuleMap> {
        if !same_algebra(&source.algebra, &target.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if comps.len() != source.dims.len() {
            return Err(Error::Shape(format!(
                "{} components for {} vertices",
                comps.len(),
                source.dims.len()
            )));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::Shape(format!(
                    "component {v} has shape {:?}",
                    c.shape()
                )));
            }
        }
        for (k, arr) in source.algebra.quiver.arrows.iter().enumerate() {
            if target.maps[k].mul(&comps[arr.source]) != comps[arr.target].mul(&source.maps[k]) {
                return Err(Error::NotAMap(format!(
                    "fails to commute with arrow {}",
                    arr.name
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            comps,
        })
    }

    pub(crate) fn raw(source: Module, target: Module, comps: Vec<Matrix>) -> ModuleMap {
        debug_assert!(comps
            .iter()
            .enumerate()
            .all(|(v, c)| c.shape() == (target.dims[v], source.dims[v])));
        ModuleMap {
            source,
            target,
            comps,
        }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let f = source.field();
        let comps = (0..source.dims.len())
            .map(|v| Matrix::zeros(f, target.dims[v], source.dims[v]))
            .collect();
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModuleMap) -> ModuleMap {
        assert_eq!(
            g.target.dims, self.source.dims,
            "composing incompatible maps"
        );
        let comps = self
            .comps
            .iter()
            .zip(&g.comps)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModuleMap {
            source: g.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn sub(&self, o: &ModuleMap) -> ModuleMap {
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.sub(b))
            .collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        let comps = self.comps.iter().map(|a| a.scale(c)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let comps: Option<Vec<Matrix>> = self.comps.iter().map(|c| c.inverse()).collect();
        Some(ModuleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            comps: comps?,
        })
    }

    /// Transposed map between the dual modules.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap {
            source: self.target.dual(),
            target: self.source.dual(),
            comps: self.comps.iter().map(|c| c.transpose()).collect(),
        }
    }

    /// Same components with relabelled endpoints of equal shape.
    pub(crate) fn with_ends(&self, source: &Module, target: &Module) -> ModuleMap {
        debug_assert_eq!(source.dims, self.source.dims);
        debug_assert_eq!(target.dims, self.target.dims);
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            comps: self.comps.clone(),
        }
    }

    /// Entries of all components, vertex by vertex in row-major order.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.comps
            .iter()
            .flat_map(|c| c.entries().iter().cloned())
            .collect()
    }

    pub(crate) fn from_vec(source: &Module, target: &Module, x: &[Scalar]) -> ModuleMap {
        let f = source.field();
        let mut off = 0;
        let mut comps = Vec::with_capacity(source.dims.len());
        for v in 0..source.dims.len() {
            let (r, c) = (target.dims[v], source.dims[v]);
            comps.push(Matrix::from_vec(f, r, c, x[off..off + r * c].to_vec()));
            off += r * c;
        }
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    /// Map out of a direct sum, given on each summand.
    pub fn from_columns(sum: &DirectSum, target: &Module, parts: &[ModuleMap]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&sum.module, target);
        for (p, pr) in parts.iter().zip(&sum.projections) {
            acc = acc.add(&p.compose(pr));
        }
        acc
    }

    /// Map into a direct sum, given on each summand.
    pub fn from_rows(source: &Module, sum: &DirectSum, parts: &[ModuleMap]) -> ModuleMap {
        let mut acc = ModuleMap::zero(source, &sum.module);
        for (p, inj) in parts.iter().zip(&sum.injections) {
            acc = acc.add(&inj.compose(p));
        }
        acc
    }
}

/// Map `e_v A -> M` sending `e_v` to `x`, an element of `M e_v`.
pub fn map_from_projective(p: &Module, v: usize, m: &Module, x: &[Scalar]) -> ModuleMap {
    let a = m.algebra().clone();
    let f = a.field;
    let n = a.n();
    let mut cols: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n];
    for b in a.basis().iter().filter(|b| b.source == v) {
        cols[b.target].push(m.apply_path(b, x));
    }
    let comps = (0..n)
        .map(|w| Matrix::from_columns(f, m.dims[w], &cols[w]))
        .collect();
    ModuleMap::raw(p.clone(), m.clone(), comps)
}
