use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::{to_dense, to_sparse, Echelon, Scalar, SparseVec};
use crate::module::{hom, is_isomorphic, Module, ModuleMap};

/// A hom space with a fixed basis and coordinate lookup.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<ModuleMap>,
    coords: Echelon,
}

impl HomSpace {
    pub fn new(basis: Vec<ModuleMap>, source: &Module, target: &Module) -> HomSpace {
        let len: usize = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(a, b)| a * b)
            .sum();
        let mut coords = Echelon::tracking(source.field(), len);
        for b in &basis {
            coords.insert(&to_sparse(&b.to_vec()));
        }
        HomSpace { basis, coords }
    }

    pub fn between(source: &Module, target: &Module) -> Result<HomSpace> {
        Ok(HomSpace::new(hom(source, target)?, source, target))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map lying in the span of the basis.
    pub fn coords(&self, f: &ModuleMap) -> Vec<Scalar> {
        let c = self
            .coords
            .coords(&to_sparse(&f.to_vec()))
            .expect("map lies in the hom space");
        to_dense(&c, self.basis.len())
    }
}

/// `End(X)` for `X = X_1 ⊕ ... ⊕ X_t`, stored blockwise. Without the
/// opposite flag `e_u B e_v = Hom(X_v, X_u)` and `b b' = b ∘ b'`; with it
/// `e_u B e_v = Hom(X_u, X_v)` and `b b' = b' ∘ b`.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    pub summands: Vec<Module>,
    pub opposite: bool,
    blocks: Vec<Vec<HomSpace>>,
}

pub fn end_algebra(summands: &[Module], opposite: bool) -> Result<StructureAlgebra> {
    if summands.is_empty() {
        return Err(Error::Input("no summands".into()));
    }
    let t = summands.len();
    let mut blocks = Vec::with_capacity(t);
    for u in 0..t {
        let mut row = Vec::with_capacity(t);
        for v in 0..t {
            let (s, d) = if opposite {
                (&summands[u], &summands[v])
            } else {
                (&summands[v], &summands[u])
            };
            row.push(HomSpace::between(s, d)?);
        }
        blocks.push(row);
    }
    Ok(StructureAlgebra {
        summands: summands.to_vec(),
        opposite,
        blocks,
    })
}

impl StructureAlgebra {
    pub fn n(&self) -> usize {
        self.summands.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().flatten().map(HomSpace::dim).sum()
    }

    pub fn block(&self, u: usize, v: usize) -> &HomSpace {
        &self.blocks[u][v]
    }

    /// `c[u][v] = dim e_u B e_v`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|r| r.iter().map(HomSpace::dim).collect())
            .collect()
    }

    /// Product of `b ∈ e_u B e_w` and `c ∈ e_w B e_v`.
    pub fn mul(&self, b: &ModuleMap, c: &ModuleMap) -> ModuleMap {
        if self.opposite {
            c.compose(b)
        } else {
            b.compose(c)
        }
    }

    pub fn idempotent(&self, u: usize) -> ModuleMap {
        self.summands[u].identity()
    }

    /// Basis of the radical in each block: everything off the diagonal and
    /// the non-invertible part of each local endomorphism ring, which must
    /// have the ground field as residue field.
    pub fn radical(&self) -> Result<Vec<Vec<Vec<ModuleMap>>>> {
        let t = self.n();
        for u in 0..t {
            for v in 0..u {
                if is_isomorphic(&self.summands[u], &self.summands[v])? {
                    return Err(Error::Precondition(format!(
                        "summands {} and {} are isomorphic",
                        v + 1,
                        u + 1
                    )));
                }
            }
        }
        let mut out = Vec::with_capacity(t);
        for u in 0..t {
            let mut row = Vec::with_capacity(t);
            for v in 0..t {
                if u != v {
                    row.push(self.blocks[u][v].basis.clone());
                } else {
                    row.push(local_radical(&self.summands[u], &self.blocks[u][u])?);
                }
            }
            out.push(row);
        }
        Ok(out)
    }
}

fn trace(f: &ModuleMap) -> Scalar {
    let fl = f.source().field();
    let mut acc = fl.zero();
    for c in f.comps() {
        for i in 0..c.rows() {
            acc = fl.add(&acc, c.get(i, i));
        }
    }
    acc
}

pub(crate) fn local_radical(x: &Module, end: &HomSpace) -> Result<Vec<ModuleMap>> {
    let f = x.field();
    let d = x.dim() as u64;
    if f.characteristic() != 0 && f.characteristic() <= d {
        return Err(Error::Precondition(
            "characteristic too small to split endomorphism rings".into(),
        ));
    }
    let id = x.identity();
    let dim = f.from_i64(d as i64);
    let mut span = Echelon::new(f, id.to_vec().len());
    let mut out = Vec::new();
    for b in &end.basis {
        let lambda = f.div(&trace(b), &dim);
        let r = b.sub(&id.scale(&lambda));
        let mut p = r.clone();
        for _ in 0..d {
            p = p.compose(&r);
        }
        if !p.is_zero() {
            return Err(Error::Precondition(
                "endomorphism ring is not local with split residue field".into(),
            ));
        }
        if span.insert(&to_sparse(&r.to_vec())).is_some() {
            out.push(r);
        }
    }
    if out.len() + 1 != end.dim() {
        return Err(Error::Precondition(
            "endomorphism ring is not local with split residue field".into(),
        ));
    }
    Ok(out)
}

/// A quiver with relations presenting a structure algebra, with the
/// element of the structure algebra chosen for each arrow.
#[derive(Clone, Debug)]
pub struct BasicPresentation {
    pub algebra: Arc<Algebra>,
    pub arrow_elements: Vec<ModuleMap>,
    pub length_bound: usize,
    /// The presented algebra has the dimension of the structure algebra.
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationSummary {
    pub vertices: usize,
    pub dim: usize,
    pub arrow_counts: Vec<Vec<usize>>,
    pub relations: Vec<String>,
    pub complete: bool,
}

impl BasicPresentation {
    pub fn summary(&self) -> PresentationSummary {
        let a = &self.algebra;
        PresentationSummary {
            vertices: a.n(),
            dim: a.dim(),
            arrow_counts: a.arrow_counts(),
            relations: a
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| format!("{}*{}", c, a.quiver.path_text(p)))
                        .collect::<Vec<_>>()
                        .join(" + ")
                })
                .collect(),
            complete: self.complete,
        }
    }
}

/// Loewy length of the structure algebra: least `L` with `rad^L = 0`.
fn loewy_length(s: &StructureAlgebra, rad: &[Vec<Vec<ModuleMap>>]) -> usize {
    let t = s.n();
    let mut power: Vec<Vec<Vec<ModuleMap>>> = (0..t)
        .map(|u| {
            (0..t)
                .map(|v| {
                    if u == v {
                        vec![s.idempotent(u)]
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    let mut len = 0;
    while power.iter().flatten().any(|b| !b.is_empty()) {
        len += 1;
        let mut next = vec![vec![Vec::new(); t]; t];
        for u in 0..t {
            for v in 0..t {
                let mut ech = Echelon::new(s.summands[0].field(), s.block(u, v).dim().max(1));
                for w in 0..t {
                    for x in &power[u][w] {
                        for y in &rad[w][v] {
                            let z = s.mul(x, y);
                            if ech.insert(&to_sparse(&s.block(u, v).coords(&z))).is_some() {
                                next[u][v].push(z);
                            }
                        }
                    }
                }
            }
        }
        power = next;
    }
    len
}

fn paths_upto(q: &Quiver, n: usize, bound: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..n).map(Path::trivial).collect();
    let mut out = Vec::new();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &layer {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Arrows from a complement of `rad²` in `rad`, blockwise; relations from
/// the kernel of evaluating paths of length `2..=bound`, kept greedily when
/// not already implied by earlier ones. `bound` defaults to the Loewy
/// length plus one.
pub fn basic_presentation(
    s: &StructureAlgebra,
    length_bound: Option<usize>,
) -> Result<BasicPresentation> {
    let t = s.n();
    let f = s.summands[0].field();
    let rad = s.radical()?;
    let mut quiver = Quiver::new((1..=t).map(|i| i.to_string()).collect());
    let mut arrow_elements = Vec::new();
    for u in 0..t {
        for v in 0..t {
            let blk = s.block(u, v);
            let mut ech = Echelon::new(f, blk.dim().max(1));
            for w in 0..t {
                for x in &rad[u][w] {
                    for y in &rad[w][v] {
                        ech.insert(&to_sparse(&blk.coords(&s.mul(x, y))));
                    }
                }
            }
            for r in &rad[u][v] {
                if ech.insert(&to_sparse(&blk.coords(r))).is_some() {
                    quiver.add_arrow(&format!("r{}", arrow_elements.len() + 1), u, v);
                    arrow_elements.push(r.clone());
                }
            }
        }
    }
    let bound = length_bound
        .unwrap_or_else(|| loewy_length(s, &rad) + 1)
        .max(2);
    let paths = paths_upto(&quiver, t, bound);
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let values: Vec<ModuleMap> = {
        let mut vals: Vec<ModuleMap> = Vec::with_capacity(paths.len());
        for p in &paths {
            let v = if p.len() == 1 {
                arrow_elements[p.arrows[0]].clone()
            } else {
                let mut head = p.clone();
                let last = head.arrows.pop().expect("nonempty path");
                head.target = quiver.arrows[last].source;
                s.mul(&vals[index[&head]], &arrow_elements[last])
            };
            vals.push(v);
        }
        vals
    };
    let mut implied = Echelon::new(f, paths.len());
    let mut relations: Vec<Relation> = Vec::new();
    for len in 2..=bound {
        for u in 0..t {
            for v in 0..t {
                let cols: Vec<usize> = (0..paths.len())
                    .filter(|i| {
                        paths[*i].source == u
                            && paths[*i].target == v
                            && (2..=len).contains(&paths[*i].len())
                    })
                    .collect();
                if cols.is_empty() {
                    continue;
                }
                let blk = s.block(u, v);
                let mut rows = vec![SparseVec::new(); blk.dim()];
                for (k, c) in cols.iter().enumerate() {
                    for (r, x) in blk.coords(&values[*c]).into_iter().enumerate() {
                        if !x.is_zero() {
                            rows[r].push((k, x));
                        }
                    }
                }
                let mut ev = Echelon::new(f, cols.len());
                for r in &rows {
                    ev.insert(r);
                }
                for ker in ev.null_space() {
                    let vec: SparseVec = ker.iter().map(|(k, x)| (cols[*k], x.clone())).collect();
                    let mut vec = vec;
                    vec.sort_by_key(|e| e.0);
                    if implied.contains(&vec) {
                        continue;
                    }
                    let rel = Relation {
                        terms: vec
                            .iter()
                            .map(|(i, x)| (x.clone(), paths[*i].clone()))
                            .collect(),
                    };
                    add_multiples(&mut implied, &rel, &paths, &index, bound);
                    relations.push(rel);
                }
            }
        }
    }
    let algebra = Algebra::new(f, quiver, relations)?;
    let complete = algebra.dim() == s.dim();
    Ok(BasicPresentation {
        algebra,
        arrow_elements,
        length_bound: bound,
        complete,
    })
}

/// Adds `p ρ q` for all paths `p`, `q` (trivial ones included), dropping
/// terms beyond the length bound.
fn add_multiples(
    implied: &mut Echelon,
    rel: &Relation,
    paths: &[Path],
    index: &HashMap<&Path, usize>,
    bound: usize,
) {
    let (u, v) = (rel.source(), rel.target());
    let min = rel.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
    let left: Vec<Path> = std::iter::once(Path::trivial(u))
        .chain(paths.iter().filter(|p| p.target == u).cloned())
        .collect();
    let right: Vec<Path> = std::iter::once(Path::trivial(v))
        .chain(paths.iter().filter(|p| p.source == v).cloned())
        .collect();
    for p in &left {
        for q in &right {
            if p.len() + min + q.len() > bound {
                continue;
            }
            let mut vec: SparseVec = Vec::new();
            for (c, r) in &rel.terms {
                let Some(w) = p.concat(r).and_then(|x| x.concat(q)) else {
                    continue;
                };
                if let Some(i) = index.get(&w) {
                    vec.push((*i, c.clone()));
                }
            }
            vec.sort_by_key(|e| e.0);
            if !vec.is_empty() {
                implied.insert(&vec);
            }
        }
    }
}
