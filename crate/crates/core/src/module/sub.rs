use super::{direct_sum, map_from_projective, projective, Module, ModuleMap};
use crate::exactlin::{to_sparse, Echelon, Field, Matrix, Scalar, SparseVec};

/// Submodule (or quotient) together with its structural map.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: Module,
    pub map: ModuleMap,
}

/// Reduced column basis of a span, with the pivot row of each column.
pub(crate) fn span(f: Field, rows: usize, cols: &[SparseVec]) -> (Matrix, Vec<usize>) {
    let mut e = Echelon::new(f, rows);
    for c in cols {
        if !c.is_empty() {
            e.insert(c);
        }
    }
    (Matrix::from_sparse_columns(f, rows, &e.basis()), e.pivots())
}

fn column_vecs(m: &Matrix) -> Vec<SparseVec> {
    (0..m.cols()).map(|c| m.sparse_col(c)).collect()
}

/// Smallest submodule containing the given per-vertex spans.
fn closure(m: &Module, gens: &[Matrix]) -> Vec<Matrix> {
    let f = m.field();
    let q = &m.algebra().quiver;
    let n = q.n();
    let mut ech: Vec<Echelon> = (0..n).map(|v| Echelon::new(f, m.dims()[v])).collect();
    let mut queue: Vec<(usize, SparseVec)> = Vec::new();
    for (v, g) in gens.iter().enumerate() {
        for c in column_vecs(g) {
            queue.push((v, c));
        }
    }
    while let Some((v, x)) = queue.pop() {
        if x.is_empty() || ech[v].insert(&x).is_none() {
            continue;
        }
        let dense = Matrix::dense_col(&x, m.dims()[v]);
        for (k, a) in q.arrows.iter().enumerate() {
            if a.source == v {
                queue.push((a.target, to_sparse(&m.arrow_map(k).mul_vec(&dense))));
            }
        }
    }
    ech.iter()
        .map(|e| Matrix::from_sparse_columns(f, e.ncols, &e.basis()))
        .collect()
}

/// Submodule spanned by per-vertex column sets, which must already be
/// closed under the arrows.
pub fn submodule(m: &Module, spans: &[Matrix]) -> Sub {
    let f = m.field();
    let n = m.dims().len();
    let mut bases = Vec::with_capacity(n);
    let mut pivots = Vec::with_capacity(n);
    for (v, s) in spans.iter().enumerate() {
        let (b, p) = span(f, m.dims()[v], &column_vecs(s));
        bases.push(b);
        pivots.push(p);
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let maps = m
        .algebra()
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            // coordinates in a reduced basis are the entries at pivot rows
            m.arrow_map(k)
                .mul(&bases[a.source])
                .select_rows(&pivots[a.target])
        })
        .collect();
    let module = Module::raw(m.algebra().clone(), dims, maps);
    let map = ModuleMap::raw(module.clone(), m.clone(), bases);
    Sub { module, map }
}

/// Submodule generated by arbitrary per-vertex column sets.
pub fn submodule_generated(m: &Module, gens: &[Matrix]) -> Sub {
    submodule(m, &closure(m, gens))
}

/// Quotient by a submodule given by closed per-vertex spans.
pub fn quotient(m: &Module, spans: &[Matrix]) -> Sub {
    let f = m.field();
    let n = m.dims().len();
    let mut proj = Vec::with_capacity(n);
    let mut free = Vec::with_capacity(n);
    for (v, s) in spans.iter().enumerate() {
        let d = m.dims()[v];
        let mut e = Echelon::new(f, d);
        for c in column_vecs(s) {
            if !c.is_empty() {
                e.insert(&c);
            }
        }
        let fr: Vec<usize> = (0..d).filter(|c| !e.is_pivot(*c)).collect();
        let mut pos = vec![usize::MAX; d];
        for (i, c) in fr.iter().enumerate() {
            pos[*c] = i;
        }
        let mut q = Matrix::zeros(f, fr.len(), d);
        for k in 0..d {
            for (c, x) in e.reduce(&vec![(k, Scalar::one())]) {
                q.set(pos[c], k, x);
            }
        }
        proj.push(q);
        free.push(fr);
    }
    let dims: Vec<usize> = free.iter().map(|x| x.len()).collect();
    let maps = m
        .algebra()
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| proj[a.target].mul(&m.arrow_map(k).select_cols(&free[a.source])))
        .collect();
    let module = Module::raw(m.algebra().clone(), dims, maps);
    let map = ModuleMap::raw(m.clone(), module.clone(), proj);
    Sub { module, map }
}

pub fn kernel(f: &ModuleMap) -> Sub {
    let spans: Vec<Matrix> = f.comps().iter().map(|c| c.kernel()).collect();
    submodule(f.source(), &spans)
}

pub fn image(f: &ModuleMap) -> Sub {
    submodule(f.target(), f.comps())
}

pub fn cokernel(f: &ModuleMap) -> Sub {
    quotient(f.target(), f.comps())
}

/// Preimage of a submodule under a map, as a submodule of the source.
pub fn preimage(f: &ModuleMap, sub: &ModuleMap) -> Sub {
    let q = quotient(f.target(), sub.comps());
    kernel(&q.map.compose(f))
}

fn radical_spans(m: &Module) -> Vec<Matrix> {
    let f = m.field();
    let q = &m.algebra().quiver;
    (0..q.n())
        .map(|v| {
            let cols: Vec<SparseVec> = q
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .flat_map(|(k, _)| column_vecs(m.arrow_map(k)))
                .collect();
            Matrix::from_sparse_columns(f, m.dims()[v], &cols)
        })
        .collect()
}

/// Radical: the images of all arrows.
pub fn radical(m: &Module) -> Sub {
    submodule(m, &radical_spans(m))
}

pub fn top(m: &Module) -> Sub {
    quotient(m, &radical_spans(m))
}

/// Socle: at each vertex, the joint kernel of the arrows leaving it.
pub fn socle(m: &Module) -> Sub {
    let f = m.field();
    let q = &m.algebra().quiver;
    let spans = (0..q.n())
        .map(|v| {
            let mut stacked = Matrix::zeros(f, 0, m.dims()[v]);
            for (k, a) in q.arrows.iter().enumerate() {
                if a.source == v {
                    stacked = stacked.vstack(m.arrow_map(k));
                }
            }
            stacked.kernel()
        })
        .collect::<Vec<_>>();
    submodule(m, &spans)
}

/// Projective cover `P -> M`; `tops[k]` is the vertex of the k-th summand.
#[derive(Clone, Debug)]
pub struct ProjCover {
    pub module: Module,
    pub map: ModuleMap,
    pub tops: Vec<usize>,
}

pub fn proj_cover(m: &Module) -> ProjCover {
    let a = m.algebra().clone();
    let f = m.field();
    let rad = radical_spans(m);
    let mut parts = Vec::new();
    let mut gens = Vec::new();
    for v in 0..a.n() {
        let d = m.dims()[v];
        let mut e = Echelon::new(f, d);
        for c in column_vecs(&rad[v]) {
            if !c.is_empty() {
                e.insert(&c);
            }
        }
        // standard vectors at free columns complement the radical
        for c in 0..d {
            if !e.is_pivot(c) {
                let mut x = vec![Scalar::zero(); d];
                x[c] = Scalar::one();
                parts.push(v);
                gens.push(x);
            }
        }
    }
    let ps: Vec<Module> = parts.iter().map(|v| projective(&a, *v).unwrap()).collect();
    let sum = direct_sum(&a, &ps.iter().collect::<Vec<_>>());
    let maps: Vec<ModuleMap> = parts
        .iter()
        .zip(&ps)
        .zip(&gens)
        .map(|((v, p), x)| map_from_projective(p, *v, m, x))
        .collect();
    let map = ModuleMap::from_columns(&sum, m, &maps);
    ProjCover {
        module: sum.module,
        map,
        tops: parts,
    }
}

/// Kernel of the projective cover.
pub fn syzygy(m: &Module) -> (ProjCover, Sub) {
    let c = proj_cover(m);
    let k = kernel(&c.map);
    (c, k)
}

/// Minimal presentation `P1 -> P0 -> M`.
pub fn proj_presentation(m: &Module) -> (ProjCover, ProjCover, ModuleMap) {
    let (c0, k) = syzygy(m);
    let c1 = proj_cover(&k.module);
    let d = k.map.compose(&c1.map);
    (c0, c1, d)
}
