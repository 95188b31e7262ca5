use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::hom;
use super::sub::{image, kernel, socle, top};
use super::{direct_sum, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{
    minimal_polynomial, rational_roots, to_dense, to_sparse, Echelon, Field, Matrix, Scalar,
};

/// An indecomposable direct summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// `M ≅ ⊕ summands`, each representative repeated by its multiplicity, in
/// order; `iso` goes from `M` to that sum and `inverse` back.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<(Module, usize)>,
    pub iso: ModuleMap,
    pub inverse: ModuleMap,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.summands.iter().map(|(_, k)| k).sum()
    }
}

fn block_matrix(x: &ModuleMap) -> Matrix {
    let f = x.source().field();
    let mut m = Matrix::zeros(f, 0, 0);
    for c in x.comps() {
        m = m.block_diag(c);
    }
    m
}

fn power(x: &ModuleMap, e: usize) -> ModuleMap {
    let mut acc = x.source().identity();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.compose(&base);
        }
        base = base.compose(&base);
        e >>= 1;
    }
    acc
}

fn is_nilpotent(x: &ModuleMap) -> bool {
    power(x, x.source().dim()).is_zero()
}

fn is_invertible(x: &ModuleMap) -> bool {
    x.rank() == x.source().dim()
}

/// Trace form `tr(x y)` summed over vertices.
fn trace_product(x: &ModuleMap, y: &ModuleMap) -> Scalar {
    let f = x.source().field();
    let mut acc = Scalar::zero();
    for (a, b) in x.comps().iter().zip(y.comps()) {
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let p = a.get(r, c);
                if !p.is_zero() {
                    acc = f.add(&acc, &f.mul(p, b.get(c, r)));
                }
            }
        }
    }
    acc
}

/// Dimension of the Jacobson radical of the endomorphism algebra spanned by
/// `basis`, via the kernel of the trace form.
fn radical_basis(m: &Module, basis: &[ModuleMap]) -> Result<Vec<Vec<Scalar>>> {
    let f = m.field();
    if let Field::Prime(p) = f {
        if p as usize <= m.dim() {
            return Err(Error::Decomposition(format!(
                "characteristic {p} not larger than dimension {}",
                m.dim()
            )));
        }
    }
    let k = basis.len();
    let mut g = Matrix::zeros(f, k, k);
    for i in 0..k {
        for j in i..k {
            let t = trace_product(&basis[i], &basis[j]);
            g.set(i, j, t.clone());
            g.set(j, i, t);
        }
    }
    Ok(g.kernel().columns())
}

enum Split {
    Parts(ModuleMap),
    Local,
}

/// Looks for an endomorphism that is neither nilpotent nor invertible; its
/// Fitting decomposition splits `M`.
fn find_split(m: &Module, basis: &[ModuleMap]) -> Result<Split> {
    let f = m.field();
    let d = m.dim();
    let try_one = |x: &ModuleMap| -> Option<ModuleMap> {
        if !is_invertible(x) && !is_nilpotent(x) {
            return Some(x.clone());
        }
        let mp = minimal_polynomial(&block_matrix(x));
        for lambda in rational_roots(f, &mp) {
            let y = x.sub(&m.identity().scale(&lambda));
            if !is_nilpotent(&y) {
                return Some(y);
            }
        }
        None
    };
    for x in basis {
        if let Some(y) = try_one(x) {
            return Ok(Split::Parts(y));
        }
    }
    let rad = radical_basis(m, basis)?;
    let quotient_dim = basis.len() - rad.len();
    if quotient_dim == 1 {
        return Ok(Split::Local);
    }
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if let Some(y) = try_one(&basis[i].compose(&basis[j])) {
                return Ok(Split::Parts(y));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ d as u64);
    for _ in 0..24 {
        let mut x = super::ModuleMap::zero(m, m);
        for b in basis {
            x = x.add(&b.scale(&f.from_i64(rng.gen_range(-4..=4))));
        }
        if let Some(y) = try_one(&x) {
            return Ok(Split::Parts(y));
        }
    }
    if semisimple_quotient_is_field(m, basis, &rad)? {
        return Ok(Split::Local);
    }
    Err(Error::Decomposition(format!(
        "no splitting endomorphism found for a module of dimension {d}"
    )))
}

/// Certifies that `End(M)/J` is a field `k[x]` of degree at most three.
fn semisimple_quotient_is_field(
    m: &Module,
    basis: &[ModuleMap],
    rad: &[Vec<Scalar>],
) -> Result<bool> {
    let f = m.field();
    let k = basis.len();
    let mut e = Echelon::tracking(f, k);
    for r in rad {
        e.insert(&to_sparse(r));
    }
    let mut comp = Vec::new();
    for i in 0..k {
        let unit = vec![(i, Scalar::one())];
        if e.insert(&unit).is_some() {
            comp.push(i);
        }
    }
    let q = comp.len();
    if q > 3 {
        return Ok(false);
    }
    // coordinates of a composite in the endomorphism basis
    let vecs: Vec<_> = basis.iter().map(|b| to_sparse(&b.to_vec())).collect();
    let mut coords_e = Echelon::tracking(f, basis[0].to_vec().len());
    for v in &vecs {
        coords_e.insert(v);
    }
    for &xi in &comp {
        let mut lm = Matrix::zeros(f, q, q);
        for (col, &bj) in comp.iter().enumerate() {
            let prod = basis[xi].compose(&basis[bj]);
            let Some(c) = coords_e.coords(&to_sparse(&prod.to_vec())) else {
                return Ok(false);
            };
            let c = to_dense(&c, k);
            // reduce modulo the radical, read off complement coordinates
            let Some(cc) = e.coords(&to_sparse(&c)) else {
                return Ok(false);
            };
            let cc = to_dense(&cc, rad.len() + k);
            for (row, &bi) in comp.iter().enumerate() {
                lm.set(row, col, cc[rad.len() + bi].clone());
            }
        }
        let mp = minimal_polynomial(&lm);
        if mp.len() == q + 1 && rational_roots(f, &mp).is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn cheap_indecomposable(m: &Module) -> bool {
    top(m).module.dim() == 1 || socle(m).module.dim() == 1
}

/// Indecomposable summands of `M` with split inclusions and projections.
pub fn indecomposable_summands(m: &Module) -> Result<Vec<Summand>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    if cheap_indecomposable(m) {
        return Ok(vec![Summand {
            module: m.clone(),
            inclusion: m.identity(),
            projection: m.identity(),
        }]);
    }
    let basis = hom(m, m)?;
    if basis.len() == 1 {
        return Ok(vec![Summand {
            module: m.clone(),
            inclusion: m.identity(),
            projection: m.identity(),
        }]);
    }
    match find_split(m, &basis)? {
        Split::Local => Ok(vec![Summand {
            module: m.clone(),
            inclusion: m.identity(),
            projection: m.identity(),
        }]),
        Split::Parts(x) => {
            let y = power(&x, m.dim());
            let u = image(&y);
            let v = kernel(&y);
            let sum = direct_sum(m.algebra(), &[&u.module, &v.module]);
            let glue = ModuleMap::from_columns(&sum, m, &[u.map.clone(), v.map.clone()]);
            let inv = glue.inverse().ok_or_else(|| {
                Error::Decomposition("Fitting parts are not complementary".into())
            })?;
            let mut out = Vec::new();
            for (k, part) in [u, v].into_iter().enumerate() {
                let to_part = sum.projections[k].compose(&inv).with_ends(m, &part.module);
                for s in indecomposable_summands(&part.module)? {
                    out.push(Summand {
                        inclusion: part.map.compose(&s.inclusion),
                        projection: s.projection.compose(&to_part),
                        module: s.module,
                    });
                }
            }
            Ok(out)
        }
    }
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    Ok(indecomposable_summands(m)?.len() == 1)
}

/// An isomorphism between indecomposable modules, if one exists: some
/// composite of basis maps is invertible exactly when they are isomorphic,
/// since non-invertible endomorphisms of an indecomposable form an ideal.
pub(crate) fn iso_indecomposable(a: &Module, b: &Module) -> Result<Option<ModuleMap>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    if a == b {
        return Ok(Some(a.identity()));
    }
    let fs = hom(a, b)?;
    if fs.is_empty() {
        return Ok(None);
    }
    for f in &fs {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
    }
    let gs = hom(b, a)?;
    for f in &fs {
        for g in &gs {
            if is_invertible(&g.compose(f)) {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

pub fn decompose(m: &Module) -> Result<Decomposition> {
    let parts = indecomposable_summands(m)?;
    // group isomorphic summands; each carries an isomorphism to its representative
    let mut reps: Vec<(Module, Vec<(usize, ModuleMap)>)> = Vec::new();
    'outer: for (i, s) in parts.iter().enumerate() {
        for (rep, members) in reps.iter_mut() {
            if let Some(phi) = iso_indecomposable(&s.module, rep)? {
                members.push((i, phi));
                continue 'outer;
            }
        }
        reps.push((s.module.clone(), vec![(i, s.module.identity())]));
    }
    let listed: Vec<&Module> = reps
        .iter()
        .flat_map(|(r, ms)| std::iter::repeat_n(r, ms.len()))
        .collect();
    let sum = direct_sum(m.algebra(), &listed);
    let mut to_sum = Vec::new();
    let mut from_sum = Vec::new();
    for (_, members) in &reps {
        for (i, phi) in members {
            to_sum.push(phi.compose(&parts[*i].projection));
            let inv = phi.inverse().expect("isomorphism");
            from_sum.push(parts[*i].inclusion.compose(&inv));
        }
    }
    let iso = ModuleMap::from_rows(m, &sum, &to_sum);
    let inverse = ModuleMap::from_columns(&sum, m, &from_sum);
    Ok(Decomposition {
        summands: reps.into_iter().map(|(r, ms)| (r, ms.len())).collect(),
        iso,
        inverse,
    })
}

/// Isomorphism test through Krull-Schmidt: equal multisets of summands.
pub fn is_isomorphic(a: &Module, b: &Module) -> Result<bool> {
    if a.dims() != b.dims() {
        return Ok(false);
    }
    let pa = indecomposable_summands(a)?;
    let pb = indecomposable_summands(b)?;
    if pa.len() != pb.len() {
        return Ok(false);
    }
    let mut used = vec![false; pb.len()];
    for s in &pa {
        let mut hit = false;
        for (j, t) in pb.iter().enumerate() {
            if !used[j] && iso_indecomposable(&s.module, &t.module)?.is_some() {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brick: the endomorphism algebra is a division ring.
pub fn is_brick(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom(m, m)?;
    if basis.len() == 1 {
        return Ok(true);
    }
    if !radical_basis(m, &basis)?.is_empty() {
        return Ok(false);
    }
    Ok(matches!(find_split(m, &basis)?, Split::Local))
}
