use super::ExtSpace;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::module::{
    cokernel, direct_sum, factor_from, factor_through, kernel, Module, ModuleMap, Sub,
};

/// Short exact sequence `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct Conflation {
    pub left: Module,
    pub middle: Module,
    pub right: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

impl Conflation {
    /// Exactness checked vertex by vertex.
    pub fn verify(&self) -> bool {
        let i = &self.inclusion;
        let p = &self.projection;
        i.is_injective()
            && p.is_surjective()
            && p.compose(i).is_zero()
            && (0..self.middle.dims().len())
                .all(|v| self.middle.dims()[v] == self.left.dims()[v] + self.right.dims()[v])
    }

    /// `0 -> M -> M -> 0 -> 0`-style formal sequence with zero left term.
    pub fn trivial(m: &Module) -> Conflation {
        let z = Module::zero(m.algebra());
        Conflation {
            inclusion: ModuleMap::zero(&z, m),
            projection: m.identity(),
            left: z,
            middle: m.clone(),
            right: m.clone(),
        }
    }

    pub fn split(k: &Module, m: &Module) -> Conflation {
        let s = direct_sum(k.algebra(), &[k, m]);
        Conflation {
            left: k.clone(),
            middle: s.module.clone(),
            right: m.clone(),
            inclusion: s.injections[0].clone(),
            projection: s.projections[1].clone(),
        }
    }

    /// Dual sequence over the opposite algebra.
    pub fn dual(&self) -> Conflation {
        Conflation {
            left: self.right.dual(),
            middle: self.middle.dual(),
            right: self.left.dual(),
            inclusion: self.projection.dual(),
            projection: self.inclusion.dual(),
        }
    }
}

/// `h` with `h ∘ q = g`, for a surjection `q` whose kernel `g` kills.
pub(crate) fn descend(q: &ModuleMap, g: &ModuleMap) -> ModuleMap {
    let comps = q
        .comps()
        .iter()
        .zip(g.comps())
        .map(|(qv, gv)| {
            let id = Matrix::identity(qv.field, qv.rows());
            let s = qv
                .solve(&id)
                .expect("shapes agree")
                .expect("surjective component")
                .particular;
            gv.mul(&s)
        })
        .collect();
    ModuleMap::new(q.target().clone(), g.target().clone(), comps)
        .expect("descended map intertwines")
}

/// `h` with `incl ∘ h = g`, for an injection `incl` containing the image of `g`.
pub(crate) fn restrict_into(incl: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    let mut comps = Vec::with_capacity(g.comps().len());
    for (iv, gv) in incl.comps().iter().zip(g.comps()) {
        match iv.solve(gv)? {
            Some(s) => comps.push(s.particular),
            None => {
                return Err(Error::Precondition(
                    "map does not land in the submodule".into(),
                ))
            }
        }
    }
    ModuleMap::new(g.source().clone(), incl.source().clone(), comps)
}

/// Pushout of `ι : Ω -> P` along `r : Ω -> X`: the sequence
/// `X -> (X ⊕ P)/{(r w, -ι w)} -> M`, given `π : P -> M` with kernel `Ω`.
fn pushout_sequence(iota: &ModuleMap, pi: &ModuleMap, r: &ModuleMap) -> Conflation {
    let x = r.target();
    let p = iota.target();
    let a = x.algebra();
    let sum = direct_sum(a, &[x, p]);
    let rel = ModuleMap::from_rows(
        iota.source(),
        &sum,
        &[r.clone(), iota.scale(&a.field.from_i64(-1))],
    );
    let q: Sub = cokernel(&rel);
    let inclusion = q.map.compose(&sum.injections[0]);
    let projection = descend(&q.map, &pi.compose(&sum.projections[1]));
    Conflation {
        left: x.clone(),
        middle: q.module,
        right: pi.target().clone(),
        inclusion,
        projection,
    }
}

/// Conflation `X -> E -> M` obtained from `r : ΩM -> X` by pushout; for
/// `X = N` its class is `r`, and zero gives the split sequence.
pub fn realize(ext: &ExtSpace, r: &ModuleMap) -> Conflation {
    pushout_sequence(&ext.syzygy.map, &ext.cover.map, r)
}

/// Canonical class of a conflation `N -> E -> M` in `Ext^1(M, N)`.
pub fn classify(ext: &ExtSpace, c: &Conflation) -> Result<ModuleMap> {
    if c.right.dims() != ext.source.dims() || c.left.dims() != ext.target.dims() {
        return Err(Error::Precondition(
            "conflation endpoints differ from the extension space".into(),
        ));
    }
    let pi0 = ext.cover.map.with_ends(&ext.cover.module, &c.right);
    let g = factor_through(&c.projection, &pi0)?
        .ok_or_else(|| Error::Precondition("cover does not lift".into()))?;
    let r = restrict_into(&c.inclusion, &g.compose(&ext.syzygy.map))?;
    Ok(ext.canonical(&r.with_ends(&ext.syzygy.module, &ext.target)))
}

/// Cobase change along `f : K -> K'`.
pub fn pushout(c: &Conflation, f: &ModuleMap) -> Conflation {
    let k2 = f.target();
    let a = k2.algebra();
    let sum = direct_sum(a, &[k2, &c.middle]);
    let rel = ModuleMap::from_rows(
        &c.left,
        &sum,
        &[f.clone(), c.inclusion.scale(&a.field.from_i64(-1))],
    );
    let q = cokernel(&rel);
    let inclusion = q.map.compose(&sum.injections[0]);
    let projection = descend(&q.map, &c.projection.compose(&sum.projections[1]));
    Conflation {
        left: k2.clone(),
        middle: q.module,
        right: c.right.clone(),
        inclusion,
        projection,
    }
}

/// Base change along `g : M' -> M`.
pub fn pullback(c: &Conflation, g: &ModuleMap) -> Conflation {
    let m2 = g.source();
    let a = m2.algebra();
    let sum = direct_sum(a, &[&c.middle, m2]);
    let diff = ModuleMap::from_columns(
        &sum,
        &c.right,
        &[c.projection.clone(), g.scale(&a.field.from_i64(-1))],
    );
    let k = kernel(&diff);
    let into = ModuleMap::from_rows(
        &c.left,
        &sum,
        &[c.inclusion.clone(), ModuleMap::zero(&c.left, m2)],
    );
    let inclusion = restrict_into(&k.map, &into).expect("left term lies in the pullback");
    let projection = sum.projections[1].compose(&k.map);
    Conflation {
        left: c.left.clone(),
        middle: k.module,
        right: m2.clone(),
        inclusion,
        projection,
    }
}

/// Whether the inclusion admits a retraction.
pub fn is_split(c: &Conflation) -> Result<bool> {
    Ok(factor_from(&c.inclusion, &c.left.identity())?.is_some())
}
