//! Endomorphism algebras, the hom functors into and out of a system, and
//! Ringel duality.

mod functor;
mod present;

pub use functor::{apply_phi, apply_psi, apply_to_map, FunctorImage};
use present::local_radical;
pub use present::{
    basic_presentation, end_algebra, BasicPresentation, HomSpace, PresentationSummary,
    StructureAlgebra,
};

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Path};
use crate::error::{Error, Result};
use crate::exactlin::{to_sparse, Echelon};
use crate::homext::{class_resolution, class_sequence, ext1, ext_profile, Bounded};
use crate::module::{
    cokernel, decompose, direct_sum, hom, hom_dim, is_isomorphic, map_from_projective, projective,
    regular, Module, ModuleMap,
};
use crate::strata::{
    is_mixed_stratified, proper_standard_module, standard_module, Family, StrataChoice, Verdict,
};
use crate::systems::{
    build_cosystem, verify_cosystem, verify_system, Check, MixedCoSystem, SystemReport,
};

/// Position of `e_v` in the vertex space `(e_v A)_v`.
fn unit_position(a: &Algebra, v: usize) -> usize {
    a.basis()
        .iter()
        .filter(|b| b.source == v && b.target == v)
        .position(|b| b.is_empty())
        .expect("trivial path is a basis element")
}

/// `p ↦ α p` as a map `e_v A -> e_u A`, for a path `α` from `u` to `v`.
fn left_multiplication(a: &Arc<Algebra>, alpha: &Path) -> Result<ModuleMap> {
    let (u, v) = (alpha.source, alpha.target);
    let pu = projective(a, u)?;
    let pv = projective(a, v)?;
    let mut unit = vec![a.field.zero(); pu.dims()[u]];
    unit[unit_position(a, u)] = a.field.one();
    Ok(map_from_projective(
        &pv,
        v,
        &pu,
        &pu.apply_path(alpha, &unit),
    ))
}

/// Hom and first-extension dimensions before and after a functor.
#[derive(Clone, Debug, Serialize)]
pub struct PairDims {
    pub pair: (usize, usize),
    pub hom: (usize, usize),
    pub ext1: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct StandardizationReport {
    pub presentation: PresentationSummary,
    pub projectives_match: Vec<bool>,
    /// Image of each member is the standard (stone) or proper standard
    /// (brick) module of the endomorphism algebra.
    pub strata_match: Vec<bool>,
    pub system: SystemReport,
    pub pairs: Vec<PairDims>,
    pub dims_preserved: bool,
    pub passed: bool,
}

/// Transports a stratifying system along `Hom(ℙ, -)` to its endomorphism
/// algebra and checks that it lands on the standard strata there.
pub fn standardization_check(
    theta: &[Module],
    projectives: &[Module],
) -> Result<StandardizationReport> {
    let b = end_algebra(projectives, false)?;
    let pres = basic_presentation(&b, None)?;
    let bb = &pres.algebra;
    let psi = |m: &Module| apply_psi(&b, &pres, m).map(|x| x.module);
    let psi_theta = theta.iter().map(psi).collect::<Result<Vec<_>>>()?;
    let psi_p = projectives.iter().map(psi).collect::<Result<Vec<_>>>()?;
    let mut projectives_match = Vec::new();
    let mut strata_match = Vec::new();
    for i in 0..theta.len() {
        projectives_match.push(is_isomorphic(&psi_p[i], &projective(bb, i)?)?);
        let stone = crate::homext::is_stone(&theta[i])?;
        let brick = crate::module::is_brick(&theta[i])?;
        let mut ok = stone || brick;
        if stone {
            ok &= is_isomorphic(&psi_theta[i], &standard_module(bb, i)?.module)?;
        }
        if brick {
            ok &= is_isomorphic(&psi_theta[i], &proper_standard_module(bb, i)?.module)?;
        }
        strata_match.push(ok);
    }
    let system = verify_system(&psi_theta, &psi_p)?;
    let before: Vec<&Module> = theta.iter().chain(projectives).collect();
    let after: Vec<&Module> = psi_theta.iter().chain(&psi_p).collect();
    let mut pairs = Vec::new();
    for i in 0..before.len() {
        for j in 0..before.len() {
            pairs.push(PairDims {
                pair: (i, j),
                hom: (hom_dim(before[i], before[j])?, hom_dim(after[i], after[j])?),
                ext1: (
                    ext1(before[i], before[j])?.dim(),
                    ext1(after[i], after[j])?.dim(),
                ),
            });
        }
    }
    let dims_preserved = pairs
        .iter()
        .all(|p| p.hom.0 == p.hom.1 && p.ext1.0 == p.ext1.1);
    let passed = pres.complete
        && projectives_match.iter().all(|b| *b)
        && strata_match.iter().all(|b| *b)
        && system.passed
        && dims_preserved;
    Ok(StandardizationReport {
        presentation: pres.summary(),
        projectives_match,
        strata_match,
        system,
        pairs,
        dims_preserved,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TiltingStatus {
    Tilting,
    NotTilting,
    /// No finite projective resolution found within the cap.
    ResolutionBeyondCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct WakamatsuReport {
    pub degree_cap: usize,
    /// Least degree `i <= degree_cap` with `Ext^i(W, W) ≠ 0`.
    pub self_extension: Option<usize>,
    /// Dimension vectors of the terms `W^k` of the coresolution of `A`.
    pub coresolution_terms: Vec<Vec<usize>>,
    /// Whether some cokernel vanished, ending the coresolution.
    pub coresolution_finite: bool,
    /// Every approximation was injective and every cokernel had no
    /// extensions into `W` up to the degree cap.
    pub coresolution_ok: bool,
    pub projective_dimension: Bounded<usize>,
    pub wakamatsu: Verdict,
    pub tilting: TiltingStatus,
}

/// Indecomposable summands of `W` up to isomorphism, each with a basis of
/// the radical of its endomorphism ring.
struct AddClosure {
    classes: Vec<Module>,
    radicals: Vec<Vec<ModuleMap>>,
}

impl AddClosure {
    fn new(w: &Module) -> Result<AddClosure> {
        let classes: Vec<Module> = decompose(w)?.summands.into_iter().map(|(m, _)| m).collect();
        let radicals = classes
            .iter()
            .map(|x| local_radical(x, &HomSpace::between(x, x)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(AddClosure { classes, radicals })
    }

    /// Minimal left approximation `M -> ⊕ W_j^{m_j}`: for each class, maps
    /// spanning `Hom(M, W_j)` modulo those factoring through radical maps.
    fn approximation(&self, m: &Module) -> Result<ModuleMap> {
        let homs = self
            .classes
            .iter()
            .map(|x| hom(m, x))
            .collect::<Result<Vec<_>>>()?;
        let mut targets = Vec::new();
        let mut rows = Vec::new();
        for (j, x) in self.classes.iter().enumerate() {
            let len: usize = m.dims().iter().zip(x.dims()).map(|(a, b)| a * b).sum();
            let mut ech = Echelon::new(m.field(), len.max(1));
            for (k, hk) in homs.iter().enumerate() {
                let rad = if k == j {
                    self.radicals[j].clone()
                } else {
                    hom(&self.classes[k], x)?
                };
                for r in &rad {
                    for h in hk {
                        ech.insert(&to_sparse(&r.compose(h).to_vec()));
                    }
                }
            }
            for h in &homs[j] {
                if ech.insert(&to_sparse(&h.to_vec())).is_some() {
                    targets.push(x);
                    rows.push(h.clone());
                }
            }
        }
        let sum = direct_sum(m.algebra(), &targets);
        Ok(ModuleMap::from_rows(m, &sum, &rows))
    }
}

/// Self-orthogonality up to `degree_cap`, then the coresolution of `A` by
/// minimal left approximations in `add W`, up to `coresolution_cap` steps.
pub fn wakamatsu_check(
    w: &Module,
    degree_cap: usize,
    coresolution_cap: usize,
) -> Result<WakamatsuReport> {
    let a = w.algebra();
    let self_extension = ext_profile(w, w, degree_cap)?
        .iter()
        .position(|d| *d != 0)
        .map(|i| i + 1);
    let add = AddClosure::new(w)?;
    let mut coresolution_ok = true;
    let mut approximated: Vec<(Module, Vec<usize>)> = Vec::new();
    let seq = class_sequence(&regular(a), coresolution_cap, |x| {
        let g = add.approximation(x)?;
        approximated.push((x.clone(), g.target().dims().to_vec()));
        if !g.is_injective() {
            coresolution_ok = false;
            return Ok(Module::zero(a));
        }
        let next = cokernel(&g).module;
        if ext_profile(&next, w, degree_cap)?.iter().any(|d| *d != 0) {
            coresolution_ok = false;
        }
        Ok(next)
    })?;
    let coresolution_finite = coresolution_ok && seq.length.is_some();
    let mut coresolution_terms = Vec::new();
    for deg in seq.degrees.iter().take(coresolution_cap) {
        let mut dims = vec![0; a.n()];
        for (c, mult) in deg {
            let Some((_, t)) = approximated.iter().find(|(x, _)| *x == seq.classes[*c]) else {
                continue;
            };
            for (o, d) in dims.iter_mut().zip(t) {
                *o += mult * d;
            }
        }
        coresolution_terms.push(dims);
    }
    let res = class_resolution(w, degree_cap)?;
    let projective_dimension = match res.length {
        Some(d) => Bounded::Known(d),
        None => Bounded::BeyondCap(degree_cap),
    };
    // Without a vanishing cokernel or a finite resolution this holds up to the caps only.
    let wakamatsu = if self_extension.is_some() || !coresolution_ok {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    let tilting = match (wakamatsu, projective_dimension) {
        (Verdict::Fail, _) => TiltingStatus::NotTilting,
        (_, Bounded::Known(d)) if d <= degree_cap => TiltingStatus::Tilting,
        _ => TiltingStatus::ResolutionBeyondCap,
    };
    Ok(WakamatsuReport {
        degree_cap,
        self_extension,
        coresolution_terms,
        coresolution_finite,
        coresolution_ok,
        projective_dimension,
        wakamatsu,
        tilting,
    })
}

/// Layered comparison of `A` with the endomorphism algebra of `Φ(A)`.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleDualReport {
    pub dim: (usize, usize),
    pub cartan: (Vec<Vec<usize>>, Vec<Vec<usize>>),
    pub arrow_counts: (Vec<Vec<usize>>, Vec<Vec<usize>>),
    pub dim_matches: bool,
    pub cartan_matches: bool,
    pub arrow_counts_match: bool,
    /// The canonical map from `A`, sending each arrow to the image of its
    /// left multiplication, kills the relations and is bijective.
    pub isomorphism: Check,
}

fn double_dual(
    a: &Arc<Algebra>,
    c: &StructureAlgebra,
    phi_p: &[FunctorImage],
) -> Result<DoubleDualReport> {
    let mods: Vec<Module> = phi_p.iter().map(|x| x.module.clone()).collect();
    let d = end_algebra(&mods, true)?;
    let dpres = basic_presentation(&d, None)?;
    let dim = (a.dim(), d.dim());
    let cartan = (a.cartan(), d.cartan());
    let arrow_counts = (a.arrow_counts(), dpres.algebra.arrow_counts());
    let f = a.field;
    // Image of each arrow: Φ of its left multiplication, in e_u D e_v.
    let mut images = Vec::with_capacity(a.quiver.arrows.len());
    for (k, arr) in a.quiver.arrows.iter().enumerate() {
        let path = Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![k],
        };
        let lam = left_multiplication(a, &path)?;
        images.push(apply_to_map(
            c,
            &lam,
            &phi_p[arr.target],
            &phi_p[arr.source],
        )?);
    }
    let eval = |p: &Path| -> ModuleMap {
        p.arrows.iter().skip(1).fold(
            p.arrows
                .first()
                .map(|x| images[*x].clone())
                .unwrap_or_else(|| d.idempotent(p.source)),
            |acc, x| d.mul(&acc, &images[*x]),
        )
    };
    let mut holds = dim.0 == dim.1;
    for r in &a.relations {
        let (u, v) = (r.source(), r.target());
        let zero = ModuleMap::zero(&d.summands[u], &d.summands[v]);
        let acc = r
            .terms
            .iter()
            .fold(zero, |acc, (coef, p)| acc.add(&eval(p).scale(coef)));
        holds &= acc.is_zero();
    }
    let mut rank = 0;
    for u in 0..a.n() {
        for v in 0..a.n() {
            let blk = d.block(u, v);
            let mut ech = Echelon::new(f, blk.dim().max(1));
            for p in a.basis().iter().filter(|p| p.source == u && p.target == v) {
                ech.insert(&to_sparse(&blk.coords(&eval(p))));
            }
            rank += ech.rank();
        }
    }
    holds &= rank == d.dim();
    Ok(DoubleDualReport {
        dim_matches: dim.0 == dim.1,
        cartan_matches: cartan.0 == cartan.1,
        arrow_counts_match: arrow_counts.0 == arrow_counts.1,
        dim,
        cartan,
        arrow_counts,
        isomorphism: if holds { Check::Holds } else { Check::Fails },
    })
}

/// `C = End(𝕋)^op`, its vertices in the stratification order of the
/// image family: vertex `k` belongs to `T(t-k)` (one-based).
#[derive(Clone, Debug)]
pub struct RingelDual {
    pub cosystem: MixedCoSystem,
    pub structure: StructureAlgebra,
    pub presentation: BasicPresentation,
    /// `Φ(Θ(t-k))` at position `k`.
    pub phi_theta: Vec<Module>,
    /// `Φ(e_iA)`, in the order of `A`.
    pub phi_projectives: Vec<Module>,
    /// `Φ(T(t-k)) = e_k C` at position `k`.
    pub phi_cogenerator: Vec<Module>,
    /// The image family with `Φ(𝕋)` as relative projectives.
    pub system: SystemReport,
    /// The image family with `Φ(A)` as relative injectives.
    pub cosystem_report: SystemReport,
    pub double_dual: DoubleDualReport,
    pub passed: bool,
}

pub fn ringel_dual(a: &Arc<Algebra>, choice: &StrataChoice, cap: usize) -> Result<RingelDual> {
    let st = is_mixed_stratified(a, choice)?;
    if st.verdict != Verdict::Pass {
        return Err(Error::Precondition(format!(
            "not mixed stratified for the choice {choice}"
        )));
    }
    let cosystem = build_cosystem(&Family::new(st.theta.clone())?, cap)?;
    let cogen: Vec<Module> = cosystem.injectives.iter().rev().cloned().collect();
    let c = end_algebra(&cogen, true)?;
    let pres = basic_presentation(&c, None)?;
    let phi = |m: &Module| apply_phi(&c, &pres, m);
    let modules = |v: &[FunctorImage]| v.iter().map(|x| x.module.clone()).collect::<Vec<_>>();
    let phi_theta = modules(
        &cosystem
            .theta
            .iter()
            .rev()
            .map(phi)
            .collect::<Result<Vec<_>>>()?,
    );
    let proj_img = (0..a.n())
        .map(|i| phi(&projective(a, i)?))
        .collect::<Result<Vec<_>>>()?;
    let phi_projectives = modules(&proj_img);
    let phi_cogenerator = modules(&cogen.iter().map(phi).collect::<Result<Vec<_>>>()?);
    let system = verify_system(&phi_theta, &phi_cogenerator)?;
    let rev: Vec<Module> = phi_projectives.iter().rev().cloned().collect();
    let cosystem_report = verify_cosystem(&phi_theta, &rev)?;
    let double_dual = double_dual(a, &c, &proj_img)?;
    let passed = pres.complete
        && system.passed
        && cosystem_report.passed
        && double_dual.dim_matches
        && double_dual.cartan_matches
        && double_dual.arrow_counts_match;
    Ok(RingelDual {
        cosystem,
        structure: c,
        presentation: pres,
        phi_theta,
        phi_projectives,
        phi_cogenerator,
        system,
        cosystem_report,
        double_dual,
        passed,
    })
}
