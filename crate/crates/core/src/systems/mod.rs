//! Iterated universal extensions, relative projective and injective
//! generators of filtered categories, and checks of the system axioms.

mod approx;
mod trace;

pub use approx::{left_approximation, LeftApproximation};
pub use trace::{universal_extension_sequence, TraceStatus, UnivExtTrace};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homext::{ext1, Conflation};
use crate::module::{
    hom, is_brick, is_indecomposable, kernel, radical, rebase, right_minimal, Module, ModuleMap,
};
use crate::strata::{
    filtration_membership, verify_mixed_standardizable, Family, Membership, DEFAULT_NODE_BUDGET,
};

/// Default cap on universal extension steps: ten times the algebra dimension.
pub fn default_cap(a: &Algebra) -> usize {
    10 * a.dim().max(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Holds,
    Fails,
    NotChecked,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finiteness {
    /// Bounds on lengths of indecomposables are not computed.
    pub length_bound: Check,
    /// `Ext^1(N, rad N) = 0`.
    pub ext_rad_vanishing: Check,
}

pub fn check_finiteness_conditions(n: &Module) -> Result<Finiteness> {
    if !is_brick(n)? {
        return Err(Error::Precondition(
            "finiteness conditions need a brick".into(),
        ));
    }
    let rad = radical(n).module;
    let vanishes = rad.is_zero() || ext1(n, &rad)?.dim() == 0;
    Ok(Finiteness {
        length_bound: Check::NotChecked,
        ext_rad_vanishing: if vanishes { Check::Holds } else { Check::Fails },
    })
}

/// `K -> P -> M` with `P` relatively projective and the deflation right minimal.
#[derive(Clone, Debug)]
pub struct ProjectiveOver {
    pub conflation: Conflation,
    /// Member index and number of universal extension steps, in sweep order.
    pub sweep: Vec<(usize, usize)>,
    /// Filtration of `K`; its indices are at least the first swept index.
    pub kernel_membership: Membership,
}

/// Sweeps members in increasing order, each time extending by the least
/// member that still has extensions, then strips redundant summands.
pub fn build_projective_over(m: &Module, family: &Family, cap: usize) -> Result<ProjectiveOver> {
    let theta = family.modules();
    let mut q = m.clone();
    let mut alpha = m.identity();
    let mut sweep = Vec::new();
    let mut j = 0;
    while j < theta.len() {
        if ext1(&q, &theta[j])?.dim() == 0 {
            j += 1;
            continue;
        }
        let tr = universal_extension_sequence(&q, &theta[j], cap)?;
        if let TraceStatus::CapExceeded { cap } = tr.status {
            return Err(Error::Cap {
                what: format!("universal extensions by member {}", j + 1),
                cap,
            });
        }
        sweep.push((j, tr.steps()));
        alpha = alpha.compose(&tr.deflation());
        q = tr.last().clone();
        j += 1;
    }
    let min = right_minimal(&alpha)?;
    let p = min.map.source().clone();
    for (k, t) in theta.iter().enumerate() {
        if ext1(&p, t)?.dim() != 0 {
            return Err(Error::Precondition(format!(
                "relative projective still extends member {}",
                k + 1
            )));
        }
    }
    let k = kernel(&min.map);
    let kernel_membership = filtration_membership(&k.module, family, DEFAULT_NODE_BUDGET)?;
    let conflation = Conflation {
        left: k.module,
        middle: p,
        right: m.clone(),
        inclusion: k.map,
        projection: min.map,
    };
    Ok(ProjectiveOver {
        conflation,
        sweep,
        kernel_membership,
    })
}

/// Axiom-by-axiom outcome, with the first failing index where relevant.
#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub indecomposable: Vec<bool>,
    pub bricks_or_stones: bool,
    pub backward_map_witness: Option<(usize, usize)>,
    /// Per index: a deflation onto the member with a suitably filtered kernel exists.
    pub deflation: Vec<bool>,
    /// Per index: the first member with a nonzero extension, if any.
    pub extension_witness: Vec<Option<usize>>,
    pub negative_extensions_vanish: bool,
    /// Backward extensions between members, a consequence of the axioms.
    pub backward_extension_witness: Option<(usize, usize)>,
    pub passed: bool,
}

impl SystemReport {
    pub fn first_failure(&self) -> Option<usize> {
        (0..self.deflation.len()).find(|i| {
            !self.indecomposable[*i] || !self.deflation[*i] || self.extension_witness[*i].is_some()
        })
    }
}

/// Candidate deflations `P -> Θ`: surjective basis maps, then seeded
/// random combinations.
fn surjections(p: &Module, t: &Module) -> Result<Vec<ModuleMap>> {
    let hs = hom(p, t)?;
    let mut out: Vec<ModuleMap> = hs.iter().filter(|h| h.is_surjective()).cloned().collect();
    if hs.len() > 1 {
        let f = p.field();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..8 {
            let mut acc = ModuleMap::zero(p, t);
            for h in &hs {
                acc = acc.add(&h.scale(&f.from_i64(rng.gen_range(-4..=4))));
            }
            if acc.is_surjective() {
                out.push(acc);
            }
        }
    }
    Ok(out)
}

fn deflation_exists(p: &Module, theta: &[Module], i: usize) -> Result<bool> {
    let Ok(tail) = Family::new(theta[i..].to_vec()) else {
        return Ok(false);
    };
    for s in surjections(p, &theta[i])? {
        if filtration_membership(&kernel(&s).module, &tail, DEFAULT_NODE_BUDGET)?.is_filtered() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn verify_system(theta: &[Module], projectives: &[Module]) -> Result<SystemReport> {
    if theta.len() != projectives.len() {
        return Err(Error::Input(
            "family and projectives differ in length".into(),
        ));
    }
    let ms = verify_mixed_standardizable(theta)?;
    let mut indecomposable = Vec::new();
    let mut deflation = Vec::new();
    let mut extension_witness = Vec::new();
    for (i, p) in projectives.iter().enumerate() {
        indecomposable.push(!p.is_zero() && is_indecomposable(p)?);
        let mut w = None;
        for (j, t) in theta.iter().enumerate() {
            if ext1(p, t)?.dim() != 0 {
                w = Some(j);
                break;
            }
        }
        extension_witness.push(w);
        deflation.push(ms.ms2 && deflation_exists(p, theta, i)?);
    }
    let passed = ms.ms1
        && ms.ms2
        && indecomposable.iter().all(|b| *b)
        && deflation.iter().all(|b| *b)
        && extension_witness.iter().all(Option::is_none);
    Ok(SystemReport {
        indecomposable,
        bricks_or_stones: ms.ms1,
        backward_map_witness: ms.ms2_witness,
        deflation,
        extension_witness,
        negative_extensions_vanish: true,
        backward_extension_witness: ms.ms3_witness,
        passed,
    })
}

#[derive(Clone, Debug)]
pub struct MixedSystem {
    pub theta: Vec<Module>,
    pub projectives: Vec<Module>,
    /// `K(i) -> P(i) -> Θ(i)`.
    pub conflations: Vec<Conflation>,
    pub kernel_certificates: Vec<Membership>,
    pub report: SystemReport,
}

pub fn build_system(family: &Family, cap: usize) -> Result<MixedSystem> {
    let theta = family.modules().to_vec();
    let mut projectives = Vec::new();
    let mut conflations = Vec::new();
    let mut kernel_certificates = Vec::new();
    for (i, t) in theta.iter().enumerate() {
        let po = build_projective_over(t, family, cap)?;
        if !is_indecomposable(&po.conflation.middle)? {
            return Err(Error::Decomposition(format!(
                "relative projective over member {} decomposes",
                i + 1
            )));
        }
        projectives.push(po.conflation.middle.clone());
        conflations.push(po.conflation);
        kernel_certificates.push(po.kernel_membership);
    }
    let report = verify_system(&theta, &projectives)?;
    Ok(MixedSystem {
        theta,
        projectives,
        conflations,
        kernel_certificates,
        report,
    })
}

fn rebase_conflation(a: &Arc<Algebra>, c: Conflation) -> Conflation {
    let left = rebase(a, c.left);
    let middle = rebase(a, c.middle);
    let right = rebase(a, c.right);
    Conflation {
        inclusion: c.inclusion.with_ends(&left, &middle),
        projection: c.projection.with_ends(&middle, &right),
        left,
        middle,
        right,
    }
}

/// The dualized family in reversed order, over the opposite algebra.
fn opposite_family(theta: &[Module]) -> Vec<Module> {
    theta.iter().rev().map(Module::dual).collect()
}

#[derive(Clone, Debug)]
pub struct MixedCoSystem {
    pub theta: Vec<Module>,
    pub injectives: Vec<Module>,
    /// `Θ(i) -> I(i) -> C(i)`.
    pub conflations: Vec<Conflation>,
    /// Filtrations of `C(i)` by the members up to `i`.
    pub cokernel_certificates: Vec<Membership>,
    pub report: SystemReport,
}

/// Built as the stratifying system of the dual family over the opposite
/// algebra, then dualized back.
pub fn build_cosystem(family: &Family, cap: usize) -> Result<MixedCoSystem> {
    let theta = family.modules().to_vec();
    let a = theta[0].algebra().clone();
    let t = theta.len();
    let op = build_system(&Family::new(opposite_family(&theta))?, cap)?;
    let mut injectives = vec![Module::zero(&a); t];
    let mut conflations = vec![None; t];
    for (k, c) in op.conflations.into_iter().enumerate() {
        let c = rebase_conflation(&a, c.dual());
        injectives[t - 1 - k] = c.middle.clone();
        conflations[t - 1 - k] = Some(c);
    }
    let conflations: Vec<Conflation> = conflations
        .into_iter()
        .map(|c| c.expect("every index built"))
        .collect();
    let mut cokernel_certificates = Vec::new();
    for (i, c) in conflations.iter().enumerate() {
        let head = Family::new(theta[..=i].to_vec())?;
        cokernel_certificates.push(filtration_membership(&c.right, &head, DEFAULT_NODE_BUDGET)?);
    }
    let report = verify_cosystem(&theta, &injectives)?;
    Ok(MixedCoSystem {
        theta,
        injectives,
        conflations,
        cokernel_certificates,
        report,
    })
}

/// Checks the costratifying axioms by duality; witnesses use the original indices.
pub fn verify_cosystem(theta: &[Module], injectives: &[Module]) -> Result<SystemReport> {
    let t = theta.len();
    if injectives.len() != t {
        return Err(Error::Input(
            "family and injectives differ in length".into(),
        ));
    }
    let r = verify_system(&opposite_family(theta), &opposite_family(injectives))?;
    let flip = |w: Option<(usize, usize)>| w.map(|(i, j)| (t - 1 - j, t - 1 - i));
    let rev = |v: Vec<bool>| v.into_iter().rev().collect::<Vec<_>>();
    Ok(SystemReport {
        indecomposable: rev(r.indecomposable),
        bricks_or_stones: r.bricks_or_stones,
        backward_map_witness: flip(r.backward_map_witness),
        deflation: rev(r.deflation),
        extension_witness: r
            .extension_witness
            .into_iter()
            .rev()
            .map(|w| w.map(|j| t - 1 - j))
            .collect(),
        negative_extensions_vanish: true,
        backward_extension_witness: flip(r.backward_extension_witness),
        passed: r.passed,
    })
}

#[cfg(test)]
mod tests;
