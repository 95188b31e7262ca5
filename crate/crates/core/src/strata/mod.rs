//! Standard and proper standard modules, their duals, filtration
//! certificates, and the mixed stratified algebra decision.

mod filtration;

pub use filtration::{
    filtration_membership, Family, FiltrationCertificate, Layer, Membership, DEFAULT_NODE_BUDGET,
};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::homext::{ext1, is_stone};
use crate::module::{
    hom, is_brick, projective, quotient, radical, rebase, regular, submodule_generated, Module, Sub,
};

/// Which member of the pair `Δ(i)`, `Δ̄(i)` (or `∇(i)`, `∇̄(i)`) is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Standard,
    Proper,
}

/// One tag per vertex, written `d,p,d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrataChoice(pub Vec<Tag>);

impl StrataChoice {
    pub fn all_standard(n: usize) -> Self {
        StrataChoice(vec![Tag::Standard; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for StrataChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .0
            .iter()
            .map(|t| if *t == Tag::Standard { "d" } else { "p" })
            .collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for StrataChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| match t.trim() {
                "d" => Ok(Tag::Standard),
                "p" => Ok(Tag::Proper),
                other => Err(Error::Input(format!(
                    "choice entry {other:?} is neither d nor p"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(StrataChoice)
    }
}

fn unit_columns(m: &Module, vertices: impl Fn(usize) -> bool) -> Vec<Matrix> {
    let f = m.field();
    (0..m.dims().len())
        .map(|v| {
            if vertices(v) {
                Matrix::identity(f, m.dims()[v])
            } else {
                Matrix::zeros(f, m.dims()[v], 0)
            }
        })
        .collect()
}

/// `Δ(i)`: the quotient of `e_iA` by the trace of `e_jA`, `j > i`, which is
/// the submodule generated by the vertex spaces above `i`.
pub fn standard_module(a: &Arc<Algebra>, i: usize) -> Result<Sub> {
    let p = projective(a, i)?;
    let trace = submodule_generated(&p, &unit_columns(&p, |v| v > i));
    Ok(quotient(&p, trace.map.comps()))
}

/// `Δ̄(i)`: the quotient of `Δ(i)` by the images of all maps
/// `e_iA -> rad Δ(i)`; the map returned starts at `e_iA`.
pub fn proper_standard_module(a: &Arc<Algebra>, i: usize) -> Result<Sub> {
    let d = standard_module(a, i)?;
    let rad = radical(&d.module);
    let gens: Vec<Matrix> = (0..a.n())
        .map(|v| {
            if v == i {
                rad.map.comp(v).clone()
            } else {
                Matrix::zeros(a.field, d.module.dims()[v], 0)
            }
        })
        .collect();
    let u = submodule_generated(&d.module, &gens);
    let q = quotient(&d.module, u.map.comps());
    Ok(Sub {
        module: q.module,
        map: q.map.compose(&d.map),
    })
}

/// `∇(i) = D Δ_{A^op}(i)`.
pub fn costandard_module(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    Ok(rebase(a, standard_module(&a.opposite(), i)?.module.dual()))
}

/// `∇̄(i) = D Δ̄_{A^op}(i)`.
pub fn proper_costandard_module(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    Ok(rebase(
        a,
        proper_standard_module(&a.opposite(), i)?.module.dual(),
    ))
}

/// All standard-type modules of an algebra, computed once.
#[derive(Clone, Debug)]
pub struct Strata {
    pub algebra: Arc<Algebra>,
    pub standard: Vec<Module>,
    pub proper: Vec<Module>,
}

impl Strata {
    pub fn new(a: &Arc<Algebra>) -> Result<Strata> {
        let mut standard = Vec::new();
        let mut proper = Vec::new();
        for i in 0..a.n() {
            standard.push(standard_module(a, i)?.module);
            proper.push(proper_standard_module(a, i)?.module);
        }
        Ok(Strata {
            algebra: a.clone(),
            standard,
            proper,
        })
    }

    /// Costandard-type modules, through the opposite algebra.
    pub fn costrata(a: &Arc<Algebra>) -> Result<Strata> {
        let op = Strata::new(&a.opposite())?;
        Ok(Strata {
            algebra: a.clone(),
            standard: op.standard.iter().map(|m| rebase(a, m.dual())).collect(),
            proper: op.proper.iter().map(|m| rebase(a, m.dual())).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.standard.len()
    }

    /// Whether `Δ(i) = Δ̄(i)`; the proper one is a quotient, so equal
    /// dimension suffices.
    pub fn coincide(&self, i: usize) -> bool {
        self.standard[i].dim() == self.proper[i].dim()
    }

    pub fn family(&self, choice: &StrataChoice) -> Result<Vec<Module>> {
        if choice.len() != self.n() {
            return Err(Error::Input(format!(
                "choice of length {} for {} vertices",
                choice.len(),
                self.n()
            )));
        }
        Ok(choice
            .0
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if *t == Tag::Standard {
                    self.standard[i].clone()
                } else {
                    self.proper[i].clone()
                }
            })
            .collect())
    }

    /// The choice with `d` wherever `Δ(i) = Δ̄(i)`.
    pub fn normalize(&self, choice: &StrataChoice) -> StrataChoice {
        StrataChoice(
            choice
                .0
                .iter()
                .enumerate()
                .map(|(i, t)| if self.coincide(i) { Tag::Standard } else { *t })
                .collect(),
        )
    }
}

/// Per-axiom outcome of the mixed standardizable test, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct StandardizableReport {
    pub bricks: Vec<bool>,
    pub stones: Vec<bool>,
    pub ms1: bool,
    /// First pair `(i, j)`, `i > j`, with a nonzero map `Θ(i) -> Θ(j)`.
    pub ms2_witness: Option<(usize, usize)>,
    pub ms2: bool,
    /// First pair `(i, j)`, `i > j`, with `Ext^1(Θ(i), Θ(j)) ≠ 0`.
    pub ms3_witness: Option<(usize, usize)>,
    pub ms3: bool,
    /// Negative extensions vanish identically for modules.
    pub ms4: bool,
    pub passed: bool,
}

pub fn verify_mixed_standardizable(theta: &[Module]) -> Result<StandardizableReport> {
    let t = theta.len();
    let mut bricks = Vec::with_capacity(t);
    let mut stones = Vec::with_capacity(t);
    for m in theta {
        bricks.push(is_brick(m)?);
        stones.push(is_stone(m)?);
    }
    let ms1 = bricks.iter().zip(&stones).all(|(b, s)| *b || *s);
    let mut ms2_witness = None;
    let mut ms3_witness = None;
    for i in 0..t {
        for j in 0..i {
            if ms2_witness.is_none() && !hom(&theta[i], &theta[j])?.is_empty() {
                ms2_witness = Some((i, j));
            }
            if ms3_witness.is_none() && ext1(&theta[i], &theta[j])?.dim() > 0 {
                ms3_witness = Some((i, j));
            }
        }
    }
    let (ms2, ms3) = (ms2_witness.is_none(), ms3_witness.is_none());
    Ok(StandardizableReport {
        bricks,
        stones,
        ms1,
        ms2_witness,
        ms2,
        ms3_witness,
        ms3,
        ms4: true,
        passed: ms1 && ms2 && ms3,
    })
}

/// Outcome of a decision that may run out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

/// Filtration certificates of every `e_iA` for the chosen family.
#[derive(Clone, Debug)]
pub struct StratifiedReport {
    pub choice: StrataChoice,
    pub theta: Vec<Module>,
    pub memberships: Vec<Membership>,
    pub verdict: Verdict,
}

pub fn is_mixed_stratified(a: &Arc<Algebra>, choice: &StrataChoice) -> Result<StratifiedReport> {
    let s = Strata::new(a)?;
    mixed_stratified_with(&s, choice, DEFAULT_NODE_BUDGET)
}

pub fn mixed_stratified_with(
    s: &Strata,
    choice: &StrataChoice,
    budget: usize,
) -> Result<StratifiedReport> {
    let a = &s.algebra;
    let theta = s.family(choice)?;
    let fam = Family::new(theta.clone())?;
    let mut memberships = Vec::new();
    let mut verdict = Verdict::Pass;
    for i in 0..a.n() {
        let m = filtration_membership(&projective(a, i)?, &fam, budget)?;
        match &m {
            Membership::Filtered(_) => {}
            Membership::NotFiltered { .. } => verdict = Verdict::Fail,
            Membership::Undecided { .. } if verdict == Verdict::Pass => {
                verdict = Verdict::Undecided
            }
            Membership::Undecided { .. } => {}
        }
        memberships.push(m);
        if verdict == Verdict::Fail {
            break;
        }
    }
    Ok(StratifiedReport {
        choice: choice.clone(),
        theta,
        memberships,
        verdict,
    })
}

pub const DEFAULT_CHOICE_BOUND: usize = 12;

/// Every choice, up to `Δ(i) = Δ̄(i)` coincidences, with its verdict.
pub fn enumerate_choices(a: &Arc<Algebra>, bound: usize) -> Result<Vec<(StrataChoice, Verdict)>> {
    let n = a.n();
    if n > bound {
        return Err(Error::Cap {
            what: "vertices for choice enumeration".into(),
            cap: bound,
        });
    }
    let s = Strata::new(a)?;
    let free: Vec<usize> = (0..n).filter(|i| !s.coincide(*i)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut tags = vec![Tag::Standard; n];
        for (b, i) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                tags[*i] = Tag::Proper;
            }
        }
        let choice = StrataChoice(tags);
        let r = mixed_stratified_with(&s, &choice, DEFAULT_NODE_BUDGET)?;
        out.push((choice, r.verdict));
    }
    Ok(out)
}

/// Choices for which `A` is mixed stratified.
pub fn enumerate_mixed_choices(a: &Arc<Algebra>, bound: usize) -> Result<Vec<StrataChoice>> {
    Ok(enumerate_choices(a, bound)?
        .into_iter()
        .filter(|(_, v)| *v == Verdict::Pass)
        .map(|(c, _)| c)
        .collect())
}

/// `A_A` as a module, for callers that need the regular module with its summands.
pub fn regular_module(a: &Arc<Algebra>) -> Module {
    regular(a)
}

#[cfg(test)]
mod tests;
