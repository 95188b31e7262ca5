use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_mixed_standardizable, StandardizableReport};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::homext::restrict_into;
use crate::module::{hom, kernel, same_algebra, top, Module, ModuleMap, Sub};

pub const DEFAULT_NODE_BUDGET: usize = 10_000;

const RANDOM_TRIES: usize = 24;

/// An ordered family with vanishing backward maps and extensions, with the
/// per-member data the membership search relies on.
#[derive(Clone, Debug)]
pub struct Family {
    modules: Vec<Module>,
    local: Vec<bool>,
    pub report: StandardizableReport,
}

impl Family {
    pub fn new(modules: Vec<Module>) -> Result<Family> {
        let Some(first) = modules.first() else {
            return Err(Error::Input("empty family".into()));
        };
        if modules
            .iter()
            .any(|m| !same_algebra(m.algebra(), first.algebra()))
        {
            return Err(Error::AlgebraMismatch);
        }
        if modules.iter().any(|m| m.is_zero()) {
            return Err(Error::Precondition("family member is zero".into()));
        }
        let report = verify_mixed_standardizable(&modules)?;
        if let Some((i, j)) = report.ms2_witness {
            return Err(Error::Precondition(format!(
                "nonzero map from member {} to member {}",
                i + 1,
                j + 1
            )));
        }
        if let Some((i, j)) = report.ms3_witness {
            return Err(Error::Precondition(format!(
                "nonzero extension of member {} by member {}",
                i + 1,
                j + 1
            )));
        }
        let local = modules.iter().map(|m| top(m).module.dim() == 1).collect();
        Ok(Family {
            modules,
            local,
            report,
        })
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }
}

/// One step `X_{k-1} ⊂ X_k ⊂ M` of a filtration: `inclusion` embeds `X_k`
/// and `witness : X_k -> Θ(index)` is onto with kernel `X_{k-1}`.
#[derive(Clone, Debug)]
pub struct Layer {
    pub inclusion: ModuleMap,
    pub index: usize,
    pub witness: ModuleMap,
}

/// Layers from the bottom up; indices weakly decrease going up.
#[derive(Clone, Debug, Default)]
pub struct FiltrationCertificate {
    pub layers: Vec<Layer>,
}

impl FiltrationCertificate {
    pub fn indices(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.index).collect()
    }

    /// Rechecks every inclusion, witness and kernel from scratch.
    pub fn verify(&self, m: &Module, family: &Family) -> bool {
        let mut prev: Option<&ModuleMap> = None;
        let mut prev_dim = 0;
        for (k, l) in self.layers.iter().enumerate() {
            let Some(theta) = family.modules.get(l.index) else {
                return false;
            };
            let x = l.inclusion.source();
            if l.inclusion.target() != m || !l.inclusion.is_injective() {
                return false;
            }
            if l.witness.source() != x || l.witness.target() != theta || !l.witness.is_surjective()
            {
                return false;
            }
            if x.dim() != prev_dim + theta.dim() {
                return false;
            }
            if k > 0 && l.index > self.layers[k - 1].index {
                return false;
            }
            if let Some(p) = prev {
                match restrict_into(&l.inclusion, p) {
                    Ok(r) if l.witness.compose(&r).is_zero() => {}
                    _ => return false,
                }
            }
            prev = Some(&l.inclusion);
            prev_dim = x.dim();
        }
        prev_dim == m.dim() && prev.map_or(m.is_zero(), |p| p.is_surjective())
    }
}

#[derive(Clone, Debug)]
pub enum Membership {
    Filtered(FiltrationCertificate),
    NotFiltered {
        reason: String,
    },
    /// The node budget ran out, or a surjection could not be found.
    Undecided {
        nodes: usize,
    },
}

impl Membership {
    pub fn is_filtered(&self) -> bool {
        matches!(self, Membership::Filtered(_))
    }
}

enum Outcome {
    Found(Vec<Layer>),
    No(String),
    Unknown,
}

struct Search<'a> {
    family: &'a Family,
    budget: usize,
    nodes: usize,
    rng: ChaCha8Rng,
}

/// Top-down peeling: the top layer of an ordered filtration uses the least
/// index `j` with `Hom(X, Θ(j)) ≠ 0`, and the search removes one copy of
/// `Θ(j)` at a time. For a local `Θ(j)` every surjection has a filtered
/// kernel as soon as `X` is filtered; other members are backtracked over.
pub fn filtration_membership(m: &Module, family: &Family, budget: usize) -> Result<Membership> {
    if !same_algebra(m.algebra(), family.modules[0].algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let mut s = Search {
        family,
        budget,
        nodes: 0,
        rng: ChaCha8Rng::seed_from_u64(0x5eed),
    };
    let root = Sub {
        module: m.clone(),
        map: m.identity(),
    };
    Ok(match s.peel(&root, 0)? {
        Outcome::Found(layers) => Membership::Filtered(FiltrationCertificate { layers }),
        Outcome::No(reason) => Membership::NotFiltered { reason },
        Outcome::Unknown => Membership::Undecided { nodes: s.nodes },
    })
}

fn covers(maps: &[ModuleMap], target: &Module) -> bool {
    let f = target.field();
    (0..target.dims().len()).all(|v| {
        let mut acc = Matrix::zeros(f, target.dims()[v], 0);
        for h in maps {
            acc = acc.hstack(h.comp(v));
        }
        acc.rank() == target.dims()[v]
    })
}

impl Search<'_> {
    fn peel(&mut self, x: &Sub, lowest: usize) -> Result<Outcome> {
        if x.module.is_zero() {
            return Ok(Outcome::Found(Vec::new()));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Ok(Outcome::Unknown);
        }
        let mut found = None;
        for (j, theta) in self.family.modules.iter().enumerate() {
            let hs = hom(&x.module, theta)?;
            if !hs.is_empty() {
                found = Some((j, hs));
                break;
            }
        }
        let Some((j, hs)) = found else {
            return Ok(Outcome::No(format!(
                "submodule of dimension {} has no map to the family",
                x.module.dim()
            )));
        };
        if j < lowest {
            return Ok(Outcome::No(format!(
                "submodule maps onto member {} below member {}",
                j + 1,
                lowest + 1
            )));
        }
        let theta = &self.family.modules[j];
        if x.module.dims().iter().zip(theta.dims()).any(|(a, b)| a < b) || !covers(&hs, theta) {
            return Ok(Outcome::No(format!("no surjection onto member {}", j + 1)));
        }
        let surj: Vec<&ModuleMap> = hs.iter().filter(|h| h.is_surjective()).collect();
        if self.family.local[j] {
            return match surj.first() {
                Some(s) => self.descend(x, j, s),
                None => Ok(Outcome::No(format!("no surjection onto member {}", j + 1))),
            };
        }
        if self.family.report.bricks[j] {
            let s = match surj.first() {
                Some(s) => Some((*s).clone()),
                None => self.random_surjection(&hs),
            };
            return match s {
                Some(s) => self.descend(x, j, &s),
                None => Ok(Outcome::Unknown),
            };
        }
        let mut unknown = false;
        for s in &surj {
            match self.descend(x, j, s)? {
                Outcome::Found(l) => return Ok(Outcome::Found(l)),
                Outcome::No(_) => {}
                Outcome::Unknown => unknown = true,
            }
        }
        if unknown || !self.family.report.stones[j] {
            Ok(Outcome::Unknown)
        } else {
            Ok(Outcome::No(format!(
                "no surjection onto member {} has a filtered kernel",
                j + 1
            )))
        }
    }

    fn random_surjection(&mut self, hs: &[ModuleMap]) -> Option<ModuleMap> {
        let f = hs[0].source().field();
        for _ in 0..RANDOM_TRIES {
            let mut acc = ModuleMap::zero(hs[0].source(), hs[0].target());
            for h in hs {
                acc = acc.add(&h.scale(&f.from_i64(self.rng.gen_range(-4..=4))));
            }
            if acc.is_surjective() {
                return Some(acc);
            }
        }
        None
    }

    fn descend(&mut self, x: &Sub, j: usize, s: &ModuleMap) -> Result<Outcome> {
        let k = kernel(s);
        let child = Sub {
            map: x.map.compose(&k.map),
            module: k.module,
        };
        Ok(match self.peel(&child, j)? {
            Outcome::Found(mut layers) => {
                layers.push(Layer {
                    inclusion: x.map.clone(),
                    index: j,
                    witness: s.clone(),
                });
                Outcome::Found(layers)
            }
            other => other,
        })
    }
}
