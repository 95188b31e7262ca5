use super::decompose::indecomposable_summands;
use super::hom::{combination, hom};
use super::{direct_sum, rebase, ModuleMap};
use crate::error::Result;

/// `f = [0, map] : M' ⊕ M'' -> N` after the change of basis given by
/// `dropped : M' -> M` and `kept : M'' -> M`, with `map` right minimal.
#[derive(Clone, Debug)]
pub struct RightMinimal {
    pub map: ModuleMap,
    pub kept: ModuleMap,
    pub dropped: ModuleMap,
}

/// Dual of `RightMinimal`: `map = kept ∘ f` is left minimal and
/// `dropped ∘ f = 0`, where `[kept; dropped] : N -> N'' ⊕ N'` is invertible.
#[derive(Clone, Debug)]
pub struct LeftMinimal {
    pub map: ModuleMap,
    pub kept: ModuleMap,
    pub dropped: ModuleMap,
}

/// Strips summands of the source on which `f` is redundant. A summand
/// `M_k` is dropped when `f ι_k` factors as `Σ f ι_j a_j` over the other
/// active summands; then `ι_k - Σ ι_j a_j` spans a complement killed by `f`.
pub fn right_minimal(f: &ModuleMap) -> Result<RightMinimal> {
    let m = f.source();
    let parts = indecomposable_summands(m)?;
    let mut active = vec![true; parts.len()];
    let mut embeds: Vec<ModuleMap> = parts.iter().map(|s| s.inclusion.clone()).collect();
    for k in 0..parts.len() {
        let fk = f.compose(&parts[k].inclusion);
        if fk.is_zero() {
            active[k] = false;
            continue;
        }
        let mut gens = Vec::new();
        let mut lifts = Vec::new();
        for j in 0..parts.len() {
            if j == k || !active[j] {
                continue;
            }
            for a in hom(&parts[k].module, &parts[j].module)? {
                let lift = parts[j].inclusion.compose(&a);
                gens.push(f.compose(&lift));
                lifts.push(lift);
            }
        }
        if let Some(c) = combination(&gens, &fk) {
            let mut e = parts[k].inclusion.clone();
            for (l, x) in lifts.iter().zip(&c) {
                if !x.is_zero() {
                    e = e.sub(&l.scale(x));
                }
            }
            embeds[k] = e;
            active[k] = false;
        }
    }
    let a = m.algebra();
    let keep: Vec<usize> = (0..parts.len()).filter(|k| active[*k]).collect();
    let drop: Vec<usize> = (0..parts.len()).filter(|k| !active[*k]).collect();
    let kept_sum = direct_sum(
        a,
        &keep.iter().map(|k| &parts[*k].module).collect::<Vec<_>>(),
    );
    let drop_sum = direct_sum(
        a,
        &drop.iter().map(|k| &parts[*k].module).collect::<Vec<_>>(),
    );
    let kept = ModuleMap::from_columns(
        &kept_sum,
        m,
        &keep.iter().map(|k| embeds[*k].clone()).collect::<Vec<_>>(),
    );
    let dropped = ModuleMap::from_columns(
        &drop_sum,
        m,
        &drop.iter().map(|k| embeds[*k].clone()).collect::<Vec<_>>(),
    );
    Ok(RightMinimal {
        map: f.compose(&kept),
        kept,
        dropped,
    })
}

/// Left-minimal version, through duality.
pub fn left_minimal(f: &ModuleMap) -> Result<LeftMinimal> {
    let r = right_minimal(&f.dual())?;
    let a = f.source().algebra();
    let back = |g: &ModuleMap| {
        let d = g.dual();
        let s = rebase(a, d.source().clone());
        let t = rebase(a, d.target().clone());
        d.with_ends(&s, &t)
    };
    let kept = back(&r.kept);
    let dropped = back(&r.dropped);
    let map = kept.compose(f);
    Ok(LeftMinimal { map, kept, dropped })
}
