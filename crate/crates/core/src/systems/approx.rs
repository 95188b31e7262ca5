use super::{build_cosystem, build_projective_over};
use crate::error::Result;
use crate::homext::{pullback, restrict_into, Conflation};
use crate::module::{
    cokernel, direct_sum, factor_from, hom, image, left_minimal, power, Module, ModuleMap,
};
use crate::strata::Family;

#[derive(Clone, Debug)]
pub struct LeftApproximation {
    /// Left minimal `M -> E` with `E` filtered.
    pub map: ModuleMap,
    /// Every map from `M` to a member factors through `map`.
    pub verified: bool,
}

/// Kills the part of `M` invisible to the injective cogenerator, embeds
/// the rest into copies of it, and pulls back along the relative
/// projective cover of the cokernel.
pub fn left_approximation(m: &Module, family: &Family, cap: usize) -> Result<LeftApproximation> {
    let a = m.algebra();
    let co = build_cosystem(family, cap)?;
    let cogen = direct_sum(a, &co.injectives.iter().collect::<Vec<_>>()).module;
    let hs = hom(m, &cogen)?;
    let phi = if hs.is_empty() {
        ModuleMap::zero(m, &Module::zero(a))
    } else {
        let x = power(&cogen, hs.len());
        let g = ModuleMap::from_rows(m, &x, &hs);
        let img = image(&g);
        let onto = restrict_into(&img.map, &g)?;
        let c = cokernel(&img.map);
        let embed = Conflation {
            left: img.module.clone(),
            middle: x.module.clone(),
            right: c.module.clone(),
            inclusion: img.map.clone(),
            projection: c.map,
        };
        let po = build_projective_over(&c.module, family, cap)?;
        let e = pullback(&embed, &po.conflation.projection);
        let approx = e.inclusion.compose(&onto);
        left_minimal(&approx)?.map
    };
    let mut verified = true;
    for t in family.modules() {
        for h in hom(m, t)? {
            if factor_from(&phi, &h)?.is_none() {
                verified = false;
            }
        }
    }
    Ok(LeftApproximation { map: phi, verified })
}
