use serde::Serialize;

use crate::error::{Error, Result};
use crate::homext::{ext1, restrict_into, universal_extension_in, Conflation};
use crate::module::{is_indecomposable, kernel, power, preimage, Module, ModuleMap, Sub};
use crate::strata::{Family, FiltrationCertificate, Layer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TraceStatus {
    /// `Ext^1(P_at, N) = 0`.
    Stabilized {
        at: usize,
    },
    CapExceeded {
        cap: usize,
    },
}

/// `M = P_0 <- P_1 <- P_2 <- ...`, each step a universal extension by `N`.
#[derive(Clone, Debug)]
pub struct UnivExtTrace {
    pub target: Module,
    pub modules: Vec<Module>,
    /// `a_s : P_s -> P_{s-1}`, for `s >= 1`.
    pub deflations: Vec<ModuleMap>,
    /// `d_s`, the rank over `D_N` of `Ext^1(P_{s-1}, N)`, for `s >= 1`.
    pub d: Vec<usize>,
    /// Kernel of `P_s -> M`, for `s >= 0`.
    pub kernels: Vec<Sub>,
    pub certificates: Vec<FiltrationCertificate>,
    /// The one-member family `(N)` the certificates refer to.
    pub family: Family,
    pub status: TraceStatus,
    composite: ModuleMap,
}

impl UnivExtTrace {
    pub fn steps(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn last(&self) -> &Module {
        self.modules.last().expect("P_0 is present")
    }

    /// The composite `P_s -> M`.
    pub fn deflation(&self) -> ModuleMap {
        self.composite.clone()
    }

    pub fn conflation(&self) -> Conflation {
        let k = self.kernels.last().expect("K_0 is present");
        Conflation {
            left: k.module.clone(),
            middle: self.last().clone(),
            right: self.modules[0].clone(),
            inclusion: k.map.clone(),
            projection: self.composite.clone(),
        }
    }

    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        self.modules.iter().map(|m| m.dims().to_vec()).collect()
    }
}

/// Filtration of `K_s` by copies of `N`: the `d` copies in the kernel of
/// `a_s` at the bottom, then preimages of the layers of `K_{s-1}`.
fn kernel_certificate(
    n: &Module,
    d: usize,
    into_p: &ModuleMap,
    k: &Sub,
    a: &ModuleMap,
    prev: &Sub,
    prev_cert: &FiltrationCertificate,
) -> Result<FiltrationCertificate> {
    let nd = power(n, d);
    let into_k = restrict_into(&k.map, into_p)?;
    let mut layers = Vec::new();
    for c in 1..=d {
        let part = power(n, c);
        let emb = ModuleMap::from_columns(&part, &nd.module, &nd.injections[..c]);
        layers.push(Layer {
            inclusion: into_k.compose(&emb),
            index: 0,
            witness: part.projections[c - 1].clone(),
        });
    }
    let b = restrict_into(&prev.map, &a.compose(&k.map))?;
    for l in &prev_cert.layers {
        let y = preimage(&b, &l.inclusion);
        let r = restrict_into(&l.inclusion, &b.compose(&y.map))?;
        layers.push(Layer {
            inclusion: y.map,
            index: 0,
            witness: l.witness.compose(&r),
        });
    }
    Ok(FiltrationCertificate { layers })
}

/// Iterates universal extensions by `n` until `Ext^1(P_s, N) = 0` or
/// `cap` steps have been taken.
pub fn universal_extension_sequence(m: &Module, n: &Module, cap: usize) -> Result<UnivExtTrace> {
    if n.is_zero() || !is_indecomposable(n)? {
        return Err(Error::Precondition(
            "universal extensions by a decomposable module".into(),
        ));
    }
    let family = Family::new(vec![n.clone()])?;
    let zero = kernel(&m.identity());
    let mut t = UnivExtTrace {
        target: n.clone(),
        modules: vec![m.clone()],
        deflations: Vec::new(),
        d: Vec::new(),
        kernels: vec![zero],
        certificates: vec![FiltrationCertificate::default()],
        family,
        status: TraceStatus::CapExceeded { cap },
        composite: m.identity(),
    };
    loop {
        let s = t.steps();
        let ext = ext1(t.last(), n)?;
        if ext.dim() == 0 {
            t.status = TraceStatus::Stabilized { at: s };
            return Ok(t);
        }
        if s >= cap {
            return Ok(t);
        }
        let u = universal_extension_in(&ext)?;
        let c = u.conflation;
        let composite = t.composite.compose(&c.projection);
        let k = kernel(&composite);
        let cert = kernel_certificate(
            n,
            u.d,
            &c.inclusion,
            &k,
            &c.projection,
            &t.kernels[s],
            &t.certificates[s],
        )?;
        t.modules.push(c.middle);
        t.deflations.push(c.projection);
        t.d.push(u.d);
        t.kernels.push(k);
        t.certificates.push(cert);
        t.composite = composite;
    }
}
