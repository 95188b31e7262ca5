use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};
use strata_core::algebra::{Algebra, Document};
use strata_core::homext::is_stone;
use strata_core::module::{injective, is_brick, projective, simple, Module};
use strata_core::ringel::{ringel_dual, wakamatsu_check, RingelDual};
use strata_core::strata::{
    costandard_module, enumerate_choices, mixed_stratified_with, proper_costandard_module, Family,
    Membership, Strata, StrataChoice, Verdict,
};
use strata_core::systems::{
    build_cosystem, build_system, universal_extension_sequence, SystemReport, TraceStatus,
};
use strata_core::Error;

use crate::report::Status;
use crate::settings::Settings;

pub struct Outcome {
    pub status: Status,
    pub results: Value,
    pub text: String,
}

fn dims(m: &Module) -> Vec<usize> {
    m.dims().to_vec()
}

fn label(i: usize) -> usize {
    i + 1
}

pub fn info(doc: &Document) -> Result<Outcome> {
    let a = &doc.algebra;
    let q = &a.quiver;
    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .map(|x| json!({"name": x.name, "source": label(x.source), "target": label(x.target)}))
        .collect();
    let results = json!({
        "vertices": q.vertices,
        "arrows": arrows,
        "relations": a.relations.len(),
        "dim": a.dim(),
        "cartan": a.cartan(),
        "loewy_length": a.loewy_length(),
        "modules": doc.modules.iter().map(|m| &m.name).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    writeln!(text, "vertices      {}", q.vertices.join(" "))?;
    writeln!(text, "arrows        {}", q.arrows.len())?;
    writeln!(text, "relations     {}", a.relations.len())?;
    writeln!(text, "dim           {}", a.dim())?;
    writeln!(text, "loewy length  {}", a.loewy_length())?;
    writeln!(text, "cartan        {:?}", a.cartan())?;
    Ok(Outcome {
        status: Status::Pass,
        results,
        text,
    })
}

pub fn strata(doc: &Document) -> Result<Outcome> {
    let a = &doc.algebra;
    let s = Strata::new(a)?;
    let mut rows = Vec::new();
    let mut text =
        String::from("i  Δ          Δ̄          ∇          ∇̄          Δ stone  Δ̄ brick\n");
    for i in 0..a.n() {
        let nabla = costandard_module(a, i)?;
        let pnabla = proper_costandard_module(a, i)?;
        let stone = is_stone(&s.standard[i])?;
        let brick = is_brick(&s.proper[i])?;
        writeln!(
            text,
            "{:<2} {:<10} {:<10} {:<10} {:<10} {:<8} {}",
            label(i),
            format!("{:?}", dims(&s.standard[i])),
            format!("{:?}", dims(&s.proper[i])),
            format!("{:?}", dims(&nabla)),
            format!("{:?}", dims(&pnabla)),
            stone,
            brick
        )?;
        rows.push(json!({
            "index": label(i),
            "standard": dims(&s.standard[i]),
            "proper_standard": dims(&s.proper[i]),
            "costandard": dims(&nabla),
            "proper_costandard": dims(&pnabla),
            "standard_is_stone": stone,
            "standard_is_brick": is_brick(&s.standard[i])?,
            "proper_standard_is_brick": brick,
            "proper_standard_is_stone": is_stone(&s.proper[i])?,
        }));
    }
    Ok(Outcome {
        status: Status::Pass,
        results: json!({ "strata": rows }),
        text,
    })
}

fn membership_json(m: &Membership, family: &Family, target: &Module) -> Value {
    match m {
        Membership::Filtered(c) => json!({
            "filtered": true,
            "verified": c.verify(target, family),
            "layers": c.layers.iter().map(|l| label(l.index)).collect::<Vec<_>>(),
        }),
        Membership::NotFiltered { reason } => json!({"filtered": false, "reason": reason}),
        Membership::Undecided { nodes } => json!({"filtered": null, "nodes": nodes}),
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Pass => Status::Pass,
        Verdict::Fail => Status::Fail,
        Verdict::Undecided => Status::Undecided,
    }
}

pub fn check(
    doc: &Document,
    choice: Option<&StrataChoice>,
    all: bool,
    cfg: &Settings,
) -> Result<Outcome> {
    let a = &doc.algebra;
    if all {
        let rows = enumerate_choices(a, cfg.choice_bound)?;
        let mut text = String::new();
        let mut results = Vec::new();
        for (c, v) in &rows {
            writeln!(
                text,
                "{c}  {}",
                serde_json::to_value(v)?.as_str().unwrap_or_default()
            )?;
            results.push(json!({"choice": c.to_string(), "verdict": v}));
        }
        let status = if rows.iter().any(|(_, v)| *v == Verdict::Pass) {
            Status::Pass
        } else if rows.iter().any(|(_, v)| *v == Verdict::Undecided) {
            Status::Undecided
        } else {
            Status::Fail
        };
        return Ok(Outcome {
            status,
            results: json!({ "choices": results }),
            text,
        });
    }
    let choice = choice
        .cloned()
        .unwrap_or_else(|| StrataChoice::all_standard(a.n()));
    let s = Strata::new(a)?;
    let r = mixed_stratified_with(&s, &choice, cfg.node_budget)?;
    let family = Family::new(r.theta.clone())?;
    let mut text = format!(
        "choice {}: {}\n",
        choice,
        serde_json::to_value(r.verdict)?
            .as_str()
            .unwrap_or_default()
    );
    let mut certs = Vec::new();
    for (i, m) in r.memberships.iter().enumerate() {
        let p = projective(a, i)?;
        let j = membership_json(m, &family, &p);
        writeln!(text, "  e{}A  {}", label(i), j)?;
        certs.push(json!({"projective": label(i), "membership": j}));
    }
    let results = json!({
        "choice": choice.to_string(),
        "verdict": r.verdict,
        "family": r.theta.iter().map(dims).collect::<Vec<_>>(),
        "standardizable": family.report,
        "projectives": certs,
    });
    Ok(Outcome {
        status: verdict_status(r.verdict),
        results,
        text,
    })
}

fn system_status(r: &SystemReport) -> Status {
    if r.passed {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn system(
    doc: &Document,
    choice: Option<&StrataChoice>,
    cosystem: bool,
    cfg: &Settings,
) -> Result<Outcome> {
    let a = &doc.algebra;
    let choice = choice
        .cloned()
        .unwrap_or_else(|| StrataChoice::all_standard(a.n()));
    let family = Family::new(Strata::new(a)?.family(&choice)?)?;
    let cap = cfg.cap(a);
    let mut text = format!("choice {choice}\n");
    let (rows, report) = if cosystem {
        let co = build_cosystem(&family, cap)?;
        let rows: Vec<Value> = co
            .conflations
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "index": label(i),
                    "theta": dims(&c.left),
                    "injective": dims(&c.middle),
                    "cokernel": dims(&c.right),
                    "cokernel_filtered": co.cokernel_certificates[i].is_filtered(),
                })
            })
            .collect();
        (rows, co.report)
    } else {
        let sys = build_system(&family, cap)?;
        let rows: Vec<Value> = sys
            .conflations
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "index": label(i),
                    "kernel": dims(&c.left),
                    "projective": dims(&c.middle),
                    "theta": dims(&c.right),
                    "kernel_filtered": sys.kernel_certificates[i].is_filtered(),
                })
            })
            .collect();
        (rows, sys.report)
    };
    for r in &rows {
        writeln!(text, "  {r}")?;
    }
    writeln!(
        text,
        "axioms {}",
        if report.passed { "hold" } else { "fail" }
    )?;
    let status = system_status(&report);
    Ok(Outcome {
        status,
        results: json!({"choice": choice.to_string(), "kind": if cosystem { "cosystem" } else { "system" }, "members": rows, "report": report}),
        text,
    })
}

fn arrow_list(a: &Algebra) -> Vec<Value> {
    a.quiver
        .arrows
        .iter()
        .map(|x| json!({"name": x.name, "source": label(x.source), "target": label(x.target)}))
        .collect()
}

#[derive(Serialize)]
struct Layers {
    dim: bool,
    cartan: bool,
    arrow_counts: bool,
    isomorphism: bool,
}

pub fn ringel(doc: &Document, choice: Option<&StrataChoice>, cfg: &Settings) -> Result<Outcome> {
    let a = &doc.algebra;
    let choice = choice
        .cloned()
        .unwrap_or_else(|| StrataChoice::all_standard(a.n()));
    let r: RingelDual = ringel_dual(a, &choice, cfg.cap(a))?;
    let c = &r.presentation.algebra;
    let dd = &r.double_dual;
    let cogen =
        strata_core::module::direct_sum(a, &r.cosystem.injectives.iter().collect::<Vec<_>>())
            .module;
    let degree_cap = cfg
        .degree_cap
        .unwrap_or_else(|| strata_core::homext::default_degree_cap(&cogen));
    let wak = wakamatsu_check(&cogen, degree_cap, cfg.coresolution_cap)?;
    let layers = Layers {
        dim: dd.dim_matches,
        cartan: dd.cartan_matches,
        arrow_counts: dd.arrow_counts_match,
        isomorphism: dd.isomorphism == strata_core::systems::Check::Holds,
    };
    let summary = r.presentation.summary();
    let mut text = format!("choice {choice}\n");
    writeln!(
        text,
        "dual: {} vertices, dim {}, complete {}",
        c.n(),
        c.dim(),
        r.presentation.complete
    )?;
    for (u, row) in summary.arrow_counts.iter().enumerate() {
        for (v, k) in row.iter().enumerate() {
            if *k > 0 {
                writeln!(text, "  {} -> {}: {}", label(u), label(v), k)?;
            }
        }
    }
    writeln!(
        text,
        "double dual layers: {}",
        serde_json::to_string(&layers)?
    )?;
    writeln!(
        text,
        "cogenerator: wakamatsu {:?}, tilting {:?}",
        wak.wakamatsu, wak.tilting
    )?;
    let results = json!({
        "choice": choice.to_string(),
        "cogenerator": r.cosystem.injectives.iter().map(dims).collect::<Vec<_>>(),
        "dual": {
            "vertices": c.n(),
            "dim": c.dim(),
            "arrows": arrow_list(c),
            "arrow_counts": summary.arrow_counts,
            "relations": summary.relations,
            "complete": summary.complete,
            "cartan": c.cartan(),
            "length_bound": r.presentation.length_bound,
        },
        "images": {
            "family": r.phi_theta.iter().map(dims).collect::<Vec<_>>(),
            "regular": r.phi_projectives.iter().map(dims).collect::<Vec<_>>(),
        },
        "system": r.system,
        "cosystem": r.cosystem_report,
        "double_dual": {
            "dim": dd.dim,
            "cartan_algebra": dd.cartan.0,
            "cartan_double_dual": dd.cartan.1,
            "arrow_counts_algebra": dd.arrow_counts.0,
            "arrow_counts_double_dual": dd.arrow_counts.1,
            "layers": layers,
        },
        "wakamatsu": wak,
    });
    let status = if r.passed { Status::Pass } else { Status::Fail };
    Ok(Outcome {
        status,
        results,
        text,
    })
}

/// `P3`, `I3`, `S3`, `D3` (standard), `Dbar3` (proper standard) or the
/// name of a module given in the file.
pub fn resolve_module(doc: &Document, name: &str) -> Result<Module> {
    let a: &Arc<Algebra> = &doc.algebra;
    if let Some(lit) = doc.modules.iter().find(|m| m.name == name) {
        return Ok(Module::from_literal(a, lit)?);
    }
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Input(format!("unknown module {name}")))?;
    let (kind, idx) = name.split_at(split);
    let i: usize = idx
        .parse()
        .map_err(|_| Error::Input(format!("bad index in {name}")))?;
    if i == 0 || i > a.n() {
        return Err(Error::Input(format!("vertex {i} out of range in {name}")).into());
    }
    let i = i - 1;
    Ok(match kind {
        "P" => projective(a, i)?,
        "I" => injective(a, i)?,
        "S" => simple(a, i)?,
        "D" => Strata::new(a)?.standard[i].clone(),
        "Dbar" => Strata::new(a)?.proper[i].clone(),
        _ => return Err(Error::Input(format!("unknown module {name}")).into()),
    })
}

pub fn univext(doc: &Document, m: &str, n: &str, cfg: &Settings) -> Result<Outcome> {
    let mm = resolve_module(doc, m)?;
    let nn = resolve_module(doc, n)?;
    let cap = cfg.cap.unwrap_or(8);
    let t = universal_extension_sequence(&mm, &nn, cap)?;
    let certified = t
        .kernels
        .iter()
        .zip(&t.certificates)
        .all(|(k, c)| c.verify(&k.module, &t.family));
    let mut text = format!("{m} by {n}: {:?}\n", t.status);
    for (s, d) in t.dim_vectors().iter().enumerate() {
        writeln!(text, "  P{s} {d:?}")?;
    }
    let status = match t.status {
        TraceStatus::Stabilized { .. } => Status::Pass,
        TraceStatus::CapExceeded { .. } => Status::CapExceeded,
    };
    let results = json!({
        "module": m,
        "by": n,
        "trace": t.status,
        "dims": t.dim_vectors(),
        "ext_ranks": t.d,
        "kernel_certificates_verified": certified,
    });
    Ok(Outcome {
        status,
        results,
        text,
    })
}

pub fn cap_error(e: &anyhow::Error) -> bool {
    matches!(e.downcast_ref::<Error>(), Some(Error::Cap { .. }))
}

pub fn input_error(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::Parse { .. } | Error::Input(_) | Error::NotAdmissible(_) | Error::Index(_))
    ) || e.downcast_ref::<std::io::Error>().is_some()
        || e.downcast_ref::<toml::de::Error>().is_some()
}
