use std::collections::HashMap;
use std::sync::{Arc, OnceLock, Weak};

use super::dsl;
use super::quiver::{Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, Echelon, Field, Scalar, SparseVec};

pub const DEFAULT_LENGTH_CAP: usize = 64;
const PATH_LIMIT: usize = 200_000;

/// Basic algebra `kQ/I` with an explicit path basis and structure constants.
#[derive(Debug)]
pub struct Algebra {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    mult: Vec<SparseVec>,
    cand_index: HashMap<Path, usize>,
    ideal: Echelon,
    cand_to_basis: Vec<Option<usize>>,
    loewy: usize,
    canon: String,
    opposite: OnceLock<Arc<Algebra>>,
    origin: OnceLock<Weak<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        self.canon == o.canon
    }
}

impl Eq for Algebra {}

fn validate(field: Field, q: &Quiver, rels: &[Relation]) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for r in rels {
        if r.terms.is_empty() {
            continue;
        }
        let (s, t) = (r.source(), r.target());
        let mut merged: Vec<(Scalar, Path)> = Vec::new();
        for (c, p) in &r.terms {
            if p.len() < 2 {
                return Err(Error::Input(format!(
                    "relation path {} has length < 2",
                    q.path_text(p)
                )));
            }
            if p.source != s || p.target != t {
                return Err(Error::Input(format!(
                    "relation paths not parallel: {}",
                    q.path_text(p)
                )));
            }
            match merged.iter_mut().find(|(_, x)| x == p) {
                Some(e) => e.0 = field.add(&field.from_big(&c.to_big())?, &e.0),
                None => merged.push((field.from_big(&c.to_big())?, p.clone())),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        if !merged.is_empty() {
            out.push(Relation { terms: merged });
        }
    }
    Ok(out)
}

impl Algebra {
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>) -> Result<Arc<Algebra>> {
        Self::with_cap(field, quiver, relations, DEFAULT_LENGTH_CAP)
    }

    /// Builds the algebra, enumerating paths layer by layer until every path
    /// of some length lies in the relation ideal.
    pub fn with_cap(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        cap: usize,
    ) -> Result<Arc<Algebra>> {
        Self::with_limits(field, quiver, relations, cap, PATH_LIMIT)
    }

    /// As `with_cap`, also bounding the number of enumerated paths.
    pub fn with_limits(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        cap: usize,
        path_limit: usize,
    ) -> Result<Arc<Algebra>> {
        let relations = validate(field, &quiver, &relations)?;
        let monomials: Vec<Vec<usize>> = relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| r.terms[0].1.arrows.clone())
            .collect();
        let general: Vec<&Relation> = relations.iter().filter(|r| !r.is_monomial()).collect();

        // layers[L] = paths of length L avoiding monomial relations
        let mut layers: Vec<Vec<Path>> = vec![(0..quiver.n()).map(Path::trivial).collect()];
        let mut total = quiver.n();
        let mut found = None;
        for len in 1..=cap {
            let mut next = Vec::new();
            for p in &layers[len - 1] {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source != p.target {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let bad = monomials
                        .iter()
                        .any(|m| arrows.len() >= m.len() && arrows.ends_with(m));
                    if !bad {
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            total += next.len();
            if total > path_limit {
                return Err(Error::NotAdmissible(format!(
                    "more than {path_limit} paths below length {len}"
                )));
            }
            layers.push(next);
            if layers[len].is_empty() {
                found = Some(len);
                break;
            }
            if !general.is_empty() {
                let (_, index, ideal) = ideal_upto(field, &layers, &general);
                if layers[len]
                    .iter()
                    .all(|p| ideal.contains(&vec![(index[p], Scalar::one())]))
                {
                    found = Some(len);
                    break;
                }
            }
        }
        let Some(len) = found else {
            return Err(Error::NotAdmissible(format!(
                "path layer of length {cap} does not vanish"
            )));
        };
        let (cands, cand_index, ideal) = ideal_upto(field, &layers, &general);
        let mut basis: Vec<Path> = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| !ideal.is_pivot(*i))
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort_by(|a, b| (a.source, a.len(), &a.arrows).cmp(&(b.source, b.len(), &b.arrows)));
        let basis_index: HashMap<Path, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let cand_to_basis = cands.iter().map(|p| basis_index.get(p).copied()).collect();
        let canon = dsl::print_algebra_parts(field, &quiver, &relations);
        let mut alg = Algebra {
            field,
            quiver,
            relations,
            basis,
            basis_index,
            mult: Vec::new(),
            cand_index,
            ideal,
            cand_to_basis,
            loewy: 0,
            canon,
            opposite: OnceLock::new(),
            origin: OnceLock::new(),
        };
        let d = alg.basis.len();
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                mult.push(match alg.basis[i].concat(&alg.basis[j]) {
                    Some(p) => alg.normal_form(&p),
                    None => Vec::new(),
                });
            }
        }
        alg.mult = mult;
        alg.loewy = (0..=len)
            .find(|m| {
                layers
                    .get(*m)
                    .is_none_or(|l| l.iter().all(|p| alg.normal_form(p).is_empty()))
            })
            .unwrap_or(len);
        Ok(Arc::new(alg))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Index of the trivial path at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.basis_index[&Path::trivial(v)]
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    /// Canonical DSL text of the presentation; equal texts mean equal algebras.
    pub fn canonical_text(&self) -> &str {
        &self.canon
    }

    /// Expresses a path in the basis.
    pub fn normal_form(&self, p: &Path) -> SparseVec {
        let Some(&ci) = self.cand_index.get(p) else {
            return Vec::new();
        };
        let r = self.ideal.reduce(&vec![(ci, Scalar::one())]);
        let mut out: SparseVec = r
            .into_iter()
            .map(|(c, x)| (self.cand_to_basis[c].unwrap(), x))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Product of basis elements `i * j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut out: SparseVec = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let p = self.mul_basis(*i, *j);
                if !p.is_empty() {
                    out = axpy(f, &out, &f.mul(x, y), p);
                }
            }
        }
        out
    }

    /// Basis indices lying in `e_u A e_v`.
    pub fn block(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|i| self.basis[*i].source == u && self.basis[*i].target == v)
            .collect()
    }

    /// Matrix of `dim e_u A e_v`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut c = vec![vec![0; n]; n];
        for p in &self.basis {
            c[p.source][p.target] += 1;
        }
        c
    }

    /// Number of arrows from `u` to `v`, as a matrix.
    pub fn arrow_counts(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut c = vec![vec![0; n]; n];
        for a in &self.quiver.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    /// Opposite algebra: arrows and relation paths reversed, same vertex order.
    /// The opposite of an opposite is the original `Arc` while it is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(a) = self.origin.get().and_then(Weak::upgrade) {
            return a;
        }
        self.opposite
            .get_or_init(|| {
                let rels = self.relations.iter().map(|r| r.reversed()).collect();
                let op = Algebra::new(self.field, self.quiver.opposite(), rels)
                    .expect("opposite of an admissible algebra");
                let _ = op.origin.set(Arc::downgrade(self));
                op
            })
            .clone()
    }

    pub fn path_text(&self, i: usize) -> String {
        self.quiver.path_text(&self.basis[i])
    }
}

type IdealData = (Vec<Path>, HashMap<Path, usize>, Echelon);

/// Candidate paths ordered longest first and the span of all multiples
/// `p r q` of non-monomial relations, truncated to the available lengths.
fn ideal_upto(field: Field, layers: &[Vec<Path>], general: &[&Relation]) -> IdealData {
    let mut cands: Vec<Path> = layers.iter().flatten().cloned().collect();
    cands.sort_by(|a, b| {
        (b.len(), a.source, a.target, &a.arrows).cmp(&(a.len(), b.source, b.target, &b.arrows))
    });
    let index: HashMap<Path, usize> = cands
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut ideal = Echelon::new(field, cands.len());
    if general.is_empty() {
        return (cands, index, ideal);
    }
    // closure of the relations under left and right multiplication by
    // arrows; terms that leave the candidate set vanish
    let mut queue: Vec<Vec<(Scalar, Path)>> = general.iter().map(|r| r.terms.clone()).collect();
    let arrows: Vec<Path> = layers.get(1).cloned().unwrap_or_default();
    while let Some(terms) = queue.pop() {
        let mut v: SparseVec = terms
            .iter()
            .filter_map(|(c, p)| index.get(p).map(|ci| (*ci, c.clone())))
            .collect();
        v.sort_by_key(|e| e.0);
        if v.is_empty() || ideal.insert(&v).is_none() {
            continue;
        }
        for a in &arrows {
            let left: Vec<(Scalar, Path)> = terms
                .iter()
                .filter_map(|(c, p)| {
                    a.concat(p)
                        .filter(|x| index.contains_key(x))
                        .map(|x| (c.clone(), x))
                })
                .collect();
            let right: Vec<(Scalar, Path)> = terms
                .iter()
                .filter_map(|(c, p)| {
                    p.concat(a)
                        .filter(|x| index.contains_key(x))
                        .map(|x| (c.clone(), x))
                })
                .collect();
            for t in [left, right] {
                if !t.is_empty() {
                    queue.push(t);
                }
            }
        }
    }
    (cands, index, ideal)
}
