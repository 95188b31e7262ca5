use serde::Serialize;

use crate::exactlin::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Vertices are listed in stratification order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Self {
        Quiver {
            vertices,
            arrows: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) {
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
    }

    /// Arrows reversed, names kept, vertex order kept.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    pub fn path_text(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|a| self.arrows[*a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path composed left to right: `arrows[0]` first. Trivial paths carry
/// their vertex in both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Path> {
        let first = *arrows.first()?;
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return None;
            }
        }
        let last = *arrows.last().unwrap();
        Some(Path {
            source: q.arrows[first].source,
            target: q.arrows[last].target,
            arrows,
        })
    }

    pub fn concat(&self, o: &Path) -> Option<Path> {
        if self.target != o.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&o.arrows);
        Some(Path {
            source: self.source,
            target: o.target,
            arrows,
        })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn contains(&self, sub: &[usize]) -> bool {
        !sub.is_empty() && self.arrows.windows(sub.len()).any(|w| w == sub)
    }
}

/// Linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }
}
