use std::sync::Arc;

use super::build::{Algebra, DEFAULT_LENGTH_CAP};
use super::quiver::{Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

/// A module literal from the DSL: dimension vector plus arrow matrices given
/// as rows of number strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleLiteral {
    pub name: String,
    pub dims: Vec<usize>,
    pub maps: Vec<(String, Vec<Vec<Scalar>>)>,
}

/// Parsed file: the algebra and any named module literals.
#[derive(Clone, Debug)]
pub struct Document {
    pub algebra: Arc<Algebra>,
    pub modules: Vec<ModuleLiteral>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
}

/// Column (1-based) of `needle` inside `line`, falling back to 1.
fn col_of(line: &str, needle: &str) -> usize {
    line.find(needle).map(|i| i + 1).unwrap_or(1)
}

pub fn parse_algebra(text: &str) -> Result<Arc<Algebra>> {
    Ok(parse_document(text)?.algebra)
}

pub fn parse_document(text: &str) -> Result<Document> {
    parse_document_with(text, None, DEFAULT_LENGTH_CAP)
}

/// Parses a document; `field_override` replaces the declared field.
pub fn parse_document_with(
    text: &str,
    field_override: Option<Field>,
    cap: usize,
) -> Result<Document> {
    let mut field = Field::Rationals;
    let mut quiver: Option<Quiver> = None;
    let mut raw_relations: Vec<(usize, String, String)> = Vec::new();
    let mut modules = Vec::new();
    let mut current: Option<(usize, ModuleLiteral, Vec<(usize, String, String)>)> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let kw = words.next().unwrap();
        if kw == "end" && current.is_some() {
            let (_, lit, maps) = current.take().unwrap();
            modules.push((lit, maps));
            continue;
        }
        if let Some((_, lit, maps)) = current.as_mut() {
            match kw {
                "dims" => {
                    lit.dims = words
                        .map(|w| {
                            w.parse::<usize>().map_err(|_| {
                                err(line_no, col_of(line, w), format!("bad dimension '{w}'"))
                            })
                        })
                        .collect::<Result<_>>()?;
                }
                "map" => {
                    let rest = trimmed["map".len()..].trim();
                    let (name, mat) = rest.split_once(char::is_whitespace).ok_or_else(|| {
                        err(
                            line_no,
                            col_of(line, "map"),
                            "expected 'map <arrow> <matrix>'",
                        )
                    })?;
                    maps.push((line_no, name.to_string(), mat.trim().to_string()));
                }
                _ => {
                    return Err(err(
                        line_no,
                        col_of(line, kw),
                        format!("unexpected '{kw}' inside module {}", lit.name),
                    ))
                }
            }
            continue;
        }
        match kw {
            "field" => {
                let words_left: Vec<&str> = words.collect();
                field = match words_left.as_slice() {
                    ["Q"] => Field::Rationals,
                    ["F", p] => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| err(line_no, col_of(line, p), "bad prime"))?;
                        Field::prime(p)
                            .map_err(|e| err(line_no, col_of(line, "F"), e.to_string()))?
                    }
                    _ => {
                        return Err(err(
                            line_no,
                            col_of(line, "field") + 6,
                            "expected 'Q' or 'F <prime>'",
                        ))
                    }
                };
            }
            "vertices" => {
                if quiver.is_some() {
                    return Err(err(line_no, 1, "vertices declared twice"));
                }
                let vs: Vec<String> = words.map(String::from).collect();
                if vs.is_empty() {
                    return Err(err(line_no, 9, "no vertices"));
                }
                for (i, v) in vs.iter().enumerate() {
                    if vs[..i].contains(v) {
                        return Err(err(
                            line_no,
                            col_of(line, v),
                            format!("duplicate vertex '{v}'"),
                        ));
                    }
                }
                quiver = Some(Quiver::new(vs));
            }
            "arrow" => {
                let q = quiver
                    .as_mut()
                    .ok_or_else(|| err(line_no, 1, "arrow before vertices"))?;
                let rest = trimmed["arrow".len()..].trim();
                let (name, ends) = rest.split_once(':').ok_or_else(|| {
                    err(
                        line_no,
                        col_of(line, rest),
                        "expected 'arrow name : u -> v'",
                    )
                })?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(err(
                        line_no,
                        col_of(line, name),
                        format!("bad arrow name '{name}'"),
                    ));
                }
                if q.arrow_index(name).is_some() {
                    return Err(err(
                        line_no,
                        col_of(line, name),
                        format!("duplicate arrow '{name}'"),
                    ));
                }
                let (u, v) = ends
                    .split_once("->")
                    .ok_or_else(|| err(line_no, col_of(line, ":"), "expected '->'"))?;
                let (u, v) = (u.trim(), v.trim());
                let ui = q.vertex_index(u).ok_or_else(|| {
                    err(line_no, col_of(line, u), format!("unknown vertex '{u}'"))
                })?;
                let vi = q.vertex_index(v).ok_or_else(|| {
                    err(
                        line_no,
                        line.rfind(v).unwrap_or(0) + 1,
                        format!("unknown vertex '{v}'"),
                    )
                })?;
                q.add_arrow(name, ui, vi);
            }
            "relation" => {
                if quiver.is_none() {
                    return Err(err(line_no, 1, "relation before vertices"));
                }
                raw_relations.push((
                    line_no,
                    line.to_string(),
                    trimmed["relation".len()..].trim().to_string(),
                ));
            }
            "module" => {
                let name = words
                    .next()
                    .ok_or_else(|| err(line_no, 7, "module needs a name"))?;
                if !is_ident(name) {
                    return Err(err(
                        line_no,
                        col_of(line, name),
                        format!("bad module name '{name}'"),
                    ));
                }
                let mut lit = ModuleLiteral {
                    name: name.to_string(),
                    dims: Vec::new(),
                    maps: Vec::new(),
                };
                if let Some("dims") = words.next() {
                    lit.dims = words
                        .map(|w| {
                            w.parse::<usize>().map_err(|_| {
                                err(line_no, col_of(line, w), format!("bad dimension '{w}'"))
                            })
                        })
                        .collect::<Result<_>>()?;
                }
                current = Some((line_no, lit, Vec::new()));
            }
            _ => {
                return Err(err(
                    line_no,
                    col_of(line, kw),
                    format!("unknown keyword '{kw}'"),
                ))
            }
        }
    }
    if let Some((start, lit, _)) = current {
        return Err(err(
            start,
            1,
            format!("module {} not closed with 'end'", lit.name),
        ));
    }
    let quiver = quiver.ok_or_else(|| err(1, 1, "missing 'vertices' line"))?;
    let field = field_override.unwrap_or(field);
    let mut relations = Vec::new();
    for (ln, line, body) in &raw_relations {
        relations.push(parse_relation(field, &quiver, *ln, line, body)?);
    }
    let algebra = Algebra::with_cap(field, quiver, relations, cap)?;
    let mut lits = Vec::new();
    for (mut lit, maps) in modules {
        if lit.dims.len() != algebra.n() {
            return Err(Error::Input(format!(
                "module {}: {} dimensions for {} vertices",
                lit.name,
                lit.dims.len(),
                algebra.n()
            )));
        }
        for (ln, name, mat) in maps {
            if algebra.quiver.arrow_index(&name).is_none() {
                return Err(err(ln, 1, format!("unknown arrow '{name}'")));
            }
            let rows = parse_matrix(field, &mat).map_err(|m| err(ln, 1, m))?;
            lit.maps.push((name, rows));
        }
        lits.push(lit);
    }
    Ok(Document {
        algebra,
        modules: lits,
    })
}

fn parse_matrix(field: Field, s: &str) -> std::result::Result<Vec<Vec<Scalar>>, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or("matrix must be [[..],..]")?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let r = rest.strip_prefix('[').ok_or("expected '['")?;
        let end = r.find(']').ok_or("unclosed row")?;
        let row: Vec<Scalar> = r[..end]
            .split(',')
            .map(|x| x.trim())
            .filter(|x| !x.is_empty())
            .map(|x| field.parse(x).map_err(|e| e.to_string()))
            .collect::<std::result::Result<_, _>>()?;
        rows.push(row);
        rest = r[end + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(rows)
}

fn parse_relation(field: Field, q: &Quiver, ln: usize, line: &str, body: &str) -> Result<Relation> {
    let base = col_of(line, body);
    let mut terms = Vec::new();
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    let mut sign = 1i64;
    let mut expect_term = true;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '+' || c == '-' {
            if !expect_term {
                expect_term = true;
                sign = if c == '-' { -1 } else { 1 };
            } else {
                sign *= if c == '-' { -1 } else { 1 };
            }
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && chars[i] != '+' && !(chars[i] == '-' && i > start) {
            i += 1;
        }
        let term: String = chars[start..i].iter().collect();
        let col = base + start;
        let factors: Vec<&str> = term.split('*').map(|x| x.trim()).collect();
        let mut coeff = field.from_i64(sign);
        let mut arrows = Vec::new();
        for (k, fac) in factors.iter().enumerate() {
            if fac.is_empty() {
                return Err(err(ln, col, "empty factor"));
            }
            if k == 0
                && fac
                    .chars()
                    .next()
                    .is_some_and(|ch| ch.is_ascii_digit() || ch == '(')
            {
                let num = fac.trim_start_matches('(').trim_end_matches(')');
                let v = field.parse(num).map_err(|e| err(ln, col, e.to_string()))?;
                coeff = field.mul(&coeff, &v);
                continue;
            }
            let a = q.arrow_index(fac).ok_or_else(|| {
                err(
                    ln,
                    col + term.find(fac).unwrap_or(0),
                    format!("unknown arrow '{fac}'"),
                )
            })?;
            arrows.push(a);
        }
        if arrows.is_empty() {
            return Err(err(ln, col, "term without a path"));
        }
        let p = Path::from_arrows(q, arrows).ok_or_else(|| {
            err(
                ln,
                col,
                format!("'{}' is not a composable path", term.trim()),
            )
        })?;
        if p.len() < 2 {
            return Err(err(ln, col, "relation paths must have length at least 2"));
        }
        terms.push((coeff, p));
        expect_term = false;
        sign = 1;
    }
    if terms.is_empty() {
        return Err(err(ln, base, "empty relation"));
    }
    let (s, t) = (terms[0].1.source, terms[0].1.target);
    if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
        return Err(err(ln, base, "relation paths not parallel"));
    }
    Ok(Relation { terms })
}

fn coeff_text(field: Field, c: &Scalar, first: bool) -> (String, String) {
    let neg = match field {
        Field::Rationals => !field.is_positive(c),
        Field::Prime(_) => false,
    };
    let mag = if neg { field.neg(c) } else { c.clone() };
    let sign = match (first, neg) {
        (true, true) => "-".to_string(),
        (true, false) => String::new(),
        (false, true) => " - ".to_string(),
        (false, false) => " + ".to_string(),
    };
    let body = if mag.is_one() {
        String::new()
    } else {
        format!("{mag}*")
    };
    (sign, body)
}

pub(crate) fn print_algebra_parts(field: Field, q: &Quiver, rels: &[Relation]) -> String {
    let mut s = String::new();
    s.push_str(&match field {
        Field::Rationals => "field Q\n".to_string(),
        Field::Prime(p) => format!("field F {p}\n"),
    });
    s.push_str(&format!("vertices {}\n", q.vertices.join(" ")));
    for a in &q.arrows {
        s.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.name, q.vertices[a.source], q.vertices[a.target]
        ));
    }
    for r in rels {
        s.push_str("relation ");
        for (k, (c, p)) in r.terms.iter().enumerate() {
            let (sign, body) = coeff_text(field, c, k == 0);
            s.push_str(&format!("{sign}{body}{}", q.path_text(p)));
        }
        s.push('\n');
    }
    s
}

/// Canonical DSL text for an algebra.
pub fn print_algebra(a: &Algebra) -> String {
    a.canonical_text().to_string()
}

/// Canonical DSL text for a document, module literals included.
pub fn print_document(d: &Document) -> String {
    let mut s = print_algebra(&d.algebra);
    for m in &d.modules {
        s.push_str(&format!(
            "module {} dims {}\n",
            m.name,
            m.dims
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        for (name, rows) in &m.maps {
            let body: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "[{}]",
                        r.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                })
                .collect();
            s.push_str(&format!("  map {name} [{}]\n", body.join(", ")));
        }
        s.push_str("end\n");
    }
    s
}
