use super::{Field, Scalar};

/// Sparse vector: sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c*b` on sparse vectors.
pub fn axpy(field: Field, a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(field: Field, c: &Scalar, v: &SparseVec) -> SparseVec {
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Incrementally maintained reduced row echelon form. Every stored row has
/// leading coefficient one, and pivot columns appear in no other row, so the
/// final form depends only on the row space. Rows may optionally carry a
/// record of how they combine the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub ncols: usize,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            combos: Vec::new(),
            pivot_row: vec![None; ncols],
            inserted: 0,
            track: false,
        }
    }

    /// Variant that records, for each row, its expression in the inserted
    /// vectors, so membership queries can return coordinates.
    pub fn tracking(field: Field, ncols: usize) -> Self {
        let mut e = Self::new(field, ncols);
        e.track = true;
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    /// Remainder of `v` modulo the row space, plus (when tracking) the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce_with(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let f = self.field;
        let mut r = v.clone();
        let mut combo: SparseVec = Vec::new();
        // pivot columns of r never reappear after elimination, since pivot
        // rows contain no other pivot columns
        let hits: Vec<(usize, Scalar)> = r
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|k| (k, x.clone())))
            .collect();
        for (k, x) in hits {
            let m = f.neg(&x);
            r = axpy(f, &r, &m, &self.rows[k]);
            if self.track {
                combo = axpy(f, &combo, &x, &self.combos[k]);
            }
        }
        (r, combo)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a vector; returns its new pivot column if it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let f = self.field;
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce_with(v);
        if r.is_empty() {
            return None;
        }
        let (pc, lead) = r[0].clone();
        let inv = f.inv(&lead);
        let row = scale(f, &inv, &r);
        let mut own: SparseVec = Vec::new();
        if self.track {
            // row = inv * (v - combo)
            let unit = vec![(idx, Scalar::one())];
            own = scale(f, &inv, &axpy(f, &unit, &f.neg(&Scalar::one()), &combo));
        }
        for k in 0..self.rows.len() {
            if let Ok(pos) = self.rows[k].binary_search_by_key(&pc, |e| e.0) {
                let m = f.neg(&self.rows[k][pos].1);
                self.rows[k] = axpy(f, &self.rows[k], &m, &row);
                if self.track {
                    self.combos[k] = axpy(f, &self.combos[k], &m, &own);
                }
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(row);
        if self.track {
            self.combos.push(own);
        }
        Some(pc)
    }

    /// Coordinates of `v` in terms of the inserted vectors (only meaningful
    /// on a tracking echelon whose inserted vectors were independent).
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (r, combo) = self.reduce_with(v);
        if r.is_empty() {
            Some(combo)
        } else {
            None
        }
    }

    /// Rows sorted by pivot column: the canonical reduced echelon basis.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(self.rows.len());
        for c in 0..self.ncols {
            if let Some(k) = self.pivot_row[c] {
                out.push(self.rows[k].clone());
            }
        }
        out
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| self.pivot_row[*c].is_some())
            .collect()
    }

    /// Basis of the null space `{x : row·x = 0 for all rows}`, one vector per
    /// free column, in increasing free-column order.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let f = self.field;
        let mut out = Vec::new();
        // for each free column c, x_c = 1 and x_p = -row_p[c]
        let mut col_entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for c in 0..self.ncols {
            if let Some(k) = self.pivot_row[c] {
                for (j, x) in &self.rows[k] {
                    if *j != c {
                        col_entries[*j].push((c, f.neg(x)));
                    }
                }
            }
        }
        for c in 0..self.ncols {
            if self.pivot_row[c].is_none() {
                let mut v = std::mem::take(&mut col_entries[c]);
                v.push((c, Scalar::one()));
                v.sort_by_key(|e| e.0);
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(f: Field, v: &[i64]) -> SparseVec {
        to_sparse(&v.iter().map(|x| f.from_i64(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn canonical_regardless_of_order() {
        let f = Field::Rationals;
        let mut a = Echelon::new(f, 3);
        a.insert(&sv(f, &[1, 2, 3]));
        a.insert(&sv(f, &[0, 1, 1]));
        let mut b = Echelon::new(f, 3);
        b.insert(&sv(f, &[1, 3, 4]));
        b.insert(&sv(f, &[2, 4, 6]));
        b.insert(&sv(f, &[0, 2, 2]));
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn tracked_coordinates() {
        let f = Field::Rationals;
        let mut e = Echelon::tracking(f, 3);
        e.insert(&sv(f, &[1, 1, 0]));
        e.insert(&sv(f, &[0, 1, 1]));
        let c = e.coords(&sv(f, &[2, 5, 3])).unwrap();
        assert_eq!(to_dense(&c, 2), vec![f.from_i64(2), f.from_i64(3)]);
        assert!(e.coords(&sv(f, &[1, 0, 0])).is_none());
    }
}
