use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::echelon::{to_dense, to_sparse, Echelon};
use super::{Field, Matrix, Scalar};

/// Monic minimal polynomial of a square matrix, coefficients from the
/// constant term upwards.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    let f = m.field;
    let n = m.rows();
    let mut e = Echelon::tracking(f, n * n);
    let mut p = Matrix::identity(f, n);
    for deg in 0..=n {
        let v = to_sparse(p.entries());
        if let Some(c) = e.coords(&v) {
            // p = sum c_i X^i, so X^deg - sum c_i X^i = 0
            let mut out: Vec<Scalar> = to_dense(&c, deg).iter().map(|x| f.neg(x)).collect();
            out.push(Scalar::one());
            return out;
        }
        e.insert(&v);
        p = p.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree")
}

fn eval(f: Field, coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(Scalar::zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let v = n.to_u64()?;
    if v > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct roots in the ground field of a polynomial (constant term first).
/// Over Q this uses the rational root theorem and gives up (returning the
/// roots found so far by the zero test) when coefficients are too large to
/// factor by trial division.
pub fn rational_roots(f: Field, coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    match f {
        Field::Prime(p) => {
            if p <= 1 << 20 {
                for v in 0..p {
                    let x = Scalar::Small(v as i64, 1);
                    if eval(f, &c, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
        Field::Rationals => {
            let mut shift = 0;
            while c[shift].is_zero() {
                shift += 1;
            }
            if shift > 0 {
                roots.push(Scalar::zero());
            }
            let c = &c[shift..];
            if c.len() <= 1 {
                return roots;
            }
            let bigs: Vec<BigRational> = c.iter().map(|x| x.to_big()).collect();
            let lcm = bigs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = bigs
                .iter()
                .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
                .collect();
            let (Some(ps), Some(qs)) = (
                divisors(&ints[0], 1 << 40),
                divisors(ints.last().unwrap(), 1 << 40),
            ) else {
                return roots;
            };
            let mut seen = std::collections::BTreeSet::new();
            for p in &ps {
                for q in &qs {
                    for s in [1, -1] {
                        let r = BigRational::new(p * BigInt::from(s), q.clone());
                        if !seen.insert(r.clone()) || r.is_zero() {
                            continue;
                        }
                        let x = f.from_big(&r).unwrap();
                        if eval(f, c, &x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minpoly_of_projection_and_nilpotent() {
        let q = Field::Rationals;
        let e = Matrix::from_i64(q, &[&[1, 0], &[0, 0]]);
        assert_eq!(
            minimal_polynomial(&e),
            vec![q.from_i64(0), q.from_i64(-1), q.from_i64(1)]
        );
        let n = Matrix::from_i64(q, &[&[0, 1], &[0, 0]]);
        assert_eq!(
            minimal_polynomial(&n),
            vec![q.from_i64(0), q.from_i64(0), q.from_i64(1)]
        );
    }

    #[test]
    fn roots_of_quadratics() {
        let q = Field::Rationals;
        // 2x^2 - 3x + 1 = (2x-1)(x-1)
        let mut r = rational_roots(q, &[q.from_i64(1), q.from_i64(-3), q.from_i64(2)]);
        r.sort_by_key(|x| x.to_string());
        assert_eq!(r, vec![q.parse("1").unwrap(), q.parse("1/2").unwrap()]);
        assert!(rational_roots(q, &[q.from_i64(-2), q.from_i64(0), q.from_i64(1)]).is_empty());
    }
}
