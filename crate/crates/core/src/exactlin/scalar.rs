use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A field element. Rationals keep a machine-word fast path and fall back to
/// arbitrary precision; prime-field elements are stored as `Small(v, 1)` with
/// `0 <= v < p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Small(0, 1)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn from_i128(num: i128, den: i128) -> Scalar {
    debug_assert!(den != 0);
    if num == 0 {
        return Scalar::Small(0, 1);
    }
    let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
    if g > 1 {
        n /= g;
        d /= g;
    }
    if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
        Scalar::Small(n as i64, d as i64)
    } else {
        Scalar::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }
}

fn from_big(r: BigRational) -> Scalar {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        if n != i64::MIN {
            return Scalar::Small(n, d);
        }
    }
    Scalar::Big(Box::new(r))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Small(0, 1)
    }

    pub fn one() -> Self {
        Scalar::Small(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(b) => (**b).clone(),
        }
    }

    /// Integer value if the element is an integer that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    fn q_add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return from_i128(*a as i128 + *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(s) => from_i128(s, z),
                        None => from_big(self.to_big() + o.to_big()),
                    },
                    _ => from_big(self.to_big() + o.to_big()),
                }
            }
            _ => from_big(self.to_big() + o.to_big()),
        }
    }

    fn q_mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                from_i128(a * c, b * d)
            }
            _ => from_big(self.to_big() * o.to_big()),
        }
    }

    fn q_neg(&self) -> Scalar {
        match self {
            Scalar::Small(a, b) => Scalar::Small(-a, *b),
            Scalar::Big(r) => from_big(-(**r).clone()),
        }
    }

    fn q_inv(&self) -> Scalar {
        match self {
            Scalar::Small(a, b) => from_i128(*b as i128, *a as i128),
            Scalar::Big(r) => from_big(r.recip()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u128, mut e: u128, p: u128) -> u128 {
    let mut r = 1u128;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Field {
    /// Prime field, rejecting non-primes and moduli too large for the
    /// word-size representation.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p >= (1u64 << 62) {
            return Err(Error::Input(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Small(v, 1),
            Field::Prime(p) => Scalar::Small((v as i128).rem_euclid(*p as i128) as i64, 1),
        }
    }

    pub fn from_big(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(from_big(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = r.numer().mod_floor(&pb).to_i64().unwrap();
                let d = r.denom().mod_floor(&pb).to_i64().unwrap();
                if d == 0 {
                    return Err(Error::Input(format!(
                        "denominator {} vanishes mod {p}",
                        r.denom()
                    )));
                }
                Ok(self.mul(&Scalar::Small(n, 1), &self.inv(&Scalar::Small(d, 1))))
            }
        }
    }

    /// Parses `a`, `-a` or `a/b` with arbitrary-size integers.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Input(format!("bad number '{s}'"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        self.from_big(&BigRational::new(n, d))
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => {
                if b.is_zero() {
                    a.clone()
                } else if a.is_zero() {
                    b.clone()
                } else {
                    a.q_add(b)
                }
            }
            Field::Prime(p) => {
                let (x, y) = (a.as_i64().unwrap() as u128, b.as_i64().unwrap() as u128);
                Scalar::Small(((x + y) % *p as u128) as i64, 1)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a.q_neg(),
            Field::Prime(p) => {
                let x = a.as_i64().unwrap();
                Scalar::Small(if x == 0 { 0 } else { *p as i64 - x }, 1)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if b.is_zero() {
            return a.clone();
        }
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        match self {
            Field::Rationals => {
                if a.is_one() {
                    b.clone()
                } else if b.is_one() {
                    a.clone()
                } else {
                    a.q_mul(b)
                }
            }
            Field::Prime(p) => {
                let (x, y) = (a.as_i64().unwrap() as u128, b.as_i64().unwrap() as u128);
                Scalar::Small((x * y % *p as u128) as i64, 1)
            }
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.q_inv(),
            Field::Prime(p) => {
                let x = a.as_i64().unwrap() as u128;
                Scalar::Small(mod_pow(x, *p as u128 - 2, *p as u128) as i64, 1)
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// `a - c*b`, the elimination step.
    #[inline]
    pub fn sub_mul(&self, a: &Scalar, c: &Scalar, b: &Scalar) -> Scalar {
        self.sub(a, &self.mul(c, b))
    }

    /// Canonical text used in reports: `Q` or `F<p>`.
    pub fn name(&self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Prime(p) => format!("F{p}"),
        }
    }

    pub fn is_positive(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Small(n, _) => *n > 0,
            Scalar::Big(r) => r.is_positive(),
        }
    }
}
