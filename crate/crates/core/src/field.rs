//! Coefficient fields: the rationals with arbitrary-precision fractions, and
//! prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field K of the polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldConfig {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
}

impl FieldConfig {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidArgument(format!("modulus {p} exceeds 2^62")));
        }
        Ok(FieldConfig::PrimeField { p })
    }

    /// Re-checks the primality invariant, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldConfig::Rationals => Ok(()),
            FieldConfig::PrimeField { p } => FieldConfig::prime(p).map(|_| ()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldConfig::Rationals => 0,
            FieldConfig::PrimeField { p } => p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match *self {
            FieldConfig::Rationals => Coeff::Q(BigRational::zero()),
            FieldConfig::PrimeField { p } => Coeff::Fp(Zp { v: 0, p }),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> Coeff {
        match *self {
            FieldConfig::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(x))),
            FieldConfig::PrimeField { p } => Coeff::Fp(Zp::new(x.rem_euclid(p as i64) as u64, p)),
        }
    }

    pub fn from_bigint(&self, x: &BigInt) -> Coeff {
        match *self {
            FieldConfig::Rationals => Coeff::Q(BigRational::from_integer(x.clone())),
            FieldConfig::PrimeField { p } => Coeff::Fp(Zp::from_bigint(x, p)),
        }
    }

    /// `num / den` in the field; fails when `den` vanishes in K.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::InvalidArgument(format!("denominator {den} is zero in {self}")));
        }
        Ok(&self.from_bigint(num) * &d.inv()?)
    }

    /// Whether `c` is an element of this field.
    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (FieldConfig::Rationals, Coeff::Q(_)) => true,
            (FieldConfig::PrimeField { p }, Coeff::Fp(z)) => z.p == *p && z.v < *p,
            _ => false,
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rationals => write!(f, "Q"),
            FieldConfig::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

/// An element of `F_p`, kept as the least non-negative residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zp {
    v: u64,
    p: u64,
}

impl Zp {
    pub fn new(v: u64, p: u64) -> Self {
        Zp { v: v % p, p }
    }

    pub fn from_bigint(x: &BigInt, p: u64) -> Self {
        let r = x.mod_floor_u64(p);
        Zp { v: r, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut e: u64) -> Zp {
        let mut base = *self;
        let mut acc = Zp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Zp> {
        if self.v == 0 {
            return None;
        }
        // extended Euclid on (v, p)
        let (mut a, mut b) = (self.v as i128, self.p as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Zp { v: x0.rem_euclid(self.p as i128) as u64, p: self.p })
    }
}

impl Add for Zp {
    type Output = Zp;
    fn add(self, o: Zp) -> Zp {
        debug_assert_eq!(self.p, o.p);
        let s = self.v + o.v;
        Zp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Zp {
    type Output = Zp;
    fn sub(self, o: Zp) -> Zp {
        debug_assert_eq!(self.p, o.p);
        Zp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
}

impl Mul for Zp {
    type Output = Zp;
    fn mul(self, o: Zp) -> Zp {
        debug_assert_eq!(self.p, o.p);
        Zp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        Zp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        u64::try_from(r).expect("residue fits in u64")
    }
}

/// A field element. The variant always matches the [`FieldConfig`] of the
/// ring that owns it; mixing variants in arithmetic is a logic error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(Zp),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(z) => z.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp(z) => z.v == 1,
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        match self {
            Coeff::Q(q) if !q.is_zero() => Ok(Coeff::Q(q.recip())),
            Coeff::Fp(z) => z.inv().map(Coeff::Fp).ok_or_else(|| Error::InvalidArgument("inverse of zero".into())),
            Coeff::Q(_) => Err(Error::InvalidArgument("inverse of zero".into())),
        }
    }

    pub fn field(&self) -> FieldConfig {
        match self {
            Coeff::Q(_) => FieldConfig::Rationals,
            Coeff::Fp(z) => FieldConfig::PrimeField { p: z.p },
        }
    }

    /// True when the rendered form starts with a minus sign (always false
    /// over `F_p`, where residues are non-negative).
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_negative(),
            Coeff::Fp(_) => false,
        }
    }

    /// Bit length of the largest of numerator/denominator (or the residue).
    pub fn bit_size(&self) -> u64 {
        match self {
            Coeff::Q(q) => q.numer().bits().max(q.denom().bits()),
            Coeff::Fp(z) => 64 - z.v.leading_zeros() as u64,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Q(q) => Some(q),
            Coeff::Fp(_) => None,
        }
    }

    pub fn as_zp(&self) -> Option<Zp> {
        match self {
            Coeff::Fp(z) => Some(*z),
            Coeff::Q(_) => None,
        }
    }
}

macro_rules! coeff_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Coeff> for &'a Coeff {
            type Output = Coeff;
            fn $method(self, o: &'a Coeff) -> Coeff {
                match (self, o) {
                    (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a.$method(b)),
                    (Coeff::Fp(a), Coeff::Fp(b)) => {
                        assert_eq!(a.p, b.p, "mixed prime fields");
                        Coeff::Fp(a.$method(*b))
                    }
                    _ => panic!("mixed coefficient fields"),
                }
            }
        }
    };
}

coeff_binop!(Add, add);
coeff_binop!(Sub, sub);
coeff_binop!(Mul, mul);

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp(a) => Coeff::Fp(-*a),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Coeff::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Coeff::Fp(z) => write!(f, "{}", z.v),
        }
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
