use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// `F_p`; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                prime: p,
            },
        }
    }

    /// Reduces a rational into this field; fails if the denominator vanishes mod p.
    pub fn from_rational(self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(r.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = r.numer().mod_floor(&modulus);
                let den = r.denom().mod_floor(&modulus);
                let num = u64::try_from(num).expect("residue fits");
                let den = u64::try_from(den).expect("residue fits");
                if den == 0 {
                    return Err(Error::Parse(format!("denominator of {r} vanishes mod {p}")));
                }
                Ok(Scalar::Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    prime: p,
                })
            }
        }
    }

    /// `i`-th element of the field in a fixed enumeration order (only for `F_p`, `i < p`).
    pub fn residue(self, i: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Residue { value: i % p, prime: p },
            Field::Rationals => self.from_i64(i as i64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in field `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!("unknown field `{s}` (expected `q` or `fp:<p>`)")))
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, prime } => Scalar::Residue {
                value: inv_mod(*value, *prime),
                prime: *prime,
            },
        })
    }

    /// `self / rhs`; panics on division by zero.
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn residue_value(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// A square root in the same field, when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Residue { value, prime } => {
                if *value == 0 || *prime == 2 {
                    return Some(self.clone());
                }
                if pow_mod(*value, (*prime - 1) / 2, *prime) != 1 {
                    return None;
                }
                tonelli_shanks(*value, *prime).map(|v| Scalar::Residue {
                    value: v,
                    prime: *prime,
                })
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, prime } => write!(f, "{value} mod {prime}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"a/b"`, `"a"` (rational) and `"r mod p"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar `{s}`"));
        if let Some((r, p)) = s.split_once("mod") {
            let r: i64 = r.trim().parse().map_err(|_| bad())?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            return Ok(Field::prime(p)?.from_i64(r));
        }
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, prime }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % prime,
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, prime }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + prime - b) % prime,
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, prime }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *prime),
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, prime } => Scalar::Residue {
                value: (prime - value) % prime,
                prime: *prime,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tra<&Scalar> for Scalar {
            fn $ma(&mut self, rhs: &Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra for Scalar {
            fn $ma(&mut self, rhs: Scalar) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

owned_binop!(Add, add, AddAssign, add_assign);
owned_binop!(Sub, sub, SubAssign, sub_assign);
owned_binop!(Mul, mul, MulAssign, mul_assign);

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
