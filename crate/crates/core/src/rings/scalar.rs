use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Integers,
    Rationals,
    ModN(u64),
}

impl RingSpec {
    pub fn mod_n(n: u64) -> Result<RingSpec> {
        if n < 2 {
            return Err(Error::Input(format!("Z/{n} requires n >= 2")));
        }
        Ok(RingSpec::ModN(n))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Integers | RingSpec::Rationals => 0,
            RingSpec::ModN(n) => *n,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::Integers => false,
            RingSpec::Rationals => true,
            RingSpec::ModN(n) => is_prime(*n),
        }
    }

    /// True when the characteristic divides `n`, the hypothesis under which
    /// the differential operator is defined.
    pub fn characteristic_divides(&self, n: u64) -> bool {
        match self.characteristic() {
            0 => false,
            c => n % c == 0,
        }
    }

    pub fn parse(s: &str) -> Result<RingSpec> {
        match s {
            "Z" | "ZZ" => Ok(RingSpec::Integers),
            "Q" | "QQ" => Ok(RingSpec::Rationals),
            _ => {
                let body = s
                    .strip_prefix("Z/")
                    .or_else(|| s.strip_prefix("F"))
                    .ok_or_else(|| Error::Input(format!("unknown ring {s:?}")))?;
                let n: u64 = body
                    .parse()
                    .map_err(|_| Error::Input(format!("unknown ring {s:?}")))?;
                RingSpec::mod_n(n)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::ModN(n) => write!(f, "Z/{n}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Val {
    Int(BigInt),
    Rat(BigRational),
    // residue in [0, n)
    Mod(u64),
}

/// A ring element in canonical form: an integer, a reduced fraction, or a
/// residue in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    ring: RingSpec,
    val: Val,
}

impl Scalar {
    pub fn zero(ring: RingSpec) -> Scalar {
        Scalar::from_bigint(ring, BigInt::zero())
    }

    pub fn one(ring: RingSpec) -> Scalar {
        Scalar::from_bigint(ring, BigInt::one())
    }

    pub fn from_bigint(ring: RingSpec, v: BigInt) -> Scalar {
        let val = match ring {
            RingSpec::Integers => Val::Int(v),
            RingSpec::Rationals => Val::Rat(BigRational::from_integer(v)),
            RingSpec::ModN(n) => Val::Mod(reduce_mod(&v, n)),
        };
        Scalar { ring, val }
    }

    pub fn from_i64(ring: RingSpec, v: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(v))
    }

    pub fn from_rational(num: BigInt, den: BigInt) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        Scalar {
            ring: RingSpec::Rationals,
            val: Val::Rat(BigRational::new(num, den)),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            Val::Int(v) => v.is_zero(),
            Val::Rat(v) => v.is_zero(),
            Val::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.val {
            Val::Int(v) => v.is_one(),
            Val::Rat(v) => v.is_one(),
            Val::Mod(v) => *v == 1,
        }
    }

    /// The underlying integer, for `Integers` and integral `Rationals`.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.val {
            Val::Int(v) => Some(v.clone()),
            Val::Rat(v) if v.is_integer() => Some(v.to_integer()),
            Val::Rat(_) => None,
            Val::Mod(v) => Some(BigInt::from(*v)),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match &self.val {
            Val::Int(v) => {
                if v.is_one() || (-v).is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Val::Rat(v) => {
                if v.is_zero() {
                    None
                } else {
                    Some(Scalar {
                        ring: self.ring,
                        val: Val::Rat(v.recip()),
                    })
                }
            }
            Val::Mod(v) => {
                let n = match self.ring {
                    RingSpec::ModN(n) => n,
                    _ => unreachable!(),
                };
                mod_inverse(*v, n).map(|u| Scalar {
                    ring: self.ring,
                    val: Val::Mod(u),
                })
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    fn binop(&self, rhs: &Scalar, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Scalar {
        assert_eq!(self.ring, rhs.ring, "mixed-ring arithmetic");
        match (&self.val, &rhs.val) {
            (Val::Int(a), Val::Int(b)) => Scalar {
                ring: self.ring,
                val: Val::Int(f(a, b)),
            },
            (Val::Mod(a), Val::Mod(b)) => {
                let n = self.ring.characteristic();
                let v = f(&BigInt::from(*a), &BigInt::from(*b));
                Scalar {
                    ring: self.ring,
                    val: Val::Mod(reduce_mod(&v, n)),
                }
            }
            _ => unreachable!("rational handled separately"),
        }
    }

    /// Decimal string representation ("a" or "a/b").
    pub fn to_decimal_string(&self) -> String {
        match &self.val {
            Val::Int(v) => v.to_string(),
            Val::Rat(v) => {
                if v.is_integer() {
                    v.to_integer().to_string()
                } else {
                    format!("{}/{}", v.numer(), v.denom())
                }
            }
            Val::Mod(v) => v.to_string(),
        }
    }

    pub fn parse(ring: RingSpec, s: &str) -> Result<Scalar> {
        let bad = || Error::Input(format!("bad scalar {s:?} for ring {ring}"));
        if let Some((n, d)) = s.split_once('/') {
            if ring != RingSpec::Rationals {
                return Err(bad());
            }
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar::from_rational(n, d));
        }
        let v: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Scalar::from_bigint(ring, v))
    }
}

fn reduce_mod(v: &BigInt, n: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(n));
    let (_, digits) = m.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue exceeds modulus"),
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    // extended euclid on (a, n)
    let (mut r0, mut r1) = (a as i128, n as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Val::Rat(a), Val::Rat(b)) = (&self.val, &rhs.val) {
            assert_eq!(self.ring, rhs.ring);
            return Scalar {
                ring: self.ring,
                val: Val::Rat(a + b),
            };
        }
        self.binop(rhs, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Val::Rat(a), Val::Rat(b)) = (&self.val, &rhs.val) {
            assert_eq!(self.ring, rhs.ring);
            return Scalar {
                ring: self.ring,
                val: Val::Rat(a - b),
            };
        }
        self.binop(rhs, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Val::Rat(a), Val::Rat(b)) = (&self.val, &rhs.val) {
            assert_eq!(self.ring, rhs.ring);
            return Scalar {
                ring: self.ring,
                val: Val::Rat(a * b),
            };
        }
        self.binop(rhs, |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.val {
            Val::Int(v) => Scalar {
                ring: self.ring,
                val: Val::Int(-v),
            },
            Val::Rat(v) => Scalar {
                ring: self.ring,
                val: Val::Rat(-v),
            },
            Val::Mod(v) => {
                let n = self.ring.characteristic();
                Scalar {
                    ring: self.ring,
                    val: Val::Mod(if *v == 0 { 0 } else { n - v }),
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Scalar", 2)?;
        st.serialize_field("ring", &self.ring.to_string())?;
        st.serialize_field("value", &self.to_decimal_string())?;
        st.end()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}
