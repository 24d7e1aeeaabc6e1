use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with integer coefficients, stored sparsely.
/// No zero coefficients are kept; the empty map is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentQ {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentQ {
    pub fn zero() -> LaurentQ {
        LaurentQ::default()
    }

    pub fn one() -> LaurentQ {
        LaurentQ::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> LaurentQ {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        LaurentQ { coeffs }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> LaurentQ {
        let mut p = LaurentQ::zero();
        for &(e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shifted(&self, k: i64) -> LaurentQ {
        LaurentQ {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn scale(&self, c: i64) -> LaurentQ {
        if c == 0 {
            return LaurentQ::zero();
        }
        LaurentQ {
            coeffs: self.coeffs.iter().map(|(&e, &k)| (e, k * c)).collect(),
        }
    }

    /// Exact division; `Err(NotDivisible)` when no Laurent quotient exists.
    pub fn div_exact(&self, d: &LaurentQ) -> Result<LaurentQ> {
        if d.is_zero() {
            return Err(Error::Input("division by zero Laurent polynomial".into()));
        }
        let mut rem = self.clone();
        let mut quot = LaurentQ::zero();
        let (dlead_e, dlead_c) = {
            let e = d.max_degree().unwrap();
            (e, d.coeff(e))
        };
        // any exact quotient has support within these exponent bounds
        let qe_min = match self.min_degree() {
            None => return Ok(LaurentQ::zero()),
            Some(e) => e - d.min_degree().unwrap(),
        };
        while !rem.is_zero() {
            let e = rem.max_degree().unwrap();
            let c = rem.coeff(e);
            if c % dlead_c != 0 || e - dlead_e < qe_min {
                return Err(Error::NotDivisible);
            }
            let (qe, qc) = (e - dlead_e, c / dlead_c);
            quot.add_term(qe, qc);
            rem = &rem - &d.shifted(qe).scale(qc);
            if let Some(re) = rem.max_degree() {
                if re >= e {
                    return Err(Error::NotDivisible);
                }
            }
        }
        Ok(quot)
    }

    /// `[k] = q^{-(k-1)} + q^{-(k-3)} + ... + q^{k-1}`, with `[0] = 0`.
    pub fn quantum_integer(k: i64) -> Result<LaurentQ> {
        if k < 0 {
            return Err(Error::Input(format!("quantum integer of negative {k}")));
        }
        let mut p = LaurentQ::zero();
        let mut e = -(k - 1);
        while e <= k - 1 {
            p.add_term(e, 1);
            e += 2;
        }
        Ok(p)
    }

    pub fn quantum_factorial(k: i64) -> Result<LaurentQ> {
        let mut p = LaurentQ::one();
        for i in 1..=k {
            p = &p * &LaurentQ::quantum_integer(i)?;
        }
        Ok(p)
    }

    /// `[n]! / ([k]! [n-k]!)`, or zero outside `0 <= k <= n`.
    pub fn quantum_binomial(n: i64, k: i64) -> Result<LaurentQ> {
        if n < 0 {
            return Err(Error::Input(format!("quantum binomial of negative {n}")));
        }
        if k < 0 || k > n {
            return Ok(LaurentQ::zero());
        }
        let num = LaurentQ::quantum_factorial(n)?;
        let den = &LaurentQ::quantum_factorial(k)? * &LaurentQ::quantum_factorial(n - k)?;
        num.div_exact(&den)
    }

    /// JSON object mapping exponent (as a string key) to coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, i64> = self
            .coeffs
            .iter()
            .map(|(&e, &c)| (e.to_string(), c))
            .collect();
        serde_json::to_value(map).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LaurentQ> {
        let map: BTreeMap<String, i64> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Input(format!("bad Laurent polynomial: {e}")))?;
        let mut p = LaurentQ::zero();
        for (e, c) in map {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Input(format!("bad exponent {e:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "q")?,
                1 => write!(f, "{a}q")?,
                _ if a == 1 => write!(f, "q^{e}")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentQ {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentQ {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        LaurentQ::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        assert_eq!(LaurentQ::quantum_integer(0).unwrap(), LaurentQ::zero());
        assert_eq!(
            LaurentQ::quantum_integer(2).unwrap(),
            LaurentQ::from_pairs(&[(-1, 1), (1, 1)])
        );
        // [4] expanded by hand from the displayed formula
        assert_eq!(
            LaurentQ::quantum_integer(4).unwrap(),
            LaurentQ::from_pairs(&[(-3, 1), (-1, 1), (1, 1), (3, 1)])
        );
        assert!(LaurentQ::quantum_integer(-1).is_err());
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(LaurentQ::quantum_binomial(3, 0).unwrap(), LaurentQ::one());
        assert_eq!(
            LaurentQ::quantum_binomial(4, 2).unwrap(),
            LaurentQ::from_pairs(&[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)])
        );
        assert_eq!(LaurentQ::quantum_binomial(2, 3).unwrap(), LaurentQ::zero());
        assert_eq!(LaurentQ::quantum_binomial(2, -1).unwrap(), LaurentQ::zero());
    }

    #[test]
    fn specializes_at_one() {
        for n in 0..=8i64 {
            assert_eq!(LaurentQ::quantum_integer(n).unwrap().eval_at_one(), n);
            for k in 0..=n {
                let b = LaurentQ::quantum_binomial(n, k).unwrap();
                let mut binom = 1i64;
                for i in 0..k {
                    binom = binom * (n - i) / (i + 1);
                }
                assert_eq!(b.eval_at_one(), binom, "({n},{k})");
            }
        }
    }

    #[test]
    fn div_exact_detects_failure() {
        let p = LaurentQ::from_pairs(&[(0, 1), (2, 1)]);
        let d = LaurentQ::from_pairs(&[(0, 1), (1, 1)]);
        assert!(matches!(p.div_exact(&d), Err(Error::NotDivisible)));
        let prod = &p * &d;
        assert_eq!(prod.div_exact(&d).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentQ::from_pairs(&[(-3, 2), (0, -1), (5, 7)]);
        let j = p.to_json();
        assert_eq!(LaurentQ::from_json(&j).unwrap(), p);
    }
}
