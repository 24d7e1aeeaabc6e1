//! Sparse multivariate polynomials over an exact ring, symmetric-function
//! bases (elementary, Schur), and the formal operator summing all first
//! partial derivatives.
//!
//! Variables are opaque indices `0..nvars`; exponent vectors are dense small
//! arrays keyed by the variable set.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{RingSpec, Scalar};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::Input(format!(
                "not weakly decreasing positive parts: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: vec![] }
    }

    /// Drops trailing zeros; errors when the remainder is not a partition.
    pub fn from_exponents(mut exps: Vec<u32>) -> Result<Partition> {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Partition::new(exps)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `lambda_j`, zero beyond the length.
    pub fn part(&self, j: usize) -> u32 {
        self.parts.get(j).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn fits_in_box(&self, rows: usize, max_part: u32) -> bool {
        self.len() <= rows && self.part(0) <= max_part
    }

    /// All partitions contained in a `rows x max_part` box, by size then lex.
    pub fn in_box(rows: usize, max_part: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        let mut frontier = vec![vec![]];
        loop {
            let mut next = Vec::new();
            for p in &frontier {
                let p: &Vec<u32> = p;
                let hi = if p.is_empty() {
                    max_part
                } else {
                    *p.last().unwrap()
                };
                if p.len() == rows {
                    continue;
                }
                for v in 1..=hi {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned().map(|parts| Partition { parts }));
            frontier = next;
        }
        out.sort_by_key(|p| (p.size(), p.parts.clone()));
        out
    }

    /// The complement inside a `rows x max_part` box, when it fits.
    pub fn box_complement(&self, rows: usize, max_part: u32) -> Option<Partition> {
        if !self.fits_in_box(rows, max_part) {
            return None;
        }
        let mut parts: Vec<u32> = (0..rows).map(|i| max_part - self.part(rows - 1 - i)).collect();
        parts.retain(|&p| p > 0);
        Some(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

type Expvec = Vec<u16>;

fn grlex(a: &Expvec, b: &Expvec) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    ring: RingSpec,
    nvars: usize,
    terms: BTreeMap<Expvec, Scalar>,
}

impl MPoly {
    pub fn zero(ring: RingSpec, nvars: usize) -> MPoly {
        MPoly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: RingSpec, nvars: usize, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(ring, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(ring: RingSpec, nvars: usize) -> MPoly {
        MPoly::constant(ring, nvars, Scalar::one(ring))
    }

    pub fn variable(ring: RingSpec, nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(ring, nvars);
        p.add_term(e, Scalar::one(ring));
        p
    }

    pub fn monomial(ring: RingSpec, exps: Vec<u16>, c: Scalar) -> MPoly {
        let nvars = exps.len();
        let mut p = MPoly::zero(ring, nvars);
        p.add_term(exps, c);
        p
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expvec, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Expvec) -> Scalar {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn add_term(&mut self, e: Expvec, c: Scalar) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(cur) => {
                let s = &*cur + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.ring, self.nvars);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    /// Total degree of the largest monomial, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// `Some(d)` when all monomials share total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn leading_term_grlex(&self) -> Option<(&Expvec, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Map coefficients into another ring (canonical quotient/inclusion).
    pub fn map_ring(&self, ring: RingSpec) -> MPoly {
        let mut out = MPoly::zero(ring, self.nvars);
        for (e, c) in &self.terms {
            let v = c
                .to_bigint()
                .expect("map_ring from non-integral coefficient");
            out.add_term(e.clone(), Scalar::from_bigint(ring, v));
        }
        out
    }

    /// Sum of all first-order partial derivatives, taken formally.
    pub fn nabla(&self) -> MPoly {
        let mut out = MPoly::zero(self.ring, self.nvars);
        for (e, c) in &self.terms {
            for i in 0..self.nvars {
                if e[i] > 0 {
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    let d = Scalar::from_i64(self.ring, e[i] as i64);
                    out.add_term(e2, &d * c);
                }
            }
        }
        out
    }

    pub fn nabla_iter(&self, n: usize) -> MPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.nabla();
        }
        p
    }

    /// The ring map sending `X_i` to `Y_{s(i)}`; `target_nvars` bounds the
    /// codomain variable set.
    pub fn substitute_variables(&self, s: &[usize], target_nvars: usize) -> Result<MPoly> {
        if s.len() != self.nvars {
            return Err(Error::Input(format!(
                "substitution map covers {} of {} variables",
                s.len(),
                self.nvars
            )));
        }
        if let Some(&bad) = s.iter().find(|&&t| t >= target_nvars) {
            return Err(Error::Input(format!(
                "substitution target {bad} out of range {target_nvars}"
            )));
        }
        let mut out = MPoly::zero(self.ring, target_nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u16; target_nvars];
            for i in 0..self.nvars {
                e2[s[i]] += e[i];
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        // adjacent transpositions generate the full symmetric group
        for i in 0..self.nvars.saturating_sub(1) {
            for (e, c) in &self.terms {
                let mut e2 = e.clone();
                e2.swap(i, i + 1);
                if self.coeff(&e2) != *c {
                    return false;
                }
            }
        }
        true
    }

    /// Exact quotient `Q` with `self = Q * d`.
    pub fn divide_exact(&self, d: &MPoly) -> Result<MPoly> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return Err(Error::Input("division by zero polynomial".into()));
        }
        let (dlead_e, dlead_c) = d.leading_term_grlex().unwrap();
        let dlead_e = dlead_e.clone();
        let dlead_c = dlead_c.clone();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.ring, self.nvars);
        while !rem.is_zero() {
            let (re, rc) = rem.leading_term_grlex().unwrap();
            let mut qe = vec![0u16; self.nvars];
            for i in 0..self.nvars {
                if re[i] < dlead_e[i] {
                    return Err(Error::NotDivisible);
                }
                qe[i] = re[i] - dlead_e[i];
            }
            let qc = match self.ring {
                RingSpec::Integers => {
                    let a = rc.to_bigint().unwrap();
                    let b = dlead_c.to_bigint().unwrap();
                    let (q, r) = num_integer::Integer::div_rem(&a, &b);
                    if !r.is_zero() {
                        return Err(Error::NotDivisible);
                    }
                    Scalar::from_bigint(self.ring, q)
                }
                _ => {
                    let inv = dlead_c.inverse().ok_or(Error::NotDivisible)?;
                    rc * &inv
                }
            };
            quot.add_term(qe.clone(), qc.clone());
            let shift = MPoly::monomial(self.ring, qe, qc);
            rem = &rem - &(&shift * d);
        }
        Ok(quot)
    }

    /// The `w`-th elementary symmetric polynomial in `k` variables.
    pub fn elementary(ring: RingSpec, w: usize, k: usize) -> Result<MPoly> {
        if w < 1 || w > k {
            return Err(Error::Input(format!("elementary e_{w} needs 1 <= w <= k={k}")));
        }
        let mut out = MPoly::zero(ring, k);
        let mut subset: Vec<usize> = (0..w).collect();
        loop {
            let mut e = vec![0u16; k];
            for &i in &subset {
                e[i] = 1;
            }
            out.add_term(e, Scalar::one(ring));
            // next w-subset of {0..k} in lexicographic order
            let mut i = w;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if subset[i] != i + k - w {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..w {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    /// Product of the Vandermonde factors `X_i - X_j` over `i < j <= k`.
    pub fn vandermonde(ring: RingSpec, k: usize) -> MPoly {
        let mut p = MPoly::one(ring, k);
        for i in 0..k {
            for j in i + 1..k {
                let d = &MPoly::variable(ring, k, i) - &MPoly::variable(ring, k, j);
                p = &p * &d;
            }
        }
        p
    }

    /// Schur polynomial by the bialternant formula: the determinant with
    /// `(i,j)`-entry `X_i^{lambda_j + k - j}`, divided exactly by the
    /// Vandermonde product.
    pub fn schur(ring: RingSpec, lambda: &Partition, k: usize) -> Result<MPoly> {
        if lambda.len() > k {
            return Err(Error::Input(format!(
                "partition {lambda} has more than k={k} parts"
            )));
        }
        // exponents lambda_j + k - j (1-indexed j), strictly decreasing
        let exps: Vec<u32> = (1..=k).map(|j| lambda.part(j - 1) + (k - j) as u32).collect();
        let mut det = MPoly::zero(ring, k);
        for (sign, perm) in permutations_signed(k) {
            let mut e = vec![0u16; k];
            for i in 0..k {
                e[i] = exps[perm[i]] as u16;
            }
            det.add_term(e, Scalar::from_i64(ring, sign));
        }
        det.divide_exact(&MPoly::vandermonde(ring, k))
    }

    /// Coefficients `c_lambda` with `self = sum c_lambda s_lambda`, by
    /// iterated leading-monomial subtraction in graded-lexicographic order.
    pub fn expand_in_schur(&self) -> Result<BTreeMap<Partition, Scalar>> {
        if !self.is_symmetric() {
            return Err(Error::Precondition(
                "Schur expansion of a non-symmetric polynomial".into(),
            ));
        }
        let k = self.nvars;
        let mut rem = self.clone();
        let mut out = BTreeMap::new();
        while !rem.is_zero() {
            let (e, c) = rem.leading_term_grlex().unwrap();
            let c = c.clone();
            let lambda = Partition::from_exponents(e.iter().map(|&x| x as u32).collect())
                .expect("leading exponent of a symmetric polynomial is dominant");
            let s = MPoly::schur(self.ring, &lambda, k)?;
            rem = &rem - &s.scale(&c);
            out.insert(lambda, c);
        }
        Ok(out)
    }

    /// Evaluate at integer points (integral coefficient rings only).
    pub fn eval_bigint(&self, xs: &[BigInt]) -> BigInt {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.to_bigint().expect("integral coefficients");
            for i in 0..self.nvars {
                for _ in 0..e[i] {
                    t *= &xs[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_rational(&self, xs: &[BigRational]) -> BigRational {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.to_bigint().expect("integral coefficients"));
            for i in 0..self.nvars {
                for _ in 0..e[i] {
                    t *= &xs[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// List-of-pairs form: `[(exponent vector, coefficient string), ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!([e, c.to_decimal_string()]))
            .collect();
        serde_json::json!({
            "ring": self.ring.to_string(),
            "nvars": self.nvars,
            "terms": list,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MPoly> {
        let bad = |m: &str| Error::Input(format!("bad polynomial: {m}"));
        let ring = RingSpec::parse(v["ring"].as_str().ok_or_else(|| bad("missing ring"))?)?;
        let nvars = v["nvars"].as_u64().ok_or_else(|| bad("missing nvars"))? as usize;
        let mut p = MPoly::zero(ring, nvars);
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term"))?;
            let e: Vec<u16> =
                serde_json::from_value(pair[0].clone()).map_err(|_| bad("exponents"))?;
            if e.len() != nvars {
                return Err(bad("exponent length"));
            }
            let c = Scalar::parse(ring, pair[1].as_str().ok_or_else(|| bad("coefficient"))?)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn permutations_signed(k: usize) -> Vec<(i64, Vec<usize>)> {
    // Heap's algorithm, tracking parity
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1i64;
    out.push((sign, perm.clone()));
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((sign, perm.clone()));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.ring, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Expvec = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Scalar::from_i64(self.ring, -1))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*X{}", i + 1)?,
                    _ => write!(f, "*X{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn random_poly(
        rng: &mut impl Rng,
        ring: RingSpec,
        nvars: usize,
        max_deg: u16,
        nterms: usize,
    ) -> MPoly {
        let mut p = MPoly::zero(ring, nvars);
        for _ in 0..nterms {
            let e: Vec<u16> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            p.add_term(e, Scalar::from_i64(ring, rng.gen_range(-5..=5)));
        }
        p
    }

    #[test]
    fn elementary_examples() {
        let e12 = MPoly::elementary(z(), 1, 2).unwrap();
        assert_eq!(
            e12,
            &MPoly::variable(z(), 2, 0) + &MPoly::variable(z(), 2, 1)
        );
        let e22 = MPoly::elementary(z(), 2, 2).unwrap();
        assert_eq!(
            e22,
            &MPoly::variable(z(), 2, 0) * &MPoly::variable(z(), 2, 1)
        );
        // definition expansion: e_2 in 3 variables
        let e23 = MPoly::elementary(z(), 2, 3).unwrap();
        assert_eq!(e23.num_terms(), 3);
        assert!(e23.is_symmetric());
        assert!(MPoly::elementary(z(), 3, 2).is_err());
    }

    #[test]
    fn schur_examples() {
        let p1 = Partition::new(vec![1]).unwrap();
        assert_eq!(
            MPoly::schur(z(), &p1, 2).unwrap(),
            MPoly::elementary(z(), 1, 2).unwrap()
        );
        // s_(1,1) = e_2, the partition of 2 with 2 parts
        let p11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(
            MPoly::schur(z(), &p11, 2).unwrap(),
            MPoly::elementary(z(), 2, 2).unwrap()
        );
        // hand evaluation of the determinant formula
        let p21 = Partition::new(vec![2, 1]).unwrap();
        let s21 = MPoly::schur(z(), &p21, 2).unwrap();
        let x = MPoly::variable(z(), 2, 0);
        let y = MPoly::variable(z(), 2, 1);
        let expect = &(&(&x * &x) * &y) + &(&x * &(&y * &y));
        assert_eq!(s21, expect);
        assert!(MPoly::schur(z(), &Partition::new(vec![1, 1, 1]).unwrap(), 2).is_err());
    }

    #[test]
    fn schur_symmetric_homogeneous_in_box() {
        for lambda in Partition::in_box(3, 3) {
            let s = MPoly::schur(z(), &lambda, 3).unwrap();
            assert!(s.is_symmetric(), "{lambda}");
            if lambda.is_empty() {
                assert_eq!(s, MPoly::one(z(), 3));
            } else {
                assert_eq!(s.homogeneous_degree(), Some(lambda.size()), "{lambda}");
            }
        }
    }

    #[test]
    fn nabla_examples() {
        // single-variable power rule
        let x2 = MPoly::monomial(z(), vec![2], Scalar::one(z()));
        assert_eq!(
            x2.nabla(),
            MPoly::monomial(z(), vec![1], Scalar::from_i64(z(), 2))
        );
        // X1 - X2 is annihilated
        let d = &MPoly::variable(z(), 2, 0) - &MPoly::variable(z(), 2, 1);
        assert!(d.nabla().is_zero());
        // direct differentiation of s_(2,1) in two variables
        let p21 = Partition::new(vec![2, 1]).unwrap();
        let s21 = MPoly::schur(z(), &p21, 2).unwrap();
        let got = s21.nabla();
        let mut expect = MPoly::zero(z(), 2);
        expect.add_term(vec![2, 0], Scalar::one(z()));
        expect.add_term(vec![1, 1], Scalar::from_i64(z(), 4));
        expect.add_term(vec![0, 2], Scalar::one(z()));
        assert_eq!(got, expect);
        // cross-check: equals s_(2) + 3 s_(1,1)
        let exp = got.expand_in_schur().unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(
            exp[&Partition::new(vec![2]).unwrap()],
            Scalar::one(z())
        );
        assert_eq!(
            exp[&Partition::new(vec![1, 1]).unwrap()],
            Scalar::from_i64(z(), 3)
        );
    }

    #[test]
    fn nabla_drops_degree_by_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let lambda = Partition::new(vec![rng.gen_range(1..4)]).unwrap();
            let s = MPoly::schur(z(), &lambda, 3).unwrap();
            let d = s.nabla();
            if !d.is_zero() {
                assert_eq!(
                    d.homogeneous_degree(),
                    Some(lambda.size() - 1)
                );
            }
        }
    }

    #[test]
    fn expand_in_schur_examples() {
        let e2 = MPoly::elementary(z(), 2, 3).unwrap();
        let exp = e2.expand_in_schur().unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[&Partition::new(vec![1, 1]).unwrap()], Scalar::one(z()));

        // Pieri check: s_(2) * s_(1) = s_(3) + s_(2,1) in two variables
        let s2 = MPoly::schur(z(), &Partition::new(vec![2]).unwrap(), 2).unwrap();
        let s1 = MPoly::schur(z(), &Partition::new(vec![1]).unwrap(), 2).unwrap();
        let exp = (&s2 * &s1).expand_in_schur().unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[&Partition::new(vec![3]).unwrap()], Scalar::one(z()));
        assert_eq!(exp[&Partition::new(vec![2, 1]).unwrap()], Scalar::one(z()));

        assert!(MPoly::zero(z(), 2).expand_in_schur().unwrap().is_empty());
        assert!(MPoly::variable(z(), 2, 0).expand_in_schur().is_err());
    }

    #[test]
    fn expand_in_schur_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let mut p = MPoly::zero(z(), 3);
            let mut want: BTreeMap<Partition, Scalar> = BTreeMap::new();
            for lambda in Partition::in_box(3, 2) {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 {
                    let s = MPoly::schur(z(), &lambda, 3).unwrap();
                    p = &p + &s.scale(&Scalar::from_i64(z(), c));
                    want.insert(lambda, Scalar::from_i64(z(), c));
                }
            }
            assert_eq!(p.expand_in_schur().unwrap(), want);
        }
    }

    #[test]
    fn substitution_examples() {
        let xy = &MPoly::variable(z(), 2, 0) * &MPoly::variable(z(), 2, 1);
        let sq = xy.substitute_variables(&[0, 0], 1).unwrap();
        assert_eq!(sq, MPoly::monomial(z(), vec![2], Scalar::one(z())));

        let s = &MPoly::variable(z(), 2, 0) + &MPoly::variable(z(), 2, 1);
        let relabeled = s.substitute_variables(&[1, 0], 2).unwrap();
        assert_eq!(relabeled, s);

        assert!(xy.substitute_variables(&[0], 1).is_err());
        assert!(xy.substitute_variables(&[0, 5], 2).is_err());
    }

    // identifying variables commutes with the derivative sum
    #[test]
    fn substitution_commutes_with_nabla() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for ring in [z(), RingSpec::Rationals, RingSpec::ModN(6)] {
            for _ in 0..25 {
                let p = random_poly(&mut rng, ring, 3, 4, 6);
                let s: Vec<usize> = (0..3).map(|_| rng.gen_range(0..2)).collect();
                let a = p.substitute_variables(&s, 2).unwrap().nabla();
                let b = p.nabla().substitute_variables(&s, 2).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for ring in [z(), RingSpec::Rationals, RingSpec::ModN(4)] {
            for _ in 0..25 {
                let p = random_poly(&mut rng, ring, 4, 5, 5);
                let q = random_poly(&mut rng, ring, 4, 5, 5);
                let lhs = (&p * &q).nabla();
                let rhs = &(&p.nabla() * &q) + &(&p * &q.nabla());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generalized_leibniz_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let binom = |n: i64, i: i64| -> i64 {
            let mut b = 1;
            for j in 0..i {
                b = b * (n - j) / (j + 1);
            }
            b
        };
        for n in 0..=4usize {
            let p = random_poly(&mut rng, z(), 3, 4, 4);
            let q = random_poly(&mut rng, z(), 3, 4, 4);
            let lhs = (&p * &q).nabla_iter(n);
            let mut rhs = MPoly::zero(z(), 3);
            for i in 0..=n {
                let c = Scalar::from_i64(z(), binom(n as i64, i as i64));
                let t = &p.nabla_iter(n - i) * &q.nabla_iter(i);
                rhs = &rhs + &t.scale(&c);
            }
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn divide_exact_examples() {
        let x = MPoly::variable(z(), 2, 0);
        let y = MPoly::variable(z(), 2, 1);
        let num = &(&x * &x) - &(&y * &y);
        let den = &x - &y;
        assert_eq!(num.divide_exact(&den).unwrap(), &x + &y);

        let xy = &x * &y;
        assert_eq!(xy.divide_exact(&x).unwrap(), y.clone());

        // self-check by re-multiplication
        let v = MPoly::vandermonde(z(), 3);
        let v2 = &v * &v;
        assert_eq!(v2.divide_exact(&v).unwrap(), v);

        assert!(matches!(
            (&x + &y).divide_exact(&xy),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn partitions_in_box() {
        let ps = Partition::in_box(2, 2);
        assert_eq!(ps.len(), 6); // (), (1), (1,1), (2), (2,1), (2,2)
        let full = Partition::new(vec![2, 2]).unwrap();
        assert!(ps.contains(&full));
        assert_eq!(
            Partition::new(vec![1]).unwrap().box_complement(2, 2),
            Some(Partition::new(vec![2, 1]).unwrap())
        );
    }

    #[test]
    fn json_round_trip() {
        let s = MPoly::schur(z(), &Partition::new(vec![2, 1]).unwrap(), 3).unwrap();
        let j = s.to_json();
        assert_eq!(MPoly::from_json(&j).unwrap(), s);
    }
}
