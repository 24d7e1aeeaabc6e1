//! Evaluation of closed decorated foams: enumerate colorings, compute the
//! Euler characteristics and positive-circle counts of the mono- and bichrome
//! surfaces, and sum the signed rational terms to a symmetric polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::foam::{Binding, BindingEnd, BindingKind, Foam};
use crate::rings::{RingSpec, Scalar};
use crate::sympoly::MPoly;

/// Assignment of a pigment subset of `{1,...,N}` to each facet, stored as a
/// bitmask with bit `i-1` for pigment `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub sets: Vec<u32>,
}

impl Coloring {
    pub fn pigments(&self, facet: usize) -> Vec<u8> {
        (0..32)
            .filter(|b| self.sets[facet] >> b & 1 == 1)
            .map(|b| b as u8 + 1)
            .collect()
    }

    fn has(&self, facet: usize, pigment: u8) -> bool {
        self.sets[facet] >> (pigment - 1) & 1 == 1
    }
}

/// All colorings of a closed foam, found by backtracking over facets with
/// binding constraints propagated, most-constrained-first.
pub fn enumerate_colorings(foam: &Foam) -> Result<Vec<Coloring>> {
    if !foam.is_closed() {
        return Err(Error::Precondition(
            "colorings are defined for closed foams".into(),
        ));
    }
    let nf = foam.facets.len();
    let n = foam.n as u32;

    // binding constraints as facet-role triples
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for b in &foam.bindings {
        triples.push(b.roles(foam)?);
    }
    let mut constraint_count = vec![0usize; nf];
    for &(f, g, h) in &triples {
        for x in [f, g, h] {
            constraint_count[x] += 1;
        }
    }
    let mut order: Vec<usize> = (0..nf).collect();
    order.sort_by_key(|&f| std::cmp::Reverse(constraint_count[f]));

    // subsets of a given size, as bitmasks
    fn subsets(n: u32, k: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for m in 0u32..1 << n {
            if m.count_ones() == k {
                out.push(m);
            }
        }
        out
    }
    let choices: Vec<Vec<u32>> = (0..nf)
        .map(|f| subsets(n, foam.facets[f].label as u32))
        .collect();

    let mut out = Vec::new();
    let mut cur = vec![u32::MAX; nf];
    fn consistent(cur: &[u32], triples: &[(usize, usize, usize)]) -> bool {
        for &(f, g, h) in triples {
            let (a, b, c) = (cur[f], cur[g], cur[h]);
            if a != u32::MAX && b != u32::MAX {
                if a & b != 0 {
                    return false;
                }
                if c != u32::MAX && (a | b) != c {
                    return false;
                }
            }
            if c != u32::MAX {
                for x in [a, b] {
                    if x != u32::MAX && x & !c != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(
        pos: usize,
        order: &[usize],
        choices: &[Vec<u32>],
        triples: &[(usize, usize, usize)],
        cur: &mut Vec<u32>,
        out: &mut Vec<Coloring>,
    ) {
        if pos == order.len() {
            out.push(Coloring { sets: cur.clone() });
            return;
        }
        let f = order[pos];
        for &m in &choices[f] {
            cur[f] = m;
            if consistent(cur, triples) {
                rec(pos + 1, order, choices, triples, cur, out);
            }
        }
        cur[f] = u32::MAX;
    }
    rec(0, &order, &choices, &triples, &mut cur, &mut out);
    Ok(out)
}

fn binding_is_interval(b: &Binding) -> bool {
    matches!(b.kind, BindingKind::Interval { .. })
}

fn interval_point_ends(b: &Binding) -> Vec<usize> {
    match &b.kind {
        BindingKind::Circle => vec![],
        BindingKind::Interval { start, end } => [start, end]
            .iter()
            .filter_map(|e| match e {
                BindingEnd::Singular(p) => Some(*p),
                _ => None,
            })
            .collect(),
    }
}

/// Euler characteristic of the monochrome surface of pigment `i`.
pub fn monochrome_chi(foam: &Foam, c: &Coloring, i: u8) -> Result<i64> {
    let mut chi: i64 = 0;
    for (f, facet) in foam.facets.iter().enumerate() {
        if c.has(f, i) {
            chi += facet.chi;
        }
    }
    for b in &foam.bindings {
        let (_, _, h) = b.roles(foam)?;
        if c.has(h, i) && binding_is_interval(b) {
            chi -= 1;
        }
    }
    for p in &foam.points {
        // facet slot 5 carries all pigments present at the point
        if c.has(p.facets[5], i) {
            chi += 1;
        }
    }
    Ok(chi)
}

/// Euler characteristic of the bichrome surface for `i < j`, and the number
/// of positive circles with respect to `i < j`.
pub fn bichrome_data(foam: &Foam, c: &Coloring, i: u8, j: u8) -> Result<(i64, usize)> {
    if i >= j {
        return Err(Error::Precondition("bichrome surface needs i < j".into()));
    }
    let in_fij = |f: usize| c.has(f, i) != c.has(f, j);
    let mut chi: i64 = 0;
    for (f, facet) in foam.facets.iter().enumerate() {
        if in_fij(f) {
            chi += facet.chi;
        }
    }
    let mut positive = Vec::new();
    for (bi, b) in foam.bindings.iter().enumerate() {
        let (f, g, h) = b.roles(foam)?;
        let count = [f, g, h].iter().filter(|&&x| in_fij(x)).count();
        match count {
            0 => {}
            2 => {
                if binding_is_interval(b) {
                    chi -= 1;
                }
            }
            _ => {
                return Err(Error::Input(format!(
                    "bichrome surface branches at binding {bi}"
                )))
            }
        }
        // positive with respect to i < j: i on f, j on g, both on h, with
        // cyclic order (f, g, h)
        let (pf, pg) = if c.has(f, i) && c.has(g, j) && c.has(h, i) && c.has(h, j) {
            (f, g)
        } else if c.has(g, i) && c.has(f, j) && c.has(h, i) && c.has(h, j) {
            (g, f)
        } else {
            continue;
        };
        let want = [pf, pg, h];
        let cyc = b.cyclic;
        let matches = (0..3).any(|r| (0..3).all(|k| cyc[(k + r) % 3] == want[k]));
        if matches {
            positive.push(bi);
        }
    }
    for p in &foam.points {
        if p.facets.iter().any(|&f| in_fij(f)) {
            chi += 1;
        }
    }

    // positive bindings form disjoint circles: circles count one each,
    // intervals chain at singular points
    let mut theta = 0usize;
    let mut point_ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut interval_pos = Vec::new();
    for &bi in &positive {
        if binding_is_interval(&foam.bindings[bi]) {
            interval_pos.push(bi);
            for p in interval_point_ends(&foam.bindings[bi]) {
                point_ends.entry(p).or_default().push(bi);
            }
        } else {
            theta += 1;
        }
    }
    for (p, ends) in &point_ends {
        if ends.len() != 2 {
            return Err(Error::Input(format!(
                "positive bindings branch at singular point {p}"
            )));
        }
    }
    // count circuits via union-find over positive intervals
    let mut parent: BTreeMap<usize, usize> = interval_pos.iter().map(|&b| (b, b)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, mut x: usize) -> usize {
        while parent[&x] != x {
            let up = parent[&parent[&x]];
            parent.insert(x, up);
            x = up;
        }
        x
    }
    for ends in point_ends.values() {
        let (a, b) = (ends[0], ends[1]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent.insert(ra, rb);
    }
    let mut roots: Vec<usize> = interval_pos
        .iter()
        .map(|&b| find(&mut parent, b))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    theta += roots.len();
    Ok((chi, theta))
}

/// The sign exponent `s(F,c)`.
fn sign_exponent(foam: &Foam, c: &Coloring) -> Result<i64> {
    let mut s: i64 = 0;
    for i in 1..=foam.n {
        let chi = monochrome_chi(foam, c, i)?;
        if chi % 2 != 0 {
            return Err(Error::Input(format!(
                "odd Euler characteristic for monochrome surface {i}"
            )));
        }
        s += i as i64 * chi / 2;
    }
    for i in 1..=foam.n {
        for j in i + 1..=foam.n {
            let (_, theta) = bichrome_data(foam, c, i, j)?;
            s += theta as i64;
        }
    }
    Ok(s)
}

/// One coloring's contribution, kept as numerator data and signed exponents
/// of the factors `X_i - X_j`.
pub struct ColoringTerm {
    pub sign: i64,
    /// exponent of (X_i - X_j) in the denominator, indexed by (i, j), i < j
    pub denom_exps: BTreeMap<(u8, u8), i64>,
    /// variable substitution per facet: local variable k of facet f goes to
    /// global pigment variable `subs[f][k]`
    pub subs: Vec<Vec<usize>>,
}

pub fn coloring_term(foam: &Foam, c: &Coloring) -> Result<ColoringTerm> {
    let s = sign_exponent(foam, c)?;
    let mut denom_exps = BTreeMap::new();
    for i in 1..=foam.n {
        for j in i + 1..=foam.n {
            let (chi, _) = bichrome_data(foam, c, i, j)?;
            if chi % 2 != 0 {
                return Err(Error::Input(format!(
                    "odd Euler characteristic for bichrome surface ({i},{j})"
                )));
            }
            denom_exps.insert((i, j), chi / 2);
        }
    }
    let subs: Vec<Vec<usize>> = (0..foam.facets.len())
        .map(|f| c.pigments(f).iter().map(|&p| p as usize - 1).collect())
        .collect();
    Ok(ColoringTerm {
        sign: if s % 2 == 0 { 1 } else { -1 },
        denom_exps,
        subs,
    })
}

/// The full evaluation as a symmetric polynomial over Z in N variables:
/// multiply every term by a common product of the factors, sum, then divide
/// exactly.
pub fn evaluate(foam: &Foam) -> Result<MPoly> {
    let ring = RingSpec::Integers;
    let n = foam.n as usize;
    if foam.has_zero_decoration() {
        return Ok(MPoly::zero(ring, n));
    }
    let colorings = enumerate_colorings(foam)?;
    let terms: Vec<ColoringTerm> = colorings
        .iter()
        .map(|c| coloring_term(foam, c))
        .collect::<Result<_>>()?;

    let mut clearing: BTreeMap<(u8, u8), i64> = BTreeMap::new();
    for t in &terms {
        for (&ij, &e) in &t.denom_exps {
            let cur = clearing.entry(ij).or_insert(0);
            *cur = (*cur).max(e);
        }
    }
    let factor = |i: u8, j: u8| -> MPoly {
        &MPoly::variable(ring, n, i as usize - 1) - &MPoly::variable(ring, n, j as usize - 1)
    };
    let mut w = MPoly::one(ring, n);
    for (&(i, j), &e) in &clearing {
        for _ in 0..e.max(0) {
            w = &w * &factor(i, j);
        }
    }

    let mut total = MPoly::zero(ring, n);
    for (c, t) in colorings.iter().zip(&terms) {
        let mut term = MPoly::constant(ring, n, Scalar::from_i64(ring, t.sign));
        for (f, facet) in foam.facets.iter().enumerate() {
            term = &term * &facet.decoration.substitute_variables(&t.subs[f], n)?;
        }
        for (&(i, j), &e) in &clearing {
            let extra = e.max(0) - t.denom_exps.get(&(i, j)).copied().unwrap_or(0);
            for _ in 0..extra {
                term = &term * &factor(i, j);
            }
        }
        total = &total + &term;
    }
    total.divide_exact(&w).map_err(|_| {
        Error::Input("foam evaluation produced a non-polynomial sum".into())
    })
}

/// The constant term of the evaluation mapped into `ring` (the image under
/// sending every variable to zero). Computed numerically: a degree-zero
/// evaluation is constant, so the signed rational state sum at a point with
/// distinct coordinates gives the value exactly.
pub fn evaluate_in_ring(foam: &Foam, ring: RingSpec) -> Result<Scalar> {
    let v = evaluate_integer(foam)?;
    Ok(Scalar::from_bigint(ring, v))
}

/// The constant term of the evaluation as an integer.
pub fn evaluate_integer(foam: &Foam) -> Result<BigInt> {
    if foam.degree() != 0 || foam.has_zero_decoration() {
        return Ok(BigInt::zero());
    }
    let n = foam.n as usize;
    let points: Vec<BigRational> = (1..=n)
        .map(|i| BigRational::from_integer(BigInt::from(i as i64)))
        .collect();
    let colorings = enumerate_colorings(foam)?;
    let mut acc = BigRational::zero();
    for c in &colorings {
        let t = coloring_term(foam, c)?;
        let mut val = BigRational::from_integer(BigInt::from(t.sign));
        for (f, facet) in foam.facets.iter().enumerate() {
            let xs: Vec<BigRational> = t.subs[f].iter().map(|&v| points[v].clone()).collect();
            val *= facet.decoration.eval_rational(&xs);
            if val.is_zero() {
                break;
            }
        }
        if val.is_zero() {
            continue;
        }
        for (&(i, j), &e) in &t.denom_exps {
            let d = &points[i as usize - 1] - &points[j as usize - 1];
            if e >= 0 {
                for _ in 0..e {
                    val /= &d;
                }
            } else {
                for _ in 0..-e {
                    val *= &d;
                }
            }
        }
        acc += val;
    }
    if !acc.is_integer() {
        return Err(Error::Input(
            "degree-zero foam evaluation is not an integer".into(),
        ));
    }
    Ok(acc.to_integer())
}

/// Apply the derivative-sum operator to the decoration. The result is a
/// formal combination: one summand per facet, each the same underlying foam
/// with that facet's decoration differentiated.
pub fn nabla_foam(foam: &Foam) -> Vec<Foam> {
    let mut out = Vec::new();
    for f in 0..foam.facets.len() {
        let d = foam.facets[f].decoration.nabla();
        if !d.is_zero() {
            out.push(foam.with_decoration(f, d));
        }
    }
    out
}

/// Evaluate a formal combination of foams.
pub fn evaluate_sum(foams: &[Foam], n: u8) -> Result<MPoly> {
    let mut acc = MPoly::zero(RingSpec::Integers, n as usize);
    for f in foams {
        acc = &acc + &evaluate(f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foam::{cap, cup, digon_cap, digon_cup, sphere, theta_foam, theta_foam_ordered};
    use crate::sympoly::Partition;
    use rand::{Rng, SeedableRng};

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn dotted_sphere(n: u8, label: u8, dots: &[u16]) -> Foam {
        // monomial decoration in the facet variables
        let deco = MPoly::monomial(z(), dots.to_vec(), Scalar::one(z()));
        sphere(n, label, deco)
    }

    fn binom(n: u8, k: u8) -> usize {
        let mut b = 1usize;
        for i in 0..k as usize {
            b = b * (n as usize - i) / (i + 1);
        }
        b
    }

    #[test]
    fn coloring_counts() {
        // sphere labeled 1: choose one pigment
        let s = sphere(3, 1, MPoly::one(z(), 1));
        assert_eq!(enumerate_colorings(&s).unwrap().len(), 3);
        // theta foam: ordered disjoint singleton pairs
        let t = theta_foam(3, 1, 1);
        assert_eq!(enumerate_colorings(&t).unwrap().len(), 6);
        // sphere labeled k: subsets
        for n in 2..=5u8 {
            for k in 1..=n - 1 {
                let s = sphere(n, k, MPoly::one(z(), k as usize));
                assert_eq!(enumerate_colorings(&s).unwrap().len(), binom(n, k));
            }
        }
        // open foams are rejected
        assert!(enumerate_colorings(&cup(3, 1, 0)).is_err());
    }

    #[test]
    fn surface_data_examples() {
        let s = sphere(3, 1, MPoly::one(z(), 1));
        let c = Coloring {
            sets: vec![0b001], // pigment 1
        };
        assert_eq!(monochrome_chi(&s, &c, 1).unwrap(), 2);
        assert_eq!(monochrome_chi(&s, &c, 2).unwrap(), 0);
        // bichrome with an unused pigment is the sphere itself
        assert_eq!(bichrome_data(&s, &c, 1, 2).unwrap(), (2, 0));

        // theta foam: F_ij is two discs along the binding circle, a sphere;
        // the positive count depends on the cyclic order
        for (flip, want_theta) in [(false, 1usize), (true, 0usize)] {
            let t = theta_foam_ordered(3, 1, 1, flip);
            let c = Coloring {
                sets: vec![0b001, 0b010, 0b011], // f: {1}, g: {2}, h: {1,2}
            };
            let (chi, theta) = bichrome_data(&t, &c, 1, 2).unwrap();
            assert_eq!(chi, 2);
            assert_eq!(theta, want_theta, "flip={flip}");
            assert_eq!(monochrome_chi(&t, &c, 1).unwrap(), 2);
        }
    }

    // the sphere relation: k weight-1 dots on a 1-labeled sphere evaluate to
    // -1 exactly at k = N-1 and to 0 otherwise
    #[test]
    fn sphere_relation_label_one() {
        for n in 2..=5u8 {
            for k in 0..=(n as u16) {
                let s = dotted_sphere(n, 1, &[k]);
                let got = evaluate_in_ring(&s, z()).unwrap();
                let want = if k == n as u16 - 1 {
                    Scalar::from_i64(z(), -1)
                } else {
                    Scalar::zero(z())
                };
                assert_eq!(got, want, "N={n} k={k}");
                // polynomial route agrees on the constant
                let p = evaluate(&s).unwrap();
                if k == n as u16 - 1 {
                    assert_eq!(p, MPoly::constant(z(), n as usize, Scalar::from_i64(z(), -1)));
                } else if s.degree() == 0 {
                    assert!(p.is_zero());
                }
            }
        }
    }

    // a k-labeled sphere decorated by a Schur polynomial evaluates to
    // (-1)^{k(k+1)/2} exactly on the full (N-k) x k box
    #[test]
    fn sphere_relation_schur() {
        for (k, n) in [(1u8, 2u8), (1, 3), (2, 3), (2, 4), (3, 4)] {
            for lambda in Partition::in_box(k as usize, (n - k) as u32) {
                let deco = MPoly::schur(z(), &lambda, k as usize).unwrap();
                let s = sphere(n, k, deco);
                let got = evaluate_in_ring(&s, z()).unwrap();
                let full = lambda.parts() == vec![(n - k) as u32; k as usize];
                let sign = if (k as i64 * (k as i64 + 1) / 2) % 2 == 0 {
                    1
                } else {
                    -1
                };
                let want = if full {
                    Scalar::from_i64(z(), sign)
                } else {
                    Scalar::zero(z())
                };
                assert_eq!(got, want, "k={k} N={n} lambda={lambda}");
            }
        }
    }

    // theta foam values derived by hand from the state sum
    #[test]
    fn theta_values() {
        // N=2: <X_f theta> = 1, <X_g theta> = -1 in the default cyclic order
        let n = 2u8;
        let t = theta_foam(n, 1, 1);
        let xf = t.add_dot(0, 1).unwrap();
        assert_eq!(evaluate_in_ring(&xf, z()).unwrap(), Scalar::one(z()));
        let xg = t.add_dot(1, 1).unwrap();
        assert_eq!(evaluate_in_ring(&xg, z()).unwrap(), Scalar::from_i64(z(), -1));
        // flipped cyclic order negates
        let tf = theta_foam_ordered(n, 1, 1, true).add_dot(0, 1).unwrap();
        assert_eq!(evaluate_in_ring(&tf, z()).unwrap(), Scalar::from_i64(z(), -1));

        // N=3: <X_f^2 X_g theta> = 1 and <X_f X_g^2 theta> = -1
        let t3 = theta_foam(3, 1, 1);
        let a = t3.add_dot(0, 1).unwrap().add_dot(0, 1).unwrap().add_dot(1, 1).unwrap();
        assert_eq!(evaluate_in_ring(&a, z()).unwrap(), Scalar::one(z()));
        let b = t3.add_dot(0, 1).unwrap().add_dot(1, 1).unwrap().add_dot(1, 1).unwrap();
        assert_eq!(evaluate_in_ring(&b, z()).unwrap(), Scalar::from_i64(z(), -1));
        // too many dots on one facet vanish
        let c = t3.add_dot(0, 1).unwrap().add_dot(0, 1).unwrap().add_dot(0, 1).unwrap();
        assert_eq!(evaluate_in_ring(&c, z()).unwrap(), Scalar::zero(z()));
    }

    #[test]
    fn empty_foam_evaluates_to_one() {
        let e = Foam::empty(3);
        assert_eq!(evaluate_in_ring(&e, z()).unwrap(), Scalar::one(z()));
        assert_eq!(
            evaluate_in_ring(&e, RingSpec::ModN(2)).unwrap(),
            Scalar::one(RingSpec::ModN(2))
        );
    }

    #[test]
    fn mod_two_reduction_of_sphere() {
        let n = 3u8;
        let s = dotted_sphere(n, 1, &[2]);
        assert_eq!(
            evaluate_in_ring(&s, RingSpec::ModN(2)).unwrap(),
            Scalar::one(RingSpec::ModN(2))
        );
        // nonzero degree: no constant term
        let s2 = dotted_sphere(n, 1, &[1]);
        assert_eq!(
            evaluate_in_ring(&s2, RingSpec::Rationals).unwrap(),
            Scalar::zero(RingSpec::Rationals)
        );
    }

    #[test]
    fn evaluation_is_symmetric_and_homogeneous() {
        let s21 = MPoly::schur(z(), &Partition::new(vec![2, 1]).unwrap(), 2).unwrap();
        let foams = vec![
            dotted_sphere(3, 1, &[3]),
            sphere(4, 2, s21),
            theta_foam(3, 1, 1).add_dot(0, 1).unwrap().add_dot(1, 1).unwrap(),
            theta_foam(4, 1, 2).add_dot(2, 2).unwrap(),
        ];
        for f in foams {
            let p = evaluate(&f).unwrap();
            assert!(p.is_symmetric());
            if !p.is_zero() {
                assert!(f.degree() >= 0 && f.degree() % 2 == 0);
                assert_eq!(p.homogeneous_degree(), Some(f.degree() as u32 / 2));
            }
        }
    }

    #[test]
    fn multiplicative_under_disjoint_union() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let n = 3u8;
            let a = dotted_sphere(n, 1, &[rng.gen_range(0..4)]);
            let b = theta_foam(n, 1, 1)
                .add_dot(0, 1)
                .unwrap()
                .add_dot(rng.gen_range(0..2), 1)
                .unwrap();
            let u = a.disjoint_union(&b).unwrap();
            let pu = evaluate(&u).unwrap();
            let pa = evaluate(&a).unwrap();
            let pb = evaluate(&b).unwrap();
            assert_eq!(pu, &pa * &pb);
        }
    }

    // evaluation intertwines the derivative-sum operator
    #[test]
    fn nabla_commutes_with_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let n = 3u8;
        for _ in 0..25 {
            let f = match rng.gen_range(0..3) {
                0 => dotted_sphere(n, 1, &[rng.gen_range(0..5)]),
                1 => {
                    let deco = MPoly::schur(
                        z(),
                        &Partition::new(vec![rng.gen_range(1..3), 1]).unwrap(),
                        2,
                    )
                    .unwrap();
                    sphere(n, 2, deco)
                }
                _ => {
                    let mut t = theta_foam(n, 1, 1);
                    for _ in 0..rng.gen_range(0..3) {
                        t = t.add_dot(rng.gen_range(0..2), 1).unwrap();
                    }
                    t
                }
            };
            let lhs = evaluate_sum(&nabla_foam(&f), n).unwrap();
            let rhs = evaluate(&f).unwrap().nabla();
            assert_eq!(lhs, rhs);
        }
    }

    // a quantum-degree-2 evaluation is m(X_1+...+X_N), so its derivative sum
    // has constant term mN
    #[test]
    fn degree_two_nabla_divisible_by_n() {
        for n in 2..=4u8 {
            let f = dotted_sphere(n, 1, &[n as u16]); // degree 2(n-1)+... = deg 2
            assert_eq!(f.degree(), 2);
            let d = evaluate(&f).unwrap().nabla();
            let c = d.coeff(&vec![0u16; n as usize]);
            let v = c.to_bigint().unwrap();
            assert!(
                (&v % num_bigint::BigInt::from(n)).is_zero(),
                "N={n}: {v} not divisible"
            );
        }
    }

    // <F u G, H> = <F, mirror(G) u H> as closed evaluations
    #[test]
    fn pairing_adjointness() {
        let n = 3u8;
        // F: disc with a dots, G: cylinder with b dots, H: disc with c dots
        for (a, b, c) in [(0u16, 1u16, 1u16), (1, 0, 1), (2, 0, 0), (0, 0, 2)] {
            let mut f = cup(n, 1, 0);
            for _ in 0..a {
                f = f.add_dot(0, 1).unwrap();
            }
            let mut g = crate::foam::identity_foam(&crate::foam::MoyGraph::circle(n, 1, 0));
            for _ in 0..b {
                g = g.add_dot(0, 1).unwrap();
            }
            let mut h = cup(n, 1, 0);
            for _ in 0..c {
                h = h.add_dot(0, 1).unwrap();
            }
            // <FG, H> = <(F o G) o mirror(H)>
            let lhs = evaluate_in_ring(&f.compose(&g).unwrap().compose(&h.mirror()).unwrap(), z())
                .unwrap();
            // <F, mirror(G) o H> pairs F against the foam mirror(G) applied to H
            let gh = h.compose(&g.mirror()).unwrap();
            let rhs = evaluate_in_ring(&f.compose(&gh.mirror()).unwrap(), z()).unwrap();
            assert_eq!(lhs, rhs, "a={a} b={b} c={c}");
        }
    }

    #[test]
    fn digon_cup_pairings() {
        // <digon_cup with dots, digon_cup with dots> through the closed theta
        let n = 3u8;
        let d00 = digon_cup(n).unwrap();
        let d10 = d00.add_dot(0, 1).unwrap();
        let closed = d10.compose(&d10.mirror()).unwrap();
        // X_f^2 on the closed theta at N=3 pairs to zero
        assert_eq!(evaluate_in_ring(&closed, z()).unwrap(), Scalar::zero(z()));
        let d21 = d00
            .add_dot(0, 1)
            .unwrap()
            .add_dot(0, 1)
            .unwrap()
            .add_dot(1, 1)
            .unwrap();
        let closed2 = d00.compose(&d21.mirror()).unwrap();
        assert_eq!(evaluate_in_ring(&closed2, z()).unwrap(), Scalar::one(z()));
    }
}
