//! Combinatorial model of decorated sl(N) foams between MOY graphs.
//!
//! A foam is stored as an abstract stratified complex: facets with labels,
//! Euler characteristics and symmetric decorations; bindings carrying the
//! cyclic order of their three adjacent facets; singular points with the
//! tetrahedral local model. Embeddings are never stored; the cyclic data is
//! all that evaluation needs.

mod build;
mod graph;

pub use build::{cap, cup, digon_cap, digon_cup, identity_foam, sphere, theta_foam, theta_foam_ordered, unzip, zip};
pub use graph::{EdgeId, MoyCircle, MoyEdge, MoyGraph, MoyVertex, VertexId};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rings::RingSpec;
use crate::sympoly::MPoly;

pub type FacetId = usize;
pub type BindingId = usize;
pub type PointId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub label: u8,
    /// Euler characteristic of the compact facet-with-boundary.
    pub chi: i64,
    pub orientation: bool,
    /// Symmetric polynomial over Z in `label` facet-local variables.
    pub decoration: MPoly,
}

impl Facet {
    pub fn undecorated(label: u8, chi: i64) -> Facet {
        Facet {
            label,
            chi,
            orientation: true,
            decoration: MPoly::one(RingSpec::Integers, label as usize),
        }
    }
}

/// One end of an interval binding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BindingEnd {
    BottomVertex(VertexId),
    TopVertex(VertexId),
    Singular(PointId),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BindingKind {
    Circle,
    /// Oriented from `start` to `end`.
    Interval { start: BindingEnd, end: BindingEnd },
}

/// A curve where three facets meet. `cyclic` lists the adjacent facets in
/// the left-hand-rule order with respect to the binding orientation; the two
/// facets whose labels sum to the third are determined by the labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub kind: BindingKind,
    pub cyclic: [FacetId; 3],
}

impl Binding {
    /// (small, small, big) facet ids at this binding, from labels.
    pub fn roles(&self, foam: &Foam) -> Result<(FacetId, FacetId, FacetId)> {
        let l = |f: FacetId| foam.facets[f].label;
        let [a, b, c] = self.cyclic;
        if l(a) + l(b) == l(c) {
            Ok((a, b, c))
        } else if l(b) + l(c) == l(a) {
            Ok((b, c, a))
        } else if l(c) + l(a) == l(b) {
            Ok((c, a, b))
        } else {
            Err(Error::Input(format!(
                "binding labels {} {} {} violate the sum condition",
                l(a),
                l(b),
                l(c)
            )))
        }
    }
}

/// Tetrahedral singular point: six facets labeled a, b, c, a+b, b+c, a+b+c
/// and four incident binding ends.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    /// [a, b, c, ab, bc, abc]
    pub facets: [FacetId; 6],
    pub bindings: [BindingId; 4],
}

/// A decorated foam from `bottom` to `top`. Closed when both are empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Foam {
    pub n: u8,
    pub facets: Vec<Facet>,
    pub bindings: Vec<Binding>,
    pub points: Vec<SingularPoint>,
    pub bottom: MoyGraph,
    pub top: MoyGraph,
    pub bottom_edge_facet: BTreeMap<EdgeId, FacetId>,
    pub top_edge_facet: BTreeMap<EdgeId, FacetId>,
    pub bottom_vertex_binding: BTreeMap<VertexId, BindingId>,
    pub top_vertex_binding: BTreeMap<VertexId, BindingId>,
}

impl Foam {
    pub fn empty(n: u8) -> Foam {
        Foam {
            n,
            facets: vec![],
            bindings: vec![],
            points: vec![],
            bottom: MoyGraph::empty(n),
            top: MoyGraph::empty(n),
            bottom_edge_facet: BTreeMap::new(),
            top_edge_facet: BTreeMap::new(),
            bottom_vertex_binding: BTreeMap::new(),
            top_vertex_binding: BTreeMap::new(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top.is_empty()
    }

    /// Quantum degree: facet, interval-binding and singular-point terms plus
    /// twice the ordinary degree of the total decoration.
    pub fn degree(&self) -> i64 {
        let n = self.n as i64;
        let mut deg = 0i64;
        for f in &self.facets {
            let a = f.label as i64;
            deg -= a * (n - a) * f.chi;
        }
        for b in &self.bindings {
            if let BindingKind::Interval { .. } = b.kind {
                let (f, g, _) = self.binding_labels(b);
                let (a, bb) = (f as i64, g as i64);
                deg += a * bb + (a + bb) * (n - a - bb);
            }
        }
        for p in &self.points {
            let a = self.facets[p.facets[0]].label as i64;
            let b = self.facets[p.facets[1]].label as i64;
            let c = self.facets[p.facets[2]].label as i64;
            deg -= a * b + b * c + a * c + (a + b + c) * (n - a - b - c);
        }
        let dots: i64 = self
            .facets
            .iter()
            .map(|f| f.decoration.degree().unwrap_or(0) as i64)
            .sum();
        deg + 2 * dots
    }

    fn binding_labels(&self, b: &Binding) -> (u8, u8, u8) {
        let (f, g, h) = b.roles(self).expect("validated binding");
        (
            self.facets[f].label,
            self.facets[g].label,
            self.facets[h].label,
        )
    }

    /// Multiply the facet decoration by the elementary symmetric polynomial
    /// of weight `w` in the facet's variables.
    pub fn add_dot(&self, facet: FacetId, w: usize) -> Result<Foam> {
        let label = self
            .facets
            .get(facet)
            .ok_or_else(|| Error::Input(format!("no facet {facet}")))?
            .label as usize;
        if w < 1 || w > label {
            return Err(Error::Precondition(format!(
                "dot weight {w} out of 1..={label}"
            )));
        }
        let e = MPoly::elementary(RingSpec::Integers, w, label)?;
        Ok(self.decorated(facet, &e))
    }

    /// Multiply the facet decoration by an arbitrary symmetric polynomial.
    pub fn decorated(&self, facet: FacetId, p: &MPoly) -> Foam {
        let mut out = self.clone();
        out.facets[facet].decoration = &out.facets[facet].decoration * p;
        out
    }

    /// Replace the facet decoration outright.
    pub fn with_decoration(&self, facet: FacetId, p: MPoly) -> Foam {
        let mut out = self.clone();
        out.facets[facet].decoration = p;
        out
    }

    pub fn total_decoration_degree(&self) -> u32 {
        self.facets
            .iter()
            .map(|f| f.decoration.degree().unwrap_or(0))
            .sum()
    }

    pub fn is_undecorated(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.decoration == MPoly::one(RingSpec::Integers, f.label as usize))
    }

    pub fn has_zero_decoration(&self) -> bool {
        self.facets.iter().any(|f| f.decoration.is_zero())
    }

    /// Mirror across a horizontal plane: swaps bottom and top, reverses each
    /// binding's cyclic order, preserves labels, decorations, and chi.
    pub fn mirror(&self) -> Foam {
        let flip_end = |e: BindingEnd| match e {
            BindingEnd::BottomVertex(v) => BindingEnd::TopVertex(v),
            BindingEnd::TopVertex(v) => BindingEnd::BottomVertex(v),
            BindingEnd::Singular(p) => BindingEnd::Singular(p),
        };
        Foam {
            n: self.n,
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    orientation: !f.orientation,
                    ..f.clone()
                })
                .collect(),
            bindings: self
                .bindings
                .iter()
                .map(|b| Binding {
                    kind: match &b.kind {
                        BindingKind::Circle => BindingKind::Circle,
                        BindingKind::Interval { start, end } => BindingKind::Interval {
                            start: flip_end(*start),
                            end: flip_end(*end),
                        },
                    },
                    cyclic: [b.cyclic[2], b.cyclic[1], b.cyclic[0]],
                })
                .collect(),
            points: self.points.clone(),
            bottom: self.top.clone(),
            top: self.bottom.clone(),
            bottom_edge_facet: self.top_edge_facet.clone(),
            top_edge_facet: self.bottom_edge_facet.clone(),
            bottom_vertex_binding: self.top_vertex_binding.clone(),
            top_vertex_binding: self.bottom_vertex_binding.clone(),
        }
    }

    /// Glue along the middle graph. Facets crossing the interface merge;
    /// merged decorations multiply; chi is recomputed by inclusion-exclusion
    /// over the interface.
    pub fn compose(&self, other: &Foam) -> Result<Foam> {
        if !self.top.same_boundary(&other.bottom) {
            return Err(Error::BoundaryMismatch(
                "top of first foam differs from bottom of second".into(),
            ));
        }
        let interface = &self.top;
        let nf = self.facets.len();
        let nb = self.bindings.len();
        let np = self.points.len();

        // union-find over facets of both foams (other's shifted by nf)
        let total = nf + other.facets.len();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in interface.all_edge_ids() {
            let a = self.top_edge_facet[&e];
            let b = other.bottom_edge_facet[&e] + nf;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }

        // representatives -> new facet ids, deterministic order
        let mut class_of = vec![usize::MAX; total];
        let mut classes: Vec<usize> = Vec::new();
        for x in 0..total {
            let r = find(&mut parent, x);
            if class_of[r] == usize::MAX {
                class_of[r] = classes.len();
                classes.push(r);
            }
            class_of[x] = class_of[r];
        }
        let old_facet = |x: usize| -> &Facet {
            if x < nf {
                &self.facets[x]
            } else {
                &other.facets[x - nf]
            }
        };

        let mut facets: Vec<Facet> = Vec::with_capacity(classes.len());
        for (ci, _) in classes.iter().enumerate() {
            let members: Vec<usize> = (0..total).filter(|&x| class_of[x] == ci).collect();
            let label = old_facet(members[0]).label;
            let mut chi = 0i64;
            let mut deco = MPoly::one(RingSpec::Integers, label as usize);
            let mut orientation = old_facet(members[0]).orientation;
            for &m in &members {
                let f = old_facet(m);
                if f.label != label {
                    return Err(Error::BoundaryMismatch(format!(
                        "facet labels {} and {} glued along the interface",
                        f.label, label
                    )));
                }
                chi += f.chi;
                deco = &deco * &f.decoration;
                if m < nf {
                    orientation = f.orientation;
                }
            }
            // each interface arc glued along subtracts one; circles are free
            for (&e, _) in &interface.edges {
                if class_of[self.top_edge_facet[&e]] == ci {
                    chi -= 1;
                }
            }
            facets.push(Facet {
                label,
                chi,
                orientation,
                decoration: deco,
            });
        }
        let map_facet = |x: usize| class_of[x];

        // chain binding segments through interface vertices
        // seg ids: 0..nb from self, nb.. from other
        let seg_count = nb + other.bindings.len();
        let seg = |i: usize| -> &Binding {
            if i < nb {
                &self.bindings[i]
            } else {
                &other.bindings[i - nb]
            }
        };
        let raw_end = |i: usize, which: u8| -> BindingEnd {
            match seg(i).kind {
                BindingKind::Interval { start, end } => {
                    if which == 0 {
                        start
                    } else {
                        end
                    }
                }
                BindingKind::Circle => unreachable!("circles have no ends"),
            }
        };
        // the interface vertex at an endpoint, when the endpoint is glued
        let vertex_at = |i: usize, which: u8| -> Option<VertexId> {
            match raw_end(i, which) {
                BindingEnd::TopVertex(v) if i < nb => Some(v),
                BindingEnd::BottomVertex(v) if i >= nb => Some(v),
                _ => None,
            }
        };
        // endpoint pairs joined at each interface vertex
        let mut join: BTreeMap<VertexId, Vec<(usize, u8)>> = BTreeMap::new();
        for i in 0..seg_count {
            if matches!(seg(i).kind, BindingKind::Circle) {
                continue;
            }
            for which in [0u8, 1u8] {
                if let Some(v) = vertex_at(i, which) {
                    join.entry(v).or_default().push((i, which));
                }
            }
        }
        for (&v, ends) in &join {
            if ends.len() != 2 {
                return Err(Error::BoundaryMismatch(format!(
                    "{} binding ends meet at interface vertex {v}",
                    ends.len()
                )));
            }
        }
        let partner = |i: usize, which: u8| -> Option<(usize, u8)> {
            let v = vertex_at(i, which)?;
            let ends = &join[&v];
            Some(if ends[0] == (i, which) {
                ends[1]
            } else {
                ends[0]
            })
        };

        let mut new_bindings: Vec<Binding> = Vec::new();
        let mut seg_to_new: Vec<Option<(BindingId, bool)>> = vec![None; seg_count]; // (id, reversed)
        let mut bottom_vertex_binding = BTreeMap::new();
        let mut top_vertex_binding = BTreeMap::new();

        // circles pass through unchanged
        for i in 0..seg_count {
            if matches!(seg(i).kind, BindingKind::Circle) {
                let cyc = seg(i)
                    .cyclic
                    .map(|f| map_facet(if i < nb { f } else { f + nf }));
                seg_to_new[i] = Some((new_bindings.len(), false));
                new_bindings.push(Binding {
                    kind: BindingKind::Circle,
                    cyclic: cyc,
                });
            }
        }

        let mut visited = vec![false; seg_count];
        for i0 in 0..seg_count {
            if visited[i0] || matches!(seg(i0).kind, BindingKind::Circle) {
                continue;
            }
            // walk backwards from (i0, start-end) to an extremity or cycle
            let mut head = (i0, 0u8);
            let mut is_cycle = false;
            loop {
                match partner(head.0, head.1) {
                    None => break,
                    Some((s, w)) => {
                        if s == i0 && (1 - w) == 0 {
                            is_cycle = true;
                            break;
                        }
                        head = (s, 1 - w); // continue from the far end of s
                    }
                }
            }
            // traverse forward from `head`: enter each segment at `enter`,
            // leave at the opposite end; reversed when entered at its `end`
            let mut chain: Vec<(usize, bool)> = Vec::new();
            let (mut cur, mut enter) = if is_cycle { (i0, 0u8) } else { head };
            loop {
                visited[cur] = true;
                chain.push((cur, enter == 1));
                match partner(cur, 1 - enter) {
                    None => break,
                    Some((s, w)) => {
                        if visited[s] {
                            break;
                        }
                        cur = s;
                        enter = w;
                    }
                }
            }

            // cyclic data must agree along the chain
            let oriented = |s: usize, rev: bool| -> [FacetId; 3] {
                let raw = seg(s)
                    .cyclic
                    .map(|f| map_facet(if s < nb { f } else { f + nf }));
                if rev {
                    [raw[2], raw[1], raw[0]]
                } else {
                    raw
                }
            };
            let ref_cyc = oriented(chain[0].0, chain[0].1);
            for &(s, rev) in &chain[1..] {
                if !cyclic_equal(&oriented(s, rev), &ref_cyc) {
                    return Err(Error::BoundaryMismatch(
                        "cyclic orders disagree along a glued binding".into(),
                    ));
                }
            }

            let new_id = new_bindings.len();
            for &(s, rev) in &chain {
                seg_to_new[s] = Some((new_id, rev));
            }
            let kind = if is_cycle {
                BindingKind::Circle
            } else {
                let (s_first, rev_f) = chain[0];
                let (s_last, rev_l) = *chain.last().unwrap();
                let start = raw_end(s_first, if rev_f { 1 } else { 0 });
                let end = raw_end(s_last, if rev_l { 0 } else { 1 });
                BindingKind::Interval {
                    start: shift_singular(start, s_first < nb, np),
                    end: shift_singular(end, s_last < nb, np),
                }
            };
            new_bindings.push(Binding {
                kind,
                cyclic: ref_cyc,
            });
        }

        // boundary vertex maps
        for (&v, &b) in &self.bottom_vertex_binding {
            bottom_vertex_binding.insert(v, seg_to_new[b].expect("mapped").0);
        }
        for (&v, &b) in &other.top_vertex_binding {
            top_vertex_binding.insert(v, seg_to_new[b + nb].expect("mapped").0);
        }

        // singular points: keep both sides, remap ids
        let mut points: Vec<SingularPoint> = Vec::new();
        for p in &self.points {
            points.push(SingularPoint {
                facets: p.facets.map(map_facet),
                bindings: p.bindings.map(|b| seg_to_new[b].expect("mapped").0),
            });
        }
        for p in &other.points {
            points.push(SingularPoint {
                facets: p.facets.map(|f| map_facet(f + nf)),
                bindings: p.bindings.map(|b| seg_to_new[b + nb].expect("mapped").0),
            });
        }

        let foam = Foam {
            n: self.n,
            facets,
            bindings: new_bindings,
            points,
            bottom: self.bottom.clone(),
            top: other.top.clone(),
            bottom_edge_facet: self
                .bottom_edge_facet
                .iter()
                .map(|(&e, &f)| (e, map_facet(f)))
                .collect(),
            top_edge_facet: other
                .top_edge_facet
                .iter()
                .map(|(&e, &f)| (e, map_facet(f + nf)))
                .collect(),
            bottom_vertex_binding,
            top_vertex_binding,
        };
        foam.validate()?;
        Ok(foam)
    }

    /// Disjoint union; ids must already be disjoint.
    pub fn disjoint_union(&self, other: &Foam) -> Result<Foam> {
        let nf = self.facets.len();
        let nb = self.bindings.len();
        let np = self.points.len();
        let mut out = self.clone();
        out.bottom = self.bottom.disjoint_union(&other.bottom)?;
        out.top = self.top.disjoint_union(&other.top)?;
        out.facets.extend(other.facets.iter().cloned());
        for b in &other.bindings {
            out.bindings.push(Binding {
                kind: match &b.kind {
                    BindingKind::Circle => BindingKind::Circle,
                    BindingKind::Interval { start, end } => BindingKind::Interval {
                        start: shift_point_ref(*start, np),
                        end: shift_point_ref(*end, np),
                    },
                },
                cyclic: b.cyclic.map(|f| f + nf),
            });
        }
        for p in &other.points {
            out.points.push(SingularPoint {
                facets: p.facets.map(|f| f + nf),
                bindings: p.bindings.map(|b| b + nb),
            });
        }
        for (&e, &f) in &other.bottom_edge_facet {
            out.bottom_edge_facet.insert(e, f + nf);
        }
        for (&e, &f) in &other.top_edge_facet {
            out.top_edge_facet.insert(e, f + nf);
        }
        for (&v, &b) in &other.bottom_vertex_binding {
            out.bottom_vertex_binding.insert(v, b + nb);
        }
        for (&v, &b) in &other.top_vertex_binding {
            out.top_vertex_binding.insert(v, b + nb);
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::Input(m));
        self.bottom.validate()?;
        self.top.validate()?;
        for (i, f) in self.facets.iter().enumerate() {
            if f.label == 0 || f.label > self.n {
                return err(format!("facet {i} label {} out of range", f.label));
            }
            if f.decoration.nvars() != f.label as usize {
                return err(format!("facet {i} decoration variable count"));
            }
            if !f.decoration.is_symmetric() {
                return err(format!("facet {i} decoration not symmetric"));
            }
        }
        for (i, b) in self.bindings.iter().enumerate() {
            for &f in &b.cyclic {
                if f >= self.facets.len() {
                    return err(format!("binding {i} names missing facet {f}"));
                }
            }
            b.roles(self)?;
            if let BindingKind::Interval { start, end } = &b.kind {
                for e in [start, end] {
                    match e {
                        BindingEnd::BottomVertex(v) => {
                            if self.bottom_vertex_binding.get(v) != Some(&i) {
                                return err(format!("binding {i} end at unmapped bottom vertex"));
                            }
                        }
                        BindingEnd::TopVertex(v) => {
                            if self.top_vertex_binding.get(v) != Some(&i) {
                                return err(format!("binding {i} end at unmapped top vertex"));
                            }
                        }
                        BindingEnd::Singular(p) => {
                            if *p >= self.points.len() {
                                return err(format!("binding {i} ends at missing point {p}"));
                            }
                        }
                    }
                }
            }
        }
        // boundary maps: every boundary stratum is covered with matching labels
        for (g, ef, vb, is_bottom) in [
            (
                &self.bottom,
                &self.bottom_edge_facet,
                &self.bottom_vertex_binding,
                true,
            ),
            (
                &self.top,
                &self.top_edge_facet,
                &self.top_vertex_binding,
                false,
            ),
        ] {
            for e in g.all_edge_ids() {
                let Some(&f) = ef.get(&e) else {
                    return err(format!("boundary edge {e} not on any facet"));
                };
                if self.facets[f].label != g.label_of(e).unwrap() {
                    return err(format!("boundary edge {e} label mismatch"));
                }
            }
            for (&v, &b) in vb {
                if !g.vertices.contains_key(&v) {
                    return err(format!("vertex map names missing vertex {v}"));
                }
                let Some(binding) = self.bindings.get(b) else {
                    return err(format!("vertex {v} mapped to missing binding"));
                };
                match &binding.kind {
                    BindingKind::Circle => {
                        return err(format!("vertex {v} mapped to a circle binding"))
                    }
                    BindingKind::Interval { start, end } => {
                        let want = if is_bottom {
                            BindingEnd::BottomVertex(v)
                        } else {
                            BindingEnd::TopVertex(v)
                        };
                        if *start != want && *end != want {
                            return err(format!("binding does not end at vertex {v}"));
                        }
                    }
                }
                // the three facets at the binding match the three edge sheets
                let vtx = g.vertices[&v];
                for e in vtx.incident() {
                    let f = ef[&e];
                    if !binding.cyclic.contains(&f) {
                        return err(format!("facet over edge {e} missing at vertex {v}"));
                    }
                }
            }
            for (&v, _) in &g.vertices {
                if !vb.contains_key(&v) {
                    return err(format!("boundary vertex {v} not on any binding"));
                }
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            let l = |k: usize| self.facets[p.facets[k]].label as i64;
            let (a, b, c) = (l(0), l(1), l(2));
            if l(3) != a + b || l(4) != b + c || l(5) != a + b + c {
                return err(format!("singular point {i} label pattern"));
            }
            for &b in &p.bindings {
                if b >= self.bindings.len() {
                    return err(format!("singular point {i} names missing binding"));
                }
            }
        }
        Ok(())
    }
}

fn cyclic_equal(a: &[FacetId; 3], b: &[FacetId; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|i| a[i] == b[(i + r) % 3]))
}

fn shift_singular(e: BindingEnd, from_self: bool, np: usize) -> BindingEnd {
    match e {
        BindingEnd::Singular(p) if !from_self => BindingEnd::Singular(p + np),
        x => x,
    }
}

fn shift_point_ref(e: BindingEnd, np: usize) -> BindingEnd {
    match e {
        BindingEnd::Singular(p) => BindingEnd::Singular(p + np),
        x => x,
    }
}
