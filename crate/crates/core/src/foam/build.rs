//! Constructors for the elementary foams everything else is glued from.

use std::collections::BTreeMap;

use super::graph::{EdgeId, MoyGraph, MoyVertex};
use super::{Binding, BindingEnd, BindingKind, Facet, Foam};
use crate::error::Result;
use crate::sympoly::MPoly;

/// Disc from the empty graph to a circle labeled `label` with id `circle_id`.
pub fn cup(n: u8, label: u8, circle_id: EdgeId) -> Foam {
    let mut f = Foam::empty(n);
    f.top = MoyGraph::circle(n, label, circle_id);
    f.facets.push(Facet::undecorated(label, 1));
    f.top_edge_facet.insert(circle_id, 0);
    f
}

/// Disc from a circle to the empty graph.
pub fn cap(n: u8, label: u8, circle_id: EdgeId) -> Foam {
    cup(n, label, circle_id).mirror()
}

/// Closed 2-sphere with a single facet.
pub fn sphere(n: u8, label: u8, decoration: MPoly) -> Foam {
    let mut f = Foam::empty(n);
    f.facets.push(Facet {
        label,
        chi: 2,
        orientation: true,
        decoration,
    });
    f
}

/// Three discs (labels a, b, a+b) sharing one circle binding. `flip` selects
/// the other cyclic order of the facets around the binding.
pub fn theta_foam_ordered(n: u8, a: u8, b: u8, flip: bool) -> Foam {
    let mut f = Foam::empty(n);
    f.facets.push(Facet::undecorated(a, 1));
    f.facets.push(Facet::undecorated(b, 1));
    f.facets.push(Facet::undecorated(a + b, 1));
    f.bindings.push(Binding {
        kind: BindingKind::Circle,
        cyclic: if flip { [1, 0, 2] } else { [0, 1, 2] },
    });
    f
}

pub fn theta_foam(n: u8, a: u8, b: u8) -> Foam {
    theta_foam_ordered(n, a, b, false)
}

/// The left-hand-rule cyclic order of the three sheets over a vertex, for a
/// binding oriented upward.
fn vertex_cyclic(v: &MoyVertex, sheet: &BTreeMap<EdgeId, usize>) -> [usize; 3] {
    match *v {
        MoyVertex::Merge { left, right, out } => [sheet[&right], sheet[&left], sheet[&out]],
        MoyVertex::Split { input, left, right } => [sheet[&left], sheet[&right], sheet[&input]],
    }
}

/// The product foam over a graph: a quad sheet per edge, an annulus per
/// circle, a vertical binding per vertex.
pub fn identity_foam(g: &MoyGraph) -> Foam {
    let mut f = Foam::empty(g.n);
    f.bottom = g.clone();
    f.top = g.clone();
    let mut sheet: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (&id, e) in &g.edges {
        sheet.insert(id, f.facets.len());
        f.facets.push(Facet::undecorated(e.label, 1));
    }
    for (&id, c) in &g.circles {
        sheet.insert(id, f.facets.len());
        f.facets.push(Facet::undecorated(c.label, 0));
    }
    for (&id, &fc) in &sheet {
        f.bottom_edge_facet.insert(id, fc);
        f.top_edge_facet.insert(id, fc);
    }
    for (&vid, v) in &g.vertices {
        let b = f.bindings.len();
        f.bindings.push(Binding {
            kind: BindingKind::Interval {
                start: BindingEnd::BottomVertex(vid),
                end: BindingEnd::TopVertex(vid),
            },
            cyclic: vertex_cyclic(v, &sheet),
        });
        f.bottom_vertex_binding.insert(vid, b);
        f.top_vertex_binding.insert(vid, b);
    }
    f
}

/// Merge two circles (ids 0 and 1) into the theta graph: the sheet over a
/// pair of strands folds up into a wide edge. Facets: 0 left, 1 right,
/// 2 the wide bigon.
pub fn zip(n: u8) -> Foam {
    let mut f = Foam::empty(n);
    f.bottom = MoyGraph::circle(n, 1, 0)
        .disjoint_union(&MoyGraph::circle(n, 1, 1))
        .unwrap();
    f.top = MoyGraph::theta(n);
    f.facets.push(Facet::undecorated(1, 0)); // left sheet: annulus
    f.facets.push(Facet::undecorated(1, 0)); // right sheet
    f.facets.push(Facet::undecorated(2, 1)); // wide bigon
    f.bottom_edge_facet.insert(0, 0);
    f.bottom_edge_facet.insert(1, 1);
    // theta edge ids: 0 left leg, 1 right leg, 2 wide; vertices: 0 merge, 1 split
    f.top_edge_facet.insert(0, 0);
    f.top_edge_facet.insert(1, 1);
    f.top_edge_facet.insert(2, 2);
    f.bindings.push(Binding {
        kind: BindingKind::Interval {
            start: BindingEnd::TopVertex(0),
            end: BindingEnd::TopVertex(1),
        },
        cyclic: [0, 1, 2],
    });
    f.top_vertex_binding.insert(0, 0);
    f.top_vertex_binding.insert(1, 0);
    f
}

/// Split the theta graph's wide edge back into two circles.
pub fn unzip(n: u8) -> Foam {
    zip(n).mirror()
}

/// Cup foam of the theta graph: two discs capped onto the zip.
pub fn digon_cup(n: u8) -> Result<Foam> {
    let discs = cup(n, 1, 0).disjoint_union(&cup(n, 1, 1))?;
    discs.compose(&zip(n))
}

pub fn digon_cap(n: u8) -> Result<Foam> {
    Ok(digon_cup(n)?.mirror())
}
