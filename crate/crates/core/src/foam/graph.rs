use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type EdgeId = u32;
pub type VertexId = u32;

/// A trivalent vertex. The left/right distinction records the planar cyclic
/// order of the incident edges, which fixes the cyclic order of facets around
/// the binding any foam puts over the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoyVertex {
    Merge {
        left: EdgeId,
        right: EdgeId,
        out: EdgeId,
    },
    Split {
        input: EdgeId,
        left: EdgeId,
        right: EdgeId,
    },
}

impl MoyVertex {
    pub fn incident(&self) -> [EdgeId; 3] {
        match *self {
            MoyVertex::Merge { left, right, out } => [left, right, out],
            MoyVertex::Split { input, left, right } => [input, left, right],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyEdge {
    pub label: u8,
    pub source: VertexId,
    pub target: VertexId,
}

/// A circle component without vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyCircle {
    pub label: u8,
    /// +1 counterclockwise, -1 clockwise.
    pub orientation: i8,
}

/// A planar trivalent graph with conservatively labeled oriented edges.
/// Sources and sinks are not permitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyGraph {
    pub n: u8,
    pub vertices: BTreeMap<VertexId, MoyVertex>,
    pub edges: BTreeMap<EdgeId, MoyEdge>,
    pub circles: BTreeMap<EdgeId, MoyCircle>,
    #[serde(default)]
    pub basepoints: Vec<(EdgeId, String)>,
}

impl MoyGraph {
    pub fn empty(n: u8) -> MoyGraph {
        MoyGraph {
            n,
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            circles: BTreeMap::new(),
            basepoints: Vec::new(),
        }
    }

    /// A single circle labeled `label`, with the given id.
    pub fn circle(n: u8, label: u8, id: EdgeId) -> MoyGraph {
        let mut g = MoyGraph::empty(n);
        g.circles.insert(
            id,
            MoyCircle {
                label,
                orientation: 1,
            },
        );
        g
    }

    /// Theta graph: a wide edge whose split legs loop back to the merge.
    /// Edge ids: 0, 1 the thin edges (left, right), 2 the wide edge;
    /// vertices: 0 merge, 1 split.
    pub fn theta(n: u8) -> MoyGraph {
        let mut g = MoyGraph::empty(n);
        g.edges.insert(
            0,
            MoyEdge {
                label: 1,
                source: 1,
                target: 0,
            },
        );
        g.edges.insert(
            1,
            MoyEdge {
                label: 1,
                source: 1,
                target: 0,
            },
        );
        g.edges.insert(
            2,
            MoyEdge {
                label: 2,
                source: 0,
                target: 1,
            },
        );
        g.vertices.insert(
            0,
            MoyVertex::Merge {
                left: 0,
                right: 1,
                out: 2,
            },
        );
        g.vertices.insert(
            1,
            MoyVertex::Split {
                input: 2,
                left: 0,
                right: 1,
            },
        );
        g
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.circles.is_empty()
    }

    pub fn label_of(&self, id: EdgeId) -> Option<u8> {
        self.edges
            .get(&id)
            .map(|e| e.label)
            .or_else(|| self.circles.get(&id).map(|c| c.label))
    }

    /// Edge and circle ids, the strata a foam facet can border.
    pub fn all_edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().chain(self.circles.keys()).copied()
    }

    pub fn disjoint_union(&self, other: &MoyGraph) -> Result<MoyGraph> {
        if self.n != other.n {
            return Err(Error::Input("disjoint union across different N".into()));
        }
        let mut g = self.clone();
        for (&id, e) in &other.edges {
            if g.edges.insert(id, *e).is_some() || g.circles.contains_key(&id) {
                return Err(Error::Input(format!("duplicate edge id {id} in union")));
            }
        }
        for (&id, c) in &other.circles {
            if g.circles.insert(id, *c).is_some() || g.edges.contains_key(&id) {
                return Err(Error::Input(format!("duplicate circle id {id} in union")));
            }
        }
        for (&id, v) in &other.vertices {
            if g.vertices.insert(id, *v).is_some() {
                return Err(Error::Input(format!("duplicate vertex id {id} in union")));
            }
        }
        g.basepoints.extend(other.basepoints.iter().cloned());
        Ok(g)
    }

    /// Shift every edge, circle, and vertex id by the given offsets.
    pub fn with_shifted_ids(&self, edge_off: u32, vertex_off: u32) -> MoyGraph {
        let me = |id: EdgeId| id + edge_off;
        let mv = |id: VertexId| id + vertex_off;
        MoyGraph {
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|(&id, v)| {
                    let v2 = match *v {
                        MoyVertex::Merge { left, right, out } => MoyVertex::Merge {
                            left: me(left),
                            right: me(right),
                            out: me(out),
                        },
                        MoyVertex::Split { input, left, right } => MoyVertex::Split {
                            input: me(input),
                            left: me(left),
                            right: me(right),
                        },
                    };
                    (mv(id), v2)
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(&id, e)| {
                    (
                        me(id),
                        MoyEdge {
                            label: e.label,
                            source: mv(e.source),
                            target: mv(e.target),
                        },
                    )
                })
                .collect(),
            circles: self.circles.iter().map(|(&id, c)| (me(id), *c)).collect(),
            basepoints: self
                .basepoints
                .iter()
                .map(|(id, m)| (me(*id), m.clone()))
                .collect(),
        }
    }

    pub fn max_edge_id(&self) -> EdgeId {
        self.all_edge_ids().max().map_or(0, |m| m + 1)
    }

    pub fn max_vertex_id(&self) -> VertexId {
        self.vertices.keys().max().map_or(0, |m| m + 1)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::Input(m));
        for (&id, e) in &self.edges {
            if e.label == 0 || e.label > self.n {
                return err(format!("edge {id} label {} out of 1..={}", e.label, self.n));
            }
            for v in [e.source, e.target] {
                if !self.vertices.contains_key(&v) {
                    return err(format!("edge {id} touches missing vertex {v}"));
                }
            }
        }
        for (&id, c) in &self.circles {
            if c.label == 0 || c.label > self.n {
                return err(format!("circle {id} label {} out of range", c.label));
            }
            if self.edges.contains_key(&id) {
                return err(format!("id {id} used for both edge and circle"));
            }
        }
        for (&vid, v) in &self.vertices {
            let lab = |e: EdgeId| -> Result<u8> {
                self.edges
                    .get(&e)
                    .map(|e| e.label)
                    .ok_or_else(|| Error::Input(format!("vertex {vid} names missing edge {e}")))
            };
            match *v {
                MoyVertex::Merge { left, right, out } => {
                    if lab(left)? + lab(right)? != lab(out)? {
                        return err(format!("label sum fails at merge {vid}"));
                    }
                    for (e, into) in [(left, true), (right, true), (out, false)] {
                        let edge = &self.edges[&e];
                        let ok = if into {
                            edge.target == vid
                        } else {
                            edge.source == vid
                        };
                        if !ok {
                            return err(format!("edge {e} orientation wrong at merge {vid}"));
                        }
                    }
                }
                MoyVertex::Split { input, left, right } => {
                    if lab(left)? + lab(right)? != lab(input)? {
                        return err(format!("label sum fails at split {vid}"));
                    }
                    for (e, into) in [(input, true), (left, false), (right, false)] {
                        let edge = &self.edges[&e];
                        let ok = if into {
                            edge.target == vid
                        } else {
                            edge.source == vid
                        };
                        if !ok {
                            return err(format!("edge {e} orientation wrong at split {vid}"));
                        }
                    }
                }
            }
        }
        // every edge end lands in a vertex slot exactly once
        for (&id, e) in &self.edges {
            let at = |vid: VertexId, want_end: bool| -> usize {
                self.vertices[&vid]
                    .incident()
                    .iter()
                    .filter(|&&x| x == id)
                    .count()
                    .min(if want_end { 2 } else { 2 })
            };
            if at(e.source, false) == 0 || at(e.target, true) == 0 {
                return err(format!("edge {id} not listed at its endpoints"));
            }
        }
        for (e, _) in &self.basepoints {
            if self.label_of(*e).is_none() {
                return err(format!("basepoint on missing edge {e}"));
            }
        }
        Ok(())
    }

    /// Structural equality as labeled graphs matched by id.
    pub fn same_boundary(&self, other: &MoyGraph) -> bool {
        self.n == other.n
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.circles == other.circles
    }
}
