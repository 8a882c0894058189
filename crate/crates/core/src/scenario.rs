//! One-dimensional measurement spaces.
//!
//! A [`Scenario`] is a finite multigraph with loops: every non-degenerate
//! edge has a source (its `d1` face) and a target (its `d0` face). Walks,
//! circles, the cycle space and the edge-collapsing quotient live here.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Scenario {}

impl Scenario {
    /// Builds a scenario from vertex ids and `(edge id, source id, target id)`
    /// triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut out = Scenario {
            vertices,
            edges: Vec::new(),
            vertex_index,
            edge_index: HashMap::new(),
        };
        for (id, source, target) in edges {
            let source = out.vertex(&source)?;
            let target = out.vertex(&target)?;
            out.push_edge(id, source, target)?;
        }
        Ok(out)
    }

    /// Builds a scenario with generated ids `v0, v1, ...` and `e0, e1, ...`.
    pub fn from_indices(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (format!("e{i}"), format!("v{s}"), format!("v{t}")));
        Scenario::new(vertices, edges)
    }

    /// The `n`-cycle `v0 -> v1 -> ... -> v(n-1) -> v0`; `n = 1` is a loop.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1, "a cycle needs at least one edge");
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_indices(n, &edges).expect("generated ids are unique")
    }

    /// A path with `n` edges `v0 -> v1 -> ... -> vn`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_indices(n + 1, &edges).expect("generated ids are unique")
    }

    /// Two vertices joined by `k` parallel edges `v0 -> v1`.
    pub fn theta(k: usize) -> Self {
        Self::from_indices(2, &vec![(0, 1); k]).expect("generated ids are unique")
    }

    fn push_edge(&mut self, id: String, source: VertexId, target: VertexId) -> Result<EdgeId> {
        let eid = EdgeId(self.edges.len());
        if self.edge_index.insert(id.clone(), eid).is_some() {
            return Err(Error::DuplicateId(id));
        }
        self.edges.push(Edge { id, source, target });
        Ok(eid)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// Edges incident to `v`; a loop is reported once.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids()
            .filter(move |&e| self.edges[e.0].source == v || self.edges[e.0].target == v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.source == v) + usize::from(e.target == v))
            .sum()
    }

    pub fn is_isolated(&self, v: VertexId) -> bool {
        self.incident(v).next().is_none()
    }

    /// Undirected path components, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.num_vertices()];
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for root in self.vertex_ids() {
            if comp[root.0] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![root];
            comp[root.0] = c;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for (_, _, w) in self.neighbours(v) {
                    if comp[w.0] == usize::MAX {
                        comp[w.0] = c;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// `(edge, orientation leaving v, other endpoint)` in edge order.
    fn neighbours(&self, v: VertexId) -> Vec<(EdgeId, Orientation, VertexId)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.source == v {
                out.push((EdgeId(i), Orientation::Forward, e.target));
            } else if e.target == v {
                out.push((EdgeId(i), Orientation::Reversed, e.source));
            }
        }
        out
    }

    /// Breadth-first spanning forest, roots taken in the given vertex order.
    pub fn spanning_forest(&self, order: &[VertexId]) -> SpanningForest {
        let n = self.num_vertices();
        let mut parent: Vec<Option<Step>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut root = vec![VertexId(0); n];
        let mut tree_edges = vec![false; self.num_edges()];
        let mut visit_order = Vec::with_capacity(n);
        let roots = order.iter().copied().chain(self.vertex_ids());
        for r in roots {
            if depth[r.0] != usize::MAX {
                continue;
            }
            depth[r.0] = 0;
            root[r.0] = r;
            visit_order.push(r);
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for (e, o, w) in self.neighbours(v) {
                    if depth[w.0] == usize::MAX {
                        depth[w.0] = depth[v.0] + 1;
                        root[w.0] = r;
                        parent[w.0] = Some(Step { edge: e, orientation: o });
                        tree_edges[e.0] = true;
                        visit_order.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            depth,
            root,
            tree_edges,
            visit_order,
        }
    }

    /// Fundamental circles of the default (vertex-id ordered) spanning forest.
    pub fn cycle_basis(&self) -> Vec<Circle> {
        let order: Vec<VertexId> = self.vertex_ids().collect();
        self.cycle_basis_from(&order)
    }

    /// Fundamental circles of the spanning forest rooted in `order`. There are
    /// `|edges| - |vertices| + |components|` of them.
    pub fn cycle_basis_from(&self, order: &[VertexId]) -> Vec<Circle> {
        let forest = self.spanning_forest(order);
        let mut out = Vec::new();
        for e in self.edge_ids() {
            if forest.tree_edges[e.0] {
                continue;
            }
            let edge = self.edge(e);
            let mut steps = vec![Step::forward(e)];
            steps.extend(forest.tree_path(self, edge.target, edge.source));
            out.push(Circle::new(self, steps).expect("fundamental cycle is a circle"));
        }
        out
    }

    pub fn betti_number(&self) -> usize {
        self.num_edges() + self.connected_components().len() - self.num_vertices()
    }

    /// Every vertex-simple circle with at most `max_len` edges, once each up to
    /// rotation and reflection, in canonical form.
    pub fn enumerate_circles(&self, max_len: usize) -> impl Iterator<Item = Circle> {
        let mut out = Vec::new();
        for e0 in self.edge_ids() {
            let edge = self.edge(e0);
            if edge.is_loop() {
                if max_len >= 1 {
                    out.push(Circle(Walk {
                        steps: vec![Step::forward(e0)],
                    }));
                }
                continue;
            }
            if max_len < 2 {
                continue;
            }
            let mut visited = vec![false; self.num_vertices()];
            visited[edge.source.0] = true;
            visited[edge.target.0] = true;
            let mut path = vec![Step::forward(e0)];
            self.extend_circles(e0, edge.source, edge.target, max_len, &mut visited, &mut path, &mut out);
        }
        out.into_iter()
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_circles(
        &self,
        least: EdgeId,
        start: VertexId,
        at: VertexId,
        max_len: usize,
        visited: &mut [bool],
        path: &mut Vec<Step>,
        out: &mut Vec<Circle>,
    ) {
        for (e, o, w) in self.neighbours(at) {
            if e <= least || self.edge(e).is_loop() || path.iter().any(|s| s.edge == e) {
                continue;
            }
            if w == start {
                path.push(Step { edge: e, orientation: o });
                out.push(Circle(Walk { steps: path.clone() }));
                path.pop();
            } else if !visited[w.0] && path.len() + 1 < max_len {
                visited[w.0] = true;
                path.push(Step { edge: e, orientation: o });
                self.extend_circles(least, start, w, max_len, visited, path, out);
                path.pop();
                visited[w.0] = false;
            }
        }
    }

    /// Identifies the endpoints of the non-loop edge `e` (the target is merged
    /// into the source) and removes `e`.
    pub fn collapse_edge(self: &Arc<Self>, e: EdgeId) -> Result<CollapseMap> {
        if e.0 >= self.num_edges() {
            return Err(Error::UnknownEdge(format!("#{}", e.0)));
        }
        let edge = self.edge(e).clone();
        if edge.is_loop() {
            return Err(Error::LoopCollapse(edge.id));
        }
        let mut vertex_map = Vec::with_capacity(self.num_vertices());
        let mut kept = Vec::new();
        for v in self.vertex_ids() {
            if v == edge.target {
                vertex_map.push(None);
            } else {
                vertex_map.push(Some(VertexId(kept.len())));
                kept.push(self.vertex_name(v).to_string());
            }
        }
        let merged = vertex_map[edge.source.0].expect("source is kept");
        let vertex_map: Vec<VertexId> = vertex_map.into_iter().map(|v| v.unwrap_or(merged)).collect();
        let mut result = Scenario::new(kept, std::iter::empty())?;
        let mut edge_map = Vec::with_capacity(self.num_edges());
        for (i, other) in self.edges.iter().enumerate() {
            if i == e.0 {
                edge_map.push(None);
                continue;
            }
            let id = result.push_edge(
                other.id.clone(),
                vertex_map[other.source.0],
                vertex_map[other.target.0],
            )?;
            edge_map.push(Some(id));
        }
        Ok(CollapseMap {
            source: Arc::clone(self),
            collapsed: e,
            result: Arc::new(result),
            vertex_map,
            edge_map,
            merged,
        })
    }

    /// The subscenario spanned by `sub`, with index maps from the new
    /// scenario's ids back into this one.
    pub fn subscenario(&self, sub: &SubScenario) -> Result<(Scenario, Vec<VertexId>, Vec<EdgeId>)> {
        for v in &sub.vertices {
            if v.0 >= self.num_vertices() {
                return Err(Error::NotASubcomplex(format!("vertex #{} out of range", v.0)));
            }
        }
        let mut new_index = HashMap::new();
        let mut vertices_back = Vec::new();
        for &v in &sub.vertices {
            new_index.insert(v, VertexId(vertices_back.len()));
            vertices_back.push(v);
        }
        let names: Vec<String> = vertices_back.iter().map(|&v| self.vertex_name(v).to_string()).collect();
        let mut out = Scenario::new(names, std::iter::empty())?;
        let mut edges_back = Vec::new();
        for &e in &sub.edges {
            if e.0 >= self.num_edges() {
                return Err(Error::NotASubcomplex(format!("edge #{} out of range", e.0)));
            }
            let edge = self.edge(e);
            let (Some(&s), Some(&t)) = (new_index.get(&edge.source), new_index.get(&edge.target)) else {
                return Err(Error::NotASubcomplex(format!(
                    "edge `{}` has an endpoint outside the vertex set",
                    edge.id
                )));
            };
            out.push_edge(edge.id.clone(), s, t)?;
            edges_back.push(e);
        }
        Ok((out, vertices_back, edges_back))
    }
}

/// A set of vertices and edges of a scenario.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubScenario {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl SubScenario {
    pub fn all(s: &Scenario) -> Self {
        SubScenario {
            vertices: s.vertex_ids().collect(),
            edges: s.edge_ids().collect(),
        }
    }

    /// The given edges together with their endpoints.
    pub fn from_edges<I: IntoIterator<Item = EdgeId>>(s: &Scenario, edges: I) -> Self {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        let vertices = edges
            .iter()
            .flat_map(|&e| [s.edge(e).source, s.edge(e).target])
            .collect();
        SubScenario { vertices, edges }
    }

    pub fn from_circle(s: &Scenario, c: &Circle) -> Self {
        Self::from_edges(s, c.steps().iter().map(|st| st.edge))
    }

    /// All vertices and every edge except those listed.
    pub fn without_edges<I: IntoIterator<Item = EdgeId>>(s: &Scenario, drop: I) -> Self {
        let drop: BTreeSet<EdgeId> = drop.into_iter().collect();
        SubScenario {
            vertices: s.vertex_ids().collect(),
            edges: s.edge_ids().filter(|e| !drop.contains(e)).collect(),
        }
    }
}

pub struct SpanningForest {
    parent: Vec<Option<Step>>,
    depth: Vec<usize>,
    root: Vec<VertexId>,
    tree_edges: Vec<bool>,
    visit_order: Vec<VertexId>,
}

impl SpanningForest {
    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.tree_edges[e.0]
    }

    pub fn root(&self, v: VertexId) -> VertexId {
        self.root[v.0]
    }

    /// Vertices in breadth-first discovery order.
    pub fn visit_order(&self) -> &[VertexId] {
        &self.visit_order
    }

    /// The step by which `v` was reached from its parent.
    pub fn parent_step(&self, v: VertexId) -> Option<Step> {
        self.parent[v.0]
    }

    /// Tree walk from `from` to `to` (both in one tree).
    pub fn tree_path(&self, s: &Scenario, from: VertexId, to: VertexId) -> Vec<Step> {
        let up = |v: VertexId| -> (Step, VertexId) {
            let step = self.parent[v.0].expect("non-root has a parent");
            let e = s.edge(step.edge);
            let p = match step.orientation {
                Orientation::Forward => e.source,
                Orientation::Reversed => e.target,
            };
            (step, p)
        };
        let (mut a, mut b) = (from, to);
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while a != b {
            if self.depth[a.0] >= self.depth[b.0] {
                let (step, p) = up(a);
                head.push(step.reversed());
                a = p;
            } else {
                let (step, p) = up(b);
                tail.push(step);
                b = p;
            }
        }
        head.extend(tail.into_iter().rev());
        head
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Reversed,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reversed,
            Orientation::Reversed => Orientation::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: EdgeId,
    pub orientation: Orientation,
}

impl Step {
    pub fn forward(edge: EdgeId) -> Self {
        Step {
            edge,
            orientation: Orientation::Forward,
        }
    }

    pub fn reversed(self) -> Self {
        Step {
            edge: self.edge,
            orientation: self.orientation.flip(),
        }
    }

    pub fn start(&self, s: &Scenario) -> VertexId {
        let e = s.edge(self.edge);
        match self.orientation {
            Orientation::Forward => e.source,
            Orientation::Reversed => e.target,
        }
    }

    pub fn end(&self, s: &Scenario) -> VertexId {
        let e = s.edge(self.edge);
        match self.orientation {
            Orientation::Forward => e.target,
            Orientation::Reversed => e.source,
        }
    }
}

/// A sequence of pairwise distinct oriented edges, each starting where the
/// previous one ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    steps: Vec<Step>,
}

impl Walk {
    pub fn new(s: &Scenario, steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidWalk("empty walk".into()));
        }
        let mut seen = BTreeSet::new();
        for st in &steps {
            if st.edge.0 >= s.num_edges() {
                return Err(Error::UnknownEdge(format!("#{}", st.edge.0)));
            }
            if !seen.insert(st.edge) {
                return Err(Error::InvalidWalk(format!("edge `{}` repeated", s.edge(st.edge).id)));
            }
        }
        for pair in steps.windows(2) {
            if pair[0].end(s) != pair[1].start(s) {
                return Err(Error::InvalidWalk(format!(
                    "`{}` does not continue `{}`",
                    s.edge(pair[1].edge).id,
                    s.edge(pair[0].edge).id
                )));
            }
        }
        Ok(Walk { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn initial(&self, s: &Scenario) -> VertexId {
        self.steps[0].start(s)
    }

    pub fn terminal(&self, s: &Scenario) -> VertexId {
        self.steps[self.steps.len() - 1].end(s)
    }

    pub fn is_closed(&self, s: &Scenario) -> bool {
        self.initial(s) == self.terminal(s)
    }
}

/// A closed walk kept in canonical form: the least edge comes first and is
/// traversed forward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle(Walk);

impl Circle {
    pub fn new(s: &Scenario, steps: Vec<Step>) -> Result<Self> {
        let walk = Walk::new(s, steps)?;
        if !walk.is_closed(s) {
            return Err(Error::InvalidWalk("walk is not closed".into()));
        }
        Ok(Circle(canonicalize(walk)))
    }

    pub fn walk(&self) -> &Walk {
        &self.0
    }

    pub fn steps(&self) -> &[Step] {
        &self.0.steps
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps().iter().map(|s| s.edge)
    }

    /// The vertices visited, starting at the initial vertex.
    pub fn vertices(&self, s: &Scenario) -> Vec<VertexId> {
        self.steps().iter().map(|st| st.start(s)).collect()
    }

    pub fn display<'a>(&'a self, s: &'a Scenario) -> CircleDisplay<'a> {
        CircleDisplay { circle: self, scenario: s }
    }
}

fn canonicalize(walk: Walk) -> Walk {
    let steps = walk.steps;
    let (pos, least) = steps
        .iter()
        .enumerate()
        .min_by_key(|(_, s)| s.edge)
        .map(|(i, s)| (i, *s))
        .expect("non-empty");
    let n = steps.len();
    let steps = if least.orientation == Orientation::Forward || n == 1 {
        let mut out: Vec<Step> = (0..n).map(|k| steps[(pos + k) % n]).collect();
        out[0].orientation = if n == 1 { Orientation::Forward } else { out[0].orientation };
        out
    } else {
        // walk it backwards from the least edge
        (0..n).map(|k| steps[(pos + n - k) % n].reversed()).collect()
    };
    Walk { steps }
}

pub struct CircleDisplay<'a> {
    circle: &'a Circle,
    scenario: &'a Scenario,
}

impl fmt::Display for CircleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, st) in self.circle.steps().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = match st.orientation {
                Orientation::Forward => "+",
                Orientation::Reversed => "-",
            };
            write!(f, "{sign}{}", self.scenario.edge(st.edge).id)?;
        }
        Ok(())
    }
}

/// The quotient of a scenario by one non-loop edge.
#[derive(Clone, Debug)]
pub struct CollapseMap {
    pub source: Arc<Scenario>,
    pub collapsed: EdgeId,
    pub result: Arc<Scenario>,
    /// Image of each source vertex.
    pub vertex_map: Vec<VertexId>,
    /// Image of each source edge; the collapsed edge becomes degenerate.
    pub edge_map: Vec<Option<EdgeId>>,
    /// The vertex the collapsed edge's endpoints are identified to.
    pub merged: VertexId,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        let s = Scenario::from_indices(1, &[(0, 0)]).unwrap();
        assert_eq!(s.connected_components(), vec![vec![VertexId(0)]]);
        let s = Scenario::from_indices(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(s.connected_components().len(), 2);
        assert_eq!(Scenario::cycle(4).connected_components().len(), 1);
    }

    #[test]
    fn cycle_basis_sizes() {
        let basis = Scenario::cycle(4).cycle_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].len(), 4);
        let basis = Scenario::cycle(1).cycle_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].len(), 1);
        assert_eq!(Scenario::theta(3).cycle_basis().len(), 2);
        assert!(Scenario::path(3).cycle_basis().is_empty());
    }

    #[test]
    fn circle_enumeration() {
        assert_eq!(Scenario::cycle(4).enumerate_circles(4).count(), 1);
        assert_eq!(Scenario::cycle(4).enumerate_circles(3).count(), 0);
        let theta: Vec<Circle> = Scenario::theta(3).enumerate_circles(5).collect();
        assert_eq!(theta.len(), 3);
        assert!(theta.iter().all(|c| c.len() == 2));
        assert_eq!(Scenario::path(4).enumerate_circles(10).count(), 0);
        // K4 has 7 simple cycles: 4 triangles and 3 squares
        let k4 = Scenario::from_indices(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let all: Vec<Circle> = k4.enumerate_circles(4).collect();
        assert_eq!(all.len(), 7);
        assert_eq!(all.iter().filter(|c| c.len() == 3).count(), 4);
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let s = Scenario::cycle(4);
        let fwd: Vec<Step> = (0..4).map(|i| Step::forward(EdgeId(i))).collect();
        let c1 = Circle::new(&s, fwd.clone()).unwrap();
        let rotated: Vec<Step> = (0..4).map(|i| fwd[(i + 2) % 4]).collect();
        let reflected: Vec<Step> = fwd.iter().rev().map(|st| st.reversed()).collect();
        assert_eq!(c1, Circle::new(&s, rotated).unwrap());
        assert_eq!(c1, Circle::new(&s, reflected).unwrap());
        assert_eq!(c1.steps()[0], Step::forward(EdgeId(0)));
    }

    #[test]
    fn walk_validation() {
        let s = Scenario::path(2);
        assert!(Walk::new(&s, vec![Step::forward(EdgeId(0)), Step::forward(EdgeId(1))]).is_ok());
        assert!(Walk::new(&s, vec![Step::forward(EdgeId(1)), Step::forward(EdgeId(0))]).is_err());
        assert!(Walk::new(&s, vec![Step::forward(EdgeId(0)), Step::forward(EdgeId(0))]).is_err());
        assert!(Circle::new(&s, vec![Step::forward(EdgeId(0))]).is_err());
    }

    #[test]
    fn collapse_examples() {
        let s = Arc::new(Scenario::path(2));
        let cm = s.collapse_edge(EdgeId(0)).unwrap();
        assert_eq!(cm.result.num_edges(), 1);
        assert_eq!(cm.result.num_vertices(), 2);

        let s = Arc::new(Scenario::cycle(4));
        let cm = s.collapse_edge(EdgeId(1)).unwrap();
        assert_eq!(cm.result.num_edges(), 3);
        assert_eq!(cm.result.enumerate_circles(3).count(), 1);
        assert_eq!(cm.vertex_map[1], cm.vertex_map[2]);

        let s = Arc::new(Scenario::theta(2));
        let cm = s.collapse_edge(EdgeId(0)).unwrap();
        assert_eq!(cm.result.num_vertices(), 1);
        assert!(cm.result.edge(EdgeId(0)).is_loop());

        let s = Arc::new(Scenario::cycle(1));
        assert!(matches!(s.collapse_edge(EdgeId(0)), Err(Error::LoopCollapse(_))));
        assert!(matches!(s.collapse_edge(EdgeId(3)), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn tree_paths_connect_endpoints() {
        let s = Scenario::from_indices(5, &[(0, 1), (1, 2), (3, 1), (3, 4)]).unwrap();
        let f = s.spanning_forest(&[VertexId(0)]);
        let p = f.tree_path(&s, VertexId(4), VertexId(2));
        let w = Walk::new(&s, p).unwrap();
        assert_eq!(w.initial(&s), VertexId(4));
        assert_eq!(w.terminal(&s), VertexId(2));
    }

    #[test]
    fn subscenario_rejects_dangling_edges() {
        let s = Scenario::path(2);
        let sub = SubScenario {
            vertices: [VertexId(0), VertexId(1)].into_iter().collect(),
            edges: [EdgeId(1)].into_iter().collect(),
        };
        assert!(matches!(s.subscenario(&sub), Err(Error::NotASubcomplex(_))));
    }
}
