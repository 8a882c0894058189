//! Simplicial distributions on a scenario with outcomes in `Z_d`.
//!
//! A distribution assigns to every edge a `d x d` matrix `M_e(a, b)` where `a`
//! is the outcome at the source and `b` the outcome at the target. The
//! matrices must agree on shared vertices: the row marginal of `M_e` when the
//! vertex is the source and the column marginal when it is the target.
//!
//! The nerve coordinates of an edge outcome `(a, b)` are `(a, b - a)`; the
//! label of the edge under the `d0` pushforward is `b - a`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scenario::{CollapseMap, EdgeId, Orientation, Scenario, Step, SubScenario, VertexId, Walk};
use crate::semiring::{Boolean, Dist, Rational, Semiring, ZdElement};

/// A dense `d x d` matrix, row-major, rows indexed by the source outcome.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeMatrix<S> {
    d: usize,
    entries: Vec<S>,
}

impl<S: Semiring> fmt::Debug for EdgeMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Semiring> fmt::Display for EdgeMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for a in 0..self.d {
            if a > 0 {
                f.write_str("; ")?;
            }
            for b in 0..self.d {
                if b > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(a, b))?;
            }
        }
        f.write_str("]")
    }
}

impl<S: Semiring> EdgeMatrix<S> {
    /// A normalized matrix from row-major entries.
    pub fn new(d: usize, entries: Vec<S>) -> Result<Self> {
        let m = Self::unchecked(d, entries)?;
        let total = S::sum(&m.entries);
        if total != S::one() {
            return Err(Error::NotNormalized(format!("edge matrix sums to {total}")));
        }
        Ok(m)
    }

    fn unchecked(d: usize, entries: Vec<S>) -> Result<Self> {
        if d < 2 || entries.len() != d * d {
            return Err(Error::WrongOutcomeArity {
                expected: d * d,
                got: entries.len(),
            });
        }
        Ok(EdgeMatrix { d, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let d = rows.len();
        for r in &rows {
            if r.len() != d {
                return Err(Error::WrongOutcomeArity { expected: d, got: r.len() });
            }
        }
        Self::new(d, rows.into_iter().flatten().collect())
    }

    pub fn from_fn<F: Fn(usize, usize) -> S>(d: usize, f: F) -> Result<Self> {
        let entries = (0..d * d).map(|i| f(i / d, i % d)).collect();
        Self::new(d, entries)
    }

    pub fn from_dist(d: usize, p: &Dist<S, (u32, u32)>) -> Result<Self> {
        let mut entries = vec![S::zero(); d * d];
        for (&(a, b), w) in p.iter() {
            if a as usize >= d || b as usize >= d {
                return Err(Error::WrongOutcomeArity {
                    expected: d,
                    got: a.max(b) as usize + 1,
                });
            }
            entries[a as usize * d + b as usize] = w.clone();
        }
        Self::new(d, entries)
    }

    /// The point mass at `(a, b)`.
    pub fn delta(d: usize, a: u32, b: u32) -> Self {
        Self::from_fn(d, |i, j| if (i, j) == (a as usize, b as usize) { S::one() } else { S::zero() })
            .expect("a delta is normalized")
    }

    /// Diagonal matrix carrying `p` on `(a, a)`.
    pub fn diagonal(d: usize, p: &Dist<S, u32>) -> Self {
        Self::from_fn(d, |i, j| if i == j { p.weight(&(i as u32)) } else { S::zero() })
            .expect("p is normalized")
    }

    /// Uniform over the pairs with `b - a = g`.
    pub fn shift(d: usize, g: u32) -> Self {
        let g = g as usize % d;
        Self::from_fn(d, |i, j| if (i + g) % d == j { S::ratio(1, d as u64) } else { S::zero() })
            .expect("uniform over a permutation is normalized")
    }

    pub fn uniform(d: usize) -> Self {
        let n = (d * d) as u64;
        Self::from_fn(d, |_, _| S::ratio(1, n)).expect("uniform is normalized")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, a: usize, b: usize) -> &S {
        &self.entries[a * self.d + b]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.d).map(|r| r.to_vec()).collect()
    }

    /// Distribution of the source outcome.
    pub fn row_marginal(&self) -> Dist<S, u32> {
        Dist::from_weights_unchecked(
            (0..self.d).map(|a| (a as u32, S::sum((0..self.d).map(|b| self.get(a, b))))),
        )
    }

    /// Distribution of the target outcome.
    pub fn col_marginal(&self) -> Dist<S, u32> {
        Dist::from_weights_unchecked(
            (0..self.d).map(|b| (b as u32, S::sum((0..self.d).map(|a| self.get(a, b))))),
        )
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        EdgeMatrix {
            d,
            entries: (0..d * d).map(|i| self.get(i % d, i / d).clone()).collect(),
        }
    }

    /// The matrix seen when traversing the edge in the given direction.
    pub fn oriented(&self, o: Orientation) -> Self {
        match o {
            Orientation::Forward => self.clone(),
            Orientation::Reversed => self.transpose(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.d).all(|a| (0..self.d).all(|b| a == b || self.get(a, b).is_zero()))
    }

    pub fn as_delta(&self) -> Option<(u32, u32)> {
        let mut nonzero = self.entries.iter().enumerate().filter(|(_, w)| !w.is_zero());
        let (i, _) = nonzero.next()?;
        nonzero.next().is_none().then_some(((i / self.d) as u32, (i % self.d) as u32))
    }

    pub fn to_dist(&self) -> Dist<S, (u32, u32)> {
        let d = self.d;
        Dist::from_weights_unchecked(
            self.entries
                .iter()
                .enumerate()
                .map(|(i, w)| (((i / d) as u32, (i % d) as u32), w.clone())),
        )
    }

    /// The same distribution in nerve coordinates `(a, b - a)`.
    pub fn to_nerve_coordinates(&self) -> Dist<S, (u32, u32)> {
        let d = self.d as u32;
        self.to_dist().pushforward(|&(a, b)| (a, b.add_mod(&a.neg_mod(d), d)))
    }

    pub fn from_nerve_coordinates(d: usize, p: &Dist<S, (u32, u32)>) -> Result<Self> {
        let dd = d as u32;
        Self::from_dist(d, &p.pushforward(|&(a, g)| (a, a.add_mod(&g, dd))))
    }

    /// The `d0` pushforward `(a, b) -> b - a`.
    pub fn label_dist(&self) -> Dist<S, u32> {
        let d = self.d as u32;
        self.to_dist().pushforward(|&(a, b)| b.add_mod(&a.neg_mod(d), d))
    }

    /// `M'(i, j) = M(i - s, j - t)`.
    pub fn shifted(&self, s: u32, t: u32) -> Self {
        let d = self.d;
        let (s, t) = (s as usize % d, t as usize % d);
        EdgeMatrix {
            d,
            entries: (0..d * d)
                .map(|i| self.get((i / d + d - s) % d, (i % d + d - t) % d).clone())
                .collect(),
        }
    }

    pub fn project(&self) -> EdgeMatrix<Boolean> {
        EdgeMatrix {
            d: self.d,
            entries: self.entries.iter().map(Semiring::project).collect(),
        }
    }

    /// Conditional composite `sum_c M[a,c] N[c,b] / mid(c)`, zero where
    /// `mid(c) = 0`.
    pub fn compose_through(&self, other: &Self, mid: &Dist<S, u32>) -> Self {
        let d = self.d;
        let mut entries = vec![S::zero(); d * d];
        for c in 0..d {
            let w = mid.weight(&(c as u32));
            if w.is_zero() {
                continue;
            }
            for a in 0..d {
                let x = self.get(a, c);
                if x.is_zero() {
                    continue;
                }
                for b in 0..d {
                    let y = other.get(c, b);
                    if !y.is_zero() {
                        let cell = &mut entries[a * d + b];
                        *cell = cell.add(&x.mul(y).div(&w));
                    }
                }
            }
        }
        EdgeMatrix { d, entries }
    }
}

impl EdgeMatrix<Rational> {
    /// `diag(1/2, 1/2)`.
    pub fn p_plus() -> Self {
        Self::shift(2, 0)
    }

    /// `antidiag(1/2, 1/2)`.
    pub fn p_minus() -> Self {
        Self::shift(2, 1)
    }
}

impl EdgeMatrix<Boolean> {
    /// Plain Boolean matrix product.
    pub fn bool_product(&self, other: &Self) -> Self {
        let d = self.d;
        let entries = (0..d * d)
            .map(|i| Boolean((0..d).any(|c| self.get(i / d, c).0 && other.get(c, i % d).0)))
            .collect();
        EdgeMatrix { d, entries }
    }
}

/// A `Z_d` label per vertex, i.e. a deterministic outcome assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeLabeling {
    labels: Vec<u32>,
}

impl OutcomeLabeling {
    pub fn new(labels: Vec<u32>) -> Self {
        OutcomeLabeling { labels }
    }

    pub fn zero(n: usize) -> Self {
        OutcomeLabeling { labels: vec![0; n] }
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.labels[v.0]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn add(&self, other: &Self, d: u32) -> Self {
        OutcomeLabeling {
            labels: self.labels.add_mod(&other.labels, d),
        }
    }

    /// All `d^n` labelings in lexicographic order.
    pub fn all(n: usize, d: u32) -> impl Iterator<Item = OutcomeLabeling> {
        crate::semiring::zd_tuples(d, n).into_iter().map(OutcomeLabeling::new)
    }
}

impl fmt::Display for OutcomeLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A consistent family of edge matrices on a scenario.
///
/// Vertex distributions are the common marginals of the incident edges. An
/// isolated vertex has no incident edge, so its distribution is kept
/// alongside the matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpDist<S> {
    scenario: Arc<Scenario>,
    d: usize,
    edges: Vec<EdgeMatrix<S>>,
    isolated: BTreeMap<VertexId, Dist<S, u32>>,
}

impl<S: Semiring> fmt::Debug for SimpDist<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (e, mat) in self.scenario.edges().iter().zip(&self.edges) {
            m.entry(&e.id, mat);
        }
        for (v, p) in &self.isolated {
            m.entry(&self.scenario.vertex_name(*v), p);
        }
        m.finish()
    }
}

impl<S: Semiring> SimpDist<S> {
    /// Validates a distribution from one matrix per edge (in edge order) and
    /// one distribution per isolated vertex.
    pub fn new(
        scenario: Arc<Scenario>,
        d: usize,
        edges: Vec<EdgeMatrix<S>>,
        isolated: BTreeMap<VertexId, Dist<S, u32>>,
    ) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("d = {d} must be at least 2")));
        }
        if edges.len() != scenario.num_edges() {
            return Err(Error::InvalidParams(format!(
                "{} matrices for {} edges",
                edges.len(),
                scenario.num_edges()
            )));
        }
        for m in &edges {
            if m.d() != d {
                return Err(Error::WrongOutcomeArity { expected: d, got: m.d() });
            }
        }
        for v in scenario.vertex_ids() {
            let name = scenario.vertex_name(v);
            match (scenario.is_isolated(v), isolated.get(&v)) {
                (true, None) => {
                    return Err(Error::InvalidParams(format!("isolated vertex `{name}` needs a distribution")))
                }
                (false, Some(_)) => {
                    return Err(Error::InvalidParams(format!("vertex `{name}` is not isolated")))
                }
                (true, Some(p)) => {
                    if p.support().any(|&a| a as usize >= d) {
                        return Err(Error::WrongOutcomeArity { expected: d, got: d + 1 });
                    }
                    if p.total() != S::one() {
                        return Err(Error::NotNormalized(format!("vertex `{name}`")));
                    }
                }
                (false, None) => {}
            }
        }
        let out = SimpDist {
            scenario,
            d,
            edges,
            isolated,
        };
        out.check_consistency()?;
        Ok(out)
    }

    /// Distribution on a scenario without isolated vertices.
    pub fn from_matrices(scenario: Arc<Scenario>, d: usize, edges: Vec<EdgeMatrix<S>>) -> Result<Self> {
        Self::new(scenario, d, edges, BTreeMap::new())
    }

    fn check_consistency(&self) -> Result<()> {
        for v in self.scenario.vertex_ids() {
            let mut common: Option<Dist<S, u32>> = None;
            for e in self.scenario.incident(v) {
                let edge = self.scenario.edge(e);
                let m = &self.edges[e.0];
                let mut seen = Vec::new();
                if edge.source == v {
                    seen.push(m.row_marginal());
                }
                if edge.target == v {
                    seen.push(m.col_marginal());
                }
                for p in seen {
                    match &common {
                        None => common = Some(p),
                        Some(c) if *c == p => {}
                        Some(_) => return Err(Error::Inconsistent(self.scenario.vertex_name(v).to_string())),
                    }
                }
            }
        }
        Ok(())
    }

    pub fn scenario(&self) -> &Arc<Scenario> {
        &self.scenario
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edge_matrix(&self, e: EdgeId) -> &EdgeMatrix<S> {
        &self.edges[e.0]
    }

    pub fn edge_matrices(&self) -> &[EdgeMatrix<S>] {
        &self.edges
    }

    pub fn isolated(&self) -> &BTreeMap<VertexId, Dist<S, u32>> {
        &self.isolated
    }

    /// The matrix of a step: transposed when traversed backwards.
    pub fn step_matrix(&self, st: Step) -> EdgeMatrix<S> {
        self.edges[st.edge.0].oriented(st.orientation)
    }

    pub fn vertex_dist(&self, v: VertexId) -> Dist<S, u32> {
        if let Some(p) = self.isolated.get(&v) {
            return p.clone();
        }
        let e = self.scenario.incident(v).next().expect("non-isolated vertex");
        if self.scenario.edge(e).source == v {
            self.edges[e.0].row_marginal()
        } else {
            self.edges[e.0].col_marginal()
        }
    }

    /// The labeling `phi` if this is the deterministic distribution `delta^phi`.
    pub fn as_deterministic(&self) -> Option<OutcomeLabeling> {
        let mut labels = Vec::with_capacity(self.scenario.num_vertices());
        for v in self.scenario.vertex_ids() {
            labels.push(*self.vertex_dist(v).as_delta()?);
        }
        Some(OutcomeLabeling::new(labels))
    }

    pub fn is_deterministic(&self) -> bool {
        self.as_deterministic().is_some()
    }

    pub fn deterministic(scenario: Arc<Scenario>, d: usize, phi: &OutcomeLabeling) -> Result<Self> {
        if phi.len() != scenario.num_vertices() {
            return Err(Error::InvalidParams(format!(
                "labeling has {} entries for {} vertices",
                phi.len(),
                scenario.num_vertices()
            )));
        }
        if phi.labels().iter().any(|&a| a as usize >= d) {
            return Err(Error::InvalidParams(format!("labels must lie in Z_{d}")));
        }
        let edges = scenario
            .edges()
            .iter()
            .map(|e| EdgeMatrix::delta(d, phi.get(e.source), phi.get(e.target)))
            .collect();
        let isolated = scenario
            .vertex_ids()
            .filter(|&v| scenario.is_isolated(v))
            .map(|v| (v, Dist::delta(phi.get(v))))
            .collect();
        Self::new(scenario, d, edges, isolated)
    }

    /// The section `M_e(a, b) = q_e(b - a) / d`; all vertices are uniform.
    pub fn section_t(scenario: Arc<Scenario>, d: usize, q: &[Dist<S, u32>]) -> Result<Self> {
        if q.len() != scenario.num_edges() {
            return Err(Error::InvalidParams(format!(
                "{} edge distributions for {} edges",
                q.len(),
                scenario.num_edges()
            )));
        }
        let dd = d as u64;
        let mut edges = Vec::with_capacity(q.len());
        for qe in q {
            if qe.support().any(|&g| g as usize >= d) {
                return Err(Error::WrongOutcomeArity { expected: d, got: d + 1 });
            }
            let m = EdgeMatrix::from_fn(d, |a, b| {
                let g = ((b + d - a) % d) as u32;
                qe.weight(&g).mul(&S::ratio(1, dd))
            })?;
            edges.push(m);
        }
        let uniform = Dist::uniform(0..d as u32)?;
        let isolated = scenario
            .vertex_ids()
            .filter(|&v| scenario.is_isolated(v))
            .map(|v| (v, uniform.clone()))
            .collect();
        Self::new(scenario, d, edges, isolated)
    }

    /// `d0` pushforward of every edge: the distribution of `b - a`.
    pub fn nerve_pushforward(&self) -> Vec<Dist<S, u32>> {
        self.edges.iter().map(EdgeMatrix::label_dist).collect()
    }

    /// The group action `M'_e(i, j) = M_e(i - phi(src), j - phi(tgt))`.
    pub fn act(&self, phi: &OutcomeLabeling) -> Self {
        assert_eq!(phi.len(), self.scenario.num_vertices(), "labeling size");
        let d = self.d as u32;
        let edges = self
            .scenario
            .edges()
            .iter()
            .zip(&self.edges)
            .map(|(e, m)| m.shifted(phi.get(e.source), phi.get(e.target)))
            .collect();
        let isolated = self
            .isolated
            .iter()
            .map(|(&v, p)| (v, p.pushforward(|a| a.add_mod(&phi.get(v), d))))
            .collect();
        SimpDist {
            scenario: Arc::clone(&self.scenario),
            d: self.d,
            edges,
            isolated,
        }
    }

    /// Composite of the two steps of `walk` through their shared vertex.
    pub fn compose(&self, first: Step, second: Step) -> Result<EdgeMatrix<S>> {
        let s = &self.scenario;
        if first.end(s) != second.start(s) {
            return Err(Error::NotComposable(format!(
                "`{}` does not end where `{}` starts",
                s.edge(first.edge).id,
                s.edge(second.edge).id
            )));
        }
        let mid = self.vertex_dist(first.end(s));
        Ok(self.step_matrix(first).compose_through(&self.step_matrix(second), &mid))
    }

    /// Left-to-right composite along a walk.
    pub fn compose_walk(&self, walk: &Walk) -> EdgeMatrix<S> {
        let s = &self.scenario;
        let steps = walk.steps();
        let mut acc = self.step_matrix(steps[0]);
        for st in &steps[1..] {
            let mid = self.vertex_dist(st.start(s));
            acc = acc.compose_through(&self.step_matrix(*st), &mid);
        }
        acc
    }

    /// The restriction to a set of vertices and edges.
    pub fn restrict(&self, sub: &SubScenario) -> Result<Self> {
        let (scenario, vertices_back, edges_back) = self.scenario.subscenario(sub)?;
        let edges = edges_back.iter().map(|&e| self.edges[e.0].clone()).collect();
        let isolated = scenario
            .vertex_ids()
            .filter(|&v| scenario.is_isolated(v))
            .map(|v| (v, self.vertex_dist(vertices_back[v.0])))
            .collect();
        Self::new(Arc::new(scenario), self.d, edges, isolated)
    }

    /// Carries this distribution across the collapse of an edge whose matrix
    /// is diagonal.
    pub fn transport_collapse(&self, cm: &CollapseMap) -> Result<Self> {
        if *cm.source != *self.scenario {
            return Err(Error::InvalidParams("collapse map is for another scenario".into()));
        }
        let m = &self.edges[cm.collapsed.0];
        if !m.is_diagonal() {
            return Err(Error::NotCollapsible(self.scenario.edge(cm.collapsed).id.clone()));
        }
        let mut edges = vec![None; cm.result.num_edges()];
        for (e, img) in cm.edge_map.iter().enumerate() {
            if let Some(img) = img {
                edges[img.0] = Some(self.edges[e].clone());
            }
        }
        let edges = edges.into_iter().map(|m| m.expect("edge map is surjective")).collect();
        let mut preimage = vec![None; cm.result.num_vertices()];
        for (v, img) in cm.vertex_map.iter().enumerate() {
            preimage[img.0].get_or_insert(VertexId(v));
        }
        let isolated = cm
            .result
            .vertex_ids()
            .filter(|&v| cm.result.is_isolated(v))
            .map(|v| (v, self.vertex_dist(preimage[v.0].expect("vertex map is surjective"))))
            .collect();
        Self::new(Arc::clone(&cm.result), self.d, edges, isolated)
    }

    /// The pullback along the collapsing map: the collapsed edge gets the
    /// diagonal matrix of the merged vertex.
    pub fn pullback(&self, cm: &CollapseMap) -> Result<Self> {
        if *cm.result != *self.scenario {
            return Err(Error::InvalidParams("collapse map is for another scenario".into()));
        }
        let edges = cm
            .edge_map
            .iter()
            .map(|img| match img {
                Some(e) => self.edges[e.0].clone(),
                None => EdgeMatrix::diagonal(self.d, &self.vertex_dist(cm.merged)),
            })
            .collect();
        let isolated = cm
            .source
            .vertex_ids()
            .filter(|&v| cm.source.is_isolated(v))
            .map(|v| (v, self.vertex_dist(cm.vertex_map[v.0])))
            .collect();
        Self::new(Arc::clone(&cm.source), self.d, edges, isolated)
    }

    /// Entrywise support projection.
    pub fn project(&self) -> SimpDist<Boolean> {
        SimpDist {
            scenario: Arc::clone(&self.scenario),
            d: self.d,
            edges: self.edges.iter().map(EdgeMatrix::project).collect(),
            isolated: self.isolated.iter().map(|(&v, p)| (v, p.project())).collect(),
        }
    }

    /// Convex combination of distributions on the same scenario.
    pub fn mixture(components: &[(S, &SimpDist<S>)]) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::InvalidParams("empty mixture".into()));
        };
        let total = S::sum(components.iter().map(|(w, _)| w));
        if total != S::one() {
            return Err(Error::NotNormalized(format!("mixture weights sum to {total}")));
        }
        let d = first.d;
        for (_, p) in components {
            if *p.scenario != *first.scenario || p.d != d {
                return Err(Error::InvalidParams("mixture of different scenarios".into()));
            }
        }
        let edges = (0..first.edges.len())
            .map(|e| {
                let entries = (0..d * d)
                    .map(|i| S::sum(&components.iter().map(|(w, p)| w.mul(&p.edges[e].entries[i])).collect::<Vec<_>>()))
                    .collect();
                EdgeMatrix::new(d, entries)
            })
            .collect::<Result<Vec<_>>>()?;
        let isolated = first
            .isolated
            .keys()
            .map(|&v| {
                let parts: Vec<(&S, &Dist<S, u32>)> =
                    components.iter().map(|(w, p)| (w, &p.isolated[&v])).collect();
                Dist::mixture(parts).map(|p| (v, p))
            })
            .collect::<Result<_>>()?;
        Self::new(Arc::clone(&first.scenario), d, edges, isolated)
    }
}

impl SimpDist<Rational> {
    /// The PR box on a scenario that is a single circle: `p_minus` on the
    /// listed edges and `p_plus` elsewhere.
    pub fn pr_box(scenario: Arc<Scenario>, minus_edges: &[EdgeId]) -> Result<Self> {
        let circles: Vec<_> = scenario.enumerate_circles(scenario.num_edges()).collect();
        let spans_all = circles.len() == 1
            && circles[0].len() == scenario.num_edges()
            && scenario.vertex_ids().all(|v| !scenario.is_isolated(v));
        if !spans_all {
            return Err(Error::NotASubcomplex("a PR box lives on a single circle".into()));
        }
        let mut minus = vec![false; scenario.num_edges()];
        for e in minus_edges {
            if e.0 >= minus.len() {
                return Err(Error::UnknownEdge(format!("#{}", e.0)));
            }
            minus[e.0] = true;
        }
        let count = minus.iter().filter(|&&m| m).count();
        if count % 2 == 0 {
            return Err(Error::EvenMinusCount(count));
        }
        let edges = minus
            .iter()
            .map(|&m| if m { EdgeMatrix::p_minus() } else { EdgeMatrix::p_plus() })
            .collect();
        Self::from_matrices(scenario, 2, edges)
    }

    /// The PR box on the `n`-cycle with `p_minus` on the listed edge indices.
    pub fn pr_box_cycle(n: usize, minus_edges: &[usize]) -> Result<Self> {
        let minus: Vec<EdgeId> = minus_edges.iter().map(|&i| EdgeId(i)).collect();
        Self::pr_box(Arc::new(Scenario::cycle(n)), &minus)
    }
}

/// Glues `p` and `q` along the shared component `f(x) = g(y)`:
/// `T(p, q)(x, y) = p(x) q(y) / m(f(x))` where `m` is the common marginal.
pub fn glue<S, X, Y, Z, F, G>(p: &Dist<S, X>, f: F, q: &Dist<S, Y>, g: G) -> Result<Dist<S, (X, Y)>>
where
    S: Semiring,
    X: Ord + Clone,
    Y: Ord + Clone,
    Z: Ord + Clone,
    F: Fn(&X) -> Z,
    G: Fn(&Y) -> Z,
{
    let mp = p.pushforward(&f);
    let mq = q.pushforward(&g);
    if mp != mq {
        return Err(Error::MarginMismatch);
    }
    let mut items = Vec::new();
    for (x, wx) in p.iter() {
        let z = f(x);
        let m = mp.weight(&z);
        for (y, wy) in q.iter() {
            if g(y) == z {
                items.push(((x.clone(), y.clone()), wx.mul(wy).div(&m)));
            }
        }
    }
    Dist::from_weights(items)
}

/// The section `T(p)(m_1, ..., m_{k+1}) = p(m_2, ..., m_{k+1}) / d` of the
/// map dropping the first coordinate.
pub fn section_t_tuple<S: Semiring>(p: &Dist<S, Vec<u32>>, d: u32) -> Dist<S, Vec<u32>> {
    let scale = S::ratio(1, d as u64);
    Dist::from_weights_unchecked(p.iter().flat_map(|(m, w)| {
        let w = w.mul(&scale);
        (0..d).map(move |first| {
            let mut t = Vec::with_capacity(m.len() + 1);
            t.push(first);
            t.extend_from_slice(m);
            (t, w.clone())
        })
    }))
}

/// Drops the first coordinate of every outcome.
pub fn drop_first<S: Semiring>(p: &Dist<S, Vec<u32>>) -> Dist<S, Vec<u32>> {
    p.pushforward(|t| t[1..].to_vec())
}
