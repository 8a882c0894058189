//! Edge labelings by `Z_d`, their circle invariants and the faces they cut out.
//!
//! A [`NerveLabeling`] assigns a group element to every edge. It extends over
//! the cone (is null-homotopic) exactly when a vertex potential `psi` exists
//! with `psi(target) = psi(source) + phi(e)` on every edge; equivalently every
//! circle invariant vanishes.
//!
//! The face of `phi` is the set of distributions whose edge labels `b - a`
//! are almost surely `phi(e)`. It is parametrized by the distribution at a
//! single vertex, which must be invariant under the subgroup `H` generated
//! by the circle invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::{Circle, EdgeId, Orientation, Scenario, Step, VertexId};
use crate::semiring::{Dist, Rational, Semiring, ZdElement};
use crate::simpdist::{EdgeMatrix, SimpDist};

/// A `Z_d` label per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NerveLabeling {
    d: u32,
    labels: Vec<u32>,
}

impl NerveLabeling {
    pub fn new(d: u32, labels: Vec<u32>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("d = {d} must be at least 2")));
        }
        if let Some(&g) = labels.iter().find(|&&g| g >= d) {
            return Err(Error::InvalidParams(format!("label {g} is not in Z_{d}")));
        }
        Ok(NerveLabeling { d, labels })
    }

    pub fn zero(d: u32, m: usize) -> Self {
        NerveLabeling { d, labels: vec![0; m] }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn get(&self, e: EdgeId) -> u32 {
        self.labels[e.0]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// All `d^m` labelings in lexicographic order.
    pub fn all(d: u32, m: usize) -> impl Iterator<Item = NerveLabeling> {
        crate::semiring::zd_tuples(d, m)
            .into_iter()
            .map(move |labels| NerveLabeling { d, labels })
    }

    /// Edge distributions `delta(phi(e))`.
    pub fn deltas<S: Semiring>(&self) -> Vec<Dist<S, u32>> {
        self.labels.iter().map(|&g| Dist::delta(g)).collect()
    }

    fn step_value(&self, st: &Step) -> u32 {
        let g = self.labels[st.edge.0];
        match st.orientation {
            Orientation::Forward => g,
            Orientation::Reversed => g.neg_mod(self.d),
        }
    }

    fn check(&self, s: &Scenario) -> Result<()> {
        if self.labels.len() != s.num_edges() {
            return Err(Error::InvalidParams(format!(
                "labeling has {} entries for {} edges",
                self.labels.len(),
                s.num_edges()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for NerveLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Signed sum of the labels around `c`: `+phi(e)` forward, `-phi(e)` reversed.
pub fn circle_invariant(c: &Circle, phi: &NerveLabeling) -> u32 {
    c.steps()
        .iter()
        .fold(0, |acc, st| acc.add_mod(&phi.step_value(st), phi.d))
}

/// Outcome of the null-homotopy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullHomotopy {
    /// A vertex potential, present iff the labeling is null-homotopic.
    pub potential: Option<Vec<u32>>,
    /// A circle with nonzero invariant when it is not.
    pub obstruction: Option<Circle>,
}

impl NullHomotopy {
    pub fn is_null(&self) -> bool {
        self.potential.is_some()
    }
}

fn potential_from(s: &Scenario, phi: &NerveLabeling, order: &[VertexId]) -> (Vec<u32>, crate::scenario::SpanningForest) {
    let forest = s.spanning_forest(order);
    let mut psi = vec![0u32; s.num_vertices()];
    for &v in forest.visit_order() {
        if let Some(st) = forest.parent_step(v) {
            let prev = st.start(s);
            psi[v.0] = psi[prev.0].add_mod(&phi.step_value(&st), phi.d);
        }
    }
    (psi, forest)
}

/// Decides whether `phi` extends over the cone, returning a potential or an
/// obstructing circle.
pub fn is_null_homotopic(s: &Scenario, phi: &NerveLabeling) -> Result<NullHomotopy> {
    let order: Vec<VertexId> = s.vertex_ids().collect();
    null_homotopy_from(s, phi, &order)
}

/// As [`is_null_homotopic`], with the spanning forest rooted in `order`.
pub fn null_homotopy_from(s: &Scenario, phi: &NerveLabeling, order: &[VertexId]) -> Result<NullHomotopy> {
    phi.check(s)?;
    let (psi, forest) = potential_from(s, phi, order);
    for e in s.edge_ids() {
        let edge = s.edge(e);
        if psi[edge.target.0] != psi[edge.source.0].add_mod(&phi.get(e), phi.d) {
            let mut steps = vec![Step::forward(e)];
            steps.extend(forest.tree_path(s, edge.target, edge.source));
            let circle = Circle::new(s, steps).expect("fundamental cycle");
            return Ok(NullHomotopy {
                potential: None,
                obstruction: Some(circle),
            });
        }
    }
    Ok(NullHomotopy {
        potential: Some(psi),
        obstruction: None,
    })
}

/// `d^m - d^(n-1)` for a connected scenario with `n` vertices and `m` edges.
pub fn count_non_null_homotopic(s: &Scenario, d: u32) -> Result<BigUint> {
    if !s.is_connected() || s.num_vertices() == 0 {
        return Err(Error::NotConnected);
    }
    let d = BigUint::from(d);
    Ok(d.pow(s.num_edges() as u32) - d.pow(s.num_vertices() as u32 - 1))
}

/// The subgroup `H` generated by the circle invariants and the quotient it
/// induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceStructure {
    pub labeling: NerveLabeling,
    /// Least positive generator of `H = <g>`; equals `|Z_d / H|`.
    pub generator: u32,
    pub subgroup: Vec<u32>,
    pub orbits: Vec<Vec<u32>>,
    pub dimension: u32,
}

impl FaceStructure {
    pub fn is_singleton(&self) -> bool {
        self.dimension == 0
    }

    /// Whether `p` is constant on every coset of `H`.
    pub fn is_invariant<S: Semiring>(&self, p: &Dist<S, u32>) -> bool {
        let d = self.labeling.d;
        (0..d).all(|a| p.weight(&a) == p.weight(&a.add_mod(&self.generator, d)))
    }
}

pub fn face_structure(s: &Scenario, phi: &NerveLabeling) -> Result<FaceStructure> {
    phi.check(s)?;
    if !s.is_connected() || s.num_vertices() == 0 {
        return Err(Error::NotConnected);
    }
    let d = phi.d;
    let generator = s
        .cycle_basis()
        .iter()
        .fold(d, |g, c| g.gcd(&circle_invariant(c, phi)));
    let subgroup = (0..d).step_by(generator as usize).collect();
    let orbits = (0..generator)
        .map(|r| (r..d).step_by(generator as usize).collect())
        .collect();
    Ok(FaceStructure {
        labeling: phi.clone(),
        generator,
        subgroup,
        orbits,
        dimension: generator - 1,
    })
}

/// The unique distribution in the face with distribution `pv` at `base`:
/// `M_e(a, b) = p_src(a) [b = a + phi(e)]`.
pub fn face_member<S: Semiring>(
    scenario: Arc<Scenario>,
    fs: &FaceStructure,
    base: VertexId,
    pv: &Dist<S, u32>,
) -> Result<SimpDist<S>> {
    let phi = &fs.labeling;
    phi.check(&scenario)?;
    let d = phi.d;
    if pv.support().any(|&a| a >= d) {
        return Err(Error::WrongOutcomeArity {
            expected: d as usize,
            got: d as usize + 1,
        });
    }
    if !fs.is_invariant(pv) {
        return Err(Error::NotInvariant(fs.subgroup.clone()));
    }
    let (psi, _) = potential_from(&scenario, phi, &[base]);
    let at = |v: VertexId| pv.pushforward(|a| a.add_mod(&psi[v.0], d));
    let edges = scenario
        .edge_ids()
        .map(|e| {
            let edge = scenario.edge(e);
            let src = at(edge.source);
            let g = phi.get(e);
            EdgeMatrix::from_fn(d as usize, |a, b| {
                if (a as u32).add_mod(&g, d) == b as u32 {
                    src.weight(&(a as u32))
                } else {
                    S::zero()
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let isolated: BTreeMap<VertexId, Dist<S, u32>> = scenario
        .vertex_ids()
        .filter(|&v| scenario.is_isolated(v))
        .map(|v| (v, at(v)))
        .collect();
    SimpDist::new(scenario, d as usize, edges, isolated)
}

pub fn is_prime(d: u32) -> bool {
    d >= 2 && (2..).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k))
}

/// The single element of the face of a non-null-homotopic labeling for prime
/// `d`; it is a strongly contextual vertex.
pub fn unique_sc_vertex(scenario: Arc<Scenario>, phi: &NerveLabeling) -> Result<SimpDist<Rational>> {
    if !is_prime(phi.d) {
        return Err(Error::NonPrimeD(phi.d));
    }
    let fs = face_structure(&scenario, phi)?;
    if fs.generator == phi.d {
        return Err(Error::NullHomotopicInput);
    }
    let uniform = Dist::uniform(0..phi.d)?;
    face_member(scenario, &fs, VertexId(0), &uniform)
}

/// The labeling `phi` if every edge label of `p` is almost surely `phi(e)`.
pub fn nerve_image<S: Semiring>(p: &SimpDist<S>) -> Option<NerveLabeling> {
    let labels = p
        .nerve_pushforward()
        .iter()
        .map(|q| q.as_delta().copied())
        .collect::<Option<Vec<u32>>>()?;
    Some(NerveLabeling { d: p.d() as u32, labels })
}
