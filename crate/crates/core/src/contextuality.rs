//! Deciders for contextuality and strong contextuality.
//!
//! * [`support`]: the deterministic labelings every edge matrix accepts.
//!   Empty support is strong contextuality.
//! * [`pr_circle_decider`]: for `d = 2`, a rational distribution is strongly
//!   contextual iff it restricts to a PR box on some circle.
//! * [`is_contextual`]: exact LP over mixtures of deterministic
//!   distributions.
//! * [`is_polytope_vertex`]: a rank test on the constraints active at `p`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::homotopy::{circle_invariant, NerveLabeling};
use crate::logiccat::{build_category, sc_criterion};
use crate::lp;
use crate::scenario::{Circle, EdgeId, Orientation, Step, VertexId};
use crate::semiring::{Kind, Rational, Semiring};
use crate::simpdist::{EdgeMatrix, OutcomeLabeling, SimpDist};

/// Default bound on `d^n` for the LP.
pub const DEFAULT_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportResult {
    /// Support labelings in lexicographic order.
    pub labelings: Vec<OutcomeLabeling>,
}

impl SupportResult {
    pub fn is_empty(&self) -> bool {
        self.labelings.is_empty()
    }
}

struct Search<'a, S> {
    p: &'a SimpDist<S>,
    order: Vec<VertexId>,
    position: Vec<usize>,
    values: Vec<Vec<u32>>,
    labels: Vec<u32>,
}

impl<S: Semiring> Search<'_, S> {
    fn new(p: &SimpDist<S>) -> Search<'_, S> {
        let s = p.scenario();
        let mut order: Vec<VertexId> = s.vertex_ids().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(s.degree(v)), v));
        let mut position = vec![0; s.num_vertices()];
        for (i, v) in order.iter().enumerate() {
            position[v.0] = i;
        }
        let values = s
            .vertex_ids()
            .map(|v| {
                let pv = p.vertex_dist(v);
                let mut vals: Vec<u32> = pv.support().copied().collect();
                let d = p.d();
                let compatible = |a: u32| -> usize {
                    s.incident(v)
                        .map(|e| {
                            let m = p.edge_matrix(e);
                            let edge = s.edge(e);
                            (0..d)
                                .filter(|&b| {
                                    let src = if edge.source == v { a as usize } else { b };
                                    let tgt = if edge.target == v { a as usize } else { b };
                                    !m.get(src, tgt).is_zero()
                                })
                                .count()
                        })
                        .sum()
                };
                vals.sort_by_key(|&a| (std::cmp::Reverse(compatible(a)), a));
                vals
            })
            .collect();
        Search {
            p,
            order,
            position,
            values,
            labels: vec![0; s.num_vertices()],
        }
    }

    fn consistent(&self, i: usize) -> bool {
        let s = self.p.scenario();
        let v = self.order[i];
        s.incident(v).all(|e| {
            let edge = s.edge(e);
            let other = if edge.source == v { edge.target } else { edge.source };
            if self.position[other.0] > i {
                return true;
            }
            let m = self.p.edge_matrix(e);
            !m.get(self.labels[edge.source.0] as usize, self.labels[edge.target.0] as usize)
                .is_zero()
        })
    }

    /// Visits support labelings until `f` returns `false`.
    fn run<F: FnMut(&[u32]) -> bool>(&mut self, i: usize, f: &mut F) -> bool {
        if i == self.order.len() {
            return f(&self.labels);
        }
        let v = self.order[i];
        for k in 0..self.values[v.0].len() {
            self.labels[v.0] = self.values[v.0][k];
            if self.consistent(i) && !self.run(i + 1, f) {
                return false;
            }
        }
        true
    }
}

/// All deterministic labelings `phi` with `M_e(phi(src), phi(tgt)) != 0` on
/// every edge (and `p_v(phi(v)) != 0` on isolated vertices).
pub fn support<S: Semiring>(p: &SimpDist<S>) -> SupportResult {
    let mut out = Vec::new();
    Search::new(p).run(0, &mut |l| {
        out.push(OutcomeLabeling::new(l.to_vec()));
        true
    });
    out.sort();
    SupportResult { labelings: out }
}

/// Some support labeling, or `None` when the support is empty.
pub fn first_support<S: Semiring>(p: &SimpDist<S>) -> Option<OutcomeLabeling> {
    let mut found = None;
    Search::new(p).run(0, &mut |l| {
        found = Some(OutcomeLabeling::new(l.to_vec()));
        false
    });
    found
}

/// Result of the PR-circle search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrCircle {
    pub strongly_contextual: bool,
    /// A circle on which every edge is `p_plus` or `p_minus`, with an odd
    /// number of `p_minus`.
    pub witness: Option<Circle>,
}

struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    /// Root of `v` and the parity of the path from `v` to it.
    fn find(&mut self, v: usize) -> (usize, u8) {
        if self.parent[v] == v {
            return (v, 0);
        }
        let (root, p) = self.find(self.parent[v]);
        self.parity[v] ^= p;
        self.parent[v] = root;
        (root, self.parity[v])
    }

    /// Records `label(u) + label(v) = w`; returns `false` on a contradiction.
    fn union(&mut self, u: usize, v: usize, w: u8) -> bool {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return pu ^ pv == w;
        }
        self.parent[ru] = rv;
        self.parity[ru] = pu ^ pv ^ w;
        true
    }
}

/// For `d = 2` and rational weights: strongly contextual iff some circle
/// carries a PR box. Edges equal to `p_plus` get parity 0 and `p_minus`
/// parity 1; an odd circle among them is an unbalanced cycle of this signed
/// graph.
pub fn pr_circle_decider<S: Semiring>(p: &SimpDist<S>) -> Result<PrCircle> {
    if S::KIND != Kind::Rational {
        return Err(Error::WrongSemiring { expected: "rational" });
    }
    if p.d() != 2 {
        return Err(Error::WrongOutcomeArity { expected: 2, got: p.d() });
    }
    let s = p.scenario();
    let plus = EdgeMatrix::<S>::shift(2, 0);
    let minus = EdgeMatrix::<S>::shift(2, 1);
    let mut uf = ParityUnionFind::new(s.num_vertices());
    // adjacency of the edges already merged, for extracting the witness
    let mut forest: Vec<Vec<(EdgeId, Orientation, VertexId)>> = vec![Vec::new(); s.num_vertices()];
    for e in s.edge_ids() {
        let m = p.edge_matrix(e);
        let w = if *m == plus {
            0
        } else if *m == minus {
            1
        } else {
            continue;
        };
        let edge = s.edge(e);
        let (u, v) = (edge.source, edge.target);
        let joined = uf.find(u.0).0 == uf.find(v.0).0;
        if uf.union(u.0, v.0, w) {
            if !joined {
                forest[u.0].push((e, Orientation::Forward, v));
                forest[v.0].push((e, Orientation::Reversed, u));
            }
            continue;
        }
        let mut steps = vec![Step::forward(e)];
        steps.extend(forest_path(&forest, v, u));
        let circle = Circle::new(s, steps).expect("tree path closes the circle");
        return Ok(PrCircle {
            strongly_contextual: true,
            witness: Some(circle),
        });
    }
    Ok(PrCircle {
        strongly_contextual: false,
        witness: None,
    })
}

fn forest_path(forest: &[Vec<(EdgeId, Orientation, VertexId)>], from: VertexId, to: VertexId) -> Vec<Step> {
    if from == to {
        return Vec::new();
    }
    let mut prev: Vec<Option<(Step, VertexId)>> = vec![None; forest.len()];
    let mut seen = vec![false; forest.len()];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &(e, o, y) in &forest[x.0] {
            if !seen[y.0] {
                seen[y.0] = true;
                prev[y.0] = Some((Step { edge: e, orientation: o }, x));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while let Some((st, x)) = prev[at.0] {
        path.push(st);
        at = x;
    }
    path.reverse();
    path
}

/// Strong-contextuality verdict with the answers of each applicable decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScDecision {
    pub strongly_contextual: bool,
    /// A support labeling when not strongly contextual.
    pub support_witness: Option<OutcomeLabeling>,
    /// The PR-circle verdict (rational, `d = 2`).
    pub pr_circle: Option<PrCircle>,
    /// The endomorphism criterion on the Boolean projection (`d = 2`): the
    /// verdict and its witness vertex.
    pub criterion: Option<(bool, Option<usize>)>,
}

/// Empty support, cross-checked against the PR-circle search and the
/// endomorphism criterion whenever they apply.
pub fn is_strongly_contextual<S: Semiring>(p: &SimpDist<S>) -> Result<ScDecision> {
    let witness = first_support(p);
    let sc = witness.is_none();
    let mut out = ScDecision {
        strongly_contextual: sc,
        support_witness: witness,
        pr_circle: None,
        criterion: None,
    };
    if p.d() == 2 {
        if S::KIND == Kind::Rational {
            let pr = pr_circle_decider(p)?;
            assert_eq!(pr.strongly_contextual, sc, "PR-circle search disagrees with the support");
            out.pr_circle = Some(pr);
        }
        let c = build_category(&p.project())?;
        let crit = sc_criterion(&c)?;
        assert_eq!(crit.strongly_contextual, sc, "endomorphism criterion disagrees with the support");
        out.criterion = Some((crit.strongly_contextual, crit.witness));
    }
    Ok(out)
}

/// A decomposition of a distribution as a mixture of deterministic ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCWitness {
    pub weights: Vec<(OutcomeLabeling, Rational)>,
}

impl NCWitness {
    /// Whether the mixture reproduces `p` exactly.
    pub fn reproduces(&self, p: &SimpDist<Rational>) -> bool {
        let total = Rational::sum(self.weights.iter().map(|(_, w)| w));
        if total != Rational::one() {
            return false;
        }
        let parts: Vec<(Rational, SimpDist<Rational>)> = match self
            .weights
            .iter()
            .map(|(phi, w)| SimpDist::deterministic(p.scenario().clone(), p.d(), phi).map(|q| (w.clone(), q)))
            .collect::<Result<Vec<_>>>()
        {
            Ok(v) => v,
            Err(_) => return false,
        };
        let refs: Vec<(Rational, &SimpDist<Rational>)> = parts.iter().map(|(w, q)| (w.clone(), q)).collect();
        SimpDist::mixture(&refs).is_ok_and(|m| m == *p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextualityResult {
    pub contextual: bool,
    pub witness: Option<NCWitness>,
}

fn check_cap(p: &SimpDist<Rational>, cap: u64) -> Result<()> {
    let count = BigUint::from(p.d()).pow(p.scenario().num_vertices() as u32);
    if count > BigUint::from(cap) {
        return Err(Error::TooLarge(format!(
            "{} labelings exceed the cap of {cap}",
            count
        )));
    }
    Ok(())
}

/// Exact test for membership in the convex hull of the deterministic
/// distributions. Only support labelings can carry weight in a mixture, so
/// they are the LP variables.
pub fn is_contextual(p: &SimpDist<Rational>, cap: u64) -> Result<ContextualityResult> {
    check_cap(p, cap)?;
    let vars = support(p).labelings;
    if vars.is_empty() {
        return Ok(ContextualityResult {
            contextual: true,
            witness: None,
        });
    }
    let s = p.scenario();
    let d = p.d();
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();
    let indicator = |f: &dyn Fn(&OutcomeLabeling) -> bool| -> Vec<BigRational> {
        vars.iter()
            .map(|phi| if f(phi) { BigRational::one() } else { BigRational::zero() })
            .collect()
    };
    for e in s.edge_ids() {
        let edge = s.edge(e);
        let m = p.edge_matrix(e);
        for x in 0..d {
            for y in 0..d {
                a.push(indicator(&|phi| {
                    phi.get(edge.source) as usize == x && phi.get(edge.target) as usize == y
                }));
                b.push(m.get(x, y).as_big().clone());
            }
        }
    }
    for (&v, pv) in p.isolated() {
        for x in 0..d as u32 {
            a.push(indicator(&|phi| phi.get(v) == x));
            b.push(pv.weight(&x).into_big());
        }
    }
    a.push(indicator(&|_| true));
    b.push(BigRational::one());
    let Some(x) = lp::feasible_point(&a, &b) else {
        return Ok(ContextualityResult {
            contextual: true,
            witness: None,
        });
    };
    let weights = vars
        .into_iter()
        .zip(x)
        .filter(|(_, w)| !w.is_zero())
        .map(|(phi, w)| (phi, Rational::from_big(w).expect("simplex keeps x >= 0")))
        .collect();
    let witness = NCWitness { weights };
    debug_assert!(witness.reproduces(p));
    Ok(ContextualityResult {
        contextual: false,
        witness: Some(witness),
    })
}

/// Whether `p` is the only distribution with its zero pattern, i.e. a vertex
/// of the polytope of distributions on the scenario.
pub fn is_polytope_vertex(p: &SimpDist<Rational>) -> bool {
    let s = p.scenario();
    let d = p.d();
    // coordinates: the nonzero edge entries, then nonzero isolated entries
    let mut coord: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut iso: BTreeMap<(VertexId, u32), usize> = BTreeMap::new();
    let mut n = 0;
    for e in s.edge_ids() {
        let m = p.edge_matrix(e);
        for x in 0..d {
            for y in 0..d {
                if !m.get(x, y).is_zero() {
                    coord.insert((e.0, x, y), n);
                    n += 1;
                }
            }
        }
    }
    for (&v, pv) in p.isolated() {
        for &x in pv.support() {
            iso.insert((v, x), n);
            n += 1;
        }
    }
    let unit = || vec![BigRational::zero(); n];
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for e in s.edge_ids() {
        let mut r = unit();
        for ((_, _, _), &i) in coord.range((e.0, 0, 0)..=(e.0, d, d)) {
            r[i] = BigRational::one();
        }
        rows.push(r);
    }
    for &v in p.isolated().keys() {
        let mut r = unit();
        for (_, &i) in iso.range((v, 0)..=(v, u32::MAX)) {
            r[i] = BigRational::one();
        }
        rows.push(r);
    }
    // marginal of each incidence as a coefficient vector on outcome `x`
    let marginal = |e: EdgeId, as_source: bool, x: usize| -> Vec<BigRational> {
        let mut r = unit();
        for y in 0..d {
            let key = if as_source { (e.0, x, y) } else { (e.0, y, x) };
            if let Some(&i) = coord.get(&key) {
                r[i] += BigRational::one();
            }
        }
        r
    };
    for v in s.vertex_ids() {
        let mut incidences = Vec::new();
        for e in s.incident(v) {
            let edge = s.edge(e);
            if edge.source == v {
                incidences.push((e, true));
            }
            if edge.target == v {
                incidences.push((e, false));
            }
        }
        for pair in incidences.windows(2) {
            for x in 0..d {
                let mut r = marginal(pair[0].0, pair[0].1, x);
                for (c, y) in r.iter_mut().zip(marginal(pair[1].0, pair[1].1, x)) {
                    *c -= y;
                }
                rows.push(r);
            }
        }
    }
    lp::rank(rows) == n
}

/// Every classification flag with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub deterministic: Option<OutcomeLabeling>,
    pub vertex: bool,
    pub contextual: bool,
    pub strongly_contextual: bool,
    pub nc_witness: Option<NCWitness>,
    pub sc: ScDecision,
}

impl Classification {
    pub fn flags(&self) -> [bool; 4] {
        [
            self.deterministic.is_some(),
            self.vertex,
            self.contextual,
            self.strongly_contextual,
        ]
    }

    /// Strong contextuality implies contextuality, deterministic implies a
    /// non-contextual vertex.
    pub fn is_coherent(&self) -> bool {
        (!self.strongly_contextual || self.contextual)
            && (self.deterministic.is_none() || (self.vertex && !self.contextual))
    }
}

pub fn classify(p: &SimpDist<Rational>, cap: u64) -> Result<Classification> {
    let sc = is_strongly_contextual(p)?;
    let ctx = is_contextual(p, cap)?;
    let out = Classification {
        deterministic: p.as_deterministic(),
        vertex: is_polytope_vertex(p),
        contextual: ctx.contextual,
        strongly_contextual: sc.strongly_contextual,
        nc_witness: ctx.witness,
        sc,
    };
    debug_assert!(out.is_coherent());
    Ok(out)
}

/// For a witness circle of a strongly contextual `d = 2` distribution: the
/// edge labels `b - a` along the circle are deterministic, and their circle
/// invariant is nonzero. Returns the labels of the circle edges and the
/// invariant, or `None` if some label is not deterministic.
pub fn homotopical_check<S: Semiring>(p: &SimpDist<S>, c: &Circle) -> Result<Option<(Vec<u32>, u32)>> {
    let mut labels = vec![0; p.scenario().num_edges()];
    let mut along = Vec::with_capacity(c.len());
    for e in c.edges() {
        let Some(&g) = p.edge_matrix(e).label_dist().as_delta() else {
            return Ok(None);
        };
        labels[e.0] = g;
        along.push(g);
    }
    let phi = NerveLabeling::new(p.d() as u32, labels)?;
    Ok(Some((along, circle_invariant(c, &phi))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::scenario::Scenario;
    use crate::semiring::Dist;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn half_mix(a: &SimpDist<Rational>, b: &SimpDist<Rational>) -> SimpDist<Rational> {
        SimpDist::mixture(&[(q(1, 2), a), (q(1, 2), b)]).unwrap()
    }

    #[test]
    fn support_examples() {
        let s = Arc::new(Scenario::cycle(4));
        let phi = OutcomeLabeling::new(vec![0, 1, 1, 0]);
        let det = SimpDist::<Rational>::deterministic(Arc::clone(&s), 2, &phi).unwrap();
        assert_eq!(support(&det).labelings, vec![phi]);
        assert!(support(&SimpDist::pr_box_cycle(4, &[0]).unwrap()).is_empty());
        let u = SimpDist::from_matrices(s, 2, vec![EdgeMatrix::<Rational>::uniform(2); 4]).unwrap();
        assert_eq!(support(&u).labelings.len(), 16);
    }

    #[test]
    fn pr_circle_examples() {
        let r = pr_circle_decider(&SimpDist::pr_box_cycle(4, &[0]).unwrap()).unwrap();
        assert!(r.strongly_contextual);
        assert_eq!(r.witness.unwrap().len(), 4);
        let plus = SimpDist::from_matrices(Arc::new(Scenario::cycle(4)), 2, vec![EdgeMatrix::p_plus(); 4]).unwrap();
        assert!(!pr_circle_decider(&plus).unwrap().strongly_contextual);
        let loop_box = SimpDist::pr_box_cycle(1, &[0]).unwrap();
        assert_eq!(pr_circle_decider(&loop_box).unwrap().witness.unwrap().len(), 1);
        assert!(matches!(
            pr_circle_decider(&loop_box.project()),
            Err(Error::WrongSemiring { .. })
        ));
    }

    #[test]
    fn pr_box_with_dangling_tree() {
        // 4-cycle on v0..v3 plus a tree hanging off v0
        let s = Arc::new(
            Scenario::from_indices(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap(),
        );
        let pv = Dist::uniform(0..2).unwrap();
        let skew = Dist::from_weights([(0u32, q(1, 3)), (1, q(2, 3))]).unwrap();
        let hang = glue_product(&pv, &skew);
        let hang2 = glue_product(&skew, &skew);
        let p = SimpDist::from_matrices(
            s,
            2,
            vec![
                EdgeMatrix::p_plus(),
                EdgeMatrix::p_plus(),
                EdgeMatrix::p_minus(),
                EdgeMatrix::p_plus(),
                hang,
                hang2,
            ],
        )
        .unwrap();
        let r = pr_circle_decider(&p).unwrap();
        assert!(r.strongly_contextual);
        assert_eq!(r.witness.unwrap().len(), 4);
        assert!(is_strongly_contextual(&p).unwrap().strongly_contextual);
    }

    fn glue_product(a: &Dist<Rational, u32>, b: &Dist<Rational, u32>) -> EdgeMatrix<Rational> {
        EdgeMatrix::from_fn(2, |x, y| a.weight(&(x as u32)).mul(&b.weight(&(y as u32)))).unwrap()
    }

    #[test]
    fn sc_examples() {
        for n in 1..=5 {
            let p = SimpDist::pr_box_cycle(n, &[0]).unwrap();
            assert!(is_strongly_contextual(&p).unwrap().strongly_contextual);
        }
        let s = Arc::new(Scenario::cycle(4));
        let a = SimpDist::deterministic(Arc::clone(&s), 2, &OutcomeLabeling::new(vec![0, 0, 1, 1])).unwrap();
        let b = SimpDist::deterministic(Arc::clone(&s), 2, &OutcomeLabeling::new(vec![1, 0, 1, 0])).unwrap();
        assert!(!is_strongly_contextual(&half_mix(&a, &b)).unwrap().strongly_contextual);
        let phi = NerveLabeling::new(2, vec![1, 1, 0, 1]).unwrap();
        let t = SimpDist::<Rational>::section_t(s, 2, &phi.deltas()).unwrap();
        assert!(is_strongly_contextual(&t).unwrap().strongly_contextual);
    }

    #[test]
    fn lp_examples() {
        let s = Arc::new(Scenario::cycle(4));
        let phi = OutcomeLabeling::new(vec![0, 1, 1, 0]);
        let det = SimpDist::deterministic(Arc::clone(&s), 2, &phi).unwrap();
        let r = is_contextual(&det, DEFAULT_CAP).unwrap();
        assert!(!r.contextual);
        assert_eq!(r.witness.unwrap().weights, vec![(phi, Rational::one())]);
        let pr = SimpDist::pr_box_cycle(4, &[0]).unwrap();
        assert!(is_contextual(&pr, DEFAULT_CAP).unwrap().contextual);
        // half PR box plus a deterministic point violates CHSH (value 3 > 2)
        let mixed = half_mix(&pr, &SimpDist::deterministic(s, 2, &OutcomeLabeling::zero(4)).unwrap());
        assert!(is_contextual(&mixed, DEFAULT_CAP).unwrap().contextual);
        assert!(matches!(is_contextual(&pr, 8), Err(Error::TooLarge(_))));
    }

    #[test]
    fn vertex_examples() {
        let s = Arc::new(Scenario::cycle(3));
        let a = SimpDist::deterministic(Arc::clone(&s), 2, &OutcomeLabeling::new(vec![0, 1, 1])).unwrap();
        let b = SimpDist::deterministic(Arc::clone(&s), 2, &OutcomeLabeling::new(vec![1, 1, 0])).unwrap();
        assert!(is_polytope_vertex(&a));
        assert!(is_polytope_vertex(&SimpDist::pr_box_cycle(3, &[1]).unwrap()));
        assert!(!is_polytope_vertex(&half_mix(&a, &b)));
        let u = SimpDist::from_matrices(s, 2, vec![EdgeMatrix::<Rational>::uniform(2); 3]).unwrap();
        assert!(!is_polytope_vertex(&u));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&SimpDist::pr_box_cycle(4, &[0]).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(c.flags(), [false, true, true, true]);
        let s = Arc::new(Scenario::cycle(4));
        let det = SimpDist::deterministic(Arc::clone(&s), 2, &OutcomeLabeling::zero(4)).unwrap();
        assert_eq!(classify(&det, DEFAULT_CAP).unwrap().flags(), [true, true, false, false]);
        let u = SimpDist::from_matrices(s, 2, vec![EdgeMatrix::<Rational>::uniform(2); 4]).unwrap();
        let c = classify(&u, DEFAULT_CAP).unwrap();
        assert_eq!(c.flags(), [false, false, false, false]);
        assert!(c.nc_witness.unwrap().reproduces(&u));
    }

    #[test]
    fn degenerate_scenarios() {
        let s = Arc::new(Scenario::from_indices(2, &[]).unwrap());
        let mut iso = BTreeMap::new();
        iso.insert(VertexId(0), Dist::delta(1));
        iso.insert(VertexId(1), Dist::uniform(0..2).unwrap());
        let p = SimpDist::new(Arc::clone(&s), 2, vec![], iso.clone()).unwrap();
        let c = classify(&p, DEFAULT_CAP).unwrap();
        assert!(!c.contextual && !c.strongly_contextual && !c.vertex);
        iso.insert(VertexId(1), Dist::delta(0));
        let p = SimpDist::new(s, 2, vec![], iso).unwrap();
        assert!(classify(&p, DEFAULT_CAP).unwrap().vertex);
    }

    #[test]
    fn homotopical_witness() {
        let p = SimpDist::pr_box_cycle(5, &[0, 2, 3]).unwrap();
        let c = pr_circle_decider(&p).unwrap().witness.unwrap();
        let (_, inv) = homotopical_check(&p, &c).unwrap().unwrap();
        assert_eq!(inv, 1);
    }
}
