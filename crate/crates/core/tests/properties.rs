use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use ctxlab::contextuality::{classify, is_strongly_contextual, pr_circle_decider, support, DEFAULT_CAP};
use ctxlab::generate;
use ctxlab::homotopy::{circle_invariant, face_member, face_structure, is_null_homotopic, null_homotopy_from, NerveLabeling};
use ctxlab::logiccat::{build_category, category_support, circle_product, sc_criterion, BoolMatrix};
use ctxlab::scenario::{Orientation, Scenario, Step, SubScenario, VertexId, Walk};
use ctxlab::semiring::{Boolean, Dist, Rational, Semiring};
use ctxlab::simpdist::{section_t_tuple, drop_first, EdgeMatrix, OutcomeLabeling, SimpDist};

fn q(n: u64, d: u64) -> Rational {
    Rational::new(n as i64, d as i64).unwrap()
}

fn arb_dist(d: u32) -> impl Strategy<Value = Dist<Rational, u32>> {
    prop::collection::vec(0u64..5, d as usize)
        .prop_filter("some weight", |w| w.iter().any(|&x| x > 0))
        .prop_map(|w| {
            let total: u64 = w.iter().sum();
            Dist::from_weights(w.iter().enumerate().map(|(i, &x)| (i as u32, q(x, total)))).unwrap()
        })
}

fn arb_scenario(max_v: usize, max_e: usize) -> impl Strategy<Value = Arc<Scenario>> {
    (1..=max_v)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_e)))
        .prop_map(|(n, edges)| Arc::new(Scenario::from_indices(n, &edges).unwrap()))
}

fn arb_connected(max_v: usize, max_e: usize) -> impl Strategy<Value = Arc<Scenario>> {
    arb_scenario(max_v, max_e).prop_filter("connected", |s| s.is_connected())
}

/// Random distributions with denominators dividing 1, 2, 3 or 4; small
/// denominators make zeros, and so strong contextuality, common.
fn arb_simp(s: impl Strategy<Value = Arc<Scenario>>, d: usize) -> impl Strategy<Value = SimpDist<Rational>> {
    (s, 1u32..=4, any::<u64>()).prop_map(move |(s, den, seed)| generate::random(s, d, den, seed).unwrap())
}

fn arb_labeling(n: usize, d: u32) -> impl Strategy<Value = OutcomeLabeling> {
    prop::collection::vec(0..d, n).prop_map(OutcomeLabeling::new)
}

/// Support by brute force over every labeling.
fn support_oracle<S: Semiring>(p: &SimpDist<S>) -> Vec<OutcomeLabeling> {
    let s = p.scenario();
    OutcomeLabeling::all(s.num_vertices(), p.d() as u32)
        .filter(|phi| {
            s.edges().iter().enumerate().all(|(i, e)| {
                !p.edge_matrices()[i]
                    .get(phi.get(e.source) as usize, phi.get(e.target) as usize)
                    .is_zero()
            }) && p.isolated().iter().all(|(v, pv)| !pv.weight(&phi.get(*v)).is_zero())
        })
        .collect()
}

fn marginal(m: &EdgeMatrix<Rational>, rows: bool) -> Vec<Rational> {
    let d = m.d();
    (0..d)
        .map(|i| {
            let mut acc = Rational::zero();
            for j in 0..d {
                acc = acc.add(if rows { m.get(i, j) } else { m.get(j, i) });
            }
            acc
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pushforward_is_functorial(p in arb_dist(4)) {
        prop_assert_eq!(p.pushforward(|&x| x), p.clone());
        let f = |x: &u32| (x * 3) % 4;
        let g = |x: &u32| x / 2;
        prop_assert_eq!(p.pushforward(f).pushforward(g), p.pushforward(|x| g(&f(x))));
    }

    #[test]
    fn projection_commutes_with_pushforward_and_convolution(p in arb_dist(3), r in arb_dist(3)) {
        let f = |x: &u32| x % 2;
        prop_assert_eq!(p.pushforward(f).project(), p.project().pushforward(f));
        prop_assert_eq!(p.convolve(&r, 3).project(), p.project().convolve(&r.project(), 3));
    }

    #[test]
    fn cycle_basis_has_betti_many_circles(s in arb_scenario(5, 7)) {
        let c = s.connected_components().len();
        let expected = s.num_edges() + c - s.num_vertices();
        prop_assert_eq!(s.cycle_basis().len(), expected);
        prop_assert_eq!(s.betti_number(), expected);
    }

    #[test]
    fn collapse_removes_one_edge_and_keeps_components(s in arb_scenario(5, 6), pick in any::<prop::sample::Index>()) {
        let non_loops: Vec<_> = s.edge_ids().filter(|&e| !s.edge(e).is_loop()).collect();
        prop_assume!(!non_loops.is_empty());
        let e = non_loops[pick.index(non_loops.len())];
        let cm = s.collapse_edge(e).unwrap();
        prop_assert_eq!(cm.result.num_edges(), s.num_edges() - 1);
        prop_assert_eq!(cm.result.num_vertices(), s.num_vertices() - 1);
        prop_assert_eq!(cm.result.connected_components().len(), s.connected_components().len());
    }

    #[test]
    fn enumerated_circles_are_closed_walks(s in arb_scenario(4, 6)) {
        for c in s.enumerate_circles(6) {
            let w = Walk::new(&s, c.steps().to_vec()).unwrap();
            prop_assert!(w.is_closed(&s));
            let vs = c.vertices(&s);
            prop_assert_eq!(vs.iter().collect::<BTreeSet<_>>().len(), vs.len());
        }
    }

    #[test]
    fn random_distributions_are_consistent(p in arb_simp(arb_scenario(4, 5), 3)) {
        let s = p.scenario();
        for v in s.vertex_ids() {
            let mut seen = BTreeSet::new();
            for e in s.incident(v) {
                let edge = s.edge(e);
                let m = p.edge_matrix(e);
                if edge.source == v {
                    seen.insert(marginal(m, true));
                }
                if edge.target == v {
                    seen.insert(marginal(m, false));
                }
            }
            prop_assert!(seen.len() <= 1, "vertex {} has {} marginals", v.0, seen.len());
        }
    }

    #[test]
    fn section_t_is_a_section_and_a_homomorphism(
        s in arb_scenario(3, 4),
        d in 2u32..=3,
        seed in any::<u64>(),
    ) {
        let mut rng_q = Vec::new();
        let mut rng_r = Vec::new();
        for e in 0..s.num_edges() as u64 {
            let g = |k: u64| ((seed >> (k % 60)) as u32) % d;
            rng_q.push(Dist::from_weights([(g(e), q(1, 2)), (g(e + 7), q(1, 2))]).unwrap());
            rng_r.push(Dist::from_weights([(g(e + 3), q(1, 3)), (g(e + 11), q(2, 3))]).unwrap());
        }
        let t = SimpDist::section_t(Arc::clone(&s), d as usize, &rng_q).unwrap();
        prop_assert_eq!(t.nerve_pushforward(), rng_q.clone());
        let conv: Vec<_> = rng_q.iter().zip(&rng_r).map(|(a, b)| a.convolve(b, d)).collect();
        let lhs = SimpDist::section_t(Arc::clone(&s), d as usize, &conv).unwrap();
        let rhs = SimpDist::section_t(Arc::clone(&s), d as usize, &rng_r).unwrap();
        for e in s.edge_ids() {
            let prod = t.edge_matrix(e).to_dist().convolve(&rhs.edge_matrix(e).to_dist(), d);
            prop_assert_eq!(lhs.edge_matrix(e).to_dist(), prod);
        }
    }

    #[test]
    fn tuple_section_laws(n in 1usize..=3, d in 2u32..=3, a in any::<u64>(), b in any::<u64>()) {
        let tuple = |seed: u64, k: u64| (0..n as u64).map(|i| ((seed >> ((i + 3 * k) % 60)) as u32) % d).collect::<Vec<_>>();
        let p = Dist::from_weights([(tuple(a, 0), q(1, 4)), (tuple(a, 1), q(3, 4))]).unwrap();
        let r = Dist::from_weights([(tuple(b, 0), q(1, 2)), (tuple(b, 5), q(1, 2))]).unwrap();
        prop_assert_eq!(drop_first(&section_t_tuple(&p, d)), p.clone());
        prop_assert_eq!(
            section_t_tuple(&p.convolve(&r, d), d),
            section_t_tuple(&p, d).convolve(&section_t_tuple(&r, d), d)
        );
    }

    #[test]
    fn composition_is_associative_and_keeps_outer_marginals(p in arb_simp(Just(Arc::new(Scenario::path(3))), 3)) {
        let s = p.scenario();
        let steps: Vec<Step> = s.edge_ids().map(Step::forward).collect();
        let m01 = p.compose(steps[0], steps[1]).unwrap();
        let m12 = p.compose(steps[1], steps[2]).unwrap();
        let v1 = p.vertex_dist(VertexId(1));
        let v2 = p.vertex_dist(VertexId(2));
        let left = m01.compose_through(p.edge_matrix(steps[2].edge), &v2);
        let right = p.edge_matrix(steps[0].edge).compose_through(&m12, &v1);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.row_marginal(), p.vertex_dist(VertexId(0)));
        prop_assert_eq!(left.col_marginal(), p.vertex_dist(VertexId(3)));
        prop_assert_eq!(p.compose_walk(&Walk::new(s, steps).unwrap()), left);
    }

    #[test]
    fn action_is_a_group_action(
        p in arb_simp(arb_scenario(4, 5), 3),
        seed in any::<u64>(),
    ) {
        let n = p.scenario().num_vertices();
        let l = |k: u64| OutcomeLabeling::new((0..n as u64).map(|i| ((seed >> ((i + k) % 60)) as u32) % 3).collect());
        let (phi, psi) = (l(0), l(17));
        prop_assert_eq!(p.act(&OutcomeLabeling::zero(n)), p.clone());
        prop_assert_eq!(p.act(&psi).act(&phi), p.act(&phi.add(&psi, 3)));
    }

    #[test]
    fn pullback_and_transport_are_inverse(
        s in arb_scenario(4, 5),
        pick in any::<prop::sample::Index>(),
        den in 1u32..=4,
        seed in any::<u64>(),
    ) {
        let non_loops: Vec<_> = s.edge_ids().filter(|&e| !s.edge(e).is_loop()).collect();
        prop_assume!(!non_loops.is_empty());
        let cm = s.collapse_edge(non_loops[pick.index(non_loops.len())]).unwrap();
        let small = generate::random(Arc::clone(&cm.result), 2, den, seed).unwrap();
        let big = small.pullback(&cm).unwrap();
        prop_assert!(big.edge_matrix(cm.collapsed).is_diagonal());
        prop_assert_eq!(big.transport_collapse(&cm).unwrap(), small);
        prop_assert_eq!(big.transport_collapse(&cm).unwrap().pullback(&cm).unwrap(), big.clone());
        prop_assert_eq!(classify(&big, DEFAULT_CAP).unwrap().flags(), classify(&big.transport_collapse(&cm).unwrap(), DEFAULT_CAP).unwrap().flags());
    }

    #[test]
    fn circle_invariants_add_and_negate(k in 2usize..=4, d in 2u32..=5, seed in any::<u64>()) {
        let s = Scenario::theta(k);
        let labels: Vec<u32> = (0..k as u64).map(|i| ((seed >> (3 * i)) as u32) % d).collect();
        let phi = NerveLabeling::new(d, labels.clone()).unwrap();
        let circ = |i: usize, j: usize| {
            ctxlab::scenario::Circle::new(&s, vec![
                Step::forward(ctxlab::scenario::EdgeId(i)),
                Step::forward(ctxlab::scenario::EdgeId(j)).reversed(),
            ]).unwrap()
        };
        for j in 1..k {
            let c = circ(0, j);
            let signed = (labels[0] + d - labels[j]) % d;
            prop_assert_eq!(circle_invariant(&c, &phi), signed);
            let reversed: u32 = c.steps().iter().rev().map(|st| match st.orientation {
                Orientation::Forward => d - labels[st.edge.0],
                Orientation::Reversed => labels[st.edge.0],
            }).sum::<u32>() % d;
            prop_assert_eq!((reversed + circle_invariant(&c, &phi)) % d, 0);
        }
        for j in 2..k {
            let a = circle_invariant(&circ(0, 1), &phi);
            let b = circle_invariant(&circ(1, j), &phi);
            prop_assert_eq!((a + b) % d, circle_invariant(&circ(0, j), &phi));
        }
    }

    #[test]
    fn null_homotopy_is_basis_independent(s in arb_connected(4, 6), d in 2u32..=4, seed in any::<u64>()) {
        let labels: Vec<u32> = (0..s.num_edges() as u64).map(|i| ((seed >> (5 * i % 60)) as u32) % d).collect();
        let phi = NerveLabeling::new(d, labels).unwrap();
        let forward: Vec<VertexId> = s.vertex_ids().collect();
        let backward: Vec<VertexId> = forward.iter().rev().copied().collect();
        let a = null_homotopy_from(&s, &phi, &forward).unwrap().is_null();
        let b = null_homotopy_from(&s, &phi, &backward).unwrap().is_null();
        prop_assert_eq!(a, b);
        let all_circles_vanish = s.enumerate_circles(s.num_edges()).all(|c| circle_invariant(&c, &phi) == 0);
        prop_assert_eq!(a, all_circles_vanish);
    }

    #[test]
    fn face_members_push_forward_to_the_labeling(
        s in arb_connected(4, 5),
        d in 2u32..=4,
        seed in any::<u64>(),
        base in arb_dist(4),
    ) {
        let labels: Vec<u32> = (0..s.num_edges() as u64).map(|i| ((seed >> (7 * i % 60)) as u32) % d).collect();
        let phi = NerveLabeling::new(d, labels).unwrap();
        let fs = face_structure(&s, &phi).unwrap();
        let g = fs.generator;
        let pv = Dist::from_weights((0..d).map(|a| (a, base.weight(&(a % g)).mul(&q(g as u64, d as u64))))).unwrap_or_else(|_| Dist::uniform(0..d).unwrap());
        let pv = if fs.is_invariant(&pv) { pv } else { Dist::uniform(0..d).unwrap() };
        let p = face_member(Arc::clone(&s), &fs, VertexId(0), &pv).unwrap();
        for (e, qe) in p.nerve_pushforward().iter().enumerate() {
            prop_assert_eq!(qe.as_delta(), Some(&phi.labels()[e]));
        }
        prop_assert_eq!(p.vertex_dist(VertexId(0)), pv);
    }

    #[test]
    fn null_homotopic_count_and_deterministic_vertices(s in arb_connected(4, 4), d in 2u32..=3) {
        let n = s.num_vertices() as u32;
        let nulls = NerveLabeling::all(d, s.num_edges())
            .filter(|phi| is_null_homotopic(&s, phi).unwrap().is_null())
            .count();
        prop_assert_eq!(nulls as u64, (d as u64).pow(n - 1));
        let dets: BTreeSet<_> = OutcomeLabeling::all(n as usize, d)
            .map(|phi| SimpDist::<Rational>::deterministic(Arc::clone(&s), d as usize, &phi).unwrap())
            .collect::<Vec<_>>()
            .into_iter()
            .map(|p| {
                let image = ctxlab::homotopy::nerve_image(&p).unwrap();
                assert!(is_null_homotopic(&s, &image).unwrap().is_null());
                p.edge_matrices().to_vec()
            })
            .collect();
        if s.num_edges() > 0 {
            prop_assert_eq!(dets.len() as u64, (d as u64).pow(n));
        }
    }

    #[test]
    fn category_support_matches_backtracking(p in arb_simp(arb_scenario(4, 5), 2)) {
        let b = p.project();
        let c = build_category(&b).unwrap();
        prop_assert!(c.check_axioms());
        let oracle = support_oracle(&p);
        prop_assert_eq!(category_support(&c), oracle.clone());
        prop_assert_eq!(support(&p).labelings, oracle.clone());
        prop_assert_eq!(sc_criterion(&c).unwrap().strongly_contextual, oracle.is_empty());
    }

    #[test]
    fn category_is_equivariant(p in arb_simp(arb_scenario(4, 5), 2), seed in any::<u64>()) {
        let n = p.scenario().num_vertices();
        let phi = OutcomeLabeling::new((0..n as u64).map(|i| ((seed >> i) & 1) as u32).collect());
        let c = build_category(&p.project()).unwrap();
        prop_assert_eq!(build_category(&p.act(&phi).project()).unwrap(), c.act(&phi));
    }

    #[test]
    fn projection_turns_composition_into_product(p in arb_simp(Just(Arc::new(Scenario::path(2))), 3)) {
        let m = p.compose(Step::forward(ctxlab::scenario::EdgeId(0)), Step::forward(ctxlab::scenario::EdgeId(1))).unwrap();
        let b = p.project();
        let bm = b.edge_matrix(ctxlab::scenario::EdgeId(0)).bool_product(b.edge_matrix(ctxlab::scenario::EdgeId(1)));
        prop_assert_eq!(m.project(), bm);
    }

    #[test]
    fn circle_reduces_to_its_product(n in 1usize..=5, den in 1u32..=4, seed in any::<u64>()) {
        let s = Arc::new(Scenario::cycle(n));
        let p = generate::random(Arc::clone(&s), 2, den, seed).unwrap();
        let c = s.cycle_basis().remove(0);
        let m = circle_product(&p.project(), &c);
        let looped = SimpDist::<Boolean>::from_matrices(Arc::new(Scenario::cycle(1)), 2, vec![m.to_edge_matrix().unwrap()]).unwrap();
        prop_assert_eq!(support_oracle(&p).is_empty(), support_oracle(&looped).is_empty());
    }

    #[test]
    fn deciders_agree_and_sc_implies_contextual(p in arb_simp(arb_scenario(4, 5), 2)) {
        let sc = support_oracle(&p).is_empty();
        prop_assert_eq!(pr_circle_decider(&p).unwrap().strongly_contextual, sc);
        prop_assert_eq!(ctxlab::logiccat::reduce_and_decide(&p.project()).unwrap().strongly_contextual, sc);
        let c = classify(&p, DEFAULT_CAP).unwrap();
        prop_assert_eq!(c.strongly_contextual, sc);
        prop_assert!(c.is_coherent());
        if sc {
            prop_assert!(c.contextual);
        }
    }

    #[test]
    fn strong_contextuality_is_action_invariant(p in arb_simp(arb_scenario(4, 5), 3), phi in arb_labeling(4, 3)) {
        let n = p.scenario().num_vertices();
        let phi = OutcomeLabeling::new(phi.labels()[..n].to_vec());
        prop_assert_eq!(
            is_strongly_contextual(&p.act(&phi)).unwrap().strongly_contextual,
            is_strongly_contextual(&p).unwrap().strongly_contextual
        );
    }

    #[test]
    fn support_restricts_to_circles(p in arb_simp(arb_connected(4, 5), 2)) {
        let s = p.scenario();
        let sup = support(&p).labelings;
        for c in s.enumerate_circles(s.num_edges()) {
            let sub = SubScenario::from_circle(s, &c);
            let (_, back, _) = s.subscenario(&sub).unwrap();
            let restricted = support(&p.restrict(&sub).unwrap()).labelings;
            for phi in &sup {
                let r = OutcomeLabeling::new(back.iter().map(|&v| phi.get(v)).collect());
                prop_assert!(restricted.contains(&r));
            }
        }
    }

    #[test]
    fn witness_circles_are_not_null_homotopic(p in arb_simp(arb_scenario(4, 5), 2)) {
        let pr = pr_circle_decider(&p).unwrap();
        if let Some(c) = pr.witness {
            let (_, inv) = ctxlab::contextuality::homotopical_check(&p, &c).unwrap().expect("deterministic labels");
            prop_assert_ne!(inv, 0);
        }
    }

    #[test]
    fn boolean_supports_bound_the_marginals(a in 0u64..=8, b in 0u64..=8, c in 0u64..=8, e in 0u64..=8) {
        let total = a + b + c + e;
        prop_assume!(total > 0);
        let m = EdgeMatrix::new(2, vec![q(a, total), q(b, total), q(c, total), q(e, total)]).unwrap();
        let src = q(a + b, total);
        let tgt = q(a + c, total);
        let one = Rational::one();
        let sum = src.add(&tgt);
        match BoolMatrix::from_edge_matrix(&m).name() {
            Some("A") => prop_assert!(sum > one),
            Some("D") => prop_assert!(sum < one),
            Some("B") => prop_assert!(src > tgt),
            Some("Bt") => prop_assert!(src < tgt),
            Some("I") => prop_assert_eq!(src, tgt),
            Some("X") => prop_assert_eq!(src.add(&tgt), one),
            _ => {}
        }
    }
}
