// The logical category of a possibilistic distribution on four vertices and
// five edges with supports A, B and D. Its functors to the category of Z_2
// give the two support labelings.

use std::sync::Arc;

use ctxlab::logiccat::{build_category, category_support, sc_criterion, semigroup_table_check, BoolMatrix};
use ctxlab::scenario::Scenario;
use ctxlab::simpdist::SimpDist;

pub fn abcdu() -> ctxlab::Result<SimpDist<ctxlab::semiring::Boolean>> {
    let edge = |id: &str, s: &str, t: &str| (id.to_string(), s.to_string(), t.to_string());
    let scenario = Scenario::new(
        ["x", "y", "z", "w"],
        [
            edge("s1", "x", "z"),
            edge("s2", "x", "y"),
            edge("s3", "w", "x"),
            edge("s4", "z", "w"),
            edge("s5", "w", "y"),
        ],
    )?;
    let supports = [BoolMatrix::A, BoolMatrix::D, BoolMatrix::B, BoolMatrix::D, BoolMatrix::B];
    let edges = supports
        .iter()
        .map(|m| m.to_edge_matrix())
        .collect::<ctxlab::Result<Vec<_>>>()?;
    SimpDist::from_matrices(Arc::new(scenario), 2, edges)
}

pub fn run_example() -> ctxlab::Result<()> {
    let p = abcdu()?;
    let s = p.scenario();
    let c = build_category(&p)?;
    for x in s.vertex_ids() {
        for y in s.vertex_ids().filter(|&y| y >= x) {
            let names: Vec<String> = c.hom(x, y).iter().map(|m| m.to_string()).collect();
            println!("C({}, {}) = {{{}}}", s.vertex_name(x), s.vertex_name(y), names.join(", "));
        }
    }
    let support = category_support(&c);
    for phi in &support {
        println!("support labeling (x, y, z, w) = ({phi})");
    }
    assert_eq!(support.len(), 2);
    assert!(!sc_criterion(&c)?.strongly_contextual);

    for rule in semigroup_table_check() {
        println!("rule {}: {} holds {}", rule.rule, rule.identity, rule.holds);
        assert!(rule.holds);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
