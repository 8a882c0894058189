// Collapsing an edge with diagonal support transports the distribution to
// the smaller scenario, keeps every classification flag, and pulls back to
// the original.

use std::sync::Arc;

use ctxlab::contextuality::{classify, DEFAULT_CAP};
use ctxlab::scenario::Scenario;
use ctxlab::semiring::Rational;
use ctxlab::simpdist::{EdgeMatrix, SimpDist};

fn collapse_and_compare(p: &SimpDist<Rational>, edge: &str) -> ctxlab::Result<SimpDist<Rational>> {
    let s = p.scenario();
    let cm = s.collapse_edge(s.edge_by_name(edge)?)?;
    let q = p.transport_collapse(&cm)?;
    let before = classify(p, DEFAULT_CAP)?.flags();
    let after = classify(&q, DEFAULT_CAP)?.flags();
    println!(
        "collapse {edge}: {} -> {} vertices, flags {before:?} -> {after:?}",
        s.num_vertices(),
        q.scenario().num_vertices()
    );
    assert_eq!(before, after);
    assert_eq!(&q.pullback(&cm)?, p);
    Ok(q)
}

pub fn run_example() -> ctxlab::Result<()> {
    let pr = SimpDist::pr_box_cycle(4, &[0])?;
    let q = collapse_and_compare(&pr, "e1")?;
    let q = collapse_and_compare(&q, "e2")?;
    assert_eq!(q.scenario().num_edges(), 2);

    let r = |n, d| Rational::new(n, d);
    let z = Rational::from_integer(0);
    let edges = vec![
        EdgeMatrix::from_rows(vec![vec![r(1, 4)?, z.clone()], vec![z.clone(), r(3, 4)?]])?,
        EdgeMatrix::from_rows(vec![vec![r(1, 8)?, r(1, 8)?], vec![r(5, 8)?, r(1, 8)?]])?,
        EdgeMatrix::from_rows(vec![vec![r(3, 4)?, z.clone()], vec![z, r(1, 4)?]])?,
    ];
    let p = SimpDist::from_matrices(Arc::new(Scenario::path(3)), 2, edges)?;
    let q = collapse_and_compare(&p, "e0")?;
    let q = collapse_and_compare(&q, "e2")?;
    println!("left with {} edge between {} vertices", q.scenario().num_edges(), q.scenario().num_vertices());

    let refused = p.scenario().collapse_edge(p.scenario().edge_by_name("e1")?).and_then(|cm| p.transport_collapse(&cm));
    println!("e1 is not diagonal: {}", refused.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
