// Deciding strong contextuality for two outcomes by reducing the scenario,
// with the trace of every step.

use std::sync::Arc;

use ctxlab::logiccat::{reduce_and_decide, BoolMatrix};
use ctxlab::scenario::Scenario;
use ctxlab::simpdist::SimpDist;

fn show(title: &str, supports: &[BoolMatrix], edges: &[(usize, usize)], n: usize) -> ctxlab::Result<bool> {
    let scenario = Arc::new(Scenario::from_indices(n, edges)?);
    let matrices = supports
        .iter()
        .map(|m| m.to_edge_matrix())
        .collect::<ctxlab::Result<Vec<_>>>()?;
    let p = SimpDist::from_matrices(scenario, 2, matrices)?;
    let r = reduce_and_decide(&p)?;
    println!("{title}: strongly contextual {}", r.strongly_contextual);
    for step in &r.trace {
        println!("  {}", serde_json::to_string(step).expect("serializable"));
    }
    Ok(r.strongly_contextual)
}

pub fn run_example() -> ctxlab::Result<()> {
    let square = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let pr = show("PR box support", &[BoolMatrix::X, BoolMatrix::I, BoolMatrix::I, BoolMatrix::I], &square, 4)?;
    assert!(pr);
    let free = show("with an unconstrained edge", &[BoolMatrix::X, BoolMatrix::I, BoolMatrix::I, BoolMatrix::U], &square, 4)?;
    assert!(!free);
    let ad = show("an A edge closed by identities", &[BoolMatrix::A, BoolMatrix::I, BoolMatrix::I], &[(0, 1), (1, 2), (2, 0)], 3)?;
    assert!(!ad);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
