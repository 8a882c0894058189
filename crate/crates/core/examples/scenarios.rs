// Scenarios as multigraphs: cycle bases, circles and edge collapse.

use std::sync::Arc;

use ctxlab::scenario::{EdgeId, Scenario};

pub fn run_example() -> ctxlab::Result<()> {
    let theta = Scenario::theta(3);
    println!(
        "theta graph: {} vertices, {} edges, first Betti number {}",
        theta.num_vertices(),
        theta.num_edges(),
        theta.betti_number()
    );
    for c in theta.cycle_basis() {
        println!("  basis circle {}", c.display(&theta));
    }
    let circles: Vec<_> = theta.enumerate_circles(theta.num_edges()).collect();
    println!("  {} circles in total", circles.len());
    assert_eq!(circles.len(), 3);

    let square = Arc::new(Scenario::cycle(4));
    let cm = square.collapse_edge(EdgeId(0))?;
    println!(
        "collapsing e0 of the square leaves {} vertices and {} edges",
        cm.result.num_vertices(),
        cm.result.num_edges()
    );
    assert_eq!(cm.result.betti_number(), 1);

    let parallel = Arc::new(Scenario::from_indices(2, &[(0, 1), (0, 1)])?);
    let cm = parallel.collapse_edge(EdgeId(0))?;
    assert!(cm.result.edges()[0].is_loop());
    println!("collapsing one of two parallel edges makes the other a loop");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
