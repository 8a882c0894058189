// PR boxes on cycles are strongly contextual vertices, and every strong
// contextuality decider agrees on them.

use ctxlab::contextuality::{classify, homotopical_check, DEFAULT_CAP};
use ctxlab::simpdist::SimpDist;

pub fn run_example() -> ctxlab::Result<()> {
    for n in 1..=6 {
        let p = SimpDist::pr_box_cycle(n, &[0])?;
        let c = classify(&p, DEFAULT_CAP)?;
        let circle = c.sc.pr_circle.as_ref().and_then(|pr| pr.witness.clone()).expect("a circle witness");
        let (labels, invariant) = homotopical_check(&p, &circle)?.expect("deterministic labels");
        println!(
            "n = {n}: strongly contextual {}, vertex {}, circle {} with labels {labels:?}, invariant {invariant}",
            c.strongly_contextual,
            c.vertex,
            circle.display(p.scenario()),
        );
        assert!(c.strongly_contextual && c.vertex && c.contextual);
        assert_eq!(invariant, 1);
    }
    let even = SimpDist::pr_box_cycle(4, &[0, 2]);
    println!("an even number of p- edges is refused: {}", even.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
