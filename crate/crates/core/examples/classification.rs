// Exact classification: deterministic, polytope vertex, contextual and
// strongly contextual, with a convex decomposition as the witness of
// non-contextuality.

use std::sync::Arc;

use ctxlab::contextuality::{classify, DEFAULT_CAP};
use ctxlab::scenario::Scenario;
use ctxlab::semiring::Rational;
use ctxlab::simpdist::{OutcomeLabeling, SimpDist};

pub fn run_example() -> ctxlab::Result<()> {
    let square = Arc::new(Scenario::cycle(4));
    let pr = SimpDist::pr_box_cycle(4, &[0])?;
    let det = SimpDist::deterministic(Arc::clone(&square), 2, &OutcomeLabeling::new(vec![0, 1, 1, 0]))?;
    let half = Rational::half();

    for (name, p) in [
        ("PR box", pr.clone()),
        ("deterministic", det.clone()),
        ("even mixture", SimpDist::mixture(&[(half.clone(), &pr), (half, &det)])?),
    ] {
        let c = classify(&p, DEFAULT_CAP)?;
        let [d, v, ctx, sc] = c.flags();
        println!("{name}: deterministic {d}, vertex {v}, contextual {ctx}, strongly contextual {sc}");
        if let Some(w) = &c.nc_witness {
            for (phi, x) in &w.weights {
                println!("  {x} x delta({phi})");
            }
            assert!(w.reproduces(&p));
        }
        assert!(c.is_coherent());
    }

    let quarter = Rational::new(1, 4)?;
    let three = Rational::new(3, 4)?;
    let soft = SimpDist::mixture(&[(quarter, &pr), (three, &SimpDist::deterministic(square, 2, &OutcomeLabeling::zero(4))?)])?;
    let c = classify(&soft, DEFAULT_CAP)?;
    println!("1/4 PR + 3/4 delta(0): contextual {}, strongly contextual {}", c.contextual, c.strongly_contextual);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
