// Distributions over the rationals and the Booleans, and the projection
// between them.

use ctxlab::semiring::{Boolean, Dist, Rational, Semiring};

pub fn run_example() -> ctxlab::Result<()> {
    let third = Rational::new(1, 3)?;
    let p = Dist::from_weights([(0u32, third.clone()), (1, third.clone()), (2, third)])?;
    let q = Dist::from_weights([(0u32, Rational::new(3, 4)?), (1, Rational::new(1, 4)?)])?;

    let pq = p.convolve(&q, 3);
    println!("p * q over Z_3:");
    for (g, w) in pq.iter() {
        println!("  {g}: {w}");
    }
    assert_eq!(pq, p);

    let support = q.project();
    assert_eq!(support.weight(&1), Boolean::one());
    println!("support of q: {:?}", support.support().collect::<Vec<_>>());

    let unnormalized = Dist::from_weights([(0u32, Rational::half())]);
    println!("half a distribution is rejected: {}", unnormalized.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
