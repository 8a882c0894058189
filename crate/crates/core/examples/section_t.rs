// The section T of the d0 pushforward: it turns edge-label distributions
// into distributions with uniform vertices, and respects convolution.

use ctxlab::semiring::{Dist, Rational};
use ctxlab::simpdist::{drop_first, section_t_tuple};

pub fn run_example() -> ctxlab::Result<()> {
    let d = 3;
    let p = Dist::from_weights([
        (vec![0u32, 1], Rational::new(1, 2)?),
        (vec![2, 2], Rational::new(1, 2)?),
    ])?;
    let q = Dist::from_weights([
        (vec![1u32, 0], Rational::new(1, 3)?),
        (vec![0, 0], Rational::new(2, 3)?),
    ])?;

    let tp = section_t_tuple(&p, d);
    println!("T(p) has {} outcomes, each of weight 1/6", tp.support_len());
    assert_eq!(drop_first(&tp), p);

    let lhs = section_t_tuple(&p.convolve(&q, d), d);
    let rhs = section_t_tuple(&p, d).convolve(&section_t_tuple(&q, d), d);
    assert_eq!(lhs, rhs);
    println!("T(p * q) = T(p) * T(q)");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
