// Faces of nerve labelings: dimension from the circle invariants, the
// unique strongly contextual vertex for prime d, and the counting formula.

use std::sync::Arc;

use ctxlab::contextuality::{classify, DEFAULT_CAP};
use ctxlab::homotopy::{count_non_null_homotopic, face_structure, unique_sc_vertex, NerveLabeling};
use ctxlab::scenario::Scenario;

pub fn run_example() -> ctxlab::Result<()> {
    let square = Arc::new(Scenario::cycle(4));
    for labels in [[1, 0, 0, 0], [0, 0, 0, 0], [1, 1, 0, 0]] {
        let phi = NerveLabeling::new(2, labels.to_vec())?;
        let fs = face_structure(&square, &phi)?;
        println!("d = 2, labels {phi}: H = {:?}, face dimension {}", fs.subgroup, fs.dimension);
    }

    let phi = NerveLabeling::new(3, vec![2, 0, 0, 0])?;
    let p = unique_sc_vertex(Arc::clone(&square), &phi)?;
    let c = classify(&p, DEFAULT_CAP)?;
    println!("d = 3, labels {phi}: unique member is SC {} and a vertex {}", c.strongly_contextual, c.vertex);
    assert!(c.strongly_contextual && c.vertex);

    let looped = Scenario::cycle(1);
    let fs = face_structure(&looped, &NerveLabeling::new(4, vec![2])?)?;
    println!("d = 4 loop labeled 2: H = {:?}, dimension {}", fs.subgroup, fs.dimension);
    assert_eq!(fs.dimension, 1);

    let theta = Scenario::theta(3);
    for d in [2u32, 3] {
        let n = count_non_null_homotopic(&theta, d)?;
        println!("theta graph, d = {d}: {n} of {} labelings are not null-homotopic", d.pow(3));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
