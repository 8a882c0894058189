//! Distribution generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homotopy::NerveLabeling;
use crate::scenario::Scenario;
use crate::semiring::{Dist, Rational};
use crate::simpdist::{EdgeMatrix, OutcomeLabeling, SimpDist};

/// The PR box on the `n`-cycle with p₋ on the listed edges.
pub fn pr_box(n: usize, minus: &[usize]) -> Result<SimpDist<Rational>> {
    if n == 0 {
        return Err(Error::InvalidParams("cycle length must be positive".into()));
    }
    if let Some(&i) = minus.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidParams(format!("edge index {i} out of range for a {n}-cycle")));
    }
    SimpDist::pr_box_cycle(n, minus)
}

/// δ^φ for a vertex labeling.
pub fn deterministic(scenario: Arc<Scenario>, d: usize, labels: &[u32]) -> Result<SimpDist<Rational>> {
    check_labels(labels, scenario.num_vertices(), d, "vertex")?;
    SimpDist::deterministic(scenario, d, &OutcomeLabeling::new(labels.to_vec()))
}

/// T applied to the deterministic nerve distribution with the given edge labels.
pub fn section_t(scenario: Arc<Scenario>, d: usize, edge_labels: &[u32]) -> Result<SimpDist<Rational>> {
    check_labels(edge_labels, scenario.num_edges(), d, "edge")?;
    let phi = NerveLabeling::new(d as u32, edge_labels.to_vec())?;
    SimpDist::section_t(scenario, d, &phi.deltas::<Rational>())
}

fn check_labels(labels: &[u32], n: usize, d: usize, what: &str) -> Result<()> {
    if labels.len() != n {
        return Err(Error::InvalidParams(format!("expected {n} {what} labels, got {}", labels.len())));
    }
    if let Some(x) = labels.iter().find(|&&x| x as usize >= d) {
        return Err(Error::InvalidParams(format!("label {x} is not in Z_{d}")));
    }
    Ok(())
}

/// A random distribution whose entries all have denominator dividing
/// `max_den`. Vertex marginals are random compositions of `max_den`, and each
/// edge is a random integer table with those margins.
pub fn random(scenario: Arc<Scenario>, d: usize, max_den: u32, seed: u64) -> Result<SimpDist<Rational>> {
    if d < 2 {
        return Err(Error::InvalidParams(format!("d = {d} must be at least 2")));
    }
    if max_den == 0 {
        return Err(Error::InvalidParams("max-den must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = max_den as u64;
    let marginals: Vec<Vec<u64>> = (0..scenario.num_vertices())
        .map(|_| composition(&mut rng, n, d))
        .collect();
    let mut edges = Vec::with_capacity(scenario.num_edges());
    for e in scenario.edge_ids() {
        let edge = scenario.edge(e);
        let table = transport_table(&mut rng, &marginals[edge.source.0], &marginals[edge.target.0]);
        let entries = table
            .into_iter()
            .map(|x| Rational::new(x as i64, n as i64))
            .collect::<Result<Vec<_>>>()?;
        edges.push(EdgeMatrix::new(d, entries)?);
    }
    let mut isolated = BTreeMap::new();
    for v in scenario.vertex_ids().filter(|&v| scenario.is_isolated(v)) {
        let w = marginals[v.0]
            .iter()
            .enumerate()
            .map(|(a, &x)| Ok((a as u32, Rational::new(x as i64, n as i64)?)))
            .collect::<Result<Vec<_>>>()?;
        isolated.insert(v, Dist::from_weights(w)?);
    }
    SimpDist::new(scenario, d, edges, isolated)
}

fn composition<R: Rng>(rng: &mut R, n: u64, parts: usize) -> Vec<u64> {
    let mut cuts: Vec<u64> = (0..parts - 1).map(|_| rng.gen_range(0..=n)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(n - prev);
    out
}

/// A random non-negative integer matrix with the given row and column sums.
fn transport_table<R: Rng>(rng: &mut R, rows: &[u64], cols: &[u64]) -> Vec<u64> {
    let d = rows.len();
    let mut r = rows.to_vec();
    let mut c = cols.to_vec();
    let mut out = vec![0; d * d];
    for a in 0..d {
        for b in 0..d {
            let right: u64 = c[b + 1..].iter().sum();
            let below: u64 = r[a + 1..].iter().sum();
            let hi = r[a].min(c[b]);
            let lo = r[a].saturating_sub(right).max(c[b].saturating_sub(below));
            let x = if lo >= hi { hi } else { rng.gen_range(lo..=hi) };
            out[a * d + b] = x;
            r[a] -= x;
            c[b] -= x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contextuality::is_strongly_contextual;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn random_is_reproducible_and_bounded() {
        let s = Arc::new(Scenario::theta(3));
        let p = random(s.clone(), 3, 4, 7).unwrap();
        assert_eq!(p, random(s.clone(), 3, 4, 7).unwrap());
        assert_ne!(p, random(s, 3, 4, 8).unwrap());
        for m in p.edge_matrices() {
            for x in m.entries() {
                assert!((BigInt::from(4) % x.denom()).is_zero());
            }
        }
    }

    #[test]
    fn random_reaches_pr_boxes() {
        let s = Arc::new(Scenario::cycle(2));
        let found = (0..400).any(|seed| {
            let p = random(s.clone(), 2, 2, seed).unwrap();
            is_strongly_contextual(&p).unwrap().strongly_contextual
        });
        assert!(found);
    }

    #[test]
    fn transport_tables_have_the_margins() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let rows = composition(&mut rng, 6, 3);
            let cols = composition(&mut rng, 6, 3);
            let t = transport_table(&mut rng, &rows, &cols);
            for a in 0..3 {
                assert_eq!((0..3).map(|b| t[a * 3 + b]).sum::<u64>(), rows[a]);
                assert_eq!((0..3).map(|b| t[b * 3 + a]).sum::<u64>(), cols[a]);
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(pr_box(4, &[4]), Err(Error::InvalidParams(_))));
        assert!(matches!(pr_box(4, &[0, 1]), Err(Error::EvenMinusCount(2))));
        let s = Arc::new(Scenario::cycle(4));
        assert!(matches!(deterministic(s.clone(), 2, &[0, 1, 2, 0]), Err(Error::InvalidParams(_))));
        assert!(matches!(section_t(s, 2, &[0, 1]), Err(Error::InvalidParams(_))));
    }
}
