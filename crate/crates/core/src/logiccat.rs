//! Boolean matrices and the logical category of a Boolean distribution.
//!
//! The category has the vertices as objects. Its morphisms `x -> y` are the
//! products of edge supports (and their transposes for edges walked
//! backwards) along walks from `x` to `y`, together with identities. A
//! labeling is in the support of the category when every morphism `M: x -> y`
//! has `M[F(x), F(y)] = 1`; these are exactly the support labelings of the
//! distribution.
//!
//! For `d = 2` the named matrices are
//!
//! ```text
//! A = 1 1   B = 1 1   D = 0 1   U = 1 1   I = 1 0   X = 0 1
//!     1 0       0 1       1 1       1 1       0 1       1 0
//! ```

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::{Scenario, VertexId};
use crate::semiring::Boolean;
use crate::simpdist::{EdgeMatrix, OutcomeLabeling, SimpDist};

/// Largest `d` for which hom-sets are materialized as bitsets.
pub const MAX_CATEGORY_D: usize = 4;

/// A `d x d` Boolean matrix packed row-major into a `u64` (`d <= 8`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMatrix {
    d: u8,
    bits: u64,
}

impl BoolMatrix {
    pub const A: BoolMatrix = BoolMatrix { d: 2, bits: 0b0111 };
    pub const B: BoolMatrix = BoolMatrix { d: 2, bits: 0b1011 };
    pub const BT: BoolMatrix = BoolMatrix { d: 2, bits: 0b1101 };
    pub const D: BoolMatrix = BoolMatrix { d: 2, bits: 0b1110 };
    pub const U: BoolMatrix = BoolMatrix { d: 2, bits: 0b1111 };
    pub const I: BoolMatrix = BoolMatrix { d: 2, bits: 0b1001 };
    pub const X: BoolMatrix = BoolMatrix { d: 2, bits: 0b0110 };

    pub fn from_bits(d: usize, bits: u64) -> Self {
        assert!((1..=8).contains(&d), "d out of range");
        let mask = if d * d == 64 { u64::MAX } else { (1u64 << (d * d)) - 1 };
        BoolMatrix { d: d as u8, bits: bits & mask }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let d = rows.len();
        let mut bits = 0;
        for (a, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), d, "matrix must be square");
            for (b, &x) in r.iter().enumerate() {
                if x != 0 {
                    bits |= 1 << (a * d + b);
                }
            }
        }
        Self::from_bits(d, bits)
    }

    pub fn from_edge_matrix<S: crate::semiring::Semiring>(m: &EdgeMatrix<S>) -> Self {
        let d = m.d();
        let bits = m
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .fold(0, |acc, (i, _)| acc | (1 << i));
        Self::from_bits(d, bits)
    }

    pub fn to_edge_matrix(&self) -> Result<EdgeMatrix<Boolean>> {
        let d = self.d();
        EdgeMatrix::from_fn(d, |a, b| Boolean(self.get(a, b)))
    }

    pub fn identity(d: usize) -> Self {
        Self::from_bits(d, (0..d).fold(0, |acc, a| acc | (1 << (a * d + a))))
    }

    pub fn ones(d: usize) -> Self {
        Self::from_bits(d, u64::MAX)
    }

    pub fn d(&self) -> usize {
        self.d as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits >> (a * self.d() + b) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn row(&self, a: usize) -> u64 {
        let d = self.d();
        (self.bits >> (a * d)) & ((1 << d) - 1)
    }

    pub fn row_support(&self) -> u64 {
        (0..self.d()).fold(0, |acc, a| if self.row(a) != 0 { acc | (1 << a) } else { acc })
    }

    pub fn col_support(&self) -> u64 {
        (0..self.d()).fold(0, |acc, a| acc | self.row(a))
    }

    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "dimension mismatch");
        let d = self.d();
        let mut bits = 0;
        for a in 0..d {
            let r = self.row(a);
            let mut out = 0;
            for c in 0..d {
                if r >> c & 1 == 1 {
                    out |= other.row(c);
                }
            }
            bits |= out << (a * d);
        }
        BoolMatrix { d: self.d, bits }
    }

    pub fn transpose(&self) -> Self {
        let d = self.d();
        let mut bits = 0;
        for a in 0..d {
            for b in 0..d {
                if self.get(a, b) {
                    bits |= 1 << (b * d + a);
                }
            }
        }
        BoolMatrix { d: self.d, bits }
    }

    /// Entrywise AND.
    pub fn meet(&self, other: &Self) -> Self {
        BoolMatrix {
            d: self.d,
            bits: self.bits & other.bits,
        }
    }

    /// `M'(i, j) = M(i - s, j - t)`.
    pub fn shifted(&self, s: u32, t: u32) -> Self {
        let d = self.d();
        let (s, t) = (s as usize % d, t as usize % d);
        let mut bits = 0;
        for i in 0..d {
            for j in 0..d {
                if self.get((i + d - s) % d, (j + d - t) % d) {
                    bits |= 1 << (i * d + j);
                }
            }
        }
        BoolMatrix { d: self.d, bits }
    }

    /// Every entry whose row and column are both nonzero is set, so every
    /// pair of endpoint outcomes in the support extends over the edge.
    pub fn is_boundary_extendable(&self) -> bool {
        let (rows, cols) = (self.row_support(), self.col_support());
        let d = self.d();
        (0..d).all(|a| rows >> a & 1 == 0 || (0..d).all(|b| cols >> b & 1 == 0 || self.get(a, b)))
    }

    /// The conventional name for `d = 2`.
    pub fn name(&self) -> Option<&'static str> {
        match *self {
            Self::A => Some("A"),
            Self::B => Some("B"),
            Self::BT => Some("Bt"),
            Self::D => Some("D"),
            Self::U => Some("U"),
            Self::I => Some("I"),
            Self::X => Some("X"),
            _ => None,
        }
    }

    /// Rows as digit strings, e.g. `11;10`.
    pub fn rows_string(&self) -> String {
        let d = self.d();
        (0..d)
            .map(|a| (0..d).map(|b| if self.get(a, b) { '1' } else { '0' }).collect::<String>())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// All nonzero `d x d` matrices.
    pub fn all_nonzero(d: usize) -> impl Iterator<Item = BoolMatrix> {
        (1u64..(1 << (d * d))).map(move |b| BoolMatrix::from_bits(d, b))
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => f.write_str(&self.rows_string()),
        }
    }
}

impl Serialize for BoolMatrix {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A set of `d x d` Boolean matrices as a bitset indexed by the packed bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixSet {
    d: u8,
    words: Vec<u64>,
}

impl MatrixSet {
    pub fn empty(d: usize) -> Self {
        assert!(d <= MAX_CATEGORY_D, "matrix sets are limited to d <= {MAX_CATEGORY_D}");
        let n = 1usize << (d * d);
        MatrixSet {
            d: d as u8,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_matrices<I: IntoIterator<Item = BoolMatrix>>(d: usize, items: I) -> Self {
        let mut s = Self::empty(d);
        for m in items {
            s.insert(m);
        }
        s
    }

    /// Inserts `m`, returning whether it was new.
    pub fn insert(&mut self, m: BoolMatrix) -> bool {
        let i = m.bits as usize;
        let (w, b) = (i / 64, i % 64);
        let new = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        new
    }

    pub fn contains(&self, m: &BoolMatrix) -> bool {
        let i = m.bits as usize;
        m.d == self.d && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = BoolMatrix> + '_ {
        let d = self.d as usize;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| BoolMatrix::from_bits(d, (w * 64 + b) as u64))
        })
    }
}

impl fmt::Debug for MatrixSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The category generated by a family of edge supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalCategory {
    d: usize,
    n: usize,
    hom: Vec<MatrixSet>,
}

impl LogicalCategory {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_objects(&self) -> usize {
        self.n
    }

    pub fn hom(&self, x: VertexId, y: VertexId) -> &MatrixSet {
        &self.hom[x.0 * self.n + y.0]
    }

    /// The entrywise AND of all morphisms `x -> y`: the outcome pairs every
    /// support labeling must use.
    pub fn allowed(&self, x: VertexId, y: VertexId) -> BoolMatrix {
        self.hom(x, y)
            .iter()
            .fold(BoolMatrix::ones(self.d), |acc, m| acc.meet(&m))
    }

    /// The category of the shifted distribution: every `M: x -> y` becomes
    /// `M(i - phi(x), j - phi(y))`.
    pub fn act(&self, phi: &OutcomeLabeling) -> Self {
        let n = self.n;
        let hom = (0..n * n)
            .map(|i| {
                let (x, y) = (VertexId(i / n), VertexId(i % n));
                MatrixSet::from_matrices(
                    self.d,
                    self.hom[i].iter().map(|m| m.shifted(phi.get(x), phi.get(y))),
                )
            })
            .collect();
        LogicalCategory { d: self.d, n, hom }
    }

    /// Whether composition lands in the right hom-set and transposes are
    /// present.
    pub fn check_axioms(&self) -> bool {
        let n = self.n;
        let ids = (0..n).all(|x| self.hom(VertexId(x), VertexId(x)).contains(&BoolMatrix::identity(self.d)));
        let sym = (0..n).all(|x| {
            (0..n).all(|y| {
                self.hom(VertexId(x), VertexId(y))
                    .iter()
                    .all(|m| self.hom(VertexId(y), VertexId(x)).contains(&m.transpose()))
            })
        });
        let closed = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let target = self.hom(VertexId(x), VertexId(z));
                    self.hom(VertexId(x), VertexId(y)).iter().all(|m| {
                        self.hom(VertexId(y), VertexId(z))
                            .iter()
                            .all(|k| target.contains(&m.product(&k)))
                    })
                })
            })
        });
        ids && sym && closed
    }
}

/// Least category on `n` objects containing the identities, each edge matrix
/// `source -> target` and its transpose `target -> source`.
pub fn build_category_from(d: usize, n: usize, edges: &[(VertexId, VertexId, BoolMatrix)]) -> Result<LogicalCategory> {
    if d > MAX_CATEGORY_D {
        return Err(Error::TooLarge(format!(
            "logical categories are limited to d <= {MAX_CATEGORY_D}"
        )));
    }
    let mut hom = vec![MatrixSet::empty(d); n * n];
    let mut queue = VecDeque::new();
    let add = |hom: &mut Vec<MatrixSet>, queue: &mut VecDeque<_>, x: usize, y: usize, m: BoolMatrix| {
        debug_assert!(!m.is_zero(), "consistent supports compose to nonzero matrices");
        if hom[x * n + y].insert(m) {
            queue.push_back((x, y, m));
        }
    };
    for x in 0..n {
        add(&mut hom, &mut queue, x, x, BoolMatrix::identity(d));
    }
    for &(s, t, m) in edges {
        add(&mut hom, &mut queue, s.0, t.0, m);
        add(&mut hom, &mut queue, t.0, s.0, m.transpose());
    }
    while let Some((x, y, m)) = queue.pop_front() {
        for z in 0..n {
            let after: Vec<BoolMatrix> = hom[y * n + z].iter().collect();
            for k in after {
                add(&mut hom, &mut queue, x, z, m.product(&k));
            }
            let before: Vec<BoolMatrix> = hom[z * n + x].iter().collect();
            for k in before {
                add(&mut hom, &mut queue, z, y, k.product(&m));
            }
        }
    }
    Ok(LogicalCategory { d, n, hom })
}

fn edge_list(p: &SimpDist<Boolean>) -> Vec<(VertexId, VertexId, BoolMatrix)> {
    p.scenario()
        .edges()
        .iter()
        .zip(p.edge_matrices())
        .map(|(e, m)| (e.source, e.target, BoolMatrix::from_edge_matrix(m)))
        .collect()
}

/// The category generated by the edge supports; an isolated vertex
/// contributes the diagonal of its support as an endomorphism.
pub fn build_category(p: &SimpDist<Boolean>) -> Result<LogicalCategory> {
    let mut edges = edge_list(p);
    if p.d() <= MAX_CATEGORY_D {
        for (&v, pv) in p.isolated() {
            let bits = pv.support().fold(0, |acc, &a| acc | 1 << (a as usize * (p.d() + 1)));
            edges.push((v, v, BoolMatrix::from_bits(p.d(), bits)));
        }
    }
    build_category_from(p.d(), p.scenario().num_vertices(), &edges)
}

/// All labelings `F` with `M[F(x), F(y)] = 1` for every morphism `M: x -> y`,
/// in lexicographic order.
pub fn category_support(c: &LogicalCategory) -> Vec<OutcomeLabeling> {
    let n = c.n;
    let allowed: Vec<BoolMatrix> = (0..n * n)
        .map(|i| c.allowed(VertexId(i / n), VertexId(i % n)))
        .collect();
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    fn go(i: usize, n: usize, d: usize, allowed: &[BoolMatrix], labels: &mut Vec<u32>, out: &mut Vec<OutcomeLabeling>) {
        if i == n {
            out.push(OutcomeLabeling::new(labels.clone()));
            return;
        }
        for a in 0..d {
            labels[i] = a as u32;
            let ok = (0..=i).all(|j| {
                allowed[j * n + i].get(labels[j] as usize, a) && allowed[i * n + j].get(a, labels[j] as usize)
            });
            if ok {
                go(i + 1, n, d, allowed, labels, out);
            }
        }
    }
    go(0, n, c.d, &allowed, &mut labels, &mut out);
    out
}

/// Verdict of the endomorphism criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScCriterion {
    pub strongly_contextual: bool,
    /// A vertex whose endomorphisms contain `{A, D}` or `X`.
    pub witness: Option<usize>,
    pub reason: Option<&'static str>,
}

/// For `d = 2`: strongly contextual iff some `hom(x, x)` contains both `A`
/// and `D`, or contains `X`.
pub fn sc_criterion(c: &LogicalCategory) -> Result<ScCriterion> {
    if c.d != 2 {
        return Err(Error::WrongOutcomeArity { expected: 2, got: c.d });
    }
    for x in 0..c.n {
        let h = c.hom(VertexId(x), VertexId(x));
        let reason = if h.contains(&BoolMatrix::X) {
            Some("X is an endomorphism")
        } else if h.contains(&BoolMatrix::A) && h.contains(&BoolMatrix::D) {
            Some("A and D are endomorphisms")
        } else {
            None
        };
        if reason.is_some() {
            return Ok(ScCriterion {
                strongly_contextual: true,
                witness: Some(x),
                reason,
            });
        }
    }
    Ok(ScCriterion {
        strongly_contextual: false,
        witness: None,
        reason: None,
    })
}

pub fn boundary_extendable(m: &BoolMatrix) -> bool {
    m.is_boundary_extendable()
}

/// One line of the identity table for the five-element semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub rule: u8,
    pub identity: String,
    pub holds: bool,
}

/// Checks the multiplication rules of `{A, B, Bt, D, U}`.
pub fn semigroup_table_check() -> Vec<TableEntry> {
    use BoolMatrix as M;
    let g = [M::A, M::B, M::BT, M::D, M::U];
    let mut out = Vec::new();
    let mut push = |rule: u8, identity: String, holds: bool| out.push(TableEntry { rule, identity, holds });
    for m in g {
        push(1, format!("U{m} = {m}U = U"), M::U.product(&m) == M::U && m.product(&M::U) == M::U);
    }
    for m in [M::U, M::A, M::D] {
        push(2, format!("{m}t = {m}"), m.transpose() == m);
    }
    push(3, "AA = U".into(), M::A.product(&M::A) == M::U);
    push(3, "DD = U".into(), M::D.product(&M::D) == M::U);
    push(3, "BB = B".into(), M::B.product(&M::B) == M::B);
    for m in g {
        let t = m.transpose();
        push(4, format!("{m}{t} = {t}{m} = U"), m.product(&t) == M::U && t.product(&m) == M::U);
    }
    let rule = |a: M, b: M, c: M| (format!("{a}{b} = {c}"), a.product(&b) == c);
    for (a, b, c, r) in [
        (M::A, M::D, M::B, 5),
        (M::D, M::A, M::BT, 5),
        (M::A, M::B, M::U, 6),
        (M::BT, M::A, M::U, 6),
        (M::B, M::A, M::A, 6),
        (M::A, M::BT, M::A, 6),
        (M::B, M::D, M::U, 6),
        (M::D, M::BT, M::U, 6),
        (M::D, M::B, M::D, 6),
        (M::BT, M::D, M::D, 6),
    ] {
        let (identity, holds) = rule(a, b, c);
        push(r, identity, holds);
    }
    out
}

/// One step of the reduction performed by [`reduce_and_decide`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ReductionStep {
    DropBoundaryExtendable { edge: String, matrix: BoolMatrix },
    DropIdentityLoop { edge: String },
    Collapse { edge: String, into: String },
    Shift { edge: String, vertex: String },
    AntidiagonalLoop { edge: String },
    EndomorphismCheck { vertex: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub strongly_contextual: bool,
    pub trace: Vec<ReductionStep>,
}

/// Decides strong contextuality for `d = 2` by simplifying the scenario:
/// removing edges with boundary-extendable support, collapsing identity
/// edges, shifting antidiagonal edges into identities, and finally testing
/// the endomorphisms of the remaining `{A, B, Bt, D}` category.
pub fn reduce_and_decide(p: &SimpDist<Boolean>) -> Result<Reduction> {
    if p.d() != 2 {
        return Err(Error::WrongOutcomeArity { expected: 2, got: p.d() });
    }
    let s: &Scenario = p.scenario();
    let mut trace = Vec::new();
    // Vertices are tracked as classes of original vertex names.
    let mut names: Vec<String> = s.vertex_names().to_vec();
    let mut alive = vec![true; names.len()];
    let mut edges: Vec<(String, usize, usize, BoolMatrix)> = Vec::new();
    for (e, m) in s.edge_ids().zip(edge_list(p)) {
        let id = s.edge(e).id.clone();
        if m.2.is_boundary_extendable() {
            trace.push(ReductionStep::DropBoundaryExtendable { edge: id, matrix: m.2 });
        } else {
            edges.push((id, m.0 .0, m.1 .0, m.2));
        }
    }
    loop {
        edges.retain(|(id, s, t, m)| {
            let drop = s == t && *m == BoolMatrix::I;
            if drop {
                trace.push(ReductionStep::DropIdentityLoop { edge: id.clone() });
            }
            !drop
        });
        if let Some((id, ..)) = edges.iter().find(|(_, s, t, m)| s == t && *m == BoolMatrix::X) {
            trace.push(ReductionStep::AntidiagonalLoop { edge: id.clone() });
            return Ok(Reduction {
                strongly_contextual: true,
                trace,
            });
        }
        if let Some(i) = edges.iter().position(|(_, s, t, m)| s != t && *m == BoolMatrix::I) {
            let (id, keep, gone, _) = edges.remove(i);
            for e in &mut edges {
                if e.1 == gone {
                    e.1 = keep;
                }
                if e.2 == gone {
                    e.2 = keep;
                }
            }
            alive[gone] = false;
            let merged = format!("{}+{}", names[keep], names[gone]);
            trace.push(ReductionStep::Collapse { edge: id, into: merged.clone() });
            names[keep] = merged;
            continue;
        }
        if let Some(i) = edges.iter().position(|(_, s, t, m)| s != t && *m == BoolMatrix::X) {
            let (id, _, v, _) = edges[i].clone();
            for e in &mut edges {
                let ds = u32::from(e.1 == v);
                let dt = u32::from(e.2 == v);
                e.3 = e.3.shifted(ds, dt);
            }
            trace.push(ReductionStep::Shift { edge: id, vertex: names[v].clone() });
            continue;
        }
        break;
    }
    let index: Vec<usize> = {
        let mut idx = vec![usize::MAX; names.len()];
        let mut k = 0;
        for (i, &a) in alive.iter().enumerate() {
            if a {
                idx[i] = k;
                k += 1;
            }
        }
        idx
    };
    let live: Vec<usize> = (0..names.len()).filter(|&i| alive[i]).collect();
    let reduced: Vec<(VertexId, VertexId, BoolMatrix)> = edges
        .iter()
        .map(|(_, s, t, m)| (VertexId(index[*s]), VertexId(index[*t]), *m))
        .collect();
    debug_assert!(reduced
        .iter()
        .all(|(_, _, m)| [BoolMatrix::A, BoolMatrix::B, BoolMatrix::BT, BoolMatrix::D].contains(m)));
    let c = build_category_from(2, live.len(), &reduced)?;
    let hit = (0..live.len()).find(|&x| {
        let h = c.hom(VertexId(x), VertexId(x));
        h.contains(&BoolMatrix::A) && h.contains(&BoolMatrix::D)
    });
    trace.push(ReductionStep::EndomorphismCheck {
        vertex: hit.map(|x| names[live[x]].clone()),
    });
    Ok(Reduction {
        strongly_contextual: hit.is_some(),
        trace,
    })
}

/// The product of the edge supports around a circle, read from its first
/// vertex.
pub fn circle_product(p: &SimpDist<Boolean>, c: &crate::scenario::Circle) -> BoolMatrix {
    let mut it = c.steps().iter().map(|st| BoolMatrix::from_edge_matrix(&p.step_matrix(*st)));
    let first = it.next().expect("circles are non-empty");
    it.fold(first, |acc, m| acc.product(&m))
}
