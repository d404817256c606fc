//! Regulatory graphs and the Boolean matrix algebra over them.
//!
//! The matrix `B(S)` of a model has `b[i][j] = 1` exactly when `gj` regulates
//! `gi`, so row `i` of `B(S)` is the regulator set of `gi`. Rows are stored as
//! bit masks, which makes Boolean products a handful of word operations.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{BooleanModel, ComponentSet, State, TruthTable};
use crate::par::{self, Exec};

/// Exhaustive pair enumeration in [`check_basic_inequality`] is limited to this size.
pub const BASIC_INEQUALITY_CAP: usize = 12;

/// How raising a regulator affects its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// Raising the regulator never lowers the target.
    Activating,
    /// Raising the regulator never raises the target.
    Inhibiting,
    /// Both effects occur, in different contexts.
    Dual,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Activating => "activating",
            Sign::Inhibiting => "inhibiting",
            Sign::Dual => "dual",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Directed graph of regulations between the components of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulatoryGraph {
    n: usize,
    /// `regulators[i]` has bit `j` set iff there is an edge `gj -> gi`.
    regulators: Vec<u32>,
    /// `signs[i * n + j]` labels the edge `gj -> gi`.
    signs: Vec<Option<Sign>>,
}

/// One edge of a regulatory graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

impl RegulatoryGraph {
    /// A graph from explicit edges.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = RegulatoryGraph {
            n,
            regulators: vec![0; n],
            signs: vec![None; n * n],
        };
        for e in edges {
            for idx in [e.from, e.to] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            g.regulators[e.to] |= 1 << e.from;
            g.signs[e.to * n + e.from] = Some(e.sign);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        from < self.n && to < self.n && self.regulators[to] >> from & 1 == 1
    }

    pub fn sign(&self, from: usize, to: usize) -> Option<Sign> {
        if from < self.n && to < self.n {
            self.signs[to * self.n + from]
        } else {
            None
        }
    }

    pub fn regulators(&self, target: usize) -> ComponentSet {
        ComponentSet::from_bits(self.regulators[target])
    }

    pub fn targets(&self, source: usize) -> ComponentSet {
        let bits = (0..self.n)
            .filter(|&i| self.regulators[i] >> source & 1 == 1)
            .fold(0u32, |acc, i| acc | 1 << i);
        ComponentSet::from_bits(bits)
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for from in 0..self.n {
            for to in 0..self.n {
                if let Some(sign) = self.sign(from, to) {
                    out.push(Edge { from, to, sign });
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.regulators
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    /// Removes the self-loops on the given components.
    pub fn without_self_loops(&self, on: ComponentSet) -> RegulatoryGraph {
        let mut g = self.clone();
        for i in on.iter().filter(|&i| i < self.n) {
            g.regulators[i] &= !(1 << i);
            g.signs[i * self.n + i] = None;
        }
        g
    }

    /// Successor lists in increasing index order.
    fn successor_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|j| self.targets(j).iter().collect())
            .collect()
    }

    /// DFS cycle detection with white/grey/black colouring, independent of
    /// [`topological_sort`].
    pub fn has_circuit(&self) -> bool {
        self.find_circuit().is_some()
    }

    /// The first circuit met by an iterative DFS that visits start vertices
    /// and neighbours in increasing index order. Self-loops count as circuits.
    pub fn find_circuit(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Colour {
            White,
            Grey,
            Black,
        }
        let succ = self.successor_lists();
        let mut colour = vec![Colour::White; self.n];
        for root in 0..self.n {
            if colour[root] != Colour::White {
                continue;
            }
            // Stack of (vertex, next neighbour position).
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            colour[root] = Colour::Grey;
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                if let Some(&w) = succ[v].get(*pos) {
                    *pos += 1;
                    match colour[w] {
                        Colour::White => {
                            colour[w] = Colour::Grey;
                            stack.push((w, 0));
                        }
                        Colour::Grey => {
                            let start = stack
                                .iter()
                                .position(|&(u, _)| u == w)
                                .expect("grey vertices are on the stack");
                            return Some(stack[start..].iter().map(|&(u, _)| u).collect());
                        }
                        Colour::Black => {}
                    }
                } else {
                    colour[v] = Colour::Black;
                    stack.pop();
                }
            }
        }
        None
    }
}

fn edge_sign(table: &TruthTable, j: usize) -> Option<Sign> {
    let n = table.n();
    let words = table.words();
    let (mut up, mut down) = (0u64, 0u64);
    if j < 6 {
        // Pairs (x, x with bit j set) sit in the same word, 2^j bits apart.
        const LOW_ZERO: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0F0F_0F0F_0F0F_0F0F,
            0x00FF_00FF_00FF_00FF,
            0x0000_FFFF_0000_FFFF,
            0x0000_0000_FFFF_FFFF,
        ];
        let mask = LOW_ZERO[j] & TruthTable::valid_mask(n);
        for &w in words {
            let lo = w & mask;
            let hi = (w >> (1 << j)) & mask;
            up |= !lo & hi & mask;
            down |= lo & !hi & mask;
        }
    } else {
        let stride = 1usize << (j - 6);
        for block in (0..words.len()).step_by(2 * stride) {
            for k in block..block + stride {
                let (lo, hi) = (words[k], words[k + stride]);
                up |= !lo & hi;
                down |= lo & !hi;
            }
        }
    }
    match (up != 0, down != 0) {
        (false, false) => None,
        (true, false) => Some(Sign::Activating),
        (false, true) => Some(Sign::Inhibiting),
        (true, true) => Some(Sign::Dual),
    }
}

/// Regulatory graph of `model`: `gj -> gi` iff flipping `xj` changes `Si` at
/// some state.
pub fn extract_regulatory_graph(model: &BooleanModel) -> RegulatoryGraph {
    extract_regulatory_graph_with(model, Exec::default())
}

pub fn extract_regulatory_graph_with(model: &BooleanModel, exec: Exec) -> RegulatoryGraph {
    let n = model.n();
    // One task per (target, regulator) pair.
    let signs = par::map_range(exec, n * n, |k| edge_sign(model.table(k / n), k % n));
    let regulators = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| signs[i * n + j].is_some())
                .fold(0u32, |acc, j| acc | 1 << j)
        })
        .collect();
    RegulatoryGraph {
        n,
        regulators,
        signs,
    }
}

/// Square Boolean matrix; row `i` is a bit mask over columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl BooleanMatrix {
    pub fn zero(n: usize) -> Self {
        BooleanMatrix {
            n,
            rows: vec![0; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        BooleanMatrix {
            n,
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let n = rows.len();
        assert!(
            n <= 32 && rows.iter().all(|r| r.len() == n),
            "square matrix expected"
        );
        BooleanMatrix {
            n,
            rows: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .fold(0u32, |acc, (j, &b)| acc | (u32::from(b != 0) << j))
                })
                .collect(),
        }
    }

    pub fn from_row_masks(rows: Vec<u32>) -> Self {
        BooleanMatrix {
            n: rows.len(),
            rows,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row_mask(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    fn check_dims(&self, other: usize) -> Result<()> {
        if self.n == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other,
            })
        }
    }

    /// Product over `({0,1}, or, and)`.
    pub fn mul(&self, other: &BooleanMatrix) -> Result<BooleanMatrix> {
        self.check_dims(other.n)?;
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.n)
                    .filter(|j| r >> j & 1 == 1)
                    .fold(0u32, |acc, j| acc | other.rows[j])
            })
            .collect();
        Ok(BooleanMatrix { n: self.n, rows })
    }

    pub fn mul_vec(&self, v: BoolVector) -> Result<BoolVector> {
        self.check_dims(v.n)?;
        let bits = self
            .rows
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &r)| acc | (u32::from(r & v.bits != 0) << i));
        Ok(BoolVector { n: self.n, bits })
    }

    /// Conjugation `P^t B P` where `P e_k = e_{p(k)}`, i.e. entry `(a, b)` of
    /// the result is `b[p(a)][p(b)]`.
    pub fn conjugate(&self, p: &Permutation) -> Result<BooleanMatrix> {
        self.check_dims(p.len())?;
        let rows = (0..self.n)
            .map(|a| {
                (0..self.n)
                    .filter(|&b| self.get(p.image[a], p.image[b]))
                    .fold(0u32, |acc, b| acc | 1 << b)
            })
            .collect();
        Ok(BooleanMatrix { n: self.n, rows })
    }

    pub fn is_strictly_lower_triangular(&self) -> bool {
        // Row i may only use columns 0..i.
        self.rows.iter().enumerate().all(|(i, &r)| r >> i == 0)
    }
}

impl fmt::Display for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.n {
                f.write_str(if r >> j & 1 == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// `B(S)`: the transpose of the adjacency matrix of the regulatory graph.
pub fn bmatrix(rg: &RegulatoryGraph) -> BooleanMatrix {
    BooleanMatrix {
        n: rg.n,
        rows: rg.regulators.clone(),
    }
}

pub fn bool_mat_mul(a: &BooleanMatrix, b: &BooleanMatrix) -> Result<BooleanMatrix> {
    a.mul(b)
}

pub fn bool_mat_vec(a: &BooleanMatrix, v: BoolVector) -> Result<BoolVector> {
    a.mul_vec(v)
}

/// Whether `B^n = 0` for the dimension `n` of `b`.
///
/// Squares until the exponent reaches `n`. Nilpotent Boolean matrices vanish
/// at every power `>= n`, so `B^(2^k) = 0` with `2^k >= n` decides `B^n = 0`.
pub fn is_nilpotent(b: &BooleanMatrix) -> bool {
    let mut power = b.clone();
    let mut exponent = 1usize;
    while exponent < b.n {
        power = power.mul(&power).expect("square");
        exponent *= 2;
    }
    power.is_zero()
}

/// Vector of `n` bits, used for componentwise distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolVector {
    n: usize,
    bits: u32,
}

impl BoolVector {
    pub fn new(n: usize, bits: u32) -> Self {
        BoolVector {
            n,
            bits: bits & crate::model::full_mask(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &BoolVector) -> bool {
        self.bits & !other.bits == 0
    }
}

/// Componentwise distance `d(x, y) = (|x1 - y1|, ..., |xn - yn|)`.
pub fn bdistance(x: State, y: State) -> Result<BoolVector> {
    y.check_dim(x.n())?;
    Ok(BoolVector::new(x.n(), x.bits() ^ y.bits()))
}

/// Checks `d(S(x), S(y)) <= B(S) d(x, y)` for every pair of states.
///
/// The inequality always holds; a `false` here means the edge extraction or
/// the matrix product is wrong.
pub fn check_basic_inequality(model: &BooleanModel) -> Result<bool> {
    check_basic_inequality_with(model, Exec::default())
}

pub fn check_basic_inequality_with(model: &BooleanModel, exec: Exec) -> Result<bool> {
    let n = model.n();
    if n > BASIC_INEQUALITY_CAP {
        return Err(Error::CapExceeded {
            what: "basic inequality check",
            n,
            cap: BASIC_INEQUALITY_CAP,
        });
    }
    let b = bmatrix(&extract_regulatory_graph_with(model, exec));
    let image = model.image_table(exec);
    let states = model.state_count();
    // B(S) d only depends on d = x ^ y; tabulate it once.
    let bound: Vec<u32> = (0..states as u32)
        .map(|d| b.mul_vec(BoolVector::new(n, d)).expect("same n").bits)
        .collect();
    let violation = par::find_first(exec, states, |x| {
        (0..states).any(|y| {
            let lhs = image[x] ^ image[y];
            lhs & !bound[x ^ y] != 0
        })
    });
    Ok(violation.is_none())
}

/// A bijection on component indices, stored as its image array.
///
/// As a renumbering, `image[k]` is the original component placed at new
/// position `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "g{} appears twice",
                    i + 1
                )));
            }
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (k, &i) in self.image.iter().enumerate() {
            inv[i] = k;
        }
        Permutation { image: inv }
    }
}

/// Failure of [`topological_sort`]: the vertices of one circuit, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitFound {
    pub cycle: Vec<usize>,
}

/// Kahn's algorithm, emitting the smallest available original index first.
///
/// On success every edge goes from a smaller to a strictly larger position,
/// so `P^t B(S) P` is strictly lower triangular.
pub fn topological_sort(rg: &RegulatoryGraph) -> Result<Permutation, CircuitFound> {
    let n = rg.n;
    let mut indegree: Vec<u32> = rg.regulators.iter().map(|r| r.count_ones()).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for w in rg.targets(v).iter() {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        Ok(Permutation { image: order })
    } else {
        let cycle = rg
            .find_circuit()
            .expect("Kahn's algorithm stalls only on a circuit");
        Err(CircuitFound { cycle })
    }
}

pub fn is_strictly_lower_triangular_under(b: &BooleanMatrix, p: &Permutation) -> Result<bool> {
    Ok(b.conjugate(p)?.is_strictly_lower_triangular())
}

/// Whether a circuit remains after removing the self-loops on `inputs`.
pub fn has_circuit_except_input_self_loops(
    rg: &RegulatoryGraph,
    inputs: ComponentSet,
) -> Result<bool> {
    inputs.check_range(rg.n)?;
    Ok(rg.without_self_loops(inputs).has_circuit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netparse::parse_model;

    fn rg_of(text: &str) -> RegulatoryGraph {
        extract_regulatory_graph(&parse_model(text).unwrap())
    }

    const FIG1: &str = "a : (a & b) | (!a & !b)\nb : (a & b) | (!a & !b)";
    const CHAIN: &str = "a : 1\nb : a\nc : b";

    #[test]
    fn fig1_edges_are_all_dual() {
        let g = rg_of(FIG1);
        assert_eq!(g.edge_count(), 4);
        for (from, to) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(g.sign(from, to), Some(Sign::Dual));
        }
    }

    #[test]
    fn chain_edges_are_activating() {
        let g = rg_of(CHAIN);
        let edges = g.edges();
        assert_eq!(
            edges,
            [
                Edge {
                    from: 0,
                    to: 1,
                    sign: Sign::Activating
                },
                Edge {
                    from: 1,
                    to: 2,
                    sign: Sign::Activating
                },
            ]
        );
    }

    #[test]
    fn inhibition_and_constants() {
        let g = rg_of("a : !b\nb : 0");
        assert_eq!(
            g.edges(),
            [Edge {
                from: 1,
                to: 0,
                sign: Sign::Inhibiting
            }]
        );
        assert_eq!(rg_of("a : 1\nb : 0\nc : 1").edge_count(), 0);
    }

    #[test]
    fn high_variable_edges() {
        // Regulators at word-level strides (indices >= 6).
        let mut text = String::new();
        for i in 0..9 {
            text.push_str(&format!("v{i} : !v{}\n", (i + 7) % 9));
        }
        let g = rg_of(&text);
        assert_eq!(g.edge_count(), 9);
        for i in 0..9 {
            assert_eq!(g.sign((i + 7) % 9, i), Some(Sign::Inhibiting));
        }
    }

    #[test]
    fn extraction_strategies_agree() {
        let m = BooleanModel::from_fn(BooleanModel::default_names(10), |i, x| {
            (x.wrapping_mul(0x9E37_79B9).rotate_left(3 * i as u32) >> 11) & 1 == 1
        })
        .unwrap();
        assert_eq!(
            extract_regulatory_graph_with(&m, Exec::Sequential),
            extract_regulatory_graph_with(&m, Exec::Parallel)
        );
    }

    #[test]
    fn bmatrix_examples() {
        let b = bmatrix(&rg_of(CHAIN));
        assert_eq!(
            b,
            BooleanMatrix::from_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])
        );
        assert!(bmatrix(&rg_of("a : 1\nb : 0")).is_zero());
        assert_eq!(
            bmatrix(&rg_of(FIG1)),
            BooleanMatrix::from_rows(&[&[1, 1], &[1, 1]])
        );
    }

    #[test]
    fn products() {
        let l = BooleanMatrix::from_rows(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]);
        let l2 = l.mul(&l).unwrap();
        assert_eq!(
            l2,
            BooleanMatrix::from_rows(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]])
        );
        assert!(l2.mul(&l).unwrap().is_zero());
        let v = BoolVector::new(3, 0b101);
        assert_eq!(BooleanMatrix::identity(3).mul_vec(v).unwrap(), v);
        let ones = BooleanMatrix::from_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(ones.mul(&ones).unwrap(), ones);
        assert!(ones.mul(&l).is_err());
        assert!(ones.mul_vec(v).is_err());
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&bmatrix(&rg_of(CHAIN))));
        assert!(!is_nilpotent(&bmatrix(&rg_of(FIG1))));
        assert!(is_nilpotent(&BooleanMatrix::zero(5)));
        assert!(!is_nilpotent(&BooleanMatrix::identity(1)));
        // A 5-cycle has zero diagonal but is not nilpotent.
        let cyc = BooleanMatrix::from_row_masks((0..5).map(|i| 1 << ((i + 1) % 5)).collect());
        assert!(!is_nilpotent(&cyc));
    }

    #[test]
    fn topological_sort_examples() {
        assert_eq!(
            topological_sort(&rg_of(CHAIN)).unwrap(),
            Permutation::identity(3)
        );
        let rev = topological_sort(&rg_of("a : b\nb : c\nc : 1")).unwrap();
        assert_eq!(rev.image(), [2, 1, 0]);
        let err = topological_sort(&rg_of(FIG1)).unwrap_err();
        assert_eq!(err.cycle, [0]);
    }

    #[test]
    fn topological_sort_breaks_ties_by_index() {
        // d has no regulator, b depends on d, a and c are sources.
        let p = topological_sort(&rg_of("a : 1\nb : d\nc : 0\nd : 1")).unwrap();
        assert_eq!(p.image(), [0, 2, 3, 1]);
    }

    #[test]
    fn circuit_witness_is_a_cycle() {
        let g = rg_of("a : c\nb : a\nc : b\nd : d");
        let cycle = g.find_circuit().unwrap();
        assert_eq!(cycle, [0, 1, 2]);
        for k in 0..cycle.len() {
            assert!(g.has_edge(cycle[k], cycle[(k + 1) % cycle.len()]));
        }
    }

    #[test]
    fn lower_triangular_conjugation() {
        let chain = bmatrix(&rg_of(CHAIN));
        assert!(is_strictly_lower_triangular_under(&chain, &Permutation::identity(3)).unwrap());
        let rev = Permutation::new(vec![2, 1, 0]).unwrap();
        assert!(!is_strictly_lower_triangular_under(&chain, &rev).unwrap());
        let fig1 = bmatrix(&rg_of(FIG1));
        for p in [vec![0, 1], vec![1, 0]] {
            let p = Permutation::new(p).unwrap();
            assert!(!is_strictly_lower_triangular_under(&fig1, &p).unwrap());
        }
        let diag = BooleanMatrix::from_rows(&[&[0, 0, 0], &[0, 1, 0], &[1, 0, 0]]);
        for image in [[0, 1, 2], [2, 1, 0], [1, 2, 0]] {
            let p = Permutation::new(image.to_vec()).unwrap();
            assert!(!is_strictly_lower_triangular_under(&diag, &p).unwrap());
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().image(), [1, 2, 0]);
    }

    #[test]
    fn distances() {
        let s = |t: &str| t.parse::<State>().unwrap();
        assert_eq!(
            bdistance(s("00"), s("11")).unwrap(),
            BoolVector::new(2, 0b11)
        );
        assert!(bdistance(s("101"), s("101")).unwrap().is_zero());
        let d = bdistance(s("011"), s("010")).unwrap();
        assert_eq!((d.get(0), d.get(1), d.get(2)), (false, false, true));
        assert!(bdistance(s("01"), s("010")).is_err());
    }

    #[test]
    fn basic_inequality_examples() {
        assert!(check_basic_inequality(&parse_model(FIG1).unwrap()).unwrap());
        assert!(check_basic_inequality(&parse_model("a : 1\nb : 0").unwrap()).unwrap());
        let big = BooleanModel::from_fn(BooleanModel::default_names(13), |_, _| true).unwrap();
        assert!(matches!(
            check_basic_inequality(&big),
            Err(Error::CapExceeded { n: 13, cap: 12, .. })
        ));
    }

    #[test]
    fn input_self_loops() {
        let g = rg_of("a : a\nb : a");
        assert!(!has_circuit_except_input_self_loops(&g, ComponentSet::singleton(0)).unwrap());
        assert!(has_circuit_except_input_self_loops(&g, ComponentSet::EMPTY).unwrap());
        let fig1 = rg_of(FIG1);
        assert!(has_circuit_except_input_self_loops(&fig1, ComponentSet::EMPTY).unwrap());
        assert!(!has_circuit_except_input_self_loops(&rg_of(CHAIN), ComponentSet::EMPTY).unwrap());
        assert!(has_circuit_except_input_self_loops(&g, ComponentSet::singleton(4)).is_err());
    }
}
