//! Clifford group elements as phase-canonicalized unitary matrices over
//! Q(ζ₈), plus breadth-first enumeration of the groups they generate.
//!
//! All matrix equality is modulo the global-phase subgroup ⟨ω·I⟩ with
//! ω = ζ₈: a `PhaseMatrix` stores the lexicographically smallest of the
//! eight matrices ω^k·M, so equality and hashing are plain structural
//! operations on the stored entries.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num::{BigInt, One};

use crate::cyclo::{ratio, Cyclotomic, Int};
use crate::word::{Gen, Word};
use crate::{Error, Result};

/// Upper bound assumed for element orders modulo phase at small rank.
/// Enumeration checks it for every element and fails loudly if exceeded.
pub const ORDER_BOUND: u32 = 48;

/// Default cap for breadth-first closure; the rank-3 group (92 897 280
/// elements) is deliberately out of reach.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// All entries of Clifford matrices lie in Q(ζ₈); entry comparisons happen
/// in this fixed ambient conductor.
const AMBIENT: u32 = 8;

/// A 2ⁿ×2ⁿ unitary over Q(ζ₈), canonical modulo global phase.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PhaseMatrix {
    n: usize,
    entries: Vec<Cyclotomic>,
}

impl PhaseMatrix {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &Cyclotomic {
        &self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut entries = vec![Cyclotomic::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Cyclotomic::one();
        }
        PhaseMatrix { n, entries }
    }

    /// Build from row-major entries, canonicalizing the global phase.
    pub fn from_entries(n: usize, entries: Vec<Cyclotomic>) -> Result<Self> {
        let dim = 1usize << n;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        let mut m = PhaseMatrix { n, entries };
        m.canonicalize();
        Ok(m)
    }

    /// Scale by the power of ω that makes the entry list lexicographically
    /// smallest. All eight phase multiples of the first nonzero entry are
    /// distinct, so that single entry decides the phase.
    fn canonicalize(&mut self) {
        let Some(first) = self.entries.iter().position(|e| !e.is_zero()) else {
            return;
        };
        let pivot = &self.entries[first];
        let mut best_k = 0usize;
        let mut best = pivot.clone();
        for k in 1..8 {
            let cand = pivot.mul(&Cyclotomic::root_of_unity(8, k as i64));
            if cand.cmp_at(&best, AMBIENT) == Ordering::Less {
                best = cand;
                best_k = k;
            }
        }
        if best_k != 0 {
            let omega_k = Cyclotomic::root_of_unity(8, best_k as i64);
            for e in &mut self.entries {
                if !e.is_zero() {
                    *e = e.mul(&omega_k);
                }
            }
        }
    }

    /// Total order on canonical entry lists; used for deterministic
    /// tie-breaking during enumeration.
    pub fn cmp_entries(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let ord = a.cmp_at(b, AMBIENT);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let dim = self.dim();
        let mut entries = vec![Cyclotomic::zero(); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = &self.entries[i * dim + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = &other.entries[k * dim + j];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    entries[i * dim + j] = entries[i * dim + j].add(&t);
                }
            }
        }
        let mut m = PhaseMatrix { n: self.n, entries };
        m.canonicalize();
        Ok(m)
    }

    /// Inverse = conjugate transpose (unitarity), phase-canonicalized.
    pub fn inverse(&self) -> Self {
        let dim = self.dim();
        let mut entries = vec![Cyclotomic::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[j * dim + i] = self.entries[i * dim + j].conj();
            }
        }
        let mut m = PhaseMatrix { n: self.n, entries };
        m.canonicalize();
        m
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse().pow(-k);
        }
        let mut acc = PhaseMatrix::identity(self.n);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == PhaseMatrix::identity(self.n)
    }

    /// Exact unitarity check: M·M† = I.
    pub fn is_unitary(&self) -> bool {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let mut s = Cyclotomic::zero();
                for k in 0..dim {
                    let t = self.entries[i * dim + k].mul(&self.entries[j * dim + k].conj());
                    s = s.add(&t);
                }
                let want = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if s != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> Cyclotomic {
        let dim = self.dim();
        let mut s = Cyclotomic::zero();
        for i in 0..dim {
            s = s.add(&self.entries[i * dim + i]);
        }
        s
    }

    /// |tr M|², which is invariant under the global phase.
    pub fn abs_trace_squared(&self) -> Cyclotomic {
        let t = self.trace();
        t.mul(&t.conj())
    }

    /// Multiplicative order modulo phase, bounded by [`ORDER_BOUND`].
    pub fn order(&self) -> Result<u32> {
        let mut acc = self.clone();
        for k in 1..=ORDER_BOUND {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.mul(self)?;
        }
        Err(Error::OrderBoundExceeded { bound: ORDER_BOUND })
    }
}

fn kron(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![Cyclotomic::zero(); ca * cb]; ra * rb];
    for (i1, arow) in a.iter().enumerate() {
        for (j1, aval) in arow.iter().enumerate() {
            if aval.is_zero() {
                continue;
            }
            for i2 in 0..rb {
                for j2 in 0..cb {
                    out[i1 * rb + i2][j1 * cb + j2] = aval.mul(&b[i2][j2]);
                }
            }
        }
    }
    out
}

fn grid_to_matrix(n: usize, grid: Vec<Vec<Cyclotomic>>) -> PhaseMatrix {
    let entries = grid.into_iter().flatten().collect();
    PhaseMatrix::from_entries(n, entries).expect("generator grid has the right shape")
}

fn identity2() -> Vec<Vec<Cyclotomic>> {
    vec![
        vec![Cyclotomic::one(), Cyclotomic::zero()],
        vec![Cyclotomic::zero(), Cyclotomic::one()],
    ]
}

fn embed_one_qubit(block: Vec<Vec<Cyclotomic>>, i: u32, n: usize) -> Result<PhaseMatrix> {
    if i == 0 || i as usize > n {
        return Err(Error::QubitIndexOutOfRange { index: i, n });
    }
    let mut grid = vec![vec![Cyclotomic::one()]];
    for q in 1..=n {
        grid = if q == i as usize {
            kron(&grid, &block)
        } else {
            kron(&grid, &identity2())
        };
    }
    Ok(grid_to_matrix(n, grid))
}

/// Hadamard gate on qubit i: entries ±(ζ₈−ζ₈³)/2 = ±1/√2.
pub fn gen_hadamard(i: u32, n: usize) -> Result<PhaseMatrix> {
    let h = Cyclotomic::sqrt2().mul(&Cyclotomic::from_rat(ratio(1, 2)));
    let block = vec![vec![h.clone(), h.clone()], vec![h.clone(), h.neg()]];
    embed_one_qubit(block, i, n)
}

/// Phase gate P = diag(1, i) on qubit i.
pub fn gen_phase(i: u32, n: usize) -> Result<PhaseMatrix> {
    let block = vec![
        vec![Cyclotomic::one(), Cyclotomic::zero()],
        vec![Cyclotomic::zero(), Cyclotomic::root_of_unity(8, 2)],
    ];
    embed_one_qubit(block, i, n)
}

/// Controlled-Z = diag(1,1,1,−1) on qubits (j, j+1).
pub fn gen_cz(j: u32, n: usize) -> Result<PhaseMatrix> {
    if j == 0 || j as usize >= n {
        return Err(Error::QubitIndexOutOfRange { index: j, n });
    }
    let mut cz = vec![vec![Cyclotomic::zero(); 4]; 4];
    for d in 0..4 {
        cz[d][d] = if d == 3 {
            Cyclotomic::from_int(-1)
        } else {
            Cyclotomic::one()
        };
    }
    let mut grid = vec![vec![Cyclotomic::one()]];
    let mut q = 1usize;
    while q <= n {
        if q == j as usize {
            grid = kron(&grid, &cz);
            q += 2;
        } else {
            grid = kron(&grid, &identity2());
            q += 1;
        }
    }
    Ok(grid_to_matrix(n, grid))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

pub fn gen_pauli(axis: PauliAxis, i: u32, n: usize) -> Result<PhaseMatrix> {
    let zero = Cyclotomic::zero;
    let one = Cyclotomic::one;
    let block = match axis {
        PauliAxis::X => vec![vec![zero(), one()], vec![one(), zero()]],
        PauliAxis::Y => vec![
            // -i = ζ₈⁶, i = ζ₈²
            vec![zero(), Cyclotomic::root_of_unity(8, 6)],
            vec![Cyclotomic::root_of_unity(8, 2), zero()],
        ],
        PauliAxis::Z => vec![vec![one(), zero()], vec![zero(), Cyclotomic::from_int(-1)]],
    };
    embed_one_qubit(block, i, n)
}

/// The matrix assigned to a single generator symbol.
pub fn generator_matrix(g: Gen, n: usize) -> Result<PhaseMatrix> {
    match g {
        Gen::H(i) => gen_hadamard(i, n),
        Gen::P(i) => gen_phase(i, n),
        Gen::Z(j) => gen_cz(j, n),
        Gen::X(i) => gen_pauli(PauliAxis::X, i, n),
        Gen::Y(i) => gen_pauli(PauliAxis::Y, i, n),
    }
}

/// Evaluate a word left-to-right into a canonical matrix.
pub fn evaluate_word(word: &Word, n: usize) -> Result<PhaseMatrix> {
    let mut acc = PhaseMatrix::identity(n);
    for &(g, k) in &word.0 {
        let m = generator_matrix(g, n)?.pow(k)?;
        acc = acc.mul(&m)?;
    }
    Ok(acc)
}

/// Parse and evaluate in one step.
pub fn evaluate_word_str(text: &str, n: usize) -> Result<PhaseMatrix> {
    evaluate_word(&Word::parse(text)?, n)
}

/// The standard generating set h1..hn, p1..pn, z1..z(n−1).
pub fn clifford_generators(n: usize) -> Result<Vec<(String, PhaseMatrix)>> {
    let mut gens = Vec::new();
    for i in 1..=n as u32 {
        gens.push((format!("h{}", i), gen_hadamard(i, n)?));
    }
    for i in 1..=n as u32 {
        gens.push((format!("p{}", i), gen_phase(i, n)?));
    }
    for j in 1..n as u32 {
        gens.push((format!("z{}", j), gen_cz(j, n)?));
    }
    Ok(gens)
}

/// The Pauli generating set x1..xn, y1..yn.
pub fn pauli_generators(n: usize) -> Result<Vec<(String, PhaseMatrix)>> {
    let mut gens = Vec::new();
    for i in 1..=n as u32 {
        gens.push((format!("x{}", i), gen_pauli(PauliAxis::X, i, n)?));
    }
    for i in 1..=n as u32 {
        gens.push((format!("y{}", i), gen_pauli(PauliAxis::Y, i, n)?));
    }
    Ok(gens)
}

/// |C_n| = 2^{n²+2n} · ∏_{j=1..n} (4^j − 1).
pub fn group_order_formula(n: usize) -> Int {
    let mut order = BigInt::one() << (n * n + 2 * n);
    for j in 1..=n {
        order *= (BigInt::one() << (2 * j)) - 1;
    }
    order
}

/// A fully enumerated matrix group.
pub struct GroupTable {
    n: usize,
    elements: Vec<Arc<PhaseMatrix>>,
    index: HashMap<Arc<PhaseMatrix>, usize>,
    generators: Vec<(String, usize)>,
    orders: Vec<u32>,
    inverses: Vec<usize>,
    parents: Vec<Option<(usize, usize)>>,
    levels: Vec<u32>,
}

impl GroupTable {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &PhaseMatrix {
        &self.elements[id]
    }

    pub fn id_of(&self, m: &PhaseMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn order_of(&self, id: usize) -> u32 {
        self.orders[id]
    }

    pub fn inverse_of(&self, id: usize) -> usize {
        self.inverses[id]
    }

    pub fn level_of(&self, id: usize) -> u32 {
        self.levels[id]
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| num::integer::lcm(acc, o as u64))
    }

    /// Word for an element, rebuilt from BFS parent pointers. The identity
    /// gives the empty string.
    pub fn word_string_for(&self, id: usize) -> String {
        let mut names = Vec::new();
        let mut cur = id;
        while let Some((parent, gen_idx)) = self.parents[cur] {
            names.push(self.generators[gen_idx].0.clone());
            cur = parent;
        }
        names.reverse();
        names.join(" ")
    }

    /// Breadth-first closure of a generating set, deterministic: levels are
    /// word lengths, ties inside a level broken by canonical-entry order.
    pub fn bfs_closure(
        n: usize,
        generators: &[(String, PhaseMatrix)],
        element_cap: usize,
    ) -> Result<GroupTable> {
        for (_, g) in generators {
            if g.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: g.dim(),
                    right: 1 << n,
                });
            }
        }
        let identity = Arc::new(PhaseMatrix::identity(n));
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Arc<PhaseMatrix>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut parents: Vec<Option<(usize, usize)>> = vec![None];
        let mut levels = vec![0u32];
        let mut frontier = vec![0usize];
        let mut level = 0u32;
        while !frontier.is_empty() {
            level += 1;
            let mut fresh: Vec<(PhaseMatrix, usize, usize)> = Vec::new();
            let mut seen_here: HashSet<PhaseMatrix> = HashSet::new();
            for &id in &frontier {
                for (gen_idx, (_, g)) in generators.iter().enumerate() {
                    let prod = elements[id].mul(g)?;
                    if index.contains_key(&prod) || seen_here.contains(&prod) {
                        continue;
                    }
                    seen_here.insert(prod.clone());
                    fresh.push((prod, id, gen_idx));
                }
            }
            fresh.sort_by(|a, b| a.0.cmp_entries(&b.0));
            let mut next_frontier = Vec::with_capacity(fresh.len());
            for (m, parent, gen_idx) in fresh {
                if elements.len() >= element_cap {
                    return Err(Error::ElementCapExceeded { cap: element_cap });
                }
                let id = elements.len();
                let m = Arc::new(m);
                elements.push(m.clone());
                index.insert(m, id);
                parents.push(Some((parent, gen_idx)));
                levels.push(level);
                next_frontier.push(id);
            }
            frontier = next_frontier;
        }
        let generator_ids: Vec<(String, usize)> = generators
            .iter()
            .map(|(name, g)| {
                let id = *index.get(g).expect("generator must lie in its own closure");
                (name.clone(), id)
            })
            .collect();
        let mut orders = Vec::with_capacity(elements.len());
        let mut inverses = Vec::with_capacity(elements.len());
        for m in &elements {
            orders.push(m.order()?);
            let inv = m.inverse();
            let inv_id = index
                .get(&inv)
                .copied()
                .expect("closure must contain inverses");
            inverses.push(inv_id);
        }
        Ok(GroupTable {
            n,
            elements,
            index,
            generators: generator_ids,
            orders,
            inverses,
            parents,
            levels,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn eval(s: &str, n: usize) -> PhaseMatrix {
        evaluate_word_str(s, n).unwrap()
    }

    #[test]
    fn generator_relations_rank_one() {
        let h = gen_hadamard(1, 1).unwrap();
        let p = gen_phase(1, 1).unwrap();
        assert!(h.mul(&h).unwrap().is_identity());
        assert!(p.pow(4).unwrap().is_identity());
        assert!(!p.pow(2).unwrap().is_identity());
        let hp = h.mul(&p).unwrap();
        assert!(hp.pow(3).unwrap().is_identity());
        // (H P^2 H P^2)^2 = 1
        let w = eval("(h1 p1^2 h1 p1^2)^2", 1);
        assert!(w.is_identity());
        assert!(h.is_unitary() && p.is_unitary());
    }

    #[test]
    fn cz_matrix_and_involution() {
        let cz = gen_cz(1, 2).unwrap();
        let mut want = vec![Cyclotomic::zero(); 16];
        for d in 0..4 {
            want[d * 4 + d] = if d == 3 {
                Cyclotomic::from_int(-1)
            } else {
                Cyclotomic::one()
            };
        }
        assert_eq!(cz, PhaseMatrix::from_entries(2, want).unwrap());
        assert!(cz.mul(&cz).unwrap().is_identity());
        assert!(gen_cz(2, 2).is_err());
        assert!(gen_hadamard(3, 2).is_err());
    }

    #[test]
    fn pauli_relations() {
        let x = gen_pauli(PauliAxis::X, 1, 1).unwrap();
        let y = gen_pauli(PauliAxis::Y, 1, 1).unwrap();
        let z = gen_pauli(PauliAxis::Z, 1, 1).unwrap();
        // XY = Z modulo phase
        assert_eq!(x.mul(&y).unwrap(), z);
        assert!(x.mul(&x).unwrap().is_identity());
        // Z = P^2 exactly
        assert_eq!(z, gen_phase(1, 1).unwrap().pow(2).unwrap());
    }

    #[test]
    fn klein_four_closure() {
        let gens = pauli_generators(1).unwrap();
        let table = GroupTable::bfs_closure(1, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(table.len(), 4);
        for id in 0..4 {
            assert!(table.order_of(id) <= 2);
        }
    }

    #[test]
    fn inverse_and_identity() {
        let m = eval("h1 p1 h1", 1);
        assert!(m.mul(&m.inverse()).unwrap().is_identity());
        assert!(eval("h1 p1 h1 p1 h1 p1", 1).is_identity());
    }

    #[test]
    fn swap_word_is_tensor_swap() {
        let swap = eval("(z1 h2 h1)^3", 2);
        // permutation fixing |00>, |11>, exchanging |01>, |10>
        let mut want = vec![Cyclotomic::zero(); 16];
        want[0] = Cyclotomic::one();
        want[4 + 2] = Cyclotomic::one();
        want[2 * 4 + 1] = Cyclotomic::one();
        want[3 * 4 + 3] = Cyclotomic::one();
        assert_eq!(swap, PhaseMatrix::from_entries(2, want).unwrap());
    }

    #[test]
    fn word_order_matches_repeated_multiplication_oracle() {
        let m = eval("h1 h2 p2 p1^-1 z1 h1 h2 z1", 2);
        // independent oracle: multiply step by step until the identity
        let mut acc = m.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(&m).unwrap();
            k += 1;
            assert!(k <= 100, "runaway order");
        }
        assert_eq!(m.order().unwrap(), k);
    }

    #[test]
    fn c1_closure_has_24_elements() {
        let gens = clifford_generators(1).unwrap();
        let table = GroupTable::bfs_closure(1, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(table.len(), 24);
        // closure property over all pairs, inverses included
        for a in 0..table.len() {
            assert!(table.id_of(&table.element(a).inverse()).is_some());
            for b in 0..table.len() {
                let prod = table.element(a).mul(table.element(b)).unwrap();
                assert!(table.id_of(&prod).is_some());
            }
        }
        // Lagrange: element orders divide |G|
        for id in 0..table.len() {
            assert_eq!(24 % table.order_of(id), 0);
        }
        // every enumerated element is unitary
        for id in 0..table.len() {
            assert!(table.element(id).is_unitary());
        }
    }

    #[test]
    fn single_qubit_subgroup_inside_two_qubits() {
        let gens = vec![
            ("h1".to_string(), gen_hadamard(1, 2).unwrap()),
            ("p1".to_string(), gen_phase(1, 2).unwrap()),
        ];
        let table = GroupTable::bfs_closure(2, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(table.len(), 24);
    }

    #[test]
    fn wreath_product_closure() {
        let swap = eval("(z1 h2 h1)^3", 2);
        let gens = vec![
            ("h1".to_string(), gen_hadamard(1, 2).unwrap()),
            ("p1".to_string(), gen_phase(1, 2).unwrap()),
            ("h2".to_string(), gen_hadamard(2, 2).unwrap()),
            ("p2".to_string(), gen_phase(2, 2).unwrap()),
            ("s".to_string(), swap),
        ];
        let table = GroupTable::bfs_closure(2, &gens, DEFAULT_ELEMENT_CAP).unwrap();
        // |S4 wr S2| = 24^2 * 2
        assert_eq!(table.len(), 24 * 24 * 2);
    }

    #[test]
    fn element_cap_is_enforced() {
        let gens = clifford_generators(1).unwrap();
        let err = match GroupTable::bfs_closure(1, &gens, 10) {
            Err(e) => e,
            Ok(_) => panic!("cap should have been exceeded"),
        };
        match err {
            Error::ElementCapExceeded { cap } => assert_eq!(cap, 10),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn distant_generators_commute() {
        // R5-R7 instances at n = 2 and n = 3
        for n in [2usize, 3] {
            let mut qubit_gens = Vec::new();
            for i in 1..=n as u32 {
                qubit_gens.push(("h", gen_hadamard(i, n).unwrap(), i));
                qubit_gens.push(("p", gen_phase(i, n).unwrap(), i));
            }
            for (fa, a, ia) in &qubit_gens {
                for (fb, b, ib) in &qubit_gens {
                    if ia != ib {
                        assert_eq!(
                            a.mul(b).unwrap(),
                            b.mul(a).unwrap(),
                            "{fa}{ia} vs {fb}{ib} at n={n}"
                        );
                    }
                }
            }
            for j in 1..n as u32 {
                let z = gen_cz(j, n).unwrap();
                for i in 1..=n as u32 {
                    let p = gen_phase(i, n).unwrap();
                    assert_eq!(z.mul(&p).unwrap(), p.mul(&z).unwrap());
                    if i != j && i != j + 1 {
                        let h = gen_hadamard(i, n).unwrap();
                        assert_eq!(z.mul(&h).unwrap(), h.mul(&z).unwrap());
                    }
                }
                for jj in 1..n as u32 {
                    if jj != j {
                        let z2 = gen_cz(jj, n).unwrap();
                        assert_eq!(z.mul(&z2).unwrap(), z2.mul(&z).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn order_formula_values() {
        assert_eq!(group_order_formula(1), Int::from(24));
        assert_eq!(group_order_formula(2), Int::from(11520));
        assert_eq!(group_order_formula(3), Int::from(92897280u64));
        assert_eq!(
            group_order_formula(5),
            "25410822678459187200".parse::<Int>().unwrap()
        );
    }

    #[test]
    fn canonicalization_is_phase_invariant_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfade);
        let omega = Cyclotomic::root_of_unity(8, 1);
        for case in 0..1000 {
            let n = 1 + (case % 2);
            let len = rng.gen_range(0..=5);
            let mut w = Word::empty();
            for _ in 0..len {
                let idx = rng.gen_range(1..=n as u32);
                let g = match rng.gen_range(0..5) {
                    0 => Gen::H(idx),
                    1 => Gen::P(idx),
                    2 => Gen::X(idx),
                    3 if n == 2 => Gen::Z(1),
                    _ => Gen::Y(idx),
                };
                w.push(g, rng.gen_range(-3i64..=3));
            }
            let m = evaluate_word(&w, n).unwrap();
            // idempotence: the canonical form survives reconstruction
            let again = PhaseMatrix::from_entries(n, m.entries().to_vec()).unwrap();
            assert_eq!(again, m);
            // phase invariance for all 8 phases
            let mut scaled_entries = m.entries().to_vec();
            for k in 0..8 {
                if k > 0 {
                    for e in &mut scaled_entries {
                        *e = e.mul(&omega);
                    }
                }
                let scaled = PhaseMatrix::from_entries(n, scaled_entries.clone()).unwrap();
                assert_eq!(scaled, m);
            }
        }
    }
}
