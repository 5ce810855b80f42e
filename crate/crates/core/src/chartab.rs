//! Irreducible character tables via Dixon's class-algebra method: common
//! eigenvectors of the class-multiplication matrices over GF(p), then exact
//! lifting of the mod-p character values into cyclotomic integers through
//! power maps and an inverse discrete Fourier transform of eigenvalue
//! multiplicities.
//!
//! The same `CharacterTable` type also carries embedded reference tables;
//! orthogonality verification, kernel extraction, and the normal-subgroup
//! lattice work uniformly on both.

use std::collections::BTreeSet;

use num::{Integer, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::classes::{self, ClassData};
use crate::cyclo::{lcm_u32, Cyclotomic, Int, Rat};
use crate::matgroup::GroupTable;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableSource {
    Computed { prime: u64 },
    Embedded { id: String },
}

/// A k×k table of irreducible character values, rows = characters,
/// columns = classes, the identity class in column 0.
pub struct CharacterTable {
    pub row_labels: Vec<String>,
    pub values: Vec<Vec<Cyclotomic>>,
    pub class_sizes: Vec<u64>,
    pub group_order: Int,
    pub source: TableSource,
}

impl CharacterTable {
    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// Degree of row i: its value on the identity class.
    pub fn degree(&self, i: usize) -> Int {
        self.values[i][0]
            .as_integer()
            .expect("character degrees are rational integers")
    }

    pub fn degrees(&self) -> Vec<Int> {
        (0..self.k()).map(|i| self.degree(i)).collect()
    }

    /// Common multiple of the conductors of all values; the ambient field
    /// for ordering and comparisons.
    pub fn ambient_conductor(&self) -> u32 {
        self.values
            .iter()
            .flatten()
            .fold(1u32, |acc, v| lcm_u32(acc, v.conductor()))
    }

    pub fn integer_valued(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(Cyclotomic::is_rational_integer)
    }

    /// Classes where row i attains its degree.
    pub fn character_kernel(&self, i: usize) -> BTreeSet<usize> {
        let deg = &self.values[i][0];
        (0..self.k())
            .filter(|&c| &self.values[i][c] == deg)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("sizes");
        for s in &self.class_sizes {
            out.push_str(&format!(",{}", s));
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.values) {
            out.push_str(label);
            for v in row {
                out.push_str(&format!(",{}", v));
            }
            out.push('\n');
        }
        out
    }
}

/// Raw parse of the table CSV format: a `sizes` header row (entries `?` when
/// unknown) followed by one labeled row per character.
pub struct ParsedTableCsv {
    pub row_labels: Vec<String>,
    pub sizes: Option<Vec<u64>>,
    pub values: Vec<Vec<Cyclotomic>>,
}

pub fn parse_table_csv(text: &str) -> Result<ParsedTableCsv> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table csv".into()))?;
    let mut cells = header.split(',');
    let tag = cells.next().unwrap_or_default();
    if tag != "sizes" {
        return Err(Error::Parse(format!(
            "table csv must start with a `sizes` row, got `{tag}`"
        )));
    }
    let size_cells: Vec<&str> = cells.collect();
    let sizes = if size_cells.iter().any(|c| c.trim() == "?") {
        None
    } else {
        Some(
            size_cells
                .iter()
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad class size `{c}`")))
                })
                .collect::<Result<Vec<u64>>>()?,
        )
    };
    let mut row_labels = Vec::new();
    let mut values = Vec::new();
    for line in lines {
        let mut cells = line.split(',');
        let label = cells
            .next()
            .ok_or_else(|| Error::Parse("missing row label".into()))?;
        row_labels.push(label.trim().to_string());
        let row: Vec<Cyclotomic> = cells
            .map(|c| c.trim().parse::<Cyclotomic>())
            .collect::<Result<_>>()?;
        if row.len() != size_cells.len() {
            return Err(Error::Parse(format!(
                "row `{label}` has {} entries, expected {}",
                row.len(),
                size_cells.len()
            )));
        }
        values.push(row);
    }
    Ok(ParsedTableCsv {
        row_labels,
        sizes,
        values,
    })
}

/// Invert column orthogonality: |C| = |G| / Σ_i |χ_i(C)|². Rejects the
/// table when any size fails to be a positive integer or the sizes do not
/// sum to the group order.
pub fn class_sizes_from_columns(values: &[Vec<Cyclotomic>], group_order: &Int) -> Result<Vec<u64>> {
    let k = values.len();
    let mut sizes = Vec::with_capacity(k);
    for c in 0..k {
        let mut norm = Cyclotomic::zero();
        for row in values {
            norm = norm.add(&row[c].norm_squared());
        }
        let norm_int = norm.as_integer().ok_or_else(|| {
            Error::CorruptTable(format!("column {} norm is not a rational integer", c + 1))
        })?;
        if norm_int <= Int::zero() {
            return Err(Error::CorruptTable(format!(
                "column {} norm is not positive",
                c + 1
            )));
        }
        let (q, r) = group_order.div_rem(&norm_int);
        if !r.is_zero() || q <= Int::zero() {
            return Err(Error::CorruptTable(format!(
                "column {} size |G|/{} is not a positive integer",
                c + 1,
                norm_int
            )));
        }
        sizes.push(q.to_u64().ok_or_else(|| {
            Error::CorruptTable(format!("column {} size does not fit u64", c + 1))
        })?);
    }
    let total: Int = sizes.iter().map(|&s| Int::from(s)).sum();
    if &total != group_order {
        return Err(Error::CorruptTable(format!(
            "derived class sizes sum to {total}, expected {group_order}"
        )));
    }
    Ok(sizes)
}

#[derive(Clone, Debug, Default)]
pub struct OrthogonalityReport {
    /// (i, j) row pairs whose weighted inner product missed δ_ij·|G|.
    pub row_failures: Vec<(usize, usize)>,
    /// (c, d) column pairs whose inner product missed δ_cd·|G|/|C_c|.
    pub col_failures: Vec<(usize, usize)>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.row_failures.is_empty() && self.col_failures.is_empty()
    }
}

/// Exact check of one row pair: Σ_C |C|·χ_i(C)·conj(χ_j(C)) = δ_ij·|G|.
pub fn check_row_pair(t: &CharacterTable, i: usize, j: usize) -> bool {
    let mut s = Cyclotomic::zero();
    for c in 0..t.k() {
        let term = t.values[i][c]
            .mul(&t.values[j][c].conj())
            .mul(&Cyclotomic::from_bigint(Int::from(t.class_sizes[c])));
        s = s.add(&term);
    }
    let want = if i == j {
        Cyclotomic::from_bigint(t.group_order.clone())
    } else {
        Cyclotomic::zero()
    };
    s == want
}

/// Exact check of one column pair: Σ_i χ_i(c)·conj(χ_i(d)) = δ_cd·|G|/|C_c|.
pub fn check_col_pair(t: &CharacterTable, c: usize, d: usize) -> bool {
    let mut s = Cyclotomic::zero();
    for i in 0..t.k() {
        let term = t.values[i][c].mul(&t.values[i][d].conj());
        s = s.add(&term);
    }
    let want = if c == d {
        Cyclotomic::from_rat(Rat::new(t.group_order.clone(), Int::from(t.class_sizes[c])))
    } else {
        Cyclotomic::zero()
    };
    s == want
}

/// Both orthogonality relations over all pairs, exact arithmetic.
pub fn verify_orthogonality(t: &CharacterTable) -> OrthogonalityReport {
    let k = t.k();
    let mut report = OrthogonalityReport::default();
    let row_failures: Vec<(usize, usize)> = (0..k)
        .into_par_iter()
        .flat_map_iter(|i| (i..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !check_row_pair(t, i, j))
        .collect();
    let col_failures: Vec<(usize, usize)> = (0..k)
        .into_par_iter()
        .flat_map_iter(|c| (c..k).map(move |d| (c, d)))
        .filter(|&(c, d)| !check_col_pair(t, c, d))
        .collect();
    report.row_failures = row_failures;
    report.col_failures = col_failures;
    report.row_failures.sort_unstable();
    report.col_failures.sort_unstable();
    report
}

/// A union of classes forming a normal subgroup, as produced by
/// intersecting irreducible character kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroupRecord {
    pub classes: BTreeSet<usize>,
    pub order: Int,
    pub is_proper_nontrivial: bool,
}

/// Every normal subgroup is an intersection of irreducible-character
/// kernels; the kernel set is closed under pairwise intersection to a
/// fixpoint. Results are sorted by order, then class set.
pub fn normal_subgroups(t: &CharacterTable) -> Vec<NormalSubgroupRecord> {
    let mut sets: BTreeSet<BTreeSet<usize>> = (0..t.k()).map(|i| t.character_kernel(i)).collect();
    loop {
        let mut fresh = Vec::new();
        let list: Vec<&BTreeSet<usize>> = sets.iter().collect();
        for (a_idx, a) in list.iter().enumerate() {
            for b in &list[a_idx + 1..] {
                let inter: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !sets.contains(&inter) {
                    fresh.push(inter);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        sets.extend(fresh);
    }
    let mut records: Vec<NormalSubgroupRecord> = sets
        .into_iter()
        .map(|classes| {
            let order: Int = classes.iter().map(|&c| Int::from(t.class_sizes[c])).sum();
            let is_proper_nontrivial = order > Int::one() && order < t.group_order;
            NormalSubgroupRecord {
                classes,
                order,
                is_proper_nontrivial,
            }
        })
        .collect();
    records.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.classes.cmp(&b.classes))
    });
    records
}

// ---------------- GF(p) arithmetic ----------------

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
    fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The Dixon bound: p ≡ 1 (mod exponent), p² > 4·|G| (so integer character
/// data is recoverable from residues), p ∤ |G|.
fn prime_is_valid(p: u64, exponent: u64, order: &Int) -> bool {
    if p < 3 || !(p - 1).is_multiple_of(exponent) || !is_prime_u64(p) {
        return false;
    }
    let p_int = Int::from(p);
    if (order % &p_int).is_zero() {
        return false;
    }
    &p_int * &p_int > order * 4
}

/// Smallest valid Dixon prime strictly greater than `after` (use 0 for the
/// smallest overall).
pub fn dixon_prime_after(exponent: u64, order: &Int, after: u64) -> u64 {
    let mut r = 1u64;
    loop {
        let p = r * exponent + 1;
        if p > after && prime_is_valid(p, exponent, order) {
            return p;
        }
        r += 1;
    }
}

pub fn dixon_prime(exponent: u64, order: &Int) -> u64 {
    dixon_prime_after(exponent, order, 0)
}

// ---------------- modular linear algebra ----------------

/// Reduce rows to reduced row echelon form; returns pivot column per row.
fn rref(rows: &mut Vec<Vec<u64>>, fp: Fp) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_multiple_of(fp.p)) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = fp.inv(rows[r][col]);
        for c in col..ncols {
            rows[r][c] = fp.mul(rows[r][c], inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_multiple_of(fp.p) {
                let f = rows[i][col];
                for c in col..ncols {
                    let s = fp.mul(f, rows[r][c]);
                    rows[i][c] = fp.sub(rows[i][c], s);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Coordinates of `v` in an RREF basis; `None` when v is outside the span.
fn coords_in_basis(v: &[u64], basis: &[Vec<u64>], pivots: &[usize], fp: Fp) -> Option<Vec<u64>> {
    let mut v = v.to_vec();
    let mut coords = vec![0u64; basis.len()];
    for (row, &pc) in pivots.iter().enumerate() {
        let c = v[pc] % fp.p;
        if c != 0 {
            coords[row] = c;
            for j in 0..v.len() {
                let s = fp.mul(c, basis[row][j]);
                v[j] = fp.sub(v[j], s);
            }
        }
    }
    v.iter().all(|&x| x % fp.p == 0).then_some(coords)
}

struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Split an invariant subspace into eigenspaces of `a` restricted to it.
fn split_subspace(space: &Subspace, a: &[Vec<u64>], fp: Fp) -> Result<Vec<Subspace>> {
    let d = space.basis.len();
    let k = space.basis[0].len();
    // restriction matrix B: A·w_b = Σ_c B[c][b] w_c
    let mut b = vec![vec![0u64; d]; d];
    for (bi, w) in space.basis.iter().enumerate() {
        let mut aw = vec![0u64; k];
        for (j, row) in a.iter().enumerate() {
            let mut acc = 0u64;
            for (c, &wc) in w.iter().enumerate() {
                if wc != 0 && row[c] != 0 {
                    acc = fp.add(acc, fp.mul(row[c] % fp.p, wc));
                }
            }
            aw[j] = acc;
        }
        let coords = coords_in_basis(&aw, &space.basis, &space.pivots, fp).ok_or_else(|| {
            Error::EigensplitFailure("class matrix does not preserve a common eigenspace".into())
        })?;
        for c in 0..d {
            b[c][bi] = coords[c];
        }
    }
    // eigenvalues by scanning GF(p); the class algebra is split semisimple
    // for a valid Dixon prime, so the eigenspaces exhaust the subspace.
    let mut spaces = Vec::new();
    let mut found = 0usize;
    for lambda in 0..fp.p {
        if found == d {
            break;
        }
        let mut m: Vec<Vec<u64>> = b.clone();
        for i in 0..d {
            m[i][i] = fp.sub(m[i][i], lambda);
        }
        let pivots = rref(&mut m, fp);
        if pivots.len() == d {
            continue;
        }
        // nullspace basis in coordinates, mapped back to ambient vectors
        let mut eigvecs: Vec<Vec<u64>> = Vec::new();
        for fc in (0..d).filter(|c| !pivots.contains(c)) {
            let mut coord = vec![0u64; d];
            coord[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                coord[pc] = fp.sub(0, m[row][fc]);
            }
            let mut ambient = vec![0u64; k];
            for (c, &x) in coord.iter().enumerate() {
                if x != 0 {
                    for j in 0..k {
                        let s = fp.mul(x, space.basis[c][j]);
                        ambient[j] = fp.add(ambient[j], s);
                    }
                }
            }
            eigvecs.push(ambient);
        }
        found += eigvecs.len();
        let pivots = rref(&mut eigvecs, fp);
        debug_assert_eq!(pivots.len(), eigvecs.len());
        spaces.push(Subspace {
            basis: eigvecs,
            pivots,
        });
    }
    if found != d {
        return Err(Error::EigensplitFailure(format!(
            "only {found} of {d} dimensions split in GF({})",
            fp.p
        )));
    }
    Ok(spaces)
}

// ---------------- the Dixon driver ----------------

/// Compute the character table with an automatically chosen prime.
pub fn dixon_character_table(table: &GroupTable, cd: &ClassData) -> Result<CharacterTable> {
    let e = table.exponent();
    let order = Int::from(table.len());
    let p = dixon_prime(e, &order);
    dixon_character_table_with_prime(table, cd, p)
}

/// Compute the character table over GF(p) for a caller-chosen valid prime;
/// the lifted table is independent of the choice.
pub fn dixon_character_table_with_prime(
    table: &GroupTable,
    cd: &ClassData,
    p: u64,
) -> Result<CharacterTable> {
    let e = table.exponent();
    let order_int = Int::from(table.len());
    if !prime_is_valid(p, e, &order_int) {
        return Err(Error::InvalidPrime {
            p,
            reason: format!(
                "need a prime p ≡ 1 (mod {e}) with p² > 4·|G| and p ∤ |G| = {order_int}"
            ),
        });
    }
    let fp = Fp { p };
    let k = cd.k;
    let order_mod = (&order_int % Int::from(p)).to_u64().unwrap();

    // split the class algebra into one-dimensional common eigenspaces
    let full = {
        let mut basis = vec![vec![0u64; k]; k];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = 1;
        }
        Subspace {
            pivots: (0..k).collect(),
            basis,
        }
    };
    let mut spaces = vec![full];
    for i in 1..k {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let a = classes::class_matrix(table, cd, i);
        let a_mod: Vec<Vec<u64>> = a
            .into_iter()
            .map(|row| row.into_iter().map(|x| x % p).collect())
            .collect();
        let mut next = Vec::with_capacity(spaces.len());
        for s in spaces {
            if s.basis.len() == 1 {
                next.push(s);
            } else {
                next.extend(split_subspace(&s, &a_mod, fp)?);
            }
        }
        spaces = next;
    }
    if let Some(stuck) = spaces.iter().find(|s| s.basis.len() > 1) {
        return Err(Error::EigensplitFailure(format!(
            "a {}-dimensional common eigenspace survived all {} class matrices",
            stuck.basis.len(),
            k
        )));
    }

    // normalize each eigenvector so its identity-class coordinate is 1
    let mut eigvecs: Vec<Vec<u64>> = Vec::with_capacity(k);
    for s in &spaces {
        let v = &s.basis[0];
        if v[0] % p == 0 {
            return Err(Error::EigensplitFailure(
                "eigenvector with zero identity coordinate".into(),
            ));
        }
        let scale = fp.inv(v[0]);
        eigvecs.push(v.iter().map(|&x| fp.mul(x, scale)).collect());
    }

    let inv_class = classes::inverse_classes(table, cd);
    let size_inv: Vec<u64> = (0..k).map(|c| fp.inv(cd.sizes[c] % p)).collect();

    // fixed primitive e-th root of unity in GF(p)
    let root_e = {
        let factors = prime_factors_u64(p - 1);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| fp.pow(g, (p - 1) / q) != 1))
            .expect("GF(p)* is cyclic");
        fp.pow(g, (p - 1) / e)
    };

    // per-class power chains: class of rep^s for s = 0..order(rep)
    let power_chains: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let rep = table.element(cd.rep_ids[c]);
            let o = table.order_of(cd.rep_ids[c]) as usize;
            let mut chain = Vec::with_capacity(o);
            let mut acc = crate::matgroup::PhaseMatrix::identity(table.n_qubits());
            for _ in 0..o {
                chain.push(cd.class_of[table.id_of(&acc).expect("powers stay inside")]);
                acc = acc.mul(rep).expect("dimensions agree");
            }
            chain
        })
        .collect();

    let rows: Vec<(Int, Vec<Cyclotomic>)> = eigvecs
        .par_iter()
        .map(|v| {
            lift_row(
                v,
                cd,
                &inv_class,
                &size_inv,
                &power_chains,
                fp,
                order_mod,
                e,
                root_e,
            )
        })
        .collect::<Result<_>>()?;

    let mut rows = rows;
    let ambient = e as u32;
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                let ord = x.cmp_at(y, ambient);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    Ok(CharacterTable {
        row_labels: (1..=k).map(|i| format!("chi_{}", i)).collect(),
        values: rows.into_iter().map(|(_, v)| v).collect(),
        class_sizes: cd.sizes.clone(),
        group_order: order_int,
        source: TableSource::Computed { prime: p },
    })
}

/// Lift one normalized eigenvector to exact character values.
#[allow(clippy::too_many_arguments)]
fn lift_row(
    v: &[u64],
    cd: &ClassData,
    inv_class: &[usize],
    size_inv: &[u64],
    power_chains: &[Vec<usize>],
    fp: Fp,
    order_mod: u64,
    e: u64,
    root_e: u64,
) -> Result<(Int, Vec<Cyclotomic>)> {
    let k = cd.k;
    let p = fp.p;
    // |G| / Σ_j v_j v_{j'} / |C_j| = χ(1)² in GF(p)
    let mut s = 0u64;
    for j in 0..k {
        let term = fp.mul(fp.mul(v[j], v[inv_class[j]]), size_inv[j]);
        s = fp.add(s, term);
    }
    if s == 0 {
        return Err(Error::EigensplitFailure(
            "degenerate norm while recovering a degree".into(),
        ));
    }
    let deg_sq = fp.mul(order_mod, fp.inv(s));
    let degree = (1..=(p - 1) / 2)
        .find(|&d| fp.mul(d, d) == deg_sq)
        .ok_or_else(|| Error::EigensplitFailure("no square root for a degree residue".into()))?;
    // character values mod p: χ(g_j) = deg · v_j / |C_j|
    let theta: Vec<u64> = (0..k)
        .map(|j| fp.mul(fp.mul(degree, v[j]), size_inv[j]))
        .collect();
    // inverse DFT of eigenvalue multiplicities per class
    let mut values = Vec::with_capacity(k);
    for j in 0..k {
        let o = power_chains[j].len() as u64;
        let zeta = fp.pow(root_e, e / o);
        let o_inv = fp.inv(o % p);
        let mut value = Cyclotomic::zero();
        let mut mult_sum = 0u64;
        for t in 0..o {
            let mut acc = 0u64;
            for (s_idx, &cls) in power_chains[j].iter().enumerate() {
                let expo = (o - (s_idx as u64 * t) % o) % o;
                acc = fp.add(acc, fp.mul(theta[cls], fp.pow(zeta, expo)));
            }
            let m_t = fp.mul(acc, o_inv);
            // multiplicities are bounded by the degree < p/2, so the
            // residue is the true integer
            mult_sum += m_t;
            if m_t != 0 {
                let term = Cyclotomic::root_of_unity(o as u32, t as i64)
                    .mul(&Cyclotomic::from_bigint(Int::from(m_t)));
                value = value.add(&term);
            }
        }
        if mult_sum != degree {
            return Err(Error::EigensplitFailure(format!(
                "eigenvalue multiplicities sum to {mult_sum}, expected degree {degree}"
            )));
        }
        values.push(value);
    }
    Ok((Int::from(degree), values))
}
