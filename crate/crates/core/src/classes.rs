//! Conjugacy class structure of an enumerated group: the partition,
//! deterministic class indexing, power maps, and class-algebra structure
//! constants — the inputs Dixon's method needs.

use rayon::prelude::*;

use crate::matgroup::{GroupTable, PhaseMatrix};
use crate::word::Word;
use crate::{matgroup, Error, Result};

/// Conjugacy class partition with deterministic indexing: classes sorted by
/// (size, order of representative, representative id), the representative
/// being the minimal element id in the class. Class 0 is always the
/// identity class.
pub struct ClassData {
    pub k: usize,
    pub rep_ids: Vec<usize>,
    pub sizes: Vec<u64>,
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

/// Orbit closure under conjugation by the generators only; generators
/// generate, so the orbit of x under them is its full class.
pub fn conjugacy_classes(table: &GroupTable) -> ClassData {
    let gen_mats: Vec<(PhaseMatrix, PhaseMatrix)> = table
        .generators()
        .iter()
        .map(|(_, id)| {
            let g = table.element(*id).clone();
            let ginv = g.inverse();
            (g, ginv)
        })
        .collect();
    let size = table.len();
    let mut seen = vec![false; size];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for seed in 0..size {
        if seen[seed] {
            continue;
        }
        seen[seed] = true;
        let mut orbit = vec![seed];
        let mut queue = vec![seed];
        while let Some(id) = queue.pop() {
            for (g, ginv) in &gen_mats {
                let conj = g
                    .mul(table.element(id))
                    .and_then(|gx| gx.mul(ginv))
                    .expect("dimensions agree inside one table");
                let cid = table
                    .id_of(&conj)
                    .expect("conjugate of a member stays in the group");
                if !seen[cid] {
                    seen[cid] = true;
                    orbit.push(cid);
                    queue.push(cid);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes.sort_by_key(|orbit| {
        let rep = orbit[0];
        (orbit.len(), table.order_of(rep), rep)
    });
    let mut class_of = vec![0usize; size];
    for (c, orbit) in classes.iter().enumerate() {
        for &id in orbit {
            class_of[id] = c;
        }
    }
    ClassData {
        k: classes.len(),
        rep_ids: classes.iter().map(|o| o[0]).collect(),
        sizes: classes.iter().map(|o| o.len() as u64).collect(),
        class_of,
        members: classes,
    }
}

/// Class index of the element a word evaluates to.
pub fn class_of_word(word: &Word, table: &GroupTable, cd: &ClassData) -> Result<usize> {
    let m = matgroup::evaluate_word(word, table.n_qubits())?;
    let id = table.id_of(&m).ok_or(Error::ElementNotInGroup)?;
    Ok(cd.class_of[id])
}

/// Image class of g^m for each class, computed on the representative.
/// Well-definedness (independence of the representative) is a conjugation
/// identity; `power_map_checked` asserts it on every member.
pub fn power_map(table: &GroupTable, cd: &ClassData, m: i64) -> Vec<usize> {
    cd.rep_ids
        .iter()
        .map(|&rep| {
            let p = table.element(rep).pow(m).expect("powers stay in the group");
            cd.class_of[table.id_of(&p).expect("closure under powers")]
        })
        .collect()
}

/// Like [`power_map`] but recomputed on every class member, verifying that
/// the choice of representative does not matter.
pub fn power_map_checked(table: &GroupTable, cd: &ClassData, m: i64) -> Vec<usize> {
    let by_rep = power_map(table, cd, m);
    for (c, members) in cd.members.iter().enumerate() {
        for &id in members {
            let p = table.element(id).pow(m).expect("powers stay in the group");
            let pc = cd.class_of[table.id_of(&p).expect("closure under powers")];
            assert_eq!(pc, by_rep[c], "power map not class-well-defined");
        }
    }
    by_rep
}

/// Class of inverses per class: the m = −1 power map.
pub fn inverse_classes(table: &GroupTable, cd: &ClassData) -> Vec<usize> {
    cd.rep_ids
        .iter()
        .map(|&rep| cd.class_of[table.inverse_of(rep)])
        .collect()
}

/// Structure constants a_{ijk} = #{(x, y) ∈ C_i×C_j : xy = z} for one fixed
/// z per class k: the full matrix over (j, k) for a fixed i.
///
/// For each k the count walks x ∈ C_i and classifies x⁻¹·z, so one pass
/// fills a whole column.
pub fn class_matrix(table: &GroupTable, cd: &ClassData, i: usize) -> Vec<Vec<u64>> {
    let columns: Vec<Vec<u64>> = (0..cd.k)
        .into_par_iter()
        .map(|k| {
            let z = table.element(cd.rep_ids[k]);
            let mut col = vec![0u64; cd.k];
            for &x_id in &cd.members[i] {
                let xinv = table.element(table.inverse_of(x_id));
                let y = xinv.mul(z).expect("dimensions agree");
                let j = cd.class_of[table.id_of(&y).expect("product stays in the group")];
                col[j] += 1;
            }
            col
        })
        .collect();
    let mut m = vec![vec![0u64; cd.k]; cd.k];
    for (k, col) in columns.into_iter().enumerate() {
        for (j, v) in col.into_iter().enumerate() {
            m[j][k] = v;
        }
    }
    m
}

/// The vector a_{ij·} over k for fixed (i, j).
pub fn class_constants(table: &GroupTable, cd: &ClassData, i: usize, j: usize) -> Vec<u64> {
    let m = class_matrix(table, cd, i);
    (0..cd.k).map(|k| m[j][k]).collect()
}

/// Variant of [`class_matrix`] with explicit base-point choices per class,
/// used to check representative independence.
pub fn class_matrix_with_reps(
    table: &GroupTable,
    cd: &ClassData,
    i: usize,
    reps: &[usize],
) -> Vec<Vec<u64>> {
    assert_eq!(reps.len(), cd.k);
    let mut m = vec![vec![0u64; cd.k]; cd.k];
    for k in 0..cd.k {
        let z_id = reps[k];
        assert_eq!(cd.class_of[z_id], k, "rep choice must lie in its class");
        let z = table.element(z_id);
        for &x_id in &cd.members[i] {
            let xinv = table.element(table.inverse_of(x_id));
            let y = xinv.mul(z).expect("dimensions agree");
            let j = cd.class_of[table.id_of(&y).expect("product stays in the group")];
            m[j][k] += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{clifford_generators, pauli_generators, GroupTable, DEFAULT_ELEMENT_CAP};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::OnceLock;

    fn c1() -> &'static (GroupTable, ClassData) {
        static T: OnceLock<(GroupTable, ClassData)> = OnceLock::new();
        T.get_or_init(|| {
            let table =
                GroupTable::bfs_closure(1, &clifford_generators(1).unwrap(), DEFAULT_ELEMENT_CAP)
                    .unwrap();
            let cd = conjugacy_classes(&table);
            (table, cd)
        })
    }

    /// Brute-force oracle: partition by conjugating with *every* element.
    fn brute_force_classes(table: &GroupTable) -> Vec<Vec<usize>> {
        let size = table.len();
        let mut seen = vec![false; size];
        let mut classes = Vec::new();
        for seed in 0..size {
            if seen[seed] {
                continue;
            }
            let mut orbit = Vec::new();
            for g in 0..size {
                let gm = table.element(g);
                let conj = gm
                    .mul(table.element(seed))
                    .unwrap()
                    .mul(&gm.inverse())
                    .unwrap();
                let cid = table.id_of(&conj).unwrap();
                if !seen[cid] {
                    seen[cid] = true;
                    orbit.push(cid);
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        classes
    }

    #[test]
    fn rank_one_partition_matches_brute_force() {
        let (table, cd) = c1();
        assert_eq!(cd.k, 5);
        let mut sizes = cd.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let brute = brute_force_classes(table);
        assert_eq!(brute.len(), 5);
        let mut brute_sorted: Vec<Vec<usize>> = brute;
        brute_sorted.sort();
        let mut got: Vec<Vec<usize>> = cd.members.clone();
        got.sort();
        assert_eq!(got, brute_sorted);
        // identity class is class 0
        assert_eq!(cd.class_of[0], 0);
        assert_eq!(cd.sizes[0], 1);
    }

    #[test]
    fn klein_group_is_all_singletons() {
        let table =
            GroupTable::bfs_closure(1, &pauli_generators(1).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        let cd = conjugacy_classes(&table);
        assert_eq!(cd.k, 4);
        assert!(cd.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn class_of_word_examples() {
        let (table, cd) = c1();
        let e = class_of_word(&Word::parse("").unwrap(), table, cd).unwrap();
        assert_eq!(cd.sizes[e], 1);
        // P^2 heads the size-3 class, P the size-6 class of 4-cycles
        let p2 = class_of_word(&Word::parse("p1^2").unwrap(), table, cd).unwrap();
        assert_eq!(cd.sizes[p2], 3);
        let p = class_of_word(&Word::parse("p1").unwrap(), table, cd).unwrap();
        assert_eq!(cd.sizes[p], 6);
        assert_ne!(p, p2);
        // words evaluating outside the table are rejected
        let klein =
            GroupTable::bfs_closure(1, &pauli_generators(1).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        let kd = conjugacy_classes(&klein);
        let err = class_of_word(&Word::parse("h1").unwrap(), &klein, &kd).unwrap_err();
        assert!(matches!(err, Error::ElementNotInGroup));
    }

    #[test]
    fn power_maps() {
        let (table, cd) = c1();
        let id_map = power_map_checked(table, cd, 1);
        assert_eq!(id_map, (0..cd.k).collect::<Vec<_>>());
        // squaring sends the class of P to the class of P^2
        let sq = power_map_checked(table, cd, 2);
        let p = class_of_word(&Word::parse("p1").unwrap(), table, cd).unwrap();
        let p2 = class_of_word(&Word::parse("p1^2").unwrap(), table, cd).unwrap();
        assert_eq!(sq[p], p2);
        // inversion pairing preserves sizes
        let inv = inverse_classes(table, cd);
        for c in 0..cd.k {
            assert_eq!(cd.sizes[c], cd.sizes[inv[c]]);
        }
        assert_eq!(power_map_checked(table, cd, -1), inv);
    }

    #[test]
    fn identity_row_of_class_constants() {
        // K_e · K_j = K_j in the class algebra: a_{e,j,k} = δ_{jk}
        let (table, cd) = c1();
        for j in 0..cd.k {
            let a = class_constants(table, cd, 0, j);
            for (k, &v) in a.iter().enumerate() {
                assert_eq!(v, u64::from(k == j));
            }
        }
    }

    #[test]
    fn counting_identity_over_all_pairs() {
        let (table, cd) = c1();
        for i in 0..cd.k {
            let m = class_matrix(table, cd, i);
            for j in 0..cd.k {
                let weighted: u64 = (0..cd.k).map(|k| m[j][k] * cd.sizes[k]).sum();
                assert_eq!(weighted, cd.sizes[i] * cd.sizes[j]);
            }
        }
    }

    #[test]
    fn hp_class_pairs_to_identity_brute_force() {
        let (table, cd) = c1();
        let hp = class_of_word(&Word::parse("h1 p1").unwrap(), table, cd).unwrap();
        assert_eq!(cd.sizes[hp], 8);
        // brute force over all 24×24 products
        let mut count = 0u64;
        for &x in &cd.members[hp] {
            for &y in &cd.members[hp] {
                let prod = table.element(x).mul(table.element(y)).unwrap();
                if prod.is_identity() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 8);
        let a = class_constants(table, cd, hp, hp);
        assert_eq!(a[0], 8);
        // and the whole tensor against brute force
        for i in 0..cd.k {
            for j in 0..cd.k {
                for k in 0..cd.k {
                    let z = table.element(cd.rep_ids[k]);
                    let mut brute = 0u64;
                    for &x in &cd.members[i] {
                        let y = table.element(table.inverse_of(x)).mul(z).unwrap();
                        let yid = table.id_of(&y).unwrap();
                        if cd.class_of[yid] == j {
                            brute += 1;
                        }
                    }
                    assert_eq!(class_matrix(table, cd, i)[j][k], brute);
                }
            }
        }
    }

    #[test]
    fn constants_are_representative_independent() {
        let (table, cd) = c1();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..5 {
            let reps: Vec<usize> = (0..cd.k)
                .map(|k| cd.members[k][rng.gen_range(0..cd.members[k].len())])
                .collect();
            for i in 0..cd.k {
                assert_eq!(
                    class_matrix(table, cd, i),
                    class_matrix_with_reps(table, cd, i, &reps)
                );
            }
        }
    }
}
