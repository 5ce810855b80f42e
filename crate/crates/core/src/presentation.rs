//! The abstract presentation of the rank-n Clifford group: relator
//! generation for any n, matrix verification of every relator, and
//! abelianization via Smith normal form.
//!
//! Generators are h1..hn, p1..pn, z1..z(n−1). The relation families are
//! tagged R1–R11, with B1–B3 joining at n ≥ 3. Relations stated as
//! equalities are stored as relators w₁·w₂⁻¹.

use std::collections::BTreeMap;

use num::{One, Zero};
use rayon::prelude::*;

use crate::cyclo::Int;
use crate::matgroup::evaluate_word;
use crate::snf::smith_normal_form;
use crate::word::{Gen, Word};
use crate::{Error, Result};

/// Structural shape of a relator, kept so exporters can render the natural
/// grouping instead of the flattened word.
#[derive(Clone, Debug)]
pub enum RelatorForm {
    Power { base: Word, exp: u32 },
    Commutator(Gen, Gen),
    Equality { lhs: Word, rhs: Word },
}

#[derive(Clone, Debug)]
pub struct Relator {
    pub rule: &'static str,
    pub form: RelatorForm,
    /// Flattened relator word (evaluates to the identity in the group).
    pub word: Word,
}

impl Relator {
    fn new(rule: &'static str, form: RelatorForm) -> Self {
        let word = match &form {
            RelatorForm::Power { base, exp } => base.repeat(*exp),
            RelatorForm::Commutator(a, b) => {
                let mut w = Word::empty();
                w.push(*a, 1);
                w.push(*b, 1);
                w.push(*a, -1);
                w.push(*b, -1);
                w
            }
            RelatorForm::Equality { lhs, rhs } => lhs.clone().concat(&rhs.inverse()),
        };
        Relator {
            rule,
            form,
            word: merge_adjacent(word),
        }
    }
}

/// Merge adjacent letters on the same generator, e.g. `h1 h1` into `h1^2`.
fn merge_adjacent(word: Word) -> Word {
    let mut out: Vec<(Gen, i64)> = Vec::with_capacity(word.0.len());
    for (g, k) in word.0 {
        match out.last_mut() {
            Some((lg, lk)) if *lg == g => {
                *lk += k;
                if *lk == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, k)),
        }
    }
    Word(out)
}

pub struct Presentation {
    pub n: usize,
    pub generator_names: Vec<String>,
    pub relators: Vec<Relator>,
}

fn w(pairs: &[(Gen, i64)]) -> Word {
    Word(pairs.to_vec())
}

/// Relators of the rank-n presentation, in rule order with instance indices
/// ascending. B-relations appear only when n ≥ 3.
pub fn build_presentation(n: usize) -> Presentation {
    assert!(n >= 1);
    let nn = n as u32;
    let mut rel = Vec::new();
    let pow = |base: Word, exp: u32| RelatorForm::Power { base, exp };
    let eq = |lhs: Word, rhs: Word| RelatorForm::Equality { lhs, rhs };

    // R1: Z_j^2 = H_i^2 = P_i^4 = 1
    for j in 1..nn {
        rel.push(Relator::new("R1", pow(Word::single(Gen::Z(j)), 2)));
    }
    for i in 1..=nn {
        rel.push(Relator::new("R1", pow(Word::single(Gen::H(i)), 2)));
    }
    for i in 1..=nn {
        rel.push(Relator::new("R1", pow(Word::single(Gen::P(i)), 4)));
    }
    // R2: (H_i P_i)^3
    for i in 1..=nn {
        rel.push(Relator::new(
            "R2",
            pow(w(&[(Gen::H(i), 1), (Gen::P(i), 1)]), 3),
        ));
    }
    // R3: (H_i P_i H_i P_i^3)^3
    for i in 1..=nn {
        rel.push(Relator::new(
            "R3",
            pow(
                w(&[
                    (Gen::H(i), 1),
                    (Gen::P(i), 1),
                    (Gen::H(i), 1),
                    (Gen::P(i), 3),
                ]),
                3,
            ),
        ));
    }
    // R4: (H_i P_i^2 H_i P_i^2)^2
    for i in 1..=nn {
        rel.push(Relator::new(
            "R4",
            pow(
                w(&[
                    (Gen::H(i), 1),
                    (Gen::P(i), 2),
                    (Gen::H(i), 1),
                    (Gen::P(i), 2),
                ]),
                2,
            ),
        ));
    }
    // R5: commuting family members, one relator per ordered pair i != j
    for i in 1..=nn {
        for j in 1..=nn {
            if i != j {
                rel.push(Relator::new(
                    "R5",
                    RelatorForm::Commutator(Gen::H(i), Gen::H(j)),
                ));
            }
        }
    }
    for i in 1..=nn {
        for j in 1..=nn {
            if i != j {
                rel.push(Relator::new(
                    "R5",
                    RelatorForm::Commutator(Gen::P(i), Gen::P(j)),
                ));
            }
        }
    }
    for i in 1..nn {
        for j in 1..nn {
            if i != j {
                rel.push(Relator::new(
                    "R5",
                    RelatorForm::Commutator(Gen::Z(i), Gen::Z(j)),
                ));
            }
        }
    }
    // R6: Z_j commutes with every P_i
    for j in 1..nn {
        for i in 1..=nn {
            rel.push(Relator::new(
                "R6",
                RelatorForm::Commutator(Gen::Z(j), Gen::P(i)),
            ));
        }
    }
    // R7: Z_j commutes with H_i when i is not one of its two qubits
    for j in 1..nn {
        for i in 1..=nn {
            if i != j && i != j + 1 {
                rel.push(Relator::new(
                    "R7",
                    RelatorForm::Commutator(Gen::Z(j), Gen::H(i)),
                ));
            }
        }
    }
    // R8: Z_j H_j P_j^2 H_j = H_j P_j^2 P_{j+1}^2 H_j Z_j
    for j in 1..nn {
        rel.push(Relator::new(
            "R8",
            eq(
                w(&[
                    (Gen::Z(j), 1),
                    (Gen::H(j), 1),
                    (Gen::P(j), 2),
                    (Gen::H(j), 1),
                ]),
                w(&[
                    (Gen::H(j), 1),
                    (Gen::P(j), 2),
                    (Gen::P(j + 1), 2),
                    (Gen::H(j), 1),
                    (Gen::Z(j), 1),
                ]),
            ),
        ));
    }
    // R9: Z_j H_{j+1} P_{j+1}^2 H_{j+1} = H_{j+1} P_j^2 P_{j+1}^2 H_{j+1} Z_j
    for j in 1..nn {
        rel.push(Relator::new(
            "R9",
            eq(
                w(&[
                    (Gen::Z(j), 1),
                    (Gen::H(j + 1), 1),
                    (Gen::P(j + 1), 2),
                    (Gen::H(j + 1), 1),
                ]),
                w(&[
                    (Gen::H(j + 1), 1),
                    (Gen::P(j), 2),
                    (Gen::P(j + 1), 2),
                    (Gen::H(j + 1), 1),
                    (Gen::Z(j), 1),
                ]),
            ),
        ));
    }
    // R10: Z_j H_j Z_j = P_j H_j P_j P_{j+1} Z_j H_j P_j
    for j in 1..nn {
        rel.push(Relator::new(
            "R10",
            eq(
                w(&[(Gen::Z(j), 1), (Gen::H(j), 1), (Gen::Z(j), 1)]),
                w(&[
                    (Gen::P(j), 1),
                    (Gen::H(j), 1),
                    (Gen::P(j), 1),
                    (Gen::P(j + 1), 1),
                    (Gen::Z(j), 1),
                    (Gen::H(j), 1),
                    (Gen::P(j), 1),
                ]),
            ),
        ));
    }
    // R11: Z_j H_{j+1} Z_j = P_{j+1} H_{j+1} P_j P_{j+1} Z_j H_{j+1} P_{j+1}
    for j in 1..nn {
        rel.push(Relator::new(
            "R11",
            eq(
                w(&[(Gen::Z(j), 1), (Gen::H(j + 1), 1), (Gen::Z(j), 1)]),
                w(&[
                    (Gen::P(j + 1), 1),
                    (Gen::H(j + 1), 1),
                    (Gen::P(j), 1),
                    (Gen::P(j + 1), 1),
                    (Gen::Z(j), 1),
                    (Gen::H(j + 1), 1),
                    (Gen::P(j + 1), 1),
                ]),
            ),
        ));
    }
    if n >= 3 {
        // B1: the long braid-style equality on three consecutive qubits
        for j in 1..nn - 1 {
            rel.push(Relator::new(
                "B1",
                eq(
                    w(&[
                        (Gen::Z(j), 1),
                        (Gen::H(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::Z(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::H(j + 2), 1),
                        (Gen::Z(j + 1), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::H(j + 2), 1),
                        (Gen::Z(j), 1),
                        (Gen::H(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::Z(j), 1),
                    ]),
                    w(&[
                        (Gen::Z(j + 1), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::H(j + 2), 1),
                        (Gen::Z(j + 1), 1),
                        (Gen::H(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::Z(j), 1),
                        (Gen::H(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::Z(j + 1), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::H(j + 2), 1),
                        (Gen::Z(j + 1), 1),
                    ]),
                ),
            ));
        }
        // B2: (Z_{j+1} H_j H_{j+1} Z_j H_j H_{j+1} Z_j)^3
        for j in 1..nn - 1 {
            rel.push(Relator::new(
                "B2",
                pow(
                    w(&[
                        (Gen::Z(j + 1), 1),
                        (Gen::H(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::Z(j), 1),
                        (Gen::H(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::Z(j), 1),
                    ]),
                    3,
                ),
            ));
        }
        // B3: (Z_j H_{j+1} H_{j+2} Z_{j+1} H_{j+1} H_{j+2} Z_{j+1})^3
        for j in 1..nn - 1 {
            rel.push(Relator::new(
                "B3",
                pow(
                    w(&[
                        (Gen::Z(j), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::H(j + 2), 1),
                        (Gen::Z(j + 1), 1),
                        (Gen::H(j + 1), 1),
                        (Gen::H(j + 2), 1),
                        (Gen::Z(j + 1), 1),
                    ]),
                    3,
                ),
            ));
        }
    }

    let mut generator_names = Vec::new();
    for i in 1..=n {
        generator_names.push(format!("h{}", i));
    }
    for i in 1..=n {
        generator_names.push(format!("p{}", i));
    }
    for j in 1..n {
        generator_names.push(format!("z{}", j));
    }
    Presentation {
        n,
        generator_names,
        relators: rel,
    }
}

#[derive(Clone, Debug)]
pub struct RelatorCheck {
    pub rule: String,
    pub word: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub n: usize,
    pub checks: Vec<RelatorCheck>,
}

impl PresentationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&RelatorCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Evaluate every relator through the matrix assignment and check it lands
/// on the identity modulo phase.
pub fn verify_relators(n: usize) -> Result<PresentationReport> {
    let pres = build_presentation(n);
    let checks: Vec<RelatorCheck> = pres
        .relators
        .par_iter()
        .map(|r| {
            let passed = evaluate_word(&r.word, n).map(|m| m.is_identity());
            Ok(RelatorCheck {
                rule: r.rule.to_string(),
                word: r.word.to_string(),
                passed: passed?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PresentationReport { n, checks })
}

/// Torsion invariant factors and free rank of the abelianized presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub invariant_factors: Vec<Int>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Order of the abelianization (None when infinite).
    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| {
            self.invariant_factors
                .iter()
                .fold(Int::one(), |acc, f| acc * f)
        })
    }
}

/// Exponent-sum matrix of the relators: one row per relator instance, one
/// column per generator in declaration order.
pub fn abelianized_relation_matrix(pres: &Presentation) -> Vec<Vec<Int>> {
    let n = pres.n;
    let cols = 3 * n - 1;
    let col_of = |g: Gen| -> usize {
        match g {
            Gen::H(i) => i as usize - 1,
            Gen::P(i) => n + i as usize - 1,
            Gen::Z(j) => 2 * n + j as usize - 1,
            Gen::X(_) | Gen::Y(_) => unreachable!("presentation has no pauli symbols"),
        }
    };
    pres.relators
        .iter()
        .map(|r| {
            let mut row = vec![Int::zero(); cols];
            for &(g, k) in &r.word.0 {
                row[col_of(g)] += Int::from(k);
            }
            row
        })
        .collect()
}

/// Cokernel of the relation matrix via Smith normal form.
pub fn abelianization(n: usize) -> AbelianInvariants {
    let pres = build_presentation(n);
    let matrix = abelianized_relation_matrix(&pres);
    let snf = smith_normal_form(&matrix);
    let rank = snf.diagonal().len();
    AbelianInvariants {
        invariant_factors: snf.invariant_factors(),
        free_rank: (3 * n - 1) - rank,
    }
}

/// The sign assignment −1 on every generator, verified against all relators.
/// Exists only for n ≤ 2; at n ≥ 3 the first violated relator is reported.
pub fn sgn_character(n: usize) -> Result<BTreeMap<String, i64>> {
    let pres = build_presentation(n);
    for r in &pres.relators {
        let total: i64 = r.word.0.iter().map(|&(_, k)| k).sum();
        if total.rem_euclid(2) != 0 {
            return Err(Error::NoSignCharacter {
                n,
                rule: r.rule.to_string(),
            });
        }
    }
    Ok(pres
        .generator_names
        .iter()
        .map(|g| (g.clone(), -1i64))
        .collect())
}

/// Plain-text export: one relator word per line, grouped under `# rule-id`
/// comments; every non-comment line parses back through the word syntax.
pub fn presentation_text(n: usize) -> String {
    let pres = build_presentation(n);
    let mut out = String::new();
    let mut current = "";
    for r in &pres.relators {
        if r.rule != current {
            current = r.rule;
            out.push_str(&format!("# {}\n", current));
        }
        out.push_str(&format!("{}\n", r.word));
    }
    out
}

fn gap_token(g: Gen, n: usize) -> String {
    // rank 2 has a single controlled-Z, written bare
    if n == 2 {
        if let Gen::Z(_) = g {
            return "z".to_string();
        }
    }
    g.to_string()
}

fn gap_word(word: &Word, n: usize) -> String {
    word.0
        .iter()
        .map(|&(g, k)| {
            let tok = gap_token(g, n);
            if k == 1 {
                tok
            } else {
                format!("{}^{}", tok, k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Render the rank-2 presentation as the GAP session that builds the group
/// and converts it to a permutation group. Commutator relators are deduped
/// to one per unordered pair, matching the published listing.
pub fn gap_fragment(n: usize) -> Result<String> {
    if n != 2 {
        return Err(Error::UnsupportedRank {
            n,
            reason: "the GAP fragment exporter covers rank 2 only".into(),
        });
    }
    let pres = build_presentation(n);
    let mut rels = Vec::new();
    for r in &pres.relators {
        match &r.form {
            RelatorForm::Power { base, exp } => {
                let body = gap_word(base, n);
                if base.0.len() == 1 && base.0[0].1 == 1 {
                    rels.push(format!("{}^{}", body, exp));
                } else {
                    rels.push(format!("({})^{}", body, exp));
                }
            }
            RelatorForm::Commutator(a, b) => {
                // keep only the (i < j) representative of each pair
                if a.index() > b.index() && std::mem::discriminant(a) == std::mem::discriminant(b) {
                    continue;
                }
                rels.push(format!("Comm({},{})", gap_token(*a, n), gap_token(*b, n)));
            }
            RelatorForm::Equality { lhs, rhs } => {
                rels.push(format!("{}/({})", gap_word(lhs, n), gap_word(rhs, n)));
            }
        }
    }
    let mut out = String::new();
    out.push_str("gap>f:=FreeGroup(\"h1\",\"h2\",\"p1\",\"p2\",\"z\");;\n");
    out.push_str("gap>AssignGeneratorVariables(f);;\n");
    out.push_str(&format!("gap>rels:=[ {}];;\n", rels.join(",\n")));
    out.push_str("gap>g:=f/rels;;\n");
    out.push_str("gap>AssignGeneratorVariables(g);;\n");
    out.push_str("gap>IsomorphismPermGroup(g);\n");
    Ok(out)
}
