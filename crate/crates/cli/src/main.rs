//! Command-line surface for the cliffordtab engine: every pipeline stage is
//! scriptable, deterministic, and exits nonzero when a check fails.
//!
//! Data goes to stdout; progress notes go to stderr so piped output stays
//! clean.

use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cliffordtab::chartab::{self, dixon_character_table_with_prime, dixon_prime, CharacterTable};
use cliffordtab::classes::{self, ClassData};
use cliffordtab::cyclo::Int;
use cliffordtab::matgroup::{
    clifford_generators, group_order_formula, pauli_generators, GroupTable, DEFAULT_ELEMENT_CAP,
};
use cliffordtab::presentation;
use cliffordtab::refdata::{self, MatchOutcome, TableId};
use cliffordtab::repdecomp::{self, ClassFunction, DecompositionVector};
use cliffordtab::word::Word;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum GenSet {
    #[default]
    Clifford,
    Pauli,
}

#[derive(Parser)]
#[command(
    name = "cliffordtab",
    version,
    about = "Exact Clifford-group engine: enumeration, classes, character tables, decompositions"
)]
struct Cli {
    /// Worker thread cap (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory with fixture CSVs, overriding the compiled-in copies
    /// (same as CLIFFORDTAB_FIXTURES).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Output format for the data stream.
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print |C_n| from the closed-form order formula.
    Order {
        #[arg(long)]
        n: usize,
    },
    /// Breadth-first closure of a generating set; prints a summary.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t)]
        generators: GenSet,
    },
    /// Conjugacy classes: index, size, representative word, element order.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Compute the character table and match it against the embedded
    /// reference table; nonzero exit on mismatch.
    Chartable {
        #[arg(long)]
        n: usize,
        /// Override the Dixon prime (must satisfy the validity bound).
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Decompose the m-th tensor power of the conjugation character.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Invariant factors of the abelianized presentation.
    Abelianize {
        #[arg(long)]
        n: usize,
    },
    /// Run the verification suite for rank n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Only the Smith-normal-form abelianization check (any rank).
        #[arg(long)]
        abelianization_only: bool,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Normal subgroups from intersections of character kernels.
    NormalSubgroups {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Export the presentation (relators) as text, or as a GAP session.
    ExportPresentation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gap: bool,
    },
    /// Property-based verification of the embedded rank-3 table.
    VerifyC3,
}

fn main() {
    let cli = Cli::parse();
    if let Some(dir) = &cli.fixtures {
        std::env::set_var("CLIFFORDTAB_FIXTURES", dir);
    }
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool configured before any parallel work");
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let fmt = cli.format;
    match cli.command {
        Command::Order { n } => cmd_order(n, fmt),
        Command::Enumerate { n, cap, generators } => cmd_enumerate(n, cap, generators, fmt),
        Command::Classes { n, cap } => cmd_classes(n, cap, fmt),
        Command::Chartable { n, prime, cap } => cmd_chartable(n, prime, cap, fmt),
        Command::Decompose { n, m, cap } => cmd_decompose(n, m, cap, fmt),
        Command::Abelianize { n } => cmd_abelianize(n, fmt),
        Command::Verify {
            n,
            abelianization_only,
            cap,
        } => cmd_verify(n, abelianization_only, cap, fmt),
        Command::NormalSubgroups { n, cap } => cmd_normal_subgroups(n, cap, fmt),
        Command::ExportPresentation { n, gap } => cmd_export_presentation(n, gap),
        Command::VerifyC3 => cmd_verify_c3(fmt),
    }
}

fn json_envelope(command: &str, payload: serde_json::Value) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    obj.insert("command".into(), json!(command));
    obj.insert("data".into(), payload);
    serde_json::to_string_pretty(&serde_json::Value::Object(obj)).expect("json serializes")
}

fn guard_rank(n: usize, max: usize, what: &str) -> Result<()> {
    if n < 1 || n > max {
        bail!("{what} supports 1 <= n <= {max}, got n = {n}");
    }
    Ok(())
}

// ---------------- order ----------------

fn cmd_order(n: usize, fmt: Format) -> Result<i32> {
    guard_rank(n, 64, "order")?;
    let order = group_order_formula(n);
    match fmt {
        Format::Text => println!("{order}"),
        Format::Csv => println!("n,order\n{n},{order}"),
        Format::Json => println!(
            "{}",
            json_envelope("order", json!({"n": n, "order": order.to_string()}))
        ),
    }
    Ok(0)
}

// ---------------- shared pipeline ----------------

fn generating_set(
    n: usize,
    which: GenSet,
) -> Result<Vec<(String, cliffordtab::matgroup::PhaseMatrix)>> {
    Ok(match which {
        GenSet::Clifford => clifford_generators(n)?,
        GenSet::Pauli => pauli_generators(n)?,
    })
}

fn enumerate_group(n: usize, cap: usize, which: GenSet) -> Result<GroupTable> {
    // with the full generating set the group order is known in closed form;
    // refuse infeasible enumerations up front instead of grinding to the cap
    if matches!(which, GenSet::Clifford) {
        let order = group_order_formula(n);
        if order > Int::from(cap as u64) {
            bail!(
                "the rank-{n} group has {order} elements, exceeding the element cap {cap}; \
                 rank 3 and above are deliberately not enumerated (see `verify-c3`)"
            );
        }
    }
    eprintln!("enumerating the rank-{n} group (cap {cap})...");
    let gens = generating_set(n, which)?;
    let table = GroupTable::bfs_closure(n, &gens, cap)
        .with_context(|| format!("breadth-first closure at rank {n}"))?;
    eprintln!("  {} elements", table.len());
    Ok(table)
}

struct Pipeline {
    table: GroupTable,
    cd: ClassData,
}

fn class_pipeline(n: usize, cap: usize) -> Result<Pipeline> {
    let table = enumerate_group(n, cap, GenSet::Clifford)?;
    eprintln!("partitioning into conjugacy classes...");
    let cd = classes::conjugacy_classes(&table);
    eprintln!("  {} classes", cd.k);
    Ok(Pipeline { table, cd })
}

fn computed_chartable(p: &Pipeline, prime: Option<u64>) -> Result<CharacterTable> {
    let e = p.table.exponent();
    let order = Int::from(p.table.len());
    let prime = prime.unwrap_or_else(|| dixon_prime(e, &order));
    eprintln!("running the class-algebra character algorithm over GF({prime})...");
    Ok(dixon_character_table_with_prime(&p.table, &p.cd, prime)?)
}

fn embedded_for(n: usize) -> Result<(TableId, CharacterTable)> {
    let id = match n {
        1 => TableId::S4Chartab,
        2 => TableId::C2Chartab,
        3 => TableId::C3Chartab,
        _ => bail!("no embedded reference table for rank {n}"),
    };
    Ok((id, refdata::embedded_character_table(id)?))
}

fn anchors_for(n: usize, p: &Pipeline) -> Result<refdata::ClassAnchors> {
    match n {
        1 => Ok(refdata::s4_anchors(&p.table, &p.cd)?),
        2 => Ok(refdata::c2_anchors(&p.table, &p.cd)?),
        _ => bail!("no class anchors for rank {n}"),
    }
}

// ---------------- enumerate ----------------

fn cmd_enumerate(n: usize, cap: usize, which: GenSet, fmt: Format) -> Result<i32> {
    guard_rank(n, 8, "enumerate")?;
    let table = enumerate_group(n, cap, which)?;
    let levels = (0..table.len())
        .map(|i| table.level_of(i))
        .max()
        .unwrap_or(0);
    let exponent = table.exponent();
    match fmt {
        Format::Text => {
            println!("elements: {}", table.len());
            println!("generators: {}", table.generators().len());
            println!("max word length: {levels}");
            println!("exponent: {exponent}");
        }
        Format::Csv => {
            println!("elements,generators,max_word_length,exponent");
            println!(
                "{},{},{},{}",
                table.len(),
                table.generators().len(),
                levels,
                exponent
            );
        }
        Format::Json => println!(
            "{}",
            json_envelope(
                "enumerate",
                json!({
                    "n": n,
                    "elements": table.len(),
                    "generators": table.generators().len(),
                    "max_word_length": levels,
                    "exponent": exponent,
                })
            )
        ),
    }
    Ok(0)
}

// ---------------- classes ----------------

fn cmd_classes(n: usize, cap: usize, fmt: Format) -> Result<i32> {
    guard_rank(n, 2, "classes (full enumeration)")?;
    let p = class_pipeline(n, cap)?;
    let rows: Vec<(usize, u64, String, u32)> = (0..p.cd.k)
        .map(|c| {
            let rep = p.cd.rep_ids[c];
            (
                c + 1,
                p.cd.sizes[c],
                p.table.word_string_for(rep),
                p.table.order_of(rep),
            )
        })
        .collect();
    match fmt {
        Format::Text => {
            println!(
                "{:>5} {:>8} {:>6}  representative",
                "index", "size", "order"
            );
            for (i, size, word, order) in &rows {
                let shown = if word.is_empty() { "e" } else { word };
                println!("{i:>5} {size:>8} {order:>6}  {shown}");
            }
        }
        Format::Csv => {
            println!("index,size,representative,order");
            for (i, size, word, order) in &rows {
                println!("{i},{size},{word},{order}");
            }
        }
        Format::Json => {
            let data: Vec<_> = rows
                .iter()
                .map(|(i, size, word, order)| {
                    json!({"index": i, "size": size, "representative": word, "order": order})
                })
                .collect();
            println!(
                "{}",
                json_envelope("classes", json!({"n": n, "classes": data}))
            );
        }
    }
    Ok(0)
}

// ---------------- chartable ----------------

fn cmd_chartable(n: usize, prime: Option<u64>, cap: usize, fmt: Format) -> Result<i32> {
    if n == 3 {
        bail!(
            "rank 3 is not enumerated (92897280 elements); run `cliffordtab verify-c3` \
             to verify the embedded reference table instead"
        );
    }
    guard_rank(n, 2, "chartable")?;
    let p = class_pipeline(n, cap)?;
    let computed = computed_chartable(&p, prime)?;
    let (id, embedded) = embedded_for(n)?;
    let anchors = anchors_for(n, &p)?;
    let outcome = refdata::match_tables(&computed, &embedded, &anchors)?;
    let verdict = match &outcome {
        MatchOutcome::Match(_) => format!(
            "MATCH: computed table equals embedded reference table {id} up to row/column permutation"
        ),
        MatchOutcome::Mismatch(report) => format!("MISMATCH: {}", report.detail),
    };
    match fmt {
        Format::Text => {
            print_table_text(&computed);
            println!("{verdict}");
            if let MatchOutcome::Match(m) = &outcome {
                println!(
                    "row permutation (computed row per reference row): {:?}",
                    m.row_perm
                );
                println!(
                    "column permutation (computed class per reference column): {:?}",
                    m.col_perm
                );
            }
        }
        Format::Csv => {
            print!("{}", computed.to_csv());
            println!("# {verdict}");
        }
        Format::Json => {
            let perms = match &outcome {
                MatchOutcome::Match(m) => json!({"rows": m.row_perm, "columns": m.col_perm}),
                MatchOutcome::Mismatch(_) => serde_json::Value::Null,
            };
            println!(
                "{}",
                json_envelope(
                    "chartable",
                    json!({
                        "n": n,
                        "prime": match computed.source {
                            chartab::TableSource::Computed { prime } => prime,
                            _ => 0,
                        },
                        "degrees": computed.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                        "values": computed
                            .values
                            .iter()
                            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "class_sizes": computed.class_sizes,
                        "verdict": verdict,
                        "permutation": perms,
                    })
                )
            );
        }
    }
    Ok(if outcome.is_match() { 0 } else { 1 })
}

fn print_table_text(t: &CharacterTable) {
    let k = t.k();
    let cells: Vec<Vec<String>> = t
        .values
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(4);
    print!("{:>8} |", "sizes");
    for c in 0..k {
        print!(" {:>width$}", t.class_sizes[c]);
    }
    println!();
    println!("{:-<9}+{:-<w$}", "", "", w = (width + 1) * k);
    for (label, row) in t.row_labels.iter().zip(&cells) {
        print!("{label:>8} |");
        for v in row {
            print!(" {v:>width$}");
        }
        println!();
    }
}

// ---------------- decompose ----------------

fn adjoint_in_embedded_order(n: usize, cap: usize) -> Result<(ClassFunction, CharacterTable)> {
    let (_, embedded) = embedded_for(n)?;
    if n == 3 {
        // assembled from reference rows 1 and 10: no enumeration at rank 3
        let chi = repdecomp::adjoint_character_from_table(&embedded, &[0, 9]);
        return Ok((chi, embedded));
    }
    let p = class_pipeline(n, cap)?;
    let anchors = anchors_for(n, &p)?;
    let chi = repdecomp::adjoint_character(&p.table, &p.cd);
    let cols: Vec<usize> = anchors
        .col_to_class
        .iter()
        .map(|c| c.expect("rank 1/2 anchors pin every column"))
        .collect();
    Ok((chi.permuted(&cols, "embedded"), embedded))
}

fn printed_reference(
    n: usize,
    m: u32,
) -> Result<Option<(Vec<Int>, Vec<refdata::SparseDecompEntry>)>> {
    match (n, m) {
        (1, 1..=6) => {
            let rows = refdata::embedded_dense_decomp(TableId::C1Decomp)?;
            let v = rows.into_iter().find(|(mm, _)| *mm == m).unwrap().1;
            Ok(Some((v, Vec::new())))
        }
        (2, 1..=5) => {
            let rows = refdata::embedded_dense_decomp(TableId::C2Decomp)?;
            let v = rows.into_iter().find(|(mm, _)| *mm == m).unwrap().1;
            Ok(Some((v, Vec::new())))
        }
        (3, 1..=3) => Ok(Some(refdata::embedded_c3_decomp(m)?)),
        _ => Ok(None),
    }
}

fn cmd_decompose(n: usize, m: u32, cap: usize, fmt: Format) -> Result<i32> {
    guard_rank(n, 3, "decompose")?;
    if m < 1 {
        bail!("tensor power m must be at least 1");
    }
    if n == 3 && m > 5 {
        bail!("rank 3 decompositions are guarded to m <= 5");
    }
    let (chi, table) = adjoint_in_embedded_order(n, cap)?;
    let v = repdecomp::decompose_power(&chi, m, &table)?;
    let dim = v.total_dimension(&table);
    let expected_dim = Int::from(1u64 << (2 * n)).pow(m);
    let dim_ok = dim == expected_dim;
    let reference = printed_reference(n, m)?;
    let comparison = reference
        .as_ref()
        .map(|(printed, flagged)| refdata::compare_decomposition(&v, printed, flagged));
    let mut exit = if dim_ok { 0 } else { 1 };
    if let Some(cmp) = &comparison {
        if !cmp.matches_printed() {
            exit = 1;
        }
    }
    match fmt {
        Format::Text => {
            let terms: Vec<String> = v
                .multiplicities
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != Int::from(0))
                .map(|(i, c)| format!("{}*{}", c, table.row_labels[i]))
                .collect();
            println!("v_{m} = {}", terms.join(" + "));
            println!(
                "dimension check: sum v_i*deg_i = {dim}, expected {expected_dim} [{}]",
                if dim_ok { "ok" } else { "FAIL" }
            );
            match &comparison {
                None => println!("no printed reference vector for (n={n}, m={m})"),
                Some(cmp) => {
                    if cmp.matches_printed() {
                        println!("comparison vs printed v_{m}: exact match on all unflagged coefficients");
                    } else {
                        println!("comparison vs printed v_{m}: DIFFERS");
                        for (chi_idx, printed, computed) in &cmp.diffs {
                            println!("  chi_{chi_idx}: printed {printed}, computed {computed}");
                        }
                    }
                    for f in &cmp.flagged {
                        println!(
                            "  note[{}] chi_{}: printed reading {}, computed value {} (computed value is the oracle)",
                            f.note, f.chi, f.printed, f.computed
                        );
                    }
                }
            }
        }
        Format::Csv => {
            println!("m,chi,multiplicity");
            for (i, c) in v.multiplicities.iter().enumerate() {
                println!("{m},{},{}", i + 1, c);
            }
        }
        Format::Json => {
            let flagged = comparison
                .as_ref()
                .map(|cmp| {
                    cmp.flagged
                        .iter()
                        .map(|f| {
                            json!({
                                "chi": f.chi,
                                "printed": f.printed.to_string(),
                                "computed": f.computed.to_string(),
                                "note": f.note,
                            })
                        })
                        .collect::<Vec<_>>()
                })
                .unwrap_or_default();
            println!(
                "{}",
                json_envelope(
                    "decompose",
                    json!({
                        "n": n,
                        "m": m,
                        "multiplicities": v.multiplicities.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "dimension": dim.to_string(),
                        "dimension_ok": dim_ok,
                        "matches_printed": comparison.as_ref().map(|c| c.matches_printed()),
                        "flagged": flagged,
                    })
                )
            );
        }
    }
    Ok(exit)
}

// ---------------- abelianize ----------------

fn cmd_abelianize(n: usize, fmt: Format) -> Result<i32> {
    guard_rank(n, 32, "abelianize")?;
    let ab = presentation::abelianization(n);
    let factors: Vec<String> = ab.invariant_factors.iter().map(Int::to_string).collect();
    match fmt {
        Format::Text => {
            println!("invariant factors: [{}]", factors.join(", "));
            println!("free rank: {}", ab.free_rank);
            match ab.order() {
                Some(order) => println!("abelianization order: {order}"),
                None => println!("abelianization order: infinite"),
            }
        }
        Format::Csv => {
            println!("n,invariant_factors,free_rank");
            println!("{n},{},{}", factors.join(" "), ab.free_rank);
        }
        Format::Json => println!(
            "{}",
            json_envelope(
                "abelianize",
                json!({
                    "n": n,
                    "invariant_factors": factors,
                    "free_rank": ab.free_rank,
                    "order": ab.order().map(|o| o.to_string()),
                })
            )
        ),
    }
    Ok(0)
}

// ---------------- verification reports ----------------

#[derive(Default)]
struct Report {
    items: Vec<(String, bool, String)>,
}

impl Report {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.items.push((name.to_string(), passed, detail.into()));
    }

    fn all_passed(&self) -> bool {
        self.items.iter().all(|(_, p, _)| *p)
    }

    fn emit(&self, command: &str, fmt: Format) {
        match fmt {
            Format::Text => {
                for (name, passed, detail) in &self.items {
                    println!(
                        "[{}] {name}: {detail}",
                        if *passed { "PASS" } else { "FAIL" }
                    );
                }
                println!(
                    "{}: {} of {} checks passed",
                    if self.all_passed() { "OK" } else { "FAILED" },
                    self.items.iter().filter(|(_, p, _)| *p).count(),
                    self.items.len()
                );
            }
            Format::Csv => {
                println!("check,passed,detail");
                for (name, passed, detail) in &self.items {
                    println!("{name},{passed},{}", detail.replace(',', ";"));
                }
            }
            Format::Json => {
                let checks: Vec<_> = self
                    .items
                    .iter()
                    .map(|(name, passed, detail)| {
                        json!({"name": name, "passed": passed, "detail": detail})
                    })
                    .collect();
                println!(
                    "{}",
                    json_envelope(
                        command,
                        json!({"checks": checks, "all_passed": self.all_passed()})
                    )
                );
            }
        }
    }
}

fn expected_abelianization(n: usize) -> Vec<Int> {
    if n <= 2 {
        vec![Int::from(2)]
    } else {
        vec![]
    }
}

fn check_abelianization(report: &mut Report, n: usize) {
    let ab = presentation::abelianization(n);
    let want = expected_abelianization(n);
    report.check(
        "abelianization",
        ab.invariant_factors == want && ab.free_rank == 0,
        format!(
            "invariant factors {:?}, free rank {}",
            ab.invariant_factors
                .iter()
                .map(Int::to_string)
                .collect::<Vec<_>>(),
            ab.free_rank
        ),
    );
}

fn check_relators(report: &mut Report, n: usize) -> Result<()> {
    eprintln!("verifying the rank-{n} relators through the matrix assignment...");
    let rel = presentation::verify_relators(n)?;
    let failures = rel.failures();
    report.check(
        "relators",
        rel.all_passed(),
        format!(
            "{} relators evaluated, {} failures{}",
            rel.checks.len(),
            failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(" ({})", failures[0].rule)
            }
        ),
    );
    Ok(())
}

fn check_decompositions(
    report: &mut Report,
    n: usize,
    chi: &ClassFunction,
    table: &CharacterTable,
) -> Result<()> {
    let max_m = match n {
        1 => 6,
        2 => 5,
        _ => 3,
    };
    let mut vectors: Vec<DecompositionVector> = Vec::new();
    for m in 1..=max_m {
        let v = repdecomp::decompose_power(chi, m, table)?;
        let dim_ok = v.total_dimension(table) == Int::from(1u64 << (2 * n)).pow(m);
        let (printed, flagged) = printed_reference(n, m)?
            .ok_or_else(|| anyhow!("missing printed reference for (n={n}, m={m})"))?;
        let cmp = refdata::compare_decomposition(&v, &printed, &flagged);
        let notes: Vec<String> = cmp
            .flagged
            .iter()
            .map(|f| {
                format!(
                    "chi_{} printed {} computed {} [{}]",
                    f.chi, f.printed, f.computed, f.note
                )
            })
            .collect();
        report.check(
            &format!("decomposition v_{m}"),
            dim_ok && cmp.matches_printed(),
            if notes.is_empty() {
                format!(
                    "matches printed vector; dimension {}",
                    v.total_dimension(table)
                )
            } else {
                format!(
                    "matches printed vector up to noted cells: {}",
                    notes.join("; ")
                )
            },
        );
        vectors.push(v);
    }
    if n == 1 {
        let ok = vectors
            .windows(2)
            .all(|w| repdecomp::c1_recursion_check(&w[0].multiplicities, &w[1].multiplicities));
        report.check(
            "recursion",
            ok,
            "v_{m+1} follows the rank-1 recursion for m = 1..5",
        );
    }
    report.check(
        "faithfulness",
        repdecomp::faithfulness_check(chi),
        "conjugation character attains its degree only on the identity class",
    );
    Ok(())
}

fn verify_small_rank(report: &mut Report, n: usize, cap: usize) -> Result<()> {
    check_relators(report, n)?;
    check_abelianization(report, n);
    let p = class_pipeline(n, cap)?;
    let computed = computed_chartable(&p, None)?;
    let (id, embedded) = embedded_for(n)?;
    let anchors = anchors_for(n, &p)?;
    let outcome = refdata::match_tables(&computed, &embedded, &anchors)?;
    report.check(
        "character table",
        outcome.is_match(),
        match &outcome {
            MatchOutcome::Match(_) => format!("matches embedded reference table {id}"),
            MatchOutcome::Mismatch(rep) => rep.detail.clone(),
        },
    );
    report.check(
        "integer valued",
        computed.integer_valued(),
        "every computed character value is a rational integer",
    );
    let subs = chartab::normal_subgroups(&computed);
    let proper: Vec<String> = subs
        .iter()
        .filter(|r| r.is_proper_nontrivial)
        .map(|r| r.order.to_string())
        .collect();
    let want: Vec<&str> = if n == 1 {
        vec!["4", "12"]
    } else {
        vec!["16", "5760"]
    };
    report.check(
        "normal subgroups",
        proper == want,
        format!("proper nontrivial orders {proper:?}"),
    );
    if n == 2 {
        // the order-16 subgroup is exactly the classes of the Pauli closure
        let pauli = GroupTable::bfs_closure(2, &pauli_generators(2)?, cap)?;
        let pauli_classes: BTreeSet<usize> = (0..pauli.len())
            .map(|id| {
                let el = pauli.element(id).clone();
                p.cd.class_of[p.table.id_of(&el).expect("pauli group lies inside")]
            })
            .collect();
        let record = subs
            .iter()
            .find(|r| r.order == Int::from(16))
            .expect("order-16 subgroup present");
        report.check(
            "pauli subgroup",
            record.classes == pauli_classes && pauli.len() == 16,
            format!(
                "closure of x1,y1,x2,y2 has {} elements over classes {:?}",
                pauli.len(),
                pauli_classes
            ),
        );
        let sgn = presentation::sgn_character(2)?;
        let linear_rows: Vec<usize> = (0..computed.k())
            .filter(|&i| computed.degree(i) == Int::from(1))
            .collect();
        let minus_one = cliffordtab::cyclo::Cyclotomic::from_int(-1);
        let sgn_row = linear_rows.iter().copied().find(|&i| {
            ["h1", "p1", "z1"].iter().all(|wd| {
                let c = classes::class_of_word(&Word::parse(wd).unwrap(), &p.table, &p.cd).unwrap();
                computed.values[i][c] == minus_one
            })
        });
        report.check(
            "sign character",
            linear_rows.len() == 2 && sgn_row.is_some() && sgn.values().all(|&v| v == -1),
            format!(
                "{} degree-1 rows; sign row takes -1 on the classes of h1, p1, z1",
                linear_rows.len()
            ),
        );
    }
    let chi = repdecomp::adjoint_character(&p.table, &p.cd);
    let cols: Vec<usize> = anchors
        .col_to_class
        .iter()
        .map(|c| c.expect("anchors pin every column"))
        .collect();
    let chi_embedded = chi.permuted(&cols, "embedded");
    if n == 2 {
        let from_rows = repdecomp::adjoint_character_from_table(&embedded, &[0, 13]);
        report.check(
            "conjugation character",
            chi_embedded.values == from_rows.values,
            "matrix-computed character equals reference rows chi_1 + chi_14",
        );
    }
    check_decompositions(report, n, &chi_embedded, &embedded)?;
    Ok(())
}

fn verify_rank_three(report: &mut Report) -> Result<()> {
    check_relators(report, 3)?;
    check_abelianization(report, 3);
    let sgn = presentation::sgn_character(3);
    report.check(
        "sign character rejected",
        matches!(sgn, Err(cliffordtab::Error::NoSignCharacter { .. })),
        sgn.err()
            .map(|e| e.to_string())
            .unwrap_or_default()
            .to_string(),
    );
    let c3 = refdata::verify_embedded_c3()?;
    for check in &c3.checks {
        report.check(
            &format!("embedded: {}", check.name),
            check.passed,
            check.detail.clone(),
        );
    }
    let (chi, table) = adjoint_in_embedded_order(3, DEFAULT_ELEMENT_CAP)?;
    check_decompositions(report, 3, &chi, &table)?;
    Ok(())
}

fn cmd_verify(n: usize, abelianization_only: bool, cap: usize, fmt: Format) -> Result<i32> {
    let mut report = Report::default();
    if abelianization_only {
        guard_rank(n, 32, "verify --abelianization-only")?;
        check_abelianization(&mut report, n);
    } else {
        guard_rank(n, 3, "verify")?;
        match n {
            1 | 2 => verify_small_rank(&mut report, n, cap)?,
            3 => verify_rank_three(&mut report)?,
            _ => unreachable!(),
        }
    }
    report.emit("verify", fmt);
    Ok(if report.all_passed() { 0 } else { 1 })
}

// ---------------- normal subgroups ----------------

fn cmd_normal_subgroups(n: usize, cap: usize, fmt: Format) -> Result<i32> {
    guard_rank(n, 3, "normal-subgroups")?;
    let table = if n == 3 {
        refdata::embedded_character_table(TableId::C3Chartab)?
    } else {
        let p = class_pipeline(n, cap)?;
        computed_chartable(&p, None)?
    };
    let subs = chartab::normal_subgroups(&table);
    match fmt {
        Format::Text => {
            println!("{:>16} {:>8}  classes", "order", "proper");
            for r in &subs {
                println!(
                    "{:>16} {:>8}  {:?}",
                    r.order.to_string(),
                    r.is_proper_nontrivial,
                    r.classes.iter().map(|c| c + 1).collect::<Vec<_>>()
                );
            }
        }
        Format::Csv => {
            println!("order,is_proper_nontrivial,classes");
            for r in &subs {
                println!(
                    "{},{},{}",
                    r.order,
                    r.is_proper_nontrivial,
                    r.classes
                        .iter()
                        .map(|c| (c + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
        }
        Format::Json => {
            let data: Vec<_> = subs
                .iter()
                .map(|r| {
                    json!({
                        "order": r.order.to_string(),
                        "is_proper_nontrivial": r.is_proper_nontrivial,
                        "classes": r.classes.iter().map(|c| c + 1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!(
                "{}",
                json_envelope("normal-subgroups", json!({"n": n, "subgroups": data}))
            );
        }
    }
    Ok(0)
}

// ---------------- presentation export ----------------

fn cmd_export_presentation(n: usize, gap: bool) -> Result<i32> {
    guard_rank(n, 32, "export-presentation")?;
    if gap {
        print!("{}", presentation::gap_fragment(n)?);
    } else {
        print!("{}", presentation::presentation_text(n));
    }
    Ok(0)
}

// ---------------- verify-c3 ----------------

fn cmd_verify_c3(fmt: Format) -> Result<i32> {
    let c3 = refdata::verify_embedded_c3()?;
    let mut report = Report::default();
    for check in &c3.checks {
        report.check(&check.name, check.passed, check.detail.clone());
    }
    report.emit("verify-c3", fmt);
    Ok(if report.all_passed() { 0 } else { 1 })
}
