//! `sqz`: enumeration and order analysis of square-zero strictly upper
//! triangular partial permutation matrices, plus exact polynomial-matrix
//! instance checking.
//!
//! Exit codes: 0 success/verified, 1 verified violation or FAIL verdict
//! (with a witness on the output), 2 input error.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sqz_core::checker::{
    compositions_with_bounds, verify_instance, Classification, ConjectureInstance, Mode,
};
use sqz_core::error::Error;
use sqz_core::involution::{enumerate_rp, Involution};
use sqz_core::moves::MoveKind;
use sqz_core::polymatrix::{load_matrix_json, DynMatrix, PolyMatrix};
use sqz_core::poset::{
    build_order, compare_with_golden, duality_classes, ExportFormat, GoldenFigure,
};
use sqz_core::rank_profile::ModMatrix;

#[derive(Parser)]
#[command(
    name = "sqz",
    version,
    about = "square-zero matrix order and verification toolkit"
)]
struct Cli {
    /// Output format; dot applies to poset export only
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MoveSet {
    /// type III only
    Iii,
    /// types III and V
    #[value(name = "iii+v")]
    IiiV,
}

impl MoveSet {
    fn kinds(self) -> BTreeSet<MoveKind> {
        match self {
            MoveSet::Iii => [MoveKind::III].into_iter().collect(),
            MoveSet::IiiV => [MoveKind::III, MoveKind::V].into_iter().collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Exhaustive,
    Sample,
}

#[derive(Subcommand)]
enum Command {
    /// Involution enumeration and order analysis
    #[command(subcommand)]
    Rp(RpCmd),
    /// Polynomial matrix operations
    #[command(subcommand)]
    Mat(MatCmd),
    /// Flag type utilities
    #[command(subcommand)]
    Flags(FlagsCmd),
}

#[derive(Subcommand)]
enum RpCmd {
    /// List all fixed-point-free involutions on {1..N}
    Enum(NArg),
    /// Build the move order and export its Hasse diagram
    Poset {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        moves: MoveSet,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Maximal elements (computed under both move sets)
    Maximal {
        #[arg(long)]
        n: usize,
        /// Also group the maximal elements into anti-diagonal dual classes
        #[arg(long)]
        dual_classes: bool,
    },
    /// Level partition of the type-III order
    Levels(NArg),
    /// Unique maximal element above a given involution (type-III order)
    Ancestor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: String,
    },
    /// Block type of an involution
    Type {
        #[arg(long)]
        sigma: String,
    },
    /// Anti-diagonal dual of an involution
    Dual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: String,
    },
    /// Recompute the N=8 type-III order and compare against a golden file
    #[command(name = "verify-figure1")]
    VerifyFigure1 {
        #[arg(long)]
        golden: String,
    },
}

#[derive(Args)]
struct NArg {
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum MatCmd {
    /// Verify the six instance conditions and the boundary inequality
    Check {
        #[arg(long)]
        file: String,
        #[arg(long, value_enum, default_value_t = CheckMode::Sample)]
        mode: CheckMode,
        /// Sample size for sampled rank checks
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Unique partial permutation representative of a scalar matrix orbit
    #[command(name = "orbit-rep")]
    OrbitRep {
        #[arg(long)]
        file: String,
    },
    /// Exact minor of a polynomial matrix
    Minor {
        #[arg(long)]
        file: String,
        /// Comma-separated 1-based row indices
        #[arg(long)]
        rows: String,
        /// Comma-separated 1-based column indices
        #[arg(long)]
        cols: String,
    },
}

#[derive(Subcommand)]
enum FlagsCmd {
    /// Compositions (t_0..t_l) of N with boundary parts >= 1, interior >= 2
    Compositions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::Unsupported(_) => ExitCode::from(2),
                Error::Invariant(_) => ExitCode::from(1),
            }
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn require_not_dot(format: OutputFormat) -> Result<(), Error> {
    if format == OutputFormat::Dot {
        return Err(Error::input("dot output is only available for `rp poset`"));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Rp(cmd) => run_rp(cli, cmd),
        Command::Mat(cmd) => run_mat(cli, cmd),
        Command::Flags(cmd) => run_flags(cli, cmd),
    }
}

fn run_rp(cli: &Cli, cmd: &RpCmd) -> Result<u8, Error> {
    match cmd {
        RpCmd::Enum(args) => {
            require_not_dot(cli.format)?;
            let all = enumerate_rp(args.n)?;
            let strings: Vec<String> = all.iter().map(|s| s.to_string()).collect();
            match cli.format {
                OutputFormat::Json => {
                    print_json(&json!({"count": strings.len(), "involutions": strings}));
                }
                _ => {
                    for s in &strings {
                        println!("{s}");
                    }
                }
            }
            Ok(0)
        }
        RpCmd::Poset { n, moves, out } => {
            let dag = build_order(*n, &moves.kinds())?;
            let content = match cli.format {
                OutputFormat::Dot => dag.export_hasse(ExportFormat::Dot),
                OutputFormat::Json => dag.export_hasse(ExportFormat::Json),
                OutputFormat::Text => format!(
                    "nodes={} covers={} level_sizes={:?}",
                    dag.node_count(),
                    dag.cover_count(),
                    dag.level_partition()
                        .iter()
                        .map(|l| l.len())
                        .collect::<Vec<_>>()
                ),
            };
            match out {
                Some(path) => fs::write(path, content + "\n")
                    .map_err(|e| Error::input(format!("cannot write {path}: {e}")))?,
                None => println!("{content}"),
            }
            Ok(0)
        }
        RpCmd::Maximal { n, dual_classes } => {
            require_not_dot(cli.format)?;
            let via_iii = build_order(*n, &MoveSet::Iii.kinds())?.maximal_elements();
            let via_both = build_order(*n, &MoveSet::IiiV.kinds())?.maximal_elements();
            let agree = via_iii == via_both;
            let maximal: Vec<String> = via_both.iter().map(|m| m.to_string()).collect();
            let classes: Option<Vec<Vec<String>>> = dual_classes.then(|| {
                duality_classes(&via_both)
                    .iter()
                    .map(|c| c.iter().map(|m| m.to_string()).collect())
                    .collect()
            });
            match cli.format {
                OutputFormat::Json => {
                    let mut value = json!({
                        "count": maximal.len(),
                        "maximal": maximal,
                        "move_sets_agree": agree,
                    });
                    if let Some(classes) = &classes {
                        value["classes"] = json!(classes);
                        value["class_count"] = json!(classes.len());
                    }
                    print_json(&value);
                }
                _ => {
                    println!("maximal ({}):", maximal.len());
                    for m in &maximal {
                        println!("  {m}");
                    }
                    if let Some(classes) = &classes {
                        println!("dual classes ({}):", classes.len());
                        for c in classes {
                            println!("  {}", c.join(" | "));
                        }
                    }
                    if !agree {
                        println!("warning: move sets {{III}} and {{III,V}} disagree");
                    }
                }
            }
            if agree {
                Ok(0)
            } else {
                Ok(1)
            }
        }
        RpCmd::Levels(args) => {
            require_not_dot(cli.format)?;
            let dag = build_order(args.n, &MoveSet::Iii.kinds())?;
            let levels = dag.level_partition();
            match cli.format {
                OutputFormat::Json => {
                    let level_strings: Vec<Vec<String>> = levels
                        .iter()
                        .map(|l| l.iter().map(|s| s.to_string()).collect())
                        .collect();
                    let sizes: Vec<usize> = levels.iter().map(|l| l.len()).collect();
                    print_json(&json!({"sizes": sizes, "levels": level_strings}));
                }
                _ => {
                    for (k, level) in levels.iter().enumerate() {
                        let line: Vec<String> = level.iter().map(|s| s.to_string()).collect();
                        println!("L{} ({}): {}", k + 1, level.len(), line.join(" "));
                    }
                }
            }
            Ok(0)
        }
        RpCmd::Ancestor { n, sigma } => {
            require_not_dot(cli.format)?;
            let sigma = Involution::parse(*n, sigma)?;
            let dag = build_order(*n, &MoveSet::Iii.kinds())?;
            let map = dag.unique_maximal_ancestor()?;
            let ancestor = map
                .get(&sigma)
                .ok_or_else(|| Error::input(format!("{sigma} is not in the order")))?;
            match cli.format {
                OutputFormat::Json => print_json(&json!({
                    "sigma": sigma.to_string(),
                    "ancestor": ancestor.to_string(),
                })),
                _ => println!("{ancestor}"),
            }
            Ok(0)
        }
        RpCmd::Type { sigma } => {
            require_not_dot(cli.format)?;
            let sigma = Involution::parse_full_rank(sigma)?;
            let block_type = sigma.block_type();
            let (c, r) = sigma.boundary_counts();
            match cli.format {
                OutputFormat::Json => print_json(&json!({
                    "sigma": sigma.to_string(),
                    "type": block_type.parts(),
                    "l": block_type.fold_count(),
                    "C": c,
                    "R": r,
                })),
                _ => println!("{block_type}"),
            }
            Ok(0)
        }
        RpCmd::Dual { n, sigma } => {
            require_not_dot(cli.format)?;
            let sigma = Involution::parse(*n, sigma)?;
            let dual = sigma.anti_diagonal_dual();
            match cli.format {
                OutputFormat::Json => print_json(&json!({
                    "sigma": sigma.to_string(),
                    "dual": dual.to_string(),
                })),
                _ => println!("{dual}"),
            }
            Ok(0)
        }
        RpCmd::VerifyFigure1 { golden } => {
            require_not_dot(cli.format)?;
            let text = fs::read_to_string(golden)
                .map_err(|e| Error::input(format!("cannot read {golden}: {e}")))?;
            let golden = GoldenFigure::from_json(&text)?;
            let dag = build_order(8, &MoveSet::Iii.kinds())?;
            let cmp = compare_with_golden(&dag, &golden)?;
            let verdict = if cmp.hard_pass() {
                "VERIFIED"
            } else {
                "FAILED"
            };
            match cli.format {
                OutputFormat::Json => print_json(&json!({
                    "computed_level_sizes": cmp.computed_level_sizes,
                    "golden_level_sizes": cmp.golden_level_sizes,
                    "level_sets_match": cmp.level_sets_match,
                    "level_mismatches": cmp.level_mismatches,
                    "maximal_matches": cmp.maximal_matches,
                    "ancestor_map_total": cmp.ancestor_map_total,
                    "edges_only_computed": cmp.edges_only_computed,
                    "edges_only_golden": cmp.edges_only_golden,
                    "verdict": verdict,
                })),
                _ => {
                    println!(
                        "level sizes: computed {:?}, golden {:?}",
                        cmp.computed_level_sizes, cmp.golden_level_sizes
                    );
                    println!(
                        "level sets: {}",
                        if cmp.level_sets_match {
                            "OK"
                        } else {
                            "MISMATCH"
                        }
                    );
                    for m in &cmp.level_mismatches {
                        println!("  {m}");
                    }
                    println!(
                        "maximal set: {}",
                        if cmp.maximal_matches {
                            "OK"
                        } else {
                            "MISMATCH"
                        }
                    );
                    println!(
                        "unique maximal ancestor map: {}",
                        if cmp.ancestor_map_total {
                            "total"
                        } else {
                            "VIOLATED"
                        }
                    );
                    if let Some(err) = &cmp.ancestor_error {
                        println!("  {err}");
                    }
                    println!(
                        "edge diff (diagnostic): {} only in computed covers, {} only in golden",
                        cmp.edges_only_computed.len(),
                        cmp.edges_only_golden.len()
                    );
                    for (a, b) in &cmp.edges_only_golden {
                        println!("  missing cover: {a} -> {b}");
                    }
                    println!("verdict: {verdict}");
                }
            }
            Ok(if cmp.hard_pass() { 0 } else { 1 })
        }
    }
}

fn run_mat(cli: &Cli, cmd: &MatCmd) -> Result<u8, Error> {
    match cmd {
        MatCmd::Check {
            file,
            mode,
            samples,
        } => {
            require_not_dot(cli.format)?;
            let loaded = load_file(file)?;
            let mode = match mode {
                CheckMode::Exhaustive => Mode::Exhaustive,
                CheckMode::Sample => Mode::Sample {
                    points: *samples,
                    seed: cli.seed,
                },
            };
            let report = match loaded.matrix {
                DynMatrix::Q(m) => {
                    verify_instance(&ConjectureInstance::new(m, loaded.degree_tuple)?, mode)?
                }
                DynMatrix::Fp(m) => {
                    verify_instance(&ConjectureInstance::new(m, loaded.degree_tuple)?, mode)?
                }
            };
            let classification = report.conditions.classification;
            match cli.format {
                OutputFormat::Json => print_json(&report.to_json()),
                _ => {
                    let value = report.to_json();
                    println!("classification: {}", classification.as_str());
                    println!("conditions: {}", value["conditions"]);
                    println!(
                        "C={} R={} inequality: {} >= {} is {}",
                        report.conditions.col_zero_prefix,
                        report.conditions.row_zero_suffix,
                        report.conditions.inequality.lhs,
                        report.conditions.inequality.rhs,
                        report.conditions.inequality.holds
                    );
                    if let Some(replay) = value.get("replay") {
                        println!("replay: {replay}");
                    }
                }
            }
            Ok(match classification {
                Classification::Consistent => 0,
                _ => 1,
            })
        }
        MatCmd::OrbitRep { file } => {
            require_not_dot(cli.format)?;
            let loaded = load_file(file)?;
            let scalar = match loaded.matrix {
                DynMatrix::Fp(m) => ModMatrix::from_constant_poly_matrix(&m)?,
                DynMatrix::Q(_) => {
                    return Err(Error::unsupported(
                        "orbit representatives are computed over prime fields",
                    ))
                }
            };
            let rep = scalar.orbit_representative()?;
            match cli.format {
                OutputFormat::Json => print_json(
                    &serde_json::to_value(&rep).map_err(|e| Error::invariant(e.to_string()))?,
                ),
                _ => {
                    let ones: Vec<String> = rep
                        .ones
                        .iter()
                        .map(|&(r, c)| format!("({r},{c})"))
                        .collect();
                    println!("n={} ones: {}", rep.n, ones.join(" "));
                }
            }
            Ok(0)
        }
        MatCmd::Minor { file, rows, cols } => {
            require_not_dot(cli.format)?;
            let loaded = load_file(file)?;
            let rows = parse_index_list(rows)?;
            let cols = parse_index_list(cols)?;
            let rendered = match loaded.matrix {
                DynMatrix::Q(m) => render_minor(&m, &rows, &cols)?,
                DynMatrix::Fp(m) => render_minor(&m, &rows, &cols)?,
            };
            match cli.format {
                OutputFormat::Json => print_json(&json!({"minor": rendered})),
                _ => println!("{rendered}"),
            }
            Ok(0)
        }
    }
}

fn render_minor<K: sqz_core::field::Field>(
    m: &PolyMatrix<K>,
    rows: &[usize],
    cols: &[usize],
) -> Result<String, Error> {
    Ok(m.minor(rows, cols)?.render(m.field()))
}

fn run_flags(cli: &Cli, cmd: &FlagsCmd) -> Result<u8, Error> {
    match cmd {
        FlagsCmd::Compositions { n, l } => {
            require_not_dot(cli.format)?;
            let list = compositions_with_bounds(*n, *l)?;
            match cli.format {
                OutputFormat::Json => {
                    let parts: Vec<&[usize]> = list.iter().map(|t| t.parts()).collect();
                    print_json(&json!(parts));
                }
                _ => {
                    for t in &list {
                        println!("{t}");
                    }
                }
            }
            Ok(0)
        }
    }
}

fn load_file(path: &str) -> Result<sqz_core::polymatrix::LoadedMatrix, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
    load_matrix_json(&text)
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::input(format!("bad index '{part}'")))
        })
        .collect()
}
