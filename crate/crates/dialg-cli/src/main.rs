//! Command-line front end: parsing, KP/BSO transforms, basis dumps,
//! consequence checks, and the named verification suite.
//!
//! Exit codes: 0 on success with all-true verdicts, 1 when any verdict is
//! false, 2 on usage or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dialg::bso::bso_family;
use dialg::checker::{
    self, are_equivalent_sets, is_consequence, module_matrix, named_verifications, run_check,
    CheckReport, Verdict,
};
use dialg::kp::kp_transform;
use dialg::parser::{self, IdentityFile};
use dialg::poly::{Identity, MAX_DEGREE};
use dialg::spaces::{AmbientSpace, MonomialBasis};
use dialg::variety::{preset, PRESET_NAMES};

#[derive(Parser)]
#[command(
    name = "dialg",
    about = "Polynomial identities in nonassociative algebras and dialgebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Plain,
    Dialgebra,
    Ra,
}

impl From<SpaceArg> for AmbientSpace {
    fn from(s: SpaceArg) -> AmbientSpace {
        match s {
            SpaceArg::Plain => AmbientSpace::Plain,
            SpaceArg::Dialgebra => AmbientSpace::Dialgebra,
            SpaceArg::Ra => AmbientSpace::RightAnticommutative,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse an identity file and reprint it with macros expanded
    Parse {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply the KP transform to every identity in a file
    Kp {
        file: PathBuf,
        /// Central variable name, or `all`
        #[arg(long, default_value = "all")]
        central: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply the BSO expansion to every identity in a file
    Bso {
        file: PathBuf,
        /// Argument index (1-based), or `all`
        #[arg(long, default_value = "all")]
        center: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the ordered monomial basis of a multilinear component
    Basis {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a target identity follows from generators
    CheckConsequence(ConsequenceArgs),
    /// Decide whether two identities generate the same module
    CheckEquivalence(EquivalenceArgs),
    /// Run named verifications (`all` for every one)
    Verify {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ConsequenceArgs {
    file: PathBuf,
    /// Label of the target identity
    #[arg(long)]
    target: String,
    /// Comma-separated generator labels; defaults to every other identity
    #[arg(long)]
    generators: Option<String>,
    /// Variety preset supplying ambient space and extra generators
    #[arg(long)]
    variety: Option<String>,
    #[arg(long, value_enum)]
    space: Option<SpaceArg>,
    #[arg(long)]
    degree: usize,
    /// Write the generator module matrix as JSON
    #[arg(long)]
    dump_matrix: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EquivalenceArgs {
    file: PathBuf,
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_true) => {
            if all_true {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            if std::env::args().any(|a| a == "--json") {
                eprintln!("{}", json!({ "schema": 1, "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

fn degree_cap() -> usize {
    std::env::var("DIALG_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(MAX_DEGREE))
        .unwrap_or(MAX_DEGREE)
}

fn check_degree(degree: usize) -> Result<(), String> {
    let cap = degree_cap();
    if degree < 2 || degree > cap {
        return Err(format!("degree must be within 2..={cap}"));
    }
    Ok(())
}

fn load(file: &PathBuf) -> Result<IdentityFile, String> {
    let text = fs::read_to_string(file)
        .map_err(|e| format!("no such file or unreadable: {}: {e}", file.display()))?;
    parser::parse(&text).map_err(|e| e.to_string())
}

fn find_identity(file: &IdentityFile, label: &str) -> Result<Identity, String> {
    if !file.entries.iter().any(|e| e.label == label) {
        return Err(format!("no identity labeled `{label}`"));
    }
    file.identity(label).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Parse { file, json } => {
            let parsed = load(&file)?;
            if json {
                let entries: Result<Vec<serde_json::Value>, String> = parsed
                    .entries
                    .iter()
                    .map(|e| {
                        let id = find_identity(&parsed, &e.label)?;
                        Ok(identity_json(&id, parsed.signature))
                    })
                    .collect();
                let doc = json!({
                    "schema": 1,
                    "signature": parsed.signature.to_string(),
                    "identities": entries?,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print!(
                    "{}",
                    parser::print_file(&parsed).map_err(|e| e.to_string())?
                );
            }
            Ok(true)
        }
        Command::Kp {
            file,
            central,
            json,
        } => {
            let parsed = load(&file)?;
            let mut docs = Vec::new();
            for entry in &parsed.entries {
                let id = find_identity(&parsed, &entry.label)?;
                let result = kp_transform(&id).map_err(|e| format!("{}: {e}", entry.label))?;
                let selected: Vec<_> = result
                    .kp_identities
                    .iter()
                    .filter(|o| central == "all" || o.central.name() == central)
                    .collect();
                if selected.is_empty() {
                    return Err(format!(
                        "{}: no central variable named `{central}`",
                        entry.label
                    ));
                }
                if json {
                    docs.push(json!({
                        "label": entry.label,
                        "zero_identities": result
                            .zero_identities
                            .iter()
                            .map(|z| z.to_string())
                            .collect::<Vec<_>>(),
                        "kp_identities": selected
                            .iter()
                            .map(|o| json!({
                                "central": o.central.name(),
                                "identity": parser::print(&o.identity.poly),
                                "duplicate_of": o.duplicate_of,
                            }))
                            .collect::<Vec<_>>(),
                    }));
                } else {
                    println!("{}:", entry.label);
                    for z in &result.zero_identities {
                        println!("  0-identity: {z}");
                    }
                    for o in selected {
                        let dup = match o.duplicate_of {
                            Some(i) => format!("  (renames output {})", i + 1),
                            None => String::new(),
                        };
                        println!(
                            "  central {}: {} = 0{dup}",
                            o.central.name(),
                            parser::print(&o.identity.poly)
                        );
                    }
                }
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"schema": 1, "kp": docs})).unwrap()
                );
            }
            Ok(true)
        }
        Command::Bso { file, center, json } => {
            let parsed = load(&file)?;
            let mut docs = Vec::new();
            for entry in &parsed.entries {
                let id = find_identity(&parsed, &entry.label)?;
                let family = bso_family(&id.poly).map_err(|e| format!("{}: {e}", entry.label))?;
                let n = family.components.len();
                let wanted: Vec<usize> = if center == "all" {
                    (1..=n).collect()
                } else {
                    let i: usize = center
                        .parse()
                        .map_err(|_| "--center must be an index or `all`".to_string())?;
                    if i == 0 || i > n {
                        return Err(format!("--center {i} out of range 1..={n}"));
                    }
                    vec![i]
                };
                if json {
                    docs.push(json!({
                        "label": entry.label,
                        "components": wanted.iter().map(|&i| json!({
                            "center": i,
                            "operation": parser::print(&family.components[i - 1]),
                            "renames": family.relations[i - 1].as_ref().map(|r| json!({
                                "component": r.source + 1,
                                "permutation": r.perm,
                                "scale": r.scale.to_string(),
                            })),
                        })).collect::<Vec<_>>(),
                    }));
                } else {
                    println!("{}:", entry.label);
                    for &i in &wanted {
                        let rel = match &family.relations[i - 1] {
                            Some(r) => format!(
                                "  (= {} * component {} under slot permutation {:?})",
                                r.scale,
                                r.source + 1,
                                r.perm.iter().map(|p| p + 1).collect::<Vec<_>>()
                            ),
                            None => String::new(),
                        };
                        println!(
                            "  center {i}: {}{rel}",
                            parser::print(&family.components[i - 1])
                        );
                    }
                }
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"schema": 1, "bso": docs})).unwrap()
                );
            }
            Ok(true)
        }
        Command::Basis {
            degree,
            space,
            json,
        } => {
            check_degree(degree)?;
            let basis = MonomialBasis::new(space.into(), degree).map_err(|e| e.to_string())?;
            if json {
                let doc = json!({
                    "schema": 1,
                    "space": AmbientSpace::from(space).name(),
                    "degree": degree,
                    "dimension": basis.len(),
                    "monomials": basis
                        .monomials()
                        .iter()
                        .map(|m| m.to_term().to_string())
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for m in basis.monomials() {
                    println!("{}", m.to_term());
                }
            }
            Ok(true)
        }
        Command::CheckConsequence(args) => {
            check_degree(args.degree)?;
            let parsed = load(&args.file)?;
            let target = find_identity(&parsed, &args.target)?;
            let mut generators: Vec<Identity> = Vec::new();
            let mut space: Option<AmbientSpace> = args.space.map(Into::into);
            if let Some(vname) = &args.variety {
                let v = preset(vname).ok_or_else(|| {
                    format!("unknown variety `{vname}`; presets: {PRESET_NAMES:?}")
                })?;
                generators.extend(v.defining.iter().cloned());
                space.get_or_insert(v.space);
            }
            match &args.generators {
                Some(list) => {
                    for label in list.split(',') {
                        generators.push(find_identity(&parsed, label.trim())?);
                    }
                }
                None if args.variety.is_none() => {
                    for e in &parsed.entries {
                        if e.label != args.target {
                            generators.push(find_identity(&parsed, &e.label)?);
                        }
                    }
                }
                None => {}
            }
            let space = space.ok_or("one of --space or --variety is required")?;
            if let Some(path) = &args.dump_matrix {
                let matrix =
                    module_matrix(&generators, space, args.degree).map_err(|e| e.to_string())?;
                fs::write(
                    path,
                    serde_json::to_string_pretty(&matrix.to_json()).unwrap(),
                )
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let verdict = is_consequence(&target, &generators, space, args.degree)
                .map_err(|e| e.to_string())?;
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "target": args.target,
                        "verdict": verdict_json(&verdict),
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "consequence: {}; module rank {}, augmented rank {}, space dimension {}",
                    yesno(verdict.result),
                    verdict.ranks[0],
                    verdict.ranks[1],
                    verdict.dims[0]
                );
            }
            Ok(verdict.result)
        }
        Command::CheckEquivalence(args) => {
            check_degree(args.degree)?;
            let parsed = load(&args.file)?;
            let left = find_identity(&parsed, &args.left)?;
            let right = find_identity(&parsed, &args.right)?;
            let verdict = are_equivalent_sets(
                std::slice::from_ref(&left),
                std::slice::from_ref(&right),
                args.space.into(),
                args.degree,
            )
            .map_err(|e| e.to_string())?;
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "left": args.left,
                        "right": args.right,
                        "verdict": verdict_json(&verdict),
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "equivalent: {}; module ranks {} and {}, union {}",
                    yesno(verdict.result),
                    verdict.ranks[0],
                    verdict.ranks[1],
                    verdict.ranks[2]
                );
            }
            Ok(verdict.result)
        }
        Command::Verify { name, json } => {
            let reports: Vec<CheckReport> = if name == "all" {
                named_verifications()
            } else {
                if !checker::CHECK_NAMES.contains(&name.as_str()) {
                    return Err(format!(
                        "unknown verification `{name}`; available: {:?} or `all`",
                        checker::CHECK_NAMES
                    ));
                }
                vec![run_check(&name)]
            };
            let all_passed = reports.iter().all(|r| r.passed);
            if json {
                let doc = json!({
                    "schema": 1,
                    "results": reports.iter().map(report_json).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for r in &reports {
                    println!(
                        "{} [{}] {}",
                        if r.passed { "ok  " } else { "FAIL" },
                        r.name,
                        r.detail
                    );
                }
                println!(
                    "{} of {} verifications passed",
                    reports.iter().filter(|r| r.passed).count(),
                    reports.len()
                );
            }
            Ok(all_passed)
        }
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn identity_json(id: &Identity, signature: dialg::Signature) -> serde_json::Value {
    json!({
        "label": id.label,
        "signature": signature.to_string(),
        "monomials": id
            .poly
            .iter()
            .map(|(m, c)| json!({
                "coef": c.to_string(),
                "tree": m.to_term().to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

fn verdict_json(v: &Verdict) -> serde_json::Value {
    json!({
        "result": v.result,
        "ranks": v.ranks,
        "dims": v.dims,
        "generators_used": v.generators_used,
        "residual": v.residual.as_ref().map(|r| {
            r.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        }),
    })
}

fn report_json(r: &CheckReport) -> serde_json::Value {
    let mut doc = json!({
        "name": r.name,
        "verdict": r.passed,
        "ranks": r.ranks,
        "dims": r.dims,
        "elapsed_ms": r.elapsed_ms,
        "detail": r.detail,
    });
    if let Some(res) = &r.residual {
        doc["residual"] = json!(res);
    }
    doc
}
