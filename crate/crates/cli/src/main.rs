//! `bd`: command-line front-end for the bratteli engine.
//!
//! Exit codes: 0 success or positive verdict, 1 definite negative verdict,
//! 2 unknown within the bound, 3 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use bratteli::dsl::{self, Decl, PremorphismDecl, Resolved, SourceDocument};
use bratteli::iso::{morphisms_from_certificate, search_intertwining, verify_certificate, IntertwiningCertificate, IsoVerdict};
use bratteli::k0::{class_equal, class_in_scale, class_positive, push, K0Class, K0Verdict};
use bratteli::morphism::{compose, equivalent_def210, equivalent_def25, equivalent_def29, EquivalenceVerdict};
use bratteli::uhf::uhf_invariant;
use bratteli::{Diagram, Premorphism};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const UNKNOWN: u8 = 2;
const INPUT_ERROR: u8 = 3;

/// Default cap on matrix cells touched by one request.
const DEFAULT_MAX_CELLS: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "bd", version, about = "Exact computations with Bratteli diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Definition {
    #[value(name = "25")]
    Interleaved,
    #[value(name = "29")]
    Levelwise,
    #[value(name = "210")]
    Pairwise,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every declaration in FILE.
    Check { file: PathBuf },
    /// Print the telescoped matrix E_{nm} of a diagram.
    Telescope { file: PathBuf, name: String, n: usize, m: usize },
    /// Print the composite premorphism, F first and then G.
    Compose { file: PathBuf, f: String, g: String },
    /// Decide equivalence of two premorphisms.
    Equiv {
        file: PathBuf,
        f: String,
        g: String,
        #[arg(long = "def", value_enum)]
        definition: Definition,
        #[arg(long, default_value_t = 50)]
        bound: usize,
    },
    /// Search for an intertwining certificate between two diagrams.
    Iso {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Also write the certificate (when found) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file against two diagrams.
    Verify {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print the supernatural number of a UHF-shaped diagram.
    Uhf { file: PathBuf, a: String },
    /// Questions about a class `n:[x,…]` in the limit group.
    K0 {
        file: PathBuf,
        a: String,
        #[arg(long)]
        class: String,
        #[arg(long, global = true, default_value_t = 50)]
        bound: usize,
        #[command(subcommand)]
        query: K0Query,
    },
    /// Graphviz rendering of the first levels of a diagram.
    Dot {
        file: PathBuf,
        a: String,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum K0Query {
    /// Compare with another class.
    Equal { other: String },
    Positive,
    /// Membership in the scale `0 ≤ y ≤ V`.
    Scale,
    /// Push the class to level m.
    Push { m: usize },
}

type Outcome = Result<u8, String>;

fn load(file: &Path) -> Result<(SourceDocument, Resolved), String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let doc = dsl::parse(&text).map_err(|e| e.to_string())?;
    let resolved = dsl::resolve(&doc).map_err(|e| e.to_string())?;
    Ok((doc, resolved))
}

fn diagram(r: &Resolved, name: &str) -> Result<Diagram, String> {
    r.diagrams.get(name).cloned().ok_or_else(|| format!("no diagram named `{name}`"))
}

fn premorphism(r: &Resolved, name: &str) -> Result<Premorphism, String> {
    r.premorphisms.get(name).cloned().ok_or_else(|| format!("no premorphism named `{name}`"))
}

fn max_cells() -> Result<u64, String> {
    match std::env::var("BD_MAX_CELLS") {
        Ok(v) => v.parse().map_err(|_| format!("BD_MAX_CELLS must be a nonnegative integer, found `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

/// Refuses requests whose edge matrices up to level `depth` hold more than the cell cap.
fn guard(d: &Diagram, depth: usize) -> Result<(), String> {
    let cap = max_cells()?;
    if d.is_zero() {
        return Ok(());
    }
    let last = d.last_level().map_or(depth, |l| l.min(depth));
    let mut cells = 0u64;
    for n in 1..last {
        let w = (d.width(n).map_err(|e| e.to_string())? * d.width(n + 1).map_err(|e| e.to_string())?) as u64;
        cells = cells.saturating_add(w);
        if cells > cap {
            return Err(format!("request touches more than {cap} matrix cells (set BD_MAX_CELLS to raise the cap)"));
        }
    }
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn equivalence_code(v: &EquivalenceVerdict) -> u8 {
    match v {
        EquivalenceVerdict::Equivalent { .. } => OK,
        EquivalenceVerdict::NotEquivalent { .. } => NEGATIVE,
        EquivalenceVerdict::UnknownAtBound => UNKNOWN,
    }
}

fn k0_code(v: &K0Verdict) -> u8 {
    match v {
        K0Verdict::Holds { .. } => OK,
        K0Verdict::Refuted { .. } => NEGATIVE,
        K0Verdict::UnknownAtBound => UNKNOWN,
    }
}

fn parse_class(s: &str) -> Result<K0Class, String> {
    let bad = || format!("class must look like `n:[x,…]`, found `{s}`");
    let (level, vector) = s.split_once(':').ok_or_else(bad)?;
    let level = level.trim().parse().map_err(|_| bad())?;
    let numbers: Vec<serde_json::Number> = serde_json::from_str(vector.trim()).map_err(|_| bad())?;
    let vector = numbers
        .iter()
        .map(|n| BigInt::from_str(&n.to_string()).map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    Ok(K0Class::new(level, vector))
}

fn composite_decl(doc: &SourceDocument, f: &str, g: &str, h: &Premorphism) -> PremorphismDecl {
    let endpoint = |name: &str, source: bool| {
        doc.decls
            .iter()
            .find_map(|d| match d {
                Decl::Premorphism(p) if p.name == name => Some(if source { p.source.clone() } else { p.target.clone() }),
                _ => None,
            })
            .expect("resolved premorphism has a declaration")
    };
    PremorphismDecl {
        name: format!("{g}_{f}"),
        source: endpoint(f, true),
        target: endpoint(g, false),
        indices: h.window_indices().to_vec(),
        matrices: h.window_matrices().to_vec(),
        period: h.rule(),
        span: Default::default(),
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Check { file } => {
            let (_, r) = load(&file)?;
            println!("ok: {} diagrams, {} premorphisms", r.diagrams.len(), r.premorphisms.len());
            Ok(OK)
        }
        Cmd::Telescope { file, name, n, m } => {
            let (_, r) = load(&file)?;
            let d = diagram(&r, &name)?;
            guard(&d, m)?;
            println!("{}", d.telescope_matrix(n, m).map_err(|e| e.to_string())?);
            Ok(OK)
        }
        Cmd::Compose { file, f, g } => {
            let (doc, r) = load(&file)?;
            let (pf, pg) = (premorphism(&r, &f)?, premorphism(&r, &g)?);
            let h = compose(&pg, &pf).map_err(|e| e.to_string())?;
            let decl = composite_decl(&doc, &f, &g, &h);
            print!("{}", dsl::emit(&SourceDocument { decls: vec![Decl::Premorphism(decl)] }));
            Ok(OK)
        }
        Cmd::Equiv { file, f, g, definition, bound } => {
            let (_, r) = load(&file)?;
            let (pf, pg) = (premorphism(&r, &f)?, premorphism(&r, &g)?);
            guard(pf.source(), bound)?;
            guard(pf.target(), bound)?;
            let v = match definition {
                Definition::Interleaved => equivalent_def25(&pf, &pg, bound),
                Definition::Levelwise => equivalent_def29(&pf, &pg, bound),
                Definition::Pairwise => equivalent_def210(&pf, &pg, bound),
            }
            .map_err(|e| e.to_string())?;
            println!("{}", json(&v));
            Ok(equivalence_code(&v))
        }
        Cmd::Iso { file, a, b, depth, out } => {
            let (_, r) = load(&file)?;
            let (da, db) = (diagram(&r, &a)?, diagram(&r, &b)?);
            guard(&da, depth)?;
            guard(&db, depth)?;
            let v = search_intertwining(&da, &db, depth).map_err(|e| e.to_string())?;
            if let (IsoVerdict::Found { certificate }, Some(path)) = (&v, out) {
                std::fs::write(&path, json(certificate) + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            println!("{}", json(&v));
            Ok(match v {
                IsoVerdict::Found { .. } => OK,
                IsoVerdict::NonIsomorphic { .. } => NEGATIVE,
                IsoVerdict::UnknownAtBound => UNKNOWN,
            })
        }
        Cmd::Verify { file, a, b, cert } => {
            let (_, r) = load(&file)?;
            let (da, db) = (diagram(&r, &a)?, diagram(&r, &b)?);
            let text = std::fs::read_to_string(&cert).map_err(|e| format!("{}: {e}", cert.display()))?;
            let c: IntertwiningCertificate = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", cert.display()))?;
            if verify_certificate(&c, &da, &db).map_err(|e| e.to_string())? {
                // the extracted premorphisms validate as a second, independent check
                morphisms_from_certificate(&c, &da, &db).map_err(|e| e.to_string())?;
                println!("valid");
                Ok(OK)
            } else {
                println!("invalid");
                Ok(NEGATIVE)
            }
        }
        Cmd::Uhf { file, a } => {
            let (_, r) = load(&file)?;
            let inv = uhf_invariant(&diagram(&r, &a)?).map_err(|e| e.to_string())?;
            if inv.exact {
                println!("{}", inv.value);
            } else {
                println!("{} (presented levels only)", inv.value);
            }
            Ok(OK)
        }
        Cmd::K0 { file, a, class, bound, query } => {
            let (_, r) = load(&file)?;
            let d = diagram(&r, &a)?;
            let c = parse_class(&class)?;
            guard(&d, bound.max(c.level))?;
            let v = match query {
                K0Query::Push { m } => {
                    guard(&d, m)?;
                    println!("{}", push(&d, &c, m).map_err(|e| e.to_string())?);
                    return Ok(OK);
                }
                K0Query::Equal { other } => class_equal(&d, &c, &parse_class(&other)?, bound),
                K0Query::Positive => class_positive(&d, &c, bound),
                K0Query::Scale => class_in_scale(&d, &c, bound),
            }
            .map_err(|e| e.to_string())?;
            println!("{}", json(&v));
            Ok(k0_code(&v))
        }
        Cmd::Dot { file, a, depth } => {
            let (_, r) = load(&file)?;
            let d = diagram(&r, &a)?;
            guard(&d, depth)?;
            print!("{}", dsl::emit_dot(&d, &a, depth).map_err(|e| e.to_string())?);
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { OK });
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
