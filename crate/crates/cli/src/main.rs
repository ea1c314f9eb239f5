//! `ekd`: command-line front end. Exit status 0 means the command ran (a verdict is
//! payload, never status), 2 is a usage error, 3 an input or validation error, 4 an
//! exhausted search budget.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ekd_core::builders::{build, parse_family};
use ekd_core::canonical::{are_equivalent, canonical_form};
use ekd_core::disks::{enumerate_disks, DiskOptions};
use ekd_core::invariants::{summarize, EulerSign};
use ekd_core::io::{from_json, parse, serialize, to_json};
use ekd_core::moves::{replay, search_undercut, MoveTrace, SearchOutcome};
use ekd_core::obstruction::{big_disks, check_obstruction, DiagramPair, EqualityPolicy};
use ekd_core::rational::to_short;
use ekd_core::svg::render_svg;
use ekd_core::table::corollary_table;
use ekd_core::EnrichedKnotDiagram;

#[derive(Parser)]
#[command(
    name = "ekd",
    version,
    about = "Enriched knot diagrams: validate, analyse, obstruct, search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Conservative,
    CylinderSharp,
}

#[derive(Clone, Copy, ValueEnum)]
enum EulerArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram file and list every violation.
    Validate { file: PathBuf },
    /// Areas, signed area, writhe, rotation numbers, exactness, Legendrian test.
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Disks bound by a diagram, or with `--big --pair UPPER` the big disks of a pair.
    Disks {
        file: PathBuf,
        #[arg(long, requires = "pair")]
        big: bool,
        #[arg(long, value_name = "UPPER")]
        pair: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide the big/little disk obstruction for LOWER below UPPER.
    Obstruct {
        lower: PathBuf,
        upper: PathBuf,
        #[arg(long, value_enum, default_value = "cylinder-sharp")]
        policy: Policy,
        #[arg(long, value_enum, default_value = "+", allow_hyphen_values = true)]
        euler_sign: EulerArg,
        #[arg(long)]
        json: bool,
    },
    /// Breadth-first search for a chain of moves from LOWER to UPPER.
    Search {
        lower: PathBuf,
        upper: PathBuf,
        #[arg(long)]
        max_depth: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
        #[arg(long)]
        json: bool,
        /// Also write the trace (if found) to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether two diagrams are equivalent (same canonical form).
    Equiv { first: PathBuf, second: PathBuf },
    /// Build a family diagram, e.g. `eight + 2`, `chain -++ 4 3 2`, `trefoil - 1 total 15`.
    Build {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(required = true, trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Draw a diagram as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the built-in table of known verdicts.
    Corollaries {
        #[arg(long)]
        json: bool,
    },
    /// Apply a saved trace to a diagram and print the result.
    Replay {
        file: PathBuf,
        trace: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<EnrichedKnotDiagram> {
    parse(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_trace(path: &Path) -> Result<MoveTrace> {
    let text = read_text(path)?;
    // accept a bare trace or the `search --json` output that wraps one
    if let Ok(t) = from_json::<MoveTrace>(&text) {
        return Ok(t);
    }
    let v: serde_json::Value = serde_json::from_str(&text).context("trace file is not JSON")?;
    match v.get("trace") {
        Some(t) => Ok(from_json(&t.to_string())?),
        None => Ok(from_json::<MoveTrace>(&text)?),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => {
            let d = load(&file)?;
            println!(
                "valid: {} crossings, {} components, {} bounded faces",
                d.crossings().len(),
                d.component_count(),
                d.bounded_faces().count()
            );
        }
        Command::Info { file, json } => {
            let d = load(&file)?;
            let s = summarize(&d);
            if json {
                print!("{}", to_json(&s));
            } else {
                println!("crossings: {}", s.crossings);
                println!("components: {}", s.components);
                for f in d.bounded_faces() {
                    let a = d.area(f).map(to_short).unwrap_or_default();
                    println!("face {f}: area {a}, winding {}", d.winding(f));
                }
                println!("signed area: {}", to_short(&s.signed_area));
                println!("knot area: {}", to_short(&s.knot_area));
                println!("exact: {}", s.exact);
                println!("writhe: {}", s.writhe);
                println!("rotation: {:?}", s.rotation);
                match s.legendrian {
                    Some(b) => println!("legendrian: {b}"),
                    None => println!("legendrian: undetermined"),
                }
            }
        }
        Command::Disks {
            file,
            big,
            pair,
            json,
        } => {
            let d = load(&file)?;
            let disks = match (big, pair) {
                (true, Some(upper)) => big_disks(&DiagramPair::new(d, load(&upper)?)),
                (false, Some(upper)) => {
                    let u = load(&upper)?;
                    ekd_core::disks::pair_disks(&d, &u)
                }
                (_, None) => enumerate_disks(&d, &DiskOptions::default()),
            };
            if json {
                print!("{}", to_json(&disks));
            } else {
                for k in &disks {
                    let signs: String = k.signs().iter().map(|s| s.symbol()).collect();
                    println!(
                        "{} area {} corners [{}]{}",
                        k.label(),
                        to_short(&k.area),
                        signs,
                        if k.all_convex() { "" } else { " (concave)" }
                    );
                }
                println!("{} disk(s)", disks.len());
            }
        }
        Command::Obstruct {
            lower,
            upper,
            policy,
            euler_sign,
            json,
        } => {
            let convention = match euler_sign {
                EulerArg::Plus => EulerSign::Plus,
                EulerArg::Minus => EulerSign::Minus,
            };
            let policy = match policy {
                Policy::Conservative => EqualityPolicy::Conservative,
                Policy::CylinderSharp => EqualityPolicy::CylinderSharp,
            };
            let pair = DiagramPair::with_convention(load(&lower)?, load(&upper)?, convention);
            let v = check_obstruction(&pair, policy);
            if json {
                print!("{}", to_json(&v));
            } else {
                print!("{v}");
            }
        }
        Command::Search {
            lower,
            upper,
            max_depth,
            budget,
            json,
            output,
        } => {
            let (a, b) = (load(&lower)?, load(&upper)?);
            let out = search_undercut(&a, &b, max_depth, budget);
            if json {
                print!("{}", to_json(&out));
            } else {
                match &out {
                    SearchOutcome::Found { trace } => {
                        println!("FOUND at depth {}", trace.depth);
                        for (i, m) in trace.steps.iter().enumerate() {
                            println!("  {}. {} at {}", i + 1, m.kind, m.site);
                        }
                    }
                    SearchOutcome::NotFound { reason, explored } => {
                        println!("NOT_FOUND after {explored} states: {reason}");
                    }
                    SearchOutcome::BudgetExhausted { explored, depth } => {
                        println!("BUDGET_EXHAUSTED after {explored} states at depth {depth}");
                    }
                }
            }
            if let (Some(p), Some(t)) = (output, out.trace()) {
                emit(Some(&p), &to_json(t))?;
            }
            if matches!(out, SearchOutcome::BudgetExhausted { .. }) {
                return Ok(4);
            }
        }
        Command::Equiv { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            if are_equivalent(&a, &b) {
                println!("equivalent");
            } else {
                println!("not equivalent");
                println!("  {}", canonical_form(&a));
                println!("  {}", canonical_form(&b));
            }
        }
        Command::Build {
            mut output,
            mut args,
        } => {
            // the trailing list also swallows a trailing `-o FILE`
            if let Some(i) = args.iter().position(|a| a == "-o" || a == "--output") {
                anyhow::ensure!(i + 1 < args.len(), "-o needs a file name");
                output = Some(PathBuf::from(args.remove(i + 1)));
                args.remove(i);
            }
            let spec = parse_family(&args)?;
            emit(output.as_deref(), &serialize(&build(&spec)?))?;
        }
        Command::Render { file, output } => {
            let svg = render_svg(&load(&file)?)?;
            emit(Some(&output), &svg)?;
        }
        Command::Corollaries { json } => {
            let rows = corollary_table();
            if json {
                print!("{}", to_json(&rows));
            } else {
                for r in &rows {
                    println!(
                        "{:<14} {:<12} < {:<12} expected {:<20} got {:<20} {}",
                        r.family,
                        r.lower,
                        r.upper,
                        r.expected.to_string(),
                        r.actual.to_string(),
                        if r.agrees { "ok" } else { "MISMATCH" }
                    );
                }
                let bad = rows.iter().filter(|r| !r.agrees).count();
                println!("{} rows, {} mismatches", rows.len(), bad);
            }
        }
        Command::Replay {
            file,
            trace,
            output,
        } => {
            let d = load(&file)?;
            let t = load_trace(&trace)?;
            let end = replay(&d, &t)?;
            emit(output.as_deref(), &serialize(&end))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn hyphen_family_arguments() {
        let cli = Cli::try_parse_from(["ekd", "build", "chain", "-++", "4", "3", "2"]).unwrap();
        match cli.command {
            Command::Build { args, .. } => assert_eq!(args, ["chain", "-++", "4", "3", "2"]),
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["ekd", "disks", "a.json", "--big"]).is_err());
    }
}
