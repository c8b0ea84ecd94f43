use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sglab::config::Config;
use sglab::dossier::{self, Dossier};
use sglab::ideal::{closure_to_depth, independence_check};
use sglab::toeplitz::{self, Status};
use sglab::{catalog, groupoid, Error, Independence};

const OK: u8 = 0;
const VERDICT_FAILURE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "sglab", version, about = "Probe constructible ideals, Toeplitz conditions and boundary dynamics of semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Default)]
struct RunArgs {
    /// Catalog id, e.g. free_product_naturals:2 or numerical:2,3
    #[arg(long)]
    family: Option<String>,
    /// TOML config; command-line values win
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    hull_depth: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_ideals: Option<usize>,
    #[arg(long)]
    max_filter_candidates: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every probe and write a dossier
    Analyze {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time (makes the output nondeterministic)
        #[arg(long)]
        timing: bool,
    },
    /// Replay the witnesses of a dossier and recompute it
    Verify {
        file: PathBuf,
        /// Replay witnesses against a family of this depth instead
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Show the catalog
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run a single probe
    Probe {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum)]
        condition: Probe,
        /// Element for the toeplitz and g0 probes, e.g. p1*p2^-1 or (1,-2)
        #[arg(long)]
        element: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Probe {
    Toeplitz,
    QuasiLattice,
    LeftOre,
    LeftReversible,
    Independence,
    G0,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) => BUDGET,
                Error::Io(_) | Error::Dossier(_) => VERDICT_FAILURE,
                _ => USAGE,
            }
        }
    };
    ExitCode::from(code)
}

fn config(args: &RunArgs) -> sglab::Result<Config> {
    let caps = (args.max_ideals.is_some() || args.max_filter_candidates.is_some()).then(|| sglab::config::CapsConfig {
        max_ideals: args.max_ideals,
        max_filter_candidates: args.max_filter_candidates,
        max_hull_depth: None,
    });
    let cli = Config {
        family: args.family.clone(),
        inline: None,
        depth: args.depth,
        bound: args.bound,
        seed: args.seed,
        hull_depth: args.hull_depth,
        samples: args.samples,
        caps,
    };
    let file = match &args.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let mut merged = cli.or(file);
    if args.family.is_some() {
        merged.inline = None;
    }
    Ok(merged)
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializes"));
}

fn run(cli: Cli) -> sglab::Result<u8> {
    match cli.command {
        Command::Analyze { run, out, timing } => {
            let (amb, params) = config(&run)?.resolve()?;
            let d: Dossier =
                if timing { dossier::analyze_timed(&amb, &params) } else { dossier::analyze(&amb, &params) };
            let text = d.to_canonical();
            match out {
                Some(p) => std::fs::write(&p, &text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            eprintln!("{}", d.summary());
            Ok(if d.budget_exceeded() { BUDGET } else { OK })
        }
        Command::Verify { file, depth, json } => {
            let text = dossier::read(&file)?;
            let report = dossier::verify(&text, depth);
            if json {
                print_json(&report);
            } else {
                for c in &report.checks {
                    let mark = if c.ok { "ok  " } else { "FAIL" };
                    if c.detail.is_empty() {
                        println!("{mark} {}", c.path);
                    } else {
                        println!("{mark} {}: {}", c.path, c.detail);
                    }
                }
            }
            Ok(if report.ok() { OK } else { VERDICT_FAILURE })
        }
        Command::List { json } => {
            let rows = catalog::list();
            if json {
                print_json(&rows);
            } else {
                for r in rows {
                    println!("{:<26} G = {:<9} P = {}", r.id, r.group, r.monoid);
                    if !r.flags.is_empty() {
                        println!("{:<26} flags: {}", "", r.flags.join(", "));
                    }
                    for c in r.citations {
                        println!("{:<26} cites: {c}", "");
                    }
                }
            }
            Ok(OK)
        }
        Command::Probe { run, condition, element } => {
            let (amb, params) = config(&run)?.resolve()?;
            let elem = element.as_deref().map(|s| amb.parse_element(s)).transpose()?;
            let need = |what: &str| Error::Usage(format!("--element is required for the {what} probe"));
            let report_code = |s: &Status| if s.fails() { VERDICT_FAILURE } else { OK };
            match condition {
                Probe::Toeplitz => match elem {
                    Some(g) => {
                        let d = toeplitz::toeplitz_decompose(&amb, &g, params.bound.max(1));
                        print_json(&d);
                        Ok(if d == toeplitz::Decomposition::UnknownToBudget { BUDGET } else { OK })
                    }
                    None => {
                        let (r, _) = toeplitz::toeplitz_probe(&amb, params.bound);
                        print_json(&r);
                        Ok(report_code(&r.status))
                    }
                },
                Probe::QuasiLattice | Probe::LeftOre | Probe::LeftReversible => {
                    let r = match condition {
                        Probe::QuasiLattice => toeplitz::quasi_lattice_probe(&amb, params.bound),
                        Probe::LeftOre => toeplitz::ore_probe(&amb, params.bound),
                        _ => toeplitz::reversibility_probe(&amb, params.bound),
                    };
                    print_json(&r);
                    Ok(report_code(&r.status))
                }
                Probe::Independence => {
                    let fam = closure_to_depth(&amb, params.depth, &params.caps);
                    let r = independence_check(&amb, &fam);
                    print_json(&r);
                    Ok(if matches!(r, Independence::Dependent { .. }) { VERDICT_FAILURE } else { OK })
                }
                Probe::G0 => {
                    let g = elem.ok_or_else(|| need("g0"))?;
                    let fam = closure_to_depth(&amb, params.depth, &params.caps);
                    let v = groupoid::g0_probe(&amb, &fam, &g);
                    print_json(&v);
                    Ok(if matches!(v, groupoid::G0Verdict::NotInG0 { .. }) { VERDICT_FAILURE } else { OK })
                }
            }
        }
    }
}
