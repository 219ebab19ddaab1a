use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use macposet::classify::Conj67Spec;
use macposet::macaulay::{SearchOptions, DEFAULT_LEVEL_CAP};
use macposet::report::{self, Finished, GridBounds, EXIT_USAGE};
use macposet::reproduce::{reproduce, TARGETS};
use macposet::MonomialIdeal;

/// Ranked posets and Macaulay orders.
///
/// POSET arguments are expressions such as `wedge(box(2,3), path(2))` or
/// paths to `.poset` files. Exit status: 0 ok, 1 violation or disagreement,
/// 2 usage or input error, 3 search budget exceeded.
#[derive(Parser)]
#[command(name = "macposet", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the JSON report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<String>,
    /// Stop a search after this many nodes.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest level the exact shadow table enumerates.
    #[arg(long, global = true, default_value_t = DEFAULT_LEVEL_CAP)]
    level_cap: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Try interchangeable elements in one order only.
    #[arg(long, global = true)]
    twin_pruning: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a poset and print it in the `macposet 1` file format.
    Build {
        poset: String,
        /// Write the poset file here instead of standard output.
        #[arg(long, short)]
        out: Option<String>,
    },
    /// Print levels, level sizes and covers.
    Show {
        poset: String,
        /// Print the covers as a DOT digraph.
        #[arg(long)]
        dot: bool,
    },
    /// Upper and lower shadow of a set of same-rank elements.
    Shadow {
        poset: String,
        /// Element ids, comma separated.
        #[arg(long)]
        set: String,
    },
    /// Print the minimum-shadow table.
    Table { poset: String },
    /// Check both Macaulay conditions for an order.
    Check {
        poset: String,
        /// Order expression, such as `lex(x,y)` or `us(id, lex(x,y))`.
        #[arg(long)]
        order: String,
    },
    /// Search for a Macaulay order.
    SearchOrder { poset: String },
    /// Check additivity of a Macaulay order.
    Additive {
        poset: String,
        #[arg(long)]
        order: String,
    },
    /// Compare a classification with the order search over a grid.
    VerifyFamily {
        /// heart, diamond-box, wedge-2d-box, wedge-path-box,
        /// union-wedge-diamond-equiv or cartesian-counterexamples.
        family: String,
        #[arg(long)]
        lo: Option<u32>,
        #[arg(long)]
        hi: Option<u32>,
    },
    /// Scan products S x path(n-1) for Macaulay quotients S of K[y,z].
    Conjecture67 {
        /// Largest pure-power exponent of the staircase ideals.
        #[arg(long, default_value_t = 4)]
        max_exp: u32,
        /// Path lengths above the top degree of S to try.
        #[arg(long, default_value_t = 3)]
        extra: u32,
        /// Extra generators lists in y, z, such as `y^3,y^2*z,y*z^2,z^3`.
        #[arg(long = "ideal")]
        ideals: Vec<String>,
    },
    /// Run a named reproduction target.
    Reproduce {
        /// One of the names printed by `macposet reproduce list`.
        name: String,
    },
}

fn run(cli: &Cli) -> macposet::Result<Option<Finished>> {
    let g = &cli.global;
    let opts = SearchOptions {
        budget: g.budget,
        level_cap: g.level_cap,
        twin_pruning: g.twin_pruning,
    };
    let f = match &cli.command {
        Command::Build { poset, out } => {
            let f = report::cmd_build(poset)?;
            if let Some(path) = out {
                std::fs::write(path, &f.text).map_err(|e| macposet::Error::Io(format!("{path}: {e}")))?;
                Finished {
                    text: format!("wrote {path}\n"),
                    ..f
                }
            } else {
                f
            }
        }
        Command::Show { poset, dot } => report::cmd_show(poset, *dot)?,
        Command::Shadow { poset, set } => report::cmd_shadow(poset, set)?,
        Command::Table { poset } => report::cmd_table(poset, g.level_cap)?,
        Command::Check { poset, order } => report::cmd_check(poset, order)?,
        Command::SearchOrder { poset } => report::cmd_search(poset, &opts)?,
        Command::Additive { poset, order } => report::cmd_additive(poset, order)?,
        Command::VerifyFamily { family, lo, hi } => {
            report::cmd_verify_family(family, &GridBounds { lo: *lo, hi: *hi }, &opts)?
        }
        Command::Conjecture67 {
            max_exp,
            extra,
            ideals,
        } => {
            let mut spec = Conj67Spec {
                max_exp: *max_exp,
                extra: *extra,
                ..Conj67Spec::default()
            };
            for i in ideals {
                let gens: Vec<&str> = i.split(',').map(str::trim).collect();
                spec.ideals.push(MonomialIdeal::parse_generators(&["y", "z"], &gens)?);
            }
            report::cmd_conjecture67(&spec, &opts)?
        }
        Command::Reproduce { name } if name == "list" => {
            for t in TARGETS {
                println!("{t}");
            }
            return Ok(None);
        }
        Command::Reproduce { name } => reproduce(name, &opts)?,
    };
    Ok(Some(f))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(f)) => {
            print!("{}", f.text);
            if let Some(path) = &cli.global.report {
                if let Err(e) = std::fs::write(path, f.report.to_json()) {
                    eprintln!("error: {path}: {e}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
            ExitCode::from(f.report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
