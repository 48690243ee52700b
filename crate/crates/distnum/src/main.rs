use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use distnum::constructions::named_group;
use distnum::distinguishing::{classify, distinguishing_number, orbit_profile, regular_set};
use distnum::graphs::{graph_distinguishing_number, petersen, Graph};
use distnum::group::PermGroup;
use distnum::report::{run_formula_grid, run_table1};

const BUDGET_ENV: &str = "DISTNUM_BUDGET_MS";

#[derive(Parser)]
#[command(
    name = "distnum",
    about = "Exact distinguishing numbers of permutation-group actions and small graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit machine-readable JSON instead of aligned text
    #[arg(long)]
    json: bool,
    /// Solver budget in milliseconds (default: unlimited, or DISTNUM_BUDGET_MS)
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Require the canonical lexicographically least witness. The
    /// sequential solver always produces it; the flag pins the guarantee.
    #[arg(long)]
    strict_witness: bool,
}

impl Common {
    fn budget(&self) -> Option<Duration> {
        self.budget_ms
            .or_else(|| std::env::var(BUDGET_ENV).ok()?.parse().ok())
            .map(Duration::from_millis)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify the exceptional rows against their known values
    Table1 {
        #[arg(long, default_value_t = 1)]
        t_max: usize,
        #[arg(long, default_value_t = 1)]
        s_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Verify the closed formula over a grid of orbit profiles
    Grid {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 1)]
        r_max: usize,
        #[arg(long, default_value_t = 1)]
        s_max: usize,
        #[arg(long, default_value_t = 1)]
        t_max: usize,
        #[arg(long, default_value_t = 14)]
        degree_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the distinguishing number of one group (builder name or file)
    Compute {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a faithful symmetric-group action (formula / exception / regular set)
    Classify {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Distinguishing number of a graph (`petersen` or a graph file)
    GraphD {
        input: String,
        /// Use the complement of the graph
        #[arg(long)]
        complement: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a subset with trivial setwise stabilizer
    RegularSet {
        input: String,
        #[arg(long, default_value_t = 24)]
        degree_max: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn load_group(input: &str) -> distnum::Result<PermGroup> {
    if let Ok(g) = named_group(input) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| distnum::Error::Invalid(format!("cannot read {input}: {e}")))?;
    PermGroup::parse_text(&text)
}

fn load_graph(input: &str) -> distnum::Result<Graph> {
    if input == "petersen" {
        return Ok(petersen());
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| distnum::Error::Invalid(format!("cannot read {input}: {e}")))?;
    Graph::parse_text(&text)
}

fn run(cli: Cli) -> distnum::Result<bool> {
    match cli.command {
        Command::Table1 { t_max, s_max, common } => {
            let report = run_table1(t_max, s_max, common.budget())?;
            print!(
                "{}",
                if common.json {
                    report.to_json_lines()
                } else {
                    report.to_table()
                }
            );
            Ok(report.all_matched())
        }
        Command::Grid {
            n_max,
            k_max,
            r_max,
            s_max,
            t_max,
            degree_max,
            common,
        } => {
            let report =
                run_formula_grid(n_max, k_max, r_max, s_max, t_max, degree_max, common.budget())?;
            print!(
                "{}",
                if common.json {
                    report.to_json_lines()
                } else {
                    report.to_table()
                }
            );
            Ok(report.all_matched())
        }
        Command::Compute { input, common } => {
            let g = load_group(&input)?;
            let res = distinguishing_number(&g, common.budget())?;
            let profile = (3..=7)
                .find(|&n| (1..=n).product::<usize>() == g.order())
                .and_then(|n| orbit_profile(&g, n).ok());
            if common.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "input": input,
                        "degree": g.degree(),
                        "order": g.order(),
                        "orbit_sizes": g.orbit_sizes(),
                        "profile": profile,
                        "d": res.d,
                        "witness": res.witness,
                        "exhausted": res.exhausted,
                    })
                );
            } else {
                println!("input:       {input}");
                println!("degree:      {}", g.degree());
                println!("order:       {}", g.order());
                println!("orbit sizes: {:?}", g.orbit_sizes());
                if let Some(p) = profile {
                    println!(
                        "profile:     n={} k={} r={} s={} t={}",
                        p.n, p.k, p.r, p.s, p.t
                    );
                }
                println!("D:           {}", res.d);
                println!("witness:     {:?}", res.witness);
            }
            Ok(true)
        }
        Command::Classify { input, common } => {
            let g = load_group(&input)?;
            let rep = classify(&g, common.budget())?;
            if common.json {
                println!("{}", serde_json::to_string(&rep).expect("serializable report"));
            } else {
                println!("n: {}", rep.n);
                println!("outcome: {:?}", rep.outcome);
                println!("solver-checked: {}", rep.checked);
            }
            Ok(true)
        }
        Command::GraphD {
            input,
            complement,
            common,
        } => {
            let mut g = load_graph(&input)?;
            if complement {
                g = g.complement();
            }
            let res = graph_distinguishing_number(&g, common.budget())?;
            if common.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "input": input,
                        "vertices": g.vertex_count(),
                        "edges": g.edge_count(),
                        "d": res.d,
                        "witness": res.witness,
                    })
                );
            } else {
                println!(
                    "{} vertices, {} edges, D = {}, witness {:?}",
                    g.vertex_count(),
                    g.edge_count(),
                    res.d,
                    res.witness
                );
            }
            Ok(true)
        }
        Command::RegularSet {
            input,
            degree_max,
            common,
        } => {
            let g = load_group(&input)?;
            if g.degree() > degree_max {
                return Err(distnum::Error::DegreeTooLarge {
                    degree: g.degree(),
                    max: degree_max,
                });
            }
            let set = regular_set(&g, common.budget())?;
            if common.json {
                println!("{}", serde_json::json!({ "input": input, "regular_set": set }));
            } else {
                match set {
                    Some(s) => println!("regular set: {s:?}"),
                    None => println!("no regular set exists"),
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification mismatch");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
