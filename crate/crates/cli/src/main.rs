//! `ordspec`: batch front end for pre-cones, terms, finite Stone duality and
//! the finitely supported function ℓ-group.
//!
//! Exit codes: 0 when every check passes, 1 when a property fails, 2 on
//! usage or input errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, RunConfig, OVERRIDE_VAR};

#[derive(Parser, Debug)]
#[command(name = "ordspec", version, about = "Right pre-orders, free ℓ-group terms and finite Stone duality")]
struct Cli {
    /// Config file; defaults to ./ordspec.toml when present.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for sampled properties (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format (overrides the config).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice-group terms.
    #[command(subcommand)]
    Term(TermCmd),
    /// Pre-cones on ℤⁿ and F_n.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Finite Stone duality.
    #[command(subcommand)]
    Stone(StoneCmd),
    /// Finitely supported functions ℕ → ℤ.
    #[command(subcommand)]
    Fnl(FnlCmd),
}

#[derive(Subcommand, Debug)]
pub enum TermCmd {
    /// Parse a term and dump its syntax tree.
    Parse { term: String },
    /// Meet-of-joins normal form.
    Normalize {
        term: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Act on the class of `--at` in the cone's quotient chain.
    Eval {
        #[arg(long)]
        cone: PathBuf,
        /// A group word such as `e` or `g1 * g2^-1`.
        #[arg(long, default_value = "e")]
        at: String,
        term: String,
    },
    /// Whether each term fixes the class of the identity.
    Kappa {
        #[arg(long)]
        cone: PathBuf,
        /// JSON array of term strings.
        #[arg(long)]
        terms: Option<PathBuf>,
        #[arg(trailing_var_arg = true)]
        inline: Vec<String>,
    },
    /// Look for a cone whose action moves the identity class.
    Separate {
        term: String,
        /// JSON array of cones; defaults to all rank-2 flags with entries in {-1,0,1}.
        #[arg(long)]
        family: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Group that interprets the generators.
    #[arg(long, value_parser = ["zvec", "fword"], default_value = "fword")]
    pub group: String,
    /// Rank; defaults to the largest generator index in the term.
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ConeCmd {
    /// Pre-cone axioms against the trivially ordered group.
    Check {
        cone: PathBuf,
        /// Use the coordinatewise order on ℤⁿ.
        #[arg(long)]
        coordinatewise: bool,
    },
    /// Inclusion in both directions with witnesses.
    Compare { left: PathBuf, right: PathBuf },
    /// Largest normal sub-cone within a conjugator budget.
    Beta {
        cone: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Refine a flag cone to a total order.
    Refine {
        cone: PathBuf,
        /// Full-rank flag breaking ties; defaults to the standard lex order.
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Enumerate ball cones on F_rank.
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        normal: bool,
        #[arg(long)]
        no_kernel: bool,
        /// Keep only cones representable within this conjugator budget.
        #[arg(long)]
        representable: Option<usize>,
        /// Include the cones themselves, not only the count.
        #[arg(long)]
        emit: bool,
    },
    /// Normality, representability and the Abelian test.
    Predicates {
        cone: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    /// Downsets of an n-element antichain.
    #[arg(long, conflicts_with_all = ["chain", "poset"])]
    pub antichain: Option<usize>,
    /// Downsets of an n-element chain.
    #[arg(long, conflicts_with = "poset")]
    pub chain: Option<usize>,
    /// Downsets of a poset given as JSON.
    #[arg(long)]
    pub poset: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum StoneCmd {
    /// Prime ideals and basic opens of a downset lattice.
    Dual {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        dot: bool,
    },
    /// Spectral-space checks for the space whose opens are the downsets of a poset.
    Verify { poset: PathBuf },
    /// Principal convex subgroups of the functions supported below a level.
    Conp {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum FnlCmd {
    /// ℓ-group laws over the window.
    Laws(WindowArgs),
    /// Polar calculus over the window.
    Polars(WindowArgs),
    /// Minimal primes m_n for every n below the level.
    Minprimes(WindowArgs),
    /// Complement witness for a positive function.
    T75 {
        #[arg(long)]
        f: String,
        #[arg(long)]
        level: Option<u64>,
    },
    /// Certificates that functions are not strong units.
    Nostrongunit {
        #[arg(long)]
        u: Option<String>,
        /// Number of seeded samples when `--u` is absent.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
pub struct WindowArgs {
    #[arg(long)]
    pub level: Option<u64>,
    #[arg(long = "box")]
    pub bound: Option<i64>,
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
    let overrides = std::env::var(OVERRIDE_VAR).ok();
    let mut cfg = match RunConfig::load(cli.config.as_deref(), overrides.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    let result = match &cli.command {
        Command::Term(c) => commands::term(c, &cfg),
        Command::Cone(c) => commands::cone(c, &cfg),
        Command::Stone(c) => commands::stone(c, &cfg),
        Command::Fnl(c) => commands::fnl(c, &cfg),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = outcome.render(&cfg);
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
