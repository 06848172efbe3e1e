//! `tpath`: generate family truncations, run the path constructions on them
//! and verify the resulting certificates.
//!
//! Exit status is 0 when everything written was verified, 1 when a
//! construction or check fails and 2 for usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tutte_paths::extend::Side;
use tutte_paths::nets::FamilyGen;
use tutte_paths::prisms::PrismMode;
use tutte_paths::V;

mod artifact;
mod run;

use artifact::{problem, Artifact};
use run::{Ends, Failure, Outcome};

/// Default output directory when `--out` is not given.
const OUT_ENV: &str = "TPATH_OUT_DIR";

#[derive(Parser)]
#[command(name = "tpath", version, about = "Tutte paths, 2-walks and prism paths on plane graph families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name, e.g. radial-hex or ladder-square.
    family: String,
    /// Seed for the family generator; required for random families.
    #[arg(long)]
    seed: Option<u64>,
    /// Generator parameter as key=value; may be repeated.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, i64)>,
    /// Output directory (default: $TPATH_OUT_DIR, else the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    X,
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Bipartite,
    Triangulation,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the level-k truncation as JSON and DOT.
    Gen {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        level: usize,
    },
    /// Build a Tutte path with its SDR: radial, ladder or chain, by family kind.
    TuttePath {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        level: usize,
        /// Start vertex (radial: on C_1; ladder: x_0 or y_0; chain: f_1).
        #[arg(long)]
        u: Option<V>,
        /// Chain families: the vertex to pass through (default f_2).
        #[arg(long)]
        v: Option<V>,
        /// Ladder families: the truncation G_{r,s}.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// Ladder families: start at x_r or y_r.
        #[arg(long, value_enum)]
        from: Option<SideArg>,
    },
    /// Splice block 2-walks into a Tutte path and read off a spanning tree.
    TwoWalk {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        u: Option<V>,
    },
    /// A spanning path of the prism over a truncation.
    PrismPath {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        u: Option<V>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// The prefix stabilization experiment over levels 1..N.
    Limit {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long = "N")]
        n: usize,
    },
    /// Re-check a certificate written by any other command.
    Verify { file: PathBuf },
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s}"))?;
    let v = v.parse().map_err(|_| format!("{v} is not an integer"))?;
    Ok((k.to_string(), v))
}

fn family(a: &FamilyArgs) -> Outcome<FamilyGen> {
    if a.family.starts_with("random-") && a.seed.is_none() {
        return Err(Failure::Usage(format!("{} needs --seed", a.family)));
    }
    let params = a.params.iter().cloned().collect();
    Ok(FamilyGen::from_descriptor(&tutte_paths::nets::FamilyDescriptor {
        name: a.family.clone(),
        params,
        seed: a.seed.unwrap_or(0),
    })?)
}

fn level(k: usize) -> Outcome<usize> {
    if k == 0 {
        return Err(Failure::Usage("--level must be at least 1".into()));
    }
    Ok(k)
}

fn out_dir(a: &FamilyArgs) -> PathBuf {
    a.out.clone().or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("."))
}

fn write(dir: &Path, name: &str, body: &str) -> Outcome<()> {
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(())
}

fn to_json(a: &Artifact) -> Outcome<String> {
    let mut s = serde_json::to_string_pretty(a).map_err(|e| Failure::Verification(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write_artifact(fam: &FamilyArgs, stem: &str, a: &Artifact) -> Outcome<()> {
    write(&out_dir(fam), &format!("{stem}.json"), &to_json(a)?)
}

fn dispatch(cmd: Cmd) -> Outcome<()> {
    match cmd {
        Cmd::Gen { fam, level: k } => {
            let f = family(&fam)?;
            let (a, dot) = run::gen(&f, level(k)?)?;
            let stem = format!("{}-L{k}", f.name);
            write_artifact(&fam, &stem, &a)?;
            write(&out_dir(&fam), &format!("{stem}.dot"), &dot)
        }
        Cmd::TuttePath { fam, level: k, u, v, r, s, from } => {
            let f = family(&fam)?;
            let from = from.map(|s| match s {
                SideArg::X => Side::X,
                SideArg::Y => Side::Y,
            });
            let a = run::tutte_path(&f, level(k)?, &Ends { u, v, r, s, from })?;
            let stem = match (r, s) {
                (None, None) => format!("tutte-path-{}-L{k}", f.name),
                _ => format!("tutte-path-{}-L{k}-r{}-s{}", f.name, r.unwrap_or(0), s.unwrap_or(k)),
            };
            write_artifact(&fam, &stem, &a)
        }
        Cmd::TwoWalk { fam, level: k, u } => {
            let f = family(&fam)?;
            let a = run::two_walk(&f, level(k)?, u)?;
            write_artifact(&fam, &format!("two-walk-{}-L{k}", f.name), &a)
        }
        Cmd::PrismPath { fam, level: k, u, mode } => {
            let f = family(&fam)?;
            let mode = mode.map(|m| match m {
                ModeArg::Bipartite => PrismMode::Bipartite,
                ModeArg::Triangulation => PrismMode::Triangulation,
            });
            let a = run::prism_path(&f, level(k)?, u, mode)?;
            write_artifact(&fam, &format!("prism-path-{}-L{k}", f.name), &a)
        }
        Cmd::Limit { fam, n } => {
            let f = family(&fam)?;
            let a = run::limit(&f, n)?;
            write_artifact(&fam, &format!("limit-{}-N{n}", f.name), &a)
        }
        Cmd::Verify { file } => {
            let text = fs::read_to_string(&file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let a = Artifact::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            match problem(&a) {
                None => {
                    println!("verified {}", file.display());
                    Ok(())
                }
                Some(p) => Err(Failure::Verification(p)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("tpath: verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("tpath: {m}");
            ExitCode::from(2)
        }
    }
}
