//! `deckforge`: decks, reconstruction and same-deck search from the command
//! line. Graphs travel as graph6, decks as JSON, search results as JSON Lines.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage error, 3 invalid
//! input data.

use clap::{Parser, Subcommand};
use deckforge::constructions::{same_deck_pair, verify_construction, FamilySpec, FAMILY_NAMES};
use deckforge::deck::{compute_deck, Deck};
use deckforge::degree::solve_degree_list;
use deckforge::family::{
    recognize_hereditary_class, reconstruct_clique_union, reconstruct_complete_multipartite, reconstruct_components,
    reconstruct_regular_cutvertex, HereditaryClass,
};
use deckforge::graph::{basic_family, parse_graph6, Family, Graph};
use deckforge::search::{max_reconstructibility, same_deck_classes, SearchOptions};
use deckforge::suite::{criterion_ids, run_criterion, SuiteOptions};
use deckforge::Error;
use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "deckforge", version, about = "k-decks of small graphs and what they determine")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the k-deck of a graph6 graph.
    Deck {
        #[arg(long)]
        k: usize,
        /// graph6 file; stdin when absent.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Deck JSON destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two deck files; prints EQUAL or DIFFERENT.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Degree list from a deck.
    ReconstructDegrees {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Known vertex counts for degrees >= k - 1, as DEGREE=COUNT.
        #[arg(long = "known", value_parser = parse_known)]
        known: Vec<(usize, u64)>,
    },
    /// Part sizes of a complete multipartite graph or a union of cliques.
    ReconstructMultipartite {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Which class to assume; `auto` reads it off the 3-cards.
        #[arg(long, default_value = "auto", value_parser = ["auto", "complete_multipartite", "clique_union"])]
        class: String,
    },
    /// Components of a graph whose components are no larger than the cards.
    ReconstructComponents {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// An r-regular graph that is not 2-connected.
    ReconstructRegular {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        r: usize,
    },
    /// Both graphs of a same-deck family and the card size of its claim.
    GenFamily {
        /// One of the family names listed in the help of `--params`.
        name: String,
        /// Comma-separated integers. maxdeg2_general takes
        /// `k,first...,0,second...` with +m for P_m and -m for C_m.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Also check the claim and exit 1 if it fails.
        #[arg(long)]
        verify: bool,
    },
    /// All graphs on n vertices sharing a k-deck with another, as JSON Lines.
    SearchPairs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Unit log directory; falls back to $DECKFORGE_CACHE.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        /// JSON Lines destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest ℓ such that the graph is determined by its (n-ℓ)-deck.
    MaxRecon {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Run the acceptance checks and print one line per check.
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated check ids; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Omit timings so the output is identical between runs.
        #[arg(long)]
        no_time: bool,
    },
}

enum Failure {
    Usage(String),
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::CostGuard { .. } | Error::CardSize { .. } | Error::Domain(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn parse_known(s: &str) -> std::result::Result<(usize, u64), String> {
    let (d, c) = s.split_once('=').ok_or_else(|| format!("expected DEGREE=COUNT, got {s:?}"))?;
    Ok((
        d.trim().parse().map_err(|e| format!("degree {d:?}: {e}"))?,
        c.trim().parse().map_err(|e| format!("count {c:?}: {e}"))?,
    ))
}

fn read_input(path: Option<&Path>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&Path>) -> std::result::Result<Graph, Failure> {
    let text = read_input(path)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Failure::Input("no graph6 line in input".into()))?;
    Ok(parse_graph6(line)?)
}

fn read_deck(path: Option<&Path>) -> std::result::Result<Deck, Failure> {
    Ok(Deck::from_json(&read_input(path)?)?)
}

fn write_output(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Deck { k, input, out } => {
            let g = read_graph(input.as_deref())?;
            write_output(out.as_deref(), &compute_deck(&g, k)?.to_json())?;
        }
        Command::Compare { a, b } => {
            let equal = read_deck(Some(&a))? == read_deck(Some(&b))?;
            println!("{}", if equal { "EQUAL" } else { "DIFFERENT" });
            if !equal {
                return Err(Failure::Check);
            }
        }
        Command::ReconstructDegrees { input, known } => {
            let d = read_deck(input.as_deref())?;
            let known: BTreeMap<usize, u64> = known.into_iter().collect();
            let list = solve_degree_list(&d, &known)?;
            let json = serde_json::json!({ "counts": list.counts, "sequence": list.sequence() });
            println!("{json}");
        }
        Command::ReconstructMultipartite { input, class } => {
            let d = read_deck(input.as_deref())?;
            let class = match class.as_str() {
                "complete_multipartite" => HereditaryClass::CompleteMultipartite,
                "clique_union" => HereditaryClass::CliqueUnion,
                _ if d.k() < 3 => HereditaryClass::CompleteMultipartite,
                _ => recognize_hereditary_class(&d)?,
            };
            let (parts, g) = match class {
                HereditaryClass::CompleteMultipartite => {
                    let p = reconstruct_complete_multipartite(&d)?;
                    let g = basic_family(Family::CompleteMultipartite, &p.parts)?;
                    (p, g)
                }
                HereditaryClass::CliqueUnion => {
                    let p = reconstruct_clique_union(&d)?;
                    let g = basic_family(Family::CompleteMultipartite, &p.parts)?.complement();
                    (p, g)
                }
                HereditaryClass::Neither => {
                    return Err(Failure::Input("the deck has both a P_3 and a K_2 + K_1 card".into()))
                }
            };
            let json = serde_json::json!({
                "class": class.as_str(),
                "parts": parts.parts,
                "graph6": g.canonical().graph6(),
            });
            println!("{json}");
        }
        Command::ReconstructComponents { input } => {
            let d = read_deck(input.as_deref())?;
            let c = reconstruct_components(&d)?;
            let components: Vec<_> = c
                .components
                .iter()
                .map(|(code, &m)| serde_json::json!({ "graph6": code.graph6(), "count": m }))
                .collect();
            let json = serde_json::json!({
                "components": components,
                "graph6": c.to_graph()?.canonical().graph6(),
            });
            println!("{json}");
        }
        Command::ReconstructRegular { input, r } => {
            let d = read_deck(input.as_deref())?;
            println!("{}", reconstruct_regular_cutvertex(&d, r)?.canonical().graph6());
        }
        Command::GenFamily { name, params, verify } => {
            if !FAMILY_NAMES.contains(&name.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown family {name:?}; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )));
            }
            let spec = FamilySpec::parse(&name, &params)?;
            let pair = same_deck_pair(&spec)?;
            println!("{}", pair.g.canonical().graph6());
            println!("{}", pair.h.canonical().graph6());
            println!("k={}", pair.k);
            if verify {
                let v = verify_construction(&spec);
                println!("{}: {}", if v.holds { "holds" } else { "fails" }, v.diagnostic);
                if !v.holds {
                    return Err(Failure::Check);
                }
            }
        }
        Command::SearchPairs { n, k, checkpoint_dir, resume, out } => {
            let checkpoint_dir = checkpoint_dir.or_else(|| std::env::var_os("DECKFORGE_CACHE").map(PathBuf::from));
            let report = same_deck_classes(n, k, &SearchOptions { checkpoint_dir, resume })?;
            let mut text = String::new();
            for class in &report.classes {
                text.push_str(&serde_json::json!({ "n": n, "k": k, "class": class }).to_string());
                text.push('\n');
            }
            write_output(out.as_deref(), &text)?;
            eprintln!(
                "{} classes among {} graphs in {:.2} s ({} of {} units resumed)",
                report.classes.len(),
                report.graphs_enumerated,
                report.elapsed,
                report.units_resumed,
                report.units
            );
        }
        Command::MaxRecon { input } => {
            let g = read_graph(input.as_deref())?;
            println!("{}", max_reconstructibility(&g)?);
        }
        Command::VerifyPaper { seed, only, no_time } => {
            let ids: Vec<String> = if only.is_empty() {
                criterion_ids().into_iter().map(String::from).collect()
            } else {
                only
            };
            let opts = SuiteOptions { seed };
            let mut results = Vec::new();
            for id in &ids {
                let r = run_criterion(id, &opts).ok_or_else(|| {
                    Failure::Usage(format!("unknown check {id:?}; known: {}", criterion_ids().join(", ")))
                })?;
                println!("{}", r.line(!no_time));
                results.push(r);
            }
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} checks pass", results.len());
            if passed != results.len() {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
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
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("pool built once");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
