use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use indecomp::families::{
    classify_2covered, enumerate_class, make_halfgraph, make_path, make_q, Budget, ClassId,
};
use indecomp::format::{parse_graph_text, sniff, to_edge_list, to_graph6, GraphFormat};
use indecomp::indec::{covers_of_size_at_most, indecomposability_graph, is_set_covered};
use indecomp::modular::{decomposition_witness, is_indecomposable, nontrivial_intervals};
use indecomp::verify::{run_statement, ModeKind, Params, STATEMENTS};
use indecomp::{Error, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "indecomp", version, about = "Interval analysis and I(G) 2-cover classification")]
struct Cli {
    /// Input format; sniffed from the first byte when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<InputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    P,
    Q,
    G2n,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// List the nontrivial intervals (n <= 16).
    Intervals { input: Option<PathBuf> },
    /// Indecomposability verdict with a witness interval if decomposable.
    Prime { input: Option<PathBuf> },
    /// Print I(G) as an edge list.
    IndecGraph { input: Option<PathBuf> },
    /// Vertex-cover verdicts on I(G).
    Covered {
        input: Option<PathBuf>,
        /// Two 1-based labels, `a,b`.
        #[arg(long, value_parser = parse_pair, conflicts_with = "k", required_unless_present = "k")]
        pair: Option<(usize, usize)>,
        /// List every cover with exactly `k` vertices (k <= 3).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Decide 2-coveredness and exhibit the class witness.
    Classify { input: Option<PathBuf> },
    /// Emit P_n, Q_n or the half graph G_n (n even).
    Family {
        #[arg(value_enum, ignore_case = true)]
        family: Family,
        n: usize,
        #[arg(long, value_enum, default_value = "graph6")]
        emit: InputFormat,
    },
    /// Emit members of a class in canonical frame.
    Class {
        class: String,
        n: usize,
        /// Sample this many members instead of listing all.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "graph6")]
        emit: InputFormat,
    },
    /// Run a statement check and print its report.
    Verify {
        statement: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List the statement ids accepted by `verify`.
    Statements,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// A failure together with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotIndecomposable => 1,
            Error::Anomaly(_) => 3,
            _ => 2,
        };
        let message = match e {
            Error::VertexOutOfRange { vertex, n } => {
                format!("vertex {} out of range 1..={n}", vertex + 1)
            }
            Error::LoopEdge(v) => format!("self-loop on vertex {}", v + 1),
            e => e.to_string(),
        };
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_graph(input: &Option<PathBuf>, format: Option<InputFormat>) -> Result<Graph, Failure> {
    let bytes = match input {
        Some(path) => std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            buf
        }
    };
    let format = match format {
        Some(InputFormat::Graph6) => GraphFormat::Graph6,
        Some(InputFormat::Edgelist) => GraphFormat::EdgeList,
        None => sniff(&bytes),
    };
    Ok(parse_graph_text(format, &bytes)?)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
}

fn emit(g: &Graph, format: InputFormat) {
    match format {
        InputFormat::Graph6 => println!("{}", to_graph6(g)),
        InputFormat::Edgelist => print!("{}", to_edge_list(g)),
    }
}

#[derive(Serialize)]
struct IntervalsOut {
    n: usize,
    intervals: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct PrimeOut {
    n: usize,
    indecomposable: bool,
    witness: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct PairCoverOut {
    pair: [usize; 2],
    covered: bool,
}

#[derive(Serialize)]
struct KCoverOut {
    k: usize,
    covered: bool,
    covers: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ClassifyOut {
    two_covered: bool,
    cover_pair: Option<[usize; 2]>,
    complemented: bool,
    class: Option<ClassId>,
    embedded_base: Option<Vec<usize>>,
    /// `relabel[i]` is the member label of input vertex `i + 1`.
    relabel: Option<Vec<usize>>,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Intervals { input } => {
            let g = read_graph(&input, fmt)?;
            let intervals = nontrivial_intervals(&g)?.iter().map(VertexSet::to_labels).collect();
            print_json(&IntervalsOut { n: g.n(), intervals });
            Ok(0)
        }
        Command::Prime { input } => {
            let g = read_graph(&input, fmt)?;
            let prime = is_indecomposable(&g);
            print_json(&PrimeOut {
                n: g.n(),
                indecomposable: prime,
                witness: decomposition_witness(&g).map(|w| w.to_labels()),
            });
            Ok(if prime { 0 } else { 1 })
        }
        Command::IndecGraph { input } => {
            let g = read_graph(&input, fmt)?;
            print!("{}", to_edge_list(&indecomposability_graph(&g)?));
            Ok(0)
        }
        Command::Covered { input, pair, k } => {
            let g = read_graph(&input, fmt)?;
            let ig = indecomposability_graph(&g)?;
            if let Some((a, b)) = pair {
                if a == b {
                    return Err(Error::DegeneratePair.into());
                }
                let set = VertexSet::from_vertices(
                    g.n(),
                    [a.checked_sub(1), b.checked_sub(1)]
                        .into_iter()
                        .map(|v| v.unwrap_or(usize::MAX)),
                )
                .map_err(|_| usage(format!("labels must lie in 1..={}", g.n())))?;
                let covered = is_set_covered(&ig, &set);
                print_json(&PairCoverOut { pair: [a, b], covered });
                Ok(if covered { 0 } else { 1 })
            } else {
                let k = k.expect("clap enforces --pair or --k");
                let covers: Vec<Vec<usize>> = covers_of_size_at_most(&ig, k)?
                    .iter()
                    .map(VertexSet::to_labels)
                    .collect();
                let covered = !covers.is_empty();
                print_json(&KCoverOut { k, covered, covers });
                Ok(if covered { 0 } else { 1 })
            }
        }
        Command::Classify { input } => {
            let g = read_graph(&input, fmt)?;
            let r = classify_2covered(&g)?;
            print_json(&ClassifyOut {
                two_covered: r.two_covered,
                cover_pair: r.cover_pair.map(|(a, b)| [a + 1, b + 1]),
                complemented: r.complemented,
                class: r.class,
                embedded_base: r.embedded_base.map(|x| x.to_labels()),
                relabel: r.relabel.map(|m| m.iter().map(|v| v + 1).collect()),
            });
            Ok(if r.two_covered { 0 } else { 1 })
        }
        Command::Family { family, n, emit: out } => {
            let g = match family {
                Family::P => make_path(n),
                Family::Q => make_q(n)?,
                Family::G2n => make_halfgraph(n)?,
            };
            emit(&g, out);
            Ok(0)
        }
        Command::Class {
            class,
            n,
            budget,
            seed,
            emit: out,
        } => {
            let class: ClassId = class.parse()?;
            let budget = match budget {
                Some(count) => Budget::Sampled { count, seed },
                None => Budget::Exhaustive,
            };
            for g in enumerate_class(class, n, budget)? {
                emit(&g, out);
            }
            Ok(0)
        }
        Command::Verify {
            statement,
            n,
            mode,
            seed,
            count,
            jobs,
        } => {
            let params = Params {
                n,
                mode: mode.map(|m| match m {
                    Mode::Exhaustive => ModeKind::Exhaustive,
                    Mode::Sampled => ModeKind::Sampled,
                }),
                seed,
                count,
                jobs,
            };
            let report = run_statement(&statement, &params)?;
            print_json(&report);
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Statements => {
            for s in STATEMENTS {
                println!("{:<11} {}", s.id, s.anchor);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
