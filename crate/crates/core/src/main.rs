// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use amtree::bench::{self, BenchConfig};
use amtree::coder::{self, byte_counts, count_over, empirical_distribution, CodeBook, Distribution, Smoothing};
use amtree::minimax::{alpha_int_fast, depths_to_tree};
use amtree::parse::{parse_counts_csv, parse_int_weights, parse_weights};
use amtree::realweight::{alpha_real, AlgoChoice, Algorithm, WeightSeq};
use amtree::{Error, LevelTree};

#[derive(Parser)]
#[command(name = "amtree", version, about = "Alphabetic minimax trees and alphabetic prefix codes")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a minimax tree for a weight file.
    Tree {
        file: PathBuf,
        /// Treat weights as integers and use the linear-time solver.
        #[arg(long)]
        int: bool,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algo: AlgoArg,
        /// Include the initial level tree of the input.
        #[arg(long)]
        dump_level_tree: bool,
    },
    /// Build an alphabetic code from a sample.
    Code {
        sample: PathBuf,
        /// Sample is `label,count` CSV instead of a raw corpus.
        #[arg(long)]
        csv: bool,
        #[arg(long, value_enum, default_value_t = SmoothingArg::None)]
        smoothing: SmoothingArg,
        /// Alphabet for a raw corpus.
        #[arg(long, value_enum, default_value_t = AlphabetArg::Sample)]
        alphabet: AlphabetArg,
        /// Write the codebook here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a codebook on a target file.
    Stats {
        #[arg(long)]
        code: PathBuf,
        target: PathBuf,
        /// Target is `label,count` CSV instead of a raw corpus.
        #[arg(long)]
        csv: bool,
    },
    /// Time the real-weight algorithms on generated instances (CSV output).
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [BenchAlgo::New, BenchAlgo::Sorted])]
        algo: Vec<BenchAlgo>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Report wall_ns as 0 for byte-identical output.
        #[arg(long)]
        deterministic: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    New,
    Sorted,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlgo {
    New,
    Sorted,
}

#[derive(Clone, Copy, ValueEnum)]
enum SmoothingArg {
    None,
    AddOne,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphabetArg {
    /// Bytes occurring in the sample.
    Sample,
    /// All 256 byte values.
    Bytes,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("json value serializes")
}

fn cmd_tree(file: &Path, int: bool, algo: AlgoArg, dump: bool, pretty: bool) -> CmdResult {
    let text = read_text(file)?;
    let (mut out, level_tree) = if int {
        let y = parse_int_weights(&text)?;
        let r = alpha_int_fast(&y)?;
        let w = WeightSeq::from_ints(&y)?;
        let tree = depths_to_tree(r.depths.as_slice())?;
        let out = json!({
            "alpha": r.cost,
            "offset_b": 0.0,
            "depths": r.depths,
            "parent_array": tree.parent_array(),
            "tree": tree.to_parens(),
            "d": w.d(),
            "n": y.len(),
            "algorithm": "int",
            "instrumentation": Value::Null,
        });
        (out, dump.then(|| LevelTree::from_int(&y)).transpose()?)
    } else {
        let raw = parse_weights(&text)?;
        let w = WeightSeq::new(raw.clone())?;
        let choice = match algo {
            AlgoArg::New => AlgoChoice::New,
            AlgoArg::Sorted => AlgoChoice::Sorted,
            AlgoArg::Auto => AlgoChoice::Auto,
        };
        let r = alpha_real(&w, choice)?;
        let tree = depths_to_tree(r.depths.as_slice())?;
        let out = json!({
            "alpha": r.alpha,
            "offset_b": r.offset,
            "depths": r.depths,
            "parent_array": tree.parent_array(),
            "tree": tree.to_parens(),
            "d": w.d(),
            "n": w.len(),
            "algorithm": r.algorithm,
            "instrumentation": r.stats,
        });
        (out, dump.then(|| LevelTree::build(&raw)).transpose()?)
    };
    if let Some(t) = &level_tree {
        t.audit()?;
        out["level_tree"] = t.dump_json();
    }
    if !pretty {
        return Ok(render(&out));
    }
    let mut s = format!(
        "alpha    {}\noffset   {}\nn        {}\nd        {}\ndepths   {}\ntree     {}\n",
        out["alpha"],
        out["offset_b"],
        out["n"],
        out["d"],
        out["depths"],
        out["tree"].as_str().unwrap_or_default(),
    );
    if let Some(t) = &level_tree {
        s.push_str(&format!("levels   {}\n", t.outline()));
    }
    Ok(s.trim_end().to_string())
}

fn byte_alphabet(alphabet: AlphabetArg, data: &[u8]) -> Vec<String> {
    match alphabet {
        AlphabetArg::Sample => byte_counts(data).0,
        AlphabetArg::Bytes => (0..=255u8).map(coder::byte_label).collect(),
    }
}

fn cmd_code(
    sample: &Path,
    csv: bool,
    smoothing: SmoothingArg,
    alphabet: AlphabetArg,
    out: Option<&Path>,
    pretty: bool,
) -> CmdResult {
    let (labels, counts) = if csv {
        parse_counts_csv(&read_text(sample)?)?
    } else {
        let data = read(sample)?;
        if data.is_empty() {
            return Err(Error::Empty.into());
        }
        let labels = byte_alphabet(alphabet, &data);
        let counts = count_over(&labels, &data)?;
        (labels, counts)
    };
    let smoothing = match smoothing {
        SmoothingArg::None => Smoothing::None,
        SmoothingArg::AddOne => Smoothing::AddOne,
    };
    let q = empirical_distribution(labels, counts, smoothing)?;
    let (book, bound) = coder::build_code_with_bound(&q)?;
    let book_json = book.to_json(Some(q.probs()));
    let summary = json!({
        "symbols": book.len(),
        "d": coder::distinct_log_ceilings(&q)?,
        "bound": bound,
    });
    match out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&book_json).expect("json value serializes");
            std::fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            if pretty {
                Ok(format!("wrote {} codewords to {}\nbound {}", book.len(), path.display(), bound))
            } else {
                Ok(render(&summary))
            }
        }
        None if pretty => {
            Ok(book.entries().iter().map(|e| format!("{:?}\t{}", e.label, e.codeword)).collect::<Vec<_>>().join("\n"))
        }
        None => Ok(render(&book_json)),
    }
}

fn target_distribution(book: &CodeBook, target: &Path, csv: bool) -> Result<Distribution, Failure> {
    let labels = book.labels().to_vec();
    let counts = if csv {
        let (tl, tc) = parse_counts_csv(&read_text(target)?)?;
        let mut counts = vec![0u64; labels.len()];
        for (l, c) in tl.iter().zip(tc) {
            let i = book.index_of(l).ok_or_else(|| Error::UnknownSymbol(l.clone()))?;
            counts[i] = c;
        }
        counts
    } else {
        count_over(&labels, &read(target)?)?
    };
    Ok(empirical_distribution(labels, counts, Smoothing::None)?)
}

fn cmd_stats(code: &Path, target: &Path, csv: bool, pretty: bool) -> CmdResult {
    let (book, q) = CodeBook::from_json(&read_text(code)?)?;
    let q = q.ok_or_else(|| Failure::Input(format!("{}: codebook carries no sample probabilities", code.display())))?;
    let p = target_distribution(&book, target, csv)?;
    let report = coder::evaluate(&p, &book, &q)?;
    if pretty {
        return Ok(format!(
            "avg_len           {}\nentropy           {}\nrelative_entropy  {}\nexcess            {}\nbound             {}",
            report.avg_len, report.entropy, report.relative_entropy, report.excess, report.bound
        ));
    }
    Ok(render(&serde_json::to_value(report).expect("report serializes")))
}

fn cmd_bench(cfg: BenchConfig) -> CmdResult {
    let rows = bench::run(&cfg)?;
    Ok(bench::to_csv(&rows).trim_end().to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    let result = match cli.cmd {
        Cmd::Tree { file, int, algo, dump_level_tree } => cmd_tree(&file, int, algo, dump_level_tree, pretty),
        Cmd::Code { sample, csv, smoothing, alphabet, out } => {
            cmd_code(&sample, csv, smoothing, alphabet, out.as_deref(), pretty)
        }
        Cmd::Stats { code, target, csv } => cmd_stats(&code, &target, csv, pretty),
        Cmd::Bench { n, d, trials, seed, algo, threads, deterministic } => cmd_bench(BenchConfig {
            n,
            d,
            trials,
            seed,
            algos: algo
                .into_iter()
                .map(|a| match a {
                    BenchAlgo::New => Algorithm::New,
                    BenchAlgo::Sorted => Algorithm::Sorted,
                })
                .collect(),
            threads,
            deterministic,
        }),
    };
    match result {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
