//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 success or affirmative verdict, 1 well-formed negative
//! verdict, 2 usage or validation error, 3 resource limit exceeded.

use std::ffi::OsString;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use permsquare_core::solver::{DEFAULT_COUNT_BOUND, DEFAULT_ORACLE_BOUND};
use permsquare_core::words::{count_square_binary_words, DEFAULT_WORD_BOUND};
use permsquare_core::{
    bin_to_perm, build_forward_witness, build_instance, coproduct, find_occurrence, is_square_matching,
    is_square_oracle, is_square_word, perm_to_bin, shuffle, shuffle_member, square_roots, verify_instance, BinaryWord,
    CountFilter, DirectedMatching, Error, IndexSet, Permutation,
};

use crate::count;
use crate::format::{parse_arcs, parse_index_set, parse_perm, FormatError};
use crate::report::*;

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Matching,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Matching => "matching",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "permsquare", version, about = "Shuffle squares of permutations")]
pub struct Cli {
    /// Output format; csv applies to the counting commands only.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads for count-squares.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BOUND)]
    pub max_oracle_size: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_COUNT_BOUND)]
    pub max_count_size: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_BOUND)]
    pub max_word_length: usize,
    #[command(subcommand)]
    pub command: Command,
}

fn perm_arg(s: &str) -> Result<Permutation, FormatError> {
    parse_perm(s)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shuffle product of two permutations.
    Shuffle {
        #[arg(value_parser = perm_arg)]
        left: Permutation,
        #[arg(value_parser = perm_arg)]
        right: Permutation,
    },
    /// Unshuffling coproduct of a permutation.
    Coproduct {
        #[arg(value_parser = perm_arg)]
        perm: Permutation,
    },
    /// Decide whether a permutation is a square.
    IsSquare {
        #[arg(value_parser = perm_arg)]
        perm: Permutation,
        /// Print a root and a witness matching.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = Method::Matching)]
        method: Method,
    },
    /// All square roots of a permutation.
    SquareRoots {
        #[arg(value_parser = perm_arg)]
        perm: Permutation,
    },
    /// Count square permutations of each size.
    CountSquares {
        #[arg(long)]
        max_size: usize,
        /// Comma-separated patterns to avoid, e.g. 213,231.
        #[arg(long, value_delimiter = ',', value_parser = perm_arg)]
        avoid: Vec<Permutation>,
        /// Count classes under mirror, complement and inverse.
        #[arg(long)]
        classes: bool,
    },
    /// Count square binary words of each length.
    CountWords {
        #[arg(long)]
        max_length: usize,
    },
    /// Binary word to permutation.
    Bin2perm { word: String },
    /// Permutation avoiding 213 and 231 to binary word.
    Perm2bin {
        #[arg(value_parser = perm_arg)]
        perm: Permutation,
    },
    /// Decide whether a word is a shuffle square; each character is a letter.
    WordSquare { word: String },
    /// Decide whether a word is a shuffle of two others.
    ShuffleMember { word: String, left: String, right: String },
    /// Build the reduction instance for a pattern and a text permutation.
    Reduce {
        #[arg(long, value_parser = perm_arg)]
        pattern: Permutation,
        #[arg(long, value_parser = perm_arg)]
        text: Permutation,
        /// Positions of the occurrence to thread, e.g. 2,3,5.
        #[arg(long, value_parser = parse_index_set)]
        occurrence: Option<IndexSet>,
        /// Include the witness arcs in the output.
        #[arg(long)]
        emit_witness: bool,
    },
    /// Check a directed matching, given as host and "i->j,..." arcs.
    VerifyMatching {
        #[arg(value_parser = perm_arg)]
        host: Permutation,
        arcs: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceLimit { .. })
            | CliError::Format(FormatError::Core(Error::ResourceLimit { .. })) => EXIT_RESOURCE,
            _ => EXIT_ERROR,
        }
    }
}

struct Output {
    code: i32,
    stdout: String,
}

fn emit<R: Report>(report: &R, format: OutputFormat, code: i32) -> Result<Output, CliError> {
    let stdout = match format {
        OutputFormat::Text => report.text(),
        OutputFormat::Json => serde_json::to_string(report).map_err(|e| CliError::BadArgument(e.to_string()))? + "\n",
        OutputFormat::Csv => {
            report.csv().ok_or_else(|| CliError::BadArgument("csv output is only available for counts".into()))?
        }
    };
    Ok(Output { code, stdout })
}

fn verdict_code(yes: bool) -> i32 {
    if yes {
        EXIT_AFFIRMATIVE
    } else {
        EXIT_NEGATIVE
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { code: EXIT_ERROR, stdout: String::new(), stderr: rendered }
            } else {
                CommandResult { code: EXIT_AFFIRMATIVE, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match run(&cli) {
        Ok(out) => CommandResult { code: out.code, stdout: out.stdout, stderr: String::new() },
        Err(e) => CommandResult { code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Shuffle { left, right } => {
            let product = shuffle(left, right)?;
            let report = ShuffleReport {
                left: left.letters().to_vec(),
                right: right.letters().to_vec(),
                terms: product
                    .iter()
                    .map(|(p, c)| ShuffleTerm { perm: p.letters().to_vec(), coefficient: c })
                    .collect(),
                total: product.total().ok_or(Error::Overflow)?,
            };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::Coproduct { perm } => {
            let delta = coproduct(perm)?;
            let report = CoproductReport {
                perm: perm.letters().to_vec(),
                terms: delta
                    .iter()
                    .map(|(l, r, c)| TensorTerm {
                        left: l.letters().to_vec(),
                        right: r.letters().to_vec(),
                        coefficient: c,
                    })
                    .collect(),
                total: delta.total().ok_or(Error::Overflow)?,
            };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::IsSquare { perm, witness, method } => is_square(cli, perm, *witness, *method),
        Command::SquareRoots { perm } => {
            let roots = square_roots(perm, cli.max_oracle_size)?;
            let report = RootsReport {
                perm: perm.letters().to_vec(),
                roots: roots.iter().map(|r| r.letters().to_vec()).collect(),
            };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::CountSquares { max_size, avoid, classes } => {
            let filter = CountFilter { avoid: avoid.clone(), classes: *classes };
            let counted = count::count_squares(*max_size, &filter, cli.jobs.into(), cli.max_count_size)?;
            let report = CountSquaresReport {
                max_size: *max_size,
                avoid: filter.avoid.iter().map(|p| p.letters().to_vec()).collect(),
                classes: *classes,
                jobs: cli.jobs.into(),
                counts: size_counts(&counted.counts),
                elapsed_ms: counted.elapsed.map_or(0, |d| d.as_millis() as u64),
            };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::CountWords { max_length } => {
            let counts = count_square_binary_words(*max_length, cli.max_word_length)?;
            let report = CountWordsReport { max_length: *max_length, counts: size_counts(&counts) };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::Bin2perm { word } => {
            let bits = BinaryWord::from_str(word)?;
            let report = Bin2PermReport { word: bits.to_string(), perm: bin_to_perm(&bits).into_letters() };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::Perm2bin { perm } => {
            let word = perm_to_bin(perm)?;
            let report = Perm2BinReport { perm: perm.letters().to_vec(), word: word.to_string() };
            emit(&report, format, EXIT_AFFIRMATIVE)
        }
        Command::WordSquare { word } => {
            let letters: Vec<char> = word.chars().collect();
            let root = is_square_word(&letters);
            let report = WordSquareReport {
                word: word.clone(),
                square: root.is_some(),
                root: root.map(|r| r.into_iter().collect()),
            };
            let code = verdict_code(report.square);
            emit(&report, format, code)
        }
        Command::ShuffleMember { word, left, right } => {
            let chars = |s: &str| s.chars().collect::<Vec<char>>();
            let member = shuffle_member(&chars(word), &chars(left), &chars(right))?;
            let report = ShuffleMemberReport { word: word.clone(), left: left.clone(), right: right.clone(), member };
            emit(&report, format, verdict_code(member))
        }
        Command::Reduce { pattern, text, occurrence, emit_witness } => {
            reduce(format, pattern, text, occurrence.as_ref(), *emit_witness)
        }
        Command::VerifyMatching { host, arcs } => {
            let arcs = parse_arcs(arcs)?;
            let m = DirectedMatching::new(host.clone(), arcs.iter().copied())?;
            let (p1, p2) = (m.satisfies_p1(), m.satisfies_p2());
            let report = VerifyMatchingReport {
                host: host.letters().to_vec(),
                arcs: arcs.iter().map(|a| [a.source, a.sink]).collect(),
                p1,
                p2,
                root: (p1 && p2).then(|| m.sources_pattern().into_letters()),
            };
            emit(&report, format, verdict_code(p1 && p2))
        }
    }
}

fn size_counts(counts: &[u64]) -> Vec<SizeCount> {
    counts.iter().enumerate().map(|(size, &count)| SizeCount { size, count }).collect()
}

fn is_square(cli: &Cli, perm: &Permutation, want_witness: bool, method: Method) -> Result<Output, CliError> {
    let oracle = match method {
        Method::Oracle | Method::Both => Some(is_square_oracle(perm, cli.max_oracle_size)?),
        Method::Matching => None,
    };
    let search = match method {
        Method::Matching | Method::Both => Some(is_square_matching(perm)),
        Method::Oracle if want_witness && oracle.as_ref().is_some_and(Option::is_some) => {
            Some(is_square_matching(perm))
        }
        Method::Oracle => None,
    };
    if let (Some(o), Some(s)) = (&oracle, &search) {
        if o.is_some() != s.is_some() {
            return Err(CliError::BadArgument(format!("oracle and matching search disagree on {perm}")));
        }
    }
    let square = match (&oracle, &search) {
        (Some(o), _) => o.is_some(),
        (None, Some(s)) => s.is_some(),
        (None, None) => unreachable!("at least one method runs"),
    };
    let (root, witness) = if want_witness {
        let found = search.flatten();
        let root = found.as_ref().map(|w| w.root.clone()).or_else(|| oracle.flatten());
        let witness = found.map(|w| MatchingJson::new(w.matching.host().letters(), w.matching.arcs()));
        (root.map(Permutation::into_letters), witness)
    } else {
        (None, None)
    };
    let report = SquareReport { perm: perm.letters().to_vec(), method: method.name().into(), square, root, witness };
    emit(&report, cli.format, verdict_code(square))
}

fn reduce(
    format: OutputFormat,
    pattern: &Permutation,
    text: &Permutation,
    occurrence: Option<&IndexSet>,
    emit_witness: bool,
) -> Result<Output, CliError> {
    let inst = build_instance(text, pattern)?;
    let occurrence = match occurrence {
        Some(occ) => Some(occ.clone()),
        None => find_occurrence(pattern, text),
    };
    let witness = occurrence.as_ref().map(|occ| build_forward_witness(&inst, occ)).transpose()?;
    let violations = verify_instance(&inst, witness.as_ref().map(DirectedMatching::arcs));
    let c = inst.constants;
    let report = ReduceReport {
        pattern: pattern.letters().to_vec(),
        text: text.letters().to_vec(),
        occurrence: occurrence.map(|o| o.positions().to_vec()),
        mu: inst.mu.letters().to_vec(),
        constants: ConstantsJson { n1: c.n1, n2: c.n2, n3: c.n3, n4: c.n4 },
        layout: inst
            .layout
            .iter()
            .map(|s| GadgetJson { name: s.gadget.as_str().into(), start: s.start, end: s.end, offset: s.offset })
            .collect(),
        violations: violations.iter().map(ToString::to_string).collect(),
        witness: witness
            .filter(|_| emit_witness)
            .map(|w| WitnessJson { arcs: w.arcs().iter().map(|a| [a.source, a.sink]).collect() }),
    };
    let code = verdict_code(report.violations.is_empty());
    emit(&report, format, code)
}
