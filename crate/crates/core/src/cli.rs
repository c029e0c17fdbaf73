//! Command-line front end and the `.fsr` text format.
//!
//! ```text
//! # comments start with '#'
//! n=3 type=gal
//! f1 = x1 | !x2
//! f2 = (x1 & !x2 & x3) | (!x1 & x2)
//! f3 = x1 & (x2 <-> x3)
//! L = d8[3 4 2 3 6 6 4 4]
//! ```
//!
//! The header comes first. A Fibonacci file (`type=fib`) holds only the
//! feedback line `f<n>`; a Galois file holds `f1` … `fn`. Lines of the form
//! `<name> = d<size>[…]` attach named matrices. A file without update
//! functions takes its transition matrix from the first named full matrix of
//! size `2^n`.
//!
//! Every command returns its report and exit code; the `fsrkit` binary only
//! prints them. Exit codes: 0 success (or relation holds), 1 relation fails,
//! 2 error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::expr::{parse, BoolExpr, GateCostModel};
use crate::fib::feedback_of;
use crate::fib2gal::{
    conjugate, enumerate_equivalents, evaluate, select_minimal, GaloisCandidate, Selection,
};
use crate::gal2fib::{equivalent, min_stage_fibonacci_with, simulate, DEFAULT_MAX_FREE};
use crate::stp::{
    check_stages, encode_state, galois_transition, parse_delta, synthesize_expr, Configuration,
    FsrSpec, PermutationTransform, TransitionMatrix,
};

/// A parsed `.fsr` file.
#[derive(Debug, Clone, PartialEq)]
pub struct FsrFile {
    pub n: usize,
    pub configuration: Configuration,
    /// Update functions; `None` when the file gives only matrices.
    pub spec: Option<FsrSpec>,
    /// Named matrices in file order, as written.
    pub matrices: Vec<(String, String)>,
}

fn file_err(line: usize, message: impl Into<String>) -> Error {
    Error::FsrFile {
        line,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_header(text: &str, line: usize) -> Result<(usize, Configuration)> {
    let mut n = None;
    let mut conf = None;
    for field in text.split_whitespace() {
        if let Some(v) = field.strip_prefix("n=") {
            let v: usize = v
                .parse()
                .map_err(|_| file_err(line, format!("bad register count {v:?}")))?;
            check_stages(v).map_err(|e| file_err(line, e.to_string()))?;
            n = Some(v);
        } else if let Some(v) = field.strip_prefix("type=") {
            conf = Some(match v {
                "fib" => Configuration::Fibonacci,
                "gal" => Configuration::Galois,
                _ => {
                    return Err(file_err(
                        line,
                        format!("unknown type {v:?}, expected fib or gal"),
                    ))
                }
            });
        } else {
            return Err(file_err(line, format!("unexpected header field {field:?}")));
        }
    }
    match (n, conf) {
        (Some(n), Some(c)) => Ok((n, c)),
        _ => Err(file_err(line, "header must be `n=<int> type=<fib|gal>`")),
    }
}

/// Rebases an expression error onto the whole line.
fn expr_err(e: Error, line: usize, offset: usize) -> Error {
    match e {
        Error::Syntax { column, message } => {
            file_err(line, format!("column {}: {message}", column + offset))
        }
        Error::VariableOutOfRange { index, n, column } => file_err(
            line,
            format!(
                "column {}: variable x{index} is out of range for {n} registers",
                column + offset
            ),
        ),
        other => file_err(line, other.to_string()),
    }
}

impl FsrFile {
    pub fn parse(text: &str) -> Result<FsrFile> {
        let mut header = None;
        let mut header_line = 1;
        let mut functions: Vec<Option<BoolExpr>> = Vec::new();
        let mut matrices = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some((n, conf)) = header else {
                let h = parse_header(content, line)?;
                functions = vec![None; h.0];
                header = Some(h);
                header_line = line;
                continue;
            };
            let eq = content.find('=').ok_or_else(|| {
                file_err(line, "expected `f<k> = <expr>` or `<name> = d<size>[...]`")
            })?;
            let lhs = content[..eq].trim();
            let rhs = &content[eq + 1..];
            let register = lhs.strip_prefix('f').and_then(|k| k.parse::<usize>().ok());
            if let Some(k) = register {
                if k == 0 || k > n {
                    return Err(file_err(
                        line,
                        format!("register f{k} is out of range for n={n}"),
                    ));
                }
                if conf == Configuration::Fibonacci && k != n {
                    return Err(file_err(
                        line,
                        format!("a Fibonacci file defines only f{n}"),
                    ));
                }
                if functions[k - 1].is_some() {
                    return Err(file_err(line, format!("f{k} is defined twice")));
                }
                let e = parse(rhs, n).map_err(|e| expr_err(e, line, eq + 1))?;
                functions[k - 1] = Some(e);
            } else if is_ident(lhs) {
                let value = rhs.trim();
                parse_delta(value).map_err(|e| file_err(line, e.to_string()))?;
                matrices.push((lhs.to_string(), value.to_string()));
            } else {
                return Err(file_err(line, format!("bad left-hand side {lhs:?}")));
            }
        }
        let (n, configuration) =
            header.ok_or_else(|| file_err(1, "missing header `n=<int> type=<fib|gal>`"))?;
        let given = functions.iter().filter(|f| f.is_some()).count();
        let spec = match configuration {
            _ if given == 0 => None,
            Configuration::Fibonacci => Some(FsrSpec::fibonacci(
                n,
                functions.pop().flatten().expect("checked"),
            )?),
            Configuration::Galois => {
                if let Some(k) = functions.iter().position(Option::is_none) {
                    return Err(file_err(header_line, format!("missing f{}", k + 1)));
                }
                Some(FsrSpec::galois(functions.into_iter().flatten().collect())?)
            }
        };
        Ok(FsrFile {
            n,
            configuration,
            spec,
            matrices,
        })
    }

    pub fn read(path: &Path) -> Result<FsrFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Named matrix by name.
    pub fn matrix(&self, name: &str) -> Option<&str> {
        self.matrices
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    /// Transition matrix from the update functions, else from the first
    /// named `2^n`-state matrix.
    pub fn transition(&self) -> Result<TransitionMatrix> {
        if let Some(spec) = &self.spec {
            return Ok(galois_transition(spec));
        }
        self.matrices
            .iter()
            .filter_map(|(_, v)| v.parse::<TransitionMatrix>().ok())
            .find(|l| l.n() == self.n)
            .ok_or_else(|| file_err(0, "no update functions and no full transition matrix"))
    }
}

/// Report text and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

/// A system given either as a path to an `.fsr` file or as a literal
/// transition matrix such as `d4[1 3 1 4]`.
pub fn load_system(arg: &str) -> Result<TransitionMatrix> {
    if arg.trim_start().starts_with('d') && arg.contains('[') && !Path::new(arg).exists() {
        return arg.parse();
    }
    FsrFile::read(Path::new(arg))?.transition()
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn cmd_to_matrix(file: &FsrFile) -> Result<Outcome> {
    Ok(Outcome::ok(format!("{}\n", file.transition()?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Emit {
    #[default]
    Matrix,
    Logic,
    All,
}

#[derive(Debug, Clone, Default)]
pub struct Fib2GalOptions {
    /// Permutations to try; `None` for all of them.
    pub budget: Option<u128>,
    pub seed: Option<u64>,
    pub emit: Emit,
    pub minimize: bool,
    /// Use this relabeling instead of enumerating.
    pub perm: Option<PermutationTransform>,
}

fn write_selection(out: &mut String, s: &Selection, emit: Emit) {
    let n = s.candidate.matrix.n();
    writeln!(out, "n={n} type=gal").unwrap();
    if emit != Emit::Logic {
        writeln!(out, "L_g = {}", s.candidate.matrix).unwrap();
        writeln!(out, "T = {}", s.candidate.transform).unwrap();
    }
    if emit != Emit::Matrix {
        for (k, c) in s.coordinates.iter().enumerate() {
            writeln!(out, "f{} = {}", k + 1, c.expr).unwrap();
        }
    }
    let support: Vec<String> = s
        .coordinates
        .iter()
        .map(|c| c.reduced.support.len().to_string())
        .collect();
    writeln!(
        out,
        "# support {} = {}; area {} um2; delay {} ps; gates {}",
        support.join("+"),
        s.support_sum,
        s.area_um2,
        s.delay_ps,
        s.gate_count
    )
    .unwrap();
}

pub fn cmd_fib2gal(file: &FsrFile, opts: &Fib2GalOptions) -> Result<Outcome> {
    if file.configuration != Configuration::Fibonacci {
        return Err(Error::Enumeration("fib2gal expects a type=fib file".into()));
    }
    let lf = file.transition()?;
    if let Some(column) = crate::fib::fibonacci_violation(&lf) {
        return Err(Error::NotFibonacci { column });
    }
    let model = GateCostModel::CMOS_90NM;
    let mut out = String::new();
    writeln!(out, "# source L_f = {lf}").unwrap();

    if let Some(pi) = &opts.perm {
        let matrix = conjugate(&lf, pi)?;
        let s = evaluate(
            GaloisCandidate {
                matrix,
                transform: pi.clone(),
            },
            &model,
        );
        write_selection(&mut out, &s, opts.emit);
        return Ok(Outcome::ok(out));
    }

    let mut stream = enumerate_equivalents(&lf, opts.budget, opts.seed)?;
    let mut emitted = 0u128;
    if opts.minimize {
        if let Some(s) = select_minimal(stream.by_ref(), &model) {
            emitted = s.considered;
            write_selection(&mut out, &s, opts.emit);
        }
    } else {
        for c in stream.by_ref() {
            emitted += 1;
            writeln!(out, "\n# candidate {emitted}").unwrap();
            write_selection(&mut out, &evaluate(c, &model), opts.emit);
        }
    }
    writeln!(
        out,
        "# examined {} permutations; {} candidates; {} fix the source; {}",
        stream.tried(),
        emitted,
        stream.fixing(),
        if stream.is_exhaustive() {
            "exhaustive"
        } else {
            "sampled"
        }
    )
    .unwrap();
    Ok(Outcome::ok(out))
}

pub fn cmd_gal2fib(file: &FsrFile, all_completions: bool, max_free: usize) -> Result<Outcome> {
    let lg = file.transition()?;
    let r = min_stage_fibonacci_with(&lg, max_free)?;
    let l = r.stages;
    let mut out = String::new();
    writeln!(out, "# source L_g = {lg}").unwrap();
    let rejected: Vec<String> = r.rejected.iter().map(|x| x.to_string()).collect();
    writeln!(
        out,
        "# stages {l}; rejected window lengths [{}]",
        rejected.join(" ")
    )
    .unwrap();
    let total = r
        .completions
        .total
        .map_or_else(|| "more than 2^127".into(), |t| t.to_string());
    writeln!(
        out,
        "# {} free columns; {total} completions{}",
        r.partial.free_columns().len(),
        if r.completions.exhaustive {
            ""
        } else {
            " (only the least is listed)"
        }
    )
    .unwrap();
    let least = &r.completions.matrices[0];
    let feedback = synthesize_expr(&feedback_of(least)?);
    writeln!(out, "n={l} type=fib").unwrap();
    writeln!(out, "f{l} = {feedback}").unwrap();
    writeln!(out, "partial = {}", r.partial).unwrap();
    writeln!(out, "state_map = {}", r.state_map).unwrap();
    writeln!(out, "L_f = {least}").unwrap();
    if all_completions {
        for (i, m) in r.completions.matrices.iter().enumerate() {
            let f = synthesize_expr(&feedback_of(m)?);
            writeln!(out, "c{} = {m}  # f{l} = {f}", i + 1).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum VerifyMode {
    /// The two sets of output sequences coincide.
    #[default]
    Equal,
    /// Every output sequence of the first system is produced by the second.
    Covers,
}

pub fn cmd_verify(a: &TransitionMatrix, b: &TransitionMatrix, mode: VerifyMode) -> Outcome {
    let e = equivalent(a, b);
    let mut out = String::new();
    writeln!(
        out,
        "equal={} a_in_b={} b_in_a={} phase_equal={}",
        e.equal, e.a_in_b, e.b_in_a, e.phase_equal
    )
    .unwrap();
    let fmt = |x: &Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    for (i, m) in e.a_to_b.iter().enumerate() {
        writeln!(out, "a {} -> b {}", i + 1, fmt(m)).unwrap();
    }
    for (i, m) in e.b_to_a.iter().enumerate() {
        writeln!(out, "b {} -> a {}", i + 1, fmt(m)).unwrap();
    }
    let holds = match mode {
        VerifyMode::Equal => e.equal,
        VerifyMode::Covers => e.a_in_b,
    };
    Outcome {
        stdout: out,
        code: if holds { 0 } else { 1 },
    }
}

/// Initial state of a simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    Index(usize),
    /// Register values `x1 … xn`.
    Bits(Vec<bool>),
}

pub fn cmd_simulate(l: &TransitionMatrix, init: &Init, steps: usize) -> Result<Outcome> {
    let x0 = match init {
        Init::Index(k) => *k,
        Init::Bits(b) => {
            if b.len() != l.n() {
                return Err(Error::LengthMismatch {
                    expected: l.n(),
                    found: b.len(),
                });
            }
            encode_state(b)
        }
    };
    Ok(Outcome::ok(format!("{}\n", bits(&simulate(l, x0, steps)?))))
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::SequenceFormat(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect()
}

#[derive(Debug, Parser)]
#[command(
    name = "fsrkit",
    version,
    about = "Convert between Fibonacci and Galois feedback shift registers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the transition matrix of an .fsr file.
    ToMatrix { file: PathBuf },
    /// Build same-stage Galois equivalents of a Fibonacci FSR.
    Fib2gal(Fib2GalArgs),
    /// Find a minimal-stage Fibonacci FSR reproducing a Galois FSR.
    Gal2fib {
        file: PathBuf,
        /// List every completion of the open columns.
        #[arg(long)]
        all_completions: bool,
        /// Open columns above which only the least completion is listed.
        #[arg(long, default_value_t = DEFAULT_MAX_FREE)]
        max_free: usize,
    },
    /// Compare two systems (files or literal matrices) by their output sequences.
    Verify {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t)]
        mode: VerifyMode,
    },
    /// Print the output bits from an initial state.
    Simulate {
        file: String,
        /// Initial state index (1-based).
        #[arg(long, conflicts_with = "init_bits")]
        init: Option<usize>,
        /// Initial register values x1..xn, e.g. 1011.
        #[arg(long)]
        init_bits: Option<String>,
        #[arg(long)]
        steps: usize,
    },
}

#[derive(Debug, Args)]
pub struct Fib2GalArgs {
    pub file: PathBuf,
    /// Permutations to try; sampling below the full count needs --seed.
    #[arg(long)]
    pub budget: Option<u128>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub emit: Emit,
    /// Print only the candidate with the fewest dependent variables, then least area.
    #[arg(long)]
    pub minimize: bool,
    /// Apply this partition-preserving relabeling, e.g. d4[2 1 3 4].
    #[arg(long)]
    pub perm: Option<String>,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::ToMatrix { file } => cmd_to_matrix(&FsrFile::read(file)?),
        Command::Fib2gal(a) => {
            let opts = Fib2GalOptions {
                budget: a.budget,
                seed: a.seed,
                emit: a.emit,
                minimize: a.minimize,
                perm: a.perm.as_deref().map(str::parse).transpose()?,
            };
            cmd_fib2gal(&FsrFile::read(&a.file)?, &opts)
        }
        Command::Gal2fib {
            file,
            all_completions,
            max_free,
        } => cmd_gal2fib(&FsrFile::read(file)?, *all_completions, *max_free),
        Command::Verify { a, b, mode } => Ok(cmd_verify(&load_system(a)?, &load_system(b)?, *mode)),
        Command::Simulate {
            file,
            init,
            init_bits,
            steps,
        } => {
            let init = match init_bits {
                Some(b) => Init::Bits(parse_bits(b)?),
                None => Init::Index(init.unwrap_or(1)),
            };
            cmd_simulate(&load_system(file)?, &init, *steps)
        }
    }
}

/// Parses `args`, runs the command and maps errors to exit code 2.
pub fn main_with<I, T>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (Outcome::ok(text), String::new())
            } else {
                (
                    Outcome {
                        stdout: String::new(),
                        code,
                    },
                    text,
                )
            };
        }
    };
    match run(&cli) {
        Ok(o) => (o, String::new()),
        Err(e) => (
            Outcome {
                stdout: String::new(),
                code: 2,
            },
            format!("error: {e}\n"),
        ),
    }
}
