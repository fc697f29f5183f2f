//! `poset-index` command line.
//!
//! Exit status: 0 on success, 1 when a formula disagrees with the rank
//! oracle (or a sweep finds a mismatch), 2 on parse, usage and other errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::formulas::{nilpotent_index, solvable_index_h2};
use crate::io::parse_poset;
use crate::lie::{commutator_matrix, LabelOrder, MatrixJson, SymbolicMatrix, Variant};
use crate::poset::Poset;
use crate::rank::{rank, RankMethod, DEFAULT_TRIALS};
use crate::reduction::{default_names, reduce_once_named, reduce_to_height2_named};
use crate::verify::{sweep, Check, OracleMode, SweepConfig, DEFAULT_MAX_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "poset-index", version, about = "Index of Lie poset algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index by formula and by commutator-matrix rank, with a verdict.
    Index {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Nilpotent)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generic rank of a commutator matrix (poset file or `matrix --format json` output).
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Nilpotent)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Symbolic commutator matrix.
    Matrix {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Nilpotent)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
        /// Drop all-zero rows and columns.
        #[arg(long)]
        nonzero: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Height reduction trace with before/after Hasse diagrams.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        /// Stop after a single step.
        #[arg(long)]
        once: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hasse diagram as DOT.
    Hasse {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Exhaustive cross-check over all posets with 1..=max-n elements.
    Sweep {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Comma-separated subset of: nilpotent-formula, lower-bound,
        /// positivity, height-one, solvable-formula, reduction,
        /// method-agreement.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[command(flatten)]
        rank: RankArgs,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Poset file (text or JSON); `-` reads stdin.
    input: Option<PathBuf>,
    /// Inline poset text, `;` separating lines, e.g. "n 3; 1 < 2".
    #[arg(long, short = 'e', conflicts_with = "input")]
    expr: Option<String>,
}

#[derive(Args, Debug)]
struct RankArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Randomized)]
    method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl RankArgs {
    fn method(&self) -> RankMethod {
        match self.method {
            MethodArg::Exact => RankMethod::Exact,
            MethodArg::Randomized => RankMethod::Randomized {
                trials: self.trials,
                seed: self.seed,
            },
        }
    }

    fn describe(&self) -> String {
        match self.method {
            MethodArg::Exact => format!("exact (seed={})", self.seed),
            MethodArg::Randomized => {
                format!("randomized (trials={}, seed={})", self.trials, self.seed)
            }
        }
    }

    fn to_json(&self) -> serde_json::Value {
        json!({
            "method": match self.method { MethodArg::Exact => "exact", MethodArg::Randomized => "randomized" },
            "trials": self.trials,
            "seed": self.seed,
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VariantArg {
    Nilpotent,
    Solvable,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Nilpotent => Variant::Nilpotent,
            VariantArg::Solvable => Variant::Solvable,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Exact,
    Randomized,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrderArg {
    Lex,
    Blocks,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_ERROR,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_ERROR,
        message: message.into(),
    }
}

fn read_input(input: &InputArgs) -> Result<String, Failure> {
    if let Some(expr) = &input.expr {
        return Ok(expr.replace(';', "\n"));
    }
    match input.input.as_deref() {
        None => Err(fail(
            "no input: give a poset file, `-` for stdin, or --expr",
        )),
        Some(p) if p.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| fail(format!("stdin: {e}")))?;
            Ok(buf)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| fail(format!("{}: {e}", p.display()))),
    }
}

fn load_poset(input: &InputArgs) -> Result<Poset, Failure> {
    Ok(parse_poset(&read_input(input)?)?)
}

fn to_json_string(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(command: Command) -> Result<(i32, String), Failure> {
    match command {
        Command::Index {
            input,
            rank: rank_args,
            variant,
            format,
        } => index_cmd(&load_poset(&input)?, &rank_args, variant, format),
        Command::Rank {
            input,
            rank: rank_args,
            variant,
            format,
        } => rank_cmd(&read_input(&input)?, &rank_args, variant, format),
        Command::Matrix {
            input,
            variant,
            order,
            nonzero,
            format,
        } => {
            let p = load_poset(&input)?;
            let order = match order {
                OrderArg::Lex => LabelOrder::Lexicographic,
                OrderArg::Blocks => LabelOrder::HeightTwoBlocks,
            };
            let mut m = commutator_matrix(&p, variant.into(), order);
            if nonzero {
                m = m.without_zero_lines();
            }
            let text = match format {
                Format::Json => to_json_string(&m.to_json()),
                Format::Text | Format::Dot => m.render(&|q| q.to_string()),
            };
            Ok((EXIT_OK, text))
        }
        Command::Reduce {
            input,
            once,
            format,
        } => reduce_cmd(&load_poset(&input)?, once, format),
        Command::Hasse { input } => Ok((EXIT_OK, load_poset(&input)?.hasse_dot())),
        Command::Sweep {
            max_n,
            min_n,
            checks,
            rank: rank_args,
            output,
            format,
        } => sweep_cmd(min_n, max_n, checks, &rank_args, output, format),
    }
}

fn index_cmd(
    p: &Poset,
    rank_args: &RankArgs,
    variant: VariantArg,
    format: Format,
) -> Result<(i32, String), Failure> {
    let m = commutator_matrix(p, variant.into(), LabelOrder::Lexicographic);
    let r = rank(&m, rank_args.method())?;
    let oracle = m.dim() - r.rank;
    let report = match variant {
        VariantArg::Nilpotent => Some(nilpotent_index(p)),
        VariantArg::Solvable => solvable_index_h2(p).ok(),
    };
    let verdict = match &report {
        Some(rep) if rep.index == oracle => "AGREE",
        Some(_) => "DISAGREE",
        None => "ORACLE-ONLY",
    };
    let code = if verdict == "DISAGREE" {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    let text = match format {
        Format::Json => to_json_string(&json!({
            "variant": Variant::from(variant),
            "rank_method": rank_args.to_json(),
            "formula": report,
            "oracle": { "index": oracle, "dim": m.dim(), "rank": r },
            "verdict": verdict,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "variant: {}",
                if variant == VariantArg::Nilpotent {
                    "nilpotent"
                } else {
                    "solvable"
                }
            );
            let _ = writeln!(s, "method: {}", rank_args.describe());
            match &report {
                Some(rep) => {
                    let kind =
                        serde_json::to_value(rep.formula_used).expect("formula kind serializes");
                    let _ = writeln!(
                        s,
                        "formula: {} ({})",
                        rep.index,
                        kind.as_str().unwrap_or_default()
                    );
                }
                None => {
                    let _ = writeln!(s, "formula: n/a (height {} > 2)", p.height());
                }
            }
            let _ = writeln!(s, "oracle: {} (dim {}, rank {})", oracle, m.dim(), r.rank);
            let _ = writeln!(s, "verdict: {verdict}");
            s
        }
    };
    Ok((code, text))
}

fn rank_cmd(
    input: &str,
    rank_args: &RankArgs,
    variant: VariantArg,
    format: Format,
) -> Result<(i32, String), Failure> {
    let is_matrix = serde_json::from_str::<serde_json::Value>(input)
        .map(|v| v.get("entries").is_some())
        .unwrap_or(false);
    let (m, source) = if is_matrix {
        let json: MatrixJson = serde_json::from_str(input).map_err(|e| {
            Failure::from(Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })
        })?;
        (SymbolicMatrix::from_json(json)?, "matrix")
    } else {
        let p = parse_poset(input)?;
        (
            commutator_matrix(&p, variant.into(), LabelOrder::Lexicographic),
            "poset",
        )
    };
    let r = rank(&m, rank_args.method())?;
    let text = match format {
        Format::Json => to_json_string(&json!({
            "source": source,
            "dim": m.dim(),
            "rank_method": rank_args.to_json(),
            "result": r,
            "index": m.dim() - r.rank,
        })),
        _ => format!(
            "method: {}\ndim: {}\nrank: {}\nindex: {}\n",
            rank_args.describe(),
            m.dim(),
            r.rank,
            m.dim() - r.rank
        ),
    };
    Ok((EXIT_OK, text))
}

fn reduce_cmd(p: &Poset, once: bool, format: Format) -> Result<(i32, String), Failure> {
    let names = default_names(p);
    let (final_poset, final_names, steps) = if once {
        let step = reduce_once_named(p, &names)?;
        (step.after.clone(), step.after_names.clone(), vec![step])
    } else {
        reduce_to_height2_named(p, &names)
    };
    let text = match format {
        Format::Json => to_json_string(&json!({
            "steps": steps,
            "final": final_poset,
            "final_names": final_names,
        })),
        Format::Dot => {
            let mut s = String::new();
            for step in &steps {
                s.push_str(
                    &step
                        .before
                        .hasse_dot_named(|q| step.before_names[q - 1].clone()),
                );
                s.push_str(
                    &step
                        .after
                        .hasse_dot_named(|q| step.after_names[q - 1].clone()),
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            if steps.is_empty() {
                let _ = writeln!(
                    s,
                    "height {} already at most 2; nothing to reduce",
                    p.height()
                );
            }
            for (k, step) in steps.iter().enumerate() {
                let chain: Vec<&str> = step
                    .chain
                    .iter()
                    .map(|&q| step.before_names[q - 1].as_str())
                    .collect();
                let _ = writeln!(
                    s,
                    "step {}: case {} at {} (D_E={}, U_E={}), middle section {{{}}}",
                    k + 1,
                    match step.case {
                        crate::reduction::Case::One => 1,
                        crate::reduction::Case::Two => 2,
                    },
                    step.before_names[step.pivot - 1],
                    step.pivot_d_e,
                    step.pivot_u_e,
                    chain.join(" < ")
                );
                let fresh: Vec<String> = step
                    .new_elements
                    .iter()
                    .map(|e| format!("{} -> {}", e.name, e.label))
                    .collect();
                let _ = writeln!(s, "  new elements: {}", fresh.join(", "));
                let relabel: Vec<String> = step
                    .relabel
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| format!("{}->{}", i + 1, l))
                    .collect();
                let _ = writeln!(s, "  relabel: {}", relabel.join(" "));
                let _ = writeln!(s, "  before:");
                s.push_str(
                    &step
                        .before
                        .hasse_dot_named(|q| step.before_names[q - 1].clone()),
                );
                let _ = writeln!(s, "  after:");
                s.push_str(
                    &step
                        .after
                        .hasse_dot_named(|q| step.after_names[q - 1].clone()),
                );
            }
            let _ = writeln!(s, "final height: {}", final_poset.height());
            s
        }
    };
    Ok((EXIT_OK, text))
}

fn sweep_cmd(
    min_n: usize,
    max_n: usize,
    checks: Option<Vec<String>>,
    rank_args: &RankArgs,
    output: Option<PathBuf>,
    format: Format,
) -> Result<(i32, String), Failure> {
    let checks = match checks {
        None => Check::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| Check::parse(s.trim()).ok_or_else(|| fail(format!("unknown check `{s}`"))))
            .collect::<Result<_, _>>()?,
    };
    let oracle = match rank_args.method {
        MethodArg::Exact => OracleMode::Exact,
        MethodArg::Randomized => OracleMode::Randomized {
            trials: rank_args.trials,
            seed: rank_args.seed,
            spot_check_every: 100,
        },
    };
    // fail before spending minutes on the smaller sizes
    if max_n > DEFAULT_MAX_N {
        return Err(Error::ResourceBound {
            n: max_n,
            max: DEFAULT_MAX_N,
        }
        .into());
    }
    let config = SweepConfig {
        checks,
        oracle,
        max_n: DEFAULT_MAX_N,
    };
    let mut reports = Vec::new();
    for n in min_n..=max_n {
        reports.push(sweep(n, &config)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    let code = if passed { EXIT_OK } else { EXIT_MISMATCH };
    let json = to_json_string(&reports);
    if let Some(path) = &output {
        std::fs::write(path, &json).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    }
    let text = if format == Format::Json && output.is_none() {
        json
    } else {
        let mut s = format!("method: {}\n", rank_args.describe());
        for r in &reports {
            let runs: Vec<String> = r
                .checks_run
                .iter()
                .map(|(c, k)| format!("{}={k}", c.name()))
                .collect();
            let _ = writeln!(
                s,
                "n={} posets={} mismatches={} [{}]",
                r.n,
                r.poset_count,
                r.mismatches.len(),
                runs.join(" ")
            );
        }
        let _ = writeln!(s, "{}", if passed { "PASS" } else { "FAIL" });
        s
    };
    Ok((code, text))
}
