//! Command-line front end. Every command writes to a caller-supplied sink and
//! returns the process exit code, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 input outside the scope of
//! the decomposition rule, 3 failed verification.

mod selftest;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::criteria::evaluate_natural;
use crate::crystal::crystal_graph;
use crate::error::{Error, Result};
use crate::filtration::{chain, decompose_quotient, ChainStep, DecompositionSummand};
use crate::natmod::{build_natural, tables_json, verify_relations, NatModule};
use crate::rootdata::{make_cartan, AffineWeight, Family, FiniteWeight};

pub use selftest::{run_selftest, SelftestConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_COVERED: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

/// Environment variable that takes precedence over `--seed`.
pub const SEED_ENV: &str = "AFK_SEED";

#[derive(Parser, Debug)]
#[command(name = "afk", version, about = "Loop modules of the natural representation of classical quantum affine algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summands of the filtration quotient Cx_n/Cx_{n+1}.
    Decompose(WeightArgs),
    /// The chain of submodules and the collapse status of each step.
    Chain(WeightArgs),
    /// Irreducibility and reducibility criteria for X(Lambda) (x) L(V).
    Criteria(WeightArgs),
    /// Check every defining relation on a window of t-exponents.
    VerifyRelations(RelationArgs),
    /// The crystal graph in DOT format.
    CrystalGraph(TypeArgs),
    /// Raising and lowering scalars as JSON.
    Tables(TypeArgs),
    /// Run every built-in check.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct TypeArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    /// Coroot pairings n_0,n_1,...,n_l.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "varpi")]
    pub weight: Option<String>,
    /// A finite weight m_1,...,m_l, embedded into the affine lattice.
    #[arg(long, allow_hyphen_values = true)]
    pub varpi: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub delta: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i64,
}

#[derive(Args, Debug)]
pub struct RelationArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub hi: i64,
    /// Zero the action of F_1 before checking.
    #[arg(long)]
    pub corrupt: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Number of random Lambda per type of rank above 3, and of random ring-axiom triples.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Zero the action of F_1 in every module used by the relation suite.
    #[arg(long)]
    pub corrupt: bool,
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("`{x}` in `{s}` is not an integer"))))
        .collect()
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) => EXIT_USAGE,
        Error::NotCovered(_) => EXIT_NOT_COVERED,
        _ => EXIT_FAILED,
    }
}

fn module(ty: &TypeArgs) -> Result<NatModule> {
    build_natural(&make_cartan(ty.family, ty.rank)?)
}

fn lambda_of(m: &NatModule, args: &WeightArgs) -> Result<AffineWeight> {
    let lambda = match (&args.weight, &args.varpi) {
        (Some(w), None) => AffineWeight::new(parse_int_list(w)?, 0),
        (None, Some(v)) => {
            let varpi = parse_int_list(v)?;
            if varpi.len() != m.rank() {
                return Err(Error::Parse(format!("--varpi needs {} entries, got {}", m.rank(), varpi.len())));
            }
            m.cartan.embed(&FiniteWeight::new(varpi))
        }
        (None, None) => return Err(Error::Parse("one of --weight or --varpi is required".into())),
        (Some(_), Some(_)) => return Err(Error::Parse("--weight and --varpi are exclusive".into())),
    };
    if lambda.omega.len() != m.rank() + 1 {
        return Err(Error::Parse(format!("--weight needs {} entries, got {}", m.rank() + 1, lambda.omega.len())));
    }
    Ok(lambda.shift_delta(args.delta))
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

#[derive(Serialize, serde::Deserialize, Debug, PartialEq, Eq)]
pub struct DecomposeOutput {
    pub lambda: AffineWeight,
    pub n: i64,
    pub summands: Vec<DecompositionSummand>,
    pub chain: Vec<ChainStep>,
}

fn fmt_affine(w: &AffineWeight) -> String {
    let omega: Vec<String> = w.omega.iter().map(i64::to_string).collect();
    format!("({}; {})", omega.join(","), w.delta)
}

fn fmt_finite(w: &FiniteWeight) -> String {
    let v: Vec<String> = w.varpi.iter().map(i64::to_string).collect();
    format!("({})", v.join(","))
}

fn chain_text(steps: &[ChainStep]) -> String {
    let mut s = format!("{:>4}  {:>9}  {:>6}  {:<9}  {}\n", "step", "generator", "t", "status", "collapses if");
    for st in steps {
        let conds: Vec<String> = st
            .collapse
            .iter()
            .map(|c| if c.below == 1 { format!("Lambda_{} = 0", c.index) } else { format!("Lambda_{} < {}", c.index, c.below) })
            .collect();
        s += &format!(
            "{:>4}  {:>9}  {:>6}  {:<9}  {}\n",
            st.j,
            format!("w_{}", st.generator),
            st.t_exponent,
            if st.strict { "strict" } else { "collapsed" },
            conds.join(" or ")
        );
    }
    s
}

fn cmd_decompose(args: &WeightArgs, out: &mut dyn Write) -> Result<()> {
    let m = module(&args.ty)?;
    let lambda = lambda_of(&m, args)?;
    let summands = decompose_quotient(&m, &lambda, args.n)?;
    let steps = chain(&m, &lambda, args.n)?;
    let text = match args.ty.format {
        Format::Json => json(&DecomposeOutput { lambda, n: args.n, summands, chain: steps }),
        Format::Text => {
            let mut s = format!("Lambda = {}, n = {}\n", fmt_affine(&lambda), args.n);
            s += &format!("{:<16}  {:>4}  {:<24}  {:>4}\n", "mu", "n_mu", "highest weight", "mult");
            for x in &summands {
                s += &format!(
                    "{:<16}  {:>4}  {:<24}  {:>4}\n",
                    fmt_finite(&x.mu),
                    x.n_mu,
                    fmt_affine(&x.highest_weight),
                    x.multiplicity
                );
            }
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn cmd_chain(args: &WeightArgs, out: &mut dyn Write) -> Result<()> {
    let m = module(&args.ty)?;
    let lambda = lambda_of(&m, args)?;
    let steps = chain(&m, &lambda, args.n)?;
    let text = match args.ty.format {
        Format::Json => json(&steps),
        Format::Text => chain_text(&steps),
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn cmd_criteria(args: &WeightArgs, out: &mut dyn Write) -> Result<()> {
    let m = module(&args.ty)?;
    let lambda = lambda_of(&m, args)?;
    let report = evaluate_natural(&m, &lambda)?;
    let text = match args.ty.format {
        Format::Json => json(&report),
        Format::Text => format!(
            "trivial filtration: {}\nreducible:          {}\nverdict:            {}\n",
            report.trivial, report.reducible, report.verdict
        ),
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn cmd_verify(args: &RelationArgs, out: &mut dyn Write) -> Result<bool> {
    let mut m = module(&args.ty)?;
    if args.corrupt {
        m.zero_lowering(1);
    }
    let report = verify_relations(&m, args.lo, args.hi)?;
    let text = match args.ty.format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                s += &format!(
                    "{} {:<18} checked={:<4} excluded={}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.checked,
                    c.excluded
                );
                for f in &c.failures {
                    s += &format!("     {f}\n");
                }
            }
            let failed = report.failed().count();
            s += &format!("{} relations, {} failed\n", report.checks.len(), failed);
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(report.all_passed())
}

fn cmd_tables(args: &TypeArgs, out: &mut dyn Write) -> Result<()> {
    let m = module(args)?;
    let t = tables_json(&m);
    let text = match args.format {
        Format::Json => json(&t),
        Format::Text => {
            let mut s = String::new();
            for (op, arrows) in [("E", &t.e), ("F", &t.f)] {
                for a in arrows {
                    s += &format!("{op}_{} w_{} = ({}) w_{}\n", a.i, a.from, a.scalar, a.to);
                }
            }
            for note in &m.scalars.notes {
                s += &format!("# {note}\n");
            }
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

/// Seed from the environment if set, else the flag.
pub fn effective_seed(flag: u64) -> std::result::Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}=`{v}` is not an unsigned integer")),
        Err(_) => Ok(flag),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Decompose(a) => cmd_decompose(a, out).map(|_| EXIT_OK),
        Command::Chain(a) => cmd_chain(a, out).map(|_| EXIT_OK),
        Command::Criteria(a) => cmd_criteria(a, out).map(|_| EXIT_OK),
        Command::VerifyRelations(a) => cmd_verify(a, out).map(|ok| if ok { EXIT_OK } else { EXIT_FAILED }),
        Command::CrystalGraph(a) => module(a).and_then(|m| {
            let name = format!("{}{}", a.family, a.rank);
            out.write_all(crystal_graph(&m).to_dot(&name).as_bytes()).map_err(io_err).map(|_| EXIT_OK)
        }),
        Command::Tables(a) => cmd_tables(a, out).map(|_| EXIT_OK),
        Command::Selftest(a) => match effective_seed(a.seed) {
            Ok(seed) => {
                let cfg = SelftestConfig { samples: a.samples, seed, corrupt: a.corrupt };
                let report = run_selftest(&cfg);
                out.write_all(report.text.as_bytes()).map_err(io_err).map(|_| if report.passed { EXIT_OK } else { EXIT_FAILED })
            }
            Err(msg) => Err(Error::Parse(msg)),
        },
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["afk"];
        full.extend_from_slice(args);
        let code = main_with_args(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn decompose_a2() {
        let (code, out, _) = run_args(&["decompose", "--family", "A", "--rank", "2", "--weight", "1,1,0", "--delta", "0", "--n", "0"]);
        assert_eq!(code, 0);
        let v: DecomposeOutput = serde_json::from_str(&out).unwrap();
        assert_eq!(v.summands.len(), 2);
    }

    #[test]
    fn not_covered_and_parse_errors() {
        let (code, _, err) = run_args(&["decompose", "--family", "A", "--rank", "2", "--weight", "0,0,0", "--delta", "5"]);
        assert_eq!(code, EXIT_NOT_COVERED);
        assert!(err.contains("multiple of delta"));
        assert_eq!(run_args(&["decompose", "--family", "A", "--rank", "2", "--weight", "1,x,0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["decompose", "--family", "A", "--rank", "2", "--weight", "1,0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["decompose", "--family", "Q", "--rank", "2", "--weight", "1,0,0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn varpi_input() {
        let (code, out, _) = run_args(&["criteria", "--family", "A", "--rank", "2", "--varpi", "0,0", "--delta", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("irreducible (Thm B)"));
    }

    #[test]
    fn text_table() {
        let (code, out, _) = run_args(&["decompose", "--family", "A", "--rank", "2", "--weight", "1,1,0", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn corrupt_relations_fail() {
        let (code, out, _) = run_args(&["verify-relations", "--family", "A", "--rank", "2", "--corrupt", "--format", "text"]);
        assert_eq!(code, EXIT_FAILED);
        assert!(out.contains("FAIL EF(1,1)"));
    }
}
