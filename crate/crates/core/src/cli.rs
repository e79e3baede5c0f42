//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards its arguments and exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codes::{block_len, extended_code, generator_matrix, h_tilde, rm_code, CssCode};
use crate::conversion::{bit_string, ConversionReport, Converter, Direction, Mode};
use crate::cost::{cost_adp14, cost_ours, CostConfig, SCHEMA};
use crate::engine::{BranchSource, ForcedBranch, SeededBranch};
use crate::error::{Error, Result};
use crate::harness::sweep::branch_bits;
use crate::harness::{cross_validate, sweep_with, transversal_checks};
use crate::pauli::{Letter, PauliOperator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rmconv", version, about = "Reed-Muller code conversion by gauge fixing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    #[value(alias = "forward")]
    Fwd,
    #[value(alias = "backward")]
    Bwd,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Ft,
    Both,
}

impl DirArg {
    fn expand(self) -> Vec<Direction> {
        match self {
            DirArg::Fwd => vec![Direction::Forward],
            DirArg::Bwd => vec![Direction::Backward],
            DirArg::Both => vec![Direction::Forward, Direction::Backward],
        }
    }
}

impl ModeArg {
    fn expand(self) -> Vec<Mode> {
        match self {
            ModeArg::Full => vec![Mode::Full],
            ModeArg::Ft => vec![Mode::Ft],
            ModeArg::Both => vec![Mode::Full, Mode::Ft],
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print generator matrices, stabilizers and logical operators.
    Dump {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Also print the extended code on 2^(m+1) - 1 qubits.
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run one conversion and print its report.
    Convert {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, value_enum, default_value = "fwd")]
        direction: DirArg,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
        /// `none`, `X:5`, `Y:11`, or a Pauli string such as `X1 Z3`.
        #[arg(long, default_value = "none")]
        error: String,
        /// Gauge outcomes such as `001`, `random:SEED` or `all`; all zeros
        /// by default.
        #[arg(long)]
        branch: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Convert every single-qubit error through every gauge branch.
    Sweep {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, value_enum, default_value = "both")]
        direction: DirArg,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        /// Summary JSON destination.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-case JSON log destination.
        #[arg(long)]
        cases: Option<PathBuf>,
    },
    /// Compare the conversion cost against the full-measurement baseline.
    Cost {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the symbolic engine against dense state vectors.
    Oracle {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `none`, `X:5`-style single errors or a Pauli string.
pub fn parse_error_spec(spec: &str, n: usize) -> Result<PauliOperator> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("none") || spec == "I" {
        return Ok(PauliOperator::identity(n));
    }
    if let Some((letter, qubit)) = spec.split_once(':') {
        let letter = letter
            .trim()
            .chars()
            .next()
            .and_then(Letter::parse)
            .filter(|l| *l != Letter::I)
            .ok_or_else(|| Error::Usage(format!("bad error type in {spec:?}")))?;
        let q: usize = qubit
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad qubit in {spec:?}")))?;
        if q == 0 || q > n {
            return Err(Error::Usage(format!("qubit {q} outside 1..={n}")));
        }
        return Ok(PauliOperator::single(n, q - 1, letter));
    }
    PauliOperator::parse(n, spec)
}

enum BranchSpec {
    Bits(Vec<bool>),
    Random(u64),
    All,
}

fn parse_branch_spec(spec: &str, m: usize) -> Result<BranchSpec> {
    if spec == "all" {
        return Ok(BranchSpec::All);
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        return seed
            .parse()
            .map(BranchSpec::Random)
            .map_err(|_| Error::Usage(format!("bad seed in {spec:?}")));
    }
    let bits: Vec<bool> = spec
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Usage(format!("bad branch {spec:?}"))),
        })
        .collect::<Result<_>>()?;
    if bits.len() != m {
        return Err(Error::Usage(format!("branch {spec:?} needs {m} bits")));
    }
    Ok(BranchSpec::Bits(bits))
}

fn code_json(code: &CssCode) -> Value {
    json!({
        "label": code.label,
        "n": code.n,
        "stabilizers": code.generators().map(|g| json!({"origin": g.label(), "op": g.op})).collect::<Vec<_>>(),
        "logical_x": code.logical_x,
        "logical_z": code.logical_z,
    })
}

fn write_code(out: &mut dyn Write, code: &CssCode) -> std::io::Result<()> {
    writeln!(out, "{} on {} qubits, {} generators", code.label, code.n, code.generator_count())?;
    let width = code.generators().map(|g| g.label().len()).max().unwrap_or(0);
    for g in code.generators() {
        writeln!(out, "  {:<width$}  {}", g.label(), g.op)?;
    }
    writeln!(out, "  logical X  {}", code.logical_x)?;
    writeln!(out, "  logical Z  {}", code.logical_z)
}

fn dump(out: &mut dyn Write, m: usize, extended: bool, as_json: bool) -> Result<i32> {
    let g = generator_matrix(m)?;
    let h = h_tilde(m)?;
    let code = rm_code(m)?;
    let ext = if extended { Some(extended_code(m)?) } else { None };
    if as_json {
        let rows = |mat: &crate::gf2::BitMatrix| mat.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>();
        let doc = json!({
            "schema": SCHEMA,
            "command": "dump",
            "m": m,
            "g": rows(&g),
            "h_tilde": rows(&h),
            "code": code_json(&code),
            "extended": ext.as_ref().map(code_json),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "G(1,{m}), {} x {}", g.n_rows(), g.n_cols())?;
    writeln!(out, "{g}")?;
    writeln!(out, "H(1,{m}), {} x {}", h.n_rows(), h.n_cols())?;
    if h.n_rows() > 0 {
        writeln!(out, "{h}")?;
    }
    write_code(out, &code)?;
    if let Some(ext) = ext {
        write_code(out, &ext)?;
    }
    Ok(EXIT_OK)
}

fn convert(
    out: &mut dyn Write,
    m: usize,
    direction: DirArg,
    mode: ModeArg,
    error: &str,
    branch: Option<&str>,
    as_json: bool,
) -> Result<i32> {
    let (direction, mode) = match (direction.expand().as_slice(), mode.expand().as_slice()) {
        ([d], [mo]) => (*d, *mo),
        _ => return Err(Error::Usage("convert takes a single direction and mode".into())),
    };
    let conv = Converter::new(direction, m, mode)?;
    let err = parse_error_spec(error, block_len(m + 1))?;
    let zeros = "0".repeat(m);
    let reports: Vec<ConversionReport> = match parse_branch_spec(branch.unwrap_or(&zeros), m)? {
        BranchSpec::All => (0..1usize << m)
            .map(|b| conv.run(&err, &mut ForcedBranch::new(branch_bits(m, b))).map(|c| c.report))
            .collect::<Result<_>>()?,
        BranchSpec::Bits(bits) => vec![conv.run(&err, &mut ForcedBranch::new(bits))?.report],
        BranchSpec::Random(seed) => {
            let mut src: Box<dyn BranchSource> = Box::new(SeededBranch::new(seed));
            vec![conv.run(&err, src.as_mut())?.report]
        }
    };
    let ok = reports.iter().all(ConversionReport::passed);
    if as_json {
        let doc = json!({
            "schema": SCHEMA,
            "command": "convert",
            "passed": ok,
            "reports": reports,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            writeln!(out, "{r}")?;
            writeln!(out, "result           {}", if r.passed() { "pass" } else { "FAIL" })?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn sweep_cmd(
    out: &mut dyn Write,
    m: usize,
    direction: DirArg,
    mode: ModeArg,
    out_path: Option<PathBuf>,
    cases_path: Option<PathBuf>,
) -> Result<i32> {
    let mut sections = Vec::new();
    let mut logs = Vec::new();
    let mut ok = true;
    for d in direction.expand() {
        for mo in mode.expand() {
            let conv = Converter::new(d, m, mo)?;
            let r = sweep_with(&conv)?;
            ok &= r.all_passed();
            writeln!(
                out,
                "m = {m} {d:<8} {mo:<4}  {}/{} pass  ({} errors x {} branches, max residual weight {})",
                r.totals.passed,
                r.totals.cases,
                r.errors,
                r.branches,
                r.totals.max_residual_weight
            )?;
            for c in r.failures().take(5) {
                writeln!(out, "  failed: error {} branch {}", c.error, c.branch)?;
            }
            if cases_path.is_some() {
                logs.push(json!({"direction": d, "mode": mo, "cases": r.cases}));
            }
            sections.push(serde_json::to_value(&r)?);
        }
    }
    if let Some(path) = out_path {
        let doc = json!({"schema": SCHEMA, "command": "sweep", "m": m, "passed": ok, "sweeps": sections});
        std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")?;
    }
    if let Some(path) = cases_path {
        let doc = json!({"schema": SCHEMA, "command": "sweep", "m": m, "logs": logs});
        std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

const ABSOLUTE_NOTE: &str = "Absolute totals follow from the supplied primitive costs; \
published per-error-rate totals need the external primitive tables and are not reproduced.";

fn cost_cmd(out: &mut dyn Write, config: PathBuf, epsilon: Option<f64>, as_json: bool) -> Result<i32> {
    let cfg = CostConfig::load(&config)?;
    let models = match epsilon {
        Some(e) => vec![cfg
            .model(e)
            .ok_or_else(|| Error::Usage(format!("no model for epsilon {e}")))?
            .clone()],
        None => cfg.models.clone(),
    };
    let mut docs = Vec::new();
    for (i, model) in models.iter().enumerate() {
        let base = cost_adp14(model)?;
        let ours = cost_ours(model)?;
        let delta = base.total - ours.total;
        if as_json {
            docs.push(json!({
                "epsilon": model.epsilon,
                "adp14": base,
                "ours": ours,
                "delta": delta,
                "standard_method": model.standard_method,
            }));
            continue;
        }
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "{base}")?;
        writeln!(out, "{ours}")?;
        writeln!(out, "saving {delta:.3} ({:.1}% of baseline)", 100.0 * delta / base.total)?;
        if let Some(s) = model.standard_method {
            writeln!(out, "standard method (supplied) {s:.3}")?;
        }
    }
    if as_json {
        let doc = json!({"schema": SCHEMA, "command": "cost", "note": ABSOLUTE_NOTE, "models": docs});
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "note: {ABSOLUTE_NOTE}")?;
    }
    Ok(EXIT_OK)
}

fn oracle_cmd(out: &mut dyn Write, trials: usize, seed: u64, as_json: bool) -> Result<i32> {
    let summary = cross_validate(trials, seed)?;
    let gates = transversal_checks(seed)?;
    let ok = summary.all_passed() && gates.passed();
    if as_json {
        let doc = json!({
            "schema": SCHEMA,
            "command": "oracle",
            "passed": ok,
            "cross_validation": summary,
            "transversal": gates,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(
            out,
            "cross-validation  {}/{} pass, min fidelity {:.12}, min purity {:.12}",
            summary.passed, summary.trials, summary.min_fidelity, summary.min_purity
        )?;
        writeln!(out, "transversal H     fidelity {:.12}", gates.hadamard_fidelity)?;
        writeln!(
            out,
            "transversal T     |0> fidelity {:.12}, logical gate {:?} (T {:.6}, T-dagger {:.6})",
            gates.t_zero_fidelity, gates.logical_t, gates.t_fidelity, gates.t_dagger_fidelity
        )?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Dump { m, extended, json } => dump(out, m, extended, json),
        Command::Convert {
            m,
            direction,
            mode,
            error,
            branch,
            json,
        } => convert(out, m, direction, mode, &error, branch.as_deref(), json),
        Command::Sweep {
            m,
            direction,
            mode,
            out: path,
            cases,
        } => sweep_cmd(out, m, direction, mode, path, cases),
        Command::Cost { config, epsilon, json } => cost_cmd(out, config, epsilon, json),
        Command::Oracle { trials, seed, json } => oracle_cmd(out, trials, seed, json),
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code: 0 on success, 1 when a verification fails, 2 on bad usage.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "rmconv: {e}");
            match e {
                Error::Usage(_)
                | Error::OrderTooSmall { .. }
                | Error::Io(_)
                | Error::Json(_)
                | Error::CostModel(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

/// Gauge-branch strings in canonical order, for callers building their own
/// loops.
pub fn all_branches(m: usize) -> Vec<String> {
    (0..1usize << m).map(|b| bit_string(&branch_bits(m, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["rmconv"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn error_specs() {
        assert_eq!(parse_error_spec("X:5", 15).unwrap().to_string(), "X5");
        assert_eq!(parse_error_spec("Y:11", 15).unwrap().to_string(), "Y11");
        assert!(parse_error_spec("none", 15).unwrap().is_identity());
        assert!(parse_error_spec("X:16", 15).is_err());
        assert!(parse_error_spec("Q:1", 15).is_err());
        assert_eq!(parse_error_spec("X1 Z3", 15).unwrap().to_string(), "X1 Z3");
    }

    #[test]
    fn branch_specs() {
        assert!(matches!(parse_branch_spec("all", 3), Ok(BranchSpec::All)));
        assert!(matches!(parse_branch_spec("random:9", 3), Ok(BranchSpec::Random(9))));
        assert!(parse_branch_spec("01", 3).is_err());
        assert!(parse_branch_spec("0a1", 3).is_err());
        assert_eq!(all_branches(2), vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["convert", "--branch", "01"]).0, EXIT_USAGE);
        assert_eq!(call(&["convert", "--direction", "both"]).0, EXIT_USAGE);
        assert_eq!(call(&["dump", "--m", "2"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
    }

    #[test]
    fn two_faults_exit_1() {
        let (code, out, _) = call(&["convert", "--error", "X1 X2"]);
        assert_eq!(code, EXIT_FAILED);
        assert!(out.contains("FAIL"));
    }
}
