//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{bounds, code_total_set, constructive_set, layer_pair_set, KnownValues};
use crate::cube::{check_dim, VertexSet};
use crate::encode::{decode_model, emit_cnf, emit_ilp, CnfFormula, EncodeConfig, Pattern};
use crate::error::{Error, Result};
use crate::solve::{
    dpll_solve_with, exact_number_with, heuristic_search_with, two_phase_search_with, Branching,
    ExternalSolver, HeuristicOptions, SearchOptions, SearchResult, Seeds, SolveOutcome,
    SolverChoice, SolverConfig, Status,
};
use crate::visibility::{verify, verify_all_witnesses, Variant, VariantKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hypervis",
    version,
    about = "Mutual-visibility sets in hypercubes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a set file against a variant
    Verify(VerifyArgs),
    /// Write a constructed set
    Construct(ConstructArgs),
    /// Print known and derived bounds
    Bounds(BoundsArgs),
    /// Emit the DIMACS or LP model
    Encode(EncodeArgs),
    /// Solve a DIMACS file
    Solve(SolveArgs),
    /// Search for a large set
    Search(SearchArgs),
    /// Print the tabulated values
    Tables(TablesArgs),
}

fn parse_variant(s: &str) -> std::result::Result<VariantKind, String> {
    VariantKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_pattern(s: &str) -> std::result::Result<Pattern, String> {
    Pattern::from_str(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long, value_parser = parse_variant)]
    pub variant: VariantKind,
    #[arg(long)]
    pub set: PathBuf,
    /// Skip pairs farther apart than this (the pass is then not a certificate)
    #[arg(long)]
    pub max_distance: Option<u32>,
    #[arg(long)]
    pub all_witnesses: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// L_i around 0^h
    Layer,
    /// L_i ∪ L_{i+gap} around 0^h
    LayerPair,
    /// parity extension of a distance-3 code of length h-1
    CodeTotal,
    /// the best construction for --variant
    Floor,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub h: u32,
    #[arg(long, value_enum)]
    pub kind: Construction,
    /// Layer index (defaults to h/2 for layers, h/2-1 for layer pairs)
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long, default_value_t = 3)]
    pub gap: u32,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<VariantKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub h: u32,
    /// All four variants when omitted
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<VariantKind>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dimacs,
    Lp,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub h: u32,
    #[arg(long, value_parser = parse_variant)]
    pub variant: VariantKind,
    /// Required set size (SAT target or LP cardinality row)
    #[arg(long)]
    pub ell: Option<usize>,
    /// Longest encoded pair distance (defaults to h)
    #[arg(long)]
    pub path_cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Dimacs)]
    pub format: Format,
    /// Set file of vertices forced into M
    #[arg(long)]
    pub presets: Option<PathBuf>,
    #[arg(long, value_parser = parse_pattern)]
    pub forbid: Vec<Pattern>,
    /// Bound |M ∩ N[u]| for u in M (4 when given without a value)
    #[arg(long, num_args = 0..=1, default_missing_value = "4")]
    pub neighborhood_cap: Option<usize>,
    #[arg(long)]
    pub antipode: bool,
    /// Omit the reverse path-indicator clauses
    #[arg(long)]
    pub no_reverse: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Internal,
    External,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchingArg {
    Lowest,
    Activity,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value_t = SolverKind::Internal)]
    pub solver: SolverKind,
    /// External command; `{cnf}` is replaced by the file path
    #[arg(long)]
    pub solver_cmd: Option<String>,
    #[arg(long, value_enum)]
    pub branching: Option<BranchingArg>,
    #[arg(long)]
    pub max_conflicts: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub cnf: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Seconds before giving up
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Exit 10 for sat, 20 for unsat, 0 otherwise
    #[arg(long)]
    pub competition: bool,
    /// Write the decoded vertex set here when satisfiable
    #[arg(long)]
    pub set_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    TwoPhase,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedsArg {
    PresetLayers,
    Antipode,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub h: u32,
    #[arg(long, value_parser = parse_variant)]
    pub variant: VariantKind,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Pattern for the two-phase search
    #[arg(long, value_parser = parse_pattern)]
    pub pattern: Option<Pattern>,
    /// Skip phase two once phase one reaches this size
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long, value_enum, default_value_t = SeedsArg::PresetLayers)]
    pub seeds: SeedsArg,
    #[arg(long)]
    pub path_cap: Option<u32>,
    /// Seconds for the whole search
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the set here and metadata to <out>.meta
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Summary,
    Total,
    Exact,
    All,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, value_enum, default_value_t = Which::All)]
    pub which: Which,
}

/// Text printed by `tables --which <which>`.
pub fn tables_text(which: Which) -> String {
    let kv = KnownValues::embedded();
    match which {
        Which::Summary => kv.render_summary(),
        Which::Total => kv.render_total(),
        Which::Exact => kv.render_exact(),
        Which::All => format!(
            "{}\n{}\n{}",
            kv.render_exact(),
            kv.render_summary(),
            kv.render_total()
        ),
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Solver(_) => EXIT_UNKNOWN,
        _ => EXIT_USAGE,
    }
}

fn seconds(flag: &str, s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s)
        .map_err(|_| usage(format!("--{flag} must be a non-negative number of seconds")))
}

fn read_set(path: &Path, h: Option<u32>) -> Result<VertexSet> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    VertexSet::parse_text(&text, h)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    }
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
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
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Construct(a) => cmd_construct(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Encode(a) => cmd_encode(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Tables(a) => emit(out, None, &tables_text(a.which)).map(|_| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if let Some(h) = a.h {
        check_dim(h)?;
    }
    let variant = match a.max_distance {
        Some(d) => Variant::relaxed(a.variant, d)?,
        None => Variant::new(a.variant),
    };
    let set = read_set(&a.set, a.h)?;
    let start = Instant::now();
    let verdict = verify(&set, variant);
    let elapsed = start.elapsed();
    if a.json {
        let mut j = json!({
            "h": set.dim(),
            "variant": a.variant.name(),
            "size": set.len(),
            "status": if verdict.ok { "ok" } else { "fail" },
            "elapsed_ms": elapsed.as_millis() as u64,
        });
        if let Some(w) = verdict.witness {
            j["witness"] = json!([w.u.to_string(), w.v.to_string()]);
        }
        if !verdict.certified {
            j["certified"] = json!(false);
        }
        writeln!(out, "{j}")?;
    } else if verdict.ok {
        write!(
            out,
            "ok: {} set of size {} in Q_{}",
            a.variant,
            set.len(),
            set.dim()
        )?;
        if !verdict.certified {
            write!(
                out,
                " (pairs beyond distance {} skipped; not a certificate)",
                variant.max_check_distance().unwrap_or(0)
            )?;
        }
        writeln!(out)?;
    } else {
        let w = verdict.witness.expect("failures carry a witness");
        writeln!(out, "fail: {w}")?;
        if a.all_witnesses {
            for w in verify_all_witnesses(&set, variant) {
                writeln!(out, "witness: {w}")?;
            }
        }
    }
    Ok(if verdict.ok { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_construct(a: ConstructArgs, out: &mut dyn Write) -> Result<i32> {
    check_dim(a.h)?;
    let h = a.h;
    let (set, label) = match a.kind {
        Construction::Layer => {
            let i = a.i.unwrap_or((h / 2).max(1));
            (layer_pair_set(h, i, 0)?, format!("layer h={h} i={i}"))
        }
        Construction::LayerPair => {
            let i = a.i.unwrap_or((h / 2).saturating_sub(1).max(1));
            (
                layer_pair_set(h, i, a.gap)?,
                format!("layer-pair h={h} i={i} gap={}", a.gap),
            )
        }
        Construction::CodeTotal => (code_total_set(h)?, format!("code-total h={h}")),
        Construction::Floor => {
            let v = a
                .variant
                .ok_or_else(|| usage("--kind floor needs --variant"))?;
            (constructive_set(h, v)?, format!("floor h={h} variant={v}"))
        }
    };
    let text = format!("# {label} size={}\n{}", set.len(), set.to_text());
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    check_dim(a.h)?;
    let kinds: Vec<VariantKind> = a.variant.map_or(VariantKind::ALL.to_vec(), |v| vec![v]);
    for kind in kinds {
        let r = bounds(a.h, kind)?;
        if a.json {
            let j = json!({
                "h": a.h,
                "variant": kind.name(),
                "lower": r.best_lower(),
                "upper": r.best_upper(),
                "status": if r.exact().is_some() { "exact" } else { "bounds" },
            });
            writeln!(out, "{j}")?;
        } else {
            out.write_all(r.render().as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn encode_config(a: &EncodeArgs) -> Result<EncodeConfig> {
    check_dim(a.h)?;
    let mut cfg = EncodeConfig::new(a.h, a.variant);
    if let Some(s) = a.path_cap {
        cfg.path_cap = s;
    }
    cfg.target = a.ell;
    for &p in &a.forbid {
        cfg = cfg.forbid(p);
    }
    cfg.neighborhood_cap = a.neighborhood_cap;
    cfg.antipode_closure = a.antipode;
    cfg.reverse_implications = !a.no_reverse;
    cfg.validate()?;
    if let Some(p) = &a.presets {
        cfg.presets = Some(read_set(p, Some(a.h))?);
        cfg.validate()?;
    }
    Ok(cfg)
}

fn cmd_encode(a: EncodeArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = encode_config(&a)?;
    let text = match a.format {
        Format::Dimacs => emit_cnf(&cfg)?.to_dimacs(),
        Format::Lp => emit_ilp(&cfg)?.to_lp(),
    };
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn solver_choice(a: &SolverArgs, timeout: Option<Duration>) -> Result<SolverChoice> {
    match a.solver {
        SolverKind::Internal => {
            if a.solver_cmd.is_some() {
                return Err(usage("--solver-cmd needs --solver external"));
            }
            let branching = match a.branching {
                Some(BranchingArg::Activity) => Branching::Activity,
                Some(BranchingArg::Lowest) => Branching::LowestIndex,
                None => Branching::default(),
            };
            Ok(SolverChoice::Internal(SolverConfig {
                branching,
                max_conflicts: a.max_conflicts,
                time_limit: timeout,
            }))
        }
        SolverKind::External => {
            if a.branching.is_some() || a.max_conflicts.is_some() {
                return Err(usage(
                    "--branching and --max-conflicts apply to the internal solver",
                ));
            }
            let mut ext = match &a.solver_cmd {
                Some(c) => ExternalSolver::new(c.clone()),
                None => ExternalSolver::from_env().ok_or_else(|| {
                    usage(format!(
                        "--solver external needs --solver-cmd or {}",
                        crate::solve::SOLVER_ENV
                    ))
                })?,
            };
            ext.timeout = timeout;
            Ok(SolverChoice::External(ext))
        }
    }
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let timeout = a.timeout.map(|s| seconds("timeout", s)).transpose()?;
    let choice = solver_choice(&a.solver, timeout)?;
    let text = std::fs::read_to_string(&a.cnf)
        .map_err(|e| Error::Io(format!("{}: {e}", a.cnf.display())))?;
    let formula = CnfFormula::parse_dimacs(&text)?;
    let outcome = match choice {
        SolverChoice::Internal(cfg) => dpll_solve_with(&formula, &cfg).0,
        SolverChoice::External(ext) => ext.solve(&formula)?,
    };
    match &outcome {
        SolveOutcome::Sat(model) => {
            writeln!(out, "s SATISFIABLE")?;
            let lits: Vec<String> = model
                .iter()
                .enumerate()
                .map(|(i, &b)| {
                    if b {
                        format!("{}", i + 1)
                    } else {
                        format!("-{}", i + 1)
                    }
                })
                .chain(std::iter::once("0".to_string()))
                .collect();
            for chunk in lits.chunks(16) {
                writeln!(out, "v {}", chunk.join(" "))?;
            }
            if let Some(p) = &a.set_out {
                let set = decode_model(&formula, model)?;
                std::fs::write(p, set.to_text())?;
            }
        }
        SolveOutcome::Unsat => writeln!(out, "s UNSATISFIABLE")?,
        SolveOutcome::Unknown => writeln!(out, "s UNKNOWN")?,
    }
    Ok(match (&outcome, a.competition) {
        (SolveOutcome::Sat(_), true) => 10,
        (SolveOutcome::Unsat, true) => 20,
        (SolveOutcome::Unknown, true) => 0,
        (SolveOutcome::Sat(_), false) => EXIT_OK,
        (SolveOutcome::Unsat, false) => EXIT_FAIL,
        (SolveOutcome::Unknown, false) => EXIT_UNKNOWN,
    })
}

fn print_result(out: &mut dyn Write, label: &str, r: &SearchResult) -> Result<()> {
    let cert = r.certificate.map_or("none".to_string(), |c| c.to_string());
    writeln!(
        out,
        "{label}: size {} status {} certificate {} elapsed_ms {}",
        r.size,
        r.status,
        cert,
        r.elapsed_ms()
    )?;
    Ok(())
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    check_dim(a.h)?;
    if a.mode != Mode::TwoPhase && (a.pattern.is_some() || a.target.is_some()) {
        return Err(usage("--pattern and --target apply to --mode two-phase"));
    }
    if a.mode != Mode::Heuristic && a.path_cap.is_some() {
        return Err(usage("--path-cap applies to --mode heuristic"));
    }
    let time_limit = a.time_limit.map(|s| seconds("time-limit", s)).transpose()?;
    let mut solver = solver_choice(&a.solver, None)?;
    if let (SolverChoice::Internal(cfg), None) = (&mut solver, a.solver.branching) {
        cfg.branching = Branching::Activity;
    }
    let opts = SearchOptions { solver, time_limit };
    let mut extra = Vec::new();
    let result = match a.mode {
        Mode::Exact => exact_number_with(a.h, a.variant, &opts)?,
        Mode::TwoPhase => {
            let pattern = a
                .pattern
                .ok_or_else(|| usage("--mode two-phase needs --pattern"))?;
            let r = two_phase_search_with(a.h, a.variant, pattern, a.target, &opts)?;
            extra.push(("phase1", r.phase1.clone()));
            if let Some(p2) = &r.phase2 {
                extra.push(("phase2", p2.clone()));
            }
            r.best
        }
        Mode::Heuristic => {
            let seeds = match a.seeds {
                SeedsArg::PresetLayers => Seeds::PresetLayers,
                SeedsArg::Antipode => Seeds::Antipode,
            };
            let hopts = HeuristicOptions {
                search: opts,
                path_cap: a.path_cap,
            };
            heuristic_search_with(a.h, a.variant, seeds, &hopts)?
        }
    };
    if a.json {
        writeln!(out, "{}", result.to_json())?;
    } else {
        for (label, r) in &extra {
            print_result(out, label, r)?;
        }
        print_result(out, "result", &result)?;
    }
    if let Some(p) = &a.out {
        result.write_files(p)?;
    }
    Ok(match (a.mode, result.status) {
        (Mode::Exact, Status::LowerBoundOnly) => EXIT_UNKNOWN,
        _ => EXIT_OK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("hypervis").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["verify"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bounds", "--h", "0"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["construct", "--h", "4", "--kind", "floor"]).0,
            EXIT_USAGE
        );
        let (code, _, err) = run_str(&[
            "search",
            "--h",
            "3",
            "--variant",
            "mutual",
            "--pattern",
            "k12-star",
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--pattern"));
        assert_eq!(
            run_str(&[
                "encode",
                "--h",
                "3",
                "--variant",
                "mutual",
                "--path-cap",
                "4"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(
            run_str(&["search", "--h", "3", "--variant", "nope"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn bounds_json() {
        let (code, out, _) = run_str(&["bounds", "--h", "8", "--variant", "mutual", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["lower"], 116);
        assert_eq!(v["upper"], 118);
    }

    #[test]
    fn search_exact_small() {
        let (code, out, _) = run_str(&["search", "--h", "3", "--variant", "dual", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["size"], 4);
        assert_eq!(v["status"], "optimal");
    }
}
