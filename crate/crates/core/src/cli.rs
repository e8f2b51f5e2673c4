//! Command-line driver. Every subcommand produces a [`Report`]: ordered
//! `key: value` fields plus an optional body (a proof, a TFF file). Exit
//! codes: 0 success, 1 negative result, 2 undecided, 3 usage or input error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::compile::{compile_axioms, default_universe, export_tff, AxiomTag, TffOptions};
use crate::kernel::{check, parse_proof_file, print_proof, ProofTree, Verdict};
use crate::rewrite::{e_normalize, reaches, Reach, ReachabilityBudget, DEFAULT_FUEL};
use crate::search::{cut_candidates, prove, SearchConfig, SearchOutcome, DEFAULT_DEPTH, DEFAULT_MAX_NODES};
use crate::syntax::parse::{elaborate_prop, elaborate_term, parse_sort_sexp, read_vars};
use crate::syntax::sexp::read_all;
use crate::syntax::{parse_sequent_file, Context, ParseError, Sequent, Signature, Sort};
use crate::theory::{build_hol, build_holpm, is_clausal_system, load_theory, Polarity, RewriteSystem};
use crate::translate::hol_to_holpm;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "polmod", version, about = "Proof checker and tools for polarized deduction modulo")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Reachability budget, in explored propositions.
    #[arg(long, default_value_t = DEFAULT_FUEL, global = true)]
    fuel: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pol {
    Neg,
    Pos,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a proof against a goal, or every `NAME.proof.sexp` /
    /// `NAME.goal.sexp` pair in a directory.
    Check {
        #[arg(long, default_value = "HOL")]
        theory: String,
        proof: Option<PathBuf>,
        goal: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["proof", "goal"])]
        dir: Option<PathBuf>,
    },
    /// Translate a cut-free HOL proof into a HOLpm proof of the same goal.
    Translate {
        proof: PathBuf,
        goal: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Decide whether a theory is clausal.
    Clausal {
        #[arg(long, default_value = "HOL")]
        theory: String,
    },
    /// Compile a theory to first-order axioms in TFF.
    Compile {
        #[arg(long, default_value = "HOL")]
        theory: String,
        /// Space-separated sorts, e.g. "o (o -> o) (o -> o -> o)".
        #[arg(long)]
        universe: Option<String>,
        #[arg(long)]
        explicit_equality: bool,
        /// Sequent file added as the conjecture.
        #[arg(long)]
        conjecture: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Search for a proof of a goal.
    Prove {
        #[arg(long, default_value = "HOL")]
        theory: String,
        goal: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Allow cuts on the goal's atoms, their one-step reducts and expansions.
        #[arg(long)]
        allow_cut: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
        #[arg(long)]
        emit_proof: Option<PathBuf>,
    },
    /// E-normalize a term. TERM is text or a file, optionally preceded by `(vars ...)`.
    Normalize {
        #[arg(long, default_value = "HOL")]
        theory: String,
        term: String,
    },
    /// Decide whether FROM rewrites to TO at a polarity.
    Reaches {
        #[arg(long, default_value = "HOL")]
        theory: String,
        #[arg(long, value_enum, default_value_t = Pol::Pos)]
        polarity: Pol,
        /// Variable declarations, e.g. "(x o) (y o)".
        #[arg(long, default_value = "")]
        vars: String,
        from: String,
        to: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
}

/// Result of one subcommand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub status: i32,
    pub fields: Vec<(String, String)>,
    pub body: Option<String>,
}

impl Report {
    fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Machine => {
                for (k, v) in &self.fields {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
            Format::Human => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    let _ = writeln!(out, "{:width$}  {v}", format!("{k}:"), width = width + 1);
                }
            }
        }
        if let Some(b) = &self.body {
            out.push_str(b);
            if !b.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn input_err(path: &Path, e: impl ToString) -> CliError {
    CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn theory(name: &str) -> Result<RewriteSystem, CliError> {
    load_theory(name).map_err(CliError::Usage)
}

fn load_goal(path: &Path, sig: &Signature) -> Result<Sequent, CliError> {
    parse_sequent_file(&read(path)?, sig).map(|(s, _)| s).map_err(|e| input_err(path, e))
}

fn load_proof(path: &Path, sig: &Signature) -> Result<ProofTree, CliError> {
    parse_proof_file(&read(path)?, sig).map_err(|e| input_err(path, e))
}

/// Text given inline, or the contents of the file it names.
fn text_or_file(arg: &str) -> Result<String, CliError> {
    let p = Path::new(arg);
    if !arg.trim_start().starts_with('(') && p.is_file() {
        read(p)
    } else {
        Ok(arg.to_string())
    }
}

fn inline_err(e: impl ToString) -> CliError {
    CliError::Input {
        path: "<argument>".into(),
        msg: e.to_string(),
    }
}

fn parse_vars(text: &str, sig: &Signature) -> Result<Context, CliError> {
    let mut ctx = Context::new();
    if text.trim().is_empty() {
        return Ok(ctx);
    }
    let forms = read_all(&format!("(vars {text})")).map_err(|e| inline_err(ParseError::from(e)))?;
    read_vars(&forms[0], sig, &mut ctx).map_err(inline_err)?;
    Ok(ctx)
}

fn parse_universe(text: &str, sig: &Signature) -> Result<BTreeSet<Sort>, CliError> {
    let forms = read_all(text).map_err(|e| inline_err(ParseError::from(e)))?;
    forms
        .iter()
        .map(|s| parse_sort_sexp(s, sig, &BTreeSet::new(), false).map_err(inline_err))
        .collect()
}

fn verdict_status(v: Verdict) -> i32 {
    match v {
        Verdict::Valid => EXIT_OK,
        Verdict::Invalid => EXIT_NEGATIVE,
        Verdict::Undecided => EXIT_UNDECIDED,
    }
}

fn check_pair(rs: &RewriteSystem, proof: &Path, goal: &Path, budget: ReachabilityBudget) -> Result<Report, CliError> {
    let g = load_goal(goal, &rs.sig)?;
    let p = load_proof(proof, &rs.sig)?;
    let r = check(&p, &g, rs, budget);
    let mut rep = Report {
        status: verdict_status(r.verdict),
        ..Default::default()
    };
    rep.field("theory", &rs.name);
    rep.field("verdict", r.verdict);
    rep.field("size", r.size);
    rep.field("cut-free", if p.is_cut_free() { "yes" } else { "no" });
    if let Some(f) = r.failure {
        rep.field("failure", f);
    }
    Ok(rep)
}

fn check_dir(rs: &RewriteSystem, dir: &Path, budget: ReachabilityBudget) -> Result<Report, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter_map(|n| n.strip_suffix(".proof.sexp").map(str::to_string))
        .collect();
    names.sort();
    let results: Vec<(String, Result<Report, CliError>)> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| {
                let proof = dir.join(format!("{n}.proof.sexp"));
                let goal = dir.join(format!("{n}.goal.sexp"));
                s.spawn(move || check_pair(rs, &proof, &goal, budget))
            })
            .collect();
        names
            .iter()
            .cloned()
            .zip(handles.into_iter().map(|h| h.join().expect("checker thread")))
            .collect()
    });
    let mut rep = Report::default();
    rep.field("theory", &rs.name);
    rep.field("files", results.len());
    let mut valid = 0;
    for (name, r) in results {
        match r {
            Ok(r) => {
                valid += usize::from(r.status == EXIT_OK);
                rep.status = rep.status.max(r.status);
                let size = r.get("size").unwrap_or("?").to_string();
                rep.field(&name, format!("{} size {size}", r.get("verdict").unwrap_or("?")));
            }
            Err(e) => {
                rep.status = rep.status.max(EXIT_NEGATIVE);
                rep.field(&name, format!("error {e}"));
            }
        }
    }
    rep.field("valid", valid);
    Ok(rep)
}

fn translate_cmd(proof: &Path, goal: &Path, output: Option<&Path>, budget: ReachabilityBudget) -> Result<Report, CliError> {
    let (hol, pm) = (build_hol(), build_holpm());
    let g = load_goal(goal, &hol.sig)?;
    let p = load_proof(proof, &hol.sig)?;
    let mut rep = Report::default();
    match hol_to_holpm(&p, &g, &hol, &pm, budget) {
        Err(e) => {
            rep.status = EXIT_NEGATIVE;
            rep.field("translated", "no");
            rep.field("error", e);
        }
        Ok((out, trace)) => {
            let r = check(&out, &g, &pm, budget);
            rep.status = verdict_status(r.verdict);
            rep.field("translated", "yes");
            rep.field("verdict", r.verdict);
            rep.field("input-size", trace.input_size);
            rep.field("output-size", trace.output_size);
            rep.field("cut-free", if out.is_cut_free() { "yes" } else { "no" });
            for (case, n) in trace.counts() {
                rep.field(&format!("case.{case}"), n);
            }
            let text = print_proof(&out);
            match output {
                Some(path) => write(path, &text)?,
                None => rep.body = Some(text),
            }
        }
    }
    Ok(rep)
}

fn clausal_cmd(rs: &RewriteSystem) -> Report {
    let c = is_clausal_system(rs);
    let mut rep = Report {
        status: if c.clausal { EXIT_OK } else { EXIT_NEGATIVE },
        ..Default::default()
    };
    rep.field("theory", &rs.name);
    rep.field("clausal", if c.clausal { "yes" } else { "no" });
    rep.field("offenders", c.offenders.len());
    for o in &c.offenders {
        rep.field("offender", format!("{} {}: {} ({})", o.polarity, o.rule, o.reason, o.rhs));
    }
    rep
}

struct CompileArgs<'a> {
    universe: Option<&'a str>,
    explicit_equality: bool,
    conjecture: Option<&'a Path>,
    output: Option<&'a Path>,
}

fn compile_cmd(rs: &RewriteSystem, args: CompileArgs) -> Result<Report, CliError> {
    let goal = args.conjecture.map(|p| load_goal(p, &rs.sig)).transpose()?;
    let universe = match (args.universe, &goal) {
        (Some(u), _) => parse_universe(u, &rs.sig)?,
        (None, Some(g)) => default_universe(g),
        (None, None) => rs.sig.base_sorts.iter().map(|b| Sort::base(b)).collect(),
    };
    let ax = compile_axioms(rs, &universe).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = export_tff(
        &ax,
        goal.as_ref(),
        TffOptions {
            explicit_equality: args.explicit_equality,
        },
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rep = Report::default();
    rep.field("theory", &rs.name);
    let sorts: Vec<String> = universe.iter().map(Sort::to_string).collect();
    rep.field("universe", sorts.join(" "));
    rep.field("axioms", ax.axioms.len());
    for tag in [AxiomTag::EqualityTheory, AxiomTag::Equation, AxiomTag::NegRule, AxiomTag::PosRule] {
        rep.field(tag.name(), ax.count(tag));
    }
    match args.output {
        Some(path) => write(path, &text)?,
        None => rep.body = Some(text),
    }
    Ok(rep)
}

struct ProveArgs<'a> {
    goal: &'a Path,
    depth: usize,
    allow_cut: bool,
    max_nodes: usize,
    emit_proof: Option<&'a Path>,
}

fn prove_cmd(rs: &RewriteSystem, args: ProveArgs, budget: ReachabilityBudget) -> Result<Report, CliError> {
    if args.depth == 0 {
        return Err(CliError::Usage("--depth must be at least 1".into()));
    }
    let g = load_goal(args.goal, &rs.sig)?;
    let cfg = SearchConfig {
        max_depth: args.depth,
        budget,
        max_nodes: args.max_nodes,
        cut_candidates: if args.allow_cut { cut_candidates(&g, rs, budget) } else { Vec::new() },
    };
    let r = prove(&g, rs, &cfg);
    let mut rep = Report {
        status: match r.outcome {
            SearchOutcome::Proved(_) => EXIT_OK,
            SearchOutcome::Exhausted => EXIT_NEGATIVE,
            SearchOutcome::FuelOut => EXIT_UNDECIDED,
        },
        ..Default::default()
    };
    rep.field("theory", &rs.name);
    rep.field("outcome", r.outcome.name());
    rep.field("nodes", r.nodes);
    rep.field("max-depth", r.max_depth);
    if let Some(why) = &r.rejected {
        rep.field("rejected", why);
    }
    if let Some(p) = r.outcome.proof() {
        rep.field("size", p.size());
        rep.field("cut-free", if p.is_cut_free() { "yes" } else { "no" });
        let text = print_proof(p);
        match args.emit_proof {
            Some(path) => write(path, &text)?,
            None => rep.body = Some(text),
        }
    }
    Ok(rep)
}

fn normalize_cmd(rs: &RewriteSystem, arg: &str, fuel: usize) -> Result<Report, CliError> {
    let text = text_or_file(arg)?;
    let forms = read_all(&text).map_err(|e| inline_err(ParseError::from(e)))?;
    let mut ctx = Context::new();
    let mut term = None;
    for f in &forms {
        if f.is_form("vars") {
            read_vars(f, &rs.sig, &mut ctx).map_err(inline_err)?;
        } else if term.is_none() {
            term = Some(elaborate_term(f, &rs.sig, &ctx, None).map_err(inline_err)?);
        } else {
            return Err(CliError::Usage("expected a single term".into()));
        }
    }
    let t = term.ok_or_else(|| CliError::Usage("no term given".into()))?;
    let mut rep = Report::default();
    rep.field("theory", &rs.name);
    rep.field("input", &t);
    match e_normalize(rs, &t, fuel) {
        Ok(n) => rep.field("normal", n),
        Err(crate::rewrite::RewriteError::FuelExhausted { steps, partial }) => {
            rep.status = EXIT_UNDECIDED;
            rep.field("normal", "undecided");
            rep.field("steps", steps);
            rep.field("partial", partial);
        }
    }
    Ok(rep)
}

fn reaches_cmd(rs: &RewriteSystem, pol: Pol, vars: &str, from: &str, to: &str, budget: ReachabilityBudget) -> Result<Report, CliError> {
    let ctx = parse_vars(vars, &rs.sig)?;
    let prop = |text: &str| -> Result<_, CliError> {
        let forms = read_all(&text_or_file(text)?).map_err(|e| inline_err(ParseError::from(e)))?;
        let [form] = forms.as_slice() else {
            return Err(CliError::Usage("expected a single proposition".into()));
        };
        elaborate_prop(form, &rs.sig, &ctx).map_err(inline_err)
    };
    let (a, b) = (prop(from)?, prop(to)?);
    let pol = match pol {
        Pol::Neg => Polarity::Negative,
        Pol::Pos => Polarity::Positive,
    };
    let r = reaches(rs, &a, &b, pol, budget);
    let mut rep = Report {
        status: match r {
            Reach::Reachable => EXIT_OK,
            Reach::Unreachable => EXIT_NEGATIVE,
            Reach::Undecided => EXIT_UNDECIDED,
        },
        ..Default::default()
    };
    rep.field("theory", &rs.name);
    rep.field("polarity", pol);
    rep.field(
        "reach",
        match r {
            Reach::Reachable => "yes",
            Reach::Unreachable => "no",
            Reach::Undecided => "undecided",
        },
    );
    Ok(rep)
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let budget = ReachabilityBudget::new(cli.fuel);
    match &cli.command {
        Command::Check { theory: t, proof, goal, dir } => {
            let rs = theory(t)?;
            match (dir, proof, goal) {
                (Some(d), _, _) => check_dir(&rs, d, budget),
                (None, Some(p), Some(g)) => check_pair(&rs, p, g, budget),
                _ => Err(CliError::Usage("check needs PROOF and GOAL, or --dir".into())),
            }
        }
        Command::Translate { proof, goal, output } => translate_cmd(proof, goal, output.as_deref(), budget),
        Command::Clausal { theory: t } => Ok(clausal_cmd(&theory(t)?)),
        Command::Compile {
            theory: t,
            universe,
            explicit_equality,
            conjecture,
            output,
        } => compile_cmd(
            &theory(t)?,
            CompileArgs {
                universe: universe.as_deref(),
                explicit_equality: *explicit_equality,
                conjecture: conjecture.as_deref(),
                output: output.as_deref(),
            },
        ),
        Command::Prove {
            theory: t,
            goal,
            depth,
            allow_cut,
            max_nodes,
            emit_proof,
        } => prove_cmd(
            &theory(t)?,
            ProveArgs {
                goal,
                depth: *depth,
                allow_cut: *allow_cut,
                max_nodes: *max_nodes,
                emit_proof: emit_proof.as_deref(),
            },
            budget,
        ),
        Command::Normalize { theory: t, term } => normalize_cmd(&theory(t)?, term, cli.fuel),
        Command::Reaches {
            theory: t,
            polarity,
            vars,
            from,
            to,
        } => reaches_cmd(&theory(t)?, *polarity, vars, from, to, budget),
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run_with(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(rep) => {
            let _ = out.write_all(rep.render(cli.format).as_bytes());
            rep.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// [`run_with`] on captured buffers: `(status, stdout, stderr)`.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(std::iter::once("polmod").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let args: Vec<OsString> = args.into_iter().collect();
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
