//! Command line front end. Exit codes: 0 success, 1 unsolved or incomplete,
//! 2 parse or validation error.

pub mod problem;
pub mod sysfile;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_eval, bound_from_system, bound_homogeneous, builtin_bound, DegreeBoundFn};
use crate::builtin::{builtin_system, fields};
use crate::completion::{complete_norman, complete_refined, CompletionOutcome, CompletionStatus};
use crate::diffop::OperatorSpec;
use crate::engine::{solve_main_problem_with_budget, verify_integral};
use crate::poly::{fmt_q, Ext, Poly, Printer, Q};
use crate::rules::{basic_rules, critical_pair, ReductionRule, ReductionSystem};

pub use problem::{parse_problem, parse_problem_file, ProblemError, ProblemFile, Target};
pub use sysfile::{load_system, load_system_str, serialize_system, SystemFileError};

#[derive(Parser, Debug)]
#[command(name = "redsys", version, about = "Reduction systems for Risch-Norman integration")]
struct Cli {
    /// Print completion events.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Norman,
    Refined,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the basic rules of a problem's operator.
    BasicRules {
        prob: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a completion process on the basic rules.
    Complete {
        prob: PathBuf,
        #[arg(long, value_enum, default_value = "refined")]
        algo: Algo,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        inner_budget: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve L(u) = f0 + Σ cᵢfᵢ with a reduction system.
    Integrate {
        prob: PathBuf,
        /// A system file or builtin:NAME.
        #[arg(long)]
        system: String,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Degree bounds from a system, from homogeneity, or built-in closed forms.
    Bound {
        prob: Option<PathBuf>,
        #[arg(long)]
        system: Option<String>,
        /// Comma separated weights; defaults to the problem's [weights].
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Family members checked explicitly.
        #[arg(long, default_value_t = 10)]
        cap: usize,
        /// Asserted sup of deg_w(Q) over family members.
        #[arg(long, allow_hyphen_values = true)]
        tail_sup: Option<String>,
        /// Use the homogeneity bound of the problem's operator.
        #[arg(long)]
        homogeneous: bool,
        /// Print a built-in closed-form bound.
        #[arg(long)]
        builtin: Option<String>,
        /// Evaluate the bound at these points.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        at: Vec<String>,
    },
    /// Re-check every rule identity on sampled α and look for critical pairs.
    Verify {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
}

/// Failure carrying its exit code.
struct Fail(i32, String);

impl Fail {
    fn input(msg: impl std::fmt::Display) -> Self {
        Fail(2, msg.to_string())
    }
}

type Res = Result<i32, Fail>;

/// Runs the command line `argv` (including the program name).
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn w(out: &mut dyn Write, s: impl AsRef<str>) {
    let _ = writeln!(out, "{}", s.as_ref());
}

fn load_problem(p: &Path) -> Result<ProblemFile, Fail> {
    parse_problem_file(p).map_err(|e| Fail::input(format!("{}: {e}", p.display())))
}

/// A system and the operator it was built for.
fn resolve_system(spec: &str) -> Result<(ReductionSystem, OperatorSpec), Fail> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let sys = builtin_system(name).ok_or_else(|| Fail::input(format!("unknown built-in system `{name}`")))?;
        let field = fields::by_name(name).expect("built-in systems have fields");
        return Ok((sys, field.op));
    }
    load_system(Path::new(spec)).map_err(|e| Fail::input(format!("{spec}: {e}")))
}

fn check_same_operator(prob: &ProblemFile, op: &OperatorSpec) -> Result<(), Fail> {
    if prob.n() != op.n() || prob.operator().p != op.p {
        return Err(Fail::input("the system was built for a different operator than the problem's"));
    }
    Ok(())
}

fn print_rule(out: &mut dyn Write, pr: &Printer, r: &ReductionRule) {
    w(out, format!("{}:", r.label()));
    w(out, format!("  P = {}", pr.laurent(r.p())));
    w(out, format!("  Q = {}", pr.laurent(r.q())));
    w(out, format!("  B = {}", r.b()));
}

fn save(out_path: &Option<PathBuf>, sys: &ReductionSystem, op: &OperatorSpec) -> Result<(), Fail> {
    if let Some(path) = out_path {
        std::fs::write(path, serialize_system(sys, op)).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn parse_q(s: &str) -> Result<Q, Fail> {
    s.trim().parse::<Q>().map_err(|_| Fail::input(format!("not a rational number: `{s}`")))
}

fn parse_ext(s: &str) -> Result<Ext, Fail> {
    match s.trim() {
        "-inf" => Ok(Ext::NegInf),
        "+inf" | "inf" => Ok(Ext::PosInf),
        t => parse_q(t).map(Ext::Fin),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Res {
    match cli.cmd {
        Cmd::BasicRules { prob, output } => {
            let p = load_problem(&prob)?;
            let op = p.operator();
            let sys = basic_rules(&op, &p.monomial_order());
            let pr = Printer::new(&p.vars);
            for r in &sys.rules {
                print_rule(out, &pr, r);
            }
            save(&output, &sys, &op)?;
            Ok(0)
        }
        Cmd::Complete { prob, algo, max_iter, inner_budget, output } => {
            let p = load_problem(&prob)?;
            let op = p.operator();
            let basic = basic_rules(&op, &p.monomial_order());
            let max_iter = max_iter.unwrap_or(p.budgets.max_iter);
            let res: CompletionOutcome = match algo {
                Algo::Norman => complete_norman(&basic, max_iter),
                Algo::Refined => complete_refined(&basic, max_iter, inner_budget.unwrap_or(p.budgets.inner_budget)),
            };
            if cli.trace {
                for line in res.render_trace() {
                    w(out, line);
                }
            }
            let pr = Printer::new(&p.vars);
            w(out, format!("status: {:?}", res.status));
            w(out, format!("iterations: {}", res.iterations));
            w(out, format!("rules: {}", res.system.rules.len()));
            for r in &res.system.rules {
                print_rule(out, &pr, r);
            }
            for k in &res.kernel_elements {
                w(out, format!("kernel element: {}", pr.poly(k)));
            }
            save(&output, &res.system, &op)?;
            Ok(if res.status == CompletionStatus::Complete { 0 } else { 1 })
        }
        Cmd::Integrate { prob, system, steps } => integrate(&prob, &system, steps, out),
        Cmd::Bound { prob, system, weights, cap, tail_sup, homogeneous, builtin, at } => {
            let phi: DegreeBoundFn;
            if let Some(name) = builtin {
                let (wv, f) = builtin_bound(&name).map_err(Fail::input)?;
                w(out, format!("weights: {}", wv.iter().map(fmt_q).collect::<Vec<_>>().join(",")));
                phi = f;
            } else {
                let p = prob.as_deref().map(load_problem).transpose()?;
                let wv: Vec<Q> = match (&weights, &p) {
                    (Some(s), _) => s.split(',').map(parse_q).collect::<Result<_, _>>()?,
                    (None, Some(p)) if !p.weights.is_empty() => p.weights[0].clone(),
                    _ => return Err(Fail::input("no weights given")),
                };
                if homogeneous {
                    let p = p.ok_or_else(|| Fail::input("--homogeneous needs a problem file"))?;
                    phi = bound_homogeneous(&p.operator().p, &wv).map_err(Fail::input)?;
                } else {
                    let spec = system.ok_or_else(|| Fail::input("--system is required"))?;
                    let (sys, op) = resolve_system(&spec)?;
                    if let Some(p) = &p {
                        check_same_operator(p, &op)?;
                    }
                    let tail = tail_sup.as_deref().map(parse_ext).transpose()?;
                    phi = bound_from_system(&sys, &wv, cap, tail).map_err(Fail::input)?;
                }
            }
            w(out, format!("phi(x) = {phi}"));
            w(out, format!("prefix: {}", phi.to_prefix()));
            for x in at {
                let x = parse_ext(&x)?;
                w(out, format!("phi({x}) = {}", bound_eval(&phi, &x)));
            }
            Ok(0)
        }
        Cmd::Verify { system, samples, cap } => verify(&system, samples, cap, out),
    }
}

fn integrate(prob: &Path, system: &str, steps: Option<usize>, out: &mut dyn Write) -> Res {
    let p = load_problem(prob)?;
    let (sys, op) = resolve_system(system)?;
    check_same_operator(&p, &op)?;
    let f0 = p.f0.clone().ok_or_else(|| Fail::input("the problem has no [f0]"))?;
    let rhs = |t: &Target| p.rhs(t).map_err(Fail::input);
    let f0_rhs = rhs(&f0)?;
    let fs_rhs: Vec<Poly> = p.fs.iter().map(rhs).collect::<Result<_, _>>()?;
    let pr = Printer::new(&p.vars);

    let sol = solve_main_problem_with_budget(&f0_rhs, &fs_rhs, &sys, steps.unwrap_or(p.budgets.steps));

    w(out, format!("u = {}", pr.poly(&sol.u)));
    w(out, format!("v = {}", pr.poly(&p.v)));
    let cs: Vec<String> = sol.constants.iter().map(fmt_q).collect();
    w(out, format!("c = [{}]", cs.join(", ")));
    for (i, h) in sol.homogeneous.iter().enumerate() {
        let hs: Vec<String> = h.iter().map(fmt_q).collect();
        w(out, format!("c free direction {}: [{}]", i + 1, hs.join(", ")));
    }
    w(out, format!("remainder = {}", pr.poly(&sol.residual)));
    if sol.budget_exhausted {
        w(out, "step budget exhausted");
    }
    if !sol.solvable {
        w(out, "status: unsolved");
        return Ok(1);
    }
    // The integrand of f0 + Σ cᵢfᵢ as one fraction.
    let (mut num, mut den) = p.integrand(&f0);
    for (c, t) in sol.constants.iter().zip(&p.fs) {
        if c.is_zero() {
            continue;
        }
        let (a, b) = p.integrand(t);
        num = &(&num * &b) + (&(&a * &den).scale(c));
        den = &den * &b;
    }
    let ok = verify_integral(&op.deriv, &sol.u, &p.v, &num, &den).map_err(Fail::input)?;
    w(out, format!("verified: {ok}"));
    w(out, "status: solved");
    Ok(if ok { 0 } else { 1 })
}

fn verify(system: &str, samples: usize, cap: usize, out: &mut dyn Write) -> Res {
    let (sys, op) = resolve_system(system)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut rules: Vec<ReductionRule> = sys.rules.clone();
    for fam in &sys.families {
        rules.extend((fam.first_index()..=cap).map(|j| fam.member(j)));
    }
    let mut failures = 0;
    for r in &rules {
        if let Err(e) = r.ci.check_sampled(&op, samples, &mut rng) {
            failures += 1;
            w(out, format!("{}: {e}", r.label()));
        }
    }
    let mut pairs = 0;
    for (i, a) in rules.iter().enumerate() {
        for b in &rules[i + 1..] {
            if critical_pair(a, b) {
                pairs += 1;
                w(out, format!("critical pair ({}, {})", a.label(), b.label()));
            }
        }
    }
    w(out, format!("rules checked: {}", rules.len()));
    w(out, format!("identity failures: {failures}"));
    w(out, format!("critical pairs: {pairs}"));
    Ok(if failures == 0 && pairs == 0 { 0 } else { 1 })
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
