//! Command-line front end. Every subcommand calls straight into the library
//! and reports an [`OutputRecord`].

mod output;
mod shorthand;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cone::ConeSpec;
use crate::conformal::{mobius_hessian, Bubble, DerivativeMethod, ScalarField};
use crate::counterex::{
    existence_predicate, gradient_blowup, integrate_ode_with, BlowupKind, Existence, OdeOutcome, OdeSetup,
};
use crate::error::Error;
use crate::numerics::{gaussian, rng_from_seed, ToleranceProfile};
use crate::radial::{cone_boundary_residual, enumerate_families, solve_dirichlet, DirichletAnnulus};
use crate::ricci::{bubble_constants, BubbleQuantity};
use crate::symfun::{verify_structural, Family, GaugeFn, LevelSet, SymFun};

pub use output::{num, parse_csv_tables, Cell, OutputRecord, Table};
pub use shorthand::ConeShape;

/// Usage problems exit with 2, numerical failures with 3.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("malformed output: {0}")]
    Format(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    /// The computation ran but failed its own accuracy gate.
    #[error("{0}")]
    Accuracy(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numerical() => 3,
            CliError::Accuracy(_) => 3,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "conformal-cones",
    version,
    about = "Cone invariants, conformal Hessians and explicit solutions, checked numerically"
)]
pub struct Cli {
    /// Print the tables as CSV instead of the JSON document.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cone invariants.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Radial solutions and the Dirichlet problem on annuli.
    #[command(subcommand)]
    Radial(RadialCmd),
    /// The one-variable ODE behind the entire solutions.
    #[command(subcommand)]
    Ode(OdeCmd),
    /// Explicit counterexample families.
    #[command(subcommand)]
    Counterexample(CounterexampleCmd),
    /// Structural conditions of symmetric functions.
    #[command(subcommand)]
    Symfun(SymfunCmd),
    /// Closed-form identities.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// The Schouten-to-Ricci dictionary.
    #[command(subcommand)]
    Ricci(RicciCmd),
}

#[derive(Debug, Subcommand)]
pub enum ConeCmd {
    /// μ⁺, μ⁻ and the position of ±λ*.
    Info(ConeInfo),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConeFamily {
    GammaK,
    NegDualGammaK,
    Circular,
    OrderedLinear,
    ExtremalLargest,
    ExtremalSmallest,
}

#[derive(Debug, Args)]
pub struct ConeInfo {
    #[arg(long, value_enum)]
    pub family: ConeFamily,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated weights for ordered-linear cones.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
}

impl ConeInfo {
    pub fn shape(&self) -> Result<ConeShape, CliError> {
        let need = |name: &str| CliError::Usage(format!("--{name} is required for this family"));
        Ok(match self.family {
            ConeFamily::GammaK => ConeShape::GammaK(self.k.ok_or_else(|| need("k"))?),
            ConeFamily::NegDualGammaK => ConeShape::NegDualGammaK(self.k.ok_or_else(|| need("k"))?),
            ConeFamily::Circular => ConeShape::Circular(self.c.ok_or_else(|| need("c"))?),
            ConeFamily::OrderedLinear => ConeShape::OrderedLinear(shorthand::number_list(
                self.weights.as_deref().ok_or_else(|| need("weights"))?,
            )?),
            ConeFamily::ExtremalLargest => ConeShape::ExtremalLargest(self.mu.ok_or_else(|| need("mu"))?),
            ConeFamily::ExtremalSmallest => ConeShape::ExtremalSmallest(self.mu.ok_or_else(|| need("mu"))?),
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum RadialCmd {
    /// Radial families solving λ(A[v]) ∈ ∂Γ for a cone.
    Classify(RadialClassify),
    /// Solve the Dirichlet problem on {a < |x| < b}.
    Dirichlet(RadialDirichlet),
}

#[derive(Debug, Args)]
pub struct RadialClassify {
    /// Cone shorthand, e.g. `gamma-2` or `circular:0.5`.
    #[arg(long, alias = "family-cone")]
    pub cone: ConeShape,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct RadialDirichlet {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long)]
    pub cone: ConeShape,
    #[arg(long)]
    pub n: usize,
    /// Radii in the sampled profile table, endpoints included.
    #[arg(long, default_value_t = 11)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum OdeCmd {
    /// Integrate from x₁ = 0 in both directions.
    Run(OdeRun),
}

#[derive(Debug, Args)]
pub struct OdeRun {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub v0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub w0: f64,
    #[arg(long, default_value_t = 200.0)]
    pub window: f64,
    #[arg(long, default_value_t = 1e8)]
    pub threshold: f64,
    /// Keep every k-th accepted step in the trajectory table.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
}

#[derive(Debug, Subcommand)]
pub enum CounterexampleCmd {
    /// Gradient blow-up sequences with bounded f(λ(±A)).
    Blowup(Blowup),
}

#[derive(Debug, Args)]
pub struct Blowup {
    /// neg-sigma-half, neg-general or pos-general.
    #[arg(long)]
    pub kind: BlowupKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub j: u32,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Subcommand)]
pub enum SymfunCmd {
    /// Sampled structural conditions of a built-in function or a gauge.
    Check(SymfunCheck),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionFamily {
    SigmaK,
    SigmaKRoot,
    Gp,
    LambdaPq,
    Circular,
    OrderedLinear,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["family", "gauge_from"])))]
pub struct SymfunCheck {
    #[arg(long, value_enum)]
    pub family: Option<FunctionFamily>,
    /// Gauge of the level set `t e + Γ` for a cone shorthand Γ.
    #[arg(long)]
    pub gauge_from: Option<ConeShape>,
    /// Shift `t` of the level set used with --gauge-from.
    #[arg(long, default_value_t = 1.0)]
    pub shift: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub weights: Option<String>,
    /// Cone to check against instead of the function's own domain.
    #[arg(long)]
    pub cone: Option<ConeShape>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SymfunCheck {
    pub fn family_value(&self) -> Result<Option<Family>, CliError> {
        let need = |name: &str| CliError::Usage(format!("--{name} is required for this family"));
        let Some(f) = self.family else { return Ok(None) };
        Ok(Some(match f {
            FunctionFamily::SigmaK => Family::SigmaK { k: self.k.ok_or_else(|| need("k"))? },
            FunctionFamily::SigmaKRoot => Family::SigmaKRoot { k: self.k.ok_or_else(|| need("k"))? },
            FunctionFamily::Gp => Family::Gp { p: self.p.ok_or_else(|| need("p"))? },
            FunctionFamily::LambdaPq => {
                Family::LambdaPQ { p: self.p.ok_or_else(|| need("p"))?, q: self.q.ok_or_else(|| need("q"))? }
            }
            FunctionFamily::Circular => Family::Circular { c: self.c.ok_or_else(|| need("c"))? },
            FunctionFamily::OrderedLinear => Family::OrderedLinear {
                weights: shorthand::number_list(self.weights.as_deref().ok_or_else(|| need("weights"))?)?,
            },
        }))
    }
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Deviation of A[v] from 2b²a⁻²I for v = log(a/(1 + b²|x − x̄|²)).
    Bubble(VerifyBubble),
}

#[derive(Debug, Args)]
pub struct VerifyBubble {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Comma-separated center x̄; the origin when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum RicciCmd {
    /// Curvature quantities that equal 1 on normalized bubbles.
    Constants(RicciConstants),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RicciExample {
    /// λ_i(Ric)
    RicciEigenvalue,
    /// (λ_i + … + λ_j)(Ric)
    RicciPartialSum,
    /// G_p(λ(A))
    Weitzenbock,
}

#[derive(Debug, Args)]
pub struct RicciConstants {
    #[arg(long, value_enum)]
    pub example: RicciExample,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub i: usize,
    /// Defaults to n.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Defaults to the value that normalizes the quantity.
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl RicciConstants {
    pub fn quantity(&self) -> BubbleQuantity {
        match self.example {
            RicciExample::RicciEigenvalue => BubbleQuantity::RicciEigenvalue { i: self.i },
            RicciExample::RicciPartialSum => BubbleQuantity::RicciPartialSum { i: self.i, j: self.j.unwrap_or(self.n) },
            RicciExample::Weitzenbock => BubbleQuantity::Weitzenbock { p: self.p },
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library reports serialize")
}

/// Seeded sample points `x̄ + 1.5 g` with `g` standard Gaussian.
fn sample_points(center: &[f64], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| center.iter().map(|c| c + 1.5 * gaussian(&mut rng)).collect()).collect()
}

/// Runs one subcommand.
pub fn dispatch(cmd: &Command, tol: &ToleranceProfile) -> Result<OutputRecord, CliError> {
    match cmd {
        Command::Cone(ConeCmd::Info(a)) => cone_info(a, tol),
        Command::Radial(RadialCmd::Classify(a)) => radial_classify(a),
        Command::Radial(RadialCmd::Dirichlet(a)) => radial_dirichlet(a),
        Command::Ode(OdeCmd::Run(a)) => ode_run(a, tol),
        Command::Counterexample(CounterexampleCmd::Blowup(a)) => blowup(a),
        Command::Symfun(SymfunCmd::Check(a)) => symfun_check(a),
        Command::Verify(VerifyCmd::Bubble(a)) => verify_bubble(a),
        Command::Ricci(RicciCmd::Constants(a)) => ricci_constants(a),
    }
}

fn cone_info(a: &ConeInfo, tol: &ToleranceProfile) -> Result<OutputRecord, CliError> {
    let shape = a.shape()?;
    let cone = shape.build(a.n)?;
    let class = cone.lambda_star_class(tol.boundary)?;
    let plus = cone.mu_plus_bisect()?;
    let minus = cone.mu_minus_bisect()?;
    let mut rec = OutputRecord::new("cone info").param("cone", shape.to_string()).param("n", a.n);
    rec.result = json!({
        "cone": cone.label(),
        "mu_plus": num(class.mu_plus),
        "mu_minus": num(class.mu_minus),
        "lambda_star": { "region": class.lambda_star.region.to_string(), "margin": num(class.lambda_star.margin) },
        "neg_lambda_star": { "region": class.neg_lambda_star.region.to_string(), "margin": num(class.neg_lambda_star.margin) },
    });
    rec.diag("mu_plus_bisect", num(plus.value));
    rec.diag("mu_minus_bisect", num(minus.value));
    rec.diag("bisect_monotone", plus.monotone && minus.monotone);
    rec.diag("boundary_tolerance", tol.boundary);
    Ok(rec)
}

fn radial_classify(a: &RadialClassify) -> Result<OutputRecord, CliError> {
    let cone = a.cone.build(a.n)?;
    let cases = enumerate_families(&cone)?;
    let mut rec = OutputRecord::new("radial classify").param("cone", a.cone.to_string()).param("n", a.n);
    let mut t = Table::new("families", &["case", "mu", "formula", "constraints"]);
    for c in &cases {
        t.push(vec![
            c.case.to_string().into(),
            c.mu.map_or(Cell::from("-"), Cell::from),
            c.formula.clone().into(),
            c.constraints.clone().into(),
        ]);
    }
    rec.result = json!({
        "mu_plus": num(cone.mu_plus()?),
        "mu_minus": num(cone.mu_minus()?),
        "cases": cases.iter().map(|c| c.case.to_string()).collect::<Vec<_>>(),
    });
    rec.tables.push(t);
    Ok(rec)
}

fn radial_dirichlet(a: &RadialDirichlet) -> Result<OutputRecord, CliError> {
    let cone = a.cone.build(a.n)?;
    let prob = DirichletAnnulus::new(a.a, a.b, a.alpha, a.beta)?;
    let rep = solve_dirichlet(&cone, &prob)?;
    let mut rec = OutputRecord::new("radial dirichlet")
        .param("a", a.a)
        .param("b", a.b)
        .param("alpha", a.alpha)
        .param("beta", a.beta)
        .param("cone", a.cone.to_string())
        .param("n", a.n);
    rec.result = json!({
        "solvable": rep.solvable,
        "regularity": to_value(&rep.regularity),
        "case": rep.case.map(|c| c.to_string()),
        "clause": rep.clause,
        "profile": rep.profile.as_ref().map(|p| {
            let mut v = to_value(p);
            v["domain"] = json!([num(p.domain.0), num(p.domain.1)]);
            v
        }),
        "boundary_residual": rep.boundary_residual.map(|(x, y)| vec![x, y]),
    });
    if let Some(p) = &rep.profile {
        let mut t = Table::new("profile", &["r", "v", "cone_residual"]);
        let m = a.samples.max(2);
        let mut worst = 0.0f64;
        for i in 0..m {
            let r = a.a + (a.b - a.a) * i as f64 / (m - 1) as f64;
            let res = if i == 0 || i == m - 1 { None } else { cone_boundary_residual(&cone, p, r).ok() };
            if let Some(x) = res {
                worst = worst.max(x);
            }
            t.push(vec![r.into(), p.value(r)?.into(), res.map_or(Cell::from("-"), Cell::from)]);
        }
        rec.diag("max_cone_residual", num(worst));
        rec.tables.push(t);
    }
    Ok(rec)
}

fn ode_run(a: &OdeRun, tol: &ToleranceProfile) -> Result<OutputRecord, CliError> {
    if a.stride == 0 {
        return Err(CliError::Usage("--stride must be at least 1".into()));
    }
    let setup = OdeSetup::new(a.gamma, a.v0, a.w0)?;
    let tr = integrate_ode_with(&setup, a.window, a.threshold, &tol.ode_options())?;
    let predicted = existence_predicate(&setup);
    let verdict = |e: Existence| to_value(&e);
    let outcome = |o: &OdeOutcome| match o {
        OdeOutcome::GlobalOnWindow => json!({ "outcome": "global-on-window" }),
        OdeOutcome::BlowupDetected { t } => json!({ "outcome": "blowup-detected", "t": num(*t) }),
    };
    let mut rec = OutputRecord::new("ode run")
        .param("gamma", a.gamma)
        .param("v0", a.v0)
        .param("w0", a.w0)
        .param("window", a.window)
        .param("threshold", a.threshold);
    rec.result = json!({
        "predicate": verdict(predicted),
        "integrated": verdict(tr.existence()),
        "agree": predicted == tr.existence(),
        "forward": outcome(&tr.forward),
        "backward": outcome(&tr.backward),
        "initial_integral": num(tr.initial_integral()),
    });
    rec.diag("drift", num(tr.drift));
    rec.diag("drift_tolerance", tol.drift);
    rec.diag("steps", tr.samples.len());
    let mut t = Table::new("trajectory", &["t", "phi", "w", "v", "integral"]);
    let last = tr.samples.len().saturating_sub(1);
    for (i, s) in tr.samples.iter().enumerate() {
        if i % a.stride == 0 || i == last {
            t.push(vec![s.t.into(), s.phi.into(), s.w.into(), s.phi.ln().into(), s.integral.into()]);
        }
    }
    rec.tables.push(t);
    Ok(rec)
}

fn blowup(a: &Blowup) -> Result<OutputRecord, CliError> {
    let fam = gradient_blowup(a.kind, a.n, a.j)?;
    let rep = fam.verify(a.points)?;
    let mut rec = OutputRecord::new("counterexample blowup")
        .param("kind", a.kind.to_string())
        .param("n", a.n)
        .param("j", a.j)
        .param("points", a.points);
    rec.result = json!({
        "all_pass": rep.all_pass(),
        "c_j": rep.c_j.map(num),
        "sup_value": num(rep.sup_value),
        "sup_deviation": num(rep.sup_deviation),
        "min_gradient": num(rep.min_gradient),
        "omega": fam.omega()?.map(num),
    });
    let mut t = Table::new("checks", &["name", "value", "bound", "passed"]);
    for c in &rep.checks {
        t.push(vec![c.name.clone().into(), c.value.into(), c.bound.into(), c.passed.into()]);
    }
    rec.tables.push(t);
    Ok(rec)
}

fn symfun_check(a: &SymfunCheck) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("symfun check").param("n", a.n).param("samples", a.samples).param("seed", a.seed);
    let (f, domain): (SymFun, ConeSpec) = match (a.family_value()?, &a.gauge_from) {
        (Some(fam), None) => {
            rec = rec.param("family", to_value(&fam));
            let f = SymFun::family(fam, a.n)?;
            let d = f.domain();
            (f, d)
        }
        (None, Some(shape)) => {
            rec = rec.param("gauge_from", shape.to_string()).param("shift", a.shift);
            let cone = shape.build(a.n)?;
            let g = GaugeFn::new(LevelSet::shifted_cone(&cone, a.shift)?)?;
            (SymFun::new(g), cone)
        }
        _ => return Err(CliError::Usage("give exactly one of --family and --gauge-from".into())),
    };
    let cone = match &a.cone {
        Some(s) => {
            rec = rec.param("cone", s.to_string());
            s.build(a.n)?
        }
        None => domain,
    };
    let rep = verify_structural(&f, &cone, a.samples, a.seed)?;
    rec.result = json!({
        "function": rep.function,
        "cone": rep.cone,
        "samples": rep.samples,
        "all_pass": rep.all_pass(),
    });
    let mut t = Table::new("checks", &["name", "status", "worst", "detail"]);
    for c in &rep.checks {
        let status = to_value(&c.status).as_str().unwrap_or_default().to_string();
        t.push(vec![
            c.name.into(),
            status.into(),
            c.worst.map_or(Cell::from("-"), Cell::from),
            c.detail.clone().into(),
        ]);
    }
    rec.tables.push(t);
    Ok(rec)
}

/// Frobenius deviation of `A[v]` from the bubble constant at analytic and FD precision.
pub const BUBBLE_ANALYTIC_TOL: f64 = 1e-9;
pub const BUBBLE_FD_TOL: f64 = 1e-5;

fn verify_bubble(a: &VerifyBubble) -> Result<OutputRecord, CliError> {
    let center = match &a.center {
        Some(s) => shorthand::number_list(s)?,
        None => vec![0.0; a.n],
    };
    if center.len() != a.n {
        return Err(Error::DimensionMismatch { expected: a.n, found: center.len() }.into());
    }
    let bubble = Bubble::new(a.a, a.b, center.clone())?;
    let c = bubble.hessian_constant();
    let field = ScalarField::new(bubble);
    let mut rec = OutputRecord::new("verify bubble")
        .param("n", a.n)
        .param("a", a.a)
        .param("b", a.b)
        .param("center", center.clone())
        .param("samples", a.samples)
        .param("seed", a.seed);
    let mut t = Table::new("deviation", &["index", "radius", "analytic", "finite_difference"]);
    let (mut worst_a, mut worst_fd) = (0.0f64, 0.0f64);
    for (i, x) in sample_points(&center, a.samples, a.seed).iter().enumerate() {
        let dev = |m| -> Result<f64, Error> {
            Ok(mobius_hessian(&field, x, Some(m))?.matrix.add_identity(-c).frobenius_norm())
        };
        let da = dev(DerivativeMethod::Analytic)?;
        let dfd = dev(DerivativeMethod::FiniteDifference)?;
        worst_a = worst_a.max(da);
        worst_fd = worst_fd.max(dfd);
        let r = x.iter().zip(&center).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        t.push(vec![i.into(), r.into(), da.into(), dfd.into()]);
    }
    rec.result = json!({
        "constant": num(c),
        "max_deviation": num(worst_a),
        "max_deviation_fd": num(worst_fd),
        "passed": worst_a <= BUBBLE_ANALYTIC_TOL && worst_fd <= BUBBLE_FD_TOL,
    });
    rec.diag("analytic_tolerance", BUBBLE_ANALYTIC_TOL);
    rec.diag("fd_tolerance", BUBBLE_FD_TOL);
    rec.tables.push(t);
    Ok(rec)
}

fn ricci_constants(a: &RicciConstants) -> Result<OutputRecord, CliError> {
    let q = a.quantity();
    let b = match a.b {
        Some(b) => b,
        // The constraint is k·b²/a², so b = a/√k normalizes it.
        None => a.a / q.constraint(a.n, 1.0, 1.0).sqrt(),
    };
    let pts = sample_points(&vec![0.0; a.n], a.samples, a.seed);
    let rep = bubble_constants(q, a.n, a.a, b, &pts)?;
    let mut rec = OutputRecord::new("ricci constants")
        .param("quantity", q.to_string())
        .param("n", a.n)
        .param("a", a.a)
        .param("b", b)
        .param("samples", a.samples)
        .param("seed", a.seed);
    rec.result = json!({
        "constraint": num(rep.constraint),
        "constraint_satisfied": rep.constraint_satisfied,
        "value": num(rep.value),
        "passed": rep.passed,
    });
    let mut t = Table::new("values", &["index", "value"]);
    for (i, v) in rep.values.iter().enumerate() {
        t.push(vec![i.into(), (*v).into()]);
    }
    rec.tables.push(t);
    Ok(rec)
}

/// Accuracy gates that turn a completed run into a numerical failure.
fn gate(rec: &OutputRecord) -> Result<(), CliError> {
    if rec.command == "ode run" {
        let drift = rec.diagnostics.get("drift").and_then(Value::as_f64).unwrap_or(f64::INFINITY);
        let tol = rec.diagnostics.get("drift_tolerance").and_then(Value::as_f64).unwrap_or(0.0);
        if !(drift <= tol) {
            return Err(CliError::Accuracy(format!("first-integral drift {drift:e} exceeds {tol:e}")));
        }
    }
    Ok(())
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let text = e.render().to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    let result = ToleranceProfile::from_env().map_err(CliError::from).and_then(|tol| dispatch(&cli.command, &tol));
    let rec = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let text = if cli.csv { rec.to_csv() } else { rec.to_json() + "\n" };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    match gate(&rec) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("conformal-cones").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cone_info_gamma_two() {
        let (code, out, _) = call(&["cone", "info", "--family", "gamma-k", "--k", "2", "--n", "4"]);
        assert_eq!(code, 0);
        let rec = OutputRecord::from_json(&out).unwrap();
        assert_eq!(rec.result["mu_plus"], 1.0);
        assert_eq!(rec.result["neg_lambda_star"]["region"], "boundary");
        assert_eq!(rec.result["mu_minus"], "inf");
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = call(&["cone", "info", "--family", "gamma-k", "--n", "4", "--bogus"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        let (code, _, err) = call(&["cone", "info", "--family", "gamma-k", "--n", "4"]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = call(&["verify", "bubble", "--n", "3", "--a", "-1", "--b", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn bubble_deviation_small() {
        let (code, out, _) = call(&["verify", "bubble", "--n", "3", "--a", "1", "--b", "1"]);
        assert_eq!(code, 0);
        let rec = OutputRecord::from_json(&out).unwrap();
        assert!(rec.result["max_deviation"].as_f64().unwrap() <= 1e-9);
        assert_eq!(rec.result["constant"], 2.0);
    }

    #[test]
    fn csv_output_has_tables() {
        let (code, out, _) = call(&["--csv", "radial", "classify", "--cone", "gamma-1", "--n", "3"]);
        assert_eq!(code, 0);
        let t = parse_csv_tables(&out).unwrap();
        assert_eq!(t[0].name, "families");
        assert!(!t[0].rows.is_empty());
    }
}
