//! Command-line front end. [`run`] does all the work and returns what would
//! be printed, so it can be driven from tests.

pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::interp::fmt_poly;
use crate::algebra::rational::fmt_rat;
use crate::algebra::FracPoly;
use crate::error::{Error, Result};
use crate::polytope::ehrhart;
use crate::reciprocity::{orbifold_betti, pyramid_delta, ClassData, Triangulation};
use crate::report::CheckResult;
use crate::suite::{exit_code, verify_all, SuiteInput};
use crate::weighted::checks::change_of_variables_check;
use crate::weighted::{default_horizon, weighted_delta, LambdaFunction};

use input::{parse_point, read_input, read_triangulation, Input};
use report::{BettiEntry, BoxEntry, ClassEntry, ConeEntry, Report};

#[derive(Debug, Parser)]
#[command(name = "wehrhart", version, about = "Exact weighted Ehrhart theory of stacky fans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Polytope or stacky-fan JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Values of lambda on the rays, as `p/q,...`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Largest dilate counted.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Check pairwise compatibility of the maximal cones first.
    #[arg(long, global = true)]
    pub validate: bool,
    /// Lattice point of the polytope used as origin, as `x,y,...`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub base_point: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ehrhart delta-vector.
    Delta,
    /// Weighted delta-vector, specialized at s = t.
    WeightedDelta,
    /// Box elements of every cone.
    Box,
    /// h-vector of every cone.
    Hvector,
    /// Orbifold Betti numbers.
    Betti,
    /// Run the verification suite.
    Verify {
        /// Run every applicable check (the default).
        #[arg(long)]
        all: bool,
        /// Run only the named checks.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Delta-vector through the cone over P x {1}.
    Pyramid {
        /// Triangulation JSON file; pulling on the vertices when absent.
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
    /// Compare the input fan with a coarser fan of the same support.
    ChangeOfVars {
        /// The coarser fan.
        #[arg(long)]
        other: PathBuf,
    },
}

/// Exit status and printed text of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Self {
            code: if e.is_precondition() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli).unwrap_or_else(|e| Outcome::error(&e)),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            Outcome {
                code,
                stdout: if code == 0 { text.clone() } else { String::new() },
                stderr: if code == 0 { String::new() } else { text },
            }
        }
    }
}

struct Context {
    input: Input,
    lambda: LambdaFunction,
    horizon: usize,
}

fn load(common: &Common) -> Result<Context> {
    let path = common
        .input
        .as_deref()
        .ok_or_else(|| Error::Parse("--input is required".into()))?;
    let base = common.base_point.as_deref().map(parse_point).transpose()?;
    let input = read_input(path, base.as_deref())?;
    if common.validate {
        input.fan.validate()?;
    }
    let n = input.fan.rays().len();
    let lambda = match &common.lambda {
        Some(s) => LambdaFunction::parse(s)?,
        None => LambdaFunction::zero(n),
    };
    lambda.check_len(&input.fan)?;
    let horizon = common
        .horizon
        .unwrap_or_else(|| default_horizon(&input.fan, &lambda));
    Ok(Context {
        input,
        lambda,
        horizon,
    })
}

fn rats(values: &[crate::algebra::Rat]) -> Vec<String> {
    values.iter().map(fmt_rat).collect()
}

fn coefficient_strings(p: &FracPoly) -> Vec<String> {
    p.to_coeff_vec()
        .map(|c| rats(&c))
        .unwrap_or_else(|| vec![p.to_string()])
}

fn base_report(command: &str, ctx: &Context) -> Report {
    let fan = &ctx.input.fan;
    Report {
        command: command.into(),
        rank: fan.rank(),
        complete: fan.is_complete(),
        refinement: fan.refinement().into(),
        lambda: (!ctx.lambda.is_zero()).then(|| rats(ctx.lambda.values())),
        horizon: Some(ctx.horizon),
        ..Default::default()
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let ctx = load(&cli.common)?;
    let fan = &ctx.input.fan;
    let mut code = 0;
    let (report, text) = match &cli.command {
        Command::Delta => {
            let delta = match &ctx.input.polytope {
                Some(p) => {
                    let data = ehrhart(p, ctx.horizon)?;
                    (FracPoly::from_coeffs(data.delta), Some(fmt_poly(&data.polynomial, "m")))
                }
                None => {
                    let data = ClassData::new(fan, ctx.horizon)?;
                    (data.delta_q(), Some(fmt_poly(&data.ehrhart.polynomial, "m")))
                }
            };
            let mut r = base_report("delta", &ctx);
            r.delta_q = Some(coefficient_strings(&delta.0));
            r.ehrhart = delta.1;
            (r, format!("{}\n", delta.0))
        }
        Command::WeightedDelta => {
            let w = weighted_delta(fan, &ctx.lambda, ctx.horizon)?;
            let classes = if ctx.lambda.is_zero() {
                Some(ClassData::new(fan, ctx.horizon)?)
            } else {
                None
            };
            let mut r = base_report("weighted-delta", &ctx);
            r.delta0 = Some(w.specialized.to_string());
            r.exact_to = w.exact_to.as_ref().map(fmt_rat);
            if w.truncated.is_empty() {
                r.delta_q = Some(coefficient_strings(&w.delta_q()));
            }
            r.by_class = w
                .by_class
                .iter()
                .map(|(k, p)| ClassEntry {
                    k: fmt_rat(k),
                    poly: p.to_string(),
                    counting: classes.as_ref().map(|c| c.class(k).to_poly_string()),
                    truncated: w.truncated.contains(k),
                })
                .collect();
            let mut text = format!("{}\n", w.specialized);
            if let Some(e) = &w.exact_to {
                text.push_str(&format!("exact through t^{}\n", fmt_rat(e)));
            }
            (r, text)
        }
        Command::Box => {
            let mut r = base_report("box", &ctx);
            let mut text = String::new();
            for e in fan.all_box_elements() {
                let q = rats(&e.q);
                text.push_str(&format!(
                    "{} v = ({}) q = ({}) psi = {}\n",
                    e.tau,
                    e.v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                    q.join(", "),
                    fmt_rat(&e.psi)
                ));
                r.boxes.push(BoxEntry {
                    cone: e.tau.rays.clone(),
                    v: e.v.clone(),
                    q,
                    psi: fmt_rat(&e.psi),
                });
            }
            (r, text)
        }
        Command::Hvector => {
            let mut r = base_report("hvector", &ctx);
            let mut text = String::new();
            for tau in fan.cones() {
                let h = fan.h_vector(tau)?;
                text.push_str(&format!("{tau} {h}\n"));
                r.h_vectors.push(ConeEntry {
                    cone: tau.rays.clone(),
                    h: h.to_string(),
                });
            }
            (r, text)
        }
        Command::Betti => {
            let b = orbifold_betti(fan);
            let mut r = base_report("betti", &ctx);
            let mut text = String::new();
            for (j, dim) in &b.dims {
                text.push_str(&format!("j = {}: {dim}\n", fmt_rat(j)));
                r.betti.push(BettiEntry {
                    j: fmt_rat(j),
                    dim: dim.to_string(),
                });
            }
            r.delta0 = Some(crate::weighted::delta0_local(fan).to_string());
            (r, text)
        }
        Command::Verify { checks, .. } => {
            let mut results = verify_all(&SuiteInput {
                fan,
                polytope: ctx.input.polytope.as_ref(),
                lambda: Some(&ctx.lambda),
                horizon: cli.common.horizon.unwrap_or(2 * fan.rank() + 2),
            });
            if !checks.is_empty() {
                if let Some(c) = checks.iter().find(|c| !results.iter().any(|r| &r.name == *c)) {
                    return Err(Error::Parse(format!("unknown check {c:?}")));
                }
                results.retain(|r| checks.contains(&r.name));
            }
            code = exit_code(&results);
            let text: String = results.iter().map(|c| c.line() + "\n").collect();
            let mut r = base_report("verify", &ctx);
            r.delta0 = Some(crate::weighted::delta0_local(fan).to_string());
            r.checks = results;
            (r, text)
        }
        Command::Pyramid { triangulation } => {
            let p = ctx
                .input
                .polytope
                .as_ref()
                .ok_or_else(|| Error::PreconditionUnmet("pyramid needs a polytope file".into()))?;
            let t = match triangulation {
                Some(path) => read_triangulation(path)?,
                None => Triangulation::pulling(p),
            };
            let delta = pyramid_delta(p, &t)?;
            let mut r = base_report("pyramid", &ctx);
            r.delta_q = Some(coefficient_strings(&delta));
            r.checks.push(CheckResult::from_result(
                "pyramid",
                vec![format!("unimodular: {}", t.is_unimodular())],
                Ok(format!("{} simplices", t.simplices.len())),
            ));
            (r, format!("{delta}\n"))
        }
        Command::ChangeOfVars { other } => {
            let coarse = read_input(other, None)?.fan;
            let outcome = change_of_variables_check(fan, &coarse, &ctx.lambda, ctx.horizon);
            let mut r = base_report("change-of-vars", &ctx);
            let detail = outcome.as_ref().map(|c| {
                format!("agree through t^{}", fmt_rat(&c.compared_to))
            });
            if let Ok(c) = &outcome {
                r.lambda_prime = Some(rats(c.lambda_prime.values()));
            }
            let check = CheckResult::from_result(
                "change-of-variables",
                vec![format!("complete: {}", fan.is_complete())],
                detail.map_err(Clone::clone),
            );
            code = exit_code(std::slice::from_ref(&check));
            let mut text = String::new();
            if let Some(l) = &r.lambda_prime {
                text.push_str(&format!("lambda' = {}\n", l.join(",")));
            }
            text.push_str(&check.line());
            text.push('\n');
            r.checks.push(check);
            (r, text)
        }
    };
    Ok(Outcome {
        code,
        stdout: if cli.common.json {
            report.to_json() + "\n"
        } else {
            text
        },
        stderr: String::new(),
    })
}
