use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghwlab_core::codes::{check_family_b_weights, DEFAULT_WEIGHT_BUDGET};
use ghwlab_core::ghw::DEFAULT_GHW_BUDGET;
use ghwlab_core::verify::{order_label, periods_report, InstanceSummary, PeriodsReport};
use ghwlab_core::{
    build_code, hierarchy_report, sweep, verify_instance, CyclotomyParams, DefiningSet, Error,
    Family, FieldCtx, HierarchyOptions, Instance, SkewSpec, VerifyOptions,
};
use serde_json::{json, Value};

mod render;

use render::{Format, Outcome};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "ghwlab",
    version,
    about = "Trace codes from defining sets, exact Gauss periods and generalized Hamming weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field construction: modulus, primitive element, size.
    Field(FieldArgs),
    /// Exact Gauss periods of order N (and N1) with closed-form checks.
    Periods(PeriodsArgs),
    /// Defining set, dimension and weight distribution of a code.
    Code(CodeArgs),
    /// Weight hierarchy by brute force and closed forms.
    Ghw(GhwArgs),
    /// Every invariant check for one instance.
    Verify(GhwArgs),
    /// Verify all valid instances up to a field size.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Odd prime characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    m: u32,
}

#[derive(Args, Debug)]
struct PeriodsArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Number of cyclotomic classes; must divide q - 1.
    #[arg(long = "N")]
    n: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SkewArg {
    Canonical,
    Seeded,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long = "N", default_value_t = 1)]
    n: u64,
    /// Defining-set family: A, B or C.
    #[arg(long, default_value = "A")]
    family: Family,
    /// Skew set choice for family C.
    #[arg(long, value_enum)]
    skew: Option<SkewArg>,
    /// Seed for a seeded skew set (implies --skew seeded).
    #[arg(long)]
    seed: Option<u64>,
}

impl InstanceArgs {
    fn instance(&self) -> Result<Instance, String> {
        let skew = match (self.family, self.skew, self.seed) {
            (Family::C, Some(SkewArg::Seeded) | None, Some(s)) => Some(SkewSpec::Seeded(s)),
            (Family::C, Some(SkewArg::Seeded), None) => {
                return Err("--skew seeded needs --seed".into())
            }
            (Family::C, Some(SkewArg::Canonical), Some(_)) => {
                return Err("--seed conflicts with --skew canonical".into())
            }
            (Family::C, _, None) => Some(SkewSpec::Canonical),
            (_, None, None) => None,
            _ => return Err("--skew and --seed apply to family C only".into()),
        };
        Ok(Instance {
            p: self.field.p,
            m: self.field.m,
            n: self.n,
            family: self.family,
            skew,
        })
    }
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Codeword-coordinate budget for the weight distribution.
    #[arg(long, default_value_t = DEFAULT_WEIGHT_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug)]
struct GhwArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Largest r to report.
    #[arg(long)]
    r_max: Option<u32>,
    /// Column-check budget per r for brute force.
    #[arg(long, default_value_t = DEFAULT_GHW_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Largest field size.
    #[arg(long)]
    q_max: u64,
    #[arg(long, default_value_t = DEFAULT_GHW_BUDGET)]
    budget: u128,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn envelope(command: &str, body: Value, passed: bool, failures: &[String]) -> Value {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v["verdict"] = json!({ "passed": passed, "failures": failures });
    v
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn periods_json(reports: &[PeriodsReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                let mut v = to_json(r);
                v["match"] = json!(r.prediction_check.as_ref().map(|c| c.passed()));
                v
            })
            .collect(),
    )
}

fn run_field(a: &FieldArgs) -> Result<Outcome, Failure> {
    let ctx = FieldCtx::new(a.p, a.m)?;
    let info = json!({
        "p": a.p,
        "m": a.m,
        "q": ctx.q(),
        "modulus": ctx.modulus(),
        "alpha": ctx.coeffs(ctx.alpha()),
        "alpha_index": ctx.alpha().index(),
    });
    Ok(Outcome {
        json: envelope("field", json!({ "field": info.clone() }), true, &[]),
        text: render::field_text(&ctx),
        csv: render::key_values(&info),
        passed: true,
    })
}

fn run_periods(a: &PeriodsArgs) -> Result<Outcome, Failure> {
    let ctx = Arc::new(FieldCtx::new(a.field.p, a.field.m)?);
    let params = CyclotomyParams::new(ctx.clone(), a.n)?;
    let mut orders = vec![params.index];
    if params.reduced_index != params.index {
        orders.push(params.reduced_index);
    }
    let reports = orders
        .iter()
        .map(|&e| periods_report(&ctx, e, order_label(&params, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let failures: Vec<String> = reports.iter().flat_map(|r| r.failures.clone()).collect();
    let passed = failures.is_empty();
    let summary = InstanceSummary::new(&params, None, None);
    Ok(Outcome {
        json: envelope(
            "periods",
            json!({ "instance": to_json(&summary), "periods": periods_json(&reports) }),
            passed,
            &failures,
        ),
        text: render::periods_text(&summary, &reports),
        csv: render::periods_csv(&reports),
        passed,
    })
}

fn build(inst: &Instance) -> Result<(CyclotomyParams, DefiningSet), Failure> {
    let ctx = Arc::new(FieldCtx::new(inst.p, inst.m)?);
    let params = CyclotomyParams::new(ctx, inst.n)?;
    let dset = DefiningSet::new(params.clone(), inst.family, inst.skew)?;
    Ok((params, dset))
}

fn run_code(a: &CodeArgs) -> Result<Outcome, Failure> {
    let inst = a.instance.instance().map_err(Failure::Usage)?;
    let (params, dset) = build(&inst)?;
    let code = build_code(&dset);
    let dist = code.weight_distribution(a.budget)?;
    let mut failures = Vec::new();
    let mut body = json!({
        "instance": to_json(&InstanceSummary::new(&params, Some(inst.family), inst.skew)),
        "code": {
            "n": code.n,
            "k": code.k,
            "defining_set": dset.elements.iter().map(|e| e.index()).collect::<Vec<_>>(),
            "generator": code.gen,
            "weight_distribution": dist,
        },
    });
    if inst.family == Family::B {
        match check_family_b_weights(&code) {
            Ok(r) => {
                if !r.all_positive {
                    failures.push("a nonzero codeword has weight 0".to_string());
                }
                body["code"]["family_b_weights"] = to_json(&r);
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    if code.k != inst.m as usize {
        failures.push(format!("dimension {} differs from m = {}", code.k, inst.m));
    }
    let passed = failures.is_empty();
    Ok(Outcome {
        text: render::code_text(&inst, &code, &dist),
        csv: render::distribution_csv(&dist),
        json: envelope("code", body, passed, &failures),
        passed,
    })
}

fn hierarchy_options(a: &GhwArgs) -> HierarchyOptions {
    HierarchyOptions {
        r_max: a.r_max,
        budget: a.budget,
        ..HierarchyOptions::default()
    }
}

fn run_ghw(a: &GhwArgs) -> Result<Outcome, Failure> {
    let inst = a.instance.instance().map_err(Failure::Usage)?;
    let (params, dset) = build(&inst)?;
    let code = build_code(&dset);
    let rep = hierarchy_report(&code, hierarchy_options(a))?;
    let passed = rep.passed();
    let failures = render::hierarchy_failures(&rep);
    let summary = InstanceSummary::new(&params, Some(inst.family), inst.skew);
    Ok(Outcome {
        json: envelope(
            "ghw",
            json!({
                "instance": to_json(&summary),
                "hierarchy": to_json(&rep.records),
                "hierarchy_summary": render::hierarchy_summary(&rep),
            }),
            passed,
            &failures,
        ),
        text: render::hierarchy_text(&summary, &rep),
        csv: render::hierarchy_csv(&rep),
        passed,
    })
}

fn run_verify(a: &GhwArgs) -> Result<Outcome, Failure> {
    let inst = a.instance.instance().map_err(Failure::Usage)?;
    let opts = VerifyOptions {
        hierarchy: hierarchy_options(a),
        ..VerifyOptions::default()
    };
    let rep = verify_instance(&inst, &opts)?;
    let passed = rep.passed();
    let failures = rep.failures();
    Ok(Outcome {
        json: envelope(
            "verify",
            json!({
                "instance": to_json(&rep.instance),
                "periods": periods_json(&rep.periods),
                "code": to_json(&rep.code),
                "checks": to_json(&rep.checks),
                "hierarchy": to_json(&rep.hierarchy.records),
                "hierarchy_summary": render::hierarchy_summary(&rep.hierarchy),
            }),
            passed,
            &failures,
        ),
        text: render::verify_text(&rep),
        csv: render::hierarchy_csv(&rep.hierarchy),
        passed,
    })
}

fn run_sweep(a: &SweepArgs) -> Result<Outcome, Failure> {
    let opts = VerifyOptions {
        hierarchy: HierarchyOptions {
            budget: a.budget,
            ..HierarchyOptions::default()
        },
        ..VerifyOptions::default()
    };
    let rep = sweep(a.q_max, &opts)?;
    let passed = rep.all_passed();
    let failures: Vec<String> = rep
        .entries
        .iter()
        .filter(|e| !e.passed)
        .map(|e| {
            format!(
                "{}: {}",
                render::instance_label(&e.instance),
                e.failures.join("; ")
            )
        })
        .collect();
    Ok(Outcome {
        json: envelope(
            "sweep",
            json!({ "sweep": to_json(&rep) }),
            passed,
            &failures,
        ),
        text: render::sweep_text(&rep),
        csv: render::sweep_csv(&rep),
        passed,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Field(a) => run_field(a),
        Command::Periods(a) => run_periods(a),
        Command::Code(a) => run_code(a),
        Command::Ghw(a) => run_ghw(a),
        Command::Verify(a) => run_verify(a),
        Command::Sweep(a) => run_sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_precondition() { 2 } else { 1 });
        }
    };
    let body = match render::format(&outcome, cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
