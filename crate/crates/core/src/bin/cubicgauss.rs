use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubicgauss::families::{
    klein_instance, random_cubic_config, random_tangency_config, sample_u_family, u_family_config, UFamilySpec, DEFAULT_RETRY_CAP,
};
use cubicgauss::gauss::{alpha_certificate, mu2_rank3, mu2_rank4, tau_membership, QuinticConfig};
use cubicgauss::jacobian::JacobianRing;
use cubicgauss::lift::{rank3_zero_lift, LiftContext};
use cubicgauss::poly::parse;
use cubicgauss::threefold::{conic_bundle, point_to_string, triple_points, LineInX, PlanePoint};
use cubicgauss::verify::{dims_json, report_schema_version, run_named, SuiteReport, VerifyOptions};
use cubicgauss::{Error, FieldKind, VarSet};

#[derive(Parser)]
#[command(name = "cubicgauss", version, about = "Exact checks for cubic threefolds, discriminant quintics and second Gaussian maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// `q` or `p=<prime>`
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldKind>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite (or `all`).
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        confirm_rational: usize,
        /// Re-run a single instance index from a failure payload.
        #[arg(long)]
        only: Option<usize>,
    },
    /// Conic bundle and discriminant quintic of a cubic containing x1 = x2 = x4 = 0.
    Discriminant {
        cubic: String,
        #[command(flatten)]
        common: Common,
    },
    /// Intersection cycle of the discriminant quintic with its conic.
    TriplePoints {
        cubic: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dimensions of the Jacobian ring of a form.
    Ring {
        form: String,
        /// Comma-separated variables; defaults to x0..x4 when the form mentions x0, else x,y,z.
        #[arg(long)]
        vars: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Print a configuration from one of the built-in families.
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        /// u8: eleven comma-separated integers a2..a12; klein: ε.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    Gauss {
        #[command(subcommand)]
        cmd: GaussCmd,
    },
    Lift {
        #[command(subcommand)]
        cmd: LiftCmd,
    },
    /// Print the report schema version.
    SchemaVersion,
}

#[derive(Subcommand)]
enum GaussCmd {
    /// μ₂ images and their Jacobian-ideal membership on a sampled configuration.
    Mu2 {
        #[arg(value_enum, default_value = "u8")]
        kind: FamilyKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum LiftCmd {
    /// Dimension chain and τ̃ checks on a sampled configuration.
    Verify {
        #[arg(value_enum, default_value = "u8")]
        kind: FamilyKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum FamilyKind {
    U8,
    Klein,
    Random,
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    FieldKind::parse(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit(common: &Common, value: &Value, text: impl FnOnce(&Value) -> String) -> Result<(), Failure> {
    let mut w = sink(&common.out)?;
    if common.text {
        writeln!(w, "{}", text(value))?;
    } else {
        writeln!(w, "{}", serde_json::to_string_pretty(value).expect("json"))?;
    }
    w.flush()?;
    Ok(())
}

fn pts(p: &[(PlanePoint, usize)]) -> Value {
    json!(p.iter().map(|(q, m)| json!({ "point": point_to_string(q), "mult": m })).collect::<Vec<_>>())
}

fn config_json(cfg: &QuinticConfig) -> Value {
    json!({
        "field": cfg.field().descriptor(),
        "quintic": cfg.quintic.to_string(),
        "conic": cfg.conic.to_string(),
        "divisor": pts(&cfg.divisor),
    })
}

fn field_or(common: &Common, default: FieldKind) -> FieldKind {
    common.field.unwrap_or(default)
}

fn default_prime() -> FieldKind {
    FieldKind::Prime(cubicgauss::field::DEFAULT_PRIME)
}

fn parse_cubic(text: &str, field: FieldKind) -> Result<LineInX, Failure> {
    let cubic = parse(text, &VarSet::projective4(), field)?;
    Ok(LineInX::coordinate_line(&cubic)?)
}

fn sampled_config(kind: FamilyKind, field: FieldKind, seed: u64, params: Option<&str>) -> Result<(QuinticConfig, Value), Failure> {
    match kind {
        FamilyKind::U8 => {
            if let Some(p) = params {
                let vals: Vec<i64> = p
                    .split(',')
                    .map(|s| s.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad parameter `{s}`"))))
                    .collect::<Result<_, _>>()?;
                let arr: [i64; 11] = vals
                    .try_into()
                    .map_err(|_| Failure::Usage("u8 takes eleven parameters a2..a12".into()))?;
                let spec = UFamilySpec::from_i64(field, arr);
                let cfg = u_family_config(&spec)?;
                let coeffs: Vec<String> = spec.coeffs.iter().map(|c| c.to_string()).collect();
                return Ok((cfg, json!({ "family": "u8", "coefficients": coeffs })));
            }
            let s = sample_u_family(field, seed, DEFAULT_RETRY_CAP)?;
            let coeffs: Vec<String> = s.value.0.coeffs.iter().map(|c| c.to_string()).collect();
            Ok((s.value.1, json!({ "family": "u8", "seed": seed, "attempts": s.attempts, "rejections": s.rejections, "coefficients": coeffs })))
        }
        FamilyKind::Klein => {
            let eps = match params {
                Some(p) => p.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad ε `{p}`")))?,
                None => -1,
            };
            let inst = klein_instance(&field.from_i64(eps))?;
            let meta = json!({ "family": "klein", "eps": eps, "quintic_smooth": inst.quintic_smooth, "cubic": inst.line.cubic().to_string() });
            let cfg = inst.config.map_err(|e| Failure::Usage(format!("ε = {eps}: {e}")))?;
            Ok((cfg, meta))
        }
        FamilyKind::Random => {
            let s = random_tangency_config(field, seed, DEFAULT_RETRY_CAP)?;
            Ok((s.value.config, json!({ "family": "random", "seed": seed, "attempts": s.attempts, "rejections": s.rejections })))
        }
    }
}

fn report_text(r: &SuiteReport) -> String {
    let mut s = format!(
        "{} [{}] field={} seed={} instances={} failures={} rational={} {}ms: {}",
        if r.passed() { "PASS" } else { "FAIL" },
        r.suite,
        r.field,
        r.seed,
        r.instances_run,
        r.failures.len(),
        r.rational_confirmations,
        r.wall_time_ms,
        r.statement
    );
    for f in &r.failures {
        s.push_str(&format!("\n  failure {}#{} seed={} field={}: {}", f.group, f.index, f.seed, f.field, f.detail));
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::SchemaVersion => {
            println!("{}", report_schema_version());
            Ok(())
        }
        Command::Verify { suite, common, trials, confirm_rational, only } => {
            let opts = VerifyOptions { field: common.field, seed: common.seed, trials, confirm_rational, only };
            let reports = run_named(&suite, &opts)?;
            let mut w = sink(&common.out)?;
            for r in &reports {
                if common.text {
                    writeln!(w, "{}", report_text(r))?;
                } else {
                    for rec in &r.instances {
                        writeln!(w, "{}", serde_json::to_string(rec).expect("json"))?;
                    }
                    let mut summary = serde_json::to_value(r).expect("json");
                    summary.as_object_mut().expect("object").remove("instances");
                    writeln!(w, "{}", serde_json::to_string(&summary).expect("json"))?;
                }
            }
            w.flush()?;
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Discriminant { cubic, common } => {
            let field = field_or(&common, FieldKind::Rational);
            let line = parse_cubic(&cubic, field)?;
            let b = conic_bundle(&line)?;
            let matrix: Vec<Vec<String>> = b.conic_matrix.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            let v = json!({ "matrix": matrix, "quintic": b.quintic.to_string(), "conic": b.conic_c.to_string() });
            emit(&common, &v, |v| format!("Q = {}\nC = {}", v["quintic"].as_str().unwrap_or(""), v["conic"].as_str().unwrap_or("")))
        }
        Command::TriplePoints { cubic, common } => {
            let field = field_or(&common, FieldKind::Rational);
            let line = parse_cubic(&cubic, field)?;
            let t = triple_points(&conic_bundle(&line)?)?;
            let comps: Vec<Value> = t
                .components
                .iter()
                .map(|c| json!({ "component": c.component.to_string(), "points": pts(&c.points), "residual_pieces": c.residual_pieces }))
                .collect();
            let v = json!({ "components": comps, "rational": t.is_rational(), "rational_points": pts(&t.rational_points), "reduced_d": t.is_reduced_d });
            emit(&common, &v, |v| v["components"].to_string())
        }
        Command::Ring { form, vars, common } => {
            let field = field_or(&common, FieldKind::Rational);
            let vars = match vars {
                Some(v) => VarSet::new(&v.split(',').map(str::trim).collect::<Vec<_>>())?,
                None if form.contains("x0") => VarSet::projective4(),
                None => VarSet::plane(),
            };
            let f = parse(&form, &vars, field)?;
            let ring = JacobianRing::new(&f)?;
            let smooth = ring.is_smooth()?;
            let perfect = if smooth { Some(ring.pairings_nonsingular()?) } else { None };
            let v = json!({ "dims": ring.dims(), "smooth": smooth, "pairings_perfect": perfect });
            emit(&common, &v, |v| v["dims"].to_string())
        }
        Command::Family { kind, params, common } => {
            let field = field_or(&common, FieldKind::Rational);
            let (cfg, mut meta) = sampled_config(kind, field, common.seed, params.as_deref())?;
            meta["configuration"] = config_json(&cfg);
            meta["alpha_accepted"] = json!(alpha_certificate(&cfg)?.accepted());
            emit(&common, &meta, |v| {
                let c = &v["configuration"];
                format!("{}\n{}", c["quintic"].as_str().unwrap_or(""), c["conic"].as_str().unwrap_or(""))
            })
        }
        Command::Gauss { cmd: GaussCmd::Mu2 { kind, common } } => {
            let field = field_or(&common, default_prime());
            let (cfg, meta) = sampled_config(kind, field, common.seed, None)?;
            let ring = JacobianRing::up_to(&cfg.quintic, 8)?;
            let mut images = Vec::new();
            let mut ok = true;
            if matches!(kind, FamilyKind::U8) {
                let r = mu2_rank3(&cfg)?;
                let m = tau_membership(&r, &ring)?;
                ok &= m;
                images.push(json!({ "route": "rank3", "image": r.representative.to_string(), "in_jacobian_ideal": m }));
            } else {
                for i in 0..5 {
                    let r = mu2_rank4(&cfg, i)?;
                    let m = tau_membership(&r, &ring)?;
                    ok &= m;
                    images.push(json!({ "route": "rank4", "point": i, "image": r.representative.to_string(), "in_jacobian_ideal": m }));
                }
            }
            let v = json!({ "instance": meta, "configuration": config_json(&cfg), "images": images, "passed": ok });
            emit(&common, &v, |v| format!("mu2 membership: {}", v["passed"]))?;
            ok.then_some(()).ok_or(Failure::Checks)
        }
        Command::Lift { cmd: LiftCmd::Verify { kind, common } } => {
            let field = field_or(&common, default_prime());
            let (lc, meta, zero) = match kind {
                FamilyKind::Random => {
                    let inst = random_cubic_config(field, common.seed, DEFAULT_RETRY_CAP)?.value;
                    let lc = LiftContext::with_cubic(&inst.config, inst.line.cubic())?;
                    (lc, json!({ "family": "random-cubic", "cubic": inst.line.cubic().to_string() }), None)
                }
                FamilyKind::Klein => {
                    let (cfg, meta) = sampled_config(kind, field_or(&common, FieldKind::Rational), common.seed, None)?;
                    (LiftContext::new(&cfg)?, meta, None)
                }
                FamilyKind::U8 => {
                    let s = sample_u_family(field, common.seed, DEFAULT_RETRY_CAP)?;
                    let (spec, cfg) = s.value;
                    let lc = LiftContext::new(&cfg)?;
                    let zero = rank3_zero_lift(&lc, &spec.coeffs[5])?;
                    (lc, json!({ "family": "u8", "seed": common.seed }), Some(zero))
                }
            };
            let v = json!({ "instance": meta, "dims": dims_json(&lc)?, "tau_tilde_zero_certificate": zero });
            emit(&common, &v, |v| v["dims"].to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
