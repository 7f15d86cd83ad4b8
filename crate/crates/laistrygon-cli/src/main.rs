//! Command-line front end for the laistrygon engine: normal forms,
//! Hilbert data, simple modules, characters, point modules, braiding
//! twists, and the verify-all battery, with reproducible JSON output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use laistrygon::maps::braiding::{
    braid_equation_check, braiding_matrix_out, twist_braiding, BraidingParams, TwistParams,
};
use laistrygon::pbw::hilbert::hilbert_coeffs;
use laistrygon::pbw::parse::parse_element;
use laistrygon::pbw::{normal_form, AlgebraParams};
use laistrygon::point::{classify_truncated, propagate, verify_truncated, ProjPoint};
use laistrygon::repr::{
    build_qp_module, det_fingerprint, is_simple, pullback, rep_check, solve_characters,
    QPModuleSpec,
};
use laistrygon::scalars::{FieldElem, QSpec};
use laistrygon::suite::{product_series_coeffs, verify_all, SuiteConfig};
use serde_json::{json, Value};
use std::process::ExitCode;

const SCHEMA: u32 = 1;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "laistrygon",
    about = "Exact symbolic engine for the Laistrygonian Nichols algebras B(L_q(1,G))"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// Ghost parameter G >= 1.
    #[arg(long, default_value_t = 1)]
    ghost: u32,
    /// q specialization: generic, root:N, or num:a/b.
    #[arg(long, default_value = "generic")]
    q: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an element, printed on the PBW basis.
    Nf {
        /// The element, e.g. "x2*x1" or "z0*x2 - (1/q)*x2*z0".
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Graded dimensions up to the given degree.
    Hilbert {
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build a simple module of the quantum plane and pull it back.
    Simples {
        /// Which module: charx, chary, or cyclic (cyclic needs --q root:N).
        #[arg(long, default_value = "cyclic")]
        module: String,
        /// Scalar parameter a (nonzero).
        #[arg(long, default_value = "1")]
        a: String,
        /// Scalar parameter b (nonzero; cyclic only).
        #[arg(long, default_value = "1")]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Solve and describe the character variety.
    Characters {
        #[command(flatten)]
        common: Common,
    },
    /// Point modules.
    Point {
        #[command(subcommand)]
        cmd: PointCmd,
    },
    /// Twist the Laistrygonian braiding by a bicharacter.
    Twist {
        /// Twist parameter p12 (a scalar expression, e.g. "q^2").
        #[arg(long, default_value = "1")]
        p12: String,
        /// Twist parameter p21.
        #[arg(long, default_value = "1")]
        p21: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full verification battery.
    VerifyAll {
        /// Seed for the randomized draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Deliberately corrupt the rewriting system (flips a rule sign);
        /// the battery must then fail at the confluence check.
        #[arg(long)]
        negative_control: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum PointCmd {
    /// Propagate a starting point P0 to the given depth and verify.
    Propagate {
        /// P0 as "a:b:c" with rational entries, e.g. "1:0:0" or "0:1:1/2".
        #[arg(long)]
        p0: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Classify all admissible starting points to the given depth.
    Classify {
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_qspec(s: &str) -> Result<QSpec, String> {
    if s == "generic" {
        return Ok(QSpec::Generic);
    }
    if let Some(n) = s.strip_prefix("root:") {
        let n: u32 = n.parse().map_err(|_| format!("bad root order '{n}'"))?;
        return QSpec::root_of_unity(n).map_err(|e| e.to_string());
    }
    if let Some(v) = s.strip_prefix("num:") {
        let (p, r) = match v.split_once('/') {
            Some((p, r)) => (
                p.parse::<i64>().map_err(|_| format!("bad numerator '{p}'"))?,
                r.parse::<i64>().map_err(|_| format!("bad denominator '{r}'"))?,
            ),
            None => (v.parse::<i64>().map_err(|_| format!("bad value '{v}'"))?, 1),
        };
        return QSpec::numeric(p, r).map_err(|e| e.to_string());
    }
    Err(format!("bad --q '{s}': expected generic, root:N, or num:a/b"))
}

/// Parse a scalar expression (rationals and powers of q) by parsing it
/// as an algebra element and requiring it to have no generators.
fn parse_scalar(s: &str, ghost: u32, mode: &QSpec) -> Result<FieldElem, String> {
    let p = parse_element(s, ghost, mode).map_err(|e| e.to_string())?;
    if p.is_zero() {
        return Ok(FieldElem::zero(mode));
    }
    let mut terms = p.terms().iter();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if w.0.is_empty() => Ok(c.clone()),
        _ => Err(format!("'{s}' is not a scalar")),
    }
}

fn parse_point(s: &str, mode: &QSpec) -> Result<ProjPoint, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("bad point '{s}': expected a:b:c"));
    }
    let coord = |t: &str| parse_scalar(t, 1, mode);
    ProjPoint::new(coord(parts[0])?, coord(parts[1])?, coord(parts[2])?)
        .map_err(|e| e.to_string())
}

struct Ctx {
    params: AlgebraParams,
    output: Output,
}

fn context(common: &Common) -> Result<Ctx, String> {
    let q = parse_qspec(&common.q)?;
    let params = AlgebraParams::new(common.ghost, q).map_err(|e| e.to_string())?;
    Ok(Ctx {
        params,
        output: common.output,
    })
}

fn emit(ctx: &Ctx, v: Value, text: String) {
    use std::io::Write;
    let out = match ctx.output {
        Output::Json => serde_json::to_string_pretty(&v).expect("serializable"),
        Output::Text => text,
    };
    // Ignore write errors (e.g. a closed pipe) instead of panicking.
    let _ = writeln!(std::io::stdout(), "{out}");
}

fn run() -> Result<u8, String> {
    match Cli::parse().cmd {
        Cmd::Nf { expr, common } => {
            let ctx = context(&common)?;
            let p = parse_element(&expr, ctx.params.ghost, &ctx.params.q)
                .map_err(|e| e.to_string())?;
            let nf = normal_form(&p, &ctx.params).map_err(|e| e.to_string())?;
            let s = nf.to_string();
            emit(
                &ctx,
                json!({
                    "schema": SCHEMA,
                    "ghost": ctx.params.ghost,
                    "q": ctx.params.q.to_string(),
                    "input": expr,
                    "normal_form": s,
                }),
                s,
            );
            Ok(0)
        }
        Cmd::Hilbert { degree, common } => {
            let ctx = context(&common)?;
            let coeffs = hilbert_coeffs(&ctx.params, degree as u64);
            let oracle = product_series_coeffs(ctx.params.ghost, degree);
            let matches = coeffs == oracle;
            emit(
                &ctx,
                json!({
                    "schema": SCHEMA,
                    "ghost": ctx.params.ghost,
                    "degree": degree,
                    "coeffs": coeffs,
                    "matches_product_series": matches,
                }),
                format!("{coeffs:?} (matches product series: {matches})"),
            );
            Ok(if matches { 0 } else { EXIT_CHECK_FAILED })
        }
        Cmd::Simples {
            module,
            a,
            b,
            common,
        } => {
            let ctx = context(&common)?;
            let mode = &ctx.params.q;
            let av = parse_scalar(&a, ctx.params.ghost, mode)?;
            let bv = parse_scalar(&b, ctx.params.ghost, mode)?;
            let spec = match module.as_str() {
                "charx" => QPModuleSpec::CharX(av),
                "chary" => QPModuleSpec::CharY(av),
                "cyclic" => match mode {
                    QSpec::RootOfUnity(n) => QPModuleSpec::Cyclic { a: av, b: bv, n: *n },
                    _ => return Err("cyclic modules require --q root:N".into()),
                },
                other => return Err(format!("unknown module kind '{other}'")),
            };
            let qp = build_qp_module(&spec, mode).map_err(|e| e.to_string())?;
            let rep = pullback(&qp, &ctx.params).map_err(|e| e.to_string())?;
            let report = rep_check(&rep).map_err(|e| e.to_string())?;
            let simple = is_simple(&rep).map_err(|e| e.to_string())?;
            let (dx, dy) = det_fingerprint(&rep).map_err(|e| e.to_string())?;
            let ok = report.pass && simple;
            emit(
                &ctx,
                json!({
                    "schema": SCHEMA,
                    "ghost": ctx.params.ghost,
                    "q": mode.to_string(),
                    "module": module,
                    "dim": rep.dim,
                    "x2": rep.mat(laistrygon::pbw::Gen::X2).to_string_rows(),
                    "z0": rep.mat(laistrygon::pbw::Gen::Z(0)).to_string_rows(),
                    "relations_pass": report.pass,
                    "simple": simple,
                    "det_x2": dx.to_string(),
                    "det_z0": dy.to_string(),
                }),
                format!(
                    "dim {} module; relations pass: {}; simple: {}; det(x2) = {dx}, det(z0) = {dy}",
                    rep.dim, report.pass, simple
                ),
            );
            Ok(if ok { 0 } else { EXIT_CHECK_FAILED })
        }
        Cmd::Characters { common } => {
            let ctx = context(&common)?;
            let fams = solve_characters(&ctx.params).map_err(|e| e.to_string())?;
            let described: Vec<Value> = fams
                .families
                .iter()
                .map(|f| {
                    let (alpha, beta, gamma) = f.describe();
                    json!({
                        "label": f.label,
                        "free": f.free,
                        "x1": alpha,
                        "x2": beta,
                        "z": gamma,
                    })
                })
                .collect();
            let text = fams
                .families
                .iter()
                .map(|f| f.label.clone())
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                &ctx,
                json!({
                    "schema": SCHEMA,
                    "ghost": ctx.params.ghost,
                    "q": ctx.params.q.to_string(),
                    "q_is_one": fams.q_is_one,
                    "families": described,
                }),
                text,
            );
            Ok(0)
        }
        Cmd::Point { cmd } => match cmd {
            PointCmd::Propagate { p0, depth, common } => {
                let ctx = context(&common)?;
                let start = parse_point(&p0, &ctx.params.q)?;
                let seq = match propagate(&start, &ctx.params, depth) {
                    Ok(seq) => seq,
                    Err(e @ laistrygon::Error::NotOnVariety) => {
                        // A well-formed request whose answer is "no point
                        // module exists": a check failure, not a usage error.
                        emit(
                            &ctx,
                            json!({
                                "schema": SCHEMA,
                                "ghost": ctx.params.ghost,
                                "q": ctx.params.q.to_string(),
                                "p0": start.to_string(),
                                "on_variety": false,
                                "error": e.to_string(),
                            }),
                            format!("{start}: {e}"),
                        );
                        return Ok(EXIT_CHECK_FAILED);
                    }
                    Err(e) => return Err(e.to_string()),
                };
                let report = if depth + 1 >= ctx.params.ghost as usize + 3 {
                    Some(verify_truncated(&seq).map_err(|e| e.to_string())?)
                } else {
                    None
                };
                let pts: Vec<String> = seq.points().iter().map(|p| p.to_string()).collect();
                let pass = report.as_ref().map(|r| r.pass);
                emit(
                    &ctx,
                    json!({
                        "schema": SCHEMA,
                        "ghost": ctx.params.ghost,
                        "q": ctx.params.q.to_string(),
                        "depth": depth,
                        "points": pts,
                        "verified": pass,
                        "report": report,
                    }),
                    format!("{} (verified: {pass:?})", pts.join(" ")),
                );
                Ok(if pass == Some(false) { EXIT_CHECK_FAILED } else { 0 })
            }
            PointCmd::Classify { depth, common } => {
                let ctx = context(&common)?;
                let cls = classify_truncated(&ctx.params, depth).map_err(|e| e.to_string())?;
                let text = format!(
                    "{} = {} (all checks pass: {})",
                    cls.variety,
                    cls.families.join(" u "),
                    cls.pass
                );
                let pass = cls.pass;
                emit(
                    &ctx,
                    json!({
                        "schema": SCHEMA,
                        "ghost": ctx.params.ghost,
                        "q": ctx.params.q.to_string(),
                        "depth": depth,
                        "classification": cls,
                    }),
                    text,
                );
                Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
            }
        },
        Cmd::Twist { p12, p21, common } => {
            let ctx = context(&common)?;
            let mode = &ctx.params.q;
            let bp = BraidingParams::laistrygonian(ctx.params.ghost, mode)
                .map_err(|e| e.to_string())?;
            let tp = TwistParams::new(
                parse_scalar(&p12, ctx.params.ghost, mode)?,
                parse_scalar(&p21, ctx.params.ghost, mode)?,
            )
            .map_err(|e| e.to_string())?;
            let tw = twist_braiding(&bp, &tp).map_err(|e| e.to_string())?;
            let braided = braid_equation_check(&tw).map_err(|e| e.to_string())?;
            emit(
                &ctx,
                json!({
                    "schema": SCHEMA,
                    "ghost": ctx.params.ghost,
                    "q": mode.to_string(),
                    "q12": tw.q12.to_string(),
                    "q21": tw.q21.to_string(),
                    "q12_q21_product": tw.q12.mul(&tw.q21).map_err(|e| e.to_string())?.to_string(),
                    "braid_equation": braided,
                    "matrix": braiding_matrix_out(&tw).map_err(|e| e.to_string())?,
                }),
                format!(
                    "twisted q12 = {}, q21 = {}; braid equation: {braided}",
                    tw.q12, tw.q21
                ),
            );
            Ok(if braided { 0 } else { EXIT_CHECK_FAILED })
        }
        Cmd::VerifyAll {
            seed,
            negative_control,
            common,
        } => {
            let ctx = context(&common)?;
            let cfg = SuiteConfig {
                ghost: ctx.params.ghost,
                q: ctx.params.q.clone(),
                seed,
                negative_control,
            };
            let report = verify_all(&cfg).map_err(|e| e.to_string())?;
            let pass = report.pass;
            let text = report
                .checks
                .iter()
                .map(|c| format!("[{}] {}", if c.ok { "pass" } else { "FAIL" }, c.name))
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                &ctx,
                json!({
                    "schema": SCHEMA,
                    "ghost": ctx.params.ghost,
                    "q": ctx.params.q.to_string(),
                    "seed": seed,
                    "negative_control": negative_control,
                    "report": report,
                }),
                format!("{text}\noverall: {}", if pass { "pass" } else { "FAIL" }),
            );
            Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
