//! `btforms`: exact invariants of higher-rank modular forms on the
//! Bruhat-Tits building, from the command line.
//!
//! Exit codes: 0 success, 2 validation or usage error, 3 internal
//! consistency failure (an exact identity failed to hold, which signals a
//! bug rather than bad input).

use btforms_core as core;
use btforms_core::{make_context, Context, Error as CoreError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::process::ExitCode;

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(
    name = "btforms",
    version,
    about = "Exact Bruhat-Tits modular form invariants"
)]
struct Cli {
    /// Prime power q
    #[arg(long, global = true, default_value_t = 2)]
    q: u64,
    /// Rank r >= 2
    #[arg(long, global = true, default_value_t = 3)]
    r: usize,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// First terms of the characteristic sequence of a point
    Charseq {
        /// Point coordinates, comma separated (r or r-1 rationals; the
        /// trailing 0 may be omitted)
        #[arg(long)]
        x: String,
        #[arg(long)]
        count: usize,
    },
    /// Integral window of the inseparability locus W(k)
    Wk {
        #[arg(long)]
        k: usize,
        /// Window bound on n_1 (<= 64)
        #[arg(long)]
        bound: i64,
    },
    /// Spectral-norm logarithm of a form at a chamber point
    Norm {
        #[command(subcommand)]
        form: NormForm,
    },
    /// Van der Put transform of a form on a type-1 arrow
    Vdp {
        /// Form: "alpha:K" or "coeff:K:D"
        #[arg(long)]
        form: String,
        /// Arrow "o1,..,or:t1,..,tr" between adjacent integral apartment
        /// points (type 1 enforced)
        #[arg(long)]
        edge: String,
    },
    /// Local inner degree of a form at an integral chamber vertex
    InnerDegree {
        #[arg(long)]
        form: String,
        #[arg(long)]
        vertex: String,
    },
    /// The rank-3 orbit/inner-degree case study of alpha_2
    CaseStudy,
    /// Render a chamber window (rank 3)
    Render {
        #[arg(long)]
        mode: RenderModeArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        bound: i64,
    },
    /// Run the acceptance suites
    Verify {
        /// weyl | norms | vdp | coeff | oracle | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum NormForm {
    /// Para-Eisenstein series alpha_k
    Alpha(NormArgs),
    /// Coefficient form of index k for deg a = d
    Coeff(CoeffArgs),
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    x: String,
}

#[derive(Args)]
struct CoeffArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    x: String,
    /// Optional polynomial a (echoed in the report; only deg a = d matters)
    #[arg(long)]
    a: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RenderModeArg {
    Wk,
    Wprime,
    AlphaNorm,
    InnerDegree,
}

#[derive(Serialize)]
struct RatJson {
    num: i64,
    den: i64,
}

fn rat_json(r: &core::Rat) -> Result<Value, CoreError> {
    let num = i64::try_from(r.numer().clone())
        .map_err(|_| CoreError::Invalid("value exceeds the JSON integer guard".into()))?;
    let den = i64::try_from(r.denom().clone())
        .map_err(|_| CoreError::Invalid("value exceeds the JSON integer guard".into()))?;
    Ok(serde_json::to_value(RatJson { num, den }).expect("serializable"))
}

fn parse_rat(s: &str) -> Result<core::Rat, CoreError> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<i64, CoreError> {
        t.trim()
            .parse::<i64>()
            .map_err(|_| CoreError::Invalid(format!("bad integer '{}'", t)))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err(CoreError::Invalid("zero denominator".into()));
            }
            Ok(core::ratio(parse_int(n)?, d))
        }
        None => Ok(core::rat(parse_int(s)?)),
    }
}

/// Parse r or r-1 comma-separated coordinates; a missing trailing
/// coordinate is taken to be 0.
fn parse_coords(ctx: &Context, s: &str) -> Result<Vec<core::Rat>, CoreError> {
    let mut coords: Vec<core::Rat> = s.split(',').map(parse_rat).collect::<Result<_, _>>()?;
    if coords.len() == ctx.r - 1 {
        coords.push(core::rat(0));
    }
    if coords.len() != ctx.r {
        return Err(CoreError::Invalid(format!(
            "expected {} or {} coordinates, got {}",
            ctx.r,
            ctx.r - 1,
            coords.len()
        )));
    }
    Ok(coords)
}

fn parse_int_coords(ctx: &Context, s: &str) -> Result<Vec<i64>, CoreError> {
    parse_coords(ctx, s)?
        .iter()
        .map(|c| {
            if c.is_integer() {
                i64::try_from(c.to_integer())
                    .map_err(|_| CoreError::Invalid("coordinate too large".into()))
            } else {
                Err(CoreError::NonIntegralPoint)
            }
        })
        .collect()
}

fn parse_form(s: &str) -> Result<core::FormSpec, CoreError> {
    let parts: Vec<&str> = s.split(':').collect();
    let int = |t: &str| -> Result<usize, CoreError> {
        t.parse()
            .map_err(|_| CoreError::Invalid(format!("bad form index '{}'", t)))
    };
    match parts.as_slice() {
        ["alpha", k] => core::FormSpec::alpha(int(k)?),
        ["coeff", k, d] => core::FormSpec::coeff(int(k)?, int(d)?),
        _ => Err(CoreError::Invalid(format!(
            "form must be 'alpha:K' or 'coeff:K:D', got '{}'",
            s
        ))),
    }
}

/// Check that (o, t) is a type-1 arrow of the apartment: some class
/// representative t' = t + m(1,..,1) satisfies t' - o in {0,1}^r with
/// exactly one zero coordinate.
fn apartment_arrow(ctx: &Context, o: &[i64], t: &[i64]) -> Result<core::Arrow, CoreError> {
    let r = ctx.r;
    let lo = (0..r).map(|i| o[i] - t[i]).max().unwrap();
    let hi = (0..r).map(|i| o[i] + 1 - t[i]).min().unwrap();
    let mut ok = false;
    for m in lo..=hi {
        let ones: i64 = (0..r).map(|i| t[i] + m - o[i]).sum();
        if ones == r as i64 - 1 {
            ok = true;
        }
    }
    if !ok {
        return Err(CoreError::Invalid(
            "edge is not a type-1 arrow of the apartment".into(),
        ));
    }
    Ok(core::Arrow {
        origin: core::building::apartment_lattice(ctx, o),
        target: core::building::apartment_lattice(ctx, t),
        direction: None,
    })
}

fn emit(format: Format, body: Value, text: String) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&body).expect("serializable")
            );
        }
        Format::Text | Format::Svg => println!("{}", text),
    }
}

fn envelope(ctx: &Context, command: &str, fields: Value) -> Value {
    let mut base = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "q": ctx.q,
        "r": ctx.r,
    });
    if let (Value::Object(b), Value::Object(f)) = (&mut base, fields) {
        for (k, v) in f {
            b.insert(k, v);
        }
    }
    base
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(ao), Value::Object(bo)) = (&mut a, b) {
        for (k, v) in bo {
            ao.insert(k, v);
        }
    }
    a
}

fn validate_bound(bound: i64) -> Result<(), CoreError> {
    if !(1..=64).contains(&bound) {
        return Err(CoreError::Invalid("bound must be in 1..=64".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CoreError> {
    let ctx = make_context(cli.q, cli.r)?;
    match cli.command {
        Command::Charseq { x, count } => {
            if count == 0 || count > 10_000 {
                return Err(CoreError::Invalid("count must be in 1..=10000".into()));
            }
            let p = core::ApartmentPoint::new(&ctx, parse_coords(&ctx, &x)?)?;
            let seq = core::characteristic_sequence(&ctx, &p, count);
            let entries: Vec<Value> = seq
                .iter()
                .map(|e| {
                    Ok(json!({
                        "s": e.symbol.s,
                        "i": e.symbol.i,
                        "lognorm": rat_json(&e.lognorm)?,
                        "cycle_index": e.cycle_index,
                    }))
                })
                .collect::<Result<_, CoreError>>()?;
            let mut text = String::new();
            for e in &seq {
                text.push_str(&format!(
                    "T^{} e_{}  lognorm {}  cycle {}\n",
                    e.symbol.s, e.symbol.i, e.lognorm, e.cycle_index
                ));
            }
            emit(
                cli.format,
                envelope(&ctx, "charseq", json!({ "entries": entries })),
                text.trim_end().to_string(),
            );
        }
        Command::Wk { k, bound } => {
            validate_bound(bound)?;
            if k == 0 {
                return Err(CoreError::Invalid("k must be >= 1".into()));
            }
            let verts = core::wk_window(&ctx, k, bound);
            let list: Vec<Vec<i64>> = verts
                .iter()
                .map(|v| v.coords[..ctx.r - 1].to_vec())
                .collect();
            let text = verts
                .iter()
                .map(|v| v.short())
                .collect::<Vec<_>>()
                .join(" ");
            emit(
                cli.format,
                envelope(
                    &ctx,
                    "wk",
                    json!({ "k": k, "bound": bound, "vertices": list }),
                ),
                text,
            );
        }
        Command::Norm { form } => {
            let (name, value, extra) = match form {
                NormForm::Alpha(args) => {
                    if args.k == 0 {
                        return Err(CoreError::Invalid("k must be >= 1".into()));
                    }
                    let x = core::WeylPoint::new(&ctx, parse_coords(&ctx, &args.x)?)?;
                    let v = core::log_alpha_norm_point(&ctx, &x, args.k);
                    ("alpha", v, json!({ "k": args.k }))
                }
                NormForm::Coeff(args) => {
                    let x = core::WeylPoint::new(&ctx, parse_coords(&ctx, &args.x)?)?;
                    let v = core::log_coeff_norm(&ctx, &x, args.d, args.k)?;
                    let mut extra = json!({ "k": args.k, "d": args.d });
                    if let Some(a) = args.a {
                        // a enters only through deg a = d; echoed verbatim
                        extra["a"] = Value::String(a);
                    }
                    ("coeff", v, extra)
                }
            };
            let text = value.to_string();
            emit(
                cli.format,
                envelope(
                    &ctx,
                    "norm",
                    merge(
                        json!({ "form": name, "log_norm": rat_json(&value)? }),
                        extra,
                    ),
                ),
                text,
            );
        }
        Command::Vdp { form, edge } => {
            let f = parse_form(&form)?;
            let (o, t) = edge
                .split_once(':')
                .ok_or_else(|| CoreError::Invalid("edge must be 'origin:target'".into()))?;
            let o = parse_int_coords(&ctx, o)?;
            let t = parse_int_coords(&ctx, t)?;
            let arrow = apartment_arrow(&ctx, &o, &t)?;
            let p = core::vdp(&ctx, &f, &arrow)?;
            emit(
                cli.format,
                envelope(&ctx, "vdp", json!({ "form": form, "value": p })),
                p.to_string(),
            );
        }
        Command::InnerDegree { form, vertex } => {
            let f = parse_form(&form)?;
            let coords = parse_int_coords(&ctx, &vertex)?;
            let n = core::WeylVertex::new(&ctx, coords)?;
            let deg = core::inner_degree(&ctx, &f, &n)?;
            emit(
                cli.format,
                envelope(
                    &ctx,
                    "inner-degree",
                    json!({ "form": form, "inner_degree": deg }),
                ),
                deg.to_string(),
            );
        }
        Command::CaseStudy => {
            let report = core::case_study_report(&ctx)?;
            let cases: Vec<Value> = report
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "label": c.label,
                        "vertex": c.vertex.coords[..ctx.r - 1].to_vec(),
                        "member_of_w2": c.member_of_w2,
                        "inner_degree": c.inner_degree,
                        "expected_inner_degree": c.expected_inner_degree,
                        "orbits": c.orbits.iter().map(|o| json!({
                            "representative": o.representative,
                            "size": o.size,
                            "p_values": o.p_values.iter().map(|(v, m)| json!([v, m])).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut text = String::new();
            for c in &report.cases {
                text.push_str(&format!(
                    "{:<4} {}: N = {} (expected {}), member of W(2): {}\n",
                    c.label,
                    c.vertex.short(),
                    c.inner_degree,
                    c.expected_inner_degree,
                    c.member_of_w2
                ));
                for o in &c.orbits {
                    text.push_str(&format!(
                        "     orbit size {:>3} rep {:?} P values {:?}\n",
                        o.size, o.representative, o.p_values
                    ));
                }
            }
            let ok = report.all_match();
            emit(
                cli.format,
                envelope(
                    &ctx,
                    "case-study",
                    json!({ "cases": cases, "all_match": ok }),
                ),
                text.trim_end().to_string(),
            );
            if !ok {
                return Err(CoreError::NegativeInnerDegree("case study mismatch".into()));
            }
        }
        Command::Render { mode, k, d, bound } => {
            validate_bound(bound)?;
            let mode = match mode {
                RenderModeArg::Wk => core::RenderMode::Wk { k },
                RenderModeArg::Wprime => {
                    let d =
                        d.ok_or_else(|| CoreError::Invalid("--d required for wprime".into()))?;
                    core::RenderMode::WPrime { d, k }
                }
                RenderModeArg::AlphaNorm => core::RenderMode::AlphaNorm { k },
                RenderModeArg::InnerDegree => core::RenderMode::InnerDegree { k },
            };
            match cli.format {
                Format::Svg => {
                    let doc = core::render_chamber(&ctx, mode, bound, core::RenderFormat::Svg)?;
                    print!("{}", doc);
                }
                Format::Text => {
                    let doc = core::render_chamber(&ctx, mode, bound, core::RenderFormat::Ascii)?;
                    print!("{}", doc);
                }
                Format::Json => {
                    let fig = core::chamber_figure(&ctx, mode, bound)?;
                    let members: Vec<Vec<i64>> =
                        fig.members.iter().map(|&(a, b)| vec![a, b]).collect();
                    let edges: Vec<Vec<Vec<i64>>> = fig
                        .heavy_edges
                        .iter()
                        .map(|&(a, b)| vec![vec![a.0, a.1], vec![b.0, b.1]])
                        .collect();
                    let labels: Vec<Value> = fig
                        .labels
                        .iter()
                        .map(|(&(a, b), l)| json!({ "vertex": [a, b], "label": l }))
                        .collect();
                    let body = envelope(
                        &ctx,
                        "render",
                        json!({ "bound": bound, "members": members, "heavy_edges": edges, "labels": labels }),
                    );
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&body).expect("serializable")
                    );
                }
            }
        }
        Command::Verify { suite } => {
            let reports = core::verify::run_suite(&suite)?;
            let all_pass = reports.iter().all(|r| r.passed);
            match cli.format {
                Format::Json => {
                    let items: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "id": r.id,
                                "name": r.name,
                                "passed": r.passed,
                                "checks": r.checks.len(),
                                "elapsed_ms": r.elapsed_ms,
                                "failures": r.checks.iter().filter(|c| !c.passed).map(|c| json!({
                                    "label": c.label,
                                    "expected": c.expected,
                                    "observed": c.observed,
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let body = envelope(
                        &ctx,
                        "verify",
                        json!({ "suite": suite, "passed": all_pass, "criteria": items }),
                    );
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&body).expect("serializable")
                    );
                }
                _ => {
                    for r in &reports {
                        println!("{}", r.summary_line());
                    }
                }
            }
            return Ok(all_pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1), // verify ran, some criterion failed
        Err(e) => {
            eprintln!("error: {}", e);
            if e.is_internal() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
