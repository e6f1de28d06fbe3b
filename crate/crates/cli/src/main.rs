use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kquiver::acceptance;
use kquiver::cohomology::{chern_character_leading, display_classes, to_chern_classes};
use kquiver::groth::{
    g_poly, quiver_coefficients, quiver_coefficients_of, table_to_json, table_to_text, ExtractOptions,
};
use kquiver::kclass::{bundle_roots, kclass, kclass_with_pair};
use kquiver::quiver::{dimension_vector, OrbitVector, Quiver, Root};
use kquiver::reineke::{default_resolution, resolution_pair, trim_trivial_steps, ResolutionPair};
use kquiver::symbolic::poly_to_json;
use kquiver::{Error, Poly, Rational};

#[derive(Parser)]
#[command(
    name = "kquiver",
    version,
    about = "K-classes and quiver coefficients of Dynkin quiver orbit closures"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Orbit {
    /// Quiver JSON file (or inline JSON).
    #[arg(long)]
    quiver: String,
    /// Orbit vector JSON file (or inline JSON).
    #[arg(long)]
    m: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the positive roots.
    Roots {
        #[arg(long)]
        quiver: String,
    },
    /// Directed partition and resolution pair of an orbit.
    Resolve {
        #[command(flatten)]
        orbit: Orbit,
        /// Use this directed partition (JSON `{"parts": [[root, ..], ..]}`) instead of the automatic one.
        #[arg(long)]
        partition: Option<String>,
    },
    /// K-class of the orbit closure.
    Kclass {
        #[command(flatten)]
        orbit: Orbit,
        /// Resolution pair JSON `{"i": [..], "r": [..]}` overriding the automatic one.
        #[arg(long)]
        rp: Option<String>,
    },
    /// Leading cohomology class and codimension.
    Coh {
        #[command(flatten)]
        orbit: Orbit,
        #[arg(long)]
        rp: Option<String>,
        /// Highest degree searched for a nonzero leading term.
        #[arg(long)]
        degree_bound: Option<u32>,
    },
    /// Quiver coefficients in the Grothendieck basis.
    Qcoeff {
        #[command(flatten)]
        orbit: Orbit,
        #[arg(long)]
        rp: Option<String>,
        /// Largest weight bound tried before giving up.
        #[arg(long)]
        degree_bound: Option<u32>,
    },
    /// Stable Grothendieck polynomial of a sequence (e.g. `2,1`) in ranks n and p.
    Gpoly {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        n: u32,
        p: u32,
    },
    /// Run the built-in acceptance suite.
    Verify {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(s) => Failure::Parse(s),
            e => Failure::Domain(e),
        }
    }
}

type Out = Result<(String, Value, bool), Failure>;

fn load(arg: &str) -> Result<Value, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{arg}: {e}")))
}

/// Shape errors are parse errors; an invalid diagram is a domain error.
fn load_quiver(arg: &str) -> Result<Quiver, Failure> {
    let v = load(arg)?;
    let vertices = v.get("vertices").and_then(Value::as_u64);
    let arrows: Option<Vec<(usize, usize)>> = v.get("arrows").and_then(Value::as_array).and_then(|a| {
        a.iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([t, h]) => Some((t.as_u64()? as usize, h.as_u64()? as usize)),
                _ => None,
            })
            .collect()
    });
    match (vertices, arrows) {
        (Some(n), Some(arrows)) => Ok(Quiver::new(n as usize, arrows)?),
        _ => Err(Failure::Parse(
            "quiver must be {\"vertices\": n, \"arrows\": [[t, h], ..]}".into(),
        )),
    }
}

fn load_orbit(o: &Orbit) -> Result<(Quiver, OrbitVector, Vec<u32>), Failure> {
    let q = load_quiver(&o.quiver)?;
    let m = OrbitVector::from_json(&load(&o.m)?)?;
    m.validate(&q)?;
    let v = dimension_vector(&q, &m);
    Ok((q, m, v))
}

fn load_pair(arg: &str, q: &Quiver, v: &[u32]) -> Result<ResolutionPair, Failure> {
    let rp: ResolutionPair = serde_json::from_value(load(arg)?).map_err(|e| Failure::Parse(format!("{arg}: {e}")))?;
    rp.validate(q, v)?;
    Ok(rp)
}

fn root_text(r: &Root) -> String {
    format!("({})", r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn seq_text<T: ToString>(s: &[T]) -> String {
    format!("({})", s.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn rp_json(rp: &ResolutionPair) -> Value {
    json!({ "i": rp.i, "r": rp.r })
}

fn roots(quiver: &str) -> Out {
    let q = load_quiver(quiver)?;
    let roots = q.positive_roots();
    let text = roots.iter().map(root_text).collect::<Vec<_>>().join("\n");
    Ok((
        text,
        json!({ "type": q.dynkin_type().to_string(), "roots": roots }),
        true,
    ))
}

fn resolve(o: &Orbit, partition: Option<&str>) -> Out {
    let (q, m, v) = load_orbit(o)?;
    let (parts, rp) = match partition {
        Some(p) => {
            let val = load(p)?;
            let parts: Vec<Vec<Root>> = serde_json::from_value(val.get("parts").cloned().unwrap_or(val))
                .map_err(|e| Failure::Parse(format!("{p}: {e}")))?;
            let rp = resolution_pair(&q, &m, &parts)?;
            (parts, rp)
        }
        None => default_resolution(&q, &m)?,
    };
    let short = trim_trivial_steps(&q, &v, &rp);
    let text = format!(
        "partition: {}\ni = {}\nr = {}\nused: i = {}, r = {}",
        parts
            .iter()
            .map(|p| format!("{{{}}}", p.iter().map(root_text).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" "),
        seq_text(&rp.i),
        seq_text(&rp.r),
        seq_text(&short.i),
        seq_text(&short.r),
    );
    let j = json!({ "dimension_vector": v, "partition": parts, "rp": rp_json(&rp), "used_rp": rp_json(&short) });
    Ok((text, j, true))
}

fn compute_kclass(o: &Orbit, rp: Option<&str>) -> Result<(Quiver, Vec<u32>, Poly), Failure> {
    let (q, m, v) = load_orbit(o)?;
    let kc = match rp {
        Some(r) => kclass_with_pair(&q, &v, &load_pair(r, &q, &v)?)?,
        None => kclass(&q, &m)?,
    };
    Ok((q, v, kc))
}

fn kclass_cmd(o: &Orbit, rp: Option<&str>) -> Out {
    let (_, v, kc) = compute_kclass(o, rp)?;
    Ok((
        kc.to_string(),
        json!({ "dimension_vector": v, "kclass": poly_to_json(&kc) }),
        true,
    ))
}

fn coh(o: &Orbit, rp: Option<&str>, bound: Option<u32>) -> Out {
    let (_, v, kc) = compute_kclass(o, rp)?;
    let cap = bound.unwrap_or_else(|| 2 * v.iter().sum::<u32>().pow(2).max(1));
    let (lead, d) = chern_character_leading(&kc, cap)?;
    let alphabets: Vec<_> = bundle_roots(&v)
        .into_iter()
        .enumerate()
        .map(|(i, r)| (r, i as u32 + 1))
        .collect();
    let classes = to_chern_classes(&lead, &alphabets)?;
    let shown = display_classes(&classes);
    let text = format!("codimension: {d}\nroots: {lead}\nclasses: {shown}");
    let j = json!({
        "dimension_vector": v,
        "codimension": d,
        "roots": poly_to_json(&lead),
        "classes": shown,
    });
    Ok((text, j, true))
}

fn qcoeff(o: &Orbit, rp: Option<&str>, bound: Option<u32>) -> Out {
    let (q, m, v) = load_orbit(o)?;
    let opts = ExtractOptions {
        start: None,
        cap: bound.unwrap_or(ExtractOptions::default().cap),
    };
    let t = match rp {
        Some(r) => quiver_coefficients::<Rational>(&q, &v, &load_pair(r, &q, &v)?, opts)?,
        None => quiver_coefficients_of::<Rational>(&q, &m, opts)?,
    };
    let text = table_to_text(&t);
    Ok((
        text.trim_end().to_string(),
        json!({ "dimension_vector": v, "coefficients": table_to_json(&t) }),
        true,
    ))
}

fn gpoly(lambda: &str, n: u32, p: u32) -> Out {
    let body = lambda.trim().trim_start_matches('(').trim_end_matches(')');
    let seq: Vec<i64> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Failure::Parse(format!("bad sequence `{lambda}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let g: Poly = g_poly(&seq, n, p)?;
    Ok((
        g.to_string(),
        json!({ "lambda": seq, "n": n, "p": p, "g": poly_to_json(&g) }),
        true,
    ))
}

fn verify(only: Option<u8>) -> Out {
    let ids: Vec<u8> = match only {
        Some(k) if (1..=9).contains(&k) => vec![k],
        Some(k) => return Err(Failure::Parse(format!("no criterion {k}"))),
        None => (1..=9).collect(),
    };
    let outcomes: Vec<_> = ids.into_iter().map(acceptance::run).collect();
    let ok = outcomes.iter().all(|o| o.passed());
    let text = outcomes.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("\n");
    let j = json!({
        "passed": ok,
        "criteria": outcomes
            .iter()
            .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed(), "detail": o.detail }))
            .collect::<Vec<_>>(),
    });
    Ok((text, j, ok))
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Roots { .. } => "roots",
        Cmd::Resolve { .. } => "resolve",
        Cmd::Kclass { .. } => "kclass",
        Cmd::Coh { .. } => "coh",
        Cmd::Qcoeff { .. } => "qcoeff",
        Cmd::Gpoly { .. } => "gpoly",
        Cmd::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Roots { quiver } => roots(quiver),
        Cmd::Resolve { orbit, partition } => resolve(orbit, partition.as_deref()),
        Cmd::Kclass { orbit, rp } => kclass_cmd(orbit, rp.as_deref()),
        Cmd::Coh {
            orbit,
            rp,
            degree_bound,
        } => coh(orbit, rp.as_deref(), *degree_bound),
        Cmd::Qcoeff {
            orbit,
            rp,
            degree_bound,
        } => qcoeff(orbit, rp.as_deref(), *degree_bound),
        Cmd::Gpoly { lambda, n, p } => gpoly(lambda, *n, *p),
        Cmd::Verify { only } => verify(*only),
    };
    let command = command_name(&cli.cmd);
    match res {
        Ok((text, mut j, ok)) => {
            let rendered = match cli.format {
                Format::Text => text,
                Format::Json => {
                    let obj = j.as_object_mut().expect("object");
                    obj.insert("schema".into(), json!(1));
                    obj.insert("command".into(), json!(command));
                    serde_json::to_string_pretty(&j).expect("serializable")
                }
            };
            let rendered = format!("{rendered}\n");
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, rendered) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{rendered}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Parse(s) => (2, "parse", s),
                Failure::Domain(e) => (1, "domain", e.to_string()),
            };
            match cli.format {
                Format::Text => eprintln!("error ({kind}): {msg}"),
                Format::Json => eprintln!(
                    "{}",
                    json!({ "schema": 1, "command": command, "error": { "kind": kind, "message": msg } })
                ),
            }
            ExitCode::from(code)
        }
    }
}
