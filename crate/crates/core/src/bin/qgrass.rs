use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qgrass::degen::{bongartz_data, degeneration_poset};
use qgrass::grass::strata_sum;
use qgrass::specialize::{check_degeneration, pbw_rep, verify_theorem, VerifyOptions};
use qgrass::text::{parse_dim, parse_list, parse_quiver, parse_rep, poset_dot, poset_report};
use qgrass::{betti_oracle, Error, Grassmannians, OracleOptions, PoincarePoly, RepClass, TypeAQuiver};

#[derive(Parser)]
#[command(name = "qgrass", version, about = "Degenerations and quiver Grassmannians of type A")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursion,
    Count,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degeneration poset of a dimension vector
    Poset {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
        #[arg(long, value_enum, default_value = "json")]
        format: PosetFormat,
    },
    /// Poincaré polynomial of Gr_e(M)
    Betti {
        #[arg(long)]
        quiver: String,
        #[arg(long, allow_hyphen_values = true)]
        rep: String,
        #[arg(long)]
        sub: String,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, value_enum, default_value = "json")]
        format: TextFormat,
    },
    /// Stratum records of Gr_e(N) for a cover M < N
    Strata {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        sub: String,
    },
    /// All specialization checks at one dimension vector
    Verify {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// The PBW degeneration M^i of the equioriented A_n
    Pbw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

struct Outcome {
    output: String,
    ok: bool,
}

fn json_out<T: Serialize>(value: &T, ok: bool) -> Outcome {
    Outcome { output: serde_json::to_string_pretty(value).expect("reports serialize"), ok }
}

fn poly_json(p: &PoincarePoly) -> Value {
    json!({ "coeffs": p.coeffs(), "pretty": p.to_string() })
}

fn grassmannians(q: &TypeAQuiver) -> qgrass::Result<Grassmannians> {
    Grassmannians::for_quiver(q)
}

fn run(cmd: Cmd) -> qgrass::Result<Outcome> {
    match cmd {
        Cmd::Poset { quiver, dim, format } => {
            let q = parse_quiver(&quiver)?;
            let d = parse_dim(&dim, &q)?;
            let g = grassmannians(&q)?;
            let poset = degeneration_poset(g.alg(), &d)?;
            Ok(match format {
                PosetFormat::Dot => Outcome { output: poset_dot(g.alg(), &poset)?, ok: true },
                PosetFormat::Json => json_out(&poset_report(g.alg(), &poset)?, true),
            })
        }
        Cmd::Betti { quiver, rep, sub, method, format } => {
            let q = parse_quiver(&quiver)?;
            let m = parse_rep(&rep, &q)?;
            let e = parse_dim(&sub, &q)?;
            let recursion = match method {
                Method::Count => None,
                _ => Some(grassmannians(&q)?.betti(&m, &e)?),
            };
            let count = match method {
                Method::Recursion => None,
                _ => Some(betti_oracle(&q, &m, &e, OracleOptions::default())?),
            };
            let ok = match (&recursion, &count) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
            let poly = recursion.clone().or(count.clone()).expect("at least one method runs");
            if let TextFormat::Text = format {
                let output = if ok {
                    poly.to_string()
                } else {
                    format!("recursion {} != count {}", recursion.unwrap(), count.unwrap())
                };
                return Ok(Outcome { output, ok });
            }
            let value = json!({
                "quiver": q,
                "rep": m,
                "sub": e,
                "poly": poly_json(&poly),
                "euler_characteristic": poly.euler_characteristic(),
                "recursion": recursion.as_ref().map(poly_json),
                "count": count.as_ref().map(poly_json),
                "agree": ok,
            });
            Ok(json_out(&value, ok))
        }
        Cmd::Strata { quiver, m, n, sub } => {
            let q = parse_quiver(&quiver)?;
            let (m, n) = (parse_rep(&m, &q)?, parse_rep(&n, &q)?);
            let e = parse_dim(&sub, &q)?;
            let g = grassmannians(&q)?;
            let bd = bongartz_data(g.alg(), &m, &n)?;
            let records = g.strata_table(&bd, &e)?;
            let (p_n, p_m) = (g.betti(&n, &e)?, g.betti(&m, &e)?);
            let (all, i1) = (strata_sum(&records, &[0, 1]), strata_sum(&records, &[1]));
            let i0 = strata_sum(&records, &[0]);
            let ok = all == p_n && i0 == p_m && &p_n - &p_m == i1;
            let value = json!({
                "quiver": q,
                "m": m,
                "n": n,
                "sub": e,
                "bongartz": bd,
                "records": records,
                "p_n": poly_json(&p_n),
                "p_m": poly_json(&p_m),
                "i0_sum": poly_json(&i0),
                "i1_sum": poly_json(&i1),
                "identity_ok": ok,
            });
            Ok(json_out(&value, ok))
        }
        Cmd::Verify { quiver, dim, jobs } => {
            let q = parse_quiver(&quiver)?;
            let d = parse_dim(&dim, &q)?;
            let g = grassmannians(&q)?;
            let summary = verify_theorem(&g, &d, VerifyOptions { jobs, ..Default::default() })?;
            let kernels: Vec<Value> = summary
                .nonzero_kernels()
                .map(|c| {
                    let cov = &summary.covers[c.cover];
                    json!({ "m": cov.m, "n": cov.n, "sub": c.e, "kernel": poly_json(&c.kernel) })
                })
                .collect();
            let mut value = serde_json::to_value(&summary).expect("summary serializes");
            value["nonzero_kernels"] = Value::Array(kernels);
            Ok(json_out(&value, summary.failures == 0))
        }
        Cmd::Pbw { n, i, jobs } => {
            let tuple = parse_list(&i)?;
            let (m, d, e) = pbw_rep(n, &tuple)?;
            let q = TypeAQuiver::equioriented(n);
            let generic = RepClass::from_pairs([(q.projective(0), n + 1)]);
            let g = grassmannians(&q)?;
            let report = match jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|err| Error::Invalid(format!("thread pool: {err}")))?
                    .install(|| check_degeneration(&g, &generic, &m, &e))?,
                None => check_degeneration(&g, &generic, &m, &e)?,
            };
            let value = json!({
                "quiver": q,
                "i": tuple,
                "rep": m,
                "dim": d,
                "sub": e,
                "generic": generic,
                "p_generic": poly_json(&report.p_m),
                "p_degenerate": poly_json(&report.p_n),
                "kernel": poly_json(&report.kernel),
                "ok": report.ok(),
                "report": report,
            });
            Ok(json_out(&value, report.ok()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(err) = writeln!(stdout, "{}", out.output) {
                if err.kind() != std::io::ErrorKind::BrokenPipe {
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let value = json!({ "error": { "kind": err.kind(), "message": err.to_string() } });
            eprintln!("{}", serde_json::to_string(&value).expect("error serializes"));
            ExitCode::from(2)
        }
    }
}
