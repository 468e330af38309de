use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flagcoh::blowup::{eta_table, p_poly, SignVector};
use flagcoh::cartan::LieType;
use flagcoh::chevalley::{order_poly, verify_order, PrimeField};
use flagcoh::cohomology::{integral_cohomology_with_cap, CohomologyGroups};
use flagcoh::graph::{build_graph, export, ExportFormat};
use flagcoh::qpoly::QPoly;
use flagcoh::tau::nilpotent_tau;
use flagcoh::toda_flow::{flow_report, SpectralData, DEFAULT_SAMPLES};
use flagcoh::verify::{verify_type, Status};
use flagcoh::weyl::{format_word, longest_element, WeylGroup, DEFAULT_CAP};
use flagcoh::Error;

const CAP_VAR: &str = "FLAGCOH_CAP";

#[derive(Parser)]
#[command(name = "flagcoh", version, about = "Blow-ups of the Toda lattice, real flag manifolds and Chevalley group orders")]
struct Cli {
    /// Maximum Weyl group order to enumerate (default: $FLAGCOH_CAP or 3000000).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weyl group data.
    Weyl {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, value_enum, default_value_t = WeylEmit::Order)]
        emit: WeylEmit,
    },
    /// Blow-up counts eta(w, eps) for every group element.
    Eta {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Alternating sum p_eps(q); `--eps all` runs every sign vector.
    Pq {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },
    /// Incidence graph as DOT or JSON.
    Graph {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, default_value = "dot")]
        format: ExportFormat,
    },
    /// Cohomology of the real flag manifold with twisted coefficients.
    Cohomology {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, value_enum, default_value_t = Ring::Z)]
        ring: Ring,
    },
    /// Nilpotent tau-functions.
    Tau {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long, value_enum, default_value_t = TauEmit::MinDegrees)]
        emit: TauEmit,
    },
    /// Order of the finite Chevalley group; `--verify` compares with a brute-force count.
    Chevalley {
        #[arg(long = "type")]
        ty: LieType,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        verify: bool,
    },
    /// Blow-ups of the A-type Toda flow for a given spectrum.
    Flow {
        #[arg(long)]
        rank: usize,
        /// Comma-separated distinct eigenvalues; shifted to zero trace.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        spectrum: Vec<f64>,
        /// Half-width of the time window, or `auto`.
        #[arg(long, default_value = "auto")]
        window: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Every applicable cross-check for a type.
    Verify {
        #[arg(long = "type")]
        ty: LieType,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WeylEmit {
    Lengths,
    Order,
    WordOfLongest,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    #[value(name = "Z")]
    Z,
    #[value(name = "Q")]
    Q,
    #[value(name = "F2")]
    F2,
}

#[derive(Clone, Copy, ValueEnum)]
enum TauEmit {
    MinDegrees,
    Multiplicity,
    Poly,
}

/// Result of a command: rendered text and whether every check held.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: Value) -> Output {
        Output::checked(v, true)
    }

    fn checked(v: Value, ok: bool) -> Output {
        Output { text: serde_json::to_string_pretty(&v).expect("json renders") + "\n", ok }
    }
}

fn cap(cli: &Cli) -> Result<usize, String> {
    if let Some(c) = cli.cap {
        return Ok(c);
    }
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{CAP_VAR} must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Parsed `--eps`: one vector (all-minus when absent) or every vector.
fn signs(eps: &Option<String>, t: LieType) -> Result<Vec<SignVector>, Error> {
    match eps.as_deref() {
        None => Ok(vec![SignVector::all_minus(t.rank())]),
        Some("all") => Ok(SignVector::all(t.rank()).collect()),
        Some(s) => {
            let v: SignVector = s.parse()?;
            v.check_rank(t.rank())?;
            Ok(vec![v])
        }
    }
}

fn single_sign(eps: &Option<String>, t: LieType) -> Result<SignVector, Error> {
    if eps.as_deref() == Some("all") {
        return Err(Error::InvalidSigns("all".into()));
    }
    Ok(signs(eps, t)?[0])
}

/// `[exponent, coefficient]` pairs; coefficients beyond 64 bits become strings.
fn poly_json(p: &QPoly) -> Value {
    Value::Array(
        p.to_pairs()
            .into_iter()
            .map(|(e, c)| {
                let coeff = c.parse::<i64>().map(Value::from).unwrap_or(Value::String(c));
                json!([e, coeff])
            })
            .collect(),
    )
}

fn cohomology_json(g: &CohomologyGroups, ring: Ring) -> Value {
    let mut v = json!({ "lie_type": g.lie_type, "eps": g.eps });
    match ring {
        Ring::Z => {
            v["degrees"] = serde_json::to_value(&g.degrees).expect("groups serialize");
            v["summary"] = json!(g.summary());
        }
        Ring::Q => v["betti"] = json!(g.betti()),
        Ring::F2 => v["mod2"] = json!(g.mod2),
    }
    v["warnings"] = json!(g.warnings);
    v
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cap = cap(cli).map_err(Failure::Usage)?;
    let out = match &cli.command {
        Command::Weyl { ty, emit } => {
            let t = *ty;
            match emit {
                WeylEmit::Order => Output::json(json!({ "lie_type": t, "order": t.weyl_order().to_string() })),
                WeylEmit::WordOfLongest => {
                    let w = longest_element(t);
                    Output::json(json!({ "lie_type": t, "length": w.length(), "word": format_word(w.word()) }))
                }
                WeylEmit::Lengths => {
                    let g = WeylGroup::enumerate(t, cap)?;
                    Output::json(json!({ "lie_type": t, "order": g.order().to_string(), "lengths": g.length_counts() }))
                }
            }
        }
        Command::Eta { ty, eps, format } => {
            let eps = single_sign(eps, *ty)?;
            let (group, table) = eta_table(*ty, eps, cap)?;
            match format {
                TableFormat::Json => {
                    let mut map = serde_json::Map::new();
                    for idx in 0..group.order() {
                        map.insert(format_word(&group.word(idx)), json!(table.value(idx)));
                    }
                    Output::json(json!({ "lie_type": ty, "eps": eps, "eta": map }))
                }
                TableFormat::Csv => {
                    let mut text = String::from("word,length,eta\n");
                    for idx in 0..group.order() {
                        text += &format!("{},{},{}\n", format_word(&group.word(idx)), group.length(idx), table.value(idx));
                    }
                    Output { text, ok: true }
                }
            }
        }
        Command::Pq { ty, eps } => {
            let group = WeylGroup::enumerate(*ty, cap)?;
            let mut results = Vec::new();
            for e in signs(eps, *ty)? {
                let p = p_poly(&group, e)?;
                results.push(json!({
                    "lie_type": ty,
                    "eps": e,
                    "poly": poly_json(&p),
                    "factored": p.factored_string(),
                }));
            }
            if eps.as_deref() == Some("all") {
                Output::json(json!({ "lie_type": ty, "results": results }))
            } else {
                Output::json(results.pop().expect("one sign vector"))
            }
        }
        Command::Graph { ty, eps, format } => {
            let eps = single_sign(eps, *ty)?;
            let group = WeylGroup::enumerate(*ty, cap)?;
            let g = build_graph(&group, eps)?;
            let mut text = export(&g, *format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Output { text, ok: true }
        }
        Command::Cohomology { ty, eps, ring } => {
            let mut results = Vec::new();
            for e in signs(eps, *ty)? {
                results.push(cohomology_json(&integral_cohomology_with_cap(*ty, e, cap)?, *ring));
            }
            if eps.as_deref() == Some("all") {
                Output::json(json!({ "lie_type": ty, "results": results }))
            } else {
                Output::json(results.pop().expect("one sign vector"))
            }
        }
        Command::Tau { ty, emit } => {
            let family = nilpotent_tau(*ty)?;
            match emit {
                TauEmit::MinDegrees => Output::json(json!({
                    "lie_type": ty,
                    "labels": family.entries.iter().map(|e| e.label()).collect::<Vec<_>>(),
                    "min_degrees": family.min_degrees()?,
                })),
                TauEmit::Multiplicity => Output::json(json!({ "lie_type": ty, "multiplicity": family.multiplicity()? })),
                TauEmit::Poly => Output::json(json!({
                    "lie_type": ty,
                    "variables": family.variables.names(),
                    "entries": family.entries,
                })),
            }
        }
        Command::Chevalley { ty, prime, verify } => {
            let field = PrimeField::new(*prime)?;
            if *verify {
                match verify_order(*ty, field) {
                    Ok(r) => Output::checked(serde_json::to_value(&r).expect("report serializes"), r.matches),
                    Err(Error::Mismatch { closed_form, brute_force }) => Output::checked(
                        json!({ "lie_type": ty, "p": prime, "closed_form": closed_form, "brute_force": brute_force, "match": false }),
                        false,
                    ),
                    Err(e) => return Err(e.into()),
                }
            } else {
                let o = order_poly(*ty);
                Output::json(json!({
                    "lie_type": ty,
                    "p": prime,
                    "r": o.r,
                    "degrees": o.degrees,
                    "poly": poly_json(&o.full()),
                    "order": o.eval(*prime as i64).to_string(),
                }))
            }
        }
        Command::Flow { rank, spectrum, window, samples } => {
            if spectrum.len() != rank + 1 {
                return Err(Failure::Usage(format!("rank {rank} needs {} eigenvalues, got {}", rank + 1, spectrum.len())));
            }
            let window = match window.as_str() {
                "auto" => None,
                w => Some(w.parse::<f64>().ok().filter(|x| *x > 0.0).ok_or_else(|| {
                    Failure::Usage(format!("window must be `auto` or a positive number, got `{w}`"))
                })?),
            };
            let spec = SpectralData::centered(spectrum.clone())?;
            let r = flow_report(&spec, window, *samples, None)?;
            Output::checked(serde_json::to_value(&r).expect("report serializes"), r.matches)
        }
        Command::Verify { ty } => {
            let r = verify_type(*ty, cap)?;
            let ok = r.checks.iter().all(|c| c.status != Status::Fail);
            Output::checked(serde_json::to_value(&r).expect("report serializes"), ok)
        }
    };
    Ok(out)
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
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
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
