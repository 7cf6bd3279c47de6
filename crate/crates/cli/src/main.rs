use std::io::{IsTerminal, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ribbongate::diagram::{parse_pd, DiagramSpec};
use ribbongate::invariants::{alexander_poly, beta1_mod_p, determinant_knot, h1_double_cover};
use ribbongate::obstruction::{ribbon_verdict_with, ObstructionCertificate, Verdict};
use ribbongate::pipeline::{build_lg_with_copies, FamilySpec};
use ribbongate::selftest::{crosscheck_table, pretzel_det_table, run_all, seed_from_env};
use ribbongate::{configure_threads, Error, VERSION};

#[derive(Parser)]
#[command(
    name = "ribbongate",
    version,
    about = "Knot invariants and non-ribbon certificates"
)]
struct Cli {
    /// Emit the JSON report even on a terminal.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for prime sweeps and batch checks.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial, determinant and double-cover homology.
    Invariants(InvariantsArgs),
    /// Livingston bound for a genus-g cobordism between two knots.
    Obstruct(ObstructArgs),
    /// Build L_g for a family and certify it non-ribbon.
    Construct(ConstructArgs),
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiagramArgs {
    #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
    pretzel: Option<String>,
    #[arg(long, value_name = "N")]
    torus2: Option<i64>,
    #[arg(long)]
    unknot: bool,
    /// Comma-separated summands, e.g. `trefoil,trefoil`.
    #[arg(long, value_name = "S1,S2", allow_hyphen_values = true)]
    sum: Option<String>,
    /// PD code as a JSON array of 4-tuples.
    #[arg(long, value_name = "JSON")]
    pd: Option<String>,
    /// Any diagram spec, e.g. `pretzel:3,-3,4^3 # trefoil`.
    #[arg(value_name = "SPEC", allow_hyphen_values = true)]
    spec: Option<String>,
}

impl DiagramArgs {
    fn to_spec(&self) -> Result<DiagramSpec, Error> {
        if let Some(p) = &self.pretzel {
            return format!("pretzel:{p}").parse();
        }
        if let Some(n) = self.torus2 {
            return Ok(DiagramSpec::Torus2(n));
        }
        if self.unknot {
            return Ok(DiagramSpec::Unknot);
        }
        if let Some(s) = &self.sum {
            return Ok(DiagramSpec::Sum(DiagramSpec::parse_list(s)?));
        }
        if let Some(pd) = &self.pd {
            return Ok(DiagramSpec::Pd(parse_pd(pd)?.codes()));
        }
        match &self.spec {
            Some(s) => s.parse(),
            None => Err(Error::MalformedInput("no diagram given".into())),
        }
    }
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Odd prime for beta1; repeatable.
    #[arg(long = "p", value_name = "PRIME")]
    primes: Vec<u64>,
}

#[derive(Args)]
struct ObstructArgs {
    /// Source end K0.
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    /// Target end K1.
    #[arg(long, default_value = "unknot", allow_hyphen_values = true)]
    to: String,
    #[arg(long)]
    genus: u64,
    /// Restrict the sweep to these odd primes.
    #[arg(long = "p", value_name = "PRIME")]
    primes: Vec<u64>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Base knot, e.g. `pretzel:3,-3,4`, or a JSON family object.
    #[arg(long, allow_hyphen_values = true)]
    family: String,
    #[arg(long)]
    genus: u64,
    /// Number of summands n (default 2g + 1).
    #[arg(long)]
    copies: Option<u64>,
    /// Odd prime dividing det of the base knot.
    #[arg(long = "p", value_name = "PRIME")]
    prime: Option<u64>,
}

/// Command result: the report plus whether the run counts as a failure.
struct Done {
    name: &'static str,
    inputs: Value,
    outputs: Value,
    human: Vec<String>,
    failed: Option<String>,
}

fn invalid_input(e: &Error) -> bool {
    !matches!(
        e,
        Error::Internal(_)
            | Error::InexactDivision(_)
            | Error::EvalAtZero
            | Error::ZeroPolynomial
            | Error::NotSquare { .. }
    )
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn group_name(factors: &[String]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors
        .iter()
        .map(|f| format!("Z/{f}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn invariants(a: &InvariantsArgs) -> Result<Done, Error> {
    let spec = a.diagram.to_spec()?;
    let d = spec.build()?;
    d.ensure_knot()?;
    let delta = alexander_poly(&d)?;
    let det = determinant_knot(&d)?;
    let h = h1_double_cover(&d)?;
    let mut beta = serde_json::Map::new();
    let mut human = vec![
        format!("diagram      {spec}"),
        format!("crossings    {}", d.crossing_count()),
        format!("alexander    {delta}"),
        format!("determinant  {det}"),
    ];
    let factors: Vec<String> = h.invariant_factors.iter().map(|f| f.to_string()).collect();
    human.push(format!("H1(double)   {}", group_name(&factors)));
    for &p in &a.primes {
        let b = beta1_mod_p(&d, p)?;
        beta.insert(p.to_string(), json!(b));
        human.push(format!("beta1 mod {p}  {b}"));
    }
    Ok(Done {
        name: "invariants",
        inputs: json!({"diagram": to_value(&spec)?, "p": a.primes}),
        outputs: json!({
            "crossings": d.crossing_count(),
            "alexander": to_value(&delta)?,
            "alexander_text": delta.to_string(),
            "determinant": to_value(&ribbongate::bigint_json::Json(det))?,
            "invariant_factors": to_value(&h)?["invariant_factors"].clone(),
            "beta1": beta,
        }),
        human,
        failed: None,
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Obstructed => "OBSTRUCTED",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn certificate_lines(c: &ObstructionCertificate) -> Vec<String> {
    vec![
        format!(
            "prime        {}",
            c.p.map_or("none".to_string(), |p| p.to_string())
        ),
        format!("det K0, K1   {}, {}", c.det0, c.det1),
        format!("beta0 (K0)   {}", c.beta0),
        format!("beta1 (K1)   {}", c.beta1),
        format!("genus        {}", c.genus),
        format!("raw bound    {}", c.raw_bound),
        format!("c2 >=        {}", c.c2_lower),
        format!("verdict      {}", verdict_name(c.verdict)),
    ]
}

fn obstruct(a: &ObstructArgs) -> Result<Done, Error> {
    let from: DiagramSpec = a.from.parse()?;
    let to: DiagramSpec = a.to.parse()?;
    let k0 = from.build()?;
    let k1 = to.build()?;
    let primes = (!a.primes.is_empty()).then_some(a.primes.as_slice());
    let cert = ribbon_verdict_with(&k0, &k1, a.genus, primes)?;
    let mut human = vec![format!("from {from} to {to}")];
    human.extend(certificate_lines(&cert));
    Ok(Done {
        name: "obstruct",
        inputs: json!({"from": to_value(&from)?, "to": to_value(&to)?, "genus": a.genus, "p": a.primes}),
        outputs: json!({"certificate": to_value(&cert)?}),
        human,
        failed: None,
    })
}

fn construct(a: &ConstructArgs) -> Result<Done, Error> {
    let mut family: FamilySpec = a.family.parse()?;
    if let Some(p) = a.prime {
        family = family.with_prime(p);
    }
    let c = build_lg_with_copies(&family, a.genus, a.copies)?;
    let mut human = vec![
        format!("family       {}", family.base_knot),
        format!("copies       {}", c.copies),
        format!("source       {}", c.recipe.source),
        format!("target       {}", c.recipe.target),
        format!("moves        {}", c.recipe.moves().len()),
        format!("decomposable {}", c.recipe.decomposable_certified()),
    ];
    human.extend(certificate_lines(&c.certificate));
    let failed = (c.certificate.verdict != Verdict::Obstructed).then(|| {
        format!(
            "verdict is {}, not OBSTRUCTED",
            verdict_name(c.certificate.verdict)
        )
    });
    Ok(Done {
        name: "construct",
        inputs: json!({"family": to_value(&family)?, "genus": a.genus, "copies": a.copies}),
        outputs: json!({
            "copies": c.copies,
            "recipe": to_value(&c.recipe)?,
            "certificate": to_value(&c.certificate)?,
        }),
        human,
        failed,
    })
}

fn selftest(jobs: usize) -> Result<Done, Error> {
    let seed = seed_from_env();
    let outcomes = run_all(seed, jobs > 1);
    let mut human: Vec<String> = outcomes.iter().map(|o| o.line()).collect();
    human.push("det P(3,-3,k):".into());
    let dets = pretzel_det_table()?;
    for (k, d) in &dets {
        human.push(format!("  k = {k:2}  det = {d}"));
    }
    human.push("|Δ(-1)| vs |det Goeritz|:".into());
    let cross = crosscheck_table()?;
    for (name, a, b) in &cross {
        human.push(format!(
            "  {name:18} {a:>4} {b:>4} {}",
            if a == b { "ok" } else { "MISMATCH" }
        ));
    }
    let failed = outcomes
        .iter()
        .find(|o| !o.passed)
        .map(|o| format!("first failing criterion: {}", o.name))
        .or_else(|| {
            cross
                .iter()
                .find(|(_, a, b)| a != b)
                .map(|(n, _, _)| format!("determinant mismatch for {n}"))
        });
    Ok(Done {
        name: "selftest",
        inputs: json!({"seed": seed, "jobs": jobs}),
        outputs: json!({
            "criteria": to_value(&outcomes)?,
            "pretzel_determinants": dets.iter().map(|(k, d)| json!({"k": k, "det": d.to_string()})).collect::<Vec<_>>(),
            "determinant_crosscheck": cross.iter().map(|(n, a, b)| json!({"knot": n, "alexander": a.to_string(), "goeritz": b.to_string()})).collect::<Vec<_>>(),
        }),
        human,
        failed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.jobs);
    let start = Instant::now();
    let result = match &cli.command {
        Command::Invariants(a) => invariants(a),
        Command::Obstruct(a) => obstruct(a),
        Command::Construct(a) => construct(a),
        Command::Selftest => selftest(cli.jobs),
    };
    let done = match result {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if invalid_input(&e) { 2 } else { 1 });
        }
    };
    let timing_ms = start.elapsed().as_millis() as u64;
    let text = if cli.json || !std::io::stdout().is_terminal() {
        let report = json!({
            "command": done.name,
            "inputs": done.inputs,
            "outputs": done.outputs,
            "timing_ms": timing_ms,
            "version": VERSION,
        });
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        let mut t: String = done.human.iter().map(|l| format!("{l}\n")).collect();
        t.push_str(&format!("({timing_ms} ms, ribbongate {VERSION})\n"));
        t
    };
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match done.failed {
        Some(msg) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
