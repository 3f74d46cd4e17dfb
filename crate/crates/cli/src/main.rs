//! Command-line surface: data round trips through the shared JSON formats
//! and seeded verification suites with deterministic reports.
//!
//! Exit codes: 0 success with zero violations, 1 verification violations,
//! 2 input errors. Reports are JSON with sorted keys, newline-terminated.
//! `STEINBERG_GZ_MAX_N` caps the exhaustive sections of `lemma-suite`.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use steinberg_gz::algebra::Scalar;
use steinberg_gz::algebra::{
    brute_principal_minor, parse_rational, CharTriangle, Dual, Mat, Rational,
};
use steinberg_gz::gzparam::{
    indu_minor, ones_upper, pi_inverse, pi_map, random_structured, simultaneous_quotient,
    structured_pi, structured_pi_inverse, GZChain, LowerBorel,
};
use steinberg_gz::poisson::{
    casimir_check, casimir_check_with_form, flow::hamiltonian_flow, gz_family, rank_report,
    verify_commutative_family, BracketForm, HFunction,
};
use steinberg_gz::roots::{
    all_orderings, beta_invariants_hold, beta_set, branching_exponent, compatible_order,
    degree_arithmetic, ell_power, root_to_string, LeviA, Ordering, RootDataA,
};
use steinberg_gz::sample;
use steinberg_gz::steinberg::{
    check_unipotent_factorization, is_regular_krylov, leading_minors, steinberg_beta_form,
    steinberg_invert, steinberg_section, unipotent_factorization_element, SteinbergInput,
};

#[derive(Parser)]
#[command(
    name = "steinberg-gz",
    version,
    about = "Exact verification toolkit for Borel parametrizations and the dual-group Poisson family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Matrix size n of GL(n).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Seed for all randomness (reports are reproducible bit-for-bit).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled points/cases.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Read the input payload from a file instead of stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write the report/output to a file instead of stdout.
    #[arg(long = "out")]
    output: Option<PathBuf>,
    /// Evaluate brackets in floating point (flows always integrate in
    /// floats; verification defaults to exact rationals).
    #[arg(long, default_value_t = false)]
    float: bool,
    /// Flip one sign inside the bracket to prove the checks have power.
    #[arg(long, default_value_t = false)]
    mutate: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Steinberg section on parameters read from the payload.
    Steinberg(Common),
    /// Coefficient map of a lower-triangular matrix (payload: matrix JSON).
    Pi(Common),
    /// Inverse coefficient map (payload: triangle JSON).
    PiInv(Common),
    /// Simultaneous quotient of a pair (payload: {"u": matrix, "v": matrix}).
    RQuotient(Common),
    /// Pairwise bracket vanishing of the Gelfand-Zetlin family.
    GzCheck(Common),
    /// Centrality of the top-block coefficients.
    Casimir(Common),
    /// Jacobian and bivector ranks at a seeded point.
    Rank(Common),
    /// Integrate a Hamiltonian flow and report conservation drift.
    Flow(FlowArgs),
    /// Branching exponent and degree arithmetic.
    Branch(BranchArgs),
    /// Run every property check and aggregate pass/fail per property.
    LemmaSuite(Common),
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    common: Common,
    /// Step size (0 is allowed and keeps the trajectory constant).
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Hamiltonian: "d<j>" for a torus coordinate or "f<i>,<k>" for a
    /// block coefficient.
    #[arg(long, default_value = "d1")]
    hamiltonian: String,
    /// Dump the trajectory as JSON-lines of chart coordinates.
    #[arg(long)]
    trajectory_out: Option<PathBuf>,
}

#[derive(Args)]
struct BranchArgs {
    #[command(flatten)]
    common: Common,
    /// Subgroup size m of the chain GL(m) < GL(n).
    #[arg(long)]
    m: usize,
    /// Odd integer >= 3; adds the degree arithmetic to the report.
    #[arg(long)]
    ell: Option<u64>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let (common, outcome) = match &cli.command {
        Command::Steinberg(c) => (c.clone(), cmd_steinberg(c)),
        Command::Pi(c) => (c.clone(), cmd_pi(c)),
        Command::PiInv(c) => (c.clone(), cmd_pi_inv(c)),
        Command::RQuotient(c) => (c.clone(), cmd_r_quotient(c)),
        Command::GzCheck(c) => (c.clone(), cmd_gz_check(c)),
        Command::Casimir(c) => (c.clone(), cmd_casimir(c)),
        Command::Rank(c) => (c.clone(), cmd_rank(c)),
        Command::Flow(a) => (a.common.clone(), cmd_flow(a)),
        Command::Branch(a) => (a.common.clone(), cmd_branch(a)),
        Command::LemmaSuite(c) => (c.clone(), cmd_lemma_suite(c)),
    };
    match outcome {
        Ok((value, violations)) => {
            if emit(&common, &value).is_err() {
                return 2;
            }
            if violations {
                1
            } else {
                0
            }
        }
        Err(msg) => {
            let report = json!({ "error": msg });
            let _ = emit(&common, &report);
            2
        }
    }
}

fn emit(common: &Common, value: &Value) -> std::io::Result<()> {
    // serde_json maps are ordered; a final newline closes the report
    let text = format!(
        "{}\n",
        serde_json::to_string(value).expect("serializable report")
    );
    match &common.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_payload(common: &Common) -> Result<String, String> {
    match &common.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read input: {e}")),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn header(command: &str, n: usize, seed: u64, properties: &[&str]) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("n".into(), json!(n));
    map.insert("seed".into(), json!(seed));
    map.insert("properties".into(), json!(properties));
    map
}

type Outcome = Result<(Value, bool), String>;

// ---------------------------------------------------------------------------
// Data commands: bare payloads in the shared JSON formats

fn cmd_steinberg(c: &Common) -> Outcome {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Payload {
        Bare(Vec<String>),
        Full {
            params: Vec<String>,
            ordering: Option<Vec<usize>>,
            torus: Option<Vec<String>>,
        },
    }
    let text = read_payload(c)?;
    let payload: Payload = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let (params, ordering, torus) = match payload {
        Payload::Bare(p) => (p, None, None),
        Payload::Full {
            params,
            ordering,
            torus,
        } => (params, ordering, torus),
    };
    let parse_all = |v: &[String]| -> Result<Vec<Rational>, String> {
        v.iter()
            .map(|s| parse_rational(s).map_err(|e| e.to_string()))
            .collect()
    };
    let params = parse_all(&params)?;
    let n = params.len() + 1;
    let rd = RootDataA::new(n).map_err(|e| e.to_string())?;
    let ord = match ordering {
        Some(seq) => Ordering::new(seq, &rd).map_err(|e| e.to_string())?,
        None => Ordering::standard(&rd),
    };
    let torus = torus.map(|t| parse_all(&t)).transpose()?;
    let inp = SteinbergInput::new(ord, params, torus).map_err(|e| e.to_string())?;
    let mat = steinberg_section(&inp).map_err(|e| e.to_string())?;
    Ok((
        serde_json::to_value(&mat).expect("matrix serializes"),
        false,
    ))
}

fn cmd_pi(c: &Common) -> Outcome {
    let text = read_payload(c)?;
    let mat: Mat<Rational> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let borel = LowerBorel::new(mat).map_err(|e| e.to_string())?;
    let triangle = pi_map(&borel).map_err(|e| e.to_string())?;
    Ok((
        serde_json::to_value(&triangle).expect("triangle serializes"),
        false,
    ))
}

fn cmd_pi_inv(c: &Common) -> Outcome {
    let text = read_payload(c)?;
    let triangle: CharTriangle = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let borel = pi_inverse(&triangle).map_err(|e| e.to_string())?;
    Ok((
        serde_json::to_value(borel.mat()).expect("matrix serializes"),
        false,
    ))
}

fn cmd_r_quotient(c: &Common) -> Outcome {
    #[derive(serde::Deserialize)]
    struct Payload {
        u: Mat<Rational>,
        v: Mat<Rational>,
    }
    let text = read_payload(c)?;
    let payload: Payload = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let triangle = simultaneous_quotient(&payload.u, &payload.v).map_err(|e| e.to_string())?;
    Ok((
        serde_json::to_value(&triangle).expect("triangle serializes"),
        false,
    ))
}

// ---------------------------------------------------------------------------
// Verification commands: reports with the {command, n, seed, properties}
// header

fn cmd_gz_check(c: &Common) -> Outcome {
    let form = if c.mutate {
        BracketForm::SignFlipped
    } else {
        BracketForm::Standard
    };
    let report =
        verify_commutative_family(&gz_family(c.n), c.n, c.samples, c.seed, c.float, 1e-9, form)
            .map_err(|e| e.to_string())?;
    let mut map = header("gz-check", c.n, c.seed, &["pairwise_bracket_vanishing"]);
    map.insert("float_mode".into(), json!(report.float_mode));
    map.insert("points".into(), json!(report.points));
    map.insert("pairs_checked".into(), json!(report.pairs_checked));
    map.insert("max_abs".into(), json!(report.max_abs));
    map.insert("mutated".into(), json!(c.mutate));
    let has_violations = !report.violations.is_empty();
    map.insert(
        "violations".into(),
        serde_json::to_value(&report.violations).expect("serializable"),
    );
    Ok((Value::Object(map), has_violations))
}

fn cmd_casimir(c: &Common) -> Outcome {
    let report = casimir_check(c.n, c.seed, c.samples).map_err(|e| e.to_string())?;
    let mut map = header("casimir", c.n, c.seed, &["top_coefficients_central"]);
    map.insert("points".into(), json!(report.points));
    map.insert("brackets_checked".into(), json!(report.brackets_checked));
    map.insert("max_abs".into(), json!(report.max_abs));
    let has_violations = !report.violations.is_empty();
    map.insert(
        "violations".into(),
        serde_json::to_value(&report.violations).expect("serializable"),
    );
    Ok((Value::Object(map), has_violations))
}

fn cmd_rank(c: &Common) -> Outcome {
    let report = rank_report(c.n, c.seed).map_err(|e| e.to_string())?;
    let mut map = header(
        "rank",
        c.n,
        c.seed,
        &["family_jacobian_rank", "bivector_rank"],
    );
    map.insert("family_size".into(), json!(report.family_size));
    map.insert("chart_size".into(), json!(report.chart_size));
    map.insert("family_rank".into(), json!(report.family_rank));
    map.insert(
        "family_rank_expected".into(),
        json!(report.family_rank_expected),
    );
    map.insert("bivector_rank".into(), json!(report.bivector_rank));
    map.insert(
        "bivector_rank_expected".into(),
        json!(report.bivector_rank_expected),
    );
    map.insert("pass".into(), json!(report.pass));
    Ok((Value::Object(map), !report.pass))
}

fn parse_hamiltonian(spec: &str, n: usize) -> Result<HFunction, String> {
    let spec = spec.trim();
    if let Some(j) = spec.strip_prefix('d') {
        let j: usize = j.parse().map_err(|_| format!("bad hamiltonian `{spec}`"))?;
        if j < 1 || j > n {
            return Err(format!("d{j} out of range for n={n}"));
        }
        return Ok(HFunction::XEntry(j, j));
    }
    if let Some(rest) = spec.strip_prefix('f') {
        let (i, k) = rest
            .split_once(',')
            .ok_or_else(|| format!("bad hamiltonian `{spec}`"))?;
        let i: usize = i.parse().map_err(|_| format!("bad hamiltonian `{spec}`"))?;
        let k: usize = k.parse().map_err(|_| format!("bad hamiltonian `{spec}`"))?;
        if i < 1 || i > n || k < 1 || k > i {
            return Err(format!("f{i},{k} out of range for n={n}"));
        }
        return Ok(HFunction::GzCoeff { block: i, coeff: k });
    }
    Err(format!("bad hamiltonian `{spec}` (use d<j> or f<i>,<k>)"))
}

fn cmd_flow(a: &FlowArgs) -> Outcome {
    let c = &a.common;
    let f = parse_hamiltonian(&a.hamiltonian, c.n)?;
    let mut rng = sample::rng(c.seed);
    let p = steinberg_gz::poisson::random_h_point(&mut rng, c.n);
    let x = p.x().map(f64::from_rational);
    let y = p.y().map(f64::from_rational);
    let res = hamiltonian_flow(&f, &x, &y, a.dt, a.steps).map_err(|e| e.to_string())?;
    if let Some(path) = &a.trajectory_out {
        let mut lines = String::new();
        for (step, coords) in res.trajectory.iter().enumerate() {
            let mut m = Map::new();
            m.insert("step".into(), json!(step));
            for (label, v) in res.labels.iter().zip(coords) {
                m.insert(label.clone(), json!(v));
            }
            lines.push_str(&serde_json::to_string(&Value::Object(m)).expect("serializable"));
            lines.push('\n');
        }
        std::fs::write(path, lines).map_err(|e| format!("cannot write trajectory: {e}"))?;
    }
    let mut map = header(
        "flow",
        c.n,
        c.seed,
        &["flow_conservation", "casimir_stationarity"],
    );
    map.insert("hamiltonian".into(), json!(res.report.hamiltonian));
    map.insert("dt".into(), json!(res.report.dt));
    map.insert("steps".into(), json!(res.report.steps));
    map.insert("stationary".into(), json!(res.report.stationary));
    map.insert(
        "max_relative_drift".into(),
        json!(res.report.max_relative_drift),
    );
    map.insert(
        "drifts".into(),
        serde_json::to_value(&res.report.drifts).expect("serializable"),
    );
    // conservation gate: drift within the engineering target
    let ok = res.report.max_relative_drift <= 1e-6;
    map.insert("pass".into(), json!(ok));
    Ok((Value::Object(map), !ok))
}

fn cmd_branch(a: &BranchArgs) -> Outcome {
    let c = &a.common;
    let exponent = branching_exponent(c.n, a.m).map_err(|e| e.to_string())?;
    let degrees = a
        .ell
        .map(|ell| degree_arithmetic(c.n, ell))
        .transpose()
        .map_err(|e| e.to_string())?;
    let mut map = header(
        "branch",
        c.n,
        c.seed,
        &["branching_exponent_formula", "degree_arithmetic"],
    );
    map.insert("m".into(), json!(a.m));
    map.insert("exponent".into(), json!(exponent));
    let multiplicity = match (exponent, a.ell) {
        (0, _) => "1".to_string(),
        (e, Some(ell)) => ell_power(ell, e as u64).to_string(),
        (e, None) => format!("ell^{e}"),
    };
    map.insert("multiplicity".into(), json!(multiplicity));
    if let (Some(ell), Some(d)) = (a.ell, degrees) {
        map.insert("ell".into(), json!(ell));
        map.insert("algebra_degree".into(), json!(d.algebra_degree.to_string()));
        map.insert(
            "center_cover_degree".into(),
            json!(d.center_cover_degree.to_string()),
        );
    }
    Ok((Value::Object(map), false))
}

// ---------------------------------------------------------------------------
// Aggregated property suite

fn cmd_lemma_suite(c: &Common) -> Outcome {
    let cap: usize = std::env::var("STEINBERG_GZ_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(5);
    let n = c.n.min(cap).max(2);
    let form = if c.mutate {
        BracketForm::SignFlipped
    } else {
        BracketForm::Standard
    };
    let mut checks: Vec<Value> = Vec::new();
    let mut failures = 0usize;
    let mut push = |name: &str, pass: bool, details: Value| {
        if !pass {
            failures += 1;
        }
        checks.push(json!({ "check": name, "pass": pass, "details": details }));
    };

    let rd = RootDataA::new(n).map_err(|e| e.to_string())?;
    let orderings = all_orderings(&rd);
    let mut rng = sample::rng(c.seed);

    // beta sets: every beta is a root, no beta sum is a root
    {
        let pass = orderings.iter().all(|ord| {
            beta_set(ord, &rd)
                .map(|bs| beta_invariants_hold(&bs, &rd))
                .unwrap_or(false)
        });
        let standard_betas: Vec<String> = beta_set(&Ordering::standard(&rd), &rd)
            .map(|bs| bs.betas.iter().map(root_to_string).collect())
            .unwrap_or_default();
        push(
            "beta_sum_never_root",
            pass,
            json!({ "orderings": orderings.len(), "standard_betas": standard_betas }),
        );
    }
    // unipotent factorization: all leading minors 1 at parameter -1
    {
        let pass = orderings
            .iter()
            .all(|ord| check_unipotent_factorization(ord, n).unwrap_or(false));
        push(
            "unipotent_factorization_minors",
            pass,
            json!({ "orderings": orderings.len() }),
        );
    }
    // Levi-compatible orderings satisfy both post-conditions for every
    // proper subset of the simple roots
    {
        let rank = n - 1;
        let mut pass = true;
        let mut subsets = 0usize;
        for mask in 0u32..(1 << rank) {
            let subset: Vec<usize> = (1..=rank).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            if subset.len() == rank {
                continue;
            }
            let levi = LeviA::new(subset, &rd).map_err(|e| e.to_string())?;
            let ok = compatible_order(&levi, &rd)
                .and_then(|ord| {
                    let bs = beta_set(&ord, &rd)?;
                    let mut head: Vec<usize> = ord.sequence()[..levi.subset.len()].to_vec();
                    head.sort_unstable();
                    Ok(head == levi.subset && bs.betas.iter().all(|b| !rd.root_in_levi(b, &levi)))
                })
                .unwrap_or(false);
            pass &= ok;
            subsets += 1;
        }
        push(
            "levi_compatible_orderings",
            pass,
            json!({ "subsets": subsets }),
        );
    }
    // the +1 control must fail at n = 2
    {
        let rd2 = RootDataA::new(2).map_err(|e| e.to_string())?;
        let ord2 = Ordering::standard(&rd2);
        let phi = unipotent_factorization_element(&ord2, 2, &Rational::from_integer(1.into()))
            .map_err(|e| e.to_string())?;
        let minors = leading_minors(&phi).map_err(|e| e.to_string())?;
        let one = Rational::from_integer(1.into());
        push(
            "plus_one_control_fails",
            !minors.iter().all(|m| *m == one),
            json!({ "minors": minors.iter().map(|m| m.to_string()).collect::<Vec<_>>() }),
        );
    }
    // beta form vs direct section
    {
        let mut pass = true;
        for ord in &orderings {
            for _ in 0..c.samples.max(1) {
                let params: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
                let inp =
                    SteinbergInput::new(ord.clone(), params, None).map_err(|e| e.to_string())?;
                let a = steinberg_section(&inp).map_err(|e| e.to_string())?;
                let b = steinberg_beta_form(&inp).map_err(|e| e.to_string())?;
                pass &= a == b;
            }
        }
        push(
            "beta_form_matches_section",
            pass,
            json!({ "orderings": orderings.len(), "samples": c.samples }),
        );
    }
    // closed product formula vs brute-force minors
    {
        let mut pass = true;
        let mut cases = 0usize;
        for _ in 0..c.samples.max(1) {
            let a = LowerBorel::new(sample::lower_triangular(&mut rng, n))
                .map_err(|e| e.to_string())?;
            let d = a
                .mat()
                .checked_mul(&ones_upper(n))
                .map_err(|e| e.to_string())?;
            for mask in 1u32..(1 << n) {
                let idx0: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                let idx1: Vec<usize> = idx0.iter().map(|&i| i + 1).collect();
                pass &= indu_minor(&a, &idx1).map_err(|e| e.to_string())?
                    == brute_principal_minor(&d, &idx0);
                cases += 1;
            }
        }
        push("product_minor_closed_form", pass, json!({ "cases": cases }));
    }
    // coefficient dependence and affine structure in each entry
    {
        let mut pass = true;
        let a = sample::lower_triangular(&mut rng, n);
        for h in 1..=n {
            for k in 1..=h {
                let mut dual = a.map(|v| Dual::constant(v.clone()));
                dual.set(h - 1, k - 1, Dual::variable(a.get(h - 1, k - 1).clone()));
                let sums = dual
                    .checked_mul(&ones_upper(n))
                    .map_err(|e| e.to_string())?
                    .principal_minor_sums();
                for r in 1..=n {
                    if n - h + k < r {
                        pass &= sums[r - 1].derivative == Rational::from_integer(0.into());
                    }
                }
            }
        }
        push("coefficient_dependence", pass, json!({ "n": n }));
    }
    // coefficient map round trip
    {
        let mut pass = true;
        for _ in 0..c.samples.max(1) {
            let a = LowerBorel::new(sample::lower_triangular(&mut rng, n))
                .map_err(|e| e.to_string())?;
            pass &= pi_inverse(&pi_map(&a).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                == a;
        }
        push("pi_round_trip", pass, json!({ "samples": c.samples }));
    }
    // quotient against the all-ones factor reproduces the coefficient map
    {
        let mut pass = true;
        for _ in 0..c.samples.max(1) {
            let a = sample::lower_triangular(&mut rng, n);
            let lb = LowerBorel::new(a.clone()).map_err(|e| e.to_string())?;
            pass &= simultaneous_quotient(&a, &ones_upper(n)).map_err(|e| e.to_string())?
                == pi_map(&lb).map_err(|e| e.to_string())?;
        }
        push("quotient_matches_pi", pass, json!({ "samples": c.samples }));
    }
    // structured chains round trip
    {
        let mut pass = true;
        let mut chains = 0usize;
        for mask in 0u32..(1 << (n - 1)) {
            let mut indices: Vec<usize> = (1..n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
            indices.push(n);
            let chain = GZChain::new(indices, n).map_err(|e| e.to_string())?;
            let s = random_structured(&mut rng, &chain);
            let coeffs = structured_pi(&s).map_err(|e| e.to_string())?;
            pass &= structured_pi_inverse(&coeffs, &chain).map_err(|e| e.to_string())? == s;
            chains += 1;
        }
        push(
            "structured_chain_round_trip",
            pass,
            json!({ "chains": chains }),
        );
    }
    // section inversion round trip
    {
        let mut pass = true;
        for _ in 0..c.samples.max(1) {
            let params: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
            let rdn = RootDataA::new(n).map_err(|e| e.to_string())?;
            let inp = SteinbergInput::new(Ordering::standard(&rdn), params.clone(), None)
                .map_err(|e| e.to_string())?;
            let sums = steinberg_section(&inp)
                .map_err(|e| e.to_string())?
                .principal_minor_sums();
            pass &= steinberg_invert(&sums[..n - 1], n).map_err(|e| e.to_string())? == params;
        }
        push(
            "section_inversion_round_trip",
            pass,
            json!({ "samples": c.samples }),
        );
    }
    // regularity of sampled sections
    {
        let mut pass = true;
        for _ in 0..c.samples.max(1) {
            let params: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
            let rdn = RootDataA::new(n).map_err(|e| e.to_string())?;
            let inp = SteinbergInput::new(Ordering::standard(&rdn), params, None)
                .map_err(|e| e.to_string())?;
            let st = steinberg_section(&inp).map_err(|e| e.to_string())?;
            pass &= is_regular_krylov(&st, &mut rng, 4);
        }
        push("krylov_regularity", pass, json!({ "samples": c.samples }));
    }
    // Poisson family commutation (exact; capped at n = 3 for runtime)
    {
        let gz_n = n.min(3);
        let report = verify_commutative_family(
            &gz_family(gz_n),
            gz_n,
            c.samples.clamp(1, 10),
            c.seed,
            false,
            0.0,
            form,
        )
        .map_err(|e| e.to_string())?;
        push(
            "gz_commutation",
            report.violations.is_empty(),
            json!({ "n": gz_n, "pairs": report.pairs_checked, "max_abs": report.max_abs }),
        );
    }
    // centrality of the top coefficients; structural, so it holds in the
    // mutated form too - the mutation surfaces through gz_commutation
    {
        let gz_n = n.min(3);
        let report = casimir_check_with_form(gz_n, c.seed, c.samples.clamp(1, 5), form)
            .map_err(|e| e.to_string())?;
        push(
            "casimir_centrality",
            report.violations.is_empty(),
            json!({ "n": gz_n, "brackets": report.brackets_checked }),
        );
    }
    // rank counts
    {
        let rank_n = n.min(4);
        let report = rank_report(rank_n, c.seed).map_err(|e| e.to_string())?;
        push(
            "rank_counts",
            report.pass,
            json!({
                "n": rank_n,
                "family_rank": report.family_rank,
                "bivector_rank": report.bivector_rank
            }),
        );
    }
    // adjacent branching exponent vanishes
    {
        let pass = (2..=50).all(|k| {
            branching_exponent(k, k - 1)
                .map(|e| e == 0)
                .unwrap_or(false)
        });
        push(
            "adjacent_branching_exponent_zero",
            pass,
            json!({ "max_n": 50 }),
        );
    }

    let mut map = header("lemma-suite", n, c.seed, &["aggregated"]);
    map.insert("mutated".into(), json!(c.mutate));
    map.insert("checks".into(), Value::Array(checks));
    map.insert("failures".into(), json!(failures));
    Ok((Value::Object(map), failures > 0))
}
