//! Command dispatch and the computations behind each subcommand.

use std::path::Path;

use hopfind::config::{AlgebraConfig, ConfigError, DerivedStep, Family};
use hopfind::cyclotomic::CycNumber;
use hopfind::diagnostics;
use hopfind::hopf::{derived, drinfeld_double, tensor, verify_axioms, Derived, HopfAlgebra};
use hopfind::indicators::{
    exponent_and_qexp, indicator_integral_range, indicator_trace, indicator_trace_range,
    special_values, Exponent, IndicatorError, IndicatorValue, Method, Side,
};
use hopfind::qcomb::{q_function, taft_indicator_closed, uqsl2_indicator_closed, QcombError};
use hopfind::sequences::{
    binomial_periodic_decomposition, e_and_m, phi_and_big_phi, root_of_unity_certificate,
    CycPolynomial, SequenceError,
};
use serde::Serialize;

use crate::output::{emit, render_indicator_records, render_report, IndicatorRecord};
use crate::{
    Command, CommonOut, MethodArg, SequenceArg, EXIT_BOUND, EXIT_IO, EXIT_MATH_FAILURE,
    EXIT_USAGE,
};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn math(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MATH_FAILURE,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<IndicatorError> for CliError {
    fn from(e: IndicatorError) -> Self {
        let code = match e {
            IndicatorError::BoundExceeded(_) | IndicatorError::OrderSearchExceeded(_) => {
                EXIT_BOUND
            }
            _ => EXIT_MATH_FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        let code = match e {
            SequenceError::BoundTooSmall { .. }
            | SequenceError::CertificateBoundExceeded(_)
            | SequenceError::InsufficientTerms { .. } => EXIT_BOUND,
            SequenceError::MissingBound => EXIT_USAGE,
            _ => EXIT_MATH_FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<QcombError> for CliError {
    fn from(e: QcombError) -> Self {
        let code = match e {
            QcombError::BruteForceGuard { .. } => EXIT_BOUND,
            QcombError::VanishingDenominator => EXIT_MATH_FAILURE,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn load_config(path: &Path) -> Result<AlgebraConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| {
        // serde_json reports position as "at line L column C".
        CliError::usage(format!("{}: {e}", path.display()))
    })
}

/// Worker-parallelism cap from the environment; 1 when unset or invalid.
fn worker_cap() -> usize {
    std::env::var("HOPFIND_JOBS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Axioms { config, out } => cmd_axioms(&config, &out),
        Command::Indicator {
            config,
            from,
            to,
            method,
            observations,
            out,
        } => cmd_indicator(&config, from, to, method, observations, &out),
        Command::Minpoly {
            config,
            sequence,
            bound,
            out,
        } => cmd_minpoly(&config, sequence, bound, &out),
        Command::Decompose {
            config,
            e,
            m,
            bound,
            out,
        } => cmd_decompose(&config, e, m, bound, &out),
        Command::Qfunction {
            l,
            a,
            m,
            conductor,
            omega_power,
            out,
        } => cmd_qfunction(l, a, m, conductor, omega_power, &out),
        Command::Crosscheck {
            config,
            identities,
            from,
            to,
            out,
        } => cmd_crosscheck(&config, &identities, from, to, &out),
    }
}

#[derive(Serialize)]
struct AxiomLine {
    name: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct AxiomsReport {
    algebra: AlgebraConfig,
    dim: usize,
    checks: Vec<AxiomLine>,
}

fn cmd_axioms(path: &Path, out: &CommonOut) -> Result<(), CliError> {
    let cfg = load_config(path)?;
    let h = cfg.build()?;
    let report = verify_axioms(&h);
    let lines: Vec<AxiomLine> = report
        .checks
        .iter()
        .map(|c| AxiomLine {
            name: c.name,
            passed: c.passed,
            witness: c.witness.clone(),
        })
        .collect();
    let all_pass = report.is_hopf();
    let mut pretty = format!("algebra: {} (dim {})\n", cfg.describe(), h.dim());
    for l in &lines {
        pretty.push_str(&format!(
            "{:<18} {}{}\n",
            l.name,
            if l.passed { "ok" } else { "FAIL" },
            l.witness
                .as_ref()
                .map(|w| format!(" at {w}"))
                .unwrap_or_default()
        ));
    }
    let report = AxiomsReport {
        algebra: cfg,
        dim: h.dim(),
        checks: lines,
    };
    emit(out, &render_report(&report, pretty, out.format))?;
    if all_pass {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        Err(CliError::math(format!(
            "axiom checks failed: {}",
            failed.join(", ")
        )))
    }
}

/// Closed-form evaluation, available for the unmodified built-in families.
/// Negative levels use the reflection `nu_{-n} = nu_{-1} conj(nu_n)` with
/// `nu_{-1}` read off the eigenvalue of S^2 on an integral, and
/// `nu_0 = Trace(S^2)`.
fn closed_range(
    cfg: &AlgebraConfig,
    h: &HopfAlgebra,
    from: i64,
    to: i64,
) -> Result<Vec<IndicatorValue>, CliError> {
    if !cfg.derived.is_empty() {
        return Err(CliError::usage(
            "the closed method applies only to unmodified built-in families",
        ));
    }
    let closed_positive: Box<dyn Fn(i64) -> Result<CycNumber, CliError>> = match cfg.family {
        Family::Group => {
            let table = cfg.cayley.clone().expect("validated by build");
            let identity = (0..table.len())
                .find(|&e| (0..table.len()).all(|i| table[e][i] == i))
                .expect("validated by build");
            Box::new(move |n: i64| {
                let count = (0..table.len())
                    .filter(|&g| {
                        let mut cur = identity;
                        for _ in 0..n.unsigned_abs() {
                            cur = table[cur][g];
                        }
                        cur == identity
                    })
                    .count();
                Ok(CycNumber::from_integer(count as i64))
            })
        }
        Family::Taft => {
            let n_param = cfg.n.expect("validated by build");
            let omega = CycNumber::root_of_unity(n_param, cfg.omega_power.unwrap_or(1));
            Box::new(move |n: i64| Ok(taft_indicator_closed(n_param, &omega, n)?))
        }
        Family::GrUqsl2 => {
            let n_param = cfg.n.expect("validated by build");
            let q = CycNumber::root_of_unity(n_param, cfg.omega_power.unwrap_or(1));
            Box::new(move |n: i64| Ok(uqsl2_indicator_closed(n_param, &q, n)?))
        }
        Family::Custom => {
            return Err(CliError::usage(
                "the closed method applies only to group, taft and gr_uqsl2 families",
            ))
        }
    };
    let needs_special = from <= 0;
    let special = if needs_special {
        Some(special_values(h)?)
    } else {
        None
    };
    let mut vals = Vec::new();
    for n in from..=to {
        let value = if n >= 1 {
            closed_positive(n)?
        } else if n == 0 {
            special.as_ref().unwrap().nu_0.clone()
        } else {
            let pos = closed_positive(-n)?;
            &special.as_ref().unwrap().nu_minus_1 * &pos.conj()
        };
        vals.push(IndicatorValue::new(n, value, Method::Closed));
    }
    Ok(vals)
}

fn cmd_indicator(
    path: &Path,
    from: i64,
    to: i64,
    method: MethodArg,
    observations: bool,
    out: &CommonOut,
) -> Result<(), CliError> {
    if from > to {
        return Err(CliError::usage("--from must not exceed --to"));
    }
    let cfg = load_config(path)?;
    let h = cfg.build()?;

    let run_trace = || indicator_trace_range(&h, from, to);
    let run_integral = || indicator_integral_range(&h, from, to, Side::Left);
    let closed_available = cfg.derived.is_empty() && cfg.family != Family::Custom;

    let mut batches: Vec<Vec<IndicatorValue>> = Vec::new();
    match method {
        MethodArg::Trace => batches.push(run_trace()),
        MethodArg::Integral => batches.push(run_integral()?),
        MethodArg::Closed => batches.push(closed_range(&cfg, &h, from, to)?),
        MethodArg::All => {
            // The independent evaluators may run in parallel, capped by
            // HOPFIND_JOBS; output order stays deterministic.
            let parallel = worker_cap() >= 2;
            let (trace_vals, integral_vals) = if parallel {
                std::thread::scope(|scope| {
                    let t = scope.spawn(run_trace);
                    let i = scope.spawn(run_integral);
                    (t.join().expect("trace worker"), i.join().expect("integral worker"))
                })
            } else {
                (run_trace(), run_integral())
            };
            let integral_vals = integral_vals?;
            batches.push(trace_vals);
            batches.push(integral_vals);
            if closed_available {
                batches.push(closed_range(&cfg, &h, from, to)?);
            }
            // Cross-method agreement is a hard requirement.
            for i in 0..batches[0].len() {
                let v0 = &batches[0][i];
                for other in &batches[1..] {
                    if other[i].value != v0.value {
                        return Err(CliError::math(format!(
                            "methods disagree at n = {}: {} = {} but {} = {}",
                            v0.n, v0.method, v0.value, other[i].method, other[i].value
                        )));
                    }
                }
            }
        }
    }

    if observations {
        let sv = special_values(&h)?;
        eprintln!(
            "observation: nu_0 = {}, nu_-1 = {}, ord(S^2) = {}",
            sv.nu_0, sv.nu_minus_1, sv.ord_s2
        );
        let upto = to.max(4) as u64;
        let lin = diagnostics::linear_factor_observation(&h, h.conductor().max(1), upto);
        eprintln!(
            "observation: nu_n = f(n) * n with period {} holds on 1..={}: {}",
            lin.period, lin.checked_upto, lin.holds
        );
        let div = diagnostics::divisibility_observation(&h, upto);
        eprintln!(
            "observation: nu_n / gcd(n, dim) integral on 1..={}: {}",
            div.checked_upto, div.all_integral
        );
    }

    // Emit in ascending n, methods grouped per n.
    let mut records = Vec::new();
    for i in 0..batches[0].len() {
        for batch in &batches {
            let v = &batch[i];
            records.push(IndicatorRecord::new(&cfg, v.n, v.method, v.value.clone()));
        }
    }
    emit(out, &render_indicator_records(&records, &cfg, out.format))
}

#[derive(Serialize)]
struct MinpolyReport {
    algebra: AlgebraConfig,
    sequence: &'static str,
    min_poly: CycPolynomial,
    degree: usize,
    e: u64,
    m: usize,
    root_of_unity_certificate: u64,
    verified_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    exp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    qexp: Option<u64>,
}

fn cmd_minpoly(
    path: &Path,
    sequence: SequenceArg,
    bound: Option<usize>,
    out: &CommonOut,
) -> Result<(), CliError> {
    let cfg = load_config(path)?;
    let h = cfg.build()?;
    // verified_terms reports how many sequence terms the recurrence was
    // checked against (the minimal-polynomial routines verify every
    // window of the supplied terms).
    let (seq_name, poly, verified_terms, exp, qexp): (
        &'static str,
        CycPolynomial,
        usize,
        Option<String>,
        Option<u64>,
    ) = match sequence {
        SequenceArg::Nu => {
            let pair = phi_and_big_phi(&h, bound)?;
            ("nu", pair.phi, 2 * pair.bound_used, None, None)
        }
        SequenceArg::P => {
            let pair = phi_and_big_phi(&h, bound)?;
            ("P", pair.big_phi, 2 * pair.bound_used, None, None)
        }
        SequenceArg::T => {
            let r = exponent_and_qexp(&h, bound.map(|b| b as u64))?;
            let exp_str = match r.exp {
                Exponent::Finite(n) => n.to_string(),
                Exponent::Infinite => "infinite".to_string(),
            };
            let terms = 2 * r.min_poly.degree().unwrap_or(0).max(1);
            ("T", r.min_poly, terms, Some(exp_str), Some(r.qexp))
        }
    };
    let cert_bound = ((h.dim() * h.dim()) as u64).max(16);
    let cert = root_of_unity_certificate(&poly, cert_bound)?;
    let em = e_and_m(&poly, cert_bound)?;
    let degree = poly.degree().unwrap_or(0);
    let pretty = {
        let mut s = format!(
            "algebra: {}\nsequence: {}\nmin_poly: {}\ndegree: {}\ne: {}, m: {}\nroot-of-unity certificate: L = {}\nrecurrence verified on {} terms\n",
            cfg.describe(),
            seq_name,
            poly,
            degree,
            em.e,
            em.m,
            cert,
            verified_terms
        );
        if let (Some(e), Some(q)) = (&exp, qexp) {
            s.push_str(&format!("exp: {e}\nqexp: {q}\n"));
        }
        s
    };
    let report = MinpolyReport {
        algebra: cfg,
        sequence: seq_name,
        min_poly: poly,
        degree,
        e: em.e,
        m: em.m,
        root_of_unity_certificate: cert,
        verified_terms,
        exp,
        qexp,
    };
    emit(out, &render_report(&report, pretty, out.format))
}

#[derive(Serialize)]
struct DecomposeReport {
    algebra: AlgebraConfig,
    e: u64,
    m: usize,
    c: Vec<Vec<CycNumber>>,
    verified_terms: usize,
}

fn cmd_decompose(
    path: &Path,
    e: Option<u64>,
    m: Option<usize>,
    bound: Option<usize>,
    out: &CommonOut,
) -> Result<(), CliError> {
    let cfg = load_config(path)?;
    let h = cfg.build()?;
    let (e, m) = match (e, m) {
        (Some(e), Some(m)) => (e, m),
        _ => {
            let pair = phi_and_big_phi(&h, bound)?;
            let em = e_and_m(&pair.phi, ((h.dim() * h.dim()) as u64).max(16))?;
            (em.e, em.m)
        }
    };
    let horizon = 3 * e as usize * m;
    let seq: Vec<CycNumber> = indicator_trace_range(&h, 1, horizon as i64)
        .into_iter()
        .map(|v| v.value)
        .collect();
    let dec = binomial_periodic_decomposition(&seq, e, m)?;
    let mut pretty = format!(
        "algebra: {}\ne: {}, m: {}\nreconstruction verified on {} terms\n",
        cfg.describe(),
        e,
        m,
        horizon
    );
    for (j, row) in dec.c.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        pretty.push_str(&format!("c_{j}: [{}]\n", cells.join(", ")));
    }
    let report = DecomposeReport {
        algebra: cfg,
        e,
        m,
        c: dec.c.clone(),
        verified_terms: horizon,
    };
    emit(out, &render_report(&report, pretty, out.format))
}

#[derive(Serialize)]
struct QfunctionReport {
    l: u64,
    a: u64,
    m: u64,
    conductor: u64,
    omega_power: i64,
    value: CycNumber,
    value_pretty: String,
}

fn cmd_qfunction(
    l: u64,
    a: u64,
    m: u64,
    conductor: u64,
    omega_power: i64,
    out: &CommonOut,
) -> Result<(), CliError> {
    if conductor == 0 {
        return Err(CliError::usage("--conductor must be positive"));
    }
    let omega = CycNumber::root_of_unity(conductor, omega_power);
    let value = q_function(l, a, m, &omega).minimized();
    let pretty = format!("{value}\n");
    let report = QfunctionReport {
        l,
        a,
        m,
        conductor,
        omega_power,
        value_pretty: value.to_string(),
        value,
    };
    emit(out, &render_report(&report, pretty, out.format))
}

#[derive(Serialize)]
struct IdentityResult {
    identity: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct CrosscheckReport {
    algebra: AlgebraConfig,
    from: i64,
    to: i64,
    results: Vec<IdentityResult>,
}

const KNOWN_IDENTITIES: &[&str] = &[
    "dual",
    "tensor",
    "double",
    "op",
    "cop",
    "reflection",
    "integrality",
];

fn cmd_crosscheck(
    path: &Path,
    identities: &[String],
    from: i64,
    to: i64,
    out: &CommonOut,
) -> Result<(), CliError> {
    if from > to {
        return Err(CliError::usage("--from must not exceed --to"));
    }
    let cfg = load_config(path)?;
    for id in identities {
        if !KNOWN_IDENTITIES.contains(&id.as_str()) {
            return Err(CliError::usage(format!(
                "unknown identity `{id}` (expected a subset of {})",
                KNOWN_IDENTITIES.join(",")
            )));
        }
    }
    let ids: Vec<String> = if identities.is_empty() {
        KNOWN_IDENTITIES.iter().map(|s| s.to_string()).collect()
    } else {
        identities.to_vec()
    };
    let h = cfg.build()?;
    let base = indicator_trace_range(&h, from, to);

    let mut results = Vec::new();
    for id in &ids {
        let result = match id.as_str() {
            "dual" => check_pointwise(&base, &derived(&h, Derived::Dual), |v| v.clone(), from, to),
            "op" => check_pointwise(&base, &derived(&h, Derived::Op), CycNumber::conj, from, to),
            "cop" => check_pointwise(&base, &derived(&h, Derived::Cop), CycNumber::conj, from, to),
            "double" => {
                let d = drinfeld_double(&h).map_err(ConfigError::from)?;
                check_pointwise(&base, &d, CycNumber::norm_sq, from, to)
            }
            "tensor" => check_tensor(&cfg, &h, &base, from, to)?,
            "reflection" => check_reflection(&h, to)?,
            "integrality" => check_integrality(&h, &base)?,
            _ => unreachable!("validated above"),
        };
        results.push(IdentityResult {
            identity: id.clone(),
            passed: result.is_none(),
            witness: result,
        });
    }
    let all_pass = results.iter().all(|r| r.passed);
    let mut pretty = format!(
        "algebra: {} (n in [{from}, {to}])\n",
        cfg.describe()
    );
    for r in &results {
        pretty.push_str(&format!(
            "{:<12} {}{}\n",
            r.identity,
            if r.passed { "ok" } else { "FAIL" },
            r.witness
                .as_ref()
                .map(|w| format!(" ({w})"))
                .unwrap_or_default()
        ));
    }
    let report = CrosscheckReport {
        algebra: cfg,
        from,
        to,
        results,
    };
    emit(out, &render_report(&report, pretty, out.format))?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::math("one or more identities failed"))
    }
}

/// Compares `transform(nu_n(H))` against `nu_n(other)` over the range.
fn check_pointwise(
    base: &[IndicatorValue],
    other: &HopfAlgebra,
    transform: impl Fn(&CycNumber) -> CycNumber,
    from: i64,
    to: i64,
) -> Option<String> {
    let other_vals = indicator_trace_range(other, from, to);
    for (b, o) in base.iter().zip(&other_vals) {
        let expected = transform(&b.value);
        if o.value != expected {
            return Some(format!(
                "n = {}: expected {} but the derived algebra gives {}",
                b.n, expected, o.value
            ));
        }
    }
    None
}

/// Multiplicativity: when the config ends in a tensor step, split it and
/// compare against the product of the factors; otherwise check the square
/// law on H (x) H.
fn check_tensor(
    cfg: &AlgebraConfig,
    h: &HopfAlgebra,
    base: &[IndicatorValue],
    from: i64,
    to: i64,
) -> Result<Option<String>, CliError> {
    if let Some(DerivedStep::Tensor(second_cfg)) = cfg.derived.last() {
        let mut left_cfg = cfg.clone();
        left_cfg.derived.pop();
        let left = left_cfg.build()?;
        let right = second_cfg.build()?;
        let lv = indicator_trace_range(&left, from, to);
        let rv = indicator_trace_range(&right, from, to);
        for (i, b) in base.iter().enumerate() {
            let expected = &lv[i].value * &rv[i].value;
            if b.value != expected {
                return Ok(Some(format!(
                    "n = {}: product of factors {} differs from {}",
                    b.n, expected, b.value
                )));
            }
        }
        Ok(None)
    } else {
        let square = tensor(h, h);
        let sv = indicator_trace_range(&square, from, to);
        for (i, b) in base.iter().enumerate() {
            let expected = &b.value * &b.value;
            if sv[i].value != expected {
                return Ok(Some(format!(
                    "n = {}: nu(H (x) H) = {} differs from nu(H)^2 = {}",
                    b.n, sv[i].value, expected
                )));
            }
        }
        Ok(None)
    }
}

fn check_reflection(h: &HopfAlgebra, to: i64) -> Result<Option<String>, CliError> {
    let special = special_values(h)?;
    for n in 1..=to.max(1) {
        let neg = indicator_trace(h, -n).value;
        let pos = indicator_trace(h, n).value;
        let expected = &special.nu_minus_1 * &pos.conj();
        if neg != expected {
            return Ok(Some(format!(
                "n = {n}: nu_(-n) = {neg} but nu_(-1) conj(nu_n) = {expected}"
            )));
        }
    }
    Ok(None)
}

fn check_integrality(
    h: &HopfAlgebra,
    base: &[IndicatorValue],
) -> Result<Option<String>, CliError> {
    let special = special_values(h)?;
    for v in base {
        let m = v.n.unsigned_abs() * special.ord_s2;
        if !v.value.is_cyclotomic_integer_in(m) {
            return Ok(Some(format!(
                "n = {}: {} is not integral over the order-{m} roots",
                v.n, v.value
            )));
        }
    }
    Ok(None)
}
