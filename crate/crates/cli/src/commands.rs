use std::fmt::Write as _;

use qhs_core::braided::{check_central, check_coinvariant, phi_tau2_identity, rea_presentation, trace_power};
use qhs_core::classical::classical_oracle;
use qhs_core::freealg::{commutative_count, AlgebraPresentation, NcPolynomial};
use qhs_core::podles::{parameter_invariance_check, sphere_quotient};
use qhs_core::quantum_matrices::{frt_presentation, quantum_determinant, tau_at_xi, XiSpec};
use qhs_core::quantum_sl::{sl_presentation, sl_presentation_to, verify_hopf, ReaCoaction, SL_COMPLETION_CAP};
use qhs_core::quotients::{nilcone, orbit_quotient_n2, quotient_tables, CentralQuotient, QuotientTables};
use qhs_core::re_characters::{constant_matrix, is_re_solution, parse_candidate, residuals_json, scan_family};
use qhs_core::report::{all_passed, reports_json, IdentityReport};
use qhs_core::rmatrix::{check_braid, check_hecke, IdentityCheck};
use qhs_core::scalars::RationalScalar;
use qhs_core::Error;
use serde_json::{json, Value};

use crate::{AlgebraKind, CheckKind, Command, Common, QuotientKind};

pub enum CliError {
    /// Bad flags or input: exit code 2.
    Usage(String),
    /// The computation itself failed: exit code 1.
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidScalar(_) | Error::InvalidParameter(_) | Error::Parse { .. } | Error::InvalidXi(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

#[derive(PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

fn format(c: &Common) -> Format {
    if c.json {
        Format::Json
    } else if c.csv {
        Format::Csv
    } else {
        Format::Text
    }
}

fn no_csv(c: &Common) -> CliResult<()> {
    if c.csv {
        return Err(CliError::Usage("--csv is only available for hilbert and weights".into()));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

fn scalar(s: &str, flag: &str) -> CliResult<RationalScalar> {
    s.parse().map_err(|e: Error| CliError::Usage(format!("{flag}: {e}")))
}

fn algebra(c: &Common) -> CliResult<AlgebraPresentation> {
    Ok(match c.algebra {
        AlgebraKind::Frt => frt_presentation(c.n)?,
        AlgebraKind::Sl => sl_presentation_to(c.n, c.max_deg.max(SL_COMPLETION_CAP))?.algebra,
        AlgebraKind::Rea => rea_presentation(c.n)?.algebra,
    })
}

fn algebra_name(k: AlgebraKind) -> &'static str {
    match k {
        AlgebraKind::Frt => "frt",
        AlgebraKind::Sl => "sl",
        AlgebraKind::Rea => "rea",
    }
}

fn xi(c: &Common) -> CliResult<XiSpec> {
    let text = c.xi.as_deref().ok_or_else(|| CliError::Usage("--xi is required".into()))?;
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--xi: {e}")))?;
    Ok(XiSpec::from_json(&v)?)
}

fn quotient(c: &Common) -> CliResult<Option<CentralQuotient>> {
    let Some(kind) = c.quotient else {
        return Ok(None);
    };
    let rea = rea_presentation(c.n)?;
    Ok(Some(match kind {
        QuotientKind::Nilcone => nilcone(&rea)?,
        QuotientKind::Orbit => orbit_quotient_n2(&rea, &xi(c)?)?,
    }))
}

fn tables(c: &Common, qt: &CentralQuotient) -> CliResult<QuotientTables> {
    if c.q_at_one {
        Ok(classical_oracle(qt, c.max_deg)?)
    } else {
        Ok(quotient_tables(qt, c.max_deg))
    }
}

/// Parses an expression and checks that its letters belong to `a`.
fn parse_in(expr: &str, a: &AlgebraPresentation) -> CliResult<NcPolynomial> {
    let p: NcPolynomial = expr.parse()?;
    if let Some(g) = p.letters().find(|g| !a.generators().contains(g)) {
        return Err(CliError::Usage(format!("generator {g} does not belong to this algebra")));
    }
    Ok(p)
}

pub fn run(cmd: Command) -> CliResult<Output> {
    match cmd {
        Command::Relations(c) => relations(&c),
        Command::Nf { common, expr } => normal_form(&common, &expr),
        Command::Hilbert(c) => hilbert(&c),
        Command::Weights(c) => weights(&c),
        Command::Check { common, what, element } => check(&common, what, element.as_deref()),
        Command::ReCheck(c) => re_check(&c),
        Command::Podles(c) => podles(&c),
        Command::Tau(c) => tau(&c),
    }
}

fn relations(c: &Common) -> CliResult<Output> {
    no_csv(c)?;
    let a = algebra(c)?;
    let rules = a.rules();
    let text = if format(c) == Format::Json {
        pretty(&json!({
            "algebra": algebra_name(c.algebra),
            "n": c.n,
            "order": a.order().precedence().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "rules": rules.iter().map(|r| json!({
                "lhs": r.lhs.to_string(),
                "rhs": r.rhs.to_string(),
                "relation": r.relation().to_json(),
            })).collect::<Vec<_>>(),
        }))
    } else {
        rules.iter().map(|r| format!("{r}\n")).collect()
    };
    Ok(Output::ok(text))
}

fn normal_form(c: &Common, expr: &str) -> CliResult<Output> {
    no_csv(c)?;
    let a = algebra(c)?;
    let nf = a.normal_form(&parse_in(expr, &a)?);
    let text = if format(c) == Format::Json {
        pretty(&json!({ "input": expr, "normal_form": nf.to_string(), "terms": nf.to_json() }))
    } else {
        format!("{nf}\n")
    };
    Ok(Output::ok(text))
}

fn hilbert(c: &Common) -> CliResult<Output> {
    let (dims, label) = match quotient(c)? {
        Some(qt) => (tables(c, &qt)?.hilbert, "quotient"),
        None => {
            let dims = if c.q_at_one {
                (0..=c.max_deg).map(|d| commutative_count(c.n * c.n, d)).collect()
            } else {
                let a = algebra(c)?;
                (0..=c.max_deg).map(|d| a.irreducible_word_count(d)).collect()
            };
            (qhs_core::quotients::HilbertTable { dims }, "algebra")
        }
    };
    let text = match format(c) {
        Format::Csv => dims.to_csv(),
        Format::Json => {
            let mut v = dims.to_json();
            v["source"] = json!(label);
            v["path"] = json!(if c.q_at_one { "classical" } else { "quantum" });
            pretty(&v)
        }
        Format::Text => format!(
            "{}\n",
            dims.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
        ),
    };
    Ok(Output::ok(text))
}

fn weights(c: &Common) -> CliResult<Output> {
    let qt = quotient(c)?.ok_or_else(|| CliError::Usage("weights needs --quotient".into()))?;
    let t = tables(c, &qt)?;
    let text = match format(c) {
        Format::Csv => {
            let mut s = String::from("degree,weight,mult\n");
            for (d, table) in t.weights.iter().enumerate() {
                for (w, m) in table.mult.iter().rev() {
                    let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "{d},\"({})\",{m}", ws.join(","));
                }
            }
            s
        }
        Format::Json => pretty(&Value::Array(
            t.weights
                .iter()
                .enumerate()
                .map(|(d, table)| json!({ "degree": d, "weights": table.to_json() }))
                .collect(),
        )),
        Format::Text => {
            let mut s = String::new();
            for (d, table) in t.weights.iter().enumerate() {
                let parts: Vec<String> = table.mult.iter().rev().map(|(w, m)| format!("{w:?}:{m}")).collect();
                let _ = writeln!(s, "{d}: {}", parts.join(" "));
            }
            s
        }
    };
    Ok(Output::ok(text))
}

/// A check result rendered as text or JSON.
struct Verdict {
    passed: bool,
    json: Value,
    lines: Vec<String>,
}

impl Verdict {
    fn from_reports(reports: &[IdentityReport]) -> Self {
        Self {
            passed: all_passed(reports),
            json: reports_json(reports),
            lines: reports
                .iter()
                .map(|r| {
                    if r.passed {
                        format!("pass  {}", r.identity)
                    } else {
                        format!("FAIL  {}: residual {}", r.identity, r.residual)
                    }
                })
                .collect(),
        }
    }

    fn from_identity(name: &str, check: &IdentityCheck) -> Self {
        let status = if check.holds { "pass" } else { "FAIL" };
        Self {
            passed: check.holds,
            json: json!([{
                "identity": name,
                "status": if check.holds { "pass" } else { "fail" },
                "residual": check.residual.to_json(),
            }]),
            lines: vec![format!("{status}  {name}")],
        }
    }
}

fn check(c: &Common, what: CheckKind, element: Option<&str>) -> CliResult<Output> {
    no_csv(c)?;
    let v = match what {
        CheckKind::Hecke => Verdict::from_identity("(R_hat - q)(R_hat + q^-1) = 0", &check_hecke(c.n)?),
        CheckKind::Braid => Verdict::from_identity("R_hat_12 R_hat_23 R_hat_12 = R_hat_23 R_hat_12 R_hat_23", &check_braid(c.n)?),
        CheckKind::Hopf => Verdict::from_reports(&verify_hopf(&sl_presentation(c.n)?)),
        CheckKind::Central => {
            let a = algebra(c)?;
            let elements: Vec<(String, NcPolynomial)> = match element {
                Some(e) => vec![(e.to_string(), parse_in(e, &a)?)],
                None => default_central_elements(c, &a)?,
            };
            let reports: Vec<IdentityReport> = elements
                .iter()
                .flat_map(|(name, p)| {
                    check_central(p, &a)
                        .residuals
                        .into_iter()
                        .map(move |(g, r)| IdentityReport::from_polynomial(format!("[{name}, {g}] = 0"), &r))
                })
                .collect();
            Verdict::from_reports(&reports)
        }
        CheckKind::Coinvariant => {
            let rea = rea_presentation(c.n)?;
            // Each l-letter maps to t-words of degree n.
            let sl = sl_presentation_to(c.n, (c.n * c.n).max(SL_COMPLETION_CAP))?;
            let beta = ReaCoaction::new(&rea.algebra, &sl.algebra);
            let reports: Vec<IdentityReport> = (1..=c.n)
                .map(|k| {
                    let p = trace_power(k, &rea.algebra)?;
                    let (_, residual) = check_coinvariant(&p, &beta);
                    Ok(IdentityReport::from_tensor(format!("beta(Tr_q(L^{k})) = Tr_q(L^{k}) (x) 1"), &residual))
                })
                .collect::<CliResult<_>>()?;
            Verdict::from_reports(&reports)
        }
        CheckKind::Confluence => {
            let a = algebra(c)?;
            let ok = a.is_confluent_up_to(c.max_deg);
            let name = format!("{} (n = {}) is confluent up to degree {}", algebra_name(c.algebra), c.n, c.max_deg);
            Verdict {
                passed: ok,
                json: json!([{ "identity": name, "status": if ok { "pass" } else { "fail" } }]),
                lines: vec![format!("{}  {name}", if ok { "pass" } else { "FAIL" })],
            }
        }
        CheckKind::Flat => {
            let qt = quotient(c)?.ok_or_else(|| CliError::Usage("check flat needs --quotient".into()))?;
            let quantum = quotient_tables(&qt, c.max_deg);
            let classical = classical_oracle(&qt, c.max_deg)?;
            let ok = quantum.hilbert == classical.hilbert && quantum.weights == classical.weights;
            Verdict {
                passed: ok,
                json: json!([{
                    "identity": "quantum tables = classical tables",
                    "status": if ok { "pass" } else { "fail" },
                    "quantum": quantum.hilbert.dims,
                    "classical": classical.hilbert.dims,
                }]),
                lines: vec![format!(
                    "{}  quantum {:?} vs classical {:?}",
                    if ok { "pass" } else { "FAIL" },
                    quantum.hilbert.dims,
                    classical.hilbert.dims
                )],
            }
        }
        CheckKind::PhiTau2 => {
            let rea = rea_presentation(2)?;
            let c1 = scalar(&c.t, "--t")?;
            let c2 = scalar(c.d.as_deref().unwrap_or("0"), "--d")?;
            Verdict::from_reports(&phi_tau2_identity(&rea.algebra, &c1, &c2, c.max_deg)?)
        }
        CheckKind::Podles => {
            let mut pairs: Vec<(RationalScalar, RationalScalar)> = ["0,0", "1,0", "0,1", "2,3", "-1,q"]
                .iter()
                .map(|s| {
                    let (t, d) = s.split_once(',').expect("literal pair");
                    (t.parse().expect("literal"), d.parse().expect("literal"))
                })
                .collect();
            pairs.push((scalar(&c.t, "--t")?, scalar(c.d.as_deref().unwrap_or("0"), "--d")?));
            let report = parameter_invariance_check(&pairs)?;
            let ok = report.passed();
            let mut lines = vec![format!(
                "{}  sphere relations depend on (t, d) only through (alpha, beta)",
                if ok { "pass" } else { "FAIL" }
            )];
            lines.extend(report.mismatches.iter().cloned());
            Verdict { passed: ok, json: report.to_json(), lines }
        }
    };
    let text = if format(c) == Format::Json {
        pretty(&json!({ "status": if v.passed { "pass" } else { "fail" }, "checks": v.json }))
    } else {
        v.lines.iter().map(|l| format!("{l}\n")).collect()
    };
    Ok(Output { text, passed: v.passed })
}

fn default_central_elements(c: &Common, a: &AlgebraPresentation) -> CliResult<Vec<(String, NcPolynomial)>> {
    Ok(match c.algebra {
        AlgebraKind::Rea => (1..=c.n)
            .map(|k| Ok((format!("Tr_q(L^{k})"), trace_power(k, a)?)))
            .collect::<CliResult<_>>()?,
        AlgebraKind::Frt => vec![("det_q".to_string(), quantum_determinant(qhs_core::freealg::Family::X, c.n))],
        AlgebraKind::Sl => vec![("det_q".to_string(), quantum_determinant(qhs_core::freealg::Family::T, c.n))],
    })
}

fn re_check(c: &Common) -> CliResult<Output> {
    no_csv(c)?;
    let text = c.matrix.as_deref().ok_or_else(|| CliError::Usage("--matrix is required".into()))?;
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--matrix: {e}")))?;
    let b = parse_candidate(&v)?;
    if b.size() != c.n {
        return Err(CliError::Usage(format!("--matrix is {0}x{0} but --n is {1}", b.size(), c.n)));
    }
    let (solution, residuals, parameters) = match constant_matrix(&b) {
        Some(m) => {
            let check = is_re_solution(&m);
            (check.solution, check.residual.to_json(), Vec::new())
        }
        None => {
            let res = scan_family(&b);
            let mut params: Vec<String> = b.entries().iter().flat_map(|e| e.variables()).collect();
            params.sort();
            params.dedup();
            (res.is_empty(), residuals_json(&res), params)
        }
    };
    let out = if format(c) == Format::Json {
        let mut v = json!({ "solution": solution, "residuals": residuals });
        if !parameters.is_empty() {
            v["parameters"] = json!(parameters);
        }
        pretty(&v)
    } else {
        let mut s = format!("solution: {solution}\n");
        for r in residuals.as_array().into_iter().flatten() {
            let _ = writeln!(s, "({},{}),({},{}): {}", r["i"], r["s"], r["j"], r["t"], r["value"].as_str().unwrap_or(""));
        }
        s
    };
    Ok(Output { text: out, passed: solution })
}

fn podles(c: &Common) -> CliResult<Output> {
    no_csv(c)?;
    let t = scalar(&c.t, "--t")?;
    let d = scalar(c.d.as_deref().unwrap_or("0"), "--d")?;
    let s = sphere_quotient(&t, &d)?;
    let text = if format(c) == Format::Json {
        pretty(&s.to_json())
    } else {
        let v = s.to_json();
        let mut out = format!("alpha = {}\nbeta = {}\n", v["alpha"].as_str().unwrap_or(""), v["beta"].as_str().unwrap_or(""));
        for r in v["relations"].as_array().into_iter().flatten() {
            let _ = writeln!(out, "{}", r.as_str().unwrap_or(""));
        }
        out
    };
    Ok(Output::ok(text))
}

fn tau(c: &Common) -> CliResult<Output> {
    no_csv(c)?;
    let xi = xi(c)?;
    let degrees: Vec<usize> = match c.d.as_deref() {
        Some(d) => vec![d.parse().map_err(|_| CliError::Usage(format!("--d: expected a coinvariant index, got '{d}'")))?],
        None => (1..=xi.n).collect(),
    };
    let values = degrees
        .iter()
        .map(|&d| Ok((d, tau_at_xi(d, &xi)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let text = if format(c) == Format::Json {
        pretty(&json!({
            "xi": xi.to_json(),
            "tau": values.iter().map(|(d, v)| json!({ "d": d, "value": v.to_string() })).collect::<Vec<_>>(),
        }))
    } else {
        values.iter().map(|(d, v)| format!("tau_{d} = {v}\n")).collect()
    };
    Ok(Output::ok(text))
}
