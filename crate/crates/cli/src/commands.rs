use ck_entropy::ck::{
    run_relation_suite_with, verify_closed_forms_with, CkAlgebra, RelationFault, RelationSuiteConfig,
    VerificationReport, WitnessFault,
};
use ck_entropy::matrix::io::read_matrix_file;
use ck_entropy::matrix::{
    dual_matrix, entropy_estimates, int_spectral_radius, power_iteration, spectral_radius, word_count,
    DEFAULT_MAX_ITERATIONS,
};
use ck_entropy::sft::{enumerate_words, markov_entropy, parry_measure, DEFAULT_WORD_CAP};
use ck_entropy::{validate, IntMatrix, LogBase, TransitionMatrix};
use serde_json::Value;

use crate::output::{int_rows, json_line, num, num_rows, nums, table, Record};
use crate::{Command, Fault, Format, Options};

/// Operational failure; maps to exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    /// A verification found a mathematical mismatch (exit code 1).
    pub mismatch: bool,
}

impl Outcome {
    fn ok(stdout: String, warnings: Vec<String>) -> Self {
        Outcome { stdout, warnings, mismatch: false }
    }
}

pub fn run(command: Command, opts: &Options) -> Result<Outcome, CliError> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(CliError(format!("--tol must be a positive number, got {}", opts.tol)));
    }
    match (command, opts.inject_fault) {
        (Command::VerifyCk, Some(Fault::Witness)) | (Command::VerifyClosedForms, Some(Fault::Relation)) => {
            return Err(CliError("injected fault does not apply to this command".into()));
        }
        (Command::VerifyCk | Command::VerifyClosedForms, _) | (_, None) => {}
        _ => return Err(CliError("fault injection applies only to verify commands".into())),
    }
    match command {
        Command::Validate => cmd_validate(opts),
        Command::Entropy => cmd_entropy(opts),
        Command::Words => cmd_words(opts),
        Command::Parry => cmd_parry(opts),
        Command::Dual => cmd_dual(opts),
        Command::Convergence => cmd_convergence(opts),
        Command::VerifyCk => cmd_verify_ck(opts),
        Command::VerifyClosedForms => cmd_verify_closed_forms(opts),
    }
}

fn raw_matrix(opts: &Options) -> Result<Vec<Vec<i64>>, CliError> {
    let path = opts.matrix.as_ref().ok_or_else(|| CliError("--matrix <path> is required".into()))?;
    Ok(read_matrix_file(path)?)
}

fn load(opts: &Options) -> Result<TransitionMatrix, CliError> {
    Ok(validate(&raw_matrix(opts)?)?)
}

fn hypothesis_warnings(a: &TransitionMatrix) -> Vec<String> {
    let mut out = Vec::new();
    if !a.is_irreducible() {
        out.push("matrix is reducible; hypothesis \"irreducible and not a permutation matrix\" violated".into());
    }
    if a.is_permutation() {
        out.push("matrix is a permutation; hypothesis \"irreducible and not a permutation matrix\" violated".into());
    }
    out
}

fn log_radius(a: &TransitionMatrix, tol: f64) -> Result<f64, CliError> {
    let perron =
        if a.is_irreducible() { spectral_radius(a, tol)? } else { power_iteration(a, tol, DEFAULT_MAX_ITERATIONS)? };
    Ok(perron.radius.ln())
}

fn cmd_validate(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    let mut r = Record::new();
    r.put("n", a.n())
        .put("irreducible", a.is_irreducible())
        .put("permutation", a.is_permutation())
        .put("period", a.period().map_or(Value::Null, Value::from))
        .put("hypotheses_hold", a.is_irreducible_non_permutation())
        .put("rows", int_rows(&a.rows().iter().map(|row| row.iter().map(|&v| v as u8).collect()).collect::<Vec<_>>()));
    Ok(Outcome::ok(r.render(opts.format), hypothesis_warnings(&a)))
}

fn cmd_entropy(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    let base = LogBase::from(opts.base);
    let k = opts.k_max.unwrap_or(30);
    if k == 0 {
        return Err(CliError("--k-max must be at least 1".into()));
    }
    let radius = log_radius(&a, opts.tol)?;
    let parry = if a.is_irreducible() { Some(markov_entropy(&parry_measure(&a, opts.tol)?)) } else { None };
    let estimates = entropy_estimates(&a, k);
    let row = &estimates.rows[k - 1];
    let mut r = Record::new();
    r.put("base", base.to_string())
        .put("log_spectral_radius", num(base.convert(radius)))
        .put("parry_entropy", parry.map_or(Value::Null, |h| num(base.convert(h))))
        .put("ratio_estimate", num(base.convert(row.ratio)))
        .put("eq3_estimate", num(base.convert(row.log_growth)))
        .put("k", k);
    Ok(Outcome::ok(r.render(opts.format), hypothesis_warnings(&a)))
}

fn cmd_words(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    let k = opts.k.ok_or_else(|| CliError("words needs --k <length>".into()))?;
    if k == 0 {
        return Err(CliError("--k must be at least 1".into()));
    }
    let mut r = Record::new();
    r.put("k", k).put("w_k", word_count(&a, k as u64).to_string());
    if opts.list {
        let words = enumerate_words(&a, k, DEFAULT_WORD_CAP)?;
        r.put("words", Value::Array(words.iter().map(|w| Value::String(w.to_string())).collect()));
    }
    Ok(Outcome::ok(r.render(opts.format), Vec::new()))
}

fn cmd_parry(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    let base = LogBase::from(opts.base);
    let pd = parry_measure(&a, opts.tol)?;
    let mut r = Record::new();
    r.put("base", base.to_string())
        .put("lambda", num(pd.lambda))
        .put("entropy", num(base.convert(markov_entropy(&pd))))
        .put("stationary", nums(&pd.stationary))
        .put("stochastic", num_rows(&pd.stochastic));
    Ok(Outcome::ok(r.render(opts.format), hypothesis_warnings(&a)))
}

fn cmd_dual(opts: &Options) -> Result<Outcome, CliError> {
    let m = IntMatrix::new(&raw_matrix(opts)?)?;
    let base = LogBase::from(opts.base);
    let d = dual_matrix(&m);
    let (st, ts) = d.products();
    let a_prime: Vec<Vec<u8>> = d.a_prime.rows().iter().map(|row| row.iter().map(|&v| v as u8).collect()).collect();
    let mut warnings = Vec::new();
    let (radius, dual_radius, entropy) = if m.as_support().is_irreducible() {
        let r = int_spectral_radius(&m, opts.tol)?;
        (num(r), num(spectral_radius(&d.a_prime, opts.tol)?.radius), num(base.convert(r.ln())))
    } else {
        warnings.push("matrix is reducible; spectral radii not computed".to_string());
        (Value::Null, Value::Null, Value::Null)
    };
    let edges: Vec<Value> =
        d.edges.iter().map(|e| Value::String(format!("{}->{}#{}", e.source + 1, e.target + 1, e.copy + 1))).collect();
    let mut r = Record::new();
    r.put("edges", Value::Array(edges))
        .put("a_prime", int_rows(&a_prime))
        .put("s", int_rows(&d.s))
        .put("t", int_rows(&d.t))
        .put("st_equals_a", st == m.rows())
        .put(
            "ts_equals_a_prime",
            ts == a_prime.iter().map(|r| r.iter().map(|&v| v as u64).collect()).collect::<Vec<Vec<u64>>>(),
        )
        .put("radius", radius)
        .put("dual_radius", dual_radius)
        .put("base", base.to_string())
        .put("entropy", entropy);
    Ok(Outcome::ok(r.render(opts.format), warnings))
}

fn cmd_convergence(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    let base = LogBase::from(opts.base);
    let k_max = opts.k_max.unwrap_or(40);
    if k_max < 2 {
        return Err(CliError("--k-max must be at least 2".into()));
    }
    if opts.n0 == 0 {
        return Err(CliError("--n0 must be at least 1".into()));
    }
    let report = entropy_estimates(&a, k_max).with_witness(&a, opts.n0);
    let stdout = match opts.format {
        Format::Json => json_line(&report.to_json(base)),
        Format::Csv => report.to_csv(base),
        Format::Text => {
            let csv = report.to_csv(base);
            let mut lines = csv.lines();
            let header: Vec<&str> = lines.next().expect("header").split(',').collect();
            let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
            let target =
                report.target.map_or("n/a".to_string(), |t| num(base.convert(t)).as_str().unwrap().to_string());
            format!("base {base}, target log r = {target}, n0 = {}\n{}", opts.n0, table(&header, &rows, Format::Text))
        }
    };
    Ok(Outcome::ok(stdout, hypothesis_warnings(&a)))
}

fn verification_outcome(report: VerificationReport, format: Format) -> Outcome {
    if !report.all_passed() {
        return Outcome { stdout: json_line(&report.to_json()), warnings: Vec::new(), mismatch: true };
    }
    let stdout = match format {
        Format::Json => json_line(&report.to_json()),
        _ => {
            let mut r = Record::new();
            r.put("cases", report.cases).put("passed", report.passed);
            for (k, v) in &report.params {
                r.put(k, *v);
            }
            r.put("result", "all cases passed");
            r.render(format)
        }
    };
    Outcome::ok(stdout, Vec::new())
}

fn cmd_verify_ck(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    let alg = CkAlgebra::new(a);
    let fault = opts.inject_fault.map(|_| RelationFault::PartitionOfUnity);
    let report = run_relation_suite_with(&alg, RelationSuiteConfig::for_alphabet(alg.n()), fault)?;
    Ok(verification_outcome(report, opts.format))
}

fn cmd_verify_closed_forms(opts: &Options) -> Result<Outcome, CliError> {
    let a = load(opts)?;
    if opts.n0 == 0 || opts.n == 0 {
        return Err(CliError("--n0 and --n must be at least 1".into()));
    }
    let m = opts.n0 + opts.n;
    let dim = word_count(&a, m as u64);
    if dim > DEFAULT_WORD_CAP.into() {
        return Err(CliError(format!("w({m}) = {dim} exceeds the cap of {DEFAULT_WORD_CAP} words")));
    }
    let alg = CkAlgebra::new(a);
    let fault = opts.inject_fault.map(|_| WitnessFault::DropUnit);
    let report = verify_closed_forms_with(&alg, opts.n0, opts.n, fault)?;
    Ok(verification_outcome(report, opts.format))
}
