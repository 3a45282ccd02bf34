//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p ck-entropy-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ck_entropy::ck::{af_block_oracle, coeff, rho, run_relation_suite, verify_closed_forms, CkAlgebra, CkElement};
use ck_entropy::matrix::{
    dual_matrix, entropy_estimates, int_spectral_radius, spectral_radius, word_count, IntMatrix, DEFAULT_TOL,
};
use ck_entropy::sft::{enumerate_words, markov_entropy, parry_measure, partition_entropy, DEFAULT_WORD_CAP};
use ck_entropy::{validate, TransitionMatrix};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_irreducible(rng: &mut ChaCha8Rng, n: usize, density: (f64, f64)) -> TransitionMatrix {
    loop {
        let p = rng.gen_range(density.0..density.1);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(p) as i64).collect()).collect();
        if let Ok(a) = validate(&rows) {
            if a.is_irreducible() && !a.is_permutation() {
                return a;
            }
        }
    }
}

fn log_r(a: &TransitionMatrix) -> Result<f64, String> {
    Ok(spectral_radius(a, DEFAULT_TOL).map_err(|e| e.to_string())?.radius.ln())
}

fn parry_h(a: &TransitionMatrix) -> Result<f64, String> {
    Ok(markov_entropy(&parry_measure(a, DEFAULT_TOL).map_err(|e| e.to_string())?))
}

fn cuntz_entropy() -> Check {
    let mut worst: f64 = 0.0;
    for n in 2..=4 {
        let a = TransitionMatrix::full(n);
        let expected = (n as f64).ln();
        let ratio = entropy_estimates(&a, 30).rows[29].ratio;
        for (route, v) in [("spectral", log_r(&a)?), ("parry", parry_h(&a)?), ("ratio", ratio)] {
            let err = (v - expected).abs();
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("N={n} {route}: {v} vs {expected}"))?;
        }
    }
    Ok(format!("N=2..4, max error {worst:.1e} (tol 1e-9)"))
}

fn golden_mean_routes() -> Check {
    let a = TransitionMatrix::golden_mean();
    let expected = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    ensure((expected - 0.481_211_825_1).abs() < 1e-10, || "reference value".into())?;
    let ratio = entropy_estimates(&a, 40).rows[39].ratio;
    let mut worst: f64 = 0.0;
    for (route, v) in [("spectral", log_r(&a)?), ("parry", parry_h(&a)?), ("ratio", ratio)] {
        let err = (v - expected).abs();
        worst = worst.max(err);
        ensure(err <= 1e-8, || format!("{route}: {v}"))?;
    }
    Ok(format!("three routes, max error {worst:.1e} (tol 1e-8)"))
}

fn random_matrix_cross_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut parry_worst, mut ratio_worst): (f64, f64) = (0.0, 0.0);
    let mut misses = Vec::new();
    for case in 0..20 {
        let n = rng.gen_range(2..=8);
        let a = random_irreducible(&mut rng, n, (0.15, 0.6));
        let target = log_r(&a)?;
        let dp = (parry_h(&a)? - target).abs();
        let dr = (entropy_estimates(&a, 200).rows[199].ratio - target).abs();
        parry_worst = parry_worst.max(dp);
        ratio_worst = ratio_worst.max(dr);
        ensure(dp <= 1e-8, || format!("case {case} parry off by {dp:e}\n{a}"))?;
        if dr > 1e-3 {
            let period = a.period().expect("irreducible");
            misses.push(format!("case {case} (n={n}, period {period}) ratio off by {dr:.2e}"));
        }
    }
    ensure(misses.is_empty(), || {
        format!("parry {parry_worst:.1e} ok for all 20; ratio@200 misses 1e-3 on: {}", misses.join("; "))
    })?;
    Ok(format!("20 matrices, parry {parry_worst:.1e} (tol 1e-8), ratio@200 {ratio_worst:.1e} (tol 1e-3)"))
}

// Independent count: depth-first walk over admissible continuations.
fn dfs_count(a: &TransitionMatrix, k: usize) -> u64 {
    fn go(a: &TransitionMatrix, last: usize, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        a.successors(last).map(|j| go(a, j, remaining - 1)).sum()
    }
    (0..a.n()).map(|i| go(a, i, k - 1)).sum()
}

fn word_count_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut mats = vec![
        TransitionMatrix::golden_mean(),
        TransitionMatrix::full(2),
        TransitionMatrix::full(3),
        validate(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap(),
        validate(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap(),
    ];
    for n in 2..=6 {
        for _ in 0..2 {
            mats.push(random_irreducible(&mut rng, n, (0.2, 0.4)));
        }
    }
    let mut checked = 0;
    for a in &mats {
        for k in 1..=12 {
            let w = word_count(a, k as u64);
            ensure(w == BigUint::from(dfs_count(a, k)), || format!("k={k} walk count differs\n{a}"))?;
            if k <= 8 {
                let listed = enumerate_words(a, k, DEFAULT_WORD_CAP).map_err(|e| e.to_string())?;
                ensure(w == BigUint::from(listed.len()), || format!("k={k} listing differs\n{a}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{} matrices (n <= 6), {checked} (A, k) pairs exact", mats.len()))
}

fn dual_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 20 {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect()).collect();
        let Ok(m) = IntMatrix::new(&rows) else { continue };
        if !m.as_support().is_irreducible() {
            continue;
        }
        let d = dual_matrix(&m);
        ensure(d.check(&m), || format!("S T or T S differs for {rows:?}"))?;
        let r = int_spectral_radius(&m, 1e-12).map_err(|e| e.to_string())?;
        let r_dual = spectral_radius(&d.a_prime, DEFAULT_TOL).map_err(|e| e.to_string())?.radius;
        worst = worst.max((r - r_dual).abs());
        ensure((r - r_dual).abs() <= 1e-8, || format!("{rows:?}: r {r} vs r' {r_dual}"))?;
        done += 1;
    }
    Ok(format!("20 integer matrices exact, max |r(A') - r(A)| {worst:.1e} (tol 1e-8)"))
}

fn test_algebras(seed: u64) -> Vec<(String, CkAlgebra)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        ("golden mean".into(), CkAlgebra::new(TransitionMatrix::golden_mean())),
        ("full 2x2".into(), CkAlgebra::new(TransitionMatrix::full(2))),
        ("full 3x3".into(), CkAlgebra::new(TransitionMatrix::full(3))),
        ("random 3x3".into(), CkAlgebra::new(random_irreducible(&mut rng, 3, (0.3, 0.7)))),
    ]
}

fn relation_suite() -> Check {
    let mut total = 0;
    for (name, alg) in test_algebras(17) {
        let report = run_relation_suite(&alg).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || format!("{name}: {:?}", report.failures.first()))?;
        total += report.cases;
    }
    Ok(format!("4 matrices, {total} identities exact"))
}

fn closed_form_verification() -> Check {
    let all = test_algebras(17);
    let runs = [(&all[0], 2, 2), (&all[1], 2, 2), (&all[3], 1, 2)];
    let mut total = 0;
    for ((name, alg), n0, n) in runs {
        let report = verify_closed_forms(alg, n0, n).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || format!("{name} n0={n0} n={n}: {:?}", report.failures.first()))?;
        total += report.cases;
    }
    Ok(format!("{total} (generator, l) cases, all witnesses partial isometries"))
}

fn random_monomial(rng: &mut ChaCha8Rng, alg: &CkAlgebra, max_len: usize) -> CkElement {
    let word = |rng: &mut ChaCha8Rng| {
        let words = alg.words(rng.gen_range(0..=max_len)).unwrap();
        words[rng.gen_range(0..words.len())].clone()
    };
    let (mu, nu) = (word(rng), word(rng));
    alg.monomial(&mu, &nu).unwrap()
}

fn rho_homomorphism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let all = test_algebras(17);
    let mut pairs = 0;
    for (name, alg) in [&all[0], &all[1], &all[3]] {
        for m in 1..=3 {
            let r = rho(alg, m, &alg.identity()).map_err(|e| e.to_string())?;
            for (i, mu) in r.index.iter().enumerate() {
                for j in 0..r.dim() {
                    let expected = if i == j { alg.q(mu.terminus().unwrap()) } else { CkElement::zero() };
                    ensure(alg.equal(r.get(i, j), &expected), || format!("{name}: rho_{m}(1) entry ({i},{j})"))?;
                }
            }
        }
        for p in 0..100 {
            let m = 1 + p % 3;
            let x = random_monomial(&mut rng, alg, 3);
            let y = random_monomial(&mut rng, alg, 3);
            let lhs = rho(alg, m, &alg.multiply(&x, &y)).map_err(|e| e.to_string())?;
            let rx = rho(alg, m, &x).map_err(|e| e.to_string())?;
            let rhs = rx.mul(alg, &rho(alg, m, &y).map_err(|e| e.to_string())?);
            ensure(lhs.equal(alg, &rhs), || format!("{name}: rho_{m}({x} * {y})"))?;
            let star = rho(alg, m, &x.adjoint()).map_err(|e| e.to_string())?;
            ensure(star.equal(alg, &rx.adjoint()), || format!("{name}: rho_{m}(({x})*)"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} monomial pairs over 3 matrices, m <= 3, unit form exact"))
}

fn degree_zero(rng: &mut ChaCha8Rng, alg: &CkAlgebra, depth: usize) -> CkElement {
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let k = rng.gen_range(0..=depth);
            let words = alg.words(k).unwrap();
            let mu = &words[rng.gen_range(0..words.len())];
            let nu = &words[rng.gen_range(0..words.len())];
            alg.monomial(mu, nu).unwrap().scale(&coeff(rng.gen_range(-2..=2)))
        })
        .sum()
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut equal_pairs, mut total) = (0, 0);
    for (name, alg) in test_algebras(17) {
        for p in 0..200 {
            let x = degree_zero(&mut rng, &alg, 3);
            // Every other pair is x against a rewritten copy of itself.
            let y = if p % 2 == 0 {
                let unit: CkElement = (0..alg.n()).map(|j| alg.p(j)).sum();
                alg.multiply(&alg.refine_to_depth(&x, 4).unwrap(), &unit)
            } else {
                degree_zero(&mut rng, &alg, 4)
            };
            let by_normal_form = alg.equal(&x, &y);
            let ox = af_block_oracle(&alg, 4, &x).map_err(|e| e.to_string())?;
            let oy = af_block_oracle(&alg, 4, &y).map_err(|e| e.to_string())?;
            ensure(by_normal_form == (ox == oy), || format!("{name}: {x} vs {y}"))?;
            equal_pairs += by_normal_form as usize;
            total += 1;
        }
    }
    Ok(format!("{total} degree-0 pairs over 4 matrices, depth <= 4, {equal_pairs} equal"))
}

fn partition_increments() -> Check {
    let pd = parry_measure(&TransitionMatrix::golden_mean(), DEFAULT_TOL).map_err(|e| e.to_string())?;
    let h = markov_entropy(&pd);
    let s: Vec<f64> = (1..=11).map(|n| partition_entropy(&pd, n).unwrap()).collect();
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        let err = (s[n] - s[n - 1] - h).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9, || format!("S({}) - S({n}) off by {err:e}", n + 1))?;
    }
    Ok(format!("n = 1..10, max error {worst:.1e} (tol 1e-9)"))
}

fn mutation_sensitivity() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("golden.txt");
    std::fs::write(&path, "1 1\n1 0\n").map_err(|e| e.to_string())?;
    let run = |args: &[&str]| -> Result<Option<i32>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_ckent"))
            .args(args)
            .arg("--matrix")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        Ok(out.status.code())
    };
    let cases: [(&[&str], i32); 4] = [
        (&["verify-ck"], 0),
        (&["verify-ck", "--inject-fault", "relation"], 1),
        (&["verify-lemma2", "--n0", "1", "--n", "1"], 0),
        (&["verify-lemma2", "--n0", "1", "--n", "1", "--inject-fault", "witness"], 1),
    ];
    for (args, expected) in cases {
        let code = run(args)?;
        ensure(code == Some(expected), || format!("{args:?} exited {code:?}, expected {expected}"))?;
    }
    Ok("corrupted relation and witness both exit 1, clean runs exit 0".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Cuntz-case entropy", Duration::from_secs(1), cuntz_entropy),
        ("golden-mean triple agreement", Duration::from_secs(1), golden_mean_routes),
        ("random irreducible cross-check", Duration::from_secs(10), random_matrix_cross_check),
        ("word-count oracle", Duration::from_secs(10), word_count_oracle),
        ("dual-matrix identities", Duration::from_secs(5), dual_identities),
        ("relation suite", Duration::from_secs(10), relation_suite),
        ("closed-form witnesses", Duration::from_secs(60), closed_form_verification),
        ("rho homomorphism and unit", Duration::from_secs(30), rho_homomorphism),
        ("normal form vs block oracle", Duration::from_secs(30), oracle_equivalence),
        ("partition-entropy increments", Duration::from_secs(5), partition_increments),
        ("mutation sensitivity", Duration::from_secs(10), mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > *budget => ("FAIL", format!("over budget of {budget:?}")),
            Ok(summary) => ("PASS", summary),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("AC{:<2} {status} {name} [{:.3}s] {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
