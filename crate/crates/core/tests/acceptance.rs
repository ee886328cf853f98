//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use picode::codegen::{build_gnu, build_theta_family, logical_overlap, PICode};
use picode::combinatorics::{enumerate_compositions, orbit_min_distance, WeightVector};
use picode::exactnum::{rational, sqrt_of_rational, RadicalSum, Rational};
use picode::klverify::{
    certify_distance, kl_certify, kl_certify_with_threads, matrix_unit_classes, polynomiality_check, Distance,
    MatrixUnitClass,
};
use picode::oracle::tolerances::{DEGRADED_FIDELITY_GAP, FIDELITY_TOL, RECOVERY_COMPLETENESS_TOL};
use picode::oracle::{
    crosscheck_matrix_elements, random_logical_state, random_weight_t_channel, recovery_channel, run_oracle,
    OracleConfig,
};
use picode::polyid::{
    check_moment_identities, check_root_identities, make_type_a_f, repunit, PartitionPolynomialTuple,
    RationalPolynomial,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_picode"));
    c.env_remove("PICODE_THREADS");
    c
}

fn run_bin(args: &[&str], threads: Option<&str>) -> Result<std::process::Output, String> {
    let mut c = bin();
    c.args(args);
    if let Some(t) = threads {
        c.env("PICODE_THREADS", t);
    }
    c.output().map_err(|e| e.to_string())
}

fn built_examples(dir: &Path) -> Result<Vec<PICode>, String> {
    let out = run_bin(&["examples", "--dir", dir.to_str().unwrap()], None)?;
    ensure(out.status.success(), || "examples failed".into())?;
    (1..=6)
        .map(|k| {
            let spec = dir.join(format!("example{k}.json"));
            let out = run_bin(&["build", spec.to_str().unwrap()], None)?;
            ensure(out.status.success(), || format!("build example{k} failed"))?;
            PICode::from_json(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())
        })
        .collect()
}

fn library_examples() -> Vec<PICode> {
    picode::cli::example_specs()
        .into_iter()
        .map(|(_, s)| s.build().expect("fixture builds"))
        .collect()
}

/// `(letters, k)` stands for `√k / denom · |D_letters⟩`.
fn ket(terms: &[(&[usize], i64)], denom: i64) -> BTreeMap<WeightVector, RadicalSum> {
    terms
        .iter()
        .map(|(n, k)| {
            (
                WeightVector::new(n.to_vec()).unwrap(),
                sqrt_of_rational(&rational(*k, denom * denom)).unwrap(),
            )
        })
        .collect()
}

fn compare(name: &str, code: &PICode, expected: &[BTreeMap<WeightVector, RadicalSum>]) -> Result<(), String> {
    ensure(code.d() == expected.len(), || format!("{name}: d = {}", code.d()))?;
    for (k, e) in expected.iter().enumerate() {
        ensure(&code.logical[k].as_map() == e, || format!("{name}: logical {k} differs"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let codes = built_examples(dir.path())?;
    let elapsed = start.elapsed();

    // √10 denominators are written as √k/√10 = √(k/10)
    let tenth = |terms: &[(&[usize], i64)]| -> BTreeMap<WeightVector, RadicalSum> {
        terms
            .iter()
            .map(|(n, k)| {
                (
                    WeightVector::new(n.to_vec()).unwrap(),
                    sqrt_of_rational(&rational(*k, 10)).unwrap(),
                )
            })
            .collect()
    };
    compare(
        "example 1",
        &codes[0],
        &[
            tenth(&[(&[15, 4], 4), (&[6, 13], 5), (&[0, 19], 1)]),
            tenth(&[(&[18, 1], 1), (&[12, 7], 5), (&[3, 16], 4)]),
        ],
    )?;
    compare(
        "example 2",
        &codes[1],
        &[
            tenth(&[(&[105, 3, 0], 4), (&[60, 48, 0], 5), (&[0, 108, 0], 1)]),
            tenth(&[(&[108, 0, 0], 1), (&[96, 12, 0], 5), (&[33, 75, 0], 4)]),
        ],
    )?;
    // d = 2 instance of the general residue-class family
    compare(
        "example 3",
        &codes[2],
        &[ket(&[(&[0, 9], 1), (&[6, 3], 3)], 2), ket(&[(&[3, 6], 3), (&[9, 0], 1)], 2)],
    )?;
    // printed with the two letters swapped
    compare(
        "example 4",
        &codes[3].reversed_letters(),
        &[
            ket(&[(&[18, 0], 1), (&[9, 9], 7), (&[0, 18], 1)], 3),
            ket(&[(&[15, 3], 3), (&[6, 12], 6)], 3),
            ket(&[(&[12, 6], 6), (&[3, 15], 3)], 3),
        ],
    )?;
    compare(
        "example 5",
        &codes[4].reversed_letters(),
        &[
            ket(&[(&[27, 0], 1), (&[15, 12], 12), (&[3, 24], 3)], 4),
            ket(&[(&[24, 3], 3), (&[12, 15], 12), (&[0, 27], 1)], 4),
            ket(&[(&[21, 6], 6), (&[9, 18], 10)], 4),
            ket(&[(&[18, 9], 10), (&[6, 21], 6)], 4),
        ],
    )?;
    compare(
        "example 6",
        &codes[5].reversed_letters(),
        &[
            ket(&[(&[36, 0], 1), (&[21, 15], 18), (&[6, 30], 6)], 5),
            ket(&[(&[33, 3], 3), (&[18, 18], 19), (&[3, 33], 3)], 5),
            ket(&[(&[30, 6], 6), (&[15, 21], 18), (&[0, 36], 1)], 5),
            ket(&[(&[27, 9], 10), (&[12, 24], 15)], 5),
            ket(&[(&[24, 12], 15), (&[9, 27], 10)], 5),
        ],
    )?;
    ensure(elapsed < Duration::from_secs(1), || format!("examples + build took {elapsed:?}"))?;
    Ok(format!("6 codes exact, examples + build {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut times = Vec::new();
    for (k, code) in library_examples().iter().enumerate() {
        let start = Instant::now();
        let cert = kl_certify(code, 1).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(cert.ok, || format!("example {} not certified: {:?}", k + 1, cert.violations.first()))?;
        ensure(cert.w == 2, || format!("example {} certified at w = {}", k + 1, cert.w))?;
        times.push(elapsed);
    }
    ensure(times[1] < Duration::from_secs(60), || format!("example 2 took {:?}", times[1]))?;
    Ok(format!("6/6 certified at t = 1, N = 108 qutrit code in {:.2?}", times[1]))
}

fn criterion_3() -> Outcome {
    let gnu = build_gnu(3, 3, 9, 1).map_err(|e| e.to_string())?;
    let cert = kl_certify(&gnu, 1).map_err(|e| e.to_string())?;
    ensure(cert.ok, || "gnu(3,3,9) not certified".into())?;
    let dist = certify_distance(&gnu, 3).map_err(|e| e.to_string())?;
    ensure(matches!(dist.distance, Distance::Exact(_)), || format!("gnu distance {:?}", dist.distance))?;
    let ex1 = &library_examples()[0];
    let d1 = certify_distance(ex1, 3).map_err(|e| e.to_string())?;
    let at_least_three = match d1.distance {
        Distance::Exact(w) => w >= 3,
        Distance::GreaterThan(w) => w >= 2,
    };
    ensure(at_least_three, || format!("example 1 distance {:?}", d1.distance))?;
    Ok(format!("gnu(3,3,9) certified, distance {:?}; example 1 distance {:?}", dist.distance, d1.distance))
}

fn random_poly(rng: &mut ChaCha8Rng, nonnegative: bool) -> RationalPolynomial {
    loop {
        let deg = rng.gen_range(0..=4);
        let c: Vec<i64> = (0..=deg)
            .map(|_| if nonnegative { rng.gen_range(0..=9) } else { rng.gen_range(-9..=9) })
            .collect();
        let g = RationalPolynomial::from_integers(&c);
        if !g.is_zero() {
            return g;
        }
    }
}

fn monomial(a: i64, k: usize) -> RationalPolynomial {
    let mut c = vec![0; k + 1];
    c[k] = a;
    RationalPolynomial::from_integers(&c)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let g = random_poly(&mut rng, false);
        let m = rng.gen_range(1..=7u32);
        let f = make_type_a_f(&g, m);
        ensure(check_moment_identities(&f, m as usize).pass, || format!("moment instance {i}: g = {g}, m = {m}"))?;

        let g = random_poly(&mut rng, true);
        let d = rng.gen_range(2..=5usize);
        let m = rng.gen_range(1..=5u32);
        let f = &repunit(d).pow(m) * &g;
        ensure(check_root_identities(&f, d, m as usize).pass, || {
            format!("root instance {i}: g = {g}, d = {d}, m = {m}")
        })?;
    }
    let mut rejected = 0;
    for i in 0..10 {
        let m = rng.gen_range(1..=7u32);
        let a = *[-3i64, -1, 1, 2, 5].get(i % 5).unwrap();
        let f = &RationalPolynomial::x_minus_one().pow(m - 1) * &monomial(a, rng.gen_range(0..=3));
        ensure(!check_moment_identities(&f, m as usize).pass, || format!("moment negative {f} accepted"))?;
        rejected += 1;

        let d = rng.gen_range(2..=5usize);
        let m = rng.gen_range(1..=5u32);
        let f = &repunit(d).pow(m - 1) * &monomial(a.abs(), rng.gen_range(0..=3));
        ensure(!check_root_identities(&f, d, m as usize).pass, || format!("root negative {f} (d = {d}) accepted"))?;
        rejected += 1;
    }

    let fifth = RationalPolynomial::x_minus_one().pow(5);
    ensure(fifth == RationalPolynomial::from_integers(&[-1, 5, -10, 10, -5, 1]), || {
        format!("(x-1)^5 = {fifth}")
    })?;
    let sixth = make_type_a_f(&RationalPolynomial::from_integers(&[1, 1]), 5);
    ensure(sixth == RationalPolynomial::from_integers(&[-1, 4, -5, 0, 5, -4, 1]), || {
        format!("(1+x)(x-1)^5 = {sixth}")
    })?;
    for f in [&fifth, &sixth] {
        let r = check_moment_identities(f, 5);
        ensure(r.pass && r.sums.len() == 5, || format!("worked example {f}: {:?}", r.sums))?;
    }
    Ok(format!("200 positive instances pass, {rejected} negatives rejected, worked examples exact"))
}

fn criterion_5() -> Outcome {
    let mut tuples = 0;
    let mut worst: f64 = 0.0;
    let mut seed = 0;
    for q in 2..=3 {
        for total in 2..=8 {
            for w in 1..=2 {
                let r = crosscheck_matrix_elements(q, total, w, 20, seed).map_err(|e| e.to_string())?;
                seed += 1;
                tuples += r.trials;
                worst = worst.max(r.max_abs_delta);
            }
        }
    }
    ensure(tuples >= 500, || format!("only {tuples} tuples"))?;
    ensure(worst <= 1e-9, || format!("max |delta| = {worst:e}"))?;

    let mut pairs = 0;
    for q in 2..=3 {
        for total in 1..=8 {
            let strings = all_strings(q, total);
            for n in enumerate_compositions(total, q) {
                let s = representative(&n);
                let mut best: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
                for (u, string) in &strings {
                    let h = s.iter().zip(string).filter(|(x, y)| x != y).count();
                    let e = best.entry(u.clone()).or_insert(usize::MAX);
                    *e = (*e).min(h);
                }
                for (u, h) in best {
                    let u = WeightVector::new(u).unwrap();
                    let closed = orbit_min_distance(&n, &u).map_err(|e| e.to_string())?;
                    ensure(closed == h, || format!("orbit distance {n} vs {u}: {closed} != {h}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{tuples} tuples, max |delta| {worst:.1e}; {pairs} orbit pairs match brute force"))
}

fn representative(n: &WeightVector) -> Vec<usize> {
    n.parts()
        .iter()
        .enumerate()
        .flat_map(|(letter, &count)| std::iter::repeat(letter).take(count))
        .collect()
}

fn all_strings(q: usize, total: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let count = q.pow(total as u32);
    (0..count)
        .map(|mut x| {
            let mut s = vec![0; total];
            for slot in s.iter_mut().rev() {
                *slot = x % q;
                x /= q;
            }
            let mut parts = vec![0; q];
            for &c in &s {
                parts[c] += 1;
            }
            (parts, s)
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let gnu = build_gnu(3, 3, 9, 1).map_err(|e| e.to_string())?;
    let cfg = OracleConfig {
        seed: 0,
        channels: 5,
        states: 20,
        kraus: 4,
    };
    let report = run_oracle(&gnu, &cfg).map_err(|e| e.to_string())?;
    let intact = report.min_fidelity();
    ensure(report.fidelity_table.len() == 5 && report.fidelity_table.iter().all(|r| r.states == 20), || {
        "fidelity table shape".into()
    })?;
    ensure(intact >= 1.0 - FIDELITY_TOL, || format!("intact gnu worst fidelity {intact}"))?;

    // negative control: one amplitude moved by 1/100, every site, same channels
    let mut degraded = f64::INFINITY;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..gnu.d() {
        for term in 0..gnu.logical[k].terms.len() {
            let bad = gnu.perturb_amplitude(k, term, &rational(1, 100)).expect("site exists");
            for seed in 0..5 {
                let ch = random_weight_t_channel(2, 9, 1, 4, seed);
                let rec = recovery_channel(&bad, &ch).map_err(|e| e.to_string())?;
                ensure(rec.completeness_residual < RECOVERY_COMPLETENESS_TOL, || "recovery not complete".into())?;
                for _ in 0..20 {
                    degraded = degraded.min(rec.fidelity(&random_logical_state(2, &mut rng)));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    ensure(degraded < 1.0 - DEGRADED_FIDELITY_GAP, || {
        format!(
            "intact worst 1-F = {:.1e} ok, but corrupted-code worst 1-F = {:.1e} does not reach {:.0e}",
            1.0 - intact,
            1.0 - degraded,
            DEGRADED_FIDELITY_GAP
        )
    })?;
    Ok(format!("intact worst 1-F {:.1e}, corrupted worst 1-F {:.1e}, {elapsed:.2?}", 1.0 - intact, 1.0 - degraded))
}

fn criterion_7() -> Outcome {
    let p = [
        RationalPolynomial::from_integers(&[0, 3]),
        RationalPolynomial::from_integers(&[12, -3]),
    ];
    let one = RadicalSum::one();
    let mut checked = 0;
    for k in 0..=10 {
        let sin2: Rational = rational(k, 10);
        let code = build_theta_family(3, 2, &sin2, &p, 2, 12, 1).map_err(|e| e.to_string())?;
        for i in 0..code.d() {
            for j in 0..code.d() {
                let ov = logical_overlap(&code.logical[i], &code.logical[j]).map_err(|e| e.to_string())?;
                if i == j {
                    ensure(ov == one, || format!("sin2 = {sin2}: diagonal {i} = {ov:?}"))?;
                } else {
                    let sq = &ov * &ov;
                    ensure((&sq - &one).signum() == std::cmp::Ordering::Less, || {
                        format!("sin2 = {sin2}: |<{i}|{j}>|^2 = {sq:?} not below 1")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("11 grid points, {checked} overlap entries exact"))
}

fn criterion_8() -> Outcome {
    let codes = library_examples();
    let mut checks = 0;
    for (name, code) in [("1", &codes[0]), ("2", &codes[1]), ("4", &codes[3])] {
        let tuple = PartitionPolynomialTuple::new(code.p_polys.clone(), code.total, code.f.degree());
        for w in 1..=2 {
            let classes: Vec<MatrixUnitClass> = matrix_unit_classes(w, code.q);
            for cls in &classes {
                let r = polynomiality_check(&tuple, cls, code.total).map_err(|e| e.to_string())?;
                ensure(r.pass, || format!("example {name}, w = {w}: off curve at {:?}", r.off_curve))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} class checks on examples 1, 2, 4 at w = 1, 2"))
}

fn criterion_9() -> Outcome {
    let mut certs = 0;
    for code in library_examples().iter().chain([build_gnu(3, 3, 9, 1).unwrap()].iter()) {
        let base = kl_certify_with_threads(code, 1, 1).map_err(|e| e.to_string())?.to_json();
        for threads in [1, 2, 8] {
            let again = kl_certify_with_threads(code, 1, threads).map_err(|e| e.to_string())?.to_json();
            ensure(again == base, || format!("{} differs at {threads} threads", code.id()))?;
        }
        certs += 1;
    }
    let gnu = build_gnu(3, 3, 9, 1).unwrap();
    let d1 = certify_distance(&gnu, 3).map_err(|e| e.to_string())?.to_json();
    let d2 = certify_distance(&gnu, 3).map_err(|e| e.to_string())?.to_json();
    ensure(d1 == d2, || "distance report differs between runs".into())?;
    let cfg = OracleConfig {
        channels: 2,
        states: 5,
        ..OracleConfig::default()
    };
    let o1 = run_oracle(&gnu, &cfg).map_err(|e| e.to_string())?.to_json();
    let o2 = run_oracle(&gnu, &cfg).map_err(|e| e.to_string())?.to_json();
    ensure(o1 == o2, || "oracle report differs between runs".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("code2.json");
    std::fs::write(&path, library_examples()[1].to_json()).map_err(|e| e.to_string())?;
    let outputs: Vec<Vec<u8>> = ["1", "2", "8"]
        .iter()
        .map(|t| run_bin(&["verify", path.to_str().unwrap(), "--t", "1"], Some(t)).map(|o| o.stdout))
        .collect::<Result<_, _>>()?;
    ensure(outputs.iter().all(|o| o == &outputs[0] && !o.is_empty()), || {
        "CLI verify output depends on PICODE_THREADS".into()
    })?;
    Ok(format!("{certs} certificates identical at 1/2/8 threads; distance, oracle and CLI reports repeat"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("example reproduction", criterion_1),
        ("exact certification", criterion_2),
        ("binomial code and distance", criterion_3),
        ("identity suites", criterion_4),
        ("oracle agreement", criterion_5),
        ("recovery end to end", criterion_6),
        ("theta family overlaps", criterion_7),
        ("polynomiality", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
