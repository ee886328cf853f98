use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use serde::Serialize;

use super::fixtures::example_specs;
use super::specfile::{polynomial, Coeff, SpecFile};
use super::{CliError, Outcome, VerifyArgs, EXIT_CHECK_FAILED, EXIT_OK, THREADS_ENV};
use crate::codegen::{build_theta_family, logical_overlap, CodegenError, DescriptorError, PICode};
use crate::exactnum::{format_rational, parse_rational, rational, RadicalSum, Rational};
use crate::klverify::{certify_distance, kl_certify, Distance};
use crate::oracle::{run_oracle, OracleConfig, OracleError};
use crate::polyid::{check_moment_identities, check_root_identities, RationalPolynomial};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

pub fn build(spec: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let spec = SpecFile::parse(&read(spec)?)?;
    let code = spec.build()?;
    let json = code.to_json();
    let summary = format!("built {} with {} support orbits", code.id(), code.support().len());
    match out {
        Some(path) => {
            write(path, &json)?;
            Ok(Outcome {
                json: String::new(),
                summary: format!("{summary}; wrote {}", path.display()),
                exit_code: EXIT_OK,
            })
        }
        None => Ok(Outcome {
            json,
            summary,
            exit_code: EXIT_OK,
        }),
    }
}

/// A descriptor, or a spec file recognized by its `construction` object.
fn load_code(path: &Path) -> Result<(PICode, Option<usize>), CliError> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    if value.get("construction").is_some_and(serde_json::Value::is_object) {
        let spec = SpecFile::parse(&text)?;
        let code = spec.build()?;
        return Ok((code, Some(spec.certification_t())));
    }
    let code = PICode::from_json(&text).map_err(|e| match e {
        DescriptorError::Json(e) => CliError::Parse(format!("{}: {e}", path.display())),
        DescriptorError::Code(e) => CliError::Parse(format!("{}: {e}", path.display())),
    })?;
    Ok((code, None))
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| Some(n.max(1)))
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let (code, spec_t) = load_code(&args.code)?;
    let threads = thread_count(args.threads)?;
    if let Some(w_max) = args.distance_up_to {
        let report = with_threads(threads, || certify_distance(&code, w_max))?
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let summary = match report.distance {
            Distance::Exact(w) => format!("{}: distance {w}", code.id()),
            Distance::GreaterThan(w) => format!("{}: distance > {w}", code.id()),
        };
        return Ok(Outcome {
            json: report.to_json(),
            summary,
            exit_code: EXIT_OK,
        });
    }
    let t = args.t.or(spec_t).unwrap_or(code.t);
    let cert = with_threads(threads, || kl_certify(&code, t))?.map_err(|e| CliError::Usage(e.to_string()))?;
    let summary = if cert.ok {
        format!("{}: conditions hold at w = {}", code.id(), cert.w)
    } else {
        let first = &cert.violations[0];
        format!(
            "{}: {} violations at w = {}, first at class ({}, {}) pair {:?}",
            code.id(),
            cert.violations.len(),
            cert.w,
            first.class.a,
            first.class.a_prime,
            first.pair
        )
    };
    Ok(Outcome {
        exit_code: exit_for(cert.ok),
        json: cert.to_json(),
        summary,
    })
}

pub fn identities(f: &[String], d: Option<usize>, m: usize) -> Result<Outcome, CliError> {
    let coeffs = f
        .iter()
        .map(|s| parse_rational(s.trim()).map_err(|e| CliError::Parse(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let f = RationalPolynomial::new(coeffs);
    let (json, pass) = match d {
        Some(d) => {
            if d < 2 {
                return Err(CliError::Usage(format!("--d {d} must be at least 2")));
            }
            let r = check_root_identities(&f, d, m);
            (pretty(&r), r.pass)
        }
        None => {
            let r = check_moment_identities(&f, m);
            (pretty(&r), r.pass)
        }
    };
    Ok(Outcome {
        json,
        summary: format!("identities for f = {f}: {}", if pass { "pass" } else { "fail" }),
        exit_code: exit_for(pass),
    })
}

pub fn oracle(path: &Path, seed: u64, channels: usize, states: usize) -> Result<Outcome, CliError> {
    let (code, _) = load_code(path)?;
    let cfg = OracleConfig {
        seed,
        channels,
        states,
        ..OracleConfig::default()
    };
    let report = run_oracle(&code, &cfg).map_err(|e| match e {
        OracleError::DimensionCap { .. } => CliError::DimensionCap(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })?;
    Ok(Outcome {
        summary: format!(
            "{}: max |delta| {:.3e}, min fidelity {:.15}",
            code.id(),
            report.max_abs_delta,
            report.min_fidelity()
        ),
        exit_code: exit_for(report.ok),
        json: report.to_json(),
    })
}

pub fn examples(dir: &Path) -> Result<Outcome, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, spec) in example_specs() {
        let path = dir.join(&name);
        write(&path, &spec.to_json())?;
        written.push(path.display().to_string());
    }
    Ok(Outcome {
        summary: format!("wrote {} example specs to {}", written.len(), dir.display()),
        json: pretty(&serde_json::json!({ "written": written })),
        exit_code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct FamilyReport {
    m: u32,
    d: usize,
    #[serde(rename = "N")]
    total: usize,
    grid: Vec<String>,
    overlaps: Vec<Vec<RadicalSum>>,
    overlaps_approx: Vec<Vec<f64>>,
    unit_diagonal: bool,
    off_diagonal_below_one: bool,
    ok: bool,
}

pub fn family(m: u32, d: usize, p: &str, grid: usize, t: usize) -> Result<Outcome, CliError> {
    if grid < 2 {
        return Err(CliError::Usage(format!("--grid {grid}: need at least 2 points")));
    }
    let raw: Vec<Vec<Coeff>> = serde_json::from_str(p).map_err(|e| CliError::Parse(format!("--p: {e}")))?;
    let polys = raw.iter().map(|c| polynomial(c)).collect::<Result<Vec<_>, _>>()?;
    let at_zero = polys.iter().fold(Rational::from_integer(0.into()), |acc, p| acc + p.eval_integer(0));
    let total = match (at_zero.is_integer(), num_traits::ToPrimitive::to_usize(&at_zero.to_integer())) {
        (true, Some(n)) if n > 0 => n,
        _ => {
            return Err(CodegenError::InvalidSpec(format!(
                "partition polynomials sum to {} at z = 0",
                format_rational(&at_zero)
            ))
            .into())
        }
    };
    let points: Vec<Rational> = (0..grid).map(|k| rational(k as i64, grid as i64 - 1)).collect();
    let codes = points
        .iter()
        .map(|s| build_theta_family(m, d, s, &polys, polys.len(), total, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut overlaps = Vec::with_capacity(grid);
    let (mut unit_diagonal, mut below_one) = (true, true);
    for (i, a) in codes.iter().enumerate() {
        let mut row = Vec::with_capacity(grid);
        for (j, b) in codes.iter().enumerate() {
            let ov = logical_overlap(&a.logical[0], &b.logical[0])?;
            if i == j {
                unit_diagonal &= ov == RadicalSum::one();
            } else {
                let square = &ov * &ov;
                below_one &= ov.signum() != Ordering::Less && (&square - &RadicalSum::one()).signum() == Ordering::Less;
            }
            row.push(ov);
        }
        overlaps.push(row);
    }
    let report = FamilyReport {
        m,
        d,
        total,
        grid: points.iter().map(format_rational).collect(),
        overlaps_approx: overlaps.iter().map(|r| r.iter().map(RadicalSum::to_f64).collect()).collect(),
        overlaps,
        unit_diagonal,
        off_diagonal_below_one: below_one,
        ok: unit_diagonal && below_one,
    };
    Ok(Outcome {
        summary: format!(
            "{grid}-point family table: unit diagonal {unit_diagonal}, off-diagonal below one {below_one}"
        ),
        exit_code: exit_for(report.ok),
        json: pretty(&report),
    })
}
