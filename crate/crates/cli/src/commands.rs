use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DVector;
use ncgkit::nctorus::parse_decimal;
use ncgkit::nctorus::{ComplexStructure, QuadIrr, SL2Mat};
use ncgkit::precision::Precision;
use ncgkit::quadfield::rational_to_float;
use ncgkit::spheres::{find_points, BilinearSystem, PhiParams};
use ncgkit::suite::{run_suite, Mutation, SuiteConfig, VerificationReport};
use ncgkit::thetaring::{tau_eff_from, theta_const, GradedRing, ThetaChar};
use num::complex::Complex64;
use num::{BigRational, Integer, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;

use crate::args::{CharvarArgs, ReportFormat, RingArgs, SampleMode, ThetaArgs, VerifyArgs};
use crate::error::CliError;
use crate::output::{csv_bytes, digits_for, sci, write_atomic};

fn precision(bits: u32) -> Result<Precision, CliError> {
    Precision::new(bits).ok_or_else(|| {
        CliError::Param(format!(
            "bits must lie in [{}, {}], got {bits}",
            Precision::MIN_BITS,
            Precision::MAX_BITS
        ))
    })
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Param(format!("{name} must be positive, got {x}")))
    }
}

/// "p/q", an integer or a decimal literal.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim())
        .ok()
        .or_else(|| parse_decimal(s))
        .ok_or_else(|| CliError::Param(format!("not a rational number: {s:?}")))
}

/// "re,im" without the half-plane check, so that a divergent nome reaches
/// the series and is reported as a numeric error.
fn parse_tau_loose(s: &str) -> Result<(BigRational, BigRational), CliError> {
    let bad = || CliError::Param(format!("tau must be \"re,im\", got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((parse_decimal(a).ok_or_else(bad)?, parse_decimal(b).ok_or_else(bad)?))
}

pub fn parse_g(s: &str) -> Result<SL2Mat, CliError> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Param(format!("g must be four integers \"a,b,c,d\", got {s:?}")))?;
    let [a, b, c, d] = v[..] else {
        return Err(CliError::Param(format!("g must have four entries, got {}", v.len())));
    };
    Ok(SL2Mat::new(a, b, c, d)?)
}

pub fn parse_phi(s: &str) -> Result<PhiParams, CliError> {
    let v: Vec<Rational64> = s
        .split(',')
        .map(|t| Rational64::from_str(t.trim()))
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Param(format!("phi must be three rationals, got {s:?}")))?;
    let [a, b, c] = v[..] else {
        return Err(CliError::Param(format!("phi must have three entries, got {}", v.len())));
    };
    Ok(PhiParams::new([a, b, c])?)
}

pub fn theta(a: &ThetaArgs) -> Result<String, CliError> {
    let prec = precision(a.precision.bits)?;
    let eps = positive("eps", a.eps)?;
    let r = parse_rational(&a.r)?;
    let r = &r - BigRational::from_integer(r.numer().div_floor(r.denom()));
    let l = parse_rational(&a.l)?;
    let ch = ThetaChar::new(r, l)?;
    let (re, im) = parse_tau_loose(&a.tau)?;
    let b = prec.bits();
    let tau = Complex::with_val(b, (rational_to_float(&re, b), rational_to_float(&im, b)));
    let (value, _) = theta_const(&ch, &tau_eff_from(&tau), eps, prec)?;
    Ok(format!("{} ± {:e}\n", value.decimal_string(digits_for(eps)), eps))
}

pub fn ring(a: &RingArgs) -> Result<(), CliError> {
    let prec = precision(a.precision.bits)?;
    let eps = positive("eps", a.eps)?;
    let tol = positive("tol", a.tol)?;
    let g = parse_g(&a.g)?;
    if g.degree() <= 0 {
        return Err(CliError::Param(format!("degree c of g must be positive, got {}", g.degree())));
    }
    let theta: QuadIrr = a.theta.parse()?;
    let tau: ComplexStructure = a.tau.parse()?;
    let ring = GradedRing::new(g, theta, tau, eps, prec)?;
    let table = ring.table(1, 1)?;
    let presentation = ring.presentation(tol, Some(a.seed))?;

    let rows = table.iter().map(|((gamma, alpha, beta), c)| {
        vec![
            gamma.to_string(),
            alpha.to_string(),
            beta.to_string(),
            sci(c.re_f64()),
            sci(c.im_f64()),
            sci(c.err),
        ]
    });
    let csv = csv_bytes(&["gamma", "alpha", "beta", "re", "im", "err"], rows)?;
    let mut json = serde_json::to_vec_pretty(&presentation)
        .map_err(|e| CliError::Param(format!("json: {e}")))?;
    json.push(b'\n');

    std::fs::create_dir_all(&a.out)?;
    write_atomic(&a.out.join("structure_constants.csv"), &csv)?;
    write_atomic(&a.out.join("presentation.json"), &json)?;
    Ok(())
}

pub fn verify(a: &VerifyArgs) -> Result<(String, bool), CliError> {
    let mutations = a
        .inject
        .iter()
        .map(|s| s.parse::<Mutation>().map_err(CliError::Param))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = SuiteConfig {
        seed: a.seed,
        only: a.only.clone(),
        mutations,
        precision: precision(a.precision.bits)?,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg);
    if report.claims.is_empty() {
        return Err(CliError::Param(format!(
            "no claim id starts with {:?}",
            a.only.as_deref().unwrap_or("")
        )));
    }
    let text = match a.format {
        ReportFormat::Text => report_text(&report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Param(format!("json: {e}")))?;
            s.push('\n');
            s
        }
        ReportFormat::Csv => report_csv(&report)?,
    };
    Ok((text, report.passed()))
}

fn report_text(r: &VerificationReport) -> String {
    let width = r.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.claims {
        let _ = write!(s, "{:width$}  {:15}  residual {:.2e}  {:8.1} ms", c.id, c.status.to_string(), c.residual, c.runtime_ms);
        if let Some(n) = &c.note {
            let _ = write!(s, "  ({n})");
        }
        s.push('\n');
    }
    let fails = r.claims.iter().filter(|c| !c.status.is_pass()).count();
    let _ = writeln!(s, "{} claims, {} failed, seed {}", r.claims.len(), fails, r.seed);
    s
}

fn report_csv(r: &VerificationReport) -> Result<String, CliError> {
    let rows = r.claims.iter().map(|c| {
        vec![
            c.id.clone(),
            c.statement.clone(),
            c.status.to_string(),
            sci(c.residual),
            format!("{:.3}", c.runtime_ms),
            c.note.clone().unwrap_or_default(),
        ]
    });
    let b = csv_bytes(&["id", "statement", "status", "residual", "runtime_ms", "note"], rows)?;
    Ok(String::from_utf8(b).expect("csv output is utf-8"))
}

fn random_point(rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    DVector::from_fn(4, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

fn push_vec(row: &mut Vec<String>, v: Option<&DVector<Complex64>>) {
    for k in 0..4 {
        match v {
            Some(v) => {
                row.push(sci(v[k].re));
                row.push(sci(v[k].im));
            }
            None => {
                row.push(String::new());
                row.push(String::new());
            }
        }
    }
}

pub fn charvar(a: &CharvarArgs) -> Result<Vec<u8>, CliError> {
    let tol = positive("tol", a.tol)?;
    let phi = parse_phi(&a.phi)?;
    let sys = BilinearSystem::from_phi(&phi)?;
    let points: Vec<DVector<Complex64>> = match a.mode {
        SampleMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (0..a.n).map(|_| random_point(&mut rng).normalize()).collect()
        }
        SampleMode::Search => find_points(&sys, a.n, a.seed, tol).into_iter().map(|p| p.u.normalize()).collect(),
    };
    let mut header: Vec<String> = Vec::new();
    for prefix in ["u", "sigma"] {
        if prefix == "sigma" {
            header.extend(["rank".into(), "smin_rel".into()]);
        }
        for k in 0..4 {
            header.push(format!("{prefix}{k}_re"));
            header.push(format!("{prefix}{k}_im"));
        }
    }
    header.extend(["residual".into(), "fixed".into()]);
    let rows = points.iter().map(|u| {
        let (rank, smin_rel) = sys.rank_at(u, tol);
        let v = sys.sigma(u, tol);
        let mut row = Vec::with_capacity(header.len());
        push_vec(&mut row, Some(u));
        row.push(rank.to_string());
        row.push(sci(smin_rel));
        push_vec(&mut row, v.as_ref());
        match &v {
            Some(v) => {
                row.push(sci(sys.residual(u, v)));
                row.push(((u.dotc(v).norm() - 1.0).abs() < 1e-10).to_string());
            }
            None => {
                row.push(String::new());
                row.push(String::new());
            }
        }
        row
    });
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_bytes(&h, rows)
}

pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}
