//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bohr_cli::args::{MRange, OutputArgs, TablesArgs};
use bohr_cli::cmd_tables;
use bohr_core::functionals::extremal;
use bohr_core::radii::{auxiliary_root, FamilyKind};
use bohr_core::{
    compute_radius, equation_value, functional_a, functional_b, functional_c, functional_d,
    functional_e, limit_radius, probe_sharpness, rogosinski_bound, verify_family,
    verify_rogosinski, HarmonicPair, RadiusFamily, SampleKind, SampleSpec, TruncatedSeries,
    DEFAULT_ORDER,
};

const TABLE_TOL: f64 = 1e-5;
const QUADRATIC_TOL: f64 = 1e-9;
const VIOLATION_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-10;
const MAX_RESIDUAL: f64 = 1e-11;
const CONVERGENCE_TOL: f64 = 1e-4;
const TABLES_LIMIT: Duration = Duration::from_secs(5);
const ROGOSINSKI_LIMIT: Duration = Duration::from_secs(60);
const PINCH_LIMIT: Duration = Duration::from_secs(120);
const SEED: u64 = 42;

const REFERENCE_RADII: [(&str, [f64; 5]); 5] = [
    ("phi", [0.280776, 0.39149, 0.441112, 0.467644, 0.482442]),
    ("psi", [0.355416, 0.430586, 0.464327, 0.481418, 0.490359]),
    ("Phi", [0.280776, 0.316912, 0.327911, 0.33152, 0.332726]),
    ("lambda", [0.154701, 0.188829, 0.197544, 0.199494, 0.199898]),
    ("Lambda", [0.1671, 0.240751, 0.267472, 0.276691, 0.279585]),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs())
    })
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let args = TablesArgs {
        family: Vec::new(),
        m: MRange { lo: 1, hi: 5 },
        k: 1.0,
        output: OutputArgs {
            format: Default::default(),
            out: None,
        },
    };
    let record = cmd_tables(&args).map_err(|e| e.to_string())?.record;
    ensure(record.results.len() == 25, || {
        format!("{} rows", record.results.len())
    })?;
    let mut worst = 0.0_f64;
    for (family, row) in REFERENCE_RADII {
        for (i, expected) in row.iter().enumerate() {
            let m = i as u64 + 1;
            let got = record
                .results
                .iter()
                .find(|r| r["family"] == family && r["m"].as_u64() == Some(m))
                .and_then(|r| r["value"].as_f64())
                .ok_or_else(|| format!("missing row {family} m={m}"))?;
            let err = (got - expected).abs();
            worst = worst.max(err);
            ensure(err <= TABLE_TOL, || {
                format!("{family} m={m}: {got} vs {expected}")
            })?;
        }
    }
    within(TABLES_LIMIT, start)?;
    Ok(format!("25/25 radii, max deviation {worst:.2e}"))
}

fn closed_form_cross_checks() -> Outcome {
    let lam = compute_radius(&RadiusFamily::lambda(1, 1.0).unwrap())
        .unwrap()
        .value;
    let lam_exact = (2.0 * 3f64.sqrt() - 3.0) / 3.0;
    ensure((lam - lam_exact).abs() <= QUADRATIC_TOL, || {
        format!("lambda(1,1) = {lam}")
    })?;
    let phi = compute_radius(&RadiusFamily::phi(1).unwrap())
        .unwrap()
        .value;
    let phi_exact = (17f64.sqrt() - 3.0) / 4.0;
    ensure((phi - phi_exact).abs() <= QUADRATIC_TOL, || {
        format!("phi(1) = {phi}")
    })?;
    let lim = |kind, k| limit_radius(kind, k).unwrap();
    ensure(lim(FamilyKind::Phi, 1.0) == 0.5, || "phi limit".into())?;
    ensure(lim(FamilyKind::Psi, 1.0) == 0.5, || "psi limit".into())?;
    ensure(lim(FamilyKind::PhiCap, 1.0) == 1.0 / 3.0, || {
        "Phi limit".into()
    })?;
    for k in [0.0, 0.25, 0.5, 1.0] {
        ensure(lim(FamilyKind::Lambda, k) == 2.0 / (4.0 * k + 6.0), || {
            format!("lambda limit k={k}")
        })?;
        let s = 2.0 * k + 1.0;
        ensure(
            lim(FamilyKind::LambdaCap, k) == ((s * s + 8.0).sqrt() - s) / 4.0,
            || format!("Lambda limit k={k}"),
        )?;
    }
    Ok(format!(
        "|phi(1) - closed| = {:.1e}, |lambda(1,1) - closed| = {:.1e}, limits exact",
        (phi - phi_exact).abs(),
        (lam - lam_exact).abs()
    ))
}

// Σ_{k≤n} C(2k,k)²/16^k over the common denominator 16^n.
fn rational_bound(n: u32) -> (u128, u128) {
    let den = 16u128.pow(n);
    let (mut num, mut central) = (0u128, 1u128);
    for k in 0..=n as u128 {
        if k > 0 {
            central = central * (2 * k) * (2 * k - 1) / (k * k);
        }
        num += central * central * 16u128.pow(n - k as u32);
    }
    (num, den)
}

fn rogosinski_suite() -> Outcome {
    let start = Instant::now();
    let (num, den) = rational_bound(2);
    ensure(num * 64 == 89 * den, || format!("oracle gives {num}/{den}"))?;
    ensure(rogosinski_bound(2) == 1.390625, || {
        format!("bound(2) = {}", rogosinski_bound(2))
    })?;
    for n in 0..=10 {
        let (num, den) = rational_bound(n);
        ensure(
            rogosinski_bound(n as usize) == num as f64 / den as f64,
            || format!("bound({n})"),
        )?;
    }
    let mut worst = f64::NEG_INFINITY;
    for kind in [
        SampleKind::FiniteBlaschkeCombo,
        SampleKind::Mobius,
        SampleKind::ScaledPolynomial,
    ] {
        let report = verify_rogosinski(&SampleSpec::new(kind, 1000, SEED), 1.0, 10)
            .map_err(|e| e.to_string())?;
        ensure(
            report.trials == 1000 && report.inadmissible.is_empty(),
            || format!("{kind}: {} admissible", report.trials),
        )?;
        ensure(
            report.violations.is_empty() && report.max_value <= 1.0 + VIOLATION_TOL,
            || {
                format!(
                    "{kind}: {} violations, max partial - bound = {:.3e}",
                    report.violations.len(),
                    report.max_value - 1.0
                )
            },
        )?;
        worst = worst.max(report.max_value - 1.0);
    }
    within(ROGOSINSKI_LIMIT, start)?;
    Ok(format!(
        "3x1000 samples, n <= 10, max(partial - bound) = {worst:.3e}"
    ))
}

fn radius_pinching() -> Outcome {
    let start = Instant::now();
    let mut closest = f64::NEG_INFINITY;
    let mut weakest_excess = f64::INFINITY;
    for kind in FamilyKind::ALL {
        for m in 1..=5 {
            let fam = RadiusFamily::new(kind, m, 1.0).unwrap();
            for sk in [SampleKind::Mobius, SampleKind::FiniteBlaschkeCombo] {
                let report = verify_family(&fam, &SampleSpec::new(sk, 500, SEED), 0.999)
                    .map_err(|e| e.to_string())?;
                ensure(report.trials == 500, || {
                    format!("{fam} {sk}: {} admissible", report.trials)
                })?;
                ensure(
                    report.violations.is_empty() && report.max_value <= 1.0 + VIOLATION_TOL,
                    || format!("{fam} {sk}: max {}", report.max_value),
                )?;
                closest = closest.max(report.max_value);
            }
            let mult = if kind == FamilyKind::LambdaCap {
                1.02
            } else {
                1.05
            };
            let probe =
                probe_sharpness(&fam, &[1.0 - 1e-4], mult, None).map_err(|e| e.to_string())?;
            let v = probe.rows[0]
                .value
                .ok_or_else(|| format!("{fam}: extremal regime violated"))?;
            ensure(v > 1.0, || {
                format!("{fam}: extremal value {v} at {mult}x radius")
            })?;
            weakest_excess = weakest_excess.min(v - 1.0);
        }
    }
    within(PINCH_LIMIT, start)?;
    Ok(format!(
        "5 families x m=1..5: below max {closest:.6}, above min excess {weakest_excess:.3e}"
    ))
}

fn grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..9).map(move |i| lo + (hi - lo) * i as f64 / 8.0)
}

fn closed_form_agreement() -> Outcome {
    let mut worst = 0.0_f64;
    let mut check = |what: &str, got: f64, want: f64| -> Result<(), String> {
        let err = (got - want).abs();
        worst = worst.max(err);
        ensure(err <= CLOSED_FORM_TOL, || {
            format!("{what}: {got} vs {want}")
        })
    };
    for m in 1..=5u32 {
        let mi = m as i32;
        for a in grid(0.05, 0.95) {
            let f = TruncatedSeries::mobius(a, 1, DEFAULT_ORDER).unwrap();
            let d_pair = HarmonicPair::extremal(a, 1.0, 1.0).unwrap();
            let e_pair = extremal::e_pair(a, 1.0, 1.0).unwrap();
            for r in grid(0.0, 0.45) {
                let p = r.powi(mi);
                let tag = format!("m={m} a={a:.4} r={r:.4}");
                let pa = (1.0 - a * r) * (a * p * p + 2.0 * p - 1.0)
                    + a * r * r * (1.0 + a) * (1.0 + a * p).powi(2);
                let want = 1.0 + (1.0 - a) * pa / ((1.0 + a * p).powi(2) * (1.0 - a * r));
                check(
                    &format!("A {tag}"),
                    functional_a(&f, m, r).unwrap().value,
                    want,
                )?;

                let qc = r * (1.0 + a) + a * a * p * r * r * (1.0 + a) * (2.0 + a * p)
                    - (1.0 - p) * (1.0 + a * p) * (1.0 - a * r);
                let want = 1.0 + (1.0 - a) * qc / ((1.0 + a * p).powi(2) * (1.0 - a * r));
                check(
                    &format!("C {tag}"),
                    functional_c(&f, m, r).unwrap().value,
                    want,
                )?;

                let want = (p + a) / (1.0 + a * p) + 2.0 * r * (1.0 - a * a) / (1.0 - r * a);
                check(
                    &format!("D {tag}"),
                    functional_d(&d_pair, m, r).unwrap().value,
                    want,
                )?;

                let want = (a + 2.0 * p + a * p * p) / (1.0 + a * p).powi(2)
                    + a * r * (1.0 - a * a) * (r + 1.0) / (1.0 - a * r);
                check(
                    &format!("E {tag}"),
                    functional_e(&e_pair, m, r).unwrap().value,
                    want,
                )?;
            }
        }
        // B's extremal formula needs r^m ≤ a and a(r + r^m) < 1, so it gets its own grid.
        for a in grid(0.4, 0.98) {
            let g = TruncatedSeries::mobius(a, -1, DEFAULT_ORDER).unwrap();
            for r in grid(0.0, 0.36) {
                let p = r.powi(mi);
                ensure(p <= a && a * (r + p) < 1.0, || {
                    format!("B grid point outside regime: m={m} a={a} r={r}")
                })?;
                let poly =
                    a * (1.0 + a) * r * r - (1.0 + p) * (1.0 - a * p) * (1.0 - a * p - a * r);
                let want = 1.0 + (1.0 - a) * poly / ((1.0 - a * p).powi(2) * (1.0 - a * p - a * r));
                check(
                    &format!("B m={m} a={a:.4} r={r:.4}"),
                    functional_b(&g, m, r).unwrap().value,
                    want,
                )?;
            }
        }
    }
    Ok(format!(
        "5 functionals x 9x9 grid x m=1..5, max deviation {worst:.2e}"
    ))
}

fn certificate_soundness() -> Outcome {
    let mut count = 0;
    for kind in FamilyKind::ALL {
        for m in 1..=10 {
            let fam = RadiusFamily::new(kind, m, 1.0).unwrap();
            let cert = compute_radius(&fam).map_err(|e| e.to_string())?;
            ensure(cert.verify(), || {
                format!("{fam}: certificate fails re-check")
            })?;
            let lo = equation_value(&fam, cert.bracket_lo).unwrap();
            let hi = equation_value(&fam, cert.bracket_hi).unwrap();
            ensure(lo < 0.0 && hi > 0.0, || {
                format!("{fam}: no sign change ({lo}, {hi})")
            })?;
            ensure(
                cert.bracket_lo <= cert.value && cert.value <= cert.bracket_hi,
                || format!("{fam}: value outside bracket"),
            )?;
            ensure(cert.residual.abs() <= MAX_RESIDUAL, || {
                format!("{fam}: residual {}", cert.residual)
            })?;
            count += 1;
        }
    }
    for m in 1..=10u32 {
        let phi = compute_radius(&RadiusFamily::phi(m).unwrap())
            .unwrap()
            .value;
        let cap = (2f64.sqrt() - 1.0).powf(1.0 / m as f64);
        ensure(phi <= cap, || format!("phi({m}) = {phi} > {cap}"))?;
        let big_phi = compute_radius(&RadiusFamily::phi_cap(m).unwrap())
            .unwrap()
            .value;
        let aux = auxiliary_root(m).unwrap();
        let aux_residual = 2.0 * aux - (1.0 - aux.powi(2 * m as i32));
        ensure(aux_residual.abs() <= MAX_RESIDUAL, || {
            format!("auxiliary root m={m}")
        })?;
        ensure(big_phi < aux, || format!("Phi({m}) = {big_phi} >= {aux}"))?;
    }
    Ok(format!(
        "{count} certificates sound, a priori bounds hold for m = 1..10"
    ))
}

fn convergence() -> Outcome {
    let phi = compute_radius(&RadiusFamily::phi(20).unwrap())
        .unwrap()
        .value;
    let cap = compute_radius(&RadiusFamily::phi_cap(20).unwrap())
        .unwrap()
        .value;
    ensure((phi - 0.5).abs() <= CONVERGENCE_TOL, || {
        format!("phi(20) = {phi}")
    })?;
    ensure((cap - 1.0 / 3.0).abs() <= CONVERGENCE_TOL, || {
        format!("Phi(20) = {cap}")
    })?;
    Ok(format!(
        "|phi(20) - 1/2| = {:.2e}, |Phi(20) - 1/3| = {:.2e}",
        (phi - 0.5).abs(),
        (cap - 1.0 / 3.0).abs()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("table reproduction", table_reproduction),
        ("closed-form radii and limits", closed_form_cross_checks),
        ("partial-sum inequality sweep", rogosinski_suite),
        ("radius pinching", radius_pinching),
        ("functional closed forms", closed_form_agreement),
        ("certificate soundness", certificate_soundness),
        ("convergence in m", convergence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
