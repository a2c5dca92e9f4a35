use bohr_core::functionals::{extremal, FunctionalResult};
use bohr_core::harness::SHARPNESS_LADDER;
use bohr_core::radii::FamilyKind;
use bohr_core::{
    compute_radius, functional_a_at, functional_b_at, functional_c_at, functional_d_at,
    functional_e_at, probe_sharpness, rogosinski_bound, rogosinski_partial, verify_family,
    verify_rogosinski, Complex, HarmonicPair, RadiusFamily, SampleKind, SampleSpec,
    TruncatedSeries, VerificationReport,
};
use serde_json::Value;

use crate::args::{EvaluateArgs, FunctionalName, SharpnessArgs, TablesArgs, Target, VerifyArgs};
use crate::coeffs::read_coefficients;
use crate::error::{CliError, Result};
use crate::output::{num, opt, row, OutputRecord};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Violation = 1,
    Usage = 2,
    Inconclusive = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub record: OutputRecord,
    pub exit: Exit,
}

fn k_value(kind: FamilyKind, k: f64) -> Value {
    if kind.is_harmonic() {
        num(k)
    } else {
        Value::Null
    }
}

pub fn cmd_tables(args: &TablesArgs) -> Result<Outcome> {
    let kinds: Vec<FamilyKind> = if args.family.is_empty() {
        FamilyKind::ALL.to_vec()
    } else {
        args.family.clone()
    };
    let mut rec = OutputRecord::new("tables");
    rec.param(
        "families",
        kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(","),
    )
    .param("m", args.m.to_string())
    .param("k", num(args.k));
    for &kind in &kinds {
        for m in args.m.lo..=args.m.hi {
            let fam = RadiusFamily::new(kind, m, args.k)?;
            let cert = compute_radius(&fam)?;
            rec.results.push(row([
                ("family", Value::from(kind.name())),
                ("m", Value::from(m)),
                ("k", k_value(kind, fam.k())),
                ("value", num(cert.value)),
                ("residual", num(cert.residual)),
                ("bracket_lo", num(cert.bracket_lo)),
                ("bracket_hi", num(cert.bracket_hi)),
                ("selection", Value::from(cert.selection.to_string())),
            ]));
        }
    }
    Ok(Outcome {
        record: rec,
        exit: Exit::Success,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let kind: SampleKind = args.samples.into();
    let spec = SampleSpec {
        kind,
        count: args.trials,
        seed: args.seed,
        coeff_order: args.order,
    };
    let (report, name, k): (VerificationReport, &str, Value) = match args.family {
        Target::Family(kind) => {
            let fam = RadiusFamily::new(kind, args.m, args.k)?;
            let frac = args.r_fraction.unwrap_or(0.999);
            (
                verify_family(&fam, &spec, frac)?,
                kind.name(),
                k_value(kind, fam.k()),
            )
        }
        Target::Rogosinski => {
            let frac = args.r_fraction.unwrap_or(1.0);
            (
                verify_rogosinski(&spec, frac, args.max_n)?,
                "rogosinski",
                Value::Null,
            )
        }
    };
    let m = match args.family {
        Target::Family(_) => Value::from(args.m),
        Target::Rogosinski => Value::Null,
    };
    let mut rec = OutputRecord::new("verify");
    rec.param("family", name)
        .param("m", m.clone())
        .param("k", k.clone())
        .param("trials", args.trials)
        .param("seed", args.seed)
        .param("samples", kind.name())
        .param("order", args.order);
    if args.family == Target::Rogosinski {
        rec.param("max_n", args.max_n);
    }
    rec.results.push(row([
        ("family", Value::from(name)),
        ("m", m),
        ("k", k),
        ("samples", Value::from(kind.name())),
        ("seed", Value::from(args.seed)),
        ("trials", Value::from(report.trials)),
        ("radius", num(report.radius)),
        ("radius_used", num(report.radius_used)),
        ("max_value", num(report.max_value)),
        ("violations", Value::from(report.violations.len())),
        ("inadmissible", Value::from(report.inadmissible.len())),
        ("max_error_bound", opt(report.max_error_bound)),
        ("runtime_seconds", num(report.runtime_seconds)),
    ]));
    let exit = if report.violations.is_empty() {
        Exit::Success
    } else {
        Exit::Violation
    };
    rec.details = Some(serde_json::to_value(&report)?);
    Ok(Outcome { record: rec, exit })
}

fn analytic_part(args: &EvaluateArgs) -> Result<TruncatedSeries> {
    match (args.mobius_a, &args.coeff_file) {
        (Some(a), None) => Ok(TruncatedSeries::mobius(a, args.mobius_sign, args.order)?),
        (None, Some(path)) => {
            let coeffs = read_coefficients(path)?;
            Ok(if args.exact_polynomial {
                TruncatedSeries::polynomial(coeffs)?
            } else {
                TruncatedSeries::raw_untailed(coeffs)?
            })
        }
        _ => Err(CliError::Usage(
            "give exactly one of --mobius-a and --coeff-file".into(),
        )),
    }
}

fn harmonic_pair(args: &EvaluateArgs, h: TruncatedSeries) -> Result<HarmonicPair> {
    if let Some(path) = &args.g_file {
        let g = TruncatedSeries::raw_untailed(read_coefficients(path)?)?;
        return Ok(HarmonicPair::new(h, g, args.k)?);
    }
    let c = match (args.functional, args.mobius_a) {
        // The E extremal uses g = aλ(h − a).
        (FunctionalName::E, Some(a)) => a * args.lambda,
        _ => args.lambda * args.k,
    };
    Ok(HarmonicPair::scaled(h, Complex::new(c, 0.0), args.k)?)
}

fn point(args: &EvaluateArgs) -> Result<Complex> {
    match (args.z, args.r) {
        (Some(z), _) => Ok(z),
        (None, Some(r)) => Ok(Complex::new(r, 0.0)),
        (None, None) => Err(CliError::Usage("one of --r or --z is required".into())),
    }
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<Outcome> {
    let f = analytic_part(args)?;
    let z = point(args)?;
    let mut rec = OutputRecord::new("evaluate");
    rec.param("functional", args.functional.name());
    match (args.mobius_a, &args.coeff_file) {
        (Some(a), _) => rec
            .param("mobius_a", num(a))
            .param("mobius_sign", args.mobius_sign),
        (_, Some(p)) => rec
            .param("coeff_file", p.display().to_string())
            .param("exact_polynomial", args.exact_polynomial),
        _ => &mut rec,
    };
    rec.param("z_re", num(z.re)).param("z_im", num(z.im));

    if args.functional == FunctionalName::Rogosinski {
        let n = args
            .n
            .ok_or_else(|| CliError::Usage("--n is required for rogosinski".into()))?;
        let partial = rogosinski_partial(&f, z, n)?;
        let bound = rogosinski_bound(n);
        rec.param("n", n);
        rec.results.push(row([
            ("functional", Value::from("rogosinski")),
            ("n", Value::from(n)),
            ("z_re", num(z.re)),
            ("z_im", num(z.im)),
            ("partial", num(partial)),
            ("bound", num(bound)),
            ("holds", Value::from(partial <= bound)),
        ]));
        return Ok(Outcome {
            record: rec,
            exit: Exit::Success,
        });
    }

    let m = args.m;
    rec.param("m", m);
    let result: FunctionalResult = match args.functional {
        FunctionalName::A => functional_a_at(&f, m, z)?,
        FunctionalName::B => functional_b_at(&f, m, z)?,
        FunctionalName::C => functional_c_at(&f, m, z)?,
        FunctionalName::D | FunctionalName::E => {
            rec.param("k", num(args.k))
                .param("lambda", num(args.lambda));
            let pair = harmonic_pair(args, f)?;
            if args.functional == FunctionalName::D {
                functional_d_at(&pair, m, z)?
            } else {
                functional_e_at(&pair, m, z)?
            }
        }
        FunctionalName::Rogosinski => unreachable!("handled above"),
    };
    let terms = std::iter::once(("total".to_string(), result.value)).chain(
        result
            .components
            .iter()
            .map(|c| (c.name.to_string(), c.value)),
    );
    for (term, value) in terms {
        rec.results.push(row([
            ("functional", Value::from(args.functional.name())),
            ("m", Value::from(m)),
            ("z_re", num(z.re)),
            ("z_im", num(z.im)),
            ("term", Value::from(term)),
            ("value", num(value)),
            ("rigorous", Value::from(result.rigorous)),
            ("error_bound", opt(result.error_bound)),
            ("within_guarantee", Value::from(result.within_guarantee)),
        ]));
    }
    Ok(Outcome {
        record: rec,
        exit: Exit::Success,
    })
}

pub fn cmd_sharpness(args: &SharpnessArgs) -> Result<Outcome> {
    let fam = RadiusFamily::new(args.family, args.m, args.k)?;
    let ladder: &[f64] = if args.a.is_empty() {
        &SHARPNESS_LADDER
    } else {
        &args.a
    };
    let lambda = args
        .lambda
        .unwrap_or_else(|| extremal::default_lambda(&fam));
    let report = probe_sharpness(&fam, ladder, args.r_multiplier, Some(lambda))?;
    let mut rec = OutputRecord::new("sharpness");
    rec.param("family", args.family.name())
        .param("m", args.m)
        .param("k", k_value(args.family, fam.k()))
        .param("lambda", num(lambda))
        .param("r_multiplier", num(args.r_multiplier))
        .param("radius", num(report.radius))
        .param("r", num(report.r))
        .param("confirmed", report.confirmed)
        .param("regime_binding", report.regime_binding);
    for r in &report.rows {
        rec.results.push(row([
            ("family", Value::from(args.family.name())),
            ("m", Value::from(args.m)),
            ("r", num(report.r)),
            ("a", num(r.a)),
            ("value", opt(r.value)),
            ("gap", num(r.gap)),
            ("exceeds", Value::from(r.exceeds)),
            ("regime_ok", Value::from(r.value.is_some())),
        ]));
    }
    let exit = if report.confirmed {
        Exit::Success
    } else {
        Exit::Inconclusive
    };
    Ok(Outcome { record: rec, exit })
}
