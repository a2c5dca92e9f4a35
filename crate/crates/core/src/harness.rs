//! Randomized and extremal verification of the inequalities.
//!
//! Samples are drawn from a counter-based stream keyed by `(seed, index)`,
//! so each trial is reproducible on its own and sweeps can run in parallel
//! without changing their results.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64 as Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{
    extremal, functional_a_at, functional_b_at, functional_c_at, functional_d_at, functional_e_at,
    rogosinski_bound, rogosinski_partials, sharpness_gap, FunctionalResult, HarmonicPair,
};
use crate::radii::{classical_constants, compute_radius, FamilyKind, RadiusFamily};
use crate::series::{
    truncated_product, BlaschkeCombo, GeometricTail, MobiusFactor, Tail, TruncatedSeries,
    DEFAULT_ORDER,
};

/// Absolute slack allowed above 1 before a value counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;
/// Points on `|z| = r` over which the pointwise part of a functional is maximized.
pub const CIRCLE_POINTS: usize = 64;
/// Boundary grid used for admissibility audits and polynomial normalization.
pub const BOUNDARY_POINTS: usize = 256;
/// Sharpness ladder for the extremal parameter `a`.
pub const SHARPNESS_LADDER: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

const MAX_CENTER: f64 = 0.999;
const COMBO_SCALE: f64 = 0.999;
const AUDIT_RADIUS: f64 = 0.999;
const MAX_POLY_DEGREE: usize = 8;
// Radius of the Cauchy estimate for the co-analytic tail of sampled pairs.
const PAIR_TAIL_RADIUS: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Mobius,
    FiniteBlaschkeCombo,
    ScaledPolynomial,
}

impl SampleKind {
    pub fn name(self) -> &'static str {
        match self {
            SampleKind::Mobius => "mobius",
            SampleKind::FiniteBlaschkeCombo => "blaschke",
            SampleKind::ScaledPolynomial => "polynomial",
        }
    }
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mobius" => Ok(SampleKind::Mobius),
            "blaschke" | "finite_blaschke_combo" => Ok(SampleKind::FiniteBlaschkeCombo),
            "polynomial" | "scaled_polynomial" => Ok(SampleKind::ScaledPolynomial),
            other => Err(Error::InvalidParameter(format!(
                "unknown sample kind `{other}` (expected mobius, blaschke or polynomial)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub kind: SampleKind,
    pub count: usize,
    pub seed: u64,
    pub coeff_order: usize,
}

impl SampleSpec {
    pub fn new(kind: SampleKind, count: usize, seed: u64) -> Self {
        SampleSpec {
            kind,
            count,
            seed,
            coeff_order: DEFAULT_ORDER,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParameter(
                "sample count must be positive".into(),
            ));
        }
        if self.coeff_order == 0 {
            return Err(Error::InvalidParameter(
                "coefficient order must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn unimodular(rng: &mut impl Rng) -> Complex {
    Complex::from_polar(1.0, rng.random_range(0.0..TAU))
}

fn random_factor(rng: &mut impl Rng) -> MobiusFactor {
    let a = rng.random_range(0.0..=MAX_CENTER);
    let center = Complex::from_polar(a, rng.random_range(0.0..TAU));
    MobiusFactor::new(center, unimodular(rng)).expect("|center| < 1 and unimodular rotation")
}

fn draw_function(spec: &SampleSpec, rng: &mut impl Rng) -> TruncatedSeries {
    let order = spec.coeff_order;
    match spec.kind {
        SampleKind::Mobius => {
            TruncatedSeries::from_factor(random_factor(rng), order).expect("order >= 1")
        }
        SampleKind::FiniteBlaschkeCombo => {
            let n_terms = rng.random_range(1..=3);
            let mut terms: Vec<(f64, Vec<MobiusFactor>)> = (0..n_terms)
                .map(|_| {
                    let w: f64 = rng.random_range(f64::EPSILON..=1.0);
                    let n_factors = rng.random_range(1..=3);
                    (w, (0..n_factors).map(|_| random_factor(rng)).collect())
                })
                .collect();
            let total: f64 = terms.iter().map(|(w, _)| w).sum();
            for (w, _) in &mut terms {
                *w /= total;
            }
            TruncatedSeries::blaschke_combo(
                BlaschkeCombo {
                    scale: COMBO_SCALE,
                    terms,
                },
                order,
            )
            .expect("valid combination")
        }
        SampleKind::ScaledPolynomial => {
            let degree = rng.random_range(1..=MAX_POLY_DEGREE.min(order));
            let raw: Vec<Complex> = (0..=degree)
                .map(|_| Complex::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
                .collect();
            let poly = TruncatedSeries::polynomial(raw).expect("finite coefficients");
            let grid_max = boundary_grid(1.0)
                .map(|z| poly.horner(z).norm())
                .fold(0.0, f64::max);
            // Bernstein: between grid points the modulus can grow by at most
            // a factor 1/(1 − π·deg/N).
            let sup = grid_max / (1.0 - PI * degree as f64 / BOUNDARY_POINTS as f64);
            let scale = 1.0 / (1.01 * sup.max(f64::MIN_POSITIVE));
            TruncatedSeries::polynomial(poly.coeffs().iter().map(|c| c * scale).collect())
                .expect("finite coefficients")
        }
    }
}

fn boundary_grid(radius: f64) -> impl Iterator<Item = Complex> {
    (0..BOUNDARY_POINTS)
        .map(move |j| Complex::from_polar(radius, TAU * j as f64 / BOUNDARY_POINTS as f64))
}

/// Points `r·e^{2πij/n}`, `j < n`.
pub fn circle_points(r: f64, n: usize) -> impl Iterator<Item = Complex> {
    (0..n).map(move |j| Complex::from_polar(r, TAU * j as f64 / n as f64))
}

/// Draws sample `index` of `spec`; identical `(spec, index)` gives identical coefficients.
pub fn sample_bounded_function(spec: &SampleSpec, index: u64) -> TruncatedSeries {
    draw_function(spec, &mut stream(spec.seed, index))
}

/// Largest `|f(0.999·e^{iθ})|` over the boundary grid, from the closed form
/// when available and from the retained polynomial plus its tail otherwise.
pub fn boundary_audit(f: &TruncatedSeries) -> f64 {
    boundary_grid(AUDIT_RADIUS)
        .map(|z| match f.eval_closed_form(z) {
            Some(v) => v.norm(),
            None => f.horner(z).norm() + f.tail_bound(AUDIT_RADIUS).unwrap_or(f64::INFINITY),
        })
        .fold(0.0, f64::max)
}

/// Harmonic pair whose analytic part is sample `index` of `spec`, with
/// `g' = λk·ω·h'` for `λ ∈ (0,1]` and `ω` either a unimodular constant or a
/// disk automorphism, integrated termwise with `g(0) = 0`.
pub fn sample_harmonic_pair(spec: &SampleSpec, index: u64, k: f64) -> Result<HarmonicPair> {
    let mut rng = stream(spec.seed, index);
    let h = draw_function(spec, &mut rng);
    let lambda: f64 = rng.random_range(f64::EPSILON..=1.0);
    // g' = λk·ω·h' is not a polynomial even when h is, so g keeps the full order.
    let order = h.order().max(spec.coeff_order);
    let omega: Vec<Complex> = if rng.random_bool(0.5) {
        vec![unimodular(&mut rng)]
    } else {
        random_factor(&mut rng).coefficients(order.saturating_sub(1))
    };
    let scale = lambda * k;

    let dh: Vec<Complex> = (1..=h.order()).map(|n| h.coeffs()[n] * n as f64).collect();
    let product = if order == 0 {
        Vec::new()
    } else {
        truncated_product(&dh, &omega, order - 1)
    };
    let mut b = vec![Complex::new(0.0, 0.0); order + 1];
    for (n, p) in product.iter().enumerate() {
        b[n + 1] = p * (scale / (n + 1) as f64);
    }

    // |n b_n| ≤ λk·max_{|z|=t}|h'| / t^{n−1}; summing n > N gives a geometric tail.
    let t = PAIR_TAIL_RADIUS;
    let g_tail = match h.tail().derivative_bound(1, t) {
        Some(dtail) => {
            let sup_dh: f64 = dh
                .iter()
                .enumerate()
                .map(|(j, c)| c.norm() * t.powi(j as i32))
                .sum::<f64>()
                + dtail;
            let n1 = order as f64 + 1.0;
            Tail::Geometric(vec![GeometricTail {
                log_scale: (scale * sup_dh * t / n1).ln() - n1 * t.ln(),
                ratio: 1.0 / t,
                start: order as u32 + 1,
                dilation: 1,
            }])
        }
        None => Tail::Unknown,
    };
    let g = TruncatedSeries::raw(b, g_tail)?;
    HarmonicPair::new(h, g, k)
}

/// What a sweep verified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    Radius { family: RadiusFamily },
    Rogosinski { max_n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub sample: u64,
    pub r: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: Check,
    pub sample_kind: SampleKind,
    pub seed: u64,
    /// Certified radius of the inequality being checked.
    pub radius: f64,
    pub radius_used: f64,
    /// Admissible samples evaluated.
    pub trials: usize,
    /// Largest normalized value; the inequality reads `value ≤ 1`.
    pub max_value: f64,
    pub violations: Vec<Violation>,
    /// Samples that failed their class audit and were excluded.
    pub inadmissible: Vec<u64>,
    /// Largest truncation error bound among the trials, when all were rigorous.
    pub max_error_bound: Option<f64>,
    pub runtime_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.inadmissible.is_empty()
    }
}

struct Outcome {
    index: u64,
    admissible: bool,
    value: f64,
    error_bound: Option<f64>,
}

fn max_over_circle<F>(r: f64, mut eval: F) -> Result<(f64, Option<f64>)>
where
    F: FnMut(Complex) -> Result<FunctionalResult>,
{
    let mut best = f64::NEG_INFINITY;
    let mut err = Some(0.0_f64);
    // Every point on the circle shares the majorant part; only the pointwise part moves.
    let n = if r == 0.0 { 1 } else { CIRCLE_POINTS };
    for z in circle_points(r, n) {
        let v = eval(z)?;
        best = best.max(v.value);
        err = match (err, v.error_bound) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    Ok((best, err))
}

fn evaluate_sample(
    family: &RadiusFamily,
    spec: &SampleSpec,
    index: u64,
    r: f64,
) -> Result<Outcome> {
    let m = family.m();
    let reject = Outcome {
        index,
        admissible: false,
        value: f64::NAN,
        error_bound: None,
    };
    let (value, error_bound) = match family.kind() {
        FamilyKind::Phi | FamilyKind::Psi | FamilyKind::PhiCap => {
            let f = sample_bounded_function(spec, index);
            if boundary_audit(&f) >= 1.0 {
                return Ok(reject);
            }
            match family.kind() {
                FamilyKind::Phi => max_over_circle(r, |z| functional_a_at(&f, m, z))?,
                FamilyKind::Psi => max_over_circle(r, |z| functional_b_at(&f, m, z))?,
                _ => max_over_circle(r, |z| functional_c_at(&f, m, z))?,
            }
        }
        FamilyKind::Lambda | FamilyKind::LambdaCap => {
            let pair = match sample_harmonic_pair(spec, index, family.k()) {
                Ok(p) if boundary_audit(p.h()) < 1.0 => p,
                _ => return Ok(reject),
            };
            if family.kind() == FamilyKind::Lambda {
                max_over_circle(r, |z| functional_d_at(&pair, m, z))?
            } else {
                max_over_circle(r, |z| functional_e_at(&pair, m, z))?
            }
        }
    };
    Ok(Outcome {
        index,
        admissible: true,
        value,
        error_bound,
    })
}

fn reduce(
    check: Check,
    spec: &SampleSpec,
    radius: f64,
    radius_used: f64,
    outcomes: Vec<Outcome>,
    started: Instant,
) -> VerificationReport {
    let mut report = VerificationReport {
        check,
        sample_kind: spec.kind,
        seed: spec.seed,
        radius,
        radius_used,
        trials: 0,
        max_value: f64::NEG_INFINITY,
        violations: Vec::new(),
        inadmissible: Vec::new(),
        max_error_bound: Some(0.0),
        runtime_seconds: 0.0,
    };
    for o in outcomes {
        if !o.admissible {
            report.inadmissible.push(o.index);
            continue;
        }
        report.trials += 1;
        report.max_value = report.max_value.max(o.value);
        report.max_error_bound = match (report.max_error_bound, o.error_bound) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        if o.value > 1.0 + VIOLATION_TOL {
            report.violations.push(Violation {
                sample: o.index,
                r: radius_used,
                value: o.value,
            });
        }
    }
    report.runtime_seconds = started.elapsed().as_secs_f64();
    report
}

/// Evaluates the family's functional for every sample at `r = r_fraction·radius`,
/// maximizing the pointwise part over `CIRCLE_POINTS` points of `|z| = r`.
pub fn verify_family(
    family: &RadiusFamily,
    spec: &SampleSpec,
    r_fraction: f64,
) -> Result<VerificationReport> {
    spec.validate()?;
    let started = Instant::now();
    let radius = compute_radius(family)?.value;
    let r = r_fraction * radius;
    if !(r_fraction > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "r_fraction * radius",
            value: r,
            domain: "(0, 1)",
        });
    }
    let outcomes = (0..spec.count as u64)
        .into_par_iter()
        .map(|i| evaluate_sample(family, spec, i, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce(
        Check::Radius { family: *family },
        spec,
        radius,
        r,
        outcomes,
        started,
    ))
}

/// Radial layers of the polar grid used for the derivative partial sums.
const ROGOSINSKI_LAYERS: usize = 5;
const ROGOSINSKI_ANGLES: usize = 16;

/// Checks `|Σ_{k≤n} f^{(k)}(z)/k!·z^k| ≤ Σ_{k≤n} C(−1/2,k)²` for `n ≤ max_n`
/// on a polar grid of `|z| ≤ r_fraction/2`. The reported value is
/// `1 + partial − bound`, so the inequality again reads `value ≤ 1`.
pub fn verify_rogosinski(
    spec: &SampleSpec,
    r_fraction: f64,
    max_n: usize,
) -> Result<VerificationReport> {
    spec.validate()?;
    if max_n > spec.coeff_order {
        return Err(Error::InvalidParameter(format!(
            "partial sum index {max_n} exceeds coefficient order {}",
            spec.coeff_order
        )));
    }
    let started = Instant::now();
    let radius = classical_constants().1;
    let r = r_fraction * radius;
    if !(r_fraction > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "r_fraction * 1/2",
            value: r,
            domain: "(0, 1)",
        });
    }
    let bounds: Vec<f64> = (0..=max_n).map(rogosinski_bound).collect();
    let mut grid = vec![Complex::new(0.0, 0.0)];
    for layer in 1..=ROGOSINSKI_LAYERS {
        grid.extend(circle_points(
            r * layer as f64 / ROGOSINSKI_LAYERS as f64,
            ROGOSINSKI_ANGLES,
        ));
    }
    let outcomes = (0..spec.count as u64)
        .into_par_iter()
        .map(|i| {
            let f = sample_bounded_function(spec, i);
            if boundary_audit(&f) >= 1.0 {
                return Ok(Outcome {
                    index: i,
                    admissible: false,
                    value: f64::NAN,
                    error_bound: None,
                });
            }
            let mut worst = f64::NEG_INFINITY;
            for &z in &grid {
                let partials = rogosinski_partials(&f, z, max_n)?;
                for (p, b) in partials.iter().zip(&bounds) {
                    worst = worst.max(1.0 + p - b);
                }
            }
            // Truncation moves each term f^{(k)}(z)/k!·z^k by at most the
            // tail's k-th normalized derivative bound times r^k.
            let err = (0..=max_n)
                .map(|k| {
                    f.tail()
                        .derivative_bound(k, r)
                        .map(|b| b * r.powi(k as i32))
                })
                .sum::<Option<f64>>();
            Ok(Outcome {
                index: i,
                admissible: true,
                value: worst,
                error_bound: err,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce(
        Check::Rogosinski { max_n },
        spec,
        radius,
        r,
        outcomes,
        started,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessRow {
    pub a: f64,
    /// Extremal functional at `z = r`; `None` when `(a, r)` leaves the regime
    /// in which the extremal formula is valid.
    pub value: Option<f64>,
    pub gap: f64,
    pub exceeds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub family: RadiusFamily,
    pub radius: f64,
    pub r_multiplier: f64,
    pub r: f64,
    pub lambda: f64,
    pub rows: Vec<SharpnessRow>,
    /// Some row exceeded 1.
    pub confirmed: bool,
    /// Some row was skipped because the extremal regime did not hold.
    pub regime_binding: bool,
}

/// Evaluates the extremal closed form at `r = r_multiplier·radius` for each `a`.
/// `lambda = None` uses [`extremal::default_lambda`].
pub fn probe_sharpness(
    family: &RadiusFamily,
    a_values: &[f64],
    r_multiplier: f64,
    lambda: Option<f64>,
) -> Result<SharpnessReport> {
    let radius = compute_radius(family)?.value;
    let r = r_multiplier * radius;
    if !(r_multiplier > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "r_multiplier * radius",
            value: r,
            domain: "(0, 1)",
        });
    }
    let lambda = lambda.unwrap_or_else(|| extremal::default_lambda(family));
    let mut rows = Vec::with_capacity(a_values.len());
    for &a in a_values {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::Domain {
                name: "a",
                value: a,
                domain: "[0, 1)",
            });
        }
        let gap = sharpness_gap(family, a, r, lambda)?;
        let value = extremal::value(family, a, r, lambda);
        rows.push(SharpnessRow {
            a,
            value,
            gap,
            exceeds: value.is_some_and(|v| v > 1.0),
        });
    }
    Ok(SharpnessReport {
        family: *family,
        radius,
        r_multiplier,
        r,
        lambda,
        confirmed: rows.iter().any(|row| row.exceeds),
        regime_binding: rows.iter().any(|row| row.value.is_none()),
        rows,
    })
}
