//! Left-hand sides of the Bohr–Rogosinski inequalities.
//!
//! All five Bohr-type functionals mix a pointwise part evaluated at `z^m`
//! with coefficient majorants in `r = |z|`. The `*_at` variants take a point
//! `z`; the plain versions evaluate on the positive axis `z = r`, where the
//! extremal Möbius maps attain the closed forms in [`extremal`].

use num_complex::Complex64 as Complex;
use serde::Serialize;

use crate::error::{check_closed_unit_interval, check_unit_interval, Error, Result};
use crate::radii::{FamilyKind, RadiusFamily};
use crate::series::{taylor_shift, TruncatedSeries, DEFAULT_ORDER};

/// Derivative terms summed in `B_f` before switching to a tail bound.
pub const B_MAX_TERMS: usize = 512;

/// Coefficients whose contribution at the working radius is below this are
/// dropped from the `B_f` Taylor shift and accounted for in the error bound.
const TRIM_EPS: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Component {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalResult {
    pub value: f64,
    pub components: Vec<Component>,
    /// Set when every truncated quantity came with a known tail bound.
    pub rigorous: bool,
    /// Upper bound on `|value − true value|`, present when `rigorous`.
    pub error_bound: Option<f64>,
    /// False when the evaluation point lies outside the region where the
    /// corresponding inequality is claimed.
    pub within_guarantee: bool,
}

impl FunctionalResult {
    fn new(
        parts: &[(&'static str, f64)],
        error_bound: Option<f64>,
        within_guarantee: bool,
    ) -> Self {
        let components: Vec<Component> = parts
            .iter()
            .map(|&(name, value)| Component { name, value })
            .collect();
        FunctionalResult {
            value: components.iter().map(|c| c.value).sum(),
            components,
            rigorous: error_bound.is_some(),
            error_bound,
            within_guarantee,
        }
    }
}

/// `f = h + conj(g)` with `|g'| ≤ k |h'|` on the disk and `g(0) = 0`.
#[derive(Debug, Clone)]
pub struct HarmonicPair {
    h: TruncatedSeries,
    g: TruncatedSeries,
    k_bound: f64,
}

/// Radii and angles of the dilatation audit grid (4 × 16 = 64 points).
const AUDIT_RADII: [f64; 4] = [0.225, 0.45, 0.675, 0.9];
const AUDIT_ANGLES: usize = 16;
const AUDIT_TOL: f64 = 1e-9;

impl HarmonicPair {
    /// Checks `g(0) = 0` and `|g'(z)| ≤ k |h'(z)| + 1e−9` on a 64-point grid in `|z| ≤ 0.9`.
    pub fn new(h: TruncatedSeries, g: TruncatedSeries, k_bound: f64) -> Result<Self> {
        check_closed_unit_interval("k", k_bound)?;
        if g.coeffs()[0] != Complex::new(0.0, 0.0) {
            return Err(Error::Inadmissible(format!(
                "co-analytic part must vanish at 0, got {}",
                g.coeffs()[0]
            )));
        }
        let pair = HarmonicPair { h, g, k_bound };
        if let Some((z, excess)) = pair.dilatation_excess() {
            return Err(Error::Inadmissible(format!(
                "|g'| exceeds k|h'| by {excess:.3e} at z = {z}"
            )));
        }
        Ok(pair)
    }

    /// `g = c·(h − h(0))`, so that `|g'| = |c|·|h'|` exactly; requires `|c| ≤ k`.
    pub fn scaled(h: TruncatedSeries, c: Complex, k_bound: f64) -> Result<Self> {
        check_closed_unit_interval("k", k_bound)?;
        if c.norm() > k_bound * (1.0 + 1e-15) {
            return Err(Error::Inadmissible(format!(
                "scale |c| = {} exceeds k = {k_bound}",
                c.norm()
            )));
        }
        let g = h.scaled_without_constant(c);
        Ok(HarmonicPair { h, g, k_bound })
    }

    /// `h = (z + a)/(1 + a z)`, `g = λk·(h − a)`: the extremal mapping `h + λk·conj(h)`
    /// up to an additive constant.
    pub fn extremal(a: f64, k: f64, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let h = TruncatedSeries::mobius(a, 1, DEFAULT_ORDER)?;
        Self::scaled(h, Complex::new(lambda * k, 0.0), k)
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn k_bound(&self) -> f64 {
        self.k_bound
    }

    fn dilatation_excess(&self) -> Option<(Complex, f64)> {
        let mut worst: Option<(Complex, f64)> = None;
        for &rad in &AUDIT_RADII {
            for j in 0..AUDIT_ANGLES {
                let z = Complex::from_polar(
                    rad,
                    std::f64::consts::TAU * j as f64 / AUDIT_ANGLES as f64,
                );
                let dh = taylor_shift(self.h.coeffs(), z, 2)
                    .get(1)
                    .copied()
                    .unwrap_or_default();
                let dg = taylor_shift(self.g.coeffs(), z, 2)
                    .get(1)
                    .copied()
                    .unwrap_or_default();
                let excess = dg.norm() - self.k_bound * dh.norm();
                if excess > AUDIT_TOL && worst.is_none_or(|(_, w)| excess > w) {
                    worst = Some((z, excess));
                }
            }
        }
        worst
    }

    /// `Σ_{n≥1} |b_n| rⁿ − k Σ_{n≥1} |a_n| rⁿ` over retained coefficients; the
    /// coefficient consequence of the dilatation bound says this is `≤ 0` for `r ≤ 1/3`.
    pub fn majorization_gap(&self, r: f64) -> Result<f64> {
        let b = self.g.majorant_sum(r, 1)?.truncated;
        let a = self.h.majorant_sum(r, 1)?.truncated;
        Ok(b - self.k_bound * a)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite("lambda"));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda,
            domain: "(0, 1]",
        });
    }
    Ok(())
}

fn check_z(z: Complex) -> Result<f64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("z"));
    }
    let r = z.norm();
    check_unit_interval("|z|", r)?;
    Ok(r)
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    Ok(())
}

/// `|Σ_{k=0}^{n} f^{(k)}(z)/k! · z^k|`.
pub fn rogosinski_partial(f: &TruncatedSeries, z: Complex, n: usize) -> Result<f64> {
    Ok(rogosinski_partials(f, z, n)?[n])
}

/// All partial sums `n = 0, …, max_n` at once.
/// Indices past the truncation order are allowed only when the tail is exactly zero.
pub fn rogosinski_partials(f: &TruncatedSeries, z: Complex, max_n: usize) -> Result<Vec<f64>> {
    check_z(z)?;
    if max_n > f.order() && !f.tail().is_exact() {
        return Err(Error::InvalidParameter(format!(
            "partial sum index {max_n} exceeds truncation order {}",
            f.order()
        )));
    }
    let derivs = f.normalized_derivatives(z, max_n + 1)?;
    let mut acc = Complex::new(0.0, 0.0);
    let mut zk = Complex::new(1.0, 0.0);
    let mut out = Vec::with_capacity(max_n + 1);
    for j in 0..=max_n {
        if let Some(&d) = derivs.get(j) {
            acc += d * zk;
        }
        zk *= z;
        out.push(acc.norm());
    }
    Ok(out)
}

/// `Σ_{k=0}^{n} C(−1/2, k)²`, using `|C(−1/2, k)| = C(2k, k)/4^k`.
pub fn rogosinski_bound(n: usize) -> f64 {
    let mut c = 1.0_f64;
    let mut sum = 1.0;
    for k in 1..=n {
        c *= (2 * k - 1) as f64 / (2 * k) as f64;
        sum += c * c;
    }
    sum
}

/// Pointwise part `|f(w)|` and `|f'(w)|` at `w = z^m` plus their truncation bounds.
struct PointTerms {
    value: f64,
    derivative: f64,
    error_value: Option<f64>,
    error_derivative: Option<f64>,
}

fn point_terms(f: &TruncatedSeries, w: Complex) -> PointTerms {
    let d = taylor_shift(f.coeffs(), w, 2);
    let s = w.norm();
    PointTerms {
        value: d[0].norm(),
        derivative: d.get(1).map_or(0.0, |c| c.norm()),
        error_value: f.tail().bound(s),
        error_derivative: f.tail().derivative_bound(1, s),
    }
}

fn sum_opt(parts: &[Option<f64>]) -> Option<f64> {
    parts.iter().try_fold(0.0, |acc, p| p.map(|v| acc + v))
}

/// `|f(z^m)| + |z^m| |f'(z^m)| + Σ_{k≥2} |a_k| r^k` at `z`.
pub fn functional_a_at(f: &TruncatedSeries, m: u32, z: Complex) -> Result<FunctionalResult> {
    check_m(m)?;
    let r = check_z(z)?;
    let rm = r.powi(m as i32);
    let p = point_terms(f, z.powu(m));
    let maj = f.majorant_sum(r, 2)?;
    let err = sum_opt(&[
        p.error_value,
        p.error_derivative.map(|e| rm * e),
        f.tail_bound(r),
    ]);
    Ok(FunctionalResult::new(
        &[
            ("f(z^m)", p.value),
            ("|z^m| f'(z^m)", rm * p.derivative),
            ("sum_{k>=2} |a_k| r^k", maj.truncated),
        ],
        err,
        true,
    ))
}

pub fn functional_a(f: &TruncatedSeries, m: u32, r: f64) -> Result<FunctionalResult> {
    check_unit_interval("r", r)?;
    functional_a_at(f, m, Complex::new(r, 0.0))
}

/// `|f(z^m)| + Σ_{k≥2} |f^{(k)}(z^m)/k!| r^k`; needs `r + r^m < 1`.
pub fn functional_b_at(f: &TruncatedSeries, m: u32, z: Complex) -> Result<FunctionalResult> {
    check_m(m)?;
    let r = check_z(z)?;
    let rm = r.powi(m as i32);
    let s = r + rm;
    if s >= 1.0 {
        return Err(Error::Domain {
            name: "r + r^m",
            value: s,
            domain: "[0, 1)",
        });
    }
    let w = z.powu(m);
    // Σ_k C(n,k)|w|^{n−k} r^k = (|w| + r)^n, so every coefficient dropped
    // below costs at most |a_n| sⁿ in total.
    let (cut, dropped) = f.effective_order(s, TRIM_EPS, 2.min(f.order()));
    let terms = cut.min(B_MAX_TERMS);
    let derivs = taylor_shift(&f.coeffs()[..=cut], w, terms + 1);
    let series: f64 = derivs
        .iter()
        .enumerate()
        .skip(2)
        .rev()
        .map(|(k, d)| d.norm() * r.powi(k as i32))
        .sum();
    let beyond: f64 = (terms + 1..=cut)
        .map(|n| f.coeffs()[n].norm() * s.powi(n as i32))
        .sum();
    let err = f.tail_bound(s).map(|t| t + dropped + beyond);
    Ok(FunctionalResult::new(
        &[
            ("f(z^m)", derivs[0].norm()),
            ("sum_{k>=2} |f^(k)(z^m)/k!| r^k", series),
        ],
        err,
        true,
    ))
}

pub fn functional_b(f: &TruncatedSeries, m: u32, r: f64) -> Result<FunctionalResult> {
    check_unit_interval("r", r)?;
    functional_b_at(f, m, Complex::new(r, 0.0))
}

/// `|f(z^m)| + |z| |f'(z^m)| + Σ_{k≥2} |a_k| r^k`; the derivative weight is `r`, not `r^m`.
pub fn functional_c_at(f: &TruncatedSeries, m: u32, z: Complex) -> Result<FunctionalResult> {
    check_m(m)?;
    let r = check_z(z)?;
    let p = point_terms(f, z.powu(m));
    let maj = f.majorant_sum(r, 2)?;
    let err = sum_opt(&[
        p.error_value,
        p.error_derivative.map(|e| r * e),
        f.tail_bound(r),
    ]);
    Ok(FunctionalResult::new(
        &[
            ("f(z^m)", p.value),
            ("|z| f'(z^m)", r * p.derivative),
            ("sum_{k>=2} |a_k| r^k", maj.truncated),
        ],
        err,
        true,
    ))
}

pub fn functional_c(f: &TruncatedSeries, m: u32, r: f64) -> Result<FunctionalResult> {
    check_unit_interval("r", r)?;
    functional_c_at(f, m, Complex::new(r, 0.0))
}

/// `|h(z^m)| + Σ_{n≥1} |a_n| rⁿ + Σ_{n≥1} |b_n| rⁿ`.
///
/// The coefficient comparison behind the inequality needs `r ≤ 1/3`; larger
/// `r` is evaluated but reported with `within_guarantee = false`.
pub fn functional_d_at(pair: &HarmonicPair, m: u32, z: Complex) -> Result<FunctionalResult> {
    check_m(m)?;
    let r = check_z(z)?;
    let w = z.powu(m);
    let h_w = pair.h.horner(w).norm();
    let a = pair.h.majorant_sum(r, 1)?;
    let b = pair.g.majorant_sum(r, 1)?;
    let err = sum_opt(&[
        pair.h.tail_bound(w.norm()),
        pair.h.tail_bound(r),
        pair.g.tail_bound(r),
    ]);
    Ok(FunctionalResult::new(
        &[
            ("h(z^m)", h_w),
            ("sum_{n>=1} |a_n| r^n", a.truncated),
            ("sum_{n>=1} |b_n| r^n", b.truncated),
        ],
        err,
        r <= 1.0 / 3.0,
    ))
}

pub fn functional_d(pair: &HarmonicPair, m: u32, r: f64) -> Result<FunctionalResult> {
    check_unit_interval("r", r)?;
    functional_d_at(pair, m, Complex::new(r, 0.0))
}

/// `|h(z^m)| + |z^m| |h'(z^m)| + Σ_{n≥2} |a_n| rⁿ + Σ_{n≥1} |b_n| rⁿ`.
pub fn functional_e_at(pair: &HarmonicPair, m: u32, z: Complex) -> Result<FunctionalResult> {
    check_m(m)?;
    let r = check_z(z)?;
    let rm = r.powi(m as i32);
    let p = point_terms(&pair.h, z.powu(m));
    let a = pair.h.majorant_sum(r, 2)?;
    let b = pair.g.majorant_sum(r, 1)?;
    let err = sum_opt(&[
        p.error_value,
        p.error_derivative.map(|e| rm * e),
        pair.h.tail_bound(r),
        pair.g.tail_bound(r),
    ]);
    Ok(FunctionalResult::new(
        &[
            ("h(z^m)", p.value),
            ("|z^m| h'(z^m)", rm * p.derivative),
            ("sum_{n>=2} |a_n| r^n", a.truncated),
            ("sum_{n>=1} |b_n| r^n", b.truncated),
        ],
        err,
        r <= 1.0 / 3.0,
    ))
}

pub fn functional_e(pair: &HarmonicPair, m: u32, r: f64) -> Result<FunctionalResult> {
    check_unit_interval("r", r)?;
    functional_e_at(pair, m, Complex::new(r, 0.0))
}

/// Signed gap polynomial of the extremal family at `(a, r)`.
///
/// The extremal functional exceeds 1 exactly when the gap is positive. At
/// `a = 1` (with `λ = 1` for `lambda`, `λ = k` for `Lambda`) each gap reduces
/// to the family's radius equation. `a = 1` is accepted for that check.
pub fn sharpness_gap(family: &RadiusFamily, a: f64, r: f64, lambda: f64) -> Result<f64> {
    check_closed_unit_interval("a", a)?;
    check_unit_interval("r", r)?;
    check_lambda(lambda)?;
    let rm = r.powi(family.m() as i32);
    let r2m = rm * rm;
    let k = family.k();
    Ok(match family.kind() {
        FamilyKind::Phi => {
            (1.0 - a * r) * (a * r2m + 2.0 * rm - 1.0)
                + a * r * r * (1.0 + a) * (1.0 + a * rm).powi(2)
        }
        FamilyKind::Psi => {
            a * (1.0 + a) * r * r - (1.0 + rm) * (1.0 - a * rm) * (1.0 - a * rm - a * r)
        }
        FamilyKind::PhiCap => {
            r * (1.0 + a) + a * a * rm * r * r * (1.0 + a) * (2.0 + a * rm)
                - (1.0 - rm) * (1.0 + a * rm) * (1.0 - a * r)
        }
        FamilyKind::Lambda => {
            (1.0 + lambda * k) * (1.0 + a) * r * (1.0 + a * rm) - (1.0 - rm) * (1.0 - a * r)
        }
        FamilyKind::LambdaCap => {
            (1.0 - a * r) * (a * r2m + 2.0 * rm - 1.0)
                + a * r * (1.0 + a) * (r + lambda) * (1.0 + a * rm).powi(2)
        }
    })
}

/// Closed forms of the functionals on the extremal families, evaluated at `z = r`.
///
/// Each has a direct form (term by term) and a gap form `1 + (1−a)·gap/denominator`.
pub mod extremal {
    use super::*;

    /// `A_f` for `f = (a+z)/(1+az)`.
    pub fn a_value(a: f64, m: u32, r: f64) -> f64 {
        let rm = r.powi(m as i32);
        (a + 2.0 * rm + a * rm * rm) / (1.0 + a * rm).powi(2)
            + (1.0 - a * a) * a * r * r / (1.0 - a * r)
    }

    pub fn a_gap_form(a: f64, m: u32, r: f64) -> f64 {
        let fam = RadiusFamily::phi(m).expect("m >= 1");
        let rm = r.powi(m as i32);
        let gap = sharpness_gap(&fam, a, r, 1.0).expect("validated ranges");
        1.0 + (1.0 - a) * gap / ((1.0 + a * rm).powi(2) * (1.0 - a * r))
    }

    /// Whether `g(z) = f(−z)` at `z = r` lies in the regime of the closed form:
    /// `r^m ≤ a` and `a(r + r^m) < 1`.
    pub fn b_regime(a: f64, m: u32, r: f64) -> bool {
        let rm = r.powi(m as i32);
        rm <= a && a * (r + rm) < 1.0
    }

    /// `B_g` for `g(z) = (a−z)/(1−az)`; `None` outside [`b_regime`].
    pub fn b_value(a: f64, m: u32, r: f64) -> Option<f64> {
        if !b_regime(a, m, r) {
            return None;
        }
        let rm = r.powi(m as i32);
        let d = 1.0 - a * rm;
        Some((a - rm) / d + a * r * r * (1.0 - a * a) / (d * d * (d - a * r)))
    }

    pub fn b_gap_form(a: f64, m: u32, r: f64) -> Option<f64> {
        if !b_regime(a, m, r) {
            return None;
        }
        let fam = RadiusFamily::psi(m).expect("m >= 1");
        let rm = r.powi(m as i32);
        let gap = sharpness_gap(&fam, a, r, 1.0).ok()?;
        let d = 1.0 - a * rm;
        Some(1.0 + (1.0 - a) * gap / (d * d * (d - a * r)))
    }

    /// `C_f` for `f = (a+z)/(1+az)`.
    pub fn c_value(a: f64, m: u32, r: f64) -> f64 {
        let rm = r.powi(m as i32);
        ((rm + a) * (1.0 + a * rm) + r * (1.0 - a * a)) / (1.0 + a * rm).powi(2)
            + (1.0 - a * a) * a * r * r / (1.0 - a * r)
    }

    /// Gap form of `C_f`; the denominator carries `(1 − a r)`.
    pub fn c_gap_form(a: f64, m: u32, r: f64) -> f64 {
        let fam = RadiusFamily::phi_cap(m).expect("m >= 1");
        let rm = r.powi(m as i32);
        let gap = sharpness_gap(&fam, a, r, 1.0).expect("validated ranges");
        1.0 + (1.0 - a) * gap / ((1.0 + a * rm).powi(2) * (1.0 - a * r))
    }

    /// `D_f` for `h = (z+a)/(1+az)`, `g = λk(h − a)`.
    pub fn d_value(a: f64, m: u32, r: f64, k: f64, lambda: f64) -> f64 {
        let rm = r.powi(m as i32);
        (rm + a) / (1.0 + a * rm) + (lambda * k + 1.0) * r * (1.0 - a * a) / (1.0 - r * a)
    }

    pub fn d_gap_form(a: f64, m: u32, r: f64, k: f64, lambda: f64) -> f64 {
        let fam = RadiusFamily::lambda(m, k).expect("valid family");
        let rm = r.powi(m as i32);
        let gap = sharpness_gap(&fam, a, r, lambda).expect("validated ranges");
        1.0 + (1.0 - a) * gap / ((1.0 + a * rm) * (1.0 - a * r))
    }

    /// `E_f` in the parametrization where the co-analytic part is `g = aλ(h − a)`.
    pub fn e_value(a: f64, m: u32, r: f64, lambda: f64) -> f64 {
        let rm = r.powi(m as i32);
        (a + 2.0 * rm + a * rm * rm) / (1.0 + a * rm).powi(2)
            + a * r * (1.0 - a * a) * (r + lambda) / (1.0 - a * r)
    }

    pub fn e_gap_form(a: f64, m: u32, r: f64, lambda: f64) -> f64 {
        // k only enters the gap through λ for this family.
        let fam = RadiusFamily::lambda_cap(m, 1.0).expect("valid family");
        let rm = r.powi(m as i32);
        let gap = sharpness_gap(&fam, a, r, lambda).expect("validated ranges");
        1.0 + (1.0 - a) * gap / ((1.0 + a * rm).powi(2) * (1.0 - a * r))
    }

    /// Pair realizing [`e_value`]: `h = (z+a)/(1+az)`, `g = aλ(h − a)`. Admissible iff `aλ ≤ k`.
    pub fn e_pair(a: f64, k: f64, lambda: f64) -> Result<HarmonicPair> {
        check_lambda(lambda)?;
        let h = TruncatedSeries::mobius(a, 1, DEFAULT_ORDER)?;
        HarmonicPair::scaled(h, Complex::new(a * lambda, 0.0), k)
    }

    /// Direct closed form of the family's extremal functional; `None` when
    /// `(a, r)` leaves the formula's regime.
    pub fn value(family: &RadiusFamily, a: f64, r: f64, lambda: f64) -> Option<f64> {
        let m = family.m();
        let v = match family.kind() {
            FamilyKind::Phi => a_value(a, m, r),
            FamilyKind::Psi => b_value(a, m, r)?,
            FamilyKind::PhiCap => c_value(a, m, r),
            FamilyKind::Lambda => d_value(a, m, r, family.k(), lambda),
            FamilyKind::LambdaCap => {
                if a * lambda > family.k() {
                    return None;
                }
                e_value(a, m, r, lambda)
            }
        };
        Some(v)
    }

    /// Default `λ` for sharpness probes: `1` for `lambda`, `k` for `Lambda`.
    pub fn default_lambda(family: &RadiusFamily) -> f64 {
        match family.kind() {
            FamilyKind::LambdaCap if family.k() > 0.0 => family.k(),
            _ => 1.0,
        }
    }
}
