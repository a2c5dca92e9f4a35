//! Truncated Taylor expansions on the unit disk.
//!
//! A [`TruncatedSeries`] keeps the coefficients `a_0, …, a_N` of an analytic
//! function together with a [`Tail`] that bounds `Σ_{n>N} |a_n| rⁿ` from
//! above. Every family the crate constructs itself (Möbius maps, convex
//! combinations of Blaschke products, polynomials) carries an exact or
//! Cauchy-estimate geometric tail, so truncation never silently loses rigor.
//! Series built from user data without a tail are flagged non-rigorous.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as Complex;
use serde::Serialize;

use crate::error::{check_closed_unit_interval, check_unit_interval, Error, Result};

/// Number of retained coefficients used by the library families unless the
/// caller asks for something else.
pub const DEFAULT_ORDER: usize = 256;

/// `exp(log_scale) · s^start / (1 − ratio·s)` with `s = r^dilation`.
///
/// Kept in log form so that Cauchy-estimate tails with huge constants and
/// tiny powers do not overflow on the way to a small product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometricTail {
    pub log_scale: f64,
    pub ratio: f64,
    pub start: u32,
    pub dilation: u32,
}

impl GeometricTail {
    pub fn bound(&self, r: f64) -> f64 {
        if self.log_scale == f64::NEG_INFINITY {
            return 0.0;
        }
        let s = r.powi(self.dilation as i32);
        if s == 0.0 {
            return 0.0;
        }
        let denom = 1.0 - self.ratio * s;
        if denom <= 0.0 {
            return f64::INFINITY;
        }
        (self.log_scale + f64::from(self.start) * s.ln()).exp() / denom
    }
}

type TailFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Upper bound for the discarded part `Σ_{n>N} |a_n| rⁿ` of a series.
#[derive(Clone)]
pub enum Tail {
    /// Sum of geometric majorants. An empty list means the series is an
    /// exact polynomial.
    Geometric(Vec<GeometricTail>),
    /// Caller-supplied bound; must be nondecreasing on `[0, 1)` and vanish at 0.
    Custom(TailFn),
    /// No bound is known; values derived from the series are truncated-only.
    Unknown,
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Geometric(terms) => f.debug_tuple("Geometric").field(terms).finish(),
            Tail::Custom(_) => f.write_str("Custom(..)"),
            Tail::Unknown => f.write_str("Unknown"),
        }
    }
}

impl Tail {
    pub fn exact() -> Self {
        Tail::Geometric(Vec::new())
    }

    pub fn custom<F>(bound: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Tail::Custom(Arc::new(bound))
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, Tail::Unknown)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Tail::Geometric(terms) if terms.is_empty())
    }

    pub fn bound(&self, r: f64) -> Option<f64> {
        match self {
            Tail::Geometric(terms) => Some(terms.iter().map(|t| t.bound(r)).sum()),
            Tail::Custom(f) => Some(f(r)),
            Tail::Unknown => None,
        }
    }

    /// Bound on `Σ_{n>N} C(n,k) |a_n| s^{n−k}`, i.e. the tail of the k-th
    /// normalized derivative at modulus `s`.
    ///
    /// Uses `C(n,k) s^{n−k} (t−s)^k ≤ tⁿ` with `t = (1+s)/2`.
    pub fn derivative_bound(&self, k: usize, s: f64) -> Option<f64> {
        if self.is_exact() {
            return Some(0.0);
        }
        if k == 0 {
            return self.bound(s);
        }
        let t = 0.5 * (1.0 + s);
        self.bound(t).map(|b| b / (t - s).powi(k as i32))
    }

    /// Tail of `f(z^m)` given the tail of `f`.
    pub fn dilate(&self, m: u32) -> Tail {
        match self {
            Tail::Geometric(terms) => Tail::Geometric(
                terms
                    .iter()
                    .map(|t| GeometricTail {
                        dilation: t.dilation * m,
                        ..*t
                    })
                    .collect(),
            ),
            Tail::Custom(f) => {
                let f = Arc::clone(f);
                Tail::Custom(Arc::new(move |r: f64| f(r.powi(m as i32))))
            }
            Tail::Unknown => Tail::Unknown,
        }
    }

    /// Tail of `c·f` for a constant with `|c| = factor`.
    pub fn scale(&self, factor: f64) -> Tail {
        debug_assert!(factor >= 0.0);
        match self {
            Tail::Geometric(terms) => Tail::Geometric(
                terms
                    .iter()
                    .map(|t| GeometricTail {
                        log_scale: t.log_scale + factor.ln(),
                        ..*t
                    })
                    .collect(),
            ),
            Tail::Custom(f) => {
                let f = Arc::clone(f);
                Tail::Custom(Arc::new(move |r: f64| factor * f(r)))
            }
            Tail::Unknown => Tail::Unknown,
        }
    }

    pub fn add(&self, other: &Tail) -> Tail {
        match (self, other) {
            (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
            (Tail::Geometric(a), Tail::Geometric(b)) => {
                Tail::Geometric(a.iter().chain(b.iter()).copied().collect())
            }
            (a, b) => {
                let (a, b) = (a.clone(), b.clone());
                Tail::custom(move |r| {
                    a.bound(r).unwrap_or(f64::INFINITY) + b.bound(r).unwrap_or(f64::INFINITY)
                })
            }
        }
    }
}

/// `rotation · (center + z) / (1 + conj(center)·z)`, a disk automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusFactor {
    pub center: Complex,
    pub rotation: Complex,
}

impl MobiusFactor {
    pub fn new(center: Complex, rotation: Complex) -> Result<Self> {
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::NonFinite("Möbius center"));
        }
        if !(rotation.re.is_finite() && rotation.im.is_finite()) {
            return Err(Error::NonFinite("Möbius rotation"));
        }
        if center.norm() >= 1.0 {
            return Err(Error::Domain {
                name: "|center|",
                value: center.norm(),
                domain: "[0, 1)",
            });
        }
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain {
                name: "|rotation|",
                value: rotation.norm(),
                domain: "{1}",
            });
        }
        Ok(MobiusFactor { center, rotation })
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.rotation * (self.center + z) / (Complex::new(1.0, 0.0) + self.center.conj() * z)
    }

    /// `c_0 = ω·α`, `c_n = ω·(1 − |α|²)·(−ᾱ)^{n−1}`.
    pub fn coefficients(&self, order: usize) -> Vec<Complex> {
        let mut out = Vec::with_capacity(order + 1);
        out.push(self.rotation * self.center);
        let step = -self.center.conj();
        let mut c = self.rotation * (1.0 - self.center.norm_sqr());
        for _ in 1..=order {
            out.push(c);
            c *= step;
        }
        out
    }

    /// Exact geometric tail `(1 − ρ²) ρᴺ r^{N+1} / (1 − ρ r)`, `ρ = |α|`.
    pub fn tail(&self, order: usize) -> GeometricTail {
        let rho = self.center.norm();
        GeometricTail {
            log_scale: (1.0 - rho * rho).ln() + order as f64 * rho.ln(),
            ratio: rho,
            start: order as u32 + 1,
            dilation: 1,
        }
    }
}

/// `scale · Σ wᵢ Πⱼ φᵢⱼ(z)` with convex weights `wᵢ` and Möbius factors `φᵢⱼ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeCombo {
    pub scale: f64,
    pub terms: Vec<(f64, Vec<MobiusFactor>)>,
}

impl BlaschkeCombo {
    pub fn eval(&self, z: Complex) -> Complex {
        let sum: Complex = self
            .terms
            .iter()
            .map(|(w, factors)| {
                factors
                    .iter()
                    .fold(Complex::new(*w, 0.0), |acc, f| acc * f.eval(z))
            })
            .sum();
        sum * self.scale
    }
}

/// Closed-form description of the function a series was generated from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FamilyTag {
    Mobius(MobiusFactor),
    BlaschkeCombo(BlaschkeCombo),
    /// The coefficients are the whole function.
    Polynomial,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Majorant {
    /// `Σ_{n=from}^{N} |a_n| rⁿ`.
    pub truncated: f64,
    /// `truncated + tail(r)`, when a tail bound is known.
    pub upper: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
    tail: Tail,
    family: FamilyTag,
    // f(z) = family(z^power); bumped by compose_power.
    power: u32,
}

fn check_coeffs(coeffs: &[Complex]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::InvalidParameter(
            "a series needs at least one coefficient".into(),
        ));
    }
    if coeffs
        .iter()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::NonFinite("series coefficients"));
    }
    Ok(())
}

fn check_point(z: Complex) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("evaluation point"));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain {
            name: "|z|",
            value: z.norm(),
            domain: "[0, 1)",
        });
    }
    Ok(())
}

pub(crate) fn truncated_product(a: &[Complex], b: &[Complex], order: usize) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0); order + 1];
    for (i, &ai) in a.iter().enumerate().take(order + 1) {
        if ai == Complex::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// All normalized derivatives `f^{(j)}(z)/j!`, `j < count`, by repeated
/// synthetic division (in-place Taylor shift).
pub(crate) fn taylor_shift(coeffs: &[Complex], z: Complex, count: usize) -> Vec<Complex> {
    let mut work = coeffs.to_vec();
    let n = work.len();
    let count = count.min(n);
    for i in 0..count.min(n - 1) {
        for j in (i..n - 1).rev() {
            let next = work[j + 1];
            work[j] += z * next;
        }
    }
    work.truncate(count);
    work
}

impl TruncatedSeries {
    /// Series with a caller-supplied tail bound.
    pub fn raw(coeffs: Vec<Complex>, tail: Tail) -> Result<Self> {
        check_coeffs(&coeffs)?;
        Ok(TruncatedSeries {
            coeffs,
            tail,
            family: FamilyTag::Raw,
            power: 1,
        })
    }

    /// Series with no known tail; everything computed from it is truncated-only.
    pub fn raw_untailed(coeffs: Vec<Complex>) -> Result<Self> {
        Self::raw(coeffs, Tail::Unknown)
    }

    pub fn polynomial(coeffs: Vec<Complex>) -> Result<Self> {
        check_coeffs(&coeffs)?;
        Ok(TruncatedSeries {
            coeffs,
            tail: Tail::exact(),
            family: FamilyTag::Polynomial,
            power: 1,
        })
    }

    pub fn real_polynomial(coeffs: &[f64]) -> Result<Self> {
        Self::polynomial(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// `(a + s·z)/(1 + s·a·z)` for real `a ∈ [0,1)` and `sign = s ∈ {+1, −1}`.
    pub fn mobius(a: f64, sign: i8, order: usize) -> Result<Self> {
        check_unit_interval("a", a)?;
        let s = match sign {
            1 => 1.0,
            -1 => -1.0,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "Möbius sign must be +1 or -1, got {sign}"
                )))
            }
        };
        // (a − z)/(1 − a z) = −(−a + z)/(1 + (−a) z)
        let factor = MobiusFactor::new(Complex::new(s * a, 0.0), Complex::new(s, 0.0))?;
        Self::from_factor(factor, order)
    }

    pub fn from_factor(factor: MobiusFactor, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "truncation order must be at least 1".into(),
            ));
        }
        Ok(TruncatedSeries {
            coeffs: factor.coefficients(order),
            tail: Tail::Geometric(vec![factor.tail(order)]),
            family: FamilyTag::Mobius(factor),
            power: 1,
        })
    }

    /// Expands a convex combination of Blaschke products.
    ///
    /// The tail of each product comes from the Cauchy estimate on the circle
    /// `|z| = ρ > 1`, where every factor is still analytic and bounded by
    /// `(ρ + |α|)/(1 − |α|ρ)`.
    pub fn blaschke_combo(combo: BlaschkeCombo, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "truncation order must be at least 1".into(),
            ));
        }
        if !(combo.scale.is_finite() && combo.scale >= 0.0) {
            return Err(Error::InvalidParameter(
                "combination scale must be nonnegative".into(),
            ));
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); order + 1];
        let mut tails = Vec::with_capacity(combo.terms.len());
        for (weight, factors) in &combo.terms {
            if !(weight.is_finite() && *weight >= 0.0) {
                return Err(Error::InvalidParameter(
                    "combination weights must be nonnegative".into(),
                ));
            }
            let mut product = vec![Complex::new(0.0, 0.0); order + 1];
            product[0] = Complex::new(1.0, 0.0);
            for f in factors {
                product = truncated_product(&product, &f.coefficients(order), order);
            }
            let w = weight * combo.scale;
            for (c, p) in coeffs.iter_mut().zip(&product) {
                *c += p * w;
            }

            let max_center = factors.iter().map(|f| f.center.norm()).fold(0.0, f64::max);
            let rho = if max_center < 0.5 {
                2.0
            } else {
                0.5 * (1.0 + 1.0 / max_center)
            };
            let log_sup: f64 = factors
                .iter()
                .map(|f| {
                    let c = f.center.norm();
                    ((rho + c) / (1.0 - c * rho)).ln()
                })
                .sum();
            tails.push(GeometricTail {
                log_scale: w.ln() + log_sup - (order as f64 + 1.0) * rho.ln(),
                ratio: 1.0 / rho,
                start: order as u32 + 1,
                dilation: 1,
            });
        }
        Ok(TruncatedSeries {
            coeffs,
            tail: Tail::Geometric(tails),
            family: FamilyTag::BlaschkeCombo(combo),
            power: 1,
        })
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn family(&self) -> &FamilyTag {
        &self.family
    }

    /// Rigorous upper bound for `Σ_{n>N} |a_n| rⁿ`, if known.
    pub fn tail_bound(&self, r: f64) -> Option<f64> {
        self.tail.bound(r)
    }

    pub fn is_rigorous(&self) -> bool {
        self.tail.is_known()
    }

    /// Horner evaluation of the retained polynomial.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        check_point(z)?;
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value of the generating closed form, when the series has one.
    pub fn eval_closed_form(&self, z: Complex) -> Option<Complex> {
        let w = z.powu(self.power);
        match &self.family {
            FamilyTag::Mobius(f) => Some(f.eval(w)),
            FamilyTag::BlaschkeCombo(c) => Some(c.eval(w)),
            FamilyTag::Polynomial => Some(self.horner(z)),
            FamilyTag::Raw => None,
        }
    }

    /// `f^{(k)}(z)/k! = Σ_{n≥k} C(n,k) a_n z^{n−k}` over retained terms.
    pub fn eval_derivative(&self, k: usize, z: Complex) -> Result<Complex> {
        check_point(z)?;
        if k > self.order() {
            return Err(Error::InvalidParameter(format!(
                "derivative order {k} exceeds truncation order {}",
                self.order()
            )));
        }
        Ok(taylor_shift(&self.coeffs, z, k + 1)[k])
    }

    /// `f^{(j)}(z)/j!` for `j = 0, …, count−1` (capped at the order).
    pub fn normalized_derivatives(&self, z: Complex, count: usize) -> Result<Vec<Complex>> {
        check_point(z)?;
        Ok(taylor_shift(&self.coeffs, z, count))
    }

    /// Coefficients of `f(z^m)`.
    pub fn compose_power(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("power must be at least 1".into()));
        }
        let m_us = m as usize;
        let mut coeffs = vec![Complex::new(0.0, 0.0); m_us * self.order() + 1];
        for (n, &c) in self.coeffs.iter().enumerate() {
            coeffs[m_us * n] = c;
        }
        Ok(TruncatedSeries {
            coeffs,
            tail: self.tail.dilate(m),
            family: self.family.clone(),
            power: self.power * m,
        })
    }

    /// `Σ_{n ≥ from} |a_n| rⁿ`, with the tail added for an upper enclosure.
    pub fn majorant_sum(&self, r: f64, from_index: usize) -> Result<Majorant> {
        check_unit_interval("r", r)?;
        let truncated = self.majorant_truncated(r, from_index);
        Ok(Majorant {
            truncated,
            upper: self.tail_bound(r).map(|t| truncated + t),
        })
    }

    fn majorant_truncated(&self, r: f64, from_index: usize) -> f64 {
        if from_index > self.order() {
            return 0.0;
        }
        let body = self.coeffs[from_index..]
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm());
        body * r.powi(from_index as i32)
    }

    /// Smallest order `N' ≥ min_order` whose discarded retained terms satisfy
    /// `Σ_{N'<n≤N} |a_n| sⁿ ≤ eps`, together with that discarded mass.
    pub fn effective_order(&self, s: f64, eps: f64, min_order: usize) -> (usize, f64) {
        let n = self.order();
        let mut dropped = 0.0;
        let mut cut = n;
        while cut > min_order {
            let next = dropped + self.coeffs[cut].norm() * s.powi(cut as i32);
            if next > eps {
                break;
            }
            dropped = next;
            cut -= 1;
        }
        (cut, dropped)
    }

    /// `c·(f − f(0))`: the series with its constant term removed and scaled.
    pub fn scaled_without_constant(&self, c: Complex) -> Self {
        let mut coeffs: Vec<Complex> = self.coeffs.iter().map(|&a| a * c).collect();
        coeffs[0] = Complex::new(0.0, 0.0);
        TruncatedSeries {
            coeffs,
            tail: self.tail.scale(c.norm()),
            family: FamilyTag::Raw,
            power: 1,
        }
    }
}

/// Bound `(1 − |f(z)|²) / ((1 − r)^k (1 + r))` on `|f^{(k)}(z)|/k!` for `f ∈ B`, `|z| = r`.
pub fn schwarz_pick_bounds(f_at_z_abs: f64, r: f64, k: u32) -> Result<f64> {
    check_closed_unit_interval("|f(z)|", f_at_z_abs)?;
    check_unit_interval("r", r)?;
    if k == 0 {
        return Err(Error::InvalidParameter(
            "derivative order must be at least 1".into(),
        ));
    }
    Ok((1.0 - f_at_z_abs * f_at_z_abs) / ((1.0 - r).powi(k as i32) * (1.0 + r)))
}
