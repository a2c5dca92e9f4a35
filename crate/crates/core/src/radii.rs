//! Sharp radii as certified roots of explicit polynomial equations.
//!
//! Each of the five families below defines a polynomial in `r` (and `r^m`)
//! that equals `−1` at the origin and is positive near `r = 1`. The radius is
//! one of its roots in `(0, 1)`; [`compute_radius`] scans for sign changes,
//! bisects every bracket and packages the result in a [`RootCertificate`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_closed_unit_interval, check_unit_interval, Error, Result};

pub const SCAN_STEP: f64 = 1e-3;
pub const BRACKET_WIDTH: f64 = 1e-13;
pub const MAX_RESIDUAL: f64 = 1e-11;

/// Which equation a radius solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `(1−r)(r^{2m}+2r^m−1) + 2r²(1+r^m)²`, radius of `A_f`.
    Phi,
    /// `2r² − (1−r^{2m})(1−r^m−r)`, radius of `B_f`.
    Psi,
    /// `3r − 1 + r^m[2r²(r^m+2) + r^m(1−r)]`, radius of `C_f`.
    PhiCap,
    /// `2r(1+k)(1+r^m) − (1−r)(1−r^m)`, radius of `D_f`.
    Lambda,
    /// `(1−r)(r^{2m}+2r^m−1) + 2r(r+k)(1+r^m)²`, radius of `E_f`.
    LambdaCap,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Phi,
        FamilyKind::Psi,
        FamilyKind::PhiCap,
        FamilyKind::Lambda,
        FamilyKind::LambdaCap,
    ];

    /// Short name used on the command line. Case matters: `phi` vs `Phi`.
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Phi => "phi",
            FamilyKind::Psi => "psi",
            FamilyKind::PhiCap => "Phi",
            FamilyKind::Lambda => "lambda",
            FamilyKind::LambdaCap => "Lambda",
        }
    }

    pub fn is_harmonic(self) -> bool {
        matches!(self, FamilyKind::Lambda | FamilyKind::LambdaCap)
    }

    /// Root selection rule stated with each inequality.
    pub fn selection(self) -> Selection {
        match self {
            FamilyKind::Psi => Selection::Minimal,
            _ => Selection::Maximal,
        }
    }
}

impl Serialize for FamilyKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => FamilyKind::Phi,
            "psi" => FamilyKind::Psi,
            "Phi" | "PhiCap" => FamilyKind::PhiCap,
            "lambda" => FamilyKind::Lambda,
            "Lambda" | "LambdaCap" => FamilyKind::LambdaCap,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family `{other}` (expected phi, psi, Phi, lambda or Lambda)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusFamily {
    kind: FamilyKind,
    m: u32,
    k: f64,
}

impl RadiusFamily {
    /// `k` is ignored (stored as 0) for the analytic families.
    pub fn new(kind: FamilyKind, m: u32, k: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let k = if kind.is_harmonic() {
            check_closed_unit_interval("k", k)?;
            k
        } else {
            0.0
        };
        Ok(RadiusFamily { kind, m, k })
    }

    pub fn phi(m: u32) -> Result<Self> {
        Self::new(FamilyKind::Phi, m, 0.0)
    }

    pub fn psi(m: u32) -> Result<Self> {
        Self::new(FamilyKind::Psi, m, 0.0)
    }

    pub fn phi_cap(m: u32) -> Result<Self> {
        Self::new(FamilyKind::PhiCap, m, 0.0)
    }

    pub fn lambda(m: u32, k: f64) -> Result<Self> {
        Self::new(FamilyKind::Lambda, m, k)
    }

    pub fn lambda_cap(m: u32, k: f64) -> Result<Self> {
        Self::new(FamilyKind::LambdaCap, m, k)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Value of the family's polynomial at `r`; no domain check.
    pub(crate) fn eval_unchecked(&self, r: f64) -> f64 {
        let rm = r.powi(self.m as i32);
        let r2m = rm * rm;
        match self.kind {
            FamilyKind::Phi => {
                (1.0 - r) * (r2m + 2.0 * rm - 1.0) + 2.0 * r * r * (1.0 + rm).powi(2)
            }
            FamilyKind::Psi => 2.0 * r * r - (1.0 - r2m) * (1.0 - rm - r),
            FamilyKind::PhiCap => 3.0 * r - 1.0 + rm * (2.0 * r * r * (rm + 2.0) + rm * (1.0 - r)),
            FamilyKind::Lambda => 2.0 * r * (1.0 + self.k) * (1.0 + rm) - (1.0 - r) * (1.0 - rm),
            FamilyKind::LambdaCap => {
                (1.0 - r) * (r2m + 2.0 * rm - 1.0) + 2.0 * r * (r + self.k) * (1.0 + rm).powi(2)
            }
        }
    }
}

impl fmt::Display for RadiusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.is_harmonic() {
            write!(f, "{}(m={}, k={})", self.kind, self.m, self.k)
        } else {
            write!(f, "{}(m={})", self.kind, self.m)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    Maximal,
    Minimal,
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selection::Maximal => "maximal",
            Selection::Minimal => "minimal",
        })
    }
}

/// One isolated root: `lo < value < hi`, `hi − lo ≤ BRACKET_WIDTH`, sign change across the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsolatedRoot {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCertificate {
    pub family: RadiusFamily,
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub residual: f64,
    pub all_roots: Vec<f64>,
    pub selection: Selection,
}

impl RootCertificate {
    pub fn min_root(&self) -> f64 {
        self.all_roots[0]
    }

    pub fn max_root(&self) -> f64 {
        self.all_roots[self.all_roots.len() - 1]
    }

    /// Re-checks the certificate against the equation.
    pub fn verify(&self) -> bool {
        let lo = self.family.eval_unchecked(self.bracket_lo);
        let hi = self.family.eval_unchecked(self.bracket_hi);
        let residual = self.family.eval_unchecked(self.value);
        self.bracket_lo < self.value
            && self.value < self.bracket_hi
            && self.bracket_hi - self.bracket_lo <= BRACKET_WIDTH
            && lo.signum() * hi.signum() < 0.0
            && residual == self.residual
            && residual.abs() <= MAX_RESIDUAL
            && self.all_roots.windows(2).all(|w| w[0] < w[1])
            && self.all_roots.contains(&self.value)
    }
}

pub fn equation_value(family: &RadiusFamily, r: f64) -> Result<f64> {
    check_unit_interval("r", r)?;
    Ok(family.eval_unchecked(r))
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> IsolatedRoot {
    let mut f_lo = f(lo);
    debug_assert!(f_lo * f(hi) < 0.0);
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            // Exact hit: shrink to the neighbouring representable points.
            lo = mid - BRACKET_WIDTH / 4.0;
            hi = mid + BRACKET_WIDTH / 4.0;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    IsolatedRoot {
        value,
        lo,
        hi,
        residual: f(value),
    }
}

/// Every sign change of `f` on the grid `step, 2·step, …` inside `(0, 1)`,
/// refined by bisection. Grid points where `f` vanishes exactly are
/// bracketed symmetrically.
pub fn isolate_roots<F: Fn(f64) -> f64>(f: F, step: f64) -> Vec<IsolatedRoot> {
    let n = (1.0 / step).round() as usize;
    let mut roots = Vec::new();
    let mut prev_r = 0.0;
    let mut prev = f(0.0);
    for i in 1..n {
        let r = i as f64 * step;
        let v = f(r);
        if v == 0.0 {
            let lo = r - BRACKET_WIDTH / 4.0;
            let hi = r + BRACKET_WIDTH / 4.0;
            if f(lo) * f(hi) < 0.0 {
                roots.push(IsolatedRoot {
                    value: r,
                    lo,
                    hi,
                    residual: 0.0,
                });
            }
        } else if prev != 0.0 && prev.signum() != v.signum() {
            roots.push(bisect(&f, prev_r, r));
        }
        prev_r = r;
        prev = v;
    }
    // Last cell up to 1⁻.
    let r_end = 1.0 - f64::EPSILON;
    let v_end = f(r_end);
    if prev != 0.0 && v_end != 0.0 && prev.signum() != v_end.signum() {
        roots.push(bisect(&f, prev_r, r_end));
    }
    roots
}

pub fn compute_radius(family: &RadiusFamily) -> Result<RootCertificate> {
    let roots = isolate_roots(|r| family.eval_unchecked(r), SCAN_STEP);
    let selection = family.kind.selection();
    let chosen = match selection {
        Selection::Maximal => roots.last(),
        Selection::Minimal => roots.first(),
    }
    .copied()
    .ok_or_else(|| Error::NoRoot {
        family: family.to_string(),
    })?;
    Ok(RootCertificate {
        family: *family,
        value: chosen.value,
        bracket_lo: chosen.lo,
        bracket_hi: chosen.hi,
        residual: chosen.residual,
        all_roots: roots.iter().map(|r| r.value).collect(),
        selection,
    })
}

/// Largest root of `2r − (1 − r^{2m})` in `(0, 1)`. Diagnostic companion of
/// the `Phi` radius, which always lies below it.
pub fn auxiliary_root(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let roots = isolate_roots(|r| 2.0 * r - (1.0 - r.powi(2 * m as i32)), SCAN_STEP);
    roots.last().map(|r| r.value).ok_or_else(|| Error::NoRoot {
        family: format!("2r - (1 - r^{})", 2 * m),
    })
}

/// Radius as `m → ∞`. `k` only matters for the harmonic families.
pub fn limit_radius(kind: FamilyKind, k: f64) -> Result<f64> {
    Ok(match kind {
        FamilyKind::Phi | FamilyKind::Psi => 0.5,
        FamilyKind::PhiCap => 1.0 / 3.0,
        FamilyKind::Lambda => {
            check_closed_unit_interval("k", k)?;
            2.0 / (4.0 * k + 6.0)
        }
        FamilyKind::LambdaCap => {
            check_closed_unit_interval("k", k)?;
            let b = 2.0 * k + 1.0;
            0.25 * ((b * b + 8.0).sqrt() - b)
        }
    })
}

/// Classical Bohr and Rogosinski radii `(1/3, 1/2)`.
pub fn classical_constants() -> (f64, f64) {
    (1.0 / 3.0, 0.5)
}
