use bohr_core::radii::{auxiliary_root, FamilyKind};
use bohr_core::{classical_constants, compute_radius, equation_value, limit_radius, RadiusFamily};

const TABLES: [(FamilyKind, [f64; 5]); 5] = [
    (
        FamilyKind::Phi,
        [0.280776, 0.39149, 0.441112, 0.467644, 0.482442],
    ),
    (
        FamilyKind::Psi,
        [0.355416, 0.430586, 0.464327, 0.481418, 0.490359],
    ),
    (
        FamilyKind::PhiCap,
        [0.280776, 0.316912, 0.327911, 0.33152, 0.332726],
    ),
    (
        FamilyKind::Lambda,
        [0.154701, 0.188829, 0.197544, 0.199494, 0.199898],
    ),
    (
        FamilyKind::LambdaCap,
        [0.1671, 0.240751, 0.267472, 0.276691, 0.279585],
    ),
];

// Oracle: the equations written out again from scratch.
fn oracle_equation(kind: FamilyKind, m: i32, k: f64, r: f64) -> f64 {
    let p = r.powi(m);
    match kind {
        FamilyKind::Phi => (1.0 - r) * (p * p + 2.0 * p - 1.0) + 2.0 * r * r * (1.0 + p).powi(2),
        FamilyKind::Psi => 2.0 * r * r - (1.0 - p * p) * (1.0 - p - r),
        FamilyKind::PhiCap => 3.0 * r - 1.0 + p * (2.0 * r * r * (p + 2.0) + p * (1.0 - r)),
        FamilyKind::Lambda => 2.0 * r * (1.0 + k) * (1.0 + p) - (1.0 - r) * (1.0 - p),
        FamilyKind::LambdaCap => {
            (1.0 - r) * (p * p + 2.0 * p - 1.0) + 2.0 * r * (r + k) * (1.0 + p).powi(2)
        }
    }
}

fn oracle_root(kind: FamilyKind, m: i32, k: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if oracle_equation(kind, m, k, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn tabulated_radii_to_six_digits() {
    for (kind, row) in TABLES {
        for (i, &expected) in row.iter().enumerate() {
            let m = i as u32 + 1;
            let cert = compute_radius(&RadiusFamily::new(kind, m, 1.0).unwrap()).unwrap();
            assert!(
                (cert.value - expected).abs() <= 1e-5,
                "{kind} m={m}: {} vs {expected}",
                cert.value
            );
        }
    }
}

#[test]
fn certificates_match_independent_bisection() {
    for kind in FamilyKind::ALL {
        for m in 1..=10 {
            for k in [0.0, 0.25, 0.5, 1.0] {
                let fam = RadiusFamily::new(kind, m, k).unwrap();
                let cert = compute_radius(&fam).unwrap();
                let oracle = oracle_root(kind, m as i32, fam.k());
                assert!(
                    (cert.value - oracle).abs() < 1e-12,
                    "{fam}: {} vs {oracle}",
                    cert.value
                );
                let r = 0.37;
                let diff =
                    equation_value(&fam, r).unwrap() - oracle_equation(kind, m as i32, fam.k(), r);
                assert!(diff.abs() < 1e-14);
            }
        }
    }
}

#[test]
fn quadratic_closed_forms() {
    let phi1 = compute_radius(&RadiusFamily::phi(1).unwrap())
        .unwrap()
        .value;
    assert!((phi1 - (17f64.sqrt() - 3.0) / 4.0).abs() < 1e-9);
    let lam1 = compute_radius(&RadiusFamily::lambda(1, 1.0).unwrap())
        .unwrap()
        .value;
    assert!((lam1 - (2.0 * 3f64.sqrt() - 3.0) / 3.0).abs() < 1e-9);
}

#[test]
fn limits_in_closed_form() {
    assert_eq!(limit_radius(FamilyKind::Phi, 1.0).unwrap(), 0.5);
    assert_eq!(limit_radius(FamilyKind::Psi, 1.0).unwrap(), 0.5);
    assert_eq!(limit_radius(FamilyKind::PhiCap, 1.0).unwrap(), 1.0 / 3.0);
    for k in [0.0, 0.3, 1.0] {
        assert_eq!(
            limit_radius(FamilyKind::Lambda, k).unwrap(),
            2.0 / (4.0 * k + 6.0)
        );
        let s = 2.0 * k + 1.0;
        assert_eq!(
            limit_radius(FamilyKind::LambdaCap, k).unwrap(),
            ((s * s + 8.0).sqrt() - s) / 4.0
        );
    }
    assert!(
        (limit_radius(FamilyKind::LambdaCap, 1.0).unwrap() - (17f64.sqrt() - 3.0) / 4.0).abs()
            < 1e-15
    );
    assert_eq!(limit_radius(FamilyKind::Lambda, 0.0).unwrap(), 1.0 / 3.0);
    assert_eq!(classical_constants(), (1.0 / 3.0, 0.5));
}

#[test]
fn radii_approach_limits() {
    for kind in FamilyKind::ALL {
        let lim = limit_radius(kind, 1.0).unwrap();
        let far = compute_radius(&RadiusFamily::new(kind, 40, 1.0).unwrap())
            .unwrap()
            .value;
        assert!((far - lim).abs() < 1e-6, "{kind}: {far} vs {lim}");
    }
    let phi20 = compute_radius(&RadiusFamily::phi(20).unwrap())
        .unwrap()
        .value;
    let cap20 = compute_radius(&RadiusFamily::phi_cap(20).unwrap())
        .unwrap()
        .value;
    assert!((phi20 - 0.5).abs() <= 1e-4);
    assert!((cap20 - 1.0 / 3.0).abs() <= 1e-4);
}

#[test]
fn certificates_are_sound_and_respect_a_priori_bounds() {
    for kind in FamilyKind::ALL {
        for m in 1..=10 {
            let cert = compute_radius(&RadiusFamily::new(kind, m, 1.0).unwrap()).unwrap();
            assert!(cert.verify(), "{cert:?}");
            assert_eq!(cert.all_roots.len(), 1);
            assert!(cert.bracket_lo < cert.value && cert.value < cert.bracket_hi);
        }
    }
    for m in 1..=10 {
        let phi = compute_radius(&RadiusFamily::phi(m).unwrap())
            .unwrap()
            .value;
        assert!(phi <= (2f64.sqrt() - 1.0).powf(1.0 / m as f64));
        let cap = compute_radius(&RadiusFamily::phi_cap(m).unwrap())
            .unwrap()
            .value;
        let aux = auxiliary_root(m).unwrap();
        let oracle_aux = {
            let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if 2.0 * mid - (1.0 - mid.powi(2 * m as i32)) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        assert!((aux - oracle_aux).abs() < 1e-12);
        assert!(cap < aux);
    }
}

#[test]
fn monotone_in_m_and_k() {
    for kind in [FamilyKind::Phi, FamilyKind::Psi, FamilyKind::PhiCap] {
        let vals: Vec<f64> = (1..=8)
            .map(|m| {
                compute_radius(&RadiusFamily::new(kind, m, 0.0).unwrap())
                    .unwrap()
                    .value
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "{kind}");
    }
    for kind in [FamilyKind::Lambda, FamilyKind::LambdaCap] {
        let vals: Vec<f64> = [0.0, 0.25, 0.5, 0.75, 1.0]
            .iter()
            .map(|&k| {
                compute_radius(&RadiusFamily::new(kind, 2, k).unwrap())
                    .unwrap()
                    .value
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]), "{kind}");
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(RadiusFamily::phi(0).is_err());
    assert!(RadiusFamily::lambda(1, 1.5).is_err());
    assert!(RadiusFamily::lambda_cap(1, -0.1).is_err());
    assert!(RadiusFamily::lambda(1, f64::NAN).is_err());
    assert!(equation_value(&RadiusFamily::phi(1).unwrap(), 1.5).is_err());
    assert!("phi".parse::<FamilyKind>().is_ok());
    assert!("PHI".parse::<FamilyKind>().is_err());
}
