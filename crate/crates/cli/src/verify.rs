//! Self-check battery: closed forms, oracles and identities that a correct
//! build reproduces.

use std::f64::consts::PI;

use essnorm::convex_bounds::{
    convex_lower_bound, dbar_star_constant, disc_boundary_bound, neumann_constant, ConvexDomainSpec, Provenance,
};
use essnorm::hankel_oracle::{
    bessel_j0_first_zero, bidisc_n1_comparison, hankel_bidisc_essential_norm, hankel_disc_eigenvalue,
};
use essnorm::torsion::{alpha_annulus, alpha_numeric, saint_venant_upper, solve_torsion};
use essnorm::worm_bounds::{annulus_consistency, worm_lower_bound, WormParams};
use essnorm::PlanarDomain;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::RunReport;

/// `∫u` on the unit square, from the series in `scripts/square_torsion_series.py`.
pub const SQUARE_INTEGRAL: f64 = 0.140577014955154;
/// First positive zero of `J₀`.
pub const J0_FIRST_ZERO: f64 = 2.404825557695773;

const SPACING: f64 = 1.0 / 64.0;

pub const CHECK_NAMES: [&str; 13] = [
    "disc_closed_form",
    "annulus_closed_form",
    "square_oracle",
    "lemma_identity",
    "scaling_law",
    "saint_venant",
    "constant_identity",
    "cross_theorem",
    "annulus_consistency",
    "worm_bound",
    "hankel_eigenvalues",
    "bessel_zero",
    "bidisc_comparison",
];

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

struct Battery {
    fault: Option<String>,
    checks: Vec<Check>,
}

impl Battery {
    /// Reference value for `name`, perturbed when a fault is injected there.
    fn reference(&self, name: &str, value: f64) -> f64 {
        if self.fault.as_deref() == Some(name) {
            value * 1.25 + 1.0
        } else {
            value
        }
    }

    /// Tolerance for `name`; an injected fault makes it unattainable.
    fn limit(&self, name: &str, tol: f64) -> f64 {
        if self.fault.as_deref() == Some(name) {
            -1.0
        } else {
            tol
        }
    }

    fn record(&mut self, name: &'static str, pass: bool, detail: String) {
        self.checks.push(Check { name, pass, detail });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn fmt(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn verify(fault: Option<&str>) -> Result<(RunReport, bool), CliError> {
    if let Some(name) = fault {
        if !CHECK_NAMES.contains(&name) {
            return Err(CliError::InvalidArgument(format!("unknown check {name:?}")));
        }
    }
    let mut b = Battery { fault: fault.map(str::to_string), checks: Vec::new() };
    torsion_checks(&mut b)?;
    bounds_checks(&mut b)?;
    worm_checks(&mut b)?;
    hankel_checks(&mut b)?;

    let all_pass = b.checks.iter().all(|c| c.pass);
    let failed: Vec<&str> = b.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    let mut report = RunReport::new("verify", json!({ "spacing": SPACING }));
    let checks = b
        .checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("check".into(), Value::String(c.name.to_string()));
            m.insert("pass".into(), Value::Bool(c.pass));
            m.insert("detail".into(), Value::String(c.detail.clone()));
            Value::Object(m)
        })
        .collect();
    report.put("checks", Value::Array(checks));
    report.put("passed", Value::from(b.checks.len() - failed.len()));
    report.put("failed", Value::from(failed.len()));
    report.put("all_pass", Value::Bool(all_pass));
    Ok((report, all_pass))
}

pub fn failed_names(report: &RunReport) -> String {
    report
        .outputs
        .get("checks")
        .and_then(Value::as_array)
        .map(|checks| {
            checks
                .iter()
                .filter(|c| c["pass"] == Value::Bool(false))
                .filter_map(|c| c["check"].as_str())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default()
}

fn torsion_checks(b: &mut Battery) -> Result<(), CliError> {
    let disc = PlanarDomain::disc(1.0)?;
    let square = PlanarDomain::rectangle(1.0, 1.0)?;
    let annulus = PlanarDomain::annulus(1.0, 2.0)?;

    let disc_exact = b.reference("disc_closed_form", (PI / 2.0).sqrt());
    let disc_est = alpha_numeric(&disc, SPACING, true)?;
    let e = rel(disc_est.alpha, disc_exact);
    b.record("disc_closed_form", e <= 5e-3, format!("alpha {} vs {}, rel {}", fmt(disc_est.alpha), fmt(disc_exact), fmt(e)));

    let ann_exact = b.reference("annulus_closed_form", alpha_annulus(2.0)?);
    let ann_est = alpha_numeric(&annulus, SPACING, true)?;
    let e = rel(ann_est.alpha, ann_exact);
    b.record("annulus_closed_form", e <= 1e-2, format!("alpha {} vs {}, rel {}", fmt(ann_est.alpha), fmt(ann_exact), fmt(e)));

    let sq_ref = b.reference("square_oracle", SQUARE_INTEGRAL);
    let sq_est = alpha_numeric(&square, SPACING, true)?;
    let sq_coarse = solve_torsion(&square, SPACING)?;
    let e = rel(sq_coarse.integral_u, sq_ref);
    b.record("square_oracle", e <= 5e-3, format!("integral_u {} vs {}, rel {}", fmt(sq_coarse.integral_u), fmt(sq_ref), fmt(e)));

    let limit = b.limit("lemma_identity", 0.02);
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, domain, fine) in [("disc", &disc, &disc_est), ("square", &square, &sq_est), ("annulus", &annulus, &ann_est)] {
        let coarse = solve_torsion(domain, SPACING)?;
        let (d0, d1) = (coarse.lemma_defect(), fine.field.lemma_defect());
        ok &= d0 <= limit && d1 < d0;
        parts.push(format!("{label} {} -> {}", fmt(d0), fmt(d1)));
    }
    b.record("lemma_identity", ok, parts.join("; "));

    let mut ok = true;
    let mut parts = Vec::new();
    for (label, domain) in [("disc", &disc), ("square", &square)] {
        let base = alpha_numeric(domain, 1.0 / 32.0, true)?;
        for lambda in [0.5, 2.0] {
            let scaled = alpha_numeric(&domain.scaled(lambda)?, 1.0 / 32.0, true)?;
            let gap = (scaled.alpha - lambda * lambda * base.alpha).abs();
            let allowed = b.limit("scaling_law", scaled.error_estimate + lambda * lambda * base.error_estimate);
            ok &= gap <= allowed;
            parts.push(format!("{label} x{lambda}: gap {} <= {}", fmt(gap), fmt(allowed)));
        }
    }
    b.record("scaling_law", ok, parts.join("; "));

    let disc_sv = b.reference("saint_venant", saint_venant_upper(&disc)?);
    let sq_sv = saint_venant_upper(&square)?;
    let ok = disc_est.alpha <= disc_sv + disc_est.error_estimate
        && sq_est.alpha <= sq_sv + sq_est.error_estimate
        && rel(disc_est.alpha, disc_sv) <= 5e-3;
    b.record(
        "saint_venant",
        ok,
        format!("disc {} <= {}; square {} <= {}", fmt(disc_est.alpha), fmt(disc_sv), fmt(sq_est.alpha), fmt(sq_sv)),
    );
    Ok(())
}

fn bounds_checks(b: &mut Battery) -> Result<(), CliError> {
    let mut worst = 0.0f64;
    for n in 2..=10u32 {
        for q in 1..n {
            let c: f64 = dbar_star_constant(n, q)?;
            let big: f64 = neumann_constant(n, q)?;
            worst = worst.max(rel(c * c, big));
        }
    }
    let c21: f64 = neumann_constant(2, 1)?;
    let expected = b.reference("constant_identity", 2.0 / 729.0);
    let e = rel(c21, expected);
    b.record(
        "constant_identity",
        worst <= 1e-12 && e <= 1e-14,
        format!("max rel |c^2 - C| {}; C(2,1) {} vs 2/729", fmt(worst), fmt(c21)),
    );

    let cor = disc_boundary_bound(1.0, 2.0)?;
    let spec = ConvexDomainSpec::new(2, 1, 2.0, Vec::new(), vec![(PI / 2.0).sqrt()], true)?;
    let thm = convex_lower_bound(&spec, 1)?;
    let eighth = b.reference("cross_theorem", 0.125);
    let ok = (cor.value - eighth).abs() <= 1e-12
        && (thm.value - eighth).abs() <= 1e-12
        && thm.provenance == Provenance::HypersurfaceVariety;
    b.record(
        "cross_theorem",
        ok,
        format!("corollary {} and {} {} vs 1/8", fmt(cor.value), thm.provenance.label(), fmt(thm.value)),
    );
    Ok(())
}

fn worm_checks(b: &mut Battery) -> Result<(), CliError> {
    let limit = b.limit("annulus_consistency", 1e-10);
    let mut worst = 0.0f64;
    for k in 1..=1000 {
        let eta = 1.0 + 19.0 * f64::from(k) / 1000.0;
        worst = worst.max(annulus_consistency(eta)?);
    }
    b.record("annulus_consistency", worst < limit, format!("max defect {} on 1000 points of (1, 20]", fmt(worst)));

    let target = b.reference("worm_bound", 2.5 - 3.0 / (2.0 * 2f64.ln()));
    let small = worm_lower_bound(&WormParams::new(1e-9, 2.0)?);
    let values: Vec<f64> =
        [0.5, 1.0, 2.0].iter().map(|beta| WormParams::new(*beta, 10.0).map(|p| worm_lower_bound(&p).value)).collect::<Result<_, _>>()?;
    let ok = (small.value - target).abs() < 1e-6 && values.windows(2).all(|w| w[1] < w[0]);
    b.record(
        "worm_bound",
        ok,
        format!("beta 1e-9, r 2: {} vs {}; r 10, beta 0.5/1/2: {}", fmt(small.value), fmt(target), values.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(" > ")),
    );
    Ok(())
}

fn hankel_checks(b: &mut Battery) -> Result<(), CliError> {
    let half = b.reference("hankel_eigenvalues", 0.5);
    let l0: f64 = hankel_disc_eigenvalue(0)?;
    let mut worst = 0.0f64;
    for j in 0..=200i64 {
        let l: f64 = hankel_disc_eigenvalue(j)?;
        let closed = 1.0 / ((j + 1) as f64 * (j + 2) as f64);
        worst = worst.max(rel(l, closed));
    }
    let bidisc = hankel_bidisc_essential_norm::<f64>(100)?;
    let ok = l0 == half && worst <= 1e-14 && bidisc.confirmed == 100 && bidisc.essential_norm == std::f64::consts::FRAC_1_SQRT_2;
    b.record(
        "hankel_eigenvalues",
        ok,
        format!("lambda_0 {}; max rel error j<=200 {}; bidisc essential norm {}", fmt(l0), fmt(worst), fmt(bidisc.essential_norm)),
    );

    let reference = b.reference("bessel_zero", J0_FIRST_ZERO);
    let j01: f64 = bessel_j0_first_zero(1e-10)?;
    b.record("bessel_zero", (j01 - reference).abs() <= 1e-10, format!("j01 {} vs {}", fmt(j01), fmt(reference)));

    let cmp = bidisc_n1_comparison::<f64>();
    let exact = cmp.exact;
    let lower = b.reference("bidisc_comparison", 0.6915);
    let ok = (lower..=0.6917).contains(&exact) && exact > cmp.lower_bound;
    b.record("bidisc_comparison", ok, format!("{exact:.5} > {:.1}", cmp.lower_bound));
    Ok(())
}
