use std::path::Path;

use essnorm::convex_bounds::{convex_lower_bound, disc_boundary_bound, ConvexSpecJson};
use essnorm::geometry::Shape;
use essnorm::hankel_oracle::{bidisc_n1_comparison, hankel_bidisc_essential_norm, HankelSpectrum};
use essnorm::torsion::{alpha_annulus, alpha_disc, alpha_numeric, convergence_study, saint_venant_upper};
use essnorm::worm_bounds::{worm_lower_bound, WormParams};
use essnorm::{BoundCertificate, DomainSpec, PlanarDomain};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::{float, floats, RunReport};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn check_spacing(h: f64) -> Result<(), CliError> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(CliError::InvalidArgument(format!("--h must be positive and finite, got {h}")))
    }
}

/// Exact `α` for discs and annuli; an annulus `a < |z| < b` is the image of
/// `1 < |z| < b/a` under `z ↦ a z`, which scales `α` by `a²`.
fn closed_form(domain: &PlanarDomain) -> Result<Option<f64>, CliError> {
    Ok(match *domain.shape() {
        Shape::Disc { radius } => Some(alpha_disc(radius)?),
        Shape::Annulus { inner, outer } => Some(inner * inner * alpha_annulus(outer / inner)?),
        _ => None,
    })
}

pub struct AlphaArgs<'a> {
    pub domain_file: &'a Path,
    pub h: f64,
    pub refine: bool,
    pub field_out: Option<&'a Path>,
}

pub fn alpha(args: AlphaArgs<'_>) -> Result<RunReport, CliError> {
    let spec: DomainSpec = read_json(args.domain_file)?;
    check_spacing(args.h)?;
    let domain: PlanarDomain = spec.to_domain()?;
    let inputs = json!({ "domain": to_value(&spec), "h": args.h, "refine": args.refine });
    let mut report = RunReport::new("alpha", inputs);

    let est = alpha_numeric(&domain, args.h, args.refine)?;
    report.put_f64("alpha", est.alpha)?;
    report.put_f64("error_estimate", est.error_estimate)?;
    report.put_f64("alpha_coarse", est.alpha_coarse)?;
    if let Some(fine) = est.alpha_fine {
        report.put_f64("alpha_fine", fine)?;
    }
    let field = &est.field;
    report.put_f64("integral_u", field.integral_u)?;
    report.put_f64("grad_norm_sq", field.grad_norm_sq)?;
    report.put_f64("lemma_defect", field.lemma_defect())?;
    report.put_f64("finest_spacing", field.spacing())?;
    report.put("interior_nodes", Value::from(field.interior_nodes));
    report.put("cg_iterations", Value::from(field.iterations));
    if let Some(exact) = closed_form(&domain)? {
        report.put_f64("closed_form", exact)?;
    }
    if domain.is_simply_connected() {
        report.put_f64("saint_venant_upper", saint_venant_upper(&domain)?)?;
    }
    if let Some(path) = args.field_out {
        write_file(path, &field.field.to_csv())?;
    }
    Ok(report)
}

pub fn convergence(domain_file: &Path, h: f64) -> Result<RunReport, CliError> {
    let spec: DomainSpec = read_json(domain_file)?;
    check_spacing(h)?;
    let domain: PlanarDomain = spec.to_domain()?;
    let mut report = RunReport::new("convergence", json!({ "domain": to_value(&spec), "h": h }));
    let study = convergence_study(&domain, h)?;
    report.put("spacings", floats("spacings", &study.spacings)?);
    report.put("alphas", floats("alphas", &study.alphas)?);
    report.put("lemma_defects", floats("lemma_defects", &study.lemma_defects)?);
    report.put_f64("order", study.order)?;
    if let Some(exact) = closed_form(&domain)? {
        report.put_f64("closed_form", exact)?;
        let errors: Vec<f64> = study.alphas.iter().map(|a| (a - exact).abs()).collect();
        report.put("errors", floats("errors", &errors)?);
    }
    Ok(report)
}

/// Plain-text table of a convergence report.
pub fn convergence_table(report: &RunReport) -> String {
    let col = |key: &str| -> Vec<f64> {
        report.outputs.get(key).and_then(Value::as_array).map_or_else(Vec::new, |a| {
            a.iter().filter_map(Value::as_f64).collect()
        })
    };
    let (hs, alphas, defects, errors) = (col("spacings"), col("alphas"), col("lemma_defects"), col("errors"));
    let mut out = format!("{:>12}  {:>20}  {:>12}  {:>12}\n", "h", "alpha", "lemma_defect", "error");
    for k in 0..hs.len() {
        let err = errors.get(k).map_or_else(|| "-".to_string(), |e| format!("{e:.3e}"));
        out.push_str(&format!("{:>12.6e}  {:>20.15}  {:>12.3e}  {:>12}\n", hs[k], alphas[k], defects[k], err));
    }
    let order = report.outputs.get("order").and_then(Value::as_f64).unwrap_or(f64::NAN);
    out.push_str(&format!("empirical order: {order:.4}\n"));
    out
}

fn certificate_value(cert: &BoundCertificate) -> Result<Value, CliError> {
    let mut m = Map::new();
    m.insert("target".into(), Value::String(cert.target.clone()));
    m.insert("q".into(), Value::from(cert.q));
    m.insert("value".into(), float("value", cert.value)?);
    m.insert("provenance".into(), Value::String(cert.provenance.label().to_string()));
    let mut echo = Map::new();
    for (k, v) in &cert.inputs_echo {
        echo.insert(k.clone(), float(k, *v)?);
    }
    m.insert("inputs_echo".into(), Value::Object(echo));
    Ok(Value::Object(m))
}

pub fn bound(spec_file: &Path, q: u32, disc_radius: Option<f64>) -> Result<RunReport, CliError> {
    let raw: ConvexSpecJson = read_json(spec_file)?;
    let spec = raw.to_spec::<f64>()?;
    let mut inputs = json!({ "spec": to_value(&raw), "q": q });
    if let Some(r) = disc_radius {
        inputs["disc_radius"] = json!(r);
    }
    let mut report = RunReport::new("bound", inputs);

    let mut certs = vec![convex_lower_bound(&spec, q)?];
    if let Some(r) = disc_radius {
        if spec.n() != 2 || q != 1 || !spec.smooth_boundary() {
            return Err(CliError::InvalidArgument(
                "--disc-radius applies to smooth convex domains with n = 2 and q = 1".into(),
            ));
        }
        certs.push(disc_boundary_bound(r, spec.diameter())?);
    }
    let best = certs
        .iter()
        .fold(&certs[0], |acc, c| if c.value > acc.value { c } else { acc });
    report.put_f64("value", best.value)?;
    report.put("provenance", Value::String(best.provenance.label().to_string()));
    report.put("q", Value::from(q));
    report.put(
        "certificates",
        Value::Array(certs.iter().map(certificate_value).collect::<Result<_, _>>()?),
    );
    Ok(report)
}

pub fn worm(beta: f64, r: f64) -> Result<RunReport, CliError> {
    let params = WormParams::new(beta, r)?;
    let mut report = RunReport::new("worm", to_value(&params));
    let res = worm_lower_bound(&params);
    report.put_f64("eta_star", res.eta_star)?;
    report.put_f64("value", res.value)?;
    report.put("interval", floats("interval", &[res.interval.0, res.interval.1])?);
    report.put("evaluations", Value::from(res.evaluations));
    report.put("provenance", Value::String(essnorm::Provenance::Worm.label().to_string()));
    Ok(report)
}

pub fn hankel(max_degree: usize, multiplicity: usize) -> Result<RunReport, CliError> {
    let inputs = json!({ "max_degree": max_degree, "multiplicity": multiplicity });
    let mut report = RunReport::new("hankel", inputs);
    let spectrum = HankelSpectrum::<f64>::compute(max_degree)?;
    let bidisc = hankel_bidisc_essential_norm::<f64>(multiplicity)?;
    let cmp = bidisc_n1_comparison::<f64>();
    report.put("eigenvalues", floats("eigenvalues", &spectrum.eigenvalues)?);
    report.put_f64("norm", spectrum.norm)?;
    report.put_f64("essential_norm_bidisc", bidisc.essential_norm)?;
    report.put("confirmed_copies", Value::from(bidisc.confirmed));
    report.put_f64("j01", cmp.j01)?;
    report.put_f64("n1_lower_bound", cmp.lower_bound)?;
    report.put_f64("n1_exact", cmp.exact)?;
    Ok(report)
}
