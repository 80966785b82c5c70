use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use ellhyp::battery::{battery_spec, run_battery, suite_members, BatteryInput, TimedReport, SUITES};
use ellhyp::identities::{
    verify_casoratian, verify_e7, verify_ehe, verify_elliptic_beta, BetaParams, E7Transform, VParams,
};
use ellhyp::sci::{
    builtin, check_anomalies, evaluate_index, seiberg_fugacities, AnomalySystem, TheorySpec, BUILTIN_NAMES,
};
use ellhyp::series::{frenkel_turaev_spec, v_series, v_series_terms, VSeriesSpec};
use ellhyp::special::{
    elliptic_gamma, elliptic_gamma2, elliptic_gamma2_ext, elliptic_gamma_ext, hyperbolic_gamma, modified_gamma_g,
    rarefied_gamma, theta, theta_ext,
};
use ellhyp::{BaseParams, Error, QuasiPeriods, Result, VerificationReport, VerifyConfig, C64};

use crate::args::{AnomalyArgs, Cli, Command, Common, EvalArgs, Function, IndexArgs, Precision, VerifyArgs};
use crate::document::{Record, ReportDocument};

/// Batteries left out of `verify --quick`.
const QUICK_SKIP: [&str; 4] = ["quadrature", "m_identity", "coxeter", "seiberg_4"];
const EXTENDED_BITS: usize = 128;

/// `Ok(true)` when every check passed, `Ok(false)` on a failed check, `Err` on configuration errors.
pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Eval(a) => eval(&cli.common, a),
        Command::Verify(a) => verify(&cli.common, a),
        Command::Index(a) => index(&cli.common, a),
        Command::Anomaly(a) => anomaly(&cli.common, a),
    }
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn fmt_c(z: C64) -> String {
    format!("{:.15e} {} {:.15e}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn emit<T: Serialize>(common: &Common, doc: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize");
    match &common.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Error::InvalidArgument(format!("cannot write output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn verify_config(common: &Common) -> Result<VerifyConfig> {
    let mut cfg = VerifyConfig { tol: common.tol, ..VerifyConfig::default() };
    if let Some(n) = common.nodes {
        if n < 16 {
            return Err(Error::InvalidArgument("--nodes must be at least 16".into()));
        }
        cfg.max_nodes[0] = n;
        cfg.max_nodes[1] = cfg.max_nodes[1].min(n);
        cfg.max_nodes[2] = cfg.max_nodes[2].min(n);
    }
    if let Ok(v) = std::env::var("ELLHYP_MAX_NODES") {
        let cap: usize =
            v.parse().map_err(|_| Error::InvalidArgument(format!("ELLHYP_MAX_NODES={v:?} is not an integer")))?;
        for m in &mut cfg.max_nodes {
            *m = (*m).min(cap);
        }
        cfg.start_nodes = cfg.start_nodes.min(cap);
    }
    Ok(cfg)
}

fn base(common: &Common) -> Result<Option<BaseParams>> {
    match (common.p, common.q) {
        (Some(p), Some(q)) => {
            let b = BaseParams::new(p, q)?;
            common.r.map_or(Ok(b), |r| b.with_r(r)).map(Some)
        }
        (None, None) => Ok(None),
        _ => Err(Error::InvalidArgument("--p and --q must be given together".into())),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("missing --{flag}")))
}

fn need_base(common: &Common) -> Result<BaseParams> {
    base(common)?.ok_or_else(|| Error::InvalidArgument("missing --p and --q".into()))
}

fn eval(common: &Common, a: &EvalArgs) -> Result<bool> {
    let cfg = verify_config(common)?;
    let b = cfg.budget;
    let extended = common.precision == Precision::Extended;
    let supports_ext = matches!(a.function, Function::Theta | Function::Egamma | Function::Egamma2);
    if extended && !supports_ext {
        return Err(Error::InvalidArgument(format!(
            "--precision extended is available for theta, egamma and egamma2, not {:?}",
            a.function
        )));
    }
    let mut extra = serde_json::Map::new();
    let eps = f64::EPSILON;
    let (value, err) = match a.function {
        Function::Theta => {
            let (z, p) = (need(a.z, "z")?, need(common.p, "p")?);
            if extended {
                let v = theta_ext(z, p, EXTENDED_BITS)?.to_c64();
                (v, eps * v.norm())
            } else {
                let v = theta(z, p, &b)?;
                (v, (b.tail_tol + 8.0 * eps) * v.norm().max(eps))
            }
        }
        Function::Egamma => {
            let z = need(a.z, "z")?;
            let base = need_base(common)?;
            if extended {
                let v = elliptic_gamma_ext(z, base.p(), base.q(), EXTENDED_BITS)?.to_c64();
                (v, eps * v.norm())
            } else {
                let v = elliptic_gamma(z, &base, &b)?;
                (v, (b.tail_tol + 16.0 * eps) * v.norm())
            }
        }
        Function::Egamma2 => {
            let (z, t) = (need(a.z, "z")?, need(a.t, "t")?);
            let (p, q) = (need(common.p, "p")?, need(common.q, "q")?);
            if extended {
                let v = elliptic_gamma2_ext(z, p, q, t, EXTENDED_BITS)?.to_c64();
                (v, eps * v.norm())
            } else {
                let v = elliptic_gamma2(z, p, q, t, &b)?;
                (v, (b.tail_tol + 16.0 * eps) * v.norm())
            }
        }
        Function::EgammaMod => {
            let u = need(a.u, "u")?;
            let w = QuasiPeriods::new(need(a.omega1, "omega1")?, need(a.omega2, "omega2")?, need(a.omega3, "omega3")?)?;
            let (v, rep) = modified_gamma_g(u, &w, &b)?;
            extra.insert("representation".into(), json!(rep));
            (v, (b.tail_tol + 64.0 * eps) * v.norm())
        }
        Function::Hgamma => {
            let u = need(a.u, "u")?;
            let v = hyperbolic_gamma(u, need(a.omega1, "omega1")?, need(a.omega2, "omega2")?, &b)?;
            (v, (b.tail_tol + 64.0 * eps) * v.norm())
        }
        Function::Regamma => {
            let z = need(a.z, "z")?;
            let base = need_base(common)?.with_r(common.r.unwrap_or(1))?;
            let v = rarefied_gamma(z, common.nu.unwrap_or(0), &base, &b)?;
            (v, (b.tail_tol + 64.0 * eps) * v.norm())
        }
        Function::Vfunction => {
            let params = a.params.as_ref().ok_or_else(|| Error::InvalidArgument("missing --params".into()))?;
            if params.len() != 8 {
                return Err(Error::InvalidArgument(format!("V needs 8 parameters, got {}", params.len())));
            }
            let mut t = [C64::new(0.0, 0.0); 8];
            t.copy_from_slice(params);
            let v = VParams::new(t, need_base(common)?)?;
            let (val, diag) = ellhyp::identities::integrate_v(&v.t(), v.base(), &cfg)?;
            extra.insert("quad_diag".into(), json!(diag));
            (val, diag.delta)
        }
        Function::Vseries => {
            let base = need_base(common)?;
            let n = need(a.n, "N")?;
            let spec = match (&a.ft, &a.params) {
                (Some(ft), None) if ft.len() == 4 => frenkel_turaev_spec(ft[0], ft[1], ft[2], ft[3], n, base)?,
                (None, Some(ps)) if ps.len() >= 2 => VSeriesSpec::new(ps[0], &ps[1..], n, base)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "vseries needs --ft t1,t2,t3,t5 or --params t0,t1,... (not both)".into(),
                    ))
                }
            };
            let terms = v_series_terms(&spec, &b)?;
            let mass: f64 = terms.iter().map(|t| t.norm()).sum();
            (v_series(&spec, &b)?, 8.0 * eps * mass * terms.len() as f64)
        }
    };
    eprintln!("{} = {}  (error bound {:.1e})", fn_name(a.function), fmt_c(value), err);
    let mut result = serde_json::Map::new();
    result.insert("function".into(), json!(a.function));
    result.insert("value".into(), json!(pair(value)));
    result.insert("error_bound".into(), json!(err));
    result.extend(extra);
    emit(common, &Record::new(json!({ "common": common, "eval": a }), result))?;
    Ok(true)
}

fn fn_name(f: Function) -> String {
    serde_json::to_value(f).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// A single check on explicitly given parameters.
fn explicit_check(id: &str, t: &[C64], common: &Common, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let base = need_base(common)?;
    let arr8 = || -> Result<[C64; 8]> {
        let mut a = [C64::new(0.0, 0.0); 8];
        if t.len() != 8 {
            return Err(Error::InvalidArgument(format!("{id} needs 8 parameters, got {}", t.len())));
        }
        a.copy_from_slice(t);
        Ok(a)
    };
    let tr = |tr| -> Result<VerificationReport> { Ok(verify_e7(tr, &VParams::new(arr8()?, base)?, cfg)) };
    match id {
        "elbeta" => {
            let mut a = [C64::new(0.0, 0.0); 6];
            if t.len() != 6 {
                return Err(Error::InvalidArgument(format!("elbeta needs 6 parameters, got {}", t.len())));
            }
            a.copy_from_slice(t);
            Ok(verify_elliptic_beta(&BetaParams::from_all(a, base)?, cfg))
        }
        "e7_1" => tr(E7Transform::One),
        "e7_2" => tr(E7Transform::Two),
        "e7_3" => tr(E7Transform::Three),
        "eheq1" => Ok(verify_ehe(&VParams::new(arr8()?, base)?, cfg)),
        "vdet" => Ok(verify_casoratian(&arr8()?, &base, cfg)),
        _ => Err(Error::InvalidArgument(format!("--params is not supported for {id}"))),
    }
}

fn verify(common: &Common, a: &VerifyArgs) -> Result<bool> {
    let cfg = verify_config(common)?;
    let start = Instant::now();
    let reports: Vec<TimedReport> = if let Some(t) = &a.params {
        let report = explicit_check(&a.target, t, common, &cfg)?;
        vec![TimedReport { report, seconds: start.elapsed().as_secs_f64() }]
    } else {
        let ids: Vec<&str> = if SUITES.contains(&a.target.as_str()) {
            suite_members(&a.target)?
        } else if battery_spec(&a.target).is_some() {
            vec![a.target.as_str()]
        } else {
            return Err(Error::InvalidArgument(format!("unknown identity or suite {:?}", a.target)));
        };
        let input = BatteryInput {
            seed: common.seed,
            draws: if a.quick { Some(1) } else { common.draws },
            cfg,
            base: base(common)?,
            r: common.r,
            nu2: common.nu,
        };
        let mut all = Vec::new();
        for id in ids {
            if a.quick && QUICK_SKIP.contains(&id) {
                continue;
            }
            all.extend(run_battery(id, &input)?);
        }
        all
    };
    let wall = start.elapsed().as_secs_f64();
    for t in &reports {
        let r = &t.report;
        let status = if r.passed { "pass" } else { "FAIL" };
        let why = r.failure.as_ref().map_or(String::new(), |f| format!(" [{}: {}]", f.kind, f.message));
        eprintln!("{status} {:<20} residual {:.3e} (tol {:.1e}){why}", r.identity_id, r.rel_residual, r.tolerance_used);
    }
    let doc = ReportDocument::new(json!({ "common": common, "verify": a, "cfg": cfg }), reports, wall);
    eprintln!("{}/{} passed in {:.1} s", doc.summary.passed, doc.summary.total, wall);
    let ok = doc.summary.failed == 0;
    emit(common, &doc)?;
    Ok(ok)
}

/// Loads `builtin:<name>` (with `--Nc`, `--Nf`) or a spec file.
fn load_theory(source: &str, nc: Option<usize>, nf: Option<usize>) -> Result<(TheorySpec, Option<String>)> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let (nc, nf) = (need(nc, "Nc")?, need(nf, "Nf")?);
        let spec = builtin(name, nc, nf)?;
        let dual = match name {
            "seiberg_electric" => Some("builtin:seiberg_magnetic".to_string()),
            "seiberg_magnetic" => Some("builtin:seiberg_electric".to_string()),
            _ => None,
        };
        return Ok((spec, dual));
    }
    let text = std::fs::read_to_string(source).map_err(|e| {
        Error::InvalidArgument(format!("cannot read {source}: {e} (builtins: {})", BUILTIN_NAMES.join(", ")))
    })?;
    Ok((TheorySpec::from_json(&text)?, None))
}

fn index(common: &Common, a: &IndexArgs) -> Result<bool> {
    let cfg = verify_config(common)?;
    let base = need_base(common)?;
    let (spec, dual) = load_theory(&a.source, a.nc, a.nf)?;
    let y = match (&a.y, &a.s, &a.t) {
        (Some(y), None, None) => y.to_vec(),
        (None, Some(s), Some(t)) => {
            let (nc, nf) = (need(a.nc, "Nc")?, need(a.nf, "Nf")?);
            seiberg_fugacities(nc, nf, s, t, base.p(), base.q())?
        }
        (None, None, None) if spec.flavor_rank == 0 => Vec::new(),
        _ => return Err(Error::InvalidArgument("give either --y or both --s and --t".into())),
    };
    if y.len() != spec.flavor_rank {
        return Err(Error::InvalidArgument(format!(
            "{} needs {} flavor fugacities, got {}",
            spec.name,
            spec.flavor_rank,
            y.len()
        )));
    }
    let (value, diag) = match evaluate_index(&spec, base.p(), base.q(), &y, &cfg) {
        Ok(v) => v,
        Err(e @ (Error::AuditFailure(_) | Error::PoleOnContour(_) | Error::NoConvergence { .. })) => {
            eprintln!("{} index: {e}", spec.name);
            let result = json!({ "theory": spec.name, "failure": { "kind": e.kind(), "message": e.to_string() } });
            emit(common, &Record::new(json!({ "common": common, "index": a }), result))?;
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    eprintln!("{} index = {}", spec.name, fmt_c(value));
    eprintln!(
        "audit: min pole distance {:.3e}, {} nodes per dimension, last delta {:.3e}",
        diag.audit_min_distance, diag.nodes_per_dim, diag.delta
    );
    let mut result = json!({ "theory": spec.name, "value": pair(value), "quad_diag": diag });
    let mut ok = true;
    if let Some(dual_src) = dual {
        let (dual_spec, _) = load_theory(&dual_src, a.nc, a.nf)?;
        let (dv, ddiag) = evaluate_index(&dual_spec, base.p(), base.q(), &y, &cfg)?;
        let rep = VerificationReport::two_sided("duality", value, dv, cfg.tol_or(1e-7)).diag(ddiag);
        eprintln!("{} index = {}; duality residual {:.3e}", dual_spec.name, fmt_c(dv), rep.rel_residual);
        ok = rep.passed;
        result["dual"] =
            json!({ "theory": dual_spec.name, "value": pair(dv), "residual": rep.rel_residual, "passed": rep.passed });
    }
    emit(common, &Record::new(json!({ "common": common, "index": a }), result))?;
    Ok(ok)
}

fn anomaly(common: &Common, a: &AnomalyArgs) -> Result<bool> {
    let (spec, auto_dual) = load_theory(&a.source, a.nc, a.nf)?;
    let dual = a.dual.clone().or(auto_dual);
    let sys = match &dual {
        Some(d) => {
            let (other, _) = load_theory(d, a.nc, a.nf)?;
            // the source is the electric side unless it is the magnetic builtin paired automatically
            let electric_first = a.dual.is_some() || a.source != "builtin:seiberg_magnetic";
            if electric_first {
                AnomalySystem::duality(&spec, &other)?
            } else {
                AnomalySystem::duality(&other, &spec)?
            }
        }
        None => AnomalySystem::from_spec(&spec)?,
    };
    let rep = check_anomalies(&sys);
    for f in rep.families.iter().chain([&rep.evenness]) {
        let status = if f.zero() { "zero" } else { "NONZERO" };
        eprintln!("{:<12} {status} ({} equations, {} violated)", f.family, f.equations, f.violations.len());
    }
    let result = json!({ "theory": spec.name, "dual": dual, "report": rep });
    emit(common, &Record::new(json!({ "common": common, "anomaly": a }), result))?;
    Ok(rep.all_zero)
}
