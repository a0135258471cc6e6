//! Command implementations and the error → exit-code mapping.

use crate::config::{Format, RunConfig};
use crate::report::{
    self, FlatVerifyReport, HolomorphyReport, IdentityReport, QuadricCheckReport,
    SectionSampleEntry, SectionSampleReport, SweepPointEntry, SCHEMA_VERSION,
};
use crate::{svg, EXIT_CORRESPONDENCE, EXIT_DEGENERATE, EXIT_IDENTITY, EXIT_PARSE};
use std::path::Path;
use twistor_core::error::Error;
use twistor_core::flat::{
    gauge_action_check, random_identity_inputs, verify_adtors_same_torsion, verify_bianchi,
    verify_curvature_zero_with, verify_structure_equation_with, BrokenXiForms, FlatForms,
    FormEvaluator,
};
use twistor_core::io::{PlaneRepr, PointRepr};
use twistor_core::linalg::round_sig;
use twistor_core::quadric::Quadric;
use twistor_core::section::{on_quadric_residual, section_sample};
use twistor_core::sweeps::{
    equivalence_sweep, perturbed_equivalence_sweep, EquivalenceSweep, Verdict,
};

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::DegenerateQuadric { .. } | Error::AmbientTooSmall { .. } => EXIT_DEGENERATE,
        Error::HasRealPoints(_)
        | Error::FiberMultiplicity { .. }
        | Error::RankDeficientTangent { .. }
        | Error::IllConditionedExpansion { .. }
        | Error::FiberMismatch(_)
        | Error::RealPoint => EXIT_CORRESPONDENCE,
        _ => EXIT_PARSE,
    }
}

fn fail(err: &Error) -> u8 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

fn load_quadric(file: &Path, cfg: &RunConfig) -> Result<Quadric, u8> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", file.display());
        EXIT_PARSE
    })?;
    let q = twistor_core::io::quadric_from_json(&text).map_err(|e| fail(&e))?;
    if let Some(n) = cfg.n {
        if n != q.ambient_n() {
            eprintln!(
                "error: --n {} does not match the file's n = {}",
                n,
                q.ambient_n()
            );
            return Err(EXIT_PARSE);
        }
    }
    Ok(q)
}

/// `quadric-check`: smoothness, real-point verdict, phase normal form.
pub fn quadric_check(file: &Path, cfg: &RunConfig) -> u8 {
    let q = match load_quadric(file, cfg) {
        Ok(q) => q,
        Err(code) => return code,
    };
    if !q.is_smooth() {
        println!("quadric: n = {}, degenerate (not smooth)", q.ambient_n());
        let report = QuadricCheckReport {
            schema_version: SCHEMA_VERSION,
            command: "quadric-check",
            n: q.ambient_n(),
            smooth: false,
            has_real_points: None,
            phases: None,
            normal_form_residual: None,
            basis: None,
        };
        emit_json(cfg, "quadric_check.json", &report);
        return EXIT_DEGENERATE;
    }
    let has_real = match q.has_real_points() {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let (phases, residual, basis) = if has_real {
        println!("quadric: n = {}, smooth, has real points", q.ambient_n());
        (None, None, None)
    } else {
        let nf = match q.normal_form() {
            Ok(nf) => nf,
            Err(e) => return fail(&e),
        };
        let phases: Vec<f64> = nf.phases.iter().map(|&p| round_sig(p, 12)).collect();
        let residual = nf.residual(&q);
        println!(
            "quadric: n = {}, smooth, no real points; phases = {:?}, normal-form residual = {:.3e}",
            q.ambient_n(),
            phases,
            residual
        );
        let basis: Vec<Vec<f64>> = (0..nf.basis.nrows())
            .map(|i| (0..nf.basis.ncols()).map(|j| nf.basis[(i, j)]).collect())
            .collect();
        (Some(phases), Some(round_sig(residual, 12)), Some(basis))
    };
    let report = QuadricCheckReport {
        schema_version: SCHEMA_VERSION,
        command: "quadric-check",
        n: q.ambient_n(),
        smooth: true,
        has_real_points: Some(has_real),
        phases,
        normal_form_residual: residual,
        basis,
    };
    emit_json(cfg, "quadric_check.json", &report);
    0
}

/// `section-sample`: sample the induced section; JSON/CSV plus optional
/// SVG scatter.
pub fn section_sample_cmd(file: &Path, svg_path: Option<&Path>, cfg: &RunConfig) -> u8 {
    let q = match load_quadric(file, cfg) {
        Ok(q) => q,
        Err(code) => return code,
    };
    if !q.is_smooth() {
        eprintln!("error: quadric is degenerate");
        return EXIT_DEGENERATE;
    }
    match q.has_real_points() {
        Ok(false) => {}
        Ok(true) => {
            eprintln!("error: quadric has real points; it induces no section");
            return EXIT_CORRESPONDENCE;
        }
        Err(e) => return fail(&e),
    }
    let samples = match section_sample(&q, cfg.trials, cfg.seed) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let entries: Vec<SectionSampleEntry> = samples
        .iter()
        .map(|s| SectionSampleEntry {
            plane: PlaneRepr::from_plane(&s.plane),
            point: PointRepr::from_point(&s.point).0,
            tau: [s.tau.re, s.tau.im],
            on_quadric_residual: on_quadric_residual(&q, s),
        })
        .collect();
    let max_resid = entries
        .iter()
        .map(|e| e.on_quadric_residual)
        .fold(0.0, f64::max);
    println!(
        "section-sample: n = {}, {} samples, max on-quadric residual {:.3e}",
        q.ambient_n(),
        entries.len(),
        max_resid
    );
    match cfg.format {
        Format::Json => {
            let report = SectionSampleReport {
                schema_version: SCHEMA_VERSION,
                command: "section-sample",
                n: q.ambient_n(),
                seed: cfg.seed,
                count: entries.len(),
                max_on_quadric_residual: max_resid,
                samples: entries,
            };
            emit_json(cfg, "sections.json", &report);
        }
        Format::Csv => {
            let csv = sections_csv(&samples, &q);
            match report::write_text(cfg.output_dir.as_deref(), "sections.csv", &csv) {
                Ok(Some(path)) => println!("wrote {}", path.display()),
                Ok(None) => print!("{csv}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            }
        }
    }
    if let Some(path) = svg_path {
        let taus: Vec<(f64, f64)> = samples.iter().map(|s| (s.tau.re, s.tau.im)).collect();
        if let Err(e) = std::fs::write(path, svg::tau_scatter(&taus)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_PARSE;
        }
        println!("wrote {}", path.display());
    }
    0
}

fn sections_csv(samples: &[twistor_core::section::SectionSample], q: &Quadric) -> String {
    let d = q.dim();
    let mut out = String::new();
    for i in 0..d {
        out.push_str(&format!("u{i},"));
    }
    for i in 0..d {
        out.push_str(&format!("v{i},"));
    }
    out.push_str("tau_re,tau_im,on_quadric_residual\n");
    for s in samples {
        for i in 0..d {
            out.push_str(&format!("{},", s.plane.u()[i]));
        }
        for i in 0..d {
            out.push_str(&format!("{},", s.plane.v()[i]));
        }
        out.push_str(&format!(
            "{},{},{:e}\n",
            s.tau.re,
            s.tau.im,
            on_quadric_residual(q, s)
        ));
    }
    out
}

/// `holomorphy`: paired holomorphy/torsion sweep with optional
/// perturbation.
pub fn holomorphy(file: &Path, perturb: f64, cfg: &RunConfig) -> u8 {
    let q = match load_quadric(file, cfg) {
        Ok(q) => q,
        Err(code) => return code,
    };
    if !q.is_smooth() {
        eprintln!("error: quadric is degenerate");
        return EXIT_DEGENERATE;
    }
    match q.has_real_points() {
        Ok(false) => {}
        Ok(true) => {
            eprintln!("error: quadric has real points; it induces no section");
            return EXIT_CORRESPONDENCE;
        }
        Err(e) => return fail(&e),
    }
    let step = cfg.tol("step");
    let sweep = if perturb == 0.0 {
        equivalence_sweep(&q, cfg.trials, cfg.seed, step)
    } else {
        perturbed_equivalence_sweep(&q, perturb, cfg.trials, cfg.seed, step)
    };
    let sweep = match sweep {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let tol_holo = cfg.tol("holomorphic");
    let tol_broken = cfg.tol("perturbed");
    let expected = if perturb == 0.0 {
        Verdict::Holomorphic
    } else {
        Verdict::Broken
    };
    let agree = sweep.unanimous(expected, tol_holo, tol_broken);
    println!(
        "holomorphy: n = {}, {} planes, perturbation = {}, max holomorphy residual {:.3e}, \
         max torsion coefficient {:.3e}, criteria agree: {}",
        q.ambient_n(),
        sweep.points.len(),
        perturb,
        sweep.max_holomorphy,
        sweep.max_torsion,
        agree
    );
    let report = holomorphy_report(&q, cfg, &sweep, agree);
    emit_json(cfg, "holomorphy.json", &report);
    0
}

fn holomorphy_report(
    q: &Quadric,
    cfg: &RunConfig,
    sweep: &EquivalenceSweep,
    agree: bool,
) -> HolomorphyReport {
    HolomorphyReport {
        schema_version: SCHEMA_VERSION,
        command: "holomorphy",
        n: q.ambient_n(),
        seed: cfg.seed,
        trials: sweep.points.len(),
        perturbation: sweep.perturbation,
        max_holomorphy: sweep.max_holomorphy,
        max_torsion: sweep.max_torsion,
        criteria_agree: agree,
        points: sweep
            .points
            .iter()
            .map(|p| SweepPointEntry {
                plane: PlaneRepr::from_plane(&p.plane),
                holomorphy: p.holomorphy,
                torsion: p.torsion,
            })
            .collect(),
    }
}

/// `flat-verify`: max scaled residuals of the five identity families.
pub fn flat_verify(n_list: &[usize], break_xi: bool, cfg: &RunConfig) -> u8 {
    let tol = cfg.tol("identity");
    let mut identities = Vec::new();
    let mut worst: f64 = 0.0;
    for &n in n_list {
        let inputs = random_identity_inputs(n, cfg.trials, cfg.seed);
        let eval: &dyn FormEvaluator = if break_xi {
            &BrokenXiForms
        } else {
            &FlatForms
        };
        let mut r_struct: f64 = 0.0;
        let mut r_curv: f64 = 0.0;
        let mut r_bianchi: f64 = 0.0;
        let mut r_gauge: f64 = 0.0;
        let mut r_adtors: f64 = 0.0;
        for t in &inputs {
            let scale_xy = (t.x.norm() * t.y.norm()).max(1.0);
            r_struct = r_struct
                .max(verify_structure_equation_with(eval, &t.x, &t.y).norm() / scale_xy);
            let scale_flat = (t.flat_x.norm() * t.flat_y.norm()).max(1.0);
            let (om, xi, phi) = verify_curvature_zero_with(eval, &t.flat_x, &t.flat_y);
            r_curv = r_curv.max(om.abs().max(xi.norm()).max(phi.norm()) / scale_flat);
            let scale_xyz = (t.x.norm() * t.y.norm() * t.z.norm()).max(1.0);
            r_bianchi = r_bianchi.max(verify_bianchi(&t.x, &t.y, &t.z).norm() / scale_xyz);
            let gauge = gauge_action_check(&t.gauge_block, &t.x).expect("gauge block sized 2xn");
            r_gauge = r_gauge.max(gauge.max() / (t.gauge_block.norm() * t.x.norm()).max(1.0));
            let adtors =
                verify_adtors_same_torsion(&t.shift, &t.x, &t.y).expect("n coefficients");
            let amp = t.shift.iter().map(|v| v.norm()).fold(1.0, f64::max);
            r_adtors = r_adtors.max(adtors.norm() / (scale_xy * amp));
        }
        for (name, value) in [
            ("structure_equation", r_struct),
            ("curvature_zero", r_curv),
            ("bianchi", r_bianchi),
            ("gauge_action", r_gauge),
            ("adtors_same_torsion", r_adtors),
        ] {
            println!(
                "flat-verify: identity = {name}, n = {n}, trials = {}, max residual = {:.3e}",
                cfg.trials, value
            );
            identities.push(IdentityReport {
                identity: name,
                n,
                trials: cfg.trials,
                max_residual: value,
            });
            worst = worst.max(value);
        }
    }
    let passed = worst < tol;
    println!(
        "flat-verify: worst residual {worst:.3e} against tolerance {tol:.1e}: {}",
        if passed { "pass" } else { "FAIL" }
    );
    let report = FlatVerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "flat-verify",
        seed: cfg.seed,
        tolerance: tol,
        passed,
        identities,
    };
    emit_json(cfg, "flat_verify.json", &report);
    if passed {
        0
    } else {
        EXIT_IDENTITY
    }
}

fn emit_json<T: serde::Serialize>(cfg: &RunConfig, name: &str, value: &T) {
    match report::write_json(cfg.output_dir.as_deref(), name, value) {
        Ok(Some(path)) => println!("wrote {}", path.display()),
        Ok(None) => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("report serialises")
            );
        }
        Err(e) => eprintln!("error: cannot write report: {e}"),
    }
}
