use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use curvekit::curvespace::{
    frenet_apparatus, frenet_apparatus_with, read_apparatus_csv, read_curve_csv, resample_by_arclength,
    write_apparatus_csv, write_curve_csv, FrenetApparatus, SampledCurve,
};
use curvekit::generating::{build_generated, classify};
use curvekit::mannheim::{check_partner, check_predicate, LambdaChoice, OffsetFunction, Tolerances};
use curvekit::reconstruct::{integrate_frenet, make_named_curve, InitialFrame, ProfileSpec};
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::args::*;
use crate::field::FieldSpec;
use crate::plot;

pub const TOL_PRED_ENV: &str = "CURVEKIT_TOL_PRED";

#[derive(Debug)]
pub enum Failure {
    /// clap already printed the message.
    Usage,
    Input(String),
    Numeric(String),
    Verdict,
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verdict => 1,
            Failure::Usage | Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    pub fn report(&self) {
        match self {
            Failure::Usage => {}
            Failure::Input(m) => eprintln!("error: {m}"),
            Failure::Numeric(m) => eprintln!("error: numerical failure: {m}"),
            Failure::Verdict => eprintln!("verdict: false"),
        }
    }
}

fn input<E: std::fmt::Display>(context: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", context.display()))
}

fn numeric<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Numeric(e.to_string())
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(input(path))
}

fn read_curve(path: &Path) -> Result<SampledCurve, Failure> {
    read_curve_csv(open(path)?).map_err(input(path))
}

fn read_apparatus(path: &Path) -> Result<FrenetApparatus, Failure> {
    read_apparatus_csv(open(path)?).map_err(input(path))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = NamedTempFile::new_in(dir).map_err(input(path))?;
    tmp.write_all(bytes).map_err(input(path))?;
    tmp.as_file().sync_all().map_err(input(path))?;
    tmp.persist(path).map_err(|e| input(path)(e.error))?;
    Ok(())
}

fn curve_bytes(curve: &SampledCurve) -> Vec<u8> {
    let mut buf = Vec::new();
    write_curve_csv(&mut buf, curve).expect("write to memory");
    buf
}

fn apparatus_bytes(app: &FrenetApparatus) -> Vec<u8> {
    let mut buf = Vec::new();
    write_apparatus_csv(&mut buf, app).expect("write to memory");
    buf
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn tolerances(app: &FrenetApparatus, args: &TolArgs) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::for_provenance(app.provenance());
    if let Ok(raw) = std::env::var(TOL_PRED_ENV) {
        tol.tol_pred = match raw.trim().parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => x,
            _ => return Err(Failure::Input(format!("{TOL_PRED_ENV}={raw:?} is not a positive number"))),
        };
    }
    if let Some(x) = args.tol_pred {
        tol.tol_pred = x;
    }
    if let Some(x) = args.tol_col {
        tol.tol_col = x;
    }
    Ok(tol)
}

fn lambda_choice(args: &LambdaArgs, spec: &FieldSpec, grid: &[f64]) -> LambdaChoice {
    match args.lambda0 {
        Some(l0) => {
            let v = spec.v();
            LambdaChoice::Offset(OffsetFunction::on_grid(&|s| v.eval(s), l0, grid))
        }
        None => LambdaChoice::Auto,
    }
}

fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    FieldSpec::parse(text).map_err(|e| Failure::Input(format!("--field: {e}")))
}

/// Runs one subcommand; returns its verdict when it has one.
pub fn dispatch(command: Command) -> Result<Option<bool>, Failure> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Frenet(a) => frenet(a),
        Command::Mannheim(MannheimCommand::Check(a)) => mannheim_check(a),
        Command::Mannheim(MannheimCommand::Partner(a)) => mannheim_partner(a),
        Command::Generating(GeneratingCommand::Build(a)) => generating_build(a),
        Command::Generating(GeneratingCommand::Classify(a)) => generating_classify(a),
        Command::Plot(a) => plot_cmd(a),
    }
}

fn write_integrated(curve: &SampledCurve, app: &FrenetApparatus, out: &Path, apparatus: Option<&Path>) -> Result<(), Failure> {
    write_atomic(out, &curve_bytes(curve))?;
    if let Some(p) = apparatus {
        write_atomic(p, &apparatus_bytes(app))?;
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<Option<bool>, Failure> {
    let mut params = BTreeMap::new();
    for (k, v) in a.params {
        if params.insert(k.clone(), v).is_some() {
            return Err(Failure::Input(format!("--param {k} given twice")));
        }
    }
    let profile = make_named_curve(&a.family, &params, a.s_max).map_err(|e| Failure::Input(e.to_string()))?;
    let (curve, app) = integrate_frenet(&profile, &InitialFrame::default(), a.step).map_err(numeric)?;
    write_integrated(&curve, &app, &a.out, a.apparatus.as_deref())?;
    Ok(None)
}

fn reconstruct(a: ReconstructArgs) -> Result<Option<bool>, Failure> {
    let spec: ProfileSpec = serde_json::from_reader(open(&a.profile)?).map_err(input(&a.profile))?;
    let profile = spec.build().map_err(input(&a.profile))?;
    let step = a
        .step
        .or(spec.step())
        .ok_or_else(|| Failure::Input(format!("{}: no step given", a.profile.display())))?;
    let (curve, app) = integrate_frenet(&profile, &InitialFrame::default(), step).map_err(numeric)?;
    write_integrated(&curve, &app, &a.out, a.apparatus.as_deref())?;
    Ok(None)
}

fn frenet(a: FrenetArgs) -> Result<Option<bool>, Failure> {
    let curve = read_curve(&a.input)?;
    let app = frenet_apparatus_with(&curve, a.kappa_min).map_err(numeric)?;
    write_atomic(&a.out, &apparatus_bytes(&app))?;
    Ok(None)
}

fn mannheim_check(a: CheckArgs) -> Result<Option<bool>, Failure> {
    let app = read_apparatus(&a.input)?;
    let spec = parse_field(&a.field)?;
    let grid = app.s_values();
    let field = spec.field(&grid).map_err(Failure::Input)?;
    let tol = tolerances(&app, &a.tol)?;
    let (report, _) = check_predicate(&app, &field, lambda_choice(&a.lambda, &spec, &grid), tol).map_err(numeric)?;
    emit_json(&report, a.out.as_deref())?;
    Ok(Some(report.verdict))
}

fn curve_and_apparatus(curve: &Path, apparatus: Option<&Path>) -> Result<(SampledCurve, FrenetApparatus), Failure> {
    let c = read_curve(curve)?;
    let app = match apparatus {
        Some(p) => read_apparatus(p)?,
        None => frenet_apparatus(&c).map_err(numeric)?,
    };
    Ok((c, app))
}

fn mannheim_partner(a: PartnerArgs) -> Result<Option<bool>, Failure> {
    let (curve, app) = curve_and_apparatus(&a.input, a.apparatus.as_deref())?;
    let spec = parse_field(&a.field)?;
    let grid = app.s_values();
    let field = spec.field(&grid).map_err(Failure::Input)?;
    let tol = tolerances(&app, &a.tol)?;
    let check = check_partner(&curve, &app, &field, lambda_choice(&a.lambda, &spec, &grid), tol).map_err(numeric)?;
    let partner = resample_by_arclength(&check.partner.points, curve.step()).map_err(numeric)?;
    write_atomic(&a.out, &curve_bytes(&partner))?;
    emit_json(&check.report, a.report.as_deref())?;
    Ok(Some(check.report.verdict))
}

fn generating_build(a: BuildArgs) -> Result<Option<bool>, Failure> {
    let (curve, app) = curve_and_apparatus(&a.input, a.apparatus.as_deref())?;
    let k = build_generated(&curve, &app, a.phi0).map_err(numeric)?;
    write_atomic(&a.out, &curve_bytes(&k.curve))?;
    emit_json(&k.checks, a.report.as_deref())?;
    Ok(None)
}

fn generating_classify(a: ClassifyArgs) -> Result<Option<bool>, Failure> {
    let app = read_apparatus(&a.input)?;
    let field = match &a.field {
        None => None,
        Some(text) => match parse_field(text)?.constant() {
            Some((u, 0.0, w)) => Some((u, w)),
            _ => return Err(Failure::Input("--field: classify takes a constant field with v = 0".into())),
        },
    };
    let result = classify(&app, field).map_err(numeric)?;
    emit_json(&result, a.out.as_deref())?;
    Ok(Some(result.label != curvekit::generating::Label::None))
}

fn points(curve: &SampledCurve) -> Vec<[f64; 3]> {
    curve.points().iter().map(|p| [p.x, p.y, p.z]).collect()
}

fn plot_cmd(a: PlotArgs) -> Result<Option<bool>, Failure> {
    let curve = read_curve(&a.input)?;
    let partner = a.partner.as_deref().map(read_curve).transpose()?;
    let svg = plot::render(&points(&curve), partner.as_ref().map(points).as_deref());
    write_atomic(&a.out, svg.as_bytes())?;
    Ok(None)
}
