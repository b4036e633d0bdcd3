//! Subcommand implementations. Each returns a [`Report`]; exit codes are
//! chosen by the caller.

use serde_json::{json, Value};

use pwa_bounds_core::certify::{
    certify_bounded, certify_polyhedral, certify_polyhedral_stratified, certify_strict_sublevel,
    check_coercive_on_cone, check_geometric, check_growth, classify_robinson, estimate_tau,
    uniform_local_radius, Certificate, EstimateConfig, Quantity, SetSpec,
};
use pwa_bounds_core::numeric::{format_rational, int, Rational};
use pwa_bounds_core::polyhedra::{Norm, PolyCone};
use pwa_bounds_core::pwa::{Infimum, MinMaxFunction};

use crate::files::{FunctionFile, Loaded, SetFile};
use crate::fixtures;
use crate::report::{matrix_json, quantity_json, rational_json, vector_json, Report};
use crate::InputError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub norm: Norm,
    pub samples: usize,
    pub box_radius: Rational,
    pub grid_step: Option<Rational>,
    pub max_grid_points: usize,
}

impl Default for Options {
    fn default() -> Self {
        let config = EstimateConfig::default();
        Options {
            seed: config.seed,
            norm: config.norm,
            samples: config.samples,
            box_radius: config.box_radius,
            grid_step: config.grid_step,
            max_grid_points: config.max_grid_points,
        }
    }
}

impl Options {
    pub fn config(&self) -> EstimateConfig {
        EstimateConfig {
            samples: self.samples,
            box_radius: self.box_radius.clone(),
            seed: self.seed,
            norm: self.norm,
            grid_step: self.grid_step.clone(),
            max_grid_points: self.max_grid_points,
        }
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, self.seed, self.norm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TheoremChoice {
    /// Pick the checks that apply to the set kind.
    Auto,
    Robinson,
    Growth,
    Cone,
    Geometric,
    Polyhedral,
    Stratified,
    Bounded,
}

pub fn infimum_text(inf: &Infimum) -> String {
    match inf {
        Infimum::NegInfinity => "-inf".to_string(),
        Infimum::Finite(r) => format_rational(r),
    }
}

fn cone_json(c: &PolyCone) -> Result<Value, InputError> {
    Ok(json!({ "A": matrix_json(&c.normals()?) }))
}

fn distinct_cones(cones: Vec<PolyCone>) -> Result<Vec<PolyCone>, InputError> {
    let mut kept: Vec<PolyCone> = Vec::new();
    for c in cones {
        let mut seen = false;
        for k in &kept {
            if k.same_set(&c)? {
                seen = true;
                break;
            }
        }
        if !seen {
            kept.push(c);
        }
    }
    Ok(kept)
}

pub fn analyze(f: &MinMaxFunction, opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let analysis = f.analyze_pieces()?;
    let f_star: Vec<Value> = analysis
        .pieces
        .iter()
        .map(|p| Value::String(infimum_text(&p.infimum)))
        .collect();
    let minimizers: Vec<Value> = analysis
        .pieces
        .iter()
        .map(|p| p.minimizer.as_deref().map_or(Value::Null, vector_json))
        .collect();
    let mut out = json!({
        "dim": f.dimension(),
        "f_star": f_star,
        "minimizers": minimizers,
        "active": analysis.active(),
        "rho": analysis.rho().as_ref().map_or(Value::Null, rational_json),
    });
    let recession: Vec<Value> = distinct_cones(f.rec_plus_sublevel())?
        .iter()
        .map(cone_json)
        .collect::<Result<_, _>>()?;
    out["rec_plus_sublevel"] = Value::Array(recession);
    report.line(format!(
        "f_star = ({})",
        f_star.iter().map(|v| v.as_str().unwrap_or("")).collect::<Vec<_>>().join(", ")
    ));
    if !analysis.sublevel_nonempty() {
        report.line("sublevel set empty");
        out["sublevel_pieces"] = Value::Array(Vec::new());
        report.analysis = Some(out);
        return Ok(());
    }
    let union = f.sublevel_union_with(&analysis)?;
    out["sublevel_pieces"] = Value::Array(
        union
            .pieces()
            .iter()
            .map(|p| serde_json::to_value(crate::files::RowsFile::from_polyhedron(p)).expect("rows serialize"))
            .collect(),
    );
    let robinson = classify_robinson(f)?;
    let local = uniform_local_radius(f, opts.norm)?;
    let global = certify_polyhedral(f, &SetSpec::FullSpace(f.dimension()), opts.norm)?;
    for key in ["L", "r"] {
        if let Some(q) = local.get(key) {
            out[key] = quantity_json(q);
        }
    }
    match analysis.rho() {
        Some(rho) => report.line(format!("rho = {}", format_rational(&rho))),
        None => report.line("all piece minima nonpositive: global error bound"),
    }
    report.analysis = Some(out);
    report.line(format!("global error bound: {}", global.verdict.tag()));
    report.push(&robinson);
    report.push(&local);
    report.push(&global);
    Ok(())
}

pub fn cmd_analyze(func: &Loaded<FunctionFile>, opts: &Options) -> Result<Report, InputError> {
    let f = func.value.to_function()?;
    let mut report = opts.report("analyze");
    report.input(&func.name, &func.sha256);
    analyze(&f, opts, &mut report)?;
    Ok(report)
}

fn inapplicable(theorem: &str, set: &SetSpec) -> InputError {
    InputError::new(format!("theorem '{theorem}' does not apply to set kind '{}'", set.kind()))
}

/// Runs the selected checks of `f` on `v`.
pub fn certify(
    f: &MinMaxFunction,
    v: &SetSpec,
    theorem: TheoremChoice,
    piece: Option<usize>,
    opts: &Options,
) -> Result<Vec<Certificate>, InputError> {
    let config = opts.config();
    let certs = match theorem {
        TheoremChoice::Auto => match v {
            SetSpec::FullSpace(_) => vec![classify_robinson(f)?, certify_polyhedral(f, v, opts.norm)?],
            SetSpec::Box { .. } | SetSpec::Points { .. } => vec![certify_bounded(f, v, &config)?],
            SetSpec::PolyUnion(_) => vec![certify_polyhedral(f, v, opts.norm)?],
            SetSpec::Cone(_) => vec![check_coercive_on_cone(f, v)?, certify_polyhedral(f, v, opts.norm)?],
            SetSpec::StrictSublevel { rho, .. } => vec![certify_strict_sublevel(f, rho)?],
        },
        TheoremChoice::Robinson => match v {
            SetSpec::FullSpace(_) => vec![classify_robinson(f)?],
            SetSpec::StrictSublevel { rho, .. } => vec![certify_strict_sublevel(f, rho)?],
            _ => return Err(inapplicable("robinson", v)),
        },
        TheoremChoice::Growth => vec![check_growth(f, v, opts.norm)?],
        TheoremChoice::Cone => match v {
            SetSpec::Cone(_) | SetSpec::FullSpace(_) => vec![check_coercive_on_cone(f, v)?],
            _ => return Err(inapplicable("cone", v)),
        },
        TheoremChoice::Geometric => {
            let pieces = match piece {
                Some(i) => vec![i],
                None => f.analyze_pieces()?.positive(),
            };
            if pieces.is_empty() {
                return Err(InputError::new("geometric check needs a piece with positive minimum"));
            }
            pieces
                .into_iter()
                .map(|i| check_geometric(f, v, i))
                .collect::<Result<_, _>>()?
        }
        TheoremChoice::Polyhedral => vec![certify_polyhedral(f, v, opts.norm)?],
        TheoremChoice::Stratified => vec![certify_polyhedral_stratified(f, v, opts.norm)?],
        TheoremChoice::Bounded => vec![certify_bounded(f, v, &config)?],
    };
    Ok(certs)
}

fn loaded_pair(
    func: &Loaded<FunctionFile>,
    set: &Loaded<SetFile>,
    report: &mut Report,
) -> Result<(MinMaxFunction, SetSpec), InputError> {
    let f = func.value.to_function()?;
    let v = set.value.to_set(&f)?;
    report.input(&func.name, &func.sha256);
    report.input(&set.name, &set.sha256);
    Ok((f, v))
}

pub fn cmd_certify(
    func: &Loaded<FunctionFile>,
    set: &Loaded<SetFile>,
    theorem: TheoremChoice,
    piece: Option<usize>,
    opts: &Options,
) -> Result<Report, InputError> {
    let mut report = opts.report("certify");
    let (f, v) = loaded_pair(func, set, &mut report)?;
    for cert in certify(&f, &v, theorem, piece, opts)? {
        report.line(format!("{}: {}", cert.theorem.tag(), cert.verdict.tag()));
        report.push(&cert);
    }
    Ok(report)
}

fn value_text(cert: &Certificate, key: &str) -> String {
    match cert.get(key) {
        Some(Quantity::Finite(r)) => format_rational(r),
        Some(q) => quantity_json(q).to_string(),
        None => "none".to_string(),
    }
}

/// One-line trend summary of a tau estimate.
pub fn tau_lines(cert: &Certificate) -> Vec<String> {
    let mut lines = Vec::new();
    let radius = cert
        .get("radius")
        .map(|_| format!(" on radius {}", value_text(cert, "radius")))
        .unwrap_or_default();
    lines.push(format!(
        "min ratio {}{radius} over {} samples ({} with positive distance)",
        value_text(cert, "min_ratio"),
        value_text(cert, "samples"),
        value_text(cert, "positive_samples"),
    ));
    if cert.get("radius_outer").is_some() {
        lines.push(format!(
            "min ratio {} on radius {}",
            value_text(cert, "min_ratio_outer"),
            value_text(cert, "radius_outer"),
        ));
    }
    let trend = if cert.flag("vanishing") == Some(true) {
        "vanishing"
    } else {
        "stable"
    };
    lines.push(format!("trend {trend}"));
    lines
}

pub fn cmd_estimate_tau(
    func: &Loaded<FunctionFile>,
    set: &Loaded<SetFile>,
    opts: &Options,
) -> Result<Report, InputError> {
    let mut report = opts.report("estimate-tau");
    let (f, v) = loaded_pair(func, set, &mut report)?;
    let cert = estimate_tau(&f, &v, &opts.config())?;
    for line in tau_lines(&cert) {
        report.line(line);
    }
    report.push(&cert);
    Ok(report)
}

pub fn cmd_examples_list(opts: &Options) -> Report {
    let mut report = opts.report("examples list");
    for fixture in fixtures::FIXTURES {
        report.line(format!("{}: {}", fixture.name, fixture.description));
    }
    report
}

/// Runs one fixture, or all of them in name order for `"all"`.
pub fn cmd_examples_run(name: &str, opts: &Options) -> Result<Report, InputError> {
    let mut report = opts.report(&format!("examples run {name}"));
    let selected: Vec<&fixtures::Fixture> = if name == "all" {
        let mut all: Vec<_> = fixtures::FIXTURES.iter().collect();
        all.sort_by_key(|f| f.name);
        all
    } else {
        vec![fixtures::find(name).ok_or_else(|| {
            InputError::new(format!("unknown fixture '{name}'; see `examples list`"))
        })?]
    };
    for fixture in selected {
        let before = report.checks.len();
        (fixture.run)(opts, &mut report)?;
        let passed = report.checks[before..].iter().filter(|c| c.pass).count();
        report.line(format!(
            "{}: {passed}/{} checks pass",
            fixture.name,
            report.checks.len() - before
        ));
    }
    Ok(report)
}

/// Box radius parsed from a flag value.
pub fn positive_rational(text: &str) -> Result<Rational, String> {
    let r = pwa_bounds_core::numeric::parse_rational(text).map_err(|e| e.to_string())?;
    if r > int(0) {
        Ok(r)
    } else {
        Err(format!("{text} is not positive"))
    }
}
