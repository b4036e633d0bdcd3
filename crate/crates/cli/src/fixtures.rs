//! Named regression fixtures with scripted expectations.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use pwa_bounds_core::certify::{
    certify_polyhedral, certify_polyhedral_stratified, certify_strict_sublevel, certify_system,
    classify_robinson, estimate_tau, uniform_local_radius, Certificate, ConstraintSystem,
    EstimateConfig, Scope, SetSpec, TheoremTag, Verdict, Witness,
};
use pwa_bounds_core::numeric::{format_rational, int, rat, Rational};
use pwa_bounds_core::polyhedra::{Halfspace, PolyCone, PolyUnion, Polyhedron};
use pwa_bounds_core::pwa::{fixtures as f, pa_affine, pa_scale, MinMaxFunction};

use crate::commands::{infimum_text, Options};
use crate::report::{Check, Report};
use crate::InputError;

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn(&Options, &mut Report) -> Result<(), InputError>,
}

/// Sorted by name.
pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "example_4_12_points",
        description: "min{|x1|+|x2|, 1+|x1|} on the points (n, n^2)",
        run: example_4_12_points,
    },
    Fixture {
        name: "example_4_9",
        description: "local radius rho/L of min{1, max{0, x}}, invariant under scaling",
        run: example_4_9,
    },
    Fixture {
        name: "final_4_3_pair",
        description: "min{max{0, x1}, 1+|x2|}: no global bound, bound on {x1 <= 10}",
        run: final_4_3_pair,
    },
    Fixture {
        name: "flat_pieces_4_10",
        description: "min{max{0, x1}, max{1, x1-1}} on the plane",
        run: flat_pieces_4_10,
    },
    Fixture {
        name: "hoffman_random",
        description: "seeded consistent systems A x <= b",
        run: hoffman_random,
    },
    Fixture {
        name: "rec_cones_4_18",
        description: "recession cones of the flat-pieces example, direct and per piece",
        run: rec_cones_4_18,
    },
    Fixture {
        name: "robinson_4_2",
        description: "min{1, max{0, x}} on the line",
        run: robinson_4_2,
    },
    Fixture {
        name: "robinson_4_3",
        description: "min{max{0, x}, max{1, x-1}} on the line",
        run: robinson_4_3,
    },
    Fixture {
        name: "system_interval",
        description: "the system x - 1 <= 0, -x - 1 <= 0",
        run: system_interval,
    },
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Seed of the Hoffman fixture; independent of `--seed`.
pub const HOFFMAN_SEED: u64 = 0x4f66_6d61_6e00;

/// Random consistent systems `A x <= b` with `d <= 4`, `m <= 6`, nonzero
/// integer rows in `[-3, 3]^d` and `b = A x0 + s` for an integer point `x0`
/// and `s` in `[0, 2]`.
pub fn hoffman_systems(count: usize, seed: u64) -> Vec<ConstraintSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut small = |lo: i64, hi: i64| lo + (rng.next_u32() as i64).rem_euclid(hi - lo + 1);
    (0..count)
        .map(|_| {
            let d = small(1, 4) as usize;
            let m = small(1, 6) as usize;
            let x0: Vec<i64> = (0..d).map(|_| small(-3, 3)).collect();
            let rows = (0..m)
                .map(|_| {
                    let mut a: Vec<i64> = vec![0; d];
                    while a.iter().all(|&x| x == 0) {
                        a = (0..d).map(|_| small(-3, 3)).collect();
                    }
                    let b = a.iter().zip(&x0).map(|(p, q)| p * q).sum::<i64>() + small(0, 2);
                    pa_affine(int(-b), a.into_iter().map(int).collect()).expect("affine row")
                })
                .collect();
            ConstraintSystem::new(d, Vec::new(), rows).expect("consistent dimensions")
        })
        .collect()
}

fn vec_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn value_text(cert: &Certificate, key: &str) -> String {
    cert.value(key).map_or_else(|| "none".to_string(), format_rational)
}

fn scope_text(cert: &Certificate) -> String {
    match &cert.scope {
        None => "none".to_string(),
        Some(Scope::Global) => "global".to_string(),
        Some(Scope::StrictSublevel(r)) => format!("strict_sublevel({})", format_rational(r)),
        Some(Scope::GivenSet) => "given_set".to_string(),
    }
}

struct Script<'a> {
    name: &'static str,
    report: &'a mut Report,
}

impl Script<'_> {
    fn check(&mut self, label: &str, expected: impl Into<String>, actual: impl Into<String>) {
        self.report.checks.push(Check::new(format!("{}: {label}", self.name), expected, actual));
    }

    fn holds(&mut self, label: &str, ok: bool) {
        self.check(label, "true", ok.to_string());
    }

    fn verdict(&mut self, label: &str, cert: &Certificate, expected: Verdict) {
        self.check(label, expected.tag(), cert.verdict.tag());
    }
}

fn half(normal: &[i64], rhs: i64) -> SetSpec {
    let p = Polyhedron::new(
        normal.len(),
        vec![Halfspace::new(normal.iter().map(|&x| int(x)).collect(), int(rhs))],
    )
    .expect("halfspace");
    SetSpec::PolyUnion(PolyUnion::new(normal.len(), vec![p]).expect("union"))
}

fn cone(rows: &[&[i64]]) -> PolyCone {
    let normals = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    PolyCone::from_inequalities(rows[0].len(), normals).expect("cone")
}

fn config(opts: &Options, radius: i64) -> EstimateConfig {
    EstimateConfig {
        box_radius: int(radius),
        seed: opts.seed,
        norm: opts.norm,
        ..EstimateConfig::default()
    }
}

fn f_star_text(g: &MinMaxFunction) -> Result<String, InputError> {
    let analysis = g.analyze_pieces()?;
    let parts: Vec<String> = analysis.pieces.iter().map(|p| infimum_text(&p.infimum)).collect();
    Ok(format!("({})", parts.join(", ")))
}

fn any_same(cones: &[PolyCone], target: &PolyCone) -> Result<bool, InputError> {
    for c in cones {
        if c.same_set(target)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn robinson_4_2(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::robinson_4_2();
    let mut s = Script { name: "robinson_4_2", report };
    s.check("f_star", "(1, 0)", f_star_text(&g)?);
    let robinson = classify_robinson(&g)?;
    s.check("rho", "1", value_text(&robinson, "rho"));
    let strict = certify_strict_sublevel(&g, &int(1))?;
    s.verdict("strict sublevel rho = 1", &strict, Verdict::Holds);
    s.check("strict sublevel scope", "strict_sublevel(1)", scope_text(&strict));
    let tau = estimate_tau(&g, &SetSpec::FullSpace(1), &config(opts, 100))?;
    s.check("min ratio on box 100", "1/100", value_text(&tau, "min_ratio"));
    s.check("vanishing", "true", tau.flag("vanishing").unwrap_or(false).to_string());
    let global = certify_polyhedral(&g, &SetSpec::FullSpace(1), opts.norm)?;
    s.verdict("polyhedral on the line", &global, Verdict::Fails);
    for c in [strict, tau, global] {
        s.report.push(&c);
    }
    Ok(())
}

fn robinson_4_3(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::robinson_4_3();
    let mut s = Script { name: "robinson_4_3", report };
    let poly = certify_polyhedral(&g, &SetSpec::FullSpace(1), opts.norm)?;
    s.verdict("polyhedral on the line", &poly, Verdict::Holds);
    let cfg = EstimateConfig {
        grid_step: Some(rat(1, 4)),
        ..config(opts, 100)
    };
    let tau = estimate_tau(&g, &SetSpec::FullSpace(1), &cfg)?;
    s.check("min ratio, step 1/4, box 100", "1/2", value_text(&tau, "min_ratio"));
    let argmin = tau.witnesses.iter().find_map(|w| match w {
        Witness::Point { point, .. } => Some(vec_text(point)),
        _ => None,
    });
    s.check("argmin", "(2)", argmin.unwrap_or_default());
    for c in [poly, tau] {
        s.report.push(&c);
    }
    Ok(())
}

fn example_4_9(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::robinson_4_2();
    let mut s = Script { name: "example_4_9", report };
    let local = uniform_local_radius(&g, opts.norm)?;
    s.check("L", "1", value_text(&local, "L"));
    s.check("rho", "1", value_text(&local, "rho"));
    s.check("r", "1", value_text(&local, "r"));
    let scaled = uniform_local_radius(&pa_scale(&int(3), &g)?, opts.norm)?;
    s.check("L of 3f", "3", value_text(&scaled, "L"));
    s.check("rho of 3f", "3", value_text(&scaled, "rho"));
    s.check("r of 3f", "1", value_text(&scaled, "r"));
    for c in [local, scaled] {
        s.report.push(&c);
    }
    Ok(())
}

fn flat_pieces_4_10(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::flat_pieces_4_10();
    let mut s = Script { name: "flat_pieces_4_10", report };
    let rec = g.rec_plus_sublevel();
    let left = cone(&[&[1, 0]]);
    let mut all_left = true;
    for c in &rec {
        all_left &= c.same_set(&left)?;
    }
    s.holds("S([f]_+ recession) = {x1 <= 0}", all_left);
    let robinson = classify_robinson(&g)?;
    s.check("robinson scope", "strict_sublevel(1)", scope_text(&robinson));
    let poly = certify_polyhedral(&g, &SetSpec::FullSpace(2), opts.norm)?;
    s.verdict("polyhedral on the plane", &poly, Verdict::Holds);
    s.check("polyhedral scope", "global", scope_text(&poly));
    let cfg = EstimateConfig {
        samples: 128,
        max_grid_points: 1024,
        ..config(opts, 16)
    };
    let tau = estimate_tau(&g, &SetSpec::FullSpace(2), &cfg)?;
    s.check("min ratio", "1/2", value_text(&tau, "min_ratio"));
    for c in [robinson, poly, tau] {
        s.report.push(&c);
    }
    Ok(())
}

fn rec_cones_4_18(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::flat_pieces_4_10();
    let mut s = Script { name: "rec_cones_4_18", report };
    let rec = g.sublevel_recession()?;
    s.check("recession cones of S(f)", "1", rec.len().to_string());
    s.holds("recession cone = {x1 <= 0}", any_same(&rec, &cone(&[&[1, 0]]))?);
    let direct = certify_polyhedral(&g, &SetSpec::FullSpace(2), opts.norm)?;
    let per_piece = certify_polyhedral_stratified(&g, &SetSpec::FullSpace(2), opts.norm)?;
    s.verdict("direct", &direct, Verdict::Holds);
    s.verdict("per piece", &per_piece, Verdict::Holds);
    for c in [direct, per_piece] {
        s.report.push(&c);
    }
    Ok(())
}

fn final_4_3_pair(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::final_4_3_pair();
    let mut s = Script { name: "final_4_3_pair", report };
    let rec = g.rec_plus_sublevel();
    s.holds("recession cones contain {x1 <= 0}", any_same(&rec, &cone(&[&[1, 0]]))?);
    s.holds("recession cones contain {x2 = 0}", any_same(&rec, &cone(&[&[0, 1], &[0, -1]]))?);
    let global = certify_polyhedral(&g, &SetSpec::FullSpace(2), opts.norm)?;
    s.verdict("polyhedral on the plane", &global, Verdict::Fails);
    let ray = global.first_ray().map(|z| z[0] > int(0) && z[1] == int(0));
    s.holds("witness ray has x1 > 0, x2 = 0", ray == Some(true));
    s.holds("witness re-verifies", global.verify_witnesses());
    let halving = global.witnesses.iter().any(|w| match w {
        Witness::Ray { samples, .. } => {
            samples.len() >= 2 && samples.windows(2).all(|p| &p[1].1 * int(2) <= p[0].1)
        }
        _ => false,
    });
    s.holds("ratios halve per decade", halving);
    let v = half(&[1, 0], 10);
    let local = certify_polyhedral(&g, &v, opts.norm)?;
    s.verdict("polyhedral on {x1 <= 10}", &local, Verdict::Holds);
    let cfg = EstimateConfig {
        samples: 128,
        max_grid_points: 1024,
        ..config(opts, 16)
    };
    let tau = estimate_tau(&g, &v, &cfg)?;
    let min = tau.value("min_ratio").cloned();
    s.holds("min ratio on {x1 <= 10} >= 1/10", min.is_some_and(|m| m >= rat(1, 10)));
    for c in [global, local, tau] {
        s.report.push(&c);
    }
    Ok(())
}

fn example_4_12_points(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let g = f::example_4_12();
    let mut s = Script { name: "example_4_12_points", report };
    let v = SetSpec::points(2, f::example_4_12_points(20))?;
    let tau = estimate_tau(&g, &v, &config(opts, 16))?;
    let seq = tau
        .witnesses
        .iter()
        .find_map(|w| match w {
            Witness::Sequence(items) => Some(items.clone()),
            _ => None,
        })
        .unwrap_or_default();
    let exact = seq.len() == 20 && (1i64..).zip(&seq).all(|(n, (_, r))| *r == rat(1 + n, n * n));
    s.holds("ratios are (1 + n)/n^2", exact);
    s.holds("strictly decreasing", seq.windows(2).all(|p| p[1].1 < p[0].1));
    let min = tau.value("min_ratio").cloned();
    s.holds("min ratio below 1/10", min.is_some_and(|m| m < rat(1, 10)));
    s.check("vanishing", "true", tau.flag("vanishing").unwrap_or(false).to_string());
    s.report.push(&tau);
    Ok(())
}

fn system_config(opts: &Options) -> EstimateConfig {
    EstimateConfig {
        samples: 64,
        max_grid_points: 256,
        ..config(opts, 100)
    }
}

fn tau_part(cert: &Certificate) -> Option<&Certificate> {
    cert.parts.iter().find(|p| p.theorem == TheoremTag::TauEstimate)
}

fn hoffman_random(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let mut s = Script { name: "hoffman_random", report };
    for (i, sys) in hoffman_systems(5, HOFFMAN_SEED).iter().enumerate() {
        let v = SetSpec::FullSpace(sys.dimension());
        let cert = certify_system(sys, &v, &system_config(opts))?;
        s.check(&format!("system {i} scope"), "global", scope_text(&cert));
        let positive = tau_part(&cert)
            .and_then(|t| t.value("min_ratio"))
            .is_some_and(|m| m > &int(0));
        s.holds(&format!("system {i} min ratio > 0"), positive);
        s.report.push(&cert);
    }
    Ok(())
}

fn system_interval(opts: &Options, report: &mut Report) -> Result<(), InputError> {
    let mut s = Script { name: "system_interval", report };
    let rows = vec![pa_affine(int(-1), vec![int(1)])?, pa_affine(int(-1), vec![int(-1)])?];
    let sys = ConstraintSystem::new(1, Vec::new(), rows)?;
    let cert = certify_system(&sys, &SetSpec::FullSpace(1), &system_config(opts))?;
    s.verdict("verdict", &cert, Verdict::Holds);
    s.check("scope", "global", scope_text(&cert));
    let min = tau_part(&cert).map_or_else(|| "none".to_string(), |t| value_text(t, "min_ratio"));
    s.check("min ratio", "1", min);
    s.report.push(&cert);
    Ok(())
}
