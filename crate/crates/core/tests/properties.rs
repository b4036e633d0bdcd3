use num_traits::{Signed, Zero};
use proptest::prelude::*;

use pwa_bounds_core::certify::{
    certify_polyhedral, certify_polyhedral_stratified, classify_robinson, geometric_condition,
    sample_tau, EstimateConfig, Scope, SetSpec, Verdict, Witness,
};
use pwa_bounds_core::numeric::{dot, int, Constraint, LinearProgram, LpOutcome, Rational};
use pwa_bounds_core::polyhedra::{cone_in_union, Halfspace, Inclusion, Norm, PolyCone, Polyhedron};
use pwa_bounds_core::pwa::{pa_add, pa_max, pa_min, pa_scale, MinMaxFunction};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn function(dim: usize, homogeneous: bool) -> impl Strategy<Value = MinMaxFunction> {
    let offset = if homogeneous { 0..=0i64 } else { -4..=4i64 };
    let term = (offset, prop::collection::vec(-3..=3i64, dim));
    let piece = prop::collection::vec(term, 1..=3);
    prop::collection::vec(piece, 1..=3).prop_map(move |pieces| {
        MinMaxFunction::from_terms(
            dim,
            pieces
                .into_iter()
                .map(|p| p.into_iter().map(|(a, g)| (int(a), ints(&g))).collect())
                .collect(),
        )
        .unwrap()
    })
}

fn any_function() -> impl Strategy<Value = MinMaxFunction> {
    (1usize..=3).prop_flat_map(|d| function(d, false))
}

fn point(dim: usize, range: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-range..=range, 1..=4i64), dim)
        .prop_map(|v| v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect())
}

fn cone(dim: usize) -> impl Strategy<Value = PolyCone> {
    prop::collection::vec(prop::collection::vec(-2..=2i64, dim), 0..=3)
        .prop_map(move |ns| PolyCone::from_inequalities(dim, ns.iter().map(|n| ints(n)).collect()).unwrap())
}

/// Independent l-infinity distance to `{x | f_i(x) <= 0}` by a direct LP.
fn piece_distance(f: &MinMaxFunction, i: usize, x: &[Rational]) -> Option<Rational> {
    let d = x.len();
    let mut objective = vec![Rational::zero(); d + 1];
    objective[d] = int(1);
    let mut lp = LinearProgram::new(objective);
    for t in f.pieces()[i].terms() {
        let mut row = t.gradient.clone();
        row.push(Rational::zero());
        lp.push(Constraint::le(row, -&t.offset));
    }
    for k in 0..d {
        let mut up = vec![Rational::zero(); d + 1];
        up[k] = int(1);
        up[d] = int(-1);
        lp.push(Constraint::le(up, x[k].clone()));
        let mut down = vec![Rational::zero(); d + 1];
        down[k] = int(-1);
        down[d] = int(-1);
        lp.push(Constraint::le(down, -&x[k]));
    }
    match lp.solve().unwrap() {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn clamped_value_and_distance_two_paths(
        (f, x) in (1usize..=3).prop_flat_map(|d| (function(d, false), point(d, 6)))
    ) {
        let values = f.piece_values(&x).unwrap();
        let clamped = values.iter().map(|v| v.max(&Rational::zero()).clone()).min().unwrap();
        prop_assert_eq!(f.evaluate_plus(&x).unwrap(), clamped);

        let analysis = f.analyze_pieces().unwrap();
        let active = analysis.active();
        prop_assume!(!active.is_empty());
        let oracle = active.iter().filter_map(|&i| piece_distance(&f, i, &x)).min().unwrap();
        prop_assert_eq!(f.distance_to_sublevel(&x, Norm::LInf).unwrap(), oracle);
    }

    #[test]
    fn offsets_bound_recession_gap(
        (f, x) in (1usize..=3).prop_flat_map(|d| (function(d, false), point(d, 10_000)))
    ) {
        let gap = (f.evaluate(&x).unwrap() - f.recession_function().evaluate(&x).unwrap()).abs();
        prop_assert!(gap <= f.max_abs_offset());
    }

    #[test]
    fn recession_function_is_homogeneous(
        (f, x) in (1usize..=3).prop_flat_map(|d| (function(d, false), point(d, 5)))
    ) {
        let r = f.recession_function();
        let base = r.evaluate(&x).unwrap();
        for l in [0, 1, 2, 7] {
            let y: Vec<Rational> = x.iter().map(|c| c * int(l)).collect();
            prop_assert_eq!(r.evaluate(&y).unwrap(), &base * int(l));
        }
    }

    #[test]
    fn builders_are_pointwise(
        (f, g, x, c) in (1usize..=2).prop_flat_map(|d| (function(d, false), function(d, false), point(d, 5), -3..=3i64))
    ) {
        let fx = f.evaluate(&x).unwrap();
        let gx = g.evaluate(&x).unwrap();
        prop_assert_eq!(pa_min(&f, &g).unwrap().evaluate(&x).unwrap(), fx.clone().min(gx.clone()));
        prop_assert_eq!(pa_max(&f, &g).unwrap().evaluate(&x).unwrap(), fx.clone().max(gx.clone()));
        prop_assert_eq!(pa_add(&f, &g).unwrap().evaluate(&x).unwrap(), &fx + &gx);
        prop_assert_eq!(pa_scale(&int(c), &f).unwrap().evaluate(&x).unwrap(), &fx * int(c));
    }

    #[test]
    fn recession_sublevel_directions(
        (f, z) in (1usize..=3).prop_flat_map(|d| (function(d, false), prop::collection::vec(-2..=2i64, d)))
    ) {
        let z = ints(&z);
        let in_cone = f.rec_plus_sublevel().iter().any(|c| c.contains(&z).unwrap());
        let clamped = f.recession_function().evaluate(&z).unwrap().max(Rational::zero());
        prop_assert_eq!(in_cone, clamped.is_zero());
    }

    #[test]
    fn double_polar(c in (1usize..=3).prop_flat_map(cone)) {
        prop_assert!(c.polar().polar().same_set(&c).unwrap());
        prop_assert!(c.to_generators().unwrap().same_set(&c).unwrap());
    }

    #[test]
    fn motzkin_round_trip(
        (rows, x) in (1usize..=3).prop_flat_map(|d| (
            prop::collection::vec((prop::collection::vec(-2..=2i64, d), -3..=3i64), 1..=4),
            point(d, 6),
        ))
    ) {
        let d = x.len();
        let p = Polyhedron::new(d, rows.iter().map(|(w, b)| Halfspace::new(ints(w), int(*b))).collect()).unwrap();
        let g = p.to_generators().unwrap();
        prop_assert_eq!(g.is_empty(), p.is_empty().unwrap());
        let back = g.to_polyhedron().unwrap();
        prop_assert_eq!(back.contains(&x), p.contains(&x));
        for q in &g.points {
            prop_assert!(p.contains(q));
        }
        if !g.is_empty() {
            let rec = p.recession_cone().unwrap();
            for r in &g.rays {
                prop_assert!(rec.contains(r).unwrap());
            }
        }
    }

    #[test]
    fn cone_in_union_matches_sampling(
        (c, ds, weights) in (1usize..=3).prop_flat_map(|d| (
            cone(d),
            prop::collection::vec(cone(d), 1..=3),
            prop::collection::vec(0..=3i64, 8),
        ))
    ) {
        match cone_in_union(&c, &ds).unwrap() {
            Inclusion::Witness(z) => {
                prop_assert!(c.contains(&z).unwrap());
                for dcone in &ds {
                    prop_assert!(!dcone.contains(&z).unwrap());
                }
            }
            Inclusion::Contained => {
                let rays = c.generators().unwrap().all_rays();
                for r in &rays {
                    prop_assert!(ds.iter().any(|dc| dc.contains(r).unwrap()));
                }
                // nonnegative combinations of generators
                if !rays.is_empty() {
                    let mut y = vec![Rational::zero(); c.dimension()];
                    for (k, r) in rays.iter().enumerate() {
                        let w = int(weights[k % weights.len()] + (k as i64 % 2));
                        for (a, b) in y.iter_mut().zip(r) {
                            *a += &w * b;
                        }
                    }
                    prop_assert!(ds.iter().any(|dc| dc.contains(&y).unwrap()));
                }
            }
        }
    }

    #[test]
    fn geometric_agrees_with_triviality(
        (f, v) in (1usize..=3).prop_flat_map(|d| (function(d, false), cone(d)))
    ) {
        for i in 0..f.pieces().len() {
            let cert = geometric_condition(&f, &v, i).unwrap();
            let trivial = f.piece_cone(i).intersect(&v).unwrap().is_trivial().unwrap();
            prop_assert_eq!(cert.condition_met, Some(trivial));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn zero_offsets_give_global_bound(f in (1usize..=3).prop_flat_map(|d| function(d, true))) {
        let c = classify_robinson(&f).unwrap();
        prop_assert_eq!(c.scope, Some(Scope::Global));
    }

    #[test]
    fn robinson_global_implies_polyhedral(f in any_function()) {
        let Ok(r) = classify_robinson(&f) else { return Ok(()) };
        let d = f.dimension();
        let p = certify_polyhedral(&f, &SetSpec::FullSpace(d), Norm::LInf).unwrap();
        if r.scope == Some(Scope::Global) {
            prop_assert_eq!(p.verdict, Verdict::Holds);
        }
        let s = certify_polyhedral_stratified(&f, &SetSpec::FullSpace(d), Norm::LInf).unwrap();
        prop_assert_eq!(p.verdict, s.verdict);
    }

    #[test]
    fn failing_witness_ratios_halve(f in any_function()) {
        let Ok(_) = classify_robinson(&f) else { return Ok(()) };
        let p = certify_polyhedral(&f, &SetSpec::FullSpace(f.dimension()), Norm::LInf).unwrap();
        prop_assume!(p.verdict == Verdict::Fails);
        prop_assert!(p.verify_witnesses());
        let Some(Witness::Ray { samples, direction, inside, .. }) = p.witnesses.first() else {
            panic!("fails without a ray");
        };
        prop_assert!(inside.iter().all(|w| !dot(w, direction).is_positive()));
        prop_assert_eq!(samples.len(), 3);
        for w in samples.windows(2) {
            prop_assert!(&w[1].1 * int(2) <= w[0].1);
        }
    }

    #[test]
    fn outer_minimum_never_exceeds_inner(f in any_function(), seed in 0u64..4) {
        prop_assume!(f.analyze_pieces().unwrap().sublevel_nonempty());
        let config = EstimateConfig {
            samples: 16,
            box_radius: int(4),
            seed,
            max_grid_points: 64,
            ..EstimateConfig::default()
        };
        let est = sample_tau(&f, &SetSpec::FullSpace(f.dimension()), &config).unwrap();
        let outer = est.outer.unwrap();
        if let (Some(a), Some(b)) = (&est.inner.min_ratio, &outer.min_ratio) {
            prop_assert!(b <= a);
        }
        prop_assert!(outer.sampled >= est.inner.sampled);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn holding_certificates_keep_ratios_positive(f in any_function()) {
        let Ok(_) = classify_robinson(&f) else { return Ok(()) };
        let d = f.dimension();
        let p = certify_polyhedral(&f, &SetSpec::FullSpace(d), Norm::LInf).unwrap();
        prop_assume!(p.verdict == Verdict::Holds);
        let config = EstimateConfig {
            samples: 16,
            box_radius: int(10),
            max_grid_points: 128,
            ..EstimateConfig::default()
        };
        let est = sample_tau(&f, &SetSpec::FullSpace(d), &config).unwrap();
        for summary in core::iter::once(&est.inner).chain(est.outer.as_ref()) {
            if let Some(m) = &summary.min_ratio {
                prop_assert!(m.is_positive());
            }
        }
    }
}
