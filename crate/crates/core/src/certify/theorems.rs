use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::certificate::{Certificate, Quantity, Scope, TheoremTag, Verdict, Witness};
use super::set::SetSpec;
use super::tau::{sample_tau, tau_certificate, EstimateConfig};
use crate::error::{check_dim, Error, Result};
use crate::numeric::{primitive, strictly_feasible, Rational, Strictness};
use crate::polyhedra::{GeneratorRep, Norm, PolyCone, Triviality};
use crate::pwa::{Infimum, MinMaxFunction, PieceAnalysis};

pub(crate) fn analyze_nonempty(f: &MinMaxFunction) -> Result<PieceAnalysis> {
    let analysis = f.analyze_pieces()?;
    if !analysis.sublevel_nonempty() {
        return Err(Error::EmptySet("S(f) empty; error bounds undefined"));
    }
    Ok(analysis)
}

fn record_minima(cert: &mut Certificate, analysis: &PieceAnalysis) {
    for (i, p) in analysis.pieces.iter().enumerate() {
        let q = match &p.infimum {
            Infimum::NegInfinity => Quantity::NegInfinity,
            Infimum::Finite(v) => Quantity::Finite(v.clone()),
        };
        cert.set(format!("f_star[{i}]"), q);
    }
    cert.set("active", Quantity::Indices(analysis.active()));
}

/// Global error bound when every piece attains a nonpositive infimum;
/// otherwise an error bound on `{f < rho}` with `rho` the least positive
/// piece minimum.
pub fn classify_robinson(f: &MinMaxFunction) -> Result<Certificate> {
    let analysis = analyze_nonempty(f)?;
    let mut cert = Certificate::new(TheoremTag::Robinson, Verdict::Holds);
    record_minima(&mut cert, &analysis);
    match analysis.rho() {
        None => {
            cert.scope = Some(Scope::Global);
            cert.set("global", Quantity::Flag(true));
        }
        Some(rho) => {
            cert.set_value("rho", rho.clone());
            cert.set("global", Quantity::Flag(false));
            cert.scope = Some(Scope::StrictSublevel(rho));
            cert.note("global status undetermined by this test");
        }
    }
    Ok(cert)
}

/// Error bound on `{f < rho}`: holds whenever `rho` does not exceed the
/// least positive piece minimum (or every piece minimum is nonpositive).
pub fn certify_strict_sublevel(f: &MinMaxFunction, rho: &Rational) -> Result<Certificate> {
    let mut cert = classify_robinson(f)?;
    cert.set_value("requested_rho", rho.clone());
    match cert.scope.clone() {
        Some(Scope::StrictSublevel(bound)) if rho > &bound => {
            cert.verdict = Verdict::Inconclusive;
            cert.scope = None;
            cert.note("requested level exceeds the least positive piece minimum");
        }
        Some(Scope::StrictSublevel(_)) => cert.scope = Some(Scope::StrictSublevel(rho.clone())),
        _ => {}
    }
    Ok(cert)
}

/// Radius `r = rho / L` of the balls around `S(f)` on which a uniform local
/// error bound holds; unbounded when every piece minimum is nonpositive.
pub fn uniform_local_radius(f: &MinMaxFunction, norm: Norm) -> Result<Certificate> {
    let analysis = analyze_nonempty(f)?;
    let mut cert = Certificate::new(TheoremTag::LocalRadius, Verdict::Holds);
    let lipschitz = f.lipschitz_constant(norm);
    cert.set_value("L", lipschitz.clone());
    match analysis.rho() {
        Some(rho) if !lipschitz.is_zero() => {
            cert.set_value("r", &rho / &lipschitz);
            cert.set_value("rho", rho);
        }
        Some(rho) => {
            cert.set_value("rho", rho);
            cert.set("r", Quantity::PosInfinity);
        }
        None => cert.set("r", Quantity::PosInfinity),
    }
    Ok(cert)
}

/// Error bounds always exist on bounded sets; the certificate carries an
/// empirical lower estimate of `tau` on the same set.
pub fn certify_bounded(f: &MinMaxFunction, v: &SetSpec, config: &EstimateConfig) -> Result<Certificate> {
    check_dim(f.dimension(), v.dimension())?;
    if !v.is_bounded() {
        return Err(Error::InvalidInput(format!(
            "set kind '{}' is not bounded; use the polyhedral certificate",
            v.kind()
        )));
    }
    analyze_nonempty(f)?;
    let mut cert = Certificate::new(TheoremTag::Bounded, Verdict::Holds).with_scope(Scope::GivenSet);
    let est = sample_tau(f, v, config)?;
    match &est.inner.min_ratio {
        Some(m) => cert.set_value("tau_estimate", m.clone()),
        None => cert.note("V ⊆ S(f) on samples; ratios vacuous"),
    }
    cert.parts.push(tau_certificate(&est, config));
    Ok(cert)
}

/// Piece index, cone index, their intersection and a ray in it.
type Escape = (usize, usize, PolyCone, Vec<Rational>);

/// First nonzero ray in some `C_i ∩ K`, scanning pieces then cones in order.
fn first_escape(f: &MinMaxFunction, ks: &[PolyCone]) -> Result<Option<Escape>> {
    for i in 0..f.pieces().len() {
        let c = f.piece_cone(i);
        for (k, kk) in ks.iter().enumerate() {
            let both = c.intersect(kk)?;
            if let Triviality::NonTrivial(r) = both.triviality()? {
                return Ok(Some((i, k, both, primitive(&r))));
            }
        }
    }
    Ok(None)
}

/// `0+ S(f) ∩ H = {0}` for every cone `H` of the closed conic hull.
fn necessity_guard(f: &MinMaxFunction, analysis: &PieceAnalysis, hull: &[PolyCone]) -> Result<bool> {
    for s in f.sublevel_recession_with(analysis)? {
        for h in hull {
            if !s.intersect(h)?.is_trivial()? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn direction_check(
    tag: TheoremTag,
    f: &MinMaxFunction,
    analysis: &PieceAnalysis,
    ks: &[PolyCone],
    hull: &[PolyCone],
) -> Result<Certificate> {
    let guard = necessity_guard(f, analysis, hull)?;
    let escape = first_escape(f, ks)?;
    let mut cert = match escape {
        None => {
            let mut c = Certificate::new(tag, Verdict::Holds).with_scope(Scope::GivenSet);
            c.condition_met = Some(true);
            c
        }
        Some((i, k, cone, ray)) => {
            let mut c = Certificate::new(tag, Verdict::Inconclusive);
            c.condition_met = Some(false);
            c.set("piece", Quantity::Index(i));
            c.set("set_piece", Quantity::Index(k));
            c.witnesses.push(Witness::Ray {
                direction: ray,
                base: None,
                inside: cone.normals()?,
                outside: Vec::new(),
                samples: Vec::new(),
            });
            if guard {
                c.note("condition is necessary here: f has no error bound on V");
            } else {
                c.note("condition not necessary here (0+ S(f) meets cl cone V)");
            }
            c
        }
    };
    cert.set("necessity_guard", Quantity::Flag(guard));
    Ok(cert)
}

/// Growth at infinity, decided on the recession function: the condition
/// holds iff no piece cone `{<v_ij, x> <= 0}` meets any `0+ V_k` in a
/// nonzero ray.
pub fn check_growth(f: &MinMaxFunction, v: &SetSpec, norm: Norm) -> Result<Certificate> {
    check_dim(f.dimension(), v.dimension())?;
    let analysis = analyze_nonempty(f)?;
    let (ks, hull) = match v {
        SetSpec::FullSpace(d) => (vec![PolyCone::full(*d)], vec![PolyCone::full(*d)]),
        SetSpec::Cone(c) => (vec![c.clone()], vec![c.clone()]),
        SetSpec::PolyUnion(u) => {
            if u.is_empty() {
                return Err(Error::InvalidInput("empty polyhedral union".into()));
            }
            (u.recession_cones()?, u.closed_conic_hull()?)
        }
        SetSpec::Points { points, .. } => return empirical_growth(f, points, norm),
        _ => {
            return Err(Error::InvalidInput(format!(
                "growth condition needs a polyhedral union, cone or full space, got '{}'",
                v.kind()
            )))
        }
    };
    direction_check(TheoremTag::Growth, f, &analysis, &ks, &hull)
}

fn empirical_growth(f: &MinMaxFunction, points: &[Vec<Rational>], norm: Norm) -> Result<Certificate> {
    let mut cert = Certificate::new(TheoremTag::Growth, Verdict::Inconclusive);
    let mut seq = Vec::new();
    for p in points {
        let n = norm.of(p);
        if n.is_zero() {
            continue;
        }
        seq.push((p.clone(), f.evaluate(p)? / n));
    }
    if let Some(m) = seq.iter().map(|(_, r)| r).min() {
        cert.set_value("min_growth_ratio", m.clone());
    }
    let decreasing = seq.windows(2).all(|w| w[1].1 < w[0].1);
    cert.set("growth_decreasing", Quantity::Flag(decreasing && seq.len() >= 2));
    if decreasing && seq.len() >= 2 {
        cert.note("f(x)/||x|| decreases along the points; growth condition likely fails");
    }
    cert.witnesses.push(Witness::Sequence(seq));
    Ok(cert)
}

/// Coercivity of `f` on a polyhedral cone: `f^inf > 0` on `V \ {0}`.
pub fn check_coercive_on_cone(f: &MinMaxFunction, v: &SetSpec) -> Result<Certificate> {
    check_dim(f.dimension(), v.dimension())?;
    let analysis = analyze_nonempty(f)?;
    let cone = match v {
        SetSpec::Cone(c) => c.clone(),
        SetSpec::FullSpace(d) => PolyCone::full(*d),
        _ => {
            return Err(Error::InvalidInput(format!(
                "coercivity check needs a cone, got '{}'",
                v.kind()
            )))
        }
    };
    let ks = [cone];
    direction_check(TheoremTag::CoerciveCone, f, &analysis, &ks, &ks)
}

/// For a piece with `f_i* > 0`: `f_i` is coercive on the cone `V` iff
/// `0 ∈ int(co{v_ij} + V*)`. Decided on the H-form of `co{v_ij} + V*` and
/// cross-checked against triviality of `V ∩ {<v_ij, x> <= 0}`.
pub fn check_geometric(f: &MinMaxFunction, v: &SetSpec, piece: usize) -> Result<Certificate> {
    check_dim(f.dimension(), v.dimension())?;
    let cone = match v {
        SetSpec::Cone(c) => c.clone(),
        SetSpec::FullSpace(d) => PolyCone::full(*d),
        _ => {
            return Err(Error::InvalidInput(format!(
                "geometric check needs a cone, got '{}'",
                v.kind()
            )))
        }
    };
    if piece >= f.pieces().len() {
        return Err(Error::InvalidInput(format!("piece {piece} out of range")));
    }
    let analysis = f.analyze_pieces()?;
    if analysis.is_active(piece) {
        return Err(Error::InvalidInput(format!("piece {piece} needs f_i* > 0")));
    }
    geometric_condition(f, &cone, piece)
}

/// The interior test of [`check_geometric`] without the `f_i* > 0`
/// hypothesis; the equivalence with coercivity of `f_i` on `V` holds for
/// every piece.
pub fn geometric_condition(f: &MinMaxFunction, cone: &PolyCone, piece: usize) -> Result<Certificate> {
    check_dim(f.dimension(), cone.dimension())?;
    let d = f.dimension();
    if piece >= f.pieces().len() {
        return Err(Error::InvalidInput(format!("piece {piece} out of range")));
    }
    let rep = GeneratorRep {
        dimension: d,
        points: f.pieces()[piece].terms().iter().map(|t| t.gradient.clone()).collect(),
        rays: cone.polar().rays()?,
    };
    let hull = rep.to_polyhedron()?;
    let constraints = hull.constraints();
    let all: Vec<usize> = (0..constraints.len()).collect();
    let full_dimensional = matches!(strictly_feasible(d, &constraints, &all)?, Strictness::Yes(_));
    let interior = hull.nontrivial_inequalities().all(|h| h.rhs.is_positive());

    let cross = f.piece_cone(piece).intersect(cone)?.triviality()?;
    let agrees = interior == cross.is_trivial();
    debug_assert!(agrees, "interior test and coercivity must agree");

    let mut cert = if interior {
        Certificate::new(TheoremTag::Geometric, Verdict::Holds).with_scope(Scope::GivenSet)
    } else {
        Certificate::new(TheoremTag::Geometric, Verdict::Inconclusive)
    };
    cert.condition_met = Some(interior);
    cert.set("piece", Quantity::Index(piece));
    cert.set("full_dimensional", Quantity::Flag(full_dimensional));
    cert.set("implicit_equality", Quantity::Flag(!full_dimensional));
    cert.set("cross_check_agrees", Quantity::Flag(agrees));
    cert.set("inequalities", Quantity::Index(hull.nontrivial_inequalities().count()));
    if let Triviality::NonTrivial(r) = cross {
        let both = f.piece_cone(piece).intersect(cone)?;
        cert.witnesses.push(Witness::Ray {
            direction: primitive(&r),
            base: None,
            inside: both.normals()?,
            outside: Vec::new(),
            samples: Vec::new(),
        });
    }
    if !interior {
        cert.note(if full_dimensional {
            "0 lies on the boundary of co{v_ij} + V*"
        } else {
            "co{v_ij} + V* has an implicit equality; 0 is not interior"
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::pwa::{fixtures, pa_scale};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn terms(dim: usize, pieces: &[&[(i64, &[i64])]]) -> MinMaxFunction {
        MinMaxFunction::from_terms(
            dim,
            pieces.iter().map(|p| p.iter().map(|(a, g)| (int(*a), v(g))).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn robinson_cases() {
        let c = classify_robinson(&fixtures::robinson_4_2()).unwrap();
        assert_eq!(c.scope, Some(Scope::StrictSublevel(int(1))));
        assert_eq!(c.value("f_star[0]"), Some(&int(1)));
        assert_eq!(c.value("f_star[1]"), Some(&int(0)));
        assert_eq!(c.verdict, Verdict::Holds);

        let c = classify_robinson(&fixtures::robinson_4_3()).unwrap();
        assert_eq!(c.scope, Some(Scope::StrictSublevel(int(1))));
        assert!(c.notes.iter().any(|n| n.contains("undetermined")));

        let h = fixtures::final_4_3_pair().recession_function();
        assert_eq!(classify_robinson(&h).unwrap().scope, Some(Scope::Global));

        let c = certify_strict_sublevel(&fixtures::robinson_4_2(), &int(1)).unwrap();
        assert_eq!((c.verdict, c.scope), (Verdict::Holds, Some(Scope::StrictSublevel(int(1)))));
        let c = certify_strict_sublevel(&fixtures::robinson_4_2(), &rat(3, 2)).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);

        let empty = terms(1, &[&[(1, &[0])]]);
        assert!(matches!(classify_robinson(&empty), Err(Error::EmptySet(_))));
    }

    #[test]
    fn local_radius() {
        let c = uniform_local_radius(&fixtures::robinson_4_2(), Norm::LInf).unwrap();
        assert_eq!(c.value("r"), Some(&int(1)));
        let scaled = pa_scale(&int(3), &fixtures::robinson_4_2()).unwrap();
        let c = uniform_local_radius(&scaled, Norm::LInf).unwrap();
        assert_eq!(c.value("r"), Some(&int(1)));
        assert_eq!(c.value("L"), Some(&int(3)));
        let h = fixtures::final_4_3_pair().recession_function();
        assert_eq!(uniform_local_radius(&h, Norm::LInf).unwrap().get("r"), Some(&Quantity::PosInfinity));
    }

    #[test]
    fn bounded_sets() {
        let config = EstimateConfig::default();
        let line = SetSpec::new_box(v(&[-10]), v(&[10])).unwrap();
        let c = certify_bounded(&fixtures::robinson_4_2(), &line, &config).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert_eq!(c.value("tau_estimate"), Some(&rat(1, 10)));

        let b = SetSpec::new_box(v(&[-5, -5]), v(&[5, 5])).unwrap();
        let c = certify_bounded(&fixtures::flat_pieces_4_10(), &b, &config).unwrap();
        assert_eq!(c.value("tau_estimate"), Some(&rat(1, 2)));

        let inside = SetSpec::points(1, vec![v(&[-1]), v(&[-4])]).unwrap();
        let c = certify_bounded(&fixtures::robinson_4_2(), &inside, &config).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert!(c.value("tau_estimate").is_none());

        assert!(certify_bounded(&fixtures::robinson_4_2(), &SetSpec::FullSpace(1), &config).is_err());
    }

    #[test]
    fn growth_examples() {
        let abs = terms(1, &[&[(0, &[1]), (0, &[-1])]]);
        let c = check_growth(&abs, &SetSpec::FullSpace(1), Norm::LInf).unwrap();
        assert_eq!((c.verdict, c.condition_met), (Verdict::Holds, Some(true)));

        let c = check_growth(&fixtures::flat_pieces_4_10(), &SetSpec::FullSpace(2), Norm::LInf).unwrap();
        assert_eq!((c.verdict, c.condition_met), (Verdict::Inconclusive, Some(false)));
        assert_eq!(c.flag("necessity_guard"), Some(false));
        let z = c.first_ray().unwrap();
        assert!(z[0] < int(0) || z[0].is_zero());
        assert!(c.verify_witnesses());

        let pts = SetSpec::points(2, fixtures::example_4_12_points(20)).unwrap();
        let c = check_growth(&fixtures::example_4_12(), &pts, Norm::LInf).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.value("min_growth_ratio"), Some(&rat(21, 400)));
        assert_eq!(c.flag("growth_decreasing"), Some(true));
    }

    #[test]
    fn coercive_examples() {
        let cross = terms(2, &[&[(0, &[1, 0]), (0, &[-1, 0]), (0, &[0, 1]), (0, &[0, -1])]]);
        let c = check_coercive_on_cone(&cross, &SetSpec::FullSpace(2)).unwrap();
        assert_eq!(c.condition_met, Some(true));

        let c = check_coercive_on_cone(&fixtures::flat_pieces_4_10(), &SetSpec::FullSpace(2)).unwrap();
        assert_eq!(c.condition_met, Some(false));

        // x1 >= |x2|
        let wedge = PolyCone::from_inequalities(2, vec![v(&[-1, 1]), v(&[-1, -1])]).unwrap();
        let c = check_coercive_on_cone(&fixtures::final_4_3_pair(), &SetSpec::Cone(wedge)).unwrap();
        assert_eq!(c.condition_met, Some(false));
        assert_eq!(c.first_ray(), Some(&v(&[1, 0])[..]));
        assert!(c.verify_witnesses());
    }

    #[test]
    fn geometric_examples() {
        let cross = terms(2, &[&[(1, &[1, 0]), (1, &[-1, 0]), (1, &[0, 1]), (1, &[0, -1])]]);
        let c = check_geometric(&cross, &SetSpec::FullSpace(2), 0).unwrap();
        assert_eq!((c.verdict, c.condition_met), (Verdict::Holds, Some(true)));

        let c = check_geometric(&fixtures::final_4_3_pair(), &SetSpec::FullSpace(2), 1).unwrap();
        assert_eq!(c.condition_met, Some(false));
        assert_eq!(c.flag("implicit_equality"), Some(true));
        assert_eq!(c.flag("cross_check_agrees"), Some(true));

        let diag = terms(2, &[&[(1, &[1, 1])]]);
        let orthant = PolyCone::from_inequalities(2, vec![v(&[-1, 0]), v(&[0, -1])]).unwrap();
        // f* = -inf for this piece, so only the hypothesis-free form applies
        assert!(check_geometric(&diag, &SetSpec::Cone(orthant.clone()), 0).is_err());
        let c = geometric_condition(&diag, &orthant, 0).unwrap();
        assert_eq!(c.condition_met, Some(true));

        assert!(check_geometric(&fixtures::final_4_3_pair(), &SetSpec::FullSpace(2), 0).is_err());
    }
}
