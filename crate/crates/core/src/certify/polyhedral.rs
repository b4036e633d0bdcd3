use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::certificate::{Certificate, Quantity, Scope, TheoremTag, Verdict, Witness};
use super::set::SetSpec;
use super::theorems::analyze_nonempty;
use crate::error::{check_dim, Error, Result};
use crate::numeric::{int, Rational};
use crate::polyhedra::{cone_in_union, Inclusion, Norm, PolyCone, PolyUnion, Polyhedron};
use crate::pwa::{MinMaxFunction, PieceAnalysis};

/// Error bound on a finite union of polyhedra `V`, decided exactly by
/// checking `C_i ∩ 0+ V_k ⊆ 0+ S(f)` for every piece cone
/// `C_i = {<v_ij, x> <= 0}` and every recession cone of `V`.
///
/// `Fails` carries a ray `z` in some `C_i ∩ 0+ V_k` outside every cone of
/// `0+ S(f)`, a base point `x0 ∈ V_k`, and ratios along `x0 + lambda z`.
pub fn certify_polyhedral(f: &MinMaxFunction, v: &SetSpec, norm: Norm) -> Result<Certificate> {
    run(f, v, norm, false)
}

/// Same decision restricted to pieces with `f_i* > 0`; the remaining pieces
/// satisfy the inclusion trivially. Cones are intersected at the cone level,
/// `0+ S(f_i - f_i*) ∩ 0+ V_k`, never as recession cones of the intersected
/// sets.
pub fn certify_polyhedral_stratified(f: &MinMaxFunction, v: &SetSpec, norm: Norm) -> Result<Certificate> {
    run(f, v, norm, true)
}

fn run(f: &MinMaxFunction, v: &SetSpec, norm: Norm, stratified: bool) -> Result<Certificate> {
    check_dim(f.dimension(), v.dimension())?;
    let analysis = analyze_nonempty(f)?;
    let tag = if stratified {
        TheoremTag::PolyhedralStratified
    } else {
        TheoremTag::Polyhedral
    };
    let pieces = v.polyhedral_pieces()?.ok_or_else(|| {
        Error::InvalidInput(format!(
            "polyhedral certificate needs a finite union of polyhedra, got '{}'",
            v.kind()
        ))
    })?;
    let union = PolyUnion::new(f.dimension(), pieces)?;
    let global = matches!(v, SetSpec::FullSpace(_));
    if union.is_empty() {
        let mut cert = Certificate::new(tag, Verdict::Holds).with_scope(Scope::GivenSet);
        cert.note("V is empty");
        return Ok(cert);
    }
    let ks = union.recession_cones()?;
    let targets = f.sublevel_recession_with(&analysis)?;
    let checked: Vec<usize> = if stratified {
        analysis.positive()
    } else {
        (0..f.pieces().len()).collect()
    };
    let mut cert = Certificate::new(tag, Verdict::Holds);
    for &i in &checked {
        let c = f.piece_cone(i);
        for (k, kk) in ks.iter().enumerate() {
            let cone = c.intersect(kk)?;
            match cone_in_union(&cone, &targets)? {
                Inclusion::Contained => cert.set(format!("contained[{i},{k}]"), Quantity::Flag(true)),
                Inclusion::Witness(z) => {
                    let mut fail = Certificate::new(tag, Verdict::Fails);
                    fail.set("piece", Quantity::Index(i));
                    fail.set("set_piece", Quantity::Index(k));
                    let witness = ray_witness(f, &analysis, i, &union.pieces()[k], &cone, &targets, z, norm)?;
                    fail.witnesses.push(witness);
                    fail.note("direction escapes 0+ S(f) while f stays bounded along it");
                    return Ok(fail);
                }
            }
        }
    }
    cert.set("checked_pieces", Quantity::Indices(checked));
    cert.scope = Some(if global { Scope::Global } else { Scope::GivenSet });
    Ok(cert)
}

#[allow(clippy::too_many_arguments)]
fn ray_witness(
    f: &MinMaxFunction,
    analysis: &PieceAnalysis,
    piece: usize,
    v_piece: &Polyhedron,
    cone: &PolyCone,
    targets: &[PolyCone],
    z: Vec<Rational>,
    norm: Norm,
) -> Result<Witness> {
    let minimizer = analysis.pieces[piece]
        .minimizer
        .as_ref()
        .filter(|x| v_piece.contains(x))
        .cloned();
    let base = match minimizer {
        Some(x) => x,
        None => v_piece
            .feasible_point()?
            .ok_or(Error::EmptySet("set piece unexpectedly empty"))?,
    };
    let samples = decade_ratios(f, &base, &z, norm)?;
    Ok(Witness::Ray {
        direction: z,
        base: Some(base),
        inside: cone.normals()?,
        outside: targets.iter().map(PolyCone::normals).collect::<Result<_>>()?,
        samples,
    })
}

/// Ratios `[f]_+ / dist` at `lambda = s, 10 s, 100 s` for the first scale
/// `s = 10^k` at which all distances are positive and each ratio is at most
/// half the previous one; the last attempted scale otherwise.
fn decade_ratios(
    f: &MinMaxFunction,
    base: &[Rational],
    z: &[Rational],
    norm: Norm,
) -> Result<Vec<(Rational, Rational)>> {
    let sublevel = f.sublevel_union()?;
    let ratio = |lambda: &Rational| -> Result<Option<Rational>> {
        let x: Vec<Rational> = base.iter().zip(z).map(|(b, d)| b + d * lambda).collect();
        let dist = sublevel.distance(&x, norm)?;
        if dist.is_zero() {
            return Ok(None);
        }
        Ok(Some(f.evaluate_plus(&x)? / dist))
    };
    let ten = int(10);
    let mut scale = Rational::one();
    let mut last = Vec::new();
    for _ in 0..8 {
        let lambdas = [scale.clone(), &scale * &ten, &scale * &ten * &ten];
        let mut row = Vec::with_capacity(3);
        for l in &lambdas {
            if let Some(r) = ratio(l)? {
                row.push((l.clone(), r));
            }
        }
        let halving = row.len() == 3 && row.windows(2).all(|w| &w[1].1 * int(2) <= w[0].1);
        last = row;
        if halving {
            break;
        }
        scale *= &ten;
    }
    Ok(last)
}
