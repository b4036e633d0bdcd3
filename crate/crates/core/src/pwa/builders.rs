//! Closure of min-max functions under the usual pointwise operations.
//!
//! Results are exact representations, not simplified ones: `pa_add` and
//! `pa_max` distribute over pieces, and negation expands selections.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::function::{AffineTerm, ConvexPiece, MinMaxFunction};
use crate::error::{check_dim, Error, Result};
use crate::numeric::Rational;

/// Maximum number of affine terms a builder may produce.
pub const TERM_CAP: usize = 4096;

fn guard(requested: usize) -> Result<()> {
    if requested > TERM_CAP {
        return Err(Error::CapExceeded {
            what: "term count",
            limit: TERM_CAP,
            requested,
        });
    }
    Ok(())
}

fn assemble(dimension: usize, pieces: Vec<Vec<AffineTerm>>) -> Result<MinMaxFunction> {
    guard(pieces.iter().map(Vec::len).sum())?;
    let mut out: Vec<ConvexPiece> = Vec::with_capacity(pieces.len());
    for terms in pieces {
        let p = ConvexPiece::from_terms_unchecked(terms);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(MinMaxFunction::from_pieces_unchecked(dimension, out))
}

fn same_dimension(f: &MinMaxFunction, g: &MinMaxFunction) -> Result<usize> {
    check_dim(f.dimension(), g.dimension())?;
    Ok(f.dimension())
}

fn add_terms(s: &AffineTerm, t: &AffineTerm) -> AffineTerm {
    AffineTerm::new(
        &s.offset + &t.offset,
        s.gradient.iter().zip(&t.gradient).map(|(a, b)| a + b).collect(),
    )
}

fn scale_term(c: &Rational, t: &AffineTerm) -> AffineTerm {
    AffineTerm::new(c * &t.offset, t.gradient.iter().map(|g| c * g).collect())
}

/// `a + <v, x>`
pub fn pa_affine(offset: Rational, gradient: Vec<Rational>) -> Result<MinMaxFunction> {
    MinMaxFunction::new(gradient.len(), vec![ConvexPiece::new(vec![AffineTerm::new(offset, gradient)])?])
}

pub fn pa_constant(dimension: usize, value: Rational) -> Result<MinMaxFunction> {
    if dimension == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    pa_affine(value, vec![Rational::zero(); dimension])
}

pub fn pa_zero(dimension: usize) -> Result<MinMaxFunction> {
    pa_constant(dimension, Rational::zero())
}

/// `min(f, g)`: concatenated piece lists.
pub fn pa_min(f: &MinMaxFunction, g: &MinMaxFunction) -> Result<MinMaxFunction> {
    let d = same_dimension(f, g)?;
    let pieces = f
        .pieces()
        .iter()
        .chain(g.pieces())
        .map(|p| p.terms().to_vec())
        .collect();
    assemble(d, pieces)
}

/// `max(f, g) = min_{i,k} max(f_i, g_k)`.
pub fn pa_max(f: &MinMaxFunction, g: &MinMaxFunction) -> Result<MinMaxFunction> {
    let d = same_dimension(f, g)?;
    guard(f.pieces().len() * g.term_count() + g.pieces().len() * f.term_count())?;
    let mut pieces = Vec::new();
    for p in f.pieces() {
        for q in g.pieces() {
            pieces.push(p.terms().iter().chain(q.terms()).cloned().collect());
        }
    }
    assemble(d, pieces)
}

/// `f + g = min_{i,k} max_{j,l} (f_ij + g_kl)`.
pub fn pa_add(f: &MinMaxFunction, g: &MinMaxFunction) -> Result<MinMaxFunction> {
    let d = same_dimension(f, g)?;
    let requested: usize = f
        .pieces()
        .iter()
        .map(|p| g.pieces().iter().map(|q| p.terms().len() * q.terms().len()).sum::<usize>())
        .sum();
    guard(requested)?;
    let mut pieces = Vec::new();
    for p in f.pieces() {
        for q in g.pieces() {
            let mut terms = Vec::with_capacity(p.terms().len() * q.terms().len());
            for s in p.terms() {
                for t in q.terms() {
                    terms.push(add_terms(s, t));
                }
            }
            pieces.push(terms);
        }
    }
    assemble(d, pieces)
}

/// `c * f`. For `c < 0` the max-min form `max_i min_j (c f_ij)` is rewritten
/// as a min over all selections `j(i)` of `max_i c f_{i j(i)}`.
pub fn pa_scale(c: &Rational, f: &MinMaxFunction) -> Result<MinMaxFunction> {
    let d = f.dimension();
    if c.is_zero() {
        return pa_zero(d);
    }
    if c.is_positive() {
        let pieces = f
            .pieces()
            .iter()
            .map(|p| p.terms().iter().map(|t| scale_term(c, t)).collect())
            .collect();
        return assemble(d, pieces);
    }
    let sizes: Vec<usize> = f.pieces().iter().map(|p| p.terms().len()).collect();
    let selections = sizes
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .unwrap_or(usize::MAX);
    guard(selections.saturating_mul(sizes.len()))?;
    let mut pieces = Vec::with_capacity(selections);
    let mut choice = vec![0usize; sizes.len()];
    loop {
        pieces.push(
            f.pieces()
                .iter()
                .zip(&choice)
                .map(|(p, &j)| scale_term(c, &p.terms()[j]))
                .collect(),
        );
        // odometer increment
        let mut k = 0;
        loop {
            if k == choice.len() {
                return assemble(d, pieces);
            }
            choice[k] += 1;
            if choice[k] < sizes[k] {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

pub fn pa_neg(f: &MinMaxFunction) -> Result<MinMaxFunction> {
    pa_scale(&-Rational::from_integer(1.into()), f)
}

/// `|f| = max(f, -f)`
pub fn pa_abs(f: &MinMaxFunction) -> Result<MinMaxFunction> {
    pa_max(f, &pa_neg(f)?)
}

/// `[f]_+ = max(f, 0)`
pub fn pa_clamp_plus(f: &MinMaxFunction) -> Result<MinMaxFunction> {
    pa_max(f, &pa_zero(f.dimension())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::pwa::fixtures;

    #[test]
    fn min_of_pieces_reproduces_fixture() {
        let f1 = pa_constant(1, int(1)).unwrap();
        let f2 = pa_clamp_plus(&pa_affine(int(0), vec![int(1)]).unwrap()).unwrap();
        let f = pa_min(&f1, &f2).unwrap();
        let reference = fixtures::robinson_4_2();
        for k in 0..=1000 {
            let x = [rat(k - 500, 100)];
            assert_eq!(f.evaluate(&x).unwrap(), reference.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn abs_of_identity() {
        let f = pa_abs(&pa_affine(int(0), vec![int(1)]).unwrap()).unwrap();
        assert_eq!(f.pieces().len(), 1);
        for x in [-2, 0, 3] {
            assert_eq!(f.evaluate(&[int(x)]).unwrap(), int(x.abs()));
        }
    }

    #[test]
    fn difference_is_zero() {
        let f = fixtures::final_4_3_pair();
        let g = pa_add(&f, &pa_scale(&int(-1), &f).unwrap()).unwrap();
        for (a, b) in [(0, 0), (3, -1), (-2, 5), (1, 1)] {
            assert_eq!(g.evaluate(&[int(a), int(b)]).unwrap(), int(0));
        }
    }

    #[test]
    fn scaling_keeps_homogeneity() {
        let f = fixtures::final_4_3_pair().recession_function();
        assert!(pa_scale(&int(5), &f).unwrap().is_homogeneous_representation());
        assert!(pa_scale(&int(-5), &f).unwrap().is_homogeneous_representation());
    }

    #[test]
    fn term_cap() {
        let mut f = fixtures::example_4_12();
        let err = loop {
            match pa_add(&f, &f) {
                Ok(g) => f = g,
                Err(e) => break e,
            }
        };
        assert!(matches!(err, Error::CapExceeded { limit: TERM_CAP, .. }));
    }

    #[test]
    fn dimension_mismatch() {
        let f = fixtures::robinson_4_2();
        let g = fixtures::final_4_3_pair();
        assert!(matches!(pa_min(&f, &g), Err(Error::DimensionMismatch { .. })));
        assert!(pa_add(&f, &g).is_err());
    }
}
