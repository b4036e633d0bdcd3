use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::numeric::{dot, Rational};
use crate::polyhedra::Norm;

/// `offset + <gradient, x>`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineTerm {
    pub offset: Rational,
    pub gradient: Vec<Rational>,
}

impl AffineTerm {
    pub fn new(offset: Rational, gradient: Vec<Rational>) -> Self {
        Self { offset, gradient }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.offset + dot(&self.gradient, x)
    }

    pub fn dimension(&self) -> usize {
        self.gradient.len()
    }
}

/// Convex piece `f_i(x) = max_j (a_ij + <v_ij, x>)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPiece {
    terms: Vec<AffineTerm>,
}

impl ConvexPiece {
    pub fn new(terms: Vec<AffineTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("convex piece without terms".into()));
        }
        let d = terms[0].dimension();
        for t in &terms {
            check_dim(d, t.dimension())?;
        }
        Ok(Self { terms })
    }

    pub(crate) fn from_terms_unchecked(mut terms: Vec<AffineTerm>) -> Self {
        let mut seen: Vec<AffineTerm> = Vec::with_capacity(terms.len());
        for t in terms.drain(..) {
            if !seen.contains(&t) {
                seen.push(t);
            }
        }
        Self { terms: seen }
    }

    pub fn terms(&self) -> &[AffineTerm] {
        &self.terms
    }

    pub fn dimension(&self) -> usize {
        self.terms[0].dimension()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|t| t.eval(x))
            .max()
            .expect("pieces are nonempty")
    }
}

/// `f(x) = min_i max_j (a_ij + <v_ij, x>)`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinMaxFunction {
    dimension: usize,
    pieces: Vec<ConvexPiece>,
}

impl MinMaxFunction {
    pub fn new(dimension: usize, pieces: Vec<ConvexPiece>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidInput("min-max function without pieces".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.dimension() != dimension {
                return Err(Error::InvalidInput(format!(
                    "piece {i} has dimension {}, expected {dimension}",
                    p.dimension()
                )));
            }
        }
        Ok(Self { dimension, pieces })
    }

    /// Convenience constructor from `(offset, gradient)` lists per piece.
    pub fn from_terms(dimension: usize, pieces: Vec<Vec<(Rational, Vec<Rational>)>>) -> Result<Self> {
        let pieces = pieces
            .into_iter()
            .map(|ts| {
                ConvexPiece::new(ts.into_iter().map(|(a, v)| AffineTerm::new(a, v)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dimension, pieces)
    }

    pub(crate) fn from_pieces_unchecked(dimension: usize, pieces: Vec<ConvexPiece>) -> Self {
        Self { dimension, pieces }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn pieces(&self) -> &[ConvexPiece] {
        &self.pieces
    }

    pub fn term_count(&self) -> usize {
        self.pieces.iter().map(|p| p.terms.len()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = &AffineTerm> {
        self.pieces.iter().flat_map(|p| p.terms.iter())
    }

    pub fn piece_values(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        check_dim(self.dimension, x.len())?;
        Ok(self.pieces.iter().map(|p| p.eval(x)).collect())
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        Ok(self
            .piece_values(x)?
            .into_iter()
            .min()
            .expect("functions have pieces"))
    }

    /// `[f]_+(x)`, computed as `max(f(x), 0)` and checked in debug builds
    /// against `min_i [f_i]_+(x)`.
    pub fn evaluate_plus(&self, x: &[Rational]) -> Result<Rational> {
        let values = self.piece_values(x)?;
        let zero = Rational::zero();
        let direct = values.iter().min().expect("functions have pieces").max(&zero).clone();
        debug_assert_eq!(
            direct,
            values.iter().map(|v| v.max(&zero).clone()).min().unwrap(),
            "[f]_+ = min_i [f_i]_+"
        );
        Ok(direct)
    }

    /// Same representation with every offset zeroed: `f^inf(x) = min_i max_j <v_ij, x>`.
    pub fn recession_function(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                ConvexPiece::from_terms_unchecked(
                    p.terms
                        .iter()
                        .map(|t| AffineTerm::new(Rational::zero(), t.gradient.clone()))
                        .collect(),
                )
            })
            .collect();
        Self::from_pieces_unchecked(self.dimension, pieces)
    }

    /// True iff every offset is zero. This is a property of the
    /// representation; a positively homogeneous function may still be given
    /// with nonzero offsets.
    pub fn is_homogeneous_representation(&self) -> bool {
        self.terms().all(|t| t.offset.is_zero())
    }

    pub fn max_abs_offset(&self) -> Rational {
        self.terms()
            .map(|t| t.offset.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Global Lipschitz constant `max ||v_ij||_*` for the given base norm.
    pub fn lipschitz_constant(&self, base: Norm) -> Rational {
        let dual = base.dual();
        self.terms()
            .map(|t| dual.of(&t.gradient))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}
