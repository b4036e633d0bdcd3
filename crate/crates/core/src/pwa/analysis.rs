use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::function::MinMaxFunction;
use crate::error::{Error, Result};
use crate::numeric::{Constraint, LinearProgram, LpOutcome, Rational};
use crate::polyhedra::{Halfspace, Norm, PolyCone, PolyUnion, Polyhedron};

/// `inf_x f_i(x)`, which is either attained or `-inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infimum {
    NegInfinity,
    Finite(Rational),
}

impl Infimum {
    pub fn is_nonpositive(&self) -> bool {
        match self {
            Infimum::NegInfinity => true,
            Infimum::Finite(v) => !v.is_positive(),
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Infimum::NegInfinity => None,
            Infimum::Finite(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceInfo {
    pub infimum: Infimum,
    /// A global minimizer of the piece when the infimum is finite.
    pub minimizer: Option<Vec<Rational>>,
}

/// Per-piece minima `f_i*` and the derived index set `I0 = {i | f_i* <= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceAnalysis {
    pub pieces: Vec<PieceInfo>,
}

impl PieceAnalysis {
    pub fn active(&self) -> Vec<usize> {
        (0..self.pieces.len())
            .filter(|&i| self.pieces[i].infimum.is_nonpositive())
            .collect()
    }

    /// Pieces with `f_i* > 0`.
    pub fn positive(&self) -> Vec<usize> {
        (0..self.pieces.len())
            .filter(|&i| !self.pieces[i].infimum.is_nonpositive())
            .collect()
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.pieces[i].infimum.is_nonpositive()
    }

    /// `S(f)` is nonempty iff some piece has `f_i* <= 0`.
    pub fn sublevel_nonempty(&self) -> bool {
        self.pieces.iter().any(|p| p.infimum.is_nonpositive())
    }

    /// `rho = min {f_i* | f_i* > 0}`, if any piece is positive.
    pub fn rho(&self) -> Option<Rational> {
        self.pieces
            .iter()
            .filter_map(|p| p.infimum.finite())
            .filter(|v| v.is_positive())
            .min()
            .cloned()
    }
}

impl MinMaxFunction {
    /// Minimizes every piece by LP: `min t` s.t. `a_ij + <v_ij, y> <= t`.
    pub fn analyze_pieces(&self) -> Result<PieceAnalysis> {
        let d = self.dimension();
        let mut out = Vec::with_capacity(self.pieces().len());
        for piece in self.pieces() {
            let mut objective = vec![Rational::zero(); d + 1];
            objective[d] = Rational::one();
            let mut lp = LinearProgram::new(objective);
            for t in piece.terms() {
                let mut row = t.gradient.clone();
                row.push(-Rational::one());
                lp.push(Constraint::le(row, -&t.offset));
            }
            let info = match lp.solve()? {
                LpOutcome::Optimal { value, mut point } => {
                    point.truncate(d);
                    PieceInfo {
                        infimum: Infimum::Finite(value),
                        minimizer: Some(point),
                    }
                }
                LpOutcome::Unbounded { .. } => PieceInfo {
                    infimum: Infimum::NegInfinity,
                    minimizer: None,
                },
                LpOutcome::Infeasible { .. } => unreachable!("t is free"),
            };
            out.push(info);
        }
        Ok(PieceAnalysis { pieces: out })
    }

    /// `{x | f_i(x) <= level}` as `a_ij + <v_ij, x> <= level` for all `j`.
    pub fn piece_sublevel(&self, i: usize, level: &Rational) -> Polyhedron {
        let ineqs = self.pieces()[i]
            .terms()
            .iter()
            .map(|t| Halfspace::new(t.gradient.clone(), level - &t.offset))
            .collect();
        Polyhedron::new(self.dimension(), ineqs).expect("terms share the dimension")
    }

    /// Recession cone `{x | <v_ij, x> <= 0 for all j}` of any nonempty
    /// sublevel set of piece `i`.
    pub fn piece_cone(&self, i: usize) -> PolyCone {
        PolyCone::from_inequalities(
            self.dimension(),
            self.pieces()[i].terms().iter().map(|t| t.gradient.clone()).collect(),
        )
        .expect("terms share the dimension")
    }

    /// `S(f) = union of S(f_i)` over `I0`; empty iff `I0` is empty.
    pub fn sublevel_union(&self) -> Result<PolyUnion> {
        let analysis = self.analyze_pieces()?;
        self.sublevel_union_with(&analysis)
    }

    pub fn sublevel_union_with(&self, analysis: &PieceAnalysis) -> Result<PolyUnion> {
        let zero = Rational::zero();
        let pieces = analysis
            .active()
            .into_iter()
            .map(|i| self.piece_sublevel(i, &zero))
            .collect();
        PolyUnion::new(self.dimension(), pieces)
    }

    /// `0+ S(f)` as one cone per active piece.
    pub fn sublevel_recession(&self) -> Result<Vec<PolyCone>> {
        let analysis = self.analyze_pieces()?;
        self.sublevel_recession_with(&analysis)
    }

    pub fn sublevel_recession_with(&self, analysis: &PieceAnalysis) -> Result<Vec<PolyCone>> {
        let active = analysis.active();
        if active.is_empty() {
            return Err(Error::EmptySet("S(f) empty"));
        }
        Ok(active.into_iter().map(|i| self.piece_cone(i)).collect())
    }

    /// `S([f]_+^inf)` as one cone per piece (all pieces, not only `I0`).
    pub fn rec_plus_sublevel(&self) -> Vec<PolyCone> {
        (0..self.pieces().len()).map(|i| self.piece_cone(i)).collect()
    }

    /// `dist(x, S(f)) = min over I0 of dist(x, S(f_i))`.
    pub fn distance_to_sublevel(&self, x: &[Rational], norm: Norm) -> Result<Rational> {
        let s = self.sublevel_union()?;
        if s.is_empty() {
            return Err(Error::EmptySet("S(f) empty"));
        }
        s.distance(x, norm)
    }
}
