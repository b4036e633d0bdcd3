use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::numeric::Rational;
use crate::polyhedra::{Halfspace, PolyCone, PolyUnion, Polyhedron};
use crate::pwa::MinMaxFunction;

/// The set `V` on which an error bound is sought.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    FullSpace(usize),
    Box { lo: Vec<Rational>, hi: Vec<Rational> },
    PolyUnion(PolyUnion),
    Cone(PolyCone),
    Points { dimension: usize, points: Vec<Vec<Rational>> },
    /// `{x | function(x) < rho}`
    StrictSublevel { function: MinMaxFunction, rho: Rational },
}

impl SetSpec {
    pub fn new_box(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if lo.is_empty() {
            return Err(Error::InvalidInput("box of dimension zero".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::InvalidInput("box needs lo <= hi in every coordinate".into()));
        }
        Ok(SetSpec::Box { lo, hi })
    }

    pub fn points(dimension: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        for p in &points {
            check_dim(dimension, p.len())?;
        }
        Ok(SetSpec::Points { dimension, points })
    }

    pub fn dimension(&self) -> usize {
        match self {
            SetSpec::FullSpace(d) => *d,
            SetSpec::Box { lo, .. } => lo.len(),
            SetSpec::PolyUnion(u) => u.dimension(),
            SetSpec::Cone(c) => c.dimension(),
            SetSpec::Points { dimension, .. } => *dimension,
            SetSpec::StrictSublevel { function, .. } => function.dimension(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetSpec::FullSpace(_) => "full",
            SetSpec::Box { .. } => "box",
            SetSpec::PolyUnion(_) => "polyunion",
            SetSpec::Cone(_) => "cone",
            SetSpec::Points { .. } => "points",
            SetSpec::StrictSublevel { .. } => "strict_sublevel",
        }
    }

    /// Box and point lists are bounded; every other variant is treated as
    /// possibly unbounded.
    pub fn is_bounded(&self) -> bool {
        matches!(self, SetSpec::Box { .. } | SetSpec::Points { .. })
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dimension(), x.len())?;
        Ok(match self {
            SetSpec::FullSpace(_) => true,
            SetSpec::Box { lo, hi } => x.iter().zip(lo).zip(hi).all(|((v, l), h)| l <= v && v <= h),
            SetSpec::PolyUnion(u) => u.contains(x),
            SetSpec::Cone(c) => c.contains(x)?,
            SetSpec::Points { points, .. } => points.iter().any(|p| p == x),
            SetSpec::StrictSublevel { function, rho } => &function.evaluate(x)? < rho,
        })
    }

    /// The set as a finite union of H-form polyhedra, when it is one.
    pub fn polyhedral_pieces(&self) -> Result<Option<Vec<Polyhedron>>> {
        let d = self.dimension();
        Ok(match self {
            SetSpec::FullSpace(_) => Some(vec![Polyhedron::full(d)]),
            SetSpec::Box { lo, hi } => Some(vec![Polyhedron::from_box(lo, hi)?]),
            SetSpec::PolyUnion(u) => Some(u.pieces().to_vec()),
            SetSpec::Cone(c) => {
                let ineqs = c
                    .normals()?
                    .into_iter()
                    .map(|w| Halfspace::new(w, Rational::from_integer(0.into())))
                    .collect();
                Some(vec![Polyhedron::new(d, ineqs)?])
            }
            SetSpec::Points { .. } | SetSpec::StrictSublevel { .. } => None,
        })
    }

    /// Recession cones `0+ V_k` of the polyhedral pieces.
    pub fn recession_cones(&self) -> Result<Option<Vec<PolyCone>>> {
        Ok(match self {
            SetSpec::FullSpace(d) => Some(vec![PolyCone::full(*d)]),
            SetSpec::Cone(c) => Some(vec![c.clone()]),
            SetSpec::Box { .. } => Some(vec![PolyCone::zero(self.dimension())]),
            SetSpec::PolyUnion(u) => Some(u.recession_cones()?),
            SetSpec::Points { .. } | SetSpec::StrictSublevel { .. } => None,
        })
    }
}
