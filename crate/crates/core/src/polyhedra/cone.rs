use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::dd::{cone_generators, ConeGenerators};
use crate::error::{check_dim, Result};
use crate::numeric::{dot, is_zero_vec, Constraint, LinearProgram, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeRepr {
    /// `{x | <w, x> <= 0 for every listed w}`
    Inequalities(Vec<Vec<Rational>>),
    /// Nonnegative combinations of the listed rays.
    Generators(Vec<Vec<Rational>>),
}

/// A polyhedral convex cone in either representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCone {
    dimension: usize,
    repr: ConeRepr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    /// A nonzero ray inside the cone.
    NonTrivial(Vec<Rational>),
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::Trivial)
    }
}

impl PolyCone {
    pub fn from_inequalities(dimension: usize, normals: Vec<Vec<Rational>>) -> Result<Self> {
        for n in &normals {
            check_dim(dimension, n.len())?;
        }
        Ok(Self {
            dimension,
            repr: ConeRepr::Inequalities(normals),
        })
    }

    pub fn from_generators(dimension: usize, rays: Vec<Vec<Rational>>) -> Result<Self> {
        for r in &rays {
            check_dim(dimension, r.len())?;
        }
        Ok(Self {
            dimension,
            repr: ConeRepr::Generators(rays),
        })
    }

    pub fn full(dimension: usize) -> Self {
        Self {
            dimension,
            repr: ConeRepr::Inequalities(Vec::new()),
        }
    }

    pub fn zero(dimension: usize) -> Self {
        Self {
            dimension,
            repr: ConeRepr::Generators(Vec::new()),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn repr(&self) -> &ConeRepr {
        &self.repr
    }

    /// Inequality normals, converting from generators if necessary.
    /// Zero normals are dropped.
    pub fn normals(&self) -> Result<Vec<Vec<Rational>>> {
        match &self.repr {
            ConeRepr::Inequalities(ws) => Ok(ws.iter().filter(|w| !is_zero_vec(w)).cloned().collect()),
            ConeRepr::Generators(gs) => {
                // The H-form of cone(G) is generated by the polar {y | <y, g> <= 0}.
                Ok(cone_generators(self.dimension, gs)?.all_rays())
            }
        }
    }

    /// Minimal generators: lineality basis plus extreme rays.
    pub fn generators(&self) -> Result<ConeGenerators> {
        match &self.repr {
            ConeRepr::Inequalities(ws) => cone_generators(self.dimension, ws),
            ConeRepr::Generators(_) => cone_generators(self.dimension, &self.normals()?),
        }
    }

    /// Conic generating set, lineality vectors listed in both signs.
    pub fn rays(&self) -> Result<Vec<Vec<Rational>>> {
        Ok(self.generators()?.all_rays())
    }

    pub fn to_inequalities(&self) -> Result<Self> {
        Ok(Self {
            dimension: self.dimension,
            repr: ConeRepr::Inequalities(self.normals()?),
        })
    }

    pub fn to_generators(&self) -> Result<Self> {
        Ok(Self {
            dimension: self.dimension,
            repr: ConeRepr::Generators(self.rays()?),
        })
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dimension, x.len())?;
        match &self.repr {
            ConeRepr::Inequalities(ws) => Ok(ws.iter().all(|w| !dot(w, x).is_positive())),
            ConeRepr::Generators(gs) => {
                if is_zero_vec(x) {
                    return Ok(true);
                }
                if gs.is_empty() {
                    return Ok(false);
                }
                // x = sum mu_k g_k, mu >= 0
                let m = gs.len();
                let mut lp = LinearProgram::feasibility(m);
                for c in 0..self.dimension {
                    let row = gs.iter().map(|g| g[c].clone()).collect();
                    lp.push(Constraint::eq(row, x[c].clone()));
                }
                for k in 0..m {
                    let mut e = alloc::vec![Rational::zero(); m];
                    e[k] = num_traits::One::one();
                    lp.push(Constraint::ge(e, Rational::zero()));
                }
                Ok(lp.solve()?.is_feasible())
            }
        }
    }

    /// `K* = {y | <y, x> <= 0 for all x in K}`; swaps the representation.
    pub fn polar(&self) -> Self {
        let repr = match &self.repr {
            ConeRepr::Inequalities(ws) => ConeRepr::Generators(ws.clone()),
            ConeRepr::Generators(gs) => ConeRepr::Inequalities(gs.clone()),
        };
        Self {
            dimension: self.dimension,
            repr,
        }
    }

    /// Concatenation of both H-forms.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_dim(self.dimension, other.dimension)?;
        let mut normals = self.normals()?;
        normals.extend(other.normals()?);
        Self::from_inequalities(self.dimension, normals)
    }

    pub fn triviality(&self) -> Result<Triviality> {
        let g = self.generators()?;
        if let Some(l) = g.lineality.first() {
            return Ok(Triviality::NonTrivial(l.clone()));
        }
        Ok(match g.rays.first() {
            Some(r) => Triviality::NonTrivial(r.clone()),
            None => Triviality::Trivial,
        })
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.triviality()?.is_trivial())
    }

    /// Set inclusion `self ⊆ other`, checked on generators of `self`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        check_dim(self.dimension, other.dimension)?;
        let h = other.to_inequalities()?;
        for r in self.rays()? {
            if !h.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn polar_examples() {
        let full = PolyCone::full(2);
        assert!(full.polar().is_trivial().unwrap());

        let orthant = PolyCone::from_generators(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let nonpos = PolyCone::from_inequalities(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(orthant.polar().same_set(&nonpos).unwrap());

        let c = PolyCone::from_generators(2, vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        let expected = PolyCone::from_generators(2, vec![v(&[0, -1]), v(&[-1, 1])]).unwrap();
        let p = c.polar();
        assert!(p.same_set(&expected).unwrap());
        for y in expected.rays().unwrap() {
            for g in [v(&[1, 0]), v(&[1, 1])] {
                assert!(dot(&y, &g) <= int(0));
            }
        }
        assert!(p.polar().same_set(&c).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let orthant = PolyCone::from_inequalities(2, vec![v(&[-1, 0]), v(&[0, -1])]).unwrap();
        let neg = PolyCone::from_inequalities(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(orthant.intersect(&neg).unwrap().is_trivial().unwrap());

        let line = PolyCone::from_inequalities(2, vec![v(&[0, 1]), v(&[0, -1])]).unwrap();
        let upper = PolyCone::from_inequalities(2, vec![v(&[0, -1])]).unwrap();
        assert!(line.intersect(&upper).unwrap().same_set(&line).unwrap());

        let left = PolyCone::from_inequalities(2, vec![v(&[1, 0])]).unwrap();
        let quadrant = left.intersect(&upper).unwrap();
        let expected = PolyCone::from_generators(2, vec![v(&[-1, 0]), v(&[0, 1])]).unwrap();
        assert!(quadrant.same_set(&expected).unwrap());
    }

    #[test]
    fn triviality_examples() {
        let c = PolyCone::from_inequalities(1, vec![v(&[1]), v(&[-1])]).unwrap();
        assert_eq!(c.triviality().unwrap(), Triviality::Trivial);

        let orthant = PolyCone::from_inequalities(2, vec![v(&[-1, 0]), v(&[0, -1])]).unwrap();
        assert_eq!(orthant.triviality().unwrap(), Triviality::NonTrivial(v(&[1, 0])));

        let c = PolyCone::from_inequalities(
            2,
            vec![v(&[0, 1]), v(&[0, -1]), v(&[0, -1]), v(&[-1, 0]), v(&[1, 0])],
        )
        .unwrap();
        assert!(c.is_trivial().unwrap());
    }

    #[test]
    fn generator_membership() {
        let c = PolyCone::from_generators(2, vec![v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert!(c.contains(&v(&[3, 1])).unwrap());
        assert!(!c.contains(&v(&[1, 2])).unwrap());
        assert!(c.contains(&v(&[0, 0])).unwrap());
        assert!(PolyCone::zero(2).contains(&v(&[0, 0])).unwrap());
        assert!(!PolyCone::zero(2).contains(&v(&[0, 1])).unwrap());
    }
}
