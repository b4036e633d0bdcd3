use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::cone::PolyCone;
use super::dd::cone_generators;
use crate::error::{check_dim, Error, Result};
use crate::numeric::{dot, is_zero_vec, Constraint, LinearProgram, LpOutcome, Rational};

/// `<normal, x> <= rhs`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, rhs: Rational) -> Self {
        Self { normal, rhs }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) <= self.rhs
    }

    /// `0 <= rhs` with `rhs >= 0`: satisfied everywhere.
    pub fn is_trivial(&self) -> bool {
        is_zero_vec(&self.normal) && !self.rhs.is_negative()
    }

    pub fn to_constraint(&self) -> Constraint {
        Constraint::le(self.normal.clone(), self.rhs.clone())
    }
}

/// Closed convex set `{x | <w_k, x> <= c_k}` (possibly empty or unbounded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dimension: usize,
    inequalities: Vec<Halfspace>,
}

impl Polyhedron {
    pub fn new(dimension: usize, inequalities: Vec<Halfspace>) -> Result<Self> {
        for h in &inequalities {
            check_dim(dimension, h.normal.len())?;
        }
        Ok(Self {
            dimension,
            inequalities,
        })
    }

    /// Builds `{x | A x <= b}` from rows of `A` and entries of `b`.
    pub fn from_rows(dimension: usize, a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidInput(alloc::format!(
                "{} rows but {} right-hand sides",
                a.len(),
                b.len()
            )));
        }
        Self::new(
            dimension,
            a.into_iter().zip(b).map(|(w, c)| Halfspace::new(w, c)).collect(),
        )
    }

    pub fn full(dimension: usize) -> Self {
        Self {
            dimension,
            inequalities: Vec::new(),
        }
    }

    /// `lo <= x <= hi` coordinatewise.
    pub fn from_box(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        let d = lo.len();
        let mut ineqs = Vec::with_capacity(2 * d);
        for k in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[k] = Rational::one();
            ineqs.push(Halfspace::new(e.clone(), hi[k].clone()));
            e[k] = -Rational::one();
            ineqs.push(Halfspace::new(e, -&lo[k]));
        }
        Self::new(d, ineqs)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    /// Inequalities other than `0 <= c` with `c >= 0`.
    pub fn nontrivial_inequalities(&self) -> impl Iterator<Item = &Halfspace> {
        self.inequalities.iter().filter(|h| !h.is_trivial())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|h| h.contains(x))
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        self.inequalities.iter().map(Halfspace::to_constraint).collect()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_dim(self.dimension, other.dimension)?;
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        Self::new(self.dimension, ineqs)
    }

    pub fn feasible_point(&self) -> Result<Option<Vec<Rational>>> {
        if self.inequalities.iter().any(|h| is_zero_vec(&h.normal) && h.rhs.is_negative()) {
            return Ok(None);
        }
        if self.dimension == 0 {
            return Ok(Some(Vec::new()));
        }
        let mut lp = LinearProgram::feasibility(self.dimension);
        for h in self.nontrivial_inequalities() {
            lp.push(h.to_constraint());
        }
        Ok(match lp.solve()? {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.feasible_point()?.is_none())
    }

    /// The same set described without redundant inequalities; of equal rows
    /// the first is kept. Rows that are the sum of two remaining rows are
    /// dropped first; every other row is tested by maximizing its normal over
    /// the remaining rows.
    pub fn irredundant(&self) -> Result<Self> {
        if self.is_empty()? {
            return Ok(self.clone());
        }
        let mut rows: Vec<Halfspace> = self.nontrivial_inequalities().cloned().collect();
        let mut k = rows.len();
        while k > 0 {
            k -= 1;
            if is_pair_sum(&rows, k) {
                rows.remove(k);
            }
        }
        let mut k = rows.len();
        while k > 0 {
            k -= 1;
            let h = &rows[k];
            let mut lp = LinearProgram::new(h.normal.iter().map(|w| -w).collect());
            for (j, g) in rows.iter().enumerate() {
                if j != k {
                    lp.push(g.to_constraint());
                }
            }
            let implied = match lp.solve()? {
                LpOutcome::Optimal { value, .. } => -value <= h.rhs,
                _ => false,
            };
            if implied {
                rows.remove(k);
            }
        }
        Self::new(self.dimension, rows)
    }

    /// `{x | <w_k, x> <= 0}`; undefined for the empty set.
    pub fn recession_cone(&self) -> Result<PolyCone> {
        if self.is_empty()? {
            return Err(Error::EmptySet(
                "recession cone of empty set undefined; certification works at the cone level",
            ));
        }
        PolyCone::from_inequalities(
            self.dimension,
            self.nontrivial_inequalities().map(|h| h.normal.clone()).collect(),
        )
    }

    /// Generator form `conv(points) + cone(rays)` via double description of
    /// the homogenized cone `{(x, t) | <w, x> - c t <= 0, t >= 0}`.
    pub fn to_generators(&self) -> Result<GeneratorRep> {
        let d = self.dimension;
        let mut normals: Vec<Vec<Rational>> = self
            .inequalities
            .iter()
            .map(|h| {
                let mut w = h.normal.clone();
                w.push(-&h.rhs);
                w
            })
            .collect();
        let mut t_nonneg = vec![Rational::zero(); d + 1];
        t_nonneg[d] = -Rational::one();
        normals.push(t_nonneg);
        let g = cone_generators(d + 1, &normals)?;

        let mut points: Vec<Vec<Rational>> = Vec::new();
        let mut rays: Vec<Vec<Rational>> = Vec::new();
        for l in &g.lineality {
            debug_assert!(l[d].is_zero());
            let r = l[..d].to_vec();
            rays.push(r.iter().map(|x| -x).collect());
            rays.push(r);
        }
        for r in &g.rays {
            if r[d].is_positive() {
                let p: Vec<Rational> = r[..d].iter().map(|x| x / &r[d]).collect();
                if !points.contains(&p) {
                    points.push(p);
                }
            } else if !rays.contains(&r[..d].to_vec()) {
                rays.push(r[..d].to_vec());
            }
        }
        if points.is_empty() {
            return Ok(GeneratorRep::empty(d));
        }
        Ok(GeneratorRep {
            dimension: d,
            points,
            rays,
        })
    }

    /// Motzkin split `P + K` with `P` a polytope given by its vertices and
    /// `K` the recession cone.
    pub fn motzkin(&self) -> Result<(GeneratorRep, PolyCone)> {
        let cone = self.recession_cone()?;
        let g = self.to_generators()?;
        let polytope = GeneratorRep {
            dimension: self.dimension,
            points: g.points,
            rays: Vec::new(),
        };
        Ok((polytope, cone))
    }
}

/// Row `k` equals the sum of two other rows with no smaller right-hand side.
fn is_pair_sum(rows: &[Halfspace], k: usize) -> bool {
    let h = &rows[k];
    (0..rows.len()).filter(|&i| i != k).any(|i| {
        ((i + 1)..rows.len()).filter(|&j| j != k).any(|j| {
            &rows[i].rhs + &rows[j].rhs <= h.rhs
                && h.normal
                    .iter()
                    .zip(rows[i].normal.iter().zip(&rows[j].normal))
                    .all(|(w, (a, b))| *w == a + b)
        })
    })
}

/// `conv(points) + cone(rays)`; no points means the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRep {
    pub dimension: usize,
    pub points: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

impl GeneratorRep {
    pub fn empty(dimension: usize) -> Self {
        Self {
            dimension,
            points: Vec::new(),
            rays: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Inequality form via the polar `{(w, c) | <w, p> <= c, <w, r> <= 0}`.
    pub fn to_polyhedron(&self) -> Result<Polyhedron> {
        let d = self.dimension;
        if self.points.is_empty() {
            return Polyhedron::new(d, vec![Halfspace::new(vec![Rational::zero(); d], -Rational::one())]);
        }
        let mut normals = Vec::with_capacity(self.points.len() + self.rays.len());
        for p in &self.points {
            check_dim(d, p.len())?;
            let mut w = p.clone();
            w.push(-Rational::one());
            normals.push(w);
        }
        for r in &self.rays {
            check_dim(d, r.len())?;
            let mut w = r.clone();
            w.push(Rational::zero());
            normals.push(w);
        }
        let g = cone_generators(d + 1, &normals)?;
        let mut ineqs = Vec::new();
        let mut push = |wc: &[Rational]| {
            let h = Halfspace::new(wc[..d].to_vec(), wc[d].clone());
            if !h.is_trivial() && !ineqs.contains(&h) {
                ineqs.push(h);
            }
        };
        for l in &g.lineality {
            push(l);
            let neg: Vec<Rational> = l.iter().map(|x| -x).collect();
            push(&neg);
        }
        for r in &g.rays {
            push(r);
        }
        Polyhedron::new(d, ineqs)
    }

    /// Membership by LP: `y = sum l_i p_i + sum m_k r_k`, `l` in the simplex,
    /// `m >= 0`.
    pub fn contains(&self, y: &[Rational]) -> Result<bool> {
        check_dim(self.dimension, y.len())?;
        if self.points.is_empty() {
            return Ok(false);
        }
        let np = self.points.len();
        let n = np + self.rays.len();
        let mut lp = LinearProgram::feasibility(n);
        for c in 0..self.dimension {
            let row = self
                .points
                .iter()
                .chain(&self.rays)
                .map(|g| g[c].clone())
                .collect();
            lp.push(Constraint::eq(row, y[c].clone()));
        }
        let mut simplex = vec![Rational::zero(); n];
        simplex[..np].iter_mut().for_each(|x| *x = Rational::one());
        lp.push(Constraint::eq(simplex, Rational::one()));
        for k in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            lp.push(Constraint::ge(e, Rational::zero()));
        }
        Ok(lp.solve()?.is_feasible())
    }
}
