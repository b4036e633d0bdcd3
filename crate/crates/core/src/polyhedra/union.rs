use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::cone::{PolyCone, Triviality};
use super::distance::{distance_to_union, Norm};
use super::polyhedron::Polyhedron;
use crate::error::{check_dim, Error, Result};
use crate::numeric::{dot, is_zero_vec, primitive, strictly_feasible, Constraint, Rational, Strictness};

/// Finite union of polyhedra. Construction drops empty pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyUnion {
    dimension: usize,
    pieces: Vec<Polyhedron>,
}

impl PolyUnion {
    pub fn new(dimension: usize, pieces: Vec<Polyhedron>) -> Result<Self> {
        let mut kept = Vec::with_capacity(pieces.len());
        for p in pieces {
            check_dim(dimension, p.dimension())?;
            if !p.is_empty()? {
                kept.push(p);
            }
        }
        Ok(Self {
            dimension,
            pieces: kept,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn pieces(&self) -> &[Polyhedron] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn distance(&self, x: &[Rational], norm: Norm) -> Result<Rational> {
        check_dim(self.dimension, x.len())?;
        distance_to_union(x, &self.pieces, norm)
    }

    /// `0+ V = union of 0+ V_k` over the (nonempty) pieces.
    pub fn recession_cones(&self) -> Result<Vec<PolyCone>> {
        self.pieces.iter().map(Polyhedron::recession_cone).collect()
    }

    /// Closed conic hull, one cone per piece: the cone generated by the
    /// vertices of the Motzkin polytope together with the recession rays.
    pub fn closed_conic_hull(&self) -> Result<Vec<PolyCone>> {
        if self.pieces.is_empty() {
            return Err(Error::EmptySet("closed conic hull of an empty union"));
        }
        self.pieces
            .iter()
            .map(|p| {
                let g = p.to_generators()?;
                let rays = g
                    .points
                    .into_iter()
                    .chain(g.rays)
                    .filter(|r| !is_zero_vec(r))
                    .collect();
                PolyCone::from_generators(self.dimension, rays)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inclusion {
    Contained,
    /// A ray of the tested cone lying outside every member of the union.
    Witness(Vec<Rational>),
}

impl Inclusion {
    pub fn is_contained(&self) -> bool {
        matches!(self, Inclusion::Contained)
    }
}

/// Decides `c ⊆ d_1 ∪ ... ∪ d_k` for polyhedral cones.
///
/// If the generators of the current region all lie in one `d_j` the region
/// is covered by convexity. Otherwise the region outside the first member is
/// split along that member's inequalities into relatively open slices
/// `{h_l > 0}`; each strictly nonempty slice must be covered by the remaining
/// members, which is decided recursively on its closure (the members are
/// closed, so a slice is covered iff its closure is). Members and
/// inequalities are visited in input order.
pub fn cone_in_union(c: &PolyCone, ds: &[PolyCone]) -> Result<Inclusion> {
    let dim = c.dimension();
    for d in ds {
        check_dim(dim, d.dimension())?;
    }
    let members: Vec<Vec<Vec<Rational>>> =
        ds.iter().map(PolyCone::normals).collect::<Result<_>>()?;
    if members.is_empty() {
        return Ok(match c.triviality()? {
            Triviality::Trivial => Inclusion::Contained,
            Triviality::NonTrivial(r) => Inclusion::Witness(primitive(&r)),
        });
    }
    let witness = refine(dim, c.normals()?, Vec::new(), None, &members)?;
    Ok(match witness {
        None => Inclusion::Contained,
        Some(z) => {
            debug_assert!(c.contains(&z)?);
            debug_assert!(members
                .iter()
                .all(|ws| ws.iter().any(|w| dot(w, &z).is_positive())));
            Inclusion::Witness(z)
        }
    })
}

/// Region: `{x | <w, x> <= 0 for w in closed, <h, x> > 0 for h in strict}`,
/// known to be strictly feasible at `point` whenever `strict` is nonempty.
fn refine(
    dim: usize,
    closed: Vec<Vec<Rational>>,
    strict: Vec<Vec<Rational>>,
    point: Option<Vec<Rational>>,
    members: &[Vec<Vec<Rational>>],
) -> Result<Option<Vec<Rational>>> {
    let Some((first, rest)) = members.split_first() else {
        return Ok(point.map(|p| primitive(&p)));
    };
    let generators = PolyCone::from_inequalities(dim, closed.clone())?.rays()?;
    let covered_by_one = members
        .iter()
        .any(|ws| generators.iter().all(|g| ws.iter().all(|w| !dot(w, g).is_positive())));
    if covered_by_one {
        return Ok(None);
    }
    for h in first {
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        let mut constraints: Vec<Constraint> = closed
            .iter()
            .map(|w| Constraint::le(w.clone(), Rational::zero()))
            .collect();
        let strict_start = constraints.len();
        for s in strict.iter().chain(core::iter::once(h)) {
            constraints.push(Constraint::ge(s.clone(), Rational::zero()));
        }
        let strict_idx: Vec<usize> = (strict_start..constraints.len()).collect();
        if let Strictness::Yes(p) = strictly_feasible(dim, &constraints, &strict_idx)? {
            let mut closed_next = closed.clone();
            closed_next.push(h.iter().map(|x| -x).collect());
            let mut strict_next = strict.clone();
            strict_next.push(h.clone());
            if let Some(z) = refine(dim, closed_next, strict_next, Some(p), rest)? {
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::polyhedra::Halfspace;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn h(normals: &[&[i64]]) -> PolyCone {
        let d = normals.first().map_or(2, |n| n.len());
        PolyCone::from_inequalities(d, normals.iter().map(|n| v(n)).collect()).unwrap()
    }

    #[test]
    fn left_halfplane_in_union() {
        let ds = [h(&[&[1, 0]]), h(&[&[0, 1], &[0, -1]])];
        assert_eq!(cone_in_union(&h(&[&[1, 0]]), &ds).unwrap(), Inclusion::Contained);
    }

    #[test]
    fn plane_not_in_union() {
        let ds = [h(&[&[1, 0]]), h(&[&[0, 1], &[0, -1]])];
        let full = PolyCone::full(2);
        match cone_in_union(&full, &ds).unwrap() {
            Inclusion::Witness(z) => {
                assert!(z[0] > int(0));
                assert!(!z[1].is_zero());
            }
            Inclusion::Contained => panic!("plane is not covered"),
        }
    }

    #[test]
    fn quadrant_in_single_member() {
        let ds = [h(&[&[1, 0]])];
        assert!(cone_in_union(&h(&[&[1, 0], &[0, 1]]), &ds).unwrap().is_contained());
    }

    #[test]
    fn covered_only_by_the_union() {
        // upper half plane = {x1 <= 0, x2 >= 0} ∪ {x1 >= 0, x2 >= 0}
        let ds = [h(&[&[1, 0], &[0, -1]]), h(&[&[-1, 0], &[0, -1]])];
        assert!(cone_in_union(&h(&[&[0, -1]]), &ds).unwrap().is_contained());
        // but the full plane is not
        let w = cone_in_union(&PolyCone::full(2), &ds).unwrap();
        assert!(matches!(w, Inclusion::Witness(ref z) if z[1] < int(0)));
    }

    #[test]
    fn empty_member_list() {
        assert!(cone_in_union(&PolyCone::zero(2), &[]).unwrap().is_contained());
        assert!(!cone_in_union(&h(&[&[1, 0]]), &[]).unwrap().is_contained());
    }

    #[test]
    fn union_drops_empty_pieces() {
        let empty = Polyhedron::new(1, vec![Halfspace::new(v(&[0]), int(-1))]).unwrap();
        let half = Polyhedron::new(1, vec![Halfspace::new(v(&[1]), int(0))]).unwrap();
        let u = PolyUnion::new(1, vec![empty, half]).unwrap();
        assert_eq!(u.pieces().len(), 1);
    }

    #[test]
    fn conic_hull_examples() {
        // {(1,0)} + cone{(0,1)}
        let p = Polyhedron::new(
            2,
            vec![
                Halfspace::new(v(&[1, 0]), int(1)),
                Halfspace::new(v(&[-1, 0]), int(-1)),
                Halfspace::new(v(&[0, -1]), int(0)),
            ],
        )
        .unwrap();
        let u = PolyUnion::new(2, vec![p]).unwrap();
        let hull = u.closed_conic_hull().unwrap();
        let expected = PolyCone::from_generators(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(hull[0].same_set(&expected).unwrap());

        let point = Polyhedron::from_box(&v(&[2]), &v(&[2])).unwrap();
        let hull = PolyUnion::new(1, vec![point]).unwrap().closed_conic_hull().unwrap();
        assert!(hull[0].same_set(&PolyCone::from_generators(1, vec![v(&[1])]).unwrap()).unwrap());

        let square = Polyhedron::from_box(&v(&[1, 1]), &v(&[2, 2])).unwrap();
        let hull = PolyUnion::new(2, vec![square]).unwrap().closed_conic_hull().unwrap();
        let expected = PolyCone::from_generators(2, vec![v(&[1, 1]), v(&[2, 1]), v(&[1, 2])]).unwrap();
        assert!(hull[0].same_set(&expected).unwrap());
    }

    #[test]
    fn empty_union_hull_is_error() {
        let u = PolyUnion::new(2, vec![]).unwrap();
        assert!(u.closed_conic_hull().is_err());
    }
}
