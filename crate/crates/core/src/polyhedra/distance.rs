use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::polyhedron::{Halfspace, Polyhedron};
use crate::error::{check_dim, Error, Result};
use crate::numeric::{dot, l1_norm, linf_norm, Constraint, LinearProgram, LpOutcome, Rational};

/// Polyhedral norms only, so every distance is an exact LP value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Norm {
    #[default]
    LInf,
    L1,
}

impl Norm {
    pub fn of(self, v: &[Rational]) -> Rational {
        match self {
            Norm::LInf => linf_norm(v),
            Norm::L1 => l1_norm(v),
        }
    }

    pub fn dual(self) -> Norm {
        match self {
            Norm::LInf => Norm::L1,
            Norm::L1 => Norm::LInf,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Norm::LInf => "linf",
            Norm::L1 => "l1",
        }
    }
}

/// Nearest point of the halfspace `h` to a point `x` outside it, with its
/// distance `(<w,x> - c) / ||w||_*`.
fn halfspace_projection(x: &[Rational], h: &Halfspace, norm: Norm) -> (Rational, Vec<Rational>) {
    let excess = dot(&h.normal, x) - &h.rhs;
    let delta = &excess / norm.dual().of(&h.normal);
    let y = match norm {
        Norm::LInf => x
            .iter()
            .zip(&h.normal)
            .map(|(c, w)| c - &delta * w.signum())
            .collect(),
        Norm::L1 => {
            let mut j = 0;
            for (k, w) in h.normal.iter().enumerate() {
                if w.abs() > h.normal[j].abs() {
                    j = k;
                }
            }
            let mut y = x.to_vec();
            y[j] -= &excess / &h.normal[j];
            y
        }
    };
    (delta, y)
}

/// Exact `dist(x, p)` under `norm`; zero iff `x` lies in `p`.
///
/// The largest halfspace distance is a lower bound; it is the answer when
/// the nearest point of such a halfspace lies in `p`. Otherwise an LP decides.
pub fn distance(x: &[Rational], p: &Polyhedron, norm: Norm) -> Result<Rational> {
    check_dim(p.dimension(), x.len())?;
    let empty = || Error::EmptySet("distance to an empty polyhedron");
    if p.nontrivial_inequalities().any(|h| h.normal.iter().all(Zero::is_zero)) {
        return Err(empty());
    }
    if p.contains(x) {
        return Ok(Rational::zero());
    }
    let projections: Vec<(Rational, Vec<Rational>)> = p
        .nontrivial_inequalities()
        .filter(|h| !h.contains(x))
        .map(|h| halfspace_projection(x, h, norm))
        .collect();
    let bound = projections.iter().map(|(d, _)| d).max().expect("x violates some row").clone();
    if projections.iter().any(|(d, y)| *d == bound && p.contains(y)) {
        return Ok(bound);
    }
    match lp_distance(x, p, norm)? {
        Some(d) => Ok(d),
        None => Err(empty()),
    }
}

/// LP formulation used for general polyhedra. `None` when `p` is empty.
pub(crate) fn lp_distance(x: &[Rational], p: &Polyhedron, norm: Norm) -> Result<Option<Rational>> {
    let d = x.len();
    // variables: y - x (d) followed by t (1) for linf, or u (d) for l1
    let extra = match norm {
        Norm::LInf => 1,
        Norm::L1 => d,
    };
    let n = d + extra;
    let mut objective = vec![Rational::zero(); n];
    objective[d..].iter_mut().for_each(|c| *c = Rational::one());
    let mut lp = LinearProgram::new(objective);
    for h in p.inequalities() {
        let mut w = h.normal.clone();
        w.resize(n, Rational::zero());
        let rhs = &h.rhs - dot(&h.normal, x);
        lp.push(Constraint::le(w, rhs));
    }
    for k in 0..d {
        let slot = match norm {
            Norm::LInf => d,
            Norm::L1 => d + k,
        };
        // |y_k - x_k| <= bound
        let mut up = vec![Rational::zero(); n];
        up[k] = Rational::one();
        up[slot] = -Rational::one();
        lp.push(Constraint::le(up, Rational::zero()));
        let mut down = vec![Rational::zero(); n];
        down[k] = -Rational::one();
        down[slot] = -Rational::one();
        lp.push(Constraint::le(down, Rational::zero()));
    }
    match lp.solve()? {
        LpOutcome::Optimal { value, .. } => {
            debug_assert!(!value.is_negative());
            Ok(Some(value))
        }
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded { .. } => unreachable!("distance is bounded below by zero"),
    }
}

/// Distance to the nearest of several polyhedra. Empty members are skipped;
/// an all-empty list is an error.
pub fn distance_to_union<'a>(
    x: &[Rational],
    pieces: impl IntoIterator<Item = &'a Polyhedron>,
    norm: Norm,
) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for p in pieces {
        let d = match distance(x, p, norm) {
            Ok(d) => d,
            Err(Error::EmptySet(_)) => continue,
            Err(e) => return Err(e),
        };
        if d.is_zero() {
            return Ok(d);
        }
        best = Some(match best {
            Some(b) if b <= d => b,
            _ => d,
        });
    }
    best.ok_or(Error::EmptySet("distance to an empty union"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::polyhedra::Halfspace;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn halfline() {
        let p = Polyhedron::new(1, vec![Halfspace::new(v(&[1]), int(0))]).unwrap();
        assert_eq!(distance(&v(&[3]), &p, Norm::LInf).unwrap(), int(3));
        assert_eq!(distance(&v(&[-3]), &p, Norm::LInf).unwrap(), int(0));
    }

    #[test]
    fn left_halfplane() {
        let p = Polyhedron::new(2, vec![Halfspace::new(v(&[1, 0]), int(0))]).unwrap();
        assert_eq!(distance(&v(&[3, 5]), &p, Norm::LInf).unwrap(), int(3));
        assert_eq!(lp_distance(&v(&[3, 5]), &p, Norm::LInf).unwrap(), Some(int(3)));
    }

    #[test]
    fn origin_point() {
        let origin = Polyhedron::from_box(&v(&[0, 0]), &v(&[0, 0])).unwrap();
        for n in 1..=6 {
            let x = v(&[n, n * n]);
            assert_eq!(distance(&x, &origin, Norm::LInf).unwrap(), int(n * n));
            assert_eq!(distance(&x, &origin, Norm::L1).unwrap(), int(n + n * n));
        }
    }

    #[test]
    fn diagonal_halfspace_norms() {
        // x + y <= 0 from (1, 1): linf distance 1, l1 distance 2
        let p = Polyhedron::new(2, vec![Halfspace::new(v(&[1, 1]), int(0))]).unwrap();
        assert_eq!(distance(&v(&[1, 1]), &p, Norm::LInf).unwrap(), int(1));
        assert_eq!(distance(&v(&[1, 1]), &p, Norm::L1).unwrap(), int(2));
        assert_eq!(lp_distance(&v(&[1, 1]), &p, Norm::L1).unwrap(), Some(int(2)));
    }

    #[test]
    fn projection_bound_matches_lp() {
        // wedge y <= x, y >= -x, x <= 4 from points around it
        let p = Polyhedron::new(
            2,
            vec![
                Halfspace::new(v(&[-1, 1]), int(0)),
                Halfspace::new(v(&[-1, -1]), int(0)),
                Halfspace::new(v(&[1, 0]), int(4)),
            ],
        )
        .unwrap();
        for x in -6..=8 {
            for y in -6..=6 {
                let pt = v(&[x, y]);
                for norm in [Norm::LInf, Norm::L1] {
                    let lp = lp_distance(&pt, &p, norm).unwrap().unwrap();
                    assert_eq!(distance(&pt, &p, norm).unwrap(), lp, "{pt:?} {norm:?}");
                }
            }
        }
    }

    #[test]
    fn empty_is_error() {
        let p = Polyhedron::new(1, vec![Halfspace::new(v(&[1]), int(-1)), Halfspace::new(v(&[-1]), int(-1))])
            .unwrap();
        assert!(matches!(distance(&v(&[0]), &p, Norm::LInf), Err(Error::EmptySet(_))));
        let q = Polyhedron::new(1, vec![Halfspace::new(v(&[0]), int(-1))]).unwrap();
        assert!(matches!(distance(&v(&[0]), &q, Norm::LInf), Err(Error::EmptySet(_))));
    }
}
