//! Double description for homogeneous cones `{x | <a_k, x> <= 0}`.
//!
//! The cone is kept as `lineality + cone(rays)`. Constraints that cut the
//! lineality space shrink it by one dimension and turn one lineality vector
//! into a ray; all other constraints go through the classic DD step with the
//! combinatorial adjacency test, which is valid because the rays stay the
//! extreme rays of the pointed part.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{dot, is_zero_vec, primitive, Rational};

/// Refuse double description above this ambient dimension.
pub const DIMENSION_CAP: usize = 8;
/// Refuse double description when the ray list would exceed this size.
pub const GENERATOR_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConeGenerators {
    /// Basis of the lineality space (both signs belong to the cone).
    pub lineality: Vec<Vec<Rational>>,
    /// Extreme rays of the pointed part, primitive integer vectors.
    pub rays: Vec<Vec<Rational>>,
}

impl ConeGenerators {
    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// Every ray of the cone's conic generating set, lineality in both signs.
    pub fn all_rays(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(2 * self.lineality.len() + self.rays.len());
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out.extend(self.rays.iter().cloned());
        out
    }
}

struct Ray {
    v: Vec<Rational>,
    zeros: BTreeSet<usize>,
}

pub fn cone_generators(dimension: usize, normals: &[Vec<Rational>]) -> Result<ConeGenerators> {
    if dimension > DIMENSION_CAP {
        return Err(Error::CapExceeded {
            what: "double description dimension",
            limit: DIMENSION_CAP,
            requested: dimension,
        });
    }
    let mut lineality: Vec<Vec<Rational>> = (0..dimension)
        .map(|k| {
            let mut e = vec![Rational::zero(); dimension];
            e[k] = Rational::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();

    for (k, h) in normals.iter().enumerate() {
        if h.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: h.len(),
            });
        }
        if is_zero_vec(h) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut hl0 = dot(h, &l0);
            if hl0.is_positive() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                hl0 = -hl0;
            }
            let project = |v: &mut Vec<Rational>| {
                let coef = dot(h, v) / &hl0;
                if !coef.is_zero() {
                    for (x, y) in v.iter_mut().zip(&l0) {
                        *x -= &coef * y;
                    }
                }
            };
            for l in lineality.iter_mut() {
                project(l);
            }
            for r in rays.iter_mut() {
                project(&mut r.v);
                r.v = primitive(&r.v);
                r.zeros.insert(k);
            }
            rays.push(Ray {
                v: primitive(&l0),
                zeros: processed.iter().copied().collect(),
            });
        } else {
            let values: Vec<Rational> = rays.iter().map(|r| dot(h, &r.v)).collect();
            let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            let mut fresh: Vec<Ray> = Vec::new();
            for &p in &plus {
                for &n in &minus {
                    let common: BTreeSet<usize> =
                        rays[p].zeros.intersection(&rays[n].zeros).copied().collect();
                    let adjacent = rays.iter().enumerate().all(|(i, r)| {
                        i == p || i == n || !common.is_subset(&r.zeros)
                    });
                    if !adjacent {
                        continue;
                    }
                    let hp = &values[p];
                    let hn = -&values[n];
                    let v: Vec<Rational> = rays[n]
                        .v
                        .iter()
                        .zip(&rays[p].v)
                        .map(|(a, b)| hp * a + &hn * b)
                        .collect();
                    let mut zeros = common;
                    zeros.insert(k);
                    fresh.push(Ray {
                        v: primitive(&v),
                        zeros,
                    });
                }
            }
            let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
            for (i, mut r) in rays.into_iter().enumerate() {
                if values[i].is_positive() {
                    continue;
                }
                if values[i].is_zero() {
                    r.zeros.insert(k);
                }
                kept.push(r);
            }
            kept.extend(fresh);
            rays = kept;
        }
        processed.push(k);
        if rays.len() > GENERATOR_CAP {
            return Err(Error::CapExceeded {
                what: "double description generators",
                limit: GENERATOR_CAP,
                requested: rays.len(),
            });
        }
    }

    let mut out_rays: Vec<Vec<Rational>> = Vec::with_capacity(rays.len());
    for r in rays {
        if !is_zero_vec(&r.v) && !out_rays.contains(&r.v) {
            out_rays.push(r.v);
        }
    }
    Ok(ConeGenerators {
        lineality: lineality.iter().map(|l| primitive(l)).collect(),
        rays: out_rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn orthant() {
        let g = cone_generators(2, &[v(&[-1, 0]), v(&[0, -1])]).unwrap();
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 2);
        assert!(g.rays.contains(&v(&[1, 0])));
        assert!(g.rays.contains(&v(&[0, 1])));
    }

    #[test]
    fn halfspace_keeps_lineality() {
        let g = cone_generators(3, &[v(&[1, 0, 0])]).unwrap();
        assert_eq!(g.lineality.len(), 2);
        assert_eq!(g.rays, [v(&[-1, 0, 0])]);
    }

    #[test]
    fn pointed_square_cone() {
        // cone over a square: |x| <= z, |y| <= z
        let normals = [
            v(&[1, 0, -1]),
            v(&[-1, 0, -1]),
            v(&[0, 1, -1]),
            v(&[0, -1, -1]),
        ];
        let g = cone_generators(3, &normals).unwrap();
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert_eq!(r[2], int(1));
            for n in &normals {
                assert!(dot(n, r) <= int(0));
            }
        }
    }

    #[test]
    fn trivial_cone() {
        let g = cone_generators(1, &[v(&[1]), v(&[-1])]).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            cone_generators(9, &[]),
            Err(Error::CapExceeded { .. })
        ));
    }
}
