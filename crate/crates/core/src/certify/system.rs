use alloc::vec::Vec;

use super::certificate::{Certificate, Quantity, Scope, TheoremTag, Verdict};
use super::polyhedral::certify_polyhedral;
use super::set::SetSpec;
use super::tau::{estimate_tau, EstimateConfig};
use super::theorems::{certify_bounded, check_coercive_on_cone, check_growth, classify_robinson};
use crate::error::{check_dim, Error, Result};
use crate::pwa::{pa_abs, pa_add, pa_clamp_plus, pa_max, pa_zero, MinMaxFunction};

/// `F(x) = 0, G(x) <= 0` with piecewise affine components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    dimension: usize,
    equalities: Vec<MinMaxFunction>,
    inequalities: Vec<MinMaxFunction>,
}

impl ConstraintSystem {
    pub fn new(
        dimension: usize,
        equalities: Vec<MinMaxFunction>,
        inequalities: Vec<MinMaxFunction>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for g in equalities.iter().chain(&inequalities) {
            check_dim(dimension, g.dimension())?;
        }
        Ok(Self {
            dimension,
            equalities,
            inequalities,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn equalities(&self) -> &[MinMaxFunction] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[MinMaxFunction] {
        &self.inequalities
    }

    /// `phi(x) = max_j |F_j(x)| + sum_i [G_i(x)]_+`, whose zero set is the
    /// solution set of the system.
    pub fn residual(&self) -> Result<MinMaxFunction> {
        let mut phi = pa_zero(self.dimension)?;
        if let Some((first, rest)) = self.equalities.split_first() {
            let mut norm = pa_abs(first)?;
            for g in rest {
                norm = pa_max(&norm, &pa_abs(g)?)?;
            }
            phi = norm;
        }
        for g in &self.inequalities {
            phi = pa_add(&phi, &pa_clamp_plus(g)?)?;
        }
        Ok(phi)
    }
}

/// Runs every applicable sufficient condition for `phi` on `v`, plus the
/// exact polyhedral test when `v` is a finite union of polyhedra. The
/// verdict follows the exact test when present.
pub fn certify_system(sys: &ConstraintSystem, v: &SetSpec, config: &EstimateConfig) -> Result<Certificate> {
    check_dim(sys.dimension, v.dimension())?;
    let phi = sys.residual()?;
    let robinson = classify_robinson(&phi)?;
    let global = robinson.scope == Some(Scope::Global);
    let mut cert = Certificate::new(TheoremTag::System, Verdict::Inconclusive);
    cert.set("terms", Quantity::Index(phi.term_count()));
    cert.set("global_by_minima", Quantity::Flag(global));
    cert.parts.push(robinson);

    let mut any_sufficient = global;
    let mut exact: Option<Verdict> = None;
    let mut tau = None;

    if v.is_bounded() {
        let b = certify_bounded(&phi, v, config)?;
        cert.set("condition_bounded", Quantity::Flag(true));
        any_sufficient = true;
        tau = b.parts.iter().find(|p| p.theorem == TheoremTag::TauEstimate).cloned();
        cert.parts.push(b);
    }
    if matches!(v, SetSpec::FullSpace(_) | SetSpec::Cone(_) | SetSpec::PolyUnion(_)) {
        let g = check_growth(&phi, v, config.norm)?;
        let met = g.condition_met == Some(true);
        cert.set("condition_growth", Quantity::Flag(met));
        any_sufficient |= met;
        cert.parts.push(g);
    }
    if matches!(v, SetSpec::FullSpace(_) | SetSpec::Cone(_)) {
        let c = check_coercive_on_cone(&phi, v)?;
        let met = c.condition_met == Some(true);
        cert.set("condition_coercive", Quantity::Flag(met));
        any_sufficient |= met;
        cert.parts.push(c);
    }
    if matches!(v, SetSpec::FullSpace(_)) {
        let homogeneous = sys
            .equalities
            .iter()
            .chain(&sys.inequalities)
            .all(MinMaxFunction::is_homogeneous_representation);
        cert.set("condition_homogeneous", Quantity::Flag(homogeneous));
        any_sufficient |= homogeneous;
    }
    if !matches!(v, SetSpec::Points { .. } | SetSpec::StrictSublevel { .. }) {
        let p = certify_polyhedral(&phi, v, config.norm)?;
        cert.set("condition_recession", Quantity::Flag(p.verdict == Verdict::Holds));
        exact = Some(p.verdict);
        cert.parts.push(p);
    }
    cert.parts.push(match tau {
        Some(t) => t,
        None => estimate_tau(&phi, v, config)?,
    });

    cert.verdict = match exact {
        Some(verdict) => verdict,
        None if any_sufficient => Verdict::Holds,
        None => Verdict::Inconclusive,
    };
    if cert.verdict == Verdict::Holds {
        cert.scope = Some(if global || matches!(v, SetSpec::FullSpace(_)) {
            Scope::Global
        } else {
            Scope::GivenSet
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, Rational};
    use crate::pwa::pa_affine;

    fn affine(a: i64, g: &[i64]) -> MinMaxFunction {
        pa_affine(int(a), g.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn small() -> EstimateConfig {
        EstimateConfig {
            samples: 64,
            box_radius: int(100),
            max_grid_points: 256,
            ..EstimateConfig::default()
        }
    }

    #[test]
    fn single_equality() {
        let sys = ConstraintSystem::new(1, vec![affine(0, &[1])], vec![]).unwrap();
        let phi = sys.residual().unwrap();
        assert!(phi.is_homogeneous_representation());
        for x in [-3, 0, 2] {
            assert_eq!(phi.evaluate(&[int(x)]).unwrap(), int(x.abs()));
        }
        let c = certify_system(&sys, &SetSpec::FullSpace(1), &small()).unwrap();
        assert_eq!((c.verdict, c.scope.clone()), (Verdict::Holds, Some(Scope::Global)));
        let tau = c.parts.iter().find(|p| p.theorem == TheoremTag::TauEstimate).unwrap();
        assert_eq!(tau.value("min_ratio"), Some(&int(1)));
    }

    #[test]
    fn interval() {
        let sys = ConstraintSystem::new(1, vec![], vec![affine(-1, &[1]), affine(-1, &[-1])]).unwrap();
        let phi = sys.residual().unwrap();
        let values: Vec<Rational> = [-3, 0, 1, 5].iter().map(|&x| phi.evaluate(&[int(x)]).unwrap()).collect();
        assert_eq!(values, vec![int(2), int(0), int(0), int(4)]);
        let c = certify_system(&sys, &SetSpec::FullSpace(1), &small()).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        let tau = c.parts.iter().find(|p| p.theorem == TheoremTag::TauEstimate).unwrap();
        assert_eq!(tau.value("min_ratio"), Some(&int(1)));
        assert_eq!(tau.value("min_ratio_outer"), Some(&int(1)));
    }

    #[test]
    fn inconsistent_system_is_error() {
        let sys = ConstraintSystem::new(1, vec![affine(1, &[0])], vec![]).unwrap();
        assert!(matches!(
            certify_system(&sys, &SetSpec::FullSpace(1), &small()),
            Err(Error::EmptySet(_))
        ));
    }
}
