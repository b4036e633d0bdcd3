use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::certificate::{Certificate, Quantity, TheoremTag, Verdict, Witness};
use super::set::SetSpec;
use crate::error::{check_dim, Error, Result};
use crate::numeric::{int, linf_norm, rat, Rational};
use crate::polyhedra::{Norm, PolyCone, PolyUnion, Polyhedron};
use crate::pwa::MinMaxFunction;

/// Sampling parameters for [`estimate_tau`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateConfig {
    /// Seeded random points per box.
    pub samples: usize,
    /// Half-width of the sampling box for unbounded sets.
    pub box_radius: Rational,
    pub seed: u64,
    pub norm: Norm,
    /// Finest grid step; defaults to the largest power of two `<= radius / 64`.
    pub grid_step: Option<Rational>,
    /// Points per grid level.
    pub max_grid_points: usize,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            samples: 512,
            box_radius: int(16),
            seed: 0,
            norm: Norm::LInf,
            grid_step: None,
            max_grid_points: 4096,
        }
    }
}

/// Smallest ratio `[f]_+(x) / dist(x, S(f))` seen over samples with `dist > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioSummary {
    pub radius: Option<Rational>,
    pub min_ratio: Option<Rational>,
    pub argmin: Option<Vec<Rational>>,
    pub sampled: usize,
    pub positive: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauEstimate {
    pub inner: RatioSummary,
    /// Samples of the inner run plus those of the box of ten times the radius.
    pub outer: Option<RatioSummary>,
    /// `min_outer < min_inner / 2`; for point lists, the minimum over all
    /// points against the minimum over the first half.
    pub vanishing: bool,
    /// Per-point ratios, for point lists.
    pub sequence: Vec<(Vec<Rational>, Rational)>,
}

const RANDOM_BITS: u32 = 16;

/// Largest power of two not exceeding `x > 0`.
fn dyadic_floor(x: &Rational) -> Rational {
    let mut s = Rational::one();
    let two = int(2);
    if &s <= x {
        while &(&s * &two) <= x {
            s *= &two;
        }
    } else {
        while &s > x {
            s /= &two;
        }
    }
    s
}

/// Largest `m` with `m^d <= cap`.
fn per_axis(cap: usize, d: usize) -> usize {
    let mut m = 1usize;
    while (m + 1).checked_pow(d as u32).is_some_and(|p| p <= cap) {
        m += 1;
    }
    m
}

struct Membership<'a> {
    set: &'a SetSpec,
    cone: Option<PolyCone>,
    level: Option<Rational>,
}

impl<'a> Membership<'a> {
    fn new(set: &'a SetSpec) -> Result<Self> {
        let cone = match set {
            SetSpec::Cone(c) => Some(c.to_inequalities()?),
            _ => None,
        };
        let level = match set {
            SetSpec::StrictSublevel { rho, .. } => Some(rho - rat(1, 1024)),
            _ => None,
        };
        Ok(Self { set, cone, level })
    }

    fn admits(&self, x: &[Rational]) -> Result<bool> {
        if let Some(c) = &self.cone {
            return c.contains(x);
        }
        if let (SetSpec::StrictSublevel { function, .. }, Some(level)) = (self.set, &self.level) {
            return Ok(&function.evaluate(x)? <= level);
        }
        self.set.contains(x)
    }
}

struct Sampler<'a> {
    f: &'a MinMaxFunction,
    sublevel: &'a PolyUnion,
    norm: Norm,
    seen: BTreeSet<Vec<Rational>>,
    summary: RatioSummary,
}

impl<'a> Sampler<'a> {
    fn visit(&mut self, x: Vec<Rational>) -> Result<Option<Rational>> {
        if !self.seen.insert(x.clone()) {
            return Ok(None);
        }
        self.summary.sampled += 1;
        if self.sublevel.contains(&x) {
            return Ok(None);
        }
        let dist = self.sublevel.distance(&x, self.norm)?;
        if dist.is_zero() {
            return Ok(None);
        }
        let ratio = self.f.evaluate_plus(&x)? / dist;
        self.summary.positive += 1;
        let better = match &self.summary.min_ratio {
            None => true,
            Some(m) => &ratio < m,
        };
        if better {
            self.summary.min_ratio = Some(ratio.clone());
            self.summary.argmin = Some(x);
        }
        Ok(Some(ratio))
    }
}

/// Sampling box `[lo, hi]` for a run of the given radius.
fn sampling_box(v: &SetSpec, radius: &Rational) -> (Vec<Rational>, Vec<Rational>) {
    match v {
        SetSpec::Box { lo, hi } => (lo.clone(), hi.clone()),
        _ => {
            let d = v.dimension();
            (vec![-radius; d], vec![radius.clone(); d])
        }
    }
}

/// Origin-anchored grid levels: level `k` has step `h 2^k` and `2n + 1`
/// points per axis, and skips the core already covered by level `k - 1`.
fn grid_points(
    lo: &[Rational],
    hi: &[Rational],
    step: &Rational,
    cap: usize,
    mut emit: impl FnMut(Vec<Rational>) -> Result<()>,
) -> Result<()> {
    let d = lo.len();
    let reach = lo.iter().chain(hi).map(Signed::abs).max().unwrap_or_else(Rational::zero);
    let n = ((per_axis(cap, d).max(3) - 1) / 2) as i64;
    let mut s = step.clone();
    let mut level = 0;
    loop {
        let mut idx = vec![-n; d];
        'points: loop {
            let inner = level > 0 && idx.iter().all(|i| i.abs() <= n / 2);
            if !inner {
                let x: Vec<Rational> = idx.iter().map(|&i| &s * int(i)).collect();
                if x.iter().zip(lo).zip(hi).all(|((c, l), h)| l <= c && c <= h) {
                    emit(x)?;
                }
            }
            for i in idx.iter_mut() {
                *i += 1;
                if *i <= n {
                    continue 'points;
                }
                *i = -n;
            }
            break;
        }
        if &s * int(n) >= reach {
            return Ok(());
        }
        s *= int(2);
        level += 1;
    }
}

fn random_points(
    lo: &[Rational],
    hi: &[Rational],
    rng: &mut ChaCha8Rng,
    count: usize,
    mut accept: impl FnMut(Vec<Rational>) -> Result<bool>,
) -> Result<()> {
    let denom = Rational::from_integer(BigInt::from(1u64 << RANDOM_BITS));
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < count && attempts < 16 * count.max(1) {
        attempts += 1;
        let x: Vec<Rational> = lo
            .iter()
            .zip(hi)
            .map(|(l, h)| {
                let u = Rational::from_integer(BigInt::from(rng.next_u64() >> (64 - RANDOM_BITS))) / &denom;
                l + (h - l) * u
            })
            .collect();
        if accept(x)? {
            accepted += 1;
        }
    }
    Ok(())
}

/// Vertices `p` and points `p + 2^k r` along recession rays, inside the box.
fn generator_points(v: &SetSpec, radius: &Rational) -> Vec<Vec<Rational>> {
    let pieces = match v.polyhedral_pieces() {
        Ok(Some(p)) if !matches!(v, SetSpec::FullSpace(_)) => p,
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for piece in pieces {
        let Ok(g) = piece.to_generators() else { continue };
        for p in &g.points {
            if &linf_norm(p) <= radius {
                out.push(p.clone());
            }
            for r in &g.rays {
                let mut scale = Rational::one();
                loop {
                    let x: Vec<Rational> = p.iter().zip(r).map(|(a, b)| a + b * &scale).collect();
                    if &linf_norm(&x) > radius {
                        break;
                    }
                    out.push(x);
                    scale *= int(2);
                }
            }
        }
    }
    out
}

fn run_box(
    sampler: &mut Sampler<'_>,
    v: &SetSpec,
    member: &Membership<'_>,
    radius: &Rational,
    config: &EstimateConfig,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let (lo, hi) = sampling_box(v, radius);
    let extent = lo.iter().chain(&hi).map(Signed::abs).max().unwrap_or_else(Rational::zero);
    let step = match &config.grid_step {
        Some(s) if s.is_positive() => s.clone(),
        Some(_) => return Err(Error::InvalidInput("grid step must be positive".into())),
        None if extent.is_zero() => Rational::one(),
        None => dyadic_floor(&(&extent / int(64))),
    };
    grid_points(&lo, &hi, &step, config.max_grid_points, |x| {
        if member.admits(&x)? {
            sampler.visit(x)?;
        }
        Ok(())
    })?;
    for x in generator_points(v, radius) {
        if member.admits(&x)? {
            sampler.visit(x)?;
        }
    }
    random_points(&lo, &hi, rng, config.samples, |x| {
        if member.admits(&x)? {
            sampler.visit(x)?;
            Ok(true)
        } else {
            Ok(false)
        }
    })
}

/// Samples the ratio `[f]_+(x) / dist(x, S(f))` over `v`.
///
/// Unbounded sets are clipped to `[-R, R]^d` and then to `[-10R, 10R]^d`;
/// the second run keeps the first run's samples, so its minimum never
/// exceeds the first.
pub fn sample_tau(f: &MinMaxFunction, v: &SetSpec, config: &EstimateConfig) -> Result<TauEstimate> {
    check_dim(f.dimension(), v.dimension())?;
    if !config.box_radius.is_positive() {
        return Err(Error::InvalidInput("box radius must be positive".into()));
    }
    let union = f.sublevel_union()?;
    let pieces = union.pieces().iter().map(Polyhedron::irredundant).collect::<Result<_>>()?;
    let sublevel = PolyUnion::new(f.dimension(), pieces)?;
    if sublevel.is_empty() {
        return Err(Error::EmptySet("S(f) empty; error bounds undefined"));
    }
    let mut sampler = Sampler {
        f,
        sublevel: &sublevel,
        norm: config.norm,
        seen: BTreeSet::new(),
        summary: RatioSummary {
            radius: None,
            min_ratio: None,
            argmin: None,
            sampled: 0,
            positive: 0,
        },
    };

    if let SetSpec::Points { points, .. } = v {
        let mut sequence = Vec::new();
        for p in points {
            if let Some(r) = sampler.visit(p.clone())? {
                sequence.push((p.clone(), r));
            }
        }
        let half = sequence.len().div_ceil(2);
        let head_min = sequence[..half].iter().map(|(_, r)| r).min().cloned();
        let vanishing = match (&head_min, &sampler.summary.min_ratio) {
            (Some(h), Some(m)) => sequence.len() >= 2 && m * int(2) < *h,
            _ => false,
        };
        return Ok(TauEstimate {
            inner: sampler.summary,
            outer: None,
            vanishing,
            sequence,
        });
    }

    let member = Membership::new(v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let radius = config.box_radius.clone();
    run_box(&mut sampler, v, &member, &radius, config, &mut rng)?;
    let mut inner = sampler.summary.clone();
    if v.is_bounded() {
        return Ok(TauEstimate {
            inner,
            outer: None,
            vanishing: false,
            sequence: Vec::new(),
        });
    }
    inner.radius = Some(radius.clone());
    let outer_radius = &radius * int(10);
    run_box(&mut sampler, v, &member, &outer_radius, config, &mut rng)?;
    let mut outer = sampler.summary;
    outer.radius = Some(outer_radius);
    let vanishing = match (&inner.min_ratio, &outer.min_ratio) {
        (Some(a), Some(b)) => b * int(2) < *a,
        _ => false,
    };
    Ok(TauEstimate {
        inner,
        outer: Some(outer),
        vanishing,
        sequence: Vec::new(),
    })
}

/// Empirical lower estimate of `tau(f, V)`; never a proof, so the verdict is
/// always `Inconclusive`.
pub fn estimate_tau(f: &MinMaxFunction, v: &SetSpec, config: &EstimateConfig) -> Result<Certificate> {
    let est = sample_tau(f, v, config)?;
    Ok(tau_certificate(&est, config))
}

pub(crate) fn tau_certificate(est: &TauEstimate, config: &EstimateConfig) -> Certificate {
    let mut cert = Certificate::new(TheoremTag::TauEstimate, Verdict::Inconclusive);
    cert.set("seed", Quantity::Index(config.seed as usize));
    cert.set("samples", Quantity::Index(est.inner.sampled));
    cert.set("positive_samples", Quantity::Index(est.inner.positive));
    if let Some(r) = &est.inner.radius {
        cert.set_value("radius", r.clone());
    }
    match &est.inner.min_ratio {
        Some(m) => cert.set_value("min_ratio", m.clone()),
        None => cert.note("V ⊆ S(f) on samples"),
    }
    if let Some(outer) = &est.outer {
        if let Some(r) = &outer.radius {
            cert.set_value("radius_outer", r.clone());
        }
        if let Some(m) = &outer.min_ratio {
            cert.set_value("min_ratio_outer", m.clone());
        }
        cert.set("samples_outer", Quantity::Index(outer.sampled));
    }
    cert.set("vanishing", Quantity::Flag(est.vanishing));
    if est.vanishing {
        cert.note("ratio shrinks on larger samples: tau appears to vanish");
    }
    let best = est.outer.as_ref().unwrap_or(&est.inner);
    if let Some(x) = &best.argmin {
        cert.witnesses.push(Witness::Point {
            point: x.clone(),
            ratio: best.min_ratio.clone(),
        });
    }
    if !est.sequence.is_empty() {
        cert.witnesses.push(Witness::Sequence(est.sequence.clone()));
    }
    cert.note(format!("norm {}", config.norm.tag()));
    cert
}
