use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::numeric::{dot, is_zero_vec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremTag {
    Robinson,
    LocalRadius,
    Bounded,
    Growth,
    CoerciveCone,
    Geometric,
    Polyhedral,
    PolyhedralStratified,
    TauEstimate,
    System,
}

impl TheoremTag {
    pub fn tag(self) -> &'static str {
        match self {
            TheoremTag::Robinson => "robinson",
            TheoremTag::LocalRadius => "local_radius",
            TheoremTag::Bounded => "bounded",
            TheoremTag::Growth => "growth",
            TheoremTag::CoerciveCone => "coercive_cone",
            TheoremTag::Geometric => "geometric",
            TheoremTag::Polyhedral => "polyhedral",
            TheoremTag::PolyhedralStratified => "polyhedral_stratified",
            TheoremTag::TauEstimate => "tau_estimate",
            TheoremTag::System => "system",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Where an established error bound is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    Global,
    /// On `{x | f(x) < rho}`.
    StrictSublevel(Rational),
    /// On the set the check was run against.
    GivenSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Finite(Rational),
    NegInfinity,
    PosInfinity,
    Flag(bool),
    Index(usize),
    Indices(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A direction `z` with `<w, z> <= 0` for every `inside` normal and, for
    /// each cone in `outside`, `<w, z> > 0` for some normal of that cone.
    /// `samples` lists `(lambda, ratio)` along `base + lambda z`.
    Ray {
        direction: Vec<Rational>,
        base: Option<Vec<Rational>>,
        inside: Vec<Vec<Rational>>,
        outside: Vec<Vec<Vec<Rational>>>,
        samples: Vec<(Rational, Rational)>,
    },
    /// A sample point together with its ratio.
    Point {
        point: Vec<Rational>,
        ratio: Option<Rational>,
    },
    /// Points with their ratios, in the order given.
    Sequence(Vec<(Vec<Rational>, Rational)>),
}

impl Witness {
    /// Exact re-substitution of the inclusion data carried by a ray.
    pub fn verify(&self) -> bool {
        match self {
            Witness::Ray {
                direction,
                inside,
                outside,
                ..
            } => {
                !is_zero_vec(direction)
                    && inside.iter().all(|w| !dot(w, direction).is_positive())
                    && outside
                        .iter()
                        .all(|ws| ws.iter().any(|w| dot(w, direction).is_positive()))
            }
            Witness::Point { .. } | Witness::Sequence(_) => true,
        }
    }
}

/// Outcome of one check.
///
/// `condition_met` records whether the tested sufficient condition holds
/// when it differs from the error-bound verdict (one-directional checks never
/// report `Fails`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub theorem: TheoremTag,
    pub verdict: Verdict,
    pub scope: Option<Scope>,
    pub condition_met: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub derived: BTreeMap<String, Quantity>,
    pub notes: Vec<String>,
    pub parts: Vec<Certificate>,
}

impl Certificate {
    pub fn new(theorem: TheoremTag, verdict: Verdict) -> Self {
        Self {
            theorem,
            verdict,
            scope: None,
            condition_met: None,
            witnesses: Vec::new(),
            derived: BTreeMap::new(),
            notes: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = Some(scope);
        self
    }

    pub fn set(&mut self, key: impl Into<String>, value: Quantity) {
        self.derived.insert(key.into(), value);
    }

    pub fn set_value(&mut self, key: impl Into<String>, value: Rational) {
        self.set(key, Quantity::Finite(value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn get(&self, key: &str) -> Option<&Quantity> {
        self.derived.get(key)
    }

    pub fn value(&self, key: &str) -> Option<&Rational> {
        match self.derived.get(key) {
            Some(Quantity::Finite(v)) => Some(v),
            _ => None,
        }
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        match self.derived.get(key) {
            Some(Quantity::Flag(b)) => Some(*b),
            _ => None,
        }
    }

    pub fn first_ray(&self) -> Option<&[Rational]> {
        self.witnesses.iter().find_map(|w| match w {
            Witness::Ray { direction, .. } => Some(direction.as_slice()),
            _ => None,
        })
    }

    /// All ray witnesses, including those of nested parts, re-verify.
    pub fn verify_witnesses(&self) -> bool {
        self.witnesses.iter().all(Witness::verify) && self.parts.iter().all(Certificate::verify_witnesses)
    }
}
