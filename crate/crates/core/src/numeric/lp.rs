//! Dense two-phase simplex over the rationals.
//!
//! Variables are free. Internally every variable is split into a positive and
//! a negative part and inequality rows get a slack column. Rows whose slack
//! can start basic need no artificial column; the others get one. Pivoting
//! follows Bland's rule, so the solver terminates and is deterministic for a
//! fixed input.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::rational::{dot, primitive, Rational};
use crate::error::{check_dim, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// `<coeffs, x> (relation) rhs`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        self.relation.holds(&dot(&self.coeffs, x), &self.rhs)
    }
}

/// Minimize `<objective, x>` subject to `constraints`, `x` free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub dimension: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self {
            dimension: objective.len(),
            objective,
            constraints: Vec::new(),
        }
    }

    /// Pure feasibility problem (zero objective).
    pub fn feasibility(dimension: usize) -> Self {
        Self::new(vec![Rational::zero(); dimension])
    }

    pub fn push(&mut self, constraint: Constraint) -> &mut Self {
        self.constraints.push(constraint);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::InvalidInput("linear program of dimension 0".into()));
        }
        check_dim(self.dimension, self.objective.len())?;
        for c in &self.constraints {
            check_dim(self.dimension, c.coeffs.len())?;
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        solve(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    /// `ray` is a feasible direction along which the objective decreases.
    Unbounded { ray: Vec<Rational> },
    /// Multipliers combining the constraints into `0 <= negative`:
    /// nonnegative on `<=` rows, nonpositive on `>=` rows, free on `=` rows.
    Infeasible { farkas: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    /// Exact re-substitution of the certificate into `lp`.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        match self {
            LpOutcome::Optimal { value, point } => {
                point.len() == lp.dimension
                    && lp.constraints.iter().all(|c| c.is_satisfied(point))
                    && dot(&lp.objective, point) == *value
            }
            LpOutcome::Unbounded { ray } => {
                ray.len() == lp.dimension
                    && lp
                        .constraints
                        .iter()
                        .all(|c| c.relation.holds(&dot(&c.coeffs, ray), &Rational::zero()))
                    && dot(&lp.objective, ray).is_negative()
            }
            LpOutcome::Infeasible { farkas } => {
                if farkas.len() != lp.constraints.len() {
                    return false;
                }
                let signs_ok = lp.constraints.iter().zip(farkas).all(|(c, y)| match c.relation {
                    Relation::Le => !y.is_negative(),
                    Relation::Ge => !y.is_positive(),
                    Relation::Eq => true,
                });
                let mut combo = vec![Rational::zero(); lp.dimension];
                let mut rhs = Rational::zero();
                for (c, y) in lp.constraints.iter().zip(farkas) {
                    if y.is_zero() {
                        continue;
                    }
                    for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                        *acc += y * a;
                    }
                    rhs += y * &c.rhs;
                }
                signs_ok && combo.iter().all(Zero::is_zero) && rhs.is_negative()
            }
        }
    }
}

/// Row-major simplex tableau. The last row holds reduced costs, the last
/// column holds right-hand sides (`-z` in the cost row).
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn constraint_rows(&self) -> usize {
        self.rows.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Installs `costs` as the objective and prices out the current basis.
    fn set_costs(&mut self, costs: &[Rational]) {
        let m = self.constraint_rows();
        let mut row: Vec<Rational> = costs.to_vec();
        row.resize(self.width + 1, Rational::zero());
        for i in 0..m {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (v, t) in row.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *v -= cb * t;
                }
            }
        }
        self.rows[m] = row;
    }

    /// Bland's rule over columns `0..allowed`. Returns the entering column of
    /// an unbounded direction, if any.
    fn run(&mut self, allowed: usize) -> Option<usize> {
        let m = self.constraint_rows();
        loop {
            let entering = (0..allowed).find(|&j| self.rows[m][j].is_negative())?;
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &self.rows[i][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.width] / a;
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, entering),
                None => return Some(entering),
            }
        }
    }

    fn values(&self) -> Vec<Rational> {
        let mut vals = vec![Rational::zero(); self.width];
        for (i, &b) in self.basis.iter().enumerate() {
            vals[b] = self.rows[i][self.width].clone();
        }
        vals
    }
}

/// Solves `lp` exactly. The outcome always satisfies [`LpOutcome::verify`].
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.dimension;
    let m = lp.constraints.len();
    let slack_count = lp
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let art_start = 2 * n + slack_count;

    // Rows whose slack enters with +1 after the sign flip start with the
    // slack basic; every other row gets an artificial column.
    let mut rows = Vec::with_capacity(m + 1);
    let mut signs = Vec::with_capacity(m);
    let mut slack_of = Vec::with_capacity(m);
    let mut slack = 2 * n;
    for c in &lp.constraints {
        let mut row = vec![Rational::zero(); art_start];
        for (k, a) in c.coeffs.iter().enumerate() {
            row[k] = a.clone();
            row[n + k] = -a;
        }
        match c.relation {
            Relation::Le => row[slack] = Rational::one(),
            Relation::Ge => row[slack] = -Rational::one(),
            Relation::Eq => {}
        }
        slack_of.push((c.relation != Relation::Eq).then_some(slack));
        if c.relation != Relation::Eq {
            slack += 1;
        }
        row.push(c.rhs.clone());
        let sign = if c.rhs.is_negative() { -1 } else { 1 };
        if sign < 0 {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        rows.push(row);
        signs.push(sign);
    }
    let mut artificial_of = vec![None; m];
    let mut basis = Vec::with_capacity(m);
    let mut next = art_start;
    for i in 0..m {
        match slack_of[i] {
            Some(s) if rows[i][s].is_positive() => basis.push(s),
            _ => {
                artificial_of[i] = Some(next);
                basis.push(next);
                next += 1;
            }
        }
    }
    let width = next;
    for (i, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().expect("rhs entry");
        row.resize(width, Rational::zero());
        if let Some(a) = artificial_of[i] {
            row[a] = Rational::one();
        }
        row.push(rhs);
    }
    rows.push(vec![Rational::zero(); width + 1]);
    let mut tab = Tableau { rows, basis, width };

    // Phase I: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); width];
    for c in phase1.iter_mut().skip(art_start) {
        *c = Rational::one();
    }
    tab.set_costs(&phase1);
    let unbounded = tab.run(width);
    debug_assert!(unbounded.is_none(), "phase I is bounded below by zero");
    let infeasibility = -&tab.rows[m][width];
    if infeasibility.is_positive() {
        // Row duals: y_i = 1 - r_a for an artificial column a, y_i = -r_s
        // for a slack column s that started basic; then undo the sign flips.
        let farkas: Vec<Rational> = (0..m)
            .map(|i| {
                let y = match (artificial_of[i], slack_of[i]) {
                    (Some(a), _) => Rational::one() - &tab.rows[m][a],
                    (None, Some(s)) => -&tab.rows[m][s],
                    (None, None) => unreachable!("equality rows always get an artificial"),
                };
                if signs[i] < 0 {
                    y
                } else {
                    -y
                }
            })
            .collect();
        return Ok(LpOutcome::Infeasible {
            farkas: primitive(&farkas),
        });
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut redundant = Vec::new();
    for i in 0..m {
        if tab.basis[i] < art_start {
            continue;
        }
        match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
            Some(j) => tab.pivot(i, j),
            None => redundant.push(i),
        }
    }
    for &i in redundant.iter().rev() {
        tab.rows.remove(i);
        tab.basis.remove(i);
    }

    // Phase II.
    let mut costs = vec![Rational::zero(); width];
    for (k, c) in lp.objective.iter().enumerate() {
        costs[k] = c.clone();
        costs[n + k] = -c;
    }
    tab.set_costs(&costs);
    if let Some(col) = tab.run(art_start) {
        let mut dir = vec![Rational::zero(); width];
        dir[col] = Rational::one();
        for (i, &b) in tab.basis.iter().enumerate() {
            dir[b] = -&tab.rows[i][col];
        }
        let ray: Vec<Rational> = (0..n).map(|k| &dir[k] - &dir[n + k]).collect();
        return Ok(LpOutcome::Unbounded {
            ray: primitive(&ray),
        });
    }
    let vals = tab.values();
    let point: Vec<Rational> = (0..n).map(|k| &vals[k] - &vals[n + k]).collect();
    let value = dot(&lp.objective, &point);
    Ok(LpOutcome::Optimal { value, point })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strictness {
    /// A point satisfying every constraint, the named ones strictly.
    Yes(Vec<Rational>),
    No,
}

/// Decides whether `constraints` admit a point at which every constraint
/// listed in `strict` holds strictly.
///
/// The slack of the strict rows is maximized with the slack capped at 1, so
/// the LP is always bounded. Homogeneous systems are additionally cut with
/// the unit box, which keeps the returned direction small.
pub fn strictly_feasible(
    dimension: usize,
    constraints: &[Constraint],
    strict: &[usize],
) -> Result<Strictness> {
    let mut objective = vec![Rational::zero(); dimension + 1];
    objective[dimension] = -Rational::one();
    let mut lp = LinearProgram::new(objective);
    let homogeneous = constraints.iter().all(|c| c.rhs.is_zero());
    for (i, c) in constraints.iter().enumerate() {
        check_dim(dimension, c.coeffs.len())?;
        let mut coeffs = c.coeffs.clone();
        let s = if strict.contains(&i) {
            match c.relation {
                Relation::Le => Rational::one(),
                Relation::Ge => -Rational::one(),
                Relation::Eq => {
                    return Err(Error::InvalidInput(format!(
                        "equality constraint {i} cannot hold strictly"
                    )))
                }
            }
        } else {
            Rational::zero()
        };
        coeffs.push(s);
        lp.push(Constraint::new(coeffs, c.relation, c.rhs.clone()));
    }
    let mut cap = vec![Rational::zero(); dimension + 1];
    cap[dimension] = Rational::one();
    lp.push(Constraint::le(cap, Rational::one()));
    if homogeneous {
        for k in 0..dimension {
            let mut e = vec![Rational::zero(); dimension + 1];
            e[k] = Rational::one();
            lp.push(Constraint::le(e.clone(), Rational::one()));
            lp.push(Constraint::ge(e, -Rational::one()));
        }
    }
    match solve(&lp)? {
        LpOutcome::Optimal { point, .. } if strict.is_empty() || point[dimension].is_positive() => {
            let mut x = point;
            x.truncate(dimension);
            Ok(Strictness::Yes(x))
        }
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible { .. } => Ok(Strictness::No),
        LpOutcome::Unbounded { .. } => unreachable!("slack is capped"),
    }
}
